"""
渐近线与作图命令
"""
import sys

import click
from rich.console import Console

from oeturbo.cli.options import out_option, resolve_out, run_file_option
from oeturbo.core import report
from oeturbo.core.bounds import asymptote_multi, asymptote_single
from oeturbo.core.config import parse_snr
from oeturbo.core.plotting import emit_plot, load_series

console = Console()


@click.command()
@run_file_option
@click.option("--spectrum", "spectrum_file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Spectrum CSV to sum over")
@click.option("--single", is_flag=True, help="Use only the first spectrum term")
@click.option("--wfree", type=float, default=None, help="Mean information weight of the free distance")
@click.option("--dfree", type=float, default=None, help="Mean free distance")
@click.option("--n", "n", type=int, required=True, help="Interleaver length")
@click.option("--rate", type=float, default=0.5, show_default=True, help="Code rate")
@click.option("--snr", default="0:6:0.25", show_default=True, help="Eb/N0 grid a:b:step in dB")
@out_option("asymptote.csv")
def asymptote(spectrum_file, single, wfree, dfree, n, rate, snr, out):
    """由谱项计算联合界ML渐近线"""
    try:
        grid = parse_snr(snr)
        provenance = [("command", "asymptote"), ("n", n), ("rate", rate), ("snr", snr)]
        if spectrum_file:
            spectrum = report.read_spectrum(spectrum_file)
            terms = spectrum.terms[:1] if single else spectrum.terms
            points = asymptote_multi(terms, n, rate, grid)
            provenance += [("spectrum", spectrum_file), ("terms", len(terms))]
        elif wfree is not None and dfree is not None:
            points = asymptote_single(wfree, dfree, n, rate, grid)
            provenance += [("wfree", wfree), ("dfree", dfree)]
        else:
            raise click.UsageError("Give either --spectrum or both --wfree and --dfree")
        path = report.write_asymptote(resolve_out(out, "asymptote.csv"), points, provenance)
        console.print(f"[green]Asymptote written to {path}")
    except click.UsageError:
        raise
    except Exception as e:
        console.print(f"[red]Failed to compute asymptote: {str(e)}")
        sys.exit(1)


@click.command()
@click.argument("csv_files", nargs=-1, type=click.Path(exists=True, dir_okay=False))
@click.option("--label", "labels", multiple=True, help="Legend label per CSV, in order")
@click.option("--title", default="", help="Figure title")
@out_option("ber.svg")
def plot(csv_files, labels, title, out):
    """把BER结果与渐近线CSV画到一张SVG图上"""
    try:
        if labels and len(labels) != len(csv_files):
            raise ValueError(f"Got {len(labels)} labels for {len(csv_files)} files")
        series = [load_series(p, labels[k] if labels else None) for k, p in enumerate(csv_files)]
        path = emit_plot(series, resolve_out(out, "ber.svg"), title=title)
        console.print(f"[green]Figure written to {path}")
    except Exception as e:
        console.print(f"[red]Failed to plot: {str(e)}")
        sys.exit(1)
