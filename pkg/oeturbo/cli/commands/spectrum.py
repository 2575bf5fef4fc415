"""
距离谱、集合统计与配对统计命令
"""
import sys

import click
from rich.console import Console
from rich.table import Table

from oeturbo.cli.options import (build_run, code_options, out_option, resolve_out, run_file_option,
                                 workers_option)
from oeturbo.core import report
from oeturbo.core.config import config as config_instance
from oeturbo.core.harness import run_census, run_ensemble_stats
from oeturbo.core.spectrum import (SpectrumSearchError, brute_force_spectrum, compute_spectrum,
                                   enumerate_simple_events)

console = Console()


def _spectrum_table(spectrum, title: str) -> Table:
    table = Table(show_header=True, title=title)
    table.add_column("Weight", style="cyan", justify="right")
    table.add_column("Multiplicity", style="green", justify="right")
    table.add_column("Information weight", style="magenta", justify="right")
    for t in spectrum.terms:
        table.add_row(str(t.weight), str(t.multiplicity), str(t.information_weight))
    return table


@click.command()
@run_file_option
@code_options
@click.option("--d-max", type=int, default=lambda: config_instance.get("search", "d_max"),
              help="Weight cap of the search")
@click.option("--w-max", type=int, default=None, help="Input weight cap [default: d-max]")
@click.option("--terms", type=int, default=None, help="Keep only the first terms")
@click.option("--max-candidates", type=int, default=lambda: config_instance.get("search", "max_candidates"),
              help="Candidate cap before the search gives up")
@click.option("--brute-force", is_flag=True, help="Enumerate all 2^N inputs (N <= 20)")
@click.option("--events", "events_cap", type=int, default=None,
              help="Also list simple events of the constituent code up to this parity weight")
@out_option("spectrum.csv")
def spectrum(out, d_max, w_max, terms, max_candidates, brute_force, events_cap, **kwargs):
    """计算一个交织器的距离谱"""
    try:
        run = build_run("spectrum", out=out, d_max=d_max, max_candidates=max_candidates, **kwargs)
        perm = run.make_interleaver(run.seed)
        cfg = run.code_config(perm)
        console.print(f"[cyan]Searching spectrum: {run.code}, {perm.describe()}, "
                      f"term={cfg.termination.value}, phase={cfg.phase.value}, d_max={d_max}")
        if brute_force:
            result = brute_force_spectrum(cfg, d_max)
        else:
            try:
                result = compute_spectrum(cfg, d_max, w_max=w_max, terms=terms, max_candidates=max_candidates)
            except SpectrumSearchError as e:
                console.print(f"[yellow]Warning: {e}[/yellow]")
                result = e.partial
        if terms is not None:
            result = result.truncated(terms)

        console.print(_spectrum_table(result, f"Distance spectrum (certified up to {result.certified_up_to})"))
        path = report.write_spectrum(resolve_out(out, "spectrum.csv"), result, run.provenance())
        console.print(f"[green]Spectrum written to {path}")

        if events_cap is not None:
            table = Table(show_header=True, title=f"Simple events (parity weight <= {events_cap})")
            table.add_column("Phase", style="cyan")
            table.add_column("Inputs", style="green")
            table.add_column("Span", justify="right")
            table.add_column("Parity weight", justify="right")
            for phase in (0, 1):
                for ev in enumerate_simple_events(cfg.constituent, events_cap, phase):
                    table.add_row(str(phase), ",".join(map(str, ev.inputs)), str(ev.span), str(ev.parity_weight))
            console.print(table)
        if not result.complete:
            sys.exit(1)
    except Exception as e:
        console.print(f"[red]Failed to compute spectrum: {str(e)}")
        sys.exit(1)


@click.command("ensemble-stats")
@run_file_option
@code_options
@click.option("--samples", type=int, default=100, show_default=True, help="Number of interleavers")
@click.option("--initial-d-max", type=int, default=lambda: config_instance.get("search", "initial_d_max"),
              help="Starting weight cap of the adaptive free-distance search")
@click.option("--max-candidates", type=int, default=lambda: config_instance.get("search", "max_candidates"),
              help="Candidate cap per interleaver")
@workers_option
@out_option("stats.csv")
def ensemble_stats(out, **kwargs):
    """交织器集合的自由距离、重数与信息重量均值"""
    try:
        run = build_run("ensemble-stats", out=out, **kwargs)
        stats = run_ensemble_stats(run, workers=run.workers, show_progress=True)

        table = Table(show_header=True, title=f"Ensemble statistics ({stats.family}, {stats.params})")
        table.add_column("Quantity", style="cyan")
        table.add_column("Mean", style="green", justify="right")
        table.add_column("Std", style="magenta", justify="right")
        table.add_row("d_free", f"{stats.mean_dfree:.3f}", f"{stats.std_dfree:.3f}")
        table.add_row("N_free", f"{stats.mean_nfree:.3f}", f"{stats.std_nfree:.3f}")
        table.add_row("w_free", f"{stats.mean_wfree:.3f}", f"{stats.std_wfree:.3f}")
        console.print(table)
        console.print(f"Samples: {stats.samples}, replaced failures: {stats.failures}")

        path = report.write_stats(resolve_out(out, "stats.csv"), stats, run.provenance())
        console.print(f"[green]Statistics written to {path}")
    except Exception as e:
        console.print(f"[red]Failed to compute ensemble statistics: {str(e)}")
        sys.exit(1)


@click.command()
@run_file_option
@code_options
@click.option("--samples", type=int, default=100, show_default=True, help="Number of interleavers")
@click.option("--cl", "cycle_length", type=int, default=None, help="Cycle length [default: of the feedback]")
@click.option("--dmax-in", type=int, default=None, help="Largest input distance [default: CL]")
@click.option("--free-distance", is_flag=True, help="Also tally distances of weight-2 free-distance codewords")
@click.option("--initial-d-max", type=int, default=lambda: config_instance.get("search", "initial_d_max"),
              help="Starting weight cap of the adaptive free-distance search")
@workers_option
@out_option("census.csv")
def census(out, free_distance, **kwargs):
    """重量2序列在交织后保持距离的统计"""
    try:
        run = build_run("census", out=out, **kwargs)
        result = run_census(run, workers=run.workers, show_progress=True, free_distance=free_distance)

        table = Table(show_header=True, title=f"Weight-2 pairing census ({result.family})")
        table.add_column("Input distance", style="cyan", justify="right")
        table.add_column("Pairs", justify="right")
        table.add_column("Preserved", justify="right")
        table.add_column("Probability", style="green", justify="right")
        for d in sorted(result.census.pairs):
            table.add_row(str(d), str(result.census.pairs[d]), str(result.census.preserved.get(d, 0)),
                          f"{result.census.preservation_probability(d):.3e}")
        console.print(table)
        if result.free_pairs:
            ft = Table(show_header=True, title="Weight-2 free-distance codewords")
            ft.add_column("Input distance", style="cyan", justify="right")
            ft.add_column("Output distance", style="magenta", justify="right")
            ft.add_column("Count", style="green", justify="right")
            for (d_in, d_out), c in sorted(result.free_pairs.items()):
                ft.add_row(str(d_in), str(d_out), str(c))
            console.print(ft)

        path = report.write_census(resolve_out(out, "census.csv"), result.rows(), run.provenance(),
                                   dict(result.footer()))
        console.print(f"[green]Census written to {path}")
    except Exception as e:
        console.print(f"[red]Failed to run census: {str(e)}")
        sys.exit(1)
