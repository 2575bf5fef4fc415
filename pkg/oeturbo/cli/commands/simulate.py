"""
BER蒙特卡罗仿真命令
"""
import sys

import click
from rich.console import Console
from rich.table import Table

from oeturbo.cli.options import (build_run, code_options, out_option, resolve_out, run_file_option,
                                 workers_option)
from oeturbo.core import report
from oeturbo.core.config import config as config_instance
from oeturbo.core.harness import run_ber_sweep

console = Console()


@click.command()
@run_file_option
@code_options
@click.option("--iters", "iterations", type=int, default=lambda: config_instance.get("simulation", "iterations"),
              help="Decoder iterations")
@click.option("--snr", default="0:6:0.25", show_default=True, help="Eb/N0 grid a:b:step in dB")
@click.option("--min-errors", "min_bit_errors", type=int,
              default=lambda: config_instance.get("simulation", "min_bit_errors"),
              help="Stop a point after this many bit errors")
@click.option("--max-frames", type=int, default=lambda: config_instance.get("simulation", "max_frames"),
              help="Stop a point after this many frames")
@click.option("--frames-per-job", type=int, default=lambda: config_instance.get("simulation", "frames_per_job"),
              help="Frames simulated by one worker job")
@click.option("--fixed-interleaver", is_flag=True, help="Simulate one drawn interleaver instead of the ensemble")
@click.option("--max-log", is_flag=True, help="Use max-log instead of exact log-MAP")
@workers_option
@out_option("ber.csv")
def ber(out, **kwargs):
    """BPSK/AWGN下的迭代译码误比特率曲线"""
    try:
        run = build_run("ber", out=out, **kwargs)
        refresh = "per-frame interleaver" if run.ensemble else "fixed interleaver"
        console.print(f"[cyan]Simulating {run.code}, {run.family_params()}, {refresh}, "
                      f"{run.iterations} iterations, {run.workers} workers")
        points = run_ber_sweep(run, workers=run.workers, show_progress=True)

        table = Table(show_header=True, title="BER")
        table.add_column("Eb/N0 (dB)", style="cyan", justify="right")
        table.add_column("Frames", justify="right")
        table.add_column("Bit errors", justify="right")
        table.add_column("BER", style="green", justify="right")
        table.add_column("FER", style="magenta", justify="right")
        table.add_column("Stop", style="yellow")
        for p in points:
            table.add_row(f"{p.ebno_db:g}", str(p.frames), str(p.bit_errors), f"{p.ber:.3e}",
                          f"{p.fer:.3e}", p.stop_reason)
        console.print(table)

        path = report.write_ber(resolve_out(out, "ber.csv"), points, run.provenance())
        console.print(f"[green]BER results written to {path}")
    except Exception as e:
        console.print(f"[red]BER simulation failed: {str(e)}")
        sys.exit(1)
