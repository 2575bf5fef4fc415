"""
交织器生成命令
"""
import sys

import click
from rich.console import Console
from rich.table import Table

from oeturbo.cli.options import build_run, code_options, out_option, resolve_out, run_file_option
from oeturbo.core.interleaver import PuncturePhase, is_odd_even, spread, uep_coverage

console = Console()


@click.command("gen-interleaver")
@run_file_option
@code_options
@out_option("interleaver.txt")
def gen_interleaver(out, **kwargs):
    """生成一个交织器并写出交织器文件，同时显示其度量"""
    try:
        run = build_run("gen-interleaver", out=out, **kwargs)
        perm = run.make_interleaver(run.seed)
        path = resolve_out(out, "interleaver.txt")
        path.parent.mkdir(parents=True, exist_ok=True)
        perm.dump(path)

        report = spread(perm)
        uep = uep_coverage(perm, PuncturePhase(run.phase))
        table = Table(show_header=True, title="Interleaver")
        table.add_column("Property", style="cyan", justify="right")
        table.add_column("Value", style="green")
        table.add_row("Family", perm.family)
        table.add_row("Parameters", perm.describe())
        table.add_row("Odd-even", "yes" if is_odd_even(perm) else "no")
        table.add_row("Spread", f"{report.spread} (pair {report.witness[0]}, {report.witness[1]})")
        table.add_row("UEP histogram", ", ".join(f"{k}: {v}" for k, v in sorted(uep.histogram.items())))
        table.add_row("File", str(path))
        console.print(table)
    except Exception as e:
        console.print(f"[red]Failed to generate interleaver: {str(e)}")
        sys.exit(1)
