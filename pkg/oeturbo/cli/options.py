"""
各运行命令共用的click选项
"""
from pathlib import Path
from typing import Callable, Optional

import click

from oeturbo.core.codec import TerminationMode
from oeturbo.core.config import ConfigFileError, RunConfig, config as config_instance, load_run_file, resolve_workers
from oeturbo.core.interleaver import FAMILIES, PuncturePhase
from oeturbo.core.poly import NAMED_CODES


def _load_run_file(ctx: click.Context, param: click.Parameter, value: Optional[str]):
    """运行文件的值作为命令默认值写入 ctx.default_map，命令行参数优先"""
    if not value:
        return value
    try:
        values = load_run_file(value)
    except ConfigFileError as e:
        raise click.BadParameter(str(e), ctx=ctx, param=param)
    # 长选项名 -> 参数名，如 --iters -> iterations
    names = {}
    for p in ctx.command.params:
        if p is param or not isinstance(p, click.Option):
            continue
        names[p.name] = p.name
        for opt in p.opts:
            if opt.startswith("--"):
                names[opt[2:].replace("-", "_")] = p.name
    unknown = sorted(k for k in values if k not in names)
    if unknown:
        raise click.BadParameter(f"{value}: unknown keys {', '.join(unknown)}", ctx=ctx, param=param)
    ctx.default_map = {**(ctx.default_map or {}), **{names[k]: v for k, v in values.items()}}
    return value


def run_file_option(f: Callable) -> Callable:
    return click.option(
        "--config", "config_file", type=click.Path(exists=True, dir_okay=False),
        is_eager=True, expose_value=False, callback=_load_run_file,
        help="key=value run file; explicit flags override it",
    )(f)


def code_options(f: Callable) -> Callable:
    """码与交织器选择"""
    options = [
        click.option("--code", type=click.Choice(sorted(NAMED_CODES)), default="lte", show_default=True,
                     help="Constituent code"),
        click.option("--n", "n", type=int, default=None,
                     help="Interleaver length [default: 512, or rows*cols for block]"),
        click.option("--family", type=click.Choice(FAMILIES), default="random", show_default=True,
                     help="Interleaver family"),
        click.option("--s", "s", type=int, default=None, help="Spread parameter for hsr/hsr-oe"),
        click.option("--rows", type=int, default=None, help="Block interleaver rows"),
        click.option("--cols", type=int, default=None, help="Block interleaver columns"),
        click.option("--interleaver", "interleaver_file", type=click.Path(exists=True, dir_okay=False),
                     default=None, help="Interleaver file (overrides --family)"),
        click.option("--phase", type=click.Choice([p.value for p in PuncturePhase]), default="even",
                     show_default=True, help="0-based index parity that keeps parity 1"),
        click.option("--term", "termination", type=click.Choice([m.value for m in TerminationMode]),
                     default=None, help="Termination mode [default: both for lte, first for berrou]"),
        click.option("--seed", type=int, default=0, show_default=True, help="Master seed"),
        click.option("--hsr-attempts", type=int, default=lambda: config_instance.get("search", "hsr_attempts"),
                     help="HSR repair attempts per restart"),
        click.option("--hsr-restarts", type=int, default=lambda: config_instance.get("search", "hsr_restarts"),
                     help="HSR restarts"),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def workers_option(f: Callable) -> Callable:
    return click.option("--workers", type=int, default=None,
                        help="Worker processes (0 = all cores; env OETURBO_WORKERS)")(f)


def out_option(default_name: Optional[str]) -> Callable:
    def decorator(f: Callable) -> Callable:
        return click.option("--out", type=click.Path(dir_okay=False), default=None,
                            help=f"Output file [default: <output_dir>/{default_name}]" if default_name
                            else "Output file")(f)
    return decorator


def resolve_out(out: Optional[str], default_name: str) -> Path:
    if out:
        return Path(out)
    return Path(config_instance.get("paths", "output_dir")) / default_name


def build_run(command: str, **kwargs) -> RunConfig:
    """由命令参数组装 RunConfig；workers 解析为实际进程数"""
    if "workers" in kwargs:
        kwargs["workers"] = resolve_workers(kwargs["workers"])
    if kwargs.get("interleaver_file"):
        kwargs["family"] = "file"
    known = set(RunConfig.__dataclass_fields__)
    return RunConfig(command=command, **{k: v for k, v in kwargs.items() if k in known})
