#!/usr/bin/env python3
import click

# 导入命令模块
from .commands.bound import asymptote, plot
from .commands.config import config_cli
from .commands.interleaver import gen_interleaver
from .commands.simulate import ber
from .commands.spectrum import census, ensemble_stats, spectrum


@click.group()
def cli():
    """码率1/2 Turbo码与奇偶交织器实验工具"""
    pass


# 注册命令
cli.add_command(gen_interleaver)
cli.add_command(spectrum)
cli.add_command(ensemble_stats)
cli.add_command(ber)
cli.add_command(census)
cli.add_command(asymptote)
cli.add_command(plot)
cli.add_command(config_cli, name="config")

# 为了兼容性添加别名
main = cli

if __name__ == '__main__':
    cli()
