"""
配置管理命令组
"""
import json
import sys

import click
from rich.console import Console
from rich.prompt import Confirm
from rich.table import Table

from oeturbo.core.config import SECTIONS, config as config_instance

console = Console()


def display_config():
    """显示当前配置的辅助函数"""
    table = Table(title="Current Configuration")
    table.add_column("Section", style="cyan")
    table.add_column("Key", style="green")
    table.add_column("Value", style="yellow")
    for section, key, value in config_instance.items():
        table.add_row(section, key, str(value))
    console.print(table)
    if not config_instance.config_file.exists():
        console.print(f"[yellow]No file at {config_instance.config_file}; showing defaults.[/yellow]")


def parse_value(value: str):
    """依次尝试 JSON、true/false/none、整数、浮点数，否则保留字符串"""
    try:
        return json.loads(value)
    except json.JSONDecodeError:
        pass
    if value.lower() == "true":
        return True
    if value.lower() == "false":
        return False
    if value.lower() == "none":
        return None
    try:
        return int(value)
    except ValueError:
        pass
    try:
        return float(value)
    except ValueError:
        return value


@click.group()
def config_cli():
    """配置管理命令组"""
    pass


@config_cli.command()
def show():
    """显示当前配置"""
    try:
        display_config()
    except Exception as e:
        console.print(f"[red]Failed to show configuration: {str(e)}")
        sys.exit(1)


@config_cli.command()
@click.argument("section", type=click.Choice(SECTIONS))
@click.argument("key")
@click.argument("value")
def set(section: str, key: str, value: str):
    """设置配置项

    参数说明:
    \b
    SECTION: 配置段落，可选值: simulation, search, paths
    KEY: 配置项名称
    VALUE: 要设置的值

    示例:
    \b
    oeturbo config set simulation workers 8
    oeturbo config set simulation min_bit_errors 10000
    oeturbo config set search d_max 16
    oeturbo config set paths output_dir ~/oeturbo-runs
    """
    try:
        parsed_value = parse_value(value)
        config_instance.set(section, key, parsed_value)
        console.print(f"[green]Successfully set {section}.{key} = {parsed_value}")
    except Exception as e:
        console.print(f"[red]Failed to set configuration: {str(e)}")
        sys.exit(1)


@config_cli.command()
def reset():
    """重置为默认配置"""
    try:
        config_instance.reset()
        console.print("[green]Configuration has been reset to defaults")
        console.print("\nNew configuration:")
        display_config()
    except Exception as e:
        console.print(f"[red]Failed to reset configuration: {str(e)}")
        sys.exit(1)


@config_cli.command()
@click.option("--yes", is_flag=True, help="Do not ask for confirmation")
def delete(yes: bool):
    """删除配置文件"""
    try:
        if not config_instance.config_file.exists():
            console.print("[yellow]No configuration file to delete.[/yellow]")
            return
        console.print(f"[red]WARNING: This will delete {config_instance.config_file}[/red]")
        if not yes and not Confirm.ask("[red]Are you sure you want to delete the configuration?[/red]"):
            console.print("[yellow]Operation cancelled.[/yellow]")
            return
        config_instance.delete_config()
        console.print("[green]Configuration file has been deleted.[/green]")
    except Exception as e:
        console.print(f"[red]Error: {e}[/red]")
        sys.exit(1)
