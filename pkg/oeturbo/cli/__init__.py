"""
oeturbo 命令行模块
"""
from .main import cli

__all__ = ['cli']
