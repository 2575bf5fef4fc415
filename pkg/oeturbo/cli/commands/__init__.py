"""
CLI命令实现模块
"""
from .bound import asymptote, plot
from .config import config_cli
from .interleaver import gen_interleaver
from .simulate import ber
from .spectrum import census, ensemble_stats, spectrum

__all__ = ['gen_interleaver', 'spectrum', 'ensemble_stats', 'ber', 'census', 'asymptote', 'plot', 'config_cli']
