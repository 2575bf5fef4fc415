"""
配置管理

用户设置保存在 $XDG_CONFIG_HOME/oeturbo/config.yaml；单次运行的参数由
RunConfig 汇总，可从 key=value 形式的运行文件读入。
"""
import os
import re
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import yaml
from rich.console import Console

from .bounds import ebno_grid
from .codec import TerminationMode, TurboCodeConfig
from .interleaver import HsrBudget, Permutation, PuncturePhase, generate
from .poly import NAMED_CODES, RscSpec

console = Console(stderr=True)

# 工作进程数环境变量
WORKERS_ENV = "OETURBO_WORKERS"
# 未给出 --n 时的帧长
DEFAULT_FRAME_LENGTH = 512


class ConfigFileError(ValueError):
    """运行文件格式错误"""


@dataclass
class SimulationConfig:
    """仿真配置模型"""
    workers: int = 0
    iterations: int = 10
    min_bit_errors: int = 2000
    max_frames: int = 2_000_000
    frames_per_job: int = 50


@dataclass
class SearchConfig:
    """距离谱搜索配置模型"""
    d_max: int = 14
    initial_d_max: int = 10
    max_candidates: int = 1_000_000_000
    hsr_attempts: int = 1000
    hsr_restarts: int = 10_000


@dataclass
class PathsConfig:
    """路径配置模型"""
    output_dir: str = "."


@dataclass
class ConfigModel:
    """配置模型"""
    simulation: SimulationConfig = field(default_factory=SimulationConfig)
    search: SearchConfig = field(default_factory=SearchConfig)
    paths: PathsConfig = field(default_factory=PathsConfig)

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            "simulation": asdict(self.simulation),
            "search": asdict(self.search),
            "paths": asdict(self.paths),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ConfigModel":
        """从字典创建配置模型，忽略未知键"""
        def pick(section_cls, values):
            names = {f.name for f in fields(section_cls)}
            return section_cls(**{k: v for k, v in (values or {}).items() if k in names})

        return cls(
            simulation=pick(SimulationConfig, data.get("simulation")),
            search=pick(SearchConfig, data.get("search")),
            paths=pick(PathsConfig, data.get("paths")),
        )


SECTIONS = ("simulation", "search", "paths")


class PathManager:
    """路径管理器"""

    def __init__(self):
        home = str(Path.home())
        self.xdg_dirs = {
            "HOME": home,
            "XDG_CONFIG_HOME": os.environ.get("XDG_CONFIG_HOME", f"{home}/.config"),
        }

    def expand_path(self, path: str) -> str:
        """展开 ${HOME}、${XDG_CONFIG_HOME} 与 ~"""
        if not path:
            return path
        for var_name, value in self.xdg_dirs.items():
            path = path.replace(f"${{{var_name}}}", value)
        return os.path.abspath(os.path.expanduser(path))


class Config:
    """配置管理器"""

    def __init__(self, config_dir: Optional[Union[str, Path]] = None):
        self.path_manager = PathManager()
        if config_dir is None:
            config_dir = Path(self.path_manager.xdg_dirs["XDG_CONFIG_HOME"]) / "oeturbo"
        self.config_file = Path(config_dir) / "config.yaml"
        self.config: Optional[ConfigModel] = None

    def ensure_initialized(self) -> ConfigModel:
        """加载配置；文件不存在时使用默认值"""
        if self.config is None:
            if self.config_file.exists():
                try:
                    with open(self.config_file, "r", encoding="utf-8") as f:
                        data = yaml.safe_load(f) or {}
                except (OSError, yaml.YAMLError) as e:
                    console.print(f"[yellow]Warning: Failed to read {self.config_file}: {e}; using defaults[/yellow]")
                    data = {}
                self.config = ConfigModel.from_dict(data)
            else:
                self.config = ConfigModel()
        return self.config

    def _section(self, section: str):
        if section not in SECTIONS:
            raise ValueError(f"Invalid configuration section: {section}")
        return getattr(self.ensure_initialized(), section)

    def get(self, section: str, key: str) -> Any:
        sec = self._section(section)
        if not hasattr(sec, key):
            raise ValueError(f"Invalid {section} configuration key: {key}")
        value = getattr(sec, key)
        if section == "paths":
            return self.path_manager.expand_path(value)
        return value

    def set(self, section: str, key: str, value: Any) -> None:
        """设置配置项并保存"""
        sec = self._section(section)
        if not hasattr(sec, key):
            raise ValueError(f"Invalid {section} configuration key: {key}")
        current = getattr(sec, key)
        if isinstance(current, int) and not isinstance(value, int):
            raise ValueError(f"{section}.{key} expects an integer, got {value!r}")
        setattr(sec, key, value)
        self.save_config(self.config)

    def items(self) -> List[Tuple[str, str, Any]]:
        data = self.ensure_initialized().to_dict()
        return [(s, k, v) for s in SECTIONS for k, v in data[s].items()]

    def save_config(self, config: ConfigModel) -> None:
        """保存配置文件"""
        self.config_file.parent.mkdir(parents=True, exist_ok=True)
        with open(self.config_file, "w", encoding="utf-8") as f:
            yaml.safe_dump(config.to_dict(), f, default_flow_style=False, allow_unicode=True)
        self.config = config

    def reset(self) -> None:
        """恢复默认配置"""
        self.save_config(ConfigModel())

    def delete_config(self) -> None:
        """删除配置文件"""
        if self.config_file.exists():
            os.remove(self.config_file)
        self.config = None


# 全局配置实例
config = Config()


def load_run_file(path: Union[str, Path]) -> Dict[str, str]:
    """
    解析运行文件：每行一个 key=value，# 开头为注释，键中的 - 与 _ 等价

    Raises:
        ConfigFileError: 行格式错误，消息带1起的行号
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigFileError(f"{path}: cannot read run file: {e}")
    values: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigFileError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip().replace("-", "_")
        if not re.fullmatch(r"[a-z][a-z0-9_]*", key):
            raise ConfigFileError(f"{path}:{lineno}: invalid key {key!r}")
        values[key] = value.strip()
    return values


def parse_snr(text: str) -> List[float]:
    """'a:b:step' 为含端点网格，单个数值为单点，逗号分隔为显式列表"""
    text = str(text).strip()
    try:
        if ":" in text:
            parts = [float(p) for p in text.split(":")]
            if len(parts) != 3:
                raise ValueError
            return [float(v) for v in ebno_grid(*parts)]
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ValueError(f"Invalid SNR grid {text!r}, expected a:b:step")


def resolve_workers(requested: Optional[int]) -> int:
    """命令行 > 环境变量 > 用户配置；0 表示全部核心"""
    if requested is None:
        env = os.environ.get(WORKERS_ENV)
        if env:
            try:
                requested = int(env)
            except ValueError:
                raise ValueError(f"{WORKERS_ENV} must be an integer, got {env!r}")
        else:
            requested = config.get("simulation", "workers")
    if requested < 0:
        raise ValueError(f"Worker count must be >= 0, got {requested}")
    return requested or (os.cpu_count() or 1)


@dataclass
class RunConfig:
    """
    单次运行的全部参数

    字段按声明顺序写入输出CSV的溯源头。
    """
    command: str = ""
    code: str = "lte"
    n: Optional[int] = None
    family: str = "random"
    s: Optional[int] = None
    rows: Optional[int] = None
    cols: Optional[int] = None
    interleaver_file: Optional[str] = None
    phase: str = PuncturePhase.P1_AT_EVEN_INDEX.value
    termination: Optional[str] = None
    iterations: int = 10
    max_log: bool = False
    snr: str = "0:6:0.25"
    min_bit_errors: int = 2000
    max_frames: int = 2_000_000
    frames_per_job: int = 50
    fixed_interleaver: bool = False
    samples: int = 1
    d_max: int = 14
    initial_d_max: int = 10
    max_candidates: int = 1_000_000_000
    cycle_length: Optional[int] = None
    dmax_in: Optional[int] = None
    hsr_attempts: int = 1000
    hsr_restarts: int = 10_000
    seed: int = 0
    workers: int = 1
    out: Optional[str] = None

    def __post_init__(self):
        if self.code not in NAMED_CODES:
            raise ValueError(f"Unknown code {self.code!r}, expected one of {', '.join(NAMED_CODES)}")
        PuncturePhase(self.phase)
        if self.termination is not None:
            TerminationMode(self.termination)

    @property
    def constituent(self) -> RscSpec:
        return NAMED_CODES[self.code]

    @property
    def termination_mode(self) -> TerminationMode:
        """LTE默认两侧终止，Berrou默认仅终止编码器1"""
        if self.termination is not None:
            return TerminationMode(self.termination)
        if self.code == "berrou":
            return TerminationMode.FIRST_ONLY
        return TerminationMode.BOTH_LTE_STYLE

    @property
    def budget(self) -> HsrBudget:
        return HsrBudget(self.hsr_attempts, self.hsr_restarts)

    @property
    def ensemble(self) -> bool:
        """是否每帧/每个样本重新抽取交织器"""
        return self.interleaver_file is None and self.family != "block" and not self.fixed_interleaver

    def snr_grid(self) -> List[float]:
        return parse_snr(self.snr)

    def make_interleaver(self, seed: int) -> Permutation:
        if self.interleaver_file:
            return Permutation.load(self.interleaver_file)
        n = self.n if self.family == "block" else self.frame_length()
        return generate(self.family, n, seed, s=self.s, rows=self.rows, cols=self.cols, budget=self.budget)

    def code_config(self, interleaver: Permutation) -> TurboCodeConfig:
        return TurboCodeConfig(self.constituent, interleaver, PuncturePhase(self.phase), self.termination_mode)

    def frame_length(self) -> int:
        if self.interleaver_file:
            return len(Permutation.load(self.interleaver_file))
        if self.family == "block" and self.rows and self.cols:
            return self.rows * self.cols
        return self.n if self.n is not None else DEFAULT_FRAME_LENGTH

    def family_params(self) -> str:
        if self.interleaver_file:
            return f"file={self.interleaver_file}"
        parts = [f"N={self.frame_length()}"]
        if self.s is not None:
            parts.append(f"S={self.s}")
        if self.family == "block":
            parts += [f"rows={self.rows}", f"cols={self.cols}"]
        return ";".join(parts)

    def provenance(self) -> List[Tuple[str, Any]]:
        items: List[Tuple[str, Any]] = []
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == "termination":
                value = self.termination_mode.value
            elif f.name == "n":
                value = self.frame_length()
            items.append((f.name, value))
        items.append(("interleaver_refresh", "per-frame" if self.ensemble else "fixed"))
        return items


