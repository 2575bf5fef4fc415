import numpy as np
import pytest

from oeturbo.core.codec import TerminationMode, TurboCodeConfig
from oeturbo.core.config import config as config_instance
from oeturbo.core.interleaver import PuncturePhase, gen_random, identity
from oeturbo.core.poly import LTE


@pytest.fixture
def isolated_config(tmp_path, monkeypatch):
    """全局配置实例指向临时目录"""
    monkeypatch.setattr(config_instance, "config_file", tmp_path / "cfg" / "config.yaml")
    monkeypatch.setattr(config_instance, "config", None)
    monkeypatch.delenv("OETURBO_WORKERS", raising=False)
    return config_instance


@pytest.fixture
def lte_cfg():
    def make(n=16, seed=1, termination=TerminationMode.BOTH_LTE_STYLE, phase=PuncturePhase.P1_AT_EVEN_INDEX,
             perm=None):
        return TurboCodeConfig(LTE, perm if perm is not None else gen_random(n, seed), phase, termination)
    return make


@pytest.fixture
def identity_cfg():
    def make(n, termination=TerminationMode.BOTH_LTE_STYLE):
        return TurboCodeConfig(LTE, identity(n), PuncturePhase.P1_AT_EVEN_INDEX, termination)
    return make


@pytest.fixture
def rng():
    return np.random.default_rng(2024)
