import math

import numpy as np
import pytest
from scipy.integrate import quad

from oeturbo.core.bounds import asymptote_multi, asymptote_single, ebno_grid, q_function
from oeturbo.core.spectrum import DistanceSpectrum, SpectrumTerm


def _q_oracle(x):
    pdf = lambda t: math.exp(-t * t / 2) / math.sqrt(2 * math.pi)  # noqa: E731
    value, _ = quad(pdf, x, x + 40.0, epsabs=0.0, epsrel=1e-13, limit=200)
    return value


def test_q_function_basics():
    assert q_function(0.0) == 0.5
    assert q_function(3.0) == pytest.approx(1.3498980316e-3, rel=1e-9)
    assert q_function(-1.5) == pytest.approx(1 - q_function(1.5), rel=1e-12)
    assert isinstance(q_function(1.0), float)
    assert q_function(np.array([0.0, 1.0])).shape == (2,)


@pytest.mark.parametrize("x", [0.5, 1.0, 2.5, 4.0, 6.0, 8.0, 10.0])
def test_q_function_against_quadrature(x):
    assert q_function(x) == pytest.approx(_q_oracle(x), rel=1e-12)


def test_ebno_grid_default():
    grid = ebno_grid()
    assert len(grid) == 25
    assert grid[0] == 0.0 and grid[-1] == 6.0


def test_ebno_grid_errors():
    with pytest.raises(ValueError):
        ebno_grid(0, 1, 0)
    with pytest.raises(ValueError):
        ebno_grid(2, 1, 0.5)


def test_single_equals_multi():
    grid = ebno_grid(0, 3, 0.5)
    single = asymptote_single(5.004, 7.865, 512, 0.5, grid)
    multi = asymptote_multi([(7.865, 5.004)], 512, 0.5, grid)
    assert [p.ber for p in single] == [p.ber for p in multi]


def test_random_ensemble_asymptote_value():
    point = asymptote_single(5.004, 7.865, 512, 0.5, [0.0])[0]
    assert point.ber == pytest.approx(2.4627e-5, rel=2e-3)


def test_asymptote_degenerate_terms():
    grid = ebno_grid(0, 2, 1)
    assert all(p.ber == 0.0 for p in asymptote_single(0, 8, 512, 0.5, grid))
    assert all(p.ber == pytest.approx(3 / 1024) for p in asymptote_single(3, 0, 512, 0.5, grid))


def test_multi_dominates_and_decreases():
    grid = ebno_grid(0, 6, 0.5)
    spectrum = DistanceSpectrum([SpectrumTerm(8, 1, 1), SpectrumTerm(11, 1, 1), SpectrumTerm(12, 382, 1523)],
                                certified_up_to=12, d_max=12, w_max=12)
    multi = [p.ber for p in asymptote_multi(spectrum, 399, 0.5, grid)]
    first = [p.ber for p in asymptote_single(1, 8, 399, 0.5, grid)]
    assert all(m >= f for m, f in zip(multi, first))
    assert all(a > b for a, b in zip(multi, multi[1:]))


def test_asymptote_errors():
    with pytest.raises(ValueError):
        asymptote_multi([], 512, 0.5, [0.0])
    with pytest.raises(ValueError):
        asymptote_single(1, 8, 0, 0.5, [0.0])
    with pytest.raises(ValueError):
        asymptote_single(1, -1, 512, 0.5, [0.0])
