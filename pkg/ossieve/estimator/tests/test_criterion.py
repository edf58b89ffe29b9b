import numpy as np
import pytest
from numpy.polynomial.legendre import leggauss

from ossieve.estimator import CriterionConfig, criterion, empirical_chf, q_kernel, within_sum_rows
from ossieve.orderstat import OrderStatDesign
from ossieve.utils.exceptions import ConfigurationError

KAPPAS = [1.0, 3.14, 5.0]


def quadrature_criterion(x, y, kappa, nodes=300):
    t, w = leggauss(nodes)
    t, w = kappa * t, kappa * w
    t1, t2 = np.meshgrid(t, t, indexing='ij')
    grid = np.column_stack((t1.ravel(), t2.ravel()))
    weights = np.outer(w, w).ravel()
    gap = empirical_chf(x, grid) - empirical_chf(y, grid)
    return np.sum(weights * np.abs(gap) ** 2) / (4 * kappa ** 2)


def test_q_kernel_examples():
    assert q_kernel((0.0, 0.0), 2.5) == 1.0
    assert q_kernel((np.pi, 1.0), 1.0) == pytest.approx(0.0, abs=1e-15)
    assert q_kernel((1.0, 1.0), 1.0) == pytest.approx(np.sin(1.0) ** 2, abs=1e-15)
    assert q_kernel((1.0, 1.0), 1.0) == pytest.approx(0.70807, abs=1e-5)
    v = np.random.default_rng(0).normal(0, 3, (100, 2))
    assert np.all(np.abs(q_kernel(v, 1.7)) <= 1.0)


def test_empirical_chf_examples():
    rng = np.random.default_rng(1)
    sample = rng.normal(size=(20, 2))
    assert empirical_chf(sample, (0.0, 0.0)) == pytest.approx(1.0)
    assert empirical_chf([[0.0, 0.0]], (1.3, -0.4)) == pytest.approx(1.0)
    assert abs(empirical_chf([[0.0, 0.0], [np.pi, 0.0]], (1.0, 0.0))) < 1e-15
    values = empirical_chf(sample, rng.normal(size=(30, 2)))
    assert values.shape == (30,)
    assert np.all(np.abs(values) <= 1.0 + 1e-15)


def test_criterion_self_match_is_zero():
    x = np.random.default_rng(2).normal(size=(200, 2))
    assert criterion(x, x.copy(), CriterionConfig(1.0)) == 0.0
    assert criterion(x, x.copy(), CriterionConfig(5.0), within=within_sum_rows(x, 5.0)) == 0.0


@pytest.mark.parametrize('a, b', [(0.5, 0.5), (1.0, -2.0), (3.0, 0.1)])
def test_criterion_single_row(a, b):
    expected = 2 - 2 * np.sinc(a / np.pi) * np.sinc(b / np.pi)
    assert criterion([[0.0, 0.0]], [[a, b]], CriterionConfig(1.0)) == pytest.approx(expected, abs=1e-14)


@pytest.mark.parametrize('kappa', KAPPAS)
def test_criterion_matches_quadrature(kappa):
    rng = np.random.default_rng(int(kappa * 100))
    x = rng.normal(size=(50, 2))
    y = rng.normal(0.3, 1.2, size=(50, 2))
    value = criterion(x, y, CriterionConfig(kappa))
    assert value == pytest.approx(quadrature_criterion(x, y, kappa), abs=1e-6)


@pytest.mark.parametrize('kappa', KAPPAS)
def test_criterion_symmetry_and_sign(kappa):
    rng = np.random.default_rng(3)
    cfg = CriterionConfig(kappa)
    for _ in range(5):
        x = rng.normal(size=(60, 2))
        y = rng.exponential(size=(60, 2))
        forward = criterion(x, y, cfg)
        assert forward >= -1e-12
        assert criterion(y, x, cfg) == pytest.approx(forward, rel=1e-10, abs=1e-14)


def test_criterion_cached_within_sums():
    rng = np.random.default_rng(4)
    x = rng.normal(size=(80, 2))
    y = rng.normal(size=(80, 2))
    cfg = CriterionConfig(3.14)
    assert criterion(x, y, cfg, within=within_sum_rows(x, 3.14)) == criterion(x, y, cfg)


def test_criterion_size_mismatch():
    with pytest.raises(ConfigurationError):
        criterion(np.zeros((3, 2)), np.zeros((4, 2)), CriterionConfig(1.0))
    with pytest.raises(ConfigurationError):
        criterion(np.zeros((3, 3)), np.zeros((3, 3)), CriterionConfig(1.0))


def test_criterion_config():
    assert CriterionConfig().kappa == 1.0
    assert CriterionConfig().design == OrderStatDesign(3, 1, 2)
    for kappa in [0.0, -1.0, np.inf]:
        with pytest.raises(ConfigurationError):
            CriterionConfig(kappa)
