import numpy as np
import pytest
from scipy.integrate import quad

from ossieve.estimator import ObservedSample, SimPanel, simulate_sample
from ossieve.orderstat import OrderStatDesign, orderstat_joint_cdf
from ossieve.sieve import BaseCdf, SieveCdf
from ossieve.utils.exceptions import ConfigurationError, DataError

DRAWS = 2 * 10 ** 5


def test_panel_draw():
    panel = SimPanel.draw(500, 3, seed=11)
    assert panel.draws.shape == (500, 4)
    assert panel.N == 500 and panel.n == 3
    assert np.all((panel.draws > 0) & (panel.draws < 1))
    assert np.array_equal(panel.draws, SimPanel.draw(500, 3, seed=11).draws)
    assert not np.array_equal(panel.draws, SimPanel.draw(500, 3, seed=12).draws)
    with pytest.raises(ValueError):
        panel.draws[0, 0] = 0.5


def test_panel_validation():
    with pytest.raises(ConfigurationError):
        SimPanel.draw(10, 1, seed=0)
    with pytest.raises(ConfigurationError):
        SimPanel(np.full((4, 4), 1.0))


def test_simulate_sample_example():
    d = OrderStatDesign(3, 1, 2)
    panel = SimPanel(np.full((2, 4), 0.5))
    sample = simulate_sample(SieveCdf('normal 0 1'), SieveCdf('exponential 1'), panel, d)
    assert np.allclose(sample.values, np.log(2), atol=1e-15)


def test_simulate_sample_rows_are_ordered():
    d = OrderStatDesign(5, 2, 4)
    panel = SimPanel.draw(1000, 5, seed=3)
    F_xi = SieveCdf('normal 0 0.25', [0.4, -0.3])
    F_eps = SieveCdf('truncnorm 2 1', [-0.2, 0.5])
    sample = simulate_sample(F_xi, F_eps, panel, d)
    assert len(sample) == 1000
    assert np.all(sample.x_r <= sample.x_s)


def test_simulate_sample_column_mismatch():
    with pytest.raises(ConfigurationError):
        simulate_sample(SieveCdf('normal 0 1'), SieveCdf('exponential 1'), SimPanel.draw(10, 4, seed=0),
                        OrderStatDesign(3, 1, 2))


def test_simulated_joint_cdf_matches_convolution():
    d = OrderStatDesign(3, 1, 2)
    G_xi = BaseCdf.from_string('normal 0 0.25')
    G_eps = BaseCdf.from_string('truncnorm 2 1')
    sample = simulate_sample(SieveCdf(G_xi), SieveCdf(G_eps), SimPanel.draw(DRAWS, 3, seed=5), d)

    for a, b in [(1.0, 2.0), (1.5, 1.5), (2.0, 3.5), (0.5, 3.0)]:
        exact, _ = quad(lambda xi: float(G_xi.pdf(xi) * orderstat_joint_cdf(G_eps, d, a - xi, b - xi)),
                        -np.inf, np.inf, epsabs=1e-12)
        empirical = np.mean((sample.x_r <= a) & (sample.x_s <= b))
        se = np.sqrt(exact * (1 - exact) / DRAWS)
        assert abs(empirical - exact) <= 4 * se


def test_observed_sample_validation(tmp_path):
    with pytest.raises(DataError):
        ObservedSample([[0.0, 1.0]])
    with pytest.raises(DataError):
        ObservedSample([[0.0, 1.0], [2.0, 1.0]])
    with pytest.raises(DataError):
        ObservedSample([[0.0, np.nan], [0.0, 1.0]])
    with pytest.raises(DataError):
        ObservedSample(np.zeros((3, 3)))

    filename = str(tmp_path / 'data.csv')
    sample = ObservedSample([[0.1, 0.2], [-1.0, 3.5], [1.0 / 3, 2.0 / 3]])
    sample.to_csv(filename)
    assert np.array_equal(ObservedSample.from_csv(filename).values, sample.values)

    with open(filename, 'w') as file:
        file.write('x_r,x_s\n0.5,0.25\n0.1,0.2\n')
    with pytest.raises(DataError):
        ObservedSample.from_csv(filename)
    with open(filename, 'w') as file:
        file.write('a,b\n0.1,0.2\n0.1,0.2\n')
    with pytest.raises(DataError):
        ObservedSample.from_csv(filename)
