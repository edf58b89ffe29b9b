import numpy as np
import pytest

from ossieve.orderstat import OrderStatDesign
from ossieve.sieve import BaseCdf, theta_from_delta
from ossieve.utils.config import DEFAULT_TRUTH_EPS_DELTA, DEFAULT_TRUTH_XI_DELTA, RunConfig, load_config
from ossieve.utils.exceptions import ConfigurationError


def write(tmp_path, text, name='run.yml'):
    filename = tmp_path / name
    filename.write_text(text)
    return str(filename)


def test_defaults():
    config = load_config()
    assert config.design() == OrderStatDesign(3, 1, 2)
    assert (config.N, config.k, config.kappa, config.c) == (1000, 4, 1.0, 5.0)
    assert (config.draws, config.t_points, config.t_max) == (10 ** 6, 81, 4.0)
    assert config.bases() == (BaseCdf('normal', 0, 0.25), BaseCdf('truncnorm', 2, 1))
    F_xi, F_eps = config.truth()
    assert F_xi.k == F_eps.k == 6
    assert np.allclose(F_xi.theta, theta_from_delta(6, DEFAULT_TRUTH_XI_DELTA), rtol=0, atol=1e-14)
    assert np.array_equal(F_eps.delta, DEFAULT_TRUTH_EPS_DELTA)


def test_file_values_and_overrides(tmp_path):
    filename = write(tmp_path, '# sample-size study\nN: 2000\nk: 5\nkappa: 3.14\nseed: 3\njobs: 2\n')
    config = load_config(filename, seed=11, jobs=None)
    assert config.N == 2000 and config.k == 5
    assert config.kappa == 3.14
    assert config.seed == 11
    assert config.jobs == 2


def test_exponent_literals_are_numbers(tmp_path):
    # PyYAML reads 1e-8 (no dot) as a string
    config = load_config(write(tmp_path, 'simplex_tolerance: 1e-8\nc: 4\n'))
    assert config.simplex_tolerance == 1e-8
    assert isinstance(config.simplex_tolerance, float)
    assert config.c == 4.0 and isinstance(config.c, float)


def test_empty_file_uses_defaults(tmp_path):
    assert load_config(write(tmp_path, '# nothing\n')) == RunConfig.from_mapping({})


def test_truth_given_as_theta(tmp_path):
    config = load_config(write(tmp_path, 'truth_xi_theta: [0, 0, 0, 0]\ntruth_eps_theta: []\n'))
    F_xi, F_eps = config.truth()
    assert np.array_equal(F_xi.theta, np.zeros(4))
    assert F_eps.k == 0
    assert config.truth_xi_delta is None


@pytest.mark.parametrize('text', [
    'unknown_key: 1\n',
    'N: 1.5\n',
    'N: 1\n',
    'k: -1\n',
    'kappa: 0\n',
    'kappa: true\n',
    'c: hello\n',
    'starts: 0\n',
    'replications: 0\n',
    'r: 2\ns: 2\n',
    'n: 1\n',
    'xi_base: lognormal 0 1\n',
    'eps_base: normal 0 -1\n',
    'truth_xi_theta: [0.0]\ntruth_xi_delta: [0.1]\n',
    'truth_xi_delta: [100.0]\n',
    'nested:\n  N: 3\n',
    '- N\n- k\n',
    'N: [unclosed\n',
    't_max: -1\n',
])
def test_invalid_configurations(tmp_path, text):
    with pytest.raises(ConfigurationError):
        load_config(write(tmp_path, text))


def test_missing_file(tmp_path):
    with pytest.raises(ConfigurationError):
        load_config(str(tmp_path / 'absent.yml'))


def test_record_and_options():
    config = RunConfig.from_mapping({'starts': 3, 'start_spread': 0.5})
    record = config.to_record()
    assert record['starts'] == 3
    assert RunConfig.from_mapping(record) == config
    assert config.estimation_options() == {'c': 5.0, 'starts': 3, 'max_evaluations': 20000,
                                           'simplex_tolerance': 1e-6, 'start_spread': 0.5}
