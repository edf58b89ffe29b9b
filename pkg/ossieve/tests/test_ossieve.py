import os

import numpy as np
import pytest

import ossieve.estimator.extremum as extremum
import ossieve.ossieve as ossieve_module
from ossieve import run_estimate, run_montecarlo, run_rossberg, run_simulate
from ossieve.estimator import ObservedSample
from ossieve.ossieve import estimation_panel, evaluation_grid, replication_seed, simulate_data, summarize
from ossieve.utils import load, load_record, read_table
from ossieve.utils.config import RunConfig, load_config
from ossieve.utils.exceptions import ConfigurationError, DataError, DomainError, NullEventError, EXIT_ESTIMATION_FAILED

SMALL = {'N': 40, 'k': 1, 'starts': 2, 'max_evaluations': 150, 'replications': 2, 'seed': 5}
# sample-size study: order-6 truth, n = 3, r = 1, s = 2, kappa = 1
STUDY = {'replications': 20, 'seed': 2024, 'jobs': 4, 'starts': 4, 'max_evaluations': 6000,
         'simplex_tolerance': 1e-4}
STUDY_DESIGNS = [(1000, 4), (2000, 5), (4000, 6)]


def small_config(**overrides):
    return RunConfig.from_mapping(dict(SMALL, **overrides))


def test_simulate_is_deterministic(tmp_path):
    config = small_config(N=5)
    first, second = str(tmp_path / 'a.csv'), str(tmp_path / 'b.csv')
    run_simulate(config, first)
    run_simulate(config, second)
    with open(first) as a, open(second) as b:
        text = a.read()
        assert text == b.read()
    assert text.startswith('x_r,x_s\n')
    data = ObservedSample.from_csv(first)
    assert len(data) == 5
    assert np.all(data.x_r <= data.x_s)


def test_seeds_give_different_samples():
    config = small_config()
    assert not np.array_equal(simulate_data(config, seed=1).values, simulate_data(config, seed=2).values)
    assert replication_seed(5, 0) != replication_seed(5, 1)


def test_unwritable_output(tmp_path):
    with pytest.raises(ConfigurationError):
        run_simulate(small_config(), str(tmp_path / 'missing' / 'data.csv'))


def test_self_matched_estimate(tmp_path):
    config = small_config(N=60, k=2, truth_xi_theta=[0.0, 0.0], truth_eps_theta=[0.0, 0.0])
    panel = estimation_panel(config)
    filename = str(tmp_path / 'data.csv')
    run_simulate(config, filename, panel=panel)
    result = run_estimate(config, filename, str(tmp_path / 'fit'), panel=panel)
    assert result.criterion_value < 1e-12

    record = load_record(str(tmp_path / 'fit' / 'estimate.yml'))
    assert record['criterion_value'] == result.criterion_value
    names, curves = read_table(str(tmp_path / 'fit' / 'curves.csv'), ('x', 'F_xi_hat', 'F_eps_hat'))
    assert curves.shape == (201, 3)
    assert np.all(np.diff(curves, axis=0) >= 0)
    assert np.all((curves[:, 1:] >= 0) & (curves[:, 1:] <= 1))


def test_estimate_rejects_size_mismatch(tmp_path):
    filename = str(tmp_path / 'data.csv')
    run_simulate(small_config(N=30), filename)
    with pytest.raises(ConfigurationError):
        run_estimate(small_config(N=40), filename, str(tmp_path / 'fit'))


def test_montecarlo_outputs(tmp_path):
    config = small_config()
    out = run_montecarlo(config, str(tmp_path / 'mc'))
    for name in ['replications.csv', 'summary.csv', 'runtimes.csv', 'results.pickle']:
        assert os.path.isfile(str(tmp_path / 'mc' / name))

    names, rows = read_table(str(tmp_path / 'mc' / 'replications.csv'))
    assert names == ['replication', 'seed', 'criterion', 'sup_error_xi', 'sup_error_eps', 'converged', 'status']
    assert rows.shape == (2, 7)
    assert list(rows[:, 0]) == [0, 1]
    assert list(rows[:, 1]) == [replication_seed(5, 0), replication_seed(5, 1)]
    assert np.all(rows[:, 2] >= 0)
    assert np.all((rows[:, 3] >= 0) & (rows[:, 3] <= 1))
    assert out['summary']['replications'] == 2

    saved = load(str(tmp_path / 'mc' / 'results.pickle'))
    assert saved['config']['seed'] == 5
    assert saved['results'][1].criterion_value == rows[1, 2]


def test_montecarlo_is_reproducible(tmp_path):
    run_montecarlo(small_config(), str(tmp_path / 'first'))
    run_montecarlo(small_config(jobs=2), str(tmp_path / 'second'))
    for name in ['replications.csv', 'summary.csv']:
        with open(str(tmp_path / 'first' / name)) as a, open(str(tmp_path / 'second' / name)) as b:
            assert a.read() == b.read()


def test_replication_matches_single_run():
    config = small_config()
    seed = replication_seed(config.seed, 1)
    assert np.array_equal(simulate_data(config, seed=seed).values,
                          simulate_data(small_config(seed=seed)).values)


def test_failed_replications_are_recorded(tmp_path, monkeypatch):
    monkeypatch.setattr(extremum, 'delta_feasible', lambda *args: False)
    out = run_montecarlo(small_config(), str(tmp_path / 'mc'))
    assert [row['status'] for row in out['rows']] == [EXIT_ESTIMATION_FAILED] * 2
    assert out['summary']['failed'] == 2
    assert np.isnan(out['summary']['sup_error_xi_median'])
    table = np.loadtxt(str(tmp_path / 'mc' / 'replications.csv'), delimiter=',', skiprows=1, ndmin=2)
    assert np.all(np.isnan(table[:, 2]))
    assert list(table[:, 6]) == [EXIT_ESTIMATION_FAILED] * 2


@pytest.mark.parametrize('error', [DataError, DomainError, NullEventError])
def test_library_errors_fail_one_replication(tmp_path, monkeypatch, error):
    config = small_config()
    failing_seed = replication_seed(config.seed, 0)
    fit = ossieve_module.estimate

    def estimate(*args, seed=None, **kwargs):
        if seed == failing_seed:
            raise error('bad replication')
        return fit(*args, seed=seed, **kwargs)

    monkeypatch.setattr(ossieve_module, 'estimate', estimate)
    out = run_montecarlo(config, str(tmp_path / 'mc'))
    first, second = out['rows']
    assert first['status'] == EXIT_ESTIMATION_FAILED and np.isnan(first['sup_error_xi'])
    assert second['status'] != EXIT_ESTIMATION_FAILED and np.isfinite(second['sup_error_xi'])
    assert out['summary']['failed'] == 1


def test_summarize():
    rows = [{'status': 0, 'criterion': c, 'sup_error_xi': c, 'sup_error_eps': 2 * c} for c in [1.0, 2.0, 3.0, 4.0]]
    rows.append({'status': EXIT_ESTIMATION_FAILED, 'criterion': np.nan, 'sup_error_xi': np.nan,
                 'sup_error_eps': np.nan})
    summary = summarize(rows)
    assert summary['replications'] == 5 and summary['failed'] == 1
    assert summary['criterion_median'] == 2.5
    assert summary['criterion_iqr'] == 1.5
    assert summary['sup_error_eps_median'] == 5.0


def test_evaluation_grid():
    F_xi, _ = small_config().truth()
    grid = evaluation_grid(F_xi, points=11)
    assert grid.size == 11
    assert np.all(np.diff(grid) > 0)
    assert F_xi.cdf(grid[0]) == pytest.approx(1e-3, abs=1e-10)


def test_rossberg_tables(tmp_path):
    config = RunConfig.from_mapping({'n': 2, 's': 2, 'xi_base': 'normal 0 1', 'truth_xi_theta': [],
                                     'draws': 20000, 't_points': 21, 'seed': 3})
    out = run_rossberg(config, str(tmp_path / 'rb'))
    for name in ['ratio_real.csv', 'ratio_imag.csv']:
        # small denominators towards the ends of the grid may be flagged as nan at this sample size
        table = np.loadtxt(str(tmp_path / 'rb' / name), delimiter=',', skiprows=1, ndmin=2)
        assert table.shape == (21, 4)
        assert (table[0, 0], table[-1, 0]) == (-4.0, 4.0)
        origin = table[10]
        assert abs(origin[0]) < 1e-12
        assert np.allclose(origin[1:], 1.0 if name == 'ratio_real.csv' else 0.0, atol=1e-12)
    for name in ['spacing_cdf.csv', 'crosssum_cdf.csv']:
        _, table = read_table(str(tmp_path / 'rb' / name), ('x', 'exponential', 'rossberg'))
        assert np.all(np.diff(table[:, 1:], axis=0) >= 0)
        assert np.all((table[:, 1:] >= 0) & (table[:, 1:] <= 1))
    report = load_record(str(tmp_path / 'rb' / 'distance_report.yml'))
    assert report['design'] == [2, 1, 2]
    assert report['spacing']['sample_sizes'] == [20000, 20000]
    assert report['crosssum']['verdict'] in ('aligned', 'distinct')
    assert out['spacing'].statistic < 0.03



def test_rossberg_grid_follows_configuration(tmp_path):
    config = RunConfig.from_mapping({'n': 2, 's': 2, 'xi_base': 'normal 0 1', 'truth_xi_theta': [],
                                     'draws': 2000, 't_points': 5, 't_max': 2.5})
    out = run_rossberg(config, str(tmp_path / 'rb'))
    assert np.array_equal(out['t'], np.linspace(-2.5, 2.5, 5))
    table = np.loadtxt(str(tmp_path / 'rb' / 'ratio_real.csv'), delimiter=',', skiprows=1, ndmin=2)
    assert np.array_equal(table[:, 0], out['t'])

@pytest.mark.slow
def test_rossberg_reproduction(tmp_path):
    config = RunConfig.from_mapping({'n': 2, 's': 2, 'xi_base': 'normal 0 1', 'truth_xi_theta': [], 'seed': 7})
    out = run_rossberg(config, str(tmp_path / 'rb'))
    assert out['spacing'].statistic < 0.004
    assert out['crosssum'].verdict == 'distinct'
    t = out['t']
    observed, rossberg = out['observed'], out['rossberg']
    near = np.abs(t) <= 2
    assert np.all(np.abs(observed.ratio - out['exponential'])[near] <= 4 * observed.stderr[near] + 1e-12)
    far = [np.argmin(np.abs(t + 2)), np.argmin(np.abs(t - 2))]
    assert np.all(np.abs(rossberg.ratio - out['exponential'])[far] > 4 * rossberg.stderr[far])


@pytest.mark.slow
def test_montecarlo_errors_shrink_with_sample_size(tmp_path):
    medians = []
    for N, k in STUDY_DESIGNS:
        config = RunConfig.from_mapping(dict(STUDY, N=N, k=k))
        assert config.truth()[0].k == 6
        medians.append(run_montecarlo(config, str(tmp_path / str(N)))['summary'])
    for column in ['sup_error_xi_median', 'sup_error_eps_median']:
        assert medians[-1][column] <= 0.05
        assert all(later[column] <= earlier[column] for earlier, later in zip(medians, medians[1:]))
    assert all(summary['failed'] == 0 for summary in medians)


@pytest.mark.parametrize('N, k', STUDY_DESIGNS)
def test_study_configs(N, k):
    filename = os.path.join(os.path.dirname(__file__), '..', '..', 'configs', 'montecarlo_n{}_k{}.yml'.format(N, k))
    config = load_config(filename, jobs=4)
    assert config == RunConfig.from_mapping(dict(STUDY, N=N, k=k))
