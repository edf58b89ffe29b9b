import os
import sys
import time
import logging

import numpy as np
import pathos.multiprocessing
from tqdm import tqdm

from ossieve.diagnostics import RossbergCdf, chf_ratio_curve, crosssum_sample, empirical_cdf, exponential_chf_ratio, \
    ks_test, spacing_sample
from ossieve.estimator import CriterionConfig, ObservedSample, SimPanel, estimate, simulate_sample, sup_norm_error
from ossieve.orderstat import ParentCdf
from ossieve.utils import derived_seed, dump_record, init_logging, save, write_table
from ossieve.utils.exceptions import ConfigurationError, DataError, DomainError, EstimationFailedError, \
    InvalidCoefficientsError, NullEventError, EXIT_ESTIMATION_FAILED, EXIT_NOT_CONVERGED, EXIT_SUCCESS
from ossieve.utils.logging import fit_string, log_environment, logger, progress_enabled

# errors that fail one replication without stopping the study
REPLICATION_ERRORS = (EstimationFailedError, InvalidCoefficientsError, DataError, DomainError, NullEventError)

# sub-seeds of a run seed
DATA_STREAM, PANEL_STREAM, REPLICATION_STREAM = 0, 1, 2
SPACING_STREAMS = (3, 4)
CROSSSUM_STREAMS = (5, 6)

CURVE_POINTS = 201
CURVE_HEADER = ('x', 'F_xi_hat', 'F_eps_hat')
REPLICATION_HEADER = ('replication', 'seed', 'criterion', 'sup_error_xi', 'sup_error_eps', 'converged', 'status')
SUMMARY_COLUMNS = ('criterion', 'sup_error_xi', 'sup_error_eps')


def add_logger(display_level=logging.INFO, file_level=logging.DEBUG, filename='ossieve.log'):
    """
    Attaches a logger to ossieve's main process.

    :keyword display_level: The level at which logging is displayed to stdout.
    :keyword file_level: The level at which logging is written to the output file.
    :keyword filename: Name of the log file. Default is `ossieve.log`.
    :return: None

    .. seealso::
            logging.FileHandler
    """
    init_logging(display_level=display_level, file_level=file_level, filename=filename)


def _make_pool(jobs):
    if jobs < 1:
        raise ConfigurationError('Number of jobs must be at least 1, got {}'.format(jobs))
    if jobs > 1:
        return pathos.multiprocessing.Pool(processes=jobs)
    return None


def _close_pool(pool):
    if pool is not None:
        pool.close()
        pool.join()


def _output_dir(out):
    try:
        os.makedirs(out, exist_ok=True)
    except OSError as e:
        raise ConfigurationError('Unable to create output directory {}: {}'.format(out, e))
    return out


def replication_seed(seed, index):
    """Seed of Monte Carlo replication ``index``; a single-replication run with this seed reproduces it."""
    return derived_seed(derived_seed(seed, REPLICATION_STREAM), index)


def simulate_data(config, seed=None, panel=None):
    r"""
    Known-truth sample of ``config.N`` rows :math:`(X_{(r)}, X_{(s)})`.

    :param config: :class:`RunConfig`.
    :param seed: Run seed; defaults to ``config.seed``.
    :param panel: Uniform draws to use instead of the data panel of ``seed``.
    :return: :class:`ObservedSample`.
    """
    seed = config.seed if seed is None else seed
    if panel is None:
        panel = SimPanel.draw(config.N, config.n, derived_seed(seed, DATA_STREAM))
    F_xi, F_eps = config.truth()
    return simulate_sample(F_xi, F_eps, panel, config.design())


def estimation_panel(config, N=None, seed=None):
    """Simulation panel of the estimator, independent of the data panel of the same seed."""
    seed = config.seed if seed is None else seed
    return SimPanel.draw(config.N if N is None else N, config.n, derived_seed(seed, PANEL_STREAM))


def evaluation_grid(F, points=CURVE_POINTS):
    """``points`` abscissae between the 0.001 and 0.999 quantiles of ``F``."""
    return F.quantile(np.linspace(1e-3, 1 - 1e-3, points))


def run_simulate(config, filename, panel=None):
    """Writes a known-truth sample to ``filename`` and returns it."""
    data = simulate_data(config, panel=panel)
    try:
        data.to_csv(filename)
    except OSError as e:
        raise ConfigurationError('Unable to write {}: {}'.format(filename, e))
    logger.info('Wrote {} rows to {}'.format(len(data), filename))
    return data


def run_estimate(config, data, out, panel=None):
    """
    Estimates :math:`(F_\\xi, F_\\varepsilon)` from an observed sample.

    Writes ``estimate.yml`` (the estimate record) and ``curves.csv`` (both fitted c.d.f.s on a grid
    spanning the data) into ``out``.

    :param config: :class:`RunConfig`.
    :param data: :class:`ObservedSample` or the path of its CSV file.
    :param out: Output directory.
    :param panel: Simulation panel; defaults to the estimation panel of ``config.seed``.
    :return: :class:`EstimateResult`.
    """
    if not isinstance(data, ObservedSample):
        data = ObservedSample.from_csv(data)
    logger.info('Loaded {!r}'.format(data))
    if len(data) != config.N:
        raise ConfigurationError('Data has {} rows but the configuration asks for N = {}'.format(len(data), config.N))
    if panel is None:
        panel = estimation_panel(config)

    log_environment(config.jobs)
    d = config.design()
    pool = _make_pool(config.jobs)
    try:
        result = estimate(data, d, config.bases(), config.k, CriterionConfig(config.kappa, d), panel,
                          seed=config.seed, pool=pool, **config.estimation_options())
    finally:
        _close_pool(pool)

    _output_dir(out)
    dump_record(result.to_record(), os.path.join(out, 'estimate.yml'))
    x = np.linspace(data.values.min(), data.values.max(), CURVE_POINTS)
    write_table(os.path.join(out, 'curves.csv'), CURVE_HEADER,
                np.column_stack((x, result.F_xi.cdf(x), result.F_eps.cdf(x))))
    return result


def _replication(args):
    config, index = args
    seed = replication_seed(config.seed, index)
    d = config.design()
    F_xi, F_eps = config.truth()
    row = {'replication': index, 'seed': seed, 'criterion': np.nan, 'sup_error_xi': np.nan,
           'sup_error_eps': np.nan, 'converged': 0, 'status': EXIT_ESTIMATION_FAILED}

    time0 = time.time()
    try:
        data = simulate_data(config, seed=seed)
        result = estimate(data, d, config.bases(), config.k, CriterionConfig(config.kappa, d),
                          estimation_panel(config, seed=seed), seed=seed, **config.estimation_options())
    except REPLICATION_ERRORS as e:
        logger.warning('Replication {} failed: {}'.format(index, e))
        result = None
    else:
        row.update(criterion=result.criterion_value,
                   sup_error_xi=sup_norm_error(result.F_xi, F_xi, evaluation_grid(F_xi)),
                   sup_error_eps=sup_norm_error(result.F_eps, F_eps, evaluation_grid(F_eps)),
                   converged=int(result.converged),
                   status=EXIT_SUCCESS if result.converged else EXIT_NOT_CONVERGED)
    row['runtime'] = time.time() - time0
    row['result'] = result
    return row


def _median_iqr(column):
    column = column[np.isfinite(column)]
    if column.size == 0:
        return np.nan, np.nan
    q25, q50, q75 = np.percentile(column, [25, 50, 75])
    return q50, q75 - q25


def summarize(rows):
    """Median and interquartile range of each error column over the successful replications."""
    summary = {'replications': len(rows), 'failed': sum(row['status'] == EXIT_ESTIMATION_FAILED for row in rows)}
    for name in SUMMARY_COLUMNS:
        median, iqr = _median_iqr(np.array([row[name] for row in rows], dtype=np.float64))
        summary[name + '_median'] = median
        summary[name + '_iqr'] = iqr
    return summary


def run_montecarlo(config, out):
    """
    Known-truth Monte Carlo study: ``config.replications`` independent simulate-then-estimate runs.

    Replications run on a pool of ``config.jobs`` processes and are written in replication order, so
    ``replications.csv`` and ``summary.csv`` do not depend on the number of jobs. Wall-clock times go to
    ``runtimes.csv``; every :class:`EstimateResult` is pickled to ``results.pickle``.

    :return: dict with the per-replication ``rows`` and the ``summary``.
    """
    _output_dir(out)
    log_environment(config.jobs)
    time0 = time.time()

    jobs = [(config, index) for index in range(config.replications)]
    pool = _make_pool(config.jobs)
    runs = pool.imap(_replication, jobs) if pool is not None else map(_replication, jobs)
    progress = tqdm(runs, total=len(jobs), disable=not progress_enabled(), file=sys.stdout, ascii=True,
                    desc='Monte Carlo ({})'.format(fit_string('N={} k={}'.format(config.N, config.k), 16)),
                    unit='replications')
    rows = []
    try:
        for row in progress:
            logger.info('Replication {} done in {:.2f} seconds'.format(row['replication'], row['runtime']))
            rows.append(row)
    finally:
        _close_pool(pool)

    write_table(os.path.join(out, 'replications.csv'), REPLICATION_HEADER,
                [[row[name] for name in REPLICATION_HEADER] for row in rows])
    summary = summarize(rows)
    write_table(os.path.join(out, 'summary.csv'), tuple(summary), [list(summary.values())])
    write_table(os.path.join(out, 'runtimes.csv'), ('replication', 'seconds'),
                [[row['replication'], row['runtime']] for row in rows])
    save(results=[row['result'] for row in rows], config=config.to_record(),
         filename=os.path.join(out, 'results.pickle'))

    logger.info('Monte Carlo study of {} replications finished in {:.2f} seconds'
                .format(len(rows), time.time() - time0))
    return {'rows': rows, 'summary': summary}


def run_rossberg(config, out):
    """
    Spacing, cross-sum and ch.f.-ratio comparison of the exponential parent with Rossberg's parent.

    Observations are ``config.draws`` rows of :math:`\\xi + \\varepsilon_{(j)}` with standard exponential
    errors and the configured latent truth. Writes ``ratio_real.csv``, ``ratio_imag.csv`` (columns t,
    observed, exponential, rossberg), ``spacing_cdf.csv``, ``crosssum_cdf.csv`` and
    ``distance_report.yml`` into ``out``.

    :return: dict of the ratio curves and the two :class:`DistanceReport` objects.
    """
    _output_dir(out)
    d = config.design()
    m, seed = config.draws, config.seed
    exponential = ParentCdf.exponential(1.0)
    rossberg = RossbergCdf()
    F_xi, _ = config.truth()

    t = np.linspace(-config.t_max, config.t_max, config.t_points)
    observed = simulate_sample(F_xi, exponential, SimPanel.draw(m, d.n, derived_seed(seed, DATA_STREAM)), d)
    observed_curve = chf_ratio_curve(observed, t)
    rossberg_curve = chf_ratio_curve((rossberg, None, d), t, m=m, seed=seed)
    exponential_ratio = exponential_chf_ratio(t, d.n, d.r, d.s)
    for part, name in (('real', 'ratio_real.csv'), ('imag', 'ratio_imag.csv')):
        write_table(os.path.join(out, name), ('t', 'observed', 'exponential', 'rossberg'),
                    np.column_stack((t, getattr(observed_curve, part), getattr(exponential_ratio, part),
                                     getattr(rossberg_curve, part))))

    spacings = [spacing_sample(F, d.n, d.r, d.s, m, seed=derived_seed(seed, stream))
                for F, stream in zip((exponential, rossberg), SPACING_STREAMS)]
    crosssums = [crosssum_sample(exponential, G, d.n, d.r, d.s, m, seed=derived_seed(seed, stream))
                 for G, stream in zip((exponential, rossberg), CROSSSUM_STREAMS)]
    reports = {}
    for name, (a, b) in (('spacing', spacings), ('crosssum', crosssums)):
        report = ks_test(a, b)
        write_table(os.path.join(out, name + '_cdf.csv'), ('x', 'exponential', 'rossberg'),
                    np.column_stack((report.grid, empirical_cdf(a, report.grid), empirical_cdf(b, report.grid))))
        logger.info('{} KS statistic {:.5f}, p-value {:.3g}: {}'
                    .format(name, report.statistic, report.p_value, report.verdict))
        reports[name] = report

    dump_record({'design': [d.n, d.r, d.s], 'draws': m, 'seed': seed,
                 'spacing': reports['spacing'].to_record(), 'crosssum': reports['crosssum'].to_record(),
                 'flagged': {'observed': int(observed_curve.flagged.sum()),
                             'rossberg': int(rossberg_curve.flagged.sum())}},
                os.path.join(out, 'distance_report.yml'))
    return {'t': t, 'observed': observed_curve, 'exponential': exponential_ratio, 'rossberg': rossberg_curve,
            'spacing': reports['spacing'], 'crosssum': reports['crosssum']}
