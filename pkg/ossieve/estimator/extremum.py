r"""
Simulated sieve extremum estimator.

The estimate minimises the empirical criterion between the factual sample and the sample simulated
from :math:`(F_{\xi,k}(\cdot;\theta_\xi), F_{\varepsilon,k}(\cdot;\theta_\varepsilon))` on a fixed panel, over
:math:`\Theta_k \times \Theta_k`.
"""
import time

import numpy as np
from scipy.optimize import minimize

from ossieve.estimator.criterion import CriterionConfig, criterion, within_sum_rows
from ossieve.estimator.simulation import ObservedSample, simulate_sample
from ossieve.sieve import BaseCdf, SieveCdf, delta_feasible, delta_from_theta, theta_bounds
from ossieve.sieve.basis import DEFAULT_BOUND
from ossieve.utils.exceptions import ConfigurationError, EstimationFailedError, InvalidCoefficientsError
from ossieve.utils.helper_functions import seed_stream
from ossieve.utils.logging import logger

INITIAL_SIMPLEX_STEP = 0.1
RESTART_SIMPLEX_STEP = 0.01
MAX_SIMPLEX_RESTARTS = 3


class EstimateResult(dict):
    """ Represents the estimator result.

    Entries are also available as attributes.
    """

    def __getattr__(self, name):
        try:
            return self[name]
        except KeyError:
            raise AttributeError(name)

    def __repr__(self):
        if self.keys():
            m = max(map(len, list(self.keys()))) + 1
            return '\n'.join([k.rjust(m) + ': ' + repr(v)
                              for k, v in sorted(self.items())])
        else:
            return self.__class__.__name__ + "()"

    def to_record(self):
        return {'theta_xi': self['theta_xi'], 'theta_eps': self['theta_eps'], 'delta_xi': self['delta_xi'],
                'delta_eps': self['delta_eps'],
                'criterion_value': self['criterion_value'], 'evaluations': self['evaluations'],
                'converged': self['converged'], 'restarts_used': self['restarts_used'],
                'message': self['message'], 'best_start': self['best_start'], 'start_values': self['start_values'],
                'final_values': self['final_values'],
                'F_xi': self['F_xi'].to_record(), 'F_eps': self['F_eps'].to_record()}


class Objective(object):
    r"""
    Criterion as a function of the stacked sieve coefficients.

    Calling it takes monomial coefficients :math:`(\theta_\xi, \theta_\varepsilon)`; :meth:`in_delta` takes the
    Legendre coefficients the optimiser works in.

    Points outside :math:`\Theta_k \times \Theta_k`, or with degenerate coefficients, score ``+inf``.
    The factual within-sample sums are computed once.

    :param data: :class:`ObservedSample` of N rows.
    :param panel: :class:`SimPanel` with N rows and ``d.n + 1`` columns.
    :param d: Design.
    :param bases: (G_xi, G_eps) base distributions.
    :param k: Sieve order of both distributions.
    :param c: Coefficient box bound.
    :param kappa: Criterion half-width.
    """

    def __init__(self, data, panel, d, bases, k, c=DEFAULT_BOUND, kappa=1.0):
        self.data = data if isinstance(data, ObservedSample) else ObservedSample(data)
        if len(self.data) != panel.N:
            raise ConfigurationError('The panel must have as many rows as the data: {} != {}'
                                     .format(panel.N, len(self.data)))
        if panel.n != d.n:
            raise ConfigurationError('Panel has {} error columns but the design has n = {}'.format(panel.n, d.n))
        self.panel = panel
        self.d = d
        self.bases = tuple(b if isinstance(b, BaseCdf) else BaseCdf.from_string(b) for b in bases)
        self.k = int(k)
        self.c = float(c)
        self.cfg = CriterionConfig(kappa, d)
        self.within = within_sum_rows(self.data, self.cfg.kappa)
        self.evaluations = 0

    def split(self, theta):
        theta = np.asarray(theta, dtype=np.float64)
        return theta[:self.k], theta[self.k:]

    def bounds(self):
        return np.tile(theta_bounds(self.k, self.c), 2)

    def delta_of(self, theta):
        theta_xi, theta_eps = self.split(theta)
        return np.concatenate((delta_from_theta(self.k, theta_xi), delta_from_theta(self.k, theta_eps)))

    def sieves(self, delta):
        delta_xi, delta_eps = self.split(delta)
        return (SieveCdf.from_delta(self.bases[0], delta_xi, c=self.c, check=False),
                SieveCdf.from_delta(self.bases[1], delta_eps, c=self.c, check=False))

    def __call__(self, theta):
        return self.in_delta(self.delta_of(theta))

    def in_delta(self, delta):
        self.evaluations += 1
        delta_xi, delta_eps = self.split(delta)
        if not (delta_feasible(self.k, delta_xi, self.c) and delta_feasible(self.k, delta_eps, self.c)):
            return np.inf
        try:
            F_xi, F_eps = self.sieves(delta)
        except InvalidCoefficientsError:
            return np.inf
        sim = simulate_sample(F_xi, F_eps, self.panel, self.d)
        return criterion(self.data, sim, self.cfg, within=self.within)


def start_points(k, c=DEFAULT_BOUND, starts=8, spread=0.25, seed=0):
    r"""
    Multistart points in Legendre coordinates: zero (the base distributions) first, then
    :math:`\delta_\ell` uniform on :math:`\pm` ``spread`` times the box bound.
    """
    bounds = np.tile(theta_bounds(k, c), 2)
    rng = seed_stream(seed, 2)
    points = [np.zeros(2 * k)]
    for _ in range(starts - 1):
        points.append(spread * rng.uniform(-1.0, 1.0, 2 * k) * bounds)
    return points


def _run_start(args):
    objective, index, delta0, options = args
    value0 = objective.in_delta(delta0)
    if not np.isfinite(value0):
        return {'index': index, 'delta': delta0, 'value': np.inf, 'start_value': value0, 'nfev': 1,
                'converged': False, 'feasible': False, 'message': 'Infeasible start'}
    if delta0.size == 0:
        return {'index': index, 'delta': delta0, 'value': float(value0), 'start_value': value0, 'nfev': 1,
                'converged': True, 'feasible': True, 'message': 'Nothing to optimise at order 0'}

    budget = options['max_evaluations']
    opt = _simplex_search(objective, delta0, INITIAL_SIMPLEX_STEP, budget, options['simplex_tolerance'])
    nfev, restarts = int(opt.nfev), 0
    # rebuild a small simplex at the best vertex until a restart no longer lowers the value
    while opt.status == 0 and restarts < MAX_SIMPLEX_RESTARTS and nfev < budget:
        again = _simplex_search(objective, opt.x, RESTART_SIMPLEX_STEP, budget - nfev, options['simplex_tolerance'])
        nfev += int(again.nfev)
        restarts += 1
        if not again.fun < opt.fun:
            break
        opt = again
    logger.debug('Start {}\tValue {:13.8E} -> {:13.8E}\tEvaluations {}\tRestarts {}\t{}'
                 .format(index, value0, opt.fun, nfev, restarts, opt.message))
    return {'index': index, 'delta': opt.x, 'value': float(opt.fun), 'start_value': value0, 'nfev': nfev + 1,
            'converged': bool(opt.status == 0), 'feasible': True, 'message': opt.message,
            'simplex_restarts': restarts}


def _simplex_search(objective, delta0, step, budget, tolerance):
    simplex = np.vstack([delta0] + [delta0 + step * b * e for b, e in zip(objective.bounds(), np.eye(delta0.size))])
    return minimize(objective.in_delta, delta0, method='Nelder-Mead',
                    options={'xatol': tolerance, 'fatol': np.inf, 'maxfev': budget, 'maxiter': budget,
                             'initial_simplex': simplex, 'adaptive': True})


def estimate(data, d, bases, k, cfg, panel, **kwargs):
    r"""
    Simulated sieve extremum estimate of :math:`(F_\xi, F_\varepsilon)`.

    Each start runs Nelder-Mead in Legendre coordinates :math:`\delta = M\theta`, where
    :math:`\Theta_k` is a box, with the adaptive coefficients for larger dimensions. A start that stops on the
    simplex tolerance is restarted from a smaller simplex at its best vertex (at most three times) while
    that lowers its value. The best start wins; ties go to the lowest start index.

    +------------------------+-----------------+-----------------+
    | Valid kwargs           | Default Value   | Valid Values    |
    +========================+=================+=================+
    | c                      | 5.0             | > 0             |
    +------------------------+-----------------+-----------------+
    | starts                 | 8               | >= 1            |
    +------------------------+-----------------+-----------------+
    | max_evaluations        | 20000           | > 0             |
    +------------------------+-----------------+-----------------+
    | simplex_tolerance      | 1e-6            | > 0             |
    +------------------------+-----------------+-----------------+
    | start_spread           | 0.25            | > 0             |
    +------------------------+-----------------+-----------------+
    | seed                   | 0               | int >= 0        |
    +------------------------+-----------------+-----------------+
    | pool                   | None            | pathos Pool     |
    +------------------------+-----------------+-----------------+

    :param data: Factual :class:`ObservedSample`.
    :param d: Design.
    :param bases: (G_xi, G_eps).
    :param k: Sieve order.
    :param cfg: :class:`CriterionConfig`.
    :param panel: :class:`SimPanel` with as many rows as the data.
    :return: :class:`EstimateResult`.
    """
    c = kwargs.get('c', DEFAULT_BOUND)
    starts = int(kwargs.get('starts', 8))
    options = {'max_evaluations': int(kwargs.get('max_evaluations', 20000)),
               'simplex_tolerance': float(kwargs.get('simplex_tolerance', 1e-6))}
    spread = kwargs.get('start_spread', 0.25)
    seed = kwargs.get('seed', 0)
    pool = kwargs.get('pool', None)

    if cfg.design != d:
        raise ConfigurationError('Criterion design {} differs from the estimation design {}'.format(cfg.design, d))
    if starts < 1:
        raise ConfigurationError('At least one start is needed, got {}'.format(starts))

    time0 = time.time()
    objective = Objective(data, panel, d, bases, k, c=c, kappa=cfg.kappa)
    jobs = [(objective, index, delta0, options)
            for index, delta0 in enumerate(start_points(k, c, starts, spread, seed))]
    if pool is not None:
        runs = pool.map(_run_start, jobs)
    else:
        runs = [_run_start(job) for job in jobs]

    feasible = [run for run in runs if run['feasible']]
    if not feasible:
        raise EstimationFailedError('All {} starts are infeasible'.format(starts))
    for run in feasible:
        if not run['converged']:
            logger.warning('Start {} stopped before the simplex converged: {}'.format(run['index'], run['message']))

    best = min(feasible, key=lambda run: (run['value'], run['index']))
    F_xi, F_eps = objective.sieves(best['delta'])
    value = objective.in_delta(best['delta'])

    elapsed_time = time.time() - time0
    logger.info('Estimation finished in {:.2f} seconds, criterion {:13.8E} from start {}'
                .format(elapsed_time, value, best['index']))

    return EstimateResult(theta_xi=F_xi.theta.copy(), theta_eps=F_eps.theta.copy(), delta_xi=F_xi.delta.copy(),
                          delta_eps=F_eps.delta.copy(), criterion_value=float(value),
                          evaluations=sum(run['nfev'] for run in runs), converged=best['converged'],
                          restarts_used=len(feasible), message=str(best['message']), best_start=best['index'],
                          start_values=[float(run['start_value']) for run in runs],
                          final_values=[float(run['value']) for run in runs], F_xi=F_xi, F_eps=F_eps)


def sup_norm_error(F_hat, F_true, grid):
    r""":math:`\max_x |\hat F(x) - F(x)|` over ``grid``."""
    grid = np.asarray(grid, dtype=np.float64)
    return float(np.max(np.abs(F_hat.cdf(grid) - F_true.cdf(grid))))
