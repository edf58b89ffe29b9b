r"""
Numerical identification diagnostics.

For independent :math:`\xi` and errors with parent :math:`F_\varepsilon`, the observed order statistics satisfy

.. math::
    \frac{\psi_{X_{(s)}}(t)}{\psi_{X_{(r)}}(t)} = \frac{\psi_{\varepsilon_{(s)}}(t)}{\psi_{\varepsilon_{(r)}}(t)}

wherever the denominator is nonzero. Spacings :math:`\eta_{(s)} - \eta_{(r)}` and cross-sums
:math:`\eta'_{(r)} + \eta_{(s)}` compare two candidate parents.
"""
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import ks_2samp

from ossieve.orderstat import OrderStatDesign, sample_orderstats
from ossieve.utils.exceptions import DomainError, UnsupportedOperationError
from ossieve.utils.helper_functions import open_uniforms, seed_stream
from ossieve.utils.logging import logger

FLAG_THRESHOLD = 1e-3

# stream keys, one per sampling operation
_SPACING, _CROSS_F, _CROSS_G, _CHF = 10, 11, 12, 13


def _orderstat_draws(F, d, m, rng):
    if not getattr(F, 'has_quantile', True):
        raise UnsupportedOperationError('Sampling needs a parent with a quantile function')
    if m < 1:
        raise DomainError('Need at least one draw, got m = {}'.format(m))
    return sample_orderstats(F, d, open_uniforms(rng, (int(m), d.n)))


def spacing_sample(F, n, r, s, m, seed):
    r"""``m`` i.i.d. draws of :math:`\eta_{(s)} - \eta_{(r)}` from ``n`` draws of ``F``."""
    x_r, x_s = _orderstat_draws(F, OrderStatDesign(n, r, s), m, seed_stream(seed, _SPACING))
    return x_s - x_r


def crosssum_sample(F, G, n, r, s, m, seed):
    r"""
    ``m`` i.i.d. draws of :math:`\eta'_{(r)} + \eta_{(s)}`, where :math:`\eta'` are ``n`` draws of ``G``
    and :math:`\eta` are ``n`` independent draws of ``F``.
    """
    d = OrderStatDesign(n, r, s)
    g_r, _ = _orderstat_draws(G, d, m, seed_stream(seed, _CROSS_G))
    _, f_s = _orderstat_draws(F, d, m, seed_stream(seed, _CROSS_F))
    return g_r + f_s


def empirical_cdf(sample, grid):
    sample = np.sort(np.asarray(sample, dtype=np.float64).ravel())
    return np.searchsorted(sample, np.asarray(grid, dtype=np.float64), side='right') / sample.size


def ks_distance(a, b):
    """Sup-norm distance between the empirical c.d.f.s of two samples."""
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    if a.size == 0 or b.size == 0:
        raise DomainError('Both samples must be nonempty')
    return float(ks_2samp(a, b, method='asymp').statistic)


@dataclass
class DistanceReport:
    """Two-sample Kolmogorov-Smirnov comparison."""
    statistic: float
    sample_sizes: tuple
    grid: np.ndarray
    p_value: float
    alpha: float
    verdict: str

    def to_record(self):
        return {'statistic': self.statistic, 'sample_sizes': list(self.sample_sizes), 'p_value': self.p_value,
                'alpha': self.alpha, 'verdict': self.verdict,
                'grid': [float(self.grid[0]), float(self.grid[-1]), int(self.grid.size)]}


def ks_test(a, b, alpha=1e-3, grid=None, points=201):
    """
    Two-sample KS test of equal distributions.

    :param a: First sample.
    :param b: Second sample.
    :param alpha: Significance level; "distinct" when the p-value falls below it.
    :param grid: Abscissae for c.d.f. tables; defaults to ``points`` values spanning both samples.
    :return: :class:`DistanceReport`
    """
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    if a.size == 0 or b.size == 0:
        raise DomainError('Both samples must be nonempty')
    result = ks_2samp(a, b, method='asymp')
    if grid is None:
        grid = np.linspace(min(a.min(), b.min()), max(a.max(), b.max()), points)
    verdict = 'distinct' if result.pvalue < alpha else 'aligned'
    return DistanceReport(float(result.statistic), (a.size, b.size), np.asarray(grid, dtype=np.float64),
                          float(result.pvalue), float(alpha), verdict)


def exponential_chf_ratio(t, n, r, s):
    r"""
    :math:`\psi_{\varepsilon_{(s)}}(t) / \psi_{\varepsilon_{(r)}}(t)` for a standard exponential parent.

    The spacings :math:`\varepsilon_{(i)} - \varepsilon_{(i-1)}` are independent exponentials with rates
    :math:`n - i + 1`, so the ratio is :math:`\prod_{i=r+1}^{s} (n-i+1)/(n-i+1-it)`.
    """
    OrderStatDesign(n, r, s)
    t = np.asarray(t, dtype=np.float64)
    out = np.ones(t.shape, dtype=np.complex128)
    for i in range(r + 1, s + 1):
        rate = n - i + 1
        out = out * rate / (rate - 1j * t)
    return out


@dataclass
class ChfRatioCurve:
    """Ratio of the ch.f.s of the s-th and r-th observed order statistics on a grid of t."""
    t: np.ndarray
    ratio: np.ndarray
    stderr: np.ndarray
    flagged: np.ndarray
    m: int = 0
    label: str = field(default='')

    @property
    def real(self):
        return self.ratio.real

    @property
    def imag(self):
        return self.ratio.imag


def _ratio_on_grid(x_r, x_s, t_grid):
    ratio = np.full(t_grid.shape, np.nan + 0j)
    stderr = np.full(t_grid.shape, np.nan)
    flagged = np.zeros(t_grid.shape, dtype=bool)
    m = x_r.size
    for i, t in enumerate(t_grid):
        e_r = np.exp(1j * t * x_r)
        e_s = np.exp(1j * t * x_s)
        denominator = e_r.mean()
        if abs(denominator) < FLAG_THRESHOLD:
            flagged[i] = True
            continue
        ratio[i] = e_s.mean() / denominator
        z = e_s - ratio[i] * e_r
        stderr[i] = np.sqrt(np.mean(np.abs(z - z.mean()) ** 2) / m) / abs(denominator)
    return ratio, stderr, flagged


def chf_ratio_curve(source, t_grid, m=10 ** 6, seed=0):
    r"""
    :math:`\hat\psi_{X_{(s)}}(t) / \hat\psi_{X_{(r)}}(t)` on ``t_grid``.

    ``source`` is either an observed sample (rows :math:`(x_r, x_s)`), or a model
    ``(F_eps, F_xi, design)`` simulated with ``m`` draws; ``F_xi`` may be None for the error order
    statistics alone. Points where the denominator's modulus is below 1e-3 are flagged and left as NaN.
    The standard error is the delta-method Monte Carlo error of the ratio.
    """
    t_grid = np.atleast_1d(np.asarray(t_grid, dtype=np.float64))
    if isinstance(source, tuple):
        F_eps, F_xi, d = source
        rng = seed_stream(seed, _CHF)
        x_r, x_s = _orderstat_draws(F_eps, d, m, rng)
        if F_xi is not None:
            xi = F_xi.quantile(open_uniforms(rng, (int(m),)))
            x_r, x_s = xi + x_r, xi + x_s
        label = 'model'
    else:
        rows = np.asarray(getattr(source, 'values', source), dtype=np.float64)
        x_r, x_s = rows[:, 0], rows[:, 1]
        label = 'observed'

    ratio, stderr, flagged = _ratio_on_grid(x_r, x_s, t_grid)
    if flagged.any():
        logger.warning('{} of {} ratio points flagged: denominator modulus below {:g}'
                       .format(int(flagged.sum()), t_grid.size, FLAG_THRESHOLD))
    return ChfRatioCurve(t_grid, ratio, stderr, flagged, m=int(x_r.size), label=label)
