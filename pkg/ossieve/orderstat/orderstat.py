r"""
Finite-sample distribution theory of order statistics of an i.i.d. sample.

For :math:`\eta_1, \ldots, \eta_n` i.i.d. with parent c.d.f. :math:`F`,

.. math::
    F_{(j)}(x) = \sum_{\ell=j}^n \binom{n}{\ell} F(x)^\ell (1 - F(x))^{n-\ell} = I_{F(x)}(j, n - j + 1)

where :math:`I_p(a, b)` is the regularized incomplete beta function.
"""
import functools
from dataclasses import dataclass

import numpy as np
from scipy.special import betainc, betaincinv, gammaln
from scipy.stats import beta as beta_dist

from ossieve.utils.exceptions import DomainError, NullEventError, UnsupportedOperationError
from ossieve.utils.helper_functions import bracketed_newton


@dataclass(frozen=True)
class OrderStatDesign:
    """Ranks ``r < s`` of the two observed order statistics among ``n`` measurements."""
    n: int
    r: int
    s: int

    def __post_init__(self):
        if self.n < 2:
            raise DomainError('Design needs at least two measurements, got n = {}'.format(self.n))
        if not 1 <= self.r < self.s <= self.n:
            raise DomainError('Design must satisfy 1 <= r < s <= n, got (n, r, s) = ({}, {}, {})'
                              .format(self.n, self.r, self.s))

    def __str__(self):
        return '(n={}, r={}, s={})'.format(self.n, self.r, self.s)


class ParentCdf(object):
    """
    Parent distribution built from plain callables.

    Any object with ``cdf``, ``lower`` and (optionally) ``quantile`` can be used wherever a parent is
    expected; this class adapts functions to that interface.

    :param cdf: Vectorised c.d.f.
    :param quantile: Vectorised quantile function, or None.
    :param lower: Lower bound of the support (``-inf`` if unbounded).
    :param name: Label used in logs and reports.
    """

    def __init__(self, cdf, quantile=None, lower=-np.inf, name='parent'):
        self._cdf = cdf
        self._quantile = quantile
        self.lower = lower
        self.name = name

    def __repr__(self):
        return 'ParentCdf({})'.format(self.name)

    @classmethod
    def exponential(cls, rate=1.0):
        def cdf(x):
            x = np.asarray(x, dtype=np.float64)
            return np.where(x > 0, -np.expm1(-rate * np.maximum(x, 0)), 0.0)

        def quantile(p):
            return -np.log1p(-np.asarray(p, dtype=np.float64)) / rate

        return cls(cdf, quantile, lower=0.0, name='exponential({:g})'.format(rate))

    @property
    def has_quantile(self):
        return self._quantile is not None

    def cdf(self, x):
        return np.clip(self._cdf(np.asarray(x, dtype=np.float64)), 0.0, 1.0)

    def quantile(self, p):
        if self._quantile is None:
            raise UnsupportedOperationError('{} has no quantile function'.format(self.name))
        return self._quantile(np.asarray(p, dtype=np.float64))


def _check_rank(n, j):
    if n < 1 or not 1 <= j <= n:
        raise DomainError('Rank j = {} is outside [1, {}]'.format(j, n))


@functools.lru_cache(maxsize=128)
def _joint_terms(n, r, s):
    """(j, k, multinomial coefficient) triples of the joint c.d.f. sum."""
    terms = []
    for k in range(s, n + 1):
        for j in range(r, k + 1):
            log_coef = gammaln(n + 1) - gammaln(j + 1) - gammaln(k - j + 1) - gammaln(n - k + 1)
            terms.append((j, k, float(np.exp(log_coef))))
    return tuple(terms)


def orderstat_cdf(F, n, j, x):
    r"""
    C.d.f. of the :math:`j`-th order statistic of :math:`n` i.i.d. draws from ``F``.

    :param F: Parent distribution.
    :param n: Sample size.
    :param j: Rank, :math:`1 \le j \le n`.
    :param x: Evaluation point(s).
    :return: :math:`P(\eta_{(j)} \le x)`.
    """
    _check_rank(n, j)
    return betainc(j, n - j + 1, F.cdf(x))


def orderstat_joint_cdf(F, d, x_r, x_s):
    r"""
    Joint c.d.f. :math:`P(\eta_{(r)} \le x_r, \eta_{(s)} \le x_s)`.

    Sums the multinomial probabilities of having :math:`j \ge r` draws below :math:`x_r` and
    :math:`k \ge s` draws below :math:`x_s`. For :math:`x_r > x_s` the first event is implied by
    the second, so :math:`x_r` is replaced by :math:`\min(x_r, x_s)`.
    """
    x_s = np.asarray(x_s, dtype=np.float64)
    x_r = np.minimum(np.asarray(x_r, dtype=np.float64), x_s)
    p_r = F.cdf(x_r)
    p_s = F.cdf(x_s)
    between = np.clip(p_s - p_r, 0.0, 1.0)
    above = 1.0 - p_s

    total = np.zeros(np.broadcast(p_r, p_s).shape)
    for j, k, coef in _joint_terms(d.n, d.r, d.s):
        total = total + coef * p_r ** j * between ** (k - j) * above ** (d.n - k)
    return np.clip(total, 0.0, 1.0)


def conditional_cdf_given_r(F, d, x_s, x_r):
    r"""
    :math:`P(\eta_{(s)} \le x_s \mid \eta_{(r)} \le x_r)`.

    Raises :class:`NullEventError` where :math:`F_{(r)}(x_r) = 0`; use
    :func:`conditional_limit_cdf` for the limit :math:`x_r \downarrow 0`.
    """
    denominator = orderstat_cdf(F, d.n, d.r, x_r)
    if np.any(denominator <= 0):
        raise NullEventError('Conditioning on a null event: F_(r)(x_r) = 0')
    return np.clip(orderstat_joint_cdf(F, d, x_r, x_s) / denominator, 0.0, 1.0)


def conditional_limit_cdf(F, d, c):
    r"""
    Limit of :func:`conditional_cdf_given_r` as the conditioning bound shrinks to the support
    bound 0: the c.d.f. of the :math:`(s - r)`-th order statistic of :math:`n - r` draws.
    """
    if F.lower != 0:
        raise DomainError('The conditional limit needs a parent supported on [0, inf), got lower bound {}'
                          .format(F.lower))
    c = np.asarray(c, dtype=np.float64)
    return np.where(c > 0, orderstat_cdf(F, d.n - d.r, d.s - d.r, c), 0.0)


def parent_from_orderstat(y, n, j):
    r"""
    Recovers :math:`F(x)` from :math:`F_{(j)}(x) = y` by inverting :math:`p \mapsto I_p(j, n-j+1)`.

    The map is strictly increasing; it is inverted by bracketed Newton iteration on [0, 1] started
    from :func:`scipy.special.betaincinv`, to an absolute tolerance of 1e-12.
    """
    _check_rank(n, j)
    y = np.asarray(y, dtype=np.float64)
    if np.any((y < 0) | (y > 1)) or np.any(np.isnan(y)):
        raise DomainError('Order-statistic c.d.f. values must lie in [0, 1]')

    a, b = j, n - j + 1
    density = beta_dist(a, b).pdf
    p = bracketed_newton(lambda q: betainc(a, b, q), density, y, 0.0, 1.0, x0=betaincinv(a, b, y),
                         xtol=1e-12)
    p = np.where(y <= 0, 0.0, np.where(y >= 1, 1.0, p))
    return p if p.ndim else float(p)


def sample_orderstats(F, d, u):
    r"""
    Maps uniforms to the :math:`(r, s)` order statistics of :math:`n` draws from ``F``.

    Because the quantile is monotone, sorting ``u`` and transforming the :math:`r`-th and
    :math:`s`-th entries gives the order statistics of :math:`F^{-1}(u)`.

    :param F: Parent with a quantile function.
    :param d: Design.
    :param u: Uniforms in (0, 1) with last axis of length ``n``.
    :return: (x_r, x_s), floats for a single vector, arrays for a stack of rows.
    """
    if not getattr(F, 'has_quantile', True):
        raise UnsupportedOperationError('Sampling needs a parent with a quantile function')
    u = np.asarray(u, dtype=np.float64)
    if u.shape[-1] != d.n:
        raise DomainError('Expected {} uniforms per row, got {}'.format(d.n, u.shape[-1]))

    u_sorted = np.sort(u, axis=-1)
    x_r = F.quantile(u_sorted[..., d.r - 1])
    x_s = F.quantile(u_sorted[..., d.s - 1])
    if u.ndim == 1:
        return float(x_r), float(x_s)
    return x_r, x_s
