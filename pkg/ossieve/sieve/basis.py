r"""
Legendre sieve on the unit interval.

A c.d.f. :math:`H_k(\cdot; \theta)` on [0, 1] is the normalised integral of a squared polynomial

.. math::
    p(u) = 1 - \pi_k^\top \theta + \sum_{i=1}^k \theta_i u^i = 1 + \sum_{\ell=1}^k \delta_\ell \rho_\ell(u),

with :math:`\rho_\ell(u) = \sqrt{2\ell + 1} L_\ell(2u - 1)`. The monomial coefficients :math:`\theta`
and the Legendre coefficients :math:`\delta` are related by the triangular map :math:`\delta = M\theta`,
:math:`M_{\ell i} = \mu_\ell(i - \ell)`, and the compactness restriction is the box
:math:`|\delta_\ell| \le c / (1 + \sqrt{\ell}\ln\ell)`.
"""
import functools

import numpy as np
from numpy.polynomial import Legendre
from scipy.linalg import solve_triangular
from scipy.special import gammaln

from ossieve.utils.exceptions import DomainError, InvalidCoefficientsError

DEFAULT_BOUND = 5.0
FEASIBILITY_SLACK = 1e-12


def legendre_rho(l, u):
    r"""
    Orthonormal shifted Legendre polynomial :math:`\rho_\ell(u) = \sqrt{2\ell+1} L_\ell(2u-1)`.

    Evaluated with the three-term recurrence on [-1, 1].
    """
    if l < 0:
        raise DomainError('Legendre order must be nonnegative, got {}'.format(l))
    z = 2.0 * np.asarray(u, dtype=np.float64) - 1.0
    p_prev = np.ones_like(z)
    if l == 0:
        return p_prev
    p = z
    for m in range(1, l):
        p_prev, p = p, ((2 * m + 1) * z * p - m * p_prev) / (m + 1)
    return np.sqrt(2 * l + 1) * p


def pi_matrix(k, v):
    r""":math:`\Pi_{k+1}(v) = (v^{i+j+1} / (i+j+1))_{i,j=0..k}`."""
    if k == 0 or v != 1.0:
        exponents = np.add.outer(np.arange(k + 1), np.arange(k + 1)) + 1
        return np.asarray(v, dtype=np.float64) ** exponents / exponents
    return _pi_matrix_one(k).copy()


@functools.lru_cache(maxsize=64)
def _pi_matrix_one(k):
    exponents = np.add.outer(np.arange(k + 1), np.arange(k + 1)) + 1
    out = 1.0 / exponents
    out.setflags(write=False)
    return out


def pi_vector(k):
    r""":math:`\pi_k = (1/(i+1))_{i=1..k}`."""
    return 1.0 / (np.arange(1, k + 1) + 1.0)


def mu_moment(l, m):
    r"""
    :math:`\mu_\ell(m) = \int_0^1 u^{\ell+m} \rho_\ell(u) du`.

    Uses the closed form :math:`\int_0^1 u^a L_\ell(2u-1) du = (a!)^2 / ((a-\ell)! (a+\ell+1)!)`
    for :math:`a \ge \ell`.
    """
    if l < 1 or m < 0:
        raise DomainError('mu_moment needs l >= 1 and m >= 0, got ({}, {})'.format(l, m))
    a = l + m
    return float(np.sqrt(2 * l + 1) * np.exp(2 * gammaln(a + 1) - gammaln(a - l + 1) - gammaln(a + l + 2)))


@functools.lru_cache(maxsize=64)
def mu_table(k):
    """Upper-triangular map ``M`` with ``delta = M @ theta``."""
    out = np.zeros((k, k))
    for l in range(1, k + 1):
        for i in range(l, k + 1):
            out[l - 1, i - 1] = mu_moment(l, i - l)
    out.setflags(write=False)
    return out


def theta_bounds(k, c=DEFAULT_BOUND):
    r"""Box half-widths :math:`c / (1 + \sqrt{\ell}\ln\ell)` for :math:`\ell = 1..k`."""
    l = np.arange(1, k + 1, dtype=np.float64)
    return c / (1.0 + np.sqrt(l) * np.log(l))


def delta_from_theta(k, theta):
    theta = _as_theta(k, theta)
    return mu_table(k) @ theta


def theta_from_delta(k, delta):
    delta = _as_theta(k, delta)
    if k == 0:
        return delta
    return solve_triangular(mu_table(k), delta, lower=False)


def delta_feasible(k, delta, c=DEFAULT_BOUND):
    r"""True iff the Legendre coefficients lie in the closed box (relative slack of 1e-12)."""
    delta = _as_theta(k, delta)
    if not np.all(np.isfinite(delta)):
        return False
    return bool(np.all(np.abs(delta) <= theta_bounds(k, c) * (1.0 + FEASIBILITY_SLACK)))


def theta_feasible(k, theta, c=DEFAULT_BOUND):
    r"""
    True iff :math:`\theta \in \Theta_k`.

    :math:`M\theta` is compared with the box up to the rounding of the triangular map,
    :math:`4k\epsilon (|M||\theta|)_\ell`, so that ``theta_from_delta`` of a box corner stays feasible.
    """
    theta = _as_theta(k, theta)
    if not np.all(np.isfinite(theta)):
        return False
    if k == 0:
        return True
    table = mu_table(k)
    rounding = 4 * k * np.finfo(np.float64).eps * (np.abs(table) @ np.abs(theta))
    bounds = theta_bounds(k, c)
    return bool(np.all(np.abs(table @ theta) <= bounds * (1.0 + FEASIBILITY_SLACK) + rounding))


def coefficient_vector(k, theta):
    r""":math:`a(\theta) = (1 - \pi_k^\top\theta, \theta^\top)^\top`."""
    theta = _as_theta(k, theta)
    return np.concatenate(([1.0 - pi_vector(k) @ theta], theta))


class SievePolynomial(object):
    r"""
    :math:`H_k(\cdot;\delta)` and its density for one vector of Legendre coefficients.

    The square root :math:`1 + \sum_\ell \delta_\ell \rho_\ell` is kept as a Legendre series on [0, 1],
    squared and integrated in that basis. Orthonormality gives the normaliser
    :math:`1 + \sum_\ell \delta_\ell^2` exactly.
    """

    def __init__(self, k, delta):
        self.k = k
        self.delta = _as_theta(k, delta).copy()
        self.delta.setflags(write=False)
        if not np.all(np.isfinite(self.delta)):
            raise InvalidCoefficientsError('Degenerate sieve coefficients: {}'.format(self.delta.tolist()))
        scale = np.sqrt(2.0 * np.arange(1, k + 1) + 1.0)
        self.root = Legendre(np.concatenate(([1.0], self.delta * scale)), domain=[0.0, 1.0])
        self.square = self.root * self.root
        self.integral = self.square.integ(lbnd=0.0)
        self.normaliser = 1.0 + float(self.delta @ self.delta)

    @property
    def theta(self):
        return theta_from_delta(self.k, self.delta)

    def cdf(self, v):
        v = np.asarray(v, dtype=np.float64)
        if not np.any(self.delta):
            return np.clip(v, 0.0, 1.0)
        inner = np.clip(self.integral(np.clip(v, 0.0, 1.0)) / self.normaliser, 0.0, 1.0)
        return np.where(v <= 0.0, 0.0, np.where(v >= 1.0, 1.0, inner))

    def pdf(self, v):
        v = np.asarray(v, dtype=np.float64)
        inside = (v >= 0) & (v <= 1)
        return np.where(inside, self.square(np.clip(v, 0.0, 1.0)) / self.normaliser, 0.0)


def h_cdf(k, theta, v):
    r""":math:`H_k(v;\theta) = a^\top\Pi_{k+1}(v)a / a^\top\Pi_{k+1}(1)a`, evaluated through :math:`\delta = M\theta`."""
    return SievePolynomial(k, delta_from_theta(k, theta)).cdf(v)


def h_density(k, theta, v):
    return SievePolynomial(k, delta_from_theta(k, theta)).pdf(v)


def _as_theta(k, theta):
    theta = np.atleast_1d(np.asarray(theta, dtype=np.float64)) if k else np.zeros(0)
    if theta.shape != (k,):
        raise DomainError('Expected {} sieve coefficients, got {}'.format(k, theta.shape))
    return theta
