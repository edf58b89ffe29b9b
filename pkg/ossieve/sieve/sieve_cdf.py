r"""
Sieve c.d.f. :math:`F_k(x; \theta) = H_k(G(x); \theta)` around a known base :math:`G`.
"""
import numpy as np

from ossieve.sieve.base_cdf import BaseCdf
from ossieve.sieve.basis import DEFAULT_BOUND, SievePolynomial, delta_feasible, delta_from_theta, theta_feasible
from ossieve.utils.exceptions import BoundaryError, DomainError
from ossieve.utils.helper_functions import bracketed_newton
from ossieve.utils.storage import dump_record, load_record

QUANTILE_FTOL = 1e-13
QUANTILE_XTOL = 1e-15


class SieveCdf(object):
    r"""
    Distribution with c.d.f. :math:`H_k(G(x);\theta)` and density :math:`h_k(G(x);\theta) g(x)`.

    The Legendre coefficients :math:`\delta = M\theta` are the stored coordinate; :attr:`theta` is derived
    from them. Use :meth:`from_delta` to build one without passing through the monomial basis.

    :param base: :class:`BaseCdf` (or its string form).
    :param theta: Monomial coefficients, length :math:`k \ge 0`.
    :param c: Bound of the coefficient box :math:`\Theta_k`.
    :param check: Reject coefficients outside :math:`\Theta_k`.
    """

    has_quantile = True

    def __init__(self, base, theta=(), c=DEFAULT_BOUND, check=True, delta=None):
        self.base = base if isinstance(base, BaseCdf) else BaseCdf.from_string(base)
        self.c = float(c)
        if delta is None:
            theta = np.atleast_1d(np.asarray(theta, dtype=np.float64))
            self.k = theta.size
            if check and not theta_feasible(self.k, theta, self.c):
                raise DomainError('Sieve coefficients {} lie outside the coefficient box (c = {})'
                                  .format(theta.tolist(), self.c))
            delta = delta_from_theta(self.k, theta)
        else:
            delta = np.atleast_1d(np.asarray(delta, dtype=np.float64))
            self.k = delta.size
            if check and not delta_feasible(self.k, delta, self.c):
                raise DomainError('Legendre coefficients {} lie outside the coefficient box (c = {})'
                                  .format(delta.tolist(), self.c))
        self._poly = SievePolynomial(self.k, delta)

    @classmethod
    def from_delta(cls, base, delta, c=DEFAULT_BOUND, check=True):
        return cls(base, c=c, check=check, delta=delta)

    def __repr__(self):
        return 'SieveCdf(base={}, delta={})'.format(self.base, self.delta.tolist())

    @property
    def theta(self):
        return self._poly.theta

    @property
    def delta(self):
        return self._poly.delta

    @property
    def lower(self):
        return self.base.lower

    @property
    def upper(self):
        return self.base.upper

    def cdf(self, x):
        return self._poly.cdf(self.base.cdf(x))

    def pdf(self, x):
        return self._poly.pdf(self.base.cdf(x)) * self.base.pdf(x)

    def h_inverse(self, p):
        r"""Solves :math:`H_k(v;\theta) = p` on [0, 1]."""
        p = np.asarray(p, dtype=np.float64)
        if not np.any(self.delta):
            return p
        return bracketed_newton(self._poly.cdf, self._poly.pdf, p, 0.0, 1.0, x0=p, xtol=QUANTILE_XTOL,
                                ftol=QUANTILE_FTOL)

    def quantile(self, p):
        r"""
        :math:`F_k^{-1}(p) = G^{-1}(H_k^{-1}(p))` for :math:`p \in (0, 1)`.

        Endpoints are a :class:`BoundaryError`: the support may be unbounded there.
        """
        p = np.asarray(p, dtype=np.float64)
        if np.any(np.isnan(p)) or np.any((p < 0) | (p > 1)):
            raise DomainError('Probabilities must lie in [0, 1]')
        if np.any((p == 0) | (p == 1)):
            raise BoundaryError('Quantile requested at a support endpoint')
        v = np.clip(self.h_inverse(p), 0.0, 1.0)
        x = self.base.quantile(v)
        return x if x.ndim else float(x)

    def to_record(self):
        return {'base': str(self.base), 'order': self.k, 'c': self.c, 'delta': self.delta.tolist(),
                'theta': self.theta.tolist()}

    @classmethod
    def from_record(cls, record):
        """Rebuilds from ``delta`` when present (bit-exact), otherwise from ``theta``."""
        try:
            base = record['base']
            delta, theta = record.get('delta'), record.get('theta')
        except (KeyError, TypeError, AttributeError):
            raise DomainError('Sieve record needs "base" and "delta" or "theta" entries')
        coefficients = delta if delta is not None else (theta or [])
        if 'order' in record and int(record['order']) != len(coefficients):
            raise DomainError('Sieve record of order {} carries {} coefficients'
                              .format(record['order'], len(coefficients)))
        c = record.get('c', DEFAULT_BOUND)
        if delta is not None:
            return cls.from_delta(base, delta, c=c)
        return cls(base, coefficients, c=c)


def _as_sieve(F, theta, c):
    if isinstance(F, SieveCdf):
        if theta is not None:
            raise DomainError('Pass either a SieveCdf or a base with coefficients, not both')
        return F
    return SieveCdf(F, () if theta is None else theta, c=c)


def sieve_cdf_eval(F, x, theta=None, c=DEFAULT_BOUND):
    """
    :math:`F(x)` for a :class:`SieveCdf`.

    A base (or its string) with ``theta`` is accepted in place of ``F``.
    """
    return _as_sieve(F, theta, c).cdf(x)


def sieve_quantile(F, p, theta=None, c=DEFAULT_BOUND):
    return _as_sieve(F, theta, c).quantile(p)


def save_sieve(sieve, filename):
    return dump_record(sieve.to_record(), filename)


def load_sieve(filename):
    return SieveCdf.from_record(load_record(filename))
