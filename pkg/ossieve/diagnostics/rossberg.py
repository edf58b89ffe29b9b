r"""
A non-exponential parent whose two-draw spacing is standard exponential:

.. math::
    G(x) = 1 - e^{-x}\left[1 + \pi^{-2}(1 - \cos 2\pi x)\right], \qquad x \ge 0.
"""
import numpy as np

from ossieve.utils.exceptions import BoundaryError, DomainError
from ossieve.utils.helper_functions import bracketed_newton

_A = 1.0 / np.pi ** 2


def rossberg_cdf(x):
    x = np.asarray(x, dtype=np.float64)
    xp = np.maximum(x, 0.0)
    value = -np.expm1(-xp) - np.exp(-xp) * _A * (1.0 - np.cos(2 * np.pi * xp))
    return np.where(x > 0, np.clip(value, 0.0, 1.0), 0.0)


def rossberg_pdf(x):
    r""":math:`e^{-x}[1 + \pi^{-2}(1 - \cos 2\pi x) - (2/\pi)\sin 2\pi x]`, bounded below by :math:`0.45 e^{-x}`."""
    x = np.asarray(x, dtype=np.float64)
    xp = np.maximum(x, 0.0)
    value = np.exp(-xp) * (1.0 + _A * (1.0 - np.cos(2 * np.pi * xp)) - 2.0 / np.pi * np.sin(2 * np.pi * xp))
    return np.where(x >= 0, value, 0.0)


def rossberg_quantile(p):
    r"""
    Inverse of :func:`rossberg_cdf` on (0, 1).

    The root is bracketed by the exponential quantiles of :math:`p` and of
    :math:`1 - (1 - p)/(1 + 2\pi^{-2})`, which bound :math:`G` from both sides.
    """
    p = np.asarray(p, dtype=np.float64)
    if np.any(np.isnan(p)) or np.any((p < 0) | (p > 1)):
        raise DomainError('Probabilities must lie in [0, 1]')
    if np.any((p == 0) | (p == 1)):
        raise BoundaryError('Quantile requested at a support endpoint')
    lower = -np.log1p(-p)
    upper = lower + np.log1p(2 * _A)
    x = bracketed_newton(rossberg_cdf, rossberg_pdf, p, lower, upper, x0=lower, xtol=1e-15, ftol=1e-13)
    return x if x.ndim else float(x)


class RossbergCdf(object):
    """The counterexample parent as a distribution object."""

    lower = 0.0
    upper = np.inf
    has_quantile = True
    name = 'rossberg'

    def __repr__(self):
        return 'RossbergCdf()'

    def cdf(self, x):
        return rossberg_cdf(x)

    def pdf(self, x):
        return rossberg_pdf(x)

    def quantile(self, p):
        return rossberg_quantile(p)
