r"""
Closed-form empirical criterion.

For a factual sample :math:`X` and a simulated sample :math:`\tilde X` of common size :math:`N`,

.. math::
    \hat Q_N = \frac{1}{4\kappa^2}\int_{(-\kappa,\kappa)^2} |\hat\psi_N(t) - \hat\phi_N(t)|^2 dt
    = \frac{2}{N} + \frac{2}{N^2}\Big[\sum_{i>j} q(X_i - X_j) + \sum_{i>j} q(\tilde X_i - \tilde X_j)
    - \sum_{i,j} q(X_i - \tilde X_j)\Big]

with :math:`q(x, y) = \mathrm{sinc}(\kappa x)\,\mathrm{sinc}(\kappa y)`.

The sums are regrouped per row :math:`i` as

.. math::
    \sum_{j<i} q(X_i - X_j) + \sum_{j<i} \big[q(\tilde X_i - \tilde X_j) - q(X_i - \tilde X_j)
    - q(\tilde X_i - X_j)\big] + 1 - q(X_i - \tilde X_i),

which vanishes term by term when :math:`\tilde X = X`. Rows are reduced in parallel and summed in a
fixed order afterwards, so the value does not depend on the thread count.
"""
from dataclasses import dataclass

import numpy as np
from numba import config as numba_config, njit, prange

from ossieve.orderstat import OrderStatDesign
from ossieve.utils.exceptions import ConfigurationError

# process pools fork after the parent has run the parallel kernels
numba_config.THREADING_LAYER = 'forksafe'


@dataclass(frozen=True)
class CriterionConfig:
    """Integration half-width ``kappa`` and the observed design."""
    kappa: float = 1.0
    design: OrderStatDesign = OrderStatDesign(3, 1, 2)

    def __post_init__(self):
        if not (np.isfinite(self.kappa) and self.kappa > 0):
            raise ConfigurationError('kappa must be positive, got {}'.format(self.kappa))


@njit(cache=True)
def _sinc(a):
    if a == 0.0:
        return 1.0
    return np.sin(a) / a


@njit(cache=True)
def _q(dx, dy, kappa):
    return _sinc(kappa * dx) * _sinc(kappa * dy)


@njit(parallel=True, cache=True)
def _within_rows(x, kappa):
    n = x.shape[0]
    rows = np.zeros(n)
    for i in prange(n):
        acc = 0.0
        for j in range(i):
            acc += _q(x[i, 0] - x[j, 0], x[i, 1] - x[j, 1], kappa)
        rows[i] = acc
    return rows


@njit(parallel=True, cache=True)
def _simulated_rows(x, y, within, kappa):
    n = x.shape[0]
    rows = np.zeros(n)
    for i in prange(n):
        acc = 0.0
        for j in range(i):
            acc += (_q(y[i, 0] - y[j, 0], y[i, 1] - y[j, 1], kappa)
                    - _q(x[i, 0] - y[j, 0], x[i, 1] - y[j, 1], kappa)
                    - _q(y[i, 0] - x[j, 0], y[i, 1] - x[j, 1], kappa))
        rows[i] = (within[i] + acc) + (1.0 - _q(x[i, 0] - y[i, 0], x[i, 1] - y[i, 1], kappa))
    return rows


def q_kernel(v, kappa):
    r""":math:`q(v) = \mathrm{sinc}(\kappa v_1)\,\mathrm{sinc}(\kappa v_2)` with :math:`\mathrm{sinc}(0) = 1`."""
    v = np.asarray(v, dtype=np.float64)
    # numpy's sinc is normalised: sinc(x) = sin(pi x) / (pi x)
    return np.sinc(kappa * v[..., 0] / np.pi) * np.sinc(kappa * v[..., 1] / np.pi)


def as_rows(sample):
    """(N, 2) float array of an ObservedSample or any array-like of pairs."""
    rows = np.ascontiguousarray(getattr(sample, 'values', sample), dtype=np.float64)
    if rows.ndim != 2 or rows.shape[1] != 2 or rows.shape[0] == 0:
        raise ConfigurationError('Expected a nonempty (N, 2) sample, got shape {}'.format(rows.shape))
    return rows


def empirical_chf(sample, t):
    r"""
    :math:`\hat\psi_N(t) = N^{-1}\sum_i \exp(i t^\top X_i)`.

    :param sample: (N, 2) rows.
    :param t: A pair, or an (m, 2) array of pairs.
    :return: Complex value (or array of m values).
    """
    rows = as_rows(sample)
    t = np.asarray(t, dtype=np.float64)
    phase = np.tensordot(t, rows, axes=([-1], [1]))
    return np.mean(np.exp(1j * phase), axis=-1)


def within_sum_rows(data, kappa):
    """Per-row sums of q over earlier rows of the same sample; constant in the sieve coefficients."""
    return _within_rows(as_rows(data), float(kappa))


def criterion(data, sim, cfg, within=None):
    r"""
    Empirical criterion :math:`\hat Q_N` between the factual and the simulated sample.

    :param data: Factual sample, N rows.
    :param sim: Simulated sample, N rows.
    :param cfg: :class:`CriterionConfig`.
    :param within: Optional cached :func:`within_sum_rows` of ``data``.
    :return: Nonnegative float.
    """
    x = as_rows(data)
    y = as_rows(sim)
    if x.shape[0] != y.shape[0]:
        raise ConfigurationError('Factual and simulated samples must have equal size, got {} and {}'
                                 .format(x.shape[0], y.shape[0]))
    kappa = float(cfg.kappa)
    if within is None:
        within = _within_rows(x, kappa)
    n = x.shape[0]
    return 2.0 / n ** 2 * float(np.sum(_simulated_rows(x, y, within, kappa)))
