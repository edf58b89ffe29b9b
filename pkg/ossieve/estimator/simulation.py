import numpy as np

from ossieve.orderstat import sample_orderstats
from ossieve.utils.exceptions import ConfigurationError, DataError
from ossieve.utils.helper_functions import open_uniforms, read_table, seed_stream, write_table

SAMPLE_HEADER = ('x_r', 'x_s')


class ObservedSample(object):
    r"""
    N i.i.d. realisations of the observed pair :math:`(X_{(r)}, X_{(s)})`.

    Rows are validated on construction: finite, :math:`x_r \le x_s`, and at least two of them.
    """

    def __init__(self, values):
        values = np.array(values, dtype=np.float64, ndmin=2)
        if values.ndim != 2 or values.shape[1] != 2:
            raise DataError('Observed sample needs two columns, got shape {}'.format(values.shape))
        if values.shape[0] < 2:
            raise DataError('Observed sample needs at least two rows, got {}'.format(values.shape[0]))
        if not np.all(np.isfinite(values)):
            raise DataError('Observed sample contains non-finite values')
        bad = np.flatnonzero(values[:, 0] > values[:, 1])
        if bad.size:
            raise DataError('Row {} violates x_r <= x_s'.format(bad[0] + 1))
        values.setflags(write=False)
        self.values = values

    def __len__(self):
        return self.values.shape[0]

    def __repr__(self):
        return 'ObservedSample(N={})'.format(len(self))

    @property
    def x_r(self):
        return self.values[:, 0]

    @property
    def x_s(self):
        return self.values[:, 1]

    @classmethod
    def from_csv(cls, filename):
        _, values = read_table(filename, SAMPLE_HEADER)
        return cls(values)

    def to_csv(self, filename):
        write_table(filename, SAMPLE_HEADER, self.values)


class SimPanel(object):
    r"""
    Fixed simulation draws: an :math:`N \times (n+1)` matrix of uniforms with columns
    :math:`(V, U_1, \ldots, U_n)`, strictly inside (0, 1). The panel is drawn once and reused for
    every criterion evaluation.
    """

    def __init__(self, draws, seed=None):
        draws = np.array(draws, dtype=np.float64, ndmin=2)
        if draws.ndim != 2 or draws.shape[1] < 3:
            raise ConfigurationError('Simulation panel needs at least three columns (V, U_1, U_2), got shape {}'
                                     .format(draws.shape))
        if not np.all((draws > 0) & (draws < 1)):
            raise ConfigurationError('Simulation panel entries must lie strictly inside (0, 1)')
        draws.setflags(write=False)
        self.draws = draws
        self.seed = seed

    @classmethod
    def draw(cls, N, n, seed):
        if N < 1 or n < 2:
            raise ConfigurationError('Panel needs N >= 1 and n >= 2, got N = {}, n = {}'.format(N, n))
        return cls(open_uniforms(seed_stream(seed), (N, n + 1)), seed=seed)

    def __repr__(self):
        return 'SimPanel(N={}, n={}, seed={})'.format(self.N, self.n, self.seed)

    @property
    def N(self):
        return self.draws.shape[0]

    @property
    def n(self):
        return self.draws.shape[1] - 1

    @property
    def v(self):
        return self.draws[:, 0]

    @property
    def u(self):
        return self.draws[:, 1:]


def simulate_sample(F_xi, F_eps, panel, d):
    r"""
    Model-implied sample :math:`F_\xi^{-1}(V_i) + F_\varepsilon^{-1}(U_i)_{(j)}`, :math:`j = r, s`.

    :param F_xi: Latent distribution (any object with ``quantile``).
    :param F_eps: Error distribution.
    :param panel: :class:`SimPanel` with ``d.n + 1`` columns.
    :param d: Design.
    :return: :class:`ObservedSample` of ``panel.N`` rows.
    """
    if panel.n != d.n:
        raise ConfigurationError('Panel has {} error columns but the design has n = {}'.format(panel.n, d.n))
    xi = F_xi.quantile(panel.v)
    eps_r, eps_s = sample_orderstats(F_eps, d, panel.u)
    return ObservedSample(np.column_stack((xi + eps_r, xi + eps_s)))
