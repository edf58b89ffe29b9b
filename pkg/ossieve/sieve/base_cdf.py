"""Known base distributions G that the sieve perturbs."""
import numpy as np
from scipy.stats import expon, norm, uniform

from ossieve.utils.exceptions import ConfigurationError, DomainError


class BaseCdf(object):
    r"""
    Continuous base c.d.f. :math:`G` with density and quantile.

    +-------------+-----------------------+------------------------------------------------+
    | kind        | parameters            | distribution                                   |
    +=============+=======================+================================================+
    | uniform     | a, b                  | uniform on [a, b]                              |
    +-------------+-----------------------+------------------------------------------------+
    | normal      | mean, variance        | :math:`N(\mu, \sigma^2)`                       |
    +-------------+-----------------------+------------------------------------------------+
    | truncnorm   | mean, variance        | :math:`N(\mu, \sigma^2)` truncated to [0, inf) |
    +-------------+-----------------------+------------------------------------------------+
    | exponential | rate                  | exponential on [0, inf)                        |
    +-------------+-----------------------+------------------------------------------------+

    The string form is ``"<kind> <p1> [<p2>]"``, e.g. ``"normal 0 0.25"``.
    """

    kinds = {'uniform': 2, 'normal': 2, 'truncnorm': 2, 'exponential': 1}
    has_quantile = True

    def __init__(self, kind, *params):
        if kind not in self.kinds:
            raise ConfigurationError('Unknown base distribution "{}", expected one of {}'
                                     .format(kind, ', '.join(self.kinds)))
        if len(params) != self.kinds[kind]:
            raise ConfigurationError('Base distribution "{}" takes {} parameters, got {}'
                                     .format(kind, self.kinds[kind], len(params)))
        self.kind = kind
        self.params = tuple(float(p) for p in params)
        if not all(np.isfinite(self.params)):
            raise DomainError('Base distribution parameters must be finite, got {}'.format(self.params))

        if kind == 'uniform':
            a, b = self.params
            if not b > a:
                raise DomainError('Uniform base needs a < b, got [{}, {}]'.format(a, b))
            self._dist = uniform(loc=a, scale=b - a)
            self.lower, self.upper = a, b
        elif kind == 'exponential':
            rate, = self.params
            if not rate > 0:
                raise DomainError('Exponential base needs a positive rate, got {}'.format(rate))
            self._dist = expon(scale=1.0 / rate)
            self.lower, self.upper = 0.0, np.inf
        else:
            mean, variance = self.params
            if not variance > 0:
                raise DomainError('{} base needs a positive variance, got {}'.format(kind, variance))
            self._dist = norm(loc=mean, scale=np.sqrt(variance))
            self.lower, self.upper = (0.0 if kind == 'truncnorm' else -np.inf), np.inf
            # mass of the untruncated normal below and above the truncation point
            self._cut = self._dist.cdf(0.0)
            self._kept = self._dist.sf(0.0)
            if kind == 'truncnorm' and self._kept <= 0:
                raise DomainError('Truncated normal keeps no mass on [0, inf): mean {}, variance {}'
                                  .format(mean, variance))

    @classmethod
    def from_string(cls, text):
        fields = str(text).split()
        if not fields:
            raise ConfigurationError('Empty base distribution')
        try:
            params = [float(p) for p in fields[1:]]
        except ValueError:
            raise ConfigurationError('Malformed base distribution "{}"'.format(text))
        return cls(fields[0], *params)

    def __str__(self):
        return ' '.join([self.kind] + ['%.17g' % p for p in self.params])

    def __repr__(self):
        return 'BaseCdf({})'.format(self)

    def __eq__(self, other):
        return isinstance(other, BaseCdf) and (self.kind, self.params) == (other.kind, other.params)

    def __hash__(self):
        return hash((self.kind, self.params))

    def cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        if self.kind != 'truncnorm':
            return self._dist.cdf(x)
        return np.where(x > 0, (self._dist.cdf(np.maximum(x, 0.0)) - self._cut) / self._kept, 0.0)

    def pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        if self.kind != 'truncnorm':
            return self._dist.pdf(x)
        return np.where(x >= 0, self._dist.pdf(x) / self._kept, 0.0)

    def quantile(self, p):
        p = np.asarray(p, dtype=np.float64)
        if np.any((p < 0) | (p > 1)) or np.any(np.isnan(p)):
            raise DomainError('Probabilities must lie in [0, 1]')
        if self.kind != 'truncnorm':
            return self._dist.ppf(p)
        # upper tail through isf
        lower_tail = self._dist.ppf(self._cut + p * self._kept)
        upper_tail = self._dist.isf((1.0 - p) * self._kept)
        return np.maximum(np.where(self._cut + p * self._kept < 0.5, lower_tail, upper_tail), 0.0)
