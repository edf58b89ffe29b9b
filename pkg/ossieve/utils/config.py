"""Run configuration: a flat YAML mapping of ``key: value`` lines."""
from dataclasses import asdict, dataclass, field, fields

import numpy as np
import yaml

from ossieve.orderstat import OrderStatDesign
from ossieve.sieve import BaseCdf, SieveCdf
from ossieve.utils.exceptions import ConfigurationError, DomainError

# Stand-in order-6 truth, given as Legendre coefficients of the square-root density.
DEFAULT_TRUTH_XI_DELTA = (0.3, -0.2, 0.1, 0.05, -0.05, 0.02)
DEFAULT_TRUTH_EPS_DELTA = (-0.4, 0.15, 0.1, -0.05, 0.03, 0.02)

INTEGER_KEYS = ('n', 'r', 's', 'N', 'k', 'seed', 'replications', 'starts', 'max_evaluations', 'jobs', 'draws', 't_points')
POSITIVE_REAL_KEYS = ('kappa', 'c', 'simplex_tolerance', 'start_spread', 't_max')


@dataclass
class RunConfig:
    n: int = 3
    r: int = 1
    s: int = 2
    N: int = 1000
    k: int = 4
    kappa: float = 1.0
    c: float = 5.0
    xi_base: str = 'normal 0 0.25'
    eps_base: str = 'truncnorm 2 1'
    seed: int = 0
    replications: int = 20
    starts: int = 8
    max_evaluations: int = 20000
    simplex_tolerance: float = 1e-6
    start_spread: float = 0.25
    jobs: int = 1
    truth_xi_theta: list = None
    truth_eps_theta: list = None
    truth_xi_delta: list = field(default_factory=lambda: list(DEFAULT_TRUTH_XI_DELTA))
    truth_eps_delta: list = field(default_factory=lambda: list(DEFAULT_TRUTH_EPS_DELTA))
    draws: int = 10 ** 6
    t_points: int = 81
    t_max: float = 4.0

    @classmethod
    def from_mapping(cls, mapping, **overrides):
        mapping = dict(mapping or {})
        mapping.update({key: value for key, value in overrides.items() if value is not None})
        names = {f.name for f in fields(cls)}
        unknown = sorted(set(mapping) - names)
        if unknown:
            raise ConfigurationError('Unknown configuration keys: {}'.format(', '.join(map(str, unknown))))
        for which in ('xi', 'eps'):
            if mapping.get('truth_{}_theta'.format(which)) is not None:
                mapping.setdefault('truth_{}_delta'.format(which), None)
        config = cls(**mapping)
        config.validate()
        return config

    def validate(self):
        for name in INTEGER_KEYS:
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise ConfigurationError('{} must be an integer, got {!r}'.format(name, value))
        for name in POSITIVE_REAL_KEYS:
            value = getattr(self, name)
            try:
                # PyYAML reads exponent-only literals such as 1e-6 as strings
                value = float(value) if not isinstance(value, bool) else np.nan
            except (TypeError, ValueError):
                value = np.nan
            if not (np.isfinite(value) and value > 0):
                raise ConfigurationError('{} must be a positive number, got {!r}'.format(name, getattr(self, name)))
            setattr(self, name, value)

        lowest = {'N': 2, 'k': 0, 'seed': 0, 'replications': 1, 'starts': 1, 'max_evaluations': 1, 'jobs': 1,
                  'draws': 1, 't_points': 1}
        for name, bound in lowest.items():
            if getattr(self, name) < bound:
                raise ConfigurationError('{} must be at least {}, got {}'.format(name, bound, getattr(self, name)))

        for which in ('xi', 'eps'):
            theta = getattr(self, 'truth_{}_theta'.format(which))
            delta = getattr(self, 'truth_{}_delta'.format(which))
            if (theta is None) == (delta is None):
                raise ConfigurationError('Give exactly one of truth_{0}_theta and truth_{0}_delta'.format(which))
        try:
            self.design()
            self.truth()
        except (DomainError, TypeError, ValueError) as e:
            if isinstance(e, ConfigurationError):
                raise
            raise ConfigurationError(str(e))

    def design(self):
        return OrderStatDesign(self.n, self.r, self.s)

    def bases(self):
        return BaseCdf.from_string(self.xi_base), BaseCdf.from_string(self.eps_base)

    def truth(self):
        """Known-truth sieve distributions (F_xi, F_eps) used to generate data."""
        out = []
        for which, base in zip(('xi', 'eps'), self.bases()):
            theta = getattr(self, 'truth_{}_theta'.format(which))
            if theta is None:
                delta = np.asarray(getattr(self, 'truth_{}_delta'.format(which)), dtype=np.float64)
                out.append(SieveCdf.from_delta(base, delta, c=self.c))
            else:
                out.append(SieveCdf(base, theta, c=self.c))
        return tuple(out)

    def estimation_options(self):
        return {'c': self.c, 'starts': self.starts, 'max_evaluations': self.max_evaluations,
                'simplex_tolerance': self.simplex_tolerance, 'start_spread': self.start_spread}

    def to_record(self):
        return asdict(self)


def load_config(filename=None, **overrides):
    """
    Reads a :class:`RunConfig` from a flat YAML file; missing keys take their defaults.

    :param filename: Path of the file, or None for the defaults.
    :param overrides: Keys that replace the file's values (None is ignored).
    """
    mapping = {}
    if filename is not None:
        try:
            with open(filename, 'r') as file:
                mapping = yaml.safe_load(file)
        except OSError as e:
            raise ConfigurationError('Unable to read configuration {}: {}'.format(filename, e))
        except yaml.YAMLError as e:
            raise ConfigurationError('Malformed configuration {}: {}'.format(filename, e))
        if mapping is None:
            mapping = {}
        if not isinstance(mapping, dict):
            raise ConfigurationError('Configuration {} must be a key-value mapping'.format(filename))
        nested = [key for key, value in mapping.items() if isinstance(value, dict)]
        if nested:
            raise ConfigurationError('Configuration keys must not be nested: {}'.format(', '.join(map(str, nested))))
    return RunConfig.from_mapping(mapping, **overrides)
