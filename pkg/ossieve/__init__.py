from ossieve.utils.logging import init_logging, logger
from .ossieve import add_logger, run_estimate, run_montecarlo, run_rossberg, run_simulate
from .orderstat import OrderStatDesign, ParentCdf
from .sieve import BaseCdf, SieveCdf
from .estimator import CriterionConfig, EstimateResult, ObservedSample, SimPanel, estimate
from .diagnostics import RossbergCdf
from .utils.config import RunConfig, load_config
from ossieve.release import __version__, __splash__
