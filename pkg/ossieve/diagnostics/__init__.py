from .rossberg import RossbergCdf, rossberg_cdf, rossberg_pdf, rossberg_quantile
from .identification import (ChfRatioCurve, DistanceReport, chf_ratio_curve, crosssum_sample, empirical_cdf,
                             exponential_chf_ratio, ks_distance, ks_test, spacing_sample)
