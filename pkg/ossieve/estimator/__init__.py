from .criterion import CriterionConfig, criterion, empirical_chf, q_kernel, within_sum_rows
from .simulation import ObservedSample, SimPanel, simulate_sample
from .extremum import EstimateResult, Objective, estimate, start_points, sup_norm_error
