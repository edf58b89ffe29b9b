from .basis import (DEFAULT_BOUND, SievePolynomial, coefficient_vector, delta_feasible, delta_from_theta, h_cdf,
                    h_density, legendre_rho, mu_moment, mu_table, pi_matrix, pi_vector, theta_bounds, theta_feasible,
                    theta_from_delta)
from .base_cdf import BaseCdf
from .sieve_cdf import SieveCdf, load_sieve, save_sieve, sieve_cdf_eval, sieve_quantile
