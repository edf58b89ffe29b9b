# Timing benchmarks for asv; see "Writing benchmarks" in the asv docs.
import numpy as np


class ossieve:
    @staticmethod
    def time_import():
        import ossieve


class Criterion:
    params = [250, 1000, 4000]
    param_names = ['N']

    def setup(self, N):
        from ossieve.estimator import CriterionConfig, SimPanel, criterion, simulate_sample, within_sum_rows
        from ossieve.orderstat import OrderStatDesign
        from ossieve.sieve import SieveCdf

        d = OrderStatDesign(3, 1, 2)
        F_xi, F_eps = SieveCdf('normal 0 0.25', [0.1, 0.0]), SieveCdf('truncnorm 2 1', [0.0, -0.1])
        self.criterion = criterion
        self.cfg = CriterionConfig(1.0, d)
        self.data = simulate_sample(F_xi, F_eps, SimPanel.draw(N, 3, seed=0), d)
        self.sim = simulate_sample(F_xi, F_eps, SimPanel.draw(N, 3, seed=1), d)
        self.within = within_sum_rows(self.data, self.cfg.kappa)
        # compile before timing
        criterion(self.data, self.sim, self.cfg, within=self.within)

    def time_criterion(self, N):
        self.criterion(self.data, self.sim, self.cfg, within=self.within)


class Estimation:
    timeout = 600

    def setup(self):
        from ossieve.estimator import CriterionConfig, SimPanel, simulate_sample
        from ossieve.orderstat import OrderStatDesign
        from ossieve.sieve import SieveCdf, theta_from_delta

        self.d = OrderStatDesign(3, 1, 2)
        F_xi = SieveCdf('normal 0 0.25', theta_from_delta(2, [0.3, -0.1]))
        F_eps = SieveCdf('truncnorm 2 1', theta_from_delta(2, [-0.3, 0.1]))
        self.data = simulate_sample(F_xi, F_eps, SimPanel.draw(500, 3, seed=2), self.d)
        self.panel = SimPanel.draw(500, 3, seed=3)
        self.cfg = CriterionConfig(1.0, self.d)

    def time_estimate(self):
        from ossieve.estimator import estimate
        estimate(self.data, self.d, ('normal 0 0.25', 'truncnorm 2 1'), 2, self.cfg, self.panel, starts=2,
                 max_evaluations=2000)

    def peakmem_panel(self):
        from ossieve.estimator import SimPanel
        np.asarray(SimPanel.draw(10 ** 6, 3, seed=4).draws)
