from .orderstat import (OrderStatDesign, ParentCdf, orderstat_cdf, orderstat_joint_cdf, conditional_cdf_given_r,
                        conditional_limit_cdf, parent_from_orderstat, sample_orderstats)
