"""Growth model of software dependency graphs by preferential edge
addition and out-degree driven node splitting, with maximum-likelihood
fitting of its degree distributions and bootstrap goodness-of-fit tests."""

__version__ = "0.1.0"

from .analytic import (InDist, OutDist, check_stationarity, in_pmf_closed,  # noqa: E402
                       in_pmf_table, out_pmf, sample_in, sample_out, tail_exponent)
from .fit import DegenerateData, FitResult, Kind, fit, fit_in, fit_out, loglik  # noqa: E402
from .gof import GofResult, ks_statistic, mc_pvalue, sample_dataset  # noqa: E402
from .growth import (GrowthState, ModelParams, Variant, degree_histograms,  # noqa: E402
                     init_state, simulate, split_node, step, variant_split)
from .histogram import DegreeHistogram  # noqa: E402
