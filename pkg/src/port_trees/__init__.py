"""Exact analytics and Monte Carlo simulation for plane-oriented
recursive trees: degree-profile laws, Zagreb-index moments, martingale
diagnostics, and the Poissonized degree process."""

__version__ = "0.1.0"

from .tree import Kernel, Tree
from .degree import (
    DegreeLaw,
    DegreeMoments,
    Regime,
    degree_mean,
    degree_moments_asymptotic,
    degree_pmf_closed,
    degree_pmf_hypergeom,
    degree_pmf_recurrence,
    degree_support,
    degree_variance,
    root_pmf,
    root_pmf_recurrence,
)
from .zagreb import (
    M_SECOND_MOMENT_LIMIT,
    VAR_Z_COEFFICIENT,
    Y_WEAK_LIMIT,
    Z_WEAK_LIMIT,
    MartingaleTrace,
    ZagrebMomentSeries,
    conditional_variance_targets,
    cubic_mean,
    cubic_mean_closed,
    martingale_diff_bound,
    martingale_transform,
    moment_series,
    zagreb_mean,
    zagreb_second_moment,
    zagreb_variance_asymptotic,
)
from .oracle import ExactDist, enumerate_statistic, history_count, oracle_moment
from .montecarlo import (
    SimulationConfig,
    StatsSummary,
    grow_forest,
    jarque_bera,
    kde,
    martingale_diagnostics,
    run_experiment,
    summarize,
)
from .poisson import (
    mgf_w,
    moments_w,
    scaled_limit_test,
    simulate_poissonized_tree,
    simulate_yule,
)
