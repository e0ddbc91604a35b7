"""Sign test, Poisson-Binomial truth model and interval coverage for vote counting."""
from ._backend import BACKEND
from .dist import (
    BinomialParams,
    ProbabilityVector,
    binomial_pmf,
    poisson_binomial_cdf,
    poisson_binomial_pmf,
    poisson_binomial_pmf_bruteforce,
    poisson_binomial_sf,
    std_normal_cdf,
    std_normal_quantile,
)
from .effects import (
    RandomEffectsSpec,
    StudyEffect,
    iso_curve,
    marginal_sign_probability,
    p_value_cdf,
    probability_vector,
    sign_probability,
    two_sample_sign_probability,
    zp,
)
from .errors import DomainError
from .intervals import IntervalEstimate, jeffreys_interval, wilson_interval
from .signtest import (
    SignTestReport,
    critical_values,
    p_value_one_sided,
    p_value_two_sided,
    run_sign_test,
)
from .simulation import (
    CoverageReport,
    Substream,
    coverage_experiment,
    draw_poisson_binomial,
    exact_coverage,
)
from .votes import (
    RejectionProbabilities,
    ScenarioSpec,
    h1_holds,
    pi_plus,
    rejection_probabilities,
    reproduce_table1,
    scenario_to_probability_vector,
)

__version__ = "0.1.0"
