"""Exact simulation of lp-norm symmetric survival laws.

The package factors a vector Z with survival function phi(||z||_p) into
independent pieces R * V * U**(1/p): a radial law R determined by phi, a
[0,1]-valued mixing variable V with an explicit finite beta-mixture law, and
a uniform point U on the unit simplex.  On top of the factorization sit
samplers for outer power Archimedean copulas and for max-infinitely
divisible vectors whose exponent measure is lp-norm symmetric, plus a
statistical verification suite that checks every sampler against closed
forms.
"""

__version__ = "0.1.0"

from .common import DEFAULT_SEED, IterationCapError, ParameterError
from .maxid import (
    CustomInverse,
    HarmonicAtoms,
    MaxIdBatch,
    MaxIdSample,
    RadialRadonMeasure,
    harmonic_generator,
    harmonic_inverse,
    maxid_cdf,
    reciprocal_copula_batch,
    reciprocal_copula_sample,
    sample_maxid,
    sample_maxid_batch,
)
from .mixture import (
    BetaComponent,
    BetaMixture,
    CoefficientTable,
    beta_cdf,
    beta_identity_residuals,
    beta_pdf,
    coefficient_table,
    coefficient_table_exact,
    mixture_for_level,
)
from .radial import (
    ClaytonRadial,
    ErlangRadial,
    QuantileTable,
    RadialLaw,
    UnitPointMass,
    clayton_radial_cdf,
    generator_value,
    parse_radial_spec,
    sample_radial,
    williamson_residual,
)
from .rng import RngStream
from .survival import (
    SurvivalBatch,
    SurvivalSample,
    copula_sample,
    copula_sample_batch,
    empirical_kendall_tau,
    kendall_tau_outer_power,
    lp_norm,
    min_kendall_tau,
    sample_lp_sphere,
    sample_lp_sphere_batch,
    sample_simplex,
    sample_simplex_batch,
    sample_survival,
    sample_survival_batch,
    survival_value,
)
from .verify import (
    KsResult,
    TwoSampleKsResult,
    VerificationReport,
    VerifyConfig,
    check_recur1,
    check_stable_identity,
    check_williamson_vp,
    ks_one_sample,
    ks_two_sample,
    run_suite,
    sample_positive_stable,
)
from .vp import VpBatch, VpSample, sample_vp, sample_vp_batch, sample_vp_level
