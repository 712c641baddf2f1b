"""Probabilistic robust linear regression over F_p and Z_p.

Regression modulo p grows a random candidate set of samples, keeps its
reduced echelon form up to date, and accepts it once a consensus count says
the candidate avoids corrupted samples.  The p-adic estimator repeats this
digit by digit.
"""

from .echelon import (
    EchelonForm,
    EquationSystem,
    InsertOutcome,
    coefficient_vector,
    dynamic_insert,
    equation_system,
    membership,
    reduce_vector,
)
from .errors import (
    EmptyForm,
    EmptyLocus,
    LengthMismatch,
    NotDivisible,
    NotPrimeError,
    PrecisionMismatch,
    RankDeficient,
    RestartBudgetExhausted,
    TrialBudgetExhausted,
    ZeroInversion,
)
from .fp_core import (
    FpScalar,
    FpVector,
    PrimeModulus,
    ZpTrunc,
    fp_affine_eval,
    fp_inv,
    zp_affine_eval,
    zp_exact_div_p,
    zp_valuation,
)
from .modp_regress import (
    Dataset,
    Regime,
    RegressConfig,
    RunStats,
    linear_regression_mod_p,
    noise_free_locus,
    noise_free_matrix,
    regime_check,
    threshold_n,
)
from .padic_regress import (
    DigitEstimate,
    PadicDataset,
    last_digit_regression,
    peel_level,
    trailing_digits_regression,
)
from .synthgen import ModpInstance, PadicInstance, gen_modp_instance, gen_padic_instance

__version__ = "0.1.0"
