"""Strong approximation for SL_n/SL_1(A) over function fields of p-adic curves.

The package decides strong approximation away from a set of places S,
computes the defect group ℤ/gcd(I(S)/I(X), m), builds explicit
counterexample witnesses, and checks the underlying exact sequences by
enumeration at small moduli.
"""

from .arith import QZElem, ZModM, qz_add, qz_neg, qz_order, subgroup_contains
from .brauer import (
    BrauerClass,
    SymbolH1,
    SymbolH2,
    exponent_over_K,
    inflation,
    lichtenbaum_pair,
    lift_to_full_exponent,
    local_exponent,
    residue,
    rost_residue,
    specialize,
)
from .curve import Curve, Divisor, Place, divisor_degree, index_of_set, make_projective_line
from .errors import (
    BudgetExceededError,
    HypothesisError,
    ModelInconsistencyError,
    PreconditionError,
    StrongApproxError,
    UnknownPlaceError,
    UnsupportedCaseError,
    ValidationError,
    WitnessNotFoundError,
)
from .inner import (
    AdelicClass,
    SAProblem,
    SAVerdict,
    construct_witness,
    decide_sa,
    f_H,
    global_image_contains,
    verify_exact_sequence,
)
from .outer import (
    LocalData,
    OuterProblem,
    QuadExtension,
    RamificationType,
    check_outer_failure,
    classify_place,
    ramified_bound,
    two_rost_image,
)
from .report import Report, parse_report, render, run_scenario
from .scenario import Scenario, load_scenario, loads_scenario

__version__ = "0.1.0"
