"""Branch calculus and verification for two-variable logarithmic functions."""

from .branchcalc import (
    principal_arg,
    lp,
    neg_branch,
    inv_branch,
    q_offset_product,
    diff_inv_branch,
    ratio_arg_decomposition,
)
from .logfun import (
    REGIONS,
    LogMonomial,
    LogFunction,
    BranchTriple,
    OneVarLogSeries,
    PathSpec,
    Segment,
    Arc,
    RegionExpansion,
    ContinuationResult,
    normalize,
    term_distance,
    eval_branch2,
    eval_branch1,
    differentiate,
    designated_triple,
    in_region,
    expand_region,
    sample_path,
    validate_path,
    continue_along,
    winding_profile,
)
from .transforms import (
    AutomorphismAction,
    CorrelationFamily,
    QuasiPrimaryData,
    diagonal_action,
    omega_family,
    contragredient_family,
    phi_precompose,
    omega_transform,
    a_transform,
    quasi_primary_modify,
    quasi_primary_unmodify,
    omega_action,
    a_action,
    check_g1_shift,
    check_g2_shift,
    one_var_shadow,
    a_eval_relation,
)
from .models import (
    AbelianScenario,
    RandomBounds,
    make_abelian,
    make_random,
    make_random_loop,
    oracle_continue,
    default_scenarios,
)
from .verify import (
    CHECKS,
    CheckReport,
    VerifyConfig,
    check_branch_identities,
    check_duality_regions,
    check_region_swap,
    check_monodromy_composition,
    check_omega_duality,
    check_contragredient_duality,
    check_shift_identities,
    monodromy_loops,
    run_suite,
    suite_ok,
)

__version__ = "0.1.0"

__all__ = [
    "REGIONS",
    "principal_arg",
    "lp",
    "neg_branch",
    "inv_branch",
    "q_offset_product",
    "diff_inv_branch",
    "ratio_arg_decomposition",
    "LogMonomial",
    "LogFunction",
    "BranchTriple",
    "OneVarLogSeries",
    "PathSpec",
    "Segment",
    "Arc",
    "RegionExpansion",
    "ContinuationResult",
    "normalize",
    "term_distance",
    "eval_branch2",
    "eval_branch1",
    "differentiate",
    "designated_triple",
    "in_region",
    "expand_region",
    "sample_path",
    "validate_path",
    "continue_along",
    "winding_profile",
    "AutomorphismAction",
    "CorrelationFamily",
    "QuasiPrimaryData",
    "diagonal_action",
    "omega_family",
    "contragredient_family",
    "phi_precompose",
    "omega_transform",
    "a_transform",
    "quasi_primary_modify",
    "quasi_primary_unmodify",
    "omega_action",
    "a_action",
    "check_g1_shift",
    "check_g2_shift",
    "one_var_shadow",
    "a_eval_relation",
    "AbelianScenario",
    "RandomBounds",
    "make_abelian",
    "make_random",
    "make_random_loop",
    "oracle_continue",
    "default_scenarios",
    "CheckReport",
    "VerifyConfig",
    "CHECKS",
    "check_branch_identities",
    "check_duality_regions",
    "check_region_swap",
    "check_monodromy_composition",
    "check_omega_duality",
    "check_contragredient_duality",
    "check_shift_identities",
    "monodromy_loops",
    "run_suite",
    "suite_ok",
]
