"""Arithmetic circuits over sets of natural numbers.

Circuits combine sets with union, inter, comp, add, mul and exact div
(vector circuits swap mul/div for sub and work over tuples plus a single
infinity point). The package parses and validates circuit files, decides
membership queries with fragment-specific engines, computes soundness
cutoffs and value bounds, rewrites circuits between fragments, and generates
hardness instances from classic combinatorial problems.
"""
from .bounds import (
    CutoffMode,
    CutoffProfile,
    ValueBound,
    certified_cutoff,
    cutoff_profile,
    structural_cutoff,
    value_bound,
)
from .circuit import (
    INF,
    Circuit,
    CircuitError,
    CircuitParseError,
    CircuitValidationError,
    Gate,
    GateKind,
    encoding_length,
    fragment_of,
    parse_circuit,
    serialize_circuit,
    subcircuit_at,
)
from .engines import (
    DEFAULT_BUDGET,
    EngineBudget,
    MembershipVerdict,
    applicable_engines,
    certificate_search,
    decide,
    eval_clamped_scalar,
    eval_clamped_vector,
    eval_exact,
    eval_grid_reference,
    grid_reference_member,
    eval_singleton,
    eval_singleton_vector,
    search_member,
    verify_certificate,
    xcheck_circuit,
)
from .errors import BudgetExceeded, FragmentError, OpenFragmentError
from .numtheory import GcdFreeBasis, NotRepresentable, factorize, gcd_free_basis
from .reductions import (
    CvpInstance,
    ExactCoverInstance,
    GapInstance,
    MajorityDagInstance,
    Reduction,
    cvp_value,
    exact_cover_solvable,
    from_cvp,
    from_exact_cover,
    from_gap,
    from_majority_dag,
    gap_has_path,
    majority_accepts,
    primes_circuit,
)
from .setrep import NatSetRep, VecSetRep, exact_apply, natrep_apply, vecrep_apply
from .transforms import (
    ExponentMap,
    demorgan_rewrite,
    eliminate_cap,
    expand_formula,
    to_vector_gcdfree,
    to_vector_primefact,
)

__version__ = "0.1.0"

__all__ = [
    "INF",
    "BudgetExceeded",
    "Circuit",
    "CircuitError",
    "CircuitParseError",
    "CircuitValidationError",
    "CutoffMode",
    "CutoffProfile",
    "CvpInstance",
    "DEFAULT_BUDGET",
    "EngineBudget",
    "ExactCoverInstance",
    "ExponentMap",
    "FragmentError",
    "GapInstance",
    "Gate",
    "GateKind",
    "GcdFreeBasis",
    "MajorityDagInstance",
    "MembershipVerdict",
    "NatSetRep",
    "NotRepresentable",
    "OpenFragmentError",
    "Reduction",
    "ValueBound",
    "VecSetRep",
    "applicable_engines",
    "certificate_search",
    "certified_cutoff",
    "cutoff_profile",
    "cvp_value",
    "decide",
    "demorgan_rewrite",
    "eliminate_cap",
    "encoding_length",
    "eval_clamped_scalar",
    "eval_clamped_vector",
    "eval_exact",
    "eval_grid_reference",
    "grid_reference_member",
    "eval_singleton",
    "eval_singleton_vector",
    "exact_apply",
    "exact_cover_solvable",
    "expand_formula",
    "factorize",
    "fragment_of",
    "from_cvp",
    "from_exact_cover",
    "from_gap",
    "from_majority_dag",
    "gap_has_path",
    "gcd_free_basis",
    "majority_accepts",
    "natrep_apply",
    "parse_circuit",
    "primes_circuit",
    "search_member",
    "serialize_circuit",
    "structural_cutoff",
    "subcircuit_at",
    "to_vector_gcdfree",
    "to_vector_primefact",
    "value_bound",
    "vecrep_apply",
    "verify_certificate",
    "xcheck_circuit",
]
