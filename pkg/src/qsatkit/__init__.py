"""qsatkit: local-projector satisfiability at desk scale.

Decide whether a sum of k-local projectors on n qubits has a zero-energy
state, transform instances between localities with enforcing gadgets, and
study how satisfiability depends on interaction structure.
"""

from . import config
from .bounds import BoundReport, bound_report, threshold_check
from .catalog import (
    FIGURE_B_GROUND_ENERGY,
    basis_term,
    builtin_instance,
    builtin_structure,
    figure_a,
    figure_a_formula,
    figure_b,
    figure_instances,
    singlet_term,
    triangle_double_structure,
)
from .cnf import all_sign_variants_satisfiable, brute_force_sat, cnf_to_instance
from .ensembles import EnsembleResult, haar_random_term, sample_ensemble
from .errors import (
    ArgumentError,
    CapacityError,
    ConvergenceError,
    DimensionMismatchError,
    IndeterminateError,
    ParseError,
    PreconditionError,
    QsatError,
    ValidationError,
)
from .instance import (
    CnfFormula,
    DegreeProfile,
    GeneralTerm,
    QsatInstance,
    QuditInstance,
    RankOneTerm,
    ValidationReport,
    Violation,
    degree_profile,
    locality,
    require_valid,
    same_structure,
    structure_key,
    validate,
)
from .io import (
    FORMAT_VERSION,
    instance_to_document,
    load_instance,
    parse_instance,
    save_instance,
    serialize_instance,
)
from .kernels import (
    InstanceApplier,
    apply_instance,
    backend_name,
    compiled_available,
    expectation,
)
from .reduction import (
    EnforcingGadget,
    MinimalCore,
    ReductionOutput,
    VerificationReport,
    build_enforcing_gadget,
    build_reduction,
    encode_qudits,
    extract_minimal_core,
    pad_with_dummies,
    rank_one_decompose,
    schmidt_split,
    schmidt_weights,
    verify_reduction,
)
from .spectral import (
    INDETERMINATE,
    SATISFIABLE,
    UNSATISFIABLE,
    SatVerdict,
    SpectralResult,
    assemble,
    assemble_dense,
    common_nullspace_dim,
    decide_sat,
    full_spectrum,
    ground_energy,
    operator_dominates,
    restricted_ground_energy,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "BoundReport",
    "CapacityError",
    "CnfFormula",
    "ConvergenceError",
    "DegreeProfile",
    "DimensionMismatchError",
    "EnforcingGadget",
    "EnsembleResult",
    "FIGURE_B_GROUND_ENERGY",
    "FORMAT_VERSION",
    "GeneralTerm",
    "INDETERMINATE",
    "IndeterminateError",
    "InstanceApplier",
    "MinimalCore",
    "ParseError",
    "PreconditionError",
    "QsatError",
    "QsatInstance",
    "QuditInstance",
    "RankOneTerm",
    "ReductionOutput",
    "SATISFIABLE",
    "SatVerdict",
    "SpectralResult",
    "UNSATISFIABLE",
    "ValidationError",
    "ValidationReport",
    "VerificationReport",
    "Violation",
    "all_sign_variants_satisfiable",
    "apply_instance",
    "assemble",
    "assemble_dense",
    "backend_name",
    "basis_term",
    "bound_report",
    "brute_force_sat",
    "build_enforcing_gadget",
    "build_reduction",
    "builtin_instance",
    "builtin_structure",
    "cnf_to_instance",
    "common_nullspace_dim",
    "compiled_available",
    "config",
    "decide_sat",
    "degree_profile",
    "encode_qudits",
    "expectation",
    "extract_minimal_core",
    "figure_a",
    "figure_a_formula",
    "figure_b",
    "figure_instances",
    "full_spectrum",
    "ground_energy",
    "haar_random_term",
    "instance_to_document",
    "load_instance",
    "locality",
    "operator_dominates",
    "pad_with_dummies",
    "parse_instance",
    "rank_one_decompose",
    "require_valid",
    "restricted_ground_energy",
    "same_structure",
    "sample_ensemble",
    "save_instance",
    "schmidt_split",
    "schmidt_weights",
    "serialize_instance",
    "singlet_term",
    "structure_key",
    "threshold_check",
    "triangle_double_structure",
    "validate",
    "verify_reduction",
    "__version__",
]
