"""epr-sequences of symmetric matrices over finite fields."""

from .codes import LinearCode, epr_distance_bound, min_distance, parity_check, spark, weight_enumerator
from .constructions import build_basic, build_C5_composite, build_examples_F3, build_J_minus_kI, construct
from .enumerator import AttainabilityReport, attainable, find_witness, verify_catalog
from .epr import epr, epr_prefix, pr
from .errors import CapacityError, PatternSyntaxError, PreconditionError, UsageError
from .gf import FieldElement, FieldSpec, field
from .pattern import Catalog, FormPattern, builtin_catalog, catalog_match, enumerate_catalog, matches, parse_pattern
from .symmat import (
    SymMatrix,
    diag_congruence,
    normalize_AN,
    permute,
    principal_submatrix,
    read_matrix,
    scale,
    schur_complement,
    write_matrix,
)
from .theorems import (
    RAMSEY_TABLE,
    empirical_constraint_audit,
    forbidden_scan,
    monochromatic_principal_submatrix,
    ramsey_constraints,
    triangle_free_order5_census,
)

__version__ = "0.1.0"
