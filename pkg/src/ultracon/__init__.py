"""Finite universal algebra: congruence lattices, ultrafilters, ultraproducts,
and machine-checked transfer theorems.
"""

from .algebra import (
    DEFAULT_SIZE_GUARD,
    Algebra,
    ElemMap,
    ProductAlgebra,
    QuotientAlgebra,
    Signature,
    algebra_from_dict,
    algebra_to_dict,
    direct_product,
    is_homomorphism,
    kernel,
    load_algebra,
    make_algebra,
    quotient,
    save_algebra,
)
from .congruence import (
    ConLattice,
    Congruence,
    Partition,
    all_partitions,
    con_as_algebra,
    con_lattice,
    con_lattice_bruteforce,
    con_lattice_dot,
    con_lattice_of,
    format_partition,
    is_congruence,
    parse_partition,
    principal_congruence,
)
from .constructions import (
    CongruenceFamily,
    UltraproductAlgebra,
    dstar,
    induced_congruence,
    product_congruence,
    ultraproduct,
)
from .corpus import corpus_by_name, standard_corpus
from .errors import SizeGuardError, UltraconError, ValidationError
from .iso import IsoResult, find_isomorphism, isomorphic_by_bruteforce
from .sweeps import (
    SweepResult,
    run_all_sweeps,
    sweep_principal_collapse,
    sweep_thm1,
    sweep_thm2,
    sweep_thm3,
)
from .theorems import (
    Check,
    VerificationReport,
    congruence_on_ultraproduct,
    coordinatewise_quotient_map,
    diagonal_restriction,
    join_of_meets,
    natural_embedding,
    union_of_meets,
    verify_thm1,
    verify_thm2,
    verify_thm3,
)
from .ultrafilter import (
    AxiomViolation,
    UltrafilterD,
    check_4star,
    check_ultrafilter,
    enumerate_ultrafilters,
    is_filter,
    is_ultrafilter,
    mask_elements,
    parse_ultrafilter,
    principal_ultrafilter,
    subset_mask,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_SIZE_GUARD",
    "Algebra",
    "AxiomViolation",
    "Check",
    "ConLattice",
    "Congruence",
    "CongruenceFamily",
    "ElemMap",
    "IsoResult",
    "Partition",
    "ProductAlgebra",
    "QuotientAlgebra",
    "Signature",
    "SizeGuardError",
    "SweepResult",
    "UltraconError",
    "UltrafilterD",
    "UltraproductAlgebra",
    "ValidationError",
    "VerificationReport",
    "algebra_from_dict",
    "algebra_to_dict",
    "all_partitions",
    "check_4star",
    "check_ultrafilter",
    "con_as_algebra",
    "con_lattice",
    "con_lattice_bruteforce",
    "con_lattice_dot",
    "con_lattice_of",
    "congruence_on_ultraproduct",
    "corpus_by_name",
    "coordinatewise_quotient_map",
    "diagonal_restriction",
    "direct_product",
    "dstar",
    "enumerate_ultrafilters",
    "find_isomorphism",
    "format_partition",
    "induced_congruence",
    "is_congruence",
    "is_filter",
    "is_homomorphism",
    "is_ultrafilter",
    "isomorphic_by_bruteforce",
    "join_of_meets",
    "kernel",
    "load_algebra",
    "make_algebra",
    "mask_elements",
    "natural_embedding",
    "parse_partition",
    "parse_ultrafilter",
    "principal_congruence",
    "principal_ultrafilter",
    "product_congruence",
    "quotient",
    "run_all_sweeps",
    "save_algebra",
    "standard_corpus",
    "subset_mask",
    "sweep_principal_collapse",
    "sweep_thm1",
    "sweep_thm2",
    "sweep_thm3",
    "ultraproduct",
    "union_of_meets",
    "verify_thm1",
    "verify_thm2",
    "verify_thm3",
]
