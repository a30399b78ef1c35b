"""HOCM construction, uncertainty and partial-transpose criteria."""
from .vectors import (
    QuadratureVectorSpec,
    parse_element,
    parse_vector,
    pair,
    standard_vector,
    pairwise_vectors,
    collective_vectors,
    alternative_collective_vector,
)
from .bipartitions import Bipartition, all_bipartitions, resolve_bipartitions
from .hocm import HOCMBundle, HOCMPlan, build_hocm, check_vector_degree, uncertainty_check
from .ppt import (
    IFF_1XN,
    IFF_MULTIMODE_PAIRS,
    IFF_BISYMMETRIC,
    NECESSARY_ONLY,
    SUFFICIENCY_CLASSES,
    ENTANGLED,
    SEPARABLE,
    UNDECIDED,
    MirrorMatrix,
    PPTVerdict,
    SchurBound,
    validate_locality,
    element_sides,
    partial_transpose,
    block_form,
    min_eigen,
    decide,
    ppt_min_eig,
    classify_sufficiency,
    schur_bound,
)

__all__ = [
    "QuadratureVectorSpec",
    "parse_element",
    "parse_vector",
    "pair",
    "standard_vector",
    "pairwise_vectors",
    "collective_vectors",
    "alternative_collective_vector",
    "Bipartition",
    "all_bipartitions",
    "resolve_bipartitions",
    "HOCMBundle",
    "HOCMPlan",
    "build_hocm",
    "check_vector_degree",
    "uncertainty_check",
    "IFF_1XN",
    "IFF_MULTIMODE_PAIRS",
    "IFF_BISYMMETRIC",
    "NECESSARY_ONLY",
    "SUFFICIENCY_CLASSES",
    "ENTANGLED",
    "SEPARABLE",
    "UNDECIDED",
    "MirrorMatrix",
    "PPTVerdict",
    "SchurBound",
    "validate_locality",
    "element_sides",
    "partial_transpose",
    "block_form",
    "min_eigen",
    "decide",
    "ppt_min_eig",
    "classify_sufficiency",
    "schur_bound",
]
