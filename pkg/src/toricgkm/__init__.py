"""Retraction sequences, local groups and GKM section rings of toric orbifolds."""

from ._backend import BACKEND
from .characteristic import (
    CharacteristicPair,
    face_group,
    induced_characteristic,
    local_group,
    validate_characteristic,
    vertex_group,
)
from .gkm import (
    PiecewiseElement,
    Section,
    build_gkm_graph,
    check_piecewise,
    check_section,
    coprimality_check,
    face_ideal,
    piecewise_from_section,
    section_from_piecewise,
)
from .laurent import GradedPolynomial, LaurentPolynomial
from .polytope import Face, SimplePolytope
from .retraction import (
    cell_counts,
    enumerate_retractions,
    find_divisive_sequence,
    is_divisive,
)
from .zlinalg import FiniteAbelianGroup, smith_normal_form

__version__ = "0.1.0"

__all__ = [
    "Face",
    "GradedPolynomial",
    "LaurentPolynomial",
    "SimplePolytope",
    "BACKEND",
    "CharacteristicPair",
    "face_group",
    "induced_characteristic",
    "local_group",
    "validate_characteristic",
    "vertex_group",
    "PiecewiseElement",
    "Section",
    "build_gkm_graph",
    "check_piecewise",
    "check_section",
    "coprimality_check",
    "face_ideal",
    "piecewise_from_section",
    "section_from_piecewise",
    "cell_counts",
    "enumerate_retractions",
    "find_divisive_sequence",
    "is_divisive",
    "FiniteAbelianGroup",
    "smith_normal_form",
]
