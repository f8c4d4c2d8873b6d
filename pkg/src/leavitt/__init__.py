"""Leavitt path algebras and the injective Leavitt complex of a finite
quiver without sinks, with exact chain-level verification."""

from .quiver import Quiver, Path, parse_quiver, enumerate_paths, compose
from .algebra import (AdmissiblePair, LPAElement, is_admissible, enumerate_pairs,
                      witness_pair, mul, unit, monomial, idempotent,
                      arrow_element, ghost_element, pair_degree, star_pair)
from .complex import (BasisVector, ChainVector, Socle, AElement, BasisClass,
                      differential, cokernel_differential, quotient_differential,
                      a_action, classify, kernel_basis, preimage_witness,
                      filtration_membership, filtration_iso, resolution_augmentations)
from .scalars import RATIONALS, PrimeField, parse_field

__all__ = [
    "Quiver", "Path", "parse_quiver", "enumerate_paths", "compose",
    "AdmissiblePair", "LPAElement", "is_admissible", "enumerate_pairs",
    "witness_pair", "mul", "unit", "monomial", "idempotent",
    "arrow_element", "ghost_element", "pair_degree", "star_pair",
    "BasisVector", "ChainVector", "Socle", "AElement", "BasisClass",
    "differential", "cokernel_differential", "quotient_differential",
    "a_action", "classify", "kernel_basis", "preimage_witness",
    "filtration_membership", "filtration_iso", "resolution_augmentations",
    "RATIONALS", "PrimeField", "parse_field",
]

__version__ = "0.1.0"
