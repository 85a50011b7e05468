"""Deciding biseriality of presented algebras kQ/I over GF(p), with checkable witnesses."""

__version__ = "0.1.0"

from .algebra import AlgebraPresentation, FiniteDimAlgebra, build_algebra, idempotent_subalgebra
from .bisected import BisectedWitness, search_bisected_witness, verify_bisected_witness
from .criteria import (
    ObstructionWitness,
    Variant,
    certify_obstruction,
    decide_biserial,
    neighbor_sets,
    subalgebra_criterion,
)
from .fuller import is_biserial_fuller, is_nakayama, is_special_biserial
from .instance import parse_instance, print_instance
from .quiver import Bisection, Path, Quiver

__all__ = [
    "AlgebraPresentation",
    "BisectedWitness",
    "Bisection",
    "FiniteDimAlgebra",
    "ObstructionWitness",
    "Path",
    "Quiver",
    "Variant",
    "build_algebra",
    "certify_obstruction",
    "decide_biserial",
    "idempotent_subalgebra",
    "is_biserial_fuller",
    "is_nakayama",
    "is_special_biserial",
    "neighbor_sets",
    "parse_instance",
    "print_instance",
    "search_bisected_witness",
    "subalgebra_criterion",
    "verify_bisected_witness",
]
