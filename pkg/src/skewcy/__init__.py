"""Exact computation of Nakayama automorphisms, AS indices and homological
determinants for graded algebras given by generators and relations."""

from __future__ import annotations

from .algebra import GradedAlgebra, GradedAutomorphism, KnownData, make_algebra, xi
from .constructions import (
    graded_twist,
    inner_witness,
    hi1_candidate,
    normality_witness,
    ore_extension,
    quotient_by_normal,
    rectify_diagonal,
    smash_product,
    tensor_product,
)
from .identities import (
    Verdict,
    verify_center,
    verify_hdet_descent,
    verify_hi1_cy,
    verify_hi2,
    verify_hi3,
    verify_ore_hdet,
    verify_quotient,
    verify_tensor,
)
from .koszul import (
    certify_koszul_as_regular,
    hdet_koszul,
    hdet_lookup,
    homological_determinant,
    nakayama,
    nakayama_koszul,
    quadratic_dual,
)
from .parsing import load_presentation, parse_presentation
from .scalars import Cyclotomic, PrimeField, Rationals

__version__ = "0.1.0"

__all__ = [
    "Cyclotomic",
    "GradedAlgebra",
    "GradedAutomorphism",
    "KnownData",
    "PrimeField",
    "Rationals",
    "Verdict",
    "certify_koszul_as_regular",
    "graded_twist",
    "hdet_koszul",
    "hdet_lookup",
    "hi1_candidate",
    "homological_determinant",
    "inner_witness",
    "load_presentation",
    "make_algebra",
    "nakayama",
    "nakayama_koszul",
    "normality_witness",
    "ore_extension",
    "parse_presentation",
    "quadratic_dual",
    "quotient_by_normal",
    "rectify_diagonal",
    "smash_product",
    "tensor_product",
    "verify_center",
    "verify_hdet_descent",
    "verify_hi1_cy",
    "verify_hi2",
    "verify_hi3",
    "verify_ore_hdet",
    "verify_quotient",
    "verify_tensor",
    "xi",
]
