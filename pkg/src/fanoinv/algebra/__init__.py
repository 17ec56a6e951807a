"""Exact graded rings and characteristic-class calculus."""

from .classes import (
    CharClass,
    ch_product,
    ch_sum,
    ch_to_chern,
    chern_of_difference,
    chern_to_ch,
    dual_involution,
    exp_nilpotent,
    inverse,
    line_ch,
    porteous_class,
    todd,
    todd_from_ch,
)
from .presentations import grassmannian_2_5, projective_space, ring_from_record
from .ring import (
    GradedRing,
    ProductRing,
    Rational,
    RingElement,
    RingError,
    integrate,
    normal_form,
    pairing_matrix,
    tensor,
)

__all__ = [
    "CharClass",
    "GradedRing",
    "ProductRing",
    "Rational",
    "RingElement",
    "RingError",
    "ch_product",
    "ch_sum",
    "ch_to_chern",
    "chern_of_difference",
    "chern_to_ch",
    "dual_involution",
    "exp_nilpotent",
    "grassmannian_2_5",
    "integrate",
    "inverse",
    "line_ch",
    "normal_form",
    "pairing_matrix",
    "porteous_class",
    "projective_space",
    "ring_from_record",
    "tensor",
    "todd",
    "todd_from_ch",
]
