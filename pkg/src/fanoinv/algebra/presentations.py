"""Standard ring presentations used by the DT side."""

from __future__ import annotations

from functools import lru_cache
from typing import Mapping

from .ring import GradedRing, _parse_poly


def ring_from_record(name: str, rec: Mapping) -> GradedRing:
    gens, degs = rec["gens"], rec["degrees"]
    point = _parse_poly(rec["point"], gens)
    (mono,) = point
    dim = sum(e * d for e, d in zip(mono, degs))
    return GradedRing(name, gens, degs, rec["relations"], dim, rec["point"])


@lru_cache(maxsize=None)
def projective_space(n: int, gen: str = "m1") -> GradedRing:
    return GradedRing(f"P{n}", [gen], [1], [f"{gen}^{n + 1}"], n, f"{gen}^{n}")


@lru_cache(maxsize=None)
def grassmannian_2_5() -> GradedRing:
    """H^*(Gr(2,5)) with m1 = c1(S), m2 = c2(S)."""
    return GradedRing(
        "Gr25",
        ["m1", "m2"],
        [1, 2],
        ["-m1^5+4*m1^3*m2-3*m1*m2^2", "m1^4-3*m1^2*m2+m2^2"],
        6,
        "m2^3",
    )
