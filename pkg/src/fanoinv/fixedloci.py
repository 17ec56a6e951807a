"""Torus-fixed data on Gr(r, n).

Fixed points are coordinate r-planes, written as sorted tuples of 0-based
indices.  The torus acts on C^n so that S^dual has weight alpha_u on the
coordinate e_u; with this convention the tangent space at a fixed point S has
weights alpha_u - alpha_k (u in S, k not in S) and O(1) = det S^dual has
weight sum(alpha_u for u in S).

Equivariant bundles built from S^dual (O(a), wedge powers, ...) are described
by a multiset of exponent vectors over the r Chern roots; see
:class:`RootBundle`.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

FixedPoint = tuple[int, ...]


class DegenerateWeights(ArithmeticError):
    """A torus weight specialised to zero where it must not vanish."""


@dataclass(frozen=True)
class TorusWeights:
    n: int
    alpha: tuple[int, ...]
    seed: int | None = None

    def __post_init__(self) -> None:
        if len(self.alpha) != self.n:
            raise ValueError(f"need {self.n} weights, got {len(self.alpha)}")
        if len(set(self.alpha)) != self.n:
            raise DegenerateWeights("torus weights must be distinct")

    @classmethod
    def from_seed(cls, n: int, seed: int, bits: int = 63) -> "TorusWeights":
        rng = random.Random(seed)
        alpha: list[int] = []
        while len(alpha) < n:
            a = rng.randrange(-(1 << (bits - 1)), 1 << (bits - 1))
            if a not in alpha:
                alpha.append(a)
        return cls(n, tuple(alpha), seed)


def fixed_points(r: int, n: int) -> list[FixedPoint]:
    if not 0 < r < n:
        raise ValueError(f"need 0 < r < n, got r={r}, n={n}")
    pts = list(combinations(range(n), r))
    assert len(pts) == comb(n, r)
    return pts


def neighbors(p: FixedPoint, n: int) -> list[FixedPoint]:
    """Fixed points joined to ``p`` by a torus-invariant line."""
    inside = set(p)
    out = []
    for u in p:
        for k in range(n):
            if k in inside:
                continue
            out.append(tuple(sorted((inside - {u}) | {k})))
    out.sort()
    return out


def moving_indices(pa: FixedPoint, pb: FixedPoint) -> tuple[int, int, tuple[int, ...]]:
    """(index only in pa, index only in pb, shared indices) for adjacent points."""
    sa, sb = set(pa), set(pb)
    only_a = sa - sb
    only_b = sb - sa
    if len(only_a) != 1 or len(only_b) != 1:
        raise ValueError(f"{pa} and {pb} are not joined by an invariant line")
    shared = tuple(sorted(sa & sb))
    return only_a.pop(), only_b.pop(), shared


def tangent_weights(p: FixedPoint, w: TorusWeights) -> list[int]:
    inside = set(p)
    a = w.alpha
    return [a[u] - a[k] for u in p for k in range(w.n) if k not in inside]


def euler(weights: Iterable[Fraction | int]) -> Fraction:
    out = Fraction(1)
    for x in weights:
        if x == 0:
            raise DegenerateWeights("zero weight in an Euler class")
        out *= x
    return out


@dataclass(frozen=True)
class EquivLineData:
    """An equivariant line bundle on a torus-invariant P^1.

    ``lam_a``/``lam_b`` are the fibre weights at the two fixed points,
    ``m`` the degree and ``omega_a`` the tangent weight at the first point.
    """

    lam_a: Fraction
    lam_b: Fraction
    m: int
    omega_a: Fraction

    def __post_init__(self) -> None:
        if self.lam_a - self.lam_b != self.m * self.omega_a:
            raise ValueError("fibre weights inconsistent with degree and tangent weight")


def line_bundle_cohomology_weights(line: EquivLineData) -> tuple[list[Fraction], list[Fraction]]:
    lam, om, m = Fraction(line.lam_a), Fraction(line.omega_a), line.m
    if m >= 0:
        return [lam - j * om for j in range(m + 1)], []
    return [], [lam + j * om for j in range(1, -m)]


def _multiset_sub(plus: Counter, minus: Counter) -> Counter:
    out = Counter(plus)
    out.subtract(minus)
    neg = [k for k, v in out.items() if v < 0]
    if neg:
        raise ValueError(f"virtual weight multiset has negative multiplicities: {neg[:3]}")
    return +out


@dataclass(frozen=True)
class RootBundle:
    """Equivariant bundle whose weights are sums of Chern roots of S^dual.

    Each exponent vector e contributes the character sum(e_i * x_i) where
    x_1..x_r are the roots.  The multiset must be symmetric under permuting
    the roots, so it defines a bundle on Gr(r, n) (O(a), wedge^k S^dual, ...).
    """

    name: str
    r: int
    exponents: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if any(len(e) != self.r for e in self.exponents):
            raise ValueError("exponent vectors must have length r")
        c = Counter(self.exponents)
        for perm in _transpositions(self.r):
            if Counter(tuple(e[i] for i in perm) for e in self.exponents) != c:
                raise ValueError(f"{self.name}: exponent multiset is not symmetric")

    @classmethod
    def line(cls, r: int, a: int) -> "RootBundle":
        return cls(f"O({a})", r, ((a,) * r,))

    @classmethod
    def wedge(cls, r: int, k: int) -> "RootBundle":
        vecs = []
        for sub in combinations(range(r), k):
            vecs.append(tuple(1 if i in sub else 0 for i in range(r)))
        return cls(f"wedge^{k} S*", r, tuple(vecs))

    @property
    def rank(self) -> int:
        return len(self.exponents)

    def degree(self) -> int:
        """Degree on a line of Gr(r, n) (first Chern class against the line)."""
        return sum(e[-1] for e in self.exponents)

    def point_weights(self, p: FixedPoint, w: TorusWeights) -> list[int]:
        a = w.alpha
        return [sum(ei * a[u] for ei, u in zip(e, p)) for e in self.exponents]

    def edge_lines(self, pa: FixedPoint, pb: FixedPoint, d_e: int, w: TorusWeights) -> list[EquivLineData]:
        """Equivariant splitting of the pullback to a degree-d_e cover of the line pa--pb."""
        ua, ub, shared = moving_indices(pa, pb)
        a = w.alpha
        omega = Fraction(a[ua] - a[ub], d_e)
        out = []
        for e in self.exponents:
            base = sum(ei * a[u] for ei, u in zip(e, shared))
            k = e[-1]
            out.append(EquivLineData(Fraction(base + k * a[ua]), Fraction(base + k * a[ub]), k * d_e, omega))
        return out


def _transpositions(r: int) -> list[tuple[int, ...]]:
    out = []
    for i in range(r - 1):
        perm = list(range(r))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        out.append(tuple(perm))
    return out


@dataclass(frozen=True)
class EdgeGeometry:
    pa: FixedPoint
    pb: FixedPoint
    d_e: int

    def __post_init__(self) -> None:
        moving_indices(self.pa, self.pb)
        if self.d_e < 1:
            raise ValueError("edge degree must be positive")


def edge_tangent_weights(e: EdgeGeometry, w: TorusWeights) -> list[Fraction]:
    """Moving weights of H^0(C_e, f^*T_G) for a degree d_e cover of an invariant line.

    From the Euler sequence, T_G = S^dual (x) C^n - S^dual (x) S in K-theory, so
    H^0(f^*T_G) = H^0(S^dual (x) C^n) - H^0(S^dual (x) S) + H^1(S^dual (x) S).
    The single zero weight (infinitesimal reparametrisation) is removed.
    """
    r = len(e.pa)
    sdual = RootBundle.wedge(r, 1)
    lines = sdual.edge_lines(e.pa, e.pb, e.d_e, w)
    a = w.alpha
    plus: Counter = Counter()
    minus: Counter = Counter()
    for line in lines:
        # S^dual (x) C^n, trivial summand k carries weight -alpha_k
        for k in range(w.n):
            shifted = EquivLineData(line.lam_a - a[k], line.lam_b - a[k], line.m, line.omega_a)
            h0, h1 = line_bundle_cohomology_weights(shifted)
            plus.update(h0)
            minus.update(h1)
        # S^dual (x) S
        for other in lines:
            tensor = EquivLineData(
                line.lam_a - other.lam_a, line.lam_b - other.lam_b, line.m - other.m, line.omega_a
            )
            h0, h1 = line_bundle_cohomology_weights(tensor)
            minus.update(h0)
            plus.update(h1)
    net = _multiset_sub(plus, minus)
    zeros = net.pop(Fraction(0), 0)
    if zeros != 1:
        raise DegenerateWeights(f"expected one zero weight on an edge, found {zeros}")
    return sorted(net.elements())


def edge_tangent_euler(e: EdgeGeometry, w: TorusWeights) -> Fraction:
    return euler(edge_tangent_weights(e, w))


def flag_weight(pv: FixedPoint, pw: FixedPoint, d_e: int, w: TorusWeights) -> Fraction:
    """Tangent weight at ``pv`` of a degree-d_e cover of the line pv--pw."""
    uv, uw, _ = moving_indices(pv, pw)
    return Fraction(w.alpha[uv] - w.alpha[uw], d_e)


# -- insertion lifts ---------------------------------------------------------

# restriction of the lifted class to Y divided by h_2
LIFTS: dict[str, dict[str, int]] = {
    "V5": {"sigma1sq": 5, "sigma11": 2, "sigma2": 3},
    "V22": {"sigma1sq": 22, "c2S": 10},
}


@dataclass(frozen=True)
class InsertionLift:
    name: str
    divisor: int

    @classmethod
    def for_target(cls, target: str, name: str) -> "InsertionLift":
        try:
            return cls(name, LIFTS[target][name])
        except KeyError:
            raise ValueError(f"unknown lift {name!r} for target {target!r}") from None


def _e1e2(p: Sequence[int], w: TorusWeights) -> tuple[int, int]:
    xs = [w.alpha[u] for u in p]
    e1 = sum(xs)
    e2 = sum(x * y for x, y in combinations(xs, 2))
    return e1, e2


def insertion_weight(lift: InsertionLift, p: FixedPoint, w: TorusWeights) -> Fraction:
    """Fixed-point value of an equivariant class on G restricting to h_2 on Y."""
    e1, e2 = _e1e2(p, w)
    if lift.name == "sigma1sq":
        value = e1 * e1
    elif lift.name in ("sigma11", "c2S"):
        value = e2
    elif lift.name == "sigma2":
        value = e1 * e1 - e2
    else:
        raise ValueError(f"unknown lift {lift.name!r}")
    return Fraction(value, lift.divisor)
