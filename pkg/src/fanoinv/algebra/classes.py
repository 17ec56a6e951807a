"""Chern classes, Chern characters and Todd classes in a graded ring.

All series are truncated at the complex dimension of the ring they live in,
which is automatic because the ring itself vanishes above that degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Iterable, Literal

from .ring import GradedRing, RingElement, RingError

Kind = Literal["chern", "ch", "todd"]


@dataclass(frozen=True)
class CharClass:
    """A characteristic series: total Chern class, Chern character or Todd class."""

    kind: Kind
    rank: int
    value: RingElement

    def __post_init__(self) -> None:
        c0 = self.value.constant()
        if self.kind in ("chern", "todd") and c0 != 1:
            raise RingError(f"{self.kind} series must start with 1, got {c0}")
        if self.kind == "ch" and c0 != self.rank:
            raise RingError(f"ch degree-0 part {c0} does not match rank {self.rank}")

    @property
    def ring(self) -> GradedRing:
        return self.value.ring

    def __getitem__(self, k: int) -> RingElement:
        return self.value.part(k)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def power_sums_from_chern(c: RingElement) -> list[RingElement]:
    """Newton's identities: power sums p_1..p_dim of the Chern roots."""
    ring = c.ring
    e = [c.part(k) for k in range(ring.dim + 1)]
    p = [ring.zero]
    for k in range(1, ring.dim + 1):
        acc = e[k] * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            acc = acc + e[i] * p[k - i] * _sign(i - 1)
        p.append(acc)
    return p


def chern_to_ch(c: CharClass | RingElement, rank: int | None = None) -> CharClass:
    if isinstance(c, CharClass):
        if c.kind != "chern":
            raise RingError("expected a total Chern class")
        rank = c.rank if rank is None else rank
        c = c.value
    if rank is None:
        raise RingError("rank required")
    ring = c.ring
    p = power_sums_from_chern(c)
    ch = ring.scalar(rank)
    for k in range(1, ring.dim + 1):
        ch = ch + p[k] / factorial(k)
    return CharClass("ch", rank, ch)


def ch_to_chern(ch: CharClass | RingElement) -> CharClass:
    if isinstance(ch, RingElement):
        ch = CharClass("ch", int(ch.constant()), ch)
    if ch.kind != "ch":
        raise RingError("expected a Chern character")
    ring = ch.ring
    p = [ring.zero] + [ch[k] * factorial(k) for k in range(1, ring.dim + 1)]
    e = [ring.one]
    for k in range(1, ring.dim + 1):
        acc = ring.zero
        for i in range(1, k + 1):
            acc = acc + e[k - i] * p[i] * _sign(i - 1)
        e.append(acc / k)
    return CharClass("chern", ch.rank, sum(e[1:], ring.one))


# -- power series helpers -------------------------------------------------


def _series_inv(a: list[Fraction], n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    out[0] = 1 / a[0]
    for k in range(1, n):
        s = sum((a[i] * out[k - i] for i in range(1, min(k, len(a) - 1) + 1)), Fraction(0))
        out[k] = -s / a[0]
    return out


def _series_log(a: list[Fraction], n: int) -> list[Fraction]:
    # log(a) for a[0] == 1 via (log a)' = a'/a
    inv = _series_inv(a, n)
    da = [k * a[k] for k in range(1, n)] + [Fraction(0)]
    q = [sum((da[i] * inv[k - i] for i in range(k + 1)), Fraction(0)) for k in range(n)]
    return [Fraction(0)] + [q[k - 1] / k for k in range(1, n)]


def todd_log_coefficients(n: int) -> list[Fraction]:
    """Coefficients of log(x / (1 - exp(-x))) up to x^(n-1)."""
    # (1 - exp(-x))/x = sum (-1)^k x^k / (k+1)!
    g = [Fraction(_sign(k), factorial(k + 1)) for k in range(n)]
    f = _series_inv(g, n)
    return _series_log(f, n)


def exp_nilpotent(x: RingElement) -> RingElement:
    """exp of a class with zero constant term."""
    if x.constant():
        raise RingError("exp needs a nilpotent argument")
    out = x.ring.one
    term = x.ring.one
    for k in range(1, x.ring.dim + 1):
        term = term * x / k
        if not term:
            break
        out = out + term
    return out


def inverse(x: RingElement) -> RingElement:
    """Multiplicative inverse of a class with nonzero constant term."""
    c0 = x.constant()
    if not c0:
        raise RingError("class is not invertible")
    n = (x / c0) - 1
    out = x.ring.one
    term = x.ring.one
    for _ in range(x.ring.dim):
        term = -(term * n)
        if not term:
            break
        out = out + term
    return out / c0


def todd(c: CharClass | RingElement) -> CharClass:
    """Todd class of a bundle (or K-class) with total Chern class ``c``."""
    if isinstance(c, CharClass) and c.kind != "chern":
        raise RingError(f"todd() needs a total Chern class, got {c.kind}")
    value = c.value if isinstance(c, CharClass) else c
    ring = value.ring
    p = power_sums_from_chern(value)
    a = todd_log_coefficients(ring.dim + 1)
    log_td = ring.zero
    for k in range(1, ring.dim + 1):
        log_td = log_td + p[k] * a[k]
    return CharClass("todd", 0, exp_nilpotent(log_td))


def todd_from_ch(ch: CharClass) -> CharClass:
    return todd(ch_to_chern(ch))


def dual_involution(ch: CharClass | RingElement) -> CharClass | RingElement:
    """ch(E) -> ch(E^dual): negate odd-degree components."""
    value = ch.value if isinstance(ch, CharClass) else ch
    ring = value.ring
    out = ring.zero
    for k in range(ring.dim + 1):
        part = value.part(k)
        out = out + (-part if k % 2 else part)
    if isinstance(ch, CharClass):
        return CharClass(ch.kind, ch.rank, out)
    return out


def chern_of_difference(a: CharClass | RingElement, b: CharClass | RingElement) -> RingElement:
    """c(A - B) = c(A) / c(B)."""
    av = a.value if isinstance(a, CharClass) else a
    bv = b.value if isinstance(b, CharClass) else b
    return av * inverse(bv)


def porteous_class(c_e: RingElement, e: int, c_f: RingElement, f: int, r: int) -> RingElement:
    """Class of the locus where a map E -> F has rank <= r.

    det( c_{f-r+j-i}(F - E) ) over an (e-r) x (e-r) matrix.
    """
    if not (0 <= r < min(e, f)):
        raise RingError(f"need 0 <= r < min(e, f), got r={r}, e={e}, f={f}")
    if c_e.constant() != 1 or c_f.constant() != 1:
        raise RingError("inputs must be total Chern classes")
    diff = chern_of_difference(c_f, c_e)
    ring = diff.ring
    n = e - r

    def entry(i: int, j: int) -> RingElement:
        k = f - r + j - i
        if k < 0:
            return ring.zero
        return diff.part(k)

    return _det([[entry(i, j) for j in range(n)] for i in range(n)], ring)


def _det(m: list[list[RingElement]], ring: GradedRing) -> RingElement:
    n = len(m)
    out = ring.zero
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = ring.one
        for i in range(n):
            term = term * m[i][perm[i]]
        out = out + (term if sign > 0 else -term)
    return out


def line_ch(c1: RingElement) -> CharClass:
    return CharClass("ch", 1, exp_nilpotent(c1))


def ch_sum(terms: Iterable[tuple[int, CharClass]]) -> CharClass:
    terms = list(terms)
    if not terms:
        raise RingError("empty sum")
    ring = terms[0][1].ring
    value = ring.zero
    rank = 0
    for m, ch in terms:
        if ch.kind != "ch":
            raise RingError("K-class sums need Chern characters")
        value = value + ch.value * m
        rank += m * ch.rank
    return CharClass("ch", rank, value)


def ch_product(a: CharClass, b: CharClass) -> CharClass:
    return CharClass("ch", a.rank * b.rank, a.value * b.value)
