"""Meeting invariants and the genus-0 / genus-1 GV checks on X = |K_Y|.

H^4 of the compactification is spanned by T1 (dual to H cap Y) and T2 (pullback
of the line class).  Genus-0 GV invariants are read off from the signed DT4
numbers; meeting invariants are defined by the splitting recursion below.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable

from .dtcalc import SUPPORTED_DEGREES, dt_number, load_dataset, target_geometry


@dataclass(frozen=True)
class LocalFourfoldData:
    target: str
    deg: int
    t1_t1: int
    c2_X: int  # c2(X) as a multiple of T2

    @cached_property
    def g(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.t1_t1, 1), (1, 0))

    @cached_property
    def g_inv(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((0, 1), (1, -self.t1_t1))


def fourfold_data(target: str) -> LocalFourfoldData:
    tg = target_geometry(target)
    rec = load_dataset()["targets"][tg.name]
    return LocalFourfoldData(tg.name, tg.degree, rec["T1_T1"], rec["c2_X"])


def n0(target: str, d: int, c1: Fraction | int = 0, c2: Fraction | int = 1) -> Fraction:
    """n_{0,d}(c1 T1 + c2 T2), linear in the class; T1 restricts to (T1.T1) T2 on Y."""
    if d not in SUPPORTED_DEGREES:
        raise ValueError(f"genus-0 invariants are available for degrees {SUPPORTED_DEGREES}, not {d}")
    data = fourfold_data(target)
    if not c1 and not c2:
        return Fraction(0)
    base = dt_number(target, d, "tau0-h2").dt4
    return base * (Fraction(c1) * data.t1_t1 + Fraction(c2))


@dataclass
class MeetingTable:
    target: str
    values: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.data = fourfold_data(self.target)

    def _pairing(self, b1: int, b2: int) -> Fraction:
        v1 = (n0(self.target, b1, 1, 0), n0(self.target, b1, 0, 1))
        v2 = (n0(self.target, b2, 1, 0), n0(self.target, b2, 0, 1))
        gi = self.data.g_inv
        return sum((v1[i] * gi[i][j] * v2[j] for i in range(2) for j in range(2)), Fraction(0))

    def __call__(self, b1: int, b2: int) -> Fraction:
        if b1 <= 0 or b2 <= 0:
            return Fraction(0)
        if b1 > b2:
            b1, b2 = b2, b1
        key = (b1, b2)
        if key in self.values:
            return self.values[key]
        if b1 != b2:
            value = self._pairing(b1, b2) + self(b1, b2 - b1) + self(b1 - b2, b2)
        else:
            b = b1
            value = n0(self.target, b, 0, self.data.c2_X) + self._pairing(b, b)
            value -= sum((self(k, b - k) for k in range(1, b)), Fraction(0))
        self.values[key] = value
        return value


_TABLES: dict[str, MeetingTable] = {}


def meeting(target: str, b1: int, b2: int) -> Fraction:
    key = target_geometry(target).name
    if key not in _TABLES:
        _TABLES[key] = MeetingTable(key)
    return _TABLES[key](b1, b2)


@dataclass(frozen=True)
class CheckResult:
    name: str
    target: str
    d: int
    lhs: Fraction
    rhs: Fraction

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def genus0_rhs(target: str, d: int) -> Fraction:
    """sum over k | d of DT4(d/k) / k^2."""
    return sum(
        (dt_number(target, d // k, "tau0-h2").dt4 / (k * k) for k in range(1, d + 1) if d % k == 0),
        Fraction(0),
    )


def check_genus0(target: str, d: int, gw: Callable[[str, int], Fraction]) -> CheckResult:
    return CheckResult("genus0", target_geometry(target).name, d, gw(target, d), genus0_rhs(target, d))


def genus1_rhs(target: str, d: int) -> Fraction:
    """Right side of the genus-1 identity with gamma = H and all n_1 set to zero."""
    tg = target_geometry(target)
    value = n0(target, d, 0, tg.degree) / (2 * d)
    for d1 in range(1, d):
        d2 = d - d1
        value -= Fraction(d1 * d2, 4 * d) * meeting(target, d1, d2)
    return value


def signed_tau1(target: str, d: int) -> Fraction:
    return dt_number(target, d, "tau1-h1").dt4


def residual_n1(target: str, d: int) -> Fraction:
    """n_{1,d} solved from the genus-1 identity, using lower-degree residuals."""
    # sum_{k | d} (d/k) n_{1,d/k} = rhs - lhs
    total = genus1_rhs(target, d) - signed_tau1(target, d)
    for k in range(2, d + 1):
        if d % k == 0:
            total -= Fraction(d, k) * residual_n1(target, d // k)
    return total / d


def check_genus1(target: str, d: int) -> CheckResult:
    return CheckResult("genus1", target_geometry(target).name, d, residual_n1(target, d), Fraction(0))
