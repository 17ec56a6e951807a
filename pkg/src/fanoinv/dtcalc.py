"""Genus-zero DT and descendant invariants of V5 and V22 in degrees 1-3.

The moduli space M_d and the universal curve are taken as input data (see
``data/targets.json``): either a free resolution of i_*O_C on M x Y, or, for
lines on V22, the leading Chern character of O_C on the ambient P^2 x V22.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from importlib import resources
from typing import Any

from .algebra import (
    CharClass,
    GradedRing,
    ProductRing,
    RingElement,
    RingError,
    ch_product,
    ch_sum,
    ch_to_chern,
    chern_to_ch,
    dual_involution,
    exp_nilpotent,
    integrate,
    inverse,
    line_ch,
    porteous_class,
    ring_from_record,
    tensor,
    todd,
)

INSERTIONS = {"tau0-h2": (0, "h2"), "tau1-h1": (1, "h1")}
SUPPORTED_DEGREES = (1, 2, 3)


@lru_cache(maxsize=1)
def load_dataset() -> dict[str, Any]:
    text = resources.files("fanoinv").joinpath("data/targets.json").read_text(encoding="utf-8")
    data = json.loads(text)
    if data.get("version") != 1:
        raise ValueError(f"unsupported dataset version {data.get('version')!r}")
    return data


def dataset_text() -> str:
    return json.dumps(load_dataset(), indent=2, ensure_ascii=False)


def _target_key(name: str) -> str:
    key = name.upper()
    if key not in load_dataset()["targets"]:
        raise ValueError(f"unknown target {name!r}")
    return key


@dataclass(frozen=True)
class TargetGeometry:
    name: str
    ring: GradedRing
    degree: int
    index: int
    chern_Y: RingElement
    bundle_data: dict

    def __post_init__(self) -> None:
        h1, h2, h3 = (self.ring.gen(g) for g in ("h1", "h2", "h3"))
        if h1 * h1 != h2 * self.degree or integrate(h1**3) != self.degree or integrate(h1 * h2) != 1:
            raise RingError(f"{self.name}: ring relations disagree with degree {self.degree}")

    def bundle_ch(self, name: str) -> CharClass:
        return _parse_bundle(name, self.ring, self.bundle_data, self.ring.gen("h1"))

    @cached_property
    def todd_Y(self) -> RingElement:
        return todd(self.chern_Y).value

    @cached_property
    def todd_K_inverse(self) -> RingElement:
        """td(K_Y)^{-1} for the line class c1(K_Y) = -index * h1."""
        return inverse(todd(1 + self.ring.gen("h1") * (-self.index)).value)

    def dt4_sign(self, d: int) -> int:
        return -1 if (self.index * d - 1) % 2 else 1


@lru_cache(maxsize=None)
def target_geometry(name: str) -> TargetGeometry:
    key = _target_key(name)
    rec = load_dataset()["targets"][key]
    ring = ring_from_record(key, rec["ring"])
    return TargetGeometry(key, ring, rec["degree"], rec["index"], ring(rec["chern_Y"]), rec["bundles"])


_BUNDLE = re.compile(r"^(?P<base>[A-Z])(?P<dual>\*)?(?:\((?P<twist>-?\d+)\))?$")


def _parse_bundle(spec: str, ring: GradedRing, data: dict, hyperplane: RingElement) -> CharClass:
    """Chern character of names like O(2), Q*, S(-1), S*(1), S*⊗Q."""
    if "⊗" in spec:
        left, right = spec.split("⊗", 1)
        return ch_product(_parse_bundle(left, ring, data, hyperplane), _parse_bundle(right, ring, data, hyperplane))
    m = _BUNDLE.match(spec)
    if not m:
        raise ValueError(f"cannot parse bundle name {spec!r}")
    base = m["base"]
    if base == "O":
        ch = line_ch(ring.zero)
    else:
        if base not in data:
            raise ValueError(f"unknown bundle {base!r} on {ring.name}")
        rec = data[base]
        if "chern" in rec:
            ch = chern_to_ch(ring(rec["chern"]), rec["rank"])
        else:  # complement of S in a trivial bundle
            src = data[rec["complement_of"]]
            ch = chern_to_ch(inverse(ring(src["chern"])), rec["rank"])
    if m["dual"]:
        ch = dual_involution(ch)
    if m["twist"]:
        ch = ch_product(ch, line_ch(hyperplane * int(m["twist"])))
    return ch


@dataclass(frozen=True)
class ModuliDescription:
    name: str
    ring: GradedRing
    record: dict

    @cached_property
    def hyperplane(self) -> RingElement:
        return self.ring(self.record.get("hyperplane", "m1"))

    @cached_property
    def bundle_data(self) -> dict:
        data = dict(self.record.get("bundles", {}))
        if "S" in data and "Q" not in data:
            data["Q"] = {"rank": 5 - data["S"]["rank"], "complement_of": "S"}
        return data

    def bundle_ch(self, name: str) -> CharClass:
        return _parse_bundle(name, self.ring, self.bundle_data, self.hyperplane)

    def tangent_ch(self) -> CharClass:
        kind = self.record["tangent"]["kind"]
        if kind == "projective":
            n = self.record["tangent"]["n"]
            return ch_sum([(n + 1, self.bundle_ch("O(1)")), (-1, self.bundle_ch("O"))])
        if kind == "grassmannian":
            return ch_product(self.bundle_ch("S*"), self.bundle_ch("Q"))
        raise ValueError(f"unknown tangent description {kind!r}")


@lru_cache(maxsize=None)
def moduli(name: str) -> ModuliDescription:
    rec = load_dataset()["moduli"][name]
    return ModuliDescription(name, ring_from_record(name, rec), rec)


@lru_cache(maxsize=None)
def case_record(target: str, d: int) -> dict:
    key = _target_key(target)
    for rec in load_dataset()["cases"]:
        if rec["target"] == key and rec["d"] == d:
            return rec
    raise ValueError(f"no moduli description for {key} in degree {d} (supported: {SUPPORTED_DEGREES})")


@dataclass(frozen=True)
class DTCase:
    target: TargetGeometry
    moduli: ModuliDescription
    product: ProductRing
    record: dict

    @property
    def d(self) -> int:
        return self.record["d"]

    @property
    def ambient(self) -> bool:
        return "ambient" in self.record


@lru_cache(maxsize=None)
def dt_case(target: str, d: int) -> DTCase:
    rec = case_record(target, d)
    tg = target_geometry(rec["target"])
    mod = moduli(rec["moduli"])
    return DTCase(tg, mod, tensor(mod.ring, tg.ring), rec)


def _external(case: DTCase, a: CharClass, b: CharClass) -> CharClass:
    A = case.product
    return CharClass("ch", a.rank * b.rank, A.pull_left(a.value) * A.pull_right(b.value))


def resolution_terms(target: str, d: int) -> list[tuple[int, CharClass]]:
    case = dt_case(target, d)
    if case.ambient:
        raise ValueError(f"{case.target.name} degree {d} has no resolution; it is computed in the ambient space")
    out = []
    for i, (m_name, y_name) in enumerate(case.record["resolution"]):
        sign = -1 if i % 2 else 1
        out.append((sign, _external(case, case.moduli.bundle_ch(m_name), case.target.bundle_ch(y_name))))
    return out


@lru_cache(maxsize=None)
def universal_ch(target: str, d: int) -> CharClass:
    """ch(i_*O_C) on M x Y (for the ambient case, on P^2 x Y through degree 4)."""
    case = dt_case(target, d)
    A = case.product
    if case.ambient:
        parts = case.record["ambient"]["ch"]
        value = sum((A(expr) for expr in parts.values()), A.zero)
        return CharClass("ch", 0, value)
    ch = ch_sum(resolution_terms(target, d))
    if ch.rank != 0:
        raise RingError("resolution does not describe a torsion sheaf")
    return ch


def det_twist(target: str, d: int) -> RingElement:
    """M-side Kunneth component of c1(det F)."""
    case = dt_case(target, d)
    if case.ambient:
        return case.moduli.ring.zero
    c1 = universal_ch(target, d).value.part(1)
    return case.product.left_component(c1)


@lru_cache(maxsize=None)
def normalized_ch(target: str, d: int) -> CharClass:
    case = dt_case(target, d)
    ch = universal_ch(target, d)
    a = det_twist(target, d)
    if not a:
        return ch
    return CharClass("ch", 0, ch.value * exp_nilpotent(case.product.pull_left(-a)))


def tau_integrand(target: str, d: int, i: int, gamma: str) -> RingElement:
    """gamma . {ch(F_norm) td(K_Y)^{-1}}_{2+i} on M x Y, before pushing forward."""
    case = dt_case(target, d)
    A = case.product
    X = normalized_ch(target, d).value * A.pull_right(case.target.todd_K_inverse)
    shift = 0
    if case.ambient:
        # classes on the hypersurface Q push into P^2 after multiplying by td(N_Q)
        k = case.record["ambient"]["hypersurface_degree"]
        X = X * A.pull_left(todd(1 + case.moduli.hyperplane * k).value)
        shift = 1
    return A(gamma) * X.part(2 + i + shift)


@lru_cache(maxsize=None)
def tau_class(target: str, d: int, i: int, gamma: str) -> RingElement:
    if (i, gamma) not in INSERTIONS.values() and gamma not in ("0",):
        raise ValueError(f"unsupported insertion tau_{i}({gamma})")
    case = dt_case(target, d)
    return case.product.push_left(tau_integrand(target, d, i, gamma))


def tau0_via_ch2(target: str, d: int) -> RingElement:
    """tau_0(h2) from the primary-insertion definition pi_*(h2 . ch_2(F))."""
    case = dt_case(target, d)
    if case.ambient:
        raise ValueError("only defined for resolution cases")
    A = case.product
    return A.push_left(A("h2") * universal_ch(target, d).value.part(2))


@lru_cache(maxsize=None)
def obstruction_ch(target: str, d: int) -> CharClass:
    """ch(ob) = ch(T_M) + pi_*(ch(F)^dual ch(F) td(Y)) - 1."""
    case = dt_case(target, d)
    if case.ambient:
        raise ValueError("the moduli space of lines on V22 is singular; no obstruction bundle is used")
    A = case.product
    ch = universal_ch(target, d).value
    rhom = A.push_left(dual_involution(ch) * ch * A.pull_right(case.target.todd_Y))
    value = case.moduli.tangent_ch().value + rhom - 1
    rank = value.constant()
    if rank.denominator != 1:
        raise RingError("obstruction rank is not an integer")
    return CharClass("ch", int(rank), value)


def obstruction_table_ch(target: str, d: int) -> CharClass:
    case = dt_case(target, d)
    return ch_sum([(mult, case.moduli.bundle_ch(name)) for mult, name in case.record["obstruction"]])


@lru_cache(maxsize=None)
def virtual_class(target: str, d: int) -> RingElement:
    case = dt_case(target, d)
    if case.ambient:
        return case.moduli.ring.one
    ob = obstruction_ch(target, d)
    return ch_to_chern(ob).value.part(ob.rank)


def curve_class(target: str, d: int) -> RingElement:
    """Fundamental class of the universal curve in M x Y."""
    case = dt_case(target, d)
    if case.ambient:
        amb = case.record["ambient"]["porteous"]
        A = case.product
        src = case.target.bundle_ch(amb["source"])
        tgt = case.target.bundle_ch(amb["target"])
        twist = line_ch(case.moduli.hyperplane * amb["target_twist"])
        c_src = A.pull_right(ch_to_chern(src).value)
        c_tgt = ch_to_chern(_external(case, twist, tgt)).value
        return porteous_class(c_src, src.rank, c_tgt, tgt.rank, amb["rank"])
    return universal_ch(target, d).value.part(2)


@dataclass(frozen=True)
class DTResult:
    target: str
    d: int
    insertion: str
    dt3: Fraction
    dt4: Fraction


def dt_number(target: str, d: int, insertion: str = "tau0-h2") -> DTResult:
    if insertion not in INSERTIONS:
        raise ValueError(f"unknown insertion {insertion!r}; expected one of {sorted(INSERTIONS)}")
    i, gamma = INSERTIONS[insertion]
    case = dt_case(target, d)
    if case.ambient:
        dt3 = integrate(tau_integrand(target, d, i, gamma))
    else:
        dt3 = integrate(tau_class(target, d, i, gamma) * virtual_class(target, d))
    return DTResult(case.target.name, d, insertion, dt3, case.target.dt4_sign(d) * dt3)
