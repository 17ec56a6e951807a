"""Localization contributions of decorated graphs and twisted GW invariants.

For a fixed locus Gamma the contribution is

    e(F1) e(F2) gamma(p_mark) / (A_Gamma e(N^vir))

with F1 = pi_* f^* E (A-twist, E convex) and F2 = R^1 pi_* f^* O(-b)
(B-twist).  The normalisation sequence of the nodal domain gives, for any
line bundle L,

    chi(C, L) = sum_e chi(C_e, L) - sum_v (val(v) - 1) L|_{p_v}

which fixes every vertex correction below.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Callable, Iterable, Sequence

from . import _kernel
from .fixedloci import (
    DegenerateWeights,
    EdgeGeometry,
    InsertionLift,
    RootBundle,
    TorusWeights,
    edge_tangent_euler,
    euler,
    flag_weight,
    insertion_weight,
    line_bundle_cohomology_weights,
    tangent_weights,
)
from .graphs import AutInfo, DecoratedGraph, iter_raw, point_table, shards

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TwistSpec:
    name: str
    r: int
    n: int
    a_twist: tuple[tuple[RootBundle, int], ...] = ()
    b_twist: tuple[RootBundle, ...] = ()
    deg: int | None = None  # degree of the cut-out variety, if any

    def __post_init__(self) -> None:
        for bundle, mult in self.a_twist:
            if bundle.r != self.r or mult < 1:
                raise ValueError(f"bad A-twist summand {bundle.name}")
            if any(min(e) < 0 for e in bundle.exponents):
                raise ValueError(f"A-twist bundle {bundle.name} is not convex")
        for bundle in self.b_twist:
            if bundle.r != self.r or any(sum(e) >= 0 for e in bundle.exponents):
                raise ValueError(f"B-twist bundle {bundle.name} is not negative")


TARGETS: dict[str, TwistSpec] = {
    "V5": TwistSpec("V5", 2, 5, ((RootBundle.line(2, 1), 3),), (RootBundle.line(2, -2),), 5),
    "V22": TwistSpec("V22", 3, 7, ((RootBundle.wedge(3, 2), 3),), (RootBundle.line(3, -1),), 22),
}

DEFAULT_LIFTS = {"V5": ("sigma1sq", "sigma11"), "V22": ("sigma1sq", "c2S")}


def normalize_target(name: str) -> str:
    key = name.upper()
    if key not in TARGETS:
        raise ValueError(f"unknown target {name!r}; expected V5 or V22")
    return key


# -- psi integrals -----------------------------------------------------------


def psi_integral(m: int, exponents: Sequence[int]) -> Fraction:
    """Integral of prod psi_i^{a_i} over M_{0,m}."""
    if m < 3 or len(exponents) != m or any(a < 0 for a in exponents):
        raise ValueError("need m >= 3 and m nonnegative exponents")
    if sum(exponents) != m - 3:
        return Fraction(0)
    den = 1
    for a in exponents:
        den *= factorial(a)
    return Fraction(factorial(m - 3), den)


def _inverse_flag_integral(omegas: Sequence[Fraction], m: int) -> Fraction:
    """Integral over M_{0,m} of prod_F 1/(omega_F - psi_F); markings carry no psi.

    Each factor is expanded as sum_j psi_F^j / omega_F^(j+1).
    """
    k = len(omegas)
    total = Fraction(0)
    for exps in product(range(m - 2), repeat=k):
        if sum(exps) != m - 3:
            continue
        term = psi_integral(m, list(exps) + [0] * (m - k))
        for om, a in zip(omegas, exps):
            term /= om ** (a + 1)
        total += term
    return total


# -- reference (readable) contribution ------------------------------------


@dataclass
class GraphContribution:
    numerator: list[Fraction] = field(default_factory=list)
    denominator: list[Fraction] = field(default_factory=list)
    psi: Fraction = Fraction(1)
    a_gamma: int = 1

    def value(self) -> Fraction:
        out = self.psi / self.a_gamma
        for x in self.numerator:
            out *= x
        for x in self.denominator:
            if x == 0:
                raise DegenerateWeights("zero factor in a denominator")
            out /= x
        return out


def _flags(g: DecoratedGraph, v: int, w: TorusWeights) -> list[Fraction]:
    return [flag_weight(g.labels[v], g.labels[u], d, w) for u, d in g.adjacency[v]]


def domain_aut_def_factors(g: DecoratedGraph, w: TorusWeights) -> tuple[Fraction, Fraction, Fraction]:
    """(Ext^0 product, node-smoothing product, psi-integrated Ext^1 factor).

    The contribution to 1/e(N^vir) is ext0 / smoothing * flag_integral.
    """
    ext0 = Fraction(1)
    smoothing = Fraction(1)
    flag_integral = Fraction(1)
    for v in range(len(g.labels)):
        nv = g.special_points(v)
        omegas = _flags(g, v, w)
        if nv == 1:
            ext0 *= omegas[0]
        elif nv == 2 and g.valency(v) == 2:
            smoothing *= omegas[0] + omegas[1]
        elif nv >= 3:
            flag_integral *= _inverse_flag_integral(omegas, nv)
    return ext0, smoothing, flag_integral


def twist_euler(g: DecoratedGraph, t: TwistSpec, w: TorusWeights) -> tuple[Fraction, Fraction]:
    e1 = Fraction(1)
    for bundle, mult in t.a_twist:
        part = Fraction(1)
        for i, j, d in g.edges:
            for line in bundle.edge_lines(g.labels[i], g.labels[j], d, w):
                h0, h1 = line_bundle_cohomology_weights(line)
                assert not h1
                part *= euler(h0)
        for v in range(len(g.labels)):
            part /= euler(bundle.point_weights(g.labels[v], w)) ** (g.valency(v) - 1)
        e1 *= part**mult
    e2 = Fraction(1)
    for bundle in t.b_twist:
        for i, j, d in g.edges:
            for line in bundle.edge_lines(g.labels[i], g.labels[j], d, w):
                h0, h1 = line_bundle_cohomology_weights(line)
                assert not h0
                e2 *= euler(h1)
        for v in range(len(g.labels)):
            e2 *= euler(bundle.point_weights(g.labels[v], w)) ** (g.valency(v) - 1)
    return e1, e2


def graph_contribution(
    g: DecoratedGraph,
    t: TwistSpec,
    lift: InsertionLift | None,
    w: TorusWeights,
    aut: AutInfo,
) -> Fraction:
    c = GraphContribution(a_gamma=aut.a_gamma)
    e1, e2 = twist_euler(g, t, w)
    c.numerator += [e1, e2]
    if lift is not None:
        if len(g.marks) != 1:
            raise ValueError("an insertion needs exactly one marking")
        c.numerator.append(insertion_weight(lift, g.labels[g.marks[0]], w))
    ext0, smoothing, flag_integral = domain_aut_def_factors(g, w)
    c.numerator.append(ext0)
    c.denominator.append(smoothing)
    c.psi = flag_integral
    for v in range(len(g.labels)):
        c.numerator.append(euler(tangent_weights(g.labels[v], w)) ** (g.valency(v) - 1))
    for i, j, d in g.edges:
        c.denominator.append(edge_tangent_euler(EdgeGeometry(g.labels[i], g.labels[j], d), w))
    return c.value()


# -- fast path ----------------------------------------------------------------


def build_tables(t: TwistSpec, w: TorusWeights, d: int, lift: InsertionLift | None) -> _kernel.Tables:
    """Per-point and per-edge exact factors as (numerator, denominator) integers."""
    table = point_table(t.r, t.n)
    pts = table.points
    vertex = []
    for p in pts:
        num = euler(tangent_weights(p, w))
        for bundle, mult in t.a_twist:
            num /= euler(bundle.point_weights(p, w)) ** mult
        for bundle in t.b_twist:
            num *= euler(bundle.point_weights(p, w))
        vertex.append((num.numerator, num.denominator))
    insertion = []
    for p in pts:
        x = insertion_weight(lift, p, w) if lift is not None else Fraction(1)
        insertion.append((x.numerator, x.denominator))
    alpha = w.alpha
    moving = {}
    edge = {}
    for x, p in enumerate(pts):
        for y in table.adj[x]:
            if y < x:
                continue
            q = pts[y]
            ux = (set(p) - set(q)).pop()
            uy = (set(q) - set(p)).pop()
            moving[(x, y)] = alpha[ux] - alpha[uy]
            moving[(y, x)] = alpha[uy] - alpha[ux]
            for de in range(1, d + 1):
                val = Fraction(1, edge_tangent_euler(EdgeGeometry(p, q, de), w))
                for bundle, mult in t.a_twist:
                    part = Fraction(1)
                    for line in bundle.edge_lines(p, q, de, w):
                        part *= euler(line_bundle_cohomology_weights(line)[0])
                    val *= part**mult
                for bundle in t.b_twist:
                    for line in bundle.edge_lines(p, q, de, w):
                        val *= euler(line_bundle_cohomology_weights(line)[1])
                edge[(x, y, de)] = edge[(y, x, de)] = (val.numerator, val.denominator)
    return _kernel.Tables(vertex, insertion, moving, edge)


@dataclass(frozen=True)
class GWRun:
    value: Fraction
    seeds: tuple[int, ...]
    graphs: int


_WORKER: dict = {}


def _init_worker(t: TwistSpec, alpha: tuple[int, ...], d: int, k: int, lift: InsertionLift | None) -> None:
    w = TorusWeights(len(alpha), alpha)
    _WORKER.update(t=t, d=d, k=k, tables=build_tables(t, w, d, lift))


def _shard_sum(shard: tuple[int, int]) -> tuple[int, int, int]:
    t = _WORKER["t"]
    return _kernel.sum_graphs(iter_raw(t.r, t.n, _WORKER["d"], _WORKER["k"], shard), _WORKER["tables"])


def max_special_points(d: int, k: int) -> int:
    """Largest n(v) over all graphs of degree d with k markings."""
    return d + k


def localization_sum(
    t: TwistSpec,
    d: int,
    k: int,
    lift: InsertionLift | None,
    w: TorusWeights,
    jobs: int = 1,
    progress: Callable[[int, Fraction], None] | None = None,
) -> tuple[Fraction, int]:
    if d <= 3 and k <= 1:
        # psi classes appear with total degree at most 1
        assert max_special_points(d, k) - 3 <= 1
    units = shards(t.r, t.n, d)
    total = Fraction(0)
    count = 0
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        init = (t, w.alpha, d, k, lift)
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=init) as pool:
            results: Iterable = pool.map(_shard_sum, units, chunksize=max(1, len(units) // (4 * jobs)))
            for num, den, c in results:
                total += Fraction(num, den)
                count += c
                if progress:
                    progress(count, total)
    else:
        tables = build_tables(t, w, d, lift)
        for s in units:
            num, den, c = _kernel.sum_graphs(iter_raw(t.r, t.n, d, k, s), tables)
            total += Fraction(num, den)
            count += c
            if progress:
                progress(count, total)
    return total, count


def twisted_integral(
    t: TwistSpec,
    d: int,
    k: int,
    lift: InsertionLift | None,
    seeds: Sequence[int],
    jobs: int = 1,
    max_retries: int = 8,
) -> GWRun:
    """Localization sum, computed with every seed and required to agree."""
    if not seeds:
        raise ValueError("at least one seed is required")
    values = []
    used = []
    for seed in seeds:
        for attempt in range(max_retries):
            s = seed + 1000003 * attempt
            try:
                value, count = localization_sum(t, d, k, lift, TorusWeights.from_seed(t.n, s), jobs)
            except (DegenerateWeights, ZeroDivisionError):
                log.warning("degenerate specialisation for seed %d, retrying", s)
                continue
            values.append(value)
            used.append(s)
            break
        else:
            raise DegenerateWeights(f"all retries degenerate for seed {seed}")
    if len(set(values)) != 1:
        raise ArithmeticError(f"seed dependence detected: {dict(zip(used, values))}")
    return GWRun(values[0], tuple(used), count)


def twisted_gw(
    target: str,
    d: int,
    lift: str = "sigma1sq",
    seeds: Sequence[int] = (1, 2),
    jobs: int = 1,
) -> GWRun:
    key = normalize_target(target)
    if d < 1:
        raise ValueError("degree must be positive")
    t = TARGETS[key]
    return twisted_integral(t, d, 1, InsertionLift.for_target(key, lift), seeds, jobs)


def default_jobs() -> int:
    return max(1, len(os.sched_getaffinity(0)))
