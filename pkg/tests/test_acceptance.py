"""One PASS/FAIL line per acceptance criterion, at exact tolerance."""

import os
import time
from fractions import Fraction

import pytest

from fanoinv.algebra import grassmannian_2_5, integrate, pairing_matrix, projective_space, tensor
from fanoinv.dtcalc import (
    curve_class,
    dt_case,
    dt_number,
    moduli,
    obstruction_ch,
    obstruction_table_ch,
    tau0_via_ch2,
    tau_class,
    target_geometry,
    virtual_class,
)
from fanoinv.graphs import canonical_form, enumerate_graphs
from fanoinv.gvcheck import check_genus0, check_genus1, meeting
from fanoinv.localize import psi_integral, twisted_gw
from test_graphs import brute_force_classes
from test_localize import _exponent_vectors, _string_recursion

F = Fraction
GW_TABLE = {("V5", 1): F(-5), ("V5", 2): F(-145, 4), ("V5", 3): F(-4415, 9),
            ("V22", 1): F(2), ("V22", 2): F(-13, 2), ("V22", 3): F(254, 9)}
RESOLUTION_CASES = [("V5", 1), ("V5", 2), ("V5", 3), ("V22", 2), ("V22", 3)]
_GW: dict = {}


def gw(target, d, lift="sigma1sq", seeds=(1, 2), jobs=1):
    key = (target, d, lift, seeds, jobs)
    if key not in _GW:
        start = time.perf_counter()
        _GW[key] = (twisted_gw(target, d, lift, seeds, jobs).value, time.perf_counter() - start)
    return _GW[key]


def line(n, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"


def test_criterion_01_gw_table(report):
    ok = True
    parts = []
    for (target, d), expected in GW_TABLE.items():
        value, secs = gw(target, d)
        limit = 10 if d <= 2 else 600
        good = value == expected and secs < limit
        ok &= good
        parts.append(f"{target} d={d} {value} ({secs:.1f}s)")
    report(line(1, ok, "; ".join(parts) + f"; cores={os.cpu_count()}"))
    assert ok


def test_criterion_02_v5_degree_four(report, request):
    if not (request.config.getoption("--run-slow") or os.environ.get("FANOINV_RUN_LONG")):
        report("[SKIP] criterion 2: V5 d=4 needs --run-slow or FANOINV_RUN_LONG=1")
        pytest.skip("long run not requested")
    value, secs = gw("V5", 4, seeds=(1,))
    ok = value == F(-141265, 16)
    report(line(2, ok, f"V5 d=4 {value} ({secs:.1f}s)"))
    assert ok


def test_criterion_03_dt_tables(report):
    start = time.perf_counter()
    tau0 = {("V5", 1): 5, ("V5", 2): 35, ("V5", 3): 490, ("V22", 1): 2, ("V22", 2): 7, ("V22", 3): 28}
    tau1 = {("V5", 1): F(25, 2), ("V5", 2): F(35, 2), ("V5", 3): -245,
            ("V22", 1): 22, ("V22", 2): 28, ("V22", 3): 28}
    ok = all(dt_number(t, d, "tau0-h2").dt3 == v for (t, d), v in tau0.items())
    ok &= all(dt_number(t, d, "tau1-h1").dt3 == v for (t, d), v in tau1.items())
    secs = time.perf_counter() - start
    ok &= secs < 5
    report(line(3, ok, f"12 DT/descendant values ({secs:.2f}s)"))
    assert ok


def test_criterion_04_obstruction_classes(report):
    ok = all(obstruction_ch(t, d).value == obstruction_table_ch(t, d).value
             and obstruction_ch(t, d).rank == obstruction_table_ch(t, d).rank for t, d in RESOLUTION_CASES)
    report(line(4, ok, f"ch(ob) equals the tabulated K-class in {len(RESOLUTION_CASES)} cases"))
    assert ok


def test_criterion_05_virtual_class(report):
    vc = virtual_class("V5", 3)
    ok = vc == moduli("Gr25").ring("-490*m1*m2^2")
    report(line(5, ok, f"virtual class of V5 cubics = {vc}"))
    assert ok


def test_criterion_06_curve_classes(report):
    A3, A1 = dt_case("V5", 3).product, dt_case("V22", 1).product
    c3, c1 = curve_class("V5", 3), curve_class("V22", 1)
    deg = integrate(c1 * A1("h2"))
    ok = c3 == A3("m1^2-m2-m1*h1+3*h2") and c1 == A1("2*m1^2*h1+4*m1*h2") and deg == 2
    report(line(6, ok, f"[C3] = {c3}; [C1] = {c1}; [C1].h2 = {deg}"))
    assert ok


def test_criterion_07_meeting(report):
    got = {("V5", 1, 1): meeting("V5", 1, 1), ("V5", 1, 2): meeting("V5", 1, 2),
           ("V22", 1, 1): meeting("V22", 1, 1), ("V22", 1, 2): meeting("V22", 1, 2)}
    want = {("V5", 1, 1): -210, ("V5", 1, 2): -1960, ("V22", 1, 1): -84, ("V22", 1, 2): 224}
    ok = got == want
    report(line(7, ok, ", ".join(f"{t} m[{a},{b}]={v}" for (t, a, b), v in got.items())))
    assert ok


def test_criterion_08_genus0(report):
    results = [check_genus0(t, d, lambda tt, dd: gw(tt, dd)[0]) for t, d in GW_TABLE]
    ok = all(r.passed for r in results)
    report(line(8, ok, "; ".join(f"{r.target} d={r.d} GW={r.lhs} rhs={r.rhs}" for r in results)))
    assert ok


def test_criterion_09_genus1(report):
    results = [check_genus1(t, d) for t, d in GW_TABLE]
    ok = all(r.passed for r in results)
    report(line(9, ok, "n1 residuals " + ", ".join(f"{r.target} d={r.d}: {r.lhs}" for r in results)))
    assert ok


def _det(m):
    m = [[F(x) for x in row] for row in m]
    n, det = len(m), F(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return F(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def test_criterion_10_properties(report):
    sub = {}
    # (a) seed independence of every GW value
    sub["a"] = all(gw(t, d, seeds=(3, 4))[0] == v for (t, d), v in GW_TABLE.items())
    # (b) lift independence
    lifts = {"V5": ("sigma1sq", "sigma11", "sigma2"), "V22": ("sigma1sq", "c2S")}
    sub["b"] = all(gw(t, d, lift, seeds=(5,))[0] == v for (t, d), v in GW_TABLE.items() for lift in lifts[t])
    # (c) Poincare pairing nondegenerate in every ring used
    v5, v22, gr = target_geometry("V5").ring, target_geometry("V22").ring, grassmannian_2_5()
    rings = [v5, v22, gr] + [projective_space(n) for n in (2, 3, 4)]
    rings += [tensor(projective_space(2), v5), tensor(gr, v5), tensor(projective_space(3), v22)]
    sub["c"] = all(_det(pairing_matrix(R, k)) != 0 for R in rings for k in range(R.dim + 1))
    # (d) integral of the Todd class is 1
    sub["d"] = all(integrate(target_geometry(t).todd_Y) == 1 for t in ("V5", "V22"))
    # (e) psi integrals vs the string equation
    sub["e"] = all(psi_integral(m, e) == _string_recursion(e)
                   for m in range(3, 8) for e in _exponent_vectors(m, m - 3))
    # (f) graph enumeration vs brute force
    sub["f"] = all(
        {canonical_form(g) for g, _ in enumerate_graphs(2, 5, d, k)} == {canonical_form(g) for g in brute_force_classes(2, 5, d, k)}
        and sum(1 for _ in enumerate_graphs(2, 5, d, k)) == len(brute_force_classes(2, 5, d, k))
        for d in (1, 2) for k in (0, 1)
    )
    # (g) tau_0 via ch_2 equals tau_0 via the pushforward with td(K)^{-1}
    sub["g"] = all(tau0_via_ch2(t, d) == tau_class(t, d, 0, "h2") for t, d in RESOLUTION_CASES)
    # (h) --jobs invariance
    sub["h"] = gw("V5", 3, seeds=(1,), jobs=2)[0] == gw("V5", 3, seeds=(1,), jobs=1)[0]
    ok = all(sub.values())
    report(line(10, ok, " ".join(f"({k}) {'ok' if v else 'FAILED'}" for k, v in sub.items())))
    assert ok
