"""Pure-Python graph-sum kernel.

Every factor is kept as an integer numerator/denominator pair so a graph costs
only big-integer multiplications; the single reduction happens when the term
is added to the running sum.
"""

from __future__ import annotations

from typing import Iterable

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 is optional
    from fractions import Fraction as _Q

Pair = tuple[int, int]


class Tables:
    __slots__ = ("vertex", "insertion", "moving", "edge")

    def __init__(self, vertex: list[Pair], insertion: list[Pair], moving: dict, edge: dict) -> None:
        self.vertex = vertex
        self.insertion = insertion
        self.moving = moving
        self.edge = edge


def graph_term(raw, tables: Tables) -> Pair:
    shape, labels, degs, mark, stab = raw
    edge = tables.edge
    moving = tables.moving
    m = shape.m
    num = 1
    den = stab
    # flags per vertex: (moving weight, edge degree)
    flags: list[list[Pair]] = [[] for _ in range(m)]
    for e, (p, c) in enumerate(shape.edges):
        de = degs[e]
        lp, lc = labels[p], labels[c]
        en, ed = edge[(lp, lc, de)]
        num *= en
        den *= ed * de
        flags[p].append((moving[(lp, lc)], de))
        flags[c].append((moving[(lc, lp)], de))
    for v in range(m):
        fl = flags[v]
        val = len(fl)
        nv = val + (1 if v == mark else 0)
        if val > 1:
            vn, vd = tables.vertex[labels[v]]
            num *= vn ** (val - 1)
            den *= vd ** (val - 1)
        if nv == 1:
            num *= fl[0][0]
            den *= fl[0][1]
        elif nv == 2:
            if val == 2:
                (m1, d1), (m2, d2) = fl
                num *= d1 * d2
                den *= m1 * d2 + m2 * d1
        else:
            for mf, df in fl:
                num *= df
                den *= mf
            if nv > 3:
                sn = 0
                sd = 1
                for mf, df in fl:
                    sn = sn * mf + df * sd
                    sd *= mf
                num *= sn ** (nv - 3)
                den *= sd ** (nv - 3)
    if mark >= 0:
        inn, ind = tables.insertion[labels[mark]]
        num *= inn
        den *= ind
    if den == 0:
        raise ZeroDivisionError("degenerate weight specialisation")
    return num, den


def sum_graphs(raws: Iterable, tables: Tables) -> tuple[int, int, int]:
    total = _Q(0)
    count = 0
    for raw in raws:
        num, den = graph_term(raw, tables)
        total += _Q(num, den)
        count += 1
    return int(total.numerator), int(total.denominator), count
