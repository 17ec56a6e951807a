# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled graph-sum kernel; same contract as the pure-Python module."""

try:
    from gmpy2 import mpq as _Q
except ImportError:
    from fractions import Fraction as _Q


def graph_term(tuple raw, tables):
    cdef int m, e, v, val, nv, mark, de, stab, lp, lc, df
    cdef list flags, fl
    cdef tuple degs, labels, edges
    cdef dict edge = tables.edge
    cdef dict moving = tables.moving
    cdef list vertex = tables.vertex
    shape, labels, degs, mark, stab = raw
    m = shape.m
    edges = shape.edges
    num = 1
    den = stab
    flags = [[] for _ in range(m)]
    for e in range(m - 1):
        p, c = edges[e]
        de = degs[e]
        lp = labels[p]
        lc = labels[c]
        en, ed = edge[(lp, lc, de)]
        num *= en
        den *= ed * de
        (<list>flags[p]).append((moving[(lp, lc)], de))
        (<list>flags[c]).append((moving[(lc, lp)], de))
    for v in range(m):
        fl = flags[v]
        val = len(fl)
        nv = val + (1 if v == mark else 0)
        if val > 1:
            vn, vd = vertex[labels[v]]
            num *= vn ** (val - 1)
            den *= vd ** (val - 1)
        if nv == 1:
            num *= fl[0][0]
            den *= fl[0][1]
        elif nv == 2:
            if val == 2:
                m1, d1 = fl[0]
                m2, d2 = fl[1]
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


def sum_graphs(raws, tables):
    cdef long count = 0
    total = _Q(0)
    for raw in raws:
        num, den = graph_term(raw, tables)
        total += _Q(num, den)
        count += 1
    return int(total.numerator), int(total.denominator), count
