"""Finite graded commutative rings over Q with a fixed monomial basis.

A ring is built once from generators, their complex degrees and a list of
relations.  In every degree the monomials are reduced against the degree part
of the ideal by exact Gaussian elimination; the surviving standard monomials
form the basis and all products of basis elements are tabulated.  After that,
arithmetic is table lookups on dense coefficient vectors.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import product as iproduct
from typing import Iterable, Mapping, Sequence

import sympy

Rational = Fraction
Monomial = tuple[int, ...]


class RingError(ValueError):
    pass


def _monomials_of_degree(degrees: Sequence[int], target: int) -> list[Monomial]:
    out: list[Monomial] = []

    def rec(i: int, left: int, acc: list[int]) -> None:
        if i == len(degrees):
            if left == 0:
                out.append(tuple(acc))
            return
        for e in range(left // degrees[i] + 1):
            acc.append(e)
            rec(i + 1, left - e * degrees[i], acc)
            acc.pop()

    rec(0, target, [])
    # lex-descending, so high powers of the first generator are eliminated first
    out.sort(reverse=True)
    return out


def _add(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _parse_poly(expr: str | sympy.Expr, gens: Sequence[str]) -> dict[Monomial, Fraction]:
    symbols = sympy.symbols(list(gens))
    local = {name: s for name, s in zip(gens, symbols)}
    if isinstance(expr, str):
        try:
            parsed = sympy.sympify(expr.replace("^", "**"), locals=local)
        except (sympy.SympifyError, SyntaxError) as exc:
            raise RingError(f"cannot parse polynomial {expr!r}") from exc
    else:
        parsed = expr
    unknown = {str(s) for s in parsed.free_symbols} - set(gens)
    if unknown:
        raise RingError(f"unknown generator(s) {sorted(unknown)} in {expr!r}")
    poly = sympy.Poly(sympy.expand(parsed), *symbols)
    terms: dict[Monomial, Fraction] = {}
    for mono, coeff in poly.terms():
        q = sympy.Rational(coeff)
        terms[tuple(int(e) for e in mono)] = Fraction(int(q.p), int(q.q))
    return terms


class GradedRing:
    """Quotient Q[gens]/(relations), truncated above complex dimension ``dim``.

    ``point`` names the monomial whose integral is 1.
    """

    def __init__(
        self,
        name: str,
        gens: Sequence[str],
        gen_degrees: Sequence[int],
        relations: Iterable[str | Mapping[Monomial, Fraction]],
        dim: int,
        point: str | Mapping[Monomial, Fraction],
        *,
        _prebuilt: tuple | None = None,
    ) -> None:
        if len(gens) != len(gen_degrees):
            raise RingError("one degree per generator")
        if len(set(gens)) != len(gens):
            raise RingError("duplicate generator names")
        self.name = name
        self.gens = tuple(gens)
        self.gen_degrees = tuple(int(d) for d in gen_degrees)
        self.dim = int(dim)
        if _prebuilt is not None:
            self.basis, self.table, self._gen_vectors, self.point_index, self.point_scale = _prebuilt
        else:
            rels = [r if isinstance(r, Mapping) else _parse_poly(r, self.gens) for r in relations]
            self._build(rels)
        self.degrees = tuple(sum(e * d for e, d in zip(m, self.gen_degrees)) for m in self.basis)
        self._index = {m: i for i, m in enumerate(self.basis)}
        if _prebuilt is None:
            pt = point if isinstance(point, Mapping) else _parse_poly(point, self.gens)
            self._set_point(self._reduce_poly(pt))

    # -- construction -------------------------------------------------------

    def _build(self, rels: list[dict[Monomial, Fraction]]) -> None:
        rel_data = []
        for r in rels:
            degs = {sum(e * d for e, d in zip(m, self.gen_degrees)) for m in r if r[m]}
            if len(degs) != 1:
                raise RingError("relations must be homogeneous")
            rel_data.append((degs.pop(), r))

        basis: list[Monomial] = []
        # normal form of every monomial up to dim, as {basis monomial: coeff}
        self._nf: dict[Monomial, dict[Monomial, Fraction]] = {}
        for deg in range(self.dim + 1):
            monos = _monomials_of_degree(self.gen_degrees, deg)
            col = {m: i for i, m in enumerate(monos)}
            rows: list[dict[int, Fraction]] = []
            for rdeg, r in rel_data:
                if rdeg > deg:
                    continue
                for shift in _monomials_of_degree(self.gen_degrees, deg - rdeg):
                    row = {col[_add(m, shift)]: c for m, c in r.items() if c}
                    if row:
                        rows.append(row)
            pivots = _rref(rows)
            std = [m for i, m in enumerate(monos) if i not in pivots]
            basis.extend(std)
            for i, m in enumerate(monos):
                if i in pivots:
                    # m = -sum(row entries outside the pivot)
                    row = pivots[i]
                    self._nf[m] = {monos[j]: -c for j, c in row.items() if j != i}
                else:
                    self._nf[m] = {m: Fraction(1)}
        self.basis = tuple(basis)
        index = {m: i for i, m in enumerate(self.basis)}
        n = len(self.basis)

        def vec_of(m: Monomial) -> dict[int, Fraction]:
            deg = sum(e * d for e, d in zip(m, self.gen_degrees))
            if deg > self.dim:
                return {}
            return {index[b]: c for b, c in self._nf[m].items() if c}

        self.table = tuple(
            tuple(vec_of(_add(self.basis[i], self.basis[j])) for j in range(n)) for i in range(n)
        )
        gen_vecs = []
        for g in range(len(self.gens)):
            e = [0] * len(self.gens)
            e[g] = 1
            gen_vecs.append(vec_of(tuple(e)))
        self._gen_vectors = tuple(gen_vecs)

    def _reduce_poly(self, poly: Mapping[Monomial, Fraction]) -> "RingElement":
        out = self.zero
        for mono, c in poly.items():
            term = self.one
            for g, e in enumerate(mono):
                for _ in range(e):
                    term = term * self.gen(self.gens[g])
            out = out + term * c
        return out

    def _set_point(self, pt: "RingElement") -> None:
        top = [i for i, m in enumerate(self.basis) if sum(e * d for e, d in zip(m, self.gen_degrees)) == self.dim]
        if len(top) != 1:
            raise RingError(f"{self.name}: top degree must be one-dimensional, got {len(top)}")
        i = top[0]
        c = pt.coeffs[i]
        if c == 0 or any(v for j, v in enumerate(pt.coeffs) if j != i):
            raise RingError(f"{self.name}: point class is not a nonzero top-degree element")
        self.point_index = i
        # integral of the top basis monomial
        self.point_scale = 1 / c

    # -- element access -------------------------------------------------------

    @cached_property
    def zero(self) -> "RingElement":
        return RingElement(self, (Fraction(0),) * len(self.basis))

    @cached_property
    def one(self) -> "RingElement":
        coeffs = [Fraction(0)] * len(self.basis)
        coeffs[self._index[(0,) * len(self.gens)]] = Fraction(1)
        return RingElement(self, tuple(coeffs))

    def gen(self, name: str) -> "RingElement":
        try:
            g = self.gens.index(name)
        except ValueError:
            raise RingError(f"{self.name}: unknown generator {name!r}") from None
        coeffs = [Fraction(0)] * len(self.basis)
        for i, c in self._gen_vectors[g].items():
            coeffs[i] = c
        return RingElement(self, tuple(coeffs))

    def scalar(self, c) -> "RingElement":
        return self.one * Fraction(c)

    def __call__(self, expr: str | int | Fraction) -> "RingElement":
        """Normal form of a polynomial given as a string in the generators."""
        if isinstance(expr, (int, Fraction)):
            return self.scalar(expr)
        return self._reduce_poly(_parse_poly(expr, self.gens))

    def basis_element(self, i: int) -> "RingElement":
        coeffs = [Fraction(0)] * len(self.basis)
        coeffs[i] = Fraction(1)
        return RingElement(self, tuple(coeffs))

    def monomial_str(self, i: int) -> str:
        parts = []
        for g, e in zip(self.gens, self.basis[i]):
            if e == 1:
                parts.append(g)
            elif e > 1:
                parts.append(f"{g}^{e}")
        return "*".join(parts) or "1"

    def betti(self) -> list[int]:
        return [sum(1 for d in self.degrees if d == k) for k in range(self.dim + 1)]

    def __repr__(self) -> str:
        return f"GradedRing({self.name!r}, gens={self.gens}, dim={self.dim})"


def _rref(rows: list[dict[int, Fraction]]) -> dict[int, dict[int, Fraction]]:
    """Reduced row echelon form of sparse rows; pivot = smallest column."""
    pivots: dict[int, dict[int, Fraction]] = {}
    for row in rows:
        row = dict(row)
        for p, prow in pivots.items():
            c = row.get(p)
            if c:
                for j, v in prow.items():
                    nv = row.get(j, Fraction(0)) - c * v
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
        if not row:
            continue
        p = min(row)
        inv = 1 / row[p]
        row = {j: v * inv for j, v in row.items()}
        for q, qrow in pivots.items():
            c = qrow.get(p)
            if c:
                for j, v in row.items():
                    nv = qrow.get(j, Fraction(0)) - c * v
                    if nv:
                        qrow[j] = nv
                    else:
                        qrow.pop(j, None)
        pivots[p] = row
    return pivots


class RingElement:
    """Immutable element of a :class:`GradedRing` in normal form."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: GradedRing, coeffs: tuple[Fraction, ...]) -> None:
        self.ring = ring
        self.coeffs = coeffs

    def _coerce(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring is not self.ring:
                raise RingError(f"ring mismatch: {self.ring.name} vs {other.ring.name}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingElement(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingElement(self.ring, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return RingElement(self.ring, tuple(a * c for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = [Fraction(0)] * len(self.coeffs)
        table = self.ring.table
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            row = table[i]
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                ab = a * b
                for k, c in row[j].items():
                    out[k] += ab * c
        return RingElement(self.ring, tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.scalar(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring is other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((id(self.ring), self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def part(self, degree: int) -> "RingElement":
        """Homogeneous component of the given complex degree."""
        degs = self.ring.degrees
        return RingElement(self.ring, tuple(c if degs[i] == degree else Fraction(0) for i, c in enumerate(self.coeffs)))

    def truncate(self, degree: int) -> "RingElement":
        degs = self.ring.degrees
        return RingElement(self.ring, tuple(c if degs[i] <= degree else Fraction(0) for i, c in enumerate(self.coeffs)))

    def constant(self) -> Fraction:
        return self.coeffs[self.ring._index[(0,) * len(self.ring.gens)]]

    def top_degree(self) -> int:
        degs = [self.ring.degrees[i] for i, c in enumerate(self.coeffs) if c]
        return max(degs) if degs else -1

    def is_homogeneous(self, degree: int) -> bool:
        return all(not c or self.ring.degrees[i] == degree for i, c in enumerate(self.coeffs))

    def __repr__(self) -> str:
        return f"<{self.ring.name}: {self}>"

    def __str__(self) -> str:
        terms = []
        order = sorted(range(len(self.coeffs)), key=lambda i: (self.ring.degrees[i], i))
        for i in order:
            c = self.coeffs[i]
            if not c:
                continue
            mono = self.ring.monomial_str(i)
            if mono == "1":
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


def integrate(x: RingElement) -> Fraction:
    """Degree of the top-dimensional part of ``x``."""
    ring = x.ring
    return x.coeffs[ring.point_index] * ring.point_scale


def normal_form(ring: GradedRing, p: str) -> RingElement:
    return ring(p)


def tensor(a: GradedRing, b: GradedRing, name: str | None = None) -> "ProductRing":
    return ProductRing(a, b, name)


class ProductRing(GradedRing):
    """Tensor product A (x) B, with basis the pairs of basis monomials."""

    def __init__(self, a: GradedRing, b: GradedRing, name: str | None = None) -> None:
        if set(a.gens) & set(b.gens):
            raise RingError("factor rings must have disjoint generator names")
        self.left = a
        self.right = b
        na, nb = len(a.basis), len(b.basis)
        basis = tuple(ma + mb for ma, mb in iproduct(a.basis, b.basis))

        def idx(i: int, j: int) -> int:
            return i * nb + j

        table = []
        for i1, j1 in iproduct(range(na), range(nb)):
            row = []
            for i2, j2 in iproduct(range(na), range(nb)):
                ta = a.table[i1][i2]
                tb = b.table[j1][j2]
                row.append({idx(p, q): ca * cb for p, ca in ta.items() for q, cb in tb.items()})
            table.append(tuple(row))
        gen_vectors = []
        one_b = b._index[(0,) * len(b.gens)]
        one_a = a._index[(0,) * len(a.gens)]
        for g in range(len(a.gens)):
            gen_vectors.append({idx(p, one_b): c for p, c in a._gen_vectors[g].items()})
        for g in range(len(b.gens)):
            gen_vectors.append({idx(one_a, q): c for q, c in b._gen_vectors[g].items()})
        point_index = idx(a.point_index, b.point_index)
        super().__init__(
            name or f"{a.name}x{b.name}",
            a.gens + b.gens,
            a.gen_degrees + b.gen_degrees,
            (),
            a.dim + b.dim,
            "",
            _prebuilt=(basis, tuple(table), tuple(gen_vectors), point_index, a.point_scale * b.point_scale),
        )

    def pull_left(self, x: RingElement) -> RingElement:
        nb = len(self.right.basis)
        one_b = self.right._index[(0,) * len(self.right.gens)]
        coeffs = [Fraction(0)] * len(self.basis)
        for i, c in enumerate(x.coeffs):
            coeffs[i * nb + one_b] = c
        return RingElement(self, tuple(coeffs))

    def pull_right(self, y: RingElement) -> RingElement:
        nb = len(self.right.basis)
        one_a = self.left._index[(0,) * len(self.left.gens)]
        coeffs = [Fraction(0)] * len(self.basis)
        for j, c in enumerate(y.coeffs):
            coeffs[one_a * nb + j] = c
        return RingElement(self, tuple(coeffs))

    def external(self, x: RingElement, y: RingElement) -> RingElement:
        return self.pull_left(x) * self.pull_right(y)

    def push_left(self, z: RingElement) -> RingElement:
        """Integrate along the right factor, landing in the left ring."""
        nb = len(self.right.basis)
        pj = self.right.point_index
        s = self.right.point_scale
        coeffs = [Fraction(0)] * len(self.left.basis)
        for i in range(len(self.left.basis)):
            coeffs[i] = z.coeffs[i * nb + pj] * s
        return RingElement(self.left, tuple(coeffs))

    def left_component(self, z: RingElement, right_degree: int = 0) -> RingElement:
        """Kunneth component of ``z`` with right-hand factor of degree 0."""
        nb = len(self.right.basis)
        one_b = self.right._index[(0,) * len(self.right.gens)]
        if right_degree != 0:
            raise RingError("only the degree-0 right component is supported")
        coeffs = [z.coeffs[i * nb + one_b] for i in range(len(self.left.basis))]
        return RingElement(self.left, tuple(coeffs))


def pairing_matrix(ring: GradedRing, degree: int) -> list[list[Fraction]]:
    """Poincare pairing between basis elements of complementary degrees."""
    lo = [i for i, d in enumerate(ring.degrees) if d == degree]
    hi = [i for i, d in enumerate(ring.degrees) if d == ring.dim - degree]
    return [[integrate(ring.basis_element(i) * ring.basis_element(j)) for j in hi] for i in lo]
