"""Decorated trees indexing torus-fixed loci of genus-0 stable maps to Gr(r, n).

Enumeration works shape by shape.  For each unlabeled tree shape T the
decorations (vertex labels, edge degrees, marking) are generated by a DFS that
respects the adjacency rule, and a decoration is emitted only if it is the
lexicographic minimum of its orbit under Aut(T).  The stabiliser size of the
emitted decoration is |Aut(Gamma)|.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import permutations, product
from typing import Iterator, Sequence

from .fixedloci import FixedPoint, fixed_points, neighbors


@dataclass(frozen=True)
class TreeShape:
    """Unlabeled tree with vertices 0..m-1 numbered so parents precede children."""

    m: int
    edges: tuple[tuple[int, int], ...]  # (parent, child), child = index + 1
    automorphisms: tuple[tuple[int, ...], ...]

    @cached_property
    def parent(self) -> tuple[int, ...]:
        par = [-1] * self.m
        for p, c in self.edges:
            par[c] = p
        return tuple(par)

    @cached_property
    def edge_index(self) -> dict[frozenset, int]:
        return {frozenset(e): i for i, e in enumerate(self.edges)}

    @cached_property
    def edge_perms(self) -> tuple[tuple[int, ...], ...]:
        """For each automorphism, the induced permutation of edge indices."""
        out = []
        for sigma in self.automorphisms:
            out.append(tuple(self.edge_index[frozenset((sigma[a], sigma[b]))] for a, b in self.edges))
        return tuple(out)


@dataclass(frozen=True)
class AutInfo:
    aut: int
    a_gamma: int

    def __post_init__(self) -> None:
        if self.aut < 1 or self.a_gamma < 1:
            raise ValueError("automorphism data must be positive")


@dataclass(frozen=True)
class DecoratedGraph:
    labels: tuple[FixedPoint, ...]
    edges: tuple[tuple[int, int, int], ...]  # (i, j, d_e)
    marks: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        m = len(self.labels)
        if len(self.edges) != m - 1:
            raise ValueError("a tree on m vertices has m-1 edges")
        seen = {0}
        adj = self.adjacency
        stack = [0]
        while stack:
            v = stack.pop()
            for w, _ in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != m:
            raise ValueError("graph is not connected")
        for i, j, d in self.edges:
            if d < 1:
                raise ValueError("edge degrees must be positive")
            if len(set(self.labels[i]) & set(self.labels[j])) != len(self.labels[i]) - 1:
                raise ValueError(f"edge {i}-{j} joins non-adjacent fixed points")
        if any(not 0 <= v < m for v in self.marks):
            raise ValueError("marking on a missing vertex")

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        adj: list[list[tuple[int, int]]] = [[] for _ in self.labels]
        for i, j, d in self.edges:
            adj[i].append((j, d))
            adj[j].append((i, d))
        return tuple(tuple(a) for a in adj)

    @property
    def degree(self) -> int:
        return sum(d for _, _, d in self.edges)

    def valency(self, v: int) -> int:
        return len(self.adjacency[v])

    def special_points(self, v: int) -> int:
        """n(v): valency plus markings at v."""
        return self.valency(v) + self.marks.count(v)

    def serialize(self) -> str:
        return json.dumps(
            {
                "labels": [list(p) for p in self.labels],
                "edges": [list(e) for e in self.edges],
                "marks": list(self.marks),
            },
            separators=(",", ":"),
        )

    @classmethod
    def deserialize(cls, line: str) -> "DecoratedGraph":
        obj = json.loads(line)
        return cls(
            tuple(tuple(p) for p in obj["labels"]),
            tuple(tuple(e) for e in obj["edges"]),
            tuple(obj["marks"]),
        )


# -- canonical forms ------------------------------------------------------


def _rooted_code(g: DecoratedGraph, v: int, parent: int) -> tuple:
    children = sorted((d, _rooted_code(g, w, v)) for w, d in g.adjacency[v] if w != parent)
    return (g.labels[v], g.marks.count(v), tuple(children))


def canonical_form(g: DecoratedGraph) -> tuple:
    """Isomorphism invariant: rooted encoding minimised over roots."""
    return min(_rooted_code(g, v, -1) for v in range(len(g.labels)))


def automorphism_order(g: DecoratedGraph) -> AutInfo:
    m = len(g.labels)
    edges = {frozenset((i, j)): d for i, j, d in g.edges}
    count = 0
    for sigma in permutations(range(m)):
        if any(g.labels[sigma[v]] != g.labels[v] for v in range(m)):
            continue
        if any(sigma[v] != v for v in g.marks):
            continue
        if all(edges.get(frozenset((sigma[i], sigma[j]))) == d for i, j, d in g.edges):
            count += 1
    prod_d = 1
    for _, _, d in g.edges:
        prod_d *= d
    return AutInfo(count, count * prod_d)


# -- tree shapes ----------------------------------------------------------


def _prufer_trees(m: int) -> Iterator[list[tuple[int, int]]]:
    if m == 1:
        yield []
        return
    if m == 2:
        yield [(0, 1)]
        return
    for seq in product(range(m), repeat=m - 2):
        degree = [1] * m
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = min(v for v in range(m) if degree[v] == 1)
            edges.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, w = [v for v in range(m) if degree[v] == 1]
        edges.append((u, w))
        yield edges


def _shape_code(adj: list[list[int]], v: int, parent: int) -> tuple:
    return tuple(sorted(_shape_code(adj, w, v) for w in adj[v] if w != parent))


@lru_cache(maxsize=None)
def tree_shapes(m: int) -> tuple[TreeShape, ...]:
    """All unlabeled trees on m vertices, in a fixed order."""
    found: dict[tuple, list[tuple[int, int]]] = {}
    for edges in _prufer_trees(m):
        adj: list[list[int]] = [[] for _ in range(m)]
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        key = min((_shape_code(adj, v, -1), v) for v in range(m))
        if key[0] not in found:
            found[key[0]] = _bfs_renumber(adj, key[1])
    shapes = []
    for code in sorted(found):
        edges = found[code]
        shapes.append(TreeShape(m, tuple(edges), _shape_automorphisms(m, edges)))
    return tuple(shapes)


def _bfs_renumber(adj: list[list[int]], root: int) -> list[tuple[int, int]]:
    order = [root]
    parent = {root: -1}
    i = 0
    while i < len(order):
        v = order[i]
        for w in sorted(adj[v], key=lambda x: len(adj[x])):
            if w not in parent:
                parent[w] = v
                order.append(w)
        i += 1
    pos = {v: k for k, v in enumerate(order)}
    return [(pos[parent[v]], pos[v]) for v in order[1:]]


def _shape_automorphisms(m: int, edges: Sequence[tuple[int, int]]) -> tuple[tuple[int, ...], ...]:
    es = {frozenset(e) for e in edges}
    out = []
    for sigma in permutations(range(m)):
        if all(frozenset((sigma[a], sigma[b])) in es for a, b in edges):
            out.append(sigma)
    return tuple(out)


def compositions(d: int, parts: int) -> list[tuple[int, ...]]:
    if parts == 0:
        return [()] if d == 0 else []
    if parts == 1:
        return [(d,)] if d >= 1 else []
    return [(first,) + rest for first in range(1, d - parts + 2) for rest in compositions(d - first, parts - 1)]


# -- enumeration ------------------------------------------------------------

RawGraph = tuple[TreeShape, tuple[int, ...], tuple[int, ...], int, int]
"""(shape, point indices per vertex, degree per edge, marked vertex or -1, |Aut|)."""


class PointTable:
    """Fixed points of Gr(r, n) with integer ids and an id-level adjacency list."""

    def __init__(self, r: int, n: int) -> None:
        self.r, self.n = r, n
        self.points = fixed_points(r, n)
        self.index = {p: i for i, p in enumerate(self.points)}
        self.adj = tuple(tuple(self.index[q] for q in neighbors(p, n)) for p in self.points)


@lru_cache(maxsize=8)
def point_table(r: int, n: int) -> PointTable:
    return PointTable(r, n)


def _orbit_min_stabiliser(shape: TreeShape, labels: tuple, degs: tuple, mark: int) -> int:
    """0 if (labels, degs, mark) is not the orbit minimum, else its stabiliser size."""
    key = (labels, degs, mark)
    stab = 0
    m = shape.m
    for sigma, eperm in zip(shape.automorphisms, shape.edge_perms):
        new_labels = [0] * m
        for v in range(m):
            new_labels[sigma[v]] = labels[v]
        new_degs = [0] * len(degs)
        for e, img in enumerate(eperm):
            new_degs[img] = degs[e]
        img_key = (tuple(new_labels), tuple(new_degs), sigma[mark] if mark >= 0 else -1)
        if img_key < key:
            return 0
        if img_key == key:
            stab += 1
    return stab


def _label_assignments(shape: TreeShape, table: PointTable, root_label: int) -> Iterator[tuple[int, ...]]:
    m = shape.m
    parent = shape.parent
    labels = [0] * m
    labels[0] = root_label

    def rec(v: int) -> Iterator[tuple[int, ...]]:
        if v == m:
            yield tuple(labels)
            return
        for q in table.adj[labels[parent[v]]]:
            labels[v] = q
            yield from rec(v + 1)

    yield from rec(1)


def shards(r: int, n: int, d: int) -> list[tuple[int, int]]:
    """Deterministic work units: (number of vertices, root label)."""
    table = point_table(r, n)
    return [(m, root) for m in range(2, d + 2) for root in range(len(table.points))]


def iter_raw(r: int, n: int, d: int, k: int, shard: tuple[int, int] | None = None) -> Iterator[RawGraph]:
    if d < 1:
        raise ValueError("degree must be positive")
    if k not in (0, 1):
        raise ValueError("only k = 0 or 1 markings are supported")
    table = point_table(r, n)
    units = [shard] if shard is not None else shards(r, n, d)
    for m, root in units:
        degs_list = compositions(d, m - 1)
        marks = range(m) if k == 1 else (-1,)
        for shape in tree_shapes(m):
            for labels in _label_assignments(shape, table, root):
                for degs in degs_list:
                    for mark in marks:
                        stab = _orbit_min_stabiliser(shape, labels, degs, mark)
                        if stab:
                            yield shape, labels, degs, mark, stab


def raw_to_graph(raw: RawGraph, r: int, n: int) -> tuple[DecoratedGraph, AutInfo]:
    shape, labels, degs, mark, stab = raw
    table = point_table(r, n)
    edges = tuple((p, c, degs[i]) for i, (p, c) in enumerate(shape.edges))
    g = DecoratedGraph(tuple(table.points[x] for x in labels), edges, (mark,) if mark >= 0 else ())
    prod_d = 1
    for x in degs:
        prod_d *= x
    return g, AutInfo(stab, stab * prod_d)


def enumerate_graphs(r: int, n: int, d: int, k: int) -> Iterator[tuple[DecoratedGraph, AutInfo]]:
    """Every isomorphism class of decorated graph exactly once, in a fixed order."""
    for raw in iter_raw(r, n, d, k):
        yield raw_to_graph(raw, r, n)


def count_graphs(r: int, n: int, d: int, k: int) -> int:
    return sum(1 for _ in iter_raw(r, n, d, k))
