from itertools import permutations, product

import pytest

from fanoinv.fixedloci import fixed_points
from fanoinv.graphs import (
    DecoratedGraph,
    _prufer_trees,
    automorphism_order,
    canonical_form,
    compositions,
    count_graphs,
    enumerate_graphs,
    tree_shapes,
)


def brute_force_classes(r, n, d, k):
    """Labeled trees with all decorations, identified by explicit permutations."""
    pts = fixed_points(r, n)
    seen = []
    keys = set()
    for m in range(2, d + 2):
        for edges in _prufer_trees(m):
            for labels in product(pts, repeat=m):
                if any(len(set(labels[a]) & set(labels[b])) != r - 1 for a, b in edges):
                    continue
                for degs in compositions(d, m - 1):
                    for mark in (range(m) if k else [None]):
                        best = None
                        for sigma in permutations(range(m)):
                            lab = tuple(labels[sigma.index(v)] for v in range(m))
                            es = tuple(sorted((min(sigma[a], sigma[b]), max(sigma[a], sigma[b]), x)
                                              for (a, b), x in zip(edges, degs)))
                            mk = sigma[mark] if mark is not None else None
                            key = (lab, es, mk)
                            best = key if best is None or key < best else best
                        if best not in keys:
                            keys.add(best)
                            g = DecoratedGraph(labels, tuple((a, b, x) for (a, b), x in zip(edges, degs)),
                                               (mark,) if mark is not None else ())
                            seen.append(g)
    return seen


@pytest.mark.parametrize("r, n, d, k", [(2, 5, 1, 0), (2, 5, 1, 1), (2, 5, 2, 0), (2, 5, 2, 1), (1, 3, 3, 0), (1, 3, 3, 1)])
def test_enumeration_matches_brute_force(r, n, d, k):
    oracle = brute_force_classes(r, n, d, k)
    mine = list(enumerate_graphs(r, n, d, k))
    assert len(mine) == len(oracle)
    assert {canonical_form(g) for g, _ in mine} == {canonical_form(g) for g in oracle}
    auts = {canonical_form(g): automorphism_order(g).aut for g in oracle}
    for g, aut in mine:
        assert aut.aut == auts[canonical_form(g)]


@pytest.mark.parametrize("args, expected", [((2, 5, 1, 1), 60), ((2, 5, 1, 0), 30), ((1, 2, 1, 0), 1)])
def test_counts(args, expected):
    assert count_graphs(*args) == expected


def test_each_class_once():
    forms = [canonical_form(g) for g, _ in enumerate_graphs(2, 5, 3, 1)]
    assert len(forms) == len(set(forms))


def test_deterministic_order():
    a = [g.serialize() for g, _ in enumerate_graphs(2, 5, 2, 1)]
    b = [g.serialize() for g, _ in enumerate_graphs(2, 5, 2, 1)]
    assert a == b


def test_adjacency_and_degree_invariants():
    for g, aut in enumerate_graphs(3, 7, 2, 1):
        assert g.degree == 2
        for i, j, _ in g.edges:
            assert len(set(g.labels[i]) & set(g.labels[j])) == 2
        assert aut.a_gamma >= 1


def test_tree_shapes_up_to_four_vertices():
    assert [len(tree_shapes(m)) for m in (2, 3, 4, 5)] == [1, 1, 2, 3]
    # every labeled tree on 4 vertices is a path or a star
    shapes = {tuple(sorted(len([e for e in t.edges if v in e]) for v in range(4))) for t in tree_shapes(4)}
    assert shapes == {(1, 1, 2, 2), (1, 1, 1, 3)}


def test_single_edge_aut():
    g = DecoratedGraph(((0, 1), (0, 2)), ((0, 1, 3),))
    info = automorphism_order(g)
    assert (info.aut, info.a_gamma) == (1, 3)


def test_symmetric_path_aut():
    g = DecoratedGraph(((0, 2), (0, 1), (0, 2)), ((1, 0, 2), (1, 2, 2)))
    info = automorphism_order(g)
    assert (info.aut, info.a_gamma) == (2, 8)
    marked = DecoratedGraph(g.labels, g.edges, (0,))
    assert automorphism_order(marked).aut == 1


def test_relabeling_invariance_of_counts():
    # count depends only on (r, n, d, k); check a permuted point table gives the same orbit count
    base = count_graphs(2, 5, 2, 1)
    sigma = (3, 0, 4, 1, 2)
    permuted = {canonical_form(DecoratedGraph(tuple(tuple(sorted(sigma[u] for u in p)) for p in g.labels), g.edges, g.marks))
                for g, _ in enumerate_graphs(2, 5, 2, 1)}
    assert len(permuted) == base


def test_serialization_round_trip():
    for g, _ in enumerate_graphs(2, 5, 2, 1):
        assert DecoratedGraph.deserialize(g.serialize()) == g


def test_invalid_graphs_rejected():
    with pytest.raises(ValueError):
        DecoratedGraph(((0, 1), (2, 3)), ((0, 1, 1),))
    with pytest.raises(ValueError):
        DecoratedGraph(((0, 1), (0, 2)), ((0, 1, 0),))
    with pytest.raises(ValueError):
        list(enumerate_graphs(2, 5, 1, 2))


def test_special_points():
    g = DecoratedGraph(((0, 2), (0, 1), (0, 2)), ((1, 0, 1), (1, 2, 1)), (1,))
    assert [g.special_points(v) for v in range(3)] == [1, 3, 1]
