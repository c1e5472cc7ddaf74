import itertools

import pytest
from hypothesis import given, strategies as st

from qtree_hopf.algebra import BasisMonomial, Sector
from qtree_hopf.trees import (EnumerationLimitError, Forest, MAX_ENUMERATION_VERTICES, RootedTree, SINGLE_VERTEX,
                              admissible_cuts, canonicalize, enumerate_trees, forests_up_to, graft, ladder,
                              tree_order, trees_up_to, vertex_count, vertex_table)
from strategies import raw_trees

CHERRY = graft([SINGLE_VERTEX, SINGLE_VERTEX])
LADDER_2 = ladder(2)
LADDER_3 = ladder(3)

canonicalize_data = [
    ([[[]], []], '[[][[]]]'),
    ([], '[]'),
    ([[], [[]], []], '[[][][[]]]'),
    ([[[], [[]]], []], '[[][[][[]]]]'),
]

order_data = [
    (SINGLE_VERTEX, LADDER_2, -1),
    (LADDER_2, SINGLE_VERTEX, 1),
    (CHERRY, LADDER_3, 1),
    (LADDER_3, CHERRY, -1),
    (CHERRY, CHERRY, 0),
]

def otter_counts(n_max: int) -> list[int]:
    # Number of unlabeled rooted trees, a(n+1) = 1/n sum_k (sum_{d|k} d a(d)) a(n-k+1)
    a = [0, 1]
    for n in range(1, n_max):
        total = 0
        for k in range(1, n + 1):
            total += sum(d * a[d] for d in range(1, k + 1) if k % d == 0) * a[n - k + 1]
        a.append(total // n)
    return a[1:]

def shuffle_children(raw, rng):
    children = [shuffle_children(child, rng) for child in raw]
    rng.shuffle(children)
    return children

def brute_force_cut_count(tree: RootedTree) -> int:
    table = vertex_table(tree)
    edges = [v.index for v in table if v.parent is not None]
    count = 0
    for size in range(1, len(edges) + 1):
        for subset in itertools.combinations(edges, size):
            if path_condition(table, subset):
                count += 1
    return count

def ancestors(table, index: int) -> set[int]:
    found = set()
    parent = table[index].parent
    while parent is not None:
        found.add(parent)
        parent = table[parent].parent
    return found

def path_condition(table, edges) -> bool:
    # No cut edge may lie below another one
    return all(not (ancestors(table, e) & set(edges)) for e in edges)

@pytest.mark.parametrize("raw,expected", canonicalize_data)
def test_canonicalize(raw, expected):
    assert str(canonicalize(raw)) == expected

@given(raw_trees)
def test_canonicalize_idempotent(raw):
    tree = canonicalize(raw)
    assert canonicalize(tree) == tree
    assert canonicalize(canonicalize(raw)) == tree

@given(raw_trees, st.randoms(use_true_random=False))
def test_canonicalize_ignores_child_order(raw, rng):
    assert canonicalize(shuffle_children(raw, rng)) == canonicalize(raw)

@pytest.mark.parametrize("a,b,expected", order_data)
def test_tree_order(a, b, expected):
    assert tree_order(a, b) == expected

def test_tree_order_is_total_up_to_five_vertices():
    trees = trees_up_to(5)
    assert sorted(trees) == trees
    for a, b in itertools.combinations(trees, 2):
        assert tree_order(a, b) == -1
        assert tree_order(b, a) == 1

def test_vertex_count():
    assert vertex_count(SINGLE_VERTEX) == 1
    assert vertex_count(BasisMonomial(Sector.PLAIN, (), 3)) == 0
    assert vertex_count(Forest((SINGLE_VERTEX, LADDER_2))) == 3
    assert vertex_count(BasisMonomial(Sector.HAT, (SINGLE_VERTEX, CHERRY), -1)) == 4

def test_enumerate_small():
    assert [str(t) for t in enumerate_trees(1)] == ['[]']
    assert [str(t) for t in enumerate_trees(3)] == ['[[[]]]', '[[][]]']

def test_enumerate_counts_match_otter():
    assert otter_counts(9) == [1, 1, 2, 4, 9, 20, 48, 115, 286]
    for n, expected in enumerate(otter_counts(9), start=1):
        found = enumerate_trees(n)
        assert len(found) == expected
        assert len(set(found)) == expected
        assert all(tree.vertices == n for tree in found)

def test_enumerate_limits():
    with pytest.raises(ValueError):
        enumerate_trees(0)
    with pytest.raises(EnumerationLimitError):
        enumerate_trees(MAX_ENUMERATION_VERTICES + 1)

def test_cuts_of_small_trees():
    assert admissible_cuts(SINGLE_VERTEX) == []

    cuts = admissible_cuts(LADDER_2)
    assert len(cuts) == 1
    assert cuts[0].pruned == Forest((SINGLE_VERTEX,))
    assert cuts[0].trunk == SINGLE_VERTEX

    pairs = [(str(cut.pruned), str(cut.trunk)) for cut in admissible_cuts(CHERRY)]
    assert sorted(pairs) == sorted([('[]', '[[]]'), ('[]', '[[]]'), ('[]*[]', '[]')])

def test_cuts_against_brute_force():
    for tree in trees_up_to(7):
        cuts = admissible_cuts(tree)
        assert len(cuts) == brute_force_cut_count(tree)
        table = vertex_table(tree)
        for cut in cuts:
            assert len(cut.pruned) > 0
            assert path_condition(table, cut.edges)
            assert cut.pruned.vertices + cut.trunk.vertices == tree.vertices
            assert list(cut.pruned.trees) == sorted(table[e].subtree for e in cut.edges)

@pytest.mark.parametrize("n", range(1, 9))
def test_ladder_cut_count(n):
    assert len(admissible_cuts(ladder(n))) == n - 1

def test_ladders():
    assert str(ladder(3)) == '[[[]]]'
    assert ladder(4).is_ladder
    assert not CHERRY.is_ladder
    assert [t for t in trees_up_to(4) if t.is_ladder] == [ladder(n) for n in range(1, 5)]

def test_vertex_table():
    tree = canonicalize([[[]], []])
    table = vertex_table(tree)
    assert [v.parent for v in table] == [None, 0, 0, 2]
    assert [v.depth for v in table] == [0, 1, 1, 2]
    assert table[2].subtree == LADDER_2

def test_forests_up_to():
    assert [str(f) for f in forests_up_to(2)] == ['1', '[]', '[[]]', '[]*[]']
    assert len(forests_up_to(4)) == 1 + 1 + 2 + 4 + 9
