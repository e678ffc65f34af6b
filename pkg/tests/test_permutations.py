import random
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from lettericity.graph_core import contains_induced, generate, is_chain_graph, is_isomorphic, is_threshold
from lettericity.permutations import (
    CHAIN_BASIS,
    THRESHOLD_BASIS,
    Permutation,
    all_permutations,
    avoids_all,
    contains_pattern,
    identity,
    perm_graph,
)

perms = st.integers(0, 9).flatmap(lambda n: st.permutations(range(1, n + 1))).map(Permutation)


def test_parse_and_format():
    p = Permutation.parse("415263")
    assert p.one_line == (4, 1, 5, 2, 6, 3)
    assert str(p) == "415263"
    big = Permutation.parse("10,1,2,3,4,5,6,7,8,9")
    assert str(big) == "10,1,2,3,4,5,6,7,8,9"
    assert Permutation.parse("3 1 2") == Permutation([3, 1, 2])
    with pytest.raises(ValueError):
        Permutation.parse("1224")
    with pytest.raises(ValueError):
        Permutation.parse("12a")


def test_perm_graph_415263_is_z3():
    g = perm_graph(Permutation.parse("415263"))
    assert g.edge_list() == [(0, 1), (0, 3), (0, 5), (2, 3), (2, 5), (4, 5)]
    assert is_isomorphic(g, generate("zn", 3))


def test_identity_and_reversal():
    assert perm_graph(identity(5)).m == 0
    assert perm_graph(identity(5).reverse()).m == 10


def test_contains_examples():
    p = Permutation.parse("415263")
    assert contains_pattern(p, p)
    assert contains_pattern(p, Permutation.parse("21"))
    assert not contains_pattern(p, Permutation.parse("2143"))


def test_avoids_examples():
    assert avoids_all(identity(5), ["21"])
    assert not avoids_all(Permutation.parse("2143"), THRESHOLD_BASIS)
    assert avoids_all(Permutation.parse("415263"), ["321"])


def _naive_contains(p, q):
    # compare every pair of chosen entries directly, no standardization
    k = len(q)
    for idx in combinations(range(len(p)), k):
        if all((p[idx[a]] < p[idx[b]]) == (q[a] < q[b]) for a in range(k) for b in range(a + 1, k)):
            return True
    return False


@pytest.mark.parametrize("n", range(7))
def test_contains_matches_pairwise_definition(n):
    qs = [q for k in range(4) for q in all_permutations(k)]
    for p in all_permutations(n):
        for q in qs:
            assert contains_pattern(p, q) == _naive_contains(p, q)


@given(perms)
def test_reverse_complements_graph(p):
    # reversal moves position i to n-1-i
    mirrored = perm_graph(p).complement().relabel(list(reversed(range(len(p)))))
    assert perm_graph(p.reverse()) == mirrored
    assert perm_graph(p.complement()) == perm_graph(p).complement()


@given(perms)
def test_inverse_graph_isomorphic(p):
    assert is_isomorphic(perm_graph(p.inverse()), perm_graph(p))


@given(perms)
def test_containment_reflexive(p):
    assert contains_pattern(p, p)


def test_containment_transitive():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(3, 8)
        p = Permutation(rng.sample(range(1, n + 1), n))
        mid = sorted(rng.sample(range(n), rng.randint(1, n)))
        q = Permutation(_std([p[i] for i in mid]))
        low = sorted(rng.sample(range(len(q)), rng.randint(1, len(q))))
        r = Permutation(_std([q[i] for i in low]))
        assert contains_pattern(p, q) and contains_pattern(q, r) and contains_pattern(p, r)


def _std(vals):
    order = sorted(vals)
    return [order.index(v) + 1 for v in vals]


@pytest.mark.parametrize("n", range(8))
def test_chain_graphs_avoid_321_2143(n):
    for p in all_permutations(n):
        g = perm_graph(p)
        free = contains_induced(g, "k3") is None and contains_induced(g, "2k2") is None
        assert free == avoids_all(p, CHAIN_BASIS)
        if is_chain_graph(g)[0]:
            assert avoids_all(p, CHAIN_BASIS)


@pytest.mark.parametrize("n", range(7))
def test_threshold_iff_avoids_basis(n):
    for p in all_permutations(n):
        assert is_threshold(perm_graph(p)) == avoids_all(p, THRESHOLD_BASIS)
