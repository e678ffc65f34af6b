import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from lettericity.graph_core import is_isomorphic
from lettericity.letters import Decoder, realize
from lettericity.permutations import THRESHOLD_BASIS, Permutation, all_permutations, avoids_all, perm_graph
from lettericity.grid_classes import (
    Drawing,
    GridMatrix,
    MatrixFormatError,
    SignVector,
    all_sign_vectors,
    base_point,
    cell_letter,
    check_grid_letter_bridge,
    decoder_from_matrix,
    drawing_from_points,
    drawing_permutation,
    emit_matrix,
    geom_permutations,
    infer_signs,
    parse_drawing,
    parse_matrix,
    parse_word,
    phi,
    psi,
    trace_swap_allowed,
    two_letter_grid_matrix,
)

FIG4 = GridMatrix.from_rows([[0, 1, 1], [1, -1, -1]])
FIG4_SIGNS = SignVector((-1, 1, 1), (-1, 1))
FIG4_WORD = "a31 a31 a22 a21 a11 a32 a22".split()
FIG5_WORD = "a31 a31 a22 a21 a32 a11 a22".split()
FIG4_POINTS = [(107, 43), (114, 36), (71, 71), (78, 22), (15, 15), (141, 91), (96, 96)]
X_FIGURE = GridMatrix.from_rows([[-1, 1], [1, -1]])


def random_pmm(rng, max_dim=4):
    t, u = rng.randint(1, max_dim), rng.randint(1, max_dim)
    c = [rng.choice((1, -1)) for _ in range(t)]
    r = [rng.choice((1, -1)) for _ in range(u)]
    while True:
        cols = [[c[k] * r[l] if rng.random() < 0.6 else 0 for l in range(u)] for k in range(t)]
        if any(x for col in cols for x in col):
            return GridMatrix(cols)


def random_word(rng, m, max_len=10):
    return [rng.choice(m.alphabet()) for _ in range(rng.randint(0, max_len))]


# -- matrix basics -----------------------------------------------------------

def test_indexing_is_column_first_bottom_up():
    assert FIG4.t == 3 and FIG4.u == 2
    assert [FIG4.entry(k, 1) for k in (1, 2, 3)] == [1, -1, -1]
    assert [FIG4.entry(k, 2) for k in (1, 2, 3)] == [0, 1, 1]
    assert FIG4.alphabet() == ("a11", "a21", "a22", "a31", "a32")
    assert FIG4.rows_top_first() == [[0, 1, 1], [1, -1, -1]]


def test_matrix_validation():
    with pytest.raises(ValueError):
        GridMatrix(())
    with pytest.raises(ValueError):
        GridMatrix(((2,),))
    with pytest.raises(ValueError):
        SignVector((0,), (1,))


def test_cell_tokens():
    assert parse_word("a3,1 a22") == ("a31", "a22")
    assert cell_letter((12, 3)) == "a12,3"
    with pytest.raises(ValueError):
        parse_word("b11")


# -- signs -------------------------------------------------------------------

def test_infer_signs_example_matrix():
    s = infer_signs(GridMatrix.from_rows([[1, 0, -1], [-1, 1, 0]]))
    assert s.cols == (-1, 1, 1) and s.rows == (1, -1)


def test_infer_signs_fig4():
    assert infer_signs(FIG4) == FIG4_SIGNS


def test_infer_signs_zero_matrix():
    s = infer_signs(GridMatrix.from_rows([[0, 0], [0, 0]]))
    assert s.cols == (1, 1) and s.rows == (1, 1)


def test_infer_signs_contradiction():
    assert infer_signs(GridMatrix.from_rows([[1, -1], [1, 1]])) is None


def _exhaustive_signs(m):
    return [s for s in all_sign_vectors(m) if s.valid_for(m)]


@pytest.mark.parametrize("t, u", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2)])
def test_infer_signs_exhaustive_small(t, u):
    for entries in product((-1, 0, 1), repeat=t * u):
        m = GridMatrix([entries[k * u : (k + 1) * u] for k in range(t)])
        s = infer_signs(m)
        if s is None:
            assert not _exhaustive_signs(m)
        else:
            assert s.valid_for(m)


def test_infer_signs_random_large():
    rng = random.Random(11)
    for _ in range(40):
        t, u = rng.randint(1, 6), rng.randint(1, 6)
        if rng.random() < 0.5:
            m = random_pmm(rng, 6)
        else:
            m = GridMatrix([[rng.choice((-1, 0, 0, 1)) for _ in range(u)] for _ in range(t)])
        s = infer_signs(m)
        if s is None:
            assert not _exhaustive_signs(m)
        else:
            assert s.valid_for(m)


# -- decoder -----------------------------------------------------------------

def test_fig4_decoder_pairs():
    pairs = decoder_from_matrix(FIG4, FIG4_SIGNS).pairs
    assert ("a21", "a21") in pairs and ("a31", "a31") in pairs
    assert ("a11", "a11") not in pairs and ("a22", "a22") not in pairs
    assert ("a22", "a31") in pairs and ("a31", "a22") in pairs
    assert ("a22", "a21") in pairs and ("a21", "a22") not in pairs


def test_decoder_rejects_bad_signs():
    with pytest.raises(ValueError):
        decoder_from_matrix(FIG4, SignVector((1, 1, 1), (1, 1)))


# -- psi / phi ---------------------------------------------------------------

def test_psi_fig4_and_fig5():
    assert str(psi(FIG4, FIG4_SIGNS, FIG4_WORD)) == "1527436"
    assert str(psi(FIG4, FIG4_SIGNS, FIG5_WORD)) == "1527436"


def test_psi_single_cell():
    m = GridMatrix.from_rows([[1]])
    assert str(psi(m, SignVector((1,), (1,)), ["a11"] * 3)) == "123"


def test_psi_rejects_zero_cell():
    with pytest.raises(ValueError):
        psi(FIG4, FIG4_SIGNS, ["a12"])


def test_fig4_drawing_phi():
    d = drawing_from_points(FIG4, FIG4_SIGNS, FIG4_POINTS, scale=50)
    assert list(phi(FIG4, FIG4_SIGNS, d)) == FIG4_WORD
    assert str(drawing_permutation(FIG4, FIG4_SIGNS, d)) == "1527436"


def test_base_points_fig4():
    assert base_point(FIG4_SIGNS, (1, 1)) == (1, 1)
    assert base_point(FIG4_SIGNS, (2, 2)) == (1, 1)
    assert base_point(FIG4_SIGNS, (3, 1)) == (2, 1)


def test_phi_trivial():
    assert phi(FIG4, FIG4_SIGNS, Drawing(())) == ()
    assert phi(FIG4, FIG4_SIGNS, Drawing(((((2, 2)), Fraction(1, 3)),))) == ("a22",)


def test_drawing_validation():
    with pytest.raises(ValueError):
        Drawing((((1, 1), Fraction(1, 2)), ((1, 1), Fraction(1, 2))))
    with pytest.raises(ValueError):
        Drawing((((1, 1), Fraction(1)),))


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False), st.booleans())
def test_phi_psi_inverse(r, use_fig4):
    m = FIG4 if use_fig4 else random_pmm(r)
    s = infer_signs(m)
    n = r.randint(0, 10)
    ds = sorted(r.sample(range(1, 1000), n))
    d = Drawing(tuple((r.choice(m.cells()), Fraction(x, 1000)) for x in ds))
    assert psi(m, s, phi(m, s, d)) == drawing_permutation(m, s, d)


# -- bridge and trace invariance --------------------------------------------

def test_bridge_fig4_word():
    assert check_grid_letter_bridge(FIG4, FIG4_SIGNS, FIG4_WORD)
    assert check_grid_letter_bridge(FIG4, FIG4_SIGNS, [])


@settings(max_examples=300, deadline=None)
@given(st.randoms(use_true_random=False))
def test_bridge_random(r):
    m = random_pmm(r)
    s = infer_signs(m)
    assert check_grid_letter_bridge(m, s, random_word(r, m))


def test_bridge_under_every_valid_sign_vector():
    rng = random.Random(2)
    for _ in range(20):
        m = random_pmm(rng, 3)
        for s in _exhaustive_signs(m):
            for _ in range(10):
                assert check_grid_letter_bridge(m, s, random_word(rng, m, 7))


@settings(max_examples=300, deadline=None)
@given(st.randoms(use_true_random=False))
def test_trace_invariance(r):
    m = FIG4 if r.random() < 0.3 else random_pmm(r)
    s = infer_signs(m)
    w = random_word(r, m)
    spots = [i for i in range(len(w) - 1) if trace_swap_allowed(w[i], w[i + 1])]
    if not spots:
        return
    i = r.choice(spots)
    v = w[:i] + [w[i + 1], w[i]] + w[i + 2 :]
    assert psi(m, s, v) == psi(m, s, w)


def test_x_figure_hosts_exactly_the_avoiders():
    for n in range(7):
        avoiders = {p for p in all_permutations(n) if avoids_all(p, THRESHOLD_BASIS)}
        assert geom_permutations(X_FIGURE, n) == avoiders


# -- two-letter decoders -----------------------------------------------------

CROSS = [("a", "b"), ("b", "a")]


def _decoder(bits):
    pairs = [p for p, keep in zip(CROSS + [("a", "a"), ("b", "b")], bits) if keep]
    return Decoder("ab", pairs)


def test_two_letter_examples():
    res = two_letter_grid_matrix(Decoder("ab", CROSS))
    assert res.tag == "complete"
    assert [m.rows_top_first() for m in res.matrices] == [[[1, 0], [0, 1]]]
    res = two_letter_grid_matrix(Decoder("ab", [("a", "b"), ("a", "a")]))
    assert res.tag == "threshold" and res.matrices == (X_FIGURE,)
    res = two_letter_grid_matrix(Decoder("ab", [("a", "b")]))
    assert res.tag == "chain"
    assert [m.rows_top_first() for m in res.matrices] == [[[1, 1]], [[1], [1]]]


def test_two_letter_bad_alphabet():
    with pytest.raises(ValueError):
        two_letter_grid_matrix(Decoder("abc", []))


@pytest.mark.parametrize("bits", list(product((0, 1), repeat=4)))
def test_two_letter_homogeneous_cells_are_exact(bits):
    d = _decoder(bits)
    res = two_letter_grid_matrix(d)
    if res.letter_cells is None:
        return
    (m,) = res.matrices
    cell_dec = decoder_from_matrix(m, infer_signs(m))
    name = {x: cell_letter(c) for x, c in res.letter_cells.items()}
    assert {(name[x], name[y]) for x, y in d.pairs} == set(cell_dec.pairs)


_GEOM_CACHE = {}


def _geom_graphs(matrices, n):
    key = (matrices, n)
    if key not in _GEOM_CACHE:
        by_inv = {}
        for m in matrices:
            for p in geom_permutations(m, n):
                g = perm_graph(p)
                inv = (g.m, tuple(sorted(len(g.neighbors(v)) for v in g.vertices())))
                bucket = by_inv.setdefault(inv, [])
                if not any(h == g or is_isomorphic(h, g) for h in bucket):
                    bucket.append(g)
        _GEOM_CACHE[key] = by_inv
    return _GEOM_CACHE[key]


def _hosted(g, matrices):
    inv = (g.m, tuple(sorted(len(g.neighbors(v)) for v in g.vertices())))
    return any(is_isomorphic(g, h) for h in _geom_graphs(matrices, g.n).get(inv, []))


@pytest.mark.parametrize("bits", list(product((0, 1), repeat=4)))
def test_two_letter_consistency_exhaustive_short(bits):
    d = _decoder(bits)
    res = two_letter_grid_matrix(d)
    for n in range(6):
        for w in product("ab", repeat=n):
            assert _hosted(realize(d, w), res.matrices)


@pytest.mark.slow
@pytest.mark.parametrize("bits", list(product((0, 1), repeat=4)))
def test_two_letter_consistency_random_long(bits):
    rng = random.Random(sum(b << i for i, b in enumerate(bits)))
    d = _decoder(bits)
    res = two_letter_grid_matrix(d)
    for _ in range(15):
        w = [rng.choice("ab") for _ in range(rng.randint(6, 8))]
        assert _hosted(realize(d, w), res.matrices)


# -- text formats ------------------------------------------------------------

def test_parse_matrix_with_and_without_signs():
    m, s = parse_matrix("3 2\n0 1 1\n1 -1 -1\n")
    assert m == FIG4 and s is None
    m, s = parse_matrix("3 2\n0 1 1\n1 -1 -1\ncols: -1 1 1\nrows: -1 1\n")
    assert s == FIG4_SIGNS
    assert parse_matrix(emit_matrix(m, s)) == (m, s)


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("3\n", 1),
        ("2 1\n1 2\n", 2),
        ("2 2\n1 1\n", 3),
        ("1 1\n1\ncols: 1\n", 3),
        ("1 1\n-1\ncols: 1\nrows: 1\n", 4),
    ],
)
def test_parse_matrix_errors(text, line):
    with pytest.raises(MatrixFormatError) as info:
        parse_matrix(text)
    assert info.value.line == line


def test_parse_drawing():
    d = parse_drawing("a22 1/2\na31 0.25\n")
    assert d.points == (((3, 1), Fraction(1, 4)), ((2, 2), Fraction(1, 2)))
