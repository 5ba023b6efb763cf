import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from hadswitch import fixtures
from hadswitch.hadgraph import hadamard_graph
from hadswitch.loopgraph import (
    CharPoly,
    InconclusiveError,
    LoopGraph,
    canonical_form,
    char_poly,
    cospectral,
    isomorphic,
)
from hadswitch.oracles import isomorphic_bruteforce


@st.composite
def loop_graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    bits = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    a = np.array(bits, dtype=bool).reshape(n, n)
    return LoopGraph(np.triu(a) | np.triu(a).T)


def _sympy_char_poly(G):
    x = sympy.symbols("x")
    return tuple(int(c) for c in sympy.Matrix(G.adjacency.astype(int)).charpoly(x).all_coeffs())


def test_rejects_asymmetric():
    with pytest.raises(ValueError):
        LoopGraph([[0, 1], [0, 0]])


def test_from_edges_and_neighbours():
    G = LoopGraph.from_edges(4, [(0, 1), (1, 2)], loops=[3])
    assert G.neighbors(1) == [0, 2]
    assert G.loops.tolist() == [False, False, False, True]
    assert G.degrees().tolist() == [1, 2, 1, 0]


def test_relabel_moves_vertices():
    G = LoopGraph.from_edges(3, [(0, 1)], loops=[2])
    H = G.relabel([2, 0, 1])
    assert H.adjacency[2, 0] and H.loops[1]


# values below were computed with sympy's charpoly
def test_char_poly_of_one_by_one_hadamard_graph():
    assert char_poly(hadamard_graph(fixtures.load("H1"))).coeffs == (1, -2, -1, 2, 1)


def test_char_poly_of_two_by_two_hadamard_graph():
    assert char_poly(hadamard_graph(fixtures.load("H2"))).coeffs == (1, -4, -2, 20, -3, -32, 4, 16, 0)


def test_char_poly_text():
    assert str(CharPoly((1, -4, 0, 1))) == "x^3 - 4x^2 + 1"
    assert str(CharPoly((1, 0))) == "x"


@given(loop_graphs(max_n=10))
def test_char_poly_matches_sympy(G):
    assert char_poly(G).coeffs == _sympy_char_poly(G)


@pytest.mark.parametrize("name", ["H4", "H8"])
def test_char_poly_matches_sympy_on_hadamard_graphs(name):
    G = hadamard_graph(fixtures.load(name))
    assert char_poly(G).coeffs == _sympy_char_poly(G)


def test_char_poly_of_h36_graph_matches_float_determinants():
    G = hadamard_graph(fixtures.load("H36"))
    p = char_poly(G)
    assert p.degree == 144
    a = G.adjacency.astype(float)
    for t in (Fraction(7, 2), Fraction(-9, 4), Fraction(1, 3)):
        exact = sum(c * t ** (p.degree - k) for k, c in enumerate(p.coeffs))
        sign, logdet = np.linalg.slogdet(float(t) * np.eye(G.n) - a)
        assert sign == (1 if exact > 0 else -1)
        assert abs(math.log(abs(exact)) - logdet) < 1e-8


def test_cospectral_mates_not_isomorphic():
    star = LoopGraph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    square_plus_point = LoopGraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert cospectral(star, square_plus_point)
    assert not isomorphic(star, square_plus_point)


def test_empty_graph():
    G = LoopGraph(np.zeros((0, 0), dtype=bool))
    assert canonical_form(G) == canonical_form(G)


@given(loop_graphs(), st.randoms(use_true_random=False))
def test_canonical_form_invariant_under_relabeling(G, rnd):
    perm = list(range(G.n))
    rnd.shuffle(perm)
    assert canonical_form(G) == canonical_form(G.relabel(perm))


@given(loop_graphs())
def test_canonical_relabeling_reproduces_form(G):
    cf = canonical_form(G)
    assert G.relabel(cf.relabeling) == cf.graph()


@given(loop_graphs(max_n=8), loop_graphs(max_n=8))
def test_isomorphic_matches_bruteforce(G1, G2):
    assert isomorphic(G1, G2) == isomorphic_bruteforce(G1, G2)


@given(loop_graphs(max_n=8), st.randoms(use_true_random=False))
def test_isomorphic_to_relabeled_copy(G, rnd):
    perm = list(range(G.n))
    rnd.shuffle(perm)
    assert isomorphic(G, G.relabel(perm))


def test_loops_distinguish_otherwise_equal_graphs():
    a = LoopGraph.from_edges(3, [(0, 1), (1, 2)], loops=[0])
    b = LoopGraph.from_edges(3, [(0, 1), (1, 2)], loops=[1])
    assert not isomorphic(a, b)
    assert not isomorphic_bruteforce(a, b)


def test_budget_exhaustion_is_reported():
    G = hadamard_graph(fixtures.load("H16.0"))
    with pytest.raises(InconclusiveError) as exc:
        canonical_form(G, budget=5)
    assert exc.value.steps > 5


def test_hadamard_graph_canonical_form_stable():
    G = hadamard_graph(fixtures.load("H12"))
    perm = np.random.default_rng(3).permutation(G.n)
    assert canonical_form(G) == canonical_form(G.relabel(perm))
