from math import comb

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from hadswitch import fixtures
from hadswitch.hadswitch import find_closed_quadruples, switch_closed_quadruple
from hadswitch.invariants import profile4, smith_normal_form
from hadswitch.oracles import snf_by_minors
from hadswitch.signmatrix import EquivalenceWitness, apply_equivalence, sylvester

# invariant factors from sympy's Smith form, as (value, multiplicity)
SNF = {
    "H1": [(1, 1)],
    "H2": [(1, 1), (2, 1)],
    "H4": [(1, 1), (2, 2), (4, 1)],
    "H8": [(1, 1), (2, 3), (4, 3), (8, 1)],
    "H12": [(1, 1), (2, 5), (6, 5), (12, 1)],
    "H16.0": [(1, 1), (2, 4), (4, 6), (8, 4), (16, 1)],
    "H16.1": [(1, 1), (2, 5), (4, 4), (8, 5), (16, 1)],
    "H16.2": [(1, 1), (2, 6), (4, 2), (8, 6), (16, 1)],
    "H16.3": [(1, 1), (2, 7), (8, 7), (16, 1)],
    "H16.4": [(1, 1), (2, 7), (8, 7), (16, 1)],
    "H20.0": [(1, 1), (2, 9), (10, 9), (20, 1)],
    "H36": [(1, 1), (2, 11), (6, 12), (18, 11), (36, 1)],
}


def _expand(runs):
    return tuple(v for v, k in runs for _ in range(k))


def _tally(M):
    from collections import Counter
    from itertools import combinations

    a = M.array.astype(int)
    return dict(Counter(abs(int((a[i] * a[j] * a[k] * a[l]).sum())) for i, j, k, l in combinations(range(M.order), 4)))


def test_identity():
    assert smith_normal_form(np.eye(4, dtype=int)).factors == (1, 1, 1, 1)


def test_diagonal_already_smith():
    assert smith_normal_form(np.diag([2, 4])).factors == (2, 4)


def test_reorders_diagonal():
    assert smith_normal_form(np.diag([4, 6])).factors == (2, 12)


def test_singular_gives_trailing_zero():
    assert smith_normal_form(np.array([[2, 4], [1, 2]])).factors == (1, 0)


def test_order_four_product():
    f = smith_normal_form(fixtures.load("H4")).factors
    assert np.prod(f) == 16
    assert f == snf_by_minors(fixtures.load("H4"))


@pytest.mark.parametrize("name", sorted(SNF))
def test_fixture_snf(name):
    assert smith_normal_form(fixtures.load(name)).factors == _expand(SNF[name])


def test_snf_text():
    assert str(smith_normal_form(fixtures.load("H12"))) == "1^1 2^5 6^5 12^1"


@given(st.integers(1, 6), st.integers(0, 2**32 - 1), st.booleans())
def test_snf_matches_minors_oracle(k, seed, signs):
    rng = np.random.default_rng(seed)
    a = rng.choice([-1, 1], (k, k)) if signs else rng.integers(-6, 7, (k, k))
    f = smith_normal_form(a).factors
    assert f == snf_by_minors(a)
    assert all(f[i + 1] % f[i] == 0 for i in range(k - 1) if f[i])


@given(st.integers(1, 7), st.integers(1, 7), st.integers(0, 2**32 - 1))
def test_snf_rectangular_matches_sympy(r, c, seed):
    a = np.random.default_rng(seed).integers(-9, 10, (r, c))
    S = sympy_snf(sympy.Matrix(a.tolist()), domain=sympy.ZZ)
    want = sorted(abs(int(S[i, i])) for i in range(min(r, c)) if S[i, i] != 0)
    got = [x for x in smith_normal_form(a).factors if x]
    assert got == want


@given(st.sampled_from(["H8", "H12", "H16.1", "H20.2"]), st.integers(0, 2**32 - 1))
def test_snf_and_profile_invariant_under_equivalence(name, seed):
    H = fixtures.load(name)
    E = apply_equivalence(H, EquivalenceWitness.random(H.order, rng=np.random.default_rng(seed)))
    assert smith_normal_form(E) == smith_normal_form(H)
    assert profile4(E) == profile4(H)


def test_sylvester_eight_profile():
    assert profile4(sylvester(3)).as_dict() == {0: 56, 8: 14}


def test_h12_profile_constant():
    assert profile4(fixtures.load("H12")).as_dict() == {4: 495}


@pytest.mark.parametrize("name", [n for n in fixtures.NAMES if n != "H1" and n != "H2"])
def test_profile_total_and_residue(name):
    H = fixtures.load(name)
    p = profile4(H)
    n = H.order
    assert p.total() == comb(n, 4)
    assert all((v - n) % 8 == 0 for v in p.as_dict())


@pytest.mark.parametrize("name", ["H8", "H12", "H16.0", "H20.0"])
def test_profile_matches_direct_tally(name):
    H = fixtures.load(name)
    assert profile4(H).as_dict() == _tally(H)


def test_profile_counts_closed_quadruples():
    H = fixtures.load("H16.3")
    assert profile4(H).as_dict().get(16, 0) == len(find_closed_quadruples(H))


def test_h16_profile_screen_after_switch():
    H = fixtures.load("H16.0")
    q = find_closed_quadruples(H)[0]
    S = switch_closed_quadruple(H, q, 1)
    assert profile4(S).as_dict() == _tally(S)
    assert profile4(H).as_dict() == _tally(H)


def test_profile_needs_order_four():
    with pytest.raises(ValueError):
        profile4(fixtures.load("H2"))
