import numpy as np
import pytest
from hypothesis import given, strategies as st

from hadswitch import fixtures, oracles
from hadswitch.hadswitch import (
    H4,
    HallColumns,
    block_sums_ok,
    border_ok,
    check_quadruple,
    classify_hall_columns,
    find_closed_quadruples,
    find_hall_sets,
    hall_standard_form,
    switch_closed_quadruple,
    switch_hall_set,
)
from hadswitch.signmatrix import EquivalenceWitness, NotHadamardError, SignMatrix, apply_equivalence, hadamard_row_product, is_hadamard

# counts from the literal 4-subset scans in hadswitch.oracles
QUADRUPLE_COUNTS = {
    "H1": 0, "H2": 0, "H4": 1, "H8": 14, "H12": 0, "H12-switched": 0,
    "H16.0": 140, "H16.1": 76, "H16.2": 44, "H16.3": 28, "H16.4": 28,
    "H20.0": 0, "H20.1": 0, "H20.2": 0,
}  # fmt: skip
HALL_COUNTS = {
    "H1": 0, "H2": 0, "H4": 0, "H8": 0, "H12": 495, "H12-switched": 495,
    "H16.0": 0, "H16.1": 256, "H16.2": 384, "H16.3": 448, "H16.4": 448,
    "H20.0": 285, "H20.1": 285, "H20.2": 285,
}  # fmt: skip


@pytest.mark.parametrize("name", sorted(QUADRUPLE_COUNTS))
def test_quadruple_count(name):
    assert len(find_closed_quadruples(fixtures.load(name))) == QUADRUPLE_COUNTS[name]


@pytest.mark.parametrize("name", sorted(HALL_COUNTS))
def test_hall_set_count(name):
    assert len(find_hall_sets(fixtures.load(name))) == HALL_COUNTS[name]


@pytest.mark.parametrize("name", ["H8", "H16.1", "H16.4"])
def test_quadruples_match_scan(name):
    H = fixtures.load(name)
    assert [q.rows for q in find_closed_quadruples(H)] == oracles.closed_quadruples(H)


@pytest.mark.parametrize("name", ["H12", "H16.2", "H20.0"])
def test_hall_sets_match_scan(name):
    H = fixtures.load(name)
    assert sorted(tuple(sorted(h.rows)) for h in find_hall_sets(H)) == oracles.hall_sets(H)


def test_h36_hall_sets():
    H = fixtures.load("H36")
    rows = sorted(tuple(sorted(h.rows)) for h in find_hall_sets(H))
    assert len(rows) == 9
    assert (0, 3, 18, 21) in rows


def test_quadruple_product_is_constant():
    H = fixtures.load("H16.0")
    for q in find_closed_quadruples(H):
        p = hadamard_row_product(H, q.rows)
        assert (p == q.sign).all()
        check_quadruple(H, q)


def test_quadruple_canonical_witness_makes_last_row_ones():
    H = fixtures.load("H16.3")
    for q in find_closed_quadruples(H):
        C = apply_equivalence(H, q.canonical_witness())
        assert (C.array[q.rows[3]] == 1).all()
        assert (hadamard_row_product(C, q.rows[:3]) == 1).all()


def test_quadruple_fields_partition_columns():
    H = fixtures.load("H16.1")
    for q in find_closed_quadruples(H):
        assert sorted(c for f in q.fields.fields for c in f) == list(range(16))
        assert [len(f) for f in q.fields.fields] == [4, 4, 4, 4]


@pytest.mark.parametrize("name", fixtures.ORDER16)
def test_quadruple_switch_is_hadamard_involution(name):
    H = fixtures.load(name)
    for q in find_closed_quadruples(H)[:12]:
        for f in range(1, 5):
            S = switch_closed_quadruple(H, q, f)
            assert is_hadamard(S)
            changed = np.argwhere(S.array != H.array)
            assert set(changed[:, 0]) == set(q.rows)
            assert set(changed[:, 1]) == set(q.fields.fields[f - 1])
            q2 = next(x for x in find_closed_quadruples(S) if x.rows == q.rows)
            assert switch_closed_quadruple(S, q2, f) == H


def test_quadruple_switch_rejects_bad_field():
    H = fixtures.load("H8")
    q = find_closed_quadruples(H)[0]
    with pytest.raises(ValueError):
        switch_closed_quadruple(H, q, 5)


def test_quadruple_from_other_matrix_rejected():
    q = find_closed_quadruples(fixtures.load("H16.0"))[0]
    with pytest.raises(ValueError):
        switch_closed_quadruple(fixtures.load("H16.4"), q, 1)


def test_non_hadamard_input_rejected():
    with pytest.raises(NotHadamardError):
        find_closed_quadruples(SignMatrix(np.ones((4, 4), dtype=int)))


@given(st.sampled_from(["H8", "H16.2", "H20.1"]), st.integers(0, 2**32 - 1))
def test_counts_invariant_under_equivalence(name, seed):
    H = fixtures.load(name)
    E = apply_equivalence(H, EquivalenceWitness.random(H.order, rng=np.random.default_rng(seed)))
    assert len(find_closed_quadruples(E)) == QUADRUPLE_COUNTS[name]
    assert len(find_hall_sets(E)) == HALL_COUNTS[name]


def test_hall_set_invisible_below_order_12():
    assert find_hall_sets(fixtures.load("H8")) == []


def test_hall_columns_in_each_field():
    H = fixtures.load("H20.1")
    for h in find_hall_sets(H)[:30]:
        assert [h.fields.field_of(c) for c in h.hall_cols] == [1, 2, 3, 4]


@pytest.mark.parametrize("name,kind", [("H12", HallColumns.HALL_SET), ("H20.2", HallColumns.HALL_SET),
                                       ("H16.1", HallColumns.CLOSED_QUADRUPLE), ("H16.3", HallColumns.CLOSED_QUADRUPLE)])  # fmt: skip
def test_hall_column_dichotomy(name, kind):
    H = fixtures.load(name)
    assert {classify_hall_columns(H, h) for h in find_hall_sets(H)} == {kind}


def test_h4_block_orientation():
    assert H4.tolist() == [[1, -1, -1, -1], [-1, 1, -1, -1], [-1, -1, 1, -1], [-1, -1, -1, 1]]


@pytest.mark.parametrize("name", ["H12", "H20.0", "H36"])
def test_standard_form_shape(name):
    H = fixtures.load(name)
    for h in find_hall_sets(H)[:25]:
        form = hall_standard_form(H, h)
        S = form.matrix
        assert apply_equivalence(H, form.witness) == S
        assert np.array_equal(S.array[:4, :4], H4)
        assert border_ok(S) and block_sums_ok(S)
        assert is_hadamard(S)


def test_standard_form_needs_4_mod_8():
    H = fixtures.load("H16.1")
    with pytest.raises(ValueError):
        hall_standard_form(H, find_hall_sets(H)[0])


def test_switch_of_h12_rows_1_to_4_matches_transcribed_result():
    H = fixtures.load("H12")
    h = next(h for h in find_hall_sets(H) if sorted(h.rows) == [0, 1, 2, 3])
    assert switch_hall_set(H, h, 1) == fixtures.load("H'12")


def test_switch_of_h36_hall_set_matches_transcribed_result():
    H = fixtures.load("H36")
    h = next(h for h in find_hall_sets(H) if sorted(h.rows) == [0, 3, 18, 21])
    assert switch_hall_set(H, h, 1) == fixtures.load("H'36")


@pytest.mark.parametrize("i", [1, 2, 3, 4])
def test_hall_switch_stays_hadamard_and_undoes(i):
    H = fixtures.load("H20.2")
    for h in find_hall_sets(H)[::40]:
        form = hall_standard_form(H, h)
        S = switch_hall_set(H, h, i, form)
        assert is_hadamard(S)
        # 2 * 4 * (n/4 - 1) entries change in the standard form
        assert int((S.array != H.array).sum()) == 8 * (H.order // 4 - 1)
        back = apply_equivalence(S, form.witness)
        blk = list(form.block(i))
        back = back.with_negated(range(4), blk).with_negated(blk, range(4))
        assert back == form.matrix


def test_hall_switch_rejects_bad_block():
    H = fixtures.load("H12")
    with pytest.raises(ValueError):
        switch_hall_set(H, find_hall_sets(H)[0], 0)
