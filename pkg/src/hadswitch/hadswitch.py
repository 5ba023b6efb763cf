"""Closed quadruples and Hall sets: detection, standard forms and switching."""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations, permutations, product

import numpy as np

from .signmatrix import (
    EquivalenceWitness,
    FieldStructure,
    SignMatrix,
    apply_equivalence,
    group_fields,
    hadamard_row_product,
    require_hadamard,
)


@dataclass(frozen=True)
class ClosedQuadruple:
    """Four rows whose Hadamard product is +j or -j.

    ``col_flips`` negates the columns so that the last row of the quadruple
    (after negating it when ``sign`` is -1) becomes all-ones. ``fields`` are
    taken from the remaining three rows in those coordinates.
    """

    rows: tuple[int, int, int, int]
    sign: int
    col_flips: tuple[int, ...]
    fields: FieldStructure

    def canonical_witness(self) -> EquivalenceWitness:
        n_cols = len(self.col_flips)
        row_signs = [1] * n_cols
        row_signs[self.rows[3]] = self.sign
        return EquivalenceWitness(tuple(range(n_cols)), tuple(range(n_cols)), tuple(row_signs), self.col_flips)


@dataclass(frozen=True)
class HallSet:
    """Four rows forming a Hall set, with the Hall columns listed by field.

    ``col_flips`` is the product of the first three rows; negating those
    columns makes the first three rows 3-normalized.
    """

    rows: tuple[int, int, int, int]
    hall_cols: tuple[int, int, int, int]
    col_flips: tuple[int, ...]
    fields: FieldStructure


class HallColumns(enum.Enum):
    CLOSED_QUADRUPLE = "ClosedQuadruple"
    HALL_SET = "HallSet"


@dataclass(frozen=True)
class HallStandardForm:
    """A matrix in Hall standard form and the witness that produced it.

    ``apply_equivalence(original, witness) == matrix``. Rows/columns 0..3 are
    the Hall rows/columns; block ``i`` (1..4) spans the next n/4 - 1 positions.
    """

    matrix: SignMatrix
    witness: EquivalenceWitness

    @property
    def block_size(self) -> int:
        return self.matrix.order // 4 - 1

    def block(self, i: int) -> range:
        b = self.block_size
        return range(4 + (i - 1) * b, 4 + i * b)


# ---------------------------------------------------------------------------
# closed quadruples
# ---------------------------------------------------------------------------


def _closed_quadruple(M: SignMatrix, rows) -> ClosedQuadruple | None:
    rows = tuple(sorted(int(r) for r in rows))
    p = hadamard_row_product(M, rows)
    if np.all(p == 1):
        sign = 1
    elif np.all(p == -1):
        sign = -1
    else:
        return None
    last = rows[3]
    flips = sign * M.array[last].astype(int)
    canon = M.array[list(rows[:3])] * flips[None, :]
    fields = group_fields(canon)
    return ClosedQuadruple(rows, sign, tuple(int(x) for x in flips), FieldStructure(rows[:3], fields))


def find_closed_quadruples(M: SignMatrix) -> list[ClosedQuadruple]:
    """All 4-row sets whose Hadamard product is +-all-ones, sorted by rows."""
    require_hadamard(M)
    a = M.array
    n = M.n_rows
    # h_i o h_j o h_k o h_l = +-1  <=>  h_i o h_j = +-(h_k o h_l)
    buckets: dict[bytes, list[tuple[int, int]]] = defaultdict(list)
    for i, j in combinations(range(n), 2):
        p = a[i] * a[j]
        buckets[(p * p[0]).tobytes()].append((i, j))
    found = set()
    for pairs in buckets.values():
        for (i, j), (k, l) in combinations(pairs, 2):
            if len({i, j, k, l}) == 4:
                found.add(tuple(sorted((i, j, k, l))))
    return [_closed_quadruple(M, q) for q in sorted(found)]


def check_quadruple(M: SignMatrix, q: ClosedQuadruple) -> None:
    fresh = _closed_quadruple(M, q.rows)
    if fresh is None or fresh != q:
        raise ValueError(f"rows {q.rows} are not the given closed quadruple of this matrix")


def switch_closed_quadruple(M: SignMatrix, q: ClosedQuadruple, field: int) -> SignMatrix:
    """Negate the quadruple's entries inside field ``field`` (1..4)."""
    require_hadamard(M)
    check_quadruple(M, q)
    if not 1 <= field <= len(q.fields.fields):
        raise ValueError(f"field must be in 1..{len(q.fields.fields)}, got {field}")
    # Negation commutes with the canonicalizing negations, so the switch in
    # canonical coordinates equals the same negation in the original ones.
    return M.with_negated(q.rows, q.fields.fields[field - 1])


# ---------------------------------------------------------------------------
# Hall sets
# ---------------------------------------------------------------------------


def _hall_set_with_triple(M: SignMatrix, triple, fourth: int) -> HallSet | None:
    n = M.n_cols
    a = M.array
    flips = hadamard_row_product(M, triple).astype(int)
    canon = a[list(triple)] * flips[None, :]
    fields = group_fields(canon)
    if len(fields) != 4 or any(len(f) != n // 4 for f in fields):
        return None
    row = a[fourth] * flips
    hall = []
    for f in fields:
        vals = row[list(f)]
        plus = int((vals == 1).sum())
        if plus == 1:
            odd = 1
        elif plus == len(f) - 1:
            odd = -1
        else:
            return None
        hall.append(f[int(np.flatnonzero(vals == odd)[0])])
    rows = tuple(triple) + (fourth,)
    return HallSet(rows, tuple(hall), tuple(int(x) for x in flips), FieldStructure(tuple(triple), fields))


def _hall_set(M: SignMatrix, rows) -> HallSet | None:
    """Structural Hall-set test on a row quadruple; None when it fails.

    The row playing the odd role is tried from the largest index down, so
    the triple is the three smallest rows whenever that works.
    """
    n = M.n_cols
    if n % 4 or n // 4 < 3:
        return None
    rows = sorted(int(r) for r in rows)
    for fourth in reversed(rows):
        triple = tuple(r for r in rows if r != fourth)
        h = _hall_set_with_triple(M, triple, fourth)
        if h is not None:
            return h
    return None


def find_hall_sets(M: SignMatrix) -> list[HallSet]:
    """All row quadruples forming a Hall set.

    Run on ``M.T`` to find column Hall sets.
    """
    require_hadamard(M)
    n = M.n_rows
    if n % 4 or n < 12:
        return []
    a = M.array.astype(np.int64)
    pairs = list(combinations(range(n), 2))
    prods = np.array([a[i] * a[j] for i, j in pairs])
    # a Hall quadruple's full product has exactly four minority entries
    g = np.abs(prods @ prods.T)
    hits = np.argwhere(np.triu(g == n - 8, 1))
    found = set()
    for x, y in hits:
        rows = set(pairs[x]) | set(pairs[y])
        if len(rows) == 4:
            found.add(tuple(sorted(rows)))
    out = []
    for rows in sorted(found):
        h = _hall_set(M, rows)
        if h is not None:
            out.append(h)
    return out


def check_hall_set(M: SignMatrix, h: HallSet) -> None:
    fresh = _hall_set(M, h.rows)
    if fresh is None or fresh != h:
        raise ValueError(f"rows {h.rows} are not the given Hall set of this matrix")


def classify_hall_columns(M: SignMatrix, h: HallSet) -> HallColumns:
    """Decide what the Hall columns of ``h`` form, by inspecting them in M^T."""
    require_hadamard(M)
    check_hall_set(M, h)
    mt = M.T
    if _closed_quadruple(mt, h.hall_cols) is not None:
        return HallColumns.CLOSED_QUADRUPLE
    if _hall_set(mt, h.hall_cols) is not None:
        return HallColumns.HALL_SET
    raise ValueError(f"Hall columns {h.hall_cols} form neither a closed quadruple nor a Hall set")


H4 = 2 * np.eye(4, dtype=int) - np.ones((4, 4), dtype=int)
# column patterns of F_1..F_4 on the Hall rows, row patterns of G_1..G_4 on the Hall columns
F_PATTERNS = np.array([[1, 1, 1, 1], [1, -1, -1, 1], [1, -1, 1, -1], [-1, -1, 1, 1]])
G_PATTERNS = np.array([[1, 1, 1, 1], [-1, 1, 1, -1], [-1, 1, -1, 1], [1, 1, -1, -1]])


def _match_blocks(vectors: np.ndarray, patterns: np.ndarray):
    """Assign each vector to the pattern it equals up to sign; None on failure."""
    dots = vectors @ patterns.T
    blocks = np.argmax(np.abs(dots) == 4, axis=1)
    signs = np.sign(dots[np.arange(len(vectors)), blocks])
    if not np.all(np.abs(dots[np.arange(len(vectors)), blocks]) == 4):
        return None
    return blocks, signs


def block_sums_ok(S: SignMatrix) -> bool:
    """True when every A_ij block has row and column sums 2 if i == j else 0."""
    n = S.order
    b = n // 4 - 1
    a = S.array.astype(np.int64)
    for i in range(4):
        for j in range(4):
            blk = a[4 + i * b : 4 + (i + 1) * b, 4 + j * b : 4 + (j + 1) * b]
            want = 2 if i == j else 0
            if not (np.all(blk.sum(axis=0) == want) and np.all(blk.sum(axis=1) == want)):
                return False
    return True


def border_ok(S: SignMatrix) -> bool:
    n = S.order
    b = n // 4 - 1
    a = S.array
    if not np.array_equal(a[:4, :4], H4):
        return False
    for k in range(4):
        cols = slice(4 + k * b, 4 + (k + 1) * b)
        if not np.all(a[:4, cols] == F_PATTERNS[k][:, None]):
            return False
        if not np.all(a[cols, :4] == G_PATTERNS[k][None, :]):
            return False
    return True


def hall_standard_form(M: SignMatrix, h: HallSet) -> HallStandardForm:
    """Bring ``M`` into Hall standard form around the Hall set ``h``.

    Hall row orderings are tried in lexicographic order, Hall column
    orderings and signs are chosen to produce the H4 corner, and the other
    rows/columns are grouped by block keeping their original relative order.
    """
    require_hadamard(M)
    check_hall_set(M, h)
    n = M.order
    if n % 8 != 4:
        raise ValueError(f"Hall standard form needs n = 4 (mod 8), got n = {n}")
    a = M.array.astype(int)
    b = n // 4 - 1
    hall_cols = list(h.hall_cols)
    other_rows = [r for r in range(n) if r not in h.rows]
    other_cols = [c for c in range(n) if c not in hall_cols]
    for rorder in permutations(h.rows):
        for corder in permutations(hall_cols):
            s = a[np.ix_(rorder, corder)]
            for rs in product((1, -1), repeat=4):
                rs = np.array(rs)
                cs = H4[0] * rs[0] * s[0]
                if not np.array_equal(rs[:, None] * s * cs[None, :], H4):
                    continue
                colm = _match_blocks((a[np.ix_(rorder, other_cols)] * rs[:, None]).T, F_PATTERNS)
                rowm = _match_blocks(a[np.ix_(other_rows, corder)] * cs[None, :], G_PATTERNS)
                if colm is None or rowm is None:
                    continue
                cblk, csg = colm
                rblk, rsg = rowm
                if any((cblk == k).sum() != b or (rblk == k).sum() != b for k in range(4)):
                    continue
                row_perm = list(rorder)
                row_signs = list(rs)
                col_perm = list(corder)
                col_signs = list(cs)
                for k in range(4):
                    for idx in np.flatnonzero(rblk == k):
                        row_perm.append(other_rows[idx])
                        row_signs.append(int(rsg[idx]))
                    for idx in np.flatnonzero(cblk == k):
                        col_perm.append(other_cols[idx])
                        col_signs.append(int(csg[idx]))
                w = EquivalenceWitness(
                    tuple(int(x) for x in row_perm),
                    tuple(int(x) for x in col_perm),
                    tuple(int(x) for x in row_signs),
                    tuple(int(x) for x in col_signs),
                )
                S = apply_equivalence(M, w)
                if border_ok(S) and block_sums_ok(S):
                    return HallStandardForm(S, w)
    raise ValueError(f"no Hall standard form exists for Hall set {h.rows}")


def switch_hall_set(M: SignMatrix, h: HallSet, i: int, form: HallStandardForm | None = None) -> SignMatrix:
    """Negate F_i and G_i in the Hall standard form, then map back."""
    if not 1 <= i <= 4:
        raise ValueError(f"block index must be in 1..4, got {i}")
    if form is None:
        form = hall_standard_form(M, h)
    S = form.matrix
    blk = list(form.block(i))
    S = S.with_negated(range(4), blk).with_negated(blk, range(4))
    return apply_equivalence(S, form.witness.inverse())
