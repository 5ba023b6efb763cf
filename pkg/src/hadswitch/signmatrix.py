"""Dense +/-1 matrices, Hadamard checks, equivalence operations and field structures.

Row and column indices are 0-based throughout the library. Fields are numbered
1..4 to match the usual presentation of 3-normalized matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np


class NotHadamardError(ValueError):
    pass


class SignMatrix:
    """Immutable rectangular matrix with entries in {+1, -1}."""

    __slots__ = ("_a", "_hash")

    def __init__(self, entries):
        a = np.array(entries, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError(f"expected a non-empty 2-d array, got shape {a.shape}")
        if not np.all((a == 1) | (a == -1)):
            raise ValueError("entries must be +1 or -1")
        a = a.astype(np.int8)
        a.setflags(write=False)
        self._a = a
        self._hash = None

    @classmethod
    def _wrap(cls, a: np.ndarray) -> "SignMatrix":
        # trusted constructor, skips validation
        obj = cls.__new__(cls)
        a = np.ascontiguousarray(a, dtype=np.int8)
        a.setflags(write=False)
        obj._a = a
        obj._hash = None
        return obj

    @property
    def array(self) -> np.ndarray:
        """Read-only int8 view of the entries."""
        return self._a

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def n_rows(self) -> int:
        return self._a.shape[0]

    @property
    def n_cols(self) -> int:
        return self._a.shape[1]

    @property
    def order(self) -> int:
        if self.n_rows != self.n_cols:
            raise ValueError("order is only defined for square matrices")
        return self.n_rows

    @property
    def T(self) -> "SignMatrix":
        return SignMatrix._wrap(self._a.T.copy())

    def row(self, i: int) -> np.ndarray:
        return self._a[i]

    def to_lists(self) -> list[list[int]]:
        return self._a.astype(int).tolist()

    def with_negated(self, rows: Iterable[int], cols: Iterable[int]) -> "SignMatrix":
        """Copy with the entries in the rows x cols sub-block negated."""
        a = self._a.copy()
        ix = np.ix_(list(rows), list(cols))
        a[ix] = -a[ix]
        return SignMatrix._wrap(a)

    def __eq__(self, other):
        if not isinstance(other, SignMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self._a.tobytes()))
        return self._hash

    def __repr__(self):
        body = "\n".join(" " + "".join("+" if x > 0 else "-" for x in r) for r in self._a)
        return f"SignMatrix({self.n_rows}x{self.n_cols}\n{body})"


@dataclass(frozen=True)
class EquivalenceWitness:
    """Row/column permutations and negations.

    Applying the witness to ``M`` gives ``R[r, c] = row_signs[r] * col_signs[c] *
    M[row_perm[r], col_perm[c]]``.
    """

    row_perm: tuple[int, ...]
    col_perm: tuple[int, ...]
    row_signs: tuple[int, ...]
    col_signs: tuple[int, ...]

    def __post_init__(self):
        for name, perm in (("row_perm", self.row_perm), ("col_perm", self.col_perm)):
            if sorted(perm) != list(range(len(perm))):
                raise ValueError(f"{name} is not a permutation")
        if len(self.row_signs) != len(self.row_perm) or len(self.col_signs) != len(self.col_perm):
            raise ValueError("sign vectors must match permutation lengths")
        if any(s not in (1, -1) for s in self.row_signs + self.col_signs):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def identity(cls, n_rows: int, n_cols: int | None = None) -> "EquivalenceWitness":
        n_cols = n_rows if n_cols is None else n_cols
        return cls(tuple(range(n_rows)), tuple(range(n_cols)), (1,) * n_rows, (1,) * n_cols)

    @classmethod
    def random(cls, n_rows: int, n_cols: int | None = None, rng=None) -> "EquivalenceWitness":
        rng = np.random.default_rng(rng)
        n_cols = n_rows if n_cols is None else n_cols
        return cls(
            tuple(int(x) for x in rng.permutation(n_rows)),
            tuple(int(x) for x in rng.permutation(n_cols)),
            tuple(int(x) for x in rng.choice([-1, 1], n_rows)),
            tuple(int(x) for x in rng.choice([-1, 1], n_cols)),
        )

    def inverse(self) -> "EquivalenceWitness":
        rp = np.argsort(self.row_perm)
        cp = np.argsort(self.col_perm)
        rs = np.asarray(self.row_signs)[rp]
        cs = np.asarray(self.col_signs)[cp]
        return EquivalenceWitness(
            tuple(int(x) for x in rp),
            tuple(int(x) for x in cp),
            tuple(int(x) for x in rs),
            tuple(int(x) for x in cs),
        )

    def then(self, other: "EquivalenceWitness") -> "EquivalenceWitness":
        """Witness equal to applying ``self`` and then ``other``."""
        rp = np.asarray(self.row_perm)[list(other.row_perm)]
        cp = np.asarray(self.col_perm)[list(other.col_perm)]
        rs = np.asarray(other.row_signs) * np.asarray(self.row_signs)[list(other.row_perm)]
        cs = np.asarray(other.col_signs) * np.asarray(self.col_signs)[list(other.col_perm)]
        return EquivalenceWitness(
            tuple(int(x) for x in rp),
            tuple(int(x) for x in cp),
            tuple(int(x) for x in rs),
            tuple(int(x) for x in cs),
        )


@dataclass(frozen=True)
class FieldStructure:
    """Column partition induced by a 3-normalized row triple.

    ``fields`` holds four sorted column lists, ordered by their smallest column.
    """

    triple: tuple[int, int, int]
    fields: tuple[tuple[int, ...], ...]

    def field_of(self, col: int) -> int:
        """1-based field number containing ``col``."""
        for k, f in enumerate(self.fields, start=1):
            if col in f:
                return k
        raise IndexError(col)


def _as_array(M) -> np.ndarray:
    return M.array if isinstance(M, SignMatrix) else np.asarray(M)


def gram(M: SignMatrix) -> np.ndarray:
    a = M.array.astype(np.int64)
    return a @ a.T


def is_hadamard(M: SignMatrix) -> bool:
    if M.n_rows != M.n_cols:
        return False
    n = M.n_rows
    return bool(np.array_equal(gram(M), n * np.eye(n, dtype=np.int64)))


def require_hadamard(M: SignMatrix) -> None:
    if not is_hadamard(M):
        raise NotHadamardError(f"{M.n_rows}x{M.n_cols} matrix is not Hadamard")


def hadamard_row_product(M: SignMatrix, rows: Sequence[int]) -> np.ndarray:
    """Componentwise product of the given rows; all-ones for an empty selection."""
    out = np.ones(M.n_cols, dtype=np.int8)
    for r in rows:
        if not -M.n_rows <= r < M.n_rows:
            raise IndexError(f"row {r} out of range for {M.n_rows} rows")
        out = out * M.array[r]
    return out


def apply_equivalence(M: SignMatrix, w: EquivalenceWitness) -> SignMatrix:
    if len(w.row_perm) != M.n_rows or len(w.col_perm) != M.n_cols:
        raise ValueError(
            f"witness is {len(w.row_perm)}x{len(w.col_perm)}, matrix is {M.n_rows}x{M.n_cols}"
        )
    a = M.array[np.ix_(w.row_perm, w.col_perm)]
    a = a * np.asarray(w.row_signs, dtype=np.int8)[:, None] * np.asarray(w.col_signs, dtype=np.int8)[None, :]
    return SignMatrix._wrap(a)


def normalize(M: SignMatrix) -> tuple[SignMatrix, EquivalenceWitness]:
    """Make the first row and column all-positive using negations only.

    Columns are negated against row 0 first, then rows against column 0.
    """
    require_hadamard(M)
    a = M.array
    col_signs = a[0].astype(int)
    row_signs = (a[:, 0] * col_signs[0]).astype(int)
    w = EquivalenceWitness(
        tuple(range(M.n_rows)),
        tuple(range(M.n_cols)),
        tuple(int(x) for x in row_signs),
        tuple(int(x) for x in col_signs),
    )
    return apply_equivalence(M, w), w


def find_3normalized_triples(M: SignMatrix) -> list[tuple[int, int, int]]:
    """All row triples (i < j < k) whose Hadamard product is the all-ones vector."""
    require_hadamard(M)
    a = M.array
    index = {}
    for r in range(M.n_rows):
        index.setdefault(a[r].tobytes(), []).append(r)
    out = []
    for i, j in combinations(range(M.n_rows), 2):
        # h_i o h_j o h_k = 1  <=>  h_k = h_i o h_j
        for k in index.get((a[i] * a[j]).tobytes(), ()):
            if k > j:
                out.append((i, j, k))
    out.sort()
    return out


def group_fields(patterns: np.ndarray) -> tuple[tuple[int, ...], ...]:
    """Group columns by identical column pattern, ordered by first column."""
    groups: dict[bytes, list[int]] = {}
    for c in range(patterns.shape[1]):
        groups.setdefault(patterns[:, c].tobytes(), []).append(c)
    return tuple(tuple(g) for g in groups.values())


def field_structure(M: SignMatrix, triple: Sequence[int]) -> FieldStructure:
    i, j, k = sorted(int(t) for t in triple)
    if len({i, j, k}) != 3:
        raise ValueError("triple needs three distinct rows")
    if not np.all(hadamard_row_product(M, (i, j, k)) == 1):
        raise ValueError(f"rows {(i, j, k)} are not 3-normalized")
    fields = group_fields(M.array[[i, j, k]])
    if M.n_cols % 4 or len(fields) != 4 or any(len(f) != M.n_cols // 4 for f in fields):
        raise ValueError("triple does not induce four equal fields")
    return FieldStructure((i, j, k), fields)


def field_sums(M: SignMatrix, fs: FieldStructure, r: int) -> tuple[int, int, int, int]:
    if r in fs.triple:
        raise ValueError(f"row {r} belongs to the triple {fs.triple}")
    row = M.array[r].astype(np.int64)
    return tuple(int(row[list(f)].sum()) for f in fs.fields)


def sylvester(k: int) -> SignMatrix:
    """Sylvester Hadamard matrix of order 2**k."""
    a = np.array([[1]], dtype=np.int8)
    for _ in range(k):
        a = np.block([[a, a], [a, -a]])
    return SignMatrix._wrap(a)
