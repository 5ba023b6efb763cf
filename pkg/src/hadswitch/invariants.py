"""Exact equivalence invariants: Smith normal form and 4-row profiles."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .signmatrix import SignMatrix, require_hadamard


@dataclass(frozen=True)
class SnfDiagonal:
    """Invariant factors d_1 | d_2 | ... ; trailing zeros for singular input."""

    factors: tuple[int, ...]

    def __str__(self):
        # run-length form, e.g. "1^1 2^5 4^10"
        runs = []
        for d in self.factors:
            if runs and runs[-1][0] == d:
                runs[-1][1] += 1
            else:
                runs.append([d, 1])
        return " ".join(f"{d}^{k}" for d, k in runs)


def _smith_factors(a: list[list[int]]) -> list[int]:
    m = len(a)
    n = len(a[0]) if m else 0
    out = []
    t = 0
    while t < min(m, n):
        nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    ri, rt = a[i], a[t]
                    for j in range(t, n):
                        ri[j] -= q * rt[j]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for i in range(t, m):
                        a[i][j] -= q * a[i][t]
                if a[t][j]:
                    dirty = True
            if dirty:
                # a smaller remainder appeared in the pivot row/column; move it up
                _, pi, pj = min(
                    [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
                    + [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
                )
                a[t], a[pi] = a[pi], a[t]
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(a[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            # divisibility fix-up: fold the offending row into the pivot row
            for j in range(t, n):
                a[t][j] += a[bad][j]
        out.append(abs(a[t][t]))
        t += 1
    return out + [0] * (min(m, n) - len(out))


def smith_normal_form(M) -> SnfDiagonal:
    """Invariant factors of an integer matrix over the integers.

    Accepts a SignMatrix or any 2-d integer array. Arithmetic uses Python
    integers, so intermediate growth cannot overflow.
    """
    arr = M.array if isinstance(M, SignMatrix) else np.asarray(M)
    if arr.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    a = [[int(x) for x in row] for row in arr]
    return SnfDiagonal(tuple(_smith_factors(a)))


@dataclass(frozen=True)
class Profile4:
    """Histogram of |sum of the 4-row Hadamard product| over all 4-row subsets."""

    histogram: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict[int, int]:
        return dict(self.histogram)

    def total(self) -> int:
        return sum(c for _, c in self.histogram)

    def __str__(self):
        return " ".join(f"{v}:{c}" for v, c in self.histogram)


def profile4(M: SignMatrix) -> Profile4:
    require_hadamard(M)
    n = M.order
    if n < 4:
        raise ValueError(f"4-profile needs n >= 4, got n = {n}")
    a = M.array.astype(np.int64)
    pairs = np.array(list(combinations(range(n), 2)))
    prods = a[pairs[:, 0]] * a[pairs[:, 1]]
    dots = np.abs(prods @ prods.T)
    # each subset i<j<k<l is counted once as the pair (i,j) with the pair (k,l)
    first, second = np.nonzero(pairs[:, 1][:, None] < pairs[:, 0][None, :])
    values, counts = np.unique(dots[first, second], return_counts=True)
    return Profile4(tuple((int(v), int(c)) for v, c in zip(values, counts)))

