"""Undirected graphs with optional loops, exact spectra and canonical labeling."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

DEFAULT_BUDGET = 10**7


class InconclusiveError(RuntimeError):
    """Raised when the canonical labeling search exceeds its step budget."""

    def __init__(self, message: str, steps: int):
        super().__init__(message)
        self.steps = steps


class LoopGraph:
    """Simple graph on vertices 0..n-1 where each vertex may carry a loop."""

    __slots__ = ("_adj", "_hash")

    def __init__(self, adjacency):
        a = np.array(adjacency, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency must be symmetric")
        a.setflags(write=False)
        self._adj = a
        self._hash = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], loops: Iterable[int] = ()) -> "LoopGraph":
        a = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            a[u, v] = a[v, u] = True
        for v in loops:
            a[v, v] = True
        return cls(a)

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    @property
    def adjacency(self) -> np.ndarray:
        return self._adj

    @property
    def loops(self) -> np.ndarray:
        return np.diagonal(self._adj).copy()

    def neighbors(self, v: int) -> list[int]:
        """Neighbours of ``v`` other than ``v`` itself."""
        row = self._adj[v].copy()
        row[v] = False
        return [int(u) for u in np.flatnonzero(row)]

    def degrees(self) -> np.ndarray:
        """Neighbour counts, loops excluded."""
        return self._adj.sum(axis=1) - self.loops

    def relabel(self, perm) -> "LoopGraph":
        """Graph in which vertex ``v`` is renamed ``perm[v]``."""
        perm = np.asarray(perm)
        inv = np.argsort(perm)
        return LoopGraph(self._adj[np.ix_(inv, inv)])

    def __eq__(self, other):
        if not isinstance(other, LoopGraph):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self._adj, other._adj))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, np.packbits(self._adj).tobytes()))
        return self._hash

    def __repr__(self):
        e = int(np.triu(self._adj, 1).sum())
        return f"LoopGraph(n={self.n}, edges={e}, loops={int(self.loops.sum())})"


# ---------------------------------------------------------------------------
# characteristic polynomial
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CharPoly:
    """Monic integer polynomial, coefficients listed from the leading term down."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self):
        d = self.degree
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = d - k
            mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            mag = abs(c)
            body = f"{mag}{mono}" if (mag != 1 or not mono) else mono
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    for q in range(2, math.isqrt(m) + 1):
        if m % q == 0:
            return False
    return True


@lru_cache(maxsize=None)
def _prime(i: int, bits: int = 31) -> int:
    """The i-th prime below 2**bits, counting down."""
    p = _prime(i - 1, bits) - 2 if i else 2**bits - 1
    while not _is_prime(p):
        p -= 2
    return p


def _prime_bits(n: int) -> int:
    # n products of two residues must sum without leaving int64
    return min(31, (62 - (n + 1).bit_length()) // 2)


def coefficient_bound(a: np.ndarray) -> int:
    """Upper bound on |c_k| for the characteristic polynomial of a 0/1 matrix.

    c_k sums C(V, k) principal minors and each minor is bounded by the product of
    its row norms, so |c_k| <= C(V, k) * sqrt(product of the k largest row weights).
    """
    v = a.shape[0]
    weights = sorted((int(x) for x in a.sum(axis=1)), reverse=True)
    best = 1
    prod = 1
    for k in range(1, v + 1):
        prod *= weights[k - 1]
        if prod == 0:
            break
        best = max(best, math.comb(v, k) ** 2 * prod)
    return math.isqrt(best) + 1


def _hessenberg_charpoly_mod(a: np.ndarray, primes: list[int]) -> np.ndarray:
    """Characteristic polynomial modulo each prime, as rows of coefficients x^0..x^n.

    All primes are processed together along the leading axis; pivots are chosen
    per prime. Primes must satisfy n * p**2 < 2**63 so dot products stay exact.
    """
    k, n = len(primes), a.shape[0]
    P = np.array(primes, dtype=np.int64)
    P1, P2 = P[:, None], P[:, None, None]
    h = np.asarray(a, dtype=np.int64)[None] % P2
    ar = np.arange(k)
    for j in range(n - 2):
        piv = j + 1 + (h[:, j + 1 :, j] != 0).argmax(axis=1)
        if np.any(piv != j + 1):
            rows = h[ar, piv, :].copy()
            h[ar, piv, :] = h[:, j + 1, :]
            h[:, j + 1, :] = rows
            cols = h[ar, :, piv].copy()
            h[ar, :, piv] = h[:, :, j + 1]
            h[:, :, j + 1] = cols
        pv = h[:, j + 1, j]
        inv = np.array([pow(int(x), q - 2, q) if x else 0 for x, q in zip(pv, primes)], dtype=np.int64)
        u = h[:, j + 2 :, j] * inv[:, None] % P1
        if not u.any():
            continue
        # rows below j+1 are already zero left of column j
        h[:, j + 2 :, j:] = (h[:, j + 2 :, j:] - u[:, :, None] * h[:, j + 1, None, j:]) % P2
        h[:, :, j + 1] = (h[:, :, j + 1] + np.einsum("kir,kr->ki", h[:, :, j + 2 :], u)) % P1

    # p_m(x) = (x - h_mm) p_{m-1}(x) - sum_i h_im * prod(sub_i+1..m) * p_{i-1}(x)
    polys = np.zeros((k, n + 1, n + 1), dtype=np.int64)
    polys[:, 0, 0] = 1
    diag = h[:, np.arange(n), np.arange(n)]
    sub = np.zeros((k, n), dtype=np.int64)
    sub[:, 1:] = h[:, np.arange(1, n), np.arange(n - 1)]
    t = np.zeros((k, n), dtype=np.int64)
    for m in range(1, n + 1):
        prev = polys[:, m - 1]
        cur = np.zeros((k, n + 1), dtype=np.int64)
        cur[:, 1:] = prev[:, :-1]
        cur -= diag[:, m - 1, None] * prev
        if m > 1:
            # t[:, i] = sub_i * sub_{i+1} * ... * sub_{m-1}
            t[:, 1 : m - 1] = t[:, 1 : m - 1] * sub[:, m - 1, None] % P1
            t[:, m - 1] = sub[:, m - 1]
            w = h[:, : m - 1, m - 1] * t[:, 1:m] % P1
            cur -= np.einsum("ki,kin->kn", w, polys[:, : m - 1, :]) % P1
        polys[:, m] = cur % P1
    return polys[:, n]


def char_poly(G: LoopGraph) -> CharPoly:
    """Exact characteristic polynomial det(xI - A) of the adjacency matrix.

    Computed modulo enough word-size primes to exceed twice the coefficient
    bound, then lifted with the Chinese remainder theorem.
    """
    a = G.adjacency.astype(np.int64)
    n = a.shape[0]
    if n == 0:
        return CharPoly((1,))
    bound = 2 * coefficient_bound(a) + 1
    bits = _prime_bits(n)
    primes = []
    modulus = 1
    while modulus <= bound:
        primes.append(_prime(len(primes), bits))
        modulus *= primes[-1]
    table = _hessenberg_charpoly_mod(a, primes)
    residues = [0] * (n + 1)
    modulus = 1
    for p, r in zip(primes, table.tolist()):
        # combine x = residues (mod modulus) with r (mod p)
        inv = pow(modulus % p, -1, p)
        residues = [x + modulus * ((ri - x) * inv % p) for x, ri in zip(residues, r)]
        modulus *= p
    half = modulus // 2
    coeffs = [x - modulus if x > half else x for x in residues]
    return CharPoly(tuple(reversed(coeffs)))


def cospectral(G1: LoopGraph, G2: LoopGraph) -> bool:
    return G1.n == G2.n and char_poly(G1) == char_poly(G2)


# ---------------------------------------------------------------------------
# canonical labeling
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CanonicalForm:
    """Canonically relabeled adjacency plus the relabeling that produced it.

    ``relabeling[v]`` is the canonical position of input vertex ``v``. Two
    forms compare equal when their canonical adjacencies are identical.
    """

    n: int
    key: bytes
    relabeling: tuple[int, ...]

    @property
    def adjacency(self) -> np.ndarray:
        bits = np.unpackbits(np.frombuffer(self.key, dtype=np.uint8))[: self.n * self.n]
        return bits.reshape(self.n, self.n).astype(bool)

    def graph(self) -> LoopGraph:
        return LoopGraph(self.adjacency)

    def __eq__(self, other):
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return self.n == other.n and self.key == other.key

    def __hash__(self):
        return hash((self.n, self.key))


class _Partition:
    """Ordered partition in nauty style: ``lab`` lists vertices by position and
    cells are identified by their start position."""

    __slots__ = ("lab", "cell_end")

    def __init__(self, lab: np.ndarray, cell_end: np.ndarray):
        self.lab = lab
        self.cell_end = cell_end  # cell_end[s] = end (exclusive) if s starts a cell, else -1

    def copy(self) -> "_Partition":
        return _Partition(self.lab.copy(), self.cell_end.copy())

    def starts(self) -> np.ndarray:
        return np.flatnonzero(self.cell_end >= 0)

    def is_discrete(self) -> bool:
        return bool(np.all(self.cell_end >= 0))


class _Canonizer:
    def __init__(self, adj: np.ndarray, budget: int):
        self.adj = adj.astype(np.int32)
        self.n = adj.shape[0]
        self.budget = budget
        self.steps = 0
        self.generators: list[np.ndarray] = []
        self.first = None
        self.best = None

    # -- refinement --------------------------------------------------------

    def refine(self, part: _Partition, pending: set[int]) -> tuple:
        """Refine ``part`` in place to an equitable partition; returns the trace."""
        lab, cell_end, adj = part.lab, part.cell_end, self.adj
        trace: list[int] = []
        while pending:
            s = min(pending)
            pending.discard(s)
            self.steps += 1
            if self.steps > self.budget:
                raise InconclusiveError(
                    f"canonical labeling exceeded budget of {self.budget} refinement steps", self.steps
                )
            e = cell_end[s]
            counts = adj[:, lab[s:e]].sum(axis=1)[lab]
            starts = np.flatnonzero(cell_end >= 0)
            lo = np.minimum.reduceat(counts, starts)
            hi = np.maximum.reduceat(counts, starts)
            split = starts[lo != hi]
            trace.append(-1)
            trace.append(int(s))
            for c in split.tolist():
                ce = int(cell_end[c])
                seg = counts[c:ce]
                order = np.argsort(seg, kind="stable")
                lab[c:ce] = lab[c:ce][order]
                vals = seg[order]
                bounds = np.flatnonzero(np.diff(vals)) + 1
                frag_starts = [c] + [c + int(b) for b in bounds]
                frag_ends = frag_starts[1:] + [ce]
                sizes = [fe - fs for fs, fe in zip(frag_starts, frag_ends)]
                for fs, fe in zip(frag_starts, frag_ends):
                    cell_end[fs] = fe
                trace.append(c)
                trace.extend(int(x) for x in vals[np.r_[0, bounds]])
                trace.extend(sizes)
                if c in pending:
                    pending.update(frag_starts)
                else:
                    big = frag_starts[int(np.argmax(sizes))]
                    pending.update(fs for fs in frag_starts if fs != big)
        # cell structure closes the trace so equal traces imply equal shapes
        trace.append(-2)
        trace.extend(int(x) for x in np.flatnonzero(cell_end >= 0))
        return tuple(trace)

    def individualize(self, part: _Partition, v: int, s: int) -> tuple[_Partition, int]:
        child = part.copy()
        lab = child.lab
        e = int(child.cell_end[s])
        pos = s + int(np.flatnonzero(lab[s:e] == v)[0])
        lab[s], lab[pos] = lab[pos], lab[s]
        child.cell_end[s] = s + 1
        child.cell_end[s + 1] = e
        return child, s

    # -- automorphisms -----------------------------------------------------

    def orbits_fixing(self, fixed: list[int]) -> np.ndarray:
        gens = [g for g in self.generators if all(g[x] == x for x in fixed)]
        orb = np.arange(self.n)
        if not gens:
            return orb
        while True:
            old = orb.copy()
            for g in gens:
                # orb[v] and orb[g[v]] must agree
                m = np.minimum(orb, orb[g])
                np.minimum.at(orb, g, m)
                orb = np.minimum(orb, m)
            orb = orb[orb]
            if np.array_equal(orb, old):
                return orb

    # -- search ------------------------------------------------------------

    def run(self, initial: _Partition):
        pending = set(initial.starts().tolist())
        trace = self.refine(initial, pending)
        self.search(initial, (trace,), [])
        return self.best

    def search(self, part: _Partition, traces: tuple, path: list[int]):
        level = len(path)
        if self.best is not None:
            cmp = traces[: level + 1]
            ref = self.best["traces"][: level + 1]
            if cmp < ref:
                return None
        if part.is_discrete():
            return self.leaf(part, traces, path)

        starts = part.starts()
        target = int(starts[part.cell_end[starts] - starts > 1][0])
        cell = sorted(int(x) for x in part.lab[target : part.cell_end[target]])

        explored: list[int] = []
        n_gens = -1
        orb = None
        for v in cell:
            if explored:
                if n_gens != len(self.generators):
                    n_gens = len(self.generators)
                    orb = self.orbits_fixing(path)
                if orb[v] in {orb[u] for u in explored}:
                    continue
            explored.append(v)
            child, s = self.individualize(part, v, target)
            trace = self.refine(child, {s})
            jump = self.search(child, traces + (trace,), path + [v])
            if jump is not None and jump < level:
                return jump
        return None

    def leaf(self, part: _Partition, traces: tuple, path: list[int]):
        lab = part.lab
        key = np.packbits(self.adj[np.ix_(lab, lab)].astype(bool)).tobytes()
        rec = {"traces": traces, "key": key, "lab": lab.copy(), "path": list(path)}
        if self.first is None:
            self.first = self.best = rec
            return None
        for ref in (self.first, self.best):
            if ref["traces"] == traces and ref["key"] == key:
                gen = np.empty(self.n, dtype=np.int64)
                gen[lab] = ref["lab"]
                self.generators.append(gen)
                common = 0
                for a, b in zip(path, ref["path"]):
                    if a != b:
                        break
                    common += 1
                return common
        if (traces, key) > (self.best["traces"], self.best["key"]):
            self.best = rec
        return None


def canonical_form(G: LoopGraph, budget: int = DEFAULT_BUDGET) -> CanonicalForm:
    """Canonical relabeling by colour refinement with individualization.

    Loops give the initial two-colouring (loopless vertices first). The target
    cell is the first non-singleton cell and its vertices are tried in
    ascending order; automorphisms found at leaves prune equivalent branches.
    Raises ``InconclusiveError`` when more than ``budget`` refinement steps
    are needed.
    """
    n = G.n
    if n == 0:
        return CanonicalForm(0, b"", ())
    loops = G.loops
    lab = np.concatenate([np.flatnonzero(~loops), np.flatnonzero(loops)]).astype(np.int64)
    cell_end = np.full(n, -1, dtype=np.int64)
    k = int((~loops).sum())
    if k > 0:
        cell_end[0] = k
    if k < n:
        cell_end[k] = n
    canon = _Canonizer(G.adjacency, budget)
    best = canon.run(_Partition(lab, cell_end))
    relabeling = np.empty(n, dtype=np.int64)
    relabeling[best["lab"]] = np.arange(n)
    return CanonicalForm(n, best["key"], tuple(int(x) for x in relabeling))


def degree_signature(G: LoopGraph) -> tuple:
    loops = G.loops
    deg = G.degrees()
    return (G.n, int(loops.sum()), tuple(sorted(zip(loops.tolist(), deg.tolist()))))


def isomorphic(G1: LoopGraph, G2: LoopGraph, budget: int = DEFAULT_BUDGET) -> bool:
    if degree_signature(G1) != degree_signature(G2):
        return False
    if char_poly(G1) != char_poly(G2):
        return False
    return canonical_form(G1, budget) == canonical_form(G2, budget)
