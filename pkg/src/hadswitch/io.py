"""Text formats for sign matrices and loop graphs, plus Sloane directory ingestion.

Matrix formats:
  plusminus   one row per line, characters '+' and '-'
  paperstyle  one row per line, whitespace-separated tokens '1' and '-'
Blank lines separate consecutive matrices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .loopgraph import LoopGraph
from .signmatrix import NotHadamardError, SignMatrix, require_hadamard

FORMATS = ("plusminus", "paperstyle")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


def _parse_row(text: str, lineno: int, fmt: str) -> list[int]:
    if fmt == "plusminus":
        row = []
        for col, ch in enumerate(text, start=1):
            if ch == "+":
                row.append(1)
            elif ch == "-":
                row.append(-1)
            elif ch in " \t\r":
                continue
            else:
                raise ParseError(f"illegal character {ch!r}", lineno, col)
        return row
    if fmt == "paperstyle":
        row = []
        for m in re.finditer(r"\S+", text):
            tok = m.group()
            if tok == "1":
                row.append(1)
            elif tok == "-":
                row.append(-1)
            else:
                raise ParseError(f"illegal token {tok!r}", lineno, m.start() + 1)
        return row
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def parse_matrices(text: str, fmt: str = "plusminus") -> list[SignMatrix]:
    """All matrices in ``text``; raises ParseError with a 1-based line/column."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    blocks: list[list[list[int]]] = []
    current: list[list[int]] = []
    width = None
    start = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            if current:
                blocks.append(current)
                current = []
            continue
        row = _parse_row(line, lineno, fmt)
        if not current:
            width, start = len(row), lineno
        elif len(row) != width:
            raise ParseError(f"ragged row: {len(row)} entries, expected {width} (matrix starting at line {start})", lineno)
        current.append(row)
    if current:
        blocks.append(current)
    return [SignMatrix(b) for b in blocks]


def parse_matrix(text: str, fmt: str = "plusminus") -> SignMatrix:
    ms = parse_matrices(text, fmt)
    if len(ms) != 1:
        raise ParseError(f"expected exactly one matrix, found {len(ms)}")
    return ms[0]


def emit_matrix(M: SignMatrix, fmt: str = "plusminus") -> str:
    a = M.array
    if fmt == "plusminus":
        lines = ["".join("+" if x > 0 else "-" for x in row) for row in a]
    elif fmt == "paperstyle":
        lines = [" ".join("1" if x > 0 else "-" for x in row) for row in a]
    else:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    return "\n".join(lines) + "\n"


def read_matrix(path, fmt: str = "plusminus") -> SignMatrix:
    return parse_matrix(Path(path).read_text(), fmt)


def emit_graph(G: LoopGraph) -> str:
    """``vertices N`` header, then ``idx loop_flag: neighbours`` per vertex."""
    lines = [f"vertices {G.n}"]
    loops = G.loops
    for v in range(G.n):
        nb = " ".join(str(u) for u in G.neighbors(v))
        lines.append(f"{v} {int(loops[v])}: {nb}".rstrip())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> LoopGraph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("vertices "):
        raise ParseError("missing 'vertices N' header", 1)
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise ParseError("bad vertex count", 1) from None
    adj = np.zeros((n, n), dtype=bool)
    seen = set()
    for lineno, line in enumerate(lines[1:], start=2):
        head, sep, tail = line.partition(":")
        parts = head.split()
        if not sep or len(parts) != 2:
            raise ParseError("expected 'idx loop_flag: neighbours'", lineno)
        try:
            v, flag = int(parts[0]), int(parts[1])
            nbs = [int(x) for x in tail.split()]
        except ValueError:
            raise ParseError("non-integer field", lineno) from None
        if not 0 <= v < n or flag not in (0, 1) or any(not 0 <= u < n or u == v for u in nbs):
            raise ParseError("index or loop flag out of range", lineno)
        seen.add(v)
        adj[v, v] = bool(flag)
        adj[v, nbs] = True
    if len(seen) != n:
        raise ParseError(f"expected {n} vertex lines, got {len(seen)}")
    if not np.array_equal(adj, adj.T):
        raise ParseError("adjacency lists are not symmetric")
    return LoopGraph(adj)


@dataclass
class SloaneIngest:
    matrices: dict[str, SignMatrix] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)


def ingest_sloane(directory, fmt: str = "plusminus") -> SloaneIngest:
    """Parse and verify every file in ``directory``; failures are collected per file.

    A file holding several matrices registers them as ``name#1``, ``name#2``, ...
    """
    out = SloaneIngest()
    for path in sorted(Path(directory).iterdir()):
        if not path.is_file() or path.name.startswith("."):
            continue
        try:
            ms = parse_matrices(path.read_text(), fmt)
            if not ms:
                raise ParseError("no matrix found")
            for M in ms:
                require_hadamard(M)
        except (ParseError, NotHadamardError, ValueError, UnicodeDecodeError) as exc:
            out.errors[path.name] = str(exc)
            continue
        if len(ms) == 1:
            out.matrices[path.name] = ms[0]
        else:
            for k, M in enumerate(ms, start=1):
                out.matrices[f"{path.name}#{k}"] = M
    return out
