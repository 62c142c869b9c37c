"""Tensor-product codes C_col (x) C_row and their pseudo-parity check matrix.

Grid cells map to codeword coordinates row-major: cell (i, j) has index
i*n + j (0-based), matching a codeword written out row by row.  The
pseudo-parity matrix stacks all column constraints (a rows per grid column)
over a block diagonal of row-code parity matrices (b rows per grid row),
giving (a*n + b*m) x (m*n) in total.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import (DimensionMismatch, Inconsistent, InconsistentWord,
                     MixedFields, NotIrreducible, RankDeficient, Uncorrectable,
                     UnsupportedGlobalParities)
from .galois import FieldSpec
from .gfmatrix import GFMatrix, rank, solve_unique
from .patterns import ErasurePattern, Topology, is_irreducible


@dataclass(frozen=True)
class TensorCode:
    """A tensor product code given by its column and row parity-check matrices."""

    topology: Topology
    h_col: GFMatrix
    h_row: GFMatrix

    def __post_init__(self):
        t = self.topology
        if self.h_col.spec != self.h_row.spec:
            raise ValueError("h_col and h_row live in different fields")
        if (self.h_col.rows, self.h_col.cols) != (t.a, t.m):
            raise ValueError(f"h_col must be {t.a}x{t.m}")
        if (self.h_row.rows, self.h_row.cols) != (t.b, t.n):
            raise ValueError(f"h_row must be {t.b}x{t.n}")
        if rank(self.h_col) != t.a or rank(self.h_row) != t.b:
            raise ValueError("parity-check matrices must have full row rank")

    @property
    def spec(self) -> FieldSpec:
        return self.h_col.spec

    @classmethod
    def simple_parity_col(cls, topology: Topology, h_row: GFMatrix) -> "TensorCode":
        """Code with the all-ones single column parity (a = 1 normal form)."""
        if topology.a != 1:
            raise ValueError("simple parity column code requires a = 1")
        ones = GFMatrix(h_row.spec, [[1] * topology.m])
        return cls(topology, ones, h_row)

    def cell_index(self, i: int, j: int) -> int:
        return i * self.topology.n + j

    def to_dict(self) -> dict:
        t = self.topology
        return {"field": self.spec.to_dict(), "m": t.m, "n": t.n, "a": t.a, "b": t.b,
                "h_col": self.h_col.to_dict(), "h_row": self.h_row.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> "TensorCode":
        topo = Topology(d["m"], d["n"], d["a"], d["b"])
        return cls(topo, GFMatrix.from_dict(d["h_col"]), GFMatrix.from_dict(d["h_row"]))


@dataclass(frozen=True)
class GridWord:
    """An m x n array of symbols with some cells erased (None)."""

    entries: tuple  # tuple of row tuples; None marks an erased cell
    erased: frozenset

    @classmethod
    def of(cls, entries, erased=None) -> "GridWord":
        rows = tuple(tuple(row) for row in entries)
        if erased is None:
            er = frozenset((i, j) for i, r in enumerate(rows)
                           for j, x in enumerate(r) if x is None)
        else:
            er = frozenset((int(i), int(j)) for i, j in erased)
        rows = tuple(tuple(None if (i, j) in er else x for j, x in enumerate(r))
                     for i, r in enumerate(rows))
        for (i, j) in er:
            if not (0 <= i < len(rows) and rows and 0 <= j < len(rows[0])):
                raise ValueError(f"erased cell {(i, j)} out of bounds")
        return cls(rows, er)

    def to_dict(self) -> dict:
        return {"entries": [[x for x in row] for row in self.entries],
                "erased": [[i, j] for i, j in sorted(self.erased)]}

    @classmethod
    def from_dict(cls, d: dict) -> "GridWord":
        return cls.of(d["entries"], d.get("erased"))


@lru_cache(maxsize=64)
def build_pseudo_parity(code: TensorCode) -> GFMatrix:
    """The (a*n + b*m) x (m*n) matrix of all row and column parity constraints."""
    t = code.topology
    if t.h != 0:
        raise UnsupportedGlobalParities("pseudo-parity matrix requires h = 0")
    m, n, a, b = t.m, t.n, t.a, t.b
    spec = code.spec
    rows = []
    # column constraints: a rows per grid column j, coefficient alpha_i^(k) at cell (i, j)
    for j in range(n):
        for k in range(a):
            row = [0] * (m * n)
            for i in range(m):
                row[i * n + j] = code.h_col[k, i]
            rows.append(row)
    # row constraints: b rows per grid row i, h_row copied into the i-th block
    for i in range(m):
        for k in range(b):
            row = [0] * (m * n)
            hr = code.h_row.row(k)
            row[i * n:(i + 1) * n] = list(hr)
            rows.append(row)
    return GFMatrix(spec, rows)


def _pattern_columns(code: TensorCode, e: ErasurePattern) -> list[int]:
    t = code.topology
    if not e.in_bounds(t.m, t.n):
        raise ValueError("pattern exceeds grid bounds")
    return [i * t.n + j for i, j in sorted(e.cells)]


def is_correctable_by(code: TensorCode, e: ErasurePattern, method: str = "auto") -> bool:
    """True iff the pseudo-parity matrix restricted to e has full column rank.

    For a = 1 codes with an all-nonzero column parity and an irreducible
    pattern, rank(H|_E) = |V_E| + rank(B) for the reduced block B, so the
    predicate is evaluated on B; "direct" forces plain elimination on H|_E.
    """
    if not e.cells:
        return True
    t = code.topology
    if (method != "direct" and t.a == 1
            and all(code.h_col[0, i] for i in range(t.m))
            and is_irreducible(t, e)):
        b_block = reduce_restricted(code, e)
        return rank(b_block) == len(e.cells) - len(e.cols_used)
    h = build_pseudo_parity(code)
    restricted = h.restrict_columns(_pattern_columns(code, e))
    return rank(restricted) == len(e.cells)


def encode(code: TensorCode, message) -> GridWord:
    """Systematic encoding: message fills the first (m-a) x (n-b) cells.

    The information set is U x V with U the first m-a rows and V the first
    n-b columns (parity positions last); the remaining cells are the unique
    completion satisfying every row and column parity.
    """
    t = code.topology
    spec = code.spec
    msg = []
    for x in message:
        if hasattr(x, "spec"):
            if x.spec != spec:
                raise MixedFields("message symbols from a different field")
            msg.append(x.value)
        else:
            msg.append(spec.validate(x))
    ku, kv = t.m - t.a, t.n - t.b
    if len(msg) != ku * kv:
        raise DimensionMismatch(f"message length must be {ku * kv}")
    h = build_pseudo_parity(code)
    info = [(i, j) for i in range(ku) for j in range(kv)]
    parity = [(i, j) for i in range(t.m) for j in range(t.n)
              if not (i < ku and j < kv)]
    known = {cell: msg[k] for k, cell in enumerate(info)}
    rhs = []
    for hrow in h.data:
        acc = 0
        for (i, j), val in known.items():
            c = hrow[i * t.n + j]
            if c and val:
                acc = spec.add(acc, spec.mul(c, val))
        rhs.append(spec.neg(acc))
    sub = h.restrict_columns([i * t.n + j for i, j in parity])
    sol = solve_unique(sub, rhs)
    grid = [[0] * t.n for _ in range(t.m)]
    for (i, j), val in known.items():
        grid[i][j] = val
    for (i, j), val in zip(parity, sol):
        grid[i][j] = val
    return GridWord.of(grid, erased=())


def erase(word: GridWord, e: ErasurePattern) -> GridWord:
    """Mark the pattern's cells as erased."""
    rows = [list(r) for r in word.entries]
    if not e.in_bounds(len(rows), len(rows[0]) if rows else 0):
        raise ValueError("pattern exceeds the word grid")
    for i, j in e.cells:
        rows[i][j] = None
    return GridWord.of(rows)


def decode(code: TensorCode, word: GridWord):
    """Fill erased cells by solving the restricted parity system.

    Returns the completed m x n tuple-of-tuples.  Raises InconsistentWord when
    the known symbols violate the parities, Uncorrectable when the erased
    positions are not uniquely determined.
    """
    t = code.topology
    spec = code.spec
    if len(word.entries) != t.m or any(len(r) != t.n for r in word.entries):
        raise DimensionMismatch("word shape differs from the topology grid")
    for row in word.entries:
        for v in row:
            if v is not None:
                spec.validate(v)
    erased = sorted(word.erased)
    h = build_pseudo_parity(code)
    rhs = []
    for hrow in h.data:
        acc = 0
        for i in range(t.m):
            row = word.entries[i]
            base = i * t.n
            for j in range(t.n):
                v = row[j]
                if v:
                    c = hrow[base + j]
                    if c:
                        acc = spec.add(acc, spec.mul(c, v))
        rhs.append(spec.neg(acc))
    if not erased:
        if any(rhs):
            raise InconsistentWord("known symbols violate the parity checks")
        return word.entries
    sub = h.restrict_columns([i * t.n + j for i, j in erased])
    try:
        sol = solve_unique(sub, rhs)
    except Inconsistent as exc:
        raise InconsistentWord(str(exc)) from exc
    except RankDeficient as exc:
        raise Uncorrectable(str(exc)) from exc
    grid = [list(r) for r in word.entries]
    for (i, j), val in zip(erased, sol):
        grid[i][j] = val
    return tuple(tuple(r) for r in grid)


def reduce_restricted(code: TensorCode, e: ErasurePattern) -> GFMatrix:
    """Eliminate the identity part of H|_E, returning the u0*b x (|E|-v0) block B.

    One pivot cell per erased column (the least row) clears the column
    constraints; each remaining cell (i, j) with pivot (i0, j) leaves the
    row-code column h_j in row block i and -(alpha_i/alpha_i0) * h_j in row
    block i0.  rank(H|_E) = v0 + rank(B).
    """
    t = code.topology
    if t.a != 1:
        raise ValueError("the reduction is defined for a = 1 topologies")
    if not is_irreducible(t, e):
        raise NotIrreducible("pattern has a lightly erased row or column")
    if not e.cells:
        raise NotIrreducible("empty pattern")
    spec = code.spec
    alphas = code.h_col.row(0)
    u_rows = e.rows_used
    block = {i: k for k, i in enumerate(u_rows)}
    by_col: dict[int, list[int]] = {}
    for i, j in sorted(e.cells):
        by_col.setdefault(j, []).append(i)
    b = t.b
    cols = []
    for j in sorted(by_col):
        rows_in_col = by_col[j]
        i0 = rows_in_col[0]
        hj = code.h_row.column(j)
        for i in rows_in_col[1:]:
            col = [0] * (len(u_rows) * b)
            factor = spec.neg(spec.div(alphas[i], alphas[i0]))
            for k in range(b):
                col[block[i] * b + k] = hj[k]
                col[block[i0] * b + k] = spec.mul(factor, hj[k])
            cols.append(col)
    return GFMatrix(spec, list(zip(*cols)) if cols else [[] for _ in range(len(u_rows) * b)])
