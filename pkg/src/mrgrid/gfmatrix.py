"""Dense exact linear algebra over a finite field.

Matrices are immutable (tuple-of-tuples of raw ints plus a FieldSpec);
elimination always works on private row copies.  Pivoting takes the first
nonzero entry in column order, so every result is deterministic.
"""

from __future__ import annotations

from itertools import combinations

from .errors import Inconsistent, MixedFields, RankDeficient, ResourceGuard
from .galois import FieldSpec

MDS_TEST_MAX_COLS = 64
MDS_TEST_MAX_W = 6


class GFMatrix:
    __slots__ = ("rows", "cols", "data", "spec")

    def __init__(self, spec: FieldSpec, data):
        rows = tuple(tuple(spec.validate(x) for x in row) for row in data)
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
        else:
            ncols = 0
        self.spec = spec
        self.data = rows
        self.rows = len(rows)
        self.cols = ncols

    @classmethod
    def zeros(cls, spec: FieldSpec, rows: int, cols: int) -> "GFMatrix":
        return cls(spec, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "GFMatrix":
        return cls(spec, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int):
        return self.data[i]

    def column(self, j: int):
        return tuple(r[j] for r in self.data)

    def transpose(self) -> "GFMatrix":
        return GFMatrix(self.spec, list(zip(*self.data)) if self.data else [])

    def restrict_columns(self, cols) -> "GFMatrix":
        cols = list(cols)
        return GFMatrix(self.spec, [[r[j] for j in cols] for r in self.data])

    def matmul(self, other: "GFMatrix") -> "GFMatrix":
        if self.spec != other.spec:
            raise MixedFields("matrix product across different fields")
        if self.cols != other.rows:
            raise ValueError("inner dimensions differ")
        mul, add = self.spec.mul, self.spec.add
        ot = list(zip(*other.data))
        out = []
        for r in self.data:
            out_row = []
            for c in ot:
                acc = 0
                for x, y in zip(r, c):
                    if x and y:
                        acc = add(acc, mul(x, y))
                out_row.append(acc)
            out.append(out_row)
        return GFMatrix(self.spec, out)

    def mul_vector(self, vec):
        if len(vec) != self.cols:
            raise ValueError("vector length differs from column count")
        mul, add = self.spec.mul, self.spec.add
        out = []
        for r in self.data:
            acc = 0
            for x, y in zip(r, vec):
                if x and y:
                    acc = add(acc, mul(x, y))
            out.append(acc)
        return out

    def to_dict(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "field": self.spec.to_dict(), "data": [list(r) for r in self.data]}

    @classmethod
    def from_dict(cls, d: dict) -> "GFMatrix":
        return cls(FieldSpec.from_dict(d["field"]), d["data"])

    def __eq__(self, other):
        return (isinstance(other, GFMatrix) and self.spec == other.spec
                and self.data == other.data)

    def __hash__(self):
        return hash((self.spec, self.data))

    def __repr__(self):
        return f"GFMatrix({self.spec}, {self.rows}x{self.cols})"


def _echelon(rows: list[list[int]], spec: FieldSpec, pivot_cols: int, reduced: bool):
    """In-place forward elimination; returns pivot column list."""
    mul, sub, inv = spec.mul, spec.sub, spec.inv
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(pivot_cols):
        pivot = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pivot is None:
            continue
        if pivot != r:
            rows[r], rows[pivot] = rows[pivot], rows[r]
        prow = rows[r]
        piv_inv = inv(prow[c])
        if piv_inv != 1:
            rows[r] = prow = [mul(piv_inv, x) for x in prow]
        rng = range(nrows) if reduced else range(r + 1, nrows)
        for i in rng:
            if i == r:
                continue
            f = rows[i][c]
            if f:
                row_i = rows[i]
                rows[i] = [sub(x, mul(f, y)) for x, y in zip(row_i, prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rank(m: GFMatrix) -> int:
    """Rank over GF(q) via exact Gaussian elimination."""
    rows = [list(r) for r in m.data]
    return len(_echelon(rows, m.spec, m.cols, reduced=False))


def determinant(m: GFMatrix) -> int:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    spec = m.spec
    rows = [list(r) for r in m.data]
    mul, sub, div = spec.mul, spec.sub, spec.div
    det = 1
    n = m.rows
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c]), None)
        if pivot is None:
            return 0
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = spec.neg(det)
        p = rows[c][c]
        det = mul(det, p)
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                ratio = div(f, p)
                rows[i] = [sub(x, mul(ratio, y)) for x, y in zip(rows[i], rows[c])]
    return det


def solve_unique(m: GFMatrix, rhs):
    """The unique x with m.x = rhs; full column rank required."""
    if len(rhs) != m.rows:
        raise ValueError("rhs length differs from row count")
    spec = m.spec
    rows = [list(r) + [spec.validate(v)] for r, v in zip(m.data, rhs)]
    if m.rows == 0:
        if m.cols == 0:
            return []
        raise RankDeficient("no equations but unknowns present")
    pivots = _echelon(rows, spec, m.cols, reduced=True)
    for r in rows[len(pivots):]:
        if r[m.cols]:
            raise Inconsistent("no solution: contradictory equations")
    if len(pivots) < m.cols:
        raise RankDeficient(f"column rank {len(pivots)} < {m.cols}")
    sol = [0] * m.cols
    for i, c in enumerate(pivots):
        sol[c] = rows[i][m.cols]
    return sol


def null_space_basis(m: GFMatrix) -> GFMatrix:
    """Rows form a basis of the right kernel {x : m.x = 0}."""
    spec = m.spec
    rows = [list(r) for r in m.data]
    pivots = _echelon(rows, spec, m.cols, reduced=True)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [0] * m.cols
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = spec.neg(rows[i][fc])
        basis.append(vec)
    return GFMatrix(spec, basis)


def every_w_columns_independent(m: GFMatrix, w: int) -> bool:
    """True iff every w-subset of columns has rank w (MDS test at w = rows)."""
    if not 1 <= w <= m.rows:
        raise ValueError("w must be in [1, rows]")
    if m.cols > MDS_TEST_MAX_COLS or w > MDS_TEST_MAX_W:
        raise ResourceGuard(
            f"subset enumeration guard: cols <= {MDS_TEST_MAX_COLS}, w <= {MDS_TEST_MAX_W}")
    for subset in combinations(range(m.cols), w):
        sub = [[r[j] for j in subset] for r in m.data]
        if len(_echelon(sub, m.spec, w, reduced=False)) < w:
            return False
    return True
