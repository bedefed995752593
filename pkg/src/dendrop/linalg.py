"""Dense exact linear algebra: matrices, tensors, elimination.

Vectors are plain tuples of field values.  All routines use exact Gaussian
elimination with a deterministic pivot rule (lowest column index first,
then lowest row), so identical inputs always give identical outputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatchError, NoSolutionError, SingularMatrixError
from .fields import FieldSpec, same_field


# -- vectors -----------------------------------------------------------------

def zero_vector(field: FieldSpec, n: int) -> tuple:
    return (field.zero,) * n


def vec_add(field: FieldSpec, u: Sequence, v: Sequence) -> tuple:
    return tuple(field.add(a, b) for a, b in zip(u, v))


def vec_sub(field: FieldSpec, u: Sequence, v: Sequence) -> tuple:
    return tuple(field.sub(a, b) for a, b in zip(u, v))


def vec_scale(field: FieldSpec, c, v: Sequence) -> tuple:
    return tuple(field.mul(c, a) for a in v)


def vec_is_zero(v: Sequence) -> bool:
    return all(a == 0 for a in v)


def basis_vector(field: FieldSpec, n: int, i: int) -> tuple:
    return tuple(field.one if j == i else field.zero for j in range(n))


# -- matrices ----------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix; ``entries`` is a row-major tuple of tuples."""

    field: FieldSpec
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatchError("ragged rows")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Iterable]) -> "Matrix":
        return cls(field, tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        one, zero = field.one, field.zero
        return cls(field, tuple(tuple(one if i == j else zero for j in range(n))
                                for i in range(n)))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        zero = field.zero
        return cls(field, tuple((zero,) * cols for _ in range(rows)))

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence]) -> "Matrix":
        if not columns:
            return cls(field, ())
        m = len(columns[0])
        return cls(field, tuple(tuple(col[i] for col in columns) for i in range(m)))

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list:
        return [self.col(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, tuple(zip(*self.entries))) if self.entries \
            else Matrix(self.field, ())

    def matvec(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise DimensionMismatchError(f"matvec: {self.cols} cols vs vector of {len(v)}")
        f = self.field
        out = []
        for r in self.entries:
            acc = f.zero
            for a, x in zip(r, v):
                if a != 0 and x != 0:
                    acc = f.add(acc, f.mul(a, x))
            out.append(acc)
        return tuple(out)

    def mul(self, other: "Matrix") -> "Matrix":
        same_field(self.field, other.field)
        if self.cols != other.rows:
            raise DimensionMismatchError(f"mul: {self.cols} vs {other.rows}")
        f = self.field
        ot = other.transpose().entries
        return Matrix(f, tuple(
            tuple(_dot(f, r, c) for c in ot) for r in self.entries))

    __mul__ = mul

    def add(self, other: "Matrix") -> "Matrix":
        same_field(self.field, other.field)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("add: shape mismatch")
        f = self.field
        return Matrix(f, tuple(tuple(f.add(a, b) for a, b in zip(r, s))
                               for r, s in zip(self.entries, other.entries)))

    __add__ = add

    def sub(self, other: "Matrix") -> "Matrix":
        f = self.field
        return self.add(other.scale(f.neg(f.one)))

    __sub__ = sub

    def scale(self, c) -> "Matrix":
        f = self.field
        return Matrix(f, tuple(tuple(f.mul(c, a) for a in r) for r in self.entries))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.entries for a in r)

    def is_identity(self) -> bool:
        if not self.is_square:
            return False
        one = self.field.one
        return all(a == (one if i == j else 0)
                   for i, r in enumerate(self.entries) for j, a in enumerate(r))


def _dot(field: FieldSpec, u: Sequence, v: Sequence):
    acc = field.zero
    for a, b in zip(u, v):
        if a != 0 and b != 0:
            acc = field.add(acc, field.mul(a, b))
    return acc


# -- elimination -------------------------------------------------------------

def _rref(rows: list, field: FieldSpec, col_order: Sequence[int]) -> list:
    """Reduce ``rows`` in place to reduced echelon form along ``col_order``.

    Returns the pivot list [(row, col), ...] in elimination order.  Pivot
    selection is deterministic: first column in ``col_order`` with a nonzero
    entry in the lowest unused row.
    """
    m = len(rows)
    pivots = []
    r = 0
    for c in col_order:
        if r == m:
            break
        pr = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.inv(rows[r][c])
        if inv != field.one:
            rows[r] = [field.mul(inv, a) for a in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [field.sub(a, field.mul(factor, b))
                           for a, b in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
    return pivots


def rank(M: Matrix) -> int:
    rows = [list(r) for r in M.entries]
    return len(_rref(rows, M.field, range(M.cols)))


def kernel_basis(M: Matrix) -> list:
    """Canonical basis of the null space {v : Mv = 0}; empty iff injective."""
    f = M.field
    rows = [list(r) for r in M.entries]
    pivots = _rref(rows, f, range(M.cols))
    pivot_cols = {c: r for r, c in pivots}
    free_cols = [c for c in range(M.cols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        v = [f.zero] * M.cols
        v[fc] = f.one
        for r, c in pivots:
            v[c] = f.neg(rows[r][fc])
        basis.append(tuple(v))
    return basis


def invert(M: Matrix) -> Matrix:
    """Exact inverse; raises ``SingularMatrixError`` when none exists."""
    if not M.is_square:
        raise DimensionMismatchError("invert: matrix not square")
    f = M.field
    n = M.rows
    one, zero = f.one, f.zero
    rows = [list(r) + [one if i == j else zero for j in range(n)]
            for i, r in enumerate(M.entries)]
    pivots = _rref(rows, f, range(n))
    if len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    return Matrix(f, tuple(tuple(rows[i][n:]) for i in range(n)))


def solve(M: Matrix, b: Sequence, pivot_rule: str = "first") -> tuple:
    """Some x with Mx = b, free coordinates set to zero.

    ``pivot_rule`` fixes which coordinates are treated as free: "first"
    eliminates columns left to right (earliest columns become pivots),
    "last" right to left.  Raises ``NoSolutionError`` if b is outside the
    column span.
    """
    if len(b) != M.rows:
        raise DimensionMismatchError("solve: rhs length mismatch")
    if pivot_rule == "first":
        order = range(M.cols)
    elif pivot_rule == "last":
        order = range(M.cols - 1, -1, -1)
    else:
        raise ValueError(f"unknown pivot rule {pivot_rule!r}")
    f = M.field
    rows = [list(r) + [bb] for r, bb in zip(M.entries, b)]
    pivots = _rref(rows, f, order)
    for i in range(len(rows)):
        if rows[i][-1] != 0 and all(a == 0 for a in rows[i][:-1]):
            raise NoSolutionError("rhs not in column span")
    x = [f.zero] * M.cols
    for r, c in pivots:
        x[c] = rows[r][-1]
    return tuple(x)


def in_span(vectors: Sequence[Sequence], v: Sequence, field: FieldSpec) -> bool:
    """Exact membership of v in the linear span of ``vectors``."""
    vecs = [list(u) for u in vectors]
    if not vecs:
        return vec_is_zero(v)
    base = rank(Matrix.from_rows(field, vecs))
    return rank(Matrix.from_rows(field, vecs + [list(v)])) == base


def column_space_basis(M: Matrix) -> list:
    """Canonical (reduced-echelon) basis of the column space of M.

    For invertible M this is the standard basis, which keeps structures
    expressed on an operator's range independent of the operator's own
    column scaling.
    """
    rows = [list(M.col(j)) for j in range(M.cols)]
    pivots = _rref(rows, M.field, range(M.rows))
    return [tuple(rows[r]) for r, _ in pivots]


# -- structure tensors -------------------------------------------------------

@dataclass(frozen=True)
class StructureTensor:
    """Coordinates c[i][j][k] of a bilinear product: b_i * b_j = sum_k c[i][j][k] b_k."""

    field: FieldSpec
    entries: tuple

    def __post_init__(self):
        ents = tuple(tuple(tuple(row) for row in plane) for plane in self.entries)
        object.__setattr__(self, "entries", ents)
        n = len(ents)
        for plane in ents:
            if len(plane) != n or any(len(row) != n for row in plane):
                raise DimensionMismatchError("structure tensor is not cubical")

    @property
    def dim(self) -> int:
        return len(self.entries)

    @classmethod
    def zero(cls, field: FieldSpec, dim: int) -> "StructureTensor":
        z = field.zero
        return cls(field, tuple(tuple((z,) * dim for _ in range(dim))
                                for _ in range(dim)))

    @classmethod
    def from_triples(cls, field: FieldSpec, dim: int, triples: Iterable) -> "StructureTensor":
        """Build from sparse entries {(i, j, k): c}; unlisted entries are zero."""
        grid = [[[field.zero] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j, k), c in dict(triples).items():
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise DimensionMismatchError(
                    f"tensor index ({i},{j},{k}) out of range for dim {dim}")
            grid[i][j][k] = c
        return cls(field, tuple(tuple(tuple(row) for row in plane) for plane in grid))

    def row(self, i: int, j: int) -> tuple:
        """Coordinates of b_i * b_j."""
        return self.entries[i][j]

    def apply(self, u: Sequence, v: Sequence) -> tuple:
        """Bilinear extension: coordinates of u * v."""
        f = self.field
        n = self.dim
        out = [f.zero] * n
        for i, a in enumerate(u):
            if a == 0:
                continue
            plane = self.entries[i]
            for j, b in enumerate(v):
                if b == 0:
                    continue
                c = f.mul(a, b)
                row = plane[j]
                for k in range(n):
                    if row[k] != 0:
                        out[k] = f.add(out[k], f.mul(c, row[k]))
        return tuple(out)

    def apply_basis_left(self, i: int, v: Sequence) -> tuple:
        """Coordinates of b_i * v."""
        f = self.field
        n = self.dim
        out = [f.zero] * n
        plane = self.entries[i]
        for j, b in enumerate(v):
            if b == 0:
                continue
            row = plane[j]
            for k in range(n):
                if row[k] != 0:
                    out[k] = f.add(out[k], f.mul(b, row[k]))
        return tuple(out)

    def apply_basis_right(self, u: Sequence, j: int) -> tuple:
        """Coordinates of u * b_j."""
        f = self.field
        n = self.dim
        out = [f.zero] * n
        for i, a in enumerate(u):
            if a == 0:
                continue
            row = self.entries[i][j]
            for k in range(n):
                if row[k] != 0:
                    out[k] = f.add(out[k], f.mul(a, row[k]))
        return tuple(out)

    def add(self, other: "StructureTensor") -> "StructureTensor":
        same_field(self.field, other.field)
        if self.dim != other.dim:
            raise DimensionMismatchError("tensor add: dimension mismatch")
        f = self.field
        return StructureTensor(f, tuple(
            tuple(tuple(f.add(a, b) for a, b in zip(r1, r2))
                  for r1, r2 in zip(p1, p2))
            for p1, p2 in zip(self.entries, other.entries)))

    def scale(self, c) -> "StructureTensor":
        f = self.field
        return StructureTensor(f, tuple(
            tuple(tuple(f.mul(c, a) for a in row) for row in plane)
            for plane in self.entries))

    def is_zero(self) -> bool:
        return all(a == 0 for plane in self.entries for row in plane for a in row)

    def nonzero_triples(self) -> list:
        """Sorted sparse form [((i, j, k), c), ...] of the nonzero entries."""
        out = []
        for i, plane in enumerate(self.entries):
            for j, row in enumerate(plane):
                for k, c in enumerate(row):
                    if c != 0:
                        out.append(((i, j, k), c))
        return out
