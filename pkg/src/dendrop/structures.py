"""Algebraic structures on structure constants, and their exhaustive validators.

Everything is finite dimensional over an exact field.  A product is a
``StructureTensor``; actions are per-basis-element matrices.  Validators
scan every basis instance of every defining identity (multilinearity makes
that equivalent to the identity holding on all elements) and report the
violations found, up to a configurable cap.

Right-action orientation: for a basis element ``b_i`` of the acting algebra
the stored matrix ``rho_i`` realizes ``v r(b_i)`` as ``rho_i @ coords(v)``.
Consequently the module law ``v r(x*y) = (v r(x)) r(y)`` becomes the matrix
identity ``rho_{x*y} = rho_y rho_x`` (note the order reversal).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import DimensionMismatchError, NotAssociativeError
from .fields import FieldSpec, same_field
from .linalg import Matrix, StructureTensor, vec_add

DEFAULT_MAX_VIOLATIONS = 5


# -- validation reports --------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    """One failed axiom instance: basis indices plus both sides' coordinates."""

    axiom: str
    indices: tuple
    lhs: tuple
    rhs: tuple


@dataclass(frozen=True)
class ValidationReport:
    structure_kind: str
    passed: bool
    violations: tuple
    total_violations: int

    def first(self) -> Violation | None:
        return self.violations[0] if self.violations else None


class _Collector:
    """Accumulates violations; keeps the first ``max_violations`` details."""

    def __init__(self, kind: str, max_violations: int, early_stop: bool):
        self.kind = kind
        self.max = max_violations
        self.early = early_stop
        self.kept: list = []
        self.total = 0

    def check(self, axiom: str, indices: tuple, lhs: tuple, rhs: tuple) -> bool:
        """Record a mismatch; returns False when scanning should stop."""
        if lhs == rhs:
            return True
        self.total += 1
        if len(self.kept) < self.max:
            self.kept.append(Violation(axiom, indices, tuple(lhs), tuple(rhs)))
        return not self.early

    def report(self) -> ValidationReport:
        return ValidationReport(self.kind, self.total == 0,
                                tuple(self.kept), self.total)


# -- structures ----------------------------------------------------------------

@dataclass(frozen=True)
class Algebra:
    """Bilinear product on a finite free module; associativity is checked, not assumed."""

    product: StructureTensor
    name: str | None = dc_field(default=None, compare=False)

    @property
    def field(self) -> FieldSpec:
        return self.product.field

    @property
    def dim(self) -> int:
        return self.product.dim


@dataclass(frozen=True)
class Bimodule:
    """Module with compatible left and right actions of ``algebra``.

    ``left[i]`` / ``right[i]`` are the m x m action matrices of the i-th
    basis element of the algebra (see the module docstring for the
    right-action orientation).
    """

    algebra: Algebra
    left: tuple
    right: tuple

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        n = self.algebra.dim
        if len(self.left) != n or len(self.right) != n:
            raise DimensionMismatchError("need one action matrix per algebra basis element")
        mats = self.left + self.right
        m = mats[0].rows if mats else 0
        for M in mats:
            if M.rows != m or M.cols != m:
                raise DimensionMismatchError("action matrices must be square of equal size")
            same_field(M.field, self.algebra.field)

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.left[0].rows if self.left else 0


@dataclass(frozen=True)
class BimoduleAlgebra:
    """A bimodule carrying its own product, compatible with both actions."""

    base: Bimodule
    product: StructureTensor

    def __post_init__(self):
        if self.product.dim != self.base.dim:
            raise DimensionMismatchError("product tensor dimension != module dimension")
        same_field(self.product.field, self.base.field)

    @property
    def algebra(self) -> Algebra:
        return self.base.algebra

    @property
    def left(self) -> tuple:
        return self.base.left

    @property
    def right(self) -> tuple:
        return self.base.right

    @property
    def field(self) -> FieldSpec:
        return self.base.field

    @property
    def dim(self) -> int:
        return self.base.dim


@dataclass(frozen=True)
class DendriformDi:
    """Pair of products (prec, succ) subject to the three dialgebra axioms."""

    prec: StructureTensor
    succ: StructureTensor
    name: str | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        if self.prec.dim != self.succ.dim:
            raise DimensionMismatchError("prec/succ dimension mismatch")
        same_field(self.prec.field, self.succ.field)

    @property
    def field(self) -> FieldSpec:
        return self.prec.field

    @property
    def dim(self) -> int:
        return self.prec.dim

    def tensors(self) -> tuple:
        return (self.prec, self.succ)


@dataclass(frozen=True)
class DendriformTri:
    """Triple of products (prec, succ, dot) subject to the seven trialgebra axioms."""

    prec: StructureTensor
    succ: StructureTensor
    dot: StructureTensor
    name: str | None = dc_field(default=None, compare=False)

    def __post_init__(self):
        if not (self.prec.dim == self.succ.dim == self.dot.dim):
            raise DimensionMismatchError("prec/succ/dot dimension mismatch")
        same_field(self.prec.field, self.succ.field)
        same_field(self.prec.field, self.dot.field)

    @property
    def field(self) -> FieldSpec:
        return self.prec.field

    @property
    def dim(self) -> int:
        return self.prec.dim

    def tensors(self) -> tuple:
        return (self.prec, self.succ, self.dot)


# -- convenience constructors ----------------------------------------------------

def make_algebra(field: FieldSpec, dim: int, triples, name: str | None = None) -> Algebra:
    return Algebra(StructureTensor.from_triples(field, dim, triples), name=name)


def make_dendriform_di(field: FieldSpec, dim: int, prec, succ,
                       name: str | None = None) -> DendriformDi:
    return DendriformDi(StructureTensor.from_triples(field, dim, prec),
                        StructureTensor.from_triples(field, dim, succ), name=name)


def make_dendriform_tri(field: FieldSpec, dim: int, prec, succ, dot,
                        name: str | None = None) -> DendriformTri:
    return DendriformTri(StructureTensor.from_triples(field, dim, prec),
                         StructureTensor.from_triples(field, dim, succ),
                         StructureTensor.from_triples(field, dim, dot), name=name)


# -- validators ------------------------------------------------------------------

def validate_associativity(alg: Algebra,
                           max_violations: int = DEFAULT_MAX_VIOLATIONS,
                           early_stop: bool = False) -> ValidationReport:
    """Check (b_i * b_j) * b_k = b_i * (b_j * b_k) over all basis triples."""
    col = _Collector("algebra", max_violations, early_stop)
    _scan_associativity(alg.product, "assoc", col)
    return col.report()


def _scan_associativity(t: StructureTensor, axiom: str, col: _Collector) -> bool:
    n = t.dim
    for i in range(n):
        for j in range(n):
            u = t.row(i, j)
            for k in range(n):
                lhs = t.apply_basis_right(u, k)
                rhs = t.apply_basis_left(i, t.row(j, k))
                if not col.check(axiom, (i, j, k), lhs, rhs):
                    return False
    return True


def validate_dendriform_di(d: DendriformDi,
                           max_violations: int = DEFAULT_MAX_VIOLATIONS,
                           early_stop: bool = False) -> ValidationReport:
    """Check the three dialgebra axioms (star = prec + succ) on all basis triples."""
    col = _Collector("dendriform_di", max_violations, early_stop)
    f = d.field
    prec, succ = d.prec, d.succ
    n = d.dim
    for i in range(n):
        for j in range(n):
            pij, sij = prec.row(i, j), succ.row(i, j)
            star_ij = vec_add(f, pij, sij)
            for k in range(n):
                star_jk = vec_add(f, prec.row(j, k), succ.row(j, k))
                # (x<y)<z = x<(y*z)
                if not col.check("di1", (i, j, k),
                                 prec.apply_basis_right(pij, k),
                                 prec.apply_basis_left(i, star_jk)):
                    return col.report()
                # (x>y)<z = x>(y<z)
                if not col.check("di2", (i, j, k),
                                 prec.apply_basis_right(sij, k),
                                 succ.apply_basis_left(i, prec.row(j, k))):
                    return col.report()
                # (x*y)>z = x>(y>z)
                if not col.check("di3", (i, j, k),
                                 succ.apply_basis_right(star_ij, k),
                                 succ.apply_basis_left(i, succ.row(j, k))):
                    return col.report()
    return col.report()


def validate_dendriform_tri(t: DendriformTri,
                            max_violations: int = DEFAULT_MAX_VIOLATIONS,
                            early_stop: bool = False) -> ValidationReport:
    """Check the seven trialgebra axioms (star = prec + succ + dot)."""
    col = _Collector("dendriform_tri", max_violations, early_stop)
    f = t.field
    prec, succ, dot = t.prec, t.succ, t.dot
    n = t.dim

    def star(i, j):
        return vec_add(f, vec_add(f, prec.row(i, j), succ.row(i, j)), dot.row(i, j))

    for i in range(n):
        for j in range(n):
            pij, sij, dij = prec.row(i, j), succ.row(i, j), dot.row(i, j)
            star_ij = star(i, j)
            for k in range(n):
                checks = (
                    ("tri1", prec.apply_basis_right(pij, k),
                     prec.apply_basis_left(i, star(j, k))),
                    ("tri2", prec.apply_basis_right(sij, k),
                     succ.apply_basis_left(i, prec.row(j, k))),
                    ("tri3", succ.apply_basis_right(star_ij, k),
                     succ.apply_basis_left(i, succ.row(j, k))),
                    ("tri4", dot.apply_basis_right(sij, k),
                     succ.apply_basis_left(i, dot.row(j, k))),
                    ("tri5", dot.apply_basis_right(pij, k),
                     dot.apply_basis_left(i, succ.row(j, k))),
                    ("tri6", prec.apply_basis_right(dij, k),
                     dot.apply_basis_left(i, prec.row(j, k))),
                    ("tri7", dot.apply_basis_right(dij, k),
                     dot.apply_basis_left(i, dot.row(j, k))),
                )
                for axiom, lhs, rhs in checks:
                    if not col.check(axiom, (i, j, k), lhs, rhs):
                        return col.report()
    return col.report()


def _combo_col(field: FieldSpec, coeffs: Sequence, mats: Sequence[Matrix], k: int) -> tuple:
    """Column k of sum_s coeffs[s] * mats[s]."""
    m = mats[0].rows
    out = [field.zero] * m
    for c, M in zip(coeffs, mats):
        if c == 0:
            continue
        for r in range(m):
            a = M.entries[r][k]
            if a != 0:
                out[r] = field.add(out[r], field.mul(c, a))
    return tuple(out)


def _scan_bimodule(bm: Bimodule, col: _Collector) -> bool:
    """Bimodule laws, column-wise on module basis vectors.

    Axiom ids (indices are (i, j, k) = algebra, algebra, module basis):
      left_action_mult   l(b_i * b_j) = l(b_i) l(b_j)
      right_action_mult  rho_{b_i * b_j} = rho_j rho_i
      action_commute     (l(b_i) v) r(b_j) = l(b_i) (v r(b_j))
    """
    f = bm.field
    c = bm.algebra.product
    n, m = bm.algebra.dim, bm.dim
    left, right = bm.left, bm.right
    for i in range(n):
        for j in range(n):
            cij = c.row(i, j)
            for k in range(m):
                if not col.check("left_action_mult", (i, j, k),
                                 _combo_col(f, cij, left, k),
                                 left[i].matvec(left[j].col(k))):
                    return False
                if not col.check("right_action_mult", (i, j, k),
                                 _combo_col(f, cij, right, k),
                                 right[j].matvec(right[i].col(k))):
                    return False
                if not col.check("action_commute", (i, j, k),
                                 right[j].matvec(left[i].col(k)),
                                 left[i].matvec(right[j].col(k))):
                    return False
    return True


def validate_bimodule(bm: Bimodule,
                      max_violations: int = DEFAULT_MAX_VIOLATIONS,
                      early_stop: bool = False) -> ValidationReport:
    col = _Collector("bimodule", max_violations, early_stop)
    _scan_bimodule(bm, col)
    return col.report()


def validate_bimodule_algebra(ba: BimoduleAlgebra,
                              max_violations: int = DEFAULT_MAX_VIOLATIONS,
                              early_stop: bool = False) -> ValidationReport:
    """Bimodule laws plus action/product compatibility plus associativity of the product.

    Mixed-law axiom ids (indices (i, j, k) = algebra basis, module basis, module basis):
      left_mult_compat   l(x)(v o w) = (l(x) v) o w
      right_mult_compat  (v o w) r(x) = v o (w r(x))
      swap_mult_compat   (v r(x)) o w = v o (l(x) w)
    """
    col = _Collector("bimodule_algebra", max_violations, early_stop)
    if not _scan_bimodule(ba.base, col):
        return col.report()
    f = ba.field
    prod = ba.product
    n, m = ba.algebra.dim, ba.dim
    left, right = ba.left, ba.right
    for i in range(n):
        li, ri = left[i], right[i]
        for j in range(m):
            for k in range(m):
                ojk = prod.row(j, k)
                if not col.check("left_mult_compat", (i, j, k),
                                 li.matvec(ojk),
                                 prod.apply_basis_right(li.col(j), k)):
                    return col.report()
                if not col.check("right_mult_compat", (i, j, k),
                                 ri.matvec(ojk),
                                 prod.apply_basis_left(j, ri.col(k))):
                    return col.report()
                if not col.check("swap_mult_compat", (i, j, k),
                                 prod.apply_basis_right(ri.col(j), k),
                                 prod.apply_basis_left(j, li.col(k))):
                    return col.report()
    if not _scan_associativity(prod, "product_assoc", col):
        return col.report()
    return col.report()


# -- constructions ----------------------------------------------------------------

def star_product(d) -> Algebra:
    """Sum of the dendriform products; associative whenever the axioms hold."""
    tensors = d.tensors()
    total = tensors[0]
    for t in tensors[1:]:
        total = total.add(t)
    return Algebra(total)


def canonical_bimodule(alg: Algebra) -> BimoduleAlgebra:
    """The algebra acting on itself by left/right multiplication, with its own product."""
    rep = validate_associativity(alg)
    if not rep.passed:
        raise NotAssociativeError(
            f"algebra is not associative (first violation at {rep.first().indices})")
    f = alg.field
    c = alg.product
    n = alg.dim
    left = tuple(Matrix(f, tuple(tuple(c.entries[i][j][k] for j in range(n))
                                 for k in range(n)))
                 for i in range(n))
    right = tuple(Matrix(f, tuple(tuple(c.entries[j][i][k] for j in range(n))
                                  for k in range(n)))
                  for i in range(n))
    return BimoduleAlgebra(Bimodule(alg, left, right), c)


# -- field transport ----------------------------------------------------------------

def tensor_to_field(t: StructureTensor, target: FieldSpec) -> StructureTensor:
    """Reinterpret a rational tensor over ``target`` (reduction mod p when prime)."""
    if t.field == target:
        return t
    conv = target.convert_from_rational
    return StructureTensor(target, tuple(
        tuple(tuple(conv(a) for a in row) for row in plane) for plane in t.entries))


def dendriform_di_to_field(d: DendriformDi, target: FieldSpec) -> DendriformDi:
    return DendriformDi(tensor_to_field(d.prec, target),
                        tensor_to_field(d.succ, target), name=d.name)


def dendriform_tri_to_field(d: DendriformTri, target: FieldSpec) -> DendriformTri:
    return DendriformTri(tensor_to_field(d.prec, target),
                         tensor_to_field(d.succ, target),
                         tensor_to_field(d.dot, target), name=d.name)


def algebra_to_field(a: Algebra, target: FieldSpec) -> Algebra:
    return Algebra(tensor_to_field(a.product, target), name=a.name)
