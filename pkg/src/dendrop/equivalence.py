"""Witness-based isomorphism and equivalence checks, plus exhaustive search.

Two dendriform structures on the same space are isomorphic when a linear
bijection intertwines each product.  Two invertible operators into the same
algebra are isomorphic when a domain isomorphism g identifies them
(alpha1 = alpha2 g) and equivalent when additionally a range automorphism f
is allowed (f alpha1 = alpha2 g, with the actions of the first domain
twisted through f^{-1}).  Over a prime field, dendriform isomorphism in
small dimension is decided by scanning all invertible matrices in a fixed
lexicographic order, so the first witness found is reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (DimensionCapError, DimensionMismatchError,
                     FieldNotFiniteError, KindMismatchError,
                     NotInvertibleError, NotMultiplicativeError,
                     SingularMatrixError)
from .fields import FieldSpec, same_field
from .linalg import Matrix, invert, rank
from .operators import (ALGEBRA, OOperator, _check_domain_morphism,
                        multiplicativity_failure, pullback_domain)
from .structures import (DendriformTri, DEFAULT_MAX_VIOLATIONS,
                         _Collector, ValidationReport)

DEFAULT_DIMENSION_CAP = 3

DENDRIFORM_ISO = "dendriform-iso"
OPERATOR_ISO_G = "operator-iso-g"
RANGE_AUTOMORPHISM_F = "range-automorphism-f"


@dataclass(frozen=True)
class IsoWitness:
    matrix: Matrix
    role: str


@dataclass(frozen=True)
class IsoSearchResult:
    """Outcome of an exhaustive witness search over invertible matrices."""

    witness: IsoWitness | None
    candidates_tried: int

    @property
    def found(self) -> bool:
        return self.witness is not None


def _product_labels(d) -> list:
    if isinstance(d, DendriformTri):
        return [("iso_prec", d.prec), ("iso_succ", d.succ), ("iso_dot", d.dot)]
    return [("iso_prec", d.prec), ("iso_succ", d.succ)]


def _scan_dendriform_iso(col: _Collector, d1, d2, F: Matrix) -> None:
    fcols = [F.col(j) for j in range(F.cols)]
    pairs = zip(_product_labels(d1), _product_labels(d2))
    for (axiom, t1), (_, t2) in pairs:
        for i in range(d1.dim):
            for j in range(d1.dim):
                if not col.check(axiom, (i, j),
                                 F.matvec(t1.row(i, j)),
                                 t2.apply(fcols[i], fcols[j])):
                    return


def verify_dendriform_iso(d1, d2, F: Matrix,
                          max_violations: int = DEFAULT_MAX_VIOLATIONS
                          ) -> ValidationReport:
    """Check F(x p1 y) = F(x) p2 F(y) for each product p of the two structures."""
    if type(d1) is not type(d2):
        raise KindMismatchError("cannot compare a dialgebra with a trialgebra")
    same_field(d1.field, d2.field)
    if d1.dim != d2.dim or F.rows != d1.dim or not F.is_square:
        raise DimensionMismatchError("witness must be square of the common dimension")
    if rank(F) < F.rows:
        raise NotInvertibleError("witness matrix is singular")
    col = _Collector("dendriform_iso", max_violations, False)
    _scan_dendriform_iso(col, d1, d2, F)
    return col.report()


def verify_operator_iso(op1: OOperator, op2: OOperator, g: Matrix,
                        max_violations: int = DEFAULT_MAX_VIOLATIONS
                        ) -> ValidationReport:
    """Check that g is a domain isomorphism with alpha1 = alpha2 g.

    Axiom ids: intertwine_left / intertwine_right / intertwine_product for
    the domain morphism identities, weight_eq for matching weights, map_eq
    (column-wise) for the matrix equation.
    """
    if op1.kind != op2.kind:
        raise KindMismatchError("operators have different kinds")
    if op1.codomain != op2.codomain:
        raise DimensionMismatchError("operators must share their codomain algebra")
    if g.rows != op2.domain.dim or g.cols != op1.domain.dim:
        raise DimensionMismatchError("iso matrix shape mismatch")
    if not g.is_square or rank(g) < g.rows:
        raise NotInvertibleError("candidate g is singular")
    col = _Collector("operator_iso", max_violations, False)
    if op1.kind == ALGEBRA and op1.weight != op2.weight:
        col.check("weight_eq", (), (op1.weight,), (op2.weight,))
    _check_domain_morphism(col, g, op1.domain, op2.domain)
    composed = op2.matrix.mul(g)
    for j in range(op1.domain.dim):
        col.check("map_eq", (j,), op1.matrix.col(j), composed.col(j))
    return col.report()


def verify_operator_equiv(op1: OOperator, op2: OOperator, f: Matrix, g: Matrix,
                          max_violations: int = DEFAULT_MAX_VIOLATIONS
                          ) -> ValidationReport:
    """Check f alpha1 = alpha2 g with g an isomorphism out of the f-twisted domain."""
    from .operators import twist_by_range_automorphism

    if f.rows != op1.codomain.dim or not f.is_square:
        raise DimensionMismatchError("f must be square over the codomain")
    if rank(f) < f.rows:
        raise NotInvertibleError("candidate f is singular")
    bad = multiplicativity_failure(f, op1.codomain)
    if bad is not None:
        raise NotMultiplicativeError(f"f is not multiplicative at basis pair {bad}")
    twisted = twist_by_range_automorphism(op1, f)
    return verify_operator_iso(twisted, op2, g, max_violations=max_violations)


def induced_intertwiner(op1: OOperator, op2: OOperator):
    """g = alpha2^{-1} alpha1, with the report of verifying it as an operator iso."""
    g = invert(op2.matrix).mul(op1.matrix)  # raises SingularMatrixError
    if not g.is_square or rank(g) < g.rows:
        raise SingularMatrixError("alpha1 is singular")
    return g, verify_operator_iso(op1, op2, g)


# -- exhaustive search over GL_n(F_p) ---------------------------------------------

def gl_matrices(field: FieldSpec, n: int):
    """All invertible n x n matrices over a prime field.

    Lexicographic on the row-major entry tuple (entries 0..p-1), singular
    candidates skipped; the order is the search order, so "first witness"
    is well defined.
    """
    if not field.is_finite:
        raise FieldNotFiniteError("matrix enumeration requires a prime field")
    for flat in itertools.product(range(field.p), repeat=n * n):
        M = Matrix(field, tuple(flat[r * n:(r + 1) * n] for r in range(n)))
        if rank(M) == n:
            yield M


def search_dendriform_iso_fp(d1, d2,
                             dimension_cap: int = DEFAULT_DIMENSION_CAP
                             ) -> IsoSearchResult:
    """First intertwining bijection in enumeration order, or an exhausted search.

    ``candidates_tried`` counts the invertible matrices examined; on a
    NotFound outcome it equals the order of the general linear group.
    """
    if type(d1) is not type(d2):
        raise KindMismatchError("cannot compare a dialgebra with a trialgebra")
    field = same_field(d1.field, d2.field)
    if not field.is_finite:
        raise FieldNotFiniteError("exhaustive search requires a prime field")
    if d1.dim != d2.dim:
        raise DimensionMismatchError("structures have different dimensions")
    if d1.dim > dimension_cap:
        raise DimensionCapError(
            f"dimension {d1.dim} above the search cap {dimension_cap}")
    tried = 0
    for F in gl_matrices(field, d1.dim):
        tried += 1
        col = _Collector("dendriform_iso", 1, True)
        _scan_dendriform_iso(col, d1, d2, F)
        if col.total == 0:
            return IsoSearchResult(IsoWitness(F, DENDRIFORM_ISO), tried)
    return IsoSearchResult(None, tried)


# -- transport helper used by equivalence tests -------------------------------------

def transported_pair(op: OOperator, f: Matrix, h: Matrix):
    """Equivalence-related copy of ``op``: twist the range by f, pull the domain back along h.

    Returns ``(op2, g)`` where ``f alpha = alpha2 g`` holds with ``g = h^{-1}``,
    so ``verify_operator_equiv(op, op2, f, g)`` passes for valid witnesses.
    """
    from .operators import compose_with_domain_iso, twist_by_range_automorphism

    twisted = twist_by_range_automorphism(op, f)
    source = pullback_domain(twisted.domain, h)
    op2 = compose_with_domain_iso(twisted, h, source)
    return op2, invert(h)
