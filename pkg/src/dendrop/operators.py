"""Rota-Baxter operators and relative (O-) operators, with their validators.

An operator is a linear map, stored as a matrix of column images, from a
bimodule (module kind) or a bimodule algebra (algebra kind, with a weight)
into its base algebra.  Transports along domain isomorphisms and range
automorphisms return fresh operators carrying the transported domain
structure explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (DimensionMismatchError, KindMismatchError,
                     NotAssociativeError, NotIntertwiningError,
                     NotInvertibleError, NotMultiplicativeError,
                     SingularMatrixError)
from .fields import same_field
from .linalg import Matrix, StructureTensor, vec_add
from .structures import (Algebra, Bimodule, BimoduleAlgebra, _Collector,
                         DEFAULT_MAX_VIOLATIONS, ValidationReport,
                         canonical_bimodule, _combo_col)

MODULE = "module"
ALGEBRA = "algebra"


@dataclass(frozen=True)
class RotaBaxterOperator:
    """Square matrix P on an algebra, tested against the weight-lambda relation."""

    algebra: Algebra
    matrix: Matrix
    weight: object

    def __post_init__(self):
        same_field(self.matrix.field, self.algebra.field)
        if self.matrix.rows != self.algebra.dim or not self.matrix.is_square:
            raise DimensionMismatchError("operator matrix must be dim x dim")


@dataclass(frozen=True)
class OOperator:
    """Linear map from a bimodule (module kind) or bimodule algebra (algebra kind).

    ``matrix`` is (dim codomain) x (dim domain); ``weight`` is present
    exactly for the algebra kind.
    """

    domain: object
    codomain: Algebra
    matrix: Matrix
    weight: object = None

    def __post_init__(self):
        if isinstance(self.domain, BimoduleAlgebra):
            if self.weight is None:
                raise KindMismatchError("algebra-kind operator requires a weight")
        elif isinstance(self.domain, Bimodule):
            if self.weight is not None:
                raise KindMismatchError("module-kind operator carries no weight")
        else:
            raise KindMismatchError(f"unsupported domain type {type(self.domain).__name__}")
        if self.domain.algebra != self.codomain:
            raise DimensionMismatchError("domain is not a bimodule over the codomain algebra")
        same_field(self.matrix.field, self.codomain.field)
        if self.matrix.rows != self.codomain.dim or self.matrix.cols != self.domain.dim:
            raise DimensionMismatchError("operator matrix shape must be (dim A) x (dim domain)")

    @property
    def kind(self) -> str:
        return ALGEBRA if isinstance(self.domain, BimoduleAlgebra) else MODULE

    @property
    def field(self):
        return self.codomain.field


# -- validators -----------------------------------------------------------------

def validate_rota_baxter(rb: RotaBaxterOperator,
                         max_violations: int = DEFAULT_MAX_VIOLATIONS,
                         early_stop: bool = False) -> ValidationReport:
    """Check P(x)P(y) = P(P(x)y) + P(xP(y)) + weight * P(xy) on basis pairs."""
    col = _Collector("rota_baxter", max_violations, early_stop)
    f = rb.algebra.field
    c = rb.algebra.product
    P = rb.matrix
    lam = rb.weight
    n = rb.algebra.dim
    pcols = [P.col(i) for i in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = c.apply(pcols[i], pcols[j])
            rhs = vec_add(f, P.matvec(c.apply_basis_right(pcols[i], j)),
                          P.matvec(c.apply_basis_left(i, pcols[j])))
            if lam != 0:
                rhs = vec_add(f, rhs, P.matvec(tuple(f.mul(lam, a) for a in c.row(i, j))))
            if not col.check("rb", (i, j), lhs, rhs):
                return col.report()
    return col.report()


def _o_operator_sides(op: OOperator, i: int, j: int):
    """LHS and RHS of the defining relation on the domain basis pair (i, j)."""
    f = op.field
    c = op.codomain.product
    left, right = op.domain.left, op.domain.right
    a = op.matrix.col(i)
    b = op.matrix.col(j)
    lhs = c.apply(a, b)
    # l(alpha(u)) v  with u = e_i, v = e_j
    w1 = _combo_col(f, a, left, j)
    # u r(alpha(v))
    w2 = _combo_col(f, b, right, i)
    rhs = vec_add(f, op.matrix.matvec(w1), op.matrix.matvec(w2))
    if op.kind == ALGEBRA and op.weight != 0:
        prod_row = op.domain.product.row(i, j)
        w3 = tuple(f.mul(op.weight, x) for x in prod_row)
        rhs = vec_add(f, rhs, op.matrix.matvec(w3))
    return lhs, rhs


def validate_o_module(op: OOperator,
                      max_violations: int = DEFAULT_MAX_VIOLATIONS,
                      early_stop: bool = False) -> ValidationReport:
    """Check alpha(u)*alpha(v) = alpha(l(alpha(u))v) + alpha(u r(alpha(v)))."""
    if op.kind != MODULE:
        raise KindMismatchError("expected a module-kind operator")
    col = _Collector("o_operator_module", max_violations, early_stop)
    m = op.domain.dim
    for i in range(m):
        for j in range(m):
            lhs, rhs = _o_operator_sides(op, i, j)
            if not col.check("o_module", (i, j), lhs, rhs):
                return col.report()
    return col.report()


def validate_o_algebra(op: OOperator,
                       max_violations: int = DEFAULT_MAX_VIOLATIONS,
                       early_stop: bool = False) -> ValidationReport:
    """Module relation plus the weighted product term on the domain algebra."""
    if op.kind != ALGEBRA:
        raise KindMismatchError("expected an algebra-kind operator")
    col = _Collector("o_operator_algebra", max_violations, early_stop)
    m = op.domain.dim
    for i in range(m):
        for j in range(m):
            lhs, rhs = _o_operator_sides(op, i, j)
            if not col.check("o_algebra", (i, j), lhs, rhs):
                return col.report()
    return col.report()


def validate_o_operator(op: OOperator, **kw) -> ValidationReport:
    return validate_o_algebra(op, **kw) if op.kind == ALGEBRA else validate_o_module(op, **kw)


# -- bridges ----------------------------------------------------------------------

def rb_as_o_operator(rb: RotaBaxterOperator) -> OOperator:
    """View a Rota-Baxter operator as an algebra-kind operator on the canonical bimodule."""
    dom = canonical_bimodule(rb.algebra)  # raises NotAssociativeError
    return OOperator(dom, rb.algebra, rb.matrix, rb.weight)


def rb_as_module_operator(rb: RotaBaxterOperator) -> OOperator:
    """Weight-zero module reading of a Rota-Baxter operator on the canonical bimodule."""
    if rb.weight != 0:
        raise KindMismatchError("module reading only exists at weight zero")
    dom = canonical_bimodule(rb.algebra).base
    return OOperator(dom, rb.algebra, rb.matrix, None)


def with_zero_product(op: OOperator) -> OOperator:
    """Install the zero multiplication: module-kind operator as weight-zero algebra kind."""
    if op.kind != MODULE:
        raise KindMismatchError("expected a module-kind operator")
    f = op.field
    dom = BimoduleAlgebra(op.domain, StructureTensor.zero(f, op.domain.dim))
    return OOperator(dom, op.codomain, op.matrix, f.zero)


def forget_product(op: OOperator) -> OOperator:
    """Underlying module-kind operator of a weight-zero algebra-kind operator."""
    if op.kind != ALGEBRA:
        raise KindMismatchError("expected an algebra-kind operator")
    return OOperator(op.domain.base, op.codomain, op.matrix, None)


# -- morphism predicates ------------------------------------------------------------

def multiplicativity_failure(fmat: Matrix, alg: Algebra):
    """First basis pair where f(x*y) != f(x)*f(y), or None if multiplicative."""
    c = alg.product
    n = alg.dim
    cols = [fmat.col(i) for i in range(n)]
    for i in range(n):
        for j in range(n):
            if fmat.matvec(c.row(i, j)) != c.apply(cols[i], cols[j]):
                return (i, j)
    return None


def is_multiplicative(fmat: Matrix, alg: Algebra) -> bool:
    return multiplicativity_failure(fmat, alg) is None


def _check_domain_morphism(col: _Collector, g: Matrix, source, target) -> None:
    """Record failures of g as a bimodule(-algebra) morphism source -> target.

    Checks, column-wise per algebra basis element i:
      intertwine_left   g l1_i = l_i g
      intertwine_right  g rho1_i = rho_i g
    and for algebra kind, on source basis pairs (j, k):
      intertwine_product  g(u o1 v) = g(u) o g(v)
    """
    n = source.algebra.dim
    m = source.dim
    for i in range(n):
        lg = g.mul(source.left[i])
        gl = target.left[i].mul(g)
        rg = g.mul(source.right[i])
        gr = target.right[i].mul(g)
        for k in range(m):
            if not col.check("intertwine_left", (i, k), lg.col(k), gl.col(k)):
                return
            if not col.check("intertwine_right", (i, k), rg.col(k), gr.col(k)):
                return
    if isinstance(source, BimoduleAlgebra) and isinstance(target, BimoduleAlgebra):
        gcols = [g.col(j) for j in range(m)]
        for j in range(m):
            for k in range(m):
                if not col.check("intertwine_product", (j, k),
                                 g.matvec(source.product.row(j, k)),
                                 target.product.apply(gcols[j], gcols[k])):
                    return


def _is_invertible(M: Matrix) -> bool:
    from .linalg import rank
    return M.is_square and rank(M) == M.rows


# -- transports (new operators from old) ----------------------------------------------

def compose_with_domain_iso(op: OOperator, g: Matrix, source) -> OOperator:
    """Precompose with an isomorphism g : source -> op.domain of domain structures.

    The caller supplies the source structure; the intertwining identities are
    verified before composing.  Returns the operator alpha o g on ``source``
    with the same weight.
    """
    if type(source) is not type(op.domain):
        raise KindMismatchError("source structure kind differs from operator domain kind")
    if source.algebra != op.codomain:
        raise DimensionMismatchError("source must be a structure over the operator codomain")
    if g.rows != op.domain.dim or g.cols != source.dim:
        raise DimensionMismatchError("iso matrix shape mismatch")
    if not _is_invertible(g):
        raise NotInvertibleError("domain iso candidate is singular")
    col = _Collector("domain_morphism", 1, True)
    _check_domain_morphism(col, g, source, op.domain)
    rep = col.report()
    if not rep.passed:
        v = rep.first()
        raise NotIntertwiningError(f"g fails {v.axiom} at {v.indices}")
    return OOperator(source, op.codomain, op.matrix.mul(g), op.weight)


def twist_by_range_automorphism(op: OOperator, fmat: Matrix) -> OOperator:
    """Postcompose with an algebra automorphism f of the codomain.

    Returns f o alpha on the same underlying space, with both actions
    precomposed with f^{-1} (the action of x becomes the action of f^{-1}x).
    """
    from .linalg import invert

    if fmat.rows != op.codomain.dim or not fmat.is_square:
        raise DimensionMismatchError("automorphism matrix must be dim(A) square")
    try:
        finv = invert(fmat)
    except SingularMatrixError:
        raise NotInvertibleError("range automorphism candidate is singular") from None
    bad = multiplicativity_failure(fmat, op.codomain)
    if bad is not None:
        raise NotMultiplicativeError(f"f is not multiplicative at basis pair {bad}")
    f = op.field
    n = op.codomain.dim
    old = op.domain.base if op.kind == ALGEBRA else op.domain

    def twist(mats):
        out = []
        for i in range(n):
            coeffs = finv.col(i)
            acc = Matrix.zeros(f, old.dim, old.dim)
            for s, cs in enumerate(coeffs):
                if cs != 0:
                    acc = acc.add(mats[s].scale(cs))
            out.append(acc)
        return tuple(out)

    new_base = Bimodule(op.codomain, twist(old.left), twist(old.right))
    if op.kind == ALGEBRA:
        new_domain = BimoduleAlgebra(new_base, op.domain.product)
    else:
        new_domain = new_base
    return OOperator(new_domain, op.codomain, fmat.mul(op.matrix), op.weight)


def pullback_domain(domain, h: Matrix):
    """Transport a domain structure along an invertible h so that h becomes an iso.

    Returns the structure S' with actions h^{-1} l h, h^{-1} rho h (and
    product pulled back through h for algebra kind); h : S' -> domain is then
    an isomorphism of bimodule(-algebra) structures by construction.
    """
    from .linalg import invert

    if not _is_invertible(h) or h.rows != domain.dim:
        raise NotInvertibleError("pullback requires an invertible square matrix")
    hinv = invert(h)
    base = domain.base if isinstance(domain, BimoduleAlgebra) else domain
    left = tuple(hinv.mul(M).mul(h) for M in base.left)
    right = tuple(hinv.mul(M).mul(h) for M in base.right)
    new_base = Bimodule(domain.algebra, left, right)
    if isinstance(domain, BimoduleAlgebra):
        m = domain.dim
        hcols = [h.col(j) for j in range(m)]
        rows = []
        for j in range(m):
            rows.append(tuple(hinv.matvec(domain.product.apply(hcols[j], hcols[k]))
                              for k in range(m)))
        prod = StructureTensor(domain.field, tuple(rows))
        return BimoduleAlgebra(new_base, prod)
    return new_base
