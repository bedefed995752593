import random
from fractions import Fraction

import pytest

import dendrop as dp
from dendrop.errors import (BadRationalError, DimensionMismatchError,
                            FieldMismatchError, NotAssociativeError)
from dendrop.linalg import Matrix, StructureTensor
from dendrop.structures import (validate_associativity, validate_bimodule,
                                validate_bimodule_algebra,
                                validate_dendriform_di,
                                validate_dendriform_tri)
from helpers import F2, F3, Q, kx2, n2, zero_algebra

ONE = Fraction(1)


# -- associativity ---------------------------------------------------------------

def test_n2_is_associative():
    assert validate_associativity(n2()).passed


def test_non_associative_example_reports_first_triple():
    # e1*e1 = e2, e2*e1 = e1: (e1 e1) e1 = e1 while e1 (e1 e1) = e1*e2 = 0
    alg = dp.make_algebra(Q, 2, {(0, 0, 1): ONE, (1, 0, 0): ONE})
    rep = validate_associativity(alg)
    assert not rep.passed
    first = rep.first()
    assert first.axiom == "assoc"
    assert first.indices == (0, 0, 0)
    assert first.lhs == (ONE, Fraction(0))
    assert first.rhs == (Fraction(0), Fraction(0))


def test_truncated_polynomials_associative():
    assert validate_associativity(kx2()).passed


def test_validator_counts_all_violations_but_caps_details():
    alg = dp.make_algebra(Q, 2, {(0, 0, 1): ONE, (1, 0, 0): ONE})
    rep = validate_associativity(alg, max_violations=2)
    assert len(rep.violations) == 2
    assert rep.total_violations >= 2
    full = validate_associativity(alg, max_violations=100)
    assert full.total_violations == rep.total_violations
    early = validate_associativity(alg, max_violations=1, early_stop=True)
    assert not early.passed and len(early.violations) == 1


# -- bimodules ---------------------------------------------------------------------

def one_dim_zero_bimodule(alg):
    z = Matrix.zeros(alg.field, 1, 1)
    return dp.Bimodule(alg, (z,) * alg.dim, (z,) * alg.dim)


def test_zero_actions_give_a_bimodule():
    assert validate_bimodule(one_dim_zero_bimodule(n2())).passed


def test_canonical_bimodule_of_n2():
    ba = dp.canonical_bimodule(n2())
    assert validate_bimodule(ba.base).passed
    assert validate_bimodule_algebra(ba).passed
    # L(e1) = 0, L(e2): e2 -> e1; R identical by commutativity
    zero = Matrix.zeros(Q, 2, 2)
    l2 = Matrix(Q, ((Fraction(0), ONE), (Fraction(0), Fraction(0))))
    assert ba.left[0] == zero and ba.left[1] == l2
    assert ba.right[0] == zero and ba.right[1] == l2


def test_canonical_bimodule_of_kx2():
    ba = dp.canonical_bimodule(kx2())
    assert ba.left[0] == Matrix.identity(Q, 2)
    assert ba.left[1] == Matrix(Q, ((Fraction(0), Fraction(0)), (ONE, Fraction(0))))
    assert validate_bimodule_algebra(ba).passed


def test_canonical_bimodule_of_zero_algebra():
    ba = dp.canonical_bimodule(zero_algebra(Q, 2))
    assert all(M.is_zero() for M in ba.left + ba.right)


def test_canonical_bimodule_requires_associativity():
    bad = dp.make_algebra(Q, 2, {(0, 0, 1): ONE, (1, 0, 0): ONE})
    with pytest.raises(NotAssociativeError):
        dp.canonical_bimodule(bad)


def test_broken_left_action_fails_at_named_pair():
    # zero out L(e1) (the unit's action) in the canonical kx2 bimodule:
    # l(e1*e2) = L(e2) is nonzero but l(e1) l(e2) = 0.
    ba = dp.canonical_bimodule(kx2())
    broken = dp.Bimodule(ba.algebra, (Matrix.zeros(Q, 2, 2), ba.left[1]), ba.right)
    rep = validate_bimodule(broken)
    assert not rep.passed
    assert any(v.axiom == "left_action_mult" and v.indices[:2] == (0, 1)
               for v in rep.violations)


def test_zeroing_l_e2_still_satisfies_the_laws():
    # replacing L(e2) by zero yields the evaluation action, a genuine bimodule
    ba = dp.canonical_bimodule(kx2())
    other = dp.Bimodule(ba.algebra, (ba.left[0], Matrix.zeros(Q, 2, 2)),
                        (ba.right[0], Matrix.zeros(Q, 2, 2)))
    assert validate_bimodule(other).passed


# -- bimodule algebras ----------------------------------------------------------------

def test_zero_multiplication_always_upgrades():
    bm = one_dim_zero_bimodule(n2())
    ba = dp.BimoduleAlgebra(bm, StructureTensor.zero(Q, 1))
    assert validate_bimodule_algebra(ba).passed


def test_canonical_structure_is_bimodule_algebra():
    assert validate_bimodule_algebra(dp.canonical_bimodule(n2())).passed


def test_incompatible_product_fails():
    ba = dp.canonical_bimodule(n2())
    bad = dp.BimoduleAlgebra(ba.base,
                             StructureTensor.from_triples(Q, 2, {(0, 0, 1): ONE}))
    rep = validate_bimodule_algebra(bad, max_violations=50)
    assert not rep.passed
    # (e1 o e1) r(e2) = e2 r(e2) = e1 while e1 o (e1 r(e2)) = e1 o 0 = 0
    assert any(v.axiom == "right_mult_compat" and v.indices == (1, 0, 0)
               and v.lhs == (ONE, Fraction(0)) and v.rhs == (Fraction(0), Fraction(0))
               for v in rep.violations)


# -- dendriform validators ---------------------------------------------------------------

def test_catalogue_members_validate():
    rb2 = dp.catalogue_entry("rb-2").structure
    extra1 = dp.catalogue_entry("extra-1").structure
    assert validate_dendriform_di(rb2).passed
    assert validate_dendriform_di(extra1).passed


def test_dialgebra_axiom_failure_example():
    # e1<e1 = e2 and e1>e1 = e1 break axiom 1 at (e1, e1, e1)
    d = dp.make_dendriform_di(Q, 2, {(0, 0, 1): ONE}, {(0, 0, 0): ONE})
    rep = validate_dendriform_di(d)
    assert not rep.passed
    first = rep.first()
    assert first.axiom == "di1" and first.indices == (0, 0, 0)
    assert first.lhs == (Fraction(0), Fraction(0))
    assert first.rhs == (Fraction(0), ONE)


def test_trialgebra_with_zero_dot_reduces_to_dialgebra():
    rb2 = dp.catalogue_entry("rb-2").structure
    tri = dp.DendriformTri(rb2.prec, rb2.succ, StructureTensor.zero(Q, 2))
    assert validate_dendriform_tri(tri).passed


def test_trialgebra_nilpotent_example():
    tri = dp.make_dendriform_tri(Q, 2, {(1, 1, 0): ONE}, {(1, 1, 0): ONE},
                                 {(1, 1, 0): ONE})
    assert validate_dendriform_tri(tri).passed


def test_trialgebra_dot_axiom_failure_dim1():
    tri = dp.make_dendriform_tri(Q, 1, {(0, 0, 0): ONE}, {}, {(0, 0, 0): ONE})
    rep = validate_dendriform_tri(tri, max_violations=30)
    assert not rep.passed
    assert any(v.axiom == "tri5" and v.lhs == (ONE,) and v.rhs == (Fraction(0),)
               for v in rep.violations)


# -- star products ---------------------------------------------------------------------

def test_star_of_rb2_is_n2():
    star = dp.star_product(dp.catalogue_entry("rb-2").structure)
    assert star.product == n2().product


def test_star_of_zero_dialgebra_is_zero():
    d = dp.make_dendriform_di(Q, 2, {}, {})
    assert dp.star_product(d).product.is_zero()


def test_star_of_trialgebra_sums_three_tensors():
    tri = dp.make_dendriform_tri(Q, 2, {(1, 1, 0): ONE}, {(1, 1, 0): ONE},
                                 {(1, 1, 0): ONE})
    assert dp.star_product(tri).product.row(1, 1) == (Fraction(3), Fraction(0))


def test_star_of_valid_dendriform_is_associative():
    for entry in dp.builtin_catalogue():
        assert validate_associativity(dp.star_product(entry.structure)).passed


# -- multilinearity consistency -----------------------------------------------------------

def test_basis_validation_implies_random_element_identities():
    rng = random.Random(7)
    d = dp.catalogue_entry("rb-3").structure
    assert validate_dendriform_di(d).passed
    prec, succ = d.prec, d.succ

    def star(u, v):
        return tuple(a + b for a, b in zip(prec.apply(u, v), succ.apply(u, v)))

    for _ in range(20):
        x, y, z = (tuple(Fraction(rng.randint(-3, 3)) for _ in range(2))
                   for _ in range(3))
        assert prec.apply(prec.apply(x, y), z) == prec.apply(x, star(y, z))
        assert prec.apply(succ.apply(x, y), z) == succ.apply(x, prec.apply(y, z))
        assert succ.apply(star(x, y), z) == succ.apply(x, succ.apply(y, z))


# -- field transport ------------------------------------------------------------------------

def test_reduction_mod_p():
    rb2 = dp.catalogue_entry("rb-2").structure
    over3 = dp.dendriform_di_to_field(rb2, F3)
    assert over3.prec.row(1, 1) == (2, 0)  # 1/2 = 2 mod 3
    assert validate_dendriform_di(over3).passed
    with pytest.raises(BadRationalError):
        dp.dendriform_di_to_field(rb2, F2)  # 1/2 has no image mod 2


def test_structure_constructor_checks():
    with pytest.raises(DimensionMismatchError):
        dp.DendriformDi(StructureTensor.zero(Q, 2), StructureTensor.zero(Q, 3))
    with pytest.raises(FieldMismatchError):
        dp.DendriformDi(StructureTensor.zero(Q, 2), StructureTensor.zero(F3, 2))
    with pytest.raises(DimensionMismatchError):
        dp.Bimodule(n2(), (Matrix.zeros(Q, 1, 1),), (Matrix.zeros(Q, 1, 1),))
