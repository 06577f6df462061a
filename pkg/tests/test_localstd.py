from itertools import permutations

import pytest

from logres.errors import NonGenericCoordinateError, NonIsolatedError
from logres.localstd import (
    check_zero_dimensional,
    hyperplane_milnor,
    ideal_membership,
    ideal_quotient,
    is_quasi_homogeneous,
    jacobi_basis,
    jacobian,
    milnor_number,
    mora_divide,
    normal_form,
    polar_basis,
    polar_generators,
    quotient_monomial_basis,
    s_polynomial,
    standard_basis,
    tjurina_number,
)
from logres.poly import Ring, render_monomial

R2 = Ring(("x", "y"))


def names(ring, monos):
    return {render_monomial(m, ring.names) for m in monos}


def same_ideal(a, b):
    return all(a.contains(g) for g in b.generators) and all(b.contains(g) for g in a.generators)


# -- division ---------------------------------------------------------------

def test_divide_x_by_x():
    x = R2.var(0)
    d = mora_divide(x, [x])
    assert d.unit == R2.one()
    assert d.quotients == [R2.one()]
    assert not d.remainder


def test_division_identity_local_instance():
    d = mora_divide(R2.parse("y^3"), [R2.parse("x^2"), R2.parse("y^3+x^2*y")])
    assert d.check()
    assert not d.identity_residual()


def test_euler_identity_division():
    f = R2.parse("x^3+y^7")
    d = mora_divide(f, [R2.parse("3*x^2"), R2.parse("7*y^6")])
    assert not d.remainder
    assert d.unit == R2.one()
    assert d.quotients == [R2.parse("x/3"), R2.parse("y/7")]


def test_remainder_is_not_divisible(scherk):
    gens = jacobian(scherk)
    d = mora_divide(scherk, gens)
    assert d.check()
    lm = d.remainder.lm()
    assert not any(all(a <= b for a, b in zip(g.lm(), lm)) for g in gens)


# -- standard bases ---------------------------------------------------------

def test_cusp_jacobi_leading_ideal(cusp):
    sb = standard_basis(jacobian(cusp))
    assert names(cusp.ring, sb.leading_monomials()) == {"x", "y^2"}


def test_polar_quotient_of_f0(f0):
    sb = standard_basis(polar_generators(f0))
    assert sb.dimension == 16
    expected = {
        (k, i, j) for i in range(2) for j in range(2) for k in range(4)
    }
    assert set(quotient_monomial_basis(sb).monomials) == expected


def test_unit_ideal():
    sb = standard_basis([R2.one()])
    assert sb.generators == [R2.one()]
    assert sb.dimension == 0


def test_s_polynomials_reduce_to_zero(all_fixtures):
    for f in all_fixtures.values():
        sb = standard_basis(jacobian(f))
        for a in sb.raw:
            for b in sb.raw:
                if a is not b:
                    assert not mora_divide(s_polynomial(a, b), sb.raw, track=False).remainder


def test_generator_order_does_not_matter(cusp, f0, scherk):
    for f in (cusp, f0, scherk):
        gens = polar_generators(f)
        ref = standard_basis(gens).generators
        for perm in permutations(gens):
            assert standard_basis(list(perm)).generators == ref


# -- normal forms and membership ------------------------------------------

def test_normal_forms_mod_polar_ideal(f0):
    sb = standard_basis(polar_generators(f0))
    R = f0.ring
    assert not normal_form(R.parse("x^2"), sb)
    assert not normal_form(R.parse("y^2"), sb)
    assert normal_form(R.parse("z"), sb) == R.parse("z")
    assert not normal_form(R.zero(), sb)


def test_membership_with_certificates(e12, scherk):
    m = ideal_membership(e12, jacobian(e12))
    assert m
    assert m.certificate.check()
    m = ideal_membership(scherk, jacobian(scherk))
    assert not m
    assert m.certificate.check()
    assert ideal_membership(scherk.ring.zero(), jacobian(scherk))


# -- ideal quotients -----------------------------------------------------------

def test_quotient_scherk(scherk):
    sb = ideal_quotient(jacobian(scherk), scherk)
    assert [g.render() for g in sb.generators] == ["y", "x"]


def test_quotient_f0(f0):
    sb = ideal_quotient(polar_generators(f0), f0.diff(0))
    assert {g.render() for g in sb.generators} == {"z", "x^2", "y^2"}


def test_quotient_by_one(scherk):
    gens = jacobian(scherk)
    sb = ideal_quotient(gens, scherk.ring.one())
    assert same_ideal(sb, standard_basis(gens))


def test_quotient_certificates(ft, scherk):
    """Every generator h of I:(g) has h*g in I, and nothing smaller is missed."""
    for f in (ft, scherk):
        gens = polar_generators(f) if f is ft else jacobian(f)
        g = f.diff(0) if f is ft else f
        sbi = standard_basis(gens)
        q = ideal_quotient(gens, g, sbi)
        for h in q.generators:
            assert sbi.contains(h * g)
        for m in q.algebra.basis:
            assert not sbi.contains(f.ring.monomial(m) * g)


# -- invariants ---------------------------------------------------------------

def test_quotient_basis_scherk(scherk):
    qb = quotient_monomial_basis(jacobi_basis(scherk))
    assert qb.dimension == 11
    assert names(scherk.ring, qb.monomials) == {
        "1", "x", "x^2", "x^3", "x^4", "x^5", "x*y", "y", "y^2", "y^3", "y^4",
    }


def test_quotient_basis_maximal_ideal():
    qb = quotient_monomial_basis(standard_basis([R2.var(0), R2.var(1)]))
    assert qb.monomials == [(0, 0)]


def test_milnor_numbers(cusp, ft, scherk):
    assert milnor_number(cusp) == 2
    assert milnor_number(ft) == 12
    assert milnor_number(scherk) == 11


def test_tjurina_numbers(ft, f0, scherk):
    assert tjurina_number(ft) == 11
    assert tjurina_number(f0) == 12
    assert tjurina_number(scherk) == 10


def test_hyperplane_milnor(ft, cusp):
    assert hyperplane_milnor(ft) == 4
    assert hyperplane_milnor(cusp) == 2
    assert hyperplane_milnor(R2.parse("x^2+y^2")) == 1


def test_zero_dimensionality(ft):
    R = ft.ring
    assert check_zero_dimensional(polar_generators(ft))
    assert check_zero_dimensional([ft, ft.diff(2), ft.diff(0)])
    assert not check_zero_dimensional([R2.var(0)])
    assert check_zero_dimensional([R2.var(0), R2.var(1)])


def test_saito_criterion(e12, scherk, cusp):
    assert is_quasi_homogeneous(e12)
    assert is_quasi_homogeneous(cusp)
    assert not is_quasi_homogeneous(scherk)


def test_errors():
    with pytest.raises(NonIsolatedError):
        milnor_number(R2.parse("x^2"))
    with pytest.raises(NonIsolatedError):
        milnor_number(R2.parse("x+y^2"))
    with pytest.raises(NonIsolatedError):
        milnor_number(R2.parse("1+x^2"))
    with pytest.raises(NonIsolatedError):
        quotient_monomial_basis(standard_basis([R2.var(0)]))
    with pytest.raises(NonGenericCoordinateError):
        polar_basis(R2.parse("x*y"))
