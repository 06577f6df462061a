from fractions import Fraction

import pytest

from logres.errors import NonIsolatedError
from logres.logvf import VectorField, equivalent, lift_jacobi, logarithmic_cofactor, logvf_basis
from logres.poly import LocalFraction, Ring
from logres.residues import (
    Form,
    independent_modulo_trivial,
    interior_product,
    regular_meromorphic_basis,
    torsion_basis,
    trivial_field_certificates,
    xi_eta,
)


def form1(ring, spec):
    """1-form from {"x": "coefficient"} meaning coefficient * dx."""
    return Form(ring, 1, {(ring.names.index(k),): ring.parse(c) for k, c in spec.items()})


def test_interior_product_cusp(cusp):
    R = cusp.ring
    v = VectorField(cusp, [R.parse("x/2"), R.parse("y/3")], R.one())
    assert interior_product(v) == form1(R, {"x": "-y/3", "y": "x/2"})


def test_interior_product_euler_f0(f0):
    R = f0.ring
    v = VectorField(f0, [R.parse("3*z"), R.parse("4*x"), R.parse("4*y")], R.const(12))
    beta = interior_product(v)
    assert beta.contract(0) == form1(R, {"y": "-4*x", "x": "4*y"})


def test_interior_product_zero(cusp):
    R = cusp.ring
    assert not interior_product(VectorField(cusp, [R.zero(), R.zero()], R.zero()))


def test_cusp_torsion_basis(cusp):
    R = cusp.ring
    beta = form1(R, {"x": "-y/3", "y": "x/2"})
    classes = torsion_basis(cusp, logvf_basis(cusp, "jacobi"))
    assert [c.representative for c in classes] == [beta, beta.scale(R.parse("y"))]
    polar = torsion_basis(cusp, logvf_basis(cusp, "polar"))
    assert polar[0].representative == beta.scale(2)
    assert independent_modulo_trivial(cusp, [c.representative for c in classes])


def test_f0_torsion_is_monomial_multiples(f0):
    R = f0.ring
    classes = torsion_basis(f0)
    assert len(classes) == 12
    vz = classes[0].witness
    assert vz.witness == R.parse("z")
    for c in classes:
        m = R.monomial(c.witness.witness.lm())
        m = R.from_terms({(e[0] - 1,) + e[1:]: 1 for e in m.terms})
        assert equivalent(c.witness, vz.multiply(m))
        assert interior_product(vz.multiply(m)) == classes[0].representative.scale(m)


def test_node_has_one_torsion_class():
    f = Ring(("x", "y")).parse("x^2+y^2")
    assert len(torsion_basis(f)) == 1


def test_xi_eta_cusp(cusp):
    R = cusp.ring
    rep = xi_eta(lift_jacobi(R.one(), cusp), cusp)
    assert rep.xi == Form(R, 0, {(): R.parse("-y/3")})
    assert rep.denominator == R.parse("2*x")
    assert rep.holds()


def test_xi_eta_zero(cusp):
    R = cusp.ring
    rep = xi_eta(VectorField(cusp, [R.zero(), R.zero()], R.zero()), cusp)
    assert not rep.xi and not rep.eta


def test_f0_residue(f0):
    R = f0.ring
    basis = regular_meromorphic_basis(f0)
    assert len(basis) == 12
    first = basis[0]
    assert first.denominator == R.parse("4*z^3")
    assert first.xi.scale(3) == form1(R, {"y": "-4*x", "x": "4*y"})
    assert basis.assumptions


def test_u12_residues_from_printed_field(ft):
    R = ft.ring
    den = R.parse("27+t^3*z^2")
    coeffs = [
        LocalFraction(R.parse("6*z^2-t*x*y")),
        LocalFraction(R.parse("216*x*z-6*t^2*y^2*z-2*t^4*x^2*y*z"), den),
        LocalFraction(R.parse("216*y*z+24*t^2*x^2*z+10*t^3*y*z^3-2*t^4*x*y^2*z"), den),
    ]
    v = VectorField(ft, coeffs, logarithmic_cofactor(ft, coeffs))
    assert xi_eta(v, ft).holds()
    assert len(regular_meromorphic_basis(ft)) == 11


def test_smooth_input_rejected():
    f = Ring(("x", "y")).parse("x+y^2")
    with pytest.raises(NonIsolatedError):
        regular_meromorphic_basis(f)


def test_trivial_field_certificates(all_fixtures):
    for f in all_fixtures.values():
        for v, cert in trivial_field_certificates(f):
            assert not cert.residual(interior_product(v), f)


def test_contraction_identity(all_fixtures):
    """df ^ i_v(omega) = v(f) omega."""
    for f in all_fixtures.values():
        vol = Form.volume(f.ring)
        for v in logvf_basis(f, "jacobi").fields[:4]:
            lhs = Form.exact(f).wedge(interior_product(v))
            assert lhs == vol.scale(v.apply(f))


def test_torsion_independent_modulo_trivial(cusp, f0, ft):
    for f in (cusp, f0, ft):
        forms = [c.representative for c in torsion_basis(f)]
        assert independent_modulo_trivial(f, forms)


def test_trivial_forms_are_dependent(cusp):
    R = cusp.ring
    forms = [c.representative for c in torsion_basis(cusp)]
    extra = forms[0].scale(R.parse("x"))
    assert not independent_modulo_trivial(cusp, forms + [extra])
