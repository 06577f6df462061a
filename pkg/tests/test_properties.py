"""Identities that must hold for every fixture and for a seeded sample of
random isolated singularities."""
import random
from fractions import Fraction

import pytest

from logres.errors import NonGenericCoordinateError
from logres.gaussmanin import divergence, reduce_mod
from logres.localcoh import annihilator_standard_basis, polar_cohomology
from logres.localstd import (
    hyperplane_milnor,
    ideal_quotient,
    is_quasi_homogeneous,
    jacobi_basis,
    jacobian,
    milnor_number,
    mora_divide,
    polar_basis,
    polar_generators,
    s_polynomial,
    standard_basis,
    tjurina_number,
)
from logres.logvf import coefficient_candidates_jacobi, lift_jacobi, logvf_basis
from logres.poly import Ring
from logres.residues import Form, interior_product, xi_eta

SEED = 20240611
COUNT = 20


def _random_germ(rng):
    """x^a + y^b plus random terms above the Newton diagonal, so the
    singularity stays isolated."""
    if rng.random() < 0.2:
        R = Ring(("z", "x", "y"))
        f = R.parse("z^2+x^3+y^3")
        extra = [(i, j, k) for i in range(3) for j in range(4) for k in range(4)
                 if 3 * i + 2 * j + 2 * k > 6 and i + j + k <= 4]
        n_extra = 1
    else:
        R = Ring(("x", "y"))
        a, b = rng.randint(2, 5), rng.randint(3, 6)
        f = R.parse(f"x^{a}+y^{b}")
        extra = [(i, j) for i in range(a + 1) for j in range(b + 1)
                 if b * i + a * j > a * b and i + j <= max(a, b) + 1]
        n_extra = 2
    for m in rng.sample(extra, min(n_extra, len(extra))):
        c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))
        f = f + R.monomial(m) * R.const(c)
    return f


def _sample():
    rng = random.Random(SEED)
    out = []
    while len(out) < COUNT:
        f = _random_germ(rng)
        try:
            polar_basis(f)
            hyperplane_milnor(f)
        except NonGenericCoordinateError:
            continue
        out.append(f)
    return out


RANDOM = _sample()


NAMED = ["cusp", "f0", "ft", "scherk", "e12"]


@pytest.fixture(scope="module", params=NAMED + [f"random{k}" for k in range(COUNT)])
def f(request):
    if request.param in NAMED:
        return request.getfixturevalue(request.param)
    return RANDOM[int(request.param[6:])]


def test_sample_is_varied():
    assert any(g.ring.n == 3 for g in RANDOM)
    assert any(milnor_number(g) > tjurina_number(g) for g in RANDOM)
    assert any(milnor_number(g) == tjurina_number(g) for g in RANDOM)


def test_division_identity(f):
    gens = jacobian(f)
    for p in (f, f * f.diff(0), f.ring.monomial((2,) + (1,) * (f.ring.n - 1)) + f):
        div = mora_divide(p, gens)
        assert div.check()


def test_s_polynomials_reduce(f):
    sb = standard_basis(polar_generators(f))
    for i, a in enumerate(sb.raw):
        for b in sb.raw[i + 1:]:
            assert not mora_divide(s_polynomial(a, b), sb.raw, track=False).remainder


def test_quotient_generator_certificates(f):
    gens = polar_generators(f)
    g = f.diff(f.ring.distinguished)
    sbi = standard_basis(gens)
    q = ideal_quotient(gens, g, sbi)
    for h in q.generators:
        assert sbi.contains(h * g)
    for m in q.algebra.basis:
        assert not sbi.contains(f.ring.monomial(m) * g)


def test_cohomology_dimensions(f):
    pc = polar_cohomology(f)
    assert pc.gamma.dimension == pc.mu + pc.mu_hyperplane
    assert pc.kernel.dimension == pc.tau
    assert pc.delta.dimension == pc.mu - pc.tau + pc.mu_hyperplane


def test_annihilator_matches_ideal_quotient(f):
    pc = polar_cohomology(f)
    ann = annihilator_standard_basis(pc.delta)
    gens = polar_generators(f)
    q = ideal_quotient(gens, f.diff(f.ring.distinguished))
    assert all(q.contains(h) for h in ann.generators)
    assert all(ann.contains(h) for h in q.generators)


def test_quasi_homogeneity_criterion(f):
    assert (milnor_number(f) == tjurina_number(f)) == is_quasi_homogeneous(f)


@pytest.mark.parametrize("method", ["polar", "jacobi"])
def test_fields_and_forms(f, method):
    basis = logvf_basis(f, method)
    assert len(basis) == tjurina_number(f)
    vol = Form.volume(f.ring)
    for v in basis.fields:
        assert v.certificate_holds()
        assert Form.exact(f).wedge(interior_product(v)) == vol.scale(v.apply(f))
        assert xi_eta(v, f).holds()


def test_df_equals_fd_plus_one(f):
    """D(f * fb omega) - f D(fb omega) = fb omega, with f*v_b as the lift of f*b."""
    jsb = jacobi_basis(f, track=True)
    for b in coefficient_candidates_jacobi(f, jsb, tjurina_number(f))[:3]:
        vb = lift_jacobi(b, f, jsb)
        vfb = vb.multiply(f)
        assert vfb.certificate_holds()
        lhs = reduce_mod(divergence(vfb), jsb)
        fd = reduce_mod(divergence(vb) * f, jsb)
        fb = jsb.algebra.reduce(f * b)
        keys = set(lhs) | set(fd) | set(fb)
        assert all(lhs.get(k, 0) == fd.get(k, 0) + fb.get(k, 0) for k in keys)
