from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from logres.coeffield import RatFunc
from logres.errors import InconsistentInvariantsError
from logres.localcoh import (
    CohomologyClass,
    CohomologySpace,
    act,
    annihilated_space,
    annihilator_standard_basis,
    duality_basis,
    image_space,
    kernel_space,
    polar_cohomology,
    residue_pairing,
    same_span,
)
from logres.localstd import jacobian, polar_generators, standard_basis
from logres.poly import Ring

t = RatFunc.param()
R2 = Ring(("x", "y"))


def cls(ring, spec):
    """Class from {"x^a*y^b": c} meaning sum c * [1/(x^a*y^b)]."""
    return CohomologyClass(ring, {ring.parse(m).lm(): c for m, c in spec.items()})


def test_act_examples():
    c = cls(R2, {"x^2*y": 1})
    assert act(R2.parse("x"), c) == cls(R2, {"x*y": 1})
    assert not act(R2.parse("x"), cls(R2, {"x*y": 1}))
    fx = R2.parse("x^2-y^3").diff(0)
    assert act(fx, c) == cls(R2, {"x*y": 2})


def test_residue_pairing():
    assert residue_pairing(R2.parse("x*y"), cls(R2, {"x^2*y^2": 1})) == 1
    assert residue_pairing(R2.one(), cls(R2, {"x^2*y": 1})) == 0


def test_socle_only():
    space = annihilated_space([R2.var(0), R2.var(1)], 1)
    assert space.basis == [cls(R2, {"x*y": 1})]


def test_too_many_classes_is_an_error():
    with pytest.raises(InconsistentInvariantsError):
        annihilated_space([R2.parse("x^2"), R2.parse("y^2")], 3)


PRINTED_GAMMA = [
    {"x*y*z": 1}, {"x*y*z^2": 1}, {"x^2*y*z": 1}, {"x*y^2*z": 1}, {"x*y*z^3": 1},
    {"x^2*y*z^2": 1}, {"x*y^2*z^2": 1}, {"x^2*y^2*z": 1}, {"x*y*z^4": 1},
    {"x^2*y*z^3": 1, "x*y^3*z": -t / 3},
    {"x*y^2*z^3": 1, "x^3*y*z": -t / 3},
    {"x^2*y^2*z^2": 1},
    {"x^2*y*z^4": 1, "x*y^3*z^2": -t / 3},
    {"x*y^2*z^4": 1, "x^3*y*z^2": -t / 3},
    {"x^2*y^2*z^3": 1, "x^4*y*z": -t / 3, "x*y^4*z": -t / 3, "x*y*z^5": -t / 3},
    {"x^2*y^2*z^4": 1, "x^4*y*z^2": -t / 3, "x*y^4*z^2": -t / 3, "x*y*z^6": -t / 3},
]

PRINTED_DELTA = [
    {"x*y*z": 1}, {"x*y*z^2": 1}, {"x^2*y*z": 1}, {"x*y^2*z": 1},
    {"x^2*y^2*z": 1, "x*y*z^3": t / 6},
]


@pytest.fixture(scope="module")
def u12_cohomology(ft):
    return polar_cohomology(ft)


def test_gamma_matches_printed_basis(ft, u12_cohomology):
    gamma = u12_cohomology.gamma
    assert gamma.dimension == 16
    printed = [cls(ft.ring, c) for c in PRINTED_GAMMA]
    assert same_span(gamma.basis, printed)
    assert gamma.contains(printed[14])


def test_gamma_classes_are_annihilated(ft, u12_cohomology):
    for c in u12_cohomology.gamma.basis:
        for g in polar_generators(ft):
            assert not act(g, c)


def test_delta_matches_printed_basis(ft, u12_cohomology):
    delta = u12_cohomology.delta
    assert delta.dimension == 5
    assert same_span(delta.basis, [cls(ft.ring, c) for c in PRINTED_DELTA])


def test_kernel_dimension_is_tau(u12_cohomology):
    assert u12_cohomology.kernel.dimension == 11


def test_kernel_cusp(cusp):
    gamma = annihilated_space(polar_generators(cusp), 4)
    assert kernel_space(cusp.diff(0), gamma).dimension == 2


def test_image_and_kernel_trivial_cases(u12_cohomology, ft):
    gamma = u12_cohomology.gamma
    R = ft.ring
    assert same_span(image_space(R.one(), gamma).basis, gamma.basis)
    assert image_space(R.zero(), gamma).dimension == 0
    assert kernel_space(R.one(), gamma).dimension == 0


def test_kernel_with_wrong_tau_raises(u12_cohomology, ft):
    with pytest.raises(InconsistentInvariantsError):
        kernel_space(ft.diff(0), u12_cohomology.gamma, tau=12)


def test_annihilator_of_delta_u12(ft, u12_cohomology):
    sb = annihilator_standard_basis(u12_cohomology.delta)
    R = ft.ring
    printed = standard_basis([R.parse(s) for s in ("z^2-t/6*x*y", "x*z", "y*z", "x^2", "y^2")])
    assert sb.generators == printed.generators


def test_annihilator_of_delta_f0(f0):
    pc = polar_cohomology(f0)
    sb = annihilator_standard_basis(pc.delta)
    assert {g.render() for g in sb.generators} == {"z", "x^2", "y^2"}


def test_annihilator_of_socle():
    space = CohomologySpace(R2, [cls(R2, {"x*y": 1})])
    sb = annihilator_standard_basis(space)
    assert {g.render() for g in sb.generators} == {"x", "y"}


PRINTED_HJ = [
    {"x*y": 1}, {"x*y^2": 1}, {"x*y^3": 1}, {"x^2*y": 1}, {"x*y^4": 1}, {"x^2*y^2": 1},
    {"x*y^5": 1}, {"x^2*y^3": 1}, {"x*y^6": 1}, {"x^2*y^4": 1}, {"x^2*y^5": 1},
    {"x^2*y^6": 1, "x*y^7": Fraction(-6, 7) * t, "x^3*y": Fraction(2, 7) * t * t},
]


def test_e12_jacobi_cohomology(e12):
    space = annihilated_space(jacobian(e12), 12, role="J")
    assert space.dimension == 12
    assert same_span(space.basis, [cls(e12.ring, c) for c in PRINTED_HJ])
    assert all(not act(e12, c) for c in space.basis)


def test_duality_oracle(all_fixtures):
    for f in all_fixtures.values():
        sb = standard_basis(jacobian(f))
        direct = annihilated_space(jacobian(f), sb.dimension)
        assert same_span(direct.basis, duality_basis(sb).basis)


small = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3), max_size=3
).map(R2.from_terms)
classes = st.dictionaries(
    st.tuples(st.integers(1, 4), st.integers(1, 4)), st.integers(-3, 3), max_size=4
).map(lambda d: CohomologyClass(R2, d))


@settings(max_examples=60)
@given(small, small, classes)
def test_act_is_multiplicative(p, q, c):
    assert act(p * q, c) == act(p, act(q, c))
    assert act(p + q, c) == act(p, c) + act(q, c)
