"""Gauss-Manin data through the Brieskorn formula.

For a logarithmic field ``v`` with ``v(f) = b f`` one has
``D(f b omega) = div(v) omega``.  Values are reported as coordinates over the
monomial basis M of O/J, after inverting unit denominators modulo J.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import NotIntegrallyClosedError
from .localstd import (
    StandardBasis,
    ideal_membership,
    jacobi_basis,
    jacobian,
    require_singular_germ,
    tjurina_number,
)
from .logvf import VectorField, coefficient_candidates_jacobi, lift_jacobi
from .poly import LocalFraction, Polynomial


def divergence(v: VectorField) -> LocalFraction:
    acc = LocalFraction(v.ring.zero())
    for i, a in enumerate(v.coefficients):
        if a:
            acc = acc + a.diff(i)
    return acc


def reduce_mod(value: LocalFraction, jsb: StandardBasis) -> Dict[int, object]:
    """Coordinates of a local-ring element in O/J over the monomial basis."""
    alg = jsb.algebra
    vec = alg.reduce(value.num)
    if value.den != value.ring.one():
        vec = alg.multiply(vec, alg.inverse(value.den))
    return vec


@dataclass
class BrieskornEntry:
    """D(f b omega) = divergence * omega, reduced over M."""

    witness_b: Polynomial
    field: VectorField
    divergence: LocalFraction
    reduced: Dict[int, object]
    basis: list

    def as_polynomial(self) -> Polynomial:
        ring = self.witness_b.ring
        return Polynomial(ring, {self.basis[k]: c for k, c in self.reduced.items()})


def brieskorn_entry(b: Polynomial, f: Polynomial, jsb: Optional[StandardBasis] = None) -> BrieskornEntry:
    if jsb is None or jsb.reps is None:
        jsb = jacobi_basis(f, track=True)
    v = lift_jacobi(b, f, jsb)
    div = divergence(v)
    return BrieskornEntry(b, v, div, reduce_mod(div, jsb), list(jsb.algebra.basis))


def fD_action(b: Polynomial, f: Polynomial, jsb: Optional[StandardBasis] = None,
              entry: Optional[BrieskornEntry] = None) -> Dict[int, object]:
    """Coordinates of fD(b omega) = D(f b omega) - b omega, using Df = fD + 1."""
    if jsb is None or jsb.reps is None:
        jsb = jacobi_basis(f, track=True)
    entry = entry or brieskorn_entry(b, f, jsb)
    out = dict(entry.reduced)
    for k, c in jsb.algebra.reduce(b).items():
        w = out.get(k, 0) - c
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


# ---------------------------------------------------------------------------
# integral dependence of degree two

def _pairs(n: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i, n)]


@dataclass
class IntegralRelation:
    """unit*f^2 = sum a_i f d_i f + sum_{i<=j} a_ij d_i f d_j f."""

    f: Polynomial
    unit_factor: Polynomial
    linear_coeffs: List[Polynomial]
    quadratic_coeffs: Dict[Tuple[int, int], Polynomial]

    def residual(self) -> Polynomial:
        f = self.f
        g = jacobian(f)
        acc = self.unit_factor * f * f
        for i, a in enumerate(self.linear_coeffs):
            if a:
                acc = acc - a * f * g[i]
        for (i, j), a in self.quadratic_coeffs.items():
            if a:
                acc = acc - a * g[i] * g[j]
        return acc

    def holds(self) -> bool:
        return self.unit_factor.is_unit() and not self.residual()


def check_relation(rel: IntegralRelation) -> bool:
    return rel.holds()


def check_gradient_relation(unit: Polynomial, coeffs, f: Polynomial, power: int = 2) -> bool:
    """unit * f^power == sum coeffs[i] * d_i f, with unit a unit."""
    acc = unit * f ** power
    for i, h in enumerate(coeffs):
        acc = acc - h * f.diff(i)
    return unit.is_unit() and not acc


def integral_dependence_f2(f: Polynomial) -> IntegralRelation:
    """A relation for f^2 over the products f d_i f and d_i f d_j f."""
    require_singular_germ(f)
    n = f.ring.n
    g = jacobian(f)
    pairs = _pairs(n)
    # f in J gives u f = sum q_i d_i f, hence u f^2 = sum q_i f d_i f
    jsb = jacobi_basis(f, track=True)
    div = jsb.divide(f)
    if not div.remainder:
        rel = IntegralRelation(f, div.unit, list(div.quotients), {pr: f.ring.zero() for pr in pairs})
        if rel.holds():
            return rel
    gens = [f * gi for gi in g] + [g[i] * g[j] for i, j in pairs]
    member = ideal_membership(f * f, gens)
    if not member:
        raise NotIntegrallyClosedError(
            "f^2 is not in the ideal generated by f*J and J^2 (no degree-2 relation)"
        )
    cert = member.certificate
    rel = IntegralRelation(
        f,
        cert.unit,
        cert.quotients[:n],
        {pr: q for pr, q in zip(pairs, cert.quotients[n:])},
    )
    if not rel.holds():
        raise AssertionError("division certificate does not expand to the relation")
    return rel


@dataclass
class SaturationStep:
    """D^2(f^2 omega) from a degree-two relation normalized to unit factor 1."""

    linear: List[LocalFraction]
    quadratic: Dict[Tuple[int, int], LocalFraction]
    remainder_term: LocalFraction
    certificate: List[LocalFraction]
    value: LocalFraction
    reduced: Dict[int, object]
    basis: list

    def as_polynomial(self, ring) -> Polynomial:
        return Polynomial(ring, {self.basis[k]: c for k, c in self.reduced.items()})


def saturation_step(rel: IntegralRelation, f: Optional[Polynomial] = None,
                    jsb: Optional[StandardBasis] = None) -> Optional[SaturationStep]:
    """Evaluate D^2(f^2 omega) via R = (sum d_i a_i) f + sum a_ij d_i d_j f.

    The relation is first rewritten as ``f^2 + sum a_i f d_i f + sum a_ij ... = 0``
    by dividing by the unit exactly.  Returns None when R is not in J.
    """
    f = rel.f if f is None else f
    ring = f.ring
    n = ring.n
    if jsb is None or jsb.reps is None:
        jsb = jacobi_basis(f, track=True)
    u = rel.unit_factor
    lin = [LocalFraction(-a, u) for a in rel.linear_coeffs]
    quad = {pr: LocalFraction(-rel.quadratic_coeffs.get(pr, ring.zero()), u) for pr in _pairs(n)}
    zero = LocalFraction(ring.zero())
    div_lin = zero
    for i, a in enumerate(lin):
        div_lin = div_lin + a.diff(i)
    R = div_lin * f
    for (i, j), a in quad.items():
        R = R + a * f.diff(i).diff(j)
    div = jsb.divide(R.num)
    if div.remainder:
        return None
    c = [LocalFraction(q, div.unit * R.den) for q in div.quotients]
    value = zero
    for i in range(n):
        value = value + lin[i].diff(i) + c[i].diff(i)
    for (i, j), a in quad.items():
        value = value + a.diff(i).diff(j)
    value = -value
    return SaturationStep(lin, quad, R, c, value, reduce_mod(value, jsb), list(jsb.algebra.basis))


def saturation_by_two_steps(rel: IntegralRelation, jsb: Optional[StandardBasis] = None) -> Optional[Dict[int, object]]:
    """Independent route to D^2(f^2 omega): apply the Brieskorn formula to the
    gradient expansion of f^2, write the result as an element of J with a fresh
    division certificate, and apply the formula again.  None when the first
    value is not in J."""
    f = rel.f
    ring = f.ring
    n = ring.n
    if jsb is None or jsb.reps is None:
        jsb = jacobi_basis(f, track=True)
    g = jacobian(f)
    u = rel.unit_factor
    # f^2 = sum_i h_i d_i f
    h = []
    for i in range(n):
        acc = rel.linear_coeffs[i] * f
        for j in range(i, n):
            q = rel.quadratic_coeffs.get((i, j))
            if q:
                acc = acc + q * g[j]
        h.append(LocalFraction(acc, u))
    first = LocalFraction(ring.zero())
    for i in range(n):
        first = first + h[i].diff(i)
    div = jsb.divide(first.num)
    if div.remainder:
        return None
    k = [LocalFraction(q, div.unit * first.den) for q in div.quotients]
    second = LocalFraction(ring.zero())
    for i in range(n):
        second = second + k[i].diff(i)
    return reduce_mod(second, jsb)


# ---------------------------------------------------------------------------

@dataclass
class ConnectionReport:
    basis_M: list
    entries: List[BrieskornEntry]
    mu: int
    tau: int
    relation: Optional[IntegralRelation] = None
    saturation: Optional[SaturationStep] = None
    notes: List[str] = field(default_factory=list)


def connection_report(f: Polynomial) -> ConnectionReport:
    require_singular_germ(f)
    jsb = jacobi_basis(f, track=True)
    mu = jsb.dimension
    tau = tjurina_number(f)
    B = coefficient_candidates_jacobi(f, jsb, tau)
    entries = [brieskorn_entry(b, f, jsb) for b in B]
    report = ConnectionReport(list(jsb.algebra.basis), entries, mu, tau)
    if mu > tau:
        report.notes.append(f"{tau} relations for mu = {mu}: saturation required")
        try:
            rel = integral_dependence_f2(f)
        except NotIntegrallyClosedError as exc:
            report.notes.append(str(exc))
        else:
            report.relation = rel
            report.saturation = saturation_step(rel, f, jsb)
            if report.saturation is None:
                report.notes.append("R is not in J: no saturation value from this relation")
    return report
