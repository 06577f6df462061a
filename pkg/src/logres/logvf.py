"""Logarithmic vector fields along a hypersurface germ {f = 0}.

A field ``v = sum a_i d/dx_i`` is logarithmic when ``v(f) = b f`` for some
``b`` in the local ring.  Two constructions of a basis modulo trivial fields
are provided:

* polar: coefficients ``a`` of the distinguished partial form the ideal
  quotient ``(f, other partials) : (distinguished partial)``, computed here
  from local cohomology;
* jacobi: cofactors ``b`` form the ideal quotient ``J : (f)``.

Each witness is lifted to a full field with an exact certificate.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .errors import (
    InconsistentInvariantsError,
    InvariantViolation,
    NonGenericCoordinateError,
    PreconditionError,
)
from .linalg import rref
from .localcoh import PolarCohomology, annihilator_standard_basis, polar_cohomology
from .localstd import (
    StandardBasis,
    ideal_quotient,
    jacobi_basis,
    jacobian,
    mora_divide,
    polar_basis,
    require_singular_germ,
    tjurina_number,
)
from .poly import LocalFraction, Polynomial, common_denominator


class VectorField:
    """``sum(a_i * d/dx_i)`` with cofactor ``b``: ``v(f) == b * f``.

    The certificate is checked on construction unless ``verify`` is false.
    """

    def __init__(self, f: Polynomial, coefficients, cofactor, witness=None, verify: bool = True):
        ring = f.ring
        if len(coefficients) != ring.n:
            raise ValueError(f"expected {ring.n} coefficients")
        self.f = f
        self.coefficients = [LocalFraction.of(a, ring) for a in coefficients]
        self.cofactor = LocalFraction.of(cofactor, ring)
        self.witness = witness
        if verify and not self.certificate_holds():
            raise InvariantViolation("v(f) != b*f for a constructed vector field")

    @property
    def ring(self):
        return self.f.ring

    def apply(self, g: Polynomial) -> LocalFraction:
        acc = LocalFraction(self.ring.zero())
        for i, a in enumerate(self.coefficients):
            if a:
                acc = acc + a * g.diff(i)
        return acc

    def certificate_residual(self) -> Polynomial:
        """Numerator of ``v(f) - b f``; zero exactly when the certificate holds."""
        return (self.apply(self.f) - self.cofactor * self.f).num

    def certificate_holds(self) -> bool:
        return not self.certificate_residual()

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(
            self.f,
            [a + b for a, b in zip(self.coefficients, other.coefficients)],
            self.cofactor + other.cofactor,
            verify=False,
        )

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + (-other)

    def scale(self, c) -> "VectorField":
        return VectorField(self.f, [a * c for a in self.coefficients], self.cofactor * c,
                           self.witness, verify=False)

    def multiply(self, p: Polynomial) -> "VectorField":
        """The field ``p * v``; its cofactor is ``p * b``."""
        return VectorField(self.f, [a * p for a in self.coefficients], self.cofactor * p,
                           verify=False)

    def subs_param(self, value) -> "VectorField":
        f = self.f.subs_param(value)
        return VectorField(
            f,
            [LocalFraction(a.num.subs_param(value, f.ring), _subs_den(a.den, value, f.ring))
             for a in self.coefficients],
            LocalFraction(self.cofactor.num.subs_param(value, f.ring),
                          _subs_den(self.cofactor.den, value, f.ring)),
            self.witness.subs_param(value, f.ring) if self.witness is not None else None,
        )

    def presentation(self):
        """(numerators, common denominator, cofactor)."""
        nums, den = common_denominator(self.coefficients)
        return nums, den, self.cofactor

    def render(self) -> str:
        nums, den, _ = self.presentation()
        parts = []
        for name, num in zip(self.ring.names, nums):
            if num:
                parts.append(f"({num.render()})*d/d{name}")
        body = " + ".join(parts) if parts else "0"
        if den == self.ring.one():
            return body
        return f"(1/({den.render()}))*[{body}]"

    def __repr__(self):
        return f"VectorField({self.render()!r})"


def _subs_den(den: Polynomial, value, ring):
    from .errors import SpecializationError

    d = den.subs_param(value, ring)
    if not d.is_unit():
        raise SpecializationError(f"denominator {den} vanishes at the origin for this parameter value")
    return d


def logarithmic_cofactor(f: Polynomial, coefficients) -> Optional[LocalFraction]:
    """Return ``b`` with ``v(f) = b f`` when ``v`` is logarithmic, else None.

    Decided by Mora division of the numerator of ``v(f)`` by ``f``.
    """
    ring = f.ring
    acc = LocalFraction(ring.zero())
    for i, a in enumerate(coefficients):
        a = LocalFraction.of(a, ring)
        if a:
            acc = acc + a * f.diff(i)
    if not acc.num:
        return LocalFraction(ring.zero())
    div = mora_divide(acc.num, [f])
    if div.remainder:
        return None
    return LocalFraction(div.quotients[0], div.unit * acc.den)


# ---------------------------------------------------------------------------
# coefficient spaces

def _quotient_span(sb_i: StandardBasis, generators: Sequence[Polynomial]) -> List[Polynomial]:
    """Basis of (generators)/I inside O/I, reduced with greatest monomials leading."""
    alg = sb_i.algebra
    rows = []
    for m in alg.basis:
        for s in generators:
            rows.append(alg.reduce(s.mul_term(m, 1)))
    return [alg.to_poly(row) for _, row in rref(rows)]


def coefficient_ideal_polar(f: Polynomial, pc: Optional[PolarCohomology] = None) -> StandardBasis:
    """(f, other partials) : (distinguished partial), as the annihilator of H_Delta."""
    pc = pc or polar_cohomology(f)
    return annihilator_standard_basis(pc.delta)


def coefficient_candidates_polar(
    f: Polynomial, pc: Optional[PolarCohomology] = None, psb: Optional[StandardBasis] = None
) -> List[Polynomial]:
    """Basis A of the polar coefficient ideal modulo (f, other partials)."""
    psb = psb or polar_basis(f)
    pc = pc or polar_cohomology(f)
    sb = coefficient_ideal_polar(f, pc)
    basis = _quotient_span(psb, sb.generators)
    if len(basis) != pc.tau:
        raise InconsistentInvariantsError(f"|A| = {len(basis)} but tau = {pc.tau}")
    return basis


def coefficient_ideal_jacobi(f: Polynomial, jsb: Optional[StandardBasis] = None) -> StandardBasis:
    jsb = jsb or jacobi_basis(f)
    return ideal_quotient(jacobian(f), f, jsb)


def coefficient_candidates_jacobi(f: Polynomial, jsb: Optional[StandardBasis] = None,
                                  tau: Optional[int] = None) -> List[Polynomial]:
    """Basis B of (J : f) / J."""
    jsb = jsb or jacobi_basis(f)
    sb = coefficient_ideal_jacobi(f, jsb)
    basis = _quotient_span(jsb, sb.generators)
    tau = tjurina_number(f) if tau is None else tau
    if len(basis) != tau:
        raise InconsistentInvariantsError(f"|B| = {len(basis)} but tau = {tau}")
    return basis


# ---------------------------------------------------------------------------
# lifting

def lift_polar(a: Polynomial, f: Polynomial, psb: Optional[StandardBasis] = None) -> VectorField:
    """Field with distinguished coefficient exactly ``a``.

    Division gives ``u a g = c_0 f + sum c_i d_i f`` (g the distinguished
    partial); then ``v = a d_1 - sum (c_i/u) d_i`` has cofactor ``c_0/u``.
    """
    ring = f.ring
    d = ring.distinguished
    if psb is None or psb.reps is None:
        psb = polar_basis(f, track=True)
    if not a:
        return VectorField(f, [ring.zero()] * ring.n, ring.zero(), witness=a)
    div = psb.divide(a * f.diff(d))
    if div.remainder:
        raise PreconditionError(f"{a.render()} is not in the polar coefficient ideal")
    u = div.unit
    others = [i for i in range(ring.n) if i != d]
    coeffs = [None] * ring.n
    coeffs[d] = LocalFraction(a)
    for q, i in zip(div.quotients[1:], others):
        coeffs[i] = LocalFraction(-q, u)
    return VectorField(f, coeffs, LocalFraction(div.quotients[0], u), witness=a)


def lift_jacobi(b: Polynomial, f: Polynomial, jsb: Optional[StandardBasis] = None) -> VectorField:
    """Field with cofactor exactly ``b``: ``u b f = sum q_i d_i f``, ``v = sum (q_i/u) d_i``."""
    ring = f.ring
    if jsb is None or jsb.reps is None:
        jsb = jacobi_basis(f, track=True)
    if not b:
        return VectorField(f, [ring.zero()] * ring.n, ring.zero(), witness=b)
    div = jsb.divide(b * f)
    if div.remainder:
        raise PreconditionError(f"{b.render()} * f is not in the Jacobi ideal")
    coeffs = [LocalFraction(q, div.unit) for q in div.quotients]
    return VectorField(f, coeffs, LocalFraction(b), witness=b)


# ---------------------------------------------------------------------------
# triviality

def is_trivial(v: VectorField, psb: Optional[StandardBasis] = None) -> bool:
    """A logarithmic field is trivial iff its distinguished coefficient lies in
    (f, other partials)."""
    psb = psb or polar_basis(v.f)
    a = v.coefficients[v.ring.distinguished]
    return psb.contains(a.num)


def equivalent(v: VectorField, w: VectorField, psb: Optional[StandardBasis] = None) -> bool:
    """``v ~ w``: the difference is a logarithmic field and it is trivial.

    Logarithmicity of the difference is checked independently, so a field that
    is not logarithmic is never equivalent to one that is.
    """
    diff = v - w
    if logarithmic_cofactor(v.f, diff.coefficients) is None:
        return False
    return is_trivial(diff, psb)


def polar_class(v: VectorField, psb: Optional[StandardBasis] = None) -> dict:
    """Coordinates of the class of ``v`` modulo trivial fields: the normal form
    of the distinguished coefficient modulo (f, other partials)."""
    psb = psb or polar_basis(v.f)
    alg = psb.algebra
    a = v.coefficients[v.ring.distinguished]
    vec = alg.reduce(a.num)
    if a.den != v.ring.one():
        vec = alg.multiply(vec, alg.inverse(a.den))
    return vec


def class_rank(fields: Sequence[VectorField], psb: Optional[StandardBasis] = None) -> int:
    if not fields:
        return 0
    psb = psb or polar_basis(fields[0].f)
    return len(rref([polar_class(v, psb) for v in fields]))


def trivial_generators(f: Polynomial) -> List[VectorField]:
    """The fields ``f d_i`` and ``d_j f d_i - d_i f d_j`` (i < j)."""
    ring = f.ring
    n = ring.n
    zero = ring.zero()
    grads = jacobian(f)
    out = []
    for i in range(n):
        coeffs = [zero] * n
        coeffs[i] = f
        out.append(VectorField(f, coeffs, grads[i]))
    for i in range(n):
        for j in range(i + 1, n):
            coeffs = [zero] * n
            coeffs[i] = grads[j]
            coeffs[j] = -grads[i]
            out.append(VectorField(f, coeffs, zero))
    return out


# ---------------------------------------------------------------------------

@dataclass
class LogVFBasis:
    f: Polynomial
    method: str
    fields: List[VectorField]
    witnesses: List[Polynomial]
    tau: int
    independent: Optional[bool] = None
    notes: List[str] = field(default_factory=list)

    def __len__(self):
        return len(self.fields)


def logvf_basis(f: Polynomial, method: str = "polar") -> LogVFBasis:
    """tau non-trivial logarithmic fields, one per witness of the chosen method."""
    require_singular_germ(f)
    if method == "polar":
        psb = polar_basis(f, track=True)
        pc = polar_cohomology(f)
        tau = pc.tau
        witnesses = coefficient_candidates_polar(f, pc, psb)
        fields = [lift_polar(a, f, psb) for a in witnesses]
    elif method == "jacobi":
        jsb = jacobi_basis(f, track=True)
        tau = tjurina_number(f)
        witnesses = coefficient_candidates_jacobi(f, jsb, tau)
        fields = [lift_jacobi(b, f, jsb) for b in witnesses]
        try:
            psb = polar_basis(f)
        except NonGenericCoordinateError:
            psb = None
    else:
        raise ValueError(f"unknown method {method!r}")
    basis = LogVFBasis(f, method, fields, witnesses, tau)
    if psb is None:
        basis.notes.append("non-triviality not checked: polar ideal is not zero-dimensional")
        return basis
    rank = class_rank(fields, psb)
    basis.independent = rank == tau
    if not basis.independent:
        raise InvariantViolation(f"the {len(fields)} fields span only {rank} classes modulo trivial fields")
    return basis
