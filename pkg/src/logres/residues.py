"""Torsion differential forms and logarithmic residues.

Forms are stored on the wedge basis ``dx_I`` for increasing index tuples ``I``
in the ring's variable order; ``omega = dx_1 ^ ... ^ dx_n``.  For a
logarithmic field ``v`` with ``v(f) = b f`` the form ``beta = i_v(omega)``
satisfies ``g beta = df ^ xi + f eta`` with ``g`` the distinguished partial,
``xi = i_e(beta)`` and ``eta = b i_e(omega)`` (``e`` the distinguished
direction).  The logarithmic residue of ``beta / f`` is ``(xi / g)|_S``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InvariantViolation
from .linalg import EchelonBasis
from .localstd import tjurina_basis
from .logvf import LogVFBasis, VectorField, logvf_basis
from .poly import LocalFraction, Polynomial, Ring, common_denominator, monomials_up_to

Index = Tuple[int, ...]


class Form:
    """A differential form with local-ring coefficients."""

    __slots__ = ("ring", "degree", "coefficients")

    def __init__(self, ring: Ring, degree: int, coefficients: Optional[Dict[Index, object]] = None):
        self.ring = ring
        self.degree = degree
        out = {}
        for idx, c in (coefficients or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or list(idx) != sorted(set(idx)):
                raise ValueError(f"index {idx} is not an increasing {degree}-tuple")
            c = LocalFraction.of(c, ring)
            if c:
                out[idx] = c
        self.coefficients = out

    @classmethod
    def volume(cls, ring: Ring) -> "Form":
        return cls(ring, ring.n, {tuple(range(ring.n)): ring.one()})

    @classmethod
    def exact(cls, f: Polynomial) -> "Form":
        """df."""
        return cls(f.ring, 1, {(i,): f.diff(i) for i in range(f.ring.n)})

    def __bool__(self):
        return bool(self.coefficients)

    def __eq__(self, other):
        if not isinstance(other, Form) or other.degree != self.degree:
            return NotImplemented
        keys = set(self.coefficients) | set(other.coefficients)
        zero = LocalFraction(self.ring.zero())
        return all(
            self.coefficients.get(k, zero) == other.coefficients.get(k, zero) for k in keys
        )

    __hash__ = None

    def __add__(self, other: "Form") -> "Form":
        if other.degree != self.degree:
            raise ValueError("adding forms of different degrees")
        out = dict(self.coefficients)
        for k, c in other.coefficients.items():
            out[k] = out[k] + c if k in out else c
        return Form(self.ring, self.degree, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Form":
        """Multiply by a scalar, polynomial or local fraction."""
        return Form(self.ring, self.degree, {k: v * c for k, v in self.coefficients.items()})

    def wedge(self, other: "Form") -> "Form":
        out: dict = {}
        for a, ca in self.coefficients.items():
            for b, cb in other.coefficients.items():
                if set(a) & set(b):
                    continue
                merged = a + b
                sign = _permutation_sign(merged)
                key = tuple(sorted(merged))
                term = ca * cb * sign
                out[key] = out[key] + term if key in out else term
        return Form(self.ring, self.degree + other.degree, out)

    def contract(self, i: int) -> "Form":
        """Interior product with d/dx_i."""
        out = {}
        for idx, c in self.coefficients.items():
            if i in idx:
                p = idx.index(i)
                out[idx[:p] + idx[p + 1:]] = c * (-1 if p % 2 else 1)
        return Form(self.ring, self.degree - 1, out)

    def subs_param(self, value) -> "Form":
        ring = self.ring.without_param()
        out = {}
        for k, c in self.coefficients.items():
            out[k] = LocalFraction(c.num.subs_param(value, ring), c.den.subs_param(value, ring))
        return Form(ring, self.degree, out)

    def series(self, bound: int) -> Dict[Index, Polynomial]:
        return {k: c.series(bound) for k, c in self.coefficients.items()}

    def presentation(self):
        """(numerators by index, common unit denominator)."""
        keys = sorted(self.coefficients)
        if not keys:
            return {}, self.ring.one()
        nums, den = common_denominator([self.coefficients[k] for k in keys])
        return dict(zip(keys, nums)), den

    def render(self) -> str:
        nums, den = self.presentation()
        if not nums:
            return "0"
        names = self.ring.names
        parts = []
        for k in sorted(nums):
            basis = "^".join(f"d{names[i]}" for i in k)
            text = nums[k].render()
            parts.append(f"({text})*{basis}" if basis else f"({text})")
        body = " + ".join(parts)
        if den == self.ring.one():
            return body
        return f"(1/({den.render()}))*[{body}]"

    def __repr__(self):
        return f"Form({self.render()!r})"


def _permutation_sign(seq) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def interior_product(v: VectorField) -> Form:
    """beta = i_v(omega) = sum (-1)^(i+1) a_i dx_1 ^ .. (omit i) .. ^ dx_n."""
    ring = v.ring
    n = ring.n
    out = {}
    for i, a in enumerate(v.coefficients):
        if a:
            out[tuple(j for j in range(n) if j != i)] = a * (-1 if i % 2 else 1)
    return Form(ring, n - 1, out)


# ---------------------------------------------------------------------------

@dataclass
class TorsionClass:
    representative: Form
    witness: VectorField


def torsion_basis(f: Polynomial, basis: Optional[LogVFBasis] = None) -> List[TorsionClass]:
    """The tau torsion classes i_v(omega) of a basis of non-trivial fields."""
    basis = basis or logvf_basis(f)
    return [TorsionClass(interior_product(v), v) for v in basis.fields]


@dataclass
class ResidueRepresentative:
    """``g beta = df ^ xi + f eta``; the residue of beta/f is (xi/g) restricted to S."""

    xi: Form
    denominator: Polynomial
    eta: Form
    source: VectorField
    beta: Form

    def identity_residual(self) -> Form:
        f = self.source.f
        return (
            self.beta.scale(self.denominator)
            - Form.exact(f).wedge(self.xi)
            - self.eta.scale(f)
        )

    def holds(self) -> bool:
        return not self.identity_residual()

    def render(self) -> str:
        return f"[{self.xi.render()}]/({self.denominator.render()})|_S"


def xi_eta(v: VectorField, f: Optional[Polynomial] = None) -> ResidueRepresentative:
    """Decompose beta = i_v(omega) against the distinguished partial of f."""
    f = f if f is not None else v.f
    ring = f.ring
    e = ring.distinguished
    beta = interior_product(v)
    xi = beta.contract(e)
    eta = Form.volume(ring).contract(e).scale(v.cofactor)
    rep = ResidueRepresentative(xi, f.diff(e), eta, v, beta)
    if not rep.holds():
        raise InvariantViolation("g*beta != df^xi + f*eta for a logarithmic field")
    return rep


@dataclass
class RegularMeromorphicBasis:
    """tau residue representatives; together with holomorphic forms they span
    the regular meromorphic (n-2)-forms on S."""

    representatives: List[ResidueRepresentative]
    assumptions: List[str] = field(default_factory=list)

    def __len__(self):
        return len(self.representatives)

    def __iter__(self):
        return iter(self.representatives)

    def __getitem__(self, k):
        return self.representatives[k]


def regular_meromorphic_basis(f: Polynomial, basis: Optional[LogVFBasis] = None) -> RegularMeromorphicBasis:
    basis = basis or logvf_basis(f)
    reps = [xi_eta(v, f) for v in basis.fields]
    name = f.ring.names[f.ring.distinguished]
    return RegularMeromorphicBasis(
        reps,
        [f"S meets {{df/d{name} = 0}} in dimension <= n-2 (assumed, not checked)"],
    )


# ---------------------------------------------------------------------------
# membership in f*Omega^{n-1} + df ^ Omega^{n-2}

@dataclass
class TorsionCertificate:
    """beta = f*gamma + df ^ delta."""

    gamma: Form
    delta: Form

    def residual(self, beta: Form, f: Polynomial) -> Form:
        return beta - self.gamma.scale(f) - Form.exact(f).wedge(self.delta)


def trivial_field_certificates(f: Polynomial):
    """Pairs (field, certificate) for the generating trivial fields.

    ``f d_i`` gives ``f i_i(omega)``; ``d_j f d_i - d_i f d_j`` gives
    ``df ^ i_j i_i(omega)``.
    """
    from .logvf import trivial_generators

    ring = f.ring
    n = ring.n
    vol = Form.volume(ring)
    zero_top = Form(ring, n - 1)
    zero_low = Form(ring, n - 2)
    fields = trivial_generators(f)
    out = []
    k = 0
    for i in range(n):
        out.append((fields[k], TorsionCertificate(vol.contract(i), zero_low)))
        k += 1
    for i in range(n):
        for j in range(i + 1, n):
            out.append((fields[k], TorsionCertificate(zero_top, vol.contract(i).contract(j))))
            k += 1
    return out


def default_truncation(f: Polynomial) -> int:
    socle = tjurina_basis(f).algebra.socle_degree
    return 2 * max(f.max_wdeg(), socle)


def independent_modulo_trivial(f: Polynomial, forms: Sequence[Form], bound: Optional[int] = None) -> bool:
    """Exact rank test of the (n-1)-forms modulo f*Omega + df ^ Omega, with
    coefficients truncated below weighted degree ``bound``.

    Independence after truncation implies independence, since the truncated
    terms form a submodule.
    """
    ring = f.ring
    n = ring.n
    bound = default_truncation(f) if bound is None else bound
    monos = monomials_up_to(ring.weights, bound - 1)
    top = list(combinations(range(n), n - 1))
    low = list(combinations(range(n), n - 2))
    df = Form.exact(f)
    fmin = f.min_wdeg()
    dmin = min(f.diff(i).min_wdeg() for i in range(n) if f.diff(i))
    ech = EchelonBasis()

    def vector(coeffs: Dict[Index, Polynomial]):
        vec = {}
        for idx, p in coeffs.items():
            for m, c in p.truncate(bound).terms.items():
                vec[(idx, m)] = c
        return vec

    tag = 0
    for m in monos:
        w = ring.wdeg(m)
        if w + fmin < bound:
            fm = f.mul_term(m, 1)
            for idx in top:
                ech.add(vector({idx: fm}), tag)
                tag += 1
        if w + dmin < bound:
            xm = ring.monomial(m)
            for idx in low:
                form = df.wedge(Form(ring, n - 2, {idx: xm}))
                ech.add(vector({k: c.num for k, c in form.coefficients.items()}), tag)
                tag += 1
    for beta in forms:
        if ech.add(vector(beta.series(bound)), tag) is not None:
            return False
        tag += 1
    return True
