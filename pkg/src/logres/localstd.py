"""Standard bases in the local ring at the origin.

Division follows Mora's tangent-cone normal form: reducers are chosen by
minimal ecart, and intermediate remainders of larger ecart are kept as extra
reducers, which forces a unit factor on the dividend.  Every division returns
``unit * p == sum(quotients[i] * divisors[i]) + remainder``.

For zero-dimensional ideals the quotient ring is finite dimensional; this module
then also provides fully reduced normal forms, canonical reduced standard bases
and the finite algebra structure (:class:`QuotientAlgebra`).
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .errors import InvariantViolation, NonGenericCoordinateError, NonIsolatedError
from .linalg import EchelonBasis, solve
from .poly import (
    Monomial,
    Polynomial,
    Ring,
    coprime,
    divides,
    mono_div,
    mono_lcm,
    mono_mul,
    monomials_up_to,
)


@dataclass
class DivisionResult:
    """``unit * dividend == sum(q * g for q, g in zip(quotients, divisors)) + remainder``."""

    dividend: Polynomial
    divisors: List[Polynomial]
    unit: Polynomial
    quotients: List[Polynomial]
    remainder: Polynomial

    def identity_residual(self) -> Polynomial:
        acc = self.unit * self.dividend - self.remainder
        for q, g in zip(self.quotients, self.divisors):
            if q:
                acc = acc - q * g
        return acc

    def check(self) -> bool:
        return not self.identity_residual() and self.unit.is_unit()


def mora_divide(p: Polynomial, divisors: Sequence[Polynomial], track: bool = True) -> DivisionResult:
    """Mora's weak normal form of ``p`` with respect to ``divisors``.

    The remainder's leading monomial is divisible by no divisor's leading
    monomial.  Ties between applicable reducers of equal ecart go to the
    earliest divisor in the list.
    """
    ring = p.ring
    divisors = list(divisors)
    if any(not g for g in divisors):
        raise ValueError("zero divisor in Mora division")
    # reducer entries: (lm, lc, ecart, poly, origin); origin is an index or a (unit, quotients) snapshot
    reducers = [(g.lm(), g.lc(), g.ecart(), g, j) for j, g in enumerate(divisors)]
    h = p
    unit = ring.one()
    quotients = [ring.zero() for _ in divisors] if track else []
    while h:
        lmh = h.lm()
        best = None
        for entry in reducers:
            if divides(entry[0], lmh) and (best is None or entry[2] < best[2]):
                best = entry
                if entry[2] == 0:
                    break
        if best is None:
            break
        glm, glc, gecart, g, origin = best
        hecart = h.ecart()
        if gecart > hecart:
            snapshot = (unit, list(quotients)) if track else None
            reducers.append((lmh, h.lc(), hecart, h, snapshot))
        c = h.lc() / glc
        t = mono_div(lmh, glm)
        h = h - g.mul_term(t, c)
        if track:
            if isinstance(origin, int):
                quotients[origin] = quotients[origin] + ring.monomial(t, c)
            else:
                u_prev, q_prev = origin
                unit = unit - u_prev.mul_term(t, c)
                quotients = [q - qp.mul_term(t, c) for q, qp in zip(quotients, q_prev)]
    if not track:
        return DivisionResult(p, divisors, ring.one(), [], h)
    return DivisionResult(p, divisors, unit, quotients, h)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    lf, lg = f.lm(), g.lm()
    lcm = mono_lcm(lf, lg)
    return f.mul_term(mono_div(lcm, lf), 1 / f.lc()) - g.mul_term(mono_div(lcm, lg), 1 / g.lc())


# ---------------------------------------------------------------------------

def _mora_standard_basis(gens: List[Polynomial], track: bool):
    """Buchberger-Mora completion.  Returns (polys, reps); reps[i] expresses
    polys[i] as a polynomial combination of ``gens`` (only when tracking)."""
    ring = gens[0].ring
    m = len(gens)
    polys: List[Polynomial] = []
    reps: List[Optional[list]] = []
    for j, g in enumerate(gens):
        if not g:
            continue
        polys.append(g)
        if track:
            rep = [ring.zero()] * m
            rep[j] = ring.one()
            reps.append(rep)
        else:
            reps.append(None)
    if not polys:
        return [], []

    pairs = set()
    for j in range(len(polys)):
        for i in range(j):
            pairs.add((i, j))

    def pair_key(pr):
        i, j = pr
        return (ring.wdeg(mono_lcm(polys[i].lm(), polys[j].lm())), j, i)

    while pairs:
        pr = min(pairs, key=pair_key)
        pairs.discard(pr)
        i, j = pr
        li, lj = polys[i].lm(), polys[j].lm()
        if coprime(li, lj):
            continue
        lcm = mono_lcm(li, lj)
        if any(
            k != i and k != j
            and divides(polys[k].lm(), lcm)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(polys))
        ):
            continue
        s = s_polynomial(polys[i], polys[j])
        if not s:
            continue
        div = mora_divide(s, polys, track=track)
        h = div.remainder
        if not h:
            continue
        if track:
            ti = mono_div(lcm, li)
            tj = mono_div(lcm, lj)
            ci = 1 / polys[i].lc()
            cj = 1 / polys[j].lc()
            rep_s = [
                a.mul_term(ti, ci) - b.mul_term(tj, cj) for a, b in zip(reps[i], reps[j])
            ]
            rep_h = [div.unit * r for r in rep_s]
            for q, rep in zip(div.quotients, reps):
                if q:
                    rep_h = [a - q * b for a, b in zip(rep_h, rep)]
            reps.append(rep_h)
        else:
            reps.append(None)
        polys.append(h)
        new = len(polys) - 1
        for k in range(new):
            pairs.add((k, new))
    return polys, reps


def _minimalize(polys, reps):
    """Keep one element per minimal leading monomial (earliest wins)."""
    keep = []
    for idx, p in enumerate(polys):
        lm = p.lm()
        redundant = False
        for jdx, q in enumerate(polys):
            if jdx == idx:
                continue
            lq = q.lm()
            if divides(lq, lm) and (lq != lm or jdx < idx):
                redundant = True
                break
        if not redundant:
            keep.append(idx)
    return [polys[i] for i in keep], [reps[i] for i in keep]


class StandardBasis:
    """Standard basis of an ideal of the local ring.

    ``generators`` is canonical: for zero-dimensional ideals the reduced basis
    ``{x^a - NF(x^a)}`` over the minimal generators ``x^a`` of the leading ideal,
    otherwise the minimalized monic basis.  ``raw``/``reps`` (when tracking was
    requested) are the completion output together with their expressions in
    terms of ``source``, used to produce membership certificates.
    """

    def __init__(self, ring: Ring, raw, reps=None, source=None, generators=None):
        self.ring = ring
        self.raw = list(raw)
        self.reps = reps
        self.source = list(source) if source is not None else None
        self._algebra = None
        self._zero_dim = None
        if generators is not None:
            self.generators = list(generators)
        else:
            self.generators = self._canonical()

    @property
    def order(self):
        return ("local-weighted", self.ring.weights)

    def leading_monomials(self) -> List[Monomial]:
        return [g.lm() for g in self.raw]

    def is_zero_dimensional(self) -> bool:
        if self._zero_dim is None:
            lms = self.leading_monomials()
            n = self.ring.n
            ok = True
            for i in range(n):
                if not any(all(e == 0 for k, e in enumerate(m) if k != i) for m in lms):
                    ok = False
                    break
            self._zero_dim = ok
        return self._zero_dim

    @property
    def algebra(self) -> "QuotientAlgebra":
        if self._algebra is None:
            if not self.is_zero_dimensional():
                raise NonIsolatedError("the quotient by this ideal is infinite dimensional")
            self._algebra = QuotientAlgebra(self.ring, self.raw)
        return self._algebra

    @property
    def dimension(self) -> int:
        return len(self.algebra.basis)

    def _canonical(self) -> List[Polynomial]:
        if not self.raw:
            return []
        if self.is_zero_dimensional():
            alg = self.algebra
            out = []
            for lm in sorted({g.lm() for g in self.raw}, key=self.ring.key, reverse=True):
                out.append(self.ring.monomial(lm) - alg.to_poly(alg.reduce_monomial(lm)))
            return out
        return sorted((g.monic() for g in self.raw), key=lambda g: self.ring.key(g.lm()), reverse=True)

    def contains(self, p: Polynomial) -> bool:
        if not p:
            return True
        if self.is_zero_dimensional():
            return not self.algebra.reduce(p)
        return not mora_divide(p, self.raw, track=False).remainder

    def divide(self, p: Polynomial) -> DivisionResult:
        """Mora division of ``p`` with quotients expressed over ``source``."""
        if self.reps is None:
            raise ValueError("standard basis was computed without tracking")
        div = mora_divide(p, self.raw, track=True)
        m = len(self.source)
        quotients = [self.ring.zero()] * m
        for q, rep in zip(div.quotients, self.reps):
            if q:
                quotients = [a + q * b for a, b in zip(quotients, rep)]
        return DivisionResult(p, list(self.source), div.unit, quotients, div.remainder)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return "StandardBasis([" + ", ".join(g.render() for g in self.generators) + "])"


def standard_basis(gens: Sequence[Polynomial], track: bool = False) -> StandardBasis:
    """Standard basis of the ideal generated by ``gens`` in the local ring."""
    gens = list(gens)
    if not gens:
        raise ValueError("empty generator list")
    ring = gens[0].ring
    nonzero = [g for g in gens if g]
    if not nonzero:
        return StandardBasis(ring, [], [] if track else None, gens)
    polys, reps = _mora_standard_basis(gens, track)
    polys, reps = _minimalize(polys, reps)
    return StandardBasis(ring, polys, reps if track else None, gens)


# ---------------------------------------------------------------------------

class QuotientAlgebra:
    """The finite-dimensional algebra O/I for a zero-dimensional standard basis."""

    def __init__(self, ring: Ring, reducers: Sequence[Polynomial]):
        self.ring = ring
        self.reducers = [(g.lm(), g.lc(), g) for g in reducers]
        self.basis: List[Monomial] = self._standard_monomials()
        self.index = {m: i for i, m in enumerate(self.basis)}
        self.socle_degree = max((ring.wdeg(m) for m in self.basis), default=-1)
        self._nf_cache: dict = {}

    def _standard_monomials(self) -> List[Monomial]:
        ring = self.ring
        lms = [r[0] for r in self.reducers]
        bounds = []
        for i in range(ring.n):
            pure = [m[i] for m in lms if all(e == 0 for k, e in enumerate(m) if k != i)]
            bounds.append(min(pure))
        out = []

        def rec(i, prefix):
            if i == ring.n:
                m = tuple(prefix)
                if not any(divides(l, m) for l in lms):
                    out.append(m)
                return
            for e in range(bounds[i]):
                prefix.append(e)
                rec(i + 1, prefix)
                prefix.pop()

        rec(0, [])
        out.sort(key=ring.key, reverse=True)
        return out

    def __len__(self):
        return len(self.basis)

    # -- normal forms ----------------------------------------------------------
    def _reduce_terms(self, terms: dict) -> dict:
        ring = self.ring
        D = self.socle_degree
        if D < 0:
            return {}
        wdeg = ring.wdeg
        key = ring.key
        coeffs = {m: c for m, c in terms.items() if c and wdeg(m) <= D}
        heap = [(tuple(-k for k in key(m)), m) for m in coeffs]
        heapq.heapify(heap)
        out = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = coeffs.pop(m, None)
            if not c:
                continue
            idx = self.index.get(m)
            if idx is not None:
                out[idx] = c
                continue
            for lm, lc, g in self.reducers:
                if divides(lm, m):
                    break
            else:
                raise InvariantViolation(f"monomial {m} is neither standard nor reducible")
            factor = c / lc
            t = mono_div(m, lm)
            for mg, cg in g.terms.items():
                if mg == lm:
                    continue
                mm = mono_mul(mg, t)
                if wdeg(mm) > D:
                    continue
                v = coeffs.get(mm)
                if v is None:
                    coeffs[mm] = -factor * cg
                    heapq.heappush(heap, (tuple(-k for k in key(mm)), mm))
                else:
                    v = v - factor * cg
                    if v:
                        coeffs[mm] = v
                    else:
                        del coeffs[mm]
        return out

    def reduce_monomial(self, m: Monomial) -> dict:
        """Coordinates of NF(x^m) over the monomial basis."""
        cached = self._nf_cache.get(m)
        if cached is not None:
            return cached
        if self.ring.wdeg(m) > self.socle_degree:
            out: dict = {}
        elif m in self.index:
            out = {self.index[m]: self.ring.coerce(1)}
        else:
            i = next((k for k, e in enumerate(m) if e), None)
            if i is None:
                out = self._reduce_terms({m: self.ring.coerce(1)})
            else:
                prev = m[:i] + (m[i] - 1,) + m[i + 1:]
                out = self.mul_var(self.reduce_monomial(prev), i)
        self._nf_cache[m] = out
        return out

    def _times_var_basis(self, idx: int, i: int) -> dict:
        s = self.basis[idx]
        m = s[:i] + (s[i] + 1,) + s[i + 1:]
        cached = self._nf_cache.get(m)
        if cached is not None:
            return cached
        if m in self.index:
            out = {self.index[m]: self.ring.coerce(1)}
        elif self.ring.wdeg(m) > self.socle_degree:
            out = {}
        else:
            out = self._reduce_terms({m: self.ring.coerce(1)})
        self._nf_cache[m] = out
        return out

    def mul_var(self, vec: dict, i: int) -> dict:
        out: dict = {}
        for idx, c in vec.items():
            for k, v in self._times_var_basis(idx, i).items():
                w = out.get(k)
                w = c * v if w is None else w + c * v
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        return out

    def reduce(self, p: Polynomial) -> dict:
        out: dict = {}
        for m, c in p.terms.items():
            for k, v in self.reduce_monomial(m).items():
                w = out.get(k)
                w = c * v if w is None else w + c * v
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        return out

    def to_poly(self, vec: dict) -> Polynomial:
        return Polynomial(self.ring, {self.basis[k]: c for k, c in vec.items() if c})

    def normal_form(self, p: Polynomial) -> Polynomial:
        return self.to_poly(self.reduce(p))

    def multiply(self, a: dict, b: dict) -> dict:
        return self.reduce(self.to_poly(a) * self.to_poly(b))

    def inverse(self, u: Polynomial) -> dict:
        """Coordinates of u^{-1} in O/I for a unit u."""
        if not u.is_unit():
            raise InvariantViolation(f"{u} is not a unit of the local ring")
        columns = [self.reduce(u.mul_term(s, 1)) for s in self.basis]
        target = self.reduce(self.ring.one())
        x = solve(columns, target)
        if x is None:
            raise InvariantViolation("unit is not invertible modulo the ideal")
        return x


# ---------------------------------------------------------------------------

def normal_form(p: Polynomial, sb: StandardBasis) -> Polynomial:
    """Canonical representative of ``p`` modulo the ideal (reduced normal form
    for zero-dimensional ideals, Mora's weak normal form otherwise)."""
    if not p:
        return p
    if not sb.raw:
        return p
    if sb.is_zero_dimensional():
        return sb.algebra.normal_form(p)
    return mora_divide(p, sb.raw, track=False).remainder


@dataclass
class Membership:
    member: bool
    certificate: DivisionResult

    def __bool__(self):
        return self.member


def ideal_membership(p: Polynomial, gens: Sequence[Polynomial], sb: Optional[StandardBasis] = None) -> Membership:
    """Decide ``p in (gens)``; the certificate is a division ``u*p = sum q_i g_i + r``
    over ``gens`` with ``r == 0`` exactly when ``p`` is a member."""
    if sb is None or sb.reps is None:
        sb = standard_basis(gens, track=True)
    div = sb.divide(p)
    return Membership(not div.remainder, div)


def kernel_standard_basis(ring: Ring, phi, cutoff: int) -> StandardBasis:
    """Reduced standard basis of K = {p : phi(p) = 0} for a linear map on monomials.

    ``phi(m)`` returns a sparse vector; it must vanish for every monomial of
    weighted degree above ``cutoff`` and K must be an ideal.  A monomial leads
    an element of K exactly when its image depends linearly on the images of
    the smaller monomials, so the monomials are scanned from the smallest up.
    """
    maxw = max(ring.weights)
    monos = monomials_up_to(ring.weights, cutoff + maxw)
    monos.sort(key=ring.key)
    ech = EchelonBasis()
    relations = {}
    for m in monos:
        vec = phi(m) if ring.wdeg(m) <= cutoff else {}
        combo = ech.add(vec, m)
        if combo is not None:
            relations[m] = combo
    leading = [m for m in relations]
    lead_set = set(leading)
    minimal = []
    for m in leading:
        if any(
            m[i] and (m[:i] + (m[i] - 1,) + m[i + 1:]) in lead_set for i in range(ring.n)
        ):
            continue
        minimal.append(m)
    gens = []
    for m in sorted(minimal, key=ring.key, reverse=True):
        g = ring.monomial(m)
        for s, c in relations[m].items():
            g = g - ring.monomial(s, c)
        gens.append(g)
    if not gens:
        raise InvariantViolation("kernel has no leading monomials below the cutoff")
    return StandardBasis(ring, gens, None, None, generators=gens)


def ideal_quotient(gens_i: Sequence[Polynomial], g: Polynomial, sb_i: Optional[StandardBasis] = None) -> StandardBasis:
    """Standard basis of I : (g) for a zero-dimensional ideal I."""
    if not g:
        raise ValueError("ideal quotient by the zero polynomial")
    if sb_i is None:
        sb_i = standard_basis(gens_i)
    alg = sb_i.algebra
    ring = g.ring

    def phi(m):
        return alg.reduce(g.mul_term(m, 1))

    return kernel_standard_basis(ring, phi, alg.socle_degree)


@dataclass
class QuotientBasis:
    monomials: List[Monomial]

    @property
    def dimension(self) -> int:
        return len(self.monomials)


def quotient_monomial_basis(sb: StandardBasis) -> QuotientBasis:
    if not sb.is_zero_dimensional():
        raise NonIsolatedError("quotient is infinite dimensional: the singularity is not isolated")
    return QuotientBasis(list(sb.algebra.basis))


def check_zero_dimensional(gens: Sequence[Polynomial]) -> bool:
    return standard_basis(gens).is_zero_dimensional()


# ---------------------------------------------------------------------------
# invariants of the germ

def jacobian(f: Polynomial) -> List[Polynomial]:
    return [f.diff(i) for i in range(f.ring.n)]


def require_singular_germ(f: Polynomial) -> None:
    """Reject f with f(O) != 0 or a smooth point at the origin."""
    if not f:
        raise NonIsolatedError("f = 0 does not define a hypersurface")
    if f.constant_term():
        raise NonIsolatedError("the origin does not lie on the hypersurface f = 0")
    lin = [i for i in range(f.ring.n) if f.diff(i).constant_term()]
    if lin:
        raise NonIsolatedError("the hypersurface is smooth at the origin (no singularity)")


def jacobi_basis(f: Polynomial, track: bool = False) -> StandardBasis:
    sb = standard_basis(jacobian(f), track=track)
    if not sb.is_zero_dimensional():
        raise NonIsolatedError("the Jacobi ideal is not zero-dimensional: singularity not isolated")
    return sb


def tjurina_basis(f: Polynomial, track: bool = False) -> StandardBasis:
    sb = standard_basis([f] + jacobian(f), track=track)
    if not sb.is_zero_dimensional():
        raise NonIsolatedError("the Tjurina ideal is not zero-dimensional: singularity not isolated")
    return sb


def polar_generators(f: Polynomial) -> List[Polynomial]:
    """(f, partials in all non-distinguished variables)."""
    d = f.ring.distinguished
    return [f] + [f.diff(i) for i in range(f.ring.n) if i != d]


def polar_basis(f: Polynomial, track: bool = False) -> StandardBasis:
    sb = standard_basis(polar_generators(f), track=track)
    if not sb.is_zero_dimensional():
        raise NonGenericCoordinateError(
            f"(f, partials other than d/d{f.ring.names[f.ring.distinguished]}) is not "
            "zero-dimensional; try another distinguished variable"
        )
    return sb


def milnor_number(f: Polynomial) -> int:
    require_singular_germ(f)
    return jacobi_basis(f).dimension


def tjurina_number(f: Polynomial) -> int:
    require_singular_germ(f)
    return tjurina_basis(f).dimension


def hyperplane_milnor(f: Polynomial) -> int:
    """Milnor number of the section {x_distinguished = 0}."""
    r = f.restrict()
    if not r:
        raise NonGenericCoordinateError("f vanishes identically on the distinguished hyperplane")
    sb = standard_basis(jacobian(r))
    if not sb.is_zero_dimensional():
        raise NonGenericCoordinateError("the hyperplane section has a non-isolated singularity")
    return sb.dimension


def is_quasi_homogeneous(f: Polynomial, jsb: Optional[StandardBasis] = None) -> bool:
    """Saito's criterion: f lies in its Jacobi ideal."""
    jsb = jsb or jacobi_basis(f)
    return jsb.contains(f)
