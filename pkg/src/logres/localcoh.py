"""Algebraic local cohomology classes supported at the origin.

A class is a finite sum of Grothendieck symbols ``c * [1/x^lam]`` with every
component of ``lam`` at least 1.  Polynomials act by contraction,
``x^a * [1/x^lam] = [1/x^(lam-a)]`` or 0 when some exponent drops below 1.

Symbols are ordered by the exponent ``lam - 1`` in the reverse of the local
order, so symbols of higher weighted degree are greater.  Spaces are returned
in reduced echelon form with respect to that order: the greatest symbol of each
basis class has coefficient 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BoundExceededError, InconsistentInvariantsError
from .linalg import nullspace, rref
from .localstd import (
    StandardBasis,
    hyperplane_milnor,
    kernel_standard_basis,
    milnor_number,
    polar_generators,
    tjurina_number,
)
from .poly import Polynomial, Ring, _coeff_text, monomials_up_to, render_monomial

Symbol = Tuple[int, ...]


def shift(lam: Symbol) -> Tuple[int, ...]:
    """Exponent of the monomial paired with ``[1/x^lam]``: ``lam - 1``."""
    return tuple(e - 1 for e in lam)


def symbol_of(m) -> Symbol:
    return tuple(e + 1 for e in m)


class CohomologyClass:
    """``sum(c * [1/x^lam])`` over a ring's variables."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Dict[Symbol, object]):
        self.ring = ring
        clean = {}
        for lam, c in terms.items():
            lam = tuple(lam)
            if len(lam) != ring.n or min(lam) < 1:
                raise ValueError(f"invalid symbol {lam}")
            if c:
                clean[lam] = ring.coerce(c)
        self.terms = clean

    @classmethod
    def symbol(cls, ring: Ring, lam, c=1) -> "CohomologyClass":
        return cls(ring, {tuple(lam): c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, CohomologyClass) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = out.get(lam, 0) + c
        return CohomologyClass(self.ring, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "CohomologyClass":
        return CohomologyClass(self.ring, {lam: c * v for lam, v in self.terms.items()})

    def sorted_symbols(self) -> List[Symbol]:
        """Symbols from the greatest down."""
        key = self.ring.key
        return sorted(self.terms, key=lambda lam: key(shift(lam)))

    def leading_symbol(self) -> Symbol:
        return self.sorted_symbols()[0]

    def weighted_degree(self) -> int:
        return max((self.ring.wdeg(shift(lam)) for lam in self.terms), default=-1)

    def render(self) -> str:
        if not self.terms:
            return "0"
        param = self.ring.param or "t"
        out = ""
        for lam in self.sorted_symbols():
            sym = "[1/" + _paren(render_monomial(lam, self.ring.names)) + "]"
            coeff, negative = _coeff_text(self.terms[lam], param)
            body = f"{coeff}*{sym}" if coeff else sym
            if not out:
                out = ("-" if negative else "") + body
            else:
                out += ("-" if negative else "+") + body
        return out

    def __repr__(self):
        return f"CohomologyClass({self.render()!r})"


def _paren(text: str) -> str:
    return f"({text})" if "*" in text else text


def act(p: Polynomial, c: CohomologyClass) -> CohomologyClass:
    """Contraction action of a polynomial on a class."""
    out: dict = {}
    for a, pc in p.terms.items():
        for lam, v in c.terms.items():
            mu = tuple(l - e for l, e in zip(lam, a))
            if min(mu) < 1:
                continue
            w = out.get(mu)
            w = pc * v if w is None else w + pc * v
            if w:
                out[mu] = w
            else:
                del out[mu]
    return CohomologyClass(c.ring, out)


def residue_pairing(p: Polynomial, c: CohomologyClass):
    """Grothendieck point residue: coefficient of ``[1/(x_1...x_n)]`` in ``p * c``."""
    total = c.ring.coerce(0)
    for lam, v in c.terms.items():
        a = shift(lam)
        coef = p.terms.get(a)
        if coef:
            total = total + coef * v
    return total


@dataclass
class CohomologySpace:
    ring: Ring
    basis: List[CohomologyClass]
    role: str = "Gamma"

    def __len__(self):
        return len(self.basis)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def symbols(self) -> List[Symbol]:
        seen = set()
        for c in self.basis:
            seen.update(c.terms)
        key = self.ring.key
        return sorted(seen, key=lambda lam: key(shift(lam)))

    def max_degree(self) -> int:
        return max((c.weighted_degree() for c in self.basis), default=-1)

    def contains(self, c: CohomologyClass) -> bool:
        return span_rank(self.basis + [c]) == len(self.basis)

    def render(self) -> List[str]:
        return [c.render() for c in self.basis]


def _column_map(classes: Sequence[CohomologyClass], ring: Ring):
    seen = set()
    for c in classes:
        seen.update(c.terms)
    order = sorted(seen, key=lambda lam: ring.key(shift(lam)))
    return order, {lam: i for i, lam in enumerate(order)}


def echelon_classes(ring: Ring, classes: Sequence[CohomologyClass]) -> List[CohomologyClass]:
    """Reduced echelon basis of the span, greatest symbols leading."""
    order, col = _column_map(classes, ring)
    rows = [{col[lam]: v for lam, v in c.terms.items()} for c in classes]
    return [CohomologyClass(ring, {order[k]: v for k, v in row.items()}) for _, row in rref(rows)]


def span_rank(classes: Sequence[CohomologyClass]) -> int:
    if not classes:
        return 0
    ring = classes[0].ring
    _, col = _column_map(classes, ring)
    return len(rref([{col[lam]: v for lam, v in c.terms.items()} for c in classes]))


def same_span(a: Sequence[CohomologyClass], b: Sequence[CohomologyClass]) -> bool:
    ra, rb = span_rank(a), span_rank(b)
    return ra == rb and span_rank(list(a) + list(b)) == ra


# ---------------------------------------------------------------------------

def _solve_level(ring: Ring, annihilators, bound: int):
    """Classes supported in weighted degree <= bound killed by every annihilator."""
    monos = monomials_up_to(ring.weights, bound)
    monos.sort(key=ring.key)  # greatest symbol first
    symbols = [symbol_of(m) for m in monos]
    col = {lam: i for i, lam in enumerate(symbols)}
    rows: dict = {}
    for k, p in enumerate(annihilators):
        for a, pc in p.terms.items():
            for lam, j in col.items():
                mu = tuple(l - e for l, e in zip(lam, a))
                if min(mu) < 1:
                    continue
                row = rows.setdefault((k, mu), {})
                v = row.get(j)
                v = pc if v is None else v + pc
                if v:
                    row[j] = v
                else:
                    del row[j]
    null = nullspace(list(rows.values()), len(symbols))
    return [
        CohomologyClass(ring, {symbols[j]: v for j, v in row.items()})
        for _, row in rref(null)
    ]


def annihilated_space(
    annihilators: Sequence[Polynomial], stop_dimension: int, role: str = "Gamma"
) -> CohomologySpace:
    """Basis of the classes killed by every polynomial in ``annihilators``.

    The candidate support grows one weighted degree at a time.  Once the
    dimension reaches ``stop_dimension`` a further ``max(weights)`` levels are
    checked for growth; exceeding the target is an error since the target comes
    from independently computed invariants.
    """
    annihilators = [p for p in annihilators if p]
    if not annihilators:
        raise ValueError("no annihilators given")
    ring = annihilators[0].ring
    maxw = max(ring.weights)
    safety = 4 * maxw * (stop_dimension + ring.n)
    reached = None
    d = 0
    while d <= safety:
        classes = _solve_level(ring, annihilators, d)
        dim = len(classes)
        if dim > stop_dimension:
            raise InconsistentInvariantsError(
                f"annihilated space has dimension {dim} > expected {stop_dimension}"
            )
        if dim == stop_dimension:
            if reached is None:
                reached = d
            if d >= reached + maxw:
                return CohomologySpace(ring, classes, role)
        d += 1
    raise BoundExceededError(
        f"annihilated space did not reach dimension {stop_dimension} within degree {safety}"
    )


def image_space(g: Polynomial, gamma: CohomologySpace, role: str = "Delta") -> CohomologySpace:
    images = [act(g, c) for c in gamma.basis]
    images = [c for c in images if c]
    return CohomologySpace(gamma.ring, echelon_classes(gamma.ring, images), role)


def kernel_space(
    g: Polynomial, gamma: CohomologySpace, tau: Optional[int] = None, role: str = "T"
) -> CohomologySpace:
    """Classes of ``gamma`` killed by ``g``."""
    ring = gamma.ring
    images = [act(g, c) for c in gamma.basis]
    order, col = _column_map(images, ring)
    rows: dict = {}
    for k, c in enumerate(images):
        for lam, v in c.terms.items():
            rows.setdefault(col[lam], {})[k] = v
    null = nullspace(list(rows.values()), len(images))
    classes = []
    for vec in null:
        acc = CohomologyClass(ring, {})
        for k, v in vec.items():
            acc = acc + gamma.basis[k].scale(v)
        classes.append(acc)
    space = CohomologySpace(ring, echelon_classes(ring, classes) if classes else [], role)
    if tau is not None and space.dimension != tau:
        raise InconsistentInvariantsError(
            f"kernel has dimension {space.dimension}, expected tau = {tau}"
        )
    return space


def annihilator_standard_basis(space: CohomologySpace) -> StandardBasis:
    """Reduced standard basis of {p : p * phi = 0 for every phi in the space}."""
    ring = space.ring
    cutoff = max(space.max_degree(), 0)
    basis = space.basis

    def phi(m):
        mono = ring.monomial(m)
        vec = {}
        for k, c in enumerate(basis):
            for lam, v in act(mono, c).terms.items():
                vec[(k, lam)] = v
        return vec

    return kernel_standard_basis(ring, phi, cutoff)


def duality_basis(sb: StandardBasis, role: str = "Gamma") -> CohomologySpace:
    """Classes killed by a zero-dimensional ideal, built from normal forms.

    The class dual to a standard monomial ``s`` pairs ``x^a`` with the
    coefficient of ``s`` in NF(x^a); this is the local-duality description of
    the same space that :func:`annihilated_space` finds by linear solving.
    """
    alg = sb.algebra
    ring = sb.ring
    D = alg.socle_degree
    coords = {}
    for m in monomials_up_to(ring.weights, D):
        for k, v in alg.reduce_monomial(m).items():
            coords.setdefault(k, {})[symbol_of(m)] = v
    classes = [CohomologyClass(ring, coords.get(k, {})) for k in range(len(alg.basis))]
    return CohomologySpace(ring, echelon_classes(ring, classes), role)


# ---------------------------------------------------------------------------

@dataclass
class PolarCohomology:
    """H_Gamma, its image H_Delta and kernel W_T under the distinguished partial."""

    mu: int
    tau: int
    mu_hyperplane: int
    gamma: CohomologySpace
    delta: CohomologySpace
    kernel: CohomologySpace
    extra: dict = field(default_factory=dict)


def polar_cohomology(f: Polynomial, mu=None, tau=None, mu_hyperplane=None) -> PolarCohomology:
    mu = milnor_number(f) if mu is None else mu
    tau = tjurina_number(f) if tau is None else tau
    mu_h = hyperplane_milnor(f) if mu_hyperplane is None else mu_hyperplane
    gamma = annihilated_space(polar_generators(f), mu + mu_h, role="Gamma")
    g = f.diff(f.ring.distinguished)
    delta = image_space(g, gamma)
    kernel = kernel_space(g, gamma, tau)
    if delta.dimension != mu - tau + mu_h:
        raise InconsistentInvariantsError(
            f"dim H_Delta = {delta.dimension}, expected {mu - tau + mu_h}"
        )
    return PolarCohomology(mu, tau, mu_h, gamma, delta, kernel)
