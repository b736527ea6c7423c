"""Toric b-divisors at finite level.

A Cartier b-divisor over a base fan is a piecewise linear function together
with a simplicial refinement (its determining fan) on which it is linear.
Weil truncations on a model are read off as ``-phi(u_rho)``.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from . import lattice as la
from . import polyhedra as ph
from .divisors import PLFunction, ToricDivisor, _num, cartier_data, polytope, pullback
from .errors import (
    EmptyPolytope,
    IncomparableModels,
    NonSimplicialFan,
    NotARefinement,
    PreconditionError,
    UnboundedOnSupport,
)
from .fan import Fan, common_refinement, refines, simplicialize, stellar_subdivide, support_membership

Vector = Tuple[int, ...]


class CartierBDivisor:
    """``phi`` on the simplicial ``fan`` refining ``base``."""

    def __init__(self, base: Fan, fan: Fan, phi: PLFunction, check: bool = True):
        if phi.fan != fan:
            raise PreconditionError("function must live on the determining fan")
        if not fan.is_simplicial():
            raise NonSimplicialFan("determining fans must be simplicial")
        if check and not refines(fan, base):
            raise NotARefinement("determining fan does not refine the base")
        self.base = base
        self.fan = fan
        self.phi = phi

    def __repr__(self):
        return f"CartierBDivisor(base={self.base!r}, fan={self.fan!r}, values={self.phi.values})"

    def __call__(self, u):
        return self.phi.evaluate(u)

    def __mul__(self, k):
        return CartierBDivisor(self.base, self.fan, self.phi * k, check=False)

    __rmul__ = __mul__

    def equivalent(self, other: "CartierBDivisor") -> bool:
        """Same function on the common support (compared on a common refinement)."""
        if self.fan == other.fan:
            return self.phi == other.phi
        R = common_refinement(self.fan, other.fan)
        return all(self(u) == other(u) for u in R.rays)

    def truncation(self, model: Fan) -> ToricDivisor:
        """Weil divisor on ``model``: coefficient ``-phi(u_rho)``."""
        return ToricDivisor(model, tuple(_num(-self(u)) for u in model.rays))


@dataclass(frozen=True)
class MonomialIdeal:
    rank: int
    generators: Tuple[Vector, ...]

    def __post_init__(self):
        gens = tuple(sorted(set(tuple(int(x) for x in g) for g in self.generators)))
        if not gens:
            raise PreconditionError("a monomial ideal needs at least one generator")
        if any(len(g) != self.rank for g in gens):
            raise PreconditionError("generator length does not match rank")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, generators) -> "MonomialIdeal":
        gens = [tuple(g) for g in generators]
        return cls(len(gens[0]) if gens else 0, tuple(gens))


@dataclass(frozen=True)
class ModelTower:
    """Chain of refinements with one Weil divisor per level."""

    fans: Tuple[Fan, ...]
    divisors: Tuple[ToricDivisor, ...]

    def __post_init__(self):
        if len(self.fans) != len(self.divisors) or not self.fans:
            raise PreconditionError("one divisor per level, at least one level")
        for i, (F, D) in enumerate(zip(self.fans, self.divisors)):
            if D.fan != F:
                raise PreconditionError(f"level {i}: divisor lives on another fan")
            if i == 0:
                continue
            prev, prevD = self.fans[i - 1], self.divisors[i - 1]
            if not refines(F, prev):
                raise NotARefinement(f"level {i} does not refine level {i - 1}")
            for u, d in zip(prev.rays, prevD.coefficients):
                if D.coefficients[F.ray_index(u)] != d:
                    raise PreconditionError(f"level {i} does not push forward to level {i - 1}")

    @classmethod
    def of_bdivisor(cls, b: CartierBDivisor, fans: Sequence[Fan]) -> "ModelTower":
        return cls(tuple(fans), tuple(b.truncation(F) for F in fans))


def _comparable(a: Fan, b: Fan) -> None:
    if not (refines(a, b) or refines(b, a)):
        raise IncomparableModels("models are not related by refinement")


def determined_on(b: CartierBDivisor, model: Fan) -> bool:
    """Whether ``phi`` is linear on every cone of ``model``."""
    _comparable(b.fan, model)
    return all(b.phi.linear_on(model.generators(s)) is not None for s in model.maximal)


def push_forward(b: CartierBDivisor, model: Fan) -> ToricDivisor:
    if not refines(b.fan, model):
        raise NotARefinement("the determining fan does not refine the target model")
    return b.truncation(model)


def pull_back(D: ToricDivisor, model: Optional[Fan] = None) -> CartierBDivisor:
    """The Cartier b-divisor of ``D``, realized on ``model`` (default: ``D``'s fan)."""
    data = cartier_data(D)
    model = D.fan if model is None else model
    fine = pullback(D, model, data)
    return CartierBDivisor(D.fan, model, PLFunction(model, [-d for d in fine.coefficients]), check=False)


def _min_of_forms(forms: Sequence[Sequence], base: Fan) -> CartierBDivisor:
    """``phi = min_i <m_i, .>`` with determining fan cut from ``base``."""
    n = base.rank
    forms = sorted(set(tuple(Fraction(x) for x in m) for m in forms))
    pieces = set()
    for sigma in base.maximal:
        Hs = base.hrep(sigma)
        d = Hs.dim
        if d == 0:
            pieces.add(())
            continue
        for i, mi in enumerate(forms):
            ineqs = [la.clear_denominators([a - b for a, b in zip(mj, mi)]) for mj in forms if mj != mi]
            rays, lin = ph.hrep_to_rays(list(Hs.facets) + ineqs, list(Hs.equations), n)
            if rays and la.rank(rays, n) == d:
                pieces.add(tuple(sorted(rays)))
    ray_list = sorted({r for p in pieces for r in p})
    index = {r: i for i, r in enumerate(ray_list)}
    fan = simplicialize(Fan(n, ray_list, [[index[r] for r in p] for p in pieces], complete=base.declared_complete))
    values = [min(sum(a * b for a, b in zip(m, u)) for m in forms) for u in fan.rays]
    return CartierBDivisor(base, fan, PLFunction(fan, values), check=False)


def z_of_ideal(ideal: MonomialIdeal, base: Fan) -> CartierBDivisor:
    """``Z(a)``: ``phi(u) = min_i <m_i, u>`` over the generators of ``a``."""
    if ideal.rank != base.rank:
        raise PreconditionError("rank mismatch between ideal and fan")
    # only the extreme exponents can realize the minimum
    return _min_of_forms(ph.convex_hull_vertices(ideal.generators, base.rank), base)


def _wall_values(b: CartierBDivisor, relative: bool):
    fan = b.fan
    d = fan.dimension
    for tau in fan.cones_of_dim(d - 1):
        adj = fan.cones_containing(tau, d)
        if len(adj) != 2:
            continue
        if relative:
            tg = fan.generators(tau)
            point = tuple(sum(col) for col in zip(*tg)) if tg else tuple([0] * fan.rank)
            home = support_membership(b.base, point)
            if home is None or b.base.dim(home) != d:
                continue
        s1, s2 = adj
        m1, m2 = b.phi.linear_form(s1), b.phi.linear_form(s2)
        v2 = next(fan.rays[i] for i in s2 if i not in tau)
        yield tau, sum((Fraction(a) - Fraction(c)) * x for a, c, x in zip(m1, m2, v2))


def is_relatively_nef(b: CartierBDivisor) -> bool:
    """Concavity of ``phi`` across walls of the determining fan lying inside a base cone."""
    return all(v >= 0 for _, v in _wall_values(b, relative=True))


def is_nef(b: CartierBDivisor) -> bool:
    """Concavity of ``phi`` across every wall of the determining fan."""
    return all(v >= 0 for _, v in _wall_values(b, relative=False))


def nef_envelope(D: ToricDivisor) -> CartierBDivisor:
    """``phi(u) = min over P_D of <m, u>``, determined by the vertices of ``P_D``."""
    P = polytope(D)
    if P.is_empty:
        raise EmptyPolytope("P_D is empty")
    for u in D.fan.rays:
        if any(la.dot(r, u) < 0 for r in P.rays) or any(la.dot(l, u) != 0 for l in P.lineality):
            raise UnboundedOnSupport(f"<m, {u}> is unbounded below on P_D")
    return _min_of_forms(P.vertices, D.fan)


def envelope_from_sections(D: ToricDivisor, m: int) -> CartierBDivisor:
    """``(1/m) Z(a_m)`` with ``a_m`` generated by the lattice points of ``P_{mD}``."""
    P = polytope(D * m)
    if P.is_empty:
        raise EmptyPolytope("P_mD is empty")
    pts = P.lattice_points()
    if not pts:
        raise EmptyPolytope("P_mD has no lattice points")
    return _min_of_forms(ph.convex_hull_vertices(pts, D.fan.rank), D.fan) * Fraction(1, m)


def restrict(b: CartierBDivisor, sub: Fan) -> CartierBDivisor:
    """Restriction to a sub-fan of the base: keep determining cones inside ``|sub|``."""
    fan = b.fan
    keep = []
    for c in fan.cones:
        gens = fan.generators(c)
        point = tuple(sum(col) for col in zip(*gens)) if gens else tuple([0] * fan.rank)
        if all(support_membership(sub, g) is not None for g in gens + (point,)):
            home = support_membership(sub, point)
            if all(sub.hrep(home).contains(g) for g in gens):
                keep.append(c)
    keep = [c for c in keep if not any(set(c) < set(d) for d in keep)]
    F = fan.subfan(keep)
    phi = PLFunction(F, [b.phi.values[fan.ray_index(u)] for u in F.rays])
    return CartierBDivisor(sub, F, phi)


def extend(phi: PLFunction, sub: Fan, ambient: Fan) -> CartierBDivisor:
    """Extend a function given on a refinement of ``sub`` to a refinement of ``ambient``.

    The ambient fan is stellarly subdivided at the rays of ``phi``'s fan and
    simplicialized; values off ``|sub|`` are set to zero.  Raises
    :class:`PreconditionError` when the resulting cones inside ``|sub|`` do not
    all carry a linear piece of ``phi``.
    """
    F = ambient
    for u in phi.fan.rays:
        if F.ray_index(u) is None:
            F = stellar_subdivide(F, u).fan
    F = simplicialize(F)
    values = []
    for u in F.rays:
        values.append(phi.evaluate(u) if support_membership(phi.fan, u) is not None else 0)
    ext = CartierBDivisor(ambient, F, PLFunction(F, values), check=False)
    for c in F.cones:
        gens = F.generators(c)
        if not gens:
            continue
        point = tuple(sum(col) for col in zip(*gens))
        if all(support_membership(sub, g) is not None for g in gens + (point,)):
            if phi.linear_on(gens) is None:
                raise PreconditionError("extension fan cuts a cone where the function is not linear")
    return ext
