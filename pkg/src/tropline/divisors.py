"""Torus-invariant divisors on a fan.

Conventions: ``D = sum d_rho D_rho``; the support function satisfies
``phi_D(u_rho) = -d_rho`` and agrees with ``<m_sigma, .>`` on each maximal
cone; ``P_D = {m : <m, u_rho> >= -d_rho}``.  With these signs ``H . line = 1``
on the projective plane.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Optional, Sequence, Tuple

from . import lattice as la
from . import polyhedra as ph
from .errors import (
    ConeNotInFan,
    NonSimplicialFan,
    NotAWall,
    NotARefinement,
    NotCartier,
    PreconditionError,
)
from .fan import Cone, Fan, _lateral, _quotient, refines, support_membership
from .polyhedra import LatticePolytope

Number = object  # int or Fraction


def _num(x):
    if isinstance(x, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


@dataclass(frozen=True)
class ToricDivisor:
    """``sum d_rho D_rho`` with one coefficient per ray of ``fan``.

    Coefficients are integers, or fractions for Q-divisors.
    """

    fan: Fan
    coefficients: Tuple[Number, ...]

    def __post_init__(self):
        coeffs = tuple(_num(x) for x in self.coefficients)
        if len(coeffs) != len(self.fan.rays):
            raise ValueError(
                f"expected {len(self.fan.rays)} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def zero(cls, fan: Fan) -> "ToricDivisor":
        return cls(fan, (0,) * len(fan.rays))

    @classmethod
    def prime(cls, fan: Fan, ray) -> "ToricDivisor":
        """The invariant prime divisor ``D_rho`` of the ray through ``ray``."""
        i = fan.ray_index(la.primitive(ray))
        if i is None:
            raise ConeNotInFan(f"{tuple(ray)} is not a ray of the fan")
        return cls(fan, tuple(int(k == i) for k in range(len(fan.rays))))

    @classmethod
    def from_mapping(cls, fan: Fan, coeffs: Dict[tuple, Number]) -> "ToricDivisor":
        d = [0] * len(fan.rays)
        for ray, c in coeffs.items():
            i = fan.ray_index(la.primitive(ray))
            if i is None:
                raise ConeNotInFan(f"{tuple(ray)} is not a ray of the fan")
            d[i] = c
        return cls(fan, tuple(d))

    def _check(self, other):
        if self.fan != other.fan:
            raise PreconditionError("divisors live on different fans")

    def __add__(self, other):
        self._check(other)
        return ToricDivisor(self.fan, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other):
        self._check(other)
        return ToricDivisor(self.fan, tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self):
        return ToricDivisor(self.fan, tuple(-a for a in self.coefficients))

    def __mul__(self, k):
        return ToricDivisor(self.fan, tuple(k * a for a in self.coefficients))

    __rmul__ = __mul__

    def __le__(self, other):
        self._check(other)
        return all(a <= b for a, b in zip(self.coefficients, other.coefficients))

    @property
    def is_integral(self) -> bool:
        return all(isinstance(x, int) for x in self.coefficients)

    def coefficient(self, ray) -> Number:
        return self.coefficients[self.fan.ray_index(tuple(ray))]


@dataclass(frozen=True)
class CartierData:
    """Local characters ``m_sigma`` on the maximal cones of a fan.

    When a maximal cone is not full-dimensional ``m_sigma`` is only defined
    modulo ``sigma^perp``; the stored value is the canonical representative
    described in :func:`cartier_data`.
    """

    fan: Fan
    forms: Dict[Cone, Tuple[Number, ...]]

    def form_on(self, cone: Cone) -> Tuple[Number, ...]:
        """``m_sigma`` for some maximal cone containing ``cone``."""
        cone = tuple(cone)
        if cone in self.forms:
            return self.forms[cone]
        for sigma in self.fan.maximal:
            if set(cone) <= set(sigma):
                return self.forms[sigma]
        raise ConeNotInFan(f"{cone} is not a cone of the fan")


def _canonical_solution(rows, x, n):
    """Canonical representative of ``x + ker(rows)`` over Z.

    Free coordinates (the non-pivot columns of the row reduced system) are
    reduced modulo the image of the integral kernel; when that image is all
    of Z^free they become zero.
    """
    if not rows:
        return tuple([0] * n)
    _, piv = la.rref(rows, n)
    free = [c for c in range(n) if c not in piv]
    kernel = la.saturated_kernel(rows, n)
    if not free or not kernel:
        return tuple(x)
    KF = [[k[c] for c in free] for k in kernel]
    H, U, r = la.hnf_with_transform(KF, len(free))
    full = [[sum(U[i][j] * kernel[j][c] for j in range(len(kernel))) for c in range(n)] for i in range(r)]
    x = list(x)
    for i in range(r):
        p = next(k for k in range(len(free)) if H[i][k] != 0)
        col = free[p]
        f = x[col] // full[i][col]
        if f:
            x = [a - f * b for a, b in zip(x, full[i])]
    return tuple(x)


def _local_solve(fan: Fan, cone: Cone, rhs_for_ray, integral: bool):
    n = fan.rank
    rows = [list(fan.rays[i]) for i in cone]
    rhs = [rhs_for_ray(i) for i in cone]
    if not rows:
        return tuple([0] * n)
    if integral:
        x, _ = la.solve_integer(rows, rhs, n)
        if x is None:
            sol = la.solve_rational(rows, rhs, n)
            raise NotCartier(cone, sol)
        return _canonical_solution(rows, x, n)
    sol = la.solve_rational(rows, rhs, n)
    if sol is None:
        raise NotCartier(cone, None)
    return tuple(_num(v) for v in sol)


def cartier_data(D: ToricDivisor) -> CartierData:
    """Solve ``<m_sigma, u_rho> = -d_rho`` on every maximal cone.

    Integral divisors must admit integral ``m_sigma``; for Q-divisors a
    rational solution suffices.  Raises :class:`NotCartier` naming the first
    failing cone (with its rational solution when there is one).
    """
    fan = D.fan
    integral = D.is_integral
    forms = {}
    for sigma in fan.maximal:
        forms[sigma] = _local_solve(fan, sigma, lambda i: -D.coefficients[i], integral)
    return CartierData(fan, forms)


def is_cartier(D: ToricDivisor) -> bool:
    try:
        cartier_data(D)
    except NotCartier:
        return False
    return True


def polytope(D: ToricDivisor) -> LatticePolytope:
    """``P_D = {m : <m, u_rho> >= -d_rho for all rays}``; may be empty or unbounded."""
    fan = D.fan
    A = [fan.rays[i] for i in range(len(fan.rays))]
    b = [-Fraction(d) for d in D.coefficients]
    return ph.polyhedron_from_inequalities(A, b, fan.rank)


def div_char(m: Sequence[int], fan: Fan) -> ToricDivisor:
    """``div(chi^m) = sum <m, u_rho> D_rho``."""
    if len(m) != fan.rank:
        raise PreconditionError("rank mismatch")
    return ToricDivisor(fan, tuple(la.dot(m, u) for u in fan.rays))


@dataclass(frozen=True)
class LocalSections:
    """Sections of ``O(D)`` over the affine chart of a cone.

    ``inequalities`` lists pairs ``(u_rho, d_rho)`` meaning
    ``<m, u_rho> + d_rho >= 0``.  The lattice points of that region form a
    module over the monoid generated by ``hilbert_basis``; ``generators``
    generate the module.  When ``D`` is Cartier on the cone, ``shift`` is
    the canonical local character and ``generators == (shift,)``.
    """

    cone: Cone
    inequalities: Tuple[Tuple[Tuple[int, ...], Number], ...]
    hilbert_basis: Tuple[Tuple[int, ...], ...]
    generators: Tuple[Tuple[int, ...], ...]
    shift: Optional[Tuple[int, ...]]


def _dual_monoid(fan: Fan, cone: Cone):
    """Hilbert basis of ``sigma^vee ∩ M``, with ``+-`` generators of ``sigma^perp``."""
    n = fan.rank
    gens = fan.generators(cone)
    Q = _quotient(gens, n)
    perp = [tuple(p) for p in Q.projection]
    B = [list(b) for b in Q.sublattice]
    s = len(B)
    Bt = [[b[i] for b in B] for i in range(n)]
    coords = [la.solve_integer(Bt, list(g), s)[0] for g in gens]
    pointed = ph.hilbert_basis_pointed([tuple(c) for c in coords], s) if s else []
    lifted = []
    for y in pointed:
        x, _ = la.solve_integer(B, list(y), n)
        lifted.append(la.reduce_mod_lattice(x, perp))
    basis = sorted(set(lifted)) + sorted(set(perp) | {tuple(-x for x in p) for p in perp})
    return basis, B, coords, perp


def local_sections(D: ToricDivisor, cone: Cone) -> LocalSections:
    fan = D.fan
    cone = fan.cone(cone)
    n = fan.rank
    ineqs = tuple((fan.rays[i], D.coefficients[i]) for i in cone)
    hb, B, coords, perp = _dual_monoid(fan, cone)
    try:
        m0 = _local_solve(fan, cone, lambda i: -D.coefficients[i], D.is_integral)
    except NotCartier:
        m0 = None
    if m0 is not None and all(isinstance(x, int) for x in m0):
        return LocalSections(cone, ineqs, tuple(hb), (tuple(m0),), tuple(m0))
    # general case: minimal lattice points of the shifted region, in quotient coordinates
    s = len(B)
    A = [tuple(c) for c in coords]
    b = [-Fraction(D.coefficients[i]) for i in cone]
    region = ph.polyhedron_from_inequalities(A, b, s)
    rays, _ = ph.hrep_to_rays(A, [], s)
    lo = [math.floor(min(v[i] for v in region.vertices)) + sum(min(0, r[i]) for r in rays) for i in range(s)]
    hi = [math.ceil(max(v[i] for v in region.vertices)) + sum(max(0, r[i]) for r in rays) for i in range(s)]
    hilb_q = ph.hilbert_basis_pointed(A, s)
    def inside(y):
        return all(la.dot(a, y) >= bb for a, bb in zip(A, b))

    gens = []
    for y in product(*[range(l, h + 1) for l, h in zip(lo, hi)]):
        if not inside(y):
            continue
        if any(inside(tuple(a - c for a, c in zip(y, h))) for h in hilb_q):
            continue
        x, _ = la.solve_integer(B, list(y), n)
        gens.append(la.reduce_mod_lattice(x, perp))
    return LocalSections(cone, ineqs, tuple(hb), tuple(sorted(gens)), None)


def _walls_through(fan: Fan, tau: Cone):
    d = fan.dim(tau) + 1
    adj = [c for c in fan.cones_containing(tau, d)]
    if len(adj) != 2:
        raise NotAWall(f"{tau} bounds {len(adj)} cones of dimension {d}, expected 2")
    return adj


def intersect_curve(D: ToricDivisor, tau: Cone, data: Optional[CartierData] = None) -> Number:
    """Degree of ``D`` on the invariant curve of the wall ``tau``.

    ``<m_2 - m_1, v_1>`` with ``v_1`` a lateral lift in ``sigma_1``; the two
    cones are ordered by their index tuples.
    """
    fan = D.fan
    tau = fan.cone(tau)
    s1, s2 = _walls_through(fan, tau)
    if data is None:
        data = cartier_data(D)
    m1, m2 = data.form_on(s1), data.form_on(s2)
    _, v1 = _lateral(fan.rank, fan.generators(tau), fan.generators(s1))
    return _num(la.dot([b - a for a, b in zip(m1, m2)], v1))


def is_principal(D: ToricDivisor):
    """Return ``(True, m)`` when ``D = div(chi^m)``, else ``(False, None)``."""
    fan = D.fan
    if not D.is_integral:
        return False, None
    rows = [list(u) for u in fan.rays]
    if not rows:
        return all(c == 0 for c in D.coefficients), tuple([0] * fan.rank)
    x, _ = la.solve_integer(rows, list(D.coefficients), fan.rank)
    if x is None:
        return False, None
    return True, _canonical_solution(rows, x, fan.rank)


def numerically_trivial(D: ToricDivisor) -> bool:
    """Degree zero on every wall of the fan."""
    data = cartier_data(D)
    fan = D.fan
    d = fan.dimension
    for tau in fan.cones_of_dim(d - 1):
        if len(fan.cones_containing(tau, d)) != 2:
            continue
        if intersect_curve(D, tau, data) != 0:
            return False
    return True


def pullback(D: ToricDivisor, fine: Fan, data: Optional[CartierData] = None) -> ToricDivisor:
    """Pull a Cartier divisor back to a refinement: new coefficients ``-phi_D(u)``."""
    if data is None:
        data = cartier_data(D)
    coarse = D.fan
    if not refines(fine, coarse):
        raise NotARefinement("target fan does not refine the divisor's fan")
    coeffs = []
    for u in fine.rays:
        i = coarse.ray_index(u)
        if i is not None:
            coeffs.append(D.coefficients[i])
            continue
        c = support_membership(coarse, u)
        coeffs.append(_num(-la.dot(data.form_on(c), u)))
    return ToricDivisor(fine, tuple(coeffs))


class PLFunction:
    """Piecewise linear function on a simplicial fan, given by its ray values."""

    def __init__(self, fan: Fan, values: Sequence):
        if not fan.is_simplicial():
            raise NonSimplicialFan("piecewise linear functions need a simplicial fan")
        vals = tuple(_num(v) for v in values)
        if len(vals) != len(fan.rays):
            raise ValueError(f"expected {len(fan.rays)} values, got {len(vals)}")
        self.fan = fan
        self.values = vals
        self._forms: Dict[Cone, Tuple] = {}

    def __repr__(self):
        return f"PLFunction({self.fan!r}, values={self.values})"

    def __eq__(self, other):
        return isinstance(other, PLFunction) and self.fan == other.fan and self.values == other.values

    def __hash__(self):
        return hash((self.fan, self.values))

    @classmethod
    def linear(cls, fan: Fan, m) -> "PLFunction":
        return cls(fan, [_num(sum(Fraction(a) * b for a, b in zip(m, u))) for u in fan.rays])

    def __add__(self, other):
        if isinstance(other, PLFunction):
            if other.fan != self.fan:
                raise PreconditionError("functions live on different fans")
            return PLFunction(self.fan, [a + b for a, b in zip(self.values, other.values)])
        return NotImplemented

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, k):
        return PLFunction(self.fan, [k * a for a in self.values])

    __rmul__ = __mul__

    def __neg__(self):
        return (-1) * self

    def linear_form(self, cone: Cone) -> Tuple:
        """Canonical rational ``m`` with ``<m, u_rho> = f(u_rho)`` on ``cone``."""
        cone = tuple(cone)
        if cone not in self._forms:
            rows = [list(self.fan.rays[i]) for i in cone]
            rhs = [Fraction(self.values[i]) for i in cone]
            sol = la.solve_rational(rows, rhs, self.fan.rank) if rows else tuple(
                Fraction(0) for _ in range(self.fan.rank)
            )
            self._forms[cone] = tuple(_num(x) for x in sol)
        return self._forms[cone]

    def __call__(self, point):
        return self.evaluate(point)

    def evaluate(self, point):
        p = [Fraction(x) for x in point]
        c = support_membership(self.fan, p)
        if c is None:
            raise ConeNotInFan(f"{tuple(point)} is outside the support")
        m = self.linear_form(c)
        return _num(sum(Fraction(a) * b for a, b in zip(m, p)))

    def linear_on(self, generators) -> Optional[Tuple]:
        """A linear form agreeing with the function on ``cone(generators)``.

        Returns ``None`` when the function is not linear there.  The cone may
        belong to another fan; its pieces cut by this fan are examined.
        """
        gens = [tuple(g) for g in generators]
        n = self.fan.rank
        if not gens:
            return tuple([0] * n)
        for sigma in self.fan.maximal:
            H = self.fan.hrep(sigma)
            if all(H.contains(g) for g in gens):
                return self.linear_form(sigma)
        HC = ph.cone_hrep(tuple(gens), n)
        pts = set(gens)
        for sigma in self.fan.maximal:
            Hs = self.fan.hrep(sigma)
            rays, _ = ph.hrep_to_rays(
                list(HC.facets) + list(Hs.facets), list(HC.equations) + list(Hs.equations), n
            )
            if rays and la.rank(rays, n) == HC.dim:
                pts.update(rays)
        pts = sorted(pts)
        rows = [list(p) for p in pts]
        rhs = [Fraction(self.evaluate(p)) for p in pts]
        sol = la.solve_rational(rows, rhs, n)
        return None if sol is None else tuple(_num(x) for x in sol)

    def is_linear(self) -> bool:
        return self.linear_on([u for u in self.fan.rays] or []) is not None and la.solve_rational(
            [list(u) for u in self.fan.rays], [Fraction(v) for v in self.values], self.fan.rank
        ) is not None

    def transport(self, fan: Fan) -> "PLFunction":
        """Same function on another simplicial fan (typically a refinement)."""
        return PLFunction(fan, [self.evaluate(u) for u in fan.rays])


def support_function(D: ToricDivisor) -> PLFunction:
    """``phi_D`` with ``phi_D(u_rho) = -d_rho``; requires Cartier and simplicial."""
    if not D.fan.is_simplicial():
        raise NonSimplicialFan("support functions are only represented on simplicial fans")
    cartier_data(D)
    return PLFunction(D.fan, [-d for d in D.coefficients])


def restrict(D: ToricDivisor, subfan: Fan) -> ToricDivisor:
    """Restriction to a subfan sharing the same rays."""
    coeffs = []
    for u in subfan.rays:
        i = D.fan.ray_index(u)
        if i is None:
            raise ConeNotInFan(f"{u} is not a ray of the divisor's fan")
        coeffs.append(D.coefficients[i])
    return ToricDivisor(subfan, tuple(coeffs))
