"""Rational polyhedral fans over a lattice N = Z^n.

A :class:`Fan` stores primitive ray generators (sorted lexicographically) and
cones as sorted tuples of ray indices.  Cones are plain tuples so they can be
used as dictionary keys by the weight and divisor modules.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from . import lattice as la
from . import polyhedra as ph
from .errors import ConeNotInFan, NotAFacetPair, NotAFan, NotARefinement, ZeroVector
from .lattice import primitive

Vector = Tuple[int, ...]
Cone = Tuple[int, ...]

__all__ = [
    "Fan",
    "QuotientLattice",
    "RationalComplex",
    "Subdivision",
    "primitive",
    "quotient_by_cone",
    "lateral_generator",
    "is_unimodular",
    "multiplicity",
    "star_subdivide",
    "stellar_subdivide",
    "simplicialize",
    "unimodularize",
    "refines",
    "cone_over_complex",
    "support_membership",
    "common_refinement",
    "check_fan",
]


def _as_int_vector(v) -> Vector:
    out = []
    for x in v:
        if isinstance(x, bool) or int(x) != x:
            raise ValueError(f"non-integral coordinate {x!r}")
        out.append(int(x))
    return tuple(out)


class Fan:
    """A fan in N_R with canonical ray order.

    Parameters
    ----------
    rank : int
        Ambient dimension n.
    rays : sequence of integer vectors
        Ray generators; they are normalized to primitive vectors.
    cones : iterable of index collections
        Cones given by indices into ``rays``.  Only the maximal ones matter;
        faces are computed geometrically.
    complete : bool, optional
        Declared completeness.  ``None`` means undeclared; use
        :meth:`is_complete` to verify.
    """

    def __init__(self, rank: int, rays: Sequence[Sequence[int]], cones: Iterable[Iterable[int]], complete: Optional[bool] = None):
        self.rank = int(rank)
        prim = []
        for v in rays:
            v = _as_int_vector(v)
            if len(v) != self.rank:
                raise NotAFan(f"ray {v} has length {len(v)}, expected {self.rank}")
            try:
                prim.append(primitive(v))
            except ZeroVector:
                raise NotAFan("zero ray generator") from None
        if len(set(prim)) != len(prim):
            raise NotAFan("duplicate ray generators")
        order = sorted(range(len(prim)), key=lambda i: prim[i])
        remap = {old: new for new, old in enumerate(order)}
        self.rays: Tuple[Vector, ...] = tuple(prim[i] for i in order)
        listed = set()
        for c in cones:
            c = tuple(sorted({remap[int(i)] for i in c}))
            listed.add(c)
        if not listed:
            listed = {()}
        maximal = [c for c in listed if not any(set(c) < set(d) for d in listed)]
        self.maximal: Tuple[Cone, ...] = tuple(sorted(maximal))
        used = set(i for c in self.maximal for i in c)
        if used != set(range(len(self.rays))):
            raise NotAFan("every ray must lie in some cone")
        self.declared_complete = complete
        self._faces: Dict[Cone, Tuple[Cone, ...]] = {}
        all_cones = set()
        for c in self.maximal:
            gens = tuple(self.rays[i] for i in c)
            if c and len(ph.extreme_generators(gens, self.rank)) != len(c):
                raise NotAFan(f"cone {c} has a redundant or non-extreme generator")
            H = ph.cone_hrep(gens, self.rank)
            if c and not H.pointed:
                raise NotAFan(f"cone {c} is not strongly convex")
            faces = [tuple(sorted(c[j] for j in F)) for F in ph.faces_of(gens, self.rank)] if c else [()]
            self._faces[c] = tuple(sorted(faces))
            all_cones.update(faces)
        all_cones.add(())
        self.cones: Tuple[Cone, ...] = tuple(sorted(all_cones))
        self._cone_set = frozenset(self.cones)
        self._ray_index = {r: i for i, r in enumerate(self.rays)}

    # -- basic queries -------------------------------------------------
    def __repr__(self):
        return f"Fan(rank={self.rank}, rays={len(self.rays)}, maximal={len(self.maximal)})"

    def __eq__(self, other):
        if not isinstance(other, Fan):
            return NotImplemented
        return (self.rank, self.rays, self.maximal) == (other.rank, other.rays, other.maximal)

    def __hash__(self):
        return hash((self.rank, self.rays, self.maximal))

    def __contains__(self, cone) -> bool:
        return tuple(sorted(cone)) in self._cone_set

    def cone(self, indices: Iterable[int]) -> Cone:
        """Canonical form of a cone given by ray indices; raises if absent."""
        c = tuple(sorted(set(int(i) for i in indices)))
        if c not in self._cone_set:
            raise ConeNotInFan(f"{c} is not a cone of the fan")
        return c

    def cone_of_rays(self, vectors: Iterable[Sequence[int]]) -> Cone:
        idx = []
        for v in vectors:
            p = primitive(_as_int_vector(v))
            if p not in self._ray_index:
                raise ConeNotInFan(f"{p} is not a ray of the fan")
            idx.append(self._ray_index[p])
        return self.cone(idx)

    def ray_index(self, v) -> Optional[int]:
        return self._ray_index.get(tuple(v))

    def generators(self, cone: Cone) -> Tuple[Vector, ...]:
        return tuple(self.rays[i] for i in cone)

    def hrep(self, cone: Cone) -> ph.ConeHRep:
        return ph.cone_hrep(self.generators(cone), self.rank)

    def dim(self, cone: Cone) -> int:
        return self.hrep(cone).dim

    def faces(self, cone: Cone) -> Tuple[Cone, ...]:
        """All faces of ``cone`` (including itself and the zero cone)."""
        cone = tuple(cone)
        if cone not in self._faces:
            gens = self.generators(cone)
            fs = [tuple(sorted(cone[j] for j in F)) for F in ph.faces_of(gens, self.rank)] if cone else [()]
            self._faces[cone] = tuple(sorted(fs))
        return self._faces[cone]

    def facets_of(self, cone: Cone) -> Tuple[Cone, ...]:
        d = self.dim(cone)
        return tuple(f for f in self.faces(cone) if self.dim(f) == d - 1)

    def cones_of_dim(self, d: int) -> Tuple[Cone, ...]:
        return tuple(c for c in self.cones if self.dim(c) == d)

    def cones_containing(self, tau: Cone, dim: Optional[int] = None) -> Tuple[Cone, ...]:
        t = set(tau)
        return tuple(
            c for c in self.cones if t <= set(c) and (dim is None or self.dim(c) == dim)
        )

    @property
    def dimension(self) -> int:
        return max(self.dim(c) for c in self.maximal)

    def is_pure(self) -> bool:
        return len({self.dim(c) for c in self.maximal}) == 1

    def is_simplicial(self) -> bool:
        return all(self.dim(c) == len(c) for c in self.cones)

    def non_simplicial_cones(self) -> List[Cone]:
        return [c for c in self.cones if self.dim(c) != len(c)]

    def walls(self) -> List[Tuple[Cone, Cone, Cone]]:
        """Codimension-one cones of a pure fan bounding exactly two top cones."""
        d = self.dimension
        out = []
        for tau in self.cones_of_dim(d - 1):
            adj = [c for c in self.maximal if self.dim(c) == d and set(tau) <= set(c)]
            if len(adj) == 2:
                out.append((tau, adj[0], adj[1]))
        return out

    def is_complete(self) -> bool:
        """Verify that the support is all of R^n."""
        n = self.rank
        if n == 0:
            return True
        if any(self.dim(c) != n for c in self.maximal):
            return False
        for tau in self.cones_of_dim(n - 1):
            if sum(1 for c in self.maximal if set(tau) <= set(c)) != 2:
                return False
        return True

    def subfan(self, cones: Iterable[Cone]) -> "Fan":
        """The face closure of the given cones, as a fan on its own rays."""
        cones = [tuple(c) for c in cones]
        used = sorted(set(i for c in cones for i in c))
        pos = {i: k for k, i in enumerate(used)}
        return Fan(self.rank, [self.rays[i] for i in used], [[pos[i] for i in c] for c in cones] or [()])

    def translate_cone(self, cone: Cone, other: "Fan") -> Cone:
        """Indices of ``cone`` (a cone of ``other``) in this fan."""
        return self.cone_of_rays(other.generators(cone))


@dataclass(frozen=True)
class QuotientLattice:
    """``N / N_tau`` with ``N_tau`` the saturation of the span of a cone.

    ``projection`` rows form a basis of ``tau^perp ∩ M`` in Hermite normal
    form, so ``x -> projection @ x`` is a surjection ``Z^n -> Z^(n - dim)``
    whose kernel is exactly ``sublattice``.
    """

    rank: int
    sublattice: Tuple[Vector, ...]
    projection: Tuple[Vector, ...]

    def project(self, v) -> Vector:
        return tuple(la.dot(row, v) for row in self.projection)

    def lift(self, w) -> Vector:
        """Some integral preimage of ``w``."""
        if not self.projection:
            return tuple([0] * self.rank)
        x, _ = la.solve_integer([list(r) for r in self.projection], list(w), self.rank)
        assert x is not None
        return x


def quotient_by_cone(fan: Fan, tau: Cone) -> QuotientLattice:
    """Quotient of N by the saturated span of ``tau``.

    >>> F = Fan(3, [(0, 0, 1)], [[0]])
    >>> quotient_by_cone(F, (0,)).project((1, 0, 0))
    (1, 0)
    """
    tau = fan.cone(tau)
    return _quotient(fan.generators(tau), fan.rank)


def _quotient(gens: Sequence[Vector], n: int) -> QuotientLattice:
    gens = [list(g) for g in gens]
    if gens:
        perp = la.saturated_kernel(gens, n)
        sub = la.hnf(la.saturated_kernel([list(p) for p in perp], n), n) if perp else la.hnf(
            [[int(i == j) for j in range(n)] for i in range(n)], n
        )
    else:
        perp = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        sub = []
    return QuotientLattice(n, tuple(tuple(r) for r in sub), tuple(tuple(r) for r in perp))


def _lateral(fan_rank: int, tau_gens, sigma_gens) -> Tuple[Vector, Vector]:
    Q = _quotient(tau_gens, fan_rank)
    tau_set = set(tau_gens)
    outside = [g for g in sigma_gens if g not in tau_set]
    u = outside[0]
    w = primitive(Q.project(u))
    x = Q.lift(w)
    # x - u/g lies in span(tau); shift by integral tau-combinations into sigma
    g = la.gcd_all(Q.project(u))
    target = [Fraction(a) - Fraction(b, g) for a, b in zip(x, u)]
    if tau_gens:
        indep = []
        for t in tau_gens:
            if la.rank([list(s) for s in indep] + [list(t)], fan_rank) > len(indep):
                indep.append(t)
        coef = la.solve_rational([[t[i] for t in indep] for i in range(fan_rank)], target, len(indep))
        assert coef is not None
        lift = list(x)
        for c, t in zip(coef, indep):
            f = c.numerator // c.denominator
            lift = [a - f * b for a, b in zip(lift, t)]
        x = tuple(lift)
    return w, tuple(x)


def lateral_generator(fan: Fan, tau: Cone, sigma: Cone) -> Tuple[Vector, Vector]:
    """Primitive generator of the image of ``sigma`` in ``N / N_tau``.

    Returns ``(v, lift)``: ``v`` in quotient coordinates and an integral lift
    lying in ``sigma``.
    """
    tau, sigma = fan.cone(tau), fan.cone(sigma)
    if not set(tau) < set(sigma) or fan.dim(sigma) != fan.dim(tau) + 1:
        raise NotAFacetPair(f"{tau} is not a facet of {sigma}")
    return _lateral(fan.rank, fan.generators(tau), fan.generators(sigma))


def multiplicity(fan: Fan, cone: Cone) -> Optional[int]:
    """Index of the lattice spanned by a simplicial cone's rays in its saturation."""
    if fan.dim(cone) != len(cone):
        return None
    if not cone:
        return 1
    prod = 1
    for d in la.smith_invariants([list(r) for r in fan.generators(cone)]):
        prod *= d
    return prod


def is_unimodular(fan: Fan) -> Tuple[bool, List[Cone]]:
    """Whether every maximal cone is generated by part of a lattice basis.

    Returns ``(flag, offenders)``; non-simplicial cones always offend.
    """
    bad = []
    for c in fan.maximal:
        if fan.dim(c) != len(c):
            bad.append(c)
        elif c and any(d != 1 for d in la.smith_invariants([list(r) for r in fan.generators(c)])):
            bad.append(c)
    return not bad, bad


class Subdivision(NamedTuple):
    fan: Fan
    ray: int
    unchanged: bool


def support_membership(fan: Fan, point) -> Optional[Cone]:
    """Smallest cone of ``fan`` containing ``point``, or ``None``."""
    p = [Fraction(x) for x in point]
    if len(p) != fan.rank:
        return None
    x = la.clear_denominators(p) if any(p) else tuple([0] * fan.rank)
    for c in sorted(fan.cones, key=lambda c: (fan.dim(c), c)):
        if fan.hrep(c).contains(x):
            return c
    return None


def stellar_subdivide(fan: Fan, v) -> Subdivision:
    """Insert the ray through ``v`` and re-cone every cone containing it."""
    v = primitive(_as_int_vector(v))
    gamma = support_membership(fan, v)
    if gamma is None:
        raise ConeNotInFan(f"{v} is not in the support of the fan")
    if v in fan._ray_index:
        return Subdivision(fan, fan._ray_index[v], True)
    new = len(fan.rays)
    g = set(gamma)
    cones = []
    for sigma in fan.maximal:
        if g <= set(sigma):
            for F in fan.facets_of(sigma):
                if not g <= set(F):
                    cones.append(tuple(F) + (new,))
        else:
            cones.append(sigma)
    out = Fan(fan.rank, list(fan.rays) + [v], cones, complete=fan.declared_complete)
    return Subdivision(out, out.ray_index(v), False)


def star_subdivide(fan: Fan, gamma: Cone) -> Subdivision:
    """Star subdivision at ``gamma`` along ``primitive(sum of its rays)``.

    For a ray ``gamma`` the fan is returned unchanged with ``unchanged=True``.
    """
    gamma = fan.cone(gamma)
    if not gamma:
        raise ConeNotInFan("cannot subdivide at the zero cone")
    if fan.dim(gamma) == 1:
        return Subdivision(fan, gamma[0], True)
    total = [sum(col) for col in zip(*fan.generators(gamma))]
    return stellar_subdivide(fan, primitive(total))


def simplicialize(fan: Fan) -> Fan:
    """Refine to a simplicial fan by star subdivisions at non-simplicial cones."""
    while True:
        bad = fan.non_simplicial_cones()
        if not bad:
            return fan
        gamma = min(bad, key=lambda c: (fan.dim(c), fan.generators(c)))
        fan = star_subdivide(fan, gamma).fan


def _parallelepiped_points(gens: Sequence[Vector], n: int) -> List[Vector]:
    """Nonzero lattice points ``sum lam_i g_i`` with ``0 <= lam_i < 1``."""
    Q = _quotient(gens, n)
    B = [list(b) for b in Q.sublattice]
    # coordinates of the generators in the basis B of the saturated span
    Bt = [[b[i] for b in B] for i in range(n)]
    C = [list(la.solve_integer(Bt, list(g), len(B))[0]) for g in gens]
    H = la.hnf(C, len(B))
    reps = [[]]
    for i in range(len(H)):
        reps = [r + [k] for r in reps for k in range(H[i][i])]
    Ct = la.transpose(C, len(B))
    out = []
    for y in reps:
        if not any(y):
            continue
        lam = la.solve_rational(Ct, y, len(gens))
        lam = [x - (x.numerator // x.denominator) for x in lam]
        pt = [sum(l * g[i] for l, g in zip(lam, gens)) for i in range(n)]
        out.append(tuple(int(x) for x in pt))
    return sorted(set(out))


def unimodularize(fan: Fan, max_steps: int = 10000) -> Tuple[Fan, List[Vector]]:
    """Resolve a fan by repeated stellar subdivision.

    Works on the maximal cone of largest multiplicity (ties broken by the
    lexicographic order of its generators).  Inside it the smallest
    non-unimodular face is subdivided: along the sum of its rays when that
    lands in the open fundamental parallelepiped, otherwise along the
    lexicographically first parallelepiped point.  Heuristic, not minimal.
    Returns the refined fan and the inserted rays in order.
    """
    fan = simplicialize(fan)
    added = []
    for _ in range(max_steps):
        ok, bad = is_unimodular(fan)
        if ok:
            return fan, added
        sigma = max(bad, key=lambda c: (multiplicity(fan, c), [tuple(-x for x in g) for g in fan.generators(c)]))
        faces = [f for f in fan.faces(sigma) if f and multiplicity(fan, f) > 1]
        gamma = min(faces, key=lambda f: (len(f), fan.generators(f)))
        gens = fan.generators(gamma)
        total = tuple(sum(col) for col in zip(*gens))
        pts = _parallelepiped_points(gens, fan.rank)
        g = la.gcd_all(total)
        half = tuple(x // g for x in total)
        v = half if half in pts else pts[0]
        fan = stellar_subdivide(fan, v).fan
        added.append(v)
    raise RuntimeError("unimodularization did not terminate")


def _contained(fan_a: Fan, cone_a: Cone, fan_b: Fan, cone_b: Cone) -> bool:
    H = fan_b.hrep(cone_b)
    return all(H.contains(g) for g in fan_a.generators(cone_a))


def refines(fine: Fan, coarse: Fan) -> bool:
    """Equal supports and every cone of ``fine`` inside a cone of ``coarse``."""
    if fine.rank != coarse.rank:
        return False
    for c in fine.maximal:
        if not any(_contained(fine, c, coarse, s) for s in coarse.maximal):
            return False
    for s in coarse.maximal:
        d = coarse.dim(s)
        if d == 0:
            continue
        inside = [c for c in fine.maximal if fine.dim(c) == d and _contained(fine, c, coarse, s)]
        if not inside:
            return False
        Hs = coarse.hrep(s)
        count: Dict[Cone, int] = {}
        for c in inside:
            for F in fine.facets_of(c):
                count[F] = count.get(F, 0) + 1
        for F, k in count.items():
            gens = fine.generators(F)
            on_boundary = any(all(la.dot(h, g) == 0 for g in gens) for h in Hs.facets)
            if not on_boundary and k != 2:
                return False
    return True


@dataclass(frozen=True)
class RationalComplex:
    """Polyhedra in Q^n, each given by vertices and recession rays."""

    ambient: int
    polyhedra: Tuple[Tuple[Tuple[Tuple[Fraction, ...], ...], Tuple[Vector, ...]], ...]

    @classmethod
    def from_lists(cls, ambient, polyhedra):
        polys = []
        for verts, rays in polyhedra:
            V = tuple(tuple(Fraction(x) for x in v) for v in verts)
            R = tuple(_as_int_vector(r) for r in rays)
            if not V:
                raise NotAFan("polyhedra in a complex must be nonempty")
            polys.append((V, R))
        return cls(int(ambient), tuple(polys))


def cone_over_complex(complex_: RationalComplex) -> Fan:
    """Fan in rank n+1 of cones over ``P x {1}`` for the polyhedra ``P``."""
    n = complex_.ambient
    rays: List[Vector] = []
    index: Dict[Vector, int] = {}
    cones = []
    for verts, recs in complex_.polyhedra:
        gens = [la.clear_denominators(list(v) + [1]) for v in verts]
        gens += [primitive(tuple(r) + (0,)) for r in recs if any(r)]
        gens = [gens[i] for i in ph.extreme_generators(tuple(gens), n + 1)]
        idx = []
        for g in gens:
            if g not in index:
                index[g] = len(rays)
                rays.append(g)
            idx.append(index[g])
        cones.append(idx)
    fan = Fan(n + 1, rays, cones)
    check_fan(fan)
    return fan


def check_fan(fan: Fan) -> None:
    """Raise :class:`NotAFan` unless maximal cones meet in common faces."""
    n = fan.rank
    for a, b in combinations(fan.maximal, 2):
        Ha, Hb = fan.hrep(a), fan.hrep(b)
        shared = tuple(sorted(set(a) & set(b)))
        if shared not in fan.faces(a) or shared not in fan.faces(b):
            raise NotAFan(f"cones {a} and {b} share rays that do not form a common face")
        rays, lin = ph.hrep_to_rays(
            list(Ha.facets) + list(Hb.facets), list(Ha.equations) + list(Hb.equations), n
        )
        Hs = fan.hrep(shared)
        if lin or not all(Hs.contains(r) for r in rays):
            raise NotAFan(f"cones {a} and {b} overlap beyond a common face")


def common_refinement(a: Fan, b: Fan) -> Fan:
    """Fan of pairwise intersections of cones; its support is ``|a| ∩ |b|``."""
    if a.rank != b.rank:
        raise NotARefinement("rank mismatch")
    n = a.rank
    rays: List[Vector] = []
    index: Dict[Vector, int] = {}
    cones = []
    for s in a.maximal:
        for t in b.maximal:
            Hs, Ht = a.hrep(s), b.hrep(t)
            R, lin = ph.hrep_to_rays(
                list(Hs.facets) + list(Ht.facets), list(Hs.equations) + list(Ht.equations), n
            )
            idx = []
            for r in R:
                if r not in index:
                    index[r] = len(rays)
                    rays.append(r)
                idx.append(index[r])
            cones.append(idx)
    return Fan(n, rays, cones)
