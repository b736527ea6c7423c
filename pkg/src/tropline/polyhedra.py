"""Exact polyhedral kernels: facets, extreme rays, vertices, Hilbert bases.

Everything here works by brute-force enumeration of tight constraint sets.
That is plenty for the ambient dimensions this package targets (n <= 5) and
keeps every step a plain rank computation over Q.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import List, Optional, Sequence, Tuple

from . import lattice as la

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class ConeHRep:
    """Inequality description of a rational polyhedral cone in Z^n.

    ``equations`` is an HNF basis of the saturated lattice ``span^perp``;
    ``facets`` are primitive inner normals lying in ``span`` (so they are
    canonical, not merely defined modulo the equations).
    """

    ambient: int
    dim: int
    equations: Tuple[Vector, ...]
    facets: Tuple[Vector, ...]

    def contains(self, x) -> bool:
        return all(la.dot(e, x) == 0 for e in self.equations) and all(
            la.dot(h, x) >= 0 for h in self.facets
        )

    def in_relative_interior(self, x) -> bool:
        return all(la.dot(e, x) == 0 for e in self.equations) and all(
            la.dot(h, x) > 0 for h in self.facets
        )

    @property
    def pointed(self) -> bool:
        return la.rank(list(self.equations) + list(self.facets), self.ambient) == self.ambient


def _project_to_span(h, equations):
    """Remove the component of ``h`` along ``span(equations)`` (orthogonal projection)."""
    if not equations:
        return la.primitive(h)
    E = [list(e) for e in equations]
    G = [[Fraction(la.dot(a, b)) for b in E] for a in E]
    rhs = [Fraction(la.dot(a, h)) for a in E]
    coef = la.solve_rational(G, rhs, len(E))
    proj = [Fraction(x) for x in h]
    for c, e in zip(coef, E):
        proj = [p - c * ei for p, ei in zip(proj, e)]
    return la.clear_denominators(proj)


@lru_cache(maxsize=65536)
def cone_hrep(generators: Tuple[Vector, ...], n: int) -> ConeHRep:
    """Facets and equations of ``cone(generators)``."""
    gens = [g for g in generators if any(g)]
    d = la.rank(gens, n) if gens else 0
    equations = tuple(la.saturated_kernel(gens, n)) if gens else tuple(
        tuple(int(i == j) for j in range(n)) for i in range(n)
    )
    if d == 0:
        return ConeHRep(n, 0, equations, ())
    facets = set()
    basis_rows = [list(e) for e in equations]
    for S in combinations(range(len(gens)), d - 1):
        rows = [list(gens[i]) for i in S]
        if d - 1 and la.rank(rows, n) != d - 1:
            continue
        ns = la.nullspace(rows + basis_rows, n)
        if len(ns) != 1:
            continue
        h = _project_to_span(ns[0], equations)
        vals = [la.dot(h, g) for g in gens]
        if all(v >= 0 for v in vals):
            facets.add(h)
        elif all(v <= 0 for v in vals):
            facets.add(tuple(-x for x in h))
    return ConeHRep(n, d, equations, tuple(sorted(facets)))


def extreme_generators(generators: Sequence[Vector], n: int) -> List[int]:
    """Indices of generators spanning extreme rays (first occurrence per ray)."""
    gens = tuple(tuple(g) for g in generators)
    H = cone_hrep(gens, n)
    seen = set()
    out = []
    for i, g in enumerate(gens):
        if not any(g):
            continue
        p = la.primitive(g)
        if p in seen:
            continue
        tight = [list(h) for h in H.facets if la.dot(h, g) == 0]
        if la.rank(tight + [list(e) for e in H.equations], n) == n - 1:
            seen.add(p)
            out.append(i)
    return out


def faces_of(generators: Tuple[Vector, ...], n: int) -> List[frozenset]:
    """All faces of a pointed cone, as frozensets of generator indices."""
    H = cone_hrep(generators, n)
    full = frozenset(range(len(generators)))
    result = {full}
    stack = [full]
    while stack:
        F = stack.pop()
        sub = tuple(generators[i] for i in sorted(F))
        idx = sorted(F)
        HF = cone_hrep(sub, n)
        for h in HF.facets:
            G = frozenset(idx[j] for j, g in enumerate(sub) if la.dot(h, g) == 0)
            if G not in result:
                result.add(G)
                stack.append(G)
    if H.dim > 0:
        result.add(frozenset())
    return sorted(result, key=lambda s: (len(s), sorted(s)))


def hrep_to_rays(inequalities: Sequence[Sequence], equations: Sequence[Sequence], n: int):
    """V-description of ``{x : A x >= 0, E x = 0}``.

    Returns ``(rays, lineality)``: primitive extreme rays of the pointed part
    ``C ∩ L^perp`` and a primitive basis of the lineality space ``L``.
    """
    A = [list(a) for a in inequalities]
    E = [list(e) for e in equations]
    lineality = la.nullspace(A + E, n) if (A or E) else [
        tuple(int(i == j) for j in range(n)) for i in range(n)
    ]
    E2 = E + [list(l) for l in lineality]
    Erows = [r for r in E2]
    e_rank = la.rank(Erows, n) if Erows else 0
    need = n - 1 - e_rank
    rays = set()
    if need < 0:
        return [], lineality
    for S in combinations(range(len(A)), need):
        rows = Erows + [A[i] for i in S]
        if not rows:
            ns = la.nullspace([], n)
        else:
            if la.rank(rows, n) != n - 1:
                continue
            ns = la.nullspace(rows, n)
        if len(ns) != 1:
            continue
        x = ns[0]
        for cand in (x, tuple(-c for c in x)):
            if all(la.dot(a, cand) >= 0 for a in A):
                rays.add(cand)
    return sorted(rays), lineality


@dataclass(frozen=True)
class LatticePolytope:
    """``conv(vertices) + cone(rays) + span(lineality)`` in Q^n.

    Empty exactly when there are no vertices.  Vertices are the extreme
    points (or, with lineality, the extreme points of the pointed part
    orthogonal to it).  ``inequalities`` optionally records an H-description
    ``A x >= b`` as ``(A, b)``.
    """

    ambient: int
    vertices: Tuple[Tuple[Fraction, ...], ...]
    rays: Tuple[Vector, ...] = ()
    lineality: Tuple[Vector, ...] = ()
    inequalities: Optional[Tuple[Tuple[Vector, ...], Tuple[Fraction, ...]]] = None

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def is_bounded(self) -> bool:
        return not self.rays and not self.lineality

    @property
    def dim(self) -> int:
        if self.is_empty:
            return -1
        base = self.vertices[0]
        rows = [[a - b for a, b in zip(v, base)] for v in self.vertices[1:]]
        rows += [list(r) for r in self.rays] + [list(l) for l in self.lineality]
        return la.rank(rows, self.ambient) if rows else 0

    def lattice_points(self) -> List[Vector]:
        """Integral points of a bounded polytope."""
        if not self.is_bounded:
            raise ValueError("unbounded polyhedron has infinitely many lattice points")
        if self.is_empty:
            return []
        if self.inequalities is None:
            A, b = _facet_inequalities(self.vertices, self.ambient)
        else:
            A, b = self.inequalities
        return lattice_points(self.vertices, A, b, self.ambient)


def _facet_inequalities(vertices, n):
    lifted = tuple(la.clear_denominators(list(v) + [1]) for v in vertices)
    H = cone_hrep(lifted, n + 1)
    A, b = [], []
    for h in H.facets:
        A.append(tuple(h[:n]))
        b.append(Fraction(-h[n]))
    for e in H.equations:
        A.append(tuple(e[:n]))
        b.append(Fraction(-e[n]))
        A.append(tuple(-x for x in e[:n]))
        b.append(Fraction(e[n]))
    return A, b


def polyhedron_from_inequalities(A: Sequence[Sequence], b: Sequence, n: int) -> LatticePolytope:
    """Minkowski-Weyl decomposition of ``{x : A x >= b}``."""
    ineqs = [list(a) + [-bb] for a, bb in zip(A, b)]
    ineqs = [la.clear_denominators(r) if any(r) else tuple(r) for r in ineqs]
    ineqs.append(tuple([0] * n + [1]))
    rays, lin = hrep_to_rays(ineqs, [], n + 1)
    verts, rec = [], []
    for r in rays:
        t = r[n]
        if t > 0:
            verts.append(tuple(Fraction(x, t) for x in r[:n]))
        else:
            rec.append(tuple(r[:n]))
    # lineality of the homogenized cone lies in t = 0
    A_t = tuple(tuple(a) for a in A)
    b_t = tuple(Fraction(x) for x in b)
    return LatticePolytope(
        n, tuple(sorted(verts)), tuple(sorted(rec)), tuple(l[:n] for l in lin), (A_t, b_t)
    )


def _planar_hull(pts: List[Vector]) -> List[Vector]:
    """Monotone chain; collinear boundary points are dropped."""

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def chain(seq):
        out: List[Vector] = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = chain(pts), chain(reversed(pts))
    return sorted(set(lower[:-1] + upper[:-1]))


def convex_hull_vertices(points: Sequence[Sequence[int]], n: int) -> List[Vector]:
    """Extreme points of a finite point set, sorted."""
    pts = sorted(set(tuple(int(x) for x in p) for p in points))
    if len(pts) <= 2:
        return pts
    if n == 1:
        return [pts[0], pts[-1]]
    if n == 2:
        return _planar_hull(pts)
    lifted = tuple(p + (1,) for p in pts)
    return sorted(pts[i] for i in extreme_generators(lifted, n + 1))


def polytope_edges(vertices: Sequence[Vector], n: int) -> List[Tuple[Vector, Vector]]:
    """Edges of ``conv(vertices)`` (vertices must be extreme)."""
    verts = sorted(tuple(v) for v in vertices)
    lifted = tuple(v + (1,) for v in verts)
    H = cone_hrep(lifted, n + 1)
    eq = [list(e) for e in H.equations]
    tight = [frozenset(k for k, h in enumerate(H.facets) if la.dot(h, g) == 0) for g in lifted]
    edges = []
    for i, j in combinations(range(len(verts)), 2):
        T = tight[i] & tight[j]
        rows = [list(H.facets[k]) for k in T] + eq
        if la.rank(rows, n + 1) != n - 1:
            continue
        face = [k for k in range(len(verts)) if T <= tight[k]]
        if face == [i, j]:
            edges.append((verts[i], verts[j]))
    return edges


def dimension_of_points(points: Sequence[Sequence[int]], n: int) -> int:
    pts = [tuple(p) for p in points]
    if len(pts) <= 1:
        return 0
    base = pts[0]
    return la.rank([[a - b for a, b in zip(p, base)] for p in pts[1:]], n)


def lattice_points(vertices: Sequence[Sequence[Fraction]], A, b, n: int) -> List[Vector]:
    """Lattice points of the bounded polyhedron ``{A x >= b}`` with given vertices."""
    if not vertices:
        return []
    import math

    lo = [math.ceil(min(Fraction(v[i]) for v in vertices)) for i in range(n)]
    hi = [math.floor(max(Fraction(v[i]) for v in vertices)) for i in range(n)]
    out = []
    for p in product(*[range(l, h + 1) for l, h in zip(lo, hi)]):
        if all(la.dot(a, p) >= bb for a, bb in zip(A, b)):
            out.append(tuple(p))
    return out


def hilbert_basis_pointed(inequalities: Sequence[Vector], s: int) -> List[Vector]:
    """Hilbert basis of ``{y in Z^s : <a, y> >= 0}`` for a pointed cone.

    Every element of the monoid is a nonnegative integral combination of
    extreme rays plus a lattice point of the zonotope they span, so the
    irreducible elements all live in that zonotope.
    """
    if s == 0:
        return []
    rays, lin = hrep_to_rays(inequalities, [], s)
    if lin:
        raise ValueError("cone is not pointed")
    if not rays:
        return []
    lo = [sum(min(0, r[i]) for r in rays) for i in range(s)]
    hi = [sum(max(0, r[i]) for r in rays) for i in range(s)]
    H = cone_hrep(tuple(rays), s)
    # the box contains the zonotope, so it contains every irreducible element
    cands = [
        p
        for p in product(*[range(l, h + 1) for l, h in zip(lo, hi)])
        if any(p) and H.contains(p)
    ]
    basis = []
    for p in cands:
        for q in cands:
            if q == p:
                continue
            rest = tuple(a - b for a, b in zip(p, q))
            if any(rest) and H.contains(rest):
                break
        else:
            basis.append(p)
    return sorted(basis)
