"""Tropical hypersurfaces under the trivial valuation (min convention).

``Trop(V(f))`` is the set of ``u`` where ``min_a <a, u>`` over the exponents
of ``f`` is attained at least twice: the codimension-one skeleton of the
normal fan of the Newton polytope.  The cone dual to an edge ``e`` carries
the lattice length of ``e`` as weight.
"""
from dataclasses import dataclass
from itertools import product
from typing import List, Optional, Sequence, Tuple

from . import lattice as la
from . import polyhedra as ph
from .errors import DimensionZeroPolytope, PreconditionError
from .fan import Fan
from .polyhedra import LatticePolytope
from .weights import MinkowskiWeight, WeightedFan

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class LaurentSupport:
    """Exponent vectors of a Laurent polynomial; coefficients are optional tags."""

    rank: int
    exponents: Tuple[Vector, ...]
    coefficients: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        exps = tuple(tuple(int(x) for x in e) for e in self.exponents)
        if not exps:
            raise PreconditionError("a Laurent support must be nonempty")
        if any(len(e) != self.rank for e in exps):
            raise PreconditionError("exponent length does not match rank")
        if len(set(exps)) != len(exps):
            raise PreconditionError("exponents must be pairwise distinct")
        if self.coefficients is not None and len(self.coefficients) != len(exps):
            raise PreconditionError("one coefficient tag per exponent")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def of(cls, exponents: Sequence[Sequence[int]]) -> "LaurentSupport":
        exps = [tuple(e) for e in exponents]
        return cls(len(exps[0]) if exps else 0, tuple(exps))


def newton_polytope(f: LaurentSupport) -> LatticePolytope:
    verts = ph.convex_hull_vertices(f.exponents, f.rank)
    return LatticePolytope(f.rank, tuple(verts))


def _breaking_coordinates(lineality: List[Vector], n: int) -> List[int]:
    """Coordinates whose functionals restrict to a basis of ``L^*``."""
    chosen: List[int] = []
    for i in range(n):
        cols = [[v[j] for v in lineality] for j in chosen + [i]]
        if la.rank(cols, len(lineality)) == len(chosen) + 1:
            chosen.append(i)
        if len(chosen) == len(lineality):
            break
    return chosen


def tropicalize(f: LaurentSupport) -> WeightedFan:
    """Weighted fan of the tropical hypersurface of ``f``.

    When the Newton polytope is not full-dimensional its normal cones share
    the lineality space ``L``.  Coordinates ``i_1 < ... < i_l`` are picked
    greedily so that their functionals restrict to a basis of ``L^*``, and
    every cone is cut by the ``2^l`` sign orthants of those coordinates.
    """
    n = f.rank
    verts = ph.convex_hull_vertices(f.exponents, n)
    if ph.dimension_of_points(verts, n) == 0:
        raise DimensionZeroPolytope("Newton polytope is a point; the tropical variety is empty")
    base = verts[0]
    diffs = [[a - b for a, b in zip(v, base)] for v in verts[1:]]
    lineality = la.nullspace(diffs, n)
    coords = _breaking_coordinates(lineality, n)
    pieces: List[Tuple[List[Vector], object]] = []
    for a, b in ph.polytope_edges(verts, n):
        edge = [y - x for x, y in zip(a, b)]
        length = la.gcd_all(edge)
        ineqs = [[y - x for x, y in zip(a, v)] for v in verts if v not in (a, b)]
        for signs in product((1, -1), repeat=len(coords)):
            extra = [[s * int(j == i) for j in range(n)] for s, i in zip(signs, coords)]
            rays, lin = ph.hrep_to_rays(ineqs + extra, [edge], n)
            assert not lin
            if (la.rank(rays, n) if rays else 0) == n - 1:
                pieces.append((rays, length))
    ray_list = sorted({r for rays, _ in pieces for r in rays})
    index = {r: i for i, r in enumerate(ray_list)}
    fan = Fan(n, ray_list, [[index[r] for r in rays] for rays, _ in pieces])
    weights = {}
    for rays, w in pieces:
        weights[fan.cone_of_rays(rays)] = w
    return MinkowskiWeight(fan, n - 1, weights)


def _in_support(fan: Fan, cones, x) -> bool:
    return any(fan.hrep(c).contains(x) for c in cones)


def _sample_points(fan: Fan, cones) -> List[Vector]:
    pts = []
    for c in cones:
        gens = fan.generators(c)
        if gens:
            pts.append(tuple(sum(col) for col in zip(*gens)))
            pts.extend(gens)
        else:
            pts.append(tuple([0] * fan.rank))
    return pts


def check_tropical_support(fan: Fan, w: MinkowskiWeight) -> bool:
    """Whether ``|fan|`` equals the support of ``w``.

    Tests mutual membership of every generator and of one relative-interior
    point of every cone on each side.
    """
    if fan.rank != w.fan.rank:
        return False
    other = w.fan
    wc = list(w.weights)
    w_cones = sorted({f for c in wc for f in other.faces(c)})
    if not _in_support_all(fan, fan.cones, other, w_cones):
        return False
    return _in_support_all(other, w_cones, fan, fan.cones)


def _in_support_all(src: Fan, src_cones, dst: Fan, dst_cones) -> bool:
    return all(_in_support(dst, dst_cones, x) for x in _sample_points(src, src_cones))
