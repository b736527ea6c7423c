"""Line bundles on tropical compactifications as weights on strata.

For a weight ``c`` of dimension ``k`` and a Cartier divisor ``D`` the
weight of ``tau`` (a ``(k-1)``-face of ``Supp(c)``) is ``kappa(c, phi_D)(tau)``.
This module computes that map, inverts it by integral linear algebra, and
checks that it commutes with pullback along star subdivisions.
"""
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from . import lattice as la
from .divisors import PLFunction, ToricDivisor, cartier_data, pullback
from .errors import (
    ConeNotInFan,
    DimensionMismatch,
    Infeasible,
    NonSimplicialFan,
    PreconditionError,
    UnderdeterminedWarning,
)
from .fan import Cone, Fan, star_subdivide, support_membership
from .weights import MinkowskiWeight, kappa, support


@dataclass(frozen=True)
class StrataWeights:
    """Value ``w(tau)`` for each ``(k-1)``-face ``tau`` of the weighted cones of ``c``.

    Zero values are kept, so ``values`` covers every such face.
    """

    weight: MinkowskiWeight
    values: Dict[Cone, int]

    def __post_init__(self):
        faces = self.weight.faces_below()
        vals = {}
        for tau, v in self.values.items():
            t = tuple(sorted(tau))
            if t not in faces:
                raise ConeNotInFan(f"{t} is not a face of a weighted cone")
            vals[t] = v
        full = {t: vals.get(t, 0) for t in faces}
        object.__setattr__(self, "values", full)

    @classmethod
    def from_rays(cls, c: MinkowskiWeight, values: Dict[Tuple, int]) -> "StrataWeights":
        """Build from a mapping keyed by generator tuples."""
        return cls(c, {c.fan.cone_of_rays(k): v for k, v in values.items()})

    def by_rays(self) -> Dict[Tuple, int]:
        return {self.weight.fan.generators(t): v for t, v in self.values.items()}

    def __eq__(self, other):
        if not isinstance(other, StrataWeights):
            return NotImplemented
        return self.weight == other.weight and self.values == other.values

    def __hash__(self):
        return hash((self.weight, tuple(self.values.items())))


def admissible_sets(fan: Fan, tau: Cone, k: int) -> List[Tuple[Tuple[int, ...], ...]]:
    """Ray sets of size ``k-1`` generating ``tau`` (simplicial cones only)."""
    tau = fan.cone(tau)
    if fan.dim(tau) != k - 1:
        raise DimensionMismatch(f"cone has dimension {fan.dim(tau)}, expected {k - 1}")
    if len(tau) != fan.dim(tau):
        raise NonSimplicialFan("admissible sets are only enumerated for simplicial cones")
    return [fan.generators(tau)]


def _require_simplicial_support(c: MinkowskiWeight) -> Fan:
    S = support(c)
    if not S.is_simplicial():
        raise NonSimplicialFan("the support of the weight must be simplicial; refine first")
    return S


def weights_from_divisor(c: MinkowskiWeight, D: ToricDivisor) -> StrataWeights:
    _require_simplicial_support(c)
    return StrataWeights(c, dict(kappa(c, D).weights))


@dataclass(frozen=True)
class DivisorSolution:
    """Solutions ``D`` on ``fan`` (the support of the weight) of ``kappa(c, phi_D) = w``.

    ``homogeneous`` is an integral basis of the solutions for ``w = 0``;
    ``principal_rank`` is the rank of ``{div(chi^m)}`` inside it.
    """

    fan: Fan
    representative: ToricDivisor
    homogeneous: Tuple[ToricDivisor, ...]
    principal_rank: int

    @property
    def quotient_rank(self) -> int:
        """Number of unknowns minus the rank of the principal divisors."""
        return len(self.fan.rays) - self.principal_rank

    @property
    def underdetermined(self) -> bool:
        return len(self.homogeneous) > self.principal_rank

    def contains(self, D: ToricDivisor) -> bool:
        diff = [a - b for a, b in zip(D.coefficients, self.representative.coefficients)]
        if not self.homogeneous:
            return not any(diff)
        A = [list(h.coefficients) for h in self.homogeneous]
        x, _ = la.solve_integer(la.transpose(A), diff, len(A))
        return x is not None


def _kappa_matrix(c: MinkowskiWeight, S: Fan):
    faces = c.faces_below()
    cols = []
    for i in range(len(S.rays)):
        f = PLFunction(S, [-int(j == i) for j in range(len(S.rays))])
        k = kappa(c, f)
        cols.append([Fraction(k[t]) for t in faces])
    rows = [[cols[j][r] for j in range(len(cols))] for r in range(len(faces))]
    return faces, rows


def divisor_from_weights(c: MinkowskiWeight, w: StrataWeights) -> DivisorSolution:
    """Invert :func:`weights_from_divisor` over the integers.

    The unknowns are the coefficients on the rays of ``Supp(c)``.  Raises
    :class:`Infeasible` when no integral solution exists and warns with
    :class:`UnderdeterminedWarning` when the homogeneous solutions are more
    than the principal divisors.
    """
    S = _require_simplicial_support(c)
    if w.weight != c:
        raise PreconditionError("strata weights belong to a different weight")
    faces, rows = _kappa_matrix(c, S)
    rhs = [Fraction(w.values[t]) for t in faces]
    int_rows, int_rhs = [], []
    for row, b in zip(rows, rhs):
        den = 1
        for x in row + [b]:
            den = den * x.denominator // la.gcd_all([den, x.denominator])
        int_rows.append([int(x * den) for x in row])
        int_rhs.append(int(b * den))
    n_unknowns = len(S.rays)
    if n_unknowns == 0:
        if any(rhs):
            raise Infeasible("no rays to carry a divisor")
        return DivisorSolution(S, ToricDivisor(S, ()), (), 0)
    if int_rows:
        x, kernel = la.solve_integer(int_rows, int_rhs, n_unknowns)
    else:
        x, kernel = tuple([0] * n_unknowns), [tuple(int(i == j) for j in range(n_unknowns)) for i in range(n_unknowns)]
    if x is None:
        rational = la.solve_rational(rows, rhs, n_unknowns) if rows else None
        raise Infeasible("no integral divisor realizes these weights", rational)
    kernel = [tuple(r) for r in la.hnf(kernel, n_unknowns)] if kernel else []
    rep = la.reduce_mod_lattice(x, kernel)
    principal_rank = la.rank([list(u) for u in S.rays], S.rank)
    sol = DivisorSolution(
        S,
        ToricDivisor(S, rep),
        tuple(ToricDivisor(S, k) for k in kernel),
        principal_rank,
    )
    if sol.underdetermined:
        warnings.warn(
            f"homogeneous solutions have rank {len(kernel)}, principal divisors rank {principal_rank}",
            UnderdeterminedWarning,
            stacklevel=2,
        )
    return sol


def transport_weight(c: MinkowskiWeight, fine: Fan) -> MinkowskiWeight:
    """Carry ``c`` to a refinement: each fine cone inherits the weight of the coarse cone it fills."""
    out = {}
    for s in fine.cones_of_dim(c.dim):
        interior = tuple(sum(col) for col in zip(*fine.generators(s))) if s else tuple([0] * fine.rank)
        old = support_membership(c.fan, interior)
        if old is not None and c.fan.dim(old) == c.dim:
            out[s] = c[old]
    return MinkowskiWeight(fine, c.dim, out)


@dataclass(frozen=True)
class BlowupReport:
    exceptional_ray: Tuple[int, ...]
    exceptional_coefficient: object
    before: Dict[Tuple, object]
    after: Dict[Tuple, object]
    exceptional_walls: Tuple[Tuple, ...]
    mismatches: Tuple[Tuple[Tuple, object, object], ...] = field(default=())

    @property
    def old_walls_preserved(self) -> bool:
        ex = set(self.exceptional_walls)
        return not any(t not in ex for t, _, _ in self.mismatches)

    @property
    def exceptional_zero(self) -> bool:
        ex = set(self.exceptional_walls)
        return not any(t in ex for t, _, _ in self.mismatches)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _interior_point(fan: Fan, cone: Cone):
    if not cone:
        return tuple([0] * fan.rank)
    return tuple(sum(col) for col in zip(*fan.generators(cone)))


def blowup_compatibility(c: MinkowskiWeight, D: ToricDivisor, gamma: Cone) -> BlowupReport:
    """Star-subdivide at ``gamma`` and compare strata weights before and after.

    A new face ``tau'`` filling an old face ``tau`` of the same dimension must
    keep ``w(tau)``; any other new face is exceptional and must get ``0``.
    """
    fan = c.fan
    if D.fan != fan:
        raise PreconditionError("divisor and weight must live on the same fan")
    gamma = fan.cone(gamma)
    if not any(set(gamma) <= set(s) for s in c.weights):
        raise ConeNotInFan("gamma is not a cone of the support of the weight")
    data = cartier_data(D)
    w = weights_from_divisor(c, D)
    sub = star_subdivide(fan, gamma)
    fine = sub.fan
    c2 = transport_weight(c, fine)
    D2 = pullback(D, fine, data)
    w2 = weights_from_divisor(c2, D2)
    exceptional, mismatches = [], []
    for tau2, val in w2.values.items():
        old = support_membership(fan, _interior_point(fine, tau2))
        gens = fine.generators(tau2)
        if fan.dim(old) == fine.dim(tau2):
            expected = w.values.get(old, 0)
        else:
            exceptional.append(gens)
            expected = 0
        if val != expected:
            mismatches.append((gens, val, expected))
    u_e = fine.rays[sub.ray]
    return BlowupReport(
        u_e,
        D2.coefficients[sub.ray],
        w.by_rays(),
        w2.by_rays(),
        tuple(exceptional),
        tuple(mismatches),
    )
