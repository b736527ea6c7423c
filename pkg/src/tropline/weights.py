"""Minkowski weights and their intersection with piecewise linear functions."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .divisors import CartierData, PLFunction, ToricDivisor, _num, cartier_data
from .errors import (
    ConeNotInFan,
    FunctionNotLinearOnCone,
    PreconditionError,
    UnbalancedInput,
    WrongCodimension,
)
from .fan import Cone, Fan, _lateral, _quotient


class MinkowskiWeight:
    """Weights on the ``dim``-dimensional cones of a fan.

    Only nonzero weights are stored.  ``codim`` is ``rank - dim``.  Weights
    are integers except when produced by ``kappa`` from a rational function.
    """

    def __init__(self, fan: Fan, dim: int, weights: Dict[Cone, object]):
        self.fan = fan
        self.dim = int(dim)
        clean = {}
        for cone, w in weights.items():
            c = fan.cone(cone)
            if fan.dim(c) != self.dim:
                raise ConeNotInFan(f"cone {c} has dimension {fan.dim(c)}, expected {self.dim}")
            w = _num(w)
            if w != 0:
                clean[c] = w
        self.weights: Dict[Cone, object] = dict(sorted(clean.items()))

    @classmethod
    def constant(cls, fan: Fan, value=1, dim: Optional[int] = None) -> "MinkowskiWeight":
        """``value`` on every cone of dimension ``dim`` (default: the fan's dimension)."""
        d = fan.dimension if dim is None else dim
        return cls(fan, d, {c: value for c in fan.cones_of_dim(d)})

    @classmethod
    def zero(cls, fan: Fan, dim: int) -> "MinkowskiWeight":
        return cls(fan, dim, {})

    @property
    def codim(self) -> int:
        return self.fan.rank - self.dim

    def __getitem__(self, cone) -> object:
        return self.weights.get(tuple(sorted(cone)), 0)

    def __eq__(self, other):
        if not isinstance(other, MinkowskiWeight):
            return NotImplemented
        return (self.fan, self.dim, self.weights) == (other.fan, other.dim, other.weights)

    def __hash__(self):
        return hash((self.fan, self.dim, tuple(self.weights.items())))

    def __repr__(self):
        return f"MinkowskiWeight(dim={self.dim}, weights={self.weights})"

    def _compatible(self, other):
        if self.fan != other.fan or self.dim != other.dim:
            raise PreconditionError("weights live on different fans or dimensions")

    def __add__(self, other):
        self._compatible(other)
        keys = set(self.weights) | set(other.weights)
        return MinkowskiWeight(self.fan, self.dim, {k: self[k] + other[k] for k in keys})

    def __neg__(self):
        return MinkowskiWeight(self.fan, self.dim, {k: -v for k, v in self.weights.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        return MinkowskiWeight(self.fan, self.dim, {c: k * v for c, v in self.weights.items()})

    __rmul__ = __mul__

    def by_rays(self) -> Dict[Tuple, object]:
        """Weights keyed by the generator tuples of their cones."""
        return {self.fan.generators(c): w for c, w in self.weights.items()}

    def faces_below(self) -> List[Cone]:
        """Faces of dimension ``dim - 1`` of weighted cones."""
        out = set()
        for c in self.weights:
            out.update(f for f in self.fan.facets_of(c))
        return sorted(out)


WeightedFan = MinkowskiWeight


def _lifts(fan: Fan, tau: Cone, sigmas):
    tg = fan.generators(tau)
    return {s: _lateral(fan.rank, tg, fan.generators(s)) for s in sigmas}


def balancing_defect(c: MinkowskiWeight, tau: Cone) -> Tuple[int, ...]:
    """``sum c(sigma) v_{sigma/tau}`` in quotient coordinates."""
    fan = c.fan
    Q = _quotient(fan.generators(tau), fan.rank)
    total = [0] * len(Q.projection)
    adj = [s for s in fan.cones_containing(tau, c.dim) if c[s] != 0]
    for s, (v, _) in _lifts(fan, tau, adj).items():
        total = [t + c[s] * x for t, x in zip(total, v)]
    return tuple(total)


def is_balanced(c: MinkowskiWeight) -> Tuple[bool, List[Cone]]:
    """Check balancing at every ``(dim-1)``-face of a weighted cone."""
    if c.dim == 0:
        return True, []
    bad = [tau for tau in c.faces_below() if any(balancing_defect(c, tau))]
    return not bad, bad


def support(c: MinkowskiWeight) -> Fan:
    """Face closure of the cones with nonzero weight (possibly the zero fan)."""
    fan = c.fan
    if not c.weights:
        return Fan(fan.rank, [], [()])
    return fan.subfan(c.weights.keys())


def _form_getter(f, fan: Fan):
    """Return ``gens -> linear form`` for a PL function or Cartier divisor."""
    if isinstance(f, ToricDivisor):
        data: CartierData = cartier_data(f)
        target = f.fan

        def get(gens):
            idx = []
            for g in gens:
                i = target.ray_index(g)
                if i is None:
                    return None
                idx.append(i)
            cone = tuple(sorted(idx))
            if cone not in target:
                return None
            return data.form_on(cone)

        return get
    if isinstance(f, PLFunction):
        return f.linear_on
    raise TypeError("expected a PLFunction or a ToricDivisor")


def kappa(c: MinkowskiWeight, f: Union[PLFunction, ToricDivisor]) -> MinkowskiWeight:
    """Intersect a weight with a piecewise linear function.

    For each ``(dim-1)``-face ``tau`` of a weighted cone,
    ``kappa(tau) = f_tau(sum c v) - sum c f(v)`` over weighted cones
    ``sigma`` containing ``tau`` with lateral lifts ``v``.  A Cartier divisor
    stands for its support function ``phi_D``.
    """
    if c.dim == 0:
        raise WrongCodimension("cannot intersect a weight on the zero cone")
    fan = c.fan
    form = _form_getter(f, fan)
    forms: Dict[Cone, Tuple] = {}

    def m(cone):
        if cone not in forms:
            val = form(fan.generators(cone))
            if val is None:
                raise FunctionNotLinearOnCone(f"function is not linear on cone {fan.generators(cone)}")
            forms[cone] = val
        return forms[cone]

    out = {}
    for tau in c.faces_below():
        adj = [s for s in fan.cones_containing(tau, c.dim) if c[s] != 0]
        lifts = _lifts(fan, tau, adj)
        total = [0] * len(_quotient(fan.generators(tau), fan.rank).projection)
        for s, (v, _) in lifts.items():
            total = [t + c[s] * x for t, x in zip(total, v)]
        if any(total):
            raise UnbalancedInput(f"weight is not balanced at {fan.generators(tau)}")
        m0 = m(adj[0])
        val = Fraction(0)
        for s in adj:
            _, lift = lifts[s]
            ms = m(s)
            val += c[s] * sum((Fraction(a) - Fraction(b)) * x for a, b, x in zip(m0, ms, lift))
        out[tau] = val
    return MinkowskiWeight(fan, c.dim - 1, out)


def divisor_to_weight(D: ToricDivisor) -> MinkowskiWeight:
    """Intersection numbers of ``D`` with the walls of its fan.

    The fan must be pure; every codimension-one cone (relative to the fan's
    dimension) must be a wall.
    """
    fan = D.fan
    if not fan.is_pure():
        raise PreconditionError("divisor_to_weight needs a pure fan")
    return kappa(MinkowskiWeight.constant(fan, 1), D)


def degree(c: MinkowskiWeight):
    """Weight at the zero cone of a weight of full codimension."""
    if c.dim != 0:
        raise WrongCodimension(f"degree needs codimension {c.fan.rank}, got {c.codim}")
    return c[()]


def strata_equivalent(d1: ToricDivisor, d2: ToricDivisor, c: MinkowskiWeight) -> bool:
    """``kappa(c, phi_d1) == kappa(c, phi_d2)`` on every face of ``Supp(c)`` one dimension down."""
    return kappa(c, d1).by_rays() == kappa(c, d2).by_rays()


def lifts(f: PLFunction, D: ToricDivisor, c: MinkowskiWeight) -> bool:
    """Whether ``f`` reproduces the strata degrees of ``D`` on ``c``."""
    return kappa(c, f).by_rays() == kappa(c, D).by_rays()


@dataclass(frozen=True)
class MixedWeight:
    """A weight paired with a function linear on each weighted cone."""

    weight: MinkowskiWeight
    function: PLFunction

    def __post_init__(self):
        fan = self.weight.fan
        for cone in self.weight.weights:
            if self.function.linear_on(fan.generators(cone)) is None:
                raise FunctionNotLinearOnCone(f"function is not linear on {fan.generators(cone)}")

    def kappa(self) -> MinkowskiWeight:
        return kappa(self.weight, self.function)
