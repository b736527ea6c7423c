from math import gcd

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from sympy import Matrix

from tropline import fixtures as fx
from tropline.errors import DimensionZeroPolytope
from tropline.fan import star_subdivide
from tropline.polyhedra import dimension_of_points
from tropline.tropical import LaurentSupport, check_tropical_support, newton_polytope, tropicalize
from tropline.weights import is_balanced

supports2 = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=2, max_size=8, unique=True)
supports3 = st.lists(
    st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)), min_size=2, max_size=8, unique=True
)


def _curve_oracle(exps, box=7):
    """Rays and weights of a plane tropical curve by scanning primitive directions."""
    out = {}
    for x in range(-box, box + 1):
        for y in range(-box, box + 1):
            if gcd(x, y) != 1:
                continue
            vals = [a * x + b * y for a, b in exps]
            low = min(vals)
            arg = [e for e, v in zip(exps, vals) if v == low]
            if len(arg) < 2:
                continue
            d = (-y, x)  # direction of the supporting edge
            proj = [a * d[0] + b * d[1] for a, b in arg]
            lo = arg[proj.index(min(proj))]
            hi = arg[proj.index(max(proj))]
            out[(x, y)] = gcd(hi[0] - lo[0], hi[1] - lo[1])
    return out


def _ray_weights(w):
    return {w.fan.generators(c)[0]: v for c, v in w.weights.items()}


# [REFERENCE] Newton polytopes of the two worked examples
def test_newton_polytopes():
    assert sorted(newton_polytope(fx.example0_support()).vertices) == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert sorted(newton_polytope(fx.example1_support()).vertices) == [(0, 0, 1), (1, 1, 0)]
    assert newton_polytope(LaurentSupport.of([(2, 3)])).vertices == ((2, 3),)


def test_newton_polytope_drops_interior_points():
    P = newton_polytope(LaurentSupport.of([(0, 0), (2, 0), (0, 2), (1, 1), (1, 0)]))
    assert sorted(P.vertices) == [(0, 0), (0, 2), (2, 0)]


# [REFERENCE] the six cones x=0<=y,z ; y=0<=x,z ; ... of Sing(min{x,y,z,0})
def test_example0_tropicalization():
    w = tropicalize(fx.example0_support())
    assert set(w.fan.rays) == {(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)}
    cones = {frozenset(w.fan.generators(c)) for c in w.weights}
    expected = {frozenset((a, b)) for i, a in enumerate(fx.EX0_RAYS) for b in fx.EX0_RAYS[i + 1 :]}
    assert cones == expected
    assert set(w.weights.values()) == {1}
    assert w.fan == fx.example0_fan()


def test_example1_tropicalization_and_printed_ray_discrepancy():
    w = tropicalize(fx.example1_support())
    assert set(w.fan.rays) == set(fx.EX1_RAYS)
    assert len(w.weights) == 4 and set(w.weights.values()) == {1}
    for r in w.fan.rays:
        assert r[0] + r[1] == r[2]
    # (-1,0,1) violates u_y + u_z = u_w, so it cannot be a ray
    assert (-1, 0, 1) not in w.fan.rays


def test_rank_two_example_with_weight_two():
    w = tropicalize(LaurentSupport.of([(0, 0), (1, 0), (0, 2)]))
    assert _ray_weights(w) == {(0, 1): 1, (-2, -1): 1, (1, 0): 2}
    assert _ray_weights(w) == _curve_oracle([(0, 0), (1, 0), (0, 2)])


def test_single_monomial_rejected():
    with pytest.raises(DimensionZeroPolytope):
        tropicalize(LaurentSupport.of([(1, 2, 3)]))


def test_rank_one_segment():
    w = tropicalize(LaurentSupport.of([(0,), (3,)]))
    assert w.dim == 0 and w.weights == {(): 3}


# [DERIVED] plane curves against the direction-scanning oracle
@given(supports2)
def test_plane_curves_match_oracle(exps):
    w = tropicalize(LaurentSupport.of(exps))
    if w.dim == 1 and all(len(c) == 1 for c in w.weights):
        assert _ray_weights(w) == _curve_oracle(exps)


@given(supports2)
def test_plane_curve_balancing_at_origin(exps):
    w = tropicalize(LaurentSupport.of(exps))
    total = [0, 0]
    for c, v in w.weights.items():
        if len(c) == 1:
            r = w.fan.rays[c[0]]
            total = [total[0] + v * r[0], total[1] + v * r[1]]
    assert total == [0, 0]


@given(st.one_of(supports2, supports3))
def test_tropicalization_is_balanced(exps):
    assert is_balanced(tropicalize(LaurentSupport.of(exps)))[0]


@given(supports3, st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)))
def test_translation_invariance(exps, shift):
    a = tropicalize(LaurentSupport.of(exps))
    b = tropicalize(LaurentSupport.of([tuple(x + s for x, s in zip(e, shift)) for e in exps]))
    assert a == b


UNIMODULAR = [((1, 1, 0), (0, 1, 0), (0, 0, 1)), ((0, 1, 0), (1, 0, 0), (0, 0, -1)), ((1, 0, 2), (0, 1, -1), (0, 0, 1))]


@given(supports3, st.sampled_from(UNIMODULAR))
def test_unimodular_coordinate_change(exps, g):
    assume(dimension_of_points(exps, 3) == 3)
    G = Matrix(g)
    new = [tuple(int(x) for x in G * Matrix(e)) for e in exps]
    a = tropicalize(LaurentSupport.of(exps))
    b = tropicalize(LaurentSupport.of(new))
    # exponents move by g, so the curve moves by the inverse transpose
    T = G.T.inv()
    mapped = {
        frozenset(tuple(int(x) for x in T * Matrix(r)) for r in a.fan.generators(c)): v for c, v in a.weights.items()
    }
    theirs = {frozenset(b.fan.generators(c)): v for c, v in b.weights.items()}
    assert mapped == theirs


def test_check_tropical_support():
    w = tropicalize(fx.example0_support())
    F = fx.example0_fan()
    assert check_tropical_support(F, w)
    G = star_subdivide(F, F.cone_of_rays([(1, 0, 0), (0, 1, 0)])).fan
    assert check_tropical_support(G, w)
    assert not check_tropical_support(fx.p2(), w)
    assert not check_tropical_support(fx.p3(), w)
