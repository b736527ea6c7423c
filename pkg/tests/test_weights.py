import random

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from sympy import Matrix

from tropline import fixtures as fx
from tropline.divisors import PLFunction, ToricDivisor, div_char, support_function
from tropline.errors import ConeNotInFan, FunctionNotLinearOnCone, UnbalancedInput, WrongCodimension
from tropline.tropical import LaurentSupport, tropicalize
from tropline.weights import (
    MinkowskiWeight,
    MixedWeight,
    balancing_defect,
    degree,
    divisor_to_weight,
    is_balanced,
    kappa,
    lifts,
    strata_equivalent,
    support,
)

from ._gen import random_divisor, random_support

SURFACES = fx.complete_surfaces()
surface_names = st.sampled_from(sorted(SURFACES))
seeds = st.integers(0, 10**6)


def _evaluate_oracle(fan, values, u):
    """Evaluate a PL function by writing ``u`` in the generators of a containing cone."""
    for sigma in fan.maximal:
        gens = fan.generators(sigma)
        coeffs = Matrix([list(g) for g in gens]).T.solve(Matrix(u))
        if all(x >= 0 for x in coeffs):
            return sum(a * values[i] for a, i in zip(coeffs, sigma))
    raise AssertionError("point outside the fan")


# -- balancing --------------------------------------------------------
def test_constant_weight_on_complete_fan_is_balanced():
    for F in SURFACES.values():
        assert is_balanced(MinkowskiWeight.constant(F))[0]
        rays_balance = not any(sum(col) for col in zip(*F.rays))
        assert is_balanced(MinkowskiWeight.constant(F, 1, dim=1))[0] == rays_balance
    assert is_balanced(MinkowskiWeight.constant(fx.example0_fan()))[0]


def test_unbalanced_weight_reported():
    F = fx.p2()
    c = MinkowskiWeight(F, 1, {F.cone_of_rays([(1, 0)]): 1})
    ok, bad = is_balanced(c)
    assert not ok and bad == [()]
    assert balancing_defect(c, ()) == (1, 0)
    with pytest.raises(UnbalancedInput):
        kappa(c, PLFunction.linear(F, (0, 0)))


def test_weighted_cones_must_have_the_stated_dimension():
    F = fx.p2()
    with pytest.raises(ConeNotInFan):
        MinkowskiWeight(F, 1, {F.maximal[0]: 1})


def test_support_drops_zero_weights():
    F = fx.example0_fan()
    c = MinkowskiWeight(F, 2, {F.maximal[0]: 1, F.maximal[1]: 0})
    assert len(support(c).maximal) == 1
    assert support(MinkowskiWeight.zero(F, 2)).maximal == ((),)


# -- kappa ------------------------------------------------------------
def test_line_and_conic_degrees_on_p2():
    F = fx.p2()
    H = ToricDivisor.prime(F, (-1, -1))
    line = tropicalize(LaurentSupport.of([(0, 0), (1, 0), (0, 1)]))
    conic = tropicalize(LaurentSupport.of([(0, 0), (2, 0), (0, 2), (1, 1), (1, 0), (0, 1)]))
    phi = support_function(H)
    assert degree(kappa(line, phi)) == 1
    assert degree(kappa(conic, phi)) == 2


def test_self_intersection_via_kappa():
    F = fx.f1()
    E = ToricDivisor.prime(F, (1, 1))
    w = divisor_to_weight(E)
    assert w.by_rays() == {((0, 1),): 1, ((1, 0),): 1, ((1, 1),): -1}
    assert degree(kappa(w, E)) == -1


def test_kappa_on_zero_dimensional_weight_rejected():
    F = fx.p2()
    with pytest.raises(WrongCodimension):
        kappa(MinkowskiWeight(F, 0, {(): 1}), PLFunction.linear(F, (0, 0)))
    with pytest.raises(WrongCodimension):
        degree(MinkowskiWeight.constant(F, 1, dim=1))


# [DERIVED] plane curves: kappa degree equals -sum w(rho) f(u_rho)
@given(surface_names, seeds)
def test_kappa_degree_matches_oracle(name, seed):
    rng = random.Random(seed)
    F = SURFACES[name]
    c = tropicalize(random_support(rng, 2))
    assume(c.dim == 1 and all(len(s) == 1 for s in c.weights))
    values = [rng.randint(-4, 4) for _ in F.rays]
    f = PLFunction(F, values)
    expected = -sum(w * _evaluate_oracle(F, values, c.fan.rays[s[0]]) for s, w in c.weights.items())
    assert degree(kappa(c, f)) == expected


def _pl_on(fan, rng):
    return PLFunction(fan, [rng.randint(-4, 4) for _ in fan.rays])


@given(seeds)
def test_kappa_output_is_balanced(seed):
    rng = random.Random(seed)
    c = tropicalize(random_support(rng, 3, max_terms=6))
    assume(c.fan.is_simplicial())
    out = kappa(c, _pl_on(c.fan, rng))
    assert is_balanced(out)[0]


@given(seeds)
def test_kappa_is_additive_and_kills_linear_functions(seed):
    rng = random.Random(seed)
    c = tropicalize(random_support(rng, 3, max_terms=6))
    assume(c.fan.is_simplicial())
    f, g = _pl_on(c.fan, rng), _pl_on(c.fan, rng)
    assert kappa(c, f + g) == kappa(c, f) + kappa(c, g)
    assert kappa(c, f * 3) == kappa(c, f) * 3
    m = tuple(rng.randint(-3, 3) for _ in range(3))
    assert not kappa(c, PLFunction.linear(c.fan, m)).weights
    assert kappa(c, f + PLFunction.linear(c.fan, m)) == kappa(c, f)


def test_function_must_be_linear_on_weighted_cones():
    F = fx.p2()
    c = MinkowskiWeight.constant(F, 1, dim=2)
    G = fx.f1()
    bent = PLFunction(G, [int(u == (1, 1)) for u in G.rays])
    with pytest.raises(FunctionNotLinearOnCone):
        kappa(c, bent)
    with pytest.raises(FunctionNotLinearOnCone):
        MixedWeight(c, bent)


def test_mixed_weight():
    F = fx.p2()
    H = ToricDivisor.prime(F, (-1, -1))
    mw = MixedWeight(MinkowskiWeight.constant(F, 1, dim=1), support_function(H))
    assert degree(mw.kappa()) == 1


# -- divisors as weights ----------------------------------------------
# [REFERENCE] Example 1: strata weights of D_{r1} and of the sum of all rays
def test_example1_divisor_weights():
    F = fx.example1_fan()
    c = MinkowskiWeight.constant(F)
    D = ToricDivisor.prime(F, (1, 0, 1))
    r1, r2, r3, r4 = fx.EX1_RAYS

    def listed(w):
        return [w.by_rays().get((r,), 0) for r in (r1, r2, r3, r4)]

    assert listed(kappa(c, D)) == [0, 1, 0, 1]
    assert listed(kappa(c, ToricDivisor(F, (1, 1, 1, 1)))) == [2, 2, 2, 2]


@given(surface_names, seeds)
def test_divisor_to_weight_is_additive(name, seed):
    rng = random.Random(seed)
    F = SURFACES[name]
    D1, D2 = random_divisor(rng, F), random_divisor(rng, F)
    assert divisor_to_weight(D1 + D2) == divisor_to_weight(D1) + divisor_to_weight(D2)
    m = (rng.randint(-3, 3), rng.randint(-3, 3))
    assert not divisor_to_weight(div_char(m, F)).weights


# -- strata equivalence -----------------------------------------------
@given(surface_names, seeds)
def test_strata_equivalence_is_an_equivalence(name, seed):
    rng = random.Random(seed)
    F = SURFACES[name]
    c = MinkowskiWeight.constant(F)
    A = random_divisor(rng, F)
    m1 = (rng.randint(-3, 3), rng.randint(-3, 3))
    m2 = (rng.randint(-3, 3), rng.randint(-3, 3))
    B = A + div_char(m1, F)
    C = B + div_char(m2, F)
    assert strata_equivalent(A, A, c)
    assert strata_equivalent(A, B, c) and strata_equivalent(B, A, c)
    assert strata_equivalent(B, C, c) and strata_equivalent(A, C, c)
    other = random_divisor(rng, F)
    assert strata_equivalent(A, other, c) == strata_equivalent(other, A, c)


@given(surface_names, seeds)
def test_support_function_lifts_its_divisor(name, seed):
    rng = random.Random(seed)
    F = SURFACES[name]
    D = random_divisor(rng, F)
    c = MinkowskiWeight.constant(F)
    assert lifts(support_function(D), D, c)
    m = (rng.randint(-3, 3), rng.randint(-3, 3))
    assert lifts(support_function(D) + PLFunction.linear(F, m), D, c)
