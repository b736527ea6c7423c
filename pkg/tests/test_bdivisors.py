import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropline import fixtures as fx
from tropline import lattice as la
from tropline.bdivisors import (
    CartierBDivisor,
    ModelTower,
    MonomialIdeal,
    determined_on,
    envelope_from_sections,
    extend,
    is_nef,
    is_relatively_nef,
    nef_envelope,
    pull_back,
    push_forward,
    restrict,
    z_of_ideal,
)
from tropline.divisors import PLFunction, ToricDivisor, div_char, polytope, pullback
from tropline.errors import EmptyPolytope, IncomparableModels, NotARefinement, NotCartier, PreconditionError
from tropline.fan import Fan, common_refinement, star_subdivide

from ._gen import random_divisor, random_ideal_generators

SURFACES = fx.complete_surfaces()
surface_names = st.sampled_from(sorted(SURFACES))
seeds = st.integers(0, 10**6)


def _orthant_split():
    O = fx.orthant(2)
    return O, star_subdivide(O, O.maximal[0]).fan


def _min_phi():
    O, S = _orthant_split()
    return CartierBDivisor(O, S, PLFunction(S, [min(u) for u in S.rays]))


def _bounded_divisor(rng, F):
    """A random divisor on a complete fan with nonempty P_D."""
    while True:
        D = random_divisor(rng, F, -1, 3)
        if not polytope(D).is_empty:
            return D


# -- determined_on / push / pull --------------------------------------
def test_determined_on_examples():
    O, S = _orthant_split()
    b = _min_phi()
    assert not determined_on(b, O)
    assert determined_on(b, S)
    lin = CartierBDivisor(O, S, PLFunction.linear(S, (2, -1)))
    assert determined_on(lin, O)
    with pytest.raises(IncomparableModels):
        determined_on(b, Fan(2, [(1, 2), (0, 1)], [[0, 1]]))


def test_push_forward_examples():
    O, S = _orthant_split()
    assert push_forward(z_of_ideal(MonomialIdeal.of([(1, 0), (0, 1)]), O), O) == ToricDivisor.zero(O)
    lin = CartierBDivisor(O, S, PLFunction.linear(S, (2, -1)))
    assert push_forward(lin, O) == div_char((2, -1), O) * -1
    with pytest.raises(NotARefinement):
        push_forward(_min_phi(), fx.p2())


def test_pull_back_hyperplane_to_f1():
    P2, F1 = fx.p2(), fx.f1()
    H = ToricDivisor.prime(P2, (-1, -1))
    b = pull_back(H, F1)
    assert [b(u) for u in F1.rays] == [-1, 0, 0, 0]  # rays (-1,-1),(0,1),(1,0),(1,1)
    assert determined_on(b, P2)
    assert push_forward(b, P2) == H
    assert not any(pull_back(ToricDivisor.zero(P2), F1).phi.values)


def test_pull_back_requires_cartier():
    F = Fan(2, [(1, 0), (1, 2)], [[0, 1]])
    with pytest.raises(NotCartier):
        pull_back(ToricDivisor.prime(F, (1, 0)))


@given(surface_names, seeds)
def test_push_pull_identity_and_functoriality(name, seed):
    rng = random.Random(seed)
    F = SURFACES[name]
    D = random_divisor(rng, F)
    G = star_subdivide(F, rng.choice(F.cones_of_dim(2))).fan
    H = star_subdivide(G, rng.choice(G.cones_of_dim(2))).fan
    b = pull_back(D, H)
    assert determined_on(b, F)
    assert push_forward(b, F) == D
    assert b.truncation(H) == pullback(D, H)
    assert b.equivalent(pull_back(pullback(D, G), H))


# -- Z of monomial ideals ---------------------------------------------
def test_z_of_maximal_ideal():
    O, S = _orthant_split()
    b = z_of_ideal(MonomialIdeal.of([(1, 0), (0, 1)]), O)
    assert b.fan == S
    assert b.truncation(S).coefficient((1, 1)) == -1
    assert is_relatively_nef(b)


def test_z_of_principal_ideal_is_linear():
    O, _ = _orthant_split()
    b = z_of_ideal(MonomialIdeal.of([(1, 0)]), O)
    assert b.fan == O and determined_on(b, O)
    assert b.truncation(O) == div_char((1, 0), O) * -1


def test_z_of_square_of_maximal_ideal():
    O, S = _orthant_split()
    b = z_of_ideal(MonomialIdeal.of([(2, 0), (1, 1), (0, 2)]), O)
    assert b.fan == S
    assert b.truncation(S) == ToricDivisor.prime(S, (1, 1)) * -2


@given(st.integers(1, 3), seeds)
def test_z_of_ideal_is_relatively_nef_and_is_min(n, seed):
    rng = random.Random(seed)
    gens = random_ideal_generators(rng, n)
    base = fx.orthant(n)
    b = z_of_ideal(MonomialIdeal.of(gens), base)
    assert is_relatively_nef(b)
    for u in b.fan.rays:
        assert b(u) == min(la.dot(m, u) for m in gens)


def test_nef_examples():
    b = _min_phi()
    assert is_relatively_nef(b) and is_nef(b)
    neg = b * -1
    assert not is_relatively_nef(neg) and not is_nef(neg)
    P2 = fx.p2()
    assert is_nef(pull_back(ToricDivisor.prime(P2, (-1, -1))))
    F1 = fx.f1()
    assert not is_nef(pull_back(ToricDivisor.prime(F1, (1, 1))))


# -- envelopes --------------------------------------------------------
def test_envelope_of_hyperplane():
    P2 = fx.p2()
    H = ToricDivisor.prime(P2, (-1, -1))
    env = nef_envelope(H)
    assert env.equivalent(pull_back(H))
    for u in [(1, 0), (0, 1), (-1, -1), (2, -5)]:
        assert env(u) == min(0, u[0], u[1])


def test_envelope_of_twice_exceptional():
    F1 = fx.f1()
    D = ToricDivisor.prime(F1, (1, 1)) * 2
    assert polytope(D).vertices == ((0, 0),)
    env = nef_envelope(D)
    assert all(v == 0 for v in env.phi.values)
    assert push_forward(env, F1) <= D


def test_envelope_errors():
    P2 = fx.p2()
    with pytest.raises(EmptyPolytope):
        nef_envelope(ToricDivisor(P2, (-1, 0, 0)))
    assert not any(nef_envelope(ToricDivisor.zero(fx.orthant(2))).phi.values)


def test_envelope_with_lineality_in_polytope():
    # P_D is a half-plane; the minimum is still finite on the ray
    F = Fan(2, [(1, 0)], [[0]])
    env = nef_envelope(ToricDivisor(F, (2,)))
    assert env((1, 0)) == -2 and env((5, 0)) == -10


# [DERIVED] envelope values against a brute-force minimum over P_D
@given(surface_names, seeds)
def test_envelope_matches_lattice_minimum(name, seed):
    rng = random.Random(seed)
    F = SURFACES[name]
    D = _bounded_divisor(rng, F)
    env = nef_envelope(D)
    pts = polytope(D).lattice_points()
    verts = polytope(D).vertices
    for u in env.fan.rays:
        expected = min(sum(Fraction(a) * b for a, b in zip(v, u)) for v in verts)
        assert env(u) == expected
        if all(isinstance(x, int) or Fraction(x).denominator == 1 for v in verts for x in v):
            assert min(la.dot(p, u) for p in pts) == expected


@given(surface_names, seeds)
def test_envelope_laws(name, seed):
    rng = random.Random(seed)
    F = SURFACES[name]
    D = _bounded_divisor(rng, F)
    env = nef_envelope(D)
    assert is_relatively_nef(env) and is_nef(env)
    assert push_forward(env, F) <= D
    # idempotence
    assert nef_envelope(push_forward(env, F)).equivalent(env)
    # scaling
    for m in (2, 3):
        assert nef_envelope(D * m).equivalent(env * m)


@given(surface_names, seeds)
def test_envelope_monotone_and_maximal(name, seed):
    rng = random.Random(seed)
    F = SURFACES[name]
    D1 = _bounded_divisor(rng, F)
    D2 = D1 + ToricDivisor(F, tuple(rng.randint(0, 2) for _ in F.rays))
    e1, e2 = nef_envelope(D1), nef_envelope(D2)
    R = common_refinement(e1.fan, e2.fan)
    # larger divisor, larger polytope, smaller minimum
    assert all(e1(u) >= e2(u) for u in R.rays)
    # a nef pull-back below D is dominated by the envelope as a divisor
    for _ in range(5):
        W = random_divisor(rng, F, -2, 2)
        wb = pull_back(W)
        if is_nef(wb) and W <= D1:
            R = common_refinement(wb.fan, e1.fan)
            assert all(wb(u) >= e1(u) for u in R.rays)


@given(surface_names, seeds)
def test_graded_sequence_cross_check(name, seed):
    rng = random.Random(seed)
    F = SURFACES[name]
    D = _bounded_divisor(rng, F)
    env = nef_envelope(D)
    for m in (1, 2, 3):
        approx = envelope_from_sections(D, m)
        R = common_refinement(env.fan, approx.fan)
        if all(Fraction(x).denominator == 1 for v in polytope(D).vertices for x in v):
            assert all(approx(u) == env(u) for u in R.rays)
        else:
            assert all(approx(u) >= env(u) for u in R.rays)


# -- towers, restriction and extension --------------------------------
def test_model_tower():
    P2 = fx.p2()
    F1 = fx.f1()
    G = star_subdivide(F1, F1.cone_of_rays([(1, 1), (0, 1)])).fan
    b = z_of_ideal(MonomialIdeal.of([(1, 0), (0, 1)]), P2)
    T = ModelTower.of_bdivisor(b, [P2, F1, G])
    assert T.divisors[1].coefficient((1, 1)) == -1
    bad = ToricDivisor(F1, (0, 0, 1, 0))
    with pytest.raises(PreconditionError):
        ModelTower((P2, F1), (T.divisors[0], bad))
    with pytest.raises(NotARefinement):
        ModelTower((F1, P2), (T.divisors[1], T.divisors[0]))


@pytest.mark.parametrize(
    "sub,ambient",
    [(fx.example0_fan, fx.p3), (fx.example1_fan, fx.example1_completion)],
    ids=["example0-in-P3", "example1-in-completion"],
)
def test_restriction_and_extension_fixtures(sub, ambient):
    S, A = sub(), ambient()
    rng = random.Random(7)
    for _ in range(10):
        f = PLFunction(S, [rng.randint(-3, 3) for _ in S.rays])
        ext = extend(f, S, A)
        for u in S.rays:
            assert ext(u) == f(u)
        for sigma in S.maximal:
            pt = tuple(sum(c) for c in zip(*S.generators(sigma)))
            assert ext(pt) == f(pt)
        back = restrict(ext, S)
        for u in S.rays:
            assert back(u) == f(u)
