"""Standard fans and supports used by the tests and the CLI examples."""
from .fan import Fan, star_subdivide
from .tropical import LaurentSupport

E1, E2 = (1, 0), (0, 1)


def p2() -> Fan:
    """Projective plane: rays ``e1, e2, -e1-e2``."""
    return Fan(2, [E1, E2, (-1, -1)], [[0, 1], [1, 2], [0, 2]], complete=True)


def p1xp1() -> Fan:
    return Fan(2, [E1, E2, (-1, 0), (0, -1)], [[0, 1], [1, 2], [2, 3], [0, 3]], complete=True)


def hirzebruch(a: int) -> Fan:
    """Rays ``e1, e2, -e2, (-1, a)``."""
    return Fan(2, [E1, E2, (0, -1), (-1, a)], [[0, 1], [1, 3], [3, 2], [2, 0]], complete=True)


def f1() -> Fan:
    """The plane blown up at a fixed point: star subdivision of P^2 at ``cone(e1, e2)``."""
    base = p2()
    return star_subdivide(base, base.cone_of_rays([E1, E2])).fan


def orthant(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return Fan(n, rays, [list(range(n))] if n else [()])


def example0_support() -> LaurentSupport:
    """``x + y + z - 1``."""
    return LaurentSupport.of([(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0)])


def example1_support() -> LaurentSupport:
    """``yz - w`` in coordinates ``(y, z, w)``."""
    return LaurentSupport.of([(1, 1, 0), (0, 0, 1)])


EX0_RAYS = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)]
EX1_RAYS = [(1, 0, 1), (0, 1, 1), (-1, 0, -1), (0, -1, -1)]


def example0_fan() -> Fan:
    """Two-dimensional cones spanned by pairs of ``e1, e2, e3, (-1,-1,-1)``."""
    return Fan(3, EX0_RAYS, [[i, j] for i in range(4) for j in range(i + 1, 4)])


def example1_fan() -> Fan:
    """The plane ``u_y + u_z = u_w`` cut into four quadrants ``cone(r_i, r_i+1)``."""
    return Fan(3, EX1_RAYS, [[i, (i + 1) % 4] for i in range(4)])


def p3() -> Fan:
    """Complete fan of P^3; its 2-skeleton is the Example 0 fan."""
    return Fan(3, EX0_RAYS, [[i, j, k] for i in range(4) for j in range(i + 1, 4) for k in range(j + 1, 4)], complete=True)


def example1_completion() -> Fan:
    """A complete fan containing the Example 1 fan: cones ``cone(r_i, r_i+1, +-e3)``."""
    rays = EX1_RAYS + [(0, 0, 1), (0, 0, -1)]
    cones = [[i, (i + 1) % 4, k] for i in range(4) for k in (4, 5)]
    return Fan(3, rays, cones, complete=True)


def complete_surfaces():
    """Smooth complete fans in rank 2 used by the randomized suites."""
    fans = {"P2": p2(), "P1xP1": p1xp1(), "F1": f1(), "F2": hirzebruch(2), "F3": hirzebruch(3)}
    g = f1()
    g = star_subdivide(g, g.cone_of_rays([(1, 1), E2])).fan
    g = star_subdivide(g, g.cone_of_rays([(-1, -1), E2])).fan
    fans["P2 blown up thrice"] = g
    return fans
