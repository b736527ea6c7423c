"""Exact integer and rational linear algebra on small dense matrices.

Matrices are lists of rows; vectors are tuples.  Integer routines never leave
``int``; rational routines use :class:`fractions.Fraction`.
"""
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .errors import ZeroVector

Vector = Tuple[int, ...]
Matrix = List[List[int]]


def gcd_all(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g


def primitive(v: Sequence[int]) -> Vector:
    """Divide an integer vector by the gcd of its coordinates.

    >>> primitive((2, 4, 6))
    (1, 2, 3)
    >>> primitive((-3, 6))
    (-1, 2)
    """
    g = gcd_all(v)
    if g == 0:
        raise ZeroVector("the zero vector has no primitive generator")
    return tuple(int(x) // g for x in v)


def clear_denominators(v: Sequence) -> Vector:
    """Smallest positive multiple of a rational vector that is integral and primitive."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    return primitive([int(x * den) for x in fr])


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A, ncols: Optional[int] = None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def hnf_with_transform(A: Sequence[Sequence[int]], ncols: Optional[int] = None):
    """Row Hermite normal form.

    Returns ``(H, U, r)`` with ``U @ A == H``, ``U`` unimodular and ``H`` in
    reduced row echelon form over Z: the first ``r`` rows are nonzero with
    strictly increasing pivot columns, positive pivots, and entries above a
    pivot reduced into ``[0, pivot)``.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    H = [[int(x) for x in row] for row in A]
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            b = H[i][c]
            if b == 0:
                continue
            a = H[r][c]
            g, x, y = ext_gcd(a, b)
            p, q = -b // g, a // g
            Hr, Hi, Ur, Ui = H[r], H[i], U[r], U[i]
            H[r] = [x * s + y * t for s, t in zip(Hr, Hi)]
            H[i] = [p * s + q * t for s, t in zip(Hr, Hi)]
            U[r] = [x * s + y * t for s, t in zip(Ur, Ui)]
            U[i] = [p * s + q * t for s, t in zip(Ur, Ui)]
        piv = H[r][c]
        if piv == 0:
            continue
        if piv < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
            piv = -piv
        for i in range(r):
            f = H[i][c] // piv
            if f:
                H[i] = [s - f * t for s, t in zip(H[i], H[r])]
                U[i] = [s - f * t for s, t in zip(U[i], U[r])]
        r += 1
    return H, U, r


def hnf(rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Canonical basis (nonzero HNF rows) of the lattice spanned by ``rows``."""
    H, _, r = hnf_with_transform(rows, ncols)
    return H[:r]


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int], ncols: Optional[int] = None):
    """Solve ``A x = b`` over the integers.

    Returns ``(x, kernel)`` where ``x`` is a particular integral solution (or
    ``None``) and ``kernel`` is a basis of the saturated lattice
    ``{x in Z^n : A x = 0}``.
    """
    m = len(A)
    n = len(A[0]) if m else ncols
    if n is None:
        raise ValueError("cannot infer column count of an empty matrix")
    At = transpose(A, n) if m else [[] for _ in range(n)]
    # U At = H  =>  A U^T = H^T ; with x = U^T y the system is H^T y = b.
    H, U, r = hnf_with_transform(At, m)
    kernel = [tuple(U[j]) for j in range(r, n)]
    y = []
    pivots = []
    for j in range(r):
        c = next(k for k in range(m) if H[j][k] != 0)
        pivots.append(c)
        rhs = b[c] - sum(H[l][c] * y[l] for l in range(j))
        q, rem = divmod(rhs, H[j][c])
        if rem:
            return None, kernel
        y.append(q)
    for i in range(m):
        if sum(H[l][i] * y[l] for l in range(r)) != b[i]:
            return None, kernel
    x = [0] * n
    for j in range(r):
        if y[j]:
            for k in range(n):
                x[k] += y[j] * U[j][k]
    return tuple(x), kernel


def reduce_mod_lattice(v: Sequence[int], basis: Sequence[Sequence[int]], reverse: bool = False) -> Vector:
    """Canonical representative of ``v`` modulo the lattice spanned by ``basis``.

    Pivot coordinates are brought into ``[0, pivot)``.  With ``reverse`` the
    pivots are taken from the last coordinate backwards, so the representative
    is supported on early coordinates wherever possible.
    """
    v = list(v)
    if not basis:
        return tuple(v)
    n = len(v)
    if reverse:
        B = hnf([list(reversed(row)) for row in basis], n)
        w = list(reversed(v))
    else:
        B = hnf(basis, n)
        w = v
    for row in B:
        c = next(k for k in range(n) if row[k] != 0)
        f = w[c] // row[c]
        if f:
            w = [s - f * t for s, t in zip(w, row)]
    return tuple(reversed(w)) if reverse else tuple(w)


def rref(A: Sequence[Sequence], ncols: Optional[int] = None):
    """Reduced row echelon form over Q.  Returns ``(R, pivots)``."""
    R = [[Fraction(x) for x in row] for row in A]
    m = len(R)
    n = len(R[0]) if m else (ncols or 0)
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [s - f * t for s, t in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R[:r], pivots


def rank(A: Sequence[Sequence], ncols: Optional[int] = None) -> int:
    if not A:
        return 0
    return len(rref(A, ncols)[1])


def nullspace(A: Sequence[Sequence], n: int) -> List[Vector]:
    """Basis of ``{x in Q^n : A x = 0}`` as primitive integer vectors."""
    if not A:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    R, piv = rref(A, n)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(R, piv):
            x[p] = -row[f]
        basis.append(clear_denominators(x))
    return basis


def solve_rational(A: Sequence[Sequence], b: Sequence, n: Optional[int] = None):
    """A rational solution of ``A x = b`` with free variables zero, or ``None``."""
    m = len(A)
    if n is None:
        n = len(A[0])
    if m == 0:
        return tuple(Fraction(0) for _ in range(n))
    aug = [list(row) + [bb] for row, bb in zip(A, b)]
    R, piv = rref(aug, n + 1)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(R, piv):
        x[p] = row[n]
    return tuple(x)


def saturated_kernel(A: Sequence[Sequence[int]], n: int) -> List[Vector]:
    """Basis of the saturated lattice ``{x in Z^n : A x = 0}`` in HNF."""
    if not A:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    _, kernel = solve_integer(A, [0] * len(A), n)
    return [tuple(r) for r in hnf(kernel, n)] if kernel else []


def smith_invariants(A: Sequence[Sequence[int]]) -> List[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` of an integer matrix."""
    D = [[int(x) for x in row] for row in A]
    if not D or not D[0]:
        return []
    while True:
        D = hnf(D)
        if not D:
            return []
        if all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j):
            break
        D = transpose(D)
    diag = [abs(D[i][i]) for i in range(min(len(D), len(D[0]))) if D[i][i] != 0]
    changed = True
    while changed:
        changed = False
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                a, b = diag[i], diag[j]
                g = gcd(a, b)
                if b % a:
                    diag[i], diag[j] = g, a * b // g
                    changed = True
    return sorted(diag)


def determinant(A: Sequence[Sequence]) -> Fraction:
    M = [[Fraction(x) for x in row] for row in A]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            if f:
                M[i] = [s - f * t for s, t in zip(M[i], M[c])]
    return det


def as_int_if_integral(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def format_number(x) -> object:
    """JSON-friendly form: ``int`` when integral, ``"p/q"`` otherwise."""
    x = Fraction(x)
    if x.denominator == 1:
        return int(x)
    return f"{x.numerator}/{x.denominator}"
