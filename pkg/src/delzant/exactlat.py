"""Exact rational and integer-lattice arithmetic.

Scalars are :class:`fractions.Fraction`; integer vectors are tuples of
ints; integer matrices are tuples of row tuples. Nothing in the package
uses floating point for geometry.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Tuple, Union

from . import kernels
from .errors import NotPrimitive, NotUnimodular, ShapeMismatch, ZeroVector

IntVec = Tuple[int, ...]
IntMat = Tuple[IntVec, ...]
RatVec = Tuple[Fraction, ...]
RationalLike = Union[int, str, Fraction]


def rat(x: RationalLike) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a 'p/q' string")
    return Fraction(x)


def format_rat(q: Fraction) -> str:
    """Lowest-terms ``"p/q"`` string (``"p"`` when the denominator is 1)."""
    return str(Fraction(q))


def ratvec(xs: Iterable[RationalLike]) -> RatVec:
    return tuple(rat(x) for x in xs)


def intvec(xs: Iterable[int]) -> IntVec:
    out = []
    for x in xs:
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"non-integer entry {x}")
            x = x.numerator
        out.append(int(x))
    return tuple(out)


def intmat(rows: Iterable[Iterable[int]]) -> IntMat:
    return tuple(intvec(r) for r in rows)


def dot(a: Sequence, b: Sequence):
    if len(a) != len(b):
        raise ShapeMismatch(f"length {len(a)} vs {len(b)}")
    return sum((x * y for x, y in zip(a, b)), 0)


def identity(n: int) -> IntMat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(M: Sequence[Sequence]) -> tuple:
    return tuple(zip(*M)) if M else ()


def mat_vec(M: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in M)


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple:
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def scale_to_integer(v: Sequence[Fraction]) -> IntVec:
    """Smallest positive integer multiple of a rational vector."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return tuple(int(Fraction(x) * den) for x in v)


def primitive(v: Sequence[int]) -> Tuple[IntVec, int]:
    """Split ``v`` into ``g * w`` with ``w`` primitive; the sign is kept."""
    v = intvec(v)
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ZeroVector("primitive() of the zero vector", vector=list(v))
    return tuple(x // g for x in v), g


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g == 1


def _check_square(M: Sequence[Sequence]) -> int:
    n = len(M)
    if any(len(row) != n for row in M):
        raise ShapeMismatch("matrix is not square", shape=[n, [len(r) for r in M]])
    return n


def det(M: Sequence[Sequence[int]]) -> int:
    _check_square(M)
    return kernels.int_det([list(r) for r in intmat(M)])


def is_unimodular(M: Sequence[Sequence[int]]) -> bool:
    """True iff the square integer matrix has determinant +1 or -1."""
    return det(M) in (1, -1)


def unimodular_inverse(M: Sequence[Sequence[int]]) -> IntMat:
    """Integer inverse of a unimodular matrix."""
    n = _check_square(M)
    d = det(M)
    if d not in (1, -1):
        raise NotUnimodular("matrix is not unimodular", det=d)
    M = [list(r) for r in intmat(M)]
    cols = []
    for i in range(n):
        e = [int(i == j) for j in range(n)]
        y, den = kernels.solve(M, e)
        assert den == 1
        cols.append(tuple(y))
    return transpose(cols)


def hermite_normal_form(M: Sequence[Sequence[int]]) -> Tuple[IntMat, IntMat]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``. ``H`` is in
    row echelon form with positive pivots, and every entry above a pivot
    lies in ``[0, pivot)``.
    """
    A = [list(r) for r in intmat(M)]
    m = len(A)
    ncols = len(A[0]) if m else 0
    U = [list(r) for r in identity(m)]

    def swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def addmul(dst, src, q):
        # row[dst] -= q * row[src]
        A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    r = 0
    for col in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][col] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(A[i][col]), i))
            if p != r:
                swap(p, r)
            done = True
            for i in range(r + 1, m):
                if A[i][col] != 0:
                    addmul(i, r, A[i][col] // A[r][col])
                    if A[i][col] != 0:
                        done = False
            if done:
                break
        if A[r][col] == 0:
            continue
        if A[r][col] < 0:
            A[r] = [-a for a in A[r]]
            U[r] = [-a for a in U[r]]
        for i in range(r):
            q = A[i][col] // A[r][col]
            if q:
                addmul(i, r, q)
        r += 1
    return intmat(A), intmat(U)


def lattice_kernel_basis(m: Sequence[int]) -> IntMat:
    """Lattice basis of ``{xi in Z^n : <xi, m> = 0}`` from an HNF completion.

    The HNF transform ``U`` of the column ``m`` sends it to ``(g, 0, ..., 0)``;
    rows ``1..n-1`` of ``U`` are then a basis of the orthogonal lattice.
    """
    m = intvec(m)
    if not any(m):
        raise ZeroVector("kernel of the zero functional", vector=list(m))
    _, U = hermite_normal_form([[x] for x in m])
    return U[1:]


def sl_transform_to_last_axis(t_perp: Sequence[int]) -> IntMat:
    """Unimodular ``U`` with ``U @ t_perp == e_n`` (``det U = 1`` when n >= 2).

    Points of the dual space transform by the inverse transpose of ``U``.
    """
    v = list(intvec(t_perp))
    n = len(v)
    if not is_primitive(v):
        raise NotPrimitive("vector is not primitive", vector=v)
    U = [list(r) for r in identity(n)]
    while True:
        nz = [i for i in range(n) if v[i] != 0]
        if len(nz) == 1:
            break
        # ties prefer the highest index so already-placed last entries stay put
        p = min(nz, key=lambda i: (abs(v[i]), -i))
        for j in nz:
            if j == p:
                continue
            q = v[j] // v[p]
            v[j] -= q * v[p]
            U[j] = [a - q * b for a, b in zip(U[j], U[p])]
    (p,) = nz
    last = n - 1
    if p != last:
        U[p], U[last] = U[last], U[p]
        v[p], v[last] = v[last], v[p]
    if v[last] < 0:
        U[last] = [-a for a in U[last]]
        v[last] = -v[last]
    if n >= 2 and det(U) < 0:
        U[0] = [-a for a in U[0]]
    return intmat(U)


def apply_dual(U: Sequence[Sequence[int]], x: Sequence[Fraction]) -> RatVec:
    """Image of a point of the dual space, ``(U^T)^{-1} x``."""
    Uinv = unimodular_inverse(U)
    return tuple(Fraction(c) for c in mat_vec(transpose(Uinv), x))


def integer_nullspace(rows: Sequence[Sequence[int]], ncols: int) -> IntMat:
    """Lattice basis of ``{x in Z^ncols : rows @ x = 0}``."""
    if not rows:
        return identity(ncols)
    H, U = hermite_normal_form(transpose(intmat(rows)))
    return tuple(U[i] for i in range(ncols) if not any(H[i]))


def rational_rank(vectors: Iterable[Sequence[Fraction]], ncols: int) -> int:
    rows = [list(scale_to_integer(v)) for v in vectors]
    return kernels.int_rank(rows, ncols) if rows else 0
