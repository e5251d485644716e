"""Pure-Python integer kernels.

Reference implementation of the routines in ``_kernels.pyx``. Both modules
expose the same functions with identical results; :mod:`delzant.kernels`
picks the compiled one when it imports.

All inputs are Python ints; nothing here touches floating point.
"""

from __future__ import annotations

from itertools import combinations
from math import gcd


def int_det(rows):
    """Determinant of a square integer matrix by Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return 1
    M = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for p in range(k + 1, n):
                if M[p][k] != 0:
                    M[k], M[p] = M[p], M[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = M[k][k]
        for i in range(k + 1, n):
            aik = M[i][k]
            Mi = M[i]
            Mk = M[k]
            for j in range(k + 1, n):
                Mi[j] = (Mi[j] * akk - aik * Mk[j]) // prev
        prev = akk
    return sign * M[n - 1][n - 1]


def int_rank(rows, ncols):
    """Rank of an integer matrix (fraction-free elimination)."""
    M = [list(r) for r in rows]
    m = len(M)
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == m:
            break
        piv = -1
        for p in range(rank, m):
            if M[p][col] != 0:
                piv = p
                break
        if piv < 0:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        a = M[rank][col]
        for i in range(rank + 1, m):
            b = M[i][col]
            Mi = M[i]
            Mr = M[rank]
            for j in range(col, ncols):
                Mi[j] = (Mi[j] * a - b * Mr[j]) // prev
        prev = a
        rank += 1
    return rank


def solve(rows, rhs):
    """Solve ``rows @ x = rhs`` over the rationals.

    Returns ``(y, d)`` with ``x = y / d`` and ``d > 0``, or ``None`` when the
    system is singular.
    """
    n = len(rows)
    M = [list(rows[i]) + [rhs[i]] for i in range(n)]
    prev = 1
    for k in range(n):
        if M[k][k] == 0:
            for p in range(k + 1, n):
                if M[p][k] != 0:
                    M[k], M[p] = M[p], M[k]
                    break
            else:
                return None
        akk = M[k][k]
        Mk = M[k]
        for i in range(k + 1, n):
            Mi = M[i]
            aik = Mi[k]
            for j in range(k + 1, n + 1):
                Mi[j] = (Mi[j] * akk - aik * Mk[j]) // prev
            Mi[k] = 0
        prev = akk
    d = M[n - 1][n - 1]
    y = [0] * n
    for i in range(n - 1, -1, -1):
        Mi = M[i]
        s = d * Mi[n]
        for j in range(i + 1, n):
            s -= Mi[j] * y[j]
        y[i] = s // Mi[i]
    if d < 0:
        d = -d
        y = [-v for v in y]
    return y, d


def enumerate_vertices(normals, rhs, dim):
    """Vertices of ``{z : <z, normals[i]> >= rhs[i]}`` by n-subset solving.

    Returns a list of ``(numerators, denominator, tight)`` triples in
    lowest terms, where ``tight`` lists every constraint index satisfied
    with equality. Order follows the first facet subset producing each
    vertex.
    """
    if dim == 0:
        return [((), 1, tuple(range(len(normals))))]
    m = len(normals)
    seen = set()
    out = []
    for comb in combinations(range(m), dim):
        sol = solve([normals[i] for i in comb], [rhs[i] for i in comb])
        if sol is None:
            continue
        y, d = sol
        g = d
        for v in y:
            g = gcd(g, v)
        if g != 1:
            y = [v // g for v in y]
            d //= g
        key = (tuple(y), d)
        if key in seen:
            continue
        seen.add(key)
        tight = []
        feasible = True
        for j in range(m):
            u = normals[j]
            s = 0
            for t in range(dim):
                s += u[t] * y[t]
            r = rhs[j] * d
            if s < r:
                feasible = False
                break
            if s == r:
                tight.append(j)
        if feasible:
            out.append((key[0], d, tuple(tight)))
    return out


def edge_pairs(tight_sets, normals, dim):
    """Index pairs of vertices joined by an edge.

    Two vertices span an edge iff the normals tight at both have rank
    ``dim - 1``.
    """
    sets = [frozenset(t) for t in tight_sets]
    out = []
    need = dim - 1
    for i in range(len(sets)):
        si = sets[i]
        for j in range(i + 1, len(sets)):
            common = si & sets[j]
            if len(common) < need:
                continue
            if int_rank([normals[k] for k in sorted(common)], dim) == need:
                out.append((i, j))
    return out
