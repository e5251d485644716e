# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer kernels.

Same contract as ``_kernels_py``. Matrix entries stay Python ints (exact,
arbitrary precision); only loop control is lowered to C.
"""

from itertools import combinations
from math import gcd


def int_det(rows):
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t k, i, j, p
    cdef int sign = 1
    cdef list M, Mi, Mk
    if n == 0:
        return 1
    M = [list(r) for r in rows]
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
        Mk = M[k]
        akk = Mk[k]
        for i in range(k + 1, n):
            Mi = M[i]
            aik = Mi[k]
            for j in range(k + 1, n):
                Mi[j] = (Mi[j] * akk - aik * Mk[j]) // prev
        prev = akk
    return sign * M[n - 1][n - 1]


def int_rank(rows, Py_ssize_t ncols):
    cdef list M = [list(r) for r in rows]
    cdef Py_ssize_t m = len(M)
    cdef Py_ssize_t rank = 0
    cdef Py_ssize_t col, p, piv, i, j
    cdef list Mi, Mr
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
        Mr = M[rank]
        a = Mr[col]
        for i in range(rank + 1, m):
            Mi = M[i]
            b = Mi[col]
            for j in range(col, ncols):
                Mi[j] = (Mi[j] * a - b * Mr[j]) // prev
        prev = a
        rank += 1
    return rank


cdef object _solve(list rows, list rhs):
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t k, i, j, p
    cdef list M = [list(rows[i]) + [rhs[i]] for i in range(n)]
    cdef list Mi, Mk, y
    prev = 1
    for k in range(n):
        if M[k][k] == 0:
            for p in range(k + 1, n):
                if M[p][k] != 0:
                    M[k], M[p] = M[p], M[k]
                    break
            else:
                return None
        Mk = M[k]
        akk = Mk[k]
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


def solve(rows, rhs):
    return _solve([list(r) for r in rows], list(rhs))


def enumerate_vertices(normals, rhs, Py_ssize_t dim):
    cdef Py_ssize_t m = len(normals)
    cdef Py_ssize_t j, t
    cdef bint feasible
    cdef list out = []
    cdef list tight, y, u
    cdef set seen = set()
    cdef list N = [list(nr) for nr in normals]
    cdef list R = list(rhs)
    if dim == 0:
        return [((), 1, tuple(range(m)))]
    for comb in combinations(range(m), dim):
        sol = _solve([N[i] for i in comb], [R[i] for i in comb])
        if sol is None:
            continue
        y, d = sol
        g = d
        for v in y:
            g = gcd(g, v)
        if g != 1:
            y = [v // g for v in y]
            d = d // g
        key = (tuple(y), d)
        if key in seen:
            continue
        seen.add(key)
        tight = []
        feasible = True
        for j in range(m):
            u = N[j]
            s = 0
            for t in range(dim):
                s += u[t] * y[t]
            r = R[j] * d
            if s < r:
                feasible = False
                break
            if s == r:
                tight.append(j)
        if feasible:
            out.append((key[0], d, tuple(tight)))
    return out


def edge_pairs(tight_sets, normals, Py_ssize_t dim):
    cdef list sets = [frozenset(t) for t in tight_sets]
    cdef list out = []
    cdef Py_ssize_t need = dim - 1
    cdef Py_ssize_t i, j, nv = len(sets)
    for i in range(nv):
        si = sets[i]
        for j in range(i + 1, nv):
            common = si & sets[j]
            if len(common) < need:
                continue
            if int_rank([normals[k] for k in sorted(common)], dim) == need:
                out.append((i, j))
    return out
