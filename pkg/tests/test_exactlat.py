from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from delzant.errors import NotPrimitive, NotUnimodular, ShapeMismatch, ZeroVector
from delzant.exactlat import (
    det,
    format_rat,
    hermite_normal_form,
    identity,
    is_unimodular,
    lattice_kernel_basis,
    mat_mul,
    mat_vec,
    primitive,
    rat,
    sl_transform_to_last_axis,
    unimodular_inverse,
)

ints = st.integers(min_value=-30, max_value=30)


def test_primitive_examples():
    assert primitive((2, 4)) == ((1, 2), 2)
    assert primitive((0, 0, 3)) == ((0, 0, 1), 3)
    assert primitive((-2, -4)) == ((-1, -2), 2)


def test_primitive_zero():
    with pytest.raises(ZeroVector):
        primitive((0, 0))


def test_rat_rejects_floats():
    with pytest.raises(TypeError):
        rat(0.5)
    assert rat("3/6") == Fraction(1, 2)
    assert format_rat(Fraction(-4, 2)) == "-2"
    assert format_rat(Fraction(3, -9)) == "-1/3"


def test_hnf_examples():
    assert hermite_normal_form(identity(2)) == (identity(2), identity(2))
    assert hermite_normal_form([[0, 1], [1, 0]]) == (((1, 0), (0, 1)), ((0, 1), (1, 0)))


def _egcd(a, b):
    if b == 0:
        return (abs(a), (1 if a >= 0 else -1), 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def _euclid_hnf_2x2(M):
    # closed form for a nonsingular 2x2: gcd the first column, then reduce
    (a, b), (c, d) = M
    g, x, y = _egcd(a, c)
    piv = abs(a * d - b * c) // g
    return ((g, (x * b + y * d) % piv), (0, piv))


def test_hnf_against_euclid_oracle():
    H, U = hermite_normal_form([[2, 4], [0, 3]])
    assert H == _euclid_hnf_2x2([[2, 4], [0, 3]])
    assert mat_mul(U, [[2, 4], [0, 3]]) == H


def _is_hnf(H):
    last = -1
    for r, row in enumerate(H):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            assert all(not any(R) for R in H[r:])
            break
        p = nz[0]
        assert p > last
        assert row[p] > 0
        for i in range(r):
            assert 0 <= H[i][p] < row[p]
        last = p


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_hnf_properties(m, n, data):
    M = [[data.draw(ints) for _ in range(n)] for _ in range(m)]
    H, U = hermite_normal_form(M)
    assert abs(sympy.Matrix(U).det()) == 1
    assert mat_mul(U, M) == H
    _is_hnf(H)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_hnf_same_row_lattice(data):
    n = data.draw(st.integers(2, 3))
    M = [[data.draw(ints) for _ in range(n)] for _ in range(n)]
    if sympy.Matrix(M).det() == 0:
        return
    H, _ = hermite_normal_form(M)
    A, B = sympy.Matrix(H), sympy.Matrix(M)
    assert all(x.is_integer for x in B * A.inv())
    assert all(x.is_integer for x in A * B.inv())
    if n == 2:
        assert H == _euclid_hnf_2x2(M)


def test_is_unimodular_examples():
    assert is_unimodular([[1, 0], [0, 1]])
    assert not is_unimodular([[0, 2], [-1, -1]])
    assert is_unimodular([[-1, 1], [0, -1]])
    assert det([[0, 2], [-1, -1]]) == 2
    with pytest.raises(ShapeMismatch):
        is_unimodular([[1, 0, 0], [0, 1, 0]])


def test_sl_transform_examples():
    assert sl_transform_to_last_axis((0, 1)) == identity(2)
    assert sl_transform_to_last_axis((1, 1)) == ((1, -1), (0, 1))
    assert sl_transform_to_last_axis((2, 1)) == ((1, -2), (0, 1))
    with pytest.raises(NotPrimitive):
        sl_transform_to_last_axis((2, 4))


@settings(max_examples=200, deadline=None)
@given(st.lists(ints, min_size=1, max_size=5))
def test_sl_transform_property(v):
    if not any(v):
        return
    w, _ = primitive(v)
    U = sl_transform_to_last_axis(w)
    e = tuple(int(i == len(w) - 1) for i in range(len(w)))
    assert mat_vec(U, w) == e
    assert abs(det(U)) == 1
    Uinv = unimodular_inverse(U)
    assert mat_mul(U, Uinv) == identity(len(w))
    assert mat_vec(Uinv, mat_vec(U, v)) == tuple(v)


@settings(max_examples=100, deadline=None)
@given(st.lists(ints, min_size=1, max_size=5))
def test_primitive_roundtrip(v):
    if not any(v):
        return
    w, g = primitive(v)
    assert g > 0
    assert tuple(g * x for x in w) == tuple(v)
    assert sympy.igcd(*w) == 1 if len(w) > 1 else abs(w[0]) == 1


def test_unimodular_inverse_rejects():
    with pytest.raises(NotUnimodular):
        unimodular_inverse([[2, 0], [0, 1]])


@settings(max_examples=80, deadline=None)
@given(st.lists(ints, min_size=2, max_size=4))
def test_lattice_kernel_basis(m):
    if not any(m):
        return
    B = lattice_kernel_basis(m)
    assert len(B) == len(m) - 1
    assert all(sum(a * b for a, b in zip(r, m)) == 0 for r in B)
    # saturated iff the maximal minors are coprime
    if B:
        Bm = sympy.Matrix(B)
        k = len(B)
        minors = [Bm.extract(list(range(k)), list(c)).det() for c in combinations(range(len(m)), k)]
        assert sympy.igcd(*[int(x) for x in minors] + [0]) == 1
