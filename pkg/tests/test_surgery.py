from fractions import Fraction

import pytest

from conftest import box, load, poly, pt
from delzant.errors import (
    InvalidWeight,
    NonConvexUnion,
    NonDelzantCut,
    NotParallel,
    SliceMismatch,
    TrivialCut,
)
from delzant.bstruct import is_b_delzant, validate_graph
from delzant.polytope import find_parallel, is_delzant, product, translate
from delzant.surgery import cut, facet_slice, glue_preserving, glue_reversed, reflect, slice_at


def interval(a, b):
    return poly(1, [(1, a), (-1, -b)])


# slices -----------------------------------------------------------------------


def test_slice_of_square_mid_level(square):
    ch = facet_slice(square, find_parallel(square, (0, 1), Fraction(1, 2)))
    assert ch.slice == interval(0, 1)
    assert is_delzant(ch.slice)


def test_slice_of_trapezoid_strict(trapezoid):
    ch = facet_slice(trapezoid, find_parallel(trapezoid, (0, 1), 0))
    assert ch.slice == interval(0, 1)


def test_slice_of_prism_is_simplex(simplex):
    prism = product(simplex, 0, 1)
    ch = facet_slice(prism, find_parallel(prism, (0, 0, 1), Fraction(1, 2)))
    assert ch.slice == simplex
    assert is_delzant(ch.slice)


def test_facet_slice_rejects_non_parallel(simplex, square):
    F = find_parallel(square, (0, 1), Fraction(1, 2))
    with pytest.raises(NotParallel):
        facet_slice(simplex, F)


def test_slice_of_product_is_base():
    for base in (load("simplex"), load("trapezoid"), load("interval")):
        n = base.dim + 1
        m = tuple(int(i == n - 1) for i in range(n))
        P = product(base, -1, 2)
        for lev in (Fraction(-1), Fraction(0), Fraction(1, 3), Fraction(2)):
            assert facet_slice(P, find_parallel(P, m, lev)).slice == base


def test_chart_basis_is_lattice_complement():
    P = box(0, 2, 0, 1)
    ch = facet_slice(P, find_parallel(P, (1, 0), 1))
    assert all(sum(a * b for a, b in zip(v, (1, 0))) == 0 for v in ch.basis)
    assert ch.base_point == pt(1, 0)


# cuts -------------------------------------------------------------------------


def test_cut_rectangle_gives_pentagon():
    R = box(0, 1, -1, 1)
    Q = cut(R, (-1, -1), Fraction(-3, 2))
    assert is_delzant(Q)
    assert len(Q.vertices) == 5
    assert {pt("1/2", 1), pt(1, "1/2")} <= set(Q.vertices)
    expected = poly(2, [(1, 0, 0), (-1, 0, -1), (0, 1, -1), (0, -1, -1), (-1, -1, "-3/2")])
    assert Q == expected


def test_cut_upper_half():
    assert cut(box(0, 1, -1, 1), (0, 1), 0) == box(0, 1, 0, 1)


def test_cut_rejects_non_delzant(square):
    with pytest.raises(NonDelzantCut) as exc:
        cut(square, (-2, -1), Fraction(-3, 2))
    assert abs(exc.value.witness["det"]) == 2


def test_cut_misses_interior(square):
    with pytest.raises(TrivialCut):
        cut(square, (1, 0), 1)


def test_corner_cut_of_square_is_trapezoid(square, trapezoid):
    # the collar construction: trapezoid = one corner cut of the bounding box
    Q = cut(box(0, 1, 0, 2), (-1, -1), -2)
    assert Q == trapezoid
    assert find_parallel(Q, (0, 1), 0).strict


# gluing -----------------------------------------------------------------------


def test_glue_trapezoids_preserving(trapezoid):
    other = load("trapezoid_reflected")
    Q = glue_preserving(trapezoid, other, (0, 1), 0)
    assert set(Q.vertices) == {pt(0, 2), pt(1, 1), pt(1, -1), pt(0, -2)}
    assert is_delzant(Q)


def test_glue_stacked_squares(square):
    assert glue_preserving(square, square, (0, 1), 1) == box(0, 1, 0, 2)


def test_glue_auto_translates_second(square):
    far = translate(square, (0, 5))
    assert glue_preserving(square, far, (0, 1), 1) == box(0, 1, 0, 2)


def test_glue_wide_rectangle_nonconvex(square):
    with pytest.raises(NonConvexUnion) as exc:
        glue_preserving(square, box(-1, 2, -1, 0), (0, 1), 0)
    assert pt(0, 0) in exc.value.witness["vertices_on_hyperplane"]


def test_glue_slice_mismatch(square):
    # same crossing direction, laterally different slices
    with pytest.raises(SliceMismatch):
        glue_reversed(square, box(0, 2, -1, 0), (0, 1), 0)
    # equal slices, different crossing directions
    slanted = poly(2, [(0, -1, 0), (0, 1, -1), (1, -1, 0), (-1, 1, -1)])
    with pytest.raises(SliceMismatch) as exc:
        glue_reversed(square, slanted, (0, 1), 0)
    assert exc.value.witness["direction2"] == [1, 1]


def test_glue_reversed_trapezoids(trapezoid):
    other = load("trapezoid_reflected")
    bP = glue_reversed(trapezoid, other, (0, 1), 0, 1)
    assert len(bP.graph.vertices) == 2 and len(bP.graph.edges) == 1
    e = bP.graph.edges[0]
    assert e.c == 1 and e.m == (0, 1)
    assert e.weight == (0, -1)
    assert is_b_delzant(bP)
    assert validate_graph(bP.graph)
    assert bP.components["v1"].polytope == trapezoid


def test_glue_reversed_component_is_mirrored_translate(trapezoid):
    other = translate(load("trapezoid_reflected"), (0, -3))
    bP = glue_reversed(trapezoid, other, (0, 1), 0)
    P2 = bP.components["v2"].polytope
    # mirroring through y = 0 along (0, 1) undoes the reflection
    back = reflect(P2, (0, 1), 0, (0, 1))
    assert back == translate(other, (0, 3))
    # no data lost: finite vertex bookkeeping
    on_f = [v for v in trapezoid.vertices if v[1] == 0]
    assert len(bP.finite_vertices()) == len(trapezoid.vertices) + len(other.vertices) - 2 * len(on_f)


def test_glue_reversed_rectangles_is_bs2xs2():
    bP = glue_reversed(box(-1, 1, 0, 1), box(-1, 1, -1, 0), (0, 1), 0)
    assert is_b_delzant(bP)
    assert len(bP.finite_vertices()) == 4


def test_glue_reversed_segments_is_bsphere():
    bP = glue_reversed(interval(0, 1), interval(-1, 0), (1,), 0)
    assert bP.dim == 1
    assert len(bP.finite_vertices()) == 2


def test_glue_reversed_rejects_bad_weight(square):
    with pytest.raises(InvalidWeight):
        glue_reversed(square, square, (0, 1), 1, c=0)


def test_glue_roles_swapped_same_up_to_relabel(trapezoid):
    other = load("trapezoid_reflected")
    a = glue_reversed(trapezoid, other, (0, 1), 0)
    b = glue_reversed(other, trapezoid, (0, 1), 0)
    # b is the mirror image of a; its components mirror back onto a's
    for v, w in (("v1", "v2"), ("v2", "v1")):
        Pa = a.components[v].polytope
        Pb = b.components[w].polytope
        assert reflect(Pb, (0, 1), 0, (0, 1)) == Pa
    assert b.graph.edges[0].weight == tuple(-x for x in a.graph.edges[0].weight)


def test_slice_at_chart_is_lattice_length_one(square):
    # the chart of {x = 1/3} may orient the y axis either way
    S = slice_at(square, (1, 0), Fraction(1, 3))
    (a,), (b,) = S.vertices
    assert b - a == 1
