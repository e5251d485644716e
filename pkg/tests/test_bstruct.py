from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import box, load, pt
from delzant.bstruct import (
    BDelzantPolytope,
    Component,
    GraphEdge,
    WeightedAdjacencyGraph,
    build_codomain,
    decompose,
    glued_drawing,
    is_b_delzant,
    reassemble,
    shared_slice,
    validate_graph,
)
from delzant.errors import BadCutLevel, InvalidBPolytope, InvalidGraph, UnsupportedLoop
from delzant.exactlat import det, mat_vec
from delzant.polytope import find_parallel, is_delzant
from delzant.surgery import glue_reversed


def line(*weights):
    """Path graph v1 - v2 - ... with edge weights given as (c, m)."""
    vs = tuple(f"v{i + 1}" for i in range(len(weights) + 1))
    es = tuple(GraphEdge((vs[i], vs[i + 1]), c, m) for i, (c, m) in enumerate(weights))
    return WeightedAdjacencyGraph(vs, es)


# graphs -----------------------------------------------------------------------


def test_validate_graph_examples():
    assert validate_graph(line((1, (0, 1))))
    # nu1 = -(0,1), nu2 = (0,2) at v2: k = -2
    ok = validate_graph(line((1, (0, 1)), (2, (0, -1))))
    assert ok
    bad = validate_graph(line((1, (0, 1)), (2, (0, 1))))
    assert not bad
    assert bad.witness["vertex"] == "v2"
    assert bad.witness["k"] == 2


def test_validate_graph_shapes():
    assert WeightedAdjacencyGraph(("a",)).shape == "line"
    tri = WeightedAdjacencyGraph(
        ("a", "b", "c"),
        (GraphEdge(("a", "b"), 1, (1,)), GraphEdge(("b", "c"), 1, (-1,)), GraphEdge(("c", "a"), 1, (1,))),
    )
    assert tri.shape == "circle"
    # odd cycle cannot alternate signs
    assert not validate_graph(tri)
    star = WeightedAdjacencyGraph(
        ("a", "b", "c", "d"),
        (GraphEdge(("a", "b"), 1, (1,)), GraphEdge(("a", "c"), 1, (1,)), GraphEdge(("a", "d"), 1, (1,))),
    )
    assert star.shape is None and not validate_graph(star)
    split = WeightedAdjacencyGraph(("a", "b"))
    assert not validate_graph(split)


def test_codomain_examples():
    single = build_codomain(WeightedAdjacencyGraph(("v1",)), dim=2)
    assert single.is_trivial and single.charts == ("v1",) and single.edge_hyperplanes == ()
    s2 = build_codomain(line((1, (1,))))
    assert len(s2.charts) == 2 and s2.edge_hyperplanes == ((),)
    t2 = build_codomain(load("b_point_t2").graph)
    assert len(t2.charts) == 2 and len(t2.edge_hyperplanes) == 2
    assert t2.transitions[0]["signs"] == {"v1": -1, "v2": 1}
    with pytest.raises(InvalidGraph):
        build_codomain(line((1, (0, 1)), (2, (0, 1))))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=1, max_size=4))
def test_codomain_hyperplane_dimension(m):
    if not any(m):
        return
    from math import gcd

    g = 0
    for x in m:
        g = gcd(g, x)
    m = tuple(x // g for x in m)
    cod = build_codomain(line((Fraction(1, 2), m)))
    (B,) = cod.edge_hyperplanes
    assert len(B) == len(m) - 1
    assert all(sum(a * b for a, b in zip(r, m)) == 0 for r in B)


# b-polytopes ------------------------------------------------------------------


def test_bs2xs2_is_b_delzant():
    assert is_b_delzant(load("b_s2xs2"))


def test_bad_component_witness():
    res = is_b_delzant(load("b_bad_triangle"))
    assert not res
    assert res.witness["vertex"] == pt(0, 1) and res.witness["det"] == 2


def test_circle_prisms_with_delzant_slice():
    for name in ("b_point_t2", "b_interval_t2"):
        bP = load(name)
        res = is_b_delzant(bP)
        assert res and res.shape == "circle"
        assert is_delzant(shared_slice(bP))


def test_structure_is_validated(square):
    G = line((1, (0, 1)))
    with pytest.raises(InvalidBPolytope):
        BDelzantPolytope(G, {"v1": Component(square, {0: 2})})
    with pytest.raises(InvalidBPolytope):
        # facet 0 is x >= 0, not a level set of (0, 1)
        BDelzantPolytope(G, {"v1": Component(square, {0: 0}), "v2": Component(square, {0: 1})})


def test_edge_slices_match_for_glued_inputs():
    for name in ("b_s2xs2", "b_s2", "b_point_t2", "b_interval_t2"):
        bP = load(name)
        for es in bP.edge_slices:
            assert es.hyperplanes[0].common_direction == es.hyperplanes[1].common_direction


def test_glue_output_graphs_validate(trapezoid):
    bP = glue_reversed(trapezoid, load("trapezoid_reflected"), (0, 1), 0, Fraction(5, 3))
    assert validate_graph(bP.graph)
    dec = decompose(bP)
    assert validate_graph(dec.plan.graph)


# decomposition ----------------------------------------------------------------


def test_decompose_bs2xs2_explicit_levels():
    bP = load("b_s2xs2")
    dec = decompose(bP, {0: Fraction(1, 2)})
    for v in ("v1", "v2"):
        assert dec.blocks[v] == box(-1, 1, Fraction(1, 2), 1)
        (F,) = dec.certificates[v]
        assert F.strict


def test_decompose_default_is_midpoint():
    dec = decompose(load("b_s2xs2"))
    assert dec.plan.steps[0].levels == {"v1": Fraction(1, 2), "v2": Fraction(1, 2)}


def test_decompose_bsphere_gives_intervals():
    dec = decompose(load("b_s2"))
    for v in ("v1", "v2"):
        assert dec.blocks[v].dim == 1 and len(dec.blocks[v].vertices) == 2


def test_decompose_circle_gives_prisms():
    bP = load("b_interval_t2")
    dec = decompose(bP)
    for v in ("v1", "v2"):
        B = dec.blocks[v]
        assert B == box(0, 1, Fraction(1, 3), Fraction(2, 3))
        # each block is (slice) x [a, b]
        assert find_parallel(B, (0, 1), Fraction(1, 2)).common_direction == (0, 1)


def test_decompose_bad_level():
    with pytest.raises(BadCutLevel):
        decompose(load("b_s2xs2"), {0: 1})
    with pytest.raises(BadCutLevel):
        decompose(load("b_s2xs2"), {0: (Fraction(1, 2), 0)})


def test_reassemble_round_trip():
    for name in ("b_s2xs2", "b_s2", "b_point_t2", "b_interval_t2"):
        bP = load(name)
        dec = decompose(bP)
        back = reassemble(dec.blocks, dec.plan)
        assert back.normalized() == bP.normalized()


def test_reassemble_tolerates_translation_along_m(trapezoid):
    bP = glue_reversed(trapezoid, load("trapezoid_reflected"), (0, 1), 0)
    dec = decompose(bP)
    back = reassemble(dec.blocks, dec.plan)
    assert back.normalized() == bP.normalized()
    assert is_b_delzant(back)


# drawing ----------------------------------------------------------------------


def test_drawing_bs2xs2():
    d = glued_drawing(load("b_s2xs2"))
    got = {tuple(sorted(v.edges)) for v in d.vertices}
    assert got == {
        ((0, -1), (1, 0)),
        ((-1, 0), (0, -1)),
        ((0, 1), (1, 0)),
        ((-1, 0), (0, 1)),
    }
    top = [v for v in d.vertices if v.component == "v1"]
    bottom = [v for v in d.vertices if v.component == "v2"]
    assert min(v.point[1] for v in top) > max(v.point[1] for v in bottom)


def test_drawing_bsphere_endpoints_outermost():
    d = glued_drawing(load("b_s2"))
    finite = sorted(v.point[0] for v in d.vertices)
    every = sorted(x[0] for P in d.polytopes.values() for x in P.vertices)
    assert finite == [every[0], every[-1]]


def test_drawing_trivial_is_identity(square):
    d = glued_drawing(BDelzantPolytope.trivial(square))
    assert d.placements["v1"].L == ((1, 0), (0, 1))
    assert d.polytopes["v1"] == square


def test_drawing_rejects_circle():
    with pytest.raises(UnsupportedLoop):
        glued_drawing(load("b_point_t2"))


def test_drawing_is_one_affine_map_per_component():
    bP = load("b_s2xs2")
    d = glued_drawing(bP)
    for v in d.vertices:
        pl = d.placements[v.component]
        assert abs(det(pl.L)) == 1
        assert v.edges == tuple(tuple(mat_vec(pl.L, e)) for e in v.chart_edges)
        assert v.point == pl.point(v.chart_point)


def test_long_path_drawing():
    # three blocks: top, middle (two marked facets), bottom
    top = box(0, 1, 0, 1)
    mid = box(0, 1, 0, 1)
    G = line((1, (0, 1)), (1, (0, -1)))
    f_bot = top.facet_index((0, 1), 0)
    f_top = mid.facet_index((0, -1), -1)
    bP = BDelzantPolytope(
        G,
        {
            "v1": Component(top, {0: f_bot}),
            "v2": Component(mid, {0: f_bot, 1: f_top}),
            "v3": Component(top, {1: f_top}),
        },
    )
    assert is_b_delzant(bP)
    d = glued_drawing(bP)
    # only the two outer blocks keep finite vertices
    assert {v.component for v in d.vertices} == {"v1", "v3"}
