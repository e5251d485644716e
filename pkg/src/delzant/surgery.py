"""Facet slices, symplectic cuts and the two gluings of strict-parallel blocks.

Conventions used throughout:

* A hyperplane is ``F = {<x, m> = level}`` with ``m`` primitive.
* The chart on ``F`` comes from the unimodular ``U`` with ``U m = e_n``:
  points are written ``x = U^T y`` and the slice lives in ``y_1..y_{n-1}``.
  The chart depends on ``m`` only, so slices of different polytopes along
  the same ``m`` are directly comparable.
* ``w`` is the common crossing direction reported by
  :func:`~delzant.polytope.find_parallel` (``<w, m> = 1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import (
    DelzantError,
    InvalidWeight,
    NonConvexUnion,
    NonDelzantCut,
    NonDelzantGlue,
    NotDelzant,
    NotParallel,
    NotPrimitive,
    SliceMismatch,
    TrivialCut,
)
from .exactlat import (
    IntVec,
    RatVec,
    RationalLike,
    dot,
    identity,
    intvec,
    is_primitive,
    mat_vec,
    rat,
    sl_transform_to_last_axis,
)
from .polytope import (
    HalfSpace,
    ParallelHyperplane,
    Polytope,
    find_parallel,
    is_delzant,
    map_points,
    translate,
)


@dataclass(frozen=True)
class FacetChart:
    """Lattice chart on ``F`` and the slice ``F ∩ P`` expressed in it.

    ``basis`` spans the lattice ``{xi : <xi, m> = 0}``; together with the
    last row of ``frame`` (which pairs to 1 with ``m``) it forms the
    unimodular ``frame`` certifying it is a lattice basis.
    """

    base_point: RatVec
    basis: Tuple[IntVec, ...]
    frame: Tuple[IntVec, ...]
    slice: Polytope


def slice_at(P: Polytope, m: Sequence[int], level: RationalLike) -> Polytope:
    """``F ∩ P`` in the lattice chart of ``F`` (no parallelism check)."""
    m = intvec(m)
    level = rat(level)
    n = P.dim
    if n == 1:
        return Polytope.point()
    U = sl_transform_to_last_axis(m)
    hs = []
    for h in P.halfspaces:
        a = mat_vec(U, h.normal)
        head, last = a[:-1], a[-1]
        rhs = h.offset - last * level
        if not any(head):
            continue
        hs.append(HalfSpace(head, rhs))
    return Polytope.from_halfspaces(n - 1, hs)


def facet_slice(P: Polytope, F: ParallelHyperplane) -> FacetChart:
    """Chart and slice polytope of a parallel hyperplane.

    The hyperplane is re-validated against ``P``; the slice is certified
    Delzant before being returned.
    """
    try:
        F = find_parallel(P, F.m, F.level)
    except NotParallel:
        raise
    except DelzantError as exc:
        raise NotParallel(str(exc), **exc.witness) from exc
    U = sl_transform_to_last_axis(F.m)
    S = slice_at(P, F.m, F.level)
    check = is_delzant(S)
    if not check:
        # parallel slices are always Delzant; reaching here is a bug
        raise NotDelzant("slice of a parallel hyperplane is not Delzant", **check.witness)
    base = tuple(F.level * Fraction(c) for c in U[-1])
    return FacetChart(base, tuple(U[:-1]), U, S)


def reflect(P: Polytope, m: Sequence[int], level: RationalLike, w: Sequence[int]) -> Polytope:
    """Mirror ``P`` through ``{<x, m> = level}`` along ``w`` (``<w, m> = 1``).

    ``x -> x - 2 (<x, m> - level) w`` fixes the hyperplane pointwise, sends
    ``w`` to ``-w`` and preserves the lattice.
    """
    m, w = intvec(m), intvec(w)
    level = rat(level)
    n = len(m)
    if dot(w, m) != 1:
        raise ValueError("reflection direction must pair to 1 with m")
    L = tuple(tuple(int(i == j) - 2 * w[i] * m[j] for j in range(n)) for i in range(n))
    t = tuple(2 * level * wi for wi in w)
    return map_points(P, L, t)


def cut(P: Polytope, m: Sequence[int], delta: RationalLike) -> Polytope:
    """Keep ``P ∩ {<x, m> >= delta}``; the result must stay Delzant."""
    m = intvec(m)
    delta = rat(delta)
    if not is_primitive(m):
        raise NotPrimitive("cut direction is not primitive", m=list(m))
    if max(P.values(m)) <= delta:
        raise TrivialCut("cut half-space misses the interior", m=list(m), delta=delta)
    Q = Polytope.from_halfspaces(P.dim, list(P.halfspaces) + [HalfSpace(m, delta)])
    check = is_delzant(Q)
    if not check:
        raise NonDelzantCut("cut result is not Delzant", **check.witness)
    return Q


# gluing ---------------------------------------------------------------------


def _facet_on(P: Polytope, m: IntVec, level: Fraction) -> Optional[Tuple[int, int]]:
    """(facet index, side) of the facet of P lying in F, if any."""
    i = P.facet_index(m, level)
    if i is not None:
        return i, 1
    i = P.facet_index(tuple(-a for a in m), -level)
    if i is not None:
        return i, -1
    return None


@dataclass(frozen=True)
class _Attachment:
    side: int  # +1 when P1 lies in <x, m> >= level
    facet1: int
    w1: IntVec
    P2: Polytope  # translated onto F
    facet2: int
    w2: IntVec
    shift: RatVec


def _attach(P1: Polytope, P2: Polytope, m, level) -> _Attachment:
    m = intvec(m)
    level = rat(level)
    if not is_primitive(m):
        raise NotPrimitive("gluing normal is not primitive", m=list(m))
    hit = _facet_on(P1, m, level)
    if hit is None:
        raise NotParallel("first polytope has no facet on the gluing hyperplane", m=list(m), level=level)
    f1, s = hit
    F1 = find_parallel(P1, m, level)
    if not F1.strict or F1.common_direction is None:
        raise NotParallel("gluing hyperplane is not strict parallel for the first polytope")

    f2 = P2.facet_with_normal(tuple(-s * a for a in m))
    if f2 is None:
        raise NotParallel(
            "second polytope has no facet facing the first across the hyperplane", m=list(m)
        )
    level2 = -s * P2.halfspaces[f2].offset
    F2 = find_parallel(P2, m, level2)
    if not F2.strict or F2.common_direction is None:
        raise NotParallel("gluing hyperplane is not strict parallel for the second polytope")
    w2 = F2.common_direction
    shift = tuple((level - level2) * a for a in w2)
    P2t = translate(P2, shift) if any(shift) else P2
    f2t = P2t.facet_index(tuple(-s * a for a in m), -s * level)
    return _Attachment(s, f1, F1.common_direction, P2t, f2t, w2, shift)


def _check_slices(P1: Polytope, P2: Polytope, a: _Attachment, m, level) -> None:
    if a.w1 != a.w2:
        raise SliceMismatch(
            "crossing directions differ", direction1=list(a.w1), direction2=list(a.w2)
        )
    S1 = slice_at(P1, m, level)
    S2 = slice_at(a.P2, m, level)
    if S1 != S2:
        raise SliceMismatch(
            "facet slices differ",
            slice1=sorted(S1.vertices),
            slice2=sorted(S2.vertices),
        )


def glue_preserving(
    P1: Polytope, P2: Polytope, m: Sequence[int], level: RationalLike
) -> Polytope:
    """Orientation-preserving gluing: the union of two blocks along ``F``.

    ``P1`` must have a facet in ``F``; ``P2`` must have a facet parallel to
    it on the opposite side and is translated along its crossing direction
    onto ``F``. Convexity of the union is tested before slice agreement, so
    a laterally mismatched pair reports :class:`NonConvexUnion`.
    """
    m = intvec(m)
    level = rat(level)
    a = _attach(P1, P2, m, level)
    hs = [h for i, h in enumerate(P1.halfspaces) if i != a.facet1]
    hs += [h for i, h in enumerate(a.P2.halfspaces) if i != a.facet2]
    outside = None
    try:
        Q = Polytope.from_halfspaces(P1.dim, hs)
    except DelzantError:
        Q = None
    if Q is not None:
        upper = HalfSpace(tuple(a.side * x for x in m), a.side * level)
        lower = HalfSpace(tuple(-a.side * x for x in m), -a.side * level)
        half1 = Polytope.from_halfspaces(P1.dim, list(Q.halfspaces) + [upper])
        half2 = Polytope.from_halfspaces(P1.dim, list(Q.halfspaces) + [lower])
        if half1 != P1 or half2 != a.P2:
            Q = None
    if Q is None:
        pts = set(P1.vertices) | set(a.P2.vertices)
        onF = sorted(v for v in pts if dot(v, m) == level)
        outside = sorted(v for v in pts if dot(v, m) != level)
        raise NonConvexUnion(
            "union of the two polytopes is not convex",
            vertices_on_hyperplane=onF,
            other_vertices=outside,
        )
    _check_slices(P1, P2, a, m, level)
    check = is_delzant(Q)
    if not check:
        raise NonDelzantGlue("glued polytope is not Delzant", **check.witness)
    return Q


def glue_reversed(
    P1: Polytope,
    P2: Polytope,
    m: Sequence[int],
    level: RationalLike,
    c: RationalLike = 1,
    names: Tuple[str, str] = ("v1", "v2"),
):
    """Orientation-reversing gluing: a two-component b-polytope.

    Geometric preconditions match :func:`glue_preserving` except that the
    union need not be convex. The second block is translated onto ``F`` and
    then mirrored through it along ``w``, so both components sit on the
    same side of their infinity facet, as they do in the b-moment charts.
    The edge weight is stored as ``(c, m_in)`` meaning ``-c * m_in`` with
    ``m_in`` the inward normal of the first block's facet on ``F``.
    """
    from .bstruct import BDelzantPolytope, Component, GraphEdge, WeightedAdjacencyGraph

    m = intvec(m)
    level = rat(level)
    c = rat(c)
    if c <= 0:
        raise InvalidWeight("weight magnitude must be positive", c=c)
    a = _attach(P1, P2, m, level)
    _check_slices(P1, P2, a, m, level)
    m_in = tuple(a.side * x for x in m)
    P2r = reflect(a.P2, m, level, a.w2)
    f2 = P2r.facet_index(m_in, a.side * level)
    graph = WeightedAdjacencyGraph(names, (GraphEdge(names, c, m_in),))
    return BDelzantPolytope(
        graph,
        {
            names[0]: Component(P1, {0: a.facet1}),
            names[1]: Component(P2r, {0: f2}),
        },
    )
