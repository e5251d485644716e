"""Weighted adjacency graphs, b-moment codomains and b-Delzant polytopes.

Storage convention for a :class:`BDelzantPolytope`: each graph vertex owns a
bounded Delzant polytope in its own chart; the facet standing in for the
singular hypersurface of edge ``e`` is *marked*. For every edge, both
incident components carry their marked facet with the same inward normal
``m_e`` (the edge's stored ``m``), i.e. both sit on the same side of it.
That is how the pieces look in the b-moment charts; :func:`glued_drawing`
flips alternate components to lay a path graph out as one strip.

The modular weight of edge ``e`` is ``-c_e * m_e``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import (
    BadCutLevel,
    DecompositionFailure,
    DelzantError,
    InvalidBPolytope,
    InvalidGraph,
    UnsupportedLoop,
)
from .exactlat import (
    IntMat,
    IntVec,
    RatVec,
    RationalLike,
    dot,
    identity,
    intvec,
    is_primitive,
    lattice_kernel_basis,
    mat_mul,
    mat_vec,
    rat,
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
from .surgery import slice_at


@dataclass(frozen=True)
class GraphEdge:
    ends: Tuple[str, str]
    c: Fraction
    m: IntVec

    def __post_init__(self):
        object.__setattr__(self, "ends", tuple(self.ends))
        object.__setattr__(self, "c", rat(self.c))
        object.__setattr__(self, "m", intvec(self.m))

    @property
    def weight(self) -> RatVec:
        """The modular weight ``-c * m``."""
        return tuple(-self.c * a for a in self.m)


@dataclass(frozen=True)
class WeightedAdjacencyGraph:
    vertices: Tuple[str, ...]
    edges: Tuple[GraphEdge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))

    def incident(self, v: str) -> List[int]:
        return [i for i, e in enumerate(self.edges) if v in e.ends]

    def degree(self, v: str) -> int:
        return sum(e.ends.count(v) for e in self.edges)

    def other_end(self, e: int, v: str) -> str:
        a, b = self.edges[e].ends
        return b if a == v else a

    @property
    def dim(self) -> Optional[int]:
        return len(self.edges[0].m) if self.edges else None

    @property
    def shape(self) -> Optional[str]:
        """``"line"`` (paths, including one vertex), ``"circle"`` or None."""
        V, E = self.vertices, self.edges
        if not V or not self._connected():
            return None
        degs = [self.degree(v) for v in V]
        if len(E) == len(V) - 1 and max(degs, default=0) <= 2:
            return "line"
        if len(V) >= 2 and len(E) == len(V) and all(d == 2 for d in degs):
            return "circle"
        return None

    def _connected(self) -> bool:
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for e in self.incident(v):
                u = self.other_end(e, v)
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return seen == set(self.vertices)

    def path_order(self) -> List[Tuple[str, Optional[int]]]:
        """Vertices of a line graph from one end, each with its incoming edge."""
        if self.shape != "line":
            raise InvalidGraph("graph is not a line")
        start = next(v for v in self.vertices if self.degree(v) <= 1)
        order = [(start, None)]
        used = set()
        cur = start
        while True:
            nxt = [e for e in self.incident(cur) if e not in used]
            if not nxt:
                return order
            e = nxt[0]
            used.add(e)
            cur = self.other_end(e, cur)
            order.append((cur, e))


@dataclass(frozen=True)
class GraphCheck:
    ok: bool
    witness: Optional[dict] = None

    def __bool__(self):
        return self.ok


def validate_graph(G: WeightedAdjacencyGraph) -> GraphCheck:
    """Path-or-cycle shape plus the sign rule for weights at shared vertices.

    At a vertex with two incident edges the weights must satisfy
    ``nu_2 = k * nu_1`` with ``k < 0``; the witness reports ``k``.
    """
    if len(set(G.vertices)) != len(G.vertices):
        return GraphCheck(False, {"reason": "duplicate vertex ids"})
    dims = set()
    for i, e in enumerate(G.edges):
        if len(e.ends) != 2 or any(v not in G.vertices for v in e.ends):
            return GraphCheck(False, {"reason": "edge endpoint is not a vertex", "edge": i})
        if e.ends[0] == e.ends[1]:
            return GraphCheck(False, {"reason": "self-loop", "edge": i})
        if e.c <= 0:
            return GraphCheck(False, {"reason": "weight magnitude must be positive", "edge": i})
        if not any(e.m) or not is_primitive(e.m):
            return GraphCheck(False, {"reason": "weight direction must be primitive", "edge": i})
        dims.add(len(e.m))
    if len(dims) > 1:
        return GraphCheck(False, {"reason": "weights of different lengths"})
    if G.shape is None:
        return GraphCheck(False, {"reason": "graph is neither a line nor a circle"})
    for v in G.vertices:
        inc = G.incident(v)
        for a_i in range(len(inc)):
            for b_i in range(a_i + 1, len(inc)):
                ea, eb = G.edges[inc[a_i]], G.edges[inc[b_i]]
                k = _ratio(ea.weight, eb.weight)
                if k is None or k >= 0:
                    return GraphCheck(
                        False,
                        {"vertex": v, "edges": [inc[a_i], inc[b_i]], "k": k},
                    )
    return GraphCheck(True)


def _ratio(a: Sequence[Fraction], b: Sequence[Fraction]) -> Optional[Fraction]:
    """``k`` with ``b = k * a``, or None if not proportional."""
    k = None
    for x, y in zip(a, b):
        if x == 0:
            if y != 0:
                return None
            continue
        q = Fraction(y) / x
        if k is None:
            k = q
        elif q != k:
            return None
    return k


# codomain ---------------------------------------------------------------------


@dataclass(frozen=True)
class BMomentCodomain:
    """Descriptor of ``R_G``: one dual-space chart per vertex, one hyperplane
    per edge.

    ``edge_hyperplanes[i]`` is a lattice basis of ``t_w = ker(w(e_i))``
    (``n - 1`` vectors; none when ``n = 1``). ``transitions[i]`` records the
    scale ``c`` and, per endpoint, the sign of the exponential chart map
    (``-exp(x/c)`` on the first end, ``+exp(x/c)`` on the second).
    """

    graph: WeightedAdjacencyGraph
    dim: Optional[int]
    charts: Tuple[str, ...]
    edge_hyperplanes: Tuple[IntMat, ...]
    transitions: Tuple[dict, ...]

    @property
    def is_trivial(self) -> bool:
        return not self.graph.edges


def build_codomain(G: WeightedAdjacencyGraph, dim: Optional[int] = None) -> BMomentCodomain:
    check = validate_graph(G)
    if not check:
        raise InvalidGraph("invalid weighted adjacency graph", **check.witness)
    n = G.dim if G.dim is not None else dim
    hyper = tuple(lattice_kernel_basis(e.m) for e in G.edges)
    trans = tuple(
        {"c": e.c, "signs": {e.ends[0]: -1, e.ends[1]: 1}} for e in G.edges
    )
    return BMomentCodomain(G, n, tuple(G.vertices), hyper, trans)


# b-polytopes ------------------------------------------------------------------


@dataclass(frozen=True)
class Component:
    polytope: Polytope
    infinity_facets: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "infinity_facets", {int(k): int(v) for k, v in dict(self.infinity_facets).items()}
        )


@dataclass(frozen=True)
class EdgeSlice:
    """Shared data of one edge: strict hyperplanes on both sides and the slice."""

    edge: int
    hyperplanes: Tuple[ParallelHyperplane, ParallelHyperplane]
    slice: Polytope


@dataclass(frozen=True, eq=False)
class BDelzantPolytope:
    """A b-polytope: weighted graph plus one marked polytope per vertex."""

    graph: WeightedAdjacencyGraph
    components: Mapping[str, Component]

    def __post_init__(self):
        G = self.graph
        comps = dict(self.components)
        object.__setattr__(self, "components", comps)
        if set(comps) != set(G.vertices):
            raise InvalidBPolytope(
                "components must match graph vertices",
                vertices=list(G.vertices),
                components=sorted(comps),
            )
        dims = {c.polytope.dim for c in comps.values()}
        if len(dims) != 1:
            raise InvalidBPolytope("components have different dimensions")
        n = dims.pop()
        for i, e in enumerate(G.edges):
            if len(e.m) != n:
                raise InvalidBPolytope("edge weight has wrong length", edge=i)
            for v in set(e.ends):
                f = comps[v].infinity_facets.get(i)
                if f is None:
                    raise InvalidBPolytope("edge has no marked facet", edge=i, component=v)
                hs = comps[v].polytope.halfspaces
                if not 0 <= f < len(hs):
                    raise InvalidBPolytope("marked facet index out of range", edge=i, component=v)
                if hs[f].normal != e.m:
                    raise InvalidBPolytope(
                        "marked facet normal differs from the edge direction",
                        edge=i,
                        component=v,
                        normal=list(hs[f].normal),
                        m=list(e.m),
                    )
        for v, comp in comps.items():
            for e in comp.infinity_facets:
                if not 0 <= e < len(G.edges) or v not in G.edges[e].ends:
                    raise InvalidBPolytope("marked facet refers to a foreign edge", edge=e, component=v)
            if len(set(comp.infinity_facets.values())) != len(comp.infinity_facets):
                raise InvalidBPolytope("facet marked for two edges", component=v)

    @property
    def dim(self) -> int:
        return next(iter(self.components.values())).polytope.dim

    @property
    def shape(self) -> Optional[str]:
        return self.graph.shape

    def level(self, v: str, e: int) -> Fraction:
        """Value of ``<x, m_e>`` on component v's marked facet for edge e."""
        comp = self.components[v]
        return comp.polytope.halfspaces[comp.infinity_facets[e]].offset

    def finite_vertices(self) -> List[Tuple[str, int]]:
        """(component id, vertex index) of vertices on no marked facet."""
        out = []
        for v in self.graph.vertices:
            comp = self.components[v]
            marked = set(comp.infinity_facets.values())
            for i, inc in enumerate(comp.polytope.incidence):
                if not inc & marked:
                    out.append((v, i))
        return out

    def normalized(self):
        """Key ignoring the offsets of marked facets (the truncation depth)."""
        key = []
        for v in self.graph.vertices:
            comp = self.components[v]
            marked = comp.infinity_facets
            inv = {f: e for e, f in marked.items()}
            free = sorted(
                (h.normal, h.offset) for i, h in enumerate(comp.polytope.halfspaces) if i not in inv
            )
            mk = sorted((e, comp.polytope.halfspaces[f].normal) for e, f in marked.items())
            key.append((v, tuple(free), tuple(mk)))
        return (self.graph, tuple(key))

    @cached_property
    def edge_slices(self) -> Tuple[EdgeSlice, ...]:
        """Per-edge strict hyperplanes and slice; raises on any mismatch."""
        out = []
        for i, e in enumerate(self.graph.edges):
            a, b = e.ends
            la, lb = self.level(a, i), self.level(b, i)
            Pa, Pb = self.components[a].polytope, self.components[b].polytope
            Fa = find_parallel(Pa, e.m, la)
            Fb = find_parallel(Pb, e.m, lb)
            if Fa.common_direction != Fb.common_direction:
                from .errors import SliceMismatch

                raise SliceMismatch(
                    "crossing directions differ across edge",
                    edge=i,
                    direction1=list(Fa.common_direction or ()),
                    direction2=list(Fb.common_direction or ()),
                )
            w = Fb.common_direction
            if w is not None and la != lb:
                Pb = translate(Pb, tuple((la - lb) * x for x in w))
            Sa, Sb = slice_at(Pa, e.m, la), slice_at(Pb, e.m, la)
            if Sa != Sb:
                from .errors import SliceMismatch

                raise SliceMismatch(
                    "facet slices differ across edge",
                    edge=i,
                    slice1=sorted(Sa.vertices),
                    slice2=sorted(Sb.vertices),
                )
            out.append(EdgeSlice(i, (Fa, Fb), Sa))
        return tuple(out)

    @classmethod
    def trivial(cls, P: Polytope, name: str = "v1") -> "BDelzantPolytope":
        """An ordinary polytope seen as a one-vertex b-polytope."""
        return cls(WeightedAdjacencyGraph((name,)), {name: Component(P, {})})


@dataclass(frozen=True)
class BCheck:
    ok: bool
    shape: Optional[str] = None
    witness: Optional[dict] = None

    def __bool__(self):
        return self.ok


def is_b_delzant(bP: BDelzantPolytope) -> BCheck:
    g = validate_graph(bP.graph)
    if not g:
        return BCheck(False, None, {"graph": g.witness})
    shape = bP.shape
    if shape == "line":
        for v in bP.graph.vertices:
            check = is_delzant(bP.components[v].polytope)
            if not check:
                return BCheck(False, shape, dict(check.witness, component=v))
    try:
        slices = bP.edge_slices
    except DelzantError as exc:
        return BCheck(False, shape, dict(exc.witness, reason=str(exc)))
    if shape == "circle":
        check = is_delzant(slices[0].slice)
        if not check:
            return BCheck(False, shape, dict(check.witness, reason="slice is not Delzant"))
    return BCheck(True, shape)


def shared_slice(bP: BDelzantPolytope) -> Polytope:
    """The slice ``Delta_Z`` of a circle-graph b-polytope."""
    return bP.edge_slices[0].slice


# decomposition ----------------------------------------------------------------


@dataclass(frozen=True)
class PlanStep:
    edge: int
    ends: Tuple[str, str]
    c: Fraction
    m: IntVec
    facets: Mapping[str, int]
    levels: Mapping[str, Fraction]


@dataclass(frozen=True)
class ReassemblyPlan:
    graph: WeightedAdjacencyGraph
    steps: Tuple[PlanStep, ...]


@dataclass(frozen=True)
class Decomposition:
    blocks: Mapping[str, Polytope]
    certificates: Mapping[str, Tuple[ParallelHyperplane, ...]]
    plan: ReassemblyPlan


def _default_level(P: Polytope, f: int, marked: Sequence[int]) -> Tuple[Fraction, Fraction, Fraction]:
    """(infinity level, nearest other level, default cut) for marked facet f."""
    h = P.halfspaces[f]
    vals = P.values(h.normal)
    lo = h.offset
    others = [vals[i] for i in range(len(vals)) if f not in P.incidence[i]]
    nxt = min(others)
    near = [i for i in range(len(vals)) if vals[i] == nxt]
    shared = all(P.incidence[i] & (set(marked) - {f}) for i in near)
    # two marked facets facing each other share the gap; take thirds
    frac = Fraction(1, 3) if shared else Fraction(1, 2)
    return lo, nxt, lo + (nxt - lo) * frac


LevelSpec = Union[RationalLike, Tuple[RationalLike, RationalLike]]


def decompose(
    bP: BDelzantPolytope, cut_levels: Optional[Mapping[int, LevelSpec]] = None
) -> Decomposition:
    """Truncate every component at finite levels next to its infinity facets.

    ``cut_levels`` maps an edge index to a value of ``<x, m_e>`` (used on
    both sides) or to a pair ``(level at ends[0], level at ends[1])``.
    Missing edges use the default: halfway between the infinity facet and
    the nearest other vertex level (a third of the way when the nearest
    vertices lie on another marked facet of the same component).
    """
    cut_levels = dict(cut_levels or {})
    check = is_b_delzant(bP)
    if not check:
        raise DecompositionFailure("input is not b-Delzant", **(check.witness or {}))
    G = bP.graph
    chosen: Dict[Tuple[str, int], Fraction] = {}
    for i, e in enumerate(G.edges):
        spec = cut_levels.get(i)
        if spec is None:
            pair = (None, None)
        elif isinstance(spec, (tuple, list)):
            pair = (rat(spec[0]), rat(spec[1]))
        else:
            pair = (rat(spec), rat(spec))
        for v, lev in zip(e.ends, pair):
            comp = bP.components[v]
            f = comp.infinity_facets[i]
            lo, nxt, dflt = _default_level(comp.polytope, f, list(comp.infinity_facets.values()))
            if lev is None:
                lev = dflt
            if not lo < lev < nxt:
                raise BadCutLevel(
                    "cut level must lie strictly between the infinity facet and the next vertex",
                    edge=i,
                    component=v,
                    level=lev,
                    infinity_level=lo,
                    next_level=nxt,
                )
            chosen[(v, i)] = lev

    blocks: Dict[str, Polytope] = {}
    certs: Dict[str, Tuple[ParallelHyperplane, ...]] = {}
    for v in G.vertices:
        comp = bP.components[v]
        P = comp.polytope
        inv = {f: e for e, f in comp.infinity_facets.items()}
        hs = [
            HalfSpace(h.normal, chosen[(v, inv[i])]) if i in inv else h
            for i, h in enumerate(P.halfspaces)
        ]
        try:
            B = Polytope.from_halfspaces(P.dim, hs)
        except DelzantError as exc:
            raise BadCutLevel("cut levels collapse the component", component=v) from exc
        if len(B.halfspaces) != len(hs):
            raise BadCutLevel("cut levels remove a facet of the component", component=v)
        if not is_delzant(B):
            raise DecompositionFailure("truncated block is not Delzant", component=v)
        hp = []
        for e in sorted(comp.infinity_facets):
            try:
                F = find_parallel(B, G.edges[e].m, chosen[(v, e)])
            except DelzantError as exc:
                raise DecompositionFailure("new facet is not strict parallel", component=v, edge=e) from exc
            if not F.strict:
                raise DecompositionFailure("new facet is not strict parallel", component=v, edge=e)
            hp.append(F)
        blocks[v] = B
        certs[v] = tuple(hp)
    steps = tuple(
        PlanStep(
            i,
            e.ends,
            e.c,
            e.m,
            {v: bP.components[v].infinity_facets[i] for v in e.ends},
            {v: chosen[(v, i)] for v in e.ends},
        )
        for i, e in enumerate(G.edges)
    )
    return Decomposition(blocks, certs, ReassemblyPlan(G, steps))


def reassemble(blocks: Mapping[str, Polytope], plan: ReassemblyPlan) -> BDelzantPolytope:
    """Mark the recorded facets of the blocks and rebuild the b-polytope."""
    marks: Dict[str, Dict[int, int]] = {v: {} for v in plan.graph.vertices}
    for st in plan.steps:
        for v in st.ends:
            marks[v][st.edge] = st.facets[v]
    return BDelzantPolytope(
        plan.graph, {v: Component(blocks[v], marks[v]) for v in plan.graph.vertices}
    )


# drawing ----------------------------------------------------------------------


@dataclass(frozen=True)
class Placement:
    """Affine lattice map ``x -> L x + t`` from a chart into the drawing."""

    L: IntMat
    t: RatVec

    def point(self, x: Sequence[Fraction]) -> RatVec:
        return tuple(Fraction(a) + b for a, b in zip(mat_vec(self.L, x), self.t))

    def vector(self, d: Sequence[int]) -> IntVec:
        return tuple(int(a) for a in mat_vec(self.L, d))

    def then(self, L2: IntMat, t2: Sequence[Fraction]) -> "Placement":
        """Placement of ``x -> self(L2 x + t2)``."""
        return Placement(mat_mul(self.L, L2), self.point(t2))


@dataclass(frozen=True)
class DrawnVertex:
    component: str
    chart_point: RatVec
    point: RatVec
    chart_edges: Tuple[IntVec, ...]
    edges: Tuple[IntVec, ...]


@dataclass(frozen=True)
class GluedDrawing:
    order: Tuple[str, ...]
    placements: Mapping[str, Placement]
    polytopes: Mapping[str, Polytope]
    vertices: Tuple[DrawnVertex, ...]
    marked: Mapping[str, Mapping[int, int]]


def glued_drawing(bP: BDelzantPolytope) -> GluedDrawing:
    """Lay a line-graph b-polytope out in a single copy of the dual space.

    Components are placed along the path. Crossing an edge mirrors the next
    component through the shared hyperplane along the crossing direction
    (reversing the m-axis) and leaves a unit gap between the two infinity
    facets.
    """
    if bP.shape == "circle":
        raise UnsupportedLoop("circle graphs have no glued drawing")
    G = bP.graph
    n = bP.dim
    order = G.path_order()
    slices = bP.edge_slices
    place: Dict[str, Placement] = {}
    first = order[0][0]
    place[first] = Placement(identity(n), (Fraction(0),) * n)
    prev = first
    for v, e in order[1:]:
        m = G.edges[e].m
        w = slices[e].hyperplanes[0].common_direction
        la, lb = bP.level(prev, e), bP.level(v, e)
        # in prev's chart: shift onto prev's facet, mirror through it, step off by w
        L = tuple(tuple(int(i == j) - 2 * w[i] * m[j] for j in range(n)) for i in range(n))
        pre = tuple((la - lb) * x for x in w)
        t = tuple(
            a + 2 * la * wi - wi
            for a, wi in zip(mat_vec(L, pre), w)
        )
        place[v] = place[prev].then(L, t)
        prev = v

    drawn: Dict[str, Polytope] = {}
    for v in G.vertices:
        pl = place[v]
        drawn[v] = map_points(bP.components[v].polytope, pl.L, pl.t)
    verts = []
    for v, i in bP.finite_vertices():
        P = bP.components[v].polytope
        pl = place[v]
        ce = tuple(P.edge_directions(i))
        verts.append(
            DrawnVertex(v, P.vertices[i], pl.point(P.vertices[i]), ce, tuple(pl.vector(d) for d in ce))
        )
    marked = {v: dict(bP.components[v].infinity_facets) for v in G.vertices}
    return GluedDrawing(tuple(v for v, _ in order), place, drawn, tuple(verts), marked)
