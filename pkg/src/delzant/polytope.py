"""Rational H-polytopes, vertex/edge enumeration and the Delzant test.

A polytope is stored as an irredundant list of half-spaces
``<x, normal> >= offset`` with primitive inward normals, together with its
exact vertex set, vertex-facet incidences and vertex-vertex edges.
Vertex enumeration solves every n-subset of facet equations
(see :mod:`delzant.kernels`); that is cheap at the sizes this package
targets (a few dozen facets, dimension <= 4).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from . import kernels
from .errors import (
    Empty,
    EmptyInterval,
    NoIntersection,
    NotAVertex,
    NotFullDim,
    NotParallel,
    NotPrimitive,
    NotUnimodular,
    OutsidePolytope,
    Unbounded,
    ZeroVector,
)
from .exactlat import (
    IntMat,
    IntVec,
    RatVec,
    RationalLike,
    det,
    dot,
    identity,
    intvec,
    integer_nullspace,
    is_primitive,
    mat_vec,
    primitive,
    rat,
    ratvec,
    rational_rank,
    scale_to_integer,
    transpose,
    unimodular_inverse,
)


@dataclass(frozen=True)
class HalfSpace:
    """The constraint ``<x, normal> >= offset``.

    Non-primitive normals are divided by their gcd (and the offset with
    them), so equal half-spaces always compare equal.
    """

    normal: IntVec
    offset: Fraction

    def __post_init__(self):
        normal = intvec(self.normal)
        try:
            w, g = primitive(normal)
        except ZeroVector:
            raise ZeroVector("half-space with zero normal", normal=list(normal)) from None
        object.__setattr__(self, "normal", w)
        object.__setattr__(self, "offset", rat(self.offset) / g)

    @classmethod
    def of(cls, normal: Sequence[int], offset: RationalLike) -> "HalfSpace":
        return cls(tuple(normal), rat(offset))

    def slack(self, x: Sequence[Fraction]) -> Fraction:
        return Fraction(dot(x, self.normal)) - self.offset

    def contains(self, x: Sequence[Fraction]) -> bool:
        return self.slack(x) >= 0


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _enumerate(dim: int, hs: Sequence[HalfSpace], extra_equalities=()):
    """Exact vertices (with tight-constraint indices) of an H-description."""
    normals = [list(h.normal) for h in hs]
    offsets = [h.offset for h in hs]
    for row in extra_equalities:
        normals.append(list(row))
        normals.append([-a for a in row])
        offsets += [Fraction(0), Fraction(0)]
    D = 1
    for q in offsets:
        D = _lcm(D, q.denominator)
    rhs = [int(q * D) for q in offsets]
    raw = kernels.enumerate_vertices(normals, rhs, dim)
    out = []
    for y, d, tight in raw:
        x = tuple(Fraction(a, d * D) for a in y)
        out.append((x, tuple(t for t in tight if t < len(hs))))
    return out


def _kernel_direction(rows: Sequence[Sequence[int]], dim: int) -> IntVec:
    """Primitive generator of the 1-dimensional kernel of a rank dim-1 matrix."""
    basis = integer_nullspace(rows, dim)
    assert len(basis) == 1
    return primitive(basis[0])[0]


def _recession_ray(dim: int, hs: Sequence[HalfSpace]) -> Optional[IntVec]:
    """A nonzero direction d with ``<d, u> >= 0`` for every normal, if any.

    Assumes the normals span; the recession cone is then pointed and is
    nontrivial iff it has an extreme ray.
    """
    from itertools import combinations

    normals = [h.normal for h in hs]
    if dim == 1:
        for s in (1, -1):
            if all(u[0] * s >= 0 for u in normals):
                return (s,)
        return None
    tried = set()
    for comb in combinations(range(len(normals)), dim - 1):
        rows = [normals[i] for i in comb]
        if kernels.int_rank([list(r) for r in rows], dim) != dim - 1:
            continue
        d = _kernel_direction(rows, dim)
        if d in tried:
            continue
        tried.add(d)
        for cand in (d, tuple(-a for a in d)):
            if all(dot(cand, u) >= 0 for u in normals):
                return cand
    return None


@dataclass(frozen=True, eq=False)
class Polytope:
    """Bounded full-dimensional rational polytope with exact V/H data.

    Build one with :meth:`from_halfspaces` (or :meth:`point` for the
    0-dimensional case). Instances are immutable; every operation returns
    a new polytope. Equality compares irredundant H-representations as sets,
    which for full-dimensional polytopes is geometric equality.
    """

    dim: int
    halfspaces: Tuple[HalfSpace, ...]
    vertices: Tuple[RatVec, ...]
    incidence: Tuple[frozenset, ...]
    edges: Tuple[Tuple[int, int], ...]
    log: Tuple[str, ...] = field(default=())

    # construction -------------------------------------------------------

    @classmethod
    def point(cls) -> "Polytope":
        return cls(0, (), ((),), (frozenset(),), ())

    @classmethod
    def from_halfspaces(cls, dim: int, hs: Sequence[HalfSpace]) -> "Polytope":
        if dim == 0:
            return cls.point()
        if dim < 1:
            raise ValueError("dimension must be >= 0")
        hs = [h if isinstance(h, HalfSpace) else HalfSpace.of(*h) for h in hs]
        if not hs:
            raise Unbounded("no half-spaces given", dim=dim)
        for h in hs:
            if len(h.normal) != dim:
                raise ValueError(f"normal {h.normal} has wrong length for dim {dim}")
        log: List[str] = []
        uniq: List[HalfSpace] = []
        for i, h in enumerate(hs):
            if h in uniq:
                log.append(f"removed duplicate half-space {i}")
            else:
                uniq.append(h)

        normals = [list(h.normal) for h in uniq]
        if kernels.int_rank(normals, dim) < dim:
            lineality = integer_nullspace(normals, dim)
            if _enumerate(dim, uniq, lineality):
                raise Unbounded("region contains a line", direction=list(lineality[0]))
            raise Empty("empty region")

        raw = sorted(_enumerate(dim, uniq))
        if not raw:
            raise Empty("empty region")
        ray = _recession_ray(dim, uniq)
        if ray is not None:
            raise Unbounded("region is unbounded", direction=list(ray))

        verts = [v for v, _ in raw]
        base = verts[0]
        diffs = [tuple(a - b for a, b in zip(v, base)) for v in verts[1:]]
        if rational_rank(diffs, dim) < dim:
            raise NotFullDim("region is not full-dimensional", dim=dim)

        keep = []
        for i, h in enumerate(uniq):
            on = [v for v, tight in raw if i in tight]
            if len(on) >= dim:
                b0 = on[0]
                d = [tuple(a - b for a, b in zip(v, b0)) for v in on[1:]]
                if rational_rank(d, dim) == dim - 1:
                    keep.append(i)
                    continue
            log.append(f"removed redundant half-space {h.normal} >= {h.offset}")
        remap = {old: new for new, old in enumerate(keep)}
        facets = tuple(uniq[i] for i in keep)
        incidence = tuple(
            frozenset(remap[t] for t in tight if t in remap) for _, tight in raw
        )
        edges = kernels.edge_pairs(
            [sorted(s) for s in incidence], [list(h.normal) for h in facets], dim
        )
        return cls(dim, facets, tuple(verts), incidence, tuple(edges), tuple(log))

    # queries --------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.dim == other.dim and set(self.halfspaces) == set(other.halfspaces)

    def __hash__(self):
        return hash((self.dim, frozenset(self.halfspaces)))

    def __repr__(self):
        return f"Polytope(dim={self.dim}, facets={len(self.halfspaces)}, vertices={len(self.vertices)})"

    @property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def index_of(self, v: Sequence[RationalLike]) -> int:
        v = ratvec(v)
        try:
            return self.vertices.index(v)
        except ValueError:
            raise NotAVertex("point is not a vertex", point=[str(a) for a in v]) from None

    def neighbors(self, i: int) -> List[int]:
        out = []
        for a, b in self.edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return sorted(out)

    def edge_directions(self, v) -> List[IntVec]:
        """Primitive inward edge directions at vertex ``v`` (point or index)."""
        i = v if isinstance(v, int) else self.index_of(v)
        x = self.vertices[i]
        dirs = []
        for j in self.neighbors(i):
            diff = tuple(a - b for a, b in zip(self.vertices[j], x))
            dirs.append(primitive(scale_to_integer(diff))[0])
        return sorted(dirs)

    def contains(self, x: Sequence[RationalLike]) -> bool:
        x = ratvec(x)
        return all(h.contains(x) for h in self.halfspaces)

    def facet_vertices(self, f: int) -> List[int]:
        return [i for i, s in enumerate(self.incidence) if f in s]

    def values(self, m: Sequence[int]) -> List[Fraction]:
        return [Fraction(dot(v, m)) for v in self.vertices]

    def facet_index(self, normal: Sequence[int], offset: RationalLike) -> Optional[int]:
        h = HalfSpace.of(normal, offset)
        try:
            return self.halfspaces.index(h)
        except ValueError:
            return None

    def facet_with_normal(self, normal: Sequence[int]) -> Optional[int]:
        normal = intvec(normal)
        for i, h in enumerate(self.halfspaces):
            if h.normal == normal:
                return i
        return None


def from_halfspaces(dim: int, hs: Sequence) -> Polytope:
    return Polytope.from_halfspaces(dim, hs)


def vertices(P: Polytope) -> List[RatVec]:
    return list(P.vertices)


def edge_directions(P: Polytope, v) -> List[IntVec]:
    return P.edge_directions(v)


# Delzant test -----------------------------------------------------------------


@dataclass(frozen=True)
class DelzantCheck:
    """Outcome of :func:`is_delzant`; truthy iff the polytope is Delzant.

    ``certificates`` maps each vertex to the matrix whose rows are its
    primitive edge directions; ``witness`` names the first failing vertex.
    """

    ok: bool
    certificates: Optional[Dict[RatVec, IntMat]] = None
    witness: Optional[dict] = None

    def __bool__(self):
        return self.ok


def is_delzant(P: Polytope) -> DelzantCheck:
    certs: Dict[RatVec, IntMat] = {}
    for i, v in enumerate(P.vertices):
        dirs = P.edge_directions(i)
        if len(dirs) != P.dim or len(P.incidence[i]) != P.dim:
            return DelzantCheck(
                False,
                witness={"vertex": v, "reason": "not simple", "edges": len(dirs)},
            )
        M = tuple(dirs)
        d = det(M) if P.dim else 1
        if d not in (1, -1):
            return DelzantCheck(False, witness={"vertex": v, "det": d, "edges": M})
        certs[v] = M
    return DelzantCheck(True, certificates=certs)


# affine maps -----------------------------------------------------------------


def map_points(P: Polytope, L: Sequence[Sequence[int]], t: Sequence[RationalLike] = None) -> Polytope:
    """Image of ``P`` under ``x -> L x + t`` for an integer ``L`` with det +-1."""
    n = P.dim
    t = ratvec(t) if t is not None else (Fraction(0),) * n
    if n == 0:
        return P
    Linv = unimodular_inverse(L)
    Nt = transpose(Linv)  # normals map by (L^-1)^T
    hs = []
    for h in P.halfspaces:
        u = mat_vec(Nt, h.normal)
        hs.append(HalfSpace(u, h.offset + Fraction(dot(t, u))))
    return Polytope.from_halfspaces(n, hs)


def transform(P: Polytope, U: Sequence[Sequence[int]], t: Sequence[RationalLike] = None) -> Polytope:
    """Image under ``x -> (U^T)^{-1} x + t``; facet normals map by ``U``."""
    d = det(U)
    if d not in (1, -1):
        raise NotUnimodular("transform matrix is not unimodular", det=d)
    return map_points(P, transpose(unimodular_inverse(U)), t)


def translate(P: Polytope, t: Sequence[RationalLike]) -> Polytope:
    return map_points(P, identity(P.dim), t)


def product(P: Polytope, a: RationalLike, b: RationalLike) -> Polytope:
    """``P x [a, b]`` with the interval as the last coordinate."""
    a, b = rat(a), rat(b)
    if a >= b:
        raise EmptyInterval("interval is empty", a=a, b=b)
    n = P.dim + 1
    hs = [HalfSpace(h.normal + (0,), h.offset) for h in P.halfspaces]
    top = (0,) * (n - 1)
    hs.append(HalfSpace(top + (1,), a))
    hs.append(HalfSpace(top + (-1,), -b))
    return Polytope.from_halfspaces(n, hs)


def facet_distances(P: Polytope, x: Sequence[RationalLike]) -> List[Fraction]:
    x = ratvec(x)
    out = [h.slack(x) for h in P.halfspaces]
    if any(s < 0 for s in out):
        raise OutsidePolytope("point lies outside the polytope", point=list(x))
    return out


# parallel hyperplanes ----------------------------------------------------------


@dataclass(frozen=True)
class ParallelHyperplane:
    """``F = {<x, m> = level}`` accepted by :func:`find_parallel`.

    ``common_direction`` is the shared primitive crossing-edge direction
    ``w`` with ``<w, m> = 1``; ``strict`` means F only touches the boundary
    (it supports a facet).
    """

    m: IntVec
    level: Fraction
    common_direction: Optional[IntVec]
    strict: bool


def find_parallel(P: Polytope, m: Sequence[int], level: RationalLike) -> ParallelHyperplane:
    m = intvec(m)
    level = rat(level)
    if not is_primitive(m):
        raise NotPrimitive("hyperplane normal is not primitive", m=list(m))
    vals = P.values(m)
    lo, hi = min(vals), max(vals)
    if level < lo or level > hi:
        raise NoIntersection("hyperplane misses the polytope", m=list(m), level=level)
    strict = level in (lo, hi)
    if strict:
        on = [i for i, v in enumerate(vals) if v == level]
        if not on or rational_rank(
            [tuple(a - b for a, b in zip(P.vertices[i], P.vertices[on[0]])) for i in on[1:]],
            P.dim,
        ) != P.dim - 1:
            # touches the boundary in a face smaller than a facet
            raise NoIntersection(
                "hyperplane touches the polytope without containing a facet",
                m=list(m),
                level=level,
            )

    w: Optional[IntVec] = None
    for a, b in P.edges:
        va, vb = vals[a], vals[b]
        if va == level and vb == level:
            continue
        if not (min(va, vb) <= level <= max(va, vb)):
            continue
        diff = tuple(x - y for x, y in zip(P.vertices[b], P.vertices[a]))
        d = primitive(scale_to_integer(diff))[0]
        if dot(d, m) < 0:
            d = tuple(-x for x in d)
        if w is None:
            w = d
        elif d != w:
            raise NotParallel(
                "crossing edges are not parallel",
                m=list(m),
                level=level,
                directions=[list(w), list(d)],
                edge=[P.vertices[a], P.vertices[b]],
            )
    if w is not None and dot(w, m) != 1:
        raise NotParallel(
            "crossing direction does not pair to 1 with the normal",
            m=list(m),
            level=level,
            direction=list(w),
            pairing=dot(w, m),
        )
    if w is not None:
        for f, h in enumerate(P.halfspaces):
            fv = [vals[i] for i in P.facet_vertices(f)]
            if min(fv) < level < max(fv) and dot(w, h.normal) != 0:
                raise NotParallel(
                    "crossed facet is not invariant along the crossing direction",
                    m=list(m),
                    level=level,
                    facet=list(h.normal),
                    direction=list(w),
                )
    return ParallelHyperplane(m, level, w, strict)
