"""Betti numbers of toric and b-toric manifolds by counting vertex indices.

For a generic ``X``, the height function ``<., X>`` on the moment image is
Morse with critical points at the (finite) vertices; the half-index of a
vertex is the number of its edge vectors ``e`` with ``<e, X> > 0``. All
odd ranks vanish, so ``b_{2k}`` is the number of vertices of half-index k.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Callable, Iterator, List, Sequence, Tuple, Union

from .bstruct import BDelzantPolytope, GluedDrawing, glued_drawing, shared_slice
from .errors import DuplicateCriticalValue, NotGeneric
from .exactlat import IntVec, dot, intvec, mat_vec, sl_transform_to_last_axis
from .polytope import Polytope

TORUS = (1, 2, 1)

# search cap; generic vectors for desk-scale inputs appear long before this
_MAX_N = 4096


@dataclass(frozen=True)
class BettiTable:
    ranks: Tuple[int, ...]

    def __post_init__(self):
        ranks = tuple(int(r) for r in self.ranks)
        if any(r < 0 for r in ranks):
            raise ValueError("Betti numbers are nonnegative")
        object.__setattr__(self, "ranks", ranks)

    def __iter__(self):
        return iter(self.ranks)

    def __len__(self):
        return len(self.ranks)

    def __getitem__(self, i):
        return self.ranks[i]

    @property
    def total(self) -> int:
        return sum(self.ranks)

    @property
    def alternating_sum(self) -> int:
        return sum((-1) ** i * r for i, r in enumerate(self.ranks))

    @property
    def even_only(self) -> bool:
        return not any(self.ranks[1::2])

    def is_palindromic(self) -> bool:
        return self.ranks == self.ranks[::-1]


@dataclass(frozen=True)
class GenericVector:
    """``X`` with the pairing table that certifies it.

    ``certificate`` lists ``(edge direction, <edge, X>)`` for every distinct
    edge direction seen at a counted vertex.
    """

    X: IntVec
    certificate: Tuple[Tuple[IntVec, int], ...] = ()


# what the counting needs: per component, (point, edge vectors) of each vertex
_Germs = List[Tuple[str, List[Tuple[tuple, Tuple[IntVec, ...]]]]]

Countable = Union[Polytope, Sequence[Polytope], GluedDrawing, BDelzantPolytope]


def _germs(obj: Countable) -> Tuple[int, _Germs, Callable[[IntVec], IntVec]]:
    """(ambient dim, vertex germs, map from X to the vector paired with germs)."""
    same = lambda X: X  # noqa: E731
    if isinstance(obj, BDelzantPolytope):
        if obj.shape == "circle":
            # X acts on the slice through its chart: x = U^T y, so <x, X> = <y, U X>
            U = sl_transform_to_last_axis(obj.graph.edges[0].m)
            _, germs, _ = _germs(shared_slice(obj))
            return obj.dim, germs, lambda X: tuple(mat_vec(U, X)[:-1])
        obj = glued_drawing(obj)
    if isinstance(obj, GluedDrawing):
        groups: dict = {}
        for dv in obj.vertices:
            groups.setdefault(dv.component, []).append((dv.point, dv.edges))
        n = next(iter(obj.polytopes.values())).dim
        return n, [(v, groups.get(v, [])) for v in obj.order], same
    if isinstance(obj, Polytope):
        obj = [obj]
    out = []
    n = None
    for i, P in enumerate(obj):
        n = P.dim
        out.append(
            (f"v{i + 1}", [(P.vertices[j], tuple(P.edge_directions(j))) for j in range(len(P.vertices))])
        )
    if n is None:
        raise ValueError("no polytopes given")
    return n, out, same


def _candidates(n: int) -> Iterator[IntVec]:
    """Deterministic candidate order: signed permutations of (1, N, N^2, ...)."""
    if n == 0:
        yield ()
        return
    seen = set()
    signs = list(product((1, -1), repeat=n))
    for N in range(2, _MAX_N):
        if n == 1:
            # the power base is always (1); walk the integers instead
            base_perms = [(N - 1,)]
        else:
            base_perms = permutations(tuple(N**i for i in range(n)))
        for perm in base_perms:
            for s in signs:
                X = tuple(a * b for a, b in zip(s, perm))
                if X not in seen:
                    seen.add(X)
                    yield X


def _check(germs: _Germs, X: IntVec, act=None) -> GenericVector:
    Y = act(X) if act else X
    table = {}
    for comp, verts in germs:
        values = {}
        for pt, edges in verts:
            for e in edges:
                p = dot(e, Y)
                if p == 0:
                    raise NotGeneric(
                        "X is orthogonal to an edge direction",
                        X=list(X),
                        edge=list(e),
                        vertex=list(pt),
                        component=comp,
                    )
                table[tuple(e)] = p
            h = dot(pt, Y)
            if h in values:
                raise DuplicateCriticalValue(
                    "two vertices share a critical value",
                    X=list(X),
                    vertices=[list(values[h]), list(pt)],
                    value=h,
                    component=comp,
                )
            values[h] = pt
    return GenericVector(tuple(X), tuple(sorted(table.items())))


def check_generic(obj: Countable, X: Sequence[int]) -> GenericVector:
    """Validate a caller-supplied X; raises NotGeneric or DuplicateCriticalValue."""
    n, germs, act = _germs(obj)
    X = intvec(X)
    if len(X) != n:
        raise NotGeneric("X has the wrong length", X=list(X), dim=n)
    return _check(germs, X, act)


def iter_generic_vectors(obj: Countable) -> Iterator[GenericVector]:
    """All accepted vectors in search order."""
    n, germs, act = _germs(obj)
    for X in _candidates(n):
        try:
            yield _check(germs, X, act)
        except NotGeneric:
            continue


def generic_vector(obj: Countable) -> GenericVector:
    for g in iter_generic_vectors(obj):
        return g
    raise NotGeneric("no generic vector found within the search bound")


def vertex_index(edges_at_v: Sequence[Sequence[int]], X: Union[GenericVector, Sequence[int]]) -> int:
    """Half the Morse index: how many edges point up with respect to X."""
    if isinstance(X, GenericVector):
        X = X.X
    k = 0
    for e in edges_at_v:
        p = dot(e, X)
        if p == 0:
            raise NotGeneric("X is orthogonal to an edge direction", X=list(X), edge=list(e))
        k += p > 0
    return k


@dataclass(frozen=True)
class MorseReport:
    betti: BettiTable
    euler: int
    X: GenericVector
    per_vertex: Tuple[Tuple[tuple, str, int], ...]


def _count(obj: Countable, X) -> MorseReport:
    n, germs, act = _germs(obj)
    if X is None:
        gv = generic_vector(obj)
    else:
        gv = check_generic(obj, X.X if isinstance(X, GenericVector) else X)
    ranks = [0] * (2 * n + 1)
    rows = []
    for comp, verts in germs:
        for pt, edges in verts:
            k = vertex_index(edges, act(gv.X))
            ranks[2 * k] += 1
            rows.append((tuple(pt), comp, k))
    table = BettiTable(tuple(ranks))
    return MorseReport(table, table.alternating_sum, gv, tuple(rows))


def betti_toric(P: Polytope, X=None) -> BettiTable:
    return _count(P, X).betti


def kunneth(a: Union[BettiTable, Sequence[int]], b: Union[BettiTable, Sequence[int]]) -> BettiTable:
    a, b = tuple(a), tuple(b)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return BettiTable(tuple(out))


def morse_report(obj: Union[Polytope, BDelzantPolytope], X=None) -> MorseReport:
    """Betti table plus the per-vertex half-indices behind it.

    Circle-graph b-polytopes are counted on their shared slice and then
    multiplied by the torus table.
    """
    base = _count(obj, X)
    if isinstance(obj, BDelzantPolytope) and obj.shape == "circle":
        # the count ran on the slice; multiply by the torus
        table = kunneth(base.betti.ranks[: 2 * obj.dim - 1], TORUS)
        rows = tuple((pt, "slice", k) for pt, _, k in base.per_vertex)
        return MorseReport(table, euler_characteristic(obj), base.X, rows)
    return base


def betti_btoric(bP: BDelzantPolytope, X=None) -> BettiTable:
    return morse_report(bP, X).betti


def euler_characteristic(obj: Union[Polytope, BDelzantPolytope]) -> int:
    """Number of finite vertices."""
    if isinstance(obj, Polytope):
        return len(obj.vertices)
    return len(obj.finite_vertices())


def betti(obj: Union[Polytope, BDelzantPolytope], X=None) -> BettiTable:
    if isinstance(obj, BDelzantPolytope):
        return betti_btoric(obj, X)
    return betti_toric(obj, X)


__all__ = [
    "BettiTable",
    "GenericVector",
    "MorseReport",
    "betti",
    "betti_btoric",
    "betti_toric",
    "check_generic",
    "euler_characteristic",
    "generic_vector",
    "iter_generic_vectors",
    "kunneth",
    "morse_report",
    "vertex_index",
]
