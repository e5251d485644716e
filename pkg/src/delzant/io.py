"""JSON file formats for polytopes, b-polytopes and reassembly plans.

Rationals are written as ``"p/q"`` strings (``"p"`` for integers) and
integer vectors as JSON integer arrays. Output is deterministic: fixed key
order, two-space indent, trailing newline, so re-emitting a parsed file
reproduces it byte for byte.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any, Dict, List, Mapping, Tuple, Union

import jsonschema
from referencing import Registry, Resource

from .bstruct import (
    BDelzantPolytope,
    Component,
    GraphEdge,
    PlanStep,
    ReassemblyPlan,
    WeightedAdjacencyGraph,
)
from .exactlat import format_rat, rat
from .polytope import HalfSpace, Polytope


class ParseError(Exception):
    """Malformed JSON or a schema violation; maps to exit code 2."""

    def __init__(self, message: str, **detail: Any) -> None:
        super().__init__(message)
        self.detail = detail


SCHEMAS = ("polytope", "bpolytope", "plan")


@lru_cache(maxsize=None)
def _schema(name: str) -> dict:
    text = resources.files("delzant").joinpath(f"schemas/{name}.schema.json").read_text()
    return json.loads(text)


@lru_cache(maxsize=None)
def _registry() -> Registry:
    return Registry().with_resources(
        (f"{n}.schema.json", Resource.from_contents(_schema(n))) for n in SCHEMAS
    )


def validate(doc: Any, kind: str) -> None:
    validator = jsonschema.Draft202012Validator(_schema(kind), registry=_registry())
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        pointer = "".join(f"/{p}" for p in err.absolute_path)
        raise ParseError(
            f"schema violation: {err.message}",
            pointer=pointer or "/",
            schema=kind,
            violations=[
                {"pointer": "".join(f"/{p}" for p in e.absolute_path) or "/", "message": e.message}
                for e in errors
            ],
        )


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc


def read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", path=path) from exc
    return loads(text)


def _fmt(x: Any, depth: int) -> str:
    pad = "  " * (depth + 1)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_fmt(v, depth + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * depth + "}"
    if isinstance(x, list):
        if all(not isinstance(v, (dict, list)) for v in x):
            # vectors stay on one line
            return "[" + ", ".join(json.dumps(v, ensure_ascii=False) for v in x) + "]"
        items = [pad + _fmt(v, depth + 1) for v in x]
        return "[\n" + ",\n".join(items) + "\n" + "  " * depth + "]"
    return json.dumps(x, ensure_ascii=False)


def dumps(doc: Any) -> str:
    """Deterministic pretty JSON; scalar arrays are kept on one line."""
    return _fmt(doc, 0) + "\n"


def write_json(path: str, doc: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))


# polytopes ------------------------------------------------------------------


def polytope_to_json(P: Polytope) -> dict:
    return {
        "dim": P.dim,
        "halfspaces": [
            {"normal": list(h.normal), "offset": format_rat(h.offset)} for h in P.halfspaces
        ],
    }


def polytope_from_json(doc: Any, validated: bool = False) -> Polytope:
    if not validated:
        validate(doc, "polytope")
    n = doc["dim"]
    hs = []
    for i, h in enumerate(doc["halfspaces"]):
        if len(h["normal"]) != n:
            raise ParseError(
                "normal length differs from dim", pointer=f"/halfspaces/{i}/normal"
            )
        if not any(h["normal"]):
            raise ParseError("zero normal", pointer=f"/halfspaces/{i}/normal")
        hs.append(HalfSpace(tuple(h["normal"]), rat(h["offset"])))
    return Polytope.from_halfspaces(n, hs)


# graphs and b-polytopes -----------------------------------------------------


def graph_to_json(G: WeightedAdjacencyGraph) -> dict:
    return {
        "vertices": list(G.vertices),
        "edges": [
            {"ends": list(e.ends), "c": format_rat(e.c), "m": list(e.m)} for e in G.edges
        ],
    }


def graph_from_json(doc: Any) -> WeightedAdjacencyGraph:
    return WeightedAdjacencyGraph(
        tuple(doc["vertices"]),
        tuple(GraphEdge(tuple(e["ends"]), rat(e["c"]), tuple(e["m"])) for e in doc["edges"]),
    )


def bpolytope_to_json(bP: BDelzantPolytope) -> dict:
    comps = {}
    for v in bP.graph.vertices:
        c = bP.components[v]
        comps[v] = {
            "polytope": polytope_to_json(c.polytope),
            "infinity_facets": {str(e): f for e, f in sorted(c.infinity_facets.items())},
        }
    return {"graph": graph_to_json(bP.graph), "components": comps}


def bpolytope_from_json(doc: Any, validated: bool = False) -> BDelzantPolytope:
    if not validated:
        validate(doc, "bpolytope")
    G = graph_from_json(doc["graph"])
    comps = {}
    for v, c in doc["components"].items():
        P = polytope_from_json(c["polytope"], validated=True)
        if len(P.halfspaces) != len(c["polytope"]["halfspaces"]):
            # facet indices would silently shift
            raise ParseError(
                "component has redundant half-spaces; marked facet indices are ambiguous",
                pointer=f"/components/{v}/polytope/halfspaces",
            )
        comps[v] = Component(P, {int(k): f for k, f in c["infinity_facets"].items()})
    return BDelzantPolytope(G, comps)


def read_any(path: str) -> Union[Polytope, BDelzantPolytope]:
    """Read a polytope or b-polytope file (told apart by the ``graph`` key)."""
    doc = read_json(path)
    if isinstance(doc, dict) and "graph" in doc:
        return bpolytope_from_json(doc)
    return polytope_from_json(doc)


def to_json(obj: Union[Polytope, BDelzantPolytope]) -> dict:
    if isinstance(obj, BDelzantPolytope):
        return bpolytope_to_json(obj)
    return polytope_to_json(obj)


# reassembly plans -----------------------------------------------------------


def plan_to_json(plan: ReassemblyPlan, block_files: Mapping[str, str]) -> dict:
    return {
        "graph": graph_to_json(plan.graph),
        "blocks": {v: block_files[v] for v in plan.graph.vertices},
        "steps": [
            {
                "edge": st.edge,
                "facets": {v: st.facets[v] for v in st.ends},
                "levels": {v: format_rat(st.levels[v]) for v in st.ends},
            }
            for st in plan.steps
        ],
    }


def plan_from_json(doc: Any) -> Tuple[ReassemblyPlan, Dict[str, str]]:
    validate(doc, "plan")
    G = graph_from_json(doc["graph"])
    steps = []
    for i, st in enumerate(doc["steps"]):
        e = st["edge"]
        if not 0 <= e < len(G.edges):
            raise ParseError("step refers to an unknown edge", pointer=f"/steps/{i}/edge")
        ge = G.edges[e]
        steps.append(
            PlanStep(
                e,
                ge.ends,
                ge.c,
                ge.m,
                dict(st["facets"]),
                {v: rat(x) for v, x in st["levels"].items()},
            )
        )
    return ReassemblyPlan(G, tuple(steps)), dict(doc["blocks"])


# report helpers -------------------------------------------------------------


def jsonable(x: Any) -> Any:
    """Convert library values (Fractions, tuples, frozensets) to JSON data."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return format_rat(x)
    if isinstance(x, Mapping):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (frozenset, set)):
        return [jsonable(v) for v in sorted(x)]
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (Polytope, BDelzantPolytope)):
        return to_json(x)
    return str(x)


def vector_to_json(v) -> List[str]:
    return [format_rat(x) for x in v]
