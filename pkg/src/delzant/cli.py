"""``delzant`` command-line tool.

Every command prints one JSON report on stdout. Exit codes: 0 ok, 1 domain
error (with witness), 2 parse, schema or usage error.
"""

from __future__ import annotations

import os
import sys
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

import click

from . import io
from .bstruct import (
    BDelzantPolytope,
    build_codomain,
    decompose,
    is_b_delzant,
    reassemble,
)
from .errors import DelzantError, NotDelzant
from .exactlat import format_rat, rat
from .homology import check_generic, euler_characteristic, morse_report
from .polytope import ParallelHyperplane, Polytope, find_parallel, is_delzant
from .render import render_svg
from .surgery import cut, facet_slice, glue_preserving, glue_reversed

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE = 0, 1, 2


class Report:
    def __init__(self, command: str):
        self.command = command
        self.log: List[str] = []

    def note(self, *lines: str) -> None:
        self.log.extend(lines)

    def emit(self, payload: Dict[str, Any]) -> None:
        click.echo(io.dumps({"status": "ok", "command": self.command, "payload": io.jsonable(payload), "log": self.log}), nl=False)


def _fail(command: str, code: str, message: str, detail: Dict[str, Any], exit_code: int, log=()) -> None:
    doc = {
        "status": "error",
        "command": command,
        "error": {"code": code, "message": message, "witness": io.jsonable(detail)},
        "log": list(log),
    }
    click.echo(io.dumps(doc), nl=False)
    sys.exit(exit_code)


def _run(command: str, body: Callable[[Report], None]) -> None:
    rep = Report(command)
    try:
        body(rep)
    except io.ParseError as exc:
        _fail(command, "ParseError", str(exc), exc.detail, EXIT_PARSE, rep.log)
    except DelzantError as exc:
        _fail(command, exc.code, str(exc), exc.witness, EXIT_DOMAIN, rep.log)


# argument parsing -------------------------------------------------------------


def _ints(text: str, flag: str) -> Tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise io.ParseError(f"{flag} expects comma-separated integers", value=text) from None


def _rat(text: str, flag: str) -> Fraction:
    try:
        return rat(text)
    except (ValueError, ZeroDivisionError):
        raise io.ParseError(f"{flag} expects a rational 'p/q'", value=text) from None


def _levels(text: Optional[str]) -> Dict[int, Any]:
    """``edge=p/q`` or ``edge=p/q:r/s`` items, comma separated."""
    out: Dict[int, Any] = {}
    if not text:
        return out
    for item in text.split(","):
        key, sep, val = item.partition("=")
        if not sep:
            raise io.ParseError("--levels expects edge=p/q items", value=item)
        try:
            e = int(key)
        except ValueError:
            raise io.ParseError("--levels edge index must be an integer", value=item) from None
        if ":" in val:
            a, b = val.split(":", 1)
            out[e] = (_rat(a, "--levels"), _rat(b, "--levels"))
        else:
            out[e] = _rat(val, "--levels")
    return out


def _read_polytope(path: str) -> Polytope:
    obj = io.read_any(path)
    if not isinstance(obj, Polytope):
        raise io.ParseError("expected a polytope file, got a b-polytope", path=path)
    return obj


def _read_b(path: str) -> BDelzantPolytope:
    obj = io.read_any(path)
    if isinstance(obj, Polytope):
        return BDelzantPolytope.trivial(obj)
    return obj


def _write(rep: Report, path: Optional[str], doc: Any) -> None:
    if path:
        io.write_json(path, doc)
        rep.note(f"wrote {path}")


def _certs(check) -> List[dict]:
    return [{"vertex": v, "matrix": M} for v, M in check.certificates.items()]


def _hyperplane(F: ParallelHyperplane) -> dict:
    return {
        "m": F.m,
        "level": F.level,
        "common_direction": F.common_direction,
        "strict": F.strict,
    }


# commands ---------------------------------------------------------------------


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="artifact", prog_name="delzant")
def cli() -> None:
    """Exact Delzant and b-Delzant polytope toolkit."""


@cli.command()
@click.argument("path")
def check(path: str) -> None:
    """Certify a polytope (Delzant) or b-polytope (b-Delzant)."""

    def body(rep: Report) -> None:
        obj = io.read_any(path)
        if isinstance(obj, Polytope):
            rep.note(*obj.log)
            res = is_delzant(obj)
            if not res:
                raise NotDelzant("polytope is not Delzant", **res.witness)
            rep.emit({"kind": "polytope", "delzant": True, "certificates": _certs(res)})
            return
        res = is_b_delzant(obj)
        if not res:
            raise NotDelzant("b-polytope is not b-Delzant", shape=res.shape, **(res.witness or {}))
        slices = [
            {
                "edge": s.edge,
                "common_direction": s.hyperplanes[0].common_direction,
                "slice_vertices": s.slice.vertices,
            }
            for s in obj.edge_slices
        ]
        payload = {"kind": "bpolytope", "b_delzant": True, "shape": res.shape, "slices": slices}
        if res.shape == "line":
            payload["certificates"] = {
                v: _certs(is_delzant(obj.components[v].polytope)) for v in obj.graph.vertices
            }
        rep.emit(payload)

    _run("check", body)


@cli.command()
@click.argument("path")
@click.option("--m", "m", required=True, help="hyperplane normal, e.g. 0,1")
@click.option("--level", required=True, help="level p/q of <x, m>")
@click.option("-o", "--output", default=None, help="write the slice polytope here")
def facet(path: str, m: str, level: str, output: Optional[str]) -> None:
    """Test a parallel hyperplane and extract its slice polytope."""

    def body(rep: Report) -> None:
        P = _read_polytope(path)
        F = find_parallel(P, _ints(m, "--m"), _rat(level, "--level"))
        chart = facet_slice(P, F)
        doc = io.polytope_to_json(chart.slice)
        _write(rep, output, doc)
        rep.emit(
            {
                "hyperplane": _hyperplane(F),
                "chart": {"base_point": chart.base_point, "basis": chart.basis},
                "slice": doc,
                "slice_vertices": chart.slice.vertices,
                "slice_delzant": True,
            }
        )

    _run("facet", body)


@cli.command("cut")
@click.argument("path")
@click.option("--m", "m", required=True, help="cut direction, e.g. -1,-1")
@click.option("--delta", required=True, help="keep <x, m> >= delta")
@click.option("-o", "--output", default=None)
def cut_cmd(path: str, m: str, delta: str, output: Optional[str]) -> None:
    """Symplectic cut: intersect with a rational half-space."""

    def body(rep: Report) -> None:
        P = _read_polytope(path)
        Q = cut(P, _ints(m, "--m"), _rat(delta, "--delta"))
        rep.note(*Q.log)
        doc = io.polytope_to_json(Q)
        _write(rep, output, doc)
        rep.emit({"polytope": doc, "vertices": Q.vertices, "delzant": True})

    _run("cut", body)


def _infer_interface(P1: Polytope, P2: Polytope) -> Tuple[Tuple[int, ...], Fraction]:
    """The unique pair of coincident, oppositely oriented facets."""
    hits = []
    for h in P1.halfspaces:
        neg = tuple(-a for a in h.normal)
        if P2.facet_index(neg, -h.offset) is not None:
            hits.append((h.normal, h.offset))
    if len(hits) != 1:
        raise io.ParseError(
            "cannot infer the gluing hyperplane; pass --m and --level",
            candidates=[{"m": list(u), "level": format_rat(l)} for u, l in hits],
        )
    return hits[0]


@cli.command()
@click.argument("first")
@click.argument("second")
@click.option("--mode", type=click.Choice(["preserve", "reverse"]), required=True)
@click.option("--c", "c", default="1", help="weight magnitude (reverse mode)")
@click.option("--m", "m", default=None, help="normal of the gluing hyperplane")
@click.option("--level", default=None, help="level of the gluing hyperplane")
@click.option("-o", "--output", default=None)
def glue(first, second, mode, c, m, level, output) -> None:
    """Glue two blocks along a shared strict-parallel facet."""

    def body(rep: Report) -> None:
        P1, P2 = _read_polytope(first), _read_polytope(second)
        if (m is None) != (level is None):
            raise io.ParseError("--m and --level go together")
        if m is None:
            mv, lv = _infer_interface(P1, P2)
            rep.note(f"inferred gluing hyperplane m={list(mv)} level={format_rat(lv)}")
        else:
            mv, lv = _ints(m, "--m"), _rat(level, "--level")
        if mode == "preserve":
            Q = glue_preserving(P1, P2, mv, lv)
            rep.note(*Q.log)
            doc = io.polytope_to_json(Q)
            _write(rep, output, doc)
            rep.emit({"kind": "polytope", "polytope": doc, "vertices": Q.vertices})
        else:
            bP = glue_reversed(P1, P2, mv, lv, _rat(c, "--c"))
            doc = io.bpolytope_to_json(bP)
            _write(rep, output, doc)
            e = bP.graph.edges[0]
            rep.emit(
                {
                    "kind": "bpolytope",
                    "bpolytope": doc,
                    "weight": {"c": e.c, "m": e.m, "vector": e.weight},
                }
            )

    _run("glue", body)


@cli.command("decompose")
@click.argument("path")
@click.option("--levels", default=None, help="edge=p/q or edge=p/q:r/s, comma separated")
@click.option("-o", "--output", default=None, help="directory for block and plan files")
def decompose_cmd(path: str, levels: Optional[str], output: Optional[str]) -> None:
    """Cut a b-polytope into strict-parallel Delzant blocks."""

    def body(rep: Report) -> None:
        bP = _read_b(path)
        dec = decompose(bP, _levels(levels))
        stem = os.path.splitext(os.path.basename(path))[0]
        files = {v: f"{stem}.{v}.json" for v in bP.graph.vertices}
        blocks = {v: io.polytope_to_json(dec.blocks[v]) for v in bP.graph.vertices}
        plan = io.plan_to_json(dec.plan, files)
        if output:
            os.makedirs(output, exist_ok=True)
            for v in bP.graph.vertices:
                _write(rep, os.path.join(output, files[v]), blocks[v])
            _write(rep, os.path.join(output, f"{stem}.plan.json"), plan)
        rep.emit(
            {
                "blocks": blocks,
                "certificates": {
                    v: [_hyperplane(F) for F in dec.certificates[v]] for v in bP.graph.vertices
                },
                "plan": plan,
            }
        )

    _run("decompose", body)


@cli.command("reassemble")
@click.argument("plan_path")
@click.option("-o", "--output", default=None)
def reassemble_cmd(plan_path: str, output: Optional[str]) -> None:
    """Rebuild a b-polytope from a decomposition plan and its block files."""

    def body(rep: Report) -> None:
        plan, files = io.plan_from_json(io.read_json(plan_path))
        base = os.path.dirname(plan_path)
        blocks = {v: _read_polytope(os.path.join(base, f)) for v, f in files.items()}
        bP = reassemble(blocks, plan)
        doc = io.bpolytope_to_json(bP)
        _write(rep, output, doc)
        rep.emit({"bpolytope": doc})

    _run("reassemble", body)


@cli.command()
@click.argument("path")
@click.option("--X", "X", default=None, help="generic vector, e.g. 1,2")
def betti(path: str, X: Optional[str]) -> None:
    """Betti numbers by counting vertex indices."""

    def body(rep: Report) -> None:
        obj = io.read_any(path)
        if isinstance(obj, BDelzantPolytope):
            res = is_b_delzant(obj)
            if not res:
                raise NotDelzant("b-polytope is not b-Delzant", **(res.witness or {}))
        else:
            res = is_delzant(obj)
            if not res:
                raise NotDelzant("polytope is not Delzant", **res.witness)
        Xv = None
        if X is not None:
            Xv = _ints(X, "--X")
            check_generic(obj, Xv)
        r = morse_report(obj, Xv)
        rep.emit(
            {
                "betti": list(r.betti.ranks),
                "euler": euler_characteristic(obj),
                "generic_vector": list(r.X.X),
                "per_vertex": [{"vertex": p, "component": comp, "k": k} for p, comp, k in r.per_vertex],
            }
        )

    _run("betti", body)


@cli.command()
@click.argument("path")
def codomain(path: str) -> None:
    """Describe the b-moment codomain of a b-polytope's graph."""

    def body(rep: Report) -> None:
        bP = _read_b(path)
        cod = build_codomain(bP.graph, bP.dim)
        rep.emit(
            {
                "dim": cod.dim,
                "trivial": cod.is_trivial,
                "charts": list(cod.charts),
                "edge_hyperplanes": [
                    {"edge": i, "ends": list(bP.graph.edges[i].ends), "basis": B, "dim": (cod.dim or 1) - 1}
                    for i, B in enumerate(cod.edge_hyperplanes)
                ],
                "transitions": [
                    {
                        "edge": i,
                        "c": t["c"],
                        "charts": {
                            v: ("-exp(x/c)" if s < 0 else "exp(x/c)") for v, s in t["signs"].items()
                        },
                    }
                    for i, t in enumerate(cod.transitions)
                ],
            }
        )

    _run("codomain", body)


@cli.command()
@click.argument("path")
@click.option("-o", "--output", required=True, help="SVG file to write")
def render(path: str, output: str) -> None:
    """Draw a 2-dimensional polytope or b-polytope as SVG."""

    def body(rep: Report) -> None:
        obj = io.read_any(path)
        svg = render_svg(obj)
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(svg)
        rep.note(f"wrote {output}")
        rep.emit({"svg": output, "bytes": len(svg.encode("utf-8"))})

    _run("render", body)


def main(argv: Optional[List[str]] = None) -> None:
    try:
        rv = cli.main(args=argv, prog_name="delzant", standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.Abort:
        sys.exit(EXIT_PARSE)
    except click.ClickException as exc:
        _fail("usage", "UsageError", exc.format_message(), {}, EXIT_PARSE)
    sys.exit(rv or 0)


if __name__ == "__main__":  # pragma: no cover
    main()
