"""Command-line front end.

Reads a JSON spec (file or stdin) describing an arrangement, a nested
family, or a deleted family, runs one analysis command against it, and
prints either a short text report or a JSON document.  The JSON output
echoes the request under the ``"spec"`` key, so a saved report can be
fed straight back in.

Exit codes: 0 on success, 1 on bad input, 2 when a size guard trips.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .arrangement import NestSpec, ParsedSpec, build_n_ish, cone, from_spec
from .chambers import canonical_chamber, distance_poly, enumerate_chambers, ish_base_chamber
from .errors import CapacityError
from .exactmath import (
    default_names,
    format_rational,
    poly_to_json,
    unipoly_factored_str,
    unipoly_from_roots,
    unipoly_str,
    unipoly_to_json,
)
from .freeness import basis_derivations, decide_free, is_nest, saito_constant
from .graphs import analyze_graph, survey
from .lattice import char_poly, is_supersolvable

COMMANDS = (
    "charpoly",
    "freeness",
    "basis",
    "saito",
    "supersolvable",
    "chambers",
    "wallcross",
    "graph",
    "survey",
)
LATTICE_MAX_ELL = 6


@dataclass(frozen=True)
class AnalysisRequest:
    command: str
    output_format: str
    ell: int
    parsed: ParsedSpec | None  # None exactly for the survey command


def parse_spec(text: str) -> AnalysisRequest:
    """Parse a full request document: arrangement spec plus command/format."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON: {exc}") from exc
    return request_from_doc(doc)


def request_from_doc(doc: object) -> AnalysisRequest:
    if not isinstance(doc, dict):
        raise ValueError("the request must be a JSON object")
    command = doc.get("command")
    if command not in COMMANDS:
        raise ValueError(
            f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}"
        )
    fmt = doc.get("format", "text")
    if fmt not in ("text", "json"):
        raise ValueError(f"unknown format {fmt!r}; expected 'text' or 'json'")
    if command == "survey":
        ell = doc.get("ell")
        if not isinstance(ell, int) or ell < 2:
            raise ValueError("survey needs an integer 'ell' >= 2")
        return AnalysisRequest(command, fmt, ell, None)
    parsed = from_spec(doc)
    return AnalysisRequest(command, fmt, parsed.ell, parsed)


def request_echo(req: AnalysisRequest) -> dict:
    """The canonical spec document reproducing this request."""
    out: dict = {"command": req.command, "format": req.output_format}
    if req.parsed is None:
        out["ell"] = req.ell
        return out
    p = req.parsed
    out["type"] = p.kind
    if p.kind == "n_ish":
        out["N"] = p.nest.to_json()
    else:
        out["ell"] = p.ell
    if p.graph is not None:
        out["edges"] = [list(e) for e in p.graph.sorted_edges()]
    if p.coned:
        out["cone"] = True
    return out


def _need_nest(parsed: ParsedSpec) -> NestSpec:
    if parsed.nest is None:
        raise ValueError(
            "this command needs a nest-backed spec: ish, n_ish or deleted_ish"
        )
    return parsed.nest


def _guard_lattice(req: AnalysisRequest) -> None:
    if req.ell > LATTICE_MAX_ELL:
        raise CapacityError(
            f"ell = {req.ell} exceeds the guard ell <= {LATTICE_MAX_ELL} "
            "for lattice and chamber computations"
        )


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _cmd_charpoly(req: AnalysisRequest) -> tuple[str, dict]:
    _guard_lattice(req)
    parsed = req.parsed
    poly = char_poly(parsed.arrangement)
    roots: list[int] | None = None
    if parsed.nest is not None:
        verdict = decide_free(parsed.nest)
        if verdict.free:
            roots = list(verdict.exponents)
            if not parsed.coned:
                roots.remove(1)  # deconing divides out one (t - 1) factor
            if unipoly_from_roots(roots) != poly:
                raise RuntimeError("free exponents do not factor the Moebius sum")
    text = unipoly_str(poly)
    if roots is not None:
        text += f" = {unipoly_factored_str(roots)}"
    return text, {"charPoly": unipoly_to_json(poly), "roots": roots}


def _cmd_freeness(req: AnalysisRequest) -> tuple[str, dict]:
    verdict = decide_free(_need_nest(req.parsed))
    if verdict.free:
        text = f"FREE: exponents {verdict.exponents}"
    else:
        w = verdict.witness
        triple = "(" + ",".join(str(e) for e in w.localized_exponents) + ")"
        text = (
            f"NOT FREE: witness pair ({w.i},{w.j}), localized exp {triple}, "
            f"restriction {w.restriction_exponent}"
        )
    return text, verdict.to_json()


def _ascending(parsed: ParsedSpec):
    nest = _need_nest(parsed)
    order = is_nest(nest)
    if order is None:
        raise ValueError("the sets do not form a chain; the cone is not free")
    return nest.reordered(order), order


def _cmd_basis(req: AnalysisRequest) -> tuple[str, dict]:
    sorted_nest, order = _ascending(req.parsed)
    derivs = basis_derivations(sorted_nest)
    names = default_names(sorted_nest.ell + 1, coned=True)
    lines = []
    if list(order) != list(range(2, sorted_nest.ell + 1)):
        lines.append(f"sets taken in ascending order {tuple(order)}")
    for k, d in enumerate(derivs):
        lines.append(f"theta_{k} (degree {d.degree()}): {d.render(names)}")
    data = {
        "order": list(order),
        "degrees": [d.degree() for d in derivs],
        "derivations": [[poly_to_json(c) for c in d.components] for d in derivs],
    }
    return "\n".join(lines), data


def _cmd_saito(req: AnalysisRequest) -> tuple[str, dict]:
    _guard_lattice(req)
    sorted_nest, order = _ascending(req.parsed)
    arr = cone(build_n_ish(sorted_nest))
    constant = saito_constant(basis_derivations(sorted_nest), arr)
    verdict = decide_free(sorted_nest)
    if constant is None:
        return "SAITO FAIL: determinant does not match the defining polynomial", {
            "pass": False,
            "constant": None,
            "exponents": None,
        }
    text = (
        f"SAITO PASS: constant {format_rational(constant)}, "
        f"exponents {verdict.exponents}"
    )
    return text, {
        "pass": True,
        "constant": format_rational(constant),
        "exponents": list(verdict.exponents),
    }


def _cmd_supersolvable(req: AnalysisRequest) -> tuple[str, dict]:
    _guard_lattice(req)
    arr = req.parsed.arrangement
    if not arr.is_central:
        raise ValueError(
            'the lattice test needs a central arrangement; add "cone": true to the spec'
        )
    chain = is_supersolvable(arr)
    if chain is None:
        return "NOT SUPERSOLVABLE", {"supersolvable": False, "chain": None}
    names = arr.var_names()
    lines = [f"SUPERSOLVABLE: modular chain of ranks 0..{len(chain) - 1}"]
    for flat in chain:
        lines.append(f"  rank {flat.rank}: {flat.render(names)}")
    return "\n".join(lines), {
        "supersolvable": True,
        "chain": [flat.to_json() for flat in chain],
    }


def _cmd_chambers(req: AnalysisRequest) -> tuple[str, dict]:
    _guard_lattice(req)
    chambers = enumerate_chambers(req.parsed.arrangement)
    lines = [f"{len(chambers)} chambers"]
    for c in chambers:
        point = ", ".join(str(v) for v in c.witness)
        lines.append(f"  {c.sign_vector}  witness ({point})")
    return "\n".join(lines), {
        "count": len(chambers),
        "chambers": [c.to_json() for c in chambers],
    }


def _cmd_wallcross(req: AnalysisRequest) -> tuple[str, dict]:
    _guard_lattice(req)
    parsed = req.parsed
    if parsed.kind == "ish" and not parsed.coned:
        arr, base = ish_base_chamber(parsed.ell)
    elif parsed.nest is not None:
        order = is_nest(parsed.nest)
        if order is None:
            raise ValueError("the sets do not form a chain; no base chamber is known")
        descending = parsed.nest.reordered(tuple(reversed(order)))
        arr = cone(build_n_ish(descending))
        base = canonical_chamber(descending, arr)
    else:
        raise ValueError(
            "wall-crossing needs the affine staircase ('ish') or a nest-backed spec"
        )
    poly = distance_poly(arr, base)
    return unipoly_str(poly), {
        "distancePoly": unipoly_to_json(poly),
        "chambers": int(poly.evaluate(1)),
    }


def _cmd_graph(req: AnalysisRequest) -> tuple[str, dict]:
    graph = req.parsed.graph
    if graph is None:
        raise ValueError("graph analysis needs a deleted_shi or deleted_ish spec")
    a = analyze_graph(graph)
    edges = " ".join(f"({i},{j})" for i, j in graph.sorted_edges()) or "none"
    witness = str(a.athanasiadis_witness) if a.athanasiadis_witness else "none"
    lines = [
        f"edges: {edges}",
        f"derived sets: {a.n_g}",
        f"nest: {_yesno(a.nest_ok)}",
        f"athanasiadis: {witness}",
        f"pairwise: {_yesno(a.pairwise_ok)}",
        f"free: {_yesno(a.free)}",
    ]
    return "\n".join(lines), a.to_json()


def _cmd_survey(req: AnalysisRequest) -> tuple[str, dict]:
    report = survey(req.ell)
    lines = [
        f"K_{report.ell}: {report.total} subgraphs, {report.free_count} free, "
        f"{len(report.violations)} violations"
    ]
    for record in report.records:
        if not record.analysis.free:
            edges = " ".join(f"({i},{j})" for i, j in record.analysis.graph.sorted_edges())
            lines.append(f"  not free: {edges or 'no edges'}")
    lines.extend(f"  VIOLATION: {v}" for v in report.violations)
    return "\n".join(lines), report.to_json()


_HANDLERS = {
    "charpoly": _cmd_charpoly,
    "freeness": _cmd_freeness,
    "basis": _cmd_basis,
    "saito": _cmd_saito,
    "supersolvable": _cmd_supersolvable,
    "chambers": _cmd_chambers,
    "wallcross": _cmd_wallcross,
    "graph": _cmd_graph,
    "survey": _cmd_survey,
}


def run(req: AnalysisRequest) -> str:
    """Execute a request and return the rendered report."""
    text, data = _HANDLERS[req.command](req)
    if req.output_format == "json":
        payload = {"command": req.command, "spec": request_echo(req)}
        payload.update(data)
        return json.dumps(payload, indent=2, sort_keys=True)
    return text


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="ishkit",
        description="Exact analysis of nested and deleted difference arrangements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--spec", help="spec file (defaults to stdin)")
        p.add_argument("--format", choices=("text", "json"), dest="fmt")
    args = parser.parse_args(argv)

    try:
        if args.spec:
            with open(args.spec, encoding="utf-8") as fh:
                raw = fh.read()
        else:
            raw = sys.stdin.read()
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ValueError(f"invalid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise ValueError("the request must be a JSON object")
        if "command" in doc and doc["command"] != args.command:
            raise ValueError(
                f"spec says command {doc['command']!r} but {args.command!r} was invoked"
            )
        doc["command"] = args.command
        if args.fmt:
            doc["format"] = args.fmt
        print(run(request_from_doc(doc)))
        return 0
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
