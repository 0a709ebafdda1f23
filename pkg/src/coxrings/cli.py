"""Command line front end.

Every subcommand prints one JSON document (``--format json``, the default) or
a table (``tsv`` / ``table``). Output is canonical: sorted keys, sorted
representatives, so identical invocations give identical bytes.

Exit codes: 0 ok, 2 input error, 3 precondition failure, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from .abgroup import AbHom, FgAb, IntMatrix
from .errors import CoxError, InputError, InvariantViolation
from .families import (
    classify,
    extend_family,
    family_from_json,
    family_to_json,
    find_isomorphism,
    induce_quotient_family,
    is_torsor_algebra,
    validate_family,
)
from .toricdiv import (
    DivisorialPresentation,
    ToricPresentation,
    class_group,
    cox_piece_dimension,
    degree_window,
    divisorial_algebra_report,
    monomial_piece_dimension,
)
from .units import UnitGroup, ext1_units

SCHEMA_VERSION = 1


def _load(args) -> dict:
    if args.input is None:
        return {}
    try:
        if args.input == "-":
            return json.load(sys.stdin)
        with open(args.input) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {args.input}: {exc}") from None


def _group_arg(args, doc: dict, key: str = "group") -> FgAb:
    text = args.group or doc.get(key)
    if text is None:
        raise InputError(f"missing --{key}")
    return FgAb.from_literal(text)


def _units_arg(args, doc: dict) -> UnitGroup:
    text = args.units or doc.get("units")
    if text is None:
        raise InputError("missing --units")
    return UnitGroup.from_literal(text)


def _matrix(obj, rows: int, cols: int, what: str) -> IntMatrix:
    try:
        m = IntMatrix.from_rows(obj, cols) if rows else IntMatrix.zeros(0, cols)
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed {what} matrix: {exc}") from None
    if m.shape != (rows, cols):
        raise InputError(f"{what} must be a {rows}x{cols} matrix")
    return m


def _toric(doc: dict) -> ToricPresentation:
    if "rays" not in doc:
        raise InputError("toric input needs 'rays'")
    return ToricPresentation.from_json(doc)


def _presentation(doc: dict, t: ToricPresentation) -> DivisorialPresentation:
    if "lift" in doc:
        return DivisorialPresentation(t, tuple(tuple(d) for d in doc["lift"]))
    return DivisorialPresentation.standard(t)


# commands --------------------------------------------------------------------


def cmd_ext1(args, doc):
    g, u = _group_arg(args, doc), _units_arg(args, doc)
    e = ext1_units(g, u)
    return {
        "group": g.literal(),
        "units": u.literal(),
        "ext1": e.literal(),
        "order": e.order(),
        "invariant_factors": list(e.invariant_factors),
    }, None


def cmd_classify(args, doc):
    g, u = _group_arg(args, doc), _units_arg(args, doc)
    rep = classify(g, u)
    payload = {
        "grading": g.literal(),
        "units": u.literal(),
        "ext1": rep.ext1.literal(),
        "count": rep.count,
        "labels": [list(lab) for lab in rep.labels],
        "representatives": [family_to_json(f) for f in rep.representatives],
    }
    rows = [
        {"label": list(lab), "nontrivial_entries": len(family_to_json(f)["cocycle"])}
        for lab, f in zip(rep.labels, rep.representatives)
    ]
    return payload, rows


def _family_docs(doc: dict) -> list[dict]:
    for key in ("representatives", "families"):
        if key in doc:
            return list(doc[key])
    if "family" in doc:
        return [doc["family"]]
    return [doc]


def cmd_family_validate(args, doc):
    results = []
    for i, fd in enumerate(_family_docs(doc)):
        f = family_from_json(fd, check=False)
        bad = validate_family(f)
        results.append({"index": i, "violations": [str(v) for v in bad], "torsor": is_torsor_algebra(f)})
    payload = {"valid": all(not r["violations"] for r in results), "families": results}
    rows = [{"index": r["index"], "violations": len(r["violations"]), "torsor": r["torsor"]} for r in results]
    return payload, rows


def cmd_family_iso(args, doc):
    try:
        f, g = family_from_json(doc["f"]), family_from_json(doc["g"])
    except KeyError:
        raise InputError("family-iso input needs 'f' and 'g'") from None
    iso = find_isomorphism(f, g)
    payload: dict[str, Any] = {"isomorphic": iso is not None}
    if iso is not None:
        payload["mu"] = [{"g": list(k), "value": list(v)} for k, v in sorted(iso.mu.items())]
    return payload, None


def cmd_family_extend(args, doc):
    try:
        f = family_from_json(doc["family"])
        emb = doc["embedding"]
    except KeyError:
        raise InputError("family-extend input needs 'family' and 'embedding'") from None
    g = _group_arg(args, doc)
    alpha = AbHom(f.grading, g, _matrix(emb, g.num_generators, f.grading.num_generators, "embedding"))
    twist = doc.get("twist")
    ext = extend_family(f, alpha, None if twist is None else [tuple(t) for t in twist])
    return {"family": family_to_json(ext)}, None


def cmd_family_quotient(args, doc):
    try:
        f = family_from_json(doc["family"])
        sub = FgAb.from_literal(doc["subgroup"])
        emb = doc["embedding"]
    except KeyError:
        raise InputError("family-quotient input needs 'family', 'subgroup' and 'embedding'") from None
    G = f.grading
    alpha = AbHom(sub, G, _matrix(emb, G.num_generators, sub.num_generators, "embedding"))
    triv = {tuple(e["h"]): tuple(e["value"]) for e in doc.get("trivialization", [])}
    section = doc.get("section")
    if section is not None:
        section = {tuple(e["class"]): tuple(e["g"]) for e in section}
    q = induce_quotient_family(f, alpha, triv, section)
    return {"quotient": q.grading.literal(), "family": family_to_json(q)}, None


def cmd_toric_classgroup(args, doc):
    t = _toric(doc)
    cl, proj = class_group(t)
    classes = [list(proj(tuple(int(i == j) for i in range(t.num_rays)))) for j in range(t.num_rays)]
    payload = {"class_group": cl.literal(), "ray_classes": classes}
    rows = [{"ray": list(r), "class": c} for r, c in zip(t.rays, classes)]
    return payload, rows


def _parse_class(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise InputError(f"cannot parse class {text!r}") from None


def cmd_toric_coxdim(args, doc):
    t = _toric(doc)
    p = _presentation(doc, t)
    classes = [_parse_class(c) for c in (args.cls or [])] + [tuple(c) for c in doc.get("classes", [])]
    if not classes:
        raise InputError("give at least one --class")
    cl = t.class_group
    rows = []
    for c in classes:
        if len(c) != cl.num_coordinates:
            raise InputError(f"class {c} needs {cl.num_coordinates} coordinates for Cl = {cl.literal()}")
        rows.append({
            "class": list(cl.reduce(c)),
            "cox_dim": cox_piece_dimension(p, c),
            "monomial_dim": monomial_piece_dimension(t, c),
        })
    return {"class_group": cl.literal(), "dims": rows}, rows


def cmd_toric_report(args, doc):
    t = _toric(doc)
    p = _presentation(doc, t)
    window = doc.get("window") or degree_window(p.k0_rank, args.max_degree)
    report = divisorial_algebra_report(p, window)
    rows = [{"k": list(r.k), "class": list(r.cls), "dim": r.dim, "cox_dim": r.cox_dim} for r in report]
    agrees = all(r.dim == r.cox_dim for r in report)
    if not agrees:
        raise InvariantViolation("divisorial piece dimensions disagree with Cox piece dimensions")
    return {"class_group": t.class_group.literal(), "agrees": agrees, "pieces": rows}, rows


COMMANDS = {
    "ext1": cmd_ext1,
    "classify": cmd_classify,
    "family-validate": cmd_family_validate,
    "family-iso": cmd_family_iso,
    "family-extend": cmd_family_extend,
    "family-quotient": cmd_family_quotient,
    "toric-classgroup": cmd_toric_classgroup,
    "toric-coxdim": cmd_toric_coxdim,
    "toric-report": cmd_toric_report,
}


# output ----------------------------------------------------------------------


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(map(str, v))
    return str(v).lower() if isinstance(v, bool) else str(v)


def render(payload: dict, rows: list[dict] | None, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if rows is None:
        rows = [{"key": k, "value": v} for k, v in sorted(payload.items()) if not isinstance(v, (dict, list))]
    if not rows:
        return ""
    cols = list(rows[0])
    cells = [[_cell(r[c]) for c in cols] for r in rows]
    if fmt == "tsv":
        return "\n".join("\t".join(line) for line in [cols] + cells) + "\n"
    widths = [max(len(x) for x in col) for col in zip(cols, *cells)]
    fmt_line = lambda line: "  ".join(x.rjust(w) for x, w in zip(line, widths))  # noqa: E731
    return "\n".join([fmt_line(cols), fmt_line(["-" * w for w in widths])] + [fmt_line(c) for c in cells]) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coxrings", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--group", help='group literal "r;d1,d2,..."')
        sp.add_argument("--units", help='unit group literal "div", "div*r;d1,..." or "r;d1,..."')
        sp.add_argument("--in", dest="input", help="JSON input file ('-' for stdin)")
        sp.add_argument("--out", dest="output", help="write output here instead of stdout")
        sp.add_argument("--format", choices=("json", "tsv", "table"), default="json")
        if name == "toric-coxdim":
            sp.add_argument("--class", dest="cls", action="append", help="class coordinates, e.g. 2 or 1,3")
        if name == "toric-report":
            sp.add_argument("--max-degree", type=int, default=2)
    return parser


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Execute one request; returns ``(exit_status, text)``."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else 2), ""
    try:
        doc = _load(args)
        if not isinstance(doc, dict):
            raise InputError("JSON input must be an object")
        payload, rows = COMMANDS[args.command](args, doc)
    except CoxError as exc:
        return exc.exit_code, json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True) + "\n"
    except (KeyError, TypeError, ValueError) as exc:
        return 2, json.dumps({"error": "InputError", "message": str(exc)}, sort_keys=True) + "\n"
    except Exception as exc:  # noqa: BLE001
        return 4, json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True) + "\n"
    payload = {"schema_version": SCHEMA_VERSION, "command": args.command, **payload}
    return 0, render(payload, rows, args.format)


def main(argv: list[str] | None = None) -> int:
    status, text = run(argv)
    if status == 0:
        args = build_parser().parse_args(argv)
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
            return 0
        sys.stdout.write(text)
    else:
        sys.stderr.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
