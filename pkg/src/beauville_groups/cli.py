"""Command-line front end.

Exit codes: 0 success / verified, 1 verification failed or a negative answer
where a positive one was asked for, 2 invalid input.  ``--format json``
prints exactly one JSON document (keys sorted, so identical inputs give
identical bytes).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

import jsonschema

from . import beauville, grouptool, recipes, suzuki
from .beauville import BeauvilleStructure, StructureError, verify
from .ffield import (
    FieldError,
    Polynomial,
    dedekind_symbol,
    euler_symbol,
    field_of_order,
    is_irreducible,
    make_field,
    poly_classify,
    smallest_primitive_root,
)

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2

log = logging.getLogger("beauville_groups")


class InvalidInput(Exception):
    pass


def load_schema() -> dict:
    return json.loads(resources.files("beauville_groups").joinpath("schema.json").read_text())


def validate_document(doc: dict) -> None:
    jsonschema.validate(doc, load_schema())


# ---------------------------------------------------------------------------
# output


def _emit(doc: dict, args, text: str | None = None) -> None:
    if args.format == "json":
        out = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        out = (text if text is not None else _as_text(doc)) + "\n"
    if getattr(args, "output", None):
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)


def _as_text(doc: Any, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(doc, dict):
        lines = []
        for k, v in doc.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_as_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(doc, list):
        if all(not isinstance(v, (dict, list)) for v in doc):
            return pad + ", ".join(map(str, doc))
        return "\n".join(_as_text(v, indent) for v in doc)
    return f"{pad}{doc}"


def _report_text(report: beauville.VerificationReport) -> str:
    sr = report.strongly_real
    lines = [
        f"group            {report.group}",
        f"effort           {report.effort}",
        f"types            {report.types[0]} / {report.types[1]}",
        f"xyz = 1          {report.cond1}",
        f"hyperbolic       {report.cond2}",
        f"generation       {report.generation} ({report.generation_method})",
        f"condition (3)    {report.cond3} ({report.cond3_method})",
        f"strongly real    {sr.status if sr else 'not checked'}",
    ]
    if sr and sr.witness:
        w = sr.witness
        lines.append(f"  witness        M = {w.conjugator}, frobenius^{w.frobenius_power}, rotations {w.rotations}")
    for d in report.disagreements:
        lines.append(f"DISAGREEMENT     {d}")
    lines.append("PASS" if report.passed else "FAIL")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommands


def _field_from_args(args):
    if args.q is not None:
        return field_of_order(args.q, args.modulus)
    if args.p is None:
        raise InvalidInput("give --q or --p (with --e)")
    return make_field(args.p, args.e or 1, args.modulus)


def cmd_field(args) -> int:
    F = _field_from_args(args)
    doc: dict[str, Any] = {
        "kind": "field", "p": F.p, "e": F.e, "q": F.q,
        "modulus": str(F.modulus),
        "modulus_class": poly_classify(F.modulus) if F.e > 1 else "linear",
        "primitive_root": str(smallest_primitive_root(F)),
    }
    if args.element is not None:
        a = F(args.element)
        r = a.sqrt()
        doc["element"] = {
            "value": str(a),
            "code": a.code,
            "is_square": a.is_square(),
            "sqrt": None if r is None else str(r),
            "order": None if a.code == 0 else a.order(),
        }
    _emit(doc, args)
    return EXIT_OK


def cmd_symbol(args) -> int:
    p = args.p
    if p == 2:
        raise InvalidInput("the quadratic symbol needs an odd characteristic")
    g = Polynomial.parse(args.g, p)
    f = Polynomial.parse(args.f, p)
    if f.degree < 1 or not f.is_monic():
        raise InvalidInput("f must be monic and non-constant")
    value = dedekind_symbol(g, f)
    doc: dict[str, Any] = {"kind": "symbol", "p": p, "g": str(g), "f": str(f), "value": value}
    if is_irreducible(f):
        doc["euler_check"] = euler_symbol(g, f)
    _emit(doc, args)
    return EXIT_OK


def _verify_and_emit(structure: BeauvilleStructure, args, with_structure: bool) -> int:
    report = verify(structure, args.effort)
    if with_structure:
        doc = structure.to_json()
        doc["kind"] = "structure"
        doc["report"] = report.to_json()
    else:
        doc = report.to_json()
        doc["kind"] = "report"
    _emit(doc, args, _report_text(report) if args.format == "text" else None)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_construct(args) -> int:
    try:
        structure = recipes.construct(args.family, args.q, args.modulus)
    except recipes.RecipeError as exc:
        _emit({"kind": "error", "error": str(exc)}, args)
        return EXIT_FAIL
    return _verify_and_emit(structure, args, with_structure=True)


def cmd_verify(args) -> int:
    try:
        data = json.loads(Path(args.file).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read {args.file}: {exc}") from exc
    schema = load_schema()
    try:
        jsonschema.validate(data, {**schema["$defs"]["structure"], "$defs": schema["$defs"]})
    except jsonschema.ValidationError as exc:
        raise InvalidInput(f"schema violation: {exc.message}") from exc
    structure = BeauvilleStructure.from_json(data)
    return _verify_and_emit(structure, args, with_structure=False)


def _search_doc(name: str) -> tuple[dict, bool]:
    G = grouptool.named_group(name)
    res = grouptool.exhaustive_beauville_search(G)
    doc = {
        "kind": "search",
        "group": name,
        "order": G.order,
        "exists": res.exists,
        "certificate": "Beauville structure found" if res.exists else "no Beauville structure",
        "triple_classes": res.triple_classes,
        "sigma_sets": res.sigma_sets,
        "types": [list(t) for t in res.types],
    }
    if res.exists:
        doc["witness"] = [list(map(repr, t)) for t in res.structure]
    return doc, res.exists


def cmd_search(args) -> int:
    doc, exists = _search_doc(args.group)
    _emit(doc, args)
    return EXIT_OK if exists else EXIT_FAIL


def cmd_negative(args) -> int:
    doc, exists = _search_doc(args.group)
    _emit(doc, args)
    return EXIT_FAIL if exists else EXIT_OK


def cmd_table1(args) -> int:
    qs = [args.q] if args.q else list(recipes.TABLE1_PRIMES)
    rows = [recipes.table1_row(q).to_json() for q in qs]
    text = "\n".join(f"q={r['q']:>4}  d={r['g']}^{r['i']}={r['d']:<4} d^-1={r['d_inv']:<4} r={r['r']}" for r in rows)
    _emit({"kind": "table1", "rows": rows}, args, text)
    return EXIT_OK


def cmd_suzuki(args) -> int:
    if args.ree:
        data = suzuki.ree_order_data(args.e)
        _emit({"kind": "suzuki", "e": args.e, "family": "Ree", "order_data": data.to_json()}, args)
        return EXIT_OK
    data = suzuki.suzuki_order_data(args.e)
    doc: dict[str, Any] = {"kind": "suzuki", "e": args.e, "family": "Sz", "order_data": data.to_json()}
    if args.e > suzuki.SZ_CLOSURE_MAX_E:
        doc["note"] = f"closure of Sz({data.q}) is beyond the enumeration bound; order data only"
        _emit(doc, args)
        return EXIT_OK
    structure = suzuki.sz_find_structure(suzuki.SzContext(args.e))
    report = verify(structure, args.effort)
    sdoc = structure.to_json()
    doc["structure"] = sdoc
    doc["report"] = report.to_json()
    _emit(doc, args, _report_text(report) if args.format == "text" else None)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_examples(args) -> int:
    fixtures = recipes.golden_fixtures()
    if args.name:
        if args.name not in fixtures:
            raise InvalidInput(f"unknown fixture {args.name!r}; choose from {sorted(fixtures)}")
        structure = fixtures[args.name].structure()
        if args.verify:
            return _verify_and_emit(structure, args, with_structure=True)
        doc = structure.to_json()
        doc["kind"] = "structure"
        _emit(doc, args)
        return EXIT_OK
    listing = [{"name": f.name, "q": f.q, "family": f.family, "notes": f.notes} for f in fixtures.values()]
    _emit({"kind": "examples", "fixtures": listing}, args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beauville",
        description="Construct and certify Beauville structures on L2(q), SL2(q) and Sz(8).",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, effort=False):
        p.add_argument("--format", choices=["json", "text"], default="json")
        p.add_argument("--output", "-o", help="write the document here instead of stdout")
        if effort:
            p.add_argument("--effort", choices=["fast", "exhaustive"], default="fast")

    p = sub.add_parser("field", help="describe GF(q) and optionally one element")
    p.add_argument("--q", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--e", type=int)
    p.add_argument("--modulus", help='ascii polynomial, e.g. "t^2+1" (default: smallest primitive)')
    p.add_argument("--element", help='element as ascii polynomial in t, e.g. "t^2-t"')
    common(p)
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("symbol", help="quadratic symbol (g/f) over F_p by reciprocity")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--f", required=True)
    common(p)
    p.set_defaults(func=cmd_symbol)

    p = sub.add_parser("construct", help="build and verify a strongly real structure")
    p.add_argument("--family", choices=["psl2", "sl2"], required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--modulus")
    common(p, effort=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="verify a structure JSON file")
    p.add_argument("file")
    common(p, effort=True)
    p.set_defaults(func=cmd_verify)

    for name, func, helptext in (
        ("search", cmd_search, "exhaustive search for a structure on a small group"),
        ("negative", cmd_negative, "certify that a small group has no structure"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--group", required=True,
                       help="l2-2, l2-3, l2-4, l2-5 (= a5), sl2-3, sl2-5, metacyclic-P, cPxcP")
        common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("table1", help="primitive roots d with d - 1 + 1/d a square")
    p.add_argument("--q", type=int)
    common(p)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("suzuki", help="Sz(2^e) structure (e = 3) and order data; --ree for R(3^e)")
    p.add_argument("--e", type=int, default=3)
    p.add_argument("--ree", action="store_true")
    common(p, effort=True)
    p.set_defaults(func=cmd_suzuki)

    p = sub.add_parser("examples", help="list or emit the worked-example fixtures")
    p.add_argument("--name")
    p.add_argument("--verify", action="store_true")
    common(p, effort=True)
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InvalidInput, FieldError, StructureError, grouptool.GroupError,
            suzuki.SuzukiError, recipes.RecipeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
