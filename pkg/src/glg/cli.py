"""Command line interface: ``glg <command> ...``.

Exit codes: 0 valid / realizable / verified, 1 invalid / not realizable /
rejected, 2 unknown, 3 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import corpus
from .enumeration import census
from .exactmath import QQ, Field
from .formats import ParseError, format_expr, parse_algebra, parse_grading, serialize_grading
from .grading import FusionTable, GradingError, InvalidPartition, coarsen, fusion_table, is_refinement
from .liealg import center, derived_ideal, is_graded_subspace
from .realize import (
    ABELIAN_SEMIGROUP,
    MODES,
    MalformedCertificate,
    Status,
    outcome_from_json,
    outcome_to_json,
    realize,
    verify_certificate,
)
from .realize.certificates import parse_relation

EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 3

REPORT_KEYS = ("status", "mode", "fusion_table", "certificate", "witness", "counts", "bounds", "details")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_field(text: str) -> Field:
    t = text.strip().replace(" ", "").upper()
    if t in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"GF\(?(\d+)\)?", t)
    if not m:
        raise UsageError(f"unknown field {text!r}; use Q or gf<p>")
    try:
        return Field(int(m.group(1)))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def report(status, mode=None, fusion=None, certificate=None, witness=None,
           counts=None, bounds=None, details=None) -> dict:
    values = dict(status=status, mode=mode, fusion_table=fusion, certificate=certificate,
                  witness=witness, counts=counts, bounds=bounds, details=details)
    return {k: values[k] for k in REPORT_KEYS}


def table_to_json(table: FusionTable) -> dict:
    return {"labels": list(table.labels), "relations": [str(r) for r in table.relations()]}


def table_from_json(d) -> FusionTable:
    try:
        rels = [parse_relation(r) for r in d["relations"]]
        return FusionTable(d["labels"], {r.left: r.right for r in rels})
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedCertificate(f"bad fusion table: {exc}") from exc


# -- input -----------------------------------------------------------------

def _read(path):
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _located(path, exc: ParseError):
    where = path
    if exc.line is not None:
        where += f":{exc.line}" + (f":{exc.column}" if exc.column is not None else "")
    return UsageError(f"{where}: {exc.message}")


def load_inputs(args, need_grading=True):
    """(algebra, grading or None, name) from ``--builtin`` or files."""
    if args.builtin:
        if args.algebra or args.grading:
            raise UsageError("--builtin cannot be combined with --algebra/--grading")
        field = parse_field(args.field) if args.field else QQ
        try:
            ex = corpus.builtin(args.builtin, field)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        return ex.algebra, ex.grading, ex.name
    if not args.algebra:
        raise UsageError("give --builtin NAME or --algebra FILE")
    if args.field:
        raise UsageError("--field applies to --builtin; algebra files declare their field")
    try:
        alg = parse_algebra(_read(args.algebra))
    except ParseError as exc:
        raise _located(args.algebra, exc) from None
    grading = None
    if args.grading:
        try:
            grading = parse_grading(_read(args.grading), alg)
        except ParseError as exc:
            raise _located(args.grading, exc) from None
    elif need_grading:
        raise UsageError("--grading FILE is required")
    return alg, grading, None


# -- commands --------------------------------------------------------------

def _parts_json(grading):
    alg = grading.algebra
    return {label: [format_expr(alg, row) for row in s.basis] for label, s in grading.items}


def cmd_validate(args, alg, grading):
    table = fusion_table(grading)
    return report("valid", fusion=table_to_json(table),
                  details={"field": str(alg.field), "dimension": alg.dim, "parts": _parts_json(grading)})


def cmd_fusion(args, alg, grading):
    return report("valid", fusion=table_to_json(fusion_table(grading)))


def _limits(args):
    limits = {}
    if args.max_word_len is not None:
        limits["max_word_len"] = args.max_word_len
    if args.max_model_size is not None:
        limits["max_model_size"] = args.max_model_size
    if args.max_pairs is not None:
        limits["max_pairs"] = args.max_pairs
    if args.max_nodes is not None:
        limits["max_nodes"] = args.max_nodes
    return limits


def cmd_realize(args, alg, grading):
    table = fusion_table(grading)
    limits = _limits(args) if args.mode == "semigroup" else {}
    outcome = realize(table, args.mode, **limits)
    d = outcome_to_json(outcome)
    return report(d["status"], d["mode"], table_to_json(table), d["certificate"], d["witness"],
                  bounds=d["bounds"])


def cmd_coarsen(args, alg, grading):
    blocks = [b.split("+") for b in args.merge.split(",") if b.strip()]
    blocks = [[g.strip() for g in b] for b in blocks]
    try:
        coarse = coarsen(grading, blocks)
    except InvalidPartition as exc:
        raise UsageError(str(exc)) from None
    return report("valid", fusion=table_to_json(fusion_table(coarse)),
                  details={"parts": _parts_json(coarse), "is_refinement": is_refinement(grading, coarse),
                           "grading": serialize_grading(coarse).splitlines()})


def cmd_derived(args, alg, grading):
    d = derived_ideal(alg)
    z = center(alg)
    details = {
        "derived_ideal": [format_expr(alg, r) for r in d.basis],
        "derived_dimension": d.rank,
        "center": [format_expr(alg, r) for r in z.basis],
        "center_dimension": z.rank,
        "graded": None if grading is None else is_graded_subspace(d, grading),
    }
    return report("valid", details=details)


def cmd_examples(args):
    items = []
    for name in corpus.NAMES:
        ex = corpus.builtin(name)
        items.append({"name": name, "description": ex.description, "dimension": ex.algebra.dim,
                      "parts": len(ex.grading), "expected": ex.expected[name]})
    return report("ok", details={"examples": items})


def cmd_census(args):
    field = parse_field(args.field or "gf2")
    if field.characteristic == 0:
        raise UsageError("census needs a finite field (gf2 or gf3)")
    try:
        rep = census(field, args.dim, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return report("confirmed" if rep.confirmed else "failed", ABELIAN_SEMIGROUP, counts=rep.counts(),
                  details={"field": rep.field, "dimension": rep.dimension, "failures": rep.failures})


def cmd_verify(args):
    try:
        data = json.loads(_read(args.report))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.report}: not JSON ({exc.msg})") from None
    if not isinstance(data, dict) or "fusion_table" not in data:
        raise UsageError("not a realize report")
    try:
        claimed = table_from_json(data["fusion_table"])
        outcome = outcome_from_json(data)
    except MalformedCertificate as exc:
        raise UsageError(f"malformed report: {exc}") from None
    table = claimed
    if args.builtin or args.algebra:
        alg, grading, _ = load_inputs(args)
        table = fusion_table(grading)
        if table != claimed:
            return report("rejected", outcome.mode, table_to_json(table),
                          details={"reason": "report is for a different fusion table"})
    if outcome.status is Status.UNKNOWN:
        return report("rejected", outcome.mode, table_to_json(table),
                      details={"reason": "an unknown outcome carries nothing to verify"})
    try:
        ok = verify_certificate(table, outcome)
    except MalformedCertificate as exc:
        raise UsageError(f"malformed report: {exc}") from None
    return report("verified" if ok else "rejected", outcome.mode, table_to_json(table),
                  details={"claimed_status": outcome.status.value})


# -- rendering -------------------------------------------------------------

def _grid(table: FusionTable) -> list[str]:
    labels = table.labels
    w = max(len(g) for g in labels)
    rows = [" " * w + " | " + " ".join(g.ljust(w) for g in labels)]
    rows.append("-" * len(rows[0]))
    for a in labels:
        cells = [table.products.get((a, b), ".").ljust(w) for b in labels]
        rows.append(a.ljust(w) + " | " + " ".join(cells))
    return [r.rstrip() for r in rows]


def render_text(command, rep, outcome=None) -> str:
    out = []
    if rep["fusion_table"] is not None:
        table = table_from_json(rep["fusion_table"])
        out.append("fusion table: " + table.format())
        if command == "fusion":
            out += _grid(table)
    if rep["mode"] is not None and command != "census":
        out.append(f"mode: {rep['mode']}")
    out.append(f"status: {rep['status']}")
    cert, wit = rep["certificate"], rep["witness"]
    if cert is not None:
        out.append("certificate:")
        out += ["  " + line for line in cert["text"]]
        if cert["kind"] == "derivation":
            out.append("steps:")
            out += ["  " + line for line in _step_lines(cert)]
    if wit is not None:
        out += _witness_text(wit)
    if rep["bounds"] is not None:
        out.append("search bounds exhausted without a decision:")
        out += [f"  {k} = {v}" for k, v in rep["bounds"].items()]
    if rep["counts"] is not None:
        out += [f"{k}: {v}" for k, v in rep["counts"].items()]
    details = rep["details"] or {}
    for key, value in details.items():
        if key == "parts":
            out.append("parts:")
            out += [f"  {g} = {', '.join(v)}" for g, v in value.items()]
        elif key == "examples":
            for ex in value:
                exp = ", ".join(f"{m} {s}" for m, s in ex["expected"].items())
                out.append(f"{ex['name']}: {ex['description']} (dim {ex['dimension']}, "
                           f"{ex['parts']} parts; {exp})")
        elif key in ("grading", "failures"):
            if value or key == "grading":
                out.append(f"{key}:")
                out += ["  " + v for v in value]
        elif isinstance(value, list):
            out.append(f"{key.replace('_', ' ')}: " + ("span{" + ", ".join(value) + "}" if value else "0"))
        elif value is not None:
            out.append(f"{key.replace('_', ' ')}: {value}")
    return "\n".join(out)


def _step_lines(cert) -> list[str]:
    def one(s):
        ctx = [c for c in (s["left"], s["right"]) if c != "1"]
        where = f" times {' and '.join(ctx)}" if ctx else ""
        return f"{s['word']}  ({s['by']}, {s['direction']}{where})"

    out = []
    for k, lem in enumerate(cert["lemmas"], 1):
        out.append(f"lemma {k}, from {lem['lhs']}:")
        out += ["  " + one(s) for s in lem["steps"]]
    out.append(f"main chain, from {cert['pair'][0]}:")
    out += ["  " + one(s) for s in cert["steps"]]
    return out


def _witness_text(w) -> list[str]:
    if w["kind"] == "group":
        out = [f"group: {w['group']}"]
        out += [f"  {g} -> ({', '.join(map(str, v))})" for g, v in w["assignment"].items()]
        return out
    if w["kind"] == "model":
        carrier = w["carrier"]
        width = max(len(c) for c in carrier)
        out = [f"model on {len(carrier)} elements:", "  " + " " * width + " | " + " ".join(c.ljust(width) for c in carrier)]
        out += ["  " + a.ljust(width) + " | " + " ".join(c.ljust(width) for c in row)
                for a, row in zip(carrier, w["table"])]
        return [line.rstrip() for line in out]
    out = ["confluent presentation of the universal quotient:"]
    out += [f"  {l} -> {r}" for l, r in w["rules"]]
    out.append("normal forms: " + ", ".join(f"{g} -> {v}" for g, v in w["normal_forms"].items()))
    return out


# -- main ------------------------------------------------------------------

def _input_options(p, required=True):
    p.add_argument("--builtin", metavar="NAME", help=f"one of: {', '.join(corpus.NAMES)}")
    p.add_argument("--algebra", metavar="FILE", help="algebra file ('-' for stdin)")
    p.add_argument("--grading", metavar="FILE", help="grading file")
    p.add_argument("--field", help="field for --builtin (Q, gf2, gf3, ...; default Q)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="glg", description="Gradings of Lie algebras and their realization by semigroups.")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
        return p

    for name, help in (("validate", "check that a decomposition is a grading"),
                       ("fusion", "print the fusion table of a grading"),
                       ("derived", "derived ideal and center; gradedness of the derived ideal")):
        _input_options(add(name, help))
    p = add("realize", "decide realizability of the fusion table")
    _input_options(p)
    p.add_argument("--mode", choices=MODES, default=ABELIAN_SEMIGROUP)
    p.add_argument("--max-word-len", type=int)
    p.add_argument("--max-model-size", type=int)
    p.add_argument("--max-pairs", type=int)
    p.add_argument("--max-nodes", type=int)
    p = add("coarsen", "merge parts of a grading")
    _input_options(p)
    p.add_argument("--merge", required=True, metavar="L1+L2,...", help="blocks of labels to merge")
    p = add("census", "check every grading of every small Lie algebra over GF(p)")
    p.add_argument("--field", default="gf2")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    add("examples", "list the built-in examples")
    p = add("verify", "replay the certificate or witness in a JSON realize report")
    p.add_argument("report", help="report file ('-' for stdin)")
    _input_options(p)
    return parser


_STATUS_EXIT = {
    "valid": EXIT_OK, "ok": EXIT_OK, "confirmed": EXIT_OK, "verified": EXIT_OK,
    Status.REALIZABLE.value: EXIT_OK,
    "invalid": EXIT_NO, "failed": EXIT_NO, "rejected": EXIT_NO,
    Status.NOT_REALIZABLE.value: EXIT_NO,
    Status.UNKNOWN.value: EXIT_UNKNOWN,
}

_WITH_INPUT = {"validate": cmd_validate, "fusion": cmd_fusion, "realize": cmd_realize,
               "coarsen": cmd_coarsen, "derived": cmd_derived}


def run(argv=None) -> tuple[int, dict | None, str]:
    """Execute a command; returns (exit code, report, rendered output)."""
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required (try --help)")
        if args.command in _WITH_INPUT:
            try:
                alg, grading, _ = load_inputs(args, need_grading=args.command != "derived")
                rep = _WITH_INPUT[args.command](args, alg, grading)
            except GradingError as exc:
                rep = report("invalid", details={"error": f"{type(exc).__name__}: {exc}"})
        elif args.command == "census":
            rep = cmd_census(args)
        elif args.command == "examples":
            rep = cmd_examples(args)
        else:
            rep = cmd_verify(args)
    except UsageError as exc:
        return EXIT_USAGE, None, f"glg: error: {exc}"
    if args.format == "json":
        text = json.dumps(rep, indent=2)
    else:
        text = render_text(args.command, rep)
    return _STATUS_EXIT[rep["status"]], rep, text


def main(argv=None) -> int:
    try:
        code, _, text = run(argv)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    print(text, file=sys.stderr if code == EXIT_USAGE else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
