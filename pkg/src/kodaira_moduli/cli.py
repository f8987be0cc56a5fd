"""Command-line front end.

Every command reads JSON (``--input PATH``, ``--input -`` for stdin, or
``--json TEXT``) or plain flags, and writes a deterministic report.

Exit codes: 0 success, 2 malformed input or usage, 3 mathematical
precondition violated, 4 internal invariant breach.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from importlib import resources

import jsonschema
from referencing import Registry, Resource

from . import douady, fibres, graphspace, invariants
from .errors import InvariantBreach, PreconditionError
from .exactmath import rat_to_json
from .lattice import NeronSeveriLattice

EXIT_OK, EXIT_SCHEMA, EXIT_MATH, EXIT_INTERNAL = 0, 2, 3, 4

INPUT_COMMANDS = ("classify", "normalize", "strata", "fibres", "modify", "compare")


class SchemaError(ValueError):
    pass


def _load_schemas() -> Registry:
    registry = Registry()
    for entry in resources.files("kodaira_moduli").joinpath("schemas").iterdir():
        if entry.name.endswith(".json"):
            contents = json.loads(entry.read_text(encoding="utf-8"))
            registry = registry.with_resource(entry.name, Resource.from_contents(contents))
    return registry


_REGISTRY = None


def validate(doc, schema_name: str) -> None:
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = _load_schemas()
    schema = _REGISTRY.contents(schema_name)
    validator = jsonschema.Draft202012Validator(schema, registry=_REGISTRY)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
    if errors:
        err = errors[0]
        where = "/".join(str(p) for p in err.path) or "<root>"
        raise SchemaError(f"{schema_name}: at {where}: {err.message}")


def parse_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{source}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")


def _read_input(args) -> object:
    if args.json is not None:
        return parse_json(args.json, "--json")
    if args.input == "-":
        return parse_json(sys.stdin.read(), "<stdin>")
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read {args.input}: {exc.strerror}")
    return parse_json(text, args.input)


def _moduli_input(doc):
    validate(doc, "moduli.schema.json")
    lat = NeronSeveriLattice.from_json(doc["lattice"])
    ch = invariants.ChernData.from_json(doc["chern"])
    lat.check_vector(ch.c1)
    return lat, ch


# --- commands -------------------------------------------------------------


def cmd_classify(args, doc):
    lat, ch = _moduli_input(doc)
    return {
        "lattice": lat.to_json(),
        "chern": ch.to_json(),
        "report": invariants.classify(lat, ch).to_json(),
    }


def cmd_construct(args, doc):
    lat, ch = invariants.construct_example(args.n, args.r)
    return {
        "n": args.n,
        "lattice": lat.to_json(),
        "chern": ch.to_json(),
        "report": invariants.classify(lat, ch).to_json(),
    }


def cmd_normalize(args, doc):
    lat, ch = _moduli_input(doc)
    new, beta = invariants.normalize_rank2(lat, ch)
    return {
        "lattice": lat.to_json(),
        "chern": new.to_json(),
        "original": ch.to_json(),
        "twist": list(beta),
        "delta": rat_to_json(invariants.discriminant(lat, new)),
        "t": rat_to_json(invariants.t_invariant(lat, 2, new.c1)),
    }


def cmd_strata(args, doc):
    lat, ch = _moduli_input(doc)
    out = graphspace.graph_space(lat, ch).to_json()
    out["strata"] = [s.to_json() for s in graphspace.strata(lat, ch)]
    return out


def cmd_fibres(args, doc):
    lat, ch = _moduli_input(doc)
    delta = graphspace.rank2_delta(lat, ch)
    ks = [args.k] if args.k is not None else range(math.floor(2 * delta) + 1)
    branch = None if args.branch is None else args.branch == "yes"
    mults = [int(x) for x in args.mults.split(",")] if args.mults else None
    return {
        "delta": rat_to_json(delta),
        "spectral_genus": invariants.spectral_genus(lat, ch),
        "fibres": [
            dict(
                fibres.fibre_descriptor(lat, ch, k, branch, mults if k >= 2 else None).to_json(),
                bisection_genus=fibres.bisection_genus(lat, ch, k),
            )
            for k in ks
        ],
        "topology": fibres.topology_report(lat, ch).to_json(),
    }


def cmd_betti(args, doc):
    sb = douady.SurfaceBetti(tuple(int(x) for x in args.surface.split(",")))
    out = {"n": args.n, "surface": list(sb.b), "betti": douady.douady_betti(sb, args.n)}
    if args.n >= 1:
        out["pi1"] = douady.douady_pi1(args.torsion, args.n).to_json()
    return out


def _apply_step(rec, step):
    op = step["op"]
    if op == "allowable":
        return fibres.allowable_modification(rec, step["at"], step.get("h", 1))
    if op == "positive":
        return fibres.positive_modification(rec, step["at"], step.get("h", 1), step.get("jump", True))
    return fibres.double_dual(rec, step.get("at"))


def cmd_modify(args, doc):
    validate(doc, "modify.schema.json")
    lat = NeronSeveriLattice.from_json(doc["lattice"])
    rec = fibres.SheafRecord.from_json(lat, doc["record"])
    steps = [rec.to_json()]
    for step in doc["script"]:
        if step["op"] != "double_dual" and not isinstance(step.get("at"), str):
            raise SchemaError(f"step {step!r} needs a string 'at'")
        rec = _apply_step(rec, step)
        steps.append(rec.to_json())
    return {"lattice": lat.to_json(), "steps": steps, "record": rec.to_json()}


def catalog_row(n: int, r: int) -> dict:
    lat, ch = invariants.construct_example(n, r)
    rep = invariants.classify(lat, ch)
    if rep.dim != 2 * n or not rep.stably_irreducible:
        raise InvariantBreach(f"catalog row ({n}, {r}) failed its own construction")
    graph_base = graphspace.graph_space(lat, ch).label if r == 2 else ""
    note = ""
    if r == 2 and rep.delta == 0:
        note = "four points"
    elif r == 2 and rep.delta == Fraction(1, 4):
        note = "primary Kodaira surface"
    return {
        "n": n,
        "r": r,
        "gram": [list(row) for row in lat.gram],
        "c2": ch.c2,
        "delta": rep.delta,
        "t": rep.t,
        "dim": rep.dim,
        "stably_irreducible": rep.stably_irreducible,
        "graph_base": graph_base,
        "note": note,
    }


def catalog(max_n: int, max_r: int, jobs: int = 1) -> list[dict]:
    if max_n < 0 or max_r < 2:
        raise PreconditionError("catalog needs max_n >= 0 and max_r >= 2")
    grid = [(n, r) for n in range(max_n + 1) for r in range(2, max_r + 1)]
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            return list(pool.map(lambda nr: catalog_row(*nr), grid))
    return [catalog_row(n, r) for n, r in grid]


def cmd_catalog(args, doc):
    rows = catalog(args.max_n, args.max_r, args.jobs)
    return {"rows": [{k: rat_to_json(v) if isinstance(v, Fraction) else v for k, v in row.items()} for row in rows]}


def cmd_compare(args, doc):
    lat, ch = _moduli_input(doc)
    out = {
        "comparison": douady.compare_bases(lat, ch).to_json(),
        "douady2_census": douady.douady2_fibration_census(),
    }
    if graphspace.rank2_delta(lat, ch) == Fraction(1, 2):
        out["moduli_one_jump_fibre"] = fibres.fibre_descriptor(lat, ch, 1).to_json()
    return out


COMMANDS = {
    "classify": cmd_classify,
    "construct": cmd_construct,
    "normalize": cmd_normalize,
    "strata": cmd_strata,
    "fibres": cmd_fibres,
    "betti": cmd_betti,
    "modify": cmd_modify,
    "catalog": cmd_catalog,
    "compare": cmd_compare,
}


# --- rendering ------------------------------------------------------------


def _is_rat(obj) -> bool:
    return isinstance(obj, dict) and set(obj) == {"num", "den"}


def _scalar(obj) -> str:
    if _is_rat(obj):
        return obj["num"] if obj["den"] == "1" else f"{obj['num']}/{obj['den']}"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, list) and all(not isinstance(x, (dict, list)) for x in obj):
        return "(" + ", ".join(str(x) for x in obj) + ")"
    return str(obj) if not isinstance(obj, (dict, list)) else json.dumps(obj)


def _flatten(obj, prefix=""):
    if isinstance(obj, dict) and not _is_rat(obj):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, _scalar(obj)


def render_text(command: str, result: dict) -> str:
    if command == "betti":
        width = max(len(str(b)) for b in result["betti"])
        lines = [f"X^[{result['n']}] over surface {_scalar(result['surface'])}"]
        lines += [f"  b{j:<3d} {b:>{width}d}" for j, b in enumerate(result["betti"])]
        if "pi1" in result:
            lines.append(f"  pi1  {result['pi1']['text']}")
        return "\n".join(lines) + "\n"
    if command == "catalog":
        return _table(result["rows"])
    pairs = list(_flatten(result))
    width = max((len(k) for k, _ in pairs), default=0)
    return "".join(f"{k:<{width}}  {v}\n" for k, v in pairs)


CATALOG_COLUMNS = ("n", "r", "gram", "c2", "delta", "t", "dim", "stably_irreducible", "graph_base", "note")


def _cells(row: dict) -> list[str]:
    return [_scalar(row[c]).replace("(", "[").replace(")", "]") if c == "gram" else _scalar(row[c]) for c in CATALOG_COLUMNS]


def _table(rows) -> str:
    body = [list(CATALOG_COLUMNS)] + [_cells(r) for r in rows]
    widths = [max(len(line[i]) for line in body) for i in range(len(CATALOG_COLUMNS))]
    return "".join("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip() + "\n" for line in body)


def render_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CATALOG_COLUMNS)
    for row in rows:
        writer.writerow(
            [json.dumps(row["gram"]) if c == "gram" else _scalar(row[c]) for c in CATALOG_COLUMNS]
        )
    return buf.getvalue()


# --- entry point ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kodaira-moduli",
        description="Invariants of moduli of rank-2 sheaves on primary Kodaira surfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=("json", "text", "csv"), default="json")
        if name in INPUT_COMMANDS:
            src = p.add_mutually_exclusive_group(required=True)
            src.add_argument("--input", metavar="PATH", help="JSON file, or - for stdin")
            src.add_argument("--json", metavar="TEXT", help="inline JSON document")
        return p

    add("classify", "discriminant, t-invariant, dimension and verdicts")
    p = add("construct", "Chern data with a moduli space of dimension 2n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=2)
    add("normalize", "twist rank-2 data to the normal form c1^2 = -8t")
    add("strata", "graph space and its jump stratification")
    p = add("fibres", "fibres of the graph map per stratum")
    p.add_argument("--k", type=int, help="only this stratum")
    p.add_argument("--branch", choices=("yes", "no"), help="jump over a branch image (k = 1)")
    p.add_argument("--mults", help="jump multiplicities for k >= 2, e.g. 2,1")
    p = add("betti", "Betti numbers of the Douady space X^[n]")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--surface", default="1,3,4,3,1", help="b0,b1,b2,b3,b4")
    p.add_argument("--torsion", type=int, default=1, help="torsion order d of H1(X, Z)")
    add("modify", "run an elementary-modification script")
    p = add("catalog", "table of the dimension-2n examples")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--max-r", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    add("compare", "compare the graph-space base with Sym^n(B)")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_SCHEMA if exc.code else EXIT_OK

    if args.format == "csv" and args.command != "catalog":
        print("error: --format csv is only valid for catalog", file=stderr)
        return EXIT_SCHEMA
    try:
        doc = _read_input(args) if args.command in INPUT_COMMANDS else None
        result = COMMANDS[args.command](args, doc)
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=stderr)
        return EXIT_MATH
    except InvariantBreach as exc:
        print(f"internal invariant breach: {exc}", file=stderr)
        return EXIT_INTERNAL
    except (ValueError, KeyError, TypeError) as exc:
        print(f"input error: {exc}", file=stderr)
        return EXIT_SCHEMA

    if args.format == "json":
        stdout.write(json.dumps(result, indent=2) + "\n")
    elif args.format == "csv":
        stdout.write(render_csv(result["rows"]))
    else:
        stdout.write(render_text(args.command, result))
    return EXIT_OK


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
