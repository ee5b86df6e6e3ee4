"""Command-line interface.

Every subcommand builds a report dict, then prints it as JSON
(``--format json``) or as plain text. Exit codes: 0 when no check failed,
1 on a failed check or invalid input structure, 2 on usage errors
(bad flags, missing files), 3 on internal errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .category import (
    CategoryError,
    category_violations,
    check_monoid_laws_as_graph_morphisms,
    morphism_table,
    opposite_category,
    validate_category,
)
from .classification import (
    ClassificationError,
    bounded_test_universe,
    exhaustive_test_universe,
    pushout_classification,
    verify_pushout_universality,
)
from .colimit import (
    Span,
    check_colimits_isomorphic,
    colimit_cocones,
    counique,
    finite_cocompleteness,
    initial_objects,
    is_span,
    pushout_cocones,
)
from .graph import GraphError, sorted_ids
from .io import (
    FixtureError,
    bundled_categories,
    bundled_corpus_dir,
    category_to_json,
    classification_to_json,
    infomorphism_to_json,
    load_category,
    load_diagram,
    load_infomorphism,
    load_raw_category,
)
from .kif import (
    KifSyntaxError,
    build_standard_model,
    check_axiom_file,
    seeded_mutations,
)
from .kif.semantics import describe

SCHEMA = "iffcat.report/1"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _j(x):
    """JSON-safe rendering of identifiers and witnesses."""
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if isinstance(x, dict):
        return {str(_j(k)) if not isinstance(k, str) else k: _j(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_j(i) for i in x]
    if isinstance(x, (set, frozenset)):
        return [_j(i) for i in sorted_ids(x)]
    return describe(x)


def _name(c):
    return c.name or "category"


# --- subcommands --------------------------------------------------------------

def cmd_check_category(args):
    raw = load_raw_category(args.category)
    violations = category_violations(raw)
    out = {
        "category": raw.name,
        "objects": len(raw.graph.objects),
        "morphisms": len(raw.graph.morphisms),
        "valid": not violations,
        "violations": [{"kind": v.kind, "witness": _j(v.witness), "detail": v.detail}
                       for v in violations],
    }
    if not violations:
        c = validate_category(raw)
        out["monoidLaws"] = [{"law": k.law, "passed": k.passed}
                             for k in check_monoid_laws_as_graph_morphisms(c)]
    return out, not violations


def cmd_opposite(args):
    c = load_category(args.category)
    return {"category": _name(c), "opposite": category_to_json(opposite_category(c))}, True


def cmd_morphisms(args):
    c = load_category(args.category)
    return {"category": _name(c), "morphisms": _j(morphism_table(c))}, True


def cmd_initial(args):
    c = load_category(args.category)
    inits = initial_objects(c)
    return {
        "category": _name(c),
        "initial": list(inits),
        "counique": [{"initial": i, "object": o, "morphism": counique(c, i, o)}
                     for i in inits for o in c.objects],
    }, bool(inits)


def cmd_pushout(args):
    c = load_category(args.category)
    v, f1, f2 = args.span
    s = Span(v, f1, f2)
    if not is_span(c, s):
        raise CategoryError(f"({v}, {f1}, {f2}) is not a span of {_name(c)}")
    cocones = pushout_cocones(c, s)
    return {
        "category": _name(c),
        "span": {"vertex": v, "first": f1, "second": f2},
        "pushouts": [{"opvertex": p.opvertex, "opfirst": p.opfirst, "opsecond": p.opsecond}
                     for p in cocones],
        "objects": sorted_ids({p.opvertex for p in cocones}),
    }, bool(cocones)


def cmd_colimit(args):
    d = load_diagram(args.diagram)
    c = d.ambient
    cocones = colimit_cocones(c, d)
    report = check_colimits_isomorphic(c, d)
    return {
        "category": _name(c),
        "diagram": d.describe(),
        "colimits": [{"apex": g.apex, "components": _j(dict(sorted(g.components.items())))}
                     for g in cocones],
        "objects": list(report.colimits),
        "isomorphicColimits": report.passed,
    }, bool(cocones) and report.passed


def cmd_check_finitely_cocomplete(args):
    c = load_category(args.category)
    r = finite_cocompleteness(c)
    return {
        "category": _name(c),
        "finitelyCocomplete": bool(r),
        "initial": r.has_initial,
        "coequalizers": r.has_coequalizers,
        "pushouts": r.has_pushouts,
        "binaryCoproducts": r.has_binary_coproducts,
        "failures": [{"clause": k, "witness": _j(w)} for k, w in r.failures],
    }, bool(r)


def _model_refs(specs):
    refs = []
    for spec in specs:
        refs += [r for r in spec.split(",") if r]
    if not refs:
        raise UsageError("--model needs at least one category fixture")
    return refs


def _kif_report(report):
    out = report.as_dict()
    out["failures"] = [v.name for v in report.failures()]
    return out


def cmd_kif_check(args):
    cats = [load_category(r) for r in _model_refs(args.model)]
    model = build_standard_model(cats, isomorphism=args.isomorphism,
                                 graph_level=args.graph_level)
    path = Path(args.axioms)
    if not path.is_file():
        raise UsageError(f"axiom file {args.axioms!r} not found")
    report = check_axiom_file(model, path)
    out = {"model": [_name(c) for c in cats], "isomorphism": args.isomorphism}
    out.update(_kif_report(report))
    return out, report.ok


def cmd_corpus(args):
    cats = bundled_categories()
    model = build_standard_model(cats, isomorphism=args.isomorphism,
                                 graph_level=args.graph_level)
    files = ["corpus.kif"] + (["graph_level.kif"] if args.graph_level else [])
    out = {"model": [_name(c) for c in cats], "isomorphism": args.isomorphism, "files": []}
    ok = True
    for name in files:
        report = check_axiom_file(model, bundled_corpus_dir() / name)
        r = _kif_report(report)
        r["source"] = name
        out["files"].append(r)
        ok = ok and report.ok
    if args.mutations:
        muts = []
        for m in seeded_mutations(model, args.mutations, args.seed):
            report = check_axiom_file(m.model, bundled_corpus_dir() / "corpus.kif")
            falsified = [v for v in report.verdicts if v.status == "false"]
            muts.append({
                "kind": m.kind,
                "mutation": m.description,
                "detected": bool(falsified),
                "falsified": [v.name for v in falsified],
                "witness": falsified[0].as_dict()["witness"] if falsified else {},
            })
            ok = ok and bool(falsified)
        out["seed"] = args.seed
        out["mutations"] = muts
    return out, ok


def cmd_cls_pushout(args):
    f = load_infomorphism(args.left)
    g = load_infomorphism(args.right)
    po = pushout_classification(f, g)
    out = {
        "left": f.name,
        "right": g.name,
        "apex": classification_to_json(po.apex),
        "inj1": infomorphism_to_json(po.inj1),
        "inj2": infomorphism_to_json(po.inj2),
    }
    ok = True
    if args.verify:
        if args.universe == "exhaustive":
            cocones, bound = exhaustive_test_universe(po)
        else:
            cocones, bound = bounded_test_universe(po, seed=args.seed, n_random=args.random)
        r = verify_pushout_universality(po, cocones, bound)
        out["universality"] = {
            "bound": r.bound,
            "cocones": r.cocones,
            "rejected": r.rejected,
            "mediatorCounts": {str(n): r.mediator_counts.count(n)
                               for n in sorted(set(r.mediator_counts))},
            "passed": r.passed,
        }
        ok = r.passed
    return out, ok


# --- text rendering ----------------------------------------------------------------

def _yes(b):
    return "yes" if b else "no"


def _text(command, out, ok) -> str:
    lines = []
    if command == "check-category":
        lines.append(f"{out['category']}: {out['objects']} objects, {out['morphisms']} morphisms")
        lines.append("valid" if out["valid"] else f"invalid ({len(out['violations'])} violations)")
        for v in out["violations"]:
            lines.append(f"  {v['kind']} at {v['witness']}: {v['detail']}")
        for law in out.get("monoidLaws", []):
            lines.append(f"  {law['law']} as graph morphisms: {_yes(law['passed'])}")
    elif command == "opposite":
        lines.append(json.dumps(out["opposite"], indent=2))
    elif command == "morphisms":
        head = ("morphism", "source", "target", "mono", "epi", "bimorphism", "iso")
        rows = [[str(r["morphism"]), str(r["source"]), str(r["target"]),
                 *(_yes(r[k]) for k in head[3:])] for r in out["morphisms"]]
        widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
                  for i, h in enumerate(head)]
        lines.append("  ".join(h.ljust(w) for h, w in zip(head, widths)).rstrip())
        for r in rows:
            lines.append("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
    elif command == "initial":
        lines.append(f"initial objects of {out['category']}: "
                     + (", ".join(out["initial"]) or "none"))
        for e in out["counique"]:
            lines.append(f"  {e['initial']} -> {e['object']}: {e['morphism']}")
    elif command == "pushout":
        s = out["span"]
        lines.append(f"span {s['first']} <- {s['vertex']} -> {s['second']} in {out['category']}")
        if not out["pushouts"]:
            lines.append("no pushout")
        for p in out["pushouts"]:
            lines.append(f"  pushout {p['opvertex']} with injections {p['opfirst']}, {p['opsecond']}")
    elif command == "colimit":
        lines.append(f"diagram of shape {out['diagram']['shape']} in {out['category']}")
        if not out["colimits"]:
            lines.append("no colimit")
        for g in out["colimits"]:
            comps = ", ".join(f"{j}:{m}" for j, m in g["components"].items())
            lines.append(f"  colimit {g['apex']} {{{comps}}}")
        lines.append(f"colimits pairwise uniquely isomorphic: {_yes(out['isomorphicColimits'])}")
    elif command == "check-finitely-cocomplete":
        lines.append(f"{out['category']} finitely cocomplete: {_yes(out['finitelyCocomplete'])}")
        for k, label in (("initial", "initial object"), ("coequalizers", "coequalizers"),
                         ("pushouts", "pushouts"), ("binaryCoproducts", "binary coproducts")):
            lines.append(f"  {label}: {_yes(out[k])}")
        for f in out["failures"]:
            lines.append(f"  first {f['clause']} failure: {f['witness']}")
    elif command in ("kif-check", "corpus"):
        lines.append("model: " + ", ".join(out["model"]))
        for r in out.get("files", [out]):
            counts = r["counts"]
            lines.append(f"{r['source']}: {counts['true']} true, {counts['false']} false, "
                         f"{counts['error']} error, {counts['skipped-declaration']} declarations")
            for v in r["sentences"]:
                if v["status"] in ("false", "error"):
                    where = ", ".join(f"{k}={w}" for k, w in v["witness"].items())
                    lines.append(f"  {v['status'].upper()} {v['label'] or '#' + str(v['index'])}"
                                 f" (line {v['line']}) {where}{v['message']}")
        for m in out.get("mutations", []):
            verdict = "detected" if m["detected"] else "MISSED"
            lines.append(f"  mutation [{m['kind']}] {m['mutation']}: {verdict}"
                         + (f" by {m['falsified'][0]}" if m["falsified"] else ""))
    elif command == "cls-pushout":
        a = out["apex"]
        lines.append(f"pushout of {out['left']} and {out['right']}: {a['name']}")
        lines.append("  instances: " + " ".join(a["instances"]))
        lines.append("  types: " + " ".join(a["types"]))
        lines.append("  incidence: " + " ".join(f"{x}|={t}" for x, t in a["incidence"]))
        for key in ("inj1", "inj2"):
            inj = out[key]
            tm = ", ".join(f"{a}->{b}" for a, b in inj["typeMap"].items())
            im = ", ".join(f"{a}->{b}" for a, b in inj["instanceMap"].items())
            lines.append(f"  {key}: types {tm}; instances {im}")
        u = out.get("universality")
        if u:
            counts = ", ".join(f"{n} mediator(s) x{k}" for n, k in u["mediatorCounts"].items())
            lines.append(f"universality over {u['bound']}: {u['cocones']} cocones, "
                         f"mediator counts {counts}, passed: {_yes(u['passed'])}")
    lines.append("OK" if ok else "FAILED")
    return "\n".join(lines) + "\n"


# --- parser --------------------------------------------------------------------------

COMMANDS = {
    "check-category": (cmd_check_category, "validate a category fixture"),
    "opposite": (cmd_opposite, "print the opposite category"),
    "morphisms": (cmd_morphisms, "mono/epi/bimorphism/iso table"),
    "initial": (cmd_initial, "initial objects and their counique morphisms"),
    "pushout": (cmd_pushout, "pushout cocones of a span"),
    "colimit": (cmd_colimit, "colimits of a diagram"),
    "check-finitely-cocomplete": (cmd_check_finitely_cocomplete,
                                  "initial object, coequalizers, pushouts, coproducts"),
    "kif-check": (cmd_kif_check, "check an axiom file against fixture categories"),
    "cls-pushout": (cmd_cls_pushout, "pushout of two infomorphisms"),
    "corpus": (cmd_corpus, "run the bundled corpus over the bundled fixtures"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized parts (default 0)")
    parser = argparse.ArgumentParser(prog="iffcat", description="finite category engine")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    p = {}
    for name, (fn, help_) in COMMANDS.items():
        p[name] = sub.add_parser(name, help=help_, parents=[common])
        p[name].set_defaults(handler=fn)
    for name in ("check-category", "opposite", "morphisms", "initial", "pushout",
                 "check-finitely-cocomplete"):
        p[name].add_argument("category", help="category fixture (path or bundled name)")
    p["pushout"].add_argument("--span", nargs=3, required=True,
                              metavar=("VERTEX", "FIRST", "SECOND"))
    p["colimit"].add_argument("--diagram", required=True, help="diagram fixture")
    for name in ("kif-check", "corpus"):
        p[name].add_argument("--isomorphism", choices=("bimorphism", "invertible"),
                             default="bimorphism", help="reading of CAT$isomorphism")
        p[name].add_argument("--graph-level", action="store_true",
                             help="add graph and graph-morphism vocabulary")
    p["kif-check"].add_argument("--model", action="append", required=True,
                                help="comma-separated category fixtures (repeatable)")
    p["kif-check"].add_argument("axioms", help="axiom file")
    p["corpus"].add_argument("--mutations", type=int, default=0, metavar="N",
                             help="also check N seeded model mutations")
    p["cls-pushout"].add_argument("--left", required=True, help="infomorphism fixture")
    p["cls-pushout"].add_argument("--right", required=True, help="infomorphism fixture")
    p["cls-pushout"].add_argument("--verify", action="store_true",
                                  help="count mediators over a bounded test universe")
    p["cls-pushout"].add_argument("--universe", choices=("exhaustive", "random"),
                                  default="exhaustive",
                                  help="every apex <= 4x4 up to isomorphism, or small "
                                       "apexes plus seeded random ones")
    p["cls-pushout"].add_argument("--random", type=int, default=200, metavar="N",
                                  help="random apexes for --universe random (default 200)")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        out, ok = args.handler(args)
    except (UsageError, FixtureError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"iffcat: {exc}", file=stderr)
        return EXIT_USAGE
    except (CategoryError, GraphError, ClassificationError, KifSyntaxError,
            KeyError, ValueError) as exc:
        print(f"iffcat: invalid input: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_FAIL
    except Exception as exc:  # noqa: BLE001
        print(f"iffcat: internal error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_INTERNAL
    report = {"schema": SCHEMA, "command": args.command, "ok": ok}
    report.update(out)
    if args.format == "json":
        stdout.write(json.dumps(_j(report), indent=2) + "\n")
    else:
        stdout.write(_text(args.command, _j(report), ok))
    return EXIT_OK if ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
