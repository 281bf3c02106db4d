"""Command line entry point.

Exit status: 0 on success, 1 when a check finds a diff, violation or no
match, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys

from . import codes, constructions, enumerator, theorems
from .epr import check_sequence, epr, pr
from .errors import CapacityError, PatternSyntaxError, PreconditionError, UsageError
from .gf import field
from .pattern import builtin_catalog, catalog_match, enumerate_catalog, format_catalog, matches, parse_pattern
from .symmat import load_matrix, write_matrix

OK, FAIL, USAGE = 0, 1, 2


class Output:
    def __init__(self, args):
        self.json = args.json

    def emit(self, text, data):
        if self.json:
            sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
        elif text:
            print(text)


def _seed(args):
    if args.seed is None:
        args.seed = secrets.randbelow(2**32)
        print(f"seed={args.seed}", file=sys.stderr)
    return args.seed


# --- epr / pr / construct ----------------------------------------------------


def cmd_epr(args, out):
    B = load_matrix(args.file)
    s = epr(B, census=args.census)
    text = s
    data = {"q": B.spec.name, "n": B.n, "epr": s}
    if args.pr:
        p = pr(B)
        text += f"\nr0={p[0]} pr={p}"
        data["pr"] = p
    out.emit(text, data)
    return OK


def cmd_pr(args, out):
    B = load_matrix(args.file)
    p = pr(B)
    out.emit(p, {"q": B.spec.name, "n": B.n, "pr": p})
    return OK


def cmd_construct(args, out):
    B = constructions.construct(args.name, args.q, args.n, args.k)
    c = constructions.CONSTRUCTIONS[args.name]
    predicted = c.predict(args.q and field(args.q).q, B.n, args.k)
    text = write_matrix(B, comment=f"{args.name}, predicted epr {predicted}")
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    if args.json:
        out.emit(None, {"name": args.name, "q": B.spec.name, "n": B.n, "predicted": predicted, "rows": B.tolist()})
    elif not args.output:
        sys.stdout.write(text)
    return OK


# --- enumerate ---------------------------------------------------------------


def cmd_enumerate(args, out):
    kw = dict(
        prune=not args.no_prune,
        shards_count=args.shards,
        big=args.big,
        checkpoint=args.checkpoint,
        progress=args.progress,
    )
    if args.catalog:
        report = enumerator.verify_catalog(args.q, args.n, args.catalog, alphabet=args.alphabet, **kw)
    else:
        report = enumerator.attainable(args.q, args.n, args.alphabet, **kw)
    if args.witnesses:
        with open(args.witnesses, "w") as fh:
            json.dump({s: report.witnesses[s].tolist() for s in report.attained}, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        lines = [f"GF({report.q}) n={report.n}: {len(report.attained)} sequences"]
        lines += report.attained
        lines.append(f"visited {report.visited}, pruned {report.pruned}")
        if report.catalog:
            lines.append(f"catalog {report.catalog}: " + ("verified" if report.verified else "DIFF"))
            lines += [f"  missing {s}" for s in report.missing]
            lines += [f"  extra {s}" for s in report.extra]
        print("\n".join(lines))
    return OK if report.catalog is None or report.verified else FAIL


# --- pattern -----------------------------------------------------------------


def cmd_pattern_match(args, out):
    p = parse_pattern(args.pattern)
    s = check_sequence(args.sequence)
    ok = matches(p, s)
    out.emit("match" if ok else "no match", {"pattern": str(p), "sequence": s, "match": ok})
    return OK if ok else FAIL


def cmd_pattern_catalog(args, out):
    cat = builtin_catalog(args.name)
    data = {"name": cat.name, "q": cat.q, "alphabet": cat.alphabet, "min_n": cat.min_n}
    parts = []
    if args.list or args.n is None:
        data["forms"] = {f.label: str(f) for f in cat.forms}
        parts.append(format_catalog(cat).rstrip())
    if args.n is not None:
        seqs = sorted(enumerate_catalog(cat, args.n))
        data["n"] = args.n
        data["sequences"] = seqs
        parts.append("\n".join(seqs))
    out.emit("\n".join(parts), data)
    return OK


def cmd_pattern_classify(args, out):
    cat = builtin_catalog(args.catalog)
    s = check_sequence(args.sequence)
    ids = catalog_match(s, cat)
    out.emit(", ".join(ids) if ids else "not in catalog", {"sequence": s, "catalog": cat.name, "forms": ids})
    return OK if ids else FAIL


# --- check -------------------------------------------------------------------


def cmd_check_forbidden(args, out):
    s = check_sequence(args.sequence)
    p = field(args.q).p
    found = theorems.forbidden_scan(s, p)
    out.emit("\n".join(map(str, found)) or "no violations", {"sequence": s, "p": p, "violations": [str(v) for v in found]})
    return FAIL if found else OK


def cmd_check_structural(args, out):
    report = enumerator.attainable(args.q, args.n, args.alphabet, shards_count=args.shards, big=args.big)
    found = theorems.structural_audit(report.attained, report.q)
    rules = [name for name, _ in theorems.rules_for(report.q)]
    data = {
        "q": report.q,
        "n": report.n,
        "alphabet": report.alphabet,
        "rules": rules,
        "sequences_checked": len(report.attained),
        "violations": [str(v) for v in found],
    }
    text = f"{len(report.attained)} sequences, rules {', '.join(rules)}: {len(found)} violations"
    out.emit("\n".join([text] + [str(v) for v in found]), data)
    return FAIL if found else OK


def cmd_check_ramsey(args, out):
    cons, nxt = theorems.ramsey_constraints(args.prefix, args.q, args.n, with_blocked=True)
    data = {
        "prefix": args.prefix,
        "q": field(args.q).q,
        "n": args.n,
        "constraints": [
            {"position": c.position, "allowed": sorted(c.allowed), "provenance": list(c.provenance)} for c in cons
        ],
        "next_thresholds": [f"{what} needs n >= {t}" for what, t in nxt],
    }
    text = "\n".join(map(str, cons)) or "no constraints at this n"
    out.emit(text, data)
    return OK


def _colours(text):
    try:
        return {int(x) for x in text.split(",") if x.strip()}
    except ValueError:
        raise UsageError(f"--colours expects comma-separated integers, got {text!r}") from None


def cmd_check_mono(args, out):
    B = load_matrix(args.file)
    T = _colours(args.colours) if args.colours else set(int(x) for x in B.spec.nonzero())
    alpha = theorems.monochromatic_principal_submatrix(B, T, args.k)
    data = {"n": B.n, "k": args.k, "colours": sorted(T), "indices": None if alpha is None else list(alpha)}
    out.emit("none" if alpha is None else " ".join(str(i + 1) for i in alpha), data)
    return FAIL if alpha is None else OK


def cmd_check_triangle_free(args, out):
    r = theorems.triangle_free_order5_census()
    data = {"count": r["count"], "all_isomorphic_to_C5": r["all_isomorphic_to_C5"], "graphs": r["graphs"]}
    out.emit(f"{r['count']} labelled graphs, all C5: {r['all_isomorphic_to_C5']}", data)
    return OK if r["all_isomorphic_to_C5"] and r["count"] else FAIL


def cmd_check_audit(args, out):
    report = enumerator.attainable(args.q, args.n, args.alphabet, shards_count=args.shards, big=args.big)
    r = theorems.empirical_constraint_audit(args.q, args.n, args.prefix, report=report)
    lines = [
        f"{len(r['sequences'])} sequences with prefix {args.prefix}, {r['constraints_checked']} constraints checked",
        *r["constraints"],
        *[f"violation: {v}" for v in r["violations"]],
        *[f"not testable at capacity: {v}" for v in r["not_testable_at_capacity"]],
    ]
    out.emit("\n".join(lines), r)
    return FAIL if r["violations"] else OK


# --- code --------------------------------------------------------------------


def cmd_code_analyze(args, out):
    C = codes.load_generator(args.file)
    r = codes.analyze(C)
    lines = [f"[{r['n']}, {r['k']}] code over GF({r['q']})", f"min distance {r['min_distance']}, spark {r['spark']}"]
    if args.enumerator:
        lines.append("weights " + " ".join(f"A{j}={a}" for j, a in enumerate(r["weights"]) if a))
    if args.bound:
        lines.append(f"epr(H^T H) = {r['epr_gram']}, bound {r['bound']}" + (" (tight)" if r["tight"] else ""))
    out.emit("\n".join(lines), r)
    ok = r["bound_holds"] and not r["per_weight_exceptions"] and r["spark"] == r["min_distance"]
    return OK if ok else FAIL


def cmd_code_audit(args, out):
    seed = _seed(args)
    r = codes.q_ceiling_audit(args.q, args.samples, seed, max_n=args.max_n, max_k=args.max_k)
    failed = {k: len(v) for k, v in r["failures"].items()}
    text = (
        f"GF({r['q']}), {r['samples']} codes, seed {seed}: "
        + ("all checks passed" if r["ok"] else f"failures {failed}")
        + f"\nbound counts {r['bound_counts']}\ngap counts {r['gap_counts']}"
    )
    out.emit(text, r)
    return OK if r["ok"] else FAIL


# --- parser ------------------------------------------------------------------


def _global_flags(sub):
    """Global flags, accepted before or after the subcommand."""
    p = argparse.ArgumentParser(add_help=False)
    d = argparse.SUPPRESS if sub else None
    p.add_argument("--json", action="store_true", default=d if sub else False, help="machine-readable report")
    p.add_argument("--seed", type=int, default=d, help="seed for randomized commands")
    p.add_argument("--shards", type=int, default=d, help="worker threads (results do not depend on it)")
    p.add_argument("--big", action="store_true", default=d if sub else False, help="raise enumeration limits")
    return p


def build_parser():
    common = _global_flags(True)
    parser = argparse.ArgumentParser(prog="eprseq", description=__doc__.splitlines()[0], parents=[_global_flags(False)])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(subparsers, name, func, help_text):
        p = subparsers.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add(sub, "epr", cmd_epr, "epr-sequence of a matrix file")
    p.add_argument("file")
    p.add_argument("--pr", action="store_true", help="also print the pr-sequence")
    p.add_argument("--census", action="store_true", help="compute every minor, no shortcuts")

    p = add(sub, "pr", cmd_pr, "pr-sequence of a matrix file")
    p.add_argument("file")

    p = add(sub, "construct", cmd_construct, "write a named matrix")
    p.add_argument("name", choices=sorted(constructions.CONSTRUCTIONS))
    p.add_argument("--q")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("-o", "--output")

    p = add(sub, "enumerate", cmd_enumerate, "attainable epr-sequences at order n")
    p.add_argument("--q", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alphabet", choices=["AN", "ASN"])
    p.add_argument("--catalog", choices=["f2", "f3"])
    p.add_argument("--witnesses", help="write one witness matrix per sequence as JSON")
    p.add_argument("--no-prune", action="store_true", help="disable symmetry pruning")
    p.add_argument("--checkpoint", help="resumable state file")
    p.add_argument("--progress", action="store_true")

    pat = add(sub, "pattern", None, "sequence forms and catalogs")
    psub = pat.add_subparsers(dest="pattern_command", required=True)
    p = add(psub, "match", cmd_pattern_match, "does a sequence match a form")
    p.add_argument("pattern")
    p.add_argument("sequence")
    p = add(psub, "catalog", cmd_pattern_catalog, "show a built-in catalog")
    p.add_argument("name", choices=["f2", "f3"])
    p.add_argument("--n", type=int, help="list the catalog's sequences of length n")
    p.add_argument("--list", action="store_true", help="list the forms")
    p = add(psub, "classify", cmd_pattern_classify, "catalog forms matching a sequence")
    p.add_argument("sequence")
    p.add_argument("--catalog", choices=["f2", "f3"], required=True)

    chk = add(sub, "check", None, "structural checks")
    csub = chk.add_subparsers(dest="check_command", required=True)
    p = add(csub, "forbidden", cmd_check_forbidden, "scan one sequence for forbidden patterns")
    p.add_argument("sequence")
    p.add_argument("--q", required=True, help="field (only its characteristic matters)")
    p = add(csub, "structural", cmd_check_structural, "audit every attained sequence at (q, n)")
    p.add_argument("--q", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alphabet", choices=["AN", "ASN"])
    p = add(csub, "ramsey", cmd_check_ramsey, "constraints forced by Ramsey thresholds")
    p.add_argument("--prefix", choices=["N", "NA", "AN"], required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--n", type=int, required=True)
    p = add(csub, "mono", cmd_check_mono, "monochromatic principal submatrix search")
    p.add_argument("file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--colours", help="comma-separated allowed off-diagonal values (default: nonzero)")
    add(csub, "triangle-free", cmd_check_triangle_free, "order-5 graphs with G and complement triangle-free")
    p = add(csub, "audit", cmd_check_audit, "Ramsey constraints against the enumerator")
    p.add_argument("--q", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prefix", choices=["N", "NA", "AN"], required=True)
    p.add_argument("--alphabet", choices=["AN", "ASN"])

    cd = add(sub, "code", None, "linear codes")
    dsub = cd.add_subparsers(dest="code_command", required=True)
    p = add(dsub, "analyze", cmd_code_analyze, "distance, spark and epr bound of a code")
    p.add_argument("file")
    p.add_argument("--enumerator", action="store_true", help="print the weight enumerator")
    p.add_argument("--bound", action="store_true", help="print the epr(H^T H) bound")
    p = add(dsub, "audit", cmd_code_audit, "random codes against the distance bounds")
    p.add_argument("--q", required=True, choices=["2", "3"])
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--max-k", type=int, default=6)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("json", False), ("seed", None), ("shards", None), ("big", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args, Output(args))
    except (UsageError, CapacityError, PreconditionError, PatternSyntaxError, OSError) as exc:
        print(f"eprseq: error: {exc}", file=sys.stderr)
        return USAGE


def run():
    sys.exit(main())
