"""Command-line front end: ``fermatsg <command> --weights p0,p1,p2 ...``.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from typing import List, Optional

from . import collection, homalg, resolution, selftest
from .fields import FieldSpec
from .grading import GradeElement, Weight, WeightError, normalize
from .resolution import _tex_grade

FORMATS = ("json", "csv", "tex", "dot")


SCHEMAS = {
    "resolve": "resolve",
    "ext": "ext",
    "table": "table",
    "verify-collection": "verify_collection",
    "compare": "compare",
    "euler": "euler",
    "reduce-class": "reduce_class",
    "selftest": "selftest",
}


def load_schema(name: str) -> dict:
    """The JSON schema shipped for a command (or ``"category"``)."""
    fname = SCHEMAS.get(name, name)
    return json.loads((resources.files("fermatsg") / "schemas" / (fname + ".json")).read_text())


class UsageError(Exception):
    pass


def _parse_weights(text: str) -> Weight:
    try:
        parts = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"weights must be three integers, got {text!r}") from None
    if len(parts) != 3:
        raise UsageError(f"weights must be three integers, got {text!r}")
    try:
        return Weight(*parts)
    except WeightError as e:
        raise UsageError(str(e)) from None


def _parse_twist(text: Optional[str], w: Weight) -> GradeElement:
    if text is None:
        return w.zero
    try:
        parts = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"twists are raw quadruples a,b,c,m, got {text!r}") from None
    if len(parts) != 4:
        raise UsageError(f"twists are raw quadruples a,b,c,m, got {text!r}")
    return normalize(parts, w)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--weights", help="p0,p1,p2 (selftest: default runs all test weights)")
    common.add_argument("--field", default=None, help="QQ or a prime q (default: $FERMATSG_FIELD or QQ)")
    common.add_argument("--stages", type=int, default=homalg.DEFAULT_MAX_STAGE, help="maximal resolution stage")
    common.add_argument("--window", type=int, default=homalg.DEFAULT_WINDOW, help="phi-window multiplier (>= 1)")
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--out", default=None, help="write the result into this directory")

    p = argparse.ArgumentParser(prog="fermatsg", description="Exact homological checks over graded Fermat algebras.")
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("resolve", parents=[common], help="the periodic resolution of k(n)")
    r.add_argument("--twist", help="a,b,c,m (default 0)")
    e = sub.add_parser("ext", parents=[common], help="dim Ext^i(k(m), k(n)) for i <= stages")
    e.add_argument("--source", help="a,b,c,m (default 0)")
    e.add_argument("--target", help="a,b,c,m (default 0)")
    t = sub.add_parser("table", parents=[common], help="Ext table on the index set")
    t.add_argument("--degrees", type=int, default=3, help="highest degree written (default 3)")
    sub.add_parser("verify-collection", parents=[common], help="exceptionality and membership checks")
    sub.add_parser("compare", parents=[common], help="comparison with the triple tensor category")
    sub.add_parser("euler", parents=[common], help="Gram matrix and Kronecker check")
    rc = sub.add_parser("reduce-class", parents=[common], help="K0 class of k(m) over the index set")
    rc.add_argument("--twist", required=True, help="a,b,c,m")
    st = sub.add_parser("selftest", parents=[common], help="run the acceptance criteria")
    st.add_argument("--criteria", default=None, help="comma-separated criterion numbers (default all)")
    st.add_argument("--seed", type=int, default=selftest.DEFAULT_SEED)
    st.add_argument("--timings", action="store_true", help="include wall-clock times in the report")
    return p


def _need_weight(args) -> Weight:
    if not args.weights:
        raise UsageError("--weights is required")
    return _parse_weights(args.weights)


def _unsupported(args):
    raise UsageError(f"format {args.format!r} is not available for {args.command}")


# --- commands: each returns (text, ok) ---------------------------------

def cmd_resolve(args, field):
    w = _need_weight(args)
    n = _parse_twist(args.twist, w)
    res = resolution.PeriodicResolution(w, n, field)
    bad = resolution.composition_failures(res, args.stages)
    if args.format == "json":
        out = res.to_json(args.stages)
        out["composition_failures"] = bad
        out["verdict"] = "PASS" if not bad else "FAIL"
        return _dump(out), not bad
    if args.format == "tex":
        return res.to_tex(args.stages), not bad
    if args.format == "dot":
        return res.complex(args.stages).to_dot() + "\n", not bad
    _unsupported(args)


def cmd_ext(args, field):
    w = _need_weight(args)
    m = _parse_twist(args.source, w)
    n = _parse_twist(args.target, w)
    res = resolution.PeriodicResolution(w, m, field)
    dims = homalg.ext_dims(m, n, args.stages)
    oracle = [homalg.ext_dim_oracle(m, n, i, field, res) for i in range(args.stages + 1)]
    ok = dims == oracle
    if args.format == "json":
        return _dump({"weight": w.to_json(), "source": m.to_json(), "target": n.to_json(), "field": field.to_json(),
                      "dims": dims, "oracle_dims": oracle, "verdict": "PASS" if ok else "FAIL"}), ok
    if args.format == "csv":
        return "i,dim\n" + "".join("%d,%d\n" % (i, d) for i, d in enumerate(dims)), ok
    _unsupported(args)


def _tex_table(table: homalg.ExtTable, degrees: int) -> str:
    objs = table.objects
    lines = ["\\begin{tabular}{%s}" % ("c" * (len(objs) + 1))]
    lines.append(" & ".join([""] + ["$%s$" % _tex_grade(n) for n in objs]) + " \\\\")
    for m in objs:
        cells = ["$%s$" % _tex_grade(m)]
        for n in objs:
            ks = [i for i in range(degrees + 1) if table.get(m, n, i)]
            cells.append(" ".join("$k[-%d]$" % i if i else "$k$" for i in ks) or "0")
        lines.append(" & ".join(cells) + " \\\\")
    lines.append("\\end{tabular}")
    return "\n".join(lines) + "\n"


def cmd_table(args, field):
    w = _need_weight(args)
    I = list(collection.index_set(w))
    table, verdict = homalg.rhom_table(w, I, args.stages)
    ok = verdict["verdict"] == "PASS"
    if args.format == "csv":
        return table.to_csv(args.degrees), ok
    if args.format == "json":
        out = table.to_json(args.degrees)
        out["comparison"] = verdict
        return _dump(out), ok
    if args.format == "tex":
        return _tex_table(table, args.degrees), ok
    _unsupported(args)


def cmd_verify_collection(args, field):
    w = _need_weight(args)
    if args.format != "json":
        _unsupported(args)
    exc = collection.verify_exceptional(w, args.stages)
    members = [collection.membership_in_T(n, args.window) for n in collection.index_set(w)]
    ok = exc["verdict"] == "PASS" and all(m["verdict"] == "PASS" for m in members)
    return _dump({"exceptional": exc, "membership": members, "verdict": "PASS" if ok else "FAIL"}), ok


def cmd_compare(args, field):
    w = _need_weight(args)
    if args.format == "dot":
        C, _ = collection.triple_tensor_collection(w, field)
        return C.to_dot() + "\n", True
    if args.format != "json":
        _unsupported(args)
    r = collection.comparison_isomorphism(w, field, args.stages)
    return _dump(r), r["verdict"] == "PASS"


def cmd_euler(args, field):
    w = _need_weight(args)
    r = collection.kronecker_check(w)
    G = collection.gram_matrix(w)
    ok = r["verdict"] == "PASS"
    if args.format == "json":
        r["gram"] = G.tolist()
        r["objects"] = [n.to_json() for n in collection.index_set(w)]
        return _dump(r), ok
    if args.format == "csv":
        return "".join(",".join(str(int(v)) for v in row) + "\n" for row in G), ok
    if args.format == "tex":
        body = " \\\\\n".join(" & ".join(str(int(v)) for v in row) for row in G)
        return "\\begin{pmatrix}\n%s\n\\end{pmatrix}\n" % body, ok
    _unsupported(args)


def cmd_reduce_class(args, field):
    w = _need_weight(args)
    m = _parse_twist(args.twist, w)
    try:
        r = collection.reduce_class(m)
    except collection.ReductionError as e:
        return _dump({"twist": m.to_json(), "error": str(e), "verdict": "FAIL"}), False
    bound = collection.step_bound(m)
    ok = r.steps <= bound
    if args.format == "json":
        out = r.to_json()
        out.update({"twist": m.to_json(), "step_bound": bound, "verdict": "PASS" if ok else "FAIL"})
        return _dump(out), ok
    if args.format == "csv":
        rows = ["n,coefficient"] + ["%s,%d" % (json.dumps(n.to_json()), c) for n, c in
                                   ((n, r.coefficient(n)) for n in collection.index_set(w)) if c]
        return "\n".join(rows) + "\n", ok
    _unsupported(args)


def cmd_selftest(args, field):
    if args.format != "json":
        _unsupported(args)
    weights = [_parse_weights(args.weights)] if args.weights else None
    crit = None
    if args.criteria:
        try:
            crit = [int(t) for t in args.criteria.split(",")]
        except ValueError:
            raise UsageError("criteria must be integers") from None
        if any(k not in selftest.CRITERIA for k in crit):
            raise UsageError("criteria are numbered 1..%d" % len(selftest.CRITERIA))
    report = selftest.run_selftest(weights, field, args.stages, args.window, args.seed, crit,
                                   progress=lambda r: print(selftest.format_line(r), file=sys.stderr))
    if not args.timings:
        report.pop("seconds")
        for r in report["results"]:
            r.pop("seconds")
    return _dump(report), report["passed"]


COMMANDS = {
    "resolve": cmd_resolve,
    "ext": cmd_ext,
    "table": cmd_table,
    "verify-collection": cmd_verify_collection,
    "compare": cmd_compare,
    "euler": cmd_euler,
    "reduce-class": cmd_reduce_class,
    "selftest": cmd_selftest,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.window < 1:
            raise UsageError("--window must be >= 1")
        if args.stages < 1:
            raise UsageError("--stages must be >= 1")
        try:
            field = FieldSpec.parse(args.field)
        except ValueError as e:
            raise UsageError(str(e)) from None
        if args.weights:
            field.warn_if_dividing(_parse_weights(args.weights))
        text, ok = COMMANDS[args.command](args, field)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print("fermatsg: error: %s" % e, file=sys.stderr)
        return 2
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, "%s.%s" % (args.command, args.format))
        with open(path, "w") as fh:
            fh.write(text)
        print(path, file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
