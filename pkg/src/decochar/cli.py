"""Command line front end.

Exit status: 0 when every identity holds, 1 when the oracle refutes one,
2 on input or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import List, Optional

from . import __version__
from .charalg import CharAlgebra, equal, reduce_heuristic
from .curves import RULE_NAMES, CurveCollection, CurveError, random_site, to_char, verify_rule
from .demos import DEMOS, run_demo
from .fields import FieldConfigError, parse_field
from .groupact import GAPresentation, UnsupportedError, WordSyntaxError
from .oracle import OracleConfig, Verdict, compare
from .parsing import ParseError, parse_char, parse_trace
from .rep import load_reps, validate
from .suite import SuiteOptions, build_instances, mutate, parse_mutation, run, summarize
from .tracealg import ConExpr, arity, vanishes
from .twisted import CentralExtSpec, ExtensionError

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2

log = logging.getLogger("decochar")


class UsageError(Exception):
    pass


def _free_spec(text: str) -> GAPresentation:
    try:
        m, n = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected M,N (e.g. 2,2), got {text!r}") from None
    if m < 0 or n < 0:
        raise argparse.ArgumentTypeError("M and N must be non-negative")
    return GAPresentation.free_action(m, n)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--presentation", metavar="FILE", help="group action as JSON")
    common.add_argument("--free", metavar="M,N", type=_free_spec, default=None,
                        help="free group of rank M acting freely with N orbits (default 2,2)")
    common.add_argument("--reps", metavar="FILE", help="representation library (non-free presentations)")
    common.add_argument("--field", default="fp", help="q or fp[:PRIME] (default fp:2^62-57)")
    common.add_argument("--samples", type=int, default=16, help="oracle sample count N")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-word-len", type=int, default=4, dest="max_word_len")
    common.add_argument("--json", action="store_true", help="print a JSON transcript")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="decochar", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    eq = sub.add_parser("eq", parents=[common], help="decide whether two expressions are equal")
    eq.add_argument("lhs")
    eq.add_argument("rhs")
    eq.add_argument("--trace", action="store_true",
                    help="parse X(i)/Xi(i)/Th(j,k)/tr(...) trace expressions")

    red = sub.add_parser("reduce", parents=[common], help="greedy loop reduction of an expression")
    red.add_argument("expr")

    chk = sub.add_parser("check", parents=[common], help="run every relation schema on random instances")
    chk.add_argument("--instances", type=int, default=10, help="random instances per schema")
    chk.add_argument("--mutate", metavar="RULE-ID", help="corrupt one schema, e.g. R6-sign")
    chk.add_argument("--twist", metavar="FILE", help="central extension spec; adds the twisted suite")

    demo = sub.add_parser("demo", parents=[common], help="run a worked example")
    demo.add_argument("name", choices=sorted(DEMOS))

    cur = sub.add_parser("curve", parents=[common], help="character of a curve collection")
    cur.add_argument("file")
    cur.add_argument("--rules", type=int, default=0, metavar="K",
                     help="also verify each local rule on K random sites of the surface")
    return p


# --- session --------------------------------------------------------------------


class Session:
    def __init__(self, args):
        self.args = args
        if args.presentation and args.free:
            raise UsageError("--presentation and --free are mutually exclusive")
        if args.presentation:
            self.pres = GAPresentation.load(args.presentation)
        else:
            self.pres = args.free or GAPresentation.free_action(2, 2)
        self.field = parse_field(args.field)
        reps = None
        if args.reps:
            reps = load_reps(args.reps, self.pres, self.field)
            for k, r in enumerate(reps):
                bad = validate(r)
                if bad:
                    raise UsageError(f"representation {k} is invalid: {bad[0]}")
        self.cfg = OracleConfig(self.field, args.samples, args.seed, reps)

    def require_oracle(self) -> None:
        if not self.pres.free and not self.cfg.reps:
            raise UnsupportedError(
                "non-free presentation: supply representations (--reps) for the oracle"
            )

    def header(self) -> dict:
        return {
            "seed": self.cfg.seed,
            "field": self.field.name,
            "samples": self.cfg.samples,
            "presentation": self.pres.to_json(),
        }


def _emit(args, payload: dict, lines: List[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        print("\n".join(lines))


def _verdict_lines(v: Verdict) -> List[str]:
    out = [v.summary()]
    if v.witness is not None:
        out.append(f"witness (sample {v.witness.index}): lhs = {v.witness.lhs}, rhs = {v.witness.rhs}")
        rep = v.witness.rep
        if hasattr(rep, "to_json"):
            out.append(f"  at {json.dumps(rep.to_json())}")
    return out


# --- commands -------------------------------------------------------------------


def cmd_eq(s: Session) -> int:
    a = s.args
    if a.trace:
        lhs, rhs = parse_trace(a.lhs), parse_trace(a.rhs)
        diff = lhs - rhs if not isinstance(rhs, ConExpr) else -(rhs - lhs)
        m, n = arity(diff)
        v = vanishes(diff, m, n, s.cfg)
        shown = (str(lhs), str(rhs))
    else:
        s.require_oracle()
        alg = CharAlgebra(s.pres)
        lhs, rhs = parse_char(a.lhs, alg), parse_char(a.rhs, alg)
        v = equal(lhs, rhs, s.cfg)
        shown = (str(lhs), str(rhs))
    lines = [f"lhs: {shown[0]}", f"rhs: {shown[1]}"] + _verdict_lines(v)
    _emit(a, {**s.header(), "lhs": shown[0], "rhs": shown[1], "verdict": v.to_json()}, lines)
    return EXIT_OK if v.equal else EXIT_FAIL


def cmd_reduce(s: Session) -> int:
    if not s.pres.free:
        raise UnsupportedError("reduce needs a free presentation")
    alg = CharAlgebra(s.pres)
    f = parse_char(s.args.expr, alg)
    g = reduce_heuristic(f)
    v = equal(f, g, s.cfg)
    lines = [f"input:   {f}", f"reduced: {g}", "check: " + v.summary()]
    _emit(s.args, {**s.header(), "input": str(f), "reduced": str(g), "verdict": v.to_json()}, lines)
    return EXIT_OK if v.equal else EXIT_FAIL


def cmd_check(s: Session) -> int:
    a = s.args
    s.require_oracle()
    ext = CentralExtSpec.load(s.pres, a.twist) if a.twist else None
    opts = SuiteOptions(instances=a.instances, max_word_len=a.max_word_len,
                        trace_word_len=min(a.max_word_len, 4), seed=a.seed, extension=ext)
    only = None
    kind = None
    if a.mutate:
        only, kind = parse_mutation(a.mutate)
    started = time.perf_counter()
    instances = build_instances(s.pres, opts, only=only)
    if a.mutate:
        if not instances:
            raise UsageError(f"no schema named {only!r} applies to this presentation")
        mutated = [mutate(inst, kind, s.cfg.reps) for inst in instances]
        instances = [m for m in mutated if m is not None]
    outcomes = run(instances, s.cfg)
    elapsed = time.perf_counter() - started
    table = summarize(outcomes)
    failures = [o for o in outcomes if not o.ok]
    schemas = sorted({o.instance.family + ":" + o.instance.name for o in outcomes})
    lines = [f"presentation: {s.pres.m} generators, {s.pres.n} orbits"
             f"{'' if s.pres.free else ' (non-free, refutation-only)'}",
             f"seed={s.cfg.seed} field={s.field.name} samples={s.cfg.samples}"]
    if s.pres.m == 0:
        lines.append("no group generators: Grassmannian (Pluecker) suite only")
    for key, (passed, total) in table.items():
        lines.append(f"  {'ok  ' if passed == total else 'FAIL'} {key}: {passed}/{total}")
    for o in failures[:5]:
        lines.append(f"failure in {o.instance.label()} args={_show_args(o.instance.args)}")
        lines += ["  " + x for x in _verdict_lines(o.verdict)]
    if failures:
        lines.append(f"{len(failures)} failures across {len(schemas)} schemas")
    else:
        lines.append(f"all {len(schemas)} schemas pass ({len(outcomes)} instances), 0 failures")
    lines.append(f"elapsed {elapsed:.2f}s")
    payload = {
        **s.header(),
        "schemas": {k: {"passed": p, "total": t} for k, (p, t) in table.items()},
        "instances": len(outcomes),
        "failures": [
            {"schema": o.instance.label(), "args": _show_args(o.instance.args),
             "verdict": o.verdict.to_json()}
            for o in failures
        ],
    }
    _emit(a, payload, lines)
    return EXIT_FAIL if failures else EXIT_OK


def _show_args(args) -> str:
    return "(" + ", ".join(str(x) for x in args) + ")"


def cmd_demo(s: Session) -> int:
    rep = run_demo(s.args.name, s.cfg)
    lines = [f"demo {rep.name}  (seed={s.cfg.seed} field={s.field.name} samples={s.cfg.samples})"]
    lines += rep.lines
    lines.append("demo passed" if rep.ok else "demo FAILED")
    _emit(s.args, {**s.header(), **rep.to_json()}, lines)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_curve(s: Session) -> int:
    import random

    coll = CurveCollection.load(s.args.file)
    surface = coll.surface
    f = to_char(coll)
    lines = [f"surface: genus {surface.genus}, {surface.boundary} boundary, {surface.marked} marked "
             f"(rank {surface.rank})", f"character: {f}"]
    results = {}
    failed = False
    if s.args.rules:
        rng = random.Random(f"curve:{s.cfg.seed}")
        for rule, name in RULE_NAMES.items():
            if rule in (2, 4, 6, 7) and surface.marked == 0:
                continue
            ok = 0
            for _ in range(s.args.rules):
                v = verify_rule(surface, rule, random_site(rule, rng, surface, s.args.max_word_len), s.cfg)
                ok += v.equal
            failed = failed or ok != s.args.rules
            results[rule] = {"name": name, "passed": ok, "total": s.args.rules}
            lines.append(f"  {'ok  ' if ok == s.args.rules else 'FAIL'} rule {rule} ({name}): "
                         f"{ok}/{s.args.rules}")
    _emit(s.args, {**s.header(), "character": str(f), "rules": results}, lines)
    return EXIT_FAIL if failed else EXIT_OK


COMMANDS = {"eq": cmd_eq, "reduce": cmd_reduce, "check": cmd_check, "demo": cmd_demo, "curve": cmd_curve}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](Session(args))
    except ParseError as exc:
        print(f"error: {exc.render()}", file=sys.stderr)
    except (UsageError, UnsupportedError, FieldConfigError, WordSyntaxError, CurveError,
            ExtensionError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
