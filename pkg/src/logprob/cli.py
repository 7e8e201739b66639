"""Command-line entry point: ``logprob <command> ...``.

Exit status is 0 on success, 1 when the answer is negative (not a tautology,
proof rejected, identity violated) and 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
import warnings
from fractions import Fraction
from typing import Sequence, TextIO

import yaml

from . import events as ev
from . import qnumbers as qn
from .deduction import (
    ProofFormatError,
    check_proof,
    conclusion_of,
    countermodel,
    parse_proof,
    render_proof,
    render_sequent,
)
from .formula import (
    DEFAULT_ATOM_LIMIT,
    AtomLimitError,
    FormulaSyntaxError,
    atoms_of,
    connective_count,
    depth,
    falsifying_assignment,
    parse_formula,
    render_formula,
    table_tsv,
    truth_table,
)
from .synthesis import DEFAULT_PROVE_LIMIT, NotATautologyError, SynthesisError, prove_tautology

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _rational(text: str) -> Fraction:
    try:
        return ev.parse_rational(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _shown(q: Fraction) -> str:
    """Exact value, followed by a decimal approximation when it is not an integer."""
    if q.denominator == 1:
        return str(q)
    return f"{q} (~{float(q):.6g})"


def _say_value(out: "Output", q: Fraction) -> None:
    """The exact value on its own line, then a decimal reading if it helps."""
    out.say(str(q))
    if q.denominator != 1:
        out.say(f"~{float(q):.6g}")


def _assignment_text(g: dict) -> str:
    return ", ".join(f"{k}={v}" for k, v in g.items())


class Output:
    """Collects human text and a structured record; prints one of them at the end."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []
        self.data: dict = {}

    def say(self, text: str = "") -> None:
        self.lines.append(text)

    def emit(self, stream: TextIO, status: int) -> None:
        if self.fmt == "json":
            doc = {"status": status, **self.data}
            stream.write(json.dumps(doc, sort_keys=True) + "\n")
        else:
            for line in self.lines:
                stream.write(line if line.endswith("\n") else line + "\n")


def _read_input(path: str, stdin: TextIO) -> str:
    if path == "-":
        return stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


# ---------------------------------------------------------------------------
# Formula and proof commands
# ---------------------------------------------------------------------------


def cmd_parse(args, out: Output, stdin) -> int:
    f = parse_formula(args.formula)
    text = render_formula(f)
    out.say(text)
    out.data.update(formula=text, atoms=atoms_of(f), connectives=connective_count(f), depth=depth(f))
    return OK


def cmd_table(args, out: Output, stdin) -> int:
    f = parse_formula(args.formula)
    names = atoms_of(f)
    rows = truth_table(f, args.limit)
    if args.tsv:
        out.say(table_tsv(f, args.limit).rstrip("\n"))
    else:
        header = [*names, "value"]
        widths = [max(len(h), 1) for h in header]
        out.say("  ".join(h.rjust(w) for h, w in zip(header, widths)))
        for g, v in rows:
            cells = [*(str(g[n]) for n in names), str(v)]
            out.say("  ".join(c.rjust(w) for c, w in zip(cells, widths)))
    out.data.update(formula=render_formula(f), atoms=names,
                    rows=[{"assignment": g, "value": v} for g, v in rows])
    return OK


def cmd_tauto(args, out: Output, stdin) -> int:
    f = parse_formula(args.formula)
    bad = falsifying_assignment(f, args.limit)
    out.data.update(formula=render_formula(f), tautology=bad is None)
    if bad is None:
        out.say("tautology")
        return OK
    out.say(f"not a tautology: false under {_assignment_text(bad)}")
    out.data["falsified_by"] = bad
    return FAIL


def cmd_prove(args, out: Output, stdin) -> int:
    f = parse_formula(args.formula)
    try:
        proof, trace = prove_tautology(f, args.limit)
    except NotATautologyError as e:
        out.say(f"not a tautology: false under {_assignment_text(e.assignment)}")
        out.data.update(formula=render_formula(f), tautology=False, falsified_by=e.assignment)
        return FAIL
    text = render_proof(proof)
    out.say(text.rstrip("\n"))
    out.data.update(formula=render_formula(f), tautology=True, steps=len(proof), proof=text)
    if args.trace:
        trace_text = trace.to_text()
        for line in trace_text.splitlines():
            out.say(f"# {line}")
        out.data["trace"] = trace_text
    return OK


def cmd_check(args, out: Output, stdin) -> int:
    text = _read_input(args.file, stdin)
    proof = parse_proof(text)
    bad = check_proof(proof)
    if bad is not None:
        out.say(f"rejected: {bad}")
        out.data.update(accepted=False, violation=str(bad), step=bad.step + 1, rule=bad.rule)
        return FAIL
    final = proof[-1].sequent
    out.say(f"OK: {len(proof)} steps, {render_sequent(final)}")
    out.data.update(accepted=True, steps=len(proof), conclusion=render_sequent(final))
    if args.semantic:
        cm = countermodel(proof)
        out.data["countermodel"] = None if cm is None else {"step": cm[0] + 1, "assignment": cm[1]}
        if cm is not None:
            out.say(f"semantic check failed at step {cm[0] + 1} under {_assignment_text(cm[1])}")
            return FAIL
        out.say("semantic check: every step holds under every assignment")
    return OK


# ---------------------------------------------------------------------------
# Probability commands
# ---------------------------------------------------------------------------


def cmd_bernoulli(args, out: Output, stdin) -> int:
    v = ev.bernoulli_pmf(args.r, args.k, args.p)
    _say_value(out, v)
    out.data.update(r=args.r, k=args.k, p=str(args.p), value=str(v))
    return OK


def cmd_tail(args, out: Output, stdin) -> int:
    v = ev.binomial_tail(args.r, args.a, args.b, args.p)
    _say_value(out, v)
    out.data.update(r=args.r, a=str(args.a), b=str(args.b), p=str(args.p), value=str(v))
    return OK


def cmd_bound(args, out: Output, stdin) -> int:
    v = ev.lln_bound(args.r, args.p, args.eps)
    tail = ev.binomial_tail(args.r, args.r * (args.p - args.eps), args.r * (args.p + args.eps), args.p)
    _say_value(out, v)
    if args.tail:
        out.say(f"tail: {_shown(tail)}")
    out.data.update(r=args.r, p=str(args.p), eps=str(args.eps), bound=str(v), tail=str(tail))
    return OK


def cmd_series(args, out: Output, stdin) -> int:
    scheme = ev.TestScheme(args.name, args.r, args.p)
    members = ev.series_members(scheme, args.r, args.k)
    value = ev.b_eval(scheme.model(), ev.t_sum(scheme, args.r, args.k))
    for m in members:
        out.say(ev.render_event(m))
    out.say(f"members: {len(members)}")
    out.say(f"b: {_shown(value)}")
    out.data.update(r=args.r, k=args.k, p=str(args.p),
                    members=[ev.render_event(m) for m in members], b=str(value),
                    pmf=str(ev.bernoulli_pmf(args.r, args.k, args.p)))
    return OK


def _load_model_file(path: str, stdin) -> ev.ProbModel:
    text = _read_input(path, stdin)
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise UsageError(f"model file is not valid YAML/JSON: {e}") from None
    return ev.load_model(data)


DEFAULT_MODEL = {"A": Fraction(1, 2), "B": Fraction(1, 3), "C": Fraction(3, 4)}


def cmd_verify_b(args, out: Output, stdin) -> int:
    model = _load_model_file(args.model, stdin) if args.model else ev.ProbModel.product(DEFAULT_MODEL)
    report = ev.verify_b_identities(model, args.trials, args.seed)
    out.say(report.summary())
    for v in report.violations[:20]:
        out.say(f"  {v}")
    out.data.update(atoms=list(model.atoms), report=report.to_dict())
    return OK if report.ok else FAIL


# ---------------------------------------------------------------------------
# Nonstandard commands
# ---------------------------------------------------------------------------


def cmd_qdemo(args, out: Output, stdin) -> int:
    if args.what == "density":
        A = qn.parse_set(args.expr)
        d = qn.density(A)
        member = qn.in_filter(A)
        out.say(f"density: {d}")
        out.say(f"in filter: {'yes' if member else 'no'}")
        out.data.update(set=qn.render_set(A), density=str(d), in_filter=member)
    elif args.what == "freq":
        if len(args.expr) < 2:
            raise UsageError("qdemo freq: need a set expression followed by n")
        try:
            n = int(args.expr[-1])
        except ValueError:
            raise UsageError(f"qdemo freq: n must be an integer, got {args.expr[-1]!r}") from None
        if n < 1:
            raise UsageError("qdemo freq: n must be at least 1")
        A = qn.parse_set(args.expr[:-1])
        v = qn.freq(A, n)
        out.say(f"freq: {_shown(v)}")
        out.data.update(set=qn.render_set(A), n=n, freq=str(v), count=qn.count_upto(A, n))
    elif args.what == "classify":
        x = qn.parse_seq(args.expr)
        c = qn.classify(qn.QNumber(x))
        out.say(f"sequence: {x}")
        out.say(f"class: {c}")
        out.data.update(sequence=str(x), kind=c.kind, sign=c.sign,
                        value=None if c.value is None else str(c.value))
        if c.kind == "infinitesimal" and x.den != (1,) and len(x.num) == 1 and len(x.den) == 2 \
                and x.den[0] == 0 and x.num[0] * x.den[1] > 0:
            # x = a/n with a > 0: show the explicit threshold witness for m = 1..3
            a = x.num[0] / x.den[1]
            for m in (1, 2, 3):
                k, S = qn.s8_witness(a, m)
                out.say(f"m={m}: k={k}, |x(n)| < 1/{m} for all n > {S.m}, "
                        f"frequency (n - {S.m})/n -> 1")
    elif args.what == "near":
        text = " ".join(args.expr)
        if "," not in text:
            raise UsageError("qdemo near: separate the two sequence expressions with ','")
        left, right = text.split(",", 1)
        x, y = qn.QNumber(qn.parse_seq(left)), qn.QNumber(qn.parse_seq(right))
        near = qn.infinitely_near(x, y)
        diff = qn.classify(qn.q_sub(x, y))
        out.say(f"difference: {diff}")
        out.say(f"infinitely near: {'yes' if near else 'no'}")
        out.data.update(near=near, difference=str(diff), equal=qn.q_eq(x, y))
    return OK


# ---------------------------------------------------------------------------
# Self test
# ---------------------------------------------------------------------------


def cmd_selftest(args, out: Output, stdin) -> int:
    import random

    from .formula import random_formula

    results = {}
    names5 = ["A", "B", "C", "D", "E"]
    prod = ev.ProbModel.product({n: Fraction(i + 1, 7) for i, n in enumerate(names5)})
    rep = ev.verify_b_identities(prod, args.trials, args.seed)
    results["b-identities"] = rep.ok
    rep_q = qn.filter_laws_check(args.trials, args.seed)
    results["filter-laws"] = rep_q.ok

    rng = random.Random(args.seed)
    round_trip = True
    for _ in range(args.trials):
        f = random_formula(rng, ["A", "B", "C"], 4)
        if render_formula(parse_formula(render_formula(f))) != render_formula(f):
            round_trip = False
        if falsifying_assignment(f) is None:
            proof, _ = prove_tautology(f)
            if check_proof(proof) is not None or parse_proof(render_proof(proof)) != proof \
                    or conclusion_of(proof).hypotheses:
                round_trip = False
    results["round-trip"] = round_trip
    for name, ok in results.items():
        out.say(f"{name}: {'pass' if ok else 'FAIL'}")
    out.data["results"] = results
    return OK if all(results.values()) else FAIL


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

QDEMO_HELP = """\
set expressions (prefix form):
  all | none | fin 1,2,3 | cofin 4,5 | res A M | thr M | and X Y | or X Y | not X
  e.g. 'res 0 2' (even numbers), 'thr 100' ({n : n > 100})
sequence expressions (prefix form, coefficients constant term first):
  const Q | id | ratfn C0 C1 ... / D0 D1 ... | over N V X | add X Y | sub X Y
  | mul X Y | div X Y | neg X
  e.g. 'ratfn 1 0 / 0 1' is 1/n, 'ratfn 0 0 1 / 1 1' is n^2/(1+n)
examples:
  logprob qdemo density res 0 2
  logprob qdemo freq thr 10 50
  logprob qdemo classify ratfn 1 / 0 1
  logprob qdemo near 'const 1 , sub const 1 ratfn 1/4 / 0 1'
"""


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="logprob", description="Propositional proofs, event probabilities and Q-numbers.")
    p.add_argument("--format", choices=["text", "json"], default="text",
                   help="output style (default: text)")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def formula_cmd(name, help_text, limit):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("formula")
        sp.add_argument("--limit", type=int, default=limit, help=f"atom limit (default {limit})")
        return sp

    formula_cmd("parse", "parse and print a formula in canonical form", DEFAULT_ATOM_LIMIT)
    sp = formula_cmd("table", "print the truth table", DEFAULT_ATOM_LIMIT)
    sp.add_argument("--tsv", action="store_true", help="tab-separated output")
    formula_cmd("tauto", "decide whether a formula is a tautology", DEFAULT_ATOM_LIMIT)
    sp = formula_cmd("prove", "synthesize a proof of a tautology", DEFAULT_PROVE_LIMIT)
    sp.add_argument("--trace", action="store_true", help="append the construction log as # comments")
    sp = sub.add_parser("check", help="check a proof file ('-' for standard input)")
    sp.add_argument("file")
    sp.add_argument("--semantic", action="store_true",
                    help="also confirm every step holds under every assignment")

    sp = sub.add_parser("bernoulli", help="probability of exactly k successes in r trials")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--p", type=_rational, required=True)
    sp = sub.add_parser("tail", help="probability of between a and b successes in r trials")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--a", type=_rational, required=True)
    sp.add_argument("--b", type=_rational, required=True)
    sp.add_argument("--p", type=_rational, required=True)
    sp = sub.add_parser("bound", help="Chebyshev lower bound 1 - p(1-p)/(r eps^2)")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--p", type=_rational, required=True)
    sp.add_argument("--eps", type=_rational, required=True)
    sp.add_argument("--tail", action="store_true", help="also print the exact probability it bounds")
    sp = sub.add_parser("series", help="list the products with k successes among r trials")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--p", type=_rational, default=Fraction(1, 2), help="trial probability (default 1/2)")
    sp.add_argument("--name", default="B", help="trial name prefix (default B)")
    sp = sub.add_parser("verify-b", help="check the B-function identities on random events")
    sp.add_argument("--model", help="YAML/JSON model file ('-' for standard input)")
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("qdemo", help="density filter and Q-number demos",
                        epilog=QDEMO_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    sp.add_argument("what", choices=["density", "freq", "classify", "near"])
    sp.add_argument("expr", nargs=argparse.REMAINDER)

    sp = sub.add_parser("selftest", help="run reduced verification suites")
    sp.add_argument("--trials", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    return p


HANDLERS = {
    "parse": cmd_parse,
    "table": cmd_table,
    "tauto": cmd_tauto,
    "prove": cmd_prove,
    "check": cmd_check,
    "bernoulli": cmd_bernoulli,
    "tail": cmd_tail,
    "bound": cmd_bound,
    "series": cmd_series,
    "verify-b": cmd_verify_b,
    "qdemo": cmd_qdemo,
    "selftest": cmd_selftest,
}


def _wants_json(argv: Sequence[str]) -> bool:
    for i, a in enumerate(argv):
        if a == "--format=json" or (a == "--format" and i + 1 < len(argv) and argv[i + 1] == "json"):
            return True
    return False


def run(argv: Sequence[str], stdin: TextIO | None = None, stdout: TextIO | None = None) -> int:
    """Execute one command; returns the exit status."""
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    argv = list(argv)
    out = Output("json" if _wants_json(argv) else "text")
    try:
        try:
            with contextlib.redirect_stdout(stdout):
                args = build_parser().parse_args(argv)
        except SystemExit:
            # --help was printed
            return OK
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            status = HANDLERS[args.command](args, out, stdin)
    except UsageError as e:
        return _fail(out, stdout, USAGE, str(e), "usage", hint="run 'logprob --help' for usage")
    except FormulaSyntaxError as e:
        return _fail(out, stdout, USAGE, f"syntax error: {e}", "syntax")
    except ProofFormatError as e:
        return _fail(out, stdout, USAGE, f"proof format error: {e}", "proof-format")
    except (qn.ExprSyntaxError, ev.ModelError) as e:
        return _fail(out, stdout, USAGE, f"input error: {e}", "input")
    except (AtomLimitError, SynthesisError) as e:
        return _fail(out, stdout, FAIL, str(e), "limit")
    except (ValueError, ZeroDivisionError) as e:
        return _fail(out, stdout, USAGE, f"invalid argument: {e}", "argument")
    out.emit(stdout, status)
    return status


def _fail(out: Output, stdout: TextIO, status: int, message: str, kind: str, hint: str = "") -> int:
    out.lines = [message + (f" ({hint})" if hint else "")]
    out.data = {"error": kind, "message": message}
    out.emit(stdout, status)
    return status


def main(argv: Sequence[str] | None = None) -> int:
    status = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.flush()
    return status


if __name__ == "__main__":
    sys.exit(main())
