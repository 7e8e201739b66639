"""End-to-end acceptance checks, one test per numbered criterion.

Each test records PASS/FAIL in a shared register; the pytest terminal summary
prints one line per criterion.  Run on its own with

    pytest tests/test_acceptance.py -v
"""

import io
import random
import sys
import time
from fractions import Fraction

import pytest

from logprob.cli import run
from logprob.deduction import check_proof, countermodel, parse_proof
from logprob.events import (
    ProbModel,
    TestScheme,
    b_eval,
    bernoulli_pmf,
    binomial_tail,
    boolean_restriction_check,
    lln_bound,
    t_sum,
    variance_identity_check,
    verify_b_identities,
)
from logprob.formula import Conj, Neg, is_tautology, parse_formula, random_formula, truth_table
from logprob.qnumbers import (
    N_INFINITY,
    QNumber,
    Residue,
    Complement as SetComplement,
    classify,
    filter_laws_check,
    in_filter,
    rational_function,
)
from logprob.synthesis import NotATautologyError, prove_tautology

from helpers import ACCEPTANCE, DATA, THREE_ATOM_TAUTOLOGY

Q = Fraction

# rows (A, B, C, value) expected for the 3-atom tautology
EXPECTED_TABLE = [
    (0, 0, 0, 1), (0, 0, 1, 1), (0, 1, 0, 1), (0, 1, 1, 1),
    (1, 0, 0, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 1),
]

TRIAL_PS = [Q(1, 4), Q(1, 3), Q(1, 2), Q(9, 10)]
GRID_RS = [10, 25, 50, 100, 200]
GRID_PS = [Q(1, 10), Q(1, 4), Q(1, 2), Q(3, 4), Q(9, 10)]
GRID_EPS = [Q(1, 20), Q(1, 10)]


def record(n: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[n] = (ok, detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


def cli(*argv, stdin=""):
    out = io.StringIO()
    return run(list(argv), stdin=io.StringIO(stdin), stdout=out), out.getvalue()


def formula_corpus(size=500, seed=2024):
    """Random formulas over at most 3 atoms with depth at most 6.

    Every fourth entry has the shape (~(X & (~X))) so that a good share of
    the corpus are tautologies with nontrivial proofs.
    """
    rng = random.Random(seed)
    names = ["A", "B", "C"]
    out = []
    while len(out) < size:
        if len(out) % 4 == 3:
            x = random_formula(rng, rng.sample(names, rng.randrange(1, 4)), 3)
            out.append(Neg(Conj(x, Neg(x))))
        else:
            out.append(random_formula(rng, rng.sample(names, rng.randrange(1, 4)), 6))
    return out


@pytest.fixture(scope="module")
def synthesized():
    """(formula, proof or None) for the whole corpus, plus the elapsed time."""
    start = time.perf_counter()
    results = []
    for f in formula_corpus():
        try:
            proof, _ = prove_tautology(f)
        except NotATautologyError:
            proof = None
        results.append((f, proof))
    return results, time.perf_counter() - start


def test_criterion_01_three_atom_tautology():
    start = time.perf_counter()
    status, out = cli("tauto", THREE_ATOM_TAUTOLOGY)
    table = truth_table(parse_formula(THREE_ATOM_TAUTOLOGY))
    rows = [(g["A"], g["B"], g["C"], v) for g, v in table]
    elapsed = time.perf_counter() - start
    ok = status == 0 and out == "tautology\n" and rows == EXPECTED_TABLE and elapsed < 0.1
    record(1, ok, f"8 rows all 1, {elapsed * 1000:.1f} ms")
    assert ok


def test_criterion_02_reference_deductions():
    start = time.perf_counter()
    outcomes = [cli("check", str(DATA / name)) for name in ("weakening.proof", "non_contradiction.proof")]
    elapsed = time.perf_counter() - start
    ok = all(status == 0 for status, _ in outcomes) and elapsed < 0.1
    ok = ok and outcomes[0][1].endswith("A |- (~((~A) & (~B)))\n")
    ok = ok and outcomes[1][1].endswith(" |- (~(A & (~A)))\n")
    record(2, ok, f"both accepted, {elapsed * 1000:.1f} ms")
    assert ok


def test_criterion_03_completeness_round_trip(synthesized):
    results, prove_time = synthesized
    start = time.perf_counter()
    failures = 0
    tautologies = 0
    for f, proof in results:
        taut = is_tautology(f)
        tautologies += taut
        if (proof is not None) != taut:
            failures += 1
        elif proof is not None:
            if check_proof(proof) is not None or proof[-1].sequent.hypotheses or proof[-1].sequent.conclusion != f:
                failures += 1
    elapsed = prove_time + time.perf_counter() - start
    ok = failures == 0 and elapsed < 30
    record(3, ok, f"{len(results)} formulas, {tautologies} tautologies, {failures} failures, {elapsed:.2f} s")
    assert ok


def test_criterion_04_soundness(synthesized):
    results, _ = synthesized
    proofs = [p for _, p in results if p is not None]
    failures = sum(countermodel(p) is not None for p in proofs)
    steps = sum(len(p) for p in proofs)
    ok = failures == 0 and len(proofs) > 0
    record(4, ok, f"{len(proofs)} proofs, {steps} steps, {failures} countermodels")
    assert ok


def test_criterion_05_bernoulli_oracle():
    start = time.perf_counter()
    mismatches = 0
    cells = 0
    for p in TRIAL_PS:
        scheme = TestScheme("S", 12, p)
        for r in range(1, 13):
            model = scheme.model(r)
            for k in range(r + 1):
                cells += 1
                mismatches += b_eval(model, t_sum(scheme, r, k)) != bernoulli_pmf(r, k, p)
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 60
    record(5, ok, f"{cells} (r, k, p) cells exact, {mismatches} mismatches, {elapsed:.2f} s")
    assert ok


def five_atom_joint(seed=7):
    rng = random.Random(seed)
    raw = [rng.randrange(0, 10) for _ in range(32)]
    raw[5] += 1
    total = sum(raw)
    return ProbModel.joint(list("ABCDE"), {i: Q(w, total) for i, w in enumerate(raw)})


def test_criterion_06_b_identities():
    product = ProbModel.product({"A": Q(1, 2), "B": Q(1, 3), "C": Q(3, 4), "D": Q(1, 10), "E": Q(5, 7)})
    reports = [verify_b_identities(product, 1000, seed=1), verify_b_identities(five_atom_joint(), 1000, seed=2)]
    violations = sum(len(r.violations) for r in reports)
    checks = sum(sum(r.checks.values()) for r in reports)
    ok = violations == 0
    record(6, ok, f"product + joint, 2x1000 trials, {checks} checks, {violations} violations")
    assert ok, [v for r in reports for v in r.violations[:3]]


def test_criterion_07_lln_bound():
    bad = []
    for r in GRID_RS:
        for p in GRID_PS:
            for eps in GRID_EPS:
                tail = binomial_tail(r, r * (p - eps), r * (p + eps), p)
                if tail < lln_bound(r, p, eps):
                    bad.append((r, p, eps))
    bound = lln_bound(100, Q(1, 2), Q(1, 10))
    tail = binomial_tail(100, 40, 60, Q(1, 2))
    status, out = cli("bound", "--r", "100", "--p", "1/2", "--eps", "1/10")
    ok = not bad and bound == Q(3, 4) and tail >= Q(3, 4) and out.splitlines()[0] == "3/4"
    record(7, ok, f"{len(GRID_RS) * len(GRID_PS) * len(GRID_EPS)} cells, {len(bad)} below bound; "
                  f"r=100 bound {bound}, tail {float(tail):.4f}")
    assert ok


def test_criterion_08_variance_identity():
    ps = sorted(set(GRID_PS) | set(TRIAL_PS))
    bad = [(r, p) for r in range(0, 13) for p in ps if not variance_identity_check(r, p).ok]
    ok = not bad
    record(8, ok, f"r = 0..12 x {len(ps)} values of p, {len(bad)} mismatches")
    assert ok


def test_criterion_09_nonstandard_suite():
    report = filter_laws_check(500, seed=9)
    infinite = classify(N_INFINITY).kind == "infinitely-large"
    small = all(classify(QNumber(rational_function([a], [0, 1]))).kind == "infinitesimal"
                for a in (1, 10, 1000))
    evens = Residue(0, 2)
    witness = not in_filter(evens) and not in_filter(SetComplement(evens))
    ok = report.ok and infinite and small and witness
    record(9, ok, f"{sum(report.checks.values())} filter-law checks, {len(report.violations)} violations; "
                  f"n infinite: {infinite}; a/n infinitesimal: {small}; evens witness: {witness}")
    assert ok, report.violations[:3]


def test_criterion_10_boolean_restriction():
    model = ProbModel.product({"A": 1, "B": 0, "C": 1, "D": 0, "E": 1})
    report = boolean_restriction_check(model, 500, seed=10)
    ok = report.ok and report.checks["complement"] == 500 and report.checks["product"] == 500
    record(10, ok, f"500 event pairs, {len(report.violations)} violations")
    assert ok, report.violations[:3]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
