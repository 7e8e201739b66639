"""Natural deduction for the {~, &} calculus.

A proof is a list of steps; each step is a sequent ``Γ |- C`` together with
the rule that licenses it.  Rules:

    AX          C |- C
    R&L i       Γ |- (A & B)               =>  Γ |- A
    R&R i       Γ |- (A & B)               =>  Γ |- B
    I& i j      Γ1 |- A,  Γ2 |- B          =>  Γ1 ∪ Γ2 |- (A & B)
    R~ i        Γ |- (~(~C))               =>  Γ |- C
    I~ i j C    Γ1 |- A,  Γ2 |- (~A)       =>  (Γ1 - {C}) ∪ (Γ2 - {C}) |- (~C)

Hypotheses are sets.  ``I~`` may discharge a formula that does not occur in
either premise, and its two premises may be given in either order.

Indices are 0-based in the API and 1-based in the text format::

    1. A |- A ; AX
    2. ((~A) & (~B)) |- ((~A) & (~B)) ; AX
    3. ((~A) & (~B)) |- (~A) ; R&L 2
    4. A |- (~((~A) & (~B))) ; I~ 1 3 ((~A) & (~B))
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union

from .formula import (
    Conj,
    Formula,
    Neg,
    assignments,
    atoms_of,
    eval_formula,
    parse_formula,
    render_formula,
)


@dataclass(frozen=True)
class Sequent:
    hypotheses: frozenset
    conclusion: Formula

    def __init__(self, hypotheses: Iterable[Formula], conclusion: Formula):
        object.__setattr__(self, "hypotheses", frozenset(hypotheses))
        object.__setattr__(self, "conclusion", conclusion)

    def __str__(self):
        return render_sequent(self)


@dataclass(frozen=True)
class Axiom:
    pass


@dataclass(frozen=True)
class RConjLeft:
    premise: int


@dataclass(frozen=True)
class RConjRight:
    premise: int


@dataclass(frozen=True)
class IConj:
    left: int
    right: int


@dataclass(frozen=True)
class RNeg:
    premise: int


@dataclass(frozen=True)
class INeg:
    pos_premise: int
    neg_premise: int
    discharged: Formula


Justification = Union[Axiom, RConjLeft, RConjRight, IConj, RNeg, INeg]


@dataclass(frozen=True)
class Step:
    sequent: Sequent
    justification: Justification


@dataclass(frozen=True)
class Proof:
    steps: tuple

    def __init__(self, steps: Iterable[Step]):
        object.__setattr__(self, "steps", tuple(steps))

    def __len__(self):
        return len(self.steps)

    def __getitem__(self, i) -> Step:
        return self.steps[i]


@dataclass(frozen=True)
class Violation:
    step: int
    rule: str
    reason: str

    def __str__(self):
        return f"step {self.step + 1} ({self.rule}): {self.reason}"


class ProofError(ValueError):
    def __init__(self, violation: Violation):
        super().__init__(str(violation))
        self.violation = violation


class ProofFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------


def rule_name(j: Justification) -> str:
    return {
        Axiom: "AX", RConjLeft: "R&L", RConjRight: "R&R",
        IConj: "I&", RNeg: "R~", INeg: "I~",
    }[type(j)]


def _premises(j: Justification) -> tuple[int, ...]:
    if isinstance(j, Axiom):
        return ()
    if isinstance(j, IConj):
        return (j.left, j.right)
    if isinstance(j, INeg):
        return (j.pos_premise, j.neg_premise)
    return (j.premise,)


def _fmt(f: Formula) -> str:
    return render_formula(f)


def _fmt_hyps(hs) -> str:
    return "{" + ", ".join(sorted(_fmt(h) for h in hs)) + "}"


def _reason(step: Sequent, j: Justification, premises: list[Sequent]) -> str | None:
    """First failed side condition of ``j`` at ``step``, or None when licensed."""
    hyps, concl = step.hypotheses, step.conclusion
    if isinstance(j, Axiom):
        if hyps != {concl}:
            return f"axiom needs hypotheses {{{_fmt(concl)}}}, got {_fmt_hyps(hyps)}"
        return None

    if isinstance(j, (RConjLeft, RConjRight)):
        (p,) = premises
        if not isinstance(p.conclusion, Conj):
            return f"premise conclusion {_fmt(p.conclusion)} is not a conjunction"
        part = p.conclusion.left if isinstance(j, RConjLeft) else p.conclusion.right
        if concl != part:
            side = "left" if isinstance(j, RConjLeft) else "right"
            return f"conclusion {_fmt(concl)} is not the {side} conjunct {_fmt(part)}"
        if hyps != p.hypotheses:
            return "hypotheses differ from the premise's"
        return None

    if isinstance(j, IConj):
        a, b = premises
        if concl != Conj(a.conclusion, b.conclusion):
            return (f"conclusion {_fmt(concl)} is not "
                    f"{_fmt(Conj(a.conclusion, b.conclusion))}")
        if hyps != a.hypotheses | b.hypotheses:
            return "hypotheses are not the union of the premises'"
        return None

    if isinstance(j, RNeg):
        (p,) = premises
        if p.conclusion != Neg(Neg(concl)):
            return f"premise conclusion {_fmt(p.conclusion)} is not {_fmt(Neg(Neg(concl)))}"
        if hyps != p.hypotheses:
            return "hypotheses differ from the premise's"
        return None

    a, b = premises
    if b.conclusion != Neg(a.conclusion) and a.conclusion != Neg(b.conclusion):
        return (f"premise conclusions {_fmt(a.conclusion)} and {_fmt(b.conclusion)} "
                "are not a formula and its negation")
    if concl != Neg(j.discharged):
        return f"conclusion {_fmt(concl)} is not the negation of the discharged {_fmt(j.discharged)}"
    expected = (a.hypotheses - {j.discharged}) | (b.hypotheses - {j.discharged})
    if hyps != expected:
        return f"hypotheses should be {_fmt_hyps(expected)}, got {_fmt_hyps(hyps)}"
    return None


def check_step(proof: Proof, index: int) -> Violation | None:
    if not 0 <= index < len(proof):
        raise IndexError(f"step index {index} out of range")
    step = proof[index]
    j = step.justification
    name = rule_name(j)
    for p in _premises(j):
        if not 0 <= p < index:
            return Violation(index, name, f"premise {p + 1} is not an earlier step")
    reason = _reason(step.sequent, j, [proof[p].sequent for p in _premises(j)])
    return None if reason is None else Violation(index, name, reason)


def check_proof(proof: Proof) -> Violation | None:
    """Earliest violation in ``proof``, or None when every step is licensed."""
    if len(proof) == 0:
        return Violation(0, "-", "empty proof")
    for i in range(len(proof)):
        v = check_step(proof, i)
        if v is not None:
            return v
    return None


def conclusion_of(proof: Proof) -> Sequent:
    v = check_proof(proof)
    if v is not None:
        raise ProofError(v)
    return proof[-1].sequent


# ---------------------------------------------------------------------------
# Building
# ---------------------------------------------------------------------------


class ProofBuilder:
    """Appends steps whose sequents are computed from the rule applied.

    Every method returns the index of the new step.  ``extend`` copies a
    whole proof with its indices shifted.
    """

    def __init__(self):
        self.steps: list[Step] = []

    def _add(self, sequent, j) -> int:
        self.steps.append(Step(sequent, j))
        return len(self.steps) - 1

    def concl(self, i: int) -> Formula:
        return self.steps[i].sequent.conclusion

    def hyps(self, i: int) -> frozenset:
        return self.steps[i].sequent.hypotheses

    def axiom(self, f: Formula) -> int:
        return self._add(Sequent([f], f), Axiom())

    def r_conj_left(self, i: int) -> int:
        c = self.concl(i)
        return self._add(Sequent(self.hyps(i), c.left), RConjLeft(i))

    def r_conj_right(self, i: int) -> int:
        c = self.concl(i)
        return self._add(Sequent(self.hyps(i), c.right), RConjRight(i))

    def i_conj(self, i: int, j: int) -> int:
        return self._add(Sequent(self.hyps(i) | self.hyps(j), Conj(self.concl(i), self.concl(j))),
                         IConj(i, j))

    def r_neg(self, i: int) -> int:
        return self._add(Sequent(self.hyps(i), self.concl(i).inner.inner), RNeg(i))

    def i_neg(self, pos: int, neg: int, discharged: Formula) -> int:
        hyps = (self.hyps(pos) - {discharged}) | (self.hyps(neg) - {discharged})
        return self._add(Sequent(hyps, Neg(discharged)), INeg(pos, neg, discharged))

    def extend(self, proof: Proof) -> int:
        """Append ``proof``; returns the index of its last step."""
        off = len(self.steps)
        for step in proof.steps:
            self.steps.append(Step(step.sequent, _shift(step.justification, off)))
        return len(self.steps) - 1

    def build(self) -> Proof:
        return Proof(self.steps)


def _shift(j: Justification, off: int) -> Justification:
    if isinstance(j, Axiom):
        return j
    if isinstance(j, IConj):
        return IConj(j.left + off, j.right + off)
    if isinstance(j, INeg):
        return INeg(j.pos_premise + off, j.neg_premise + off, j.discharged)
    return type(j)(j.premise + off)


# ---------------------------------------------------------------------------
# Semantics
# ---------------------------------------------------------------------------


def proof_atoms(proof: Proof) -> list[str]:
    names: dict[str, None] = {}
    for step in proof.steps:
        for f in (*sorted(step.sequent.hypotheses, key=render_formula), step.sequent.conclusion):
            for a in atoms_of(f):
                names.setdefault(a, None)
    return list(names)


def sequent_holds(s: Sequent, g) -> bool:
    """Soundness condition: a false conclusion forces some false hypothesis."""
    if eval_formula(s.conclusion, g) == 1:
        return True
    return any(eval_formula(h, g) == 0 for h in s.hypotheses)


def countermodel(proof: Proof) -> tuple[int, dict[str, int]] | None:
    """First (step, assignment) at which a step's sequent is semantically unsound."""
    names = proof_atoms(proof)
    for g in assignments(names):
        for i, step in enumerate(proof.steps):
            if not sequent_holds(step.sequent, g):
                return i, g
    return None


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


def render_sequent(s: Sequent) -> str:
    hyps = ", ".join(sorted(render_formula(h) for h in s.hypotheses))
    lhs = f"{hyps} " if hyps else ""
    return f"{lhs}|- {render_formula(s.conclusion)}"


def render_justification(j: Justification) -> str:
    name = rule_name(j)
    if isinstance(j, Axiom):
        return name
    if isinstance(j, INeg):
        return f"{name} {j.pos_premise + 1} {j.neg_premise + 1} {render_formula(j.discharged)}"
    return " ".join([name, *(str(p + 1) for p in _premises(j))])


def render_proof(proof: Proof) -> str:
    lines = []
    for n, step in enumerate(proof.steps, 1):
        lines.append(f"{n}. {render_sequent(step.sequent)} ; {render_justification(step.justification)}")
    return "\n".join(lines) + "\n"


_LINE = re.compile(r"^\s*(\d+)\.\s*(.*?)\s*\|-\s*(.*?)\s*;\s*(.*?)\s*$")
_RULE = re.compile(r"^(AX|R&L|R&R|I&|R~|I~)(?:\s+(.*))?$")


def _parse_rule(text: str, line: int) -> Justification:
    m = _RULE.match(text)
    if not m:
        raise ProofFormatError(f"unknown rule {text!r}", line)
    name, rest = m.group(1), (m.group(2) or "").strip()
    if name == "AX":
        if rest:
            raise ProofFormatError("AX takes no arguments", line)
        return Axiom()
    if name == "I~":
        parts = rest.split(None, 2)
        if len(parts) != 3 or not (parts[0].isdigit() and parts[1].isdigit()):
            raise ProofFormatError("I~ needs two step numbers and a formula", line)
        return INeg(int(parts[0]) - 1, int(parts[1]) - 1, parse_formula(parts[2]))
    args = rest.split()
    arity = 2 if name == "I&" else 1
    if len(args) != arity or not all(a.isdigit() for a in args):
        raise ProofFormatError(f"{name} needs {arity} step number(s)", line)
    idx = [int(a) - 1 for a in args]
    if name == "I&":
        return IConj(*idx)
    return {"R&L": RConjLeft, "R&R": RConjRight, "R~": RNeg}[name](idx[0])


def parse_proof(text: str) -> Proof:
    """Parse the one-step-per-line format.  Blank lines and ``#`` comments are skipped.

    Step numbers must run 1, 2, 3, ... in order.
    """
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        m = _LINE.match(raw)
        if not m:
            raise ProofFormatError("expected '<n>. <hyps> |- <formula> ; <rule>'", lineno)
        n, hyps, concl, rule = m.groups()
        if int(n) != len(steps) + 1:
            raise ProofFormatError(f"expected step number {len(steps) + 1}, got {n}", lineno)
        try:
            hyp_list = [parse_formula(h) for h in hyps.split(",")] if hyps else []
            conclusion = parse_formula(concl)
            j = _parse_rule(rule, lineno)
        except ValueError as e:
            if isinstance(e, ProofFormatError):
                raise
            raise ProofFormatError(str(e), lineno) from e
        steps.append(Step(Sequent(hyp_list, conclusion), j))
    return Proof(steps)
