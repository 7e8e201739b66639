"""Turning tautologies into proofs from no hypotheses.

For a formula ``f`` and an assignment ``g``, write ``X^g`` for ``X`` when
``g(X) = 1`` and ``(~X)`` otherwise.  ``derive_literal_sequent`` proves

    {B^g : B an atom of f} |- f^g

by recursion on ``f``.  For a tautology, the 2^k such proofs share the
conclusion ``f``; ``eliminate_hypothesis`` merges two of them that differ
only in the literal of one atom ``b`` into a proof without that literal,
using five extra steps::

    (~f) |- (~f)                      AX
    Γ, (~f) |- (~(~b))                I~ discharging (~b)
    Γ, (~f) |- (~b)                   I~ discharging b
    Γ |- (~(~f))                      I~ discharging (~f)
    Γ |- f                            R~

Repeating this k times leaves ``|- f``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .deduction import Proof, ProofBuilder, Sequent, conclusion_of
from .formula import (
    Atom,
    Conj,
    Formula,
    Neg,
    TruthAssignment,
    atoms_of,
    assignments,
    eval_formula,
    falsifying_assignment,
    literal_form,
    render_formula,
)

DEFAULT_PROVE_LIMIT = 12


class SynthesisError(ValueError):
    pass


class NotATautologyError(SynthesisError):
    def __init__(self, formula: Formula, assignment: dict[str, int]):
        shown = ", ".join(f"{k}={v}" for k, v in assignment.items())
        super().__init__(f"{render_formula(formula)} is not a tautology (false under {shown})")
        self.formula = formula
        self.assignment = assignment


@dataclass
class SynthesisTrace:
    atoms: list[str]
    assignment_count: int
    assignment_proofs: list[Proof] = field(default_factory=list)
    # one entry per round: the eliminated atom and the proofs produced in that round
    rounds: list[tuple[str, list[Proof]]] = field(default_factory=list)

    def to_text(self) -> str:
        lines = [f"atoms: [{', '.join(self.atoms)}]",
                 f"assignment_count: {self.assignment_count}",
                 "assignments:"]
        for g, proof in zip(assignments(self.atoms), self.assignment_proofs):
            bits = "".join(str(g[a]) for a in self.atoms)
            lines.append(f"  - {{bits: '{bits}', hypotheses: {len(proof[-1].sequent.hypotheses)}, "
                         f"steps: {len(proof)}}}")
        lines.append("rounds:")
        for atom, merged in self.rounds:
            sizes = ", ".join(str(len(p)) for p in merged)
            lines.append(f"  - {{eliminated: {atom}, merges: {len(merged)}, steps: [{sizes}]}}")
        return "\n".join(lines) + "\n"


def _derive(b: ProofBuilder, f: Formula, g: TruthAssignment) -> int:
    """Append a derivation of {atom literals of f} |- f^g; return its step index."""
    if isinstance(f, Atom):
        return b.axiom(literal_form(f, g))

    if isinstance(f, Neg):
        sub = _derive(b, f.inner, g)
        if eval_formula(f, g) == 1:
            # the sub-proof already concludes (~G) = f
            return sub
        # sub concludes G; close against (~G) |- (~G)
        neg = b.axiom(Neg(f.inner))
        return b.i_neg(sub, neg, Neg(f.inner))

    if eval_formula(f, g) == 1:
        left = _derive(b, f.left, g)
        right = _derive(b, f.right, g)
        return b.i_conj(left, right)

    # prefer the left conjunct when both are false
    if eval_formula(f.left, g) == 0:
        false_part, other, take = f.left, f.right, b.r_conj_left
    else:
        false_part, other, take = f.right, f.left, b.r_conj_right
    refuted = _derive(b, false_part, g)
    whole = b.axiom(f)
    part = take(whole)
    if not set(atoms_of(other)) - set(atoms_of(false_part)):
        return b.i_neg(part, refuted, f)
    # The other conjunct's atom literals must appear as hypotheses too.  With
    # X = other^g:  Γ1, f |- (~X) by a vacuous discharge of X, then
    # Γ1, Γ2 |- (~f) against Γ2 |- X.  X is not among Γ1, since X could only
    # be a literal there if other had no atoms outside false_part.
    x_proof = _derive(b, other, g)
    x = b.concl(x_proof)
    not_x = b.i_neg(part, refuted, x)
    return b.i_neg(x_proof, not_x, f)


def derive_literal_sequent(f: Formula, g: TruthAssignment) -> Proof:
    b = ProofBuilder()
    _derive(b, f, g)
    return b.build()


def literal_sequent(f: Formula, g: TruthAssignment) -> Sequent:
    """The target of ``derive_literal_sequent``."""
    return Sequent([literal_form(Atom(a), g) for a in atoms_of(f)], literal_form(f, g))


def eliminate_hypothesis(neg_proof: Proof, pos_proof: Proof, b: Formula) -> Proof:
    """Merge proofs of ``(~b), Γ |- A`` and ``b, Γ |- A`` into a proof of ``Γ |- A``."""
    neg_seq = neg_proof[-1].sequent
    pos_seq = pos_proof[-1].sequent
    nb = Neg(b)
    if neg_seq.conclusion != pos_seq.conclusion:
        raise SynthesisError("the two proofs have different conclusions: "
                             f"{render_formula(neg_seq.conclusion)} vs {render_formula(pos_seq.conclusion)}")
    if nb not in neg_seq.hypotheses:
        raise SynthesisError(f"first proof lacks hypothesis {render_formula(nb)}")
    if b not in pos_seq.hypotheses:
        raise SynthesisError(f"second proof lacks hypothesis {render_formula(b)}")
    rest = neg_seq.hypotheses - {nb}
    if pos_seq.hypotheses - {b} != rest or b in rest or nb in rest:
        raise SynthesisError("the remaining hypotheses of the two proofs differ")
    a = neg_seq.conclusion

    pb = ProofBuilder()
    n1 = pb.extend(neg_proof)
    n2 = pb.extend(pos_proof)
    ax = pb.axiom(Neg(a))
    s4 = pb.i_neg(n1, ax, nb)        # Γ, (~A) |- (~(~b))
    s5 = pb.i_neg(n2, ax, b)         # Γ, (~A) |- (~b)
    s6 = pb.i_neg(s5, s4, Neg(a))    # Γ |- (~(~A))
    pb.r_neg(s6)
    return pb.build()


def prove_tautology(f: Formula, limit: int = DEFAULT_PROVE_LIMIT) -> tuple[Proof, SynthesisTrace]:
    """Proof of ``|- f`` for a tautology ``f``, plus a record of the construction.

    Raises ``NotATautologyError`` carrying a falsifying assignment otherwise.
    """
    names = atoms_of(f)
    if len(names) > limit:
        raise SynthesisError(f"{len(names)} atoms exceeds the proving limit of {limit}")
    bad = falsifying_assignment(f, limit)
    if bad is not None:
        raise NotATautologyError(f, bad)

    trace = SynthesisTrace(list(names), 2 ** len(names))
    layer = [derive_literal_sequent(f, g) for g in assignments(names)]
    trace.assignment_proofs = list(layer)
    # assignments are lexicographic, so the last atom alternates fastest:
    # pairs (2i, 2i+1) agree on every other atom
    for name in reversed(names):
        atom = Atom(name)
        layer = [eliminate_hypothesis(layer[i], layer[i + 1], atom)
                 for i in range(0, len(layer), 2)]
        trace.rounds.append((name, list(layer)))
    (proof,) = layer
    seq = conclusion_of(proof)
    if seq.hypotheses or seq.conclusion != f:
        raise SynthesisError("internal error: synthesized proof has the wrong conclusion")
    return proof, trace
