"""Shared strategies, constants and the acceptance-result register."""

from pathlib import Path

from hypothesis import strategies as st

from logprob.formula import Atom, Conj, Neg

DATA = Path(__file__).parent / "data"

THREE_ATOM_TAUTOLOGY = "(~((~(A & (~C))) & ((A & B) & (~C))))"

ATOM_NAMES = ["A", "B", "C"]


def formulas(names=ATOM_NAMES, max_leaves=12):
    leaves = st.sampled_from(names).map(Atom)
    return st.recursive(
        leaves,
        lambda sub: st.one_of(sub.map(Neg), st.tuples(sub, sub).map(lambda p: Conj(*p))),
        max_leaves=max_leaves,
    )


def assignments_for(names=ATOM_NAMES):
    return st.fixed_dictionaries({n: st.sampled_from([0, 1]) for n in names})


# per-criterion outcomes, filled by the acceptance tests
ACCEPTANCE: dict[int, tuple[bool, str]] = {}
