"""Events over a finite outcome space and their B-function values.

An event is a term built from atomic events with product ``(A*B)``,
complement ``(#A)``, sum ``(A+B)`` and the constants ``T`` and ``F``.  Sum
is not primitive: it is rewritten to ``#((#A)*(#B))`` before evaluation.

A ``ProbModel`` fixes ``m`` atomic events and assigns an exact rational
weight to each of the ``2**m`` outcome rows.  The B-function value of an
event is the total weight of the rows on which it occurs.

Rows are numbered so that the first atom is the most significant bit.  The
set of rows where an event occurs is carried as a Python int bitmask (bit
``i`` set when row ``i`` is in the event), which keeps evaluation of large
sums of products cheap.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence, Union

from .report import CheckReport

MAX_MODEL_ATOMS = 20


@dataclass(frozen=True)
class AtomEvent:
    name: str


@dataclass(frozen=True)
class Product:
    left: "EventExpr"
    right: "EventExpr"


@dataclass(frozen=True)
class Complement:
    inner: "EventExpr"


@dataclass(frozen=True)
class Sum:
    left: "EventExpr"
    right: "EventExpr"


@dataclass(frozen=True)
class _Constant:
    name: str

    def __repr__(self):
        return self.name


T = _Constant("T")
F = _Constant("F")

EventExpr = Union[AtomEvent, Product, Complement, Sum, _Constant]


def _children(e) -> tuple:
    if isinstance(e, (Product, Sum)):
        return (e.left, e.right)
    if isinstance(e, Complement):
        return (e.inner,)
    return ()


def _fold(e: EventExpr, leaf, node):
    """Post-order fold without recursion; sums of hundreds of terms nest deeply."""
    done: dict[int, object] = {}
    stack = [(e, False)]
    while stack:
        x, expanded = stack.pop()
        if id(x) in done:
            continue
        kids = _children(x)
        if not kids:
            done[id(x)] = leaf(x)
        elif expanded:
            done[id(x)] = node(x, *(done[id(k)] for k in kids))
        else:
            stack.append((x, True))
            stack.extend((k, False) for k in kids)
    return done[id(e)]


def normalize(e: EventExpr) -> EventExpr:
    """Rewrite every ``Sum`` as the complement of the product of complements."""
    def node(x, *kids):
        if isinstance(x, Sum):
            return Complement(Product(Complement(kids[0]), Complement(kids[1])))
        return Product(*kids) if isinstance(x, Product) else Complement(*kids)

    return _fold(e, lambda x: x, node)


def product_of(factors: Sequence[EventExpr]) -> EventExpr:
    """Left-nested product; the empty product is ``T``."""
    if not factors:
        return T
    out = factors[0]
    for f in factors[1:]:
        out = Product(out, f)
    return out


def sum_of(terms: Sequence[EventExpr]) -> EventExpr:
    """Left-nested sum; the empty sum is ``F``."""
    if not terms:
        return F
    out = terms[0]
    for t in terms[1:]:
        out = Sum(out, t)
    return out


def event_atoms(e: EventExpr) -> set[str]:
    return _fold(e, lambda x: {x.name} if isinstance(x, AtomEvent) else set(),
                 lambda x, *kids: set().union(*kids))


def _chain(e, kind):
    parts = []
    while isinstance(e, kind):
        parts.append(e.right)
        e = e.left
    parts.append(e)
    return parts[::-1]


def render_event(e: EventExpr) -> str:
    """Text form; left-nested chains print flat, e.g. ``(B1*B2*(#B3))``."""
    if isinstance(e, (AtomEvent, _Constant)):
        return e.name
    if isinstance(e, Complement):
        return f"(#{render_event(e.inner)})"
    op = "*" if isinstance(e, Product) else " + "
    return "(" + op.join(render_event(x) for x in _chain(e, type(e))) + ")"


# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------


def parse_rational(text) -> Fraction:
    """``"3/4"``, ``"0.75"`` or a number, converted exactly."""
    if isinstance(text, float):
        text = repr(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"not a rational number: {text!r}") from e


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class ProbModel:
    """Finite outcome space with exact weights.

    Weights are stored as integer numerators over one common denominator;
    ``weights`` gives them back as fractions, indexed by row.
    """

    atoms: tuple
    numerators: tuple = field(repr=False)
    denominator: int
    independent: bool = False
    atom_probs: tuple | None = None

    def __post_init__(self):
        if len(set(self.atoms)) != len(self.atoms):
            raise ModelError("duplicate atom names")
        if len(self.atoms) > MAX_MODEL_ATOMS:
            raise ModelError(f"{len(self.atoms)} atoms exceeds the limit of {MAX_MODEL_ATOMS}")
        if len(self.numerators) != 2 ** len(self.atoms):
            raise ModelError("need one weight per outcome row")
        if any(n < 0 for n in self.numerators):
            raise ModelError("weights must be nonnegative")
        if sum(self.numerators) != self.denominator:
            raise ModelError("weights must sum to 1")

    @classmethod
    def product(cls, probs: Mapping[str, object]) -> "ProbModel":
        """Independent atoms with the given probabilities."""
        names = tuple(probs)
        ps = [parse_rational(probs[n]) for n in names]
        for n, p in zip(names, ps):
            if not 0 <= p <= 1:
                raise ModelError(f"probability of {n} is outside [0, 1]")
        den = math.prod(p.denominator for p in ps)
        # per atom: weight numerators for the "false" and "true" values over den_j
        pairs = [(p.denominator - p.numerator, p.numerator) for p in ps]
        nums = [1]
        for lo, hi in pairs:
            nums = [w * v for w in nums for v in (lo, hi)]
        return cls(names, tuple(nums), den, True, tuple(ps))

    @classmethod
    def joint(cls, atoms: Sequence[str], weights: Mapping[int | str, object]) -> "ProbModel":
        """Explicit weights keyed by row index or bit string (first atom first); missing rows weigh 0."""
        names = tuple(atoms)
        m = len(names)
        fr = [Fraction(0)] * (2 ** m)
        for key, w in weights.items():
            if isinstance(key, str):
                if len(key) != m or set(key) - {"0", "1"}:
                    raise ModelError(f"row {key!r} is not a {m}-bit string")
                key = int(key, 2)
            fr[key] += parse_rational(w)
        den = math.lcm(*(w.denominator for w in fr)) if fr else 1
        return cls(names, tuple(int(w * den) for w in fr), den)

    @property
    def rows(self) -> int:
        return len(self.numerators)

    @property
    def weights(self) -> list[Fraction]:
        return [Fraction(n, self.denominator) for n in self.numerators]

    def row_bits(self, row: int) -> dict[str, int]:
        m = len(self.atoms)
        return {a: (row >> (m - 1 - j)) & 1 for j, a in enumerate(self.atoms)}

    def atom_mask(self, name: str) -> int:
        try:
            j = self.atoms.index(name)
        except ValueError:
            raise ModelError(f"unknown atom {name!r}") from None
        m = len(self.atoms)
        s = 1 << (m - 1 - j)
        block = ((1 << s) - 1) << s
        repunit = ((1 << (1 << m)) - 1) // ((1 << (2 * s)) - 1)
        return block * repunit

    @property
    def full_mask(self) -> int:
        return (1 << self.rows) - 1

    def is_degenerate(self) -> bool:
        return all(n in (0, self.denominator) for n in self.numerators)


def truth_mask(model: ProbModel, e: EventExpr) -> int:
    """Bitmask of the rows on which ``e`` occurs; a sum is evaluated as ``#((#A)*(#B))``."""
    full = model.full_mask
    masks: dict[str, int] = {}

    def leaf(x) -> int:
        if isinstance(x, AtomEvent):
            if x.name not in masks:
                masks[x.name] = model.atom_mask(x.name)
            return masks[x.name]
        if x is T:
            return full
        if x is F:
            return 0
        raise TypeError(f"not an event: {x!r}")

    def node(x, *kids) -> int:
        if isinstance(x, Product):
            return kids[0] & kids[1]
        if isinstance(x, Complement):
            return full ^ kids[0]
        return full ^ ((full ^ kids[0]) & (full ^ kids[1]))

    return _fold(e, leaf, node)


def mask_weight(model: ProbModel, mask: int) -> Fraction:
    bits = bin(mask)[2:][::-1]
    total = sum(n for n, c in zip(model.numerators, bits) if c == "1")
    return Fraction(total, model.denominator)


def b_eval(model: ProbModel, e: EventExpr) -> Fraction:
    """Total weight of the outcome rows on which ``e`` occurs."""
    return mask_weight(model, truth_mask(model, e))


def events_equal(model: ProbModel, a: EventExpr, b: EventExpr) -> bool:
    """Same occurrence on every outcome row."""
    return truth_mask(model, a) == truth_mask(model, b)


def load_model(data: Mapping) -> ProbModel:
    """Build a model from parsed structured text.

    Either ``{"atoms": [{"name": A, "p": "1/2"}, ...]}`` (independent atoms) or
    ``{"atoms": [A, B], "joint": [{"bits": "01", "weight": "1/4"}, ...]}``.
    """
    if not isinstance(data, Mapping) or "atoms" not in data:
        raise ModelError("model needs an 'atoms' list")
    atoms = data["atoms"]
    if "joint" in data:
        names = [a if isinstance(a, str) else a["name"] for a in atoms]
        weights: dict = {}
        for entry in data["joint"]:
            bits = str(entry["bits"])
            weights[bits] = weights.get(bits, 0) + parse_rational(entry["weight"])
        return ProbModel.joint(names, weights)
    try:
        return ProbModel.product({a["name"]: a["p"] for a in atoms})
    except (TypeError, KeyError) as e:
        raise ModelError("each atom needs 'name' and 'p'") from e


def random_event(rng: random.Random, names: Sequence[str], max_depth: int,
                 constants: bool = True) -> EventExpr:
    if max_depth == 0 or rng.random() < 0.3:
        if constants and rng.random() < 0.08:
            return rng.choice([T, F])
        return AtomEvent(rng.choice(names))
    kind = rng.random()
    if kind < 0.3:
        return Complement(random_event(rng, names, max_depth - 1, constants))
    cls = Product if kind < 0.7 else Sum
    return cls(random_event(rng, names, max_depth - 1, constants),
               random_event(rng, names, max_depth - 1, constants))


# ---------------------------------------------------------------------------
# Identity checks
# ---------------------------------------------------------------------------


def verify_b_identities(model: ProbModel, trials: int, seed: int = 0, max_depth: int = 3) -> CheckReport:
    """Check the B-function identities on random events, exactly."""
    rng = random.Random(seed)
    names = list(model.atoms)
    report = CheckReport(trials)

    def b(e):
        return b_eval(model, e)

    def show(*es):
        return ", ".join(render_event(e) for e in es)

    report.record("certain", b(T) == 1, "b(T) != 1")
    report.record("impossible", b(F) == 0, "b(F) != 0")
    for _ in range(trials):
        A, B, C = (random_event(rng, names, max_depth) for _ in range(3))
        AB, AC, BC = Product(A, B), Product(A, C), Product(B, C)
        ABC = Product(AB, C)
        report.record("split", b(AB) + b(Product(A, Complement(B))) == b(A), show(A, B))
        report.record("monotone", b(AB) <= b(A), show(A, B))
        report.record("certain", b(Product(T, B)) == b(B) and b(T) == 1, show(B))
        report.record("complement", b(B) + b(Complement(B)) == 1, show(B))
        report.record("impossible", b(Product(F, B)) == 0, show(B))
        lhs5 = b(Product(A, Sum(B, C)))
        rhs = b(AB) + b(AC) - b(ABC)
        report.record("distribute", lhs5 == rhs, show(A, B, C))
        lhs6 = b(Sum(AB, AC))
        report.record("distribute-sum", lhs6 == rhs, show(A, B, C))
        report.record("distribute-agree", lhs5 == lhs6, show(A, B, C))
        report.record("addition", b(Sum(B, C)) == b(B) + b(C) - b(BC), show(B, C))
        # antithetical by construction: (C * #B) never occurs together with B
        D = Product(C, Complement(B))
        report.record("disjoint-additivity", b(Sum(B, D)) == b(B) + b(D), show(B, D))
        if b(BC) == 0:
            report.record("disjoint-additivity", b(Sum(B, C)) == b(B) + b(C), show(B, C))
        if b(BC) == b(B) * b(C):
            report.record("independent-complement", b(Product(B, Complement(C))) == b(B) * b(Complement(C)), show(B, C))
        if model.independent and len(names) > 1:
            # events over disjoint atoms are independent under a product measure
            cut = rng.randrange(1, len(names))
            shuffled = rng.sample(names, len(names))
            X = random_event(rng, shuffled[:cut], max_depth)
            Y = random_event(rng, shuffled[cut:], max_depth)
            XY = Product(X, Y)
            if b(XY) == b(X) * b(Y):
                report.record("independent-complement", b(Product(X, Complement(Y))) == b(X) * b(Complement(Y)), show(X, Y))
            else:
                report.record("independence", False, f"disjoint-atom events not independent: {show(X, Y)}")
        report.record("annihilation", b(Product(Product(A, Complement(A)), C)) == 0, show(A, C))
    return report


def boolean_restriction_check(model: ProbModel, trials: int, seed: int = 0, max_depth: int = 3) -> CheckReport:
    """On a 0/1 measure, b restricted to events behaves as a Boolean function."""
    if not model.is_degenerate():
        raise ModelError("model is not degenerate: every outcome weight must be 0 or 1")
    rng = random.Random(seed)
    names = list(model.atoms)
    report = CheckReport(trials)
    for _ in range(trials):
        A = random_event(rng, names, max_depth)
        B = random_event(rng, names, max_depth)
        bA, bB = b_eval(model, A), b_eval(model, B)
        shown = f"{render_event(A)}, {render_event(B)}"
        report.record("two-valued", bA in (0, 1) and bB in (0, 1), shown)
        report.record("complement", b_eval(model, Complement(A)) == 1 - bA, shown)
        report.record("product", b_eval(model, Product(A, B)) == bA * bB, shown)
    return report


# ---------------------------------------------------------------------------
# Independent trials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TestScheme:
    """``r`` independent trials of an event with probability ``p``.

    Trial ``i`` is the atomic event ``<name><i>`` (1-based).
    """

    name: str
    r: int
    p: Fraction

    __test__ = False  # not a pytest class

    def __post_init__(self):
        object.__setattr__(self, "p", parse_rational(self.p))
        if self.r < 1:
            raise ValueError("a test scheme needs at least one trial")
        if not 0 <= self.p <= 1:
            raise ValueError("p must lie in [0, 1]")

    def trial(self, i: int) -> AtomEvent:
        return AtomEvent(f"{self.name}{i}")

    def model(self, r: int | None = None) -> ProbModel:
        r = self.r if r is None else r
        return ProbModel.product({f"{self.name}{i}": self.p for i in range(1, r + 1)})


def _check_rk(scheme: TestScheme, r: int, k: int):
    if not 1 <= r <= scheme.r:
        raise ValueError(f"range r={r} must lie in 1..{scheme.r}")
    if not 0 <= k <= r:
        raise ValueError(f"k={k} must lie in 0..{r}")


def series_members(scheme: TestScheme, r: int, k: int) -> list[EventExpr]:
    """Products of the first ``r`` trials, exactly ``k`` of them uncomplemented."""
    _check_rk(scheme, r, k)
    out = []
    for hits in combinations(range(1, r + 1), k):
        chosen = set(hits)
        out.append(product_of([scheme.trial(i) if i in chosen else Complement(scheme.trial(i))
                               for i in range(1, r + 1)]))
    return out


def t_sum(scheme: TestScheme, r: int, k: int) -> EventExpr:
    """The event "exactly k successes in the first r trials"."""
    return sum_of(series_members(scheme, r, k))


def _round_range(r: int, a, b) -> tuple[int, int]:
    a, b = parse_rational(a), parse_rational(b)
    if a > b:
        raise ValueError("lower bound exceeds upper bound")
    k, l = math.ceil(a), math.floor(b)
    return k, l


def f_event(scheme: TestScheme, r: int, a, b) -> EventExpr:
    """The event "between a and b successes in the first r trials".

    Real bounds round inward: ``k = ceil(a)``, ``l = floor(b)``.  Bounds
    outside ``[0, r]`` are clipped with a warning; an empty range gives ``F``.
    """
    _check_rk(scheme, r, 0)
    k, l = _round_range(r, a, b)
    if k < 0 or l > r:
        warnings.warn(f"bounds [{a}, {b}] clipped to [0, {r}]", stacklevel=2)
        k, l = max(k, 0), min(l, r)
    if k > l:
        return F
    event = t_sum(scheme, r, k)
    for j in range(k + 1, l + 1):
        event = Sum(event, t_sum(scheme, r, j))
    return event


def success_count_mask(model: ProbModel, names: Iterable[str], lo: int, hi: int) -> int:
    """Rows whose number of true atoms among ``names`` lies in ``[lo, hi]``, by direct enumeration."""
    idx = [model.atoms.index(n) for n in names]
    m = len(model.atoms)
    mask = 0
    for row in range(model.rows):
        hits = sum((row >> (m - 1 - j)) & 1 for j in idx)
        if lo <= hits <= hi:
            mask |= 1 << row
    return mask


def bernoulli_pmf(r: int, k: int, p) -> Fraction:
    p = parse_rational(p)
    if r < 0 or not 0 <= k <= r:
        raise ValueError(f"need 0 <= k <= r, got r={r}, k={k}")
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    return math.comb(r, k) * p ** k * (1 - p) ** (r - k)


def binomial_tail(r: int, a, b, p) -> Fraction:
    """Sum of ``bernoulli_pmf(r, k, p)`` over integers ``k`` in ``[a, b]`` and ``[0, r]``."""
    k, l = _round_range(r, a, b)
    k, l = max(k, 0), min(l, r)
    return sum((bernoulli_pmf(r, j, p) for j in range(k, l + 1)), Fraction(0))


def lln_bound(r: int, p, eps) -> Fraction:
    """Chebyshev lower bound ``1 - p(1-p)/(r eps^2)``; may be negative."""
    p, eps = parse_rational(p), parse_rational(eps)
    if r < 1:
        raise ValueError("r must be at least 1")
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    if eps <= 0:
        raise ValueError("eps must be positive")
    return 1 - p * (1 - p) / (r * eps ** 2)


@dataclass(frozen=True)
class VarianceCheck:
    r: int
    p: Fraction
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def variance_identity_check(r: int, p) -> VarianceCheck:
    """Compare the second central moment of Binomial(r, p) with ``r p (1-p)``.

    ``r = 0`` is admitted here (both sides are 0) even though a test scheme
    needs at least one trial.
    """
    p = parse_rational(p)
    if r < 0:
        raise ValueError("r must be nonnegative")
    lhs = sum(((k - r * p) ** 2 * bernoulli_pmf(r, k, p) for k in range(r + 1)), Fraction(0))
    return VarianceCheck(r, p, lhs, r * p * (1 - p))
