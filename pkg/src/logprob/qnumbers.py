"""Density filter on the naturals and Q-numbers modulo filter agreement.

Index sets are subsets of N = {1, 2, 3, ...}.  The supported sets are finite
boolean combinations of finite sets, cofinite sets, residue classes and
thresholds ``{n : n > m}``.  Every such set is eventually periodic: beyond
some offset ``t`` membership depends only on ``n mod P``.  That makes prefix
frequencies, densities, subset tests and filter membership exact.

The filter contains the sets of density 1.  It is closed under finite
intersection and supersets but is not an ultrafilter: neither the even
numbers nor the odd numbers belong to it.

A sequence is a rational function of ``n`` with rational coefficients plus
finitely many overridden values.  At a pole of the rational function that is
not overridden the sequence is taken to be 0; finitely many values never
matter modulo the filter.  A Q-number is a sequence read modulo agreement on
a filter set, and its arithmetic is pointwise.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .report import CheckReport

MAX_SCAN = 10 ** 6


# ---------------------------------------------------------------------------
# Index sets
# ---------------------------------------------------------------------------


def _naturals(xs: Iterable[int]) -> list[int]:
    out = [int(x) for x in xs]
    if any(x < 1 for x in out):
        raise ValueError("index sets live in N = {1, 2, ...}")
    return out


@dataclass(frozen=True)
class Finite:
    elements: frozenset = frozenset()

    def __init__(self, elements: Iterable[int] = ()):
        object.__setattr__(self, "elements", frozenset(_naturals(elements)))


@dataclass(frozen=True)
class Cofinite:
    excluded: frozenset = frozenset()

    def __init__(self, excluded: Iterable[int] = ()):
        object.__setattr__(self, "excluded", frozenset(_naturals(excluded)))


@dataclass(frozen=True)
class Residue:
    """``{n : n ≡ a (mod m)}``."""

    a: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "a", self.a % self.m)


@dataclass(frozen=True)
class Threshold:
    """``{n : n > m}``."""

    m: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("threshold must be nonnegative")


@dataclass(frozen=True)
class Intersection:
    left: "IndexSet"
    right: "IndexSet"


@dataclass(frozen=True)
class Union_:
    left: "IndexSet"
    right: "IndexSet"


@dataclass(frozen=True)
class Complement:
    inner: "IndexSet"


IndexSet = Union[Finite, Cofinite, Residue, Threshold, Intersection, Union_, Complement]

NATURALS = Cofinite()
EMPTY = Finite()


def contains(A: IndexSet, n: int) -> bool:
    if isinstance(A, Finite):
        return n in A.elements
    if isinstance(A, Cofinite):
        return n not in A.excluded
    if isinstance(A, Residue):
        return n % A.m == A.a
    if isinstance(A, Threshold):
        return n > A.m
    if isinstance(A, Intersection):
        return contains(A.left, n) and contains(A.right, n)
    if isinstance(A, Union_):
        return contains(A.left, n) or contains(A.right, n)
    return not contains(A.inner, n)


def profile(A: IndexSet) -> tuple[int, int]:
    """``(t, P)``: for ``n > t`` membership of ``n`` equals that of ``n + P``."""
    if isinstance(A, Finite):
        return max(A.elements, default=0), 1
    if isinstance(A, Cofinite):
        return max(A.excluded, default=0), 1
    if isinstance(A, Residue):
        return 0, A.m
    if isinstance(A, Threshold):
        return A.m, 1
    if isinstance(A, Complement):
        return profile(A.inner)
    t1, p1 = profile(A.left)
    t2, p2 = profile(A.right)
    return max(t1, t2), math.lcm(p1, p2)


def _count_direct(A: IndexSet, lo: int, hi: int) -> int:
    return sum(1 for n in range(lo, hi + 1) if contains(A, n))


def count_upto(A: IndexSet, n: int) -> int:
    """``|A ∩ {1..n}|``."""
    t, P = profile(A)
    if n <= t + P:
        return _count_direct(A, 1, n)
    full, rem = divmod(n - t, P)
    return (_count_direct(A, 1, t) + full * _count_direct(A, t + 1, t + P)
            + _count_direct(A, t + 1, t + rem))


def freq(A: IndexSet, n: int) -> Fraction:
    """Share of ``{1..n}`` that lies in ``A``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return Fraction(count_upto(A, n), n)


def density(A: IndexSet) -> Fraction:
    """Limit of ``freq(A, n)``: the share of one period beyond the offset."""
    t, P = profile(A)
    return Fraction(_count_direct(A, t + 1, t + P), P)


def in_filter(A: IndexSet) -> bool:
    return density(A) == 1


def is_subset(A: IndexSet, B: IndexSet) -> bool:
    t1, p1 = profile(A)
    t2, p2 = profile(B)
    end = max(t1, t2) + math.lcm(p1, p2)
    return all(contains(B, n) for n in range(1, end + 1) if contains(A, n))


def render_set(A: IndexSet) -> str:
    """Prefix syntax accepted by ``parse_set``."""
    if isinstance(A, Finite):
        return "none" if not A.elements else "fin " + ",".join(map(str, sorted(A.elements)))
    if isinstance(A, Cofinite):
        return "all" if not A.excluded else "cofin " + ",".join(map(str, sorted(A.excluded)))
    if isinstance(A, Residue):
        return f"res {A.a} {A.m}"
    if isinstance(A, Threshold):
        return f"thr {A.m}"
    if isinstance(A, Complement):
        return f"not {render_set(A.inner)}"
    op = "and" if isinstance(A, Intersection) else "or"
    return f"{op} {render_set(A.left)} {render_set(A.right)}"


def random_index_set(rng: random.Random, max_depth: int = 3) -> IndexSet:
    if max_depth == 0 or rng.random() < 0.4:
        kind = rng.randrange(6)
        if kind == 0:
            return Finite(rng.sample(range(1, 30), rng.randrange(0, 5)))
        if kind == 1:
            return Cofinite(rng.sample(range(1, 30), rng.randrange(0, 5)))
        if kind in (2, 3):
            m = rng.randrange(1, 7)
            return Residue(rng.randrange(m), m)
        if kind == 4:
            return Threshold(rng.randrange(0, 40))
        return rng.choice([NATURALS, EMPTY])
    kind = rng.randrange(3)
    if kind == 0:
        return Complement(random_index_set(rng, max_depth - 1))
    cls = Intersection if kind == 1 else Union_
    return cls(random_index_set(rng, max_depth - 1), random_index_set(rng, max_depth - 1))


def random_filter_set(rng: random.Random) -> IndexSet:
    """A random set of density 1 built from several shapes."""
    kind = rng.randrange(4)
    if kind == 0:
        return Threshold(rng.randrange(0, 50))
    if kind == 1:
        return Cofinite(rng.sample(range(1, 40), rng.randrange(0, 6)))
    if kind == 2:
        m = rng.randrange(1, 6)
        # all residues mod m, minus a finite set
        whole: IndexSet = Residue(0, m)
        for a in range(1, m):
            whole = Union_(whole, Residue(a, m))
        return Intersection(whole, Complement(Finite(rng.sample(range(1, 40), 3))))
    return Union_(random_index_set(rng, 2), Threshold(rng.randrange(0, 50)))


# ---------------------------------------------------------------------------
# Polynomials: tuples of Fraction coefficients, constant term first
# ---------------------------------------------------------------------------


def _poly(coeffs: Iterable) -> tuple:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _padd(p, q):
    n = max(len(p), len(q))
    return _poly((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def _pscale(p, c):
    return _poly(c * x for x in p)


def _pmul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _poly(out)


def _peval(p, n) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * n + c
    return acc


def _root_bound(p) -> int:
    """Every positive real root of ``p`` is at most this (Cauchy); 0 for constants."""
    if len(p) <= 1:
        return 0
    lead = p[-1]
    bound = 1 + max(abs(c / lead) for c in p[:-1])
    b = math.floor(bound)
    if b > MAX_SCAN:
        raise ValueError("polynomial root bound too large to scan")
    return b


def _positive_roots(p) -> list[int]:
    return [n for n in range(1, _root_bound(p) + 1) if _peval(p, n) == 0]


def _render_poly(p) -> str:
    if not p:
        return "0"
    terms = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        var = "" if i == 0 else ("n" if i == 1 else f"n^{i}")
        if var and c == 1:
            terms.append(var)
        elif var and c == -1:
            terms.append(f"-{var}")
        else:
            terms.append(f"{c}{'*' if var else ''}{var}")
    return " + ".join(terms).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# Sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeqReal:
    """``n ↦ num(n) / den(n)`` with finitely many values overridden."""

    num: tuple
    den: tuple
    overrides: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "num", _poly(self.num))
        object.__setattr__(self, "den", _poly(self.den))
        if not self.den:
            raise ValueError("denominator is identically zero")
        ov = tuple(sorted((int(n), Fraction(v)) for n, v in dict(self.overrides).items()))
        if any(n < 1 for n, _ in ov):
            raise ValueError("override index must be a natural number")
        object.__setattr__(self, "overrides", ov)

    def __call__(self, n: int) -> Fraction:
        ov = dict(self.overrides)
        if n in ov:
            return ov[n]
        d = _peval(self.den, n)
        return Fraction(0) if d == 0 else _peval(self.num, n) / d

    def exceptional(self) -> set[int]:
        """Indices where the value is not simply ``num(n)/den(n)``."""
        return {n for n, _ in self.overrides} | set(_positive_roots(self.den))

    def base(self) -> "SeqReal":
        return SeqReal(self.num, self.den)

    def __str__(self):
        if self.den == (1,):
            text = _render_poly(self.num)
        else:
            text = f"({_render_poly(self.num)})/({_render_poly(self.den)})"
        if self.overrides:
            text += " except " + ", ".join(f"n={n}: {v}" for n, v in self.overrides)
        return text


def constant(q) -> SeqReal:
    return SeqReal((Fraction(q),), (1,))


def identity() -> SeqReal:
    return SeqReal((0, 1), (1,))


def rational_function(num: Sequence, den: Sequence = (1,)) -> SeqReal:
    """Coefficients are given constant term first: ``(0, 1)`` is ``n``."""
    return SeqReal(tuple(num), tuple(den))


def piecewise(base: SeqReal, overrides: Mapping[int, object]) -> SeqReal:
    merged = dict(base.overrides)
    merged.update({n: Fraction(v) for n, v in overrides.items()})
    return SeqReal(base.num, base.den, tuple(merged.items()))


def agreement_set(r: SeqReal, s: SeqReal) -> IndexSet:
    """``{n : r(n) = s(n)}`` as a finite or cofinite set."""
    diff = _padd(_pmul(r.num, s.den), _pscale(_pmul(s.num, r.den), -1))
    candidates = r.exceptional() | s.exceptional()
    if diff:
        candidates |= set(_positive_roots(diff))
        return Finite(n for n in candidates if r(n) == s(n))
    return Cofinite(n for n in candidates if r(n) != s(n))


def _combine(a: SeqReal, b: SeqReal, num, den, op) -> SeqReal:
    base = SeqReal(num, den)
    points = a.exceptional() | b.exceptional() | set(_positive_roots(base.den))
    return SeqReal(num, den, tuple((n, op(a(n), b(n))) for n in points))


def _safe_div(x: Fraction, y: Fraction) -> Fraction:
    return Fraction(0) if y == 0 else x / y


def seq_add(a: SeqReal, b: SeqReal) -> SeqReal:
    return _combine(a, b, _padd(_pmul(a.num, b.den), _pmul(b.num, a.den)), _pmul(a.den, b.den),
                    lambda x, y: x + y)


def seq_mul(a: SeqReal, b: SeqReal) -> SeqReal:
    return _combine(a, b, _pmul(a.num, b.num), _pmul(a.den, b.den), lambda x, y: x * y)


def seq_div(a: SeqReal, b: SeqReal) -> SeqReal:
    """Pointwise quotient; 0 wherever the divisor is 0."""
    if not b.num:
        return _combine(a, b, (), (1,), _safe_div)
    return _combine(a, b, _pmul(a.num, b.den), _pmul(a.den, b.num), _safe_div)


def comparison_set(x: SeqReal, op: str, c) -> IndexSet:
    """``{n : x(n) op c}`` for ``op`` in ``<``, ``>``, ``==``."""
    c = Fraction(c)
    if op not in ("<", ">", "=="):
        raise ValueError(f"unknown comparison {op!r}")
    test = {"<": lambda v: v < c, ">": lambda v: v > c, "==": lambda v: v == c}[op]
    # sign of x(n) - c equals the sign of (num - c*den) * den wherever den(n) != 0
    h = _pmul(_padd(x.num, _pscale(x.den, -c)), x.den)
    cut = max([_root_bound(h), _root_bound(x.den), *(n for n, _ in x.overrides)], default=0)
    head = [test(x(n)) for n in range(1, cut + 1)]
    if test(x(cut + 1)):
        return Cofinite(n for n, hit in enumerate(head, 1) if not hit)
    return Finite(n for n, hit in enumerate(head, 1) if hit)


def smallness_set(x: SeqReal, m: int) -> IndexSet:
    """``{n : |x(n)| < 1/m}``."""
    bound = Fraction(1, m)
    return Intersection(comparison_set(x, "<", bound), comparison_set(x, ">", -bound))


def largeness_set(x: SeqReal, m: int) -> IndexSet:
    """``{n : x(n) > m}``."""
    return comparison_set(x, ">", m)


# ---------------------------------------------------------------------------
# Q-numbers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QNumber:
    rep: SeqReal

    def __add__(self, other):
        return q_add(self, _as_q(other))

    def __radd__(self, other):
        return q_add(_as_q(other), self)

    def __sub__(self, other):
        return q_sub(self, _as_q(other))

    def __rsub__(self, other):
        return q_sub(_as_q(other), self)

    def __mul__(self, other):
        return q_mul(self, _as_q(other))

    def __rmul__(self, other):
        return q_mul(_as_q(other), self)

    def __truediv__(self, other):
        return q_div(self, _as_q(other))

    def __rtruediv__(self, other):
        return q_div(_as_q(other), self)

    def __neg__(self):
        return q_mul(standard(-1), self)

    def __str__(self):
        return str(self.rep)


def standard(b) -> QNumber:
    return QNumber(constant(b))


def _as_q(x) -> QNumber:
    return x if isinstance(x, QNumber) else standard(x)


N_INFINITY = QNumber(identity())


def q_eq(a: QNumber, b: QNumber) -> bool:
    return in_filter(agreement_set(a.rep, b.rep))


def q_add(a: QNumber, b: QNumber) -> QNumber:
    return QNumber(seq_add(a.rep, b.rep))


def q_mul(a: QNumber, b: QNumber) -> QNumber:
    return QNumber(seq_mul(a.rep, b.rep))


def q_sub(a: QNumber, b: QNumber) -> QNumber:
    return q_add(a, q_mul(standard(-1), b))


def q_div(a: QNumber, b: QNumber) -> QNumber:
    """``c`` with ``a = b * c`` on a filter set; ``b`` must not be Q-equal to 0."""
    if q_eq(b, standard(0)):
        raise ZeroDivisionError("division by a Q-number equal to 0")
    return QNumber(seq_div(a.rep, b.rep))


@dataclass(frozen=True)
class Classification:
    kind: str
    value: Fraction | None = None
    sign: int = 0

    def __str__(self):
        if self.kind == "standard":
            return f"standard({self.value})"
        if self.kind == "finite-nonstandard":
            return f"finite-nonstandard(limit {self.value})"
        if self.kind == "infinitely-large" and self.sign < 0:
            return "infinitely-large (negative)"
        return self.kind


def classify(a: QNumber) -> Classification:
    """Standard, infinitesimal, infinitely large or finite nonstandard, from degrees.

    ``infinitely-large`` with ``sign=-1`` means ``-a`` is infinitely large.
    Every supported sequence has a limit in the extended reals, so ``mixed``
    is never returned for this class.
    """
    num, den = a.rep.num, a.rep.den
    if not num:
        return Classification("standard", Fraction(0))
    dp, dq = len(num) - 1, len(den) - 1
    ratio = num[-1] / den[-1]
    if dp < dq:
        return Classification("infinitesimal", sign=1 if ratio > 0 else -1)
    if dp > dq:
        return Classification("infinitely-large", sign=1 if ratio > 0 else -1)
    if not _padd(num, _pscale(den, -ratio)):
        return Classification("standard", ratio)
    return Classification("finite-nonstandard", ratio)


def infinitely_near(a: QNumber, b: QNumber) -> bool:
    if q_eq(a, b):
        return True
    c = classify(q_sub(a, b))
    return c.kind == "infinitesimal" or (c.kind == "standard" and c.value == 0)


def s8_witness(a, m: int) -> tuple[int, Threshold]:
    """For ``x(n) = a/n`` with ``a > 0``: the least natural ``k > a`` and the set ``{n > m*k}``.

    Every ``n > m*k`` has ``a/n < 1/m``, and the set's frequency is ``(n - m*k)/n``.
    """
    a = Fraction(a)
    if a <= 0:
        raise ValueError("a must be positive")
    k = math.floor(a) + 1
    return k, Threshold(m * k)


# ---------------------------------------------------------------------------
# Filter laws
# ---------------------------------------------------------------------------


def filter_laws_check(samples: int, seed: int = 0, max_n: int = 200) -> CheckReport:
    """Check the frequency and filter laws on random index sets."""
    rng = random.Random(seed)
    report = CheckReport(samples)
    report.record("filter-bounds", in_filter(NATURALS) and not in_filter(EMPTY), "N or ∅ misplaced")
    evens = Residue(0, 2)
    report.record("non-ultrafilter", not in_filter(evens) and not in_filter(Complement(evens)),
                  "evens or odds in the filter")
    for _ in range(samples):
        A, B = random_index_set(rng), random_index_set(rng)
        shown = f"A={render_set(A)}; B={render_set(B)}"
        for n in rng.sample(range(1, max_n + 1), 3):
            report.record("freq-all", freq(NATURALS, n) == 1, n)
            report.record("freq-empty", freq(EMPTY, n) == 0, n)
            report.record("freq-split", freq(Intersection(A, B), n) + freq(Intersection(Complement(A), B), n)
                          == freq(B, n), f"{shown}; n={n}")
            report.record("freq-complement", freq(A, n) + freq(Complement(A), n) == 1, f"{shown}; n={n}")
        if in_filter(A) and in_filter(B):
            report.record("intersection", in_filter(Intersection(A, B)), shown)
        X, Y = random_filter_set(rng), random_filter_set(rng)
        report.record("intersection", in_filter(X) and in_filter(Y) and in_filter(Intersection(X, Y)),
                      f"X={render_set(X)}; Y={render_set(Y)}")
        sup = Union_(X, A)
        report.record("superset", is_subset(X, sup) and in_filter(sup), f"X={render_set(X)}; {shown}")
        if in_filter(A) and is_subset(A, B):
            report.record("superset", in_filter(B), shown)
        fin = Finite(rng.sample(range(1, 100), rng.randrange(0, 10)))
        report.record("finite", not in_filter(fin), render_set(fin))
        # (freq - density) * (t + jP) is the same for every j and at most t in size
        t, P = profile(A)
        d = density(A)
        gaps = {(freq(A, t + j * P) - d) * (t + j * P) for j in range(1, 4)}
        report.record("limit", len(gaps) == 1 and abs(gaps.pop()) <= t, shown)
    return report


# ---------------------------------------------------------------------------
# Prefix syntax for the command line
# ---------------------------------------------------------------------------


class ExprSyntaxError(ValueError):
    pass


def _ints(tok: str) -> list[int]:
    try:
        return [int(x) for x in tok.split(",") if x]
    except ValueError:
        raise ExprSyntaxError(f"expected comma-separated naturals, got {tok!r}") from None


def parse_set(text: str | Sequence[str]) -> IndexSet:
    """Prefix syntax: ``all``, ``none``, ``fin 1,2,3``, ``cofin 4,5``, ``res A M``,
    ``thr M``, ``and X Y``, ``or X Y``, ``not X``."""
    tokens = text.split() if isinstance(text, str) else [t for s in text for t in s.split()]
    pos = 0

    def take() -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise ExprSyntaxError("unexpected end of set expression")
        pos += 1
        return tokens[pos - 1]

    def num() -> int:
        tok = take()
        try:
            return int(tok)
        except ValueError:
            raise ExprSyntaxError(f"expected an integer, got {tok!r}") from None

    def go() -> IndexSet:
        head = take()
        try:
            if head == "all":
                return NATURALS
            if head in ("none", "empty"):
                return EMPTY
            if head == "fin":
                return Finite(_ints(take()))
            if head == "cofin":
                return Cofinite(_ints(take()))
            if head == "res":
                a = num()
                return Residue(a, num())
            if head == "thr":
                return Threshold(num())
        except ExprSyntaxError:
            raise
        except ValueError as e:
            raise ExprSyntaxError(str(e)) from None
        if head == "and":
            return Intersection(go(), go())
        if head == "or":
            return Union_(go(), go())
        if head == "not":
            return Complement(go())
        raise ExprSyntaxError(f"unknown set operator {head!r}")

    out = go()
    if pos != len(tokens):
        raise ExprSyntaxError(f"trailing tokens: {' '.join(tokens[pos:])}")
    return out


def parse_seq(text: str | Sequence[str]) -> SeqReal:
    """Prefix syntax: ``const Q``, ``id``, ``ratfn C0 C1 ... / D0 D1 ...``,
    ``over N V X``, ``add X Y``, ``sub X Y``, ``mul X Y``, ``div X Y``, ``neg X``.

    Coefficients are rationals written ``p/q`` or decimals, constant term first.
    """
    tokens = text.split() if isinstance(text, str) else [t for s in text for t in s.split()]
    pos = 0

    def take() -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise ExprSyntaxError("unexpected end of sequence expression")
        pos += 1
        return tokens[pos - 1]

    def rational(tok: str) -> Fraction:
        try:
            return Fraction(tok)
        except (ValueError, ZeroDivisionError):
            raise ExprSyntaxError(f"expected a rational, got {tok!r}") from None

    def coeffs() -> list[Fraction]:
        nonlocal pos
        out = []
        while pos < len(tokens) and tokens[pos] != "/":
            try:
                out.append(Fraction(tokens[pos]))
            except (ValueError, ZeroDivisionError):
                break
            pos += 1
        return out

    def go() -> SeqReal:
        nonlocal pos
        head = take()
        if head == "const":
            return constant(rational(take()))
        if head == "id":
            return identity()
        if head == "ratfn":
            num = coeffs()
            den = [Fraction(1)]
            if pos < len(tokens) and tokens[pos] == "/":
                pos += 1
                den = coeffs()
            if not num:
                raise ExprSyntaxError("ratfn needs numerator coefficients")
            try:
                return rational_function(num, den)
            except ValueError as e:
                raise ExprSyntaxError(str(e)) from None
        if head == "over":
            n = take()
            if not n.isdigit() or int(n) < 1:
                raise ExprSyntaxError(f"override index must be a natural number, got {n!r}")
            v = rational(take())
            return piecewise(go(), {int(n): v})
        if head in ("add", "sub", "mul", "div"):
            x, y = go(), go()
            if head == "add":
                return seq_add(x, y)
            if head == "sub":
                return seq_add(x, seq_mul(constant(-1), y))
            if head == "mul":
                return seq_mul(x, y)
            return seq_div(x, y)
        if head == "neg":
            return seq_mul(constant(-1), go())
        raise ExprSyntaxError(f"unknown sequence operator {head!r}")

    out = go()
    if pos != len(tokens):
        raise ExprSyntaxError(f"trailing tokens: {' '.join(tokens[pos:])}")
    return out
