import math
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from logprob.qnumbers import (
    EMPTY,
    N_INFINITY,
    NATURALS,
    Cofinite,
    Complement,
    ExprSyntaxError,
    Finite,
    Intersection,
    QNumber,
    Residue,
    SeqReal,
    Threshold,
    Union_,
    agreement_set,
    classify,
    constant,
    contains,
    count_upto,
    density,
    filter_laws_check,
    freq,
    identity,
    in_filter,
    infinitely_near,
    is_subset,
    largeness_set,
    parse_seq,
    parse_set,
    piecewise,
    profile,
    q_div,
    q_eq,
    q_mul,
    q_sub,
    random_index_set,
    rational_function,
    render_set,
    s8_witness,
    smallness_set,
    standard,
)

Q = Fraction
EVENS = Residue(0, 2)


def one_over_n(a=1) -> QNumber:
    return QNumber(rational_function([a], [0, 1]))


class TestFrequency:
    def test_naturals_and_empty(self):
        for n in (1, 7, 100):
            assert freq(NATURALS, n) == 1
            assert freq(EMPTY, n) == 0

    def test_evens(self):
        assert freq(EVENS, 10) == Q(1, 2)
        assert freq(EVENS, 11) == Q(5, 11)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            freq(EVENS, 0)

    def test_count_is_brute_force_count(self):
        rng = random.Random(0)
        for _ in range(200):
            A = random_index_set(rng)
            n = rng.randrange(1, 400)
            assert count_upto(A, n) == sum(1 for i in range(1, n + 1) if contains(A, i))
            assert freq(A, n) * n == count_upto(A, n)

    def test_sets_live_in_naturals(self):
        with pytest.raises(ValueError):
            Finite([0, 1])
        with pytest.raises(ValueError):
            Residue(0, 0)


class TestDensity:
    def test_examples(self):
        assert density(EVENS) == Q(1, 2)
        assert density(Threshold(37)) == 1
        assert density(Finite(range(1, 50))) == 0
        assert density(Intersection(Residue(1, 3), Complement(Residue(0, 2)))) == Q(1, 6)

    def test_limit_of_frequencies(self):
        """(freq - d) * (t + jP) is constant in j and bounded by t."""
        rng = random.Random(1)
        for _ in range(300):
            A = random_index_set(rng)
            t, P = profile(A)
            d = density(A)
            for j in (1, 2, 5, 40):
                n = t + j * P
                assert abs(freq(A, n) - d) <= Q(t, n)

    def test_long_finite_prefix_converges_slowly(self):
        A = Finite(range(1, 101))
        t, P = profile(A)
        assert (t, P) == (100, 1)
        assert freq(A, 101) - density(A) == Q(100, 101)


class TestFilter:
    def test_membership(self):
        assert in_filter(NATURALS) and not in_filter(EMPTY)
        for m in (0, 1, 50, 1000):
            assert in_filter(Threshold(m))
        assert not in_filter(EVENS) and not in_filter(Complement(EVENS))

    def test_finite_never_in(self):
        rng = random.Random(2)
        for _ in range(50):
            assert not in_filter(Finite(rng.sample(range(1, 200), rng.randrange(0, 30))))

    def test_laws_report(self):
        rep = filter_laws_check(200, seed=3)
        assert rep.ok, rep.violations[:3]
        assert rep.checks["intersection"] >= 200 and rep.checks["superset"] >= 200

    def test_subset(self):
        assert is_subset(Threshold(10), Threshold(5))
        assert not is_subset(Threshold(5), Threshold(10))
        assert is_subset(Residue(0, 4), EVENS)

    @settings(max_examples=200)
    @given(st.integers(0, 10 ** 6))
    def test_intersection_and_superset(self, seed):
        rng = random.Random(seed)
        A, B = random_index_set(rng), random_index_set(rng)
        if in_filter(A) and in_filter(B):
            assert in_filter(Intersection(A, B))
        if in_filter(A):
            assert in_filter(Union_(A, B))
        assert density(A) + density(Complement(A)) == 1

    def test_render_round_trip(self):
        rng = random.Random(4)
        for _ in range(100):
            A = random_index_set(rng)
            assert parse_set(render_set(A)) == A


class TestAgreement:
    def test_reflexive(self):
        x = rational_function([1, 2], [3, 0, 1])
        assert agreement_set(x, x) == Cofinite()

    def test_single_override(self):
        assert agreement_set(constant(5), piecewise(constant(5), {3: 7})) == Cofinite([3])

    def test_never_equal(self):
        assert agreement_set(constant(0), rational_function([1], [0, 1])) == Finite()

    def test_finitely_many_crossings(self):
        # n and 6/(n-1) meet where n^2 - n - 6 = 0, i.e. n = 3
        assert agreement_set(identity(), rational_function([6], [-1, 1])) == Finite([3])

    def test_pole_value_is_zero(self):
        x = rational_function([1], [-2, 1])
        assert x(2) == 0 and x(3) == 1

    @settings(max_examples=200)
    @given(st.lists(st.integers(-5, 5), min_size=1, max_size=3),
           st.lists(st.integers(-5, 5), min_size=1, max_size=3),
           st.dictionaries(st.integers(1, 20), st.integers(-3, 3), max_size=3))
    def test_matches_pointwise_comparison(self, num, den, over):
        assume(any(den))
        x = rational_function(num, den)
        y = piecewise(x, over)
        z = rational_function(den, num) if any(num) else constant(1)
        for s in (y, z):
            S = agreement_set(x, s)
            for n in range(1, 60):
                assert contains(S, n) == (x(n) == s(n))


class TestQEquality:
    def test_examples(self):
        assert q_eq(standard(5), QNumber(piecewise(constant(5), {1: 0})))
        assert not q_eq(standard(0), one_over_n())

    @settings(max_examples=100)
    @given(st.integers(0, 10 ** 6))
    def test_equivalence_relation(self, seed):
        rng = random.Random(seed)
        base = rational_function([rng.randrange(-3, 4) for _ in range(2)], [1, rng.randrange(1, 3)])
        xs = [QNumber(piecewise(base, {rng.randrange(1, 9): rng.randrange(-2, 3)})) for _ in range(3)]
        xs.append(QNumber(rational_function([rng.randrange(-3, 4)], [1])))
        for a in xs:
            assert q_eq(a, a)
            for b in xs:
                assert q_eq(a, b) == q_eq(b, a)
                for c in xs:
                    if q_eq(a, b) and q_eq(b, c):
                        assert q_eq(a, c)


class TestArithmetic:
    def test_standard_sum(self):
        assert q_eq(standard(2) + standard(3), standard(5))
        assert q_eq(standard(2) - 3, standard(-1))

    def test_n_times_one_over_n(self):
        x = q_mul(N_INFINITY, one_over_n())
        assert q_eq(x, standard(1))
        assert classify(x).kind == "standard" and classify(x).value == 1

    def test_division(self):
        c = q_div(standard(6), N_INFINITY)
        assert q_eq(N_INFINITY * c, standard(6))
        with pytest.raises(ZeroDivisionError):
            q_div(standard(1), QNumber(piecewise(constant(0), {2: 5})))

    def test_division_by_sequence_with_zeros(self):
        d = QNumber(rational_function([-3, 1]))  # n - 3, zero at n = 3
        c = q_div(standard(1), d)
        assert c.rep(3) == 0
        assert q_eq(d * c, standard(1))

    @settings(max_examples=150)
    @given(st.integers(0, 10 ** 6))
    def test_well_defined_under_finite_perturbation(self, seed):
        rng = random.Random(seed)

        def rand_seq():
            num = [rng.randrange(-4, 5) for _ in range(rng.randrange(1, 3))]
            den = [rng.randrange(1, 4)] + [rng.randrange(0, 3) for _ in range(rng.randrange(0, 2))]
            return rational_function(num, den)

        x, y = rand_seq(), rand_seq()
        x2 = piecewise(x, {rng.randrange(1, 10): rng.randrange(-9, 9) for _ in range(2)})
        y2 = piecewise(y, {rng.randrange(1, 10): rng.randrange(-9, 9)})
        a, b, a2, b2 = QNumber(x), QNumber(y), QNumber(x2), QNumber(y2)
        assert q_eq(a, a2) and q_eq(b, b2)
        assert q_eq(a + b, a2 + b2)
        assert q_eq(a * b, a2 * b2)
        assert q_eq(a - b, a2 - b2)
        if not q_eq(b, standard(0)):
            assert q_eq(a / b, a2 / b2)

    def test_pointwise(self):
        x = QNumber(rational_function([1, 1], [0, 1]))
        y = QNumber(piecewise(identity(), {2: 10}))
        s = x + y
        for n in range(1, 20):
            assert s.rep(n) == x.rep(n) + y.rep(n)
            assert (x * y).rep(n) == x.rep(n) * y.rep(n)


class TestClassify:
    def test_identity_is_infinitely_large(self):
        assert classify(N_INFINITY).kind == "infinitely-large"

    @pytest.mark.parametrize("a", [1, 10, 1000, Q(1, 3)])
    def test_a_over_n_is_infinitesimal(self, a):
        assert classify(one_over_n(a)).kind == "infinitesimal"

    def test_standard(self):
        c = classify(standard(Q(7, 2)))
        assert c.kind == "standard" and c.value == Q(7, 2)
        assert classify(QNumber(piecewise(constant(3), {5: 0}))).value == 3

    def test_finite_nonstandard(self):
        c = classify(QNumber(rational_function([1, 2], [0, 1])))  # 2 + 1/n
        assert c.kind == "finite-nonstandard" and c.value == 2

    def test_negative_infinite(self):
        c = classify(-N_INFINITY)
        assert c.kind == "infinitely-large" and c.sign == -1

    def test_infinitesimal_times_standard(self):
        for c in (Q(-3), Q(1, 7), Q(100)):
            assert classify(q_mul(one_over_n(), standard(c))).kind == "infinitesimal"

    def test_s8_witness(self):
        for a in (Q(1), Q(10), Q(1000), Q(5, 2)):
            for m in (1, 3, 10):
                k, S = s8_witness(a, m)
                assert k == math.floor(a) + 1 and k > a
                assert S == Threshold(m * k) and in_filter(S)
                assert is_subset(S, smallness_set(rational_function([a], [0, 1]), m))
                n = m * k + 17
                assert freq(S, n) == Q(n - m * k, n)
        with pytest.raises(ValueError):
            s8_witness(0, 1)


def _rational_functions():
    coeffs = st.lists(st.integers(-6, 6), min_size=1, max_size=3)
    return st.tuples(coeffs, coeffs).filter(lambda p: any(p[1]))


class TestDefinitionsAgreeWithDegrees:
    """Degree-based classification against literal filter membership of threshold sets."""

    @settings(max_examples=300, deadline=None)
    @given(_rational_functions())
    def test_infinitesimal(self, pq):
        x = rational_function(*pq)
        c = classify(QNumber(x))
        ms = [1, 2, 5, 50, 1000]
        if c.kind in ("standard", "finite-nonstandard") and c.value != 0:
            ms.append(math.ceil(1 / abs(c.value)) + 1)
        literal = all(in_filter(smallness_set(x, m)) for m in ms)
        assert literal == (c.kind == "infinitesimal" or (c.kind == "standard" and c.value == 0))

    @settings(max_examples=300, deadline=None)
    @given(_rational_functions())
    def test_infinitely_large(self, pq):
        x = rational_function(*pq)
        c = classify(QNumber(x))
        ms = [1, 10, 1000]
        if c.value is not None:
            ms.append(math.floor(abs(c.value)) + 1)
        literal = all(in_filter(largeness_set(x, m)) for m in ms)
        assert literal == (c.kind == "infinitely-large" and c.sign > 0)


class TestNear:
    def test_chebyshev_term(self):
        p, eps = Q(1, 2), Q(1, 10)
        c = p * (1 - p) / eps ** 2
        x = standard(1) - QNumber(rational_function([c], [0, 1]))
        assert infinitely_near(x, standard(1))

    def test_basic(self):
        a = QNumber(rational_function([3, 1], [1, 2]))
        assert infinitely_near(a, a)
        assert not infinitely_near(standard(1), standard(2))
        assert infinitely_near(standard(Q(1, 2)), a)
        assert not infinitely_near(N_INFINITY, N_INFINITY + 1)


class TestExpressionSyntax:
    def test_sets(self):
        assert parse_set("res 0 2") == EVENS
        assert parse_set("thr 100") == Threshold(100)
        assert parse_set("and not fin 1,2 or res 1 3 thr 4") == \
            Intersection(Complement(Finite([1, 2])), Union_(Residue(1, 3), Threshold(4)))

    def test_sequences(self):
        x = parse_seq("ratfn 1 0 / 0 1")
        assert x(4) == Q(1, 4)
        y = parse_seq("over 3 7 const 5")
        assert y(3) == 7 and y(4) == 5
        assert parse_seq("mul id ratfn 1 / 0 1")(9) == 1
        assert parse_seq("sub const 1 ratfn 1/4 / 0 1")(2) == Q(7, 8)

    @pytest.mark.parametrize("text", ["res 0", "thr x", "blah", "fin a,b", "res 1 0", "and all"])
    def test_bad_sets(self, text):
        with pytest.raises(ExprSyntaxError):
            parse_set(text)

    @pytest.mark.parametrize("text", ["ratfn / 1", "const", "over 0 1 id", "id id", "ratfn 1 / 0"])
    def test_bad_sequences(self, text):
        with pytest.raises(ExprSyntaxError):
            parse_seq(text)
