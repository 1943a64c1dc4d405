"""Density computations, permutation parsing, and the Monte-Carlo rig."""

import random
from fractions import Fraction

import pytest

from pointless.density import (
    DensityProblem,
    SplitMix64,
    compute_density,
    format_permutation,
    group_closure,
    heuristic_pointless_probability,
    montecarlo_pointless_rate,
    parse_permutation,
    wilson_interval,
)
from pointless.errors import (
    EvenCharacteristic,
    GroupTooLarge,
    NotTransitive,
    ParseError,
    UnknownFamily,
)
from pointless.field import FiniteField


class TestParsePermutation:
    def test_basic(self):
        assert parse_permutation("(1 2 3)", 3) == (1, 2, 0)
        assert parse_permutation("(1 2)(3 4)", 4) == (1, 0, 3, 2)
        assert parse_permutation("()", 4) == (0, 1, 2, 3)
        assert parse_permutation("(1,3)", 3) == (2, 1, 0)

    def test_roundtrip(self):
        rng = random.Random(3)
        for _ in range(50):
            d = rng.randrange(1, 9)
            perm = list(range(d))
            rng.shuffle(perm)
            perm = tuple(perm)
            assert parse_permutation(format_permutation(perm), d) == perm

    def test_errors(self):
        with pytest.raises(ParseError) as e:
            parse_permutation("(1 2", 3)
        assert e.value.line == 1 and e.value.column == 1
        with pytest.raises(ParseError):
            parse_permutation("(1 5)", 3)      # out of range
        with pytest.raises(ParseError):
            parse_permutation("(1 2)(2 3)", 3)  # repeated point
        with pytest.raises(ParseError):
            parse_permutation("1 2 3", 3)      # missing parens
        with pytest.raises(ParseError):
            parse_permutation("(x)", 3)        # bad token


class TestComputeDensity:
    def test_s3(self):
        r = compute_density(DensityProblem(3, ("(1 2 3)", "(1 2)")))
        assert r.order == 6
        assert r.delta == Fraction(2, 3)
        assert not r.is_galois

    def test_d4(self):
        r = compute_density(DensityProblem(4, ("(1 2 3 4)", "(1 3)")))
        assert r.order == 8
        assert r.delta == Fraction(3, 8)  # fixed points only for e,(13),(24)
        assert not r.is_galois

    def test_klein_v_regular(self):
        r = compute_density(DensityProblem(4, ("(1 2)(3 4)", "(1 3)(2 4)")))
        assert r.order == 4
        assert r.delta == Fraction(1, 4)
        assert r.is_galois

    def test_c2(self):
        r = compute_density(DensityProblem(2, ("(1 2)",)))
        assert r.delta == Fraction(1, 2)
        assert r.is_galois

    def test_not_transitive(self):
        with pytest.raises(NotTransitive):
            compute_density(DensityProblem(4, ("(1 2)",)))

    def test_group_too_large(self):
        # S_10 has order 3628800 > 10^6
        with pytest.raises(GroupTooLarge):
            group_closure([parse_permutation("(1 2 3 4 5 6 7 8 9 10)", 10),
                           parse_permutation("(1 2)", 10)], 10)

    def test_conjugation_invariance(self):
        rng = random.Random(9)
        gens = [parse_permutation("(1 2 3 4)", 4), parse_permutation("(1 3)", 4)]
        base = compute_density(DensityProblem(4, tuple(gens)))
        for _ in range(10):
            s = list(range(4))
            rng.shuffle(s)
            sinv = [0] * 4
            for i, v in enumerate(s):
                sinv[v] = i
            conj = [tuple(s[g[sinv[i]]] for i in range(4)) for g in gens]
            r = compute_density(DensityProblem(4, tuple(conj)))
            assert r.delta == base.delta and r.order == base.order


def _random_transitive_problems(count, max_degree=8, seed=17):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d = rng.randrange(2, max_degree + 1)
        gens = []
        for _ in range(rng.randrange(1, 4)):
            p = list(range(d))
            rng.shuffle(p)
            gens.append(tuple(p))
        try:
            r = compute_density(DensityProblem(d, tuple(gens)))
        except NotTransitive:
            continue
        out.append((d, r))
    return out


class TestLemma1Bounds:
    def test_fuzz_corpus(self):
        corpus = _random_transitive_problems(120)
        assert len(corpus) >= 100
        for d, r in corpus:
            assert r.lower_bound <= r.delta <= r.upper_bound
            assert (r.delta == r.lower_bound) == r.is_galois
            assert r.is_galois == (r.order == d)


class TestHeuristic:
    def test_exact_values(self):
        assert heuristic_pointless_probability(Fraction(1, 4), 6) == \
            Fraction(3, 4) ** 6
        assert heuristic_pointless_probability(Fraction(3, 8), 10) == \
            Fraction(5, 8) ** 10
        assert heuristic_pointless_probability(Fraction(1, 2), 0) == 1

    def test_validation(self):
        with pytest.raises(ValueError):
            heuristic_pointless_probability(Fraction(3, 2), 1)
        with pytest.raises(ValueError):
            heuristic_pointless_probability(Fraction(1, 2), -1)


class TestSplitMix64:
    def test_reference_values(self):
        # splitmix64 with seed 0: first outputs of the reference algorithm
        r = SplitMix64(0)
        assert r.next_u64() == 0xE220A8397B1DCDAF
        assert r.next_u64() == 0x6E789E6AA1B965F4

    def test_below_unbiased_range(self):
        r = SplitMix64(42)
        vals = [r.below(7) for _ in range(500)]
        assert set(vals) <= set(range(7))
        assert len(set(vals)) == 7


class TestWilson:
    def test_known_value(self):
        lo, hi = wilson_interval(50, 100)
        assert 0.40 < lo < 0.41 and 0.59 < hi < 0.60

    def test_edges(self):
        assert wilson_interval(0, 0) == (0.0, 1.0)
        lo, hi = wilson_interval(0, 100)
        assert lo == 0.0 and hi < 0.05


class TestMonteCarlo:
    def test_deterministic(self):
        F5 = FiniteField(5)
        a = montecarlo_pointless_rate("klein4_hyper_odd", F5, 40, seed=1)
        b = montecarlo_pointless_rate("klein4_hyper_odd", F5, 40, seed=1)
        assert a.to_json() == b.to_json()
        assert a.heuristic == pytest.approx((3 / 4) ** 6)

    def test_rate_in_interval(self):
        F5 = FiniteField(5)
        rep = montecarlo_pointless_rate("fiberproduct", F5, 40, seed=2)
        lo, hi = rep.wilson95
        assert lo <= rep.rate <= hi
        assert 0 <= rep.pointless <= rep.samples

    def test_diagonal_quartic_runs(self):
        F5 = FiniteField(5)
        rep = montecarlo_pointless_rate("diagonal_quartic", F5, 15, seed=3)
        assert rep.samples == 15

    def test_unknown_family(self):
        with pytest.raises(UnknownFamily):
            montecarlo_pointless_rate("nonexistent", FiniteField(5), 1)

    def test_even_char_rejected(self):
        with pytest.raises(EvenCharacteristic):
            montecarlo_pointless_rate("diagonal_quartic", FiniteField(2), 1)
