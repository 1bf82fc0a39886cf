from fractions import Fraction

import numpy as np
import pytest

from streak_test.stats import (
    UNDEFINED,
    ConditionalCount,
    Outcome,
    ShotString,
    Statistic,
    StatValue,
    as_stat_value,
    conditional_counts,
    count_matrix,
    evaluate,
    rational_values,
    t_k,
    t_k_hit,
    t_k_miss,
)

DET = "1110100110000011"
IND = "11011110010111111001110111101110111101010101"


class TestShotString:
    """Parsing and descriptive properties of shot strings."""

    def test_parse_counts_hits_and_misses(self):
        """Parsing a 0/1 string gives its length, hit count and exact hit rate."""
        s = ShotString.parse(DET)
        assert s.length == 16
        assert s.hits == 8
        assert s.misses == 8
        assert s.hit_rate == Fraction(1, 2)
        assert str(s) == DET

    def test_parse_rejects_other_symbols(self):
        """A symbol other than 0 or 1 is reported with its position."""
        with pytest.raises(ValueError, match="position 3"):
            ShotString.parse("10x1")

    def test_outcomes_must_be_binary(self):
        """Constructing from outcomes other than 0 and 1 fails."""
        with pytest.raises(ValueError):
            ShotString((1, 2, 0))

    def test_empty_string_has_no_rate(self):
        """The empty string has length 0 and no hit rate."""
        s = ShotString.parse("")
        assert s.length == 0
        assert s.hit_rate is None

    def test_of_accepts_strings_iterables_and_shot_strings(self):
        """ShotString.of normalises strings and iterables and passes ShotStrings through."""
        s = ShotString.of("101")
        assert ShotString.of([1, 0, 1]) == s
        assert ShotString.of(s) is s

    def test_complement_swaps_hits_and_misses(self):
        """complement turns every hit into a miss and back."""
        assert str(ShotString.parse("1100").complement()) == "0011"

    def test_runs(self):
        """Run count and longest runs of each outcome."""
        s = ShotString.parse("1110100110000011")
        assert s.run_count == 7
        assert s.longest_run(Outcome.HIT) == 3
        assert s.longest_run(Outcome.MISS) == 5
        assert ShotString.parse("").run_count == 0
        assert ShotString.parse("000").longest_run(Outcome.HIT) == 0


class TestConditionalCounts:
    """Follower counts after runs of k identical outcomes."""

    def test_worked_example_hits(self):
        """The 16-shot game has 3 realized and 1 unrealized two-hit sets."""
        c = conditional_counts(ShotString.parse(DET), 2, Outcome.HIT)
        assert c == ConditionalCount(realized_sets=3, successes=1, unrealized_sets=1)

    def test_worked_example_misses(self):
        """The 16-shot game has 5 realized two-miss sets, 2 followed by a hit."""
        c = conditional_counts(ShotString.parse(DET), 2, Outcome.MISS)
        assert c == ConditionalCount(realized_sets=5, successes=2, unrealized_sets=0)

    def test_overlapping_runs_count_separately(self):
        """Overlapping windows inside one run each count."""
        c = conditional_counts(ShotString.parse("111"), 2, Outcome.HIT)
        assert (c.realized_sets, c.successes, c.unrealized_sets) == (1, 1, 1)

    def test_depth_at_least_length_gives_zeros(self):
        """No follower slot means all-zero counts."""
        assert conditional_counts(ShotString.parse("11"), 2, Outcome.HIT) == ConditionalCount()
        assert conditional_counts(ShotString.parse("1"), 5, Outcome.MISS) == ConditionalCount()

    def test_depth_must_be_positive(self):
        """Depth 0 is rejected."""
        with pytest.raises(ValueError):
            conditional_counts(ShotString.parse("101"), 0, Outcome.HIT)

    def test_realized_sets_bounded_by_follower_slots(self):
        """Hit and miss conditioning sets together fit in L - k follower slots."""
        s = ShotString.parse(IND)
        for k in (1, 2, 3):
            hit = conditional_counts(s, k, Outcome.HIT)
            miss = conditional_counts(s, k, Outcome.MISS)
            assert hit.realized_sets + miss.realized_sets <= s.length - k

    def test_complement_swaps_hit_and_miss_conditioning(self):
        """Runs of hits in a string are runs of misses in its complement."""
        for text in (DET, IND, "110100", "0000", "1"):
            s = ShotString.parse(text)
            for k in (1, 2, 3):
                hit = conditional_counts(s, k, Outcome.HIT)
                mirrored = conditional_counts(s.complement(), k, Outcome.MISS)
                assert hit.realized_sets == mirrored.realized_sets
                assert hit.unrealized_sets == mirrored.unrealized_sets
                assert hit.successes + mirrored.successes == hit.realized_sets

    def test_invalid_count_rejected(self):
        """More successes than realized sets is rejected."""
        with pytest.raises(ValueError):
            ConditionalCount(realized_sets=1, successes=2)

    def test_count_matrix_matches_scalar_counts(self):
        """Vectorised counts equal the scalar scan row by row."""
        rng = np.random.default_rng(3)
        draws = rng.integers(0, 2, size=(50, 12))
        for k in (1, 2, 3):
            counts = count_matrix(draws, k)
            for i, row in enumerate(draws):
                s = ShotString(tuple(int(x) for x in row))
                hit = conditional_counts(s, k, Outcome.HIT)
                miss = conditional_counts(s, k, Outcome.MISS)
                assert counts.hit_realized[i] == hit.realized_sets
                assert counts.hit_successes[i] == hit.successes
                assert counts.miss_realized[i] == miss.realized_sets
                assert counts.miss_successes[i] == miss.successes

    def test_count_matrix_requires_2d(self):
        """count_matrix needs a draws x shots matrix."""
        with pytest.raises(ValueError):
            count_matrix(np.array([1, 0, 1]), 1)


class TestStatistics:
    """Exact values of t_k and its components."""

    def test_worked_example(self):
        """t_2 on the 16-shot game is 1/3 - 2/5 = -1/15."""
        s = ShotString.parse(DET)
        assert t_k_hit(s, 2) == StatValue(Fraction(1, 3))
        assert t_k_miss(s, 2) == StatValue(Fraction(2, 5))
        assert t_k(s, 2) == StatValue(Fraction(-1, 15))

    def test_sixty_point_game(self):
        """t_2 on the 44-shot game is 12/19 - 1 = -7/19."""
        s = ShotString.parse(IND)
        c = conditional_counts(s, 2, Outcome.HIT)
        assert (c.realized_sets, c.successes) == (19, 12)
        assert t_k_miss(s, 2) == StatValue(Fraction(1))
        assert t_k(s, 2) == StatValue(Fraction(-7, 19))

    def test_alternating_string(self):
        """Strict alternation gives t_1 = -1."""
        assert t_k(ShotString.parse("101010"), 1).value == -1

    def test_undefined_without_miss_runs(self):
        """No miss run leaves t_k,miss and t_k undefined while t_k,hit is defined."""
        s = ShotString.parse("1111")
        assert not t_k_miss(s, 1).is_defined
        assert not t_k(s, 1).is_defined
        assert t_k_hit(s, 1) == StatValue(Fraction(1))

    def test_single_shot_is_undefined(self):
        """One shot has no follower."""
        assert not t_k(ShotString.parse("1"), 1).is_defined

    def test_evaluate_dispatches(self):
        """evaluate picks the function for each statistic."""
        s = ShotString.parse(DET)
        assert evaluate(Statistic.T_K, s, 2) == t_k(s, 2)
        assert evaluate(Statistic.T_K_HIT, s, 2) == t_k_hit(s, 2)
        assert evaluate(Statistic.T_K_MISS, s, 2) == t_k_miss(s, 2)

    def test_stat_value_text(self):
        """Exact values print as fractions; undefined values refuse float()."""
        assert str(StatValue(Fraction(-7, 19))) == "-7/19"
        assert str(StatValue(Fraction(1))) == "1"
        assert str(UNDEFINED) == "undefined"
        assert StatValue.ratio(1, 0) == UNDEFINED
        with pytest.raises(ValueError):
            float(UNDEFINED)

    def test_subtraction_propagates_undefined(self):
        """Subtracting an undefined value is undefined."""
        assert not (StatValue(Fraction(1, 2)) - UNDEFINED).is_defined

    def test_as_stat_value(self):
        """None, fractions, floats and ints convert to StatValue."""
        assert as_stat_value(None) == UNDEFINED
        assert as_stat_value(Fraction(1, 3)).value == Fraction(1, 3)
        assert as_stat_value(0.25).value == Fraction(1, 4)
        assert as_stat_value(-1).value == -1

    def test_labels(self):
        """Statistic labels and CLI values."""
        assert Statistic.T_K.label == "t_k"
        assert Statistic("tk-miss") is Statistic.T_K_MISS


class TestRationalValues:
    """Vectorised exact values agree with the scalar statistics."""

    def test_matches_scalar_statistics(self):
        """Rational arrays agree with the scalar statistics on random draws."""
        rng = np.random.default_rng(11)
        draws = rng.integers(0, 2, size=(200, 10))
        counts = count_matrix(draws, 2)
        for statistic in Statistic:
            num, den, defined = rational_values(counts, statistic)
            for i, row in enumerate(draws):
                expected = evaluate(statistic, ShotString(tuple(int(x) for x in row)), 2)
                assert bool(defined[i]) == expected.is_defined
                if expected.is_defined:
                    assert Fraction(int(num[i]), int(den[i])) == expected.value

    def test_values_are_reduced_with_positive_denominators(self):
        """Fractions come back in lowest terms with positive denominators."""
        counts = count_matrix(np.array([[1, 1, 0, 1, 1, 1, 0, 0, 1, 0]]), 1)
        num, den, defined = rational_values(counts, Statistic.T_K)
        assert defined[0]
        assert den[0] > 0
        assert np.gcd(num[0], den[0]) == 1
