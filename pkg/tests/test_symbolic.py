"""Admissible words, the b-adic word metric, and the infinite word space."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from matgrowth.errors import (
    NotInCycleSetError,
    P1ViolationError,
    P2ViolationError,
    SizeMismatchError,
    UnboundedClassError,
    WordCapExceededError,
)
from matgrowth.matrices import (
    binomial,
    bitmatrix,
    block_compose,
    make_I,
    make_J,
    make_L,
    make_T,
    norm,
    power,
    satisfies_p1,
)
from matgrowth.digraph import satisfies_p2
from matgrowth.words import (
    admissible_words,
    admissible_words_between,
    count_infinite,
    infinite_word_census,
    metric_distance,
    periodic_word,
    word_to_text,
)

GOLDEN = bitmatrix([[1, 1], [1, 0]])
LOOP_WITH_FEEDERS = bitmatrix([[1, 0, 0], [1, 0, 0], [1, 1, 0]])


def all_matrices(b):
    for mask in range(1, 1 << (b * b)):
        yield bitmatrix([[(mask >> (i * b + j)) & 1 for j in range(b)] for i in range(b)])


class TestAdmissibleWords:
    def test_length_two_reads_the_ones(self):
        assert admissible_words(make_T(2), 2) == [(1, 1), (2, 1), (2, 2)]

    def test_length_one_is_every_letter(self):
        assert admissible_words(make_L(3), 1) == [(1,), (2,), (3,)]

    def test_self_loops_only(self):
        assert admissible_words(make_I(2), 4) == [(1, 1, 1, 1), (2, 2, 2, 2)]

    def test_counts_follow_the_norm(self):
        for n in range(1, 9):
            assert len(admissible_words(make_T(2), n + 1)) == n + 2

    def test_lexicographic_order(self):
        words = admissible_words(make_T(3), 3)
        assert words == sorted(words)

    def test_cap_guard(self):
        with pytest.raises(WordCapExceededError):
            admissible_words(bitmatrix([[1, 1], [1, 1]]), 25, cap=100)

    def test_every_word_is_admissible(self):
        for m in all_matrices(2):
            for w in admissible_words(m, 4):
                assert all(m.entry(a, c) == 1 for a, c in zip(w, w[1:]))

    def test_norm_bridge_spot(self):
        for m in (make_T(3), GOLDEN, make_J(3)):
            for n in range(1, 5):
                assert len(admissible_words(m, n + 1)) == norm(power(m, n))


class TestAdmissibleWordsBetween:
    def test_count_equals_power_entry(self):
        got = admissible_words_between(make_T(3), 3, 3, 1)
        assert len(got) == power(make_T(3), 2).entry(3, 1) == 3

    def test_forced_path_through_two_cycle(self):
        assert admissible_words_between(make_J(2), 3, 1, 1) == [(1, 2, 1)]

    def test_dead_head_is_empty(self):
        assert admissible_words_between(make_L(2), 3, 1, 2) == []

    def test_invalid_indices(self):
        with pytest.raises(ValueError):
            admissible_words_between(make_I(2), 3, 0, 1)
        with pytest.raises(ValueError):
            admissible_words_between(make_I(2), 3, 1, 3)

    def test_partition_of_full_set(self):
        for m in all_matrices(2):
            for n in range(2, 5):
                whole = admissible_words(m, n)
                pieces = []
                for i in (1, 2):
                    for j in (1, 2):
                        pieces += admissible_words_between(m, n, i, j)
                assert sorted(pieces) == whole


class TestWordText:
    def test_small_alphabet_concatenates(self):
        assert word_to_text((1, 2, 1)) == "121"

    def test_large_alphabet_separates(self):
        assert word_to_text((1, 11), 12) == "1,11"


class TestMetric:
    def test_equal_words(self):
        assert metric_distance((1, 2), (1, 2), 2) == 0

    def test_first_letter_disagreement(self):
        assert metric_distance((1, 1, 2), (2, 1, 2), 2) == Fraction(1, 2)

    def test_third_letter_disagreement_base_three(self):
        assert metric_distance((1, 1, 2), (1, 1, 3), 3) == Fraction(1, 27)

    def test_letters_must_fit_alphabet(self):
        with pytest.raises(SizeMismatchError):
            metric_distance((1, 3), (1, 2), 2)

    def test_proper_prefix_has_no_disagreement(self):
        with pytest.raises(ValueError):
            metric_distance((1, 2), (1, 2, 1), 2)

    @given(
        st.integers(2, 5),
        st.lists(st.integers(1, 5), min_size=1, max_size=8),
        st.lists(st.integers(1, 5), min_size=1, max_size=8),
        st.lists(st.integers(1, 5), min_size=1, max_size=8),
    )
    def test_ultrametric_inequality(self, b, u, v, w):
        us = [min(x, b) for x in u]
        vs = [min(x, b) for x in v]
        ws = [min(x, b) for x in w]
        k = min(len(us), len(vs), len(ws))
        us, vs, ws = tuple(us[:k]), tuple(vs[:k]), tuple(ws[:k])
        duw = metric_distance(us, ws, b)
        assert duw <= max(metric_distance(us, vs, b), metric_distance(vs, ws, b))

    def test_symmetry_and_identity(self):
        assert metric_distance((1, 2, 2), (1, 2, 1), 3) == metric_distance(
            (1, 2, 1), (1, 2, 2), 3
        )


class TestPeriodicWord:
    def test_two_cycle(self):
        d = periodic_word(make_J(2), 1)
        assert d.preperiod == ()
        assert d.period == (1, 2)
        assert d.to_text() == "(12)^inf"

    def test_self_loop(self):
        d = periodic_word(bitmatrix([[1, 0], [1, 0]]), 1)
        assert d.period == (1,)

    def test_rotated_three_cycle(self):
        assert periodic_word(make_J(3), 2).period == (2, 3, 1)

    def test_head_off_the_cycle_set(self):
        with pytest.raises(NotInCycleSetError):
            periodic_word(LOOP_WITH_FEEDERS, 2)

    def test_needs_p2(self):
        with pytest.raises(P2ViolationError):
            periodic_word(GOLDEN, 1)

    def test_needs_p1(self):
        with pytest.raises(P1ViolationError):
            periodic_word(bitmatrix([[0, 1], [0, 0]]), 1)

    def test_letter_set_is_the_cycle(self):
        from matgrowth.digraph import cycle_structure

        for m in all_matrices(3):
            if not (satisfies_p1(m) and satisfies_p2(m)):
                continue
            cs = cycle_structure(m)
            for i in cs.d_set:
                d = periodic_word(m, i)
                assert d.preperiod == ()
                assert d.period[0] == i
                assert frozenset(d.period) == cs.cycles[i][0]


class TestCensus:
    def test_loop_with_feeders_is_finite_four(self):
        census = infinite_word_census(LOOP_WITH_FEEDERS)
        assert census.kind == "finite"
        texts = sorted(d.to_text() for d in census.descriptors)
        assert texts == ["(1)^inf", "2(1)^inf", "3(1)^inf", "32(1)^inf"]

    def test_branching_cycle_failure_is_positive_dimension(self):
        assert infinite_word_census(GOLDEN).kind == "positive-dimension"

    def test_full_lower_triangle_is_countable(self):
        assert infinite_word_census(make_T(2)).kind == "countably-infinite"

    def test_descriptors_only_in_the_finite_case(self):
        assert infinite_word_census(make_T(2)).descriptors is None
        assert infinite_word_census(GOLDEN).descriptors is None

    def test_json(self):
        obj = infinite_word_census(make_J(2)).to_json_obj(2)
        assert obj == {"kind": "finite", "count": "2", "words": ["(12)^inf", "(21)^inf"]}
        assert infinite_word_census(make_T(2)).to_json_obj(2) == {"kind": "countably-infinite"}

    def test_descriptor_words_are_admissible_and_canonical(self):
        for m in all_matrices(3):
            if not satisfies_p1(m):
                continue
            census = infinite_word_census(m)
            if census.kind != "finite":
                continue
            seen = set()
            for d in census.descriptors:
                assert d not in seen
                seen.add(d)
                assert 1 <= len(d.period) <= 3
                assert len(d.preperiod) <= 3
                # the expanded prefix must walk edges, including both wraps
                expanded = d.preperiod + d.period * 3
                assert all(m.entry(a, c) == 1 for a, c in zip(expanded, expanded[1:]))
                # primitive period: no proper rotation-divisor reproduces it
                p = d.period
                for div in range(1, len(p)):
                    if len(p) % div == 0:
                        assert p != p[:div] * (len(p) // div)
                # minimal preperiod: dropping the boundary letter must change
                # the tail word or break admissibility
                if d.preperiod:
                    assert d.preperiod[-1] != d.period[-1]


class TestCountInfinite:
    def test_two_constant_words(self):
        assert count_infinite(make_I(2)) == 2

    def test_feeder_into_loop(self):
        assert count_infinite(bitmatrix([[1, 0], [1, 0]])) == 2

    def test_first_extremal_form_b4(self):
        assert count_infinite(block_compose(make_I(1), make_L(3))) == 8

    def test_unbounded_class_rejected(self):
        with pytest.raises(UnboundedClassError):
            count_infinite(make_T(2))

    def test_equals_stabilized_norm_exhaustive(self):
        from matgrowth.classify import Growth, classify

        for b in (2, 3):
            for m in all_matrices(b):
                if not satisfies_p1(m):
                    continue
                g = classify(m)
                if g.variant is not Growth.BOUNDED:
                    continue
                assert count_infinite(m) == g.stabilized_norm, m.to_text()
                assert count_infinite(m) <= 2 ** (b - 1)


class TestUltimatePeriodicity:
    def test_long_words_in_the_bounded_class_wrap_onto_cycles(self):
        # in the bounded class every vertex downstream of a cycle has a
        # single exit, so a word of length 3b repeats with period <= b from
        # the moment it enters the cycle set
        from matgrowth.classify import Growth, classify
        from matgrowth.digraph import cycle_structure

        for b in (2, 3):
            for m in all_matrices(b):
                if not (satisfies_p1(m) and satisfies_p2(m)):
                    continue
                if classify(m).variant is not Growth.BOUNDED:
                    continue
                cs = cycle_structure(m)
                for w in admissible_words(m, 3 * b):
                    entered = next(
                        (k for k, letter in enumerate(w) if letter in cs.d_set), None
                    )
                    if entered is None:
                        continue
                    period = len(cs.cycles[w[entered]][0])
                    assert period <= b
                    for k in range(entered, len(w) - period):
                        assert w[k + period] == w[k], (m.to_text(), w)
