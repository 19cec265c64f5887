"""Digraph reading of a matrix: SCCs, cycle sets, the one-closed-walk test."""

import pytest

from matgrowth.digraph import (
    COMPLEX,
    SIMPLE_CYCLE,
    TRIVIAL,
    branching_certificate,
    cycle_structure,
    is_nilpotent,
    p2_power_oracle,
    reachable_from,
    satisfies_p2,
    sccs,
)
from matgrowth.errors import P2ViolationError
from matgrowth.matrices import bitmatrix, make_I, make_J, make_L, make_T, power, satisfies_p1

GOLDEN = bitmatrix([[1, 1], [1, 0]])
LOOP_WITH_FEEDERS = bitmatrix([[1, 0, 0], [1, 0, 0], [1, 1, 0]])


def all_matrices(b):
    for mask in range(1, 1 << (b * b)):
        yield bitmatrix([[(mask >> (i * b + j)) & 1 for j in range(b)] for i in range(b)])


class TestSccs:
    def test_single_cycle(self):
        comps = sccs(make_J(3))
        assert len(comps) == 1
        assert comps[0].vertices == frozenset({1, 2, 3})
        assert comps[0].kind == SIMPLE_CYCLE

    def test_strictly_lower_is_all_trivial(self):
        comps = sccs(make_L(3))
        assert len(comps) == 3
        assert all(c.kind == TRIVIAL for c in comps)

    def test_loop_plus_two_cycle_is_complex(self):
        comps = sccs(GOLDEN)
        assert len(comps) == 1
        assert comps[0].vertices == frozenset({1, 2})
        assert comps[0].kind == COMPLEX

    def test_self_loop_counts_as_one_cycle(self):
        comps = sccs(make_T(2))
        assert {c.kind for c in comps} == {SIMPLE_CYCLE}
        assert len(comps) == 2

    def test_partition(self):
        for m in all_matrices(3):
            comps = sccs(m)
            seen = [v for c in comps for v in c.vertices]
            assert sorted(seen) == [1, 2, 3]


class TestP2:
    def test_identity(self):
        assert satisfies_p2(make_I(3))

    def test_golden_mean_fails(self):
        assert not satisfies_p2(GOLDEN)
        assert power(GOLDEN, 2).entry(1, 1) == 2

    def test_full_lower_triangle(self):
        for b in (2, 3, 4, 5):
            assert satisfies_p2(make_T(b))

    def test_power_oracle_examples(self):
        assert p2_power_oracle(make_J(2), 8)
        assert not p2_power_oracle(GOLDEN, 8)
        assert p2_power_oracle(make_L(4), 32)

    def test_structural_equals_power_oracle_exhaustive(self):
        for b in (2, 3):
            for m in all_matrices(b):
                assert satisfies_p2(m) == p2_power_oracle(m, 2 * b * b), m.to_text()


class TestCycleStructure:
    def test_loop_with_feeders(self):
        cs = cycle_structure(LOOP_WITH_FEEDERS)
        assert cs.d_set == frozenset({1})
        group, word = cs.cycles[1]
        assert group == frozenset({1})
        assert word == (1,)
        assert cs.d0_set == frozenset({1})
        assert cs.d00_set == frozenset({1})

    def test_strictly_lower_has_no_cycles(self):
        assert cycle_structure(make_L(3)).d_set == frozenset()

    def test_two_cycle(self):
        cs = cycle_structure(make_J(2))
        assert cs.d_set == frozenset({1, 2})
        assert cs.cycles[1][0] == cs.cycles[2][0] == frozenset({1, 2})
        assert cs.d0_set == frozenset({1, 2})
        assert cs.d00_set == frozenset({1, 2})

    def test_cycle_fields_absent_outside_p2(self):
        cs = cycle_structure(GOLDEN)
        assert cs.d_set == frozenset({1, 2})
        assert not cs.p2
        for field in ("cycles", "d0_set", "d00_set"):
            with pytest.raises(P2ViolationError):
                getattr(cs, field)

    def test_json_shape(self):
        obj = cycle_structure(make_J(2)).to_json_obj()
        assert obj["d_set"] == ["1", "2"]
        assert obj["p2"] is True
        assert obj["sccs"] == [{"vertices": ["1", "2"], "kind": "simple-cycle"}]
        assert obj["cycles"]["1"] == {"vertices": ["1", "2"], "word": ["1", "2"]}
        assert obj["d0_set"] == obj["d00_set"] == ["1", "2"]

    def test_json_outside_p2_omits_cycle_fields(self):
        obj = cycle_structure(GOLDEN).to_json_obj()
        assert obj["p2"] is False
        assert "cycles" not in obj and "d0_set" not in obj and "d00_set" not in obj


class TestReachability:
    def test_cycle_reaches_itself(self):
        assert reachable_from(make_J(3), 1) == frozenset({1, 2, 3})

    def test_strictly_lower(self):
        assert reachable_from(make_L(3), 3) == frozenset({1, 2})

    def test_self_loop_only(self):
        assert reachable_from(bitmatrix([[1, 0], [1, 0]]), 1) == frozenset({1})

    def test_index_out_of_range(self):
        with pytest.raises(ValueError):
            reachable_from(make_I(2), 3)

    def test_matches_positive_power_entries(self):
        for m in all_matrices(2):
            for i in (1, 2):
                by_powers = {
                    j
                    for j in (1, 2)
                    if any(power(m, n).entry(i, j) > 0 for n in range(1, 5))
                }
                assert reachable_from(m, i) == frozenset(by_powers)


class TestNilpotency:
    def test_strictly_lower(self):
        assert is_nilpotent(make_L(4))

    def test_identity_is_not(self):
        assert not is_nilpotent(make_I(2))

    def test_single_edge(self):
        assert is_nilpotent(bitmatrix([[0, 1], [0, 0]]))


class TestBranchingCertificate:
    def test_permutation_has_none(self):
        assert branching_certificate(make_J(2)) is None

    def test_full_lower_triangle_has_one(self):
        cert = branching_certificate(make_T(2))
        assert cert == (2, 2)

    def test_certificate_is_checkable(self):
        # head lies on a cycle, branch vertex has out-degree >= 2 and is the
        # head itself or reachable from it
        for b in (2, 3):
            for m in all_matrices(b):
                if not (satisfies_p1(m) and satisfies_p2(m)):
                    continue
                cert = branching_certificate(m)
                if cert is None:
                    continue
                head, branch = cert
                cs = cycle_structure(m)
                assert head in cs.d_set
                assert m.out_degree(branch) >= 2
                assert branch == head or branch in reachable_from(m, head)


class TestExhaustiveInvariants:
    def test_d_set_is_the_diagonal_power_witness_set(self):
        for b in (2, 3):
            for m in all_matrices(b):
                witness = {
                    i
                    for i in range(1, b + 1)
                    if any(power(m, k).entry(i, i) >= 1 for k in range(1, b + 1))
                }
                assert cycle_structure(m).d_set == frozenset(witness), m.to_text()

    def test_p1_forces_a_cycle(self):
        for b in (2, 3):
            for m in all_matrices(b):
                if satisfies_p1(m):
                    assert cycle_structure(m).d_set, m.to_text()

    def test_peeled_sets_nonempty_under_p1_p2(self):
        for b in (2, 3):
            for m in all_matrices(b):
                if not (satisfies_p1(m) and satisfies_p2(m)):
                    continue
                cs = cycle_structure(m)
                assert cs.d00_set, m.to_text()
                assert cs.d0_set, m.to_text()

    def test_peeled_sets_nest(self):
        for b in (2, 3):
            for m in all_matrices(b):
                if not satisfies_p2(m):
                    continue
                cs = cycle_structure(m)
                assert cs.d00_set <= cs.d0_set <= cs.d_set

    def test_cycle_membership_is_symmetric(self):
        for b in (2, 3):
            for m in all_matrices(b):
                if not satisfies_p2(m):
                    continue
                cs = cycle_structure(m)
                for i in cs.d_set:
                    for j in cs.cycles[i][0]:
                        assert i in cs.cycles[j][0]

    def test_inner_set_closed_under_cycles(self):
        for b in (2, 3):
            for m in all_matrices(b):
                if not satisfies_p2(m):
                    continue
                cs = cycle_structure(m)
                for i in cs.d0_set:
                    assert cs.cycles[i][0] <= cs.d0_set

    def test_cycle_word_walks_the_matrix(self):
        for m in all_matrices(3):
            if not satisfies_p2(m):
                continue
            cs = cycle_structure(m)
            for i in cs.d_set:
                group, word = cs.cycles[i]
                assert word[0] == i
                assert frozenset(word) == group
                for a, c in zip(word, word[1:] + (word[0],)):
                    assert m.entry(a, c) == 1

    def test_nilpotency_three_way(self):
        from matgrowth.equivalence import is_strictly_lower_triangularizable

        for b in (2, 3):
            for m in all_matrices(b):
                no_cycles = not cycle_structure(m).d_set
                assert is_nilpotent(m) == no_cycles
                assert power(m, b).is_zero() == no_cycles
                assert (is_strictly_lower_triangularizable(m) is not None) == no_cycles
