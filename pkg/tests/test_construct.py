"""Small definitive sets, their witnesses, and the level-by-level checker."""

import pytest

from quartets import (
    TooFewLeavesError,
    WitnessChain,
    caterpillar,
    caterpillar_from_order,
    defines,
    displays,
    inference_closure,
    integer_leaves,
    make_quartet,
    minimal_definitive_sequence,
    minimal_definitive_set,
    minimality_report,
    reverse,
    target_tree,
    verify_construction,
    witness_chain,
)


def texts(n):
    return [q.text(integer_leaves(n)) for q in minimal_definitive_sequence(n)]


class TestCaterpillar:
    def test_four_leaves(self):
        t = caterpillar(4)
        assert [s.text(t.leaves) for s in t.splits] == ["1,2|3,4"]

    def test_six_leaves_spine(self, t6):
        assert caterpillar(6) == t6
        assert {s.text(t6.leaves) for s in t6.splits} == {
            "1,2|3,4,5,6",
            "1,2,3|4,5,6",
            "1,2,3,4|5,6",
        }

    @pytest.mark.parametrize("n", range(6, 11))
    def test_reversal_symmetry(self, n):
        assert reverse(caterpillar(n)) == caterpillar(n)

    def test_too_few(self):
        with pytest.raises(TooFewLeavesError):
            caterpillar(3)

    def test_custom_order(self):
        t = caterpillar_from_order([2, 4, 6, 1, 5, 3])
        assert "1,3,5,6|2,4" in {s.text(t.leaves) for s in t.splits}


class TestSequence:
    def test_five(self):
        assert texts(5) == ["1,2|3,4", "1,4|3,5"]

    def test_six(self):
        assert texts(6) == ["1,2|3,5", "1,3|4,6", "1,2|5,6", "2,4|5,6"]

    def test_seven(self):
        assert texts(7) == [
            "1,2|3,5",
            "1,3|4,6",
            "1,2|5,7",
            "2,4|5,7",
            "1,3|6,7",
            "3,5|6,7",
        ]

    def test_eight(self):
        assert texts(8) == [
            "1,2|3,5",
            "1,3|4,6",
            "1,2|5,7",
            "2,4|5,7",
            "1,3|6,8",
            "3,5|6,8",
            "1,4|7,8",
            "4,6|7,8",
        ]

    def test_nine_tail(self):
        assert texts(9)[-4:] == ["1,4|7,9", "4,6|7,9", "1,5|8,9", "5,7|8,9"]

    @pytest.mark.parametrize("n", range(5, 13))
    def test_size(self, n):
        expected = 2 * n - 8 if n > 5 else 2
        assert len(minimal_definitive_sequence(n)) == expected

    @pytest.mark.parametrize("n", range(6, 13))
    def test_sorted_indices_within_each_quartet(self, n):
        for q in minimal_definitive_sequence(n):
            assert q.a < q.b < q.c < q.d

    def test_too_few(self):
        with pytest.raises(TooFewLeavesError):
            minimal_definitive_set(4)

    @pytest.mark.parametrize("k", range(7, 11))
    def test_reversal_pairing(self, k):
        # flipping the leaf order maps the tail quartets onto each other
        ls = integer_leaves(k)
        seq = minimal_definitive_sequence(k)
        by_index = {i + 1: q for i, q in enumerate(seq)}
        assert reverse(by_index[1], leaves=ls) == by_index[2 * k - 8]
        assert reverse(by_index[2], leaves=ls) == by_index[2 * k - 10]
        assert reverse(by_index[4], leaves=ls) == by_index[2 * k - 12]

    @pytest.mark.parametrize("k", range(6, 13))
    def test_closure_contains_the_ladder(self, k):
        ls = integer_leaves(k)
        closed = inference_closure(minimal_definitive_set(k))
        ladder = [make_quartet(ls, 1, m, m + 1, m + 3) for m in range(2, k - 2)]
        ladder.append(make_quartet(ls, 1, k - 2, k - 1, k))
        for q in ladder:
            assert q in closed
        # leaf 1 is common to the whole ladder, which certifies the
        # caterpillar without any enumeration
        from quartets import QuartetSet, common_leaf_certificate

        ladder_set = QuartetSet.from_quartets(ls, ladder)
        assert common_leaf_certificate(ladder_set, caterpillar(k))


class TestTargetTree:
    def test_five_is_the_bent_caterpillar(self):
        assert target_tree(5) == caterpillar_from_order([1, 2, 4, 3, 5])

    @pytest.mark.parametrize("n", range(6, 11))
    def test_rest_are_caterpillars(self, n):
        assert target_tree(n) == caterpillar(n)

    def test_five_is_defined_by_the_seed(self):
        qs = minimal_definitive_set(5)
        for mode in ("fast", "oracle"):
            v = defines(qs, mode=mode)
            assert v.is_definitive and v.tree == target_tree(5)


class TestWitnessChain:
    def test_base_level_shape(self):
        chain = witness_chain(6)
        assert isinstance(chain, WitnessChain)
        assert chain.k == 6
        assert sorted(chain.witnesses) == [1, 2, 3, 4]

    def test_base_level_caterpillar_witness(self):
        chain = witness_chain(6)
        alt = chain.witness(3)
        assert alt == caterpillar_from_order([2, 4, 6, 1, 5, 3])

    def test_level_seven_tail(self):
        ls7 = integer_leaves(7)
        chain = witness_chain(7)
        assert sorted(chain.witnesses) == [1, 2, 3, 4, 5, 6]
        t_dprime = chain.witness(3)
        assert {s.text(ls7) for s in t_dprime.splits} == {
            "1,3,5,6,7|2,4",
            "1,3,5|2,4,6,7",
            "1,2,4,6,7|3,5",
            "1,2,3,4,5|6,7",
        }
        t_tprime = chain.witness(5)
        assert t_tprime == reverse(t_dprime)
        assert {s.text(ls7) for s in t_tprime.splits} == {
            "1,2,3,5,7|4,6",
            "1,2,4,6|3,5,7",
            "1,2,4,6,7|3,5",
            "1,2|3,4,5,6,7",
        }

    def test_pinned_masks_from_the_base(self):
        t_prime = witness_chain(6).witness(3)
        assert {s.mask for s in t_prime.splits} == {10, 42, 20}
        t_dprime = witness_chain(7).witness(3)
        assert {s.mask for s in t_dprime.splits} == {10, 106, 20, 96}
        t_tprime = witness_chain(7).witness(5)
        assert {s.mask for s in t_tprime.splits} == {40, 124, 84, 20}

    @pytest.mark.parametrize("k", range(6, 9))
    def test_every_witness_witnesses(self, k):
        # witness i displays everything except quartet i
        qs = minimal_definitive_set(k)
        seq = minimal_definitive_sequence(k)
        tree = target_tree(k)
        chain = witness_chain(k)
        for i, q in enumerate(seq, start=1):
            alt = chain.witness(i)
            assert alt != tree
            for other in qs.without_quartet(q):
                assert displays(alt, other)

    def test_too_few(self):
        with pytest.raises(TooFewLeavesError):
            witness_chain(5)


class TestVerifyConstruction:
    def test_report_shape(self):
        report = verify_construction(7, oracle_max_n=6)
        assert report.max_n == 7
        assert [lv.n for lv in report.levels] == [5, 6, 7]
        assert report.all_ok

    def test_oracle_rows_are_skipped_above_the_bound(self):
        report = verify_construction(8, oracle_max_n=6)
        by_n = {lv.n: dict(lv.checks) for lv in report.levels}
        assert "oracle_defines_target" in by_n[6]
        assert "oracle_defines_target" not in by_n[8]

    def test_check_names(self):
        report = verify_construction(6, oracle_max_n=6)
        names = dict(report.levels[-1].checks)
        assert {
            "size",
            "displays_target",
            "fast_defines_target",
            "minimal",
            "lower_bound",
            "witness_chain",
            "oracle_defines_target",
        } <= set(names)
        assert all(names.values())

    def test_too_small(self):
        with pytest.raises(TooFewLeavesError):
            verify_construction(4)


class TestMinimalityOfTheFamily:
    @pytest.mark.parametrize("n", range(5, 9))
    def test_family_member_is_minimal_and_definitive(self, n):
        qs = minimal_definitive_set(n)
        report = minimality_report(qs)
        assert report.verdict.is_definitive
        assert report.verdict.tree == target_tree(n)
        assert report.minimal is True
        assert report.size == (2 * n - 8 if n > 5 else 2)
        assert report.size >= n - 3
