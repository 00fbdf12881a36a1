import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from symshift import subshifts as S
from symshift import words as W
from symshift.errors import (
    EmptySubshiftError,
    InvalidWordError,
    ResourceLimitError,
    SpecFormatError,
)

PHI = (1 + math.sqrt(5)) / 2

GOLDEN = S.SftShift(W.BINARY, ("11",))
FULL = S.FullShift(W.BINARY)


class TestSGapSet:
    def test_membership(self):
        s = S.SGapSet((2,), 5)
        assert 2 in s and 7 in s
        assert 3 not in s and 4 not in s

    def test_validation(self):
        with pytest.raises(SpecFormatError):
            S.SGapSet((3, 1))
        with pytest.raises(SpecFormatError):
            S.SGapSet(())
        with pytest.raises(SpecFormatError):
            S.SGapSet((5,), 3)

    def test_gcd_shifted(self):
        assert S.SGapSet((1, 3)).gcd_shifted() == 2
        assert S.SGapSet((0, 1)).gcd_shifted() == 1
        assert S.SGapSet((), 1).gcd_shifted() == 1

    def test_describe(self):
        assert S.SGapSet((2,), 5).describe() == "{2}u[5,inf)"
        assert S.SGapSet((), 1).describe() == "[1,inf)"


class TestSpecSerialization:
    @pytest.mark.parametrize(
        "doc",
        [
            {"type": "full", "alphabet": ["0", "1"]},
            {"type": "sft", "alphabet": ["0", "1"], "forbidden": ["11"]},
            {"type": "sgap", "finite": [0, 1]},
            {"type": "sgap", "extra": [2], "from": 5},
        ],
    )
    def test_round_trip(self, doc):
        spec = S.spec_from_dict(doc)
        assert S.spec_from_dict(S.spec_to_dict(spec)) == spec

    def test_unknown_type(self):
        with pytest.raises(SpecFormatError):
            S.spec_from_dict({"type": "sofic"})

    def test_unknown_field(self):
        with pytest.raises(SpecFormatError):
            S.spec_from_dict({"type": "full", "alphabet": ["0"], "window": 3})

    def test_empty_gap_list(self):
        with pytest.raises(SpecFormatError):
            S.spec_from_dict({"type": "sgap", "finite": []})


class TestAutomaton:
    def test_golden_mean_states(self):
        aut = S.build_automaton(GOLDEN)
        assert set(aut.states) == {"0", "1"}
        assert aut.irreducible

    def test_empty_language_detected(self):
        spec = S.SftShift(W.BINARY, ("0", "1"))
        with pytest.raises(EmptySubshiftError):
            S.build_automaton(spec)

    def test_trimming_removes_dead_blocks(self):
        # forbidding 00 and 11 leaves only the alternating orbit
        spec = S.SftShift(W.BINARY, ("00", "11"))
        aut = S.build_automaton(spec)
        assert set(aut.states) == {"0", "1"}
        assert S.count_words(spec, 5) == 2

    def test_sgap_matches_equivalent_sft(self):
        sgap = S.SGapShift(S.SGapSet((0, 1)))
        for n in range(8):
            assert S.count_words(sgap, n) == S.count_words(GOLDEN, n)


class TestLanguage:
    def test_fibonacci_counts(self):
        counts = [S.count_words(GOLDEN, n) for n in range(1, 8)]
        assert counts == [2, 3, 5, 8, 13, 21, 34]

    def test_full_shift_counts(self):
        assert S.count_words(FULL, 10) == 1024

    def test_member(self):
        assert S.member(GOLDEN, "01010")
        assert not S.member(GOLDEN, "0110")
        assert not S.member(S.SGapShift(S.SGapSet((0, 1))), "1001")

    def test_member_rejects_alien_symbols(self):
        assert not S.member(GOLDEN, "012")

    def test_enumerate_matches_count(self):
        for n in range(7):
            words = S.enumerate_words(GOLDEN, n)
            assert len(words) == S.count_words(GOLDEN, n)
            assert words == sorted(words)
            assert all(S.member(GOLDEN, w) for w in words)

    def test_enumerate_budget(self):
        with pytest.raises(ResourceLimitError):
            S.enumerate_words(FULL, 30)

    def test_negative_length(self):
        with pytest.raises(InvalidWordError):
            S.count_words(GOLDEN, -1)

    @given(st.integers(min_value=1, max_value=10))
    def test_scaled_matches_exact(self, n):
        lam = S.perron_eigenvalue(GOLDEN)
        assert S.count_words_scaled(GOLDEN, n, lam) == pytest.approx(
            S.count_words(GOLDEN, n) / lam**n, rel=1e-12
        )


class TestEntropy:
    def test_full_shift(self):
        assert S.entropy(FULL) == pytest.approx(math.log(2), abs=1e-12)

    def test_golden_mean(self):
        assert S.entropy(GOLDEN) == pytest.approx(math.log(PHI), abs=1e-12)

    def test_sgap_cofinite_one(self):
        # gaps of length >= 1 between 1s is the golden mean in disguise
        assert S.sgap_lambda(S.SGapSet((), 1)) == pytest.approx(PHI, abs=1e-12)

    def test_singleton_gap_zero_entropy(self):
        assert S.sgap_lambda(S.SGapSet((4,))) == 1.0

    def test_periodic_graph_converges(self):
        spec = S.SGapShift(S.SGapSet((1, 3)))
        lam = S.perron_eigenvalue(spec)
        assert math.log(lam) == pytest.approx(S.entropy(spec), abs=1e-10)


class TestStructuralPredicates:
    def test_synchronizing(self):
        assert S.is_synchronizing(GOLDEN, "1")
        assert S.is_synchronizing(GOLDEN, "0")
        sgap = S.SGapShift(S.SGapSet((0, 2)))
        assert S.is_synchronizing(sgap, "1")

    def test_specification_distance(self):
        assert S.specification_distance_holds(GOLDEN, 1)
        assert S.specification_distance_holds(FULL, 0)
        # distance 0 would need 11 to be joinable directly
        assert not S.specification_distance_holds(GOLDEN, 0)

    def test_hereditary(self):
        assert S.is_hereditary_bounded(GOLDEN, 6)
        assert S.is_i_hereditary_bounded(GOLDEN, 6)
        assert S.is_i_hereditary_bounded(FULL, 6)
        # gaps must be exactly 1, so dropping a 1 creates an illegal gap
        assert not S.is_hereditary_bounded(S.SGapShift(S.SGapSet((1,))), 6)
