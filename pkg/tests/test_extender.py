import itertools

import pytest

from symshift import extender as E
from symshift import subshifts as S
from symshift import words as W
from symshift.errors import InvalidWordError

GOLDEN = S.SftShift(W.BINARY, ("11",))
FULL = S.FullShift(W.BINARY)


class TestDescriptors:
    def test_golden_one(self):
        d = E.extender_descriptor(GOLDEN, "1")
        assert d.left_classes == ("0",)
        assert d.right_classes == ("1",)

    def test_golden_zero(self):
        d = E.extender_descriptor(GOLDEN, "0")
        assert d.left_classes == ("0", "1")
        assert d.right_classes == ("0",)

    def test_not_in_language(self):
        with pytest.raises(InvalidWordError):
            E.extender_descriptor(GOLDEN, "11")

    def test_to_dict_keys(self):
        d = E.extender_descriptor(GOLDEN, "01").to_dict()
        assert set(d) == {"word", "left_classes", "right_classes"}


class TestCompare:
    def test_golden_chain(self):
        assert E.extender_compare(GOLDEN, "1", "01") == E.PROPER_SUBSET
        assert E.extender_compare(GOLDEN, "01", "000") == E.PROPER_SUBSET
        assert E.extender_compare(GOLDEN, "000", "0") == E.EQUAL
        assert E.extender_compare(GOLDEN, "0", "1") == E.PROPER_SUPERSET

    def test_full_shift_all_equal(self):
        for v, w in itertools.product(["0", "1", "01", "110"], repeat=2):
            assert E.extender_compare(FULL, v, w) == E.EQUAL

    def test_antisymmetry(self):
        words = [w for n in range(1, 5) for w in S.enumerate_words(GOLDEN, n)]
        flip = {
            E.PROPER_SUBSET: E.PROPER_SUPERSET,
            E.PROPER_SUPERSET: E.PROPER_SUBSET,
            E.EQUAL: E.EQUAL,
            E.INCOMPARABLE: E.INCOMPARABLE,
        }
        for v, w in itertools.product(words, repeat=2):
            assert E.extender_compare(GOLDEN, w, v) == flip[E.extender_compare(GOLDEN, v, w)]

    def test_transitivity_of_containment(self):
        words = [w for n in range(1, 5) for w in S.enumerate_words(GOLDEN, n)]
        below = {E.PROPER_SUBSET, E.EQUAL}
        rel = {
            (v, w): E.extender_compare(GOLDEN, v, w)
            for v, w in itertools.product(words, repeat=2)
        }
        for u, v, w in itertools.product(words, repeat=3):
            if rel[(u, v)] in below and rel[(v, w)] in below:
                assert rel[(u, w)] in below


class TestWindowed:
    def test_matches_exact_on_golden(self):
        words = [w for n in range(1, 4) for w in S.enumerate_words(GOLDEN, n)]
        window = S.build_automaton(GOLDEN).memory + 1
        for v, w in itertools.product(words, repeat=2):
            assert E.compare_windowed(GOLDEN, v, w, window) == E.extender_compare(
                GOLDEN, v, w
            )

    def test_pair_count_full_shift(self):
        ext = E.extender_windowed(FULL, "0", 2)
        assert len(ext.pairs) == 16

    def test_window_validation(self):
        with pytest.raises(InvalidWordError):
            E.extender_windowed(GOLDEN, "0", 0)
