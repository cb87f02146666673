"""Memo cache and mutation cache semantics."""

from hypothesis import given
from hypothesis import strategies as st

from mutlab.memo import MemoState, make_call_key


class TestCallKeys:
    def test_floats_are_bit_exact(self):
        assert make_call_key("f", [1.0]) != make_call_key("f", [1])
        assert make_call_key("f", [0.0]) != make_call_key("f", [-0.0])
        assert make_call_key("f", [1.5]) == make_call_key("f", [1.5])

    def test_bools_distinct_from_ints(self):
        assert make_call_key("f", [True]) != make_call_key("f", [1])

    def test_lists_key_structurally(self):
        # mini-language lists are tuples internally
        assert (make_call_key("f", [(1, 2.0)])
                == make_call_key("f", [(1, 2.0)]))
        assert make_call_key("f", [(1,)]) != make_call_key("f", [(1.0,)])

    @given(st.floats(allow_nan=False))
    def test_float_keys_hashable_and_stable(self, x):
        k = make_call_key("g", [x])
        assert hash(k) == hash(make_call_key("g", [x]))


class TestMemoState:
    def test_store_then_lookup(self):
        ms = MemoState()
        k = make_call_key("f", [3])
        hit, _ = ms.lookup(k, 1)
        assert not hit
        ms.store(k, 1, 42)
        hit, v = ms.lookup(k, 2)
        assert hit and v == 42
        assert ms.stats.hits == 1 and ms.stats.misses == 1
        assert ms.stats.stores == 1

    def test_first_write_wins(self):
        ms = MemoState()
        k = make_call_key("f", [3])
        ms.store(k, 1, 42)
        ms.store(k, 2, 99)
        assert ms.lookup(k, 5) == (True, 42)

    def test_mutation_cache_vetoes_lookup_per_mutant(self):
        ms = MemoState()
        k = make_call_key("f", [3])
        ms.store(k, 1, 42)
        added = ms.record_mutation_encounter([k], {2})
        assert added == 1
        assert ms.lookup(k, 2) == (False, None)   # M2's mutation ran inside
        assert ms.lookup(k, 3) == (True, 42)      # other mutants still share

    def test_mutation_cache_vetoes_store(self):
        ms = MemoState()
        k = make_call_key("f", [3])
        ms.record_mutation_encounter([k], {1})
        ms.store(k, 1, 42)
        assert ms.stats.stores == 0
        assert ms.lookup(k, 1) == (False, None)

    def test_encounter_marks_all_ancestor_keys_once(self):
        ms = MemoState()
        k1 = make_call_key("f", [1])
        k2 = make_call_key("g", [2])
        assert ms.record_mutation_encounter([k1, k2], {1, 2}) == 4
        assert ms.record_mutation_encounter([k1, k2], {1, 2}) == 0

    def test_clear_only_when_all_merged(self):
        ms = MemoState()
        k = make_call_key("f", [3])
        ms.store(k, 1, 42)
        ms.clear_if_all_merged(2)
        assert ms.lookup(k, 1) == (True, 42)
        ms.clear_if_all_merged(0)
        assert ms.lookup(k, 1) == (False, None)
        assert ms.stats.clears == 1
        # clearing an already-empty store doesn't count
        ms.clear_if_all_merged(0)
        assert ms.stats.clears == 1

    def test_disabled_state_is_inert(self):
        ms = MemoState(enabled=False)
        k = make_call_key("f", [3])
        ms.store(k, 1, 42)
        assert ms.record_mutation_encounter([k], {1}) == 0
        assert ms.lookup(k, 1) == (False, None)
        assert ms.stats.stores == 0 and ms.stats.misses == 0
