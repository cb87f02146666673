"""Cross-mutant memoization: the call-keyed return-value cache plus the
(mutant, call) mutation cache that vetoes sharing of calls whose dynamic
extent executed a mutation.

Call keys are (function name, canonicalized plain argument values); floats
are keyed bit-exact. Entries are first-write-wins and the whole store is
cleared as soon as no unmerged (diverged but not yet merged-back) mutants
remain.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .lang.values import canon_key

CallKey = tuple


def make_call_key(fn_name: str, args: list) -> CallKey:
    return (fn_name, tuple(canon_key(a) for a in args))


@dataclass
class MemoStats:
    hits: int = 0
    misses: int = 0
    stores: int = 0
    clears: int = 0

    def as_dict(self) -> dict:
        return {"hits": self.hits, "misses": self.misses,
                "stores": self.stores, "clears": self.clears}


@dataclass
class MemoState:
    """Memo cache + mutation cache for one analysis run."""
    enabled: bool = True
    entries: dict = field(default_factory=dict)          # CallKey -> plain value
    mutation_cache: set = field(default_factory=set)     # (mid, CallKey)
    stats: MemoStats = field(default_factory=MemoStats)

    def record_mutation_encounter(self, keys, mutants) -> int:
        """Mark every (mutant, call) pair for the current call and each
        ancestor call. Returns the number of new records (infra cost)."""
        if not self.enabled or not mutants:
            return 0
        added = 0
        for key in keys:
            for m in mutants:
                pair = (m, key)
                if pair not in self.mutation_cache:
                    self.mutation_cache.add(pair)
                    added += 1
        return added

    def lookup(self, key: CallKey, m: int):
        """(hit, value): a hit requires a stored entry and no mutation-cache
        veto for this mutant."""
        if not self.enabled:
            return False, None
        if key in self.entries and (m, key) not in self.mutation_cache:
            self.stats.hits += 1
            return True, self.entries[key]
        self.stats.misses += 1
        return False, None

    def store(self, key: CallKey, m: int, value) -> None:
        """First write wins; vetoed when this mutant's mutation ran inside."""
        if not self.enabled:
            return
        if key in self.entries or (m, key) in self.mutation_cache:
            return
        self.entries[key] = value
        self.stats.stores += 1

    def clear_if_all_merged(self, unmerged_count: int) -> None:
        if unmerged_count == 0 and (self.entries or self.mutation_cache):
            self.entries.clear()
            self.mutation_cache.clear()
            self.stats.clears += 1
