"""Exhaustive computation of the forcing lengths for index-n subsequences.

forcing_length(n) is the least L such that every multiset of L elements of
Z_n contains a subsequence of index n; forcing_length_distinct restricts the
candidates to subsets of distinct elements.  The searches scan candidate
lengths upward and stop at the first length with no counterexample.

A counterexample of length L yields counterexamples at every smaller length
(drop elements), so the first counterexample-free length is exact.  Known
counterexamples (all-ones, and truncations of the quadratic-family member)
are tried before enumerating, which is what makes the out-of-reach moduli
report useful partial bounds instead of hanging.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, islice

from .core import ZnSequence, units
from .engine import _map_chunks, _mask_hit
from .family import build_counterexample

_CHUNK = 1024


@dataclass(frozen=True)
class ExtremalReport:
    n: int
    kind: str  # "multiset" or "distinct"
    value: int | None
    exact: bool
    lower_bound: int
    witness: ZnSequence | None
    candidates_checked: int
    cap: int


def _has_index_subseq_values(values, n: int, unit_list) -> bool:
    for m in unit_list:
        weights = [(m * v) % n or n for v in values]
        if _mask_hit(weights, n, n):
            return True
    return False


def _counterexample_chunk(args):
    """Offset of the first counterexample in the chunk, or None."""
    n, chunk = args
    unit_list = units(n)
    for offset, values in enumerate(chunk):
        if not _has_index_subseq_values(values, n, unit_list):
            return offset
    return None


def _scan_layer(candidates, n: int, budget: int, parallelism: int):
    """Scan candidates in order for the first counterexample.

    Returns (verdict, position, examined) where verdict is "hit", "clear" or
    "budget".  Workers process fixed chunks and report local first hits; the
    global first hit is the earliest chunk's, so the outcome is identical at
    any parallelism.
    """
    stream = islice(candidates, budget + 1)
    examined = 0
    chunk_start = 0
    pending = []
    first_hit = None

    def flush():
        nonlocal first_hit
        if not pending:
            return
        results = _map_chunks(_counterexample_chunk, [(n, c) for c, _ in pending], parallelism)
        for (chunk, start), offset in zip(pending, results):
            if offset is not None:
                first_hit = (start + offset, chunk[offset])
                break
        pending.clear()

    chunk = []
    for values in stream:
        if examined >= budget:
            examined = budget
            if chunk:
                pending.append((chunk, chunk_start))
            flush()
            if first_hit is not None:
                return "hit", first_hit, first_hit[0] + 1
            return "budget", None, budget
        chunk.append(values)
        examined += 1
        if len(chunk) == _CHUNK:
            pending.append((chunk, chunk_start))
            chunk_start += len(chunk)
            chunk = []
            if len(pending) >= max(1, parallelism):
                flush()
                if first_hit is not None:
                    return "hit", first_hit, first_hit[0] + 1
    if chunk:
        pending.append((chunk, chunk_start))
    flush()
    if first_hit is not None:
        return "hit", first_hit, first_hit[0] + 1
    return "clear", None, examined


def _canonical_multisets(n: int, length: int, symmetry: bool):
    unit_list = units(n)
    for values in combinations_with_replacement(range(n), length):
        if symmetry and any(tuple(sorted((r * v) % n for v in values)) < values
                            for r in unit_list[1:]):
            continue
        yield values


def _seed_counterexamples(n: int, length: int):
    if length <= n - 1:
        yield (1,) * length
    if n % 4 == 2 and n >= 22:
        member = build_counterexample(n).sequence
        if length <= len(member):
            yield member.values()[:length]


def forcing_length(n: int, cap: int | None = None, symmetry: bool = True,
                   parallelism: int = 1, budget: int = 20000) -> ExtremalReport:
    """Least L such that every L-element multiset over Z_n has an index-n
    subsequence; partial (lower bound only) when cap or budget is exceeded.

    Candidates are enumerated as sorted value tuples; with symmetry on, only
    representatives that are lexicographically minimal under unit scaling are
    tested (sound because the verdict is scale invariant, which is itself a
    tested property; the raw search stays available with symmetry=False).
    """
    if n < 2:
        raise ValueError("modulus must be at least 2")
    if cap is None:
        cap = 2 * n
    unit_list = units(n)
    checked = 0
    witness = None
    for length in range(1, cap + 1):
        found_ce = None
        for seed in _seed_counterexamples(n, length):
            checked += 1
            if not _has_index_subseq_values(seed, n, unit_list):
                found_ce = seed
                break
        if found_ce is None:
            verdict, hit, examined = _scan_layer(
                _canonical_multisets(n, length, symmetry), n, budget, parallelism)
            checked += examined
            if verdict == "clear":
                return ExtremalReport(n, "multiset", length, True, length,
                                      witness, checked, cap)
            if verdict == "budget":
                return ExtremalReport(n, "multiset", None, False, length,
                                      witness, checked, cap)
            found_ce = hit[1]
        witness = ZnSequence(n, found_ce)
    return ExtremalReport(n, "multiset", None, False, cap + 1, witness, checked, cap)


def forcing_length_distinct(n: int, cap: int | None = None,
                            parallelism: int = 1) -> ExtremalReport:
    """Least L such that every L-element subset of Z_n has an index-n subset.

    The full set Z_n contains 0 and the one-term subsequence (0) sums to n,
    so the answer is at most n and the search always terminates.
    """
    if n < 2:
        raise ValueError("modulus must be at least 2")
    cap = min(cap if cap is not None else 2 * n, n)
    checked = 0
    witness = None
    for length in range(1, cap + 1):
        verdict, hit, examined = _scan_layer(
            combinations(range(n), length), n, 1 << 62, parallelism)
        checked += examined
        if verdict == "clear":
            return ExtremalReport(n, "distinct", length, True, length,
                                  witness, checked, cap)
        witness = ZnSequence(n, hit[1])
    return ExtremalReport(n, "distinct", None, False, cap + 1, witness, checked, cap)
