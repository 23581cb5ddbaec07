"""Index computations and subsequence searches over Z_n.

The exhaustive searches all reduce to subset-sum reachability questions, so
the hot kernels work on bitmask tables: a plain mask over sums in [0, n] and,
when a length cap is in force, a layered mask with one (n+1)-bit lane per
cardinality packed into a single integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

from .core import ZnSequence, is_prime, least_positive_residue, units


@dataclass(frozen=True)
class IndexReport:
    """Index value together with the multiplier achieving the minimum."""

    value: int
    witness_m: int


@dataclass(frozen=True)
class SubseqWitness:
    """Outcome of a subsequence search.

    When found, `subsequence` is a sub-multiset of the input, `multiplier` is
    coprime to n, and the sum of least positive representatives of
    multiplier*subsequence equals `target_sum`.
    """

    found: bool
    subsequence: ZnSequence | None = None
    multiplier: int | None = None
    target_sum: int | None = None


def index_of(seq: ZnSequence) -> IndexReport:
    """Minimum over coprime multipliers of the normalized sum; ties -> smallest m."""
    if len(seq) == 0:
        raise ValueError("index of empty sequence undefined")
    best = None
    best_m = None
    for m in units(seq.n):
        s = seq.normalized_sum(m)
        if best is None or s < best:
            best, best_m = s, m
    return IndexReport(value=best, witness_m=best_m)


def sum_index_set(seq: ZnSequence) -> set[int]:
    """All sums in [1, n] realized by the normalized values of a sub-multiset."""
    n = seq.n
    top = (1 << (n + 1)) - 1
    mask = 1
    for r in seq:
        w = least_positive_residue(r, n)
        mask |= (mask << w) & top
    return {s for s in range(1, n + 1) if (mask >> s) & 1}


def interval_reach(seq: ZnSequence) -> int:
    """Largest t such that some sub-multiset realizes exactly the sums [1, t].

    Sorted-prefix greedy: a prefix realizing [1, t] extends by the next value
    v iff v <= t + 1, and no other sub-multiset can do better (any candidate
    with an element above t+1 would leave the sum t+1 unrealized).  Cross
    checked against the exhaustive oracle in the tests.
    """
    t = 0
    for v in seq.normalized():
        if v > t + 1:
            break
        t += v
        if t >= seq.n:
            return seq.n
    return t


def best_interval_reach(seq: ZnSequence) -> int:
    """Maximum of interval_reach over all unit rescalings; prime modulus only."""
    if not is_prime(seq.n):
        raise ValueError("m(S) defined for prime modulus only")
    return max(interval_reach(seq.scale(r)) for r in units(seq.n))


# ---------------------------------------------------------------------------
# subset-sum kernels


def _mask_hit(weights, n: int, target: int) -> bool:
    """Is some nonempty sub-multiset of weights summing exactly to target (<= n)?"""
    top = (1 << (n + 1)) - 1
    goal = 1 << target
    mask = 1
    for w in weights:
        mask |= (mask << w) & top
        if mask & goal:
            return True
    return False


@lru_cache(maxsize=None)
def _layer_tables(n: int, cap: int) -> tuple[tuple[int, ...], int]:
    """Keep-masks per weight and the goal mask for the layered cardinality DP.

    Layer c occupies bits [c*(n+1), c*(n+1)+n].  Appending a term of weight w
    moves bit (c, s) to (c+1, s+w); the keep-mask for w selects only source
    bits with s <= n-w and c <= cap-1 so nothing bleeds across lanes.
    """
    span = n + 1
    keeps = [0]
    for w in range(1, n + 1):
        lane = (1 << (n - w + 1)) - 1
        keeps.append(sum(lane << (c * span) for c in range(cap)))
    goal = sum(1 << (c * span + n) for c in range(1, cap + 1))
    return tuple(keeps), goal


def _bounded_hit(weights, n: int, cap: int) -> bool:
    """Like _mask_hit with target n, restricted to sub-multisets of size <= cap."""
    span = n + 1
    keeps, goal = _layer_tables(n, cap)
    state = 1
    for w in weights:
        state |= (state & keeps[w]) << (span + w)
        if state & goal:
            return True
    return False


def _scaled_weights(seq: ZnSequence, m: int):
    n = seq.n
    for r, c in seq.counts.items():
        w = (m * r) % n
        w = w if w else n
        for _ in range(c):
            yield w


def _lexmin_witness(seq: ZnSequence, m: int, target: int, cap: int) -> ZnSequence:
    """Reconstruct the lexicographically smallest witness sub-multiset.

    Generates candidate sub-multisets as non-decreasing residue tuples in lex
    order and returns the first one whose scaled normalized sum is target.
    The caller guarantees existence, so the search terminates quickly; a dead
    state set keeps the worst case polynomial.
    """
    n = seq.n
    items = sorted(seq.counts.items())
    weights = [(m * r) % n or n for r, _ in items]
    dead: set[tuple[int, int, int, int]] = set()
    chosen: list[int] = []

    def go(start: int, avail_start: int, need: int, room: int) -> bool:
        if need == 0:
            return True
        if room == 0:
            return False
        for j in range(start, len(items)):
            avail = avail_start if j == start else items[j][1]
            w = weights[j]
            if avail == 0 or w > need:
                continue
            key = (j, avail, need, room)
            if key in dead:
                continue
            chosen.append(items[j][0])
            if go(j, avail - 1, need - w, room - 1):
                return True
            chosen.pop()
            dead.add(key)
        return False

    if not go(0, items[0][1] if items else 0, target, cap):
        raise AssertionError("witness reconstruction failed after a DP hit")
    return ZnSequence(n, chosen)


def find_index_n_subsequence(seq: ZnSequence, len_cap: int | None = None) -> SubseqWitness:
    """Search for a nonempty sub-multiset T and coprime m with sum(|mT|_n) = n.

    Such a T has index exactly n: one coprime image summing to n forces the
    residue sum of T to vanish, so every coprime image sums to a positive
    multiple of n.  Exhausts all coprime multipliers before reporting failure;
    when len_cap is set only sub-multisets of at most that size are admitted.
    Witness tie-break: smallest m, then lexicographically smallest residue
    tuple.
    """
    n = seq.n
    if len_cap is not None and len_cap < 1:
        raise ValueError("len_cap must be positive")
    if len(seq) == 0:
        return SubseqWitness(found=False)
    cap = min(len_cap, len(seq)) if len_cap is not None else len(seq)
    bounded = cap < len(seq)
    for m in units(n):
        weights = _scaled_weights(seq, m)
        hit = _bounded_hit(weights, n, cap) if bounded else _mask_hit(weights, n, n)
        if hit:
            witness = _lexmin_witness(seq, m, n, cap)
            return SubseqWitness(True, witness, m, n)
    return SubseqWitness(found=False)


def lemke_kleitman_check(seq: ZnSequence, d: int) -> SubseqWitness:
    """Search for coprime m and nonempty T with d | sum(|mT|_n) | n.

    Witness tie-break: smallest m, then smallest achievable sum, then the
    lexicographically smallest sub-multiset.
    """
    n = seq.n
    if d < 1 or n % d != 0:
        raise ValueError("d must divide n")
    targets = [s for s in range(1, n + 1) if s % d == 0 and n % s == 0]
    top = (1 << (n + 1)) - 1
    for m in units(n):
        mask = 1
        for w in _scaled_weights(seq, m):
            mask |= (mask << w) & top
        for s in targets:
            if (mask >> s) & 1:
                witness = _lexmin_witness(seq, m, s, len(seq))
                return SubseqWitness(True, witness, m, s)
    return SubseqWitness(found=False)


def short_zero_sum(seq: ZnSequence) -> ZnSequence | None:
    """A nonempty zero-sum sub-multiset of size at most the maximal repetition.

    Guaranteed to exist whenever len(seq) >= n; for shorter inputs None means
    no such sub-multiset exists.  Returns the smallest witness (cardinality
    first, then lexicographic order).
    """
    n = seq.n
    h = seq.repetition
    if h == 0:
        return None
    full = (1 << n) - 1
    layers = [0] * (h + 1)
    layers[0] = 1
    for r in seq:
        for c in range(h - 1, -1, -1):
            mask = layers[c]
            if not mask:
                continue
            rotated = ((mask << r) | (mask >> (n - r))) & full if r else mask
            layers[c + 1] |= rotated
    card = next((c for c in range(1, h + 1) if layers[c] & 1), None)
    if card is None:
        if len(seq) >= n:
            raise AssertionError("a zero-sum sub-multiset of length <= h must exist")
        return None
    return _lexmin_zero_sum(seq, card)


def _lexmin_zero_sum(seq: ZnSequence, card: int) -> ZnSequence:
    n = seq.n
    items = sorted(seq.counts.items())
    dead: set[tuple[int, int, int, int]] = set()
    chosen: list[int] = []

    def go(start: int, avail_start: int, left: int, acc: int) -> bool:
        if left == 0:
            return acc == 0
        for j in range(start, len(items)):
            avail = avail_start if j == start else items[j][1]
            if avail == 0:
                continue
            key = (j, avail, left, acc)
            if key in dead:
                continue
            chosen.append(items[j][0])
            if go(j, avail - 1, left - 1, (acc + items[j][0]) % n):
                return True
            chosen.pop()
            dead.add(key)
        return False

    if not go(0, items[0][1] if items else 0, card, 0):
        raise AssertionError("zero-sum reconstruction failed after a DP hit")
    return ZnSequence(n, chosen)


# ---------------------------------------------------------------------------
# bulk verification of the bounded-subsequence guarantee


@dataclass(frozen=True)
class RepetitionScanReport:
    """Result of scanning every length-n multiset with repetition < 4 or >= n/2."""

    n: int
    multisets_total: int
    canonical_candidates: int
    checked: int
    all_found: bool
    failures: tuple[tuple[int, ...], ...]


def _canonical_under_units(values: tuple[int, ...], n: int, unit_list) -> bool:
    for r in unit_list[1:]:
        if tuple(sorted((r * v) % n for v in values)) < values:
            return False
    return True


def _bounded_find_values(values: tuple[int, ...], n: int, cap: int, unit_list) -> bool:
    for m in unit_list:
        weights = [(m * v) % n or n for v in values]
        if _bounded_hit(weights, n, cap):
            return True
    return False


def _repetition_chunk(args):
    n, chunk = args
    unit_list = units(n)
    canonical = 0
    checked = 0
    failures = []
    for values in chunk:
        if not _canonical_under_units(values, n, unit_list):
            continue
        canonical += 1
        top_mult = max(map(values.count, set(values)))
        if 4 <= top_mult and 2 * top_mult < n:
            continue
        checked += 1
        if not _bounded_find_values(values, n, top_mult, unit_list):
            failures.append(values)
    return canonical, checked, failures


def scan_repetition_guarantee(n: int, parallelism: int = 1) -> RepetitionScanReport:
    """Check every n-element multiset over Z_n with repetition < 4 or >= n/2
    for a subsequence of index n no longer than the repetition.

    Candidates are reduced modulo unit scaling (the verdict and the repetition
    are both invariant under it; the invariance itself is property-tested).
    The scan collects all failures, so sharding order cannot change the report.
    """
    raw = combinations_with_replacement(range(n), n)
    args = ((n, chunk) for chunk in _iter_chunks(raw, 4096))
    results = _map_chunks(_repetition_chunk, args, parallelism)
    canonical = sum(r[0] for r in results)
    checked = sum(r[1] for r in results)
    failures = sorted(f for r in results for f in r[2])
    return RepetitionScanReport(
        n=n,
        multisets_total=math.comb(2 * n - 1, n),
        canonical_candidates=canonical,
        checked=checked,
        all_found=not failures,
        failures=tuple(failures),
    )


def _iter_chunks(iterable, size):
    chunk = []
    for item in iterable:
        chunk.append(item)
        if len(chunk) == size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def _map_chunks(fn, arglist, parallelism: int):
    if parallelism <= 1:
        return [fn(a) for a in arglist]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(fn, arglist))
