"""Half-set geometry mod an odd prime and the four-element index theorem.

For j in [1, p-1] the half-set of j collects the i in [1, p/2] whose product
ij has least positive representative below p/2.  These sets drive the proof
that every minimal zero-sum sequence of four elements in Z_p has index p; the
verifier here re-proves that statement exhaustively for desk-scale primes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import ZnSequence, is_prime
from .engine import _map_chunks


@dataclass(frozen=True)
class HalfSet:
    p: int
    j: int
    members: frozenset[int]


@dataclass(frozen=True)
class HalfSetScan:
    p: int
    min_size: int
    sizes: tuple[tuple[int, int], ...]
    violators: tuple[int, ...]
    equality_js: tuple[int, ...]
    allowed_equality_js: tuple[int, ...]

    @property
    def holds(self) -> bool:
        return not self.violators and set(self.equality_js) <= set(self.allowed_equality_js)


@dataclass(frozen=True)
class FourSumReport:
    p: int
    count: int
    all_index_p: bool
    failures: tuple[tuple[tuple[int, int, int, int], int], ...]


def _half_members(p: int, j: int) -> frozenset[int]:
    half = (p - 1) // 2
    return frozenset(i for i in range(1, half + 1) if (i * j) % p <= half)


def half_set(p: int, j: int) -> HalfSet:
    if not is_prime(p) or p < 3:
        raise ValueError("p must be an odd prime")
    if not 1 <= j <= p - 1:
        raise ValueError("j must lie in [1, p-1]")
    return HalfSet(p=p, j=j, members=_half_members(p, j))


def check_half_set_sizes(p: int) -> bool:
    """The half-sets of j and p-j partition [1, p/2], so their sizes add to (p-1)/2."""
    if not is_prime(p) or p < 3:
        raise ValueError("p must be an odd prime")
    half = (p - 1) // 2
    ground = frozenset(range(1, half + 1))
    for j in range(1, p):
        a = _half_members(p, j)
        b = _half_members(p, p - j)
        if a & b or (a | b) != ground or len(a) + len(b) != half:
            return False
    return True


def scan_half_set_minimum(p: int) -> HalfSetScan:
    """Scan j in [2, p-2] for half-sets of size below (p-1)/6.

    Sizes are compared via 6*size against p-1 so the bound stays exact.
    Equality is expected only at j = p-3 and, when 3 divides p-1, at
    j = (p-1)/3; any strictly smaller set is reported as a violator.
    """
    if not is_prime(p) or p < 19:
        raise ValueError("half-set minimum scan requires a prime p >= 19")
    sizes = tuple((j, len(_half_members(p, j))) for j in range(2, p - 1))
    violators = tuple(j for j, s in sizes if 6 * s < p - 1)
    equality = tuple(j for j, s in sizes if 6 * s == p - 1)
    allowed = (p - 3,) + (((p - 1) // 3,) if (p - 1) % 3 == 0 else ())
    return HalfSetScan(
        p=p,
        min_size=min(s for _, s in sizes),
        sizes=sizes,
        violators=violators,
        equality_js=equality,
        allowed_equality_js=tuple(sorted(allowed)),
    )


# ---------------------------------------------------------------------------
# minimal zero-sum sequences of four elements


def _iter_foursum_values(p: int, a1_lo: int, a1_hi: int):
    """Sorted 4-tuples over [1, p-1] with zero residue sum and no zero-sum
    proper subset, for a1 in [a1_lo, a1_hi).

    Singles are nonzero by construction and each triple sum is congruent to
    minus the complementary term, so minimality reduces to the six pair checks.
    """
    for a1 in range(a1_lo, a1_hi):
        for a2 in range(a1, p):
            if a1 + a2 == p:
                continue
            for a3 in range(a2, p):
                if a1 + a3 == p or a2 + a3 == p:
                    continue
                a4 = -(a1 + a2 + a3) % p
                if a4 < a3:
                    continue
                if a1 + a4 == p or a2 + a4 == p or a3 + a4 == p:
                    continue
                yield (a1, a2, a3, a4)


def enumerate_min_zero_sum_4(p: int):
    """All minimal zero-sum multisets of four elements of Z_p, as sequences.

    Enumeration is by sorted tuples, so each multiset appears exactly once
    and the order is deterministic.
    """
    if not is_prime(p) or p < 5:
        raise ValueError("p must be a prime >= 5")
    for values in _iter_foursum_values(p, 1, p):
        yield ZnSequence(p, values)


def _foursum_index(values, p: int) -> int:
    # zero-sum input: every scaled normalized sum is a positive multiple of p,
    # so the first multiplier reaching exactly p settles the minimum.
    best = None
    for m in range(1, p):
        s = 0
        for a in values:
            s += (m * a) % p
        if s == p:
            return p
        if best is None or s < best:
            best = s
    return best


def _foursum_shard(args):
    p, a1_lo, a1_hi = args
    count = 0
    failures = []
    for values in _iter_foursum_values(p, a1_lo, a1_hi):
        count += 1
        idx = _foursum_index(values, p)
        if idx != p:
            failures.append((values, idx))
    return count, failures


def verify_foursum(p: int, parallelism: int = 1) -> FourSumReport:
    """Compute the index of every minimal zero-sum 4-element sequence in Z_p.

    Shards the outer enumeration loop across workers; the shard results are
    merged in slice order, so the report does not depend on the worker count.
    """
    if not is_prime(p) or p < 5:
        raise ValueError("p must be a prime >= 5")
    shards = max(1, min(parallelism * 4, p - 1))
    step = max(1, (p - 1 + shards - 1) // shards)
    ranges = [(p, lo, min(lo + step, p)) for lo in range(1, p, step)]
    results = _map_chunks(_foursum_shard, ranges, parallelism)
    count = sum(r[0] for r in results)
    failures = tuple(f for r in results for f in r[1])
    return FourSumReport(p=p, count=count, all_index_p=not failures, failures=failures)
