"""The counterexample family refuting the Lemke-Kleitman conjecture.

For n = 4k+2 with k >= 5 the multiset

    1^(n/2-3) * (n/2) * (n/2+1)^(n/2-1) * (n/2+2)^(n/4-2)   over Z_n

has length n + floor(n/4) - 5 and repetition n/2 - 1 yet contains no
subsequence of index n.  Verification here is an exhaustive subset-sum scan
over every coprime multiplier, which is strictly stronger than a case
analysis: it certifies the absence of any witness pair (m, T).
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import ZnSequence, units
from .engine import find_index_n_subsequence, lemke_kleitman_check


@dataclass(frozen=True)
class CounterexampleSpec:
    k: int
    n: int
    sequence: ZnSequence
    expected_length: int
    expected_repetition: int


@dataclass(frozen=True)
class FamilyVerification:
    n: int
    sequence: ZnSequence
    no_index_subseq: bool
    multipliers_checked: int
    divisor_check_found: bool
    forced: bool


def _validate_family_n(n: int, force: bool) -> int:
    if n % 4 != 2 or n < (10 if force else 22):
        raise ValueError("family requires n=4k+2, k>=5")
    return (n - 2) // 4


def build_counterexample(n: int, force: bool = False) -> CounterexampleSpec:
    """Construct the family member for n = 4k+2.

    k >= 5 is the proven range; force admits n in {10, 14, 18} so the smaller
    cases can be probed without any claim attached to the result.
    """
    k = _validate_family_n(n, force)
    half = n // 2
    counts = {1: half - 3, half: 1, half + 1: half - 1, half + 2: n // 4 - 2}
    seq = ZnSequence(n, counts=counts)
    return CounterexampleSpec(
        k=k,
        n=n,
        sequence=seq,
        expected_length=n + n // 4 - 5,
        expected_repetition=half - 1,
    )


def verify_family(n: int, force: bool = False) -> FamilyVerification:
    """Exhaustively verify that the family member has no index-n subsequence.

    Also re-runs the divisor-chain search at d = n, which must come up empty
    for the same reason.  The number of multipliers checked equals phi(n).
    """
    spec = build_counterexample(n, force=force)
    witness = find_index_n_subsequence(spec.sequence)
    divisor_witness = lemke_kleitman_check(spec.sequence, n)
    return FamilyVerification(
        n=n,
        sequence=spec.sequence,
        no_index_subseq=not witness.found,
        multipliers_checked=len(units(n)),
        divisor_check_found=divisor_witness.found,
        forced=n < 22,
    )


def t_lower_bound(n: int) -> int:
    """Family-derived lower bound n + floor(n/4) - 4 on the forcing length."""
    _validate_family_n(n, force=False)
    return n + n // 4 - 4
