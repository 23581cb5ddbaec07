import random
from itertools import combinations_with_replacement
from math import gcd

import pytest

from zindex.core import (SequenceParseError, ZnSequence, is_prime,
                         least_positive_residue, units)


def brute_proper_subsets_zero_sum(values, n):
    """Oracle: does any proper nonempty sub-multiset sum to 0 mod n?"""
    vals = list(values)
    for mask in range(1, (1 << len(vals)) - 1):
        picked = [vals[i] for i in range(len(vals)) if mask >> i & 1]
        if picked and sum(picked) % n == 0:
            return True
    return False


def test_least_positive_residue():
    assert least_positive_residue(3, 7) == 3
    assert least_positive_residue(0, 6) == 6
    assert least_positive_residue(43, 22) == 21
    assert least_positive_residue(-1, 5) == 4
    with pytest.raises(ValueError):
        least_positive_residue(1, 1)


def test_least_positive_residue_range_and_congruence():
    for n in range(2, 15):
        for x in range(-2 * n, 2 * n):
            v = least_positive_residue(x, n)
            assert 1 <= v <= n
            assert (v - x) % n == 0


def test_units():
    assert units(6) == [1, 5]
    assert units(7) == [1, 2, 3, 4, 5, 6]
    # derived by a direct gcd scan
    assert units(22) == [m for m in range(1, 22) if gcd(m, 22) == 1]
    assert units(22) == [1, 3, 5, 7, 9, 13, 15, 17, 19, 21]


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}
    for n in range(30):
        assert is_prime(n) == (n in primes)


def test_normalized():
    assert ZnSequence(5, [1, 4]).normalized() == (1, 4)
    assert ZnSequence(4, [0, 0]).normalized() == (4, 4)
    fam = ZnSequence.from_literal("1^8 11 12^10 13^3 mod 22")
    assert fam.normalized() == (1,) * 8 + (11,) + (12,) * 10 + (13,) * 3


def test_normalized_sum():
    assert ZnSequence(5, [1, 4]).normalized_sum() == 5
    assert ZnSequence(9, []).normalized_sum() == 0
    assert ZnSequence(6, [2, 2, 2]).normalized_sum() == 6


def test_scale():
    s = ZnSequence(5, [1, 4])
    assert s.scale(1) == s
    assert s.scale(2) == ZnSequence(5, [2, 3])
    assert ZnSequence(7, [1, 1, 2]).scale(3) == ZnSequence(7, [3, 3, 6])


def test_repetition():
    assert ZnSequence.from_literal("1^8 11 12^10 13^3 mod 22").repetition == 10
    assert ZnSequence(7, [1, 2, 3]).repetition == 1
    assert ZnSequence(5, []).repetition == 0


def test_zero_sum_and_minimality():
    assert ZnSequence(5, [1, 4]).is_minimal_zero_sum()
    assert ZnSequence(7, [1, 1, 2, 3]).is_minimal_zero_sum()
    s = ZnSequence(6, [2, 2, 2])
    assert s.is_zero_sum() and s.is_minimal_zero_sum()
    assert not ZnSequence(5, [1, 4, 2, 3]).is_minimal_zero_sum()
    assert not ZnSequence(5, [1, 1]).is_zero_sum()
    with pytest.raises(ValueError):
        ZnSequence(5, []).is_minimal_zero_sum()


def test_minimality_matches_brute_oracle():
    for n in range(2, 9):
        for length in range(1, 5):
            for values in combinations_with_replacement(range(n), length):
                seq = ZnSequence(n, values)
                expected = (sum(values) % n == 0
                            and not brute_proper_subsets_zero_sum(values, n))
                assert seq.is_minimal_zero_sum() == expected, (n, values)


def test_scale_algebra():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randrange(2, 20)
        seq = ZnSequence(n, [rng.randrange(n) for _ in range(rng.randrange(8))])
        m1, m2 = rng.randrange(1, n), rng.randrange(1, n)
        assert seq.scale(1) == seq
        assert seq.scale(m1).scale(m2) == seq.scale((m1 * m2) % n)
        assert seq.normalized_sum() % n == sum(seq) % n
        for r in units(n):
            assert seq.scale(r).repetition == seq.repetition


def test_literal_roundtrip():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randrange(2, 30)
        seq = ZnSequence(n, [rng.randrange(n) for _ in range(rng.randrange(10))], )
        if len(seq) == 0:
            continue
        assert ZnSequence.from_literal(seq.to_literal()) == seq


def test_literal_reduces_mod_n():
    assert ZnSequence.from_literal("43 mod 22") == ZnSequence(22, [21])
    assert ZnSequence.from_literal("-1 mod 5") == ZnSequence(5, [4])


def test_literal_errors():
    with pytest.raises(SequenceParseError):
        ZnSequence.from_literal("1 2 3")
    with pytest.raises(SequenceParseError):
        ZnSequence.from_literal("mod 5")
    err = None
    try:
        ZnSequence.from_literal("1 2^x mod 7")
    except SequenceParseError as exc:
        err = exc
    assert err is not None and err.position == 2
    with pytest.raises(SequenceParseError):
        ZnSequence.from_literal("1^0 mod 7")
    with pytest.raises(SequenceParseError):
        ZnSequence.from_literal("1 mod 1")


def test_sequence_is_immutable_and_hashable():
    seq = ZnSequence(5, [1, 4])
    with pytest.raises(AttributeError):
        seq.n = 7
    assert hash(seq) == hash(ZnSequence(5, [4, 1]))
    assert seq.counts == {1: 1, 4: 1}
    assert seq.restrict(1, 3) == ZnSequence(5, [1])
    assert seq.contains(ZnSequence(5, [4]))
    assert not seq.contains(ZnSequence(5, [4, 4]))
