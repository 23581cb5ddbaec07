import random
from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest

from zindex.core import ZnSequence
from zindex.farey import (PartitionGapError, audit_case_inequalities,
                          check_adjacency, eval_cross_class_bound,
                          eval_length_bound, eval_reach_class_bound, farey_set,
                          partition_intervals, partition_sequence, reach_class,
                          residue_subset_hit)


def brute_farey(k):
    """Oracle: direct filter over all fractions with denominator <= k."""
    hits = set()
    for b in range(2, k + 1):
        for a in range(1, b + 1):
            if gcd(a, b) == 1 and Fraction(1, k) <= Fraction(a, b) <= Fraction(k - 1, k):
                hits.add(Fraction(a, b))
    return tuple(sorted(hits))


def test_farey_examples():
    assert farey_set(2).fractions == (Fraction(1, 2),)
    assert farey_set(2).f == 1
    fs = farey_set(4)
    assert fs.fractions == tuple(Fraction(*t) for t in [(1, 4), (1, 3), (1, 2), (2, 3), (3, 4)])
    assert fs.f == 5
    fs = farey_set(5)
    expected = [(1, 5), (1, 4), (1, 3), (2, 5), (1, 2), (3, 5), (2, 3), (3, 4), (4, 5)]
    assert fs.fractions == tuple(Fraction(*t) for t in expected)
    assert fs.f == 9
    with pytest.raises(ValueError):
        farey_set(1)


def test_farey_matches_brute():
    for k in range(2, 30):
        fs = farey_set(k)
        assert fs.fractions == brute_farey(k)
        assert fs.fractions[0] == Fraction(1, k)
        assert fs.fractions[-1] == Fraction(k - 1, k)


def test_adjacency():
    evaluations = check_adjacency(farey_set(4))
    by_pair = {(e.parameters["a"], e.parameters["b"], e.parameters["c"],
                e.parameters["d"], e.name): e for e in evaluations}
    e = by_pair[(1, 3, 1, 2, "adjacent-denominators")]
    assert (e.lhs, e.rhs, e.holds) == (5, 5, True)
    e = by_pair[(1, 2, 2, 3, "adjacent-determinant")]
    assert (e.lhs, e.rhs, e.holds) == (1, 1, True)
    assert all(e.holds for e in evaluations)
    assert check_adjacency(farey_set(2)) == []


def test_adjacency_all_k():
    for k in range(2, 40):
        assert all(e.holds for e in check_adjacency(farey_set(k)))


# -- partition ----------------------------------------------------------------


def test_partition_intervals_23_5():
    got = {j: (lo, hi) for j, lo, hi in partition_intervals(23, 5)}
    assert got[1] == (Fraction(1), Fraction(5))
    assert got[2] == (Fraction(7), Fraction(11, 2))          # empty as an integer range
    assert got[3] == (Fraction(6), Fraction(7))
    assert got[7] == (Fraction(12), Fraction(14))
    assert got[11] == (Fraction(35, 2), Fraction(37, 2))
    assert len(got) == 2 * farey_set(4).f + 1


def test_partition_placement():
    result = partition_sequence(ZnSequence(23, [3, 7, 12, 17]), 5)
    placed = {part.index: part.members.values() for part in result.parts if len(part.members)}
    assert placed == {1: (3,), 3: (7,), 7: (12,), 9: (17,)}
    assert result.k == 4


def test_partition_gap():
    with pytest.raises(PartitionGapError) as err:
        partition_sequence(ZnSequence(23, [19]), 5)
    assert err.value.value == 19
    assert "term outside partition: 19" in str(err.value)
    # the value just above the first block boundary is covered here: 6 lands in
    # the first scaled interval [24/4, 28/4]
    result = partition_sequence(ZnSequence(23, [6]), 5)
    assert {p.index for p in result.parts if len(p.members)} == {3}


def test_partition_low_values_single_block():
    result = partition_sequence(ZnSequence(11, [1, 2, 3, 4, 5]), 5)
    assert result.parts[0].members == ZnSequence(11, [1, 2, 3, 4, 5])
    assert sum(len(p.members) for p in result.parts[1:]) == 0


def test_partition_disjoint_union():
    rng = random.Random(31)
    for p, reach in [(23, 5), (31, 7), (41, 5), (11, 5)]:
        covered = [v for j, lo, hi in partition_intervals(p, reach)
                   for v in range(1, p) if lo <= v <= hi]
        assert len(covered) == len(set(covered))  # pairwise disjoint
        values = [rng.choice(covered) for _ in range(12)]
        seq = ZnSequence(p, values)
        result = partition_sequence(seq, reach)
        merged: dict[int, int] = {}
        for part in result.parts:
            for r, c in part.members.counts.items():
                merged[r] = merged.get(r, 0) + c
        assert ZnSequence(p, counts=merged) == seq


def test_partition_preconditions():
    with pytest.raises(ValueError):
        partition_sequence(ZnSequence(10, [1]), 3)   # composite modulus
    with pytest.raises(ValueError):
        partition_sequence(ZnSequence(23, [1]), 22)  # reach out of range
    with pytest.raises(ValueError):
        partition_sequence(ZnSequence(23, [1]), 15)  # floor(p/reach) < 2


# -- reach classes --------------------------------------------------------------


def test_reach_class_examples():
    assert reach_class(ZnSequence(11, [6, 7, 8]), 2, 3) == ZnSequence(11, [6, 7])
    assert reach_class(ZnSequence(11, [4]), 3, 3) == ZnSequence(11, [4])
    assert reach_class(ZnSequence(11, [5]), 2, 3) == ZnSequence(11, [])
    with pytest.raises(ValueError):
        reach_class(ZnSequence(11, [1]), 4, 3)  # i above floor(p/reach)
    with pytest.raises(ValueError):
        reach_class(ZnSequence(12, [1]), 2, 3)  # composite modulus


def test_reach_class_brute():
    rng = random.Random(41)
    for _ in range(30):
        p = rng.choice([11, 13, 17, 19])
        reach = rng.randrange(2, 6)
        i = rng.randrange(2, p // reach + 1)
        values = [rng.randrange(1, p) for _ in range(8)]
        got = reach_class(ZnSequence(p, values), i, reach)
        expected = [v for v in values
                    if 1 <= (i * v) % p <= reach and gcd((i * v) % p, i) == 1]
        assert got == ZnSequence(p, expected)


# -- residue subset hit ----------------------------------------------------------


def brute_hitting_subsets(values, n, target):
    hits = []
    for size in range(1, len(values) + 1):
        for indices in combinations(range(1, len(values) + 1), size):
            if sum(values[i - 1] for i in indices) % n == target % n:
                hits.append(indices)
    return hits


def test_subset_hit_examples():
    assert residue_subset_hit([1, 1], 2, 1) == (1,)
    got = residue_subset_hit([1, 3, 3, 1], 4, 2)
    assert got == (2, 3)
    got = residue_subset_hit([1, 3, 3, 1], 4, 0)
    assert got == (1, 2)


def test_subset_hit_errors():
    with pytest.raises(ValueError):
        residue_subset_hit([1, 2, 3, 1], 4, 1)   # 2 not coprime to 4
    with pytest.raises(ValueError):
        residue_subset_hit([1, 1, 1], 4, 1)      # wrong length


def test_subset_hit_random():
    rng = random.Random(59)
    for n in range(2, 9):
        for _ in range(40):
            values = [rng.choice([x for x in range(1, 2 * n) if gcd(x, n) == 1])
                      for _ in range(n)]
            target = rng.randrange(n)
            got = residue_subset_hit(values, n, target)
            assert got
            assert sum(values[i - 1] for i in got) % n == target % n
            if target % n != 0:
                assert max(got) <= n - 1
            assert tuple(got) in set(brute_hitting_subsets(values, n, target))


# -- bound evaluators --------------------------------------------------------------


def test_reach_class_bound_formulas():
    for p, reach in [(101, 40), (24329, 8200), (997, 300)]:
        e = eval_reach_class_bound(p, reach, 2, 0, 6)
        assert e.rhs == p - 2 * reach + 8
    e = eval_reach_class_bound(1009, 250, 3, 1, 6)
    assert e.rhs == Fraction(1009 - 3 * 250 + 20, 2)
    e = eval_reach_class_bound(1009, 140, 2, 1, 6)
    assert e.rhs == Fraction(1009 - 2 * 140 + 28, 3)
    e = eval_reach_class_bound(1009, 100, 2, 2, 0)
    assert e.rhs == Fraction(1009 + 18, 5)
    assert e.lhs is None and e.holds is None


def test_cross_class_bound_formula():
    p, reach = 24329, 4055
    e = eval_cross_class_bound(p, reach, 2, 3, 12)
    assert e.rhs == Fraction(p - 3 * reach + 55, 12)
    assert e.parameters["window_violations"] == []


def test_cross_class_bound_window():
    with pytest.raises(ValueError):
        eval_cross_class_bound(101, 26, 2, 3, 12)  # reach above dp/ell - t(u-1)
    e = eval_cross_class_bound(101, 26, 2, 3, 12, strict=False)
    assert e.parameters["window_violations"]


def test_reach_class_bound_measured():
    p, reach = 23, 5
    seq = ZnSequence(p, list(range(1, 18)))
    e = eval_reach_class_bound(p, reach, 2, 0, 6, seq=seq)
    assert e.lhs == len(reach_class(seq, 2, reach))
    assert e.holds == (e.lhs <= e.rhs)


def test_length_bound():
    # double-sum constants first: k=3 -> 5, k=2 -> 1
    p, reach = 23, 5
    seq = ZnSequence(p, [1] * 23)
    e = eval_length_bound(p, reach, seq)
    assert e.parameters["phi_sum"] == sum({2: 1, 3: 4, 4: 6}.values())
    assert e.lhs == 23
    assert e.parameters["k_window_ok"]
    e = eval_length_bound(11, 5, ZnSequence(11, [1] * 11))
    assert e.parameters["phi_sum"] == 1
    with pytest.raises(ValueError):
        eval_length_bound(23, 3, ZnSequence(23, [1]))


# -- the eight-case audit ------------------------------------------------------------


def first_primes_above(bound, count):
    out, x = [], bound + 1
    while len(out) < count:
        if all(x % d for d in range(2, int(x ** 0.5) + 1)):
            out.append(x)
        x += 1
    return out


def test_audit_holds_just_above_threshold():
    p = first_primes_above(24318, 1)[0]
    evaluations = audit_case_inequalities(p)
    assert len(evaluations) == 8
    assert all(e.holds for e in evaluations)
    for e in evaluations:
        assert e.parameters["violations"] == []
        assert e.parameters["window_violations"] == 0
        assert not e.parameters["below_threshold"]
        assert e.parameters["min_slack"] > 0
    # case 1 simplifies to p - reach + 9 < p, worst at the smallest reach
    case1 = evaluations[0]
    assert case1.lhs == p - case1.parameters["m_lo"] + 9


def test_audit_below_threshold_flag():
    evaluations = audit_case_inequalities(101)
    assert all(e.parameters["below_threshold"] for e in evaluations)
    assert len(evaluations) == 8
    with pytest.raises(ValueError):
        audit_case_inequalities(100)


def test_audit_alternate_threshold():
    p = first_primes_above(24138, 1)[0]
    evaluations = audit_case_inequalities(p, threshold=24138)
    assert not evaluations[0].parameters["below_threshold"]


def test_audit_stated_constants_exceed_phi_sums_only_in_last_cases():
    evaluations = audit_case_inequalities(first_primes_above(24318, 1)[0])
    for e in evaluations[:6]:
        assert e.parameters["stated_constant"] == e.parameters["phi_constant"]
    for e in evaluations[6:]:
        assert e.parameters["stated_constant"] == e.parameters["phi_constant"] + 10
