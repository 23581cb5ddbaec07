"""Farey-interval machinery: fraction sets, the induced sequence partition,
scaled reach classes, and exact-rational evaluators for the inequality chain
behind the prime repetition threshold.

Every interval endpoint and every bound is kept as an exact Fraction; no
floating point is used anywhere, since off-by-one at an endpoint would change
a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd

from .core import ZnSequence, is_prime, least_positive_residue


@dataclass(frozen=True)
class FareySet:
    """All irreducible fractions in [1/k, (k-1)/k] with denominator in [2, k]."""

    k: int
    fractions: tuple[Fraction, ...]

    @property
    def f(self) -> int:
        return len(self.fractions)


@dataclass(frozen=True)
class BoundEvaluation:
    """One evaluated inequality: holds iff `lhs <relation> rhs` exactly.

    lhs may be None when the evaluator was asked only for the bound value
    (no concrete sequence to measure); holds is then None as well.
    """

    name: str
    lhs: Fraction | int | None
    rhs: Fraction | int
    holds: bool | None
    relation: str = "<="
    parameters: dict = field(default_factory=dict)


def _compare(lhs, rhs, relation: str) -> bool:
    if relation == "<=":
        return lhs <= rhs
    if relation == "<":
        return lhs < rhs
    if relation == "==":
        return lhs == rhs
    raise ValueError(f"unknown relation {relation!r}")


def _evaluation(name, lhs, rhs, relation="<=", **parameters) -> BoundEvaluation:
    holds = None if lhs is None else _compare(lhs, rhs, relation)
    return BoundEvaluation(name, lhs, rhs, holds, relation, parameters)


def farey_set(k: int) -> FareySet:
    if k < 2:
        raise ValueError("k must be at least 2")
    lo, hi = Fraction(1, k), Fraction(k - 1, k)
    found = {Fraction(a, b)
             for b in range(2, k + 1)
             for a in range(1, b)
             if gcd(a, b) == 1 and lo <= Fraction(a, b) <= hi}
    return FareySet(k=k, fractions=tuple(sorted(found)))


def check_adjacency(fs: FareySet) -> list[BoundEvaluation]:
    """For every adjacent pair a/b < c/d: b+d >= k+1 and bc - ad = 1."""
    out = []
    for left, right in zip(fs.fractions, fs.fractions[1:]):
        a, b = left.numerator, left.denominator
        c, d = right.numerator, right.denominator
        params = dict(a=a, b=b, c=c, d=d, k=fs.k)
        out.append(_evaluation("adjacent-denominators", fs.k + 1, b + d, **params))
        out.append(_evaluation("adjacent-determinant", b * c - a * d, 1, "==", **params))
    return out


# ---------------------------------------------------------------------------
# the partition induced by a Farey set


class PartitionGapError(ValueError):
    """A term's representative falls in no partition interval.

    This is a meaningful verdict about the input, not an internal failure:
    the partition only covers the values that can occur in a sequence with
    no index-p subsequence and the given reach.
    """

    def __init__(self, value: int):
        super().__init__(f"term outside partition: {value}")
        self.value = value


@dataclass(frozen=True)
class PartitionPart:
    index: int
    lo: Fraction
    hi: Fraction
    members: ZnSequence


@dataclass(frozen=True)
class PartitionResult:
    p: int
    reach: int
    k: int
    parts: tuple[PartitionPart, ...]


def partition_intervals(p: int, reach: int) -> list[tuple[int, Fraction, Fraction]]:
    """The 2f+1 rational intervals that tile the admissible values.

    Part 1 is [1, M]; part 2 sits between M+2 and the first scaled interval;
    odd part 2i+1 is the interval whose b_i-fold multiples have small
    representatives; even part 2i+2 spans the gap to the next fraction.
    Endpoints are exact rationals, membership tests are on integers.
    """
    k = p // reach
    fs = farey_set(k)
    f = fs.f
    first = fs.fractions[0]
    intervals = [(1, Fraction(1), Fraction(reach))]
    intervals.append((2, Fraction(reach + 2),
                      Fraction(first.numerator * p - 1, first.denominator)))
    for i in range(1, f + 1):
        a, b = fs.fractions[i - 1].numerator, fs.fractions[i - 1].denominator
        intervals.append((2 * i + 1, Fraction(a * p + 1, b), Fraction(a * p + reach, b)))
        if i <= f - 1:
            a2, b2 = fs.fractions[i].numerator, fs.fractions[i].denominator
            intervals.append((2 * i + 2, Fraction(a * p + reach + 1, b),
                              Fraction(a2 * p - 1, b2)))
    return intervals


def partition_sequence(seq: ZnSequence, reach: int) -> PartitionResult:
    """Assign every term of seq to the unique interval containing its
    least positive representative.

    Raises PartitionGapError when some term is covered by no interval (for
    example any term whose representative exceeds the last scaled interval).
    """
    p = seq.n
    if not is_prime(p):
        raise ValueError("partition requires a prime modulus")
    if not 1 <= reach <= p - 2:
        raise ValueError("reach must lie in [1, p-2]")
    k = p // reach
    if k < 2:
        raise ValueError("reach too large: floor(p/reach) must be at least 2")
    intervals = partition_intervals(p, reach)
    assigned: dict[int, dict[int, int]] = {j: {} for j, _, _ in intervals}
    for r, c in seq.counts.items():
        v = least_positive_residue(r, p)
        homes = [j for j, lo, hi in intervals if lo <= v <= hi]
        if not homes:
            raise PartitionGapError(v)
        if len(homes) > 1:
            raise AssertionError(f"intervals overlap at {v}: parts {homes}")
        assigned[homes[0]][r] = c
    parts = tuple(PartitionPart(j, lo, hi, ZnSequence(p, counts=assigned[j]))
                  for j, lo, hi in intervals)
    return PartitionResult(p=p, reach=reach, k=k, parts=parts)


def reach_class(seq: ZnSequence, i: int, reach: int) -> ZnSequence:
    """Terms x whose i-fold multiple has representative in [1, reach] coprime to i."""
    p = seq.n
    if not is_prime(p):
        raise ValueError("reach classes require a prime modulus")
    if not 2 <= i <= p // reach:
        raise ValueError("i must lie in [2, floor(p/reach)]")
    acc: dict[int, int] = {}
    for r, c in seq.counts.items():
        w = least_positive_residue(i * r, p)
        if w <= reach and gcd(w, i) == 1:
            acc[r] = c
    return ZnSequence(p, counts=acc)


# ---------------------------------------------------------------------------
# subset hitting a target residue


def residue_subset_hit(values, n: int, target: int) -> tuple[int, ...]:
    """A nonempty index set I with sum over I of values[i-1] = target mod n.

    Requires exactly n values, each coprime to n.  When target is nonzero
    mod n the returned indices avoid the last position.  Indices are 1-based;
    the choice is the first hit of a left-to-right reachability sweep, so the
    output is deterministic.
    """
    vals = list(values)
    if len(vals) != n or n < 2:
        raise ValueError("hypothesis violated")
    if any(gcd(v, n) != 1 for v in vals):
        raise ValueError("hypothesis violated")
    limit = n if target % n == 0 else n - 1
    goal = target % n
    reached: dict[int, tuple[int, ...]] = {}
    for idx in range(limit):
        a = vals[idx] % n
        updates = {}
        if a not in reached:
            updates[a] = (idx + 1,)
        for r, subset in reached.items():
            r2 = (r + a) % n
            if r2 not in reached and r2 not in updates:
                updates[r2] = subset + (idx + 1,)
        reached.update(updates)
        if goal in reached:
            return reached[goal]
    raise AssertionError("no hitting subset found; the hypothesis guarantees one")


# ---------------------------------------------------------------------------
# bound evaluators


def _phi(i: int) -> int:
    return sum(1 for x in range(1, i + 1) if gcd(x, i) == 1)


def _coprime_ladder(t: int, count: int) -> list[int]:
    out, x = [], 1
    while len(out) < count:
        if gcd(x, t) == 1:
            out.append(x)
        x += 1
    return out


def eval_length_bound(p: int, reach: int, seq: ZnSequence) -> BoundEvaluation:
    """len(seq) <= M + sum over i in [2,k] of phi(i)(i-1) + sum of class sizes.

    The conclusion is only a theorem for sequences with no index-p
    subsequence; the evaluator just measures both sides.  k is taken as
    floor(p/M) and additionally checked against the admissible window
    max((p-M-2)/M, (p-M)/(M+1)) <= k <= (p+1)/M; a disagreement is reported
    in the parameters rather than silently resolved.
    """
    if not is_prime(p) or p != seq.n:
        raise ValueError("p must be prime and equal to the sequence modulus")
    if not 4 <= reach <= Fraction(p - 3, 2):
        raise ValueError("hypothesis window violated: need 4 <= reach <= (p-3)/2")
    k = p // reach
    window_lo = max(Fraction(p - reach - 2, reach), Fraction(p - reach, reach + 1))
    window_hi = Fraction(p + 1, reach)
    k_window_ok = window_lo <= k <= window_hi
    phi_sum = sum(_phi(i) * (i - 1) for i in range(2, k + 1))
    class_sizes = {i: len(reach_class(seq, i, reach)) for i in range(2, k + 1)}
    rhs = reach + phi_sum + sum(class_sizes.values())
    return _evaluation(
        "length-bound", len(seq), rhs,
        p=p, reach=reach, k=k, phi_sum=phi_sum, class_sizes=class_sizes,
        k_window_ok=k_window_ok,
    )


def _cross_rhs(p: int, reach: int, ell: int, u: int) -> Fraction:
    return Fraction(p - ell * reach - 2 * ell + 1, u) + 2 * ell - 1


def _cross_window_violations(p, reach, t, ell, u) -> list[str]:
    bad = []
    k = p // reach
    if not 2 <= t < ell < k:
        bad.append(f"need 2 <= t < ell < k=floor(p/reach); got t={t} ell={ell} k={k}")
    d = gcd(t, ell)
    if d >= t:
        bad.append(f"need gcd(t, ell) < t; got gcd={d}")
    if not 2 <= u <= reach:
        bad.append(f"need u in [2, reach]; got u={u}")
    lo = Fraction((t - d) * p - ell, t * ell)
    hi = Fraction(d * p, ell) - t * (u - 1)
    if not lo <= reach <= hi:
        bad.append(f"need ((t-d)p-ell)/(t*ell) <= reach <= dp/ell - t(u-1); window [{lo}, {hi}]")
    return bad


def eval_cross_class_bound(p: int, reach: int, t: int, ell: int, u: int,
                           seq: ZnSequence | None = None,
                           strict: bool = True) -> BoundEvaluation:
    """Either the t-class is empty or the ell-class has size at most
    (p - ell*M - 2*ell + 1)/u + 2*ell - 1.

    Without a sequence only the bound value and the hypothesis-window verdict
    are produced.  With one, lhs is the measured ell-class size and `holds`
    honours the disjunction (an empty t-class satisfies the statement
    outright, recorded in the parameters).
    """
    violations = _cross_window_violations(p, reach, t, ell, u)
    if violations and strict:
        raise ValueError("; ".join(violations))
    rhs = _cross_rhs(p, reach, ell, u)
    params = dict(p=p, reach=reach, t=t, ell=ell, u=u, window_violations=violations)
    if seq is None:
        return _evaluation("cross-class-bound", None, rhs, **params)
    t_size = len(reach_class(seq, t, reach))
    lhs = len(reach_class(seq, ell, reach))
    ev = _evaluation("cross-class-bound", lhs, rhs, t_class_size=t_size, **params)
    if t_size == 0 and not ev.holds:
        ev = BoundEvaluation(ev.name, lhs, rhs, True, ev.relation,
                             {**ev.parameters, "holds_via_empty_t_class": True})
    return ev


def _reach_rhs(p: int, reach: int, t: int, u: int, w: int) -> Fraction:
    ladder = _coprime_ladder(t, u + 1)
    s = sum(ladder[1:u]) if u >= 2 else 0
    delta = 0 if u == 0 else 1
    return (Fraction(p - (t + s) * reach - 2 * t + 2, ladder[u])
            + delta * (u - 1) * reach + 2 * t + w)


def _reach_window_violations(p, reach, t, u, w) -> list[str]:
    ladder = _coprime_ladder(t, u + 1)
    s = sum(ladder[1:u]) if u >= 2 else 0
    hi = Fraction(p - 2 * t + w * ladder[u] + 2, t + s)
    if reach > hi:
        return [f"need reach <= (p - 2t + w*a_(u+1) + 2)/(t + sum a_i) = {hi}"]
    return []


def eval_reach_class_bound(p: int, reach: int, t: int, u: int, w: int,
                           seq: ZnSequence | None = None,
                           strict: bool = True) -> BoundEvaluation:
    """Size bound for the t-class via the ladder 1 = a_1 < a_2 < ... of
    integers coprime to t:

        |class_t| <= (p - (t + a_2 + ... + a_u)M - 2t + 2)/a_(u+1)
                     + delta_u (u-1) M + 2t + w
    """
    violations = _reach_window_violations(p, reach, t, u, w)
    if violations and strict:
        raise ValueError("; ".join(violations))
    rhs = _reach_rhs(p, reach, t, u, w)
    params = dict(p=p, reach=reach, t=t, u=u, w=w, window_violations=violations)
    if seq is None:
        return _evaluation("reach-class-bound", None, rhs, **params)
    lhs = len(reach_class(seq, t, reach))
    return _evaluation("reach-class-bound", lhs, rhs, **params)


# ---------------------------------------------------------------------------
# the eight-case audit

DEFAULT_THRESHOLD = 24318
# The source text opens the relevant section with a slightly smaller prime
# threshold; both are accepted, the audit records which one was used.
ALTERNATE_THRESHOLD = 24138

# Per case: k, reach range (lo, hi) as (offset, denominator) meaning
# (p + offset)/denominator, additive constant, per-class (u, w) parameters,
# and the cross-class pairings (t, targets, u).  The additive constants are
# the stated ones; the honest phi-weighted sums (which differ in the last
# two cases) are recomputed and reported alongside.
_CASES = (
    ("case1", 2, (-2, 3), (-3, 2), 1, {2: (0, 6)}, ()),
    ("case2", 3, (3, 4), (-4, 3), 5, {2: (1, 6), 3: (1, 6)}, ()),
    ("case3", 4, (-2, 5), (1, 4), 11, {2: (1, 6), 3: (1, 6), 4: (1, 6)}, ()),
    ("case4", 5, (-1, 6), (-3, 5), 27,
     {2: (1, 6), 3: (1, 6), 4: (1, 6), 5: (1, 6)}, ((2, (3,), 12),)),
    ("case5", 6, (-5, 7), (-5, 6), 37,
     {2: (2, 0), 3: (2, 0), 4: (1, 6), 5: (1, 6), 6: (1, 6)}, ()),
    ("case6", 7, (-2, 8), (-3, 7), 73,
     {2: (2, 0), 3: (2, 0), 4: (1, 6), 5: (1, 6), 6: (1, 6), 7: (1, 6)},
     ((2, (5,), 10),)),
    ("case7", 8, (-2, 9), (-3, 8), 111,
     {2: (2, 0), 3: (2, 0), 4: (2, 0), 5: (2, 0), 6: (1, 6), 7: (1, 6), 8: (1, 6)},
     ((2, (5, 7), 20), (4, (6,), 10))),
    ("case8", 9, (-2, 10), (-4, 9), 159,
     {2: (2, 0), 3: (2, 0), 4: (2, 0), 5: (2, 0), 6: (1, 6), 7: (1, 6),
      8: (1, 6), 9: (1, 6)},
     ((2, (5, 7), 10), (3, (8,), 8))),
)


def audit_case_inequalities(p: int, threshold: int = DEFAULT_THRESHOLD) -> list[BoundEvaluation]:
    """Audit the eight reach-range cases: for every integer M in each case's
    range, the combined class bounds must sum to strictly less than p.

    Pairings are combined as max(empty-t branch, populated-t branch) per M in
    exact rationals.  Violations and hypothesis-window failures are reported
    as data, never raised; primes at or below the threshold are flagged.
    """
    if not is_prime(p):
        raise ValueError("p must be prime")
    below = p <= threshold
    out = []
    for name, k, lo_spec, hi_spec, const, singles, pairs in _CASES:
        m_lo = ceil(Fraction(p + lo_spec[0], lo_spec[1]))
        m_hi = floor(Fraction(p + hi_spec[0], hi_spec[1]))
        phi_const = sum(_phi(i) * (i - 1) for i in range(2, k + 1))
        worst = None
        worst_at = None
        best = None
        violations = []
        window_violations = 0
        for m in range(m_lo, m_hi + 1):
            bounds = {t: _reach_rhs(p, m, t, u, w) for t, (u, w) in singles.items()}
            for t, (u, w) in singles.items():
                window_violations += len(_reach_window_violations(p, m, t, u, w))
            covered: set[int] = set()
            total = Fraction(m + const)
            for t, targets, u in pairs:
                for ell in targets:
                    window_violations += len(_cross_window_violations(p, m, t, ell, u))
                empty_branch = sum((bounds[ell] for ell in targets), Fraction(0))
                full_branch = bounds[t] + sum((_cross_rhs(p, m, ell, u) for ell in targets),
                                              Fraction(0))
                total += max(empty_branch, full_branch)
                covered.update((t, *targets))
            for t in sorted(singles):
                if t not in covered:
                    total += bounds[t]
            slack = p - total
            if worst is None or total > worst:
                worst, worst_at = total, m
            if best is None or slack < best:
                best = slack
            if slack <= 0:
                violations.append(m)
        params = dict(
            p=p, k=k, m_lo=m_lo, m_hi=m_hi, m_count=max(0, m_hi - m_lo + 1),
            stated_constant=const, phi_constant=phi_const,
            min_slack=best, violations=violations,
            window_violations=window_violations,
            below_threshold=below, threshold=threshold, worst_at=worst_at,
        )
        lhs = worst if worst is not None else 0
        out.append(_evaluation(name, lhs, p, "<", **params))
    return out
