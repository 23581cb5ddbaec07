"""Residue and multiset-sequence algebra over the cyclic group Z_n.

Everything here is immutable and pure; the rest of the package builds on
these primitives.  A sequence is an unordered multiset of residues with an
explicit modulus, stored as a residue -> multiplicity map.
"""

from __future__ import annotations

import re
from math import gcd
from typing import Iterable, Iterator


class SequenceParseError(ValueError):
    """Raised on a malformed sequence literal; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def least_positive_residue(x: int, n: int) -> int:
    """Smallest positive integer congruent to x mod n; the zero class maps to n."""
    if n < 2:
        raise ValueError("modulus must be at least 2")
    r = x % n
    return r if r >= 1 else n


def units(n: int) -> list[int]:
    """All multipliers in [1, n-1] coprime to n, ascending."""
    if n < 2:
        raise ValueError("modulus must be at least 2")
    return [m for m in range(1, n) if gcd(m, n) == 1]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


_TOKEN = re.compile(r"\S+")


class ZnSequence:
    """A finite multiset of residues mod n.

    Terms are kept as a residue -> multiplicity map with residues reduced to
    [0, n-1].  Instances are immutable and hashable, so they can be shared
    freely across workers.
    """

    __slots__ = ("n", "_counts", "_length", "_hash")

    def __init__(self, n: int, values: Iterable[int] = (), counts: dict[int, int] | None = None):
        if n < 2:
            raise ValueError("modulus must be at least 2")
        acc: dict[int, int] = {}
        for v in values:
            r = v % n
            acc[r] = acc.get(r, 0) + 1
        if counts:
            for v, c in counts.items():
                if c < 0:
                    raise ValueError("multiplicities must be nonnegative")
                if c:
                    r = v % n
                    acc[r] = acc.get(r, 0) + c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_counts", dict(sorted(acc.items())))
        object.__setattr__(self, "_length", sum(acc.values()))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("ZnSequence is immutable")

    # -- basic container behaviour ------------------------------------

    @property
    def counts(self) -> dict[int, int]:
        """Residue -> multiplicity map (copy), sorted by residue."""
        return dict(self._counts)

    @property
    def length(self) -> int:
        return self._length

    def __len__(self) -> int:
        return self._length

    def __iter__(self) -> Iterator[int]:
        for r, c in self._counts.items():
            for _ in range(c):
                yield r

    def values(self) -> tuple[int, ...]:
        """All terms expanded, sorted by residue."""
        return tuple(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZnSequence):
            return NotImplemented
        return self.n == other.n and self._counts == other._counts

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.n, tuple(self._counts.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"ZnSequence.from_literal({self.to_literal()!r})"

    # -- sequence algebra ----------------------------------------------

    def normalized(self) -> tuple[int, ...]:
        """The multiset of least positive representatives, sorted ascending."""
        return tuple(sorted(least_positive_residue(r, self.n) for r in self))

    def normalized_sum(self, multiplier: int = 1) -> int:
        """Integer sum of the least positive representatives of multiplier*S."""
        n = self.n
        total = 0
        for r, c in self._counts.items():
            w = (multiplier * r) % n
            total += (w if w else n) * c
        return total

    def scale(self, multiplier: int) -> "ZnSequence":
        """Elementwise multiplication mod n; length is preserved."""
        acc: dict[int, int] = {}
        for r, c in self._counts.items():
            s = (multiplier * r) % self.n
            acc[s] = acc.get(s, 0) + c
        return ZnSequence(self.n, counts=acc)

    @property
    def repetition(self) -> int:
        """Maximal multiplicity of any residue; 0 for the empty sequence."""
        return max(self._counts.values(), default=0)

    def restrict(self, lo: int, hi: int) -> "ZnSequence":
        """Sub-multiset of terms whose least positive representative is in [lo, hi]."""
        acc = {r: c for r, c in self._counts.items()
               if lo <= least_positive_residue(r, self.n) <= hi}
        return ZnSequence(self.n, counts=acc)

    def contains(self, other: "ZnSequence") -> bool:
        """Multiset inclusion: other is a subsequence of self."""
        if other.n != self.n:
            return False
        return all(self._counts.get(r, 0) >= c for r, c in other._counts.items())

    def is_zero_sum(self) -> bool:
        return sum(r * c for r, c in self._counts.items()) % self.n == 0

    def is_minimal_zero_sum(self) -> bool:
        """Zero-sum with no proper nonempty zero-sum sub-multiset.

        Decided by a (residue, cardinality) reachability table over bitmasks,
        so the cost is O(len^2 * n / wordsize) rather than 2^len.
        """
        if self._length == 0:
            raise ValueError("empty sequence")
        if not self.is_zero_sum():
            return False
        n = self.n
        full = (1 << n) - 1
        # layers[c] = bitmask of residues reachable as a sum of exactly c terms
        layers = [0] * (self._length + 1)
        layers[0] = 1
        seen = 0
        for r in self:
            for c in range(seen, -1, -1):
                mask = layers[c]
                if not mask:
                    continue
                rotated = ((mask << r) | (mask >> (n - r))) & full if r else mask
                layers[c + 1] |= rotated
            seen += 1
        return not any(layers[c] & 1 for c in range(1, self._length))

    # -- literal format -------------------------------------------------
    #
    # Grammar: <term> (ws <term>)* "mod" <n>  with <term> = <int> or <int>"^"<mult>.
    # Integers are reduced mod n on parse.  The same format is used by the
    # CLI, the JSON reports and the test corpus.

    @classmethod
    def from_literal(cls, text: str) -> "ZnSequence":
        tokens = [(m.group(0), m.start()) for m in _TOKEN.finditer(text)]
        if len(tokens) < 3:
            raise SequenceParseError("expected '<terms> mod <n>'", 0)
        if tokens[-2][0] != "mod":
            raise SequenceParseError("expected 'mod' before the modulus", tokens[-2][1])
        mod_tok, mod_pos = tokens[-1]
        try:
            n = int(mod_tok)
        except ValueError:
            raise SequenceParseError(f"bad modulus {mod_tok!r}", mod_pos) from None
        if n < 2:
            raise SequenceParseError("modulus must be at least 2", mod_pos)
        counts: dict[int, int] = {}
        for tok, pos in tokens[:-2]:
            if tok == "mod":
                raise SequenceParseError("unexpected 'mod'", pos)
            base, sep, expo = tok.partition("^")
            try:
                v = int(base)
            except ValueError:
                raise SequenceParseError(f"bad term {tok!r}", pos) from None
            mult = 1
            if sep:
                try:
                    mult = int(expo)
                except ValueError:
                    raise SequenceParseError(f"bad multiplicity in {tok!r}", pos) from None
                if mult < 1:
                    raise SequenceParseError(f"multiplicity must be positive in {tok!r}", pos)
            r = v % n
            counts[r] = counts.get(r, 0) + mult
        return cls(n, counts=counts)

    def to_literal(self) -> str:
        parts = [f"{r}^{c}" if c > 1 else str(r) for r, c in self._counts.items()]
        return " ".join(parts + ["mod", str(self.n)])
