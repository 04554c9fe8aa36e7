"""Majorization of grouped spectra and Nielsen's transformability test.

``majorizes(a, b)`` answers ``a ≺ b``: every sum of the l largest entries of
``a`` is at most the corresponding sum for ``b``, for l up to the smaller
Schmidt rank.  By Nielsen's theorem this is exactly when the state with
spectrum ``a`` can be turned into the one with spectrum ``b`` by LOCC.

Within one group every entry is equal, so each prefix sum is linear in l
between group boundaries and so is their difference.  Only the boundaries of
either spectrum need checking; multiplicities are never expanded.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .spectrum import GroupedSpectrum


@dataclass(frozen=True)
class Witness:
    l: int
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class MajorizationVerdict:
    holds: bool
    witness: Optional[Witness] = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        out = {"holds": self.holds, "checked": self.checked, "witness": None}
        if self.witness is not None:
            w = self.witness
            out["witness"] = {"l": w.l, "lhs": str(w.lhs), "rhs": str(w.rhs)}
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "MajorizationVerdict":
        w = data.get("witness")
        witness = None
        if w is not None:
            witness = Witness(int(w["l"]), Fraction(w["lhs"]), Fraction(w["rhs"]))
        return cls(bool(data["holds"]), witness, int(data.get("checked", 0)))


class PrefixSums:
    """Sum of the l largest entries of a grouped spectrum, for any integer l.

    Works in integers scaled by the common denominator of all values, so
    evaluation never allocates Fractions.
    """

    def __init__(self, s: GroupedSpectrum):
        scale = 1
        for v, _ in s.groups:
            d = v.denominator
            if scale % d:
                scale = scale * d // gcd(scale, d)
        self.scale = scale
        self.values = [v.numerator * (scale // v.denominator) for v, _ in s.groups]
        self.counts = []  # cumulative count at the end of each group
        self.masses = []  # cumulative scaled mass at the end of each group
        c = total = 0
        for (_, m), v in zip(s.groups, self.values):
            c += m
            total += v * m
            self.counts.append(c)
            self.masses.append(total)

    @property
    def dim(self) -> int:
        return self.counts[-1]

    def scaled(self, l: int) -> int:
        """``scale`` times the sum of the l largest entries."""
        if l <= 0:
            return 0
        if l >= self.dim:
            return self.scale
        j = bisect_left(self.counts, l)
        if j == 0:
            return l * self.values[0]
        return self.masses[j - 1] + (l - self.counts[j - 1]) * self.values[j]

    def __call__(self, l: int) -> Fraction:
        return Fraction(self.scaled(l), self.scale)


def majorizes(a: GroupedSpectrum, b: GroupedSpectrum) -> MajorizationVerdict:
    """Decide ``a ≺ b`` exactly.

    When it fails, the witness holds the smallest violating l with both prefix
    sums, ``lhs = S_a(l) > rhs = S_b(l)``.
    """
    sa, sb = PrefixSums(a), PrefixSums(b)
    limit = min(sa.dim, sb.dim)
    points = {c for c in sa.counts if c < limit}
    points.update(c for c in sb.counts if c < limit)
    points.add(limit)
    checked = 0
    prev_l, prev_gap = 0, 0
    for l in sorted(points):
        checked += 1
        # S_a(l) - S_b(l), cross-multiplied by both scales
        gap = sa.scaled(l) * sb.scale - sb.scaled(l) * sa.scale
        if gap > 0:
            # the gap is linear on (prev_l, l]; find its first positive integer
            first = prev_l + (-prev_gap) * (l - prev_l) // (gap - prev_gap) + 1
            return MajorizationVerdict(False, Witness(first, sa(first), sb(first)), checked)
        prev_l, prev_gap = l, gap
    return MajorizationVerdict(True, None, checked)


def nielsen_transformable(source: GroupedSpectrum, target: GroupedSpectrum) -> MajorizationVerdict:
    """Can ``source`` be converted to ``target`` deterministically by LOCC?"""
    return majorizes(source, target)


def max_entangled_reachable(source: GroupedSpectrum, k: int) -> bool:
    """Shortcut for reaching the k x k maximally entangled state: the largest
    Schmidt coefficient must not exceed 1/k."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return source.largest * k <= 1

