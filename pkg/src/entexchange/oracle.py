"""Deliberately naive reference implementations.

Used to cross-check the grouped algorithms on small instances (by the test
suite and by the CLI's ``--oracle`` flag).  Everything here works on fully
expanded vectors, so sizes are guarded.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

from .errors import SizeGuardExceeded
from .spectrum import GroupedSpectrum, SchmidtSpectrum

SIZE_GUARD = 10**7

DenseSpectrum = tuple  # descending tuple of Fractions, repeats allowed


def dense(s) -> DenseSpectrum:
    if isinstance(s, GroupedSpectrum):
        return tuple(s.expand().probs)
    if isinstance(s, SchmidtSpectrum):
        return tuple(s.probs)
    return tuple(sorted((Fraction(x) for x in s), reverse=True))


def naive_tensor_power(s: Sequence[Fraction], m: int) -> DenseSpectrum:
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if len(s) ** m > SIZE_GUARD:
        raise SizeGuardExceeded(f"{len(s)}^{m} entries exceeds guard {SIZE_GUARD}")
    out = [math.prod(combo, start=Fraction(1)) for combo in itertools.product(s, repeat=m)]
    out.sort(reverse=True)
    return tuple(out)


def naive_tensor_product(a: Sequence[Fraction], b: Sequence[Fraction]) -> DenseSpectrum:
    if len(a) * len(b) > SIZE_GUARD:
        raise SizeGuardExceeded(f"{len(a)}*{len(b)} entries exceeds guard {SIZE_GUARD}")
    return tuple(sorted((x * y for x in a for y in b), reverse=True))


def naive_majorizes(a: Sequence[Fraction], b: Sequence[Fraction]) -> bool:
    """Literal check of every prefix sum for l = 1..min(len(a), len(b))."""
    if max(len(a), len(b)) > SIZE_GUARD:
        raise SizeGuardExceeded("spectrum too long for the naive check")
    sa = sb = Fraction(0)
    for x, y in zip(sorted(a, reverse=True), sorted(b, reverse=True)):
        sa += x
        sb += y
        if sa > sb:
            return False
    return True


def naive_prefix_sum(a: Sequence[Fraction], l: int) -> Fraction:
    return sum(sorted(a, reverse=True)[:l], Fraction(0))


def naive_max_conversion_probability(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    """Vidal's formula, evaluated at every l."""
    a = sorted(a, reverse=True)
    b = sorted(b, reverse=True)
    if len(b) > len(a):
        return Fraction(0)
    best = Fraction(1)
    for l in range(len(b)):
        r = sum(a[l:], Fraction(0)) / sum(b[l:], Fraction(0))
        best = min(best, r)
    return best
