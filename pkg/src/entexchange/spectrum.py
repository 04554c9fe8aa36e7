"""Exact Schmidt spectra and their tensor algebra.

A bipartite pure state is characterised, for LOCC purposes, by its vector of
squared Schmidt coefficients.  Two representations are provided:

* :class:`SchmidtSpectrum` -- the plain descending probability vector.
* :class:`GroupedSpectrum` -- distinct values with integer multiplicities.
  Tensor powers stay small in this form (polynomially many groups), which is
  what makes checks on hundreds of copies feasible.

All arithmetic is exact (:class:`fractions.Fraction`).
"""

from __future__ import annotations

import functools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Iterator, Sequence, Union

from .errors import EmptySpectrum, NegativeEntry, SumNotOne

Entry = Union[str, int, Fraction]


def parse_rational(entry: Entry) -> Fraction:
    """Parse ``"2/5"``, ``"0.4"``, ``"1e-2"`` or an int/Fraction exactly.

    Binary floats are refused: ``0.1`` has no exact decimal meaning.
    """
    if isinstance(entry, bool) or isinstance(entry, float):
        raise TypeError(f"spectrum entries must be strings or exact rationals, got {entry!r}")
    if isinstance(entry, (int, Fraction)):
        return Fraction(entry)
    if not isinstance(entry, str):
        raise TypeError(f"cannot parse {entry!r} as a rational")
    try:
        return Fraction(entry.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {entry!r}") from exc


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Descending, strictly positive probability vector summing to exactly 1."""

    probs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.probs:
            raise EmptySpectrum("spectrum has no nonzero entries")
        if any(p <= 0 for p in self.probs):
            raise NegativeEntry(min(self.probs))
        if any(a < b for a, b in zip(self.probs, self.probs[1:])):
            raise ValueError("spectrum must be sorted non-increasing")
        total = sum(self.probs, Fraction(0))
        if total != 1:
            raise SumNotOne(total)

    def __len__(self) -> int:
        return len(self.probs)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.probs)

    def __str__(self) -> str:
        return "(" + ", ".join(str(p) for p in self.probs) + ")"


@dataclass(frozen=True)
class GroupedSpectrum:
    """Distinct values (strictly descending) paired with their multiplicities."""

    groups: tuple[tuple[Fraction, int], ...]

    def __post_init__(self):
        if not self.groups:
            raise EmptySpectrum("spectrum has no groups")
        prev = None
        for value, mult in self.groups:
            if value <= 0:
                raise NegativeEntry(value)
            if mult < 1:
                raise ValueError(f"multiplicity must be >= 1, got {mult}")
            if prev is not None and value >= prev:
                raise ValueError("group values must be strictly decreasing")
            prev = value
        total = self.total_mass()
        if total != 1:
            raise SumNotOne(total)

    @classmethod
    def _trusted(cls, groups) -> "GroupedSpectrum":
        # skips validation; callers guarantee the invariants by construction
        obj = object.__new__(cls)
        object.__setattr__(obj, "groups", tuple(groups))
        return obj

    @property
    def dim(self) -> int:
        """Number of nonzero Schmidt coefficients (the Schmidt rank)."""
        return sum(m for _, m in self.groups)

    @property
    def largest(self) -> Fraction:
        return self.groups[0][0]

    def total_mass(self) -> Fraction:
        return sum((v * m for v, m in self.groups), Fraction(0))

    def is_entangled(self) -> bool:
        return self.dim > 1

    def expand(self) -> SchmidtSpectrum:
        return SchmidtSpectrum(tuple(v for v, m in self.groups for _ in range(m)))

    def __len__(self) -> int:
        return len(self.groups)

    def __str__(self) -> str:
        return "[" + ", ".join(f"({v}, {m})" for v, m in self.groups) + "]"


def _from_counts(counts: dict) -> GroupedSpectrum:
    return GroupedSpectrum._trusted(sorted(counts.items(), key=lambda g: g[0], reverse=True))


def _from_pairs(counts: dict[tuple[int, int], int]) -> GroupedSpectrum:
    """Groups from ``{(num, den): multiplicity}`` with reduced fractions."""
    scale = 1
    for _, d in counts:
        if scale % d:
            scale = scale * d // gcd(scale, d)
    # integer sort keys; comparing Fractions directly is far slower
    ordered = sorted(counts.items(), key=lambda g: g[0][0] * (scale // g[0][1]), reverse=True)
    return GroupedSpectrum._trusted((Fraction(n, d), k) for (n, d), k in ordered)


def parse_spectrum(entries: Sequence[Entry]) -> SchmidtSpectrum:
    """Build a spectrum from rational or decimal strings.

    Zeros are dropped and the result is sorted descending.  The entries must
    sum to exactly 1; nothing is renormalised.

    Raises
    ------
    EmptySpectrum
        No entries, or all entries are zero.
    NegativeEntry
        Some entry is below zero.
    SumNotOne
        The exact sum differs from 1; ``exc.deficit`` holds ``1 - sum``.
    """
    if not entries:
        raise EmptySpectrum("spectrum has no entries")
    values = [parse_rational(e) for e in entries]
    for v in values:
        if v < 0:
            raise NegativeEntry(v)
    total = sum(values, Fraction(0))
    if total != 1:
        raise SumNotOne(total)
    nonzero = sorted((v for v in values if v != 0), reverse=True)
    return SchmidtSpectrum(tuple(nonzero))


def to_grouped(s: SchmidtSpectrum) -> GroupedSpectrum:
    counts: dict[Fraction, int] = defaultdict(int)
    for p in s.probs:
        counts[p] += 1
    return _from_counts(counts)


def grouped(entries: Sequence[Entry]) -> GroupedSpectrum:
    """Shorthand for ``to_grouped(parse_spectrum(entries))``."""
    return to_grouped(parse_spectrum(entries))


def uniform(k: int) -> GroupedSpectrum:
    """Spectrum of the k x k maximally entangled state."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return GroupedSpectrum._trusted([(Fraction(1, k), k)])


PRODUCT = uniform(1)


def tensor_product(a: GroupedSpectrum, b: GroupedSpectrum) -> GroupedSpectrum:
    """Spectrum of the tensor product: all pairwise products, merged."""
    if len(a.groups) == 1 and a.groups[0][1] == 1:
        return b
    if len(b.groups) == 1 and b.groups[0][1] == 1:
        return a
    # merge on reduced (num, den) pairs; hashing Fractions is slow
    counts: dict[tuple[int, int], int] = defaultdict(int)
    bs = [(v.numerator, v.denominator, m) for v, m in b.groups]
    for va, ma in a.groups:
        na, da = va.numerator, va.denominator
        for nb, db, mb in bs:
            g1, g2 = gcd(na, db), gcd(nb, da)
            key = ((na // g1) * (nb // g2), (da // g2) * (db // g1))
            counts[key] += ma * mb
    return _from_pairs(counts)


def _compositions(total: int, parts: int):
    """All tuples of ``parts`` nonnegative ints summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@functools.lru_cache(maxsize=1024)
def tensor_power(a: GroupedSpectrum, m: int) -> GroupedSpectrum:
    """m-fold tensor power.

    Enumerates how many factors come from each group (a composition c of m):
    the value is prod(v_i ** c_i) and the multiplicity is the multinomial
    coefficient times prod(mult_i ** c_i).  Coinciding values are merged.  The
    work is linear in the number of compositions, whereas repeated squaring
    would be quadratic in the group count.
    """
    if m < 1:
        raise ValueError(f"tensor power must be >= 1, got {m}")
    if m == 1:
        return a
    fact = [1] * (m + 1)
    for i in range(2, m + 1):
        fact[i] = fact[i - 1] * i
    tables = []
    for v, mult in a.groups:
        n, d = v.numerator, v.denominator
        nums, dens, mults = [1], [1], [1]
        for _ in range(m):
            nums.append(nums[-1] * n)
            dens.append(dens[-1] * d)
            mults.append(mults[-1] * mult)
        tables.append((nums, dens, mults))
    counts: dict[tuple[int, int], int] = defaultdict(int)
    for comp in _compositions(m, len(tables)):
        num = den = weight = 1
        ways = fact[m]
        for c, (nums, dens, mults) in zip(comp, tables):
            if c:
                num *= nums[c]
                den *= dens[c]
                weight *= mults[c]
                ways //= fact[c]
        g = gcd(num, den)
        counts[(num // g, den // g)] += ways * weight
    return _from_pairs(counts)


def largest_value(a: GroupedSpectrum) -> Fraction:
    """Largest Schmidt coefficient."""
    return a.groups[0][0]


def max_group_count(distinct: int, m: int) -> int:
    """Upper bound on the group count of an m-th power of a spectrum with
    ``distinct`` distinct values (number of multisets of size m)."""
    return comb(m + distinct - 1, distinct - 1)

