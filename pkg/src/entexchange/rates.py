"""Deterministic exchange rates between entangled pure states.

``f(m)`` is the largest n with ``source^⊗m → target^⊗n`` under LOCC.  The
best ``f(m)/m`` over a budget of m is a certified lower bound on the rate D;
the entropy ratio R is an upper bound.  For a maximally entangled target the
rate is ``-log_k α₁`` and ``f(m)`` has an exact closed form.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .entropy import (INFINITY, ZERO, RenyiOrder, asymptotic_rate, entropy_ratio,
                      renyi, _real)
from .errors import BudgetTooSmall, ProductState
from .majorization import PrefixSums, majorizes
from .spectrum import GroupedSpectrum, grouped, parse_rational, tensor_power, tensor_product

log = logging.getLogger(__name__)

DEFAULT_M_MAX = 64
DEFAULT_Q_GRID = 100
DEFAULT_COPIES_MAX = 16
SANDWICH_SLACK = 1e-9

_CAP_ORDERS = (ZERO, RenyiOrder.finite(2.0), INFINITY)


class InvariantViolation(AssertionError):
    """A computed report contradicts a proven bound."""


def _require_entangled(s: GroupedSpectrum, what: str) -> None:
    if not s.is_entangled():
        raise ProductState(f"{what} must be entangled (Schmidt rank >= 2)")


def default_n_cap(source: GroupedSpectrum, target: GroupedSpectrum, m: int) -> int:
    """Safe ceiling for f(m): m times the smallest entropy ratio at orders
    0, 2 and inf, plus one to absorb rounding."""
    _require_entangled(target, "target")
    r = min(renyi(source, o) / renyi(target, o) for o in _CAP_ORDERS)
    return max(1, math.floor(m * r + 1e-9) + 1)


def f_of_m(source: GroupedSpectrum, target: GroupedSpectrum, m: int,
           n_cap: Optional[int] = None) -> int:
    """Largest n <= n_cap such that ``source^⊗m ≺ target^⊗n`` (0 if none).

    Scans n downward from the cap.  Without an explicit cap, the entropy-based
    default is used and then guarded: if the cap itself is feasible the bound
    was wrong, so the scan continues upward while n + 1 stays feasible.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    guarded = n_cap is None
    if guarded:
        n_cap = default_n_cap(source, target, m)
    if n_cap < 1:
        raise ValueError(f"n_cap must be >= 1, got {n_cap}")
    src = tensor_power(source, m)
    for n in range(n_cap, 0, -1):
        if majorizes(src, tensor_power(target, n)).holds:
            break
    else:
        return 0
    if guarded and n == n_cap:
        while majorizes(src, tensor_power(target, n + 1)).holds:
            log.warning("default n cap %d for m=%d is not an upper bound; extending", n_cap, m)
            n += 1
    return n


def positivity_threshold(source: GroupedSpectrum, target: GroupedSpectrum) -> int:
    """Smallest m with α₁^m <= 1/rank(target): from there on f(m) >= 1."""
    _require_entangled(source, "source")
    alpha, d = source.largest, target.dim
    m, power = 1, alpha
    while power * d > 1:
        m += 1
        power *= alpha
    return m


def rate_lower_bound(source: GroupedSpectrum, target: GroupedSpectrum, m_max: int,
                     n_cap: Optional[int] = None) -> tuple[Fraction, int, int]:
    """Best f(m)/m over m = 1..m_max.

    Returns ``(ratio, m, f(m))`` for the smallest maximising m.  Raises
    :class:`BudgetTooSmall` if every f(m) is zero.
    """
    _require_entangled(source, "source")
    _require_entangled(target, "target")
    if m_max < 1:
        raise ValueError(f"m_max must be >= 1, got {m_max}")
    best, best_m, best_f = Fraction(0), 0, 0
    for m in range(1, m_max + 1):
        f = f_of_m(source, target, m, n_cap)
        if Fraction(f, m) > best:
            best, best_m, best_f = Fraction(f, m), m, f
    if best_m == 0:
        raise BudgetTooSmall(m_max, positivity_threshold(source, target))
    return best, best_m, best_f


def uniform_target_f(source: GroupedSpectrum, k: int, m: int) -> int:
    """Exact f(m) for a k x k maximally entangled target.

    The largest f with α₁^m <= k^-f, decided by integer comparison
    ``k^f * num^m <= den^m`` so boundary cases are never misjudged.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    alpha = source.largest
    num, den = alpha.numerator ** m, alpha.denominator ** m
    if num == den:
        return 0
    f = max(0, math.floor(m * -math.log(alpha) / math.log(k)))
    while f > 0 and k ** f * num > den:
        f -= 1
    while k ** (f + 1) * num <= den:
        f += 1
    return f


def closed_form_uniform_target(source: GroupedSpectrum, k: int) -> float:
    """Rate to the k x k maximally entangled state, ``-log_k α₁``."""
    _require_entangled(source, "source")
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    alpha = source.largest
    return -(math.log(alpha.numerator) - math.log(alpha.denominator)) / math.log(k)


def uniform_rank(s: GroupedSpectrum) -> Optional[int]:
    """k if ``s`` is the uniform k-level spectrum, else None."""
    if len(s.groups) == 1:
        return s.groups[0][1]
    return None


def catalyst_verify(source: GroupedSpectrum, target: GroupedSpectrum,
                    catalyst: GroupedSpectrum, copies: int = 1) -> bool:
    """Does ``catalyst^⊗copies`` enable ``source → target``?"""
    if copies < 1:
        raise ValueError(f"copies must be >= 1, got {copies}")
    c = tensor_power(catalyst, copies)
    return majorizes(tensor_product(source, c), tensor_product(target, c)).holds


def qubit_spectrum(q: Fraction) -> GroupedSpectrum:
    """(q, 1 - q) for 1/2 < q < 1."""
    return GroupedSpectrum(((q, 1), (1 - q, 1)))


def catalyst_grid(q_grid: int) -> list[Fraction]:
    """q = 1/2 + j / (2 q_grid) for j = 1..q_grid-1, i.e. the open interval
    (1/2, 1) in steps of 1/(2 q_grid)."""
    return [Fraction(1, 2) + Fraction(j, 2 * q_grid) for j in range(1, q_grid)]


@dataclass(frozen=True)
class CatalystReport:
    plain_feasible: bool
    catalyst_feasible: bool
    catalyst: Optional[tuple[GroupedSpectrum, int]] = None
    search_space: Optional[dict] = None

    def __post_init__(self):
        if self.plain_feasible and not self.catalyst_feasible:
            raise InvariantViolation("plain feasibility implies catalyst feasibility")

    def to_dict(self) -> dict:
        cat = None
        if self.catalyst is not None:
            spec, copies = self.catalyst
            cat = {"spectrum": [str(p) for p in spec.expand()], "copies": copies}
        return {
            "plain_feasible": self.plain_feasible,
            "catalyst_feasible": self.catalyst_feasible,
            "catalyst": cat,
            "search_space": self.search_space,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CatalystReport":
        cat = data.get("catalyst")
        if cat is not None:
            cat = (grouped(cat["spectrum"]), int(cat["copies"]))
        return cls(bool(data["plain_feasible"]), bool(data["catalyst_feasible"]), cat,
                   data.get("search_space"))


def catalyst_search_2level(source: GroupedSpectrum, target: GroupedSpectrum,
                           q_grid: int = DEFAULT_Q_GRID,
                           copies_max: int = DEFAULT_COPIES_MAX) -> CatalystReport:
    """Look for a two-level catalyst (q, 1-q)^⊗c enabling ``source → target``.

    Tries copies c = 1..copies_max, and for each c every q of
    :func:`catalyst_grid` in increasing order; the first success is returned.
    This is a bounded heuristic: an unsuccessful report means no catalyst in
    the searched grid, not that none exists.
    """
    if majorizes(source, target).holds:
        return CatalystReport(True, True)
    qs = catalyst_grid(q_grid) if q_grid >= 1 else []
    space = {"family": "(q, 1-q)", "q_grid": q_grid, "q_min": str(qs[0]) if qs else None,
             "q_max": str(qs[-1]) if qs else None, "copies_max": copies_max, "tried": 0}
    tried = 0
    for copies in range(1, copies_max + 1):
        for q in qs:
            tried += 1
            phi = qubit_spectrum(q)
            if catalyst_verify(source, target, phi, copies):
                space["tried"] = tried
                return CatalystReport(False, True, (phi, copies), space)
    space["tried"] = tried
    return CatalystReport(False, False, None, space)


def max_conversion_probability(source: GroupedSpectrum, target: GroupedSpectrum) -> Fraction:
    """Optimal success probability of ``source → target`` by LOCC.

    The minimum over l of the tail mass of the source from position l on,
    divided by the same tail of the target.  Both tails are linear between group
    boundaries, so their ratio is monotone there and only boundaries (and the
    last target position) are evaluated.  Zero when the target has larger
    Schmidt rank than the source.
    """
    if target.dim > source.dim:
        return Fraction(0)
    sa, sb = PrefixSums(source), PrefixSums(target)
    last = target.dim - 1  # tails start after this many entries; target tail > 0
    points = {0, last}
    points.update(c for c in sa.counts if c <= last)
    points.update(c for c in sb.counts if c <= last)
    best = Fraction(1)
    for x in points:
        ratio = (1 - sa(x)) / (1 - sb(x))
        if ratio < best:
            best = ratio
    return best


def min_copies_to_reach(source: GroupedSpectrum, target: GroupedSpectrum,
                        m_limit: int = 1000) -> int:
    """Smallest m with ``source^⊗m → target`` (searched up to m_limit)."""
    for m in range(1, m_limit + 1):
        if majorizes(tensor_power(source, m), target).holds:
            return m
    raise BudgetTooSmall(m_limit, m_limit + 1)


@dataclass(frozen=True)
class RateReport:
    lower_bound: Fraction
    lower_witness: tuple[int, int]
    upper_bound: float
    upper_order: RenyiOrder
    asymptotic: float
    budget: dict = field(default_factory=dict)
    closed_form: Optional[float] = None
    budget_too_small: bool = False
    threshold: Optional[int] = None

    def check(self) -> None:
        if float(self.lower_bound) > self.upper_bound + SANDWICH_SLACK:
            raise InvariantViolation(
                f"lower bound {self.lower_bound} exceeds upper bound {self.upper_bound}")
        if self.closed_form is not None:
            m_max = self.budget.get("m_max", 1)
            lo = float(self.lower_bound) - 1 / m_max
            if not (lo <= self.closed_form <= self.upper_bound + SANDWICH_SLACK):
                raise InvariantViolation(
                    f"closed form {self.closed_form} outside [{lo}, {self.upper_bound}]")

    def to_dict(self) -> dict:
        m, f = self.lower_witness
        return {
            "lower_bound": str(self.lower_bound),
            "lower_witness": {"m": m, "f": f},
            "upper_bound": _real(self.upper_bound),
            "upper_order": str(self.upper_order),
            "upper_u": _real(self.upper_order.u),
            "closed_form": None if self.closed_form is None else _real(self.closed_form),
            "asymptotic": _real(self.asymptotic),
            "budget": dict(self.budget),
            "budget_too_small": self.budget_too_small,
            "threshold": self.threshold,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RateReport":
        w = data["lower_witness"]
        cf = data.get("closed_form")
        return cls(
            lower_bound=parse_rational(data["lower_bound"]),
            lower_witness=(int(w["m"]), int(w["f"])),
            upper_bound=float(data["upper_bound"]),
            upper_order=RenyiOrder.parse(str(data["upper_order"])),
            asymptotic=float(data["asymptotic"]),
            budget=dict(data.get("budget") or {}),
            closed_form=None if cf is None else float(cf),
            budget_too_small=bool(data.get("budget_too_small", False)),
            threshold=data.get("threshold"),
        )


def rate_report(source: GroupedSpectrum, target: GroupedSpectrum,
                m_max: int = DEFAULT_M_MAX, n_cap: Optional[int] = None) -> RateReport:
    """Lower and upper bounds on the deterministic rate, plus the asymptotic
    rate and, for a maximally entangled target, the exact closed form."""
    _require_entangled(source, "source")
    _require_entangled(target, "target")
    upper = entropy_ratio(source, target)
    budget = {"m_max": m_max, "n_cap": n_cap}
    try:
        lower, m, f = rate_lower_bound(source, target, m_max, n_cap)
        too_small, threshold = False, None
    except BudgetTooSmall as exc:
        lower, m, f = Fraction(0), 0, 0
        too_small, threshold = True, exc.threshold
    k = uniform_rank(target)
    closed = closed_form_uniform_target(source, k) if k is not None else None
    report = RateReport(lower, (m, f), upper.ratio, upper.order, asymptotic_rate(source, target),
                        budget, closed, too_small, threshold)
    report.check()
    return report

