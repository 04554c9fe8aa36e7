"""Exception types raised by the library."""

from fractions import Fraction


class SpectrumError(ValueError):
    """Base class for malformed Schmidt spectra."""


class EmptySpectrum(SpectrumError):
    pass


class NegativeEntry(SpectrumError):
    def __init__(self, entry):
        super().__init__(f"negative Schmidt coefficient: {entry}")
        self.entry = entry


class SumNotOne(SpectrumError):
    def __init__(self, total: Fraction):
        self.total = total
        self.deficit = 1 - total
        super().__init__(
            f"coefficients sum to {total}, not 1 (deficit {self.deficit})"
        )


class ProductState(ValueError):
    """An entangled state was required but the spectrum has a single entry."""


class BudgetTooSmall(RuntimeError):
    def __init__(self, m_max: int, threshold: int):
        self.m_max = m_max
        self.threshold = threshold
        super().__init__(
            f"f(m) = 0 for every m <= {m_max}; need m_max >= {threshold}"
        )


class SizeGuardExceeded(RuntimeError):
    pass
