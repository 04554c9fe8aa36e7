"""Deterministic LOCC conversion of bipartite pure states.

Exact majorization on (grouped) Schmidt spectra, Rényi-entropy upper bounds,
and lower bounds on the deterministic entanglement exchange rate.
"""

from .errors import (BudgetTooSmall, EmptySpectrum, NegativeEntry, ProductState,
                     SizeGuardExceeded, SpectrumError, SumNotOne)
from .spectrum import (GroupedSpectrum, SchmidtSpectrum, grouped, largest_value,
                       parse_spectrum, tensor_power, tensor_product, to_grouped, uniform)
from .majorization import (MajorizationVerdict, Witness, majorizes, max_entangled_reachable,
                           nielsen_transformable)
from .entropy import (INFINITY, ONE, ZERO, EntropyRatioResult, RenyiOrder, asymptotic_rate,
                      entropy_ratio, renyi, renyi_power)
from .rates import (CatalystReport, RateReport, catalyst_search_2level, catalyst_verify,
                    closed_form_uniform_target, f_of_m, max_conversion_probability,
                    rate_lower_bound, rate_report, uniform_target_f)

__version__ = "0.1.0"
