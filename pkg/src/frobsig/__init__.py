"""Truncated relative F-signatures of local rings in positive characteristic.

Exact computation of Hilbert-Kunz colengths l(R/I^[p^e]) and of the
normalized colength drops s^e over socle ideals, for rings
k[x_1..x_n]/J localized at the origin with k finite or a rational
function field over F_p.
"""

__version__ = "0.1.0"

from .errors import FrobsigError  # noqa: E402
from .extension import (  # noqa: E402
    BaseChangeSpec,
    base_change,
    flat_invariance_check,
    gamma_report,
)
from .field import (  # noqa: E402
    ExtensionField,
    FunctionField,
    PrimeField,
    parse_field,
)
from .groebner import buchberger  # noqa: E402
from .instance import format_instance, parse_instance  # noqa: E402
from .poly import GREVLEX, LEX, PolyRing  # noqa: E402
from .presentation import LocalRingPresentation  # noqa: E402
from .signature import (  # noqa: E402
    convergence_report,
    hk_function,
    minimizer_closure_check,
    s_rat_trunc,
    s_trunc,
    s_trunc_min,
)

__all__ = [
    "BaseChangeSpec",
    "ExtensionField",
    "FrobsigError",
    "FunctionField",
    "GREVLEX",
    "LEX",
    "LocalRingPresentation",
    "PolyRing",
    "PrimeField",
    "base_change",
    "buchberger",
    "convergence_report",
    "flat_invariance_check",
    "format_instance",
    "gamma_report",
    "hk_function",
    "minimizer_closure_check",
    "parse_field",
    "parse_instance",
    "s_rat_trunc",
    "s_trunc",
    "s_trunc_min",
]
