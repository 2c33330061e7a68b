"""Global floating-point comparison tolerances.

``DUALKIT_ATOL`` in the environment overrides the absolute tolerance.
"""

import math
import os

ATOL = float(os.environ.get("DUALKIT_ATOL", "1e-8"))
RTOL = 1e-6


def close(a: float, b: float, atol: float | None = None, rtol: float | None = None) -> bool:
    """True iff |a - b| <= max(atol, rtol * max(|a|, |b|)); infinities equal only themselves."""
    if atol is None:
        atol = ATOL
    if rtol is None:
        rtol = RTOL
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= max(atol, rtol * max(abs(a), abs(b)))


def is_zero(a: float, atol: float | None = None) -> bool:
    return abs(a) <= (ATOL if atol is None else atol)
