"""Tropical (min, +) weights.

Weights are plain floats. ``ONE`` (0.0) is the cost of a free step and
``ZERO`` (infinity) the cost of an impossible one.
"""

import math

ONE = 0.0
ZERO = math.inf


def plus(a, b):
    return a if a <= b else b


def times(a, b):
    return a + b


def check(w):
    """Coerce ``w`` to a valid weight, rejecting negative costs and NaN."""
    w = float(w)
    if not w >= 0.0:
        raise ValueError(f"weights must be nonnegative costs, got {w!r}")
    return w


def format_weight(w):
    """Render a weight with at least one decimal, e.g. ``2.0``, ``0.75``, ``inf``."""
    w = float(w)
    if math.isinf(w):
        return "inf"
    text = repr(w)
    if "e" in text or "." in text:
        return text
    return text + ".0"


def parse_weight(text):
    text = text.strip()
    if text in ("inf", "Infinity"):
        return ZERO
    return check(float(text))
