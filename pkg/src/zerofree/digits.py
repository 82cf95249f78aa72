"""Precision plumbing and display rounding.

Verification paths run at a configurable number of significant decimal
digits (default 50).  Published constants are quoted with directed
rounding: a constant that bounds a quantity from above is rounded up at
its last printed digit, one that bounds from below is rounded down.
The helpers here reproduce that convention so reports can be compared
digit-for-digit against the quoted values.
"""

from __future__ import annotations

from mpmath import mp, mpf, floor, ceil

DEFAULT_DPS = 50

#: Euler's constant, 60 significant digits.
EULER_GAMMA_60 = "0.577215664901532860606512090082402431042159335939923598805767"


def euler_gamma() -> mpf:
    """Euler's constant at working precision (from a 60-digit literal)."""
    return mpf(EULER_GAMMA_60)


def workdps(dps: int | None):
    """Context manager switching mpmath to ``dps`` significant digits."""
    return mp.workdps(dps if dps is not None else DEFAULT_DPS)


def round_up(x, places: int) -> mpf:
    """Round ``x`` up (toward +inf) at ``places`` decimal places."""
    s = mpf(10) ** places
    return ceil(mpf(x) * s) / s


def round_down(x, places: int) -> mpf:
    """Round ``x`` down (toward -inf) at ``places`` decimal places."""
    s = mpf(10) ** places
    return floor(mpf(x) * s) / s


def fmt_places(x, places: int) -> str:
    """Format with exactly ``places`` digits after the decimal point."""
    sign = "-" if mpf(x) < 0 else ""
    v = abs(mpf(x))
    scaled = int(floor(v * mpf(10) ** places + mpf("0.5")))
    digits = str(scaled).rjust(places + 1, "0")
    whole, frac = digits[:-places] or "0", digits[-places:]
    return f"{sign}{whole}.{frac}" if places else f"{sign}{whole}"


def fmt_upper(x, places: int) -> str:
    """Directed display: round up at ``places`` decimals (upper bounds)."""
    return _fmt_directed(x, places, up=True)


def fmt_lower(x, places: int) -> str:
    """Directed display: round down at ``places`` decimals (lower bounds)."""
    return _fmt_directed(x, places, up=False)


def _fmt_directed(x, places: int, up: bool) -> str:
    s = mpf(10) ** places
    scaled = ceil(mpf(x) * s) if up else floor(mpf(x) * s)
    neg = scaled < 0
    digits = str(int(abs(scaled))).rjust(places + 1, "0")
    whole, frac = digits[:-places] or "0", digits[-places:]
    body = f"{whole}.{frac}" if places else whole
    return ("-" if neg else "") + body


def dec(x, sig: int = None) -> str:
    """Decimal string of an mpmath number for serialization.

    Conversion runs at (at least) sig + 5 working digits: nstr asked for
    more digits than the ambient precision would otherwise pad with
    round-trip noise.
    """
    n = sig if sig is not None else mp.dps
    with mp.workdps(max(mp.dps, n + 5)):
        return mp.nstr(mpf(x), n, strip_zeros=True)
