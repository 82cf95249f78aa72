"""Non-negative trigonometric polynomials P(x) = sum_k b_k cos(kx).

A polynomial qualifies for zero-free-region work when every b_k >= 0,
b_1 > b_0 and P(x) >= 0 for all real x.  Non-negativity is automatic
when P is built from generator coefficients c_0..c_K through the
autocorrelation construction

    P(x) = |sum_k c_k e^(ikx)|^2 / sum_k c_k^2,

which gives b_0 = 1 and b_k = 2 * sum_j c_j c_{j+k} / sum_j c_j^2.
Polynomials ingested directly from cosine-coefficient tables carry no
such certificate; ``certify_nonnegative`` provides a grid-plus-derivative
check for those.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from mpmath import mp, mpf, cos

from .digits import DEFAULT_DPS, dec, workdps

__all__ = [
    "TrigPoly",
    "from_generators",
    "from_cosine_coeffs",
    "expand_product_form",
    "evaluate",
    "certify_nonnegative",
    "load_polynomial",
    "parse_polynomial",
    "save_polynomial",
    "bundled_p40",
    "bundled_p46",
    "ford_p4",
    "nielsen_p5",
]


@dataclass(frozen=True)
class TrigPoly:
    """Immutable value object for one cosine polynomial.

    ``b`` is normalized so that b[0] == 1.  ``c`` holds the generator
    coefficients when the polynomial was built from them (None for
    cosine-table input).  ``admissible`` records b_1 > b_0 with all
    b_k >= 0; ``nonneg_certified`` records whether P >= 0 is known,
    either by construction or through an explicit certificate.
    """

    degree: int
    b: tuple
    c: tuple | None
    b_sum: mpf
    admissible: bool
    nonneg_certified: bool
    source: str
    c_strings: tuple | None = None

    @property
    def b1(self) -> mpf:
        return self.b[1] if self.degree >= 1 else None

    def __repr__(self):
        return "TrigPoly(degree=%d, b1=%s, b=%s, admissible=%s)" % (
            self.degree,
            dec(self.b[1], 15) if self.degree >= 1 else "n/a",
            dec(self.b_sum, 15),
            self.admissible,
        )


def _autocorrelation(c):
    """b_k = 2 sum_j c_j c_{j+k} / sum c_j^2 for k >= 1, b_0 = 1."""
    K = len(c) - 1
    s2 = sum(x * x for x in c)
    if s2 <= 0:
        raise ValueError("generator coefficients must not be all zero")
    b = [mpf(1)]
    for k in range(1, K + 1):
        r = sum(c[j] * c[j + k] for j in range(K - k + 1))
        b.append(2 * r / s2)
    return tuple(b)


def from_generators(c, dps: int = None, strings=None) -> TrigPoly:
    """Build a polynomial from generator coefficients.

    The result is non-negative by construction and scale-invariant in c.
    Admissibility (b_1 > b_0, all b_k >= 0) is recorded, not enforced;
    degree-0 input is never admissible (there is no b_1).
    """
    if not c:
        raise ValueError("empty generator list")
    with workdps(dps or max(mp.dps, DEFAULT_DPS)):
        cc = tuple(mpf(x) for x in c)
        b = _autocorrelation(cc)
        K = len(cc) - 1
        admissible = K >= 1 and b[1] > b[0] and all(x >= 0 for x in b)
        return TrigPoly(
            degree=K,
            b=b,
            c=cc,
            b_sum=sum(b[1:], mpf(0)),
            admissible=admissible,
            nonneg_certified=True,
            source="autocorrelation",
            c_strings=tuple(strings) if strings else None,
        )


def from_cosine_coeffs(b, dps: int = None) -> TrigPoly:
    """Ingest cosine coefficients directly (b-table input).

    Normalizes so b_0 = 1.  Non-negativity of P is NOT certified here;
    run ``certify_nonnegative`` if a certificate is needed.
    """
    if not b:
        raise ValueError("empty coefficient list")
    with workdps(dps or max(mp.dps, DEFAULT_DPS)):
        bb = [mpf(x) for x in b]
        if bb[0] <= 0:
            raise ValueError("b_0 must be positive, got %s" % dec(bb[0], 8))
        bb = tuple(x / bb[0] for x in bb)
        K = len(bb) - 1
        admissible = K >= 1 and bb[1] > bb[0] and all(x >= 0 for x in bb)
        return TrigPoly(
            degree=K,
            b=bb,
            c=None,
            b_sum=sum(bb[1:], mpf(0)),
            admissible=admissible,
            nonneg_certified=False,
            source="cosine",
        )


def expand_product_form(factors, include_one_plus_cos: bool = False,
                        dps: int = None) -> TrigPoly:
    """Expand prod_i (a_i + cos x)^{m_i} * (1 + cos x)^{0 or 1}.

    The product is multiplied out as a Laurent polynomial in e^(ix)
    (cos x = (e^(ix) + e^(-ix))/2) and re-collected as cosine
    coefficients, normalized to b_0 = 1.  When every multiplicity is
    even, each factor is a square (and 1 + cos x >= 0), so the result is
    certified non-negative; generator coefficients are then attached via
    the square root of each factor.
    """
    if not factors and not include_one_plus_cos:
        raise ValueError("no factors given")
    for _, m in factors:
        if int(m) < 1:
            raise ValueError("multiplicities must be >= 1")
    with workdps(dps or max(mp.dps, DEFAULT_DPS)):
        half = mpf(1) / 2
        # Laurent coefficients indexed by offset: poly[i] is the coefficient
        # of e^(i*(idx - n)x) for a polynomial supported on [-n, n].
        lau = [mpf(1)]
        def lmul(p, q):
            out = [mpf(0)] * (len(p) + len(q) - 1)
            for i, x in enumerate(p):
                if x:
                    for j, y in enumerate(q):
                        out[i + j] += x * y
            return out
        for a, m in factors:
            f = [half, mpf(a), half]
            for _ in range(int(m)):
                lau = lmul(lau, f)
        if include_one_plus_cos:
            lau = lmul(lau, [half, mpf(1), half])
        n = (len(lau) - 1) // 2
        p0 = lau[n]
        if p0 <= 0:
            raise ValueError("expansion has non-positive mean value")
        b = tuple([mpf(1)] + [2 * lau[n + k] / p0 for k in range(1, n + 1)])
        even = all(int(m) % 2 == 0 for _, m in factors)
        c = None
        if even:
            gen = [mpf(1)]
            for a, m in factors:
                f = [half, mpf(a), half]
                for _ in range(int(m) // 2):
                    gen = lmul(gen, f)
            if include_one_plus_cos:
                gen = lmul(gen, [mpf(1), mpf(1)])
            c = tuple(gen)
        admissible = n >= 1 and b[1] > b[0] and all(x >= 0 for x in b)
        return TrigPoly(
            degree=n,
            b=b,
            c=c,
            b_sum=sum(b[1:], mpf(0)),
            admissible=admissible,
            nonneg_certified=even,
            source="product",
        )


def evaluate(p: TrigPoly, x) -> mpf:
    """P(x) = sum_k b_k cos(kx), via the Chebyshev cos(kx) recurrence."""
    xx = mpf(x)
    c1 = cos(xx)
    if p.degree == 0:
        return p.b[0]
    total = p.b[0] + p.b[1] * c1
    ckm1, ck = mpf(1), c1
    for k in range(2, p.degree + 1):
        ckp1 = 2 * c1 * ck - ckm1
        total += p.b[k] * ckp1
        ckm1, ck = ck, ckp1
    return total


def certify_nonnegative(p: TrigPoly, grid_bits: int = 14):
    """Grid certificate that P(x) >= 0 everywhere.

    Samples P on 2**grid_bits equispaced points of [0, 2*pi) and uses the
    derivative bound |P'| <= sum_k k*|b_k| between grid points: certified
    iff  min_grid P - (spacing/2) * bound > 0.  Returns
    (certified, grid_min, margin).  The grid pass runs in float64 (its
    rounding error is orders of magnitude below any useful margin); the
    margin keeps a 1e-9 allowance for it.
    """
    import numpy as np

    n = 1 << grid_bits
    xs = np.arange(n) * (2.0 * np.pi / n)
    bf = np.array([float(v) for v in p.b])
    ks = np.arange(p.degree + 1)
    vals = np.cos(np.outer(xs, ks)) @ bf
    gmin = float(vals.min())
    deriv_bound = float(sum(k * abs(v) for k, v in zip(ks, [float(v) for v in p.b])))
    spacing = 2.0 * np.pi / n
    margin = gmin - 0.5 * spacing * deriv_bound - 1e-9
    return margin > 0.0, gmin, margin


# ---------------------------------------------------------------------------
# polynomial file format: one record per line, "k value"; '#' comments;
# optional header line "format: cosine" switches the value column from
# generator coefficients c_k to cosine coefficients b_k.
# ---------------------------------------------------------------------------

def load_polynomial(path, dps: int = None) -> TrigPoly:
    """Read a polynomial file.  Raises ValueError naming the bad line."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_polynomial(fh.read(), dps=dps)


def parse_polynomial(text: str, dps: int = None) -> TrigPoly:
    """Parse polynomial-file text (see the format note above)."""
    fmt = "generators"
    records = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.lower().startswith("format:"):
            fmt = line.split(":", 1)[1].strip().lower()
            if fmt not in ("generators", "cosine"):
                raise ValueError("line %d: unknown format %r" % (lineno, fmt))
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError("line %d: expected 'k value', got %r" % (lineno, raw))
        try:
            k = int(parts[0])
            mpf(parts[1])
        except Exception:
            raise ValueError("line %d: malformed record %r" % (lineno, raw))
        if k in records:
            raise ValueError("line %d: duplicate index %d" % (lineno, k))
        records[k] = parts[1]
    if not records:
        raise ValueError("no coefficient records found")
    K = max(records)
    if sorted(records) != list(range(K + 1)):
        missing = [k for k in range(K + 1) if k not in records]
        raise ValueError("missing indices %s" % missing)
    values = [records[k] for k in range(K + 1)]
    if fmt == "cosine":
        return from_cosine_coeffs(values, dps=dps)
    return from_generators(values, dps=dps, strings=values)


def save_polynomial(p: TrigPoly, path, comment: str = None) -> None:
    """Write a polynomial file; reuses original strings when available."""
    digits = max(mp.dps, 30)  # enough to round-trip float-backed values
    lines = []
    if comment:
        for ln in comment.splitlines():
            lines.append("# " + ln)
    if p.c is not None:
        strings = p.c_strings or tuple(dec(x, digits) for x in p.c)
        for k, s in enumerate(strings):
            lines.append("%d %s" % (k, s))
    else:
        lines.append("format: cosine")
        for k, v in enumerate(p.b):
            lines.append("%d %s" % (k, dec(v, digits)))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _bundled(name: str, dps: int = None) -> TrigPoly:
    text = resources.files("zerofree").joinpath("data", name).read_text(encoding="utf-8")
    return parse_polynomial(text, dps=dps)


def bundled_p40(dps: int = None) -> TrigPoly:
    """Degree-40 polynomial behind the all-heights constant 55.241."""
    return _bundled("p40.txt", dps=dps)


def bundled_p46(dps: int = None) -> TrigPoly:
    """Degree-46 polynomial behind the asymptotic constant 48.1588."""
    return _bundled("p46.txt", dps=dps)


def ford_p4(dps: int = None) -> TrigPoly:
    """Ford's degree-4 polynomial (0.225 + cos x)^2 (0.9 + cos x)^2."""
    return expand_product_form([("0.225", 2), ("0.9", 2)], dps=dps)


def nielsen_p5(dps: int = None) -> TrigPoly:
    """Nielsen's degree-5 polynomial (1+cos x)(0.1974476+cos x)^2(0.8652559+cos x)^2."""
    return expand_product_form(
        [("0.1974476", 2), ("0.8652559", 2)], include_one_plus_cos=True, dps=dps
    )
