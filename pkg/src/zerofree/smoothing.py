"""Constants attached to the Heath-Brown style smoothing function.

For a qualifying polynomial with coefficients b_0, b_1, the angle theta
is the unique root in (0, pi/2) of

    b_0 sin^2(theta) = b_1 (1 - theta*cot(theta)).

The smoothing weight is w = g*g (autoconvolution) with
g(u) = (cos(u tan theta) - cos theta) sec^2 theta on |u| <= theta*cot(theta),
and everything downstream needs only closed-form functionals of w: the
value w(0), the Laplace-transform remainder W_0(z) with its decay bound
H(R), the derived bound C_5(R), and the derivative W'(0).  The h1/h4
families and the cubic exponential bound are the classical-region
auxiliaries.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf, mpc, cos, sin, tan, sec, csc, cot, exp, pi

from .digits import DEFAULT_DPS, workdps

__all__ = [
    "SmoothingConstants",
    "solve_theta",
    "w_at_zero",
    "W_prime_at_zero",
    "W0_eval",
    "H_of_R",
    "C5_of_R",
    "h1",
    "h4",
    "d1",
    "exp_cubic_bound",
    "cot_linear_slack",
]


@dataclass(frozen=True)
class SmoothingConstants:
    """theta and the derived closed-form constants for one polynomial."""

    theta: mpf
    w0: mpf
    Wprime0: mpf
    c0: mpf
    c1: mpf
    c2: mpf
    c3: mpf

    @property
    def cos_sq(self) -> mpf:
        return cos(self.theta) ** 2

    @classmethod
    def for_coeffs(cls, b0, b1, dps: int = None) -> "SmoothingConstants":
        with workdps(dps or max(mp.dps, DEFAULT_DPS)):
            th = solve_theta(b0, b1)
            c0, c1, c2, c3 = _w0_constants(th)
            return cls(
                theta=th,
                w0=w_at_zero(th),
                Wprime0=W_prime_at_zero(th),
                c0=c0, c1=c1, c2=c2, c3=c3,
            )

    @classmethod
    def for_polynomial(cls, p, dps: int = None) -> "SmoothingConstants":
        if not p.admissible:
            raise ValueError("polynomial is not admissible (needs b_1 > b_0)")
        return cls.for_coeffs(p.b[0], p.b[1], dps=dps)


def solve_theta(b0, b1, dps: int = None) -> mpf:
    """Root of b0 sin^2(t) = b1 (1 - t cot t) in (0, pi/2).

    Bracketed bisection down to width 1e-3, then Newton with the bracket
    maintained as a safety net (a Newton iterate leaving the bracket is
    replaced by its midpoint).  Requires b1 > b0 > 0: f > 0 near 0 and
    f(pi/2) = b0 - b1 < 0, so a sign change is guaranteed.
    """
    b0, b1 = mpf(b0), mpf(b1)
    if not b0 > 0:
        raise ValueError("b0 must be positive")
    if not b1 > b0:
        raise ValueError("b1 must exceed b0 (got b1 - b0 = %s)" % (b1 - b0))
    with workdps(dps or max(mp.dps, DEFAULT_DPS)):
        f = lambda t: b0 * sin(t) ** 2 - b1 * (1 - t * cot(t))
        fp = lambda t: b0 * sin(2 * t) + b1 * (cot(t) - t * csc(t) ** 2)
        lo = mpf(10) ** -8
        hi = pi / 2 - mpf(10) ** -8
        sign_lo = f(lo) > 0
        while hi - lo > mpf("1e-3"):
            mid = (lo + hi) / 2
            if (f(mid) > 0) == sign_lo:
                lo = mid
            else:
                hi = mid
        x = (lo + hi) / 2
        tol = mpf(10) ** (-(mp.dps - 3))
        for _ in range(mp.dps * 4):
            d = fp(x)
            nxt = x - f(x) / d if d != 0 else (lo + hi) / 2
            if not (lo < nxt < hi):
                nxt = (lo + hi) / 2
            if (f(nxt) > 0) == sign_lo:
                lo = nxt
            else:
                hi = nxt
            if abs(nxt - x) < tol:
                return nxt
            x = nxt
        return x


def w_at_zero(theta) -> mpf:
    """w(0) = (theta tan theta + 3 theta cot theta - 3) sec^2 theta."""
    t = mpf(theta)
    _check_first_quadrant(t)
    return (t * tan(t) + 3 * t * cot(t) - 3) * sec(t) ** 2


def W_prime_at_zero(theta) -> mpf:
    """W'(0) = [csc t (3(4t^2-5) + t(15-4t^2) cot t) - 3t sec t] / (3 sin t)."""
    t = mpf(theta)
    _check_first_quadrant(t)
    num = csc(t) * (3 * (4 * t**2 - 5) + t * (15 - 4 * t**2) * cot(t)) - 3 * t * sec(t)
    return num / (3 * sin(t))


def _w0_constants(t):
    c0 = 1 / (sin(t) * cos(t) ** 3)
    c1 = (t - sin(t) * cos(t)) * tan(t) ** 4
    c2 = tan(t) ** 3 * sin(t) ** 2
    c3 = (t - sin(t) * cos(t)) * tan(t) ** 2
    return c0, c1, c2, c3


def W0_eval(z, theta) -> mpc:
    """The Laplace-transform remainder W_0(z) = W(z) - w(0)/z."""
    t = mpf(theta)
    _check_first_quadrant(t)
    zz = mpc(z)
    if zz == 0:
        raise ValueError("z = 0 is a pole of W_0")
    tansq = tan(t) ** 2
    if zz**2 + tansq == 0:
        raise ValueError("z^2 = -tan^2(theta) is a pole of W_0")
    c0, c1, c2, c3 = _w0_constants(t)
    num = c0 * (c2 * ((zz + 1) ** 2 * exp(-2 * t * cot(t) * zz) + zz**2 - 1)
                - c1 * zz - c3 * zz**3)
    return num / (zz**2 * (zz**2 + tansq) ** 2)


def H_of_R(R, theta) -> mpf:
    """Decay constant with |W_0(z)| <= H(R)/|z|^3 for Re z >= -1, |z| >= R."""
    Rv, t = mpf(R), mpf(theta)
    _check_first_quadrant(t)
    if Rv < 3:
        raise ValueError("H(R) requires R >= 3")
    if tan(t) ** 2 >= Rv**2:
        raise ValueError("H(R) requires tan^2(theta) < R^2")
    c0, c1, c2, c3 = _w0_constants(t)
    inner = c2 * (Rv + 1) ** 2 / Rv**3 * (exp(2 * t * cot(t)) + 1) + c1 / Rv**2 + c3
    return c0 / (1 - tan(t) ** 2 / Rv**2) ** 2 * inner


def C5_of_R(R, theta) -> mpf:
    """C_5(R) = H(R)(R+1)^2 / (R^3 w(0)) + 1 + 1/R."""
    Rv = mpf(R)
    return H_of_R(Rv, theta) * (Rv + 1) ** 2 / (Rv**3 * w_at_zero(theta)) + 1 + 1 / Rv


def h1(u, lam, theta) -> mpf:
    """First classical-region auxiliary; requires 0 < theta < pi/2.

    h1(0, 1, theta) coincides with w_at_zero(theta); the support of
    h1(., 1, theta) ends at d1(theta) = 2 theta cot theta.
    """
    t, la, uu = mpf(theta), mpf(lam), mpf(u)
    _check_first_quadrant(t)
    if la <= 0:
        raise ValueError("lambda must be positive")
    s2 = sec(t) ** 2
    arg = la * uu * tan(t)
    return la * s2 * (
        la * s2 * (t / (la * tan(t)) - uu / 2) * cos(arg)
        + 2 * t / tan(t) - la * uu
        + sin(2 * t - arg) / sin(2 * t)
        - 2 * (1 + sin(t - arg) / sin(t))
    )


def h4(u, lam, theta) -> mpf:
    """Fourth classical-region auxiliary; requires pi/2 < theta < pi."""
    t, la, uu = mpf(theta), mpf(lam), mpf(u)
    if not (pi / 2 < t < pi):
        raise ValueError("h4 requires pi/2 < theta < pi")
    if la <= 0:
        raise ValueError("lambda must be positive")
    s2 = sec(t) ** 2
    arg = la * uu * tan(t)
    return la * s2 * (
        la * s2 * (-t / (la * tan(t)) - uu / 2) * cos(arg)
        - 2 * t / tan(t) - la * uu
        - sin(2 * t + arg) / sin(2 * t)
        + 2 * (1 + sin(t + arg) / sin(t))
    )


def d1(theta) -> mpf:
    """d1(theta) = 2 theta cot theta."""
    t = mpf(theta)
    _check_first_quadrant(t)
    return 2 * t * cot(t)


#: Largest y for which e^y <= 1 + y + y^2/2 + y^3/3.47 is guaranteed.
EXP_CUBIC_LIMIT = mpf("1.89355")


def exp_cubic_bound(y) -> mpf:
    """1 + y + y^2/2 + y^3/3.47, an upper bound for e^y on [0, 1.89355]."""
    yy = mpf(y)
    if yy > EXP_CUBIC_LIMIT:
        raise ValueError("cubic exponential bound only guaranteed for y <= 1.89355")
    return 1 + yy + yy**2 / 2 + yy**3 / mpf("3.47")


def cot_linear_slack(x) -> mpf:
    """cot(x) - 1/x + 0.3334 x; non-negative on the small-x ranges used."""
    xx = mpf(x)
    if xx <= 0:
        raise ValueError("x must be positive")
    return cot(xx) - 1 / xx + mpf("0.3334") * xx


def _check_first_quadrant(t):
    if not (0 < t < pi / 2):
        raise ValueError("theta must lie in (0, pi/2)")
