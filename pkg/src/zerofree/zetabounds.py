"""Analytic input bounds: growth of zeta and zero-counting estimates.

All heights can be far beyond floating-point range, so the log-domain
variants (suffix ``_log``) are the primary entry points; the plain-height
wrappers accept anything mpmath can represent.

Constants carried here:
  * Richert growth bound |zeta(s)| <= A t^(B(1-sigma)^(3/2)) (log t)^(2/3)
    with A = 76.2, B = 4.45;
  * the bound zeta(sigma) <= e^(gamma(sigma-1))/(sigma-1) for sigma > 1;
  * the sub-Weyl bound |zeta(1/2+it)| <= 307.098 t^(27/164);
  * the N(T) error bound 0.1038 log T + 0.2573 log log T + 9.3675;
  * the zero-count and zero-sum bounds built from them.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import e, exp, log, mp, mpf, sqrt

from .digits import euler_gamma

__all__ = [
    "RichertParams",
    "LogScales",
    "SUBWEYL_X",
    "SUBWEYL_EXPONENT",
    "ramare_log_zeta",
    "subweyl_J",
    "subweyl_J_log",
    "NT_error",
    "N_t_eta_bound",
    "zero_sum_bound",
]

#: sub-Weyl bound |zeta(1/2 + it)| <= SUBWEYL_X * t^SUBWEYL_EXPONENT.
SUBWEYL_X = "307.098"
SUBWEYL_EXPONENT = (27, 164)


@dataclass(frozen=True)
class RichertParams:
    """Growth-bound constants; defaults A = 76.2, B = 4.45."""

    A: mpf = "76.2"
    B: mpf = "4.45"

    def __post_init__(self):
        with mp.workdps(max(mp.dps, 60)):
            object.__setattr__(self, "A", mpf(self.A))
            object.__setattr__(self, "B", mpf(self.B))
        if self.A <= 0 or self.B <= 0:
            raise ValueError("Richert constants must be positive")


@dataclass(frozen=True)
class LogScales:
    """L1 = log(Kt + 1) and L2 = log L1 for a height t and degree K."""

    L1: mpf
    L2: mpf
    log_t: mpf
    K: int

    @classmethod
    def from_log_t(cls, log_t, K: int) -> "LogScales":
        lt = mpf(log_t)
        L1 = lt + log(K + exp(-lt))  # log(K t + 1), overflow-free
        if L1 <= 1:
            raise ValueError("need Kt + 1 > e so that L2 > 0")
        return cls(L1=L1, L2=log(L1), log_t=lt, K=int(K))


def ramare_log_zeta(eta) -> mpf:
    """Upper bound gamma*eta - log(eta) for log zeta(1 + eta), eta > 0."""
    ee = mpf(eta)
    if ee <= 0:
        raise ValueError("eta must be positive")
    return euler_gamma() * ee - log(ee)


def subweyl_J_log(log_t) -> mpf:
    """J(t) = (27/164) log t + log 307.098, taking log t directly."""
    return mpf(27) / 164 * mpf(log_t) + log(mpf(SUBWEYL_X))


def subweyl_J(t) -> mpf:
    """J(t) for a plain height t >= 3."""
    tt = mpf(t)
    if tt < 3:
        raise ValueError("sub-Weyl bound stated for t >= 3")
    return subweyl_J_log(log(tt))


def NT_error(T) -> mpf:
    """Right side of the N(T) error bound, T >= e."""
    TT = mpf(T)
    if TT < e:
        raise ValueError("N(T) bound stated for T >= e")
    lt = log(TT)
    return mpf("0.1038") * lt + mpf("0.2573") * log(lt) + mpf("9.3675")


def _check_eta_t(t, eta, t_min):
    tt, ee = mpf(t), mpf(eta)
    if tt < t_min:
        raise ValueError("height t must be >= %s" % t_min)
    if not (0 < ee <= mpf(1) / 4):
        raise ValueError("eta must lie in (0, 1/4]")
    return tt, ee


def N_t_eta_bound(t, eta, params: RichertParams = None) -> mpf:
    """Bound for N(t, eta), the zero count within eta of 1 + it.

    1.3478 eta^(3/2) B log t + 0.479 + (log A - log eta + (2/3) log log t)/1.879,
    for t >= 100 and 0 < eta <= 1/4.
    """
    params = params or RichertParams()
    tt, ee = _check_eta_t(t, eta, 100)
    lt = log(tt)
    return (
        mpf("1.3478") * ee ** mpf("1.5") * params.B * lt
        + mpf("0.479")
        + (log(params.A) - log(ee) + mpf(2) / 3 * log(lt)) / mpf("1.879")
    )


def zero_sum_bound(t, eta, N_t_eta, params: RichertParams = None) -> mpf:
    """Bound for sum over |1 + it - rho| >= eta of |1 + it - rho|^(-2).

    [5.409 + 5.392 B (1/sqrt(eta) - 2)] log t + 206.7
      + (1/eta^2) { (log A - log eta + (2/3) log log t)/1.879 + 0.213 - N(t, eta) },
    for t >= 10000 and 0 < eta <= 1/4.
    """
    params = params or RichertParams()
    tt, ee = _check_eta_t(t, eta, 10000)
    lt = log(tt)
    main = (mpf("5.409") + mpf("5.392") * params.B * (1 / sqrt(ee) - 2)) * lt
    inner = (log(params.A) - log(ee) + mpf(2) / 3 * log(lt)) / mpf("1.879") \
        + mpf("0.213") - mpf(N_t_eta)
    return main + mpf("206.7") + inner / ee**2
