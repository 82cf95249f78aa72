"""Simulated-annealing search over generator coefficients.

The state is a coefficient list c_0 = 1, c_1..c_K; the polynomial it
generates is non-negative by construction, so the only admissibility
constraints on a move are b_k >= 0 for every k and b_1 > b_0.  One move
perturbs a single c_k by s ~ U[-S, S] and refreshes the autocorrelations
in O(K).  Moves that improve the objective are always kept; worsening
moves are kept with probability exp(-delta/T).  The step sizes S and
temperatures T each sweep a decreasing schedule, the temperatures ending
at an exact 0 (greedy) level.

The hot loop runs in hardware floats; ambiguous incumbent comparisons
(within 1e-6) are settled at 50 significant digits, and the final result
is re-verified at 50 digits before it is returned.

Reproducibility contract: chain i draws from
numpy PCG64 seeded with SeedSequence(seed, spawn_key=(i,)); identical
(config, seed, chains) reproduce the best polynomial bit-for-bit.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field

import numpy as np

from mpmath import mp, mpf

from . import regions, trigpoly
from .digits import DEFAULT_DPS, dec, workdps

__all__ = [
    "AnnealConfig",
    "AnnealResult",
    "ChainState",
    "random_init",
    "step",
    "anneal",
    "append_run_log",
]

GENERATOR_ID = "numpy PCG64, chain streams SeedSequence(seed, spawn_key=(chain,))"

_TWO_THIRDS = 2.0 / 3.0
_FT23 = (4.0 / 3.0) ** _TWO_THIRDS


def _default_steps():
    return tuple(60.0 * (2.0 / 60.0) ** (i / 7.0) for i in range(8))


def _default_temps():
    return tuple(1.0 * (1e-3) ** (i / 10.0) for i in range(11)) + (0.0,)


@dataclass(frozen=True)
class AnnealConfig:
    """Search configuration.

    ``objective`` selects what a state is scored by: "R2" is the
    asymptotic constant B^(2/3)/q, "R1" the all-heights constant from
    the largest closing M1 (much slower per evaluation, hence the
    smaller default iteration count).  The perturbed index is drawn
    from 1..K-1, so c_K keeps its initial value; ``include_top``
    extends the range to 1..K.
    """

    degree: int
    seed: int = 0
    chains: int = 1
    init_range: float = 150.0
    step_schedule: tuple = field(default_factory=_default_steps)
    temp_schedule: tuple = field(default_factory=_default_temps)
    iters_per_level: int = None
    objective: str = "R2"
    richert_b: float = 4.45
    include_top: bool = False
    initial_c: tuple = None

    def __post_init__(self):
        if self.degree < 2:
            raise ValueError("degree must be >= 2")
        if self.chains < 1:
            raise ValueError("chains must be >= 1")
        if self.init_range <= 0:
            raise ValueError("init_range must be positive")
        if self.objective not in ("R2", "R1"):
            raise ValueError("objective must be 'R2' or 'R1'")
        steps = tuple(float(s) for s in self.step_schedule)
        temps = tuple(float(t) for t in self.temp_schedule)
        if any(b >= a for a, b in zip(steps, steps[1:])) or not steps:
            raise ValueError("step schedule must be strictly decreasing")
        if any(b >= a for a, b in zip(temps, temps[1:])) or not temps:
            raise ValueError("temperature schedule must be strictly decreasing")
        if temps[-1] != 0.0:
            raise ValueError("temperature schedule must end at exactly 0")
        object.__setattr__(self, "step_schedule", steps)
        object.__setattr__(self, "temp_schedule", temps)
        if self.iters_per_level is None:
            object.__setattr__(self, "iters_per_level",
                               8000 if self.objective == "R2" else 250)
        if self.iters_per_level < 1:
            raise ValueError("iters_per_level must be >= 1")
        if self.initial_c is not None:
            c = tuple(float(x) for x in self.initial_c)
            if len(c) != self.degree + 1:
                raise ValueError("initial_c must have degree + 1 entries")
            if c[0] != 1.0:
                raise ValueError("initial_c must have c_0 = 1")
            object.__setattr__(self, "initial_c", c)

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree, "seed": self.seed, "chains": self.chains,
            "init_range": self.init_range,
            "step_schedule": list(self.step_schedule),
            "temp_schedule": list(self.temp_schedule),
            "iters_per_level": self.iters_per_level,
            "objective": self.objective, "richert_b": self.richert_b,
            "include_top": self.include_top,
            "initial_c": list(self.initial_c) if self.initial_c else None,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "AnnealConfig":
        kw = dict(d)
        for key in ("step_schedule", "temp_schedule", "initial_c"):
            if kw.get(key) is not None:
                kw[key] = tuple(kw[key])
        return cls(**kw)

    def config_hash(self) -> str:
        blob = json.dumps(self.to_json_dict(), sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass
class AnnealResult:
    best: trigpoly.TrigPoly
    best_objective: float
    objective: str
    seed: int
    chains: int
    best_chain: int
    acceptance: list
    generator: str
    config_hash: str
    hp_objective: str
    hp_verified: bool

    def summary(self) -> str:
        return ("objective %s = %.12g (chain %d of %d, seed %d, %s)"
                % (self.objective, self.best_objective, self.best_chain,
                   self.chains, self.seed,
                   "verified" if self.hp_verified else "PRECISION MISMATCH"))


# ---------------------------------------------------------------------------
# float-precision scoring
# ---------------------------------------------------------------------------

def _theta_newton(b1: float, th: float) -> float:
    """Float root of sin^2 t = b1 (1 - t cot t), warm-started at ``th``."""
    lo, hi = 1e-9, math.pi / 2 - 1e-9
    if not (lo < th < hi):
        th = 1.1
    for _ in range(60):
        s = math.sin(th)
        c = math.cos(th)
        cot = c / s
        f = s * s - b1 * (1.0 - th * cot)
        if f > 0.0:
            lo = th
        else:
            hi = th
        fp = 2.0 * s * c + b1 * (cot - th / (s * s))
        nxt = th - f / fp if fp != 0.0 else 0.5 * (lo + hi)
        if not (lo < nxt < hi):
            nxt = 0.5 * (lo + hi)
        if abs(nxt - th) < 1e-15:
            return nxt
        th = nxt
    return th


def _q_float(b1: float, bsum: float, th_guess: float):
    th = _theta_newton(b1, th_guess)
    cs = math.cos(th)
    q = cs * cs * _FT23 * (1.0 / bsum) * (1.0 + 1.0 / bsum) ** (-1.0 / 3.0)
    return q, th


def _r2_float(b1: float, bsum: float, b23: float, th_guess: float):
    q, th = _q_float(b1, bsum, th_guess)
    return b23 / q, th


def _r1_float(b1: float, bsum: float, K: int, B: float, th_guess: float,
              A: float = 76.2, E: float = 1.8821259, R: int = 416,
              log_t0: float = 52238.0):
    """All-heights constant B^(2/3)/M1* from the largest closing M1.

    Float transcription of the verification chain with the exact
    near-zero multiplier 0.087 pi^2 b1.
    """
    th = _theta_newton(b1, th_guess)
    s, c = math.sin(th), math.cos(th)
    tn, ct = s / c, c / s
    sec2 = 1.0 / (c * c)
    cos2 = c * c
    w0 = (th * tn + 3.0 * th * ct - 3.0) * sec2
    wp0 = ((1.0 / s) * (3.0 * (4.0 * th * th - 5.0)
                        + th * (15.0 - 4.0 * th * th) * ct)
           - 3.0 * th / c) / (3.0 * s)
    ratio = abs(wp0) * b1 / w0
    c0 = 1.0 / (s * c ** 3)
    c1 = (th - s * c) * tn ** 4
    c2 = tn ** 3 * s * s
    c3 = (th - s * c) * tn * tn
    H = c0 / (1.0 - tn * tn / (R * R)) ** 2 \
        * (c2 * (R + 1.0) ** 2 / R ** 3 * (math.exp(2.0 * th * ct) + 1.0)
           + c1 / (R * R) + c3)
    C5 = H * (R + 1.0) ** 2 / (R ** 3 * w0) + 1.0 + 1.0 / R
    L1 = log_t0 + math.log(K + math.exp(-min(log_t0, 700.0)))
    L2 = math.log(L1)
    llt0 = math.log(log_t0)
    b23 = B ** _TWO_THIRDS
    kappa1 = (L1 / L2) ** _TWO_THIRDS / (log_t0 ** _TWO_THIRDS * llt0 ** (1.0 / 3.0))
    gamma = 0.5772156649015329
    kappa2 = gamma * (L2 / (B * L1)) ** _TWO_THIRDS
    kappa3 = 1.0 / 3.0 + 5.409 + 209.1 / (math.log(K) + log_t0)
    kappa4 = math.log(K)  # K + 1/t0 and the 1e-100 slack vanish in floats
    eta0 = E * (L2 / (B * L1)) ** _TWO_THIRDS
    t1m = 0.087 * math.pi ** 2 * b1
    main = (bsum + 1.0) / (3.0 * E) + bsum * math.sqrt(E) / 2.0
    lA, lB, lE = math.log(A), math.log(B), math.log(E)
    num = cos2 - ratio * kappa4 / log_t0
    lgL2 = math.log(L2)

    def closes(m1: float) -> bool:
        if eta0 >= 0.25 or m1 / (E * L2) > 1.0 / (R + 1.0):
            return False
        y1 = t1m * kappa1 * m1 / (E * E) \
            + (bsum * lA + _TWO_THIRDS * lB - lE + kappa2 * E / b23) / (2.0 * E) \
            + C5 * bsum * m1 * (5.392 / math.sqrt(E) + 4.0 / (5.637 * E * E))
        y2 = C5 * bsum * m1 / (E * E) * ((lA + _TWO_THIRDS * lB - lE) / 1.879 + 0.213)
        y3 = C5 * bsum * m1 * (kappa3 - 10.784 * B) / B ** (4.0 / 3.0)
        y4 = -1.0 / (3.0 * E)
        y5 = -C5 * bsum * m1 * 2.0 / (3.0 * 1.879 * E * E)
        Y = y1 / L2 + y2 / (L2 * L2) + y3 / (L1 ** (1.0 / 3.0) * L2 ** _TWO_THIRDS) \
            + y4 * lgL2 / L2 + y5 * lgL2 / (L2 * L2)
        return num / (main + Y) > m1

    lo, hi = 1e-6, E * L2 / (R + 1.0)
    if not closes(lo):
        return float("inf"), th
    if closes(hi):
        return b23 / hi, th
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if closes(mid):
            lo = mid
        else:
            hi = mid
    return b23 / lo, th


def _hp_objective(c, objective: str, B, dps: int = DEFAULT_DPS):
    """Re-score a generator vector at high precision."""
    with workdps(dps):
        p = trigpoly.from_generators([mpf(x) for x in c])
        if objective == "R2":
            return regions.asymptotic_r2(p, B=mpf(B))
        params = regions.RegionParams(poly=p, B=mpf(B))
        m1 = regions.best_closing_m1(params, tol="1e-12")
        return mpf(B) ** (mpf(2) / 3) / m1


# ---------------------------------------------------------------------------
# chain state and moves
# ---------------------------------------------------------------------------

@dataclass
class ChainState:
    """Mutable per-chain search state (single-threaded use only)."""

    c: list
    r: list           # raw autocorrelations r_m = sum_j c_j c_{j+m}
    objective: float
    theta: float
    degree: int
    kind: str
    B: float
    b23: float
    K_top: int        # largest perturbable index

    def b1(self) -> float:
        return 2.0 * self.r[1] / self.r[0]

    def bsum(self) -> float:
        return 2.0 * sum(self.r[1:]) / self.r[0]

    def poly(self) -> trigpoly.TrigPoly:
        return trigpoly.from_generators(self.c)


def _autocorr_raw(c):
    K = len(c) - 1
    return [sum(c[j] * c[j + m] for j in range(K - m + 1)) for m in range(K + 1)]


def _score(kind, b1, bsum, K, B, b23, th_guess):
    if kind == "R2":
        return _r2_float(b1, bsum, b23, th_guess)
    return _r1_float(b1, bsum, K, B, th_guess)


def random_init(config: AnnealConfig, rng: np.random.Generator) -> trigpoly.TrigPoly:
    """Admissible random start: c_0 = 1, c_k ~ U[0, H], retried until
    b_1 > b_0 (at most 1e6 attempts)."""
    c, _ = _random_init_arrays(config, rng)
    return trigpoly.from_generators(c)


def _random_init_arrays(config: AnnealConfig, rng: np.random.Generator):
    K, H = config.degree, config.init_range
    for _ in range(10 ** 6):
        c = [1.0] + [rng.uniform(0.0, H) for _ in range(K)]
        r = _autocorr_raw(c)
        if 2.0 * r[1] / r[0] > 1.0:
            return c, r
    raise RuntimeError("no admissible start after 1e6 attempts; "
                       "check degree/init_range")


def _initial_state(config: AnnealConfig, rng: np.random.Generator) -> ChainState:
    if config.initial_c is not None:
        c = list(config.initial_c)
        r = _autocorr_raw(c)
        if 2.0 * r[1] / r[0] <= 1.0:
            raise ValueError("initial_c is not admissible")
    else:
        c, r = _random_init_arrays(config, rng)
    b23 = config.richert_b ** _TWO_THIRDS
    b1 = 2.0 * r[1] / r[0]
    bsum = 2.0 * sum(r[1:]) / r[0]
    obj, th = _score(config.objective, b1, bsum, config.degree,
                     config.richert_b, b23, 1.1)
    return ChainState(c=c, r=r, objective=obj, theta=th, degree=config.degree,
                      kind=config.objective, B=config.richert_b, b23=b23,
                      K_top=config.degree if config.include_top
                      else config.degree - 1)


def step(state: ChainState, S: float, T: float,
         rng: np.random.Generator) -> str:
    """One annealing move; mutates ``state`` and reports the outcome.

    Outcomes: "improve", "metropolis" (worse but kept), "reject_bounds"
    (a b_k went negative or b_1 <= b_0), "reject_metropolis".
    """
    K = state.degree
    k = int(rng.integers(1, state.K_top + 1))
    s = rng.uniform(-S, S)
    c, r = state.c, state.r
    ck = c[k]
    r0_new = r[0] + 2.0 * s * ck + s * s
    r_new = [r0_new]
    for m in range(1, K + 1):
        v = 0.0
        if k + m <= K:
            v = c[k + m]
        if k - m >= 0:
            v += c[k - m]
        rm = r[m] + s * v
        if rm < 0.0:
            return "reject_bounds"
        r_new.append(rm)
    b1 = 2.0 * r_new[1] / r0_new
    if b1 <= 1.0:
        return "reject_bounds"
    bsum = 2.0 * sum(r_new[1:]) / r0_new
    obj, th = _score(state.kind, b1, bsum, K, state.B, state.b23, state.theta)
    delta = obj - state.objective
    if delta <= 0.0 or (T > 0.0 and rng.random() < math.exp(-delta / T)):
        c[k] = ck + s
        state.r = r_new
        state.objective = obj
        state.theta = th
        return "improve" if delta <= 0.0 else "metropolis"
    return "reject_metropolis"


def _run_chain(config: AnnealConfig, chain_index: int):
    rng = np.random.Generator(np.random.PCG64(
        np.random.SeedSequence(config.seed, spawn_key=(chain_index,))))
    state = _initial_state(config, rng)
    best_obj = state.objective
    best_c = list(state.c)
    best_hp = None
    stats = []
    for S in config.step_schedule:
        for T in config.temp_schedule:
            counts = {"improve": 0, "metropolis": 0, "reject_bounds": 0,
                      "reject_metropolis": 0}
            for _ in range(config.iters_per_level):
                counts[step(state, S, T, rng)] += 1
                if state.objective < best_obj:
                    if state.objective > best_obj - 1e-6:
                        # ambiguous in float: settle at high precision
                        cand_hp = _hp_objective(state.c, config.objective,
                                                config.richert_b)
                        if best_hp is None:
                            best_hp = _hp_objective(best_c, config.objective,
                                                    config.richert_b)
                        if cand_hp < best_hp:
                            best_obj, best_c, best_hp = \
                                state.objective, list(state.c), cand_hp
                    else:
                        best_obj, best_c, best_hp = \
                            state.objective, list(state.c), None
            stats.append({"chain": chain_index, "S": S, "T": T,
                          "proposed": config.iters_per_level, **counts})
    return best_obj, best_c, stats


def anneal(config: AnnealConfig) -> AnnealResult:
    """Run ``config.chains`` independent chains and keep the best result.

    Deterministic for fixed (config, seed, chains); ties across chains
    break toward the lowest chain index.  The winner is re-scored at 50
    significant digits; a float-vs-exact mismatch above 1e-8 clears
    ``hp_verified``.
    """
    best = None
    all_stats = []
    for i in range(config.chains):
        obj, c, stats = _run_chain(config, i)
        all_stats.extend(stats)
        if best is None or obj < best[0]:
            best = (obj, c, i)
    obj, c, chain_idx = best
    hp = _hp_objective(c, config.objective, config.richert_b)
    verified = abs(float(hp) - obj) <= 1e-8
    return AnnealResult(
        best=trigpoly.from_generators(c),
        best_objective=obj,
        objective=config.objective,
        seed=config.seed,
        chains=config.chains,
        best_chain=chain_idx,
        acceptance=all_stats,
        generator=GENERATOR_ID,
        config_hash=config.config_hash(),
        hp_objective=dec(hp, 30),
        hp_verified=verified,
    )


def append_run_log(path, config: AnnealConfig, result: AnnealResult) -> None:
    """Append one JSON line per run: seed, config hash, best objective,
    coefficients."""
    record = {
        "seed": config.seed,
        "config_hash": result.config_hash,
        "objective": result.objective,
        "best_objective": result.best_objective,
        "hp_objective": result.hp_objective,
        "hp_verified": result.hp_verified,
        "generator": result.generator,
        "coefficients": [float(x) for x in result.best.c],
    }
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(record) + "\n")
