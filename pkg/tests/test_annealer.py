"""Annealing search: determinism, move mechanics, objectives, logging."""

import json
import math

import numpy as np
import pytest
from mpmath import mp, mpf

from zerofree import regions, trigpoly
from zerofree.annealer import (AnnealConfig, _autocorr_raw, _initial_state,
                               _r1_float, anneal, append_run_log,
                               random_init, step)

SMALL = dict(step_schedule=(40.0, 10.0, 2.5), temp_schedule=(0.5, 0.05, 0.0),
             iters_per_level=1500)


def _rng(seed, chain=0):
    return np.random.Generator(np.random.PCG64(
        np.random.SeedSequence(seed, spawn_key=(chain,))))


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

def test_config_validation():
    with pytest.raises(ValueError):
        AnnealConfig(degree=1)
    with pytest.raises(ValueError):
        AnnealConfig(degree=4, chains=0)
    with pytest.raises(ValueError):
        AnnealConfig(degree=4, step_schedule=(10.0, 10.0), temp_schedule=(1.0, 0.0))
    with pytest.raises(ValueError):
        AnnealConfig(degree=4, temp_schedule=(1.0, 0.5))  # must end at 0
    with pytest.raises(ValueError):
        AnnealConfig(degree=4, objective="R3")
    with pytest.raises(ValueError):
        AnnealConfig(degree=4, initial_c=(2.0, 1.0, 1.0, 1.0, 1.0))
    with pytest.raises(ValueError):
        AnnealConfig(degree=4, initial_c=(1.0, 1.0))


def test_config_defaults_and_hash():
    cfg = AnnealConfig(degree=6)
    assert cfg.iters_per_level == 8000
    assert cfg.step_schedule[0] == 60.0 and abs(cfg.step_schedule[-1] - 2.0) < 1e-12
    assert len(cfg.temp_schedule) == 12 and cfg.temp_schedule[-1] == 0.0
    assert AnnealConfig(degree=6, objective="R1").iters_per_level == 250
    assert cfg.config_hash() == AnnealConfig(degree=6).config_hash()
    assert cfg.config_hash() != AnnealConfig(degree=7).config_hash()
    again = AnnealConfig.from_json_dict(json.loads(json.dumps(cfg.to_json_dict())))
    assert again == cfg


# ---------------------------------------------------------------------------
# initialization
# ---------------------------------------------------------------------------

def test_random_init_deterministic_and_admissible():
    cfg = AnnealConfig(degree=2, init_range=100.0, seed=7)
    p = random_init(cfg, _rng(7))
    assert [float(x) for x in p.c] == [1.0, 57.949877695444606,
                                       61.332923735393805]
    assert p.admissible
    q = random_init(cfg, _rng(8))
    assert [float(x) for x in q.c] != [float(x) for x in p.c]


def test_random_init_always_admissible():
    for seed in range(12):
        cfg = AnnealConfig(degree=int(2 + seed % 5), seed=seed)
        p = random_init(cfg, _rng(seed))
        assert p.admissible
        assert all(v >= 0 for v in p.b) and p.b[1] > p.b[0]


def test_warm_start_admissibility_check():
    cfg = AnnealConfig(degree=4, initial_c=(1.0, 0.1, 0.1, 0.1, 0.1))
    with pytest.raises(ValueError):
        _initial_state(cfg, _rng(0))


# ---------------------------------------------------------------------------
# move mechanics
# ---------------------------------------------------------------------------

def _b_of(r):
    return [2.0 * v / r[0] for v in r[1:]]


def test_incremental_autocorrelation_agrees_with_full():
    cfg = AnnealConfig(degree=12, seed=5)
    rng = _rng(5)
    state = _initial_state(cfg, rng)
    for i in range(10000):
        step(state, 20.0, 0.05, rng)
        if i % 500 == 0:
            full = _autocorr_raw(state.c)
            assert max(abs(a - b) for a, b in
                       zip(_b_of(full), _b_of(state.r))) < 1e-10
    full = _autocorr_raw(state.c)
    assert max(abs(a - b) for a, b in zip(_b_of(full), _b_of(state.r))) < 1e-10


def test_zero_temperature_only_improves():
    cfg = AnnealConfig(degree=8, seed=11)
    rng = _rng(11)
    state = _initial_state(cfg, rng)
    prev = state.objective
    for _ in range(2000):
        outcome = step(state, 15.0, 0.0, rng)
        assert outcome != "metropolis"
        assert state.objective <= prev + 1e-15
        prev = state.objective


def test_rejected_move_restores_state():
    cfg = AnnealConfig(degree=6, seed=13)
    rng = _rng(13)
    state = _initial_state(cfg, rng)
    for _ in range(500):
        before_c = list(state.c)
        before_r = list(state.r)
        before_obj = state.objective
        outcome = step(state, 25.0, 0.0, rng)
        if outcome.startswith("reject"):
            assert state.c == before_c
            assert state.r == before_r
            assert state.objective == before_obj


def test_step_leaves_top_coefficient_alone_by_default():
    cfg = AnnealConfig(degree=5, seed=3)
    rng = _rng(3)
    state = _initial_state(cfg, rng)
    top = state.c[-1]
    for _ in range(3000):
        step(state, 30.0, 0.2, rng)
    assert state.c[-1] == top
    cfg2 = AnnealConfig(degree=5, seed=3, include_top=True, **SMALL)
    rng2 = _rng(3)
    state2 = _initial_state(cfg2, rng2)
    top2 = state2.c[-1]
    for _ in range(3000):
        step(state2, 30.0, 0.2, rng2)
    assert state2.c[-1] != top2


# ---------------------------------------------------------------------------
# full runs
# ---------------------------------------------------------------------------

def test_anneal_deterministic_regression():
    cfg = AnnealConfig(degree=16, seed=42, chains=3, **SMALL)
    res = anneal(cfg)
    assert res.best_objective == 49.30164522841712
    assert res.best_chain == 0
    assert res.hp_verified
    res2 = anneal(cfg)
    assert res2.best_objective == res.best_objective
    assert [float(a) for a in res.best.c] == [float(a) for a in res2.best.c]


def test_anneal_result_contract():
    cfg = AnnealConfig(degree=6, seed=9, chains=2, **SMALL)
    res = anneal(cfg)
    assert res.best.admissible
    # objective matches a fresh recomputation
    fresh = regions.asymptotic_r2(res.best, B="4.45")
    assert abs(float(fresh) - res.best_objective) < 1e-8
    assert res.generator.startswith("numpy PCG64")
    assert res.chains == 2 and res.seed == 9
    levels = {(s["chain"], s["S"], s["T"]) for s in res.acceptance}
    assert len(levels) == 2 * len(cfg.step_schedule) * len(cfg.temp_schedule)
    for s in res.acceptance:
        total = s["improve"] + s["metropolis"] + s["reject_bounds"] \
            + s["reject_metropolis"]
        assert total == s["proposed"] == cfg.iters_per_level


def test_best_never_exceeds_initial_objective():
    for seed in range(6):
        cfg = AnnealConfig(degree=7, seed=seed, step_schedule=(30.0, 5.0),
                           temp_schedule=(0.3, 0.0), iters_per_level=400)
        init_obj = _initial_state(cfg, _rng(seed)).objective
        res = anneal(cfg)
        assert res.best_objective <= init_obj


def test_hot_level_accepts_more_than_frozen_level():
    # sign test over 12 seeds: acceptance at the top temperature must
    # exceed acceptance at T = 0 in at least 10 runs (p < 0.05 would
    # already hold at 10 of 12 under a fair coin)
    wins = 0
    for seed in range(12):
        cfg = AnnealConfig(degree=8, seed=seed, step_schedule=(12.0,),
                           temp_schedule=(1.0, 0.05, 0.0), iters_per_level=1200)
        res = anneal(cfg)
        by_temp = {s["T"]: s for s in res.acceptance}
        rate = lambda s: (s["improve"] + s["metropolis"]) / s["proposed"]
        if rate(by_temp[1.0]) > rate(by_temp[0.0]):
            wins += 1
    assert wins >= 10


def test_warm_start_runs_from_given_state():
    base = trigpoly.ford_p4()
    cfg = AnnealConfig(degree=4, seed=2, initial_c=tuple(
        float(x / base.c[0]) for x in base.c),
        step_schedule=(0.5, 0.1), temp_schedule=(0.01, 0.0),
        iters_per_level=500)
    res = anneal(cfg)
    # small steps around an already-good state must not lose quality
    assert res.best_objective <= float(regions.asymptotic_r2(base)) + 1e-12


def test_r1_objective_matches_high_precision_chain():
    p40 = trigpoly.bundled_p40()
    r1f, _ = _r1_float(float(p40.b[1]), float(p40.b_sum), 40, 4.45, 1.1)
    params = regions.RegionParams(poly=p40)  # exact near-zero multiplier
    with mp.workdps(50):
        m1 = regions.best_closing_m1(params, tol="1e-12")
        r1hp = float(mpf("4.45") ** (mpf(2) / 3) / m1)
    assert abs(r1f - r1hp) / r1hp < 1e-9


def test_r1_anneal_smoke():
    cfg = AnnealConfig(degree=5, seed=1, objective="R1",
                       step_schedule=(30.0, 5.0), temp_schedule=(0.3, 0.0),
                       iters_per_level=120)
    res = anneal(cfg)
    assert res.objective == "R1"
    assert res.hp_verified
    assert res.best_objective > 48.0  # cannot beat the asymptotic limit


def test_run_log_append(tmp_path):
    cfg = AnnealConfig(degree=4, seed=6, step_schedule=(20.0, 4.0),
                       temp_schedule=(0.2, 0.0), iters_per_level=200)
    res = anneal(cfg)
    log = tmp_path / "runs.jsonl"
    append_run_log(log, cfg, res)
    append_run_log(log, cfg, res)
    lines = log.read_text().strip().splitlines()
    assert len(lines) == 2
    rec = json.loads(lines[0])
    assert rec["seed"] == 6
    assert rec["config_hash"] == cfg.config_hash()
    assert rec["best_objective"] == res.best_objective
    assert rec["coefficients"][0] == 1.0
    assert rec["generator"].startswith("numpy PCG64")


def test_two_phase_workflow():
    # phase one optimizes the asymptotic constant; its winner seeds a
    # short all-heights phase, which must not end worse than it started
    phase1 = anneal(AnnealConfig(degree=6, seed=21, step_schedule=(30.0, 6.0),
                                 temp_schedule=(0.3, 0.0), iters_per_level=600))
    start = tuple(float(x) for x in phase1.best.c)
    r1_start, _ = _r1_float(float(phase1.best.b[1]), float(phase1.best.b_sum),
                            6, 4.45, 1.1)
    phase2 = anneal(AnnealConfig(degree=6, seed=22, objective="R1",
                                 initial_c=start, step_schedule=(2.0, 0.5),
                                 temp_schedule=(0.05, 0.0), iters_per_level=150))
    assert phase2.best_objective <= r1_start + 1e-9
    assert phase2.hp_verified
