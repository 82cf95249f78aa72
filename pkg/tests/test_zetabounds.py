"""Growth and zero-counting bounds: values, domains, transcription guards."""

import numpy as np
import pytest
from mpmath import e, log, mp, mpf, pi, sqrt, zeta

import oracles
from zerofree.digits import EULER_GAMMA_60, euler_gamma
from zerofree.zetabounds import (LogScales, N_t_eta_bound, NT_error,
                                 RichertParams, ramare_log_zeta, subweyl_J,
                                 subweyl_J_log, zero_sum_bound)


def test_euler_gamma_literal_matches_mpmath():
    with mp.workdps(60):
        from mpmath import euler
        assert abs(euler_gamma() - +euler) < mpf("1e-59")
    assert len(EULER_GAMMA_60.split(".")[1]) == 60


def test_zeta_oracle_self_check():
    with mp.workdps(50):
        for s in ("2", "1.25", "1.1", "3.5"):
            assert abs(oracles.zeta_em(s) - zeta(mpf(s))) < mpf("1e-35")


def test_ramare_bound_known_value_at_one():
    with mp.workdps(50):
        bound = ramare_log_zeta(1)
        assert abs(bound - euler_gamma()) < mpf("1e-49")
        assert log(pi ** 2 / 6) <= bound  # log zeta(2) under the bound


def test_ramare_bound_dominates_zeta_oracle():
    with mp.workdps(50):
        for eta in ("0.25", "0.1", "0.05", "1.5"):
            lhs = log(oracles.zeta_em(1 + mpf(eta)))
            assert lhs <= ramare_log_zeta(eta)
        assert abs(ramare_log_zeta("0.25")
                   - mpf("1.530598277345273833986092")) < mpf("1e-23")


def test_ramare_bound_blows_up_at_zero():
    with mp.workdps(30):
        vals = [ramare_log_zeta(mpf(10) ** -k) for k in range(1, 8)]
        assert all(b > a for a, b in zip(vals, vals[1:]))
    with pytest.raises(ValueError):
        ramare_log_zeta(0)


def test_subweyl_J_value_and_monotonicity():
    with mp.workdps(50):
        assert abs(subweyl_J(3) - mpf("5.908036011194052626418658")) < mpf("1e-22")
        ts = [3, 10, 100, 10 ** 6]
        vals = [subweyl_J(t) for t in ts]
        assert all(b > a for a, b in zip(vals, vals[1:]))
        assert abs(subweyl_J(1000) - subweyl_J_log(log(mpf(1000)))) < mpf("1e-45")
    with pytest.raises(ValueError):
        subweyl_J(2)


def test_subweyl_J_gap_at_degree_40():
    # (27/164) log((Kt+1)/t) for K = 40 stays below 0.60732 at all heights
    with mp.workdps(50):
        from mpmath import exp
        for log_t in (1000, 52238, 10 ** 6):
            gap = subweyl_J_log(mpf(log_t) + log(40 + exp(-mpf(log_t)))) \
                - subweyl_J_log(mpf(log_t))
            assert gap <= mpf("0.60732")


def test_NT_error_values():
    with mp.workdps(50):
        assert abs(NT_error(e) - (mpf("0.1038") + mpf("9.3675"))) < mpf("1e-45")
        assert abs(NT_error(mpf(10) ** 10)
                   - mpf("12.56463501911748640179787")) < mpf("1e-22")
        # stated as the best available from heights around 10^410 upward
        assert abs(NT_error(mpf(10) ** 410)
                   - mpf("109.1234701729932816001598")) < mpf("1e-21")
    with pytest.raises(ValueError):
        NT_error(2.5)


def test_N_t_eta_bound_constant_derivation():
    # the 0.479 constant dominates its derivation (1/0.3758)(1/3.1421 - 0.6914/5)
    with mp.workdps(50):
        derived = (1 / mpf("0.3758")) * (1 / mpf("3.1421") - mpf("0.6914") / 5)
        assert derived <= mpf("0.479")


def test_N_t_eta_bound_value_and_monotonicity():
    with mp.workdps(50):
        got = N_t_eta_bound(100, "0.25")
        assert abs(got - mpf("7.51738994403894941792594")) < mpf("1e-22")
        vals = [N_t_eta_bound(t, "0.1") for t in (100, 10 ** 4, 10 ** 8)]
        assert all(b > a for a, b in zip(vals, vals[1:]))
    with pytest.raises(ValueError):
        N_t_eta_bound(99, "0.1")
    with pytest.raises(ValueError):
        N_t_eta_bound(100, "0.3")


def test_zero_sum_bound_constant_derivation():
    # 0.479 - 1/(2 * 1.879) <= 0.213
    with mp.workdps(50):
        assert mpf("0.479") - 1 / (2 * mpf("1.879")) <= mpf("0.213")


def test_zero_sum_bound_value_and_N_monotonicity():
    with mp.workdps(50):
        got = zero_sum_bound(10 ** 4, "0.1", 0)
        assert abs(got - mpf("966.618761198679428991817")) < mpf("1e-20")
        a = zero_sum_bound(10 ** 4, "0.1", 0)
        b = zero_sum_bound(10 ** 4, "0.1", 3)
        assert b < a
    with pytest.raises(ValueError):
        zero_sum_bound(9999, "0.1", 0)


def test_transcription_guard_random_inputs():
    # independently transcribed copies of each formula must agree
    rng = np.random.default_rng(23)
    with mp.workdps(50):
        params = RichertParams()
        gamma = euler_gamma()
        for _ in range(100):
            eta = mpf(float(rng.uniform(0.01, 0.25)))
            t = mpf(float(rng.uniform(10 ** 4, 10 ** 9)))
            n_val = mpf(float(rng.uniform(0.0, 5.0)))

            ram_alt = gamma * eta - log(eta)
            assert abs(ram_alt - ramare_log_zeta(eta)) < mpf("1e-25") * abs(ram_alt)

            j_alt = log(mpf("307.098") * exp_safe(mpf(27) / 164 * log(t)))
            assert abs(j_alt - subweyl_J(t)) < mpf("1e-25") * abs(j_alt)

            n_alt = params.B * mpf("1.3478") * eta * sqrt(eta) * log(t) \
                + mpf("0.479") + log(params.A / eta) / mpf("1.879") \
                + (2 * log(log(t))) / (3 * mpf("1.879"))
            assert abs(n_alt - N_t_eta_bound(t, eta)) < mpf("1e-25") * abs(n_alt)

            z_alt = (mpf("5.409") - mpf("10.784") * params.B) * log(t) \
                + mpf("5.392") * params.B * log(t) / sqrt(eta) + mpf("206.7") \
                + ((log(params.A) - log(eta)) / mpf("1.879")
                   + 2 * log(log(t)) / (3 * mpf("1.879"))
                   + mpf("0.213") - n_val) / eta ** 2
            got = zero_sum_bound(t, eta, n_val)
            assert abs(z_alt - got) < mpf("1e-25") * abs(z_alt)


def exp_safe(x):
    from mpmath import exp
    return exp(x)


def test_log_scales():
    with mp.workdps(50):
        sc = LogScales.from_log_t(mpf(52238), 40)
        assert abs(sc.L1 - (mpf(52238) + log(mpf(40) + 0))) < mpf("1e-40")
        assert abs(sc.L2 - log(sc.L1)) < mpf("1e-45")
        assert sc.L2 > 0
        small = LogScales.from_log_t(log(mpf(100)), 3)
        assert small.L2 > 0
    with pytest.raises(ValueError):
        LogScales.from_log_t(0, 1)  # Kt + 1 barely above e fails


def test_richert_params_validation():
    with pytest.raises(ValueError):
        RichertParams(A=0)
    with pytest.raises(ValueError):
        RichertParams(B=-1)
    p = RichertParams()
    with mp.workdps(60):
        assert abs(p.A - mpf("76.2")) < mpf("1e-55")
        assert abs(p.B - mpf("4.45")) < mpf("1e-55")
