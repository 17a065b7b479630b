import math

import pytest

import coopber


def rayleigh(g):
    return 0.5 * (1.0 - math.sqrt(g / (1.0 + g)))


def test_direct_link_matches_closed_form():
    for g in (0.01, 1.0, 100.0):
        assert coopber.p_non_coop(g) == pytest.approx(rayleigh(g), abs=1e-12)


def test_no_relays_reduces_to_direct_link():
    c = coopber.scenario(m_relays=0, total_snr_db=10.0)
    ber = coopber.p_e2e(c)
    assert ber.kind == coopber.EstimateKind.analytic
    assert ber.value == pytest.approx(rayleigh(c.p_s * c.sigma2_sd / c.n0), rel=1e-10)


def test_single_relay_propagation_term():
    assert coopber.p_prop_closed(1, 1, 1.0, 3.0) == 0.75
    assert coopber.p_prop_oracle(3, 1.0, 1.0) == pytest.approx(0.75, abs=1e-10)


def test_simulation_tracks_analytic():
    c = coopber.scenario(m_relays=3, total_snr_db=6.0)
    sim = coopber.run_sim(c, n_trials=200_000, seed=3)
    exact = coopber.p_e2e(c).value
    assert sim.trials == 200_000
    assert abs(sim.value - exact) <= max(3 * sim.ci_halfwidth, 0.25 * exact)


def test_simulation_is_deterministic():
    c = coopber.scenario(m_relays=4, total_snr_db=3.0)
    a = coopber.run_sim(c, n_trials=50_000, seed=9, threads=1)
    b = coopber.run_sim(c, n_trials=50_000, seed=9, threads=2)
    assert a.value == b.value


def test_threshold_optimum_improves_on_default():
    tmpl = coopber.scenario(m_relays=4)
    opt = coopber.find_gamma_opt(12.0, tmpl)
    fixed = coopber.p_e2e(tmpl.with_total_snr(10 ** 1.2)).value
    assert opt.ber <= fixed


def test_errors_are_python_exceptions():
    c = coopber.scenario(m_relays=1)
    c.sigma2_sd = 0.0
    with pytest.raises(ValueError):
        coopber.p_e2e(c)
    with pytest.raises(IndexError):
        coopber.p_prop_closed(2, 3, 1.0, 1.0)
