"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import time

import numpy as np
import pytest
from scipy.optimize import bisect

from crossband import closed_form as cf
from crossband.gaussian import (
    SymplecticOp,
    coupler_matrix,
    squeezer_matrix,
    symplectic_spectrum,
)
from crossband.measures import plob_bound
from crossband.protocols import dual_band_state, run_dual_band, run_single_band_ea
from crossband.sweep import epr_grid, random_params, validate

pytestmark = pytest.mark.acceptance

P = cf.ProtocolParams
ETA = 0.01


def dual_sa(params):
    return run_dual_band(params.replace(g_s=params.g)).measures["SA"]


def single_sa(params):
    return run_single_band_ea(params).measures["SA"]


def test_criterion_1_fig3_advantage(criterion):
    start = time.perf_counter()
    params = P(eta=ETA, kappa_e=0.0, kappa_a=1.0, g=100.0)
    single, dual = single_sa(params), dual_sa(params)
    entropy_gain = dual.entropy_ebits - single.entropy_ebits
    epr_gain = 10 * np.log10(single.epr_variance / dual.epr_variance)
    elapsed = time.perf_counter() - start
    ok = abs(entropy_gain - 2.77) <= 0.03 and abs(epr_gain - 8.38) <= 0.05 and elapsed < 1.0
    criterion(1, "lossless advantage at 20 dB", ok,
              f"entropy {entropy_gain:.5f} ebits, EPR {epr_gain:.4f} dB, {elapsed:.3f} s")


def test_criterion_2_baselines(criterion):
    start = time.perf_counter()
    de = cf.de_entropy(ETA)
    plob = plob_bound(ETA)
    etas = np.linspace(0.0, 0.999, 202)[1:-1]
    dominated = all(cf.de_entropy(e) >= plob_bound(e) for e in etas)
    elapsed = time.perf_counter() - start
    ok = abs(de - 0.08161) <= 1e-4 and abs(plob - 0.01450) <= 1e-5 and dominated and elapsed < 1.0
    criterion(2, "baseline constants", ok,
              f"DE {de:.6f}, PLOB {plob:.6f}, DE >= PLOB on {len(etas)} points: {dominated}, "
              f"{elapsed:.3f} s")


def test_criterion_3_crossing(criterion):
    start = time.perf_counter()
    baseline = cf.de_entropy(ETA)
    dual = dual_sa(P(eta=ETA, g=2.0)).entropy_ebits

    def gap(g):
        return single_sa(P(eta=ETA, g=g)).entropy_ebits - baseline

    crossing = bisect(gap, 1.5, 3.0, xtol=1e-3)
    elapsed = time.perf_counter() - start
    ok = dual > baseline and 2.0 <= crossing <= 2.1 and elapsed < 1.0
    criterion(3, "3 dB crossing", ok,
              f"dual at G=2 {dual:.4f} > {baseline:.5f}; single crossing G = {crossing:.4f}, "
              f"{elapsed:.3f} s")


def test_criterion_4_oracle_equivalence(criterion):
    start = time.perf_counter()
    report = validate(seed=2024, trials=500)
    elapsed = time.perf_counter() - start
    ok = report.passed and len(report.deviations) == 500 and elapsed < 10.0
    criterion(4, "oracle equivalence", ok,
              f"max deviation {report.max_deviation:.2e} over 500 points, {elapsed:.2f} s")


def test_criterion_5_closed_form_laws(criterion):
    worst4 = worst5 = 0.0
    for eta in np.geomspace(1e-3, 0.5, 10):
        for g in np.geomspace(1.0, 100.0, 10):
            n4 = single_sa(P(eta=eta, g=g)).n_photons
            n5 = dual_sa(P(eta=eta, g=g)).n_photons
            worst4 = max(worst4, abs(n4 - eta * (g - 1)))
            worst5 = max(worst5, abs(n5 - cf.dual_band_photon_number(eta, g)))
    worst_limit = 0.0
    for kappa_e in (0.0, 0.1, 0.3, 0.55):
        n, gamma = cf.symmetric_dual_band(ETA, 1 - ETA - kappa_e, 1e6)
        _, ratio, gamma_lim = cf.strong_squeezing_limit(ETA, kappa_e)
        worst_limit = max(worst_limit, abs(n / 1e6 / ratio - 1), abs(gamma / gamma_lim - 1))
    ok = worst4 <= 1e-9 and worst5 <= 1e-9 and worst_limit <= 1e-3
    criterion(5, "closed-form laws", ok,
              f"single-band N_S {worst4:.1e}, dual-band N_S {worst5:.1e}, strong-squeezing limit {worst_limit:.1e}")


def test_criterion_6_loss_robustness(criterion):
    start = time.perf_counter()
    baseline = cf.de_entropy(ETA)
    gains = cf.db_to_gain(np.linspace(0.0, 20.0, 41))
    single = np.array([single_sa(P(eta=ETA, kappa_e=0.30, g=g)).log_negativity_ebits
                       for g in gains])
    dual = np.array([dual_sa(P(eta=ETA, kappa_e=0.55, g=g)).log_negativity_ebits
                     for g in gains])
    elapsed = time.perf_counter() - start
    monotone = bool(np.all(np.diff(dual) >= 0))
    ok = single.max() > baseline and dual.max() > baseline and monotone and elapsed < 5.0
    criterion(6, "loss robustness", ok,
              f"single (kE=0.30) max {single.max():.4f}, dual (kE=0.55) max {dual.max():.4f} "
              f"vs {baseline:.5f}, dual nondecreasing: {monotone}, {elapsed:.2f} s")


def test_criterion_7_purity_and_physicality(criterion):
    rng = np.random.default_rng(7)
    purity, lowest = 0.0, np.inf
    for _ in range(100):
        eta = rng.uniform(1e-4, 1.0)
        params = P(eta=eta, g=rng.uniform(1, 100), g_s=rng.uniform(1, 100))
        explicit = rng.random() < 0.5
        g_p, g_ps = (rng.uniform(1, 10, 2) if explicit else cf.resolved_gains(params))
        nu = symplectic_spectrum(dual_band_state(params, g_p, g_ps))
        purity = max(purity, np.max(np.abs(nu - 1)))
        lowest = min(lowest, nu[0])
    defect = 0.0
    for _ in range(200):
        defect = max(defect, SymplecticOp(squeezer_matrix(rng.uniform(1, 100), rng.random() < 0.5),
                                          (0, 1)).symplectic_defect())
        params = random_params(rng)
        mat = coupler_matrix(params.eta, params.kappa_p, params.kappa_s)
        defect = max(defect, SymplecticOp(mat, (0, 1, 2, 3)).symplectic_defect())
    for k in range(200):
        params = random_params(rng, explicit_gains=bool(k % 2))
        g_p, g_ps = cf.resolved_gains(params)
        lowest = min(lowest, symplectic_spectrum(dual_band_state(params, g_p, g_ps))[0])
    ok = purity <= 1e-8 and defect <= 1e-10 and lowest >= 1 - 1e-9
    criterion(7, "purity and physicality", ok,
              f"lossless |nu-1| max {purity:.1e}, symplectic defect {defect:.1e}, "
              f"min nu {lowest:.12f}")


def test_criterion_8_mirror_symmetry(criterion):
    g_db, gs_db, sa = epr_grid("SA", points=21)
    _, _, pb = epr_grid("PB", points=21)
    mirror = float(np.max(np.abs(sa - pb.T)))
    i20, i3 = int(np.argmin(np.abs(g_db - 20))), int(np.argmin(np.abs(g_db - 3)))
    db = lambda v: 10 * np.log10(0.5 / v)
    strong_probe, strong_signal = db(sa[i20, i3]), db(sa[i3, i20])
    ok = mirror <= 1e-9 and strong_probe > strong_signal
    criterion(8, "EPR grid mirror symmetry", ok,
              f"max |SA - PB^T| {mirror:.1e}; SA squeezing (20,3) {strong_probe:.3f} dB "
              f"> (3,20) {strong_signal:.3f} dB")


def test_criterion_9_reduction(criterion):
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(50):
        eta = rng.uniform(1e-4, 0.5)
        params = P(eta=eta, kappa_e=rng.uniform(0.0, min(0.6, 1 - eta)), g=rng.uniform(1, 100),
                   g_s=1.0)
        dual = cf.oracle_dual_band(params)
        g_star = cf.single_band_optimal_gain(params.kappa_p, params.g)
        eta_ea = cf.ea_efficiency(params.eta, params.kappa_p, params.g)
        worst = max(worst, abs(dual.g_p / g_star - 1), abs(params.eta * dual.g_p / eta_ea - 1))
    ok = worst <= 1e-10
    criterion(9, "reduction to single band", ok, f"max relative gap {worst:.1e} over 50 samples")
