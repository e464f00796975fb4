import math

import numpy as np
import pytest
from scipy.optimize import brentq

from crossband import closed_form as cf
from crossband.errors import DivergenceError, DomainError, ParameterError, SingularConfigurationError
from crossband.gaussian import symplectic_spectrum
from crossband.measures import entanglement_entropy_pure, plob_bound
from crossband.gaussian import GaussianState

P = cf.ProtocolParams


def test_params_validation():
    assert P(kappa_e=0.2).kappa_f == 0.2
    assert P(eta=0.01, kappa_e=0.3).kappa_p == pytest.approx(0.69)
    with pytest.raises(DomainError):
        P(eta=1.5)
    with pytest.raises(ParameterError):
        P(eta=0.6, kappa_e=0.5)
    with pytest.raises(DomainError):
        P(g=0.5)
    with pytest.raises(SingularConfigurationError):
        cf.oracle_dual_band(P(eta=0.1, kappa_e=0.0, kappa_f=0.2, g=10, g_s=10))


def test_gain_db_round_trip():
    assert cf.db_to_gain(20.0) == pytest.approx(100.0)
    assert cf.gain_to_db(2.0) == pytest.approx(3.0103, abs=1e-4)


def test_single_band_lossless_example():
    out = cf.oracle_single_band(P(eta=0.01, g=100))
    assert out.g_p == pytest.approx(50.2513, abs=1e-4)
    assert out.eta_ea == pytest.approx(0.502513, abs=1e-6)
    assert out.n_s == pytest.approx(0.99, abs=1e-12)
    assert out.gamma == pytest.approx(1.0)
    np.testing.assert_allclose(symplectic_spectrum(out.cov_sa), [1, 1], atol=1e-9)


def test_single_band_no_squeezing():
    out = cf.oracle_single_band(P(eta=0.2, kappa_e=0.1, g=1))
    assert out.n_s == 0.0
    assert out.eta_ea == pytest.approx(0.2)
    np.testing.assert_allclose(out.cov_sa, np.eye(4), atol=1e-14)


def test_single_band_lossy_example():
    out = cf.oracle_single_band(P(eta=0.01, kappa_e=0.3, g=100))
    assert out.n_s == pytest.approx(30.69, abs=1e-10)
    assert out.gamma == pytest.approx(0.0322581, abs=1e-7)
    c_p = math.sqrt(out.gamma * out.n_s * (1 + out.n_s))
    assert c_p == pytest.approx(5.6012, abs=1e-4)
    # the lossy-TMSV form is reproduced by the general entries
    general = cf.general_covariance(P(eta=0.01, kappa_e=0.3, g=100), out.g_p, 1.0, ("S", "A"))
    np.testing.assert_allclose(general, out.cov_sa, atol=1e-9)


def test_single_band_rejects_signal_squeezing():
    with pytest.raises(ParameterError):
        cf.oracle_single_band(P(g=10, g_s=2))


def test_ea_efficiency_limit():
    assert cf.ea_efficiency(0.01, 0.99, 1e12) == pytest.approx(1.0, abs=1e-8)
    assert cf.ea_efficiency(0.01, 0.99, 1.0) == pytest.approx(0.01)


def test_dual_band_examples():
    out = cf.oracle_dual_band(P(eta=0.01, g=100, g_s=100))
    assert out.n_s == pytest.approx((math.sqrt(397) - 1) / 2, rel=1e-12)
    assert out.n_s == pytest.approx(9.46243, abs=1e-5)
    assert out.gamma == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_array_equal(out.cov_sa, out.cov_pb * np.array([[1, 1, -1, -1]] * 2 + [[-1, -1, 1, 1]] * 2))
    for g in (2.0, 50.0, 1e3):
        n, gamma = cf.symmetric_dual_band(1.0, 0.0, g)
        assert n == pytest.approx(g - 1, rel=1e-10)
    vac = cf.oracle_dual_band(P(eta=0.01, g=1, g_s=1))
    assert vac.n_s == 0.0 and vac.gamma == 1.0
    np.testing.assert_allclose(vac.cov_full, np.eye(8))


def test_strong_squeezing_limit_example():
    chi, ratio, gamma = cf.strong_squeezing_limit(0.01, 0.3)
    assert chi == pytest.approx(0.180278, abs=1e-6)
    assert ratio == pytest.approx(0.330278, abs=1e-6)
    assert gamma == pytest.approx(0.0916752, abs=5e-6)


@pytest.mark.parametrize("kappa_e", [0.0, 0.1, 0.3, 0.55])
def test_limit_consistency(kappa_e):
    n, gamma = cf.symmetric_dual_band(0.01, 1 - 0.01 - kappa_e, 1e6)
    _, ratio, gamma_lim = cf.strong_squeezing_limit(0.01, kappa_e)
    assert n / 1e6 == pytest.approx(ratio, rel=1e-3)
    assert gamma == pytest.approx(gamma_lim, rel=1e-3)


def test_dual_band_photon_number_is_stable():
    for eta, g in [(1e-4, 1.0 + 1e-9), (0.01, 100.0), (0.5, 1e6)]:
        x = 4 * eta * (g - 1) * g
        naive = (math.sqrt(x + 1) - 1) / 2
        assert cf.dual_band_photon_number(eta, g) == pytest.approx(naive, rel=1e-6)
    assert cf.dual_band_photon_number(0.01, 1.0) == 0.0


def test_reduction_to_single_band(rng):
    for _ in range(50):
        eta = rng.uniform(1e-4, 0.5)
        params = P(eta=eta, kappa_e=rng.uniform(0, 0.45), g=rng.uniform(1, 100))
        dual = cf.oracle_dual_band(params)
        single = cf.oracle_single_band(params)
        assert dual.g_p == pytest.approx(single.g_p, rel=1e-10)
        assert dual.g_ps == pytest.approx(1.0, abs=1e-12)
        assert eta * dual.g_p == pytest.approx(single.eta_ea, rel=1e-10)
        np.testing.assert_allclose(dual.cov_sa, single.cov_sa, atol=1e-9)


def test_decoupling_symmetric():
    for kappa_e in (0.0, 0.2, 0.55):
        params = P(eta=0.01, kappa_e=kappa_e, g=100, g_s=100)
        m = cf.output_moments(params)
        assert abs(m["c_PS"]) <= 1e-9 and abs(m["c_AB"]) <= 1e-9
        assert abs(m["c_PA"]) <= 1e-9 and abs(m["c_SB"]) <= 1e-9


@pytest.mark.xfail(strict=True, reason="a lossless coupler leaves PS and AB decoupled even for G != G_S")
def test_asymmetric_residual_lossless_coupler():
    m = cf.output_moments(P(eta=0.01, g=100, g_s=2))
    assert max(abs(m["c_PS"]), abs(m["c_AB"])) > 1e-6


def test_asymmetric_residual():
    for kappa_e, kappa_f, g_s in [(0.3, 0.3, 2.0), (0.3, 0.2, 2.0), (0.3, 0.2, 100.0)]:
        m = cf.output_moments(P(eta=0.01, kappa_e=kappa_e, kappa_f=kappa_f, g=100, g_s=g_s))
        assert max(abs(m["c_PS"]), abs(m["c_AB"])) > 1e-6
        # the squeezing-type intraband terms are still removed
        assert abs(m["c_PA"]) <= 1e-9 and abs(m["c_SB"]) <= 1e-9
    lossless = cf.output_moments(P(eta=0.01, g=100, g_s=2))
    assert max(abs(lossless["c_PS"]), abs(lossless["c_AB"])) <= 1e-9


@pytest.mark.parametrize("g", [1.0, 2.0, 100.0, 1e3])
def test_general_entries_collapse_to_symmetric_form(g):
    params = P(eta=0.01, g=g, g_s=g)
    g_p, g_ps = cf.resolved_gains(params)
    n, gamma = cf.symmetric_dual_band(0.01, 0.99, g)
    np.testing.assert_allclose(cf.general_covariance(params, g_p, g_ps),
                               cf.symmetric_covariance(n, gamma), atol=1e-9 * max(1, g / 100))


def test_moments_conversion_blocks():
    m = {k: 0.0 for k in ("nu_B", "nu_S", "nu_P", "nu_A", "c_PS", "c_AB", "c_PA", "c_SB", "c_SA", "c_PB")}
    m.update(nu_S=2.0, c_PS=0.5, c_SA=-1.5)
    cov = cf.moments_to_quadrature(m)
    blk = lambda x, y: cf._block(cov, cf.FULL_ORDER, x, y)[:2, 2:]
    np.testing.assert_allclose(cov[2:4, 2:4], 5 * np.eye(2))
    np.testing.assert_allclose(blk("P", "S"), np.eye(2))
    np.testing.assert_allclose(blk("S", "A"), -3 * np.diag([1, -1]))


def test_lossy_tmsv_form_is_physical():
    for n, gamma in [(0.0, 1.0), (30.69, 0.0322581), (1e3, 0.5)]:
        nu = symplectic_spectrum(cf.lossy_tmsv_covariance(n, gamma))
        assert nu[0] >= 1 - 1e-9


def solve_cooperativity(eta):
    return brentq(lambda c: cf.dt_efficiency(c) - eta, 0.0, 1.0, xtol=1e-15)


def test_baseline_examples():
    zero = cf.oracle_baselines(P(cooperativity=0.0))
    assert zero.eta_dt == 0.0 and zero.n_de == 0.0 and zero.de_entropy == 0.0
    np.testing.assert_allclose(zero.cov_full, np.eye(4))
    assert cf.dt_efficiency(1.0) == 1.0
    c01 = cf.oracle_baselines(P(cooperativity=0.1))
    assert c01.n_de == pytest.approx(0.493827, abs=1e-6)
    assert c01.eta_dt == pytest.approx(0.330579, abs=1e-6)
    assert c01.eta_dt / (1 - c01.eta_dt) == pytest.approx(c01.n_de, rel=1e-12)
    assert cf.de_entropy(0.5) == pytest.approx(2.0)
    assert plob_bound(0.5) == pytest.approx(1.0)


def test_baseline_errors():
    with pytest.raises(DivergenceError):
        cf.de_photon_number(1.0)
    with pytest.raises(DomainError):
        cf.dt_efficiency(0.1, zeta_m=1.5)
    with pytest.raises(DomainError):
        cf.dt_efficiency(-0.1)


def test_de_covariance_is_pure_lossless():
    for c in (0.01, 0.1, 0.5):
        cov = cf.de_covariance(c)
        np.testing.assert_allclose(symplectic_spectrum(cov), [1, 1], atol=1e-9)
        state = GaussianState(("m", "o"), cov)
        eta = cf.dt_efficiency(c)
        assert entanglement_entropy_pure(state, ["m"]) == pytest.approx(cf.de_entropy(eta), rel=1e-10)


def test_de_entropy_at_one_percent():
    c = solve_cooperativity(0.01)
    assert c == pytest.approx(0.002513, abs=1e-6)
    assert cf.de_entropy(0.01) == pytest.approx(0.08161, abs=1e-4)
    assert cf.oracle_baselines(P(cooperativity=c)).de_entropy == pytest.approx(0.08161, abs=1e-4)


def test_de_covariance_with_extraction_loss_is_lossy_tmsv():
    cov = cf.de_covariance(0.1, zeta_m=0.7, zeta_o=0.4)
    assert symplectic_spectrum(cov)[0] >= 1 - 1e-9
    assert symplectic_spectrum(cov)[1] > 1.0
