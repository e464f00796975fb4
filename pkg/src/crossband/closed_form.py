"""Closed-form covariances and figures of merit for the transduction protocols.

Nothing in here composes matrices; every entry is an explicit formula so the
module can serve as an independent check on :mod:`crossband.protocols`.

Moments in the ladder basis (``nu`` for ``<a^dagger a>``, ``c`` for the
cross moments) are converted to quadratures with ``q = a + a^dagger`` and
``p = -i (a - a^dagger)``: a mode gets ``(2 nu + 1) I``, a beam-splitter
type pair ``<a_i a_j^dagger> = c`` gets ``2c I`` and a squeezing type pair
``<a_i a_j> = c`` gets ``2c Z``.
"""

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from scipy.special import xlogy

from .errors import DivergenceError, DomainError, ParameterError, SingularConfigurationError

FULL_ORDER = ("B", "S", "P", "A")
_I2 = np.eye(2)
_Z2 = np.diag([1.0, -1.0])
_LN2 = np.log(2.0)


@dataclass(frozen=True)
class ProtocolParams:
    """Parameters of a transduction protocol.

    Parameters
    ----------
    eta : float
        Intrinsic transduction efficiency of the coupler.
    kappa_e, kappa_f : float
        Intrinsic losses on the probe and signal side. ``kappa_f`` defaults
        to ``kappa_e``. Reflectivities are ``kappa_P = 1 - eta - kappa_e``
        and ``kappa_S = 1 - eta - kappa_f``.
    g, g_s : float
        Two-mode squeezing gains of the probe band (P, A) and the signal
        band (S, B).
    g_p, g_ps : float or None
        Antisqueezing gains. ``None`` selects the decoupling optimum.
    kappa_a, kappa_b : float
        Memory transmissivities of the ancillas A and B.
    zeta_m, zeta_o : float
        Microwave and optical extraction efficiencies (baselines only).
    cooperativity : float
        Electro-optic cooperativity ``C`` (baselines only).
    n_input : float
        Per-mode photon number of the TMSV fed to direct transduction.
    """

    eta: float = 0.01
    kappa_e: float = 0.0
    kappa_f: Optional[float] = None
    g: float = 1.0
    g_s: float = 1.0
    g_p: Optional[float] = None
    g_ps: Optional[float] = None
    kappa_a: float = 1.0
    kappa_b: float = 1.0
    zeta_m: float = 1.0
    zeta_o: float = 1.0
    cooperativity: float = 0.0
    n_input: float = 1.0

    def __post_init__(self):
        if self.kappa_f is None:
            object.__setattr__(self, "kappa_f", self.kappa_e)
        for name in ("eta", "kappa_e", "kappa_f", "kappa_a", "kappa_b", "zeta_m", "zeta_o"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise DomainError(f"{name} must lie in [0, 1], got {value}")
        if self.eta + self.kappa_e > 1.0 + 1e-12:
            raise ParameterError(f"eta + kappa_e = {self.eta + self.kappa_e} exceeds 1")
        if self.eta + self.kappa_f > 1.0 + 1e-12:
            raise ParameterError(f"eta + kappa_f = {self.eta + self.kappa_f} exceeds 1")
        for name in ("g", "g_s", "g_p", "g_ps"):
            value = getattr(self, name)
            if value is not None and not value >= 1.0:
                raise DomainError(f"gain {name} must be >= 1, got {value}")
        if self.cooperativity < 0.0:
            raise DomainError(f"cooperativity must be >= 0, got {self.cooperativity}")
        if self.n_input < 0.0:
            raise DomainError(f"n_input must be >= 0, got {self.n_input}")

    @property
    def kappa_p(self):
        return max(1.0 - self.eta - self.kappa_e, 0.0)

    @property
    def kappa_s(self):
        return max(1.0 - self.eta - self.kappa_f, 0.0)

    @property
    def symmetric(self):
        """Equal gains, equal losses and lossless ancillas."""
        return (self.g == self.g_s and self.kappa_e == self.kappa_f
                and self.kappa_a == 1.0 and self.kappa_b == 1.0)

    def check_coupler(self):
        """Raise if the coupler cannot be realised with these losses."""
        diff = np.sqrt(self.kappa_p) - np.sqrt(self.kappa_s)
        if abs(diff) <= 1e-14:
            return
        if self.kappa_e == 0.0:
            raise SingularConfigurationError(
                "kappa_e = 0 with kappa_P != kappa_S makes the coupler singular"
            )
        forced = self.eta / self.kappa_e * diff ** 2
        if forced > self.kappa_f + 1e-12:
            raise ParameterError(
                f"kappa_f = {self.kappa_f} is below the loss {forced:.6g} "
                "forced by unequal reflectivities"
            )

    def replace(self, **changes):
        return replace(self, **changes)


@dataclass(frozen=True)
class OracleOutput:
    """Closed-form results for one parameter point."""

    g_p: Optional[float] = None
    g_ps: Optional[float] = None
    eta_ea: Optional[float] = None
    n_s: Optional[float] = None
    gamma: Optional[float] = None
    chi: Optional[float] = None
    ns_over_g_limit: Optional[float] = None
    gamma_limit: Optional[float] = None
    cov_sa: Optional[np.ndarray] = None
    cov_pb: Optional[np.ndarray] = None
    cov_full: Optional[np.ndarray] = None
    labels: tuple = ()
    entries: dict = field(default_factory=dict)
    eta_dt: Optional[float] = None
    n_de: Optional[float] = None
    de_entropy: Optional[float] = None
    plob: Optional[float] = None


def gain_to_db(gain):
    return 10.0 * np.log10(gain)


def db_to_gain(db):
    return 10.0 ** (db / 10.0)


def optimal_antisqueeze_gains(eta, kappa_p, kappa_s, g, g_s):
    """Antisqueezing gains ``(G', G'_S)`` that decouple P from A and S from B."""
    lin_p = g * kappa_p + g - kappa_p
    den_p = np.sqrt(eta ** 2 * (g_s - 1.0) ** 2 + 2.0 * eta * lin_p * (g_s - 1.0)
                    + (g - g * kappa_p + kappa_p) ** 2)
    lin_s = g_s * kappa_s + g_s - kappa_s
    den_s = np.sqrt(eta ** 2 * (g - 1.0) ** 2 + 2.0 * eta * (g - 1.0) * lin_s
                    + (g_s - g_s * kappa_s + kappa_s) ** 2)
    g_p = 0.5 * ((eta * (g_s - 1.0) + lin_p) / den_p + 1.0)
    g_ps = 0.5 * ((eta * (g - 1.0) + lin_s) / den_s + 1.0)
    # both are >= 1 analytically; rounding can land a hair below at G = 1
    return max(float(g_p), 1.0), max(float(g_ps), 1.0)


def single_band_optimal_gain(kappa, g):
    """``1 / (1 - kappa + kappa / G)``."""
    return 1.0 / (1.0 - kappa + kappa / g)


def ea_efficiency(eta, kappa, g):
    """Noiseless entanglement-assisted efficiency ``eta G / (G (1 - kappa) + kappa)``."""
    return eta * g / (g * (1.0 - kappa) + kappa)


def resolved_gains(params):
    """Antisqueezing gains with ``None`` replaced by the optimum."""
    g_p, g_ps = optimal_antisqueeze_gains(
        params.eta, params.kappa_p, params.kappa_s, params.g, params.g_s)
    return (g_p if params.g_p is None else params.g_p,
            g_ps if params.g_ps is None else params.g_ps)


def output_moments(params, g_p=None, g_ps=None):
    """Ladder-basis second moments of the four outputs B, S, P, A.

    Returns a dict with the mean photon numbers ``nu_B .. nu_A`` and the
    cross moments ``c_PS, c_AB`` (beam-splitter type) and
    ``c_PA, c_SB, c_SA, c_PB`` (squeezing type).
    """
    if g_p is None or g_ps is None:
        opt_p, opt_ps = resolved_gains(params)
        g_p = opt_p if g_p is None else g_p
        g_ps = opt_ps if g_ps is None else g_ps
    eta, k, ks = params.eta, params.kappa_p, params.kappa_s
    ka, kb = params.kappa_a, params.kappa_b
    G, GS, Gp, GpS = params.g, params.g_s, g_p, g_ps
    sq = np.sqrt
    # eta + kappa_P - 1 = -kappa_E
    neg_ke = eta + k - 1.0

    nu_b = (-GS * ks + (GS - 1) * GpS * ks + ks + eta * (G - 1) * (GpS - 1)
            + (GS - 1) * kb * GpS + GpS
            - 2 * sq((GS - 1) * GS * kb * ks * (GpS - 1) * GpS) - 1)
    nu_s = ((sq(GS * kb * (GpS - 1)) - sq((GS - 1) * ks * GpS)) ** 2
            + kb + eta * (G - 1) * GpS - kb * GpS + GpS - 1)
    nu_p = ((sq((G - 1) * k * Gp) - sq(G * ka * (Gp - 1))) ** 2
            + ka + eta * (GS - 1) * Gp - ka * Gp + Gp - 1)
    nu_a = ((sq(G * k * (Gp - 1)) - sq((G - 1) * ka * Gp)) ** 2
            - neg_ke * (Gp - 1) + eta * GS * (Gp - 1))

    c_ps = (-(G - 1) * sq(eta * k * Gp * GpS)
            - sq(eta * (GS - 1) * GS * kb * Gp * (GpS - 1))
            + sq(eta * (G - 1) * G * ka * (Gp - 1) * GpS)
            + (GS - 1) * sq(eta * ks * Gp * GpS))
    c_pa = (neg_ke * sq((Gp - 1) * Gp)
            + (sq(G * k * Gp) - sq((G - 1) * ka * (Gp - 1)))
            * (sq((G - 1) * ka * Gp) - sq(G * k * (Gp - 1)))
            - eta * GS * sq((Gp - 1) * Gp))
    c_pb = (-(GS - 1) * sq(eta * ks * Gp * (GpS - 1))
            + (sq((G - 1) * k * Gp) - sq(G * ka * (Gp - 1))) * sq(eta * (G - 1) * (GpS - 1))
            + sq(eta * (GS - 1) * GS * kb * Gp * GpS))
    c_sa = ((G - 1) * sq(eta * k * (Gp - 1) * GpS)
            + sq(eta * (GS - 1) * (Gp - 1))
            * (sq(GS * kb * (GpS - 1)) - sq((GS - 1) * ks * GpS))
            - sq(eta * (G - 1) * G * ka * Gp * GpS))
    c_sb = (-eta * (G - 1) * sq((GpS - 1) * GpS)
            + (sq(GS * kb * GpS) - sq((GS - 1) * ks * (GpS - 1)))
            * (sq((GS - 1) * ks * GpS) - sq(GS * kb * (GpS - 1)))
            + (kb - 1) * sq((GpS - 1) * GpS))
    c_ab = (-(G - 1) * sq(eta * k * (Gp - 1) * (GpS - 1))
            + (GS - 1) * sq(eta * ks * (Gp - 1) * (GpS - 1))
            + sq(eta * (G - 1) * G * ka * Gp * (GpS - 1))
            - sq(eta * (GS - 1) * GS * kb * (Gp - 1) * GpS))

    return {
        "nu_B": nu_b, "nu_S": nu_s, "nu_P": nu_p, "nu_A": nu_a,
        "c_PS": c_ps, "c_PA": c_pa, "c_PB": c_pb,
        "c_SA": c_sa, "c_SB": c_sb, "c_AB": c_ab,
    }


_SQUEEZING_PAIRS = ("PA", "SB", "SA", "PB")
_PASSIVE_PAIRS = ("PS", "AB")


def moments_to_quadrature(moments, order=FULL_ORDER):
    """Quadrature covariance over ``order`` from a dict of ladder moments."""
    pos = {lab: k for k, lab in enumerate(order)}
    cov = np.zeros((2 * len(order), 2 * len(order)))
    for lab, k in pos.items():
        cov[2 * k:2 * k + 2, 2 * k:2 * k + 2] = (2.0 * moments["nu_" + lab] + 1.0) * _I2
    for pair in _SQUEEZING_PAIRS + _PASSIVE_PAIRS:
        x, y = pair
        if x not in pos or y not in pos:
            continue
        blk = 2.0 * moments["c_" + pair] * (_Z2 if pair in _SQUEEZING_PAIRS else _I2)
        i, j = pos[x], pos[y]
        cov[2 * i:2 * i + 2, 2 * j:2 * j + 2] = blk
        cov[2 * j:2 * j + 2, 2 * i:2 * i + 2] = blk
    return cov


def general_covariance(params, g_p=None, g_ps=None, order=FULL_ORDER):
    """Output covariance of the dual-band circuit for arbitrary parameters."""
    return moments_to_quadrature(output_moments(params, g_p, g_ps), order)


def lossy_tmsv_covariance(n_s, gamma, sign=-1.0):
    """Covariance of a TMSV whose first arm went through loss ``gamma``.

    Ordering is (lossy arm, intact arm); the cross block is ``2 sign c_P Z``
    with ``c_P = sqrt(gamma N (N + 1))``.
    """
    c_p = np.sqrt(gamma * n_s * (1.0 + n_s))
    return np.block([
        [(2 * gamma * n_s + 1) * _I2, 2 * sign * c_p * _Z2],
        [2 * sign * c_p * _Z2, (2 * n_s + 1) * _I2],
    ])


def single_band_photon_number(eta, g):
    """``eta (G - 1)``: TMSV photon number delivered by the lossless single-band protocol."""
    return eta * (g - 1.0)


def dual_band_photon_number(eta, g):
    """Per-mode photon number of the symmetric lossless dual-band output.

    ``(sqrt(4 eta (G - 1) G + 1) - 1) / 2`` evaluated without cancellation.
    """
    x = 4.0 * eta * (g - 1.0) * g
    return 0.5 * x / (np.sqrt(x + 1.0) + 1.0)


def symmetric_dual_band(eta, kappa, g):
    """``(N_S, gamma)`` of each output pair in the symmetric lossless-ancilla case."""
    root = np.sqrt(eta ** 2 * (g - 1) ** 2 + 2 * eta * (g - 1) * ((g - 1) * kappa + g)
                   + (g - (g - 1) * kappa) ** 2)
    two_n = root - eta * g + eta + g - (g - 1) * kappa - 2
    numer = root + eta * (g - 1) + g * (kappa - 1) - kappa
    if g == 1.0 or two_n <= 0.0:
        return 0.0, 1.0
    return 0.5 * two_n, numer / two_n


def strong_squeezing_limit(eta, kappa_e):
    """``(chi, N_S / G, gamma)`` of the symmetric dual-band output as ``G -> inf``."""
    chi = np.sqrt(kappa_e ** 2 / 4.0 + eta)
    ns_over_g = chi + kappa_e / 2.0
    gamma = 1.0 - kappa_e / ns_over_g if ns_over_g > 0 else 1.0
    return chi, ns_over_g, gamma


def symmetric_covariance(n_s, gamma):
    """8x8 covariance over (B, S, P, A) for two lossy TMSV pairs SA and PB."""
    c_p = np.sqrt(gamma * n_s * (1.0 + n_s))
    pure = (2 * n_s + 1) * _I2
    lossy = (2 * gamma * n_s + 1) * _I2
    cov = np.zeros((8, 8))
    cov[0:2, 0:2] = pure
    cov[2:4, 2:4] = lossy
    cov[4:6, 4:6] = lossy
    cov[6:8, 6:8] = pure
    cov[0:2, 4:6] = cov[4:6, 0:2] = 2 * c_p * _Z2
    cov[2:4, 6:8] = cov[6:8, 2:4] = -2 * c_p * _Z2
    return cov


def _block(cov, order, x, y):
    i, j = order.index(x), order.index(y)
    quad = [2 * i, 2 * i + 1, 2 * j, 2 * j + 1]
    return cov[np.ix_(quad, quad)]


def oracle_single_band(params):
    """Closed forms of the single-band protocol (signal band unsqueezed).

    ``cov_full`` is over (S, P, A). When the ancilla is lossless and the
    antisqueezer optimal, ``cov_sa`` is the lossy-TMSV form with
    ``N_S = (G - 1)(1 - kappa)`` and ``gamma = eta / (1 - kappa)``.
    """
    if params.g_s != 1.0:
        raise ParameterError("the single-band protocol requires g_s = 1")
    params.check_coupler()
    kappa = params.kappa_p
    g_opt = single_band_optimal_gain(kappa, params.g)
    g_p = g_opt if params.g_p is None else params.g_p
    order = ("S", "P", "A")
    cov_full = general_covariance(params, g_p, 1.0, order)
    n_s = (params.g - 1.0) * (1.0 - kappa)
    gamma = params.eta / (1.0 - kappa) if n_s > 0.0 else 1.0
    if params.kappa_a == 1.0 and params.g_p is None:
        cov_sa = lossy_tmsv_covariance(n_s, gamma, sign=-1.0)
    else:
        cov_sa = _block(cov_full, order, "S", "A")
    return OracleOutput(
        g_p=g_p,
        g_ps=1.0,
        eta_ea=ea_efficiency(params.eta, kappa, params.g),
        n_s=n_s,
        gamma=gamma,
        cov_sa=cov_sa,
        cov_full=cov_full,
        labels=order,
        entries=output_moments(params, g_p, 1.0),
    )


def oracle_dual_band(params):
    """Closed forms of the dual-band protocol.

    In the symmetric lossless-ancilla case with optimal gains ``cov_full``
    is the two-pair lossy-TMSV form; otherwise it is assembled from the
    general output moments.
    """
    params.check_coupler()
    g_p, g_ps = resolved_gains(params)
    moments = output_moments(params, g_p, g_ps)
    chi, ns_over_g, gamma_lim = strong_squeezing_limit(params.eta, params.kappa_e)
    n_s = gamma = None
    if params.symmetric and params.g_p is None and params.g_ps is None:
        n_s, gamma = symmetric_dual_band(params.eta, params.kappa_p, params.g)
        cov_full = symmetric_covariance(n_s, gamma)
    else:
        cov_full = moments_to_quadrature(moments)
    return OracleOutput(
        g_p=g_p,
        g_ps=g_ps,
        eta_ea=ea_efficiency(params.eta, params.kappa_p, params.g),
        n_s=n_s,
        gamma=gamma,
        chi=chi,
        ns_over_g_limit=ns_over_g,
        gamma_limit=gamma_lim,
        cov_sa=_block(cov_full, FULL_ORDER, "S", "A"),
        cov_pb=_block(cov_full, FULL_ORDER, "P", "B"),
        cov_full=cov_full,
        labels=FULL_ORDER,
        entries=moments,
    )


def dt_efficiency(cooperativity, zeta_m=1.0, zeta_o=1.0):
    """Direct-transduction efficiency ``zeta_m zeta_o 4C / (1 + C)^2``."""
    if cooperativity < 0:
        raise DomainError(f"cooperativity must be >= 0, got {cooperativity}")
    for name, z in (("zeta_m", zeta_m), ("zeta_o", zeta_o)):
        if not 0.0 <= z <= 1.0:
            raise DomainError(f"{name} must lie in [0, 1], got {z}")
    return zeta_m * zeta_o * 4.0 * cooperativity / (1.0 + cooperativity) ** 2


def de_photon_number(cooperativity):
    """Overcoupled direct-entanglement photon number ``4C / (1 - C)^2``."""
    if not 0.0 <= cooperativity < 1.0:
        raise DivergenceError(
            f"direct entanglement diverges for cooperativity >= 1, got {cooperativity}")
    return 4.0 * cooperativity / (1.0 - cooperativity) ** 2


def de_covariance(cooperativity, zeta_m=1.0, zeta_o=1.0):
    """Microwave-optical covariance (ordering m, o) of direct entanglement.

    The cross term is ``4 sqrt(zeta_o zeta_m C) (1 + C) / (1 - C)^2`` so that
    ``zeta = 1`` gives a pure TMSV with ``N = 4C / (1 - C)^2``.
    """
    de_photon_number(cooperativity)
    dt_efficiency(cooperativity, zeta_m, zeta_o)
    c = cooperativity
    u = 1.0 + 8.0 * zeta_m * c / (1.0 - c) ** 2
    v = 4.0 * np.sqrt(zeta_o * zeta_m * c) * (1.0 + c) / (1.0 - c) ** 2
    w = 1.0 + 8.0 * c * zeta_o / (1.0 - c) ** 2
    return np.block([[u * _I2, v * _Z2], [v * _Z2, w * _I2]])


def de_entropy(eta):
    """Overcoupled direct-entanglement entropy ``log2(1/(1-eta)) + eta/(1-eta) log2(1/eta)``."""
    if not 0.0 <= eta < 1.0:
        raise DomainError(f"efficiency must lie in [0, 1), got {eta}")
    return float((-np.log(1.0 - eta) - xlogy(eta, eta) / (1.0 - eta)) / _LN2)


def oracle_baselines(params):
    """Closed forms of the two unassisted baselines at ``params.cooperativity``."""
    c = params.cooperativity
    cov = de_covariance(c, params.zeta_m, params.zeta_o)
    eta_dt = dt_efficiency(c, params.zeta_m, params.zeta_o)
    u, v, w = cov[0, 0], cov[0, 2], cov[2, 2]
    plob = float("inf") if eta_dt == 1.0 else float(-np.log2(1.0 - eta_dt))
    return OracleOutput(
        n_de=de_photon_number(c),
        eta_dt=eta_dt,
        de_entropy=de_entropy(eta_dt),
        plob=plob,
        cov_full=cov,
        labels=("m", "o"),
        entries={"u": u, "v": v, "w": w},
    )
