"""Entanglement measures and benchmark rates from covariance matrices.

All logarithms are base 2, so entropies and negativities are in ebits.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import xlogy

from .errors import DomainError, ModeError, PurityError
from .gaussian import GaussianState, partial_trace, symplectic_eigenvalues, symplectic_spectrum

PURITY_TOL = 1e-6
VACUUM_EPR_VARIANCE = 0.5


def g_entropy(nu):
    """Von Neumann entropy (ebits) of a thermal mode with symplectic eigenvalue ``nu``."""
    # eigenvalues may dip below 1 by rounding; g is 0 there
    nu = np.maximum(np.asarray(nu, dtype=float), 1.0)
    plus = (nu + 1.0) / 2.0
    minus = (nu - 1.0) / 2.0
    return (xlogy(plus, plus) - xlogy(minus, minus)) / np.log(2.0)


def thermal_entropy(n_photons):
    """``(N+1) log2(N+1) - N log2 N``, the entropy of a thermal mode."""
    return g_entropy(2.0 * np.asarray(n_photons, dtype=float) + 1.0)


def entanglement_entropy_pure(state, partition):
    """Entanglement entropy across ``partition`` for a pure global state.

    Raises
    ------
    PurityError
        If ``state`` is mixed; use :func:`log_negativity` instead.
    """
    part = [state.labels[state.index(m)] for m in partition]
    if not part or len(set(part)) >= state.n_modes:
        raise ModeError("partition must be a proper, non-empty subset of the modes")
    nu_global = symplectic_spectrum(state)
    if np.max(np.abs(nu_global - 1.0)) > PURITY_TOL:
        raise PurityError(
            f"state is mixed (largest symplectic eigenvalue {nu_global[-1]:.9g}); "
            "entanglement entropy is only defined here for pure states, "
            "use log_negativity for mixed states"
        )
    nu = symplectic_spectrum(partial_trace(state, part))
    return float(np.sum(g_entropy(nu)))


def _pair_cov(state, mode_a, mode_b):
    i, j = state.index(mode_a), state.index(mode_b)
    if i == j:
        raise ModeError("a two-mode measure needs two distinct modes")
    quad = [2 * i, 2 * i + 1, 2 * j, 2 * j + 1]
    return np.array(state.cov[np.ix_(quad, quad)])


def partial_transpose(cov2):
    """Flip the sign of the second mode's momentum in a 4x4 covariance."""
    flip = np.diag([1.0, 1.0, 1.0, -1.0])
    return flip @ cov2 @ flip


def log_negativity(state, mode_a, mode_b):
    """Logarithmic negativity (ebits) of the reduced two-mode state."""
    cov2 = _pair_cov(state, mode_a, mode_b)
    nu_min = symplectic_eigenvalues(partial_transpose(cov2))[0]
    return float(max(0.0, -np.log2(nu_min)))


def epr_variance(state, mode_a, mode_b, orientation="auto"):
    """Mean variance of the EPR quadratures of two modes.

    With ``orientation="minus"`` the pair is ``Re(a1 - a2)`` and
    ``Im(a1 + a2)``; ``"plus"`` uses ``Re(a1 + a2)`` and ``Im(a1 - a2)``,
    which is the same measure after a pi phase shift on the second mode.
    ``"auto"`` returns the smaller of the two. The vacuum gives 1/2.
    """
    v = _pair_cov(state, mode_a, mode_b)
    # Re(a) = q / 2, Im(a) = p / 2
    local = v[0, 0] + v[2, 2] + v[1, 1] + v[3, 3]
    cross = v[0, 2] - v[1, 3]
    minus = (local - 2.0 * cross) / 8.0
    plus = (local + 2.0 * cross) / 8.0
    if orientation == "minus":
        return float(minus)
    if orientation == "plus":
        return float(plus)
    if orientation == "auto":
        return float(min(minus, plus))
    raise ValueError(f"orientation must be 'auto', 'minus' or 'plus', got {orientation!r}")


def epr_squeezing_db(variance):
    """EPR squeezing relative to the vacuum level, in dB (positive = squeezed)."""
    return float(10.0 * np.log10(VACUUM_EPR_VARIANCE / variance))


def plob_bound(eta):
    """Repeaterless capacity ``log2(1 / (1 - eta))`` of a pure-loss channel."""
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"efficiency must lie in [0, 1], got {eta}")
    if eta == 1.0:
        return float("inf")
    return float(-np.log2(1.0 - eta))


def reverse_coherent_information(state, sender, receiver):
    """Reverse coherent information ``S(sender) - S(sender, receiver)`` in ebits.

    A lower bound on the distillable entanglement of the pair.
    """
    pair = partial_trace(state, [sender, receiver])
    local = partial_trace(state, [sender])
    return float(np.sum(g_entropy(symplectic_spectrum(local)))
                 - np.sum(g_entropy(symplectic_spectrum(pair))))


@dataclass(frozen=True)
class PairMeasures:
    """Entanglement figures of merit for one output mode pair."""

    entropy_ebits: Optional[float]
    log_negativity_ebits: float
    epr_variance: float
    epr_squeezing_db: float
    n_photons: float
    gamma: float


def lossy_tmsv_parameters(cov2):
    """Read ``(N, gamma)`` off a 4x4 covariance of lossy-TMSV form.

    The arm with the larger variance is taken as the unattenuated one:
    ``N = (V_big - 1) / 2`` and ``gamma = (V_small - 1) / (V_big - 1)``.
    ``gamma`` is reported as 1 when ``N = 0``.
    """
    va = np.trace(cov2[:2, :2]) / 2.0
    vb = np.trace(cov2[2:, 2:]) / 2.0
    big, small = max(va, vb), min(va, vb)
    n = (big - 1.0) / 2.0
    if big - 1.0 <= 1e-14:
        return max(n, 0.0), 1.0
    return n, (small - 1.0) / (big - 1.0)


def pair_measures(state, mode_a, mode_b):
    """All figures of merit for the pair; entropy is ``None`` on mixed pairs."""
    pair = partial_trace(state, [mode_a, mode_b])
    nu = symplectic_spectrum(pair)
    entropy = None
    if np.max(np.abs(nu - 1.0)) <= PURITY_TOL:
        entropy = entanglement_entropy_pure(pair, [pair.labels[0]])
    var = epr_variance(pair, 0, 1)
    n, gamma = lossy_tmsv_parameters(pair.cov)
    return PairMeasures(
        entropy_ebits=entropy,
        log_negativity_ebits=log_negativity(pair, 0, 1),
        epr_variance=var,
        epr_squeezing_db=epr_squeezing_db(var),
        n_photons=float(n),
        gamma=float(gamma),
    )
