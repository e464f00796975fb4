"""Numeric circuits for the four entanglement-generation protocols.

Each ``run_*`` function composes the circuit from :mod:`crossband.gaussian`
operations, attaches pair measures and records the largest deviation from
the matching closed form in :mod:`crossband.closed_form`.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import closed_form as cf
from .gaussian import (
    GaussianState,
    apply_coupler,
    apply_loss,
    partial_trace,
    tmsv_covariance,
    two_mode_squeeze,
    vacuum_state,
)
from .errors import ModeError
from .measures import pair_measures, plob_bound

PROTOCOLS = ("DE", "DT", "single_band_EA", "dual_band")


@dataclass(frozen=True)
class ProtocolResult:
    """Output of one protocol run.

    ``pairs`` maps a pair name such as ``"SA"`` to its two mode labels and
    ``measures`` maps the same names to :class:`~crossband.measures.PairMeasures`.
    """

    protocol: str
    params: cf.ProtocolParams
    state: GaussianState
    pairs: dict
    measures: dict
    eta_ea: Optional[float] = None
    g_p: Optional[float] = None
    g_ps: Optional[float] = None
    oracle_delta: Optional[float] = None
    extras: dict = field(default_factory=dict)

    @property
    def cov_full(self):
        return self.state.cov

    def primary_pair(self):
        """Name of the pair plotted for this protocol."""
        return next(iter(self.pairs))


def _delta(state, oracle_cov, oracle_labels):
    numeric = state.reorder(oracle_labels).cov
    return float(np.max(np.abs(numeric - oracle_cov)))


def _measure_pairs(state, pairs):
    return {name: pair_measures(state, *modes) for name, modes in pairs.items()}


def run_direct_entanglement(params):
    """Blue-detuned direct entanglement between a microwave and an optical mode.

    The numeric state is an ideal TMSV with both arms passed through the
    extraction losses; the oracle is the closed-form covariance.
    """
    oracle = cf.oracle_baselines(params)
    state = GaussianState(("m", "o"), tmsv_covariance(oracle.n_de))
    state = apply_loss(state, "m", params.zeta_m)
    state = apply_loss(state, "o", params.zeta_o)
    pairs = {"mo": ("m", "o")}
    return ProtocolResult(
        protocol="DE",
        params=params,
        state=state,
        pairs=pairs,
        measures=_measure_pairs(state, pairs),
        oracle_delta=_delta(state, oracle.cov_full, oracle.labels),
        extras={"eta_dt": oracle.eta_dt, "plob": oracle.plob, "de_entropy": oracle.de_entropy},
    )


def run_direct_transduction(params, input_state=None, signal="S", reference=None):
    """Bare coupler acting on an input signal entangled with a reference.

    The default input is a TMSV with ``params.n_input`` photons per mode on
    modes ``("S", "R")``. The probe starts in vacuum and the delivered pair
    is (probe output, reference).
    """
    if input_state is None:
        input_state = GaussianState(("S", "R"), tmsv_covariance(params.n_input))
        reference = "R"
    if signal not in input_state.labels:
        raise ModeError(f"input state has no signal mode {signal!r}")
    if reference is None:
        others = [lab for lab in input_state.labels if lab != signal]
        if not others:
            raise ModeError("direct transduction needs a reference mode to deliver entanglement")
        reference = others[0]
    probe = "P"
    if probe in input_state.labels:
        raise ModeError("mode label 'P' is reserved for the probe")
    state = input_state.with_vacuum([probe])
    state = apply_coupler(state, signal, probe, params.eta, params.kappa_p, params.kappa_s)
    pairs = {"PR": (probe, reference)}
    delta = None
    if input_state.n_modes == 2:
        # pure loss of transmissivity eta on the signal arm, landing on the probe
        ref = input_state.reorder([signal, reference])
        v = ref.cov
        t = params.eta
        expected = np.zeros((4, 4))
        expected[:2, :2] = t * v[:2, :2] + (1 - t) * np.eye(2)
        expected[:2, 2:] = np.sqrt(t) * v[:2, 2:]
        expected[2:, :2] = np.sqrt(t) * v[2:, :2]
        expected[2:, 2:] = v[2:, 2:]
        delta = _delta(state, expected, (probe, reference))
    return ProtocolResult(
        protocol="DT",
        params=params,
        state=state,
        pairs=pairs,
        measures=_measure_pairs(state, pairs),
        eta_ea=params.eta,
        oracle_delta=delta,
        extras={"plob": plob_bound(params.eta)},
    )


def single_band_state(params, g_p):
    """Output state over (S, P, A) of the single-band circuit."""
    state = vacuum_state(("S", "P", "A"))
    state = two_mode_squeeze(state, "P", "A", params.g)
    state = apply_loss(state, "A", params.kappa_a)
    state = apply_coupler(state, "S", "P", params.eta, params.kappa_p, params.kappa_s)
    return two_mode_squeeze(state, "P", "A", g_p, "antisqueeze")


def run_single_band_ea(params):
    """Squeezer, coupler and antisqueezer on the probe band only.

    The delivered crossband pair is (S, A); the probe output P carries the
    transduced signal.
    """
    params = params.replace(g_s=1.0) if params.g_s != 1.0 else params
    oracle = cf.oracle_single_band(params)
    state = single_band_state(params, oracle.g_p)
    pairs = {"SA": ("S", "A")}
    delta = _delta(state, oracle.cov_full, oracle.labels)
    delta = max(delta, _delta(partial_trace(state, ["S", "A"]), oracle.cov_sa, ("S", "A")))
    return ProtocolResult(
        protocol="single_band_EA",
        params=params,
        state=state,
        pairs=pairs,
        measures=_measure_pairs(state, pairs),
        eta_ea=oracle.eta_ea,
        g_p=oracle.g_p,
        g_ps=1.0,
        oracle_delta=delta,
        extras={"n_s": oracle.n_s, "gamma": oracle.gamma},
    )


def dual_band_state(params, g_p, g_ps):
    """Output state over (B, S, P, A) of the dual-band circuit."""
    state = vacuum_state(cf.FULL_ORDER)
    state = two_mode_squeeze(state, "P", "A", params.g)
    state = two_mode_squeeze(state, "S", "B", params.g_s)
    state = apply_loss(state, "A", params.kappa_a)
    state = apply_loss(state, "B", params.kappa_b)
    state = apply_coupler(state, "S", "P", params.eta, params.kappa_p, params.kappa_s)
    state = two_mode_squeeze(state, "P", "A", g_p, "antisqueeze")
    return two_mode_squeeze(state, "S", "B", g_ps, "antisqueeze")


def run_dual_band(params):
    """Cooperative protocol with both bands squeezed and antisqueezed.

    Delivers two crossband pairs, (S, A) and (P, B).
    """
    oracle = cf.oracle_dual_band(params)
    state = dual_band_state(params, oracle.g_p, oracle.g_ps)
    pairs = {"SA": ("S", "A"), "PB": ("P", "B")}
    delta = _delta(state, oracle.cov_full, oracle.labels)
    if oracle.cov_full is not None and params.symmetric:
        general = cf.general_covariance(params, oracle.g_p, oracle.g_ps)
        delta = max(delta, _delta(state, general, cf.FULL_ORDER))
    return ProtocolResult(
        protocol="dual_band",
        params=params,
        state=state,
        pairs=pairs,
        measures=_measure_pairs(state, pairs),
        eta_ea=oracle.eta_ea,
        g_p=oracle.g_p,
        g_ps=oracle.g_ps,
        oracle_delta=delta,
        extras={"n_s": oracle.n_s, "gamma": oracle.gamma},
    )


RUNNERS = {
    "DE": run_direct_entanglement,
    "DT": run_direct_transduction,
    "single_band_EA": run_single_band_ea,
    "dual_band": run_dual_band,
}


def run(protocol, params):
    """Dispatch to the runner for ``protocol`` (one of :data:`PROTOCOLS`)."""
    try:
        runner = RUNNERS[protocol]
    except KeyError:
        raise ValueError(f"unknown protocol {protocol!r}; choose from {PROTOCOLS}") from None
    return runner(params)
