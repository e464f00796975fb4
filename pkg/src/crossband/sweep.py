"""Parameter sweeps, figure data and randomized oracle validation."""

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from itertools import product
from typing import Optional

import numpy as np

from . import closed_form as cf
from .measures import epr_squeezing_db, epr_variance
from .protocols import PROTOCOLS, dual_band_state, run, single_band_state

AXES = {
    "G_dB": "g",
    "G_S_dB": "g_s",
    "eta": "eta",
    "kappa_E": "kappa_e",
    "kappa_A": "kappa_a",
    "N_input": "n_input",
}
ORACLE_TOL = 1e-9


@dataclass(frozen=True)
class SweepAxis:
    name: str
    start: float
    stop: float
    points: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.name not in AXES:
            raise ValueError(f"unknown sweep axis {self.name!r}; choose from {sorted(AXES)}")
        if int(self.points) < 2:
            raise ValueError(f"axis {self.name} needs at least 2 points, got {self.points}")
        if self.spacing not in ("linear", "log"):
            raise ValueError(f"spacing must be 'linear' or 'log', got {self.spacing!r}")
        if self.spacing == "log" and (self.start <= 0 or self.stop <= 0):
            raise ValueError("log spacing needs positive endpoints")

    def values(self):
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, int(self.points))
        return np.linspace(self.start, self.stop, int(self.points))


@dataclass(frozen=True)
class SweepSpec:
    """A line or grid sweep of one protocol.

    ``fixed`` holds :class:`~crossband.closed_form.ProtocolParams` keyword
    arguments. For the dual-band protocol the signal-band gain follows the
    probe-band gain unless it is fixed or swept; a swept ``kappa_A`` also
    sets ``kappa_B`` unless that is fixed.
    """

    protocol: str
    axes: tuple
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.protocol not in PROTOCOLS:
            raise ValueError(f"unknown protocol {self.protocol!r}")
        axes = tuple(self.axes)
        if not 1 <= len(axes) <= 2:
            raise ValueError("a sweep has one or two axes")
        if len({a.name for a in axes}) != len(axes):
            raise ValueError("sweep axes must be distinct")
        object.__setattr__(self, "axes", axes)

    def points(self):
        """Parameter sets in row order, outer axis major."""
        names = [a.name for a in self.axes]
        for combo in product(*(a.values() for a in self.axes)):
            kwargs = dict(self.fixed)
            for name, value in zip(names, combo):
                value = float(value)
                if name.endswith("_dB"):
                    value = cf.db_to_gain(value)
                kwargs[AXES[name]] = value
            if "kappa_A" in names and "kappa_b" not in self.fixed:
                kwargs["kappa_b"] = kwargs["kappa_a"]
            if (self.protocol == "dual_band" and "G_S_dB" not in names
                    and "g_s" not in self.fixed):
                kwargs["g_s"] = kwargs.get("g", 1.0)
            yield cf.ProtocolParams(**kwargs)


@dataclass(frozen=True)
class SweepRecord:
    """One CSV row; ``None`` marks a value that does not apply."""

    protocol: str
    eta: float
    kappa_E: float
    kappa_A: float
    kappa_B: float
    G_dB: float
    G_S_dB: float
    Gp: Optional[float]
    Gp_S: Optional[float]
    N_S: float
    gamma: float
    eta_EA: Optional[float]
    entropy_ebits: Optional[float]
    logneg_ebits: float
    epr_variance: float
    epr_squeezing_dB: float
    oracle_delta: Optional[float]

    @classmethod
    def from_result(cls, result):
        p = result.params
        m = result.measures[result.primary_pair()]
        return cls(
            protocol=result.protocol,
            eta=p.eta,
            kappa_E=p.kappa_e,
            kappa_A=p.kappa_a,
            kappa_B=p.kappa_b,
            G_dB=cf.gain_to_db(p.g),
            G_S_dB=cf.gain_to_db(p.g_s),
            Gp=result.g_p,
            Gp_S=result.g_ps,
            N_S=m.n_photons,
            gamma=m.gamma,
            eta_EA=result.eta_ea,
            entropy_ebits=m.entropy_ebits,
            logneg_ebits=m.log_negativity_ebits,
            epr_variance=m.epr_variance,
            epr_squeezing_dB=m.epr_squeezing_db,
            oracle_delta=result.oracle_delta,
        )


SWEEP_COLUMNS = tuple(f.name for f in fields(SweepRecord))


def evaluate(protocol, params):
    return SweepRecord.from_result(run(protocol, params))


def _evaluate_packed(job):
    return evaluate(*job)


def run_sweep(spec, workers=1):
    """Evaluate every grid point; the row order never depends on ``workers``."""
    jobs = [(spec.protocol, params) for params in spec.points()]
    if workers <= 1:
        return [_evaluate_packed(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_evaluate_packed, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def format_value(value, digits=None):
    """CSV text for one value; blank for ``None``, 17 significant digits by default."""
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return format(float(value), f".{17 if digits is None else int(digits)}g")


def write_csv(header, rows, stream, digits=None):
    """Write a header and rows (sequences or dataclasses) with LF line endings."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        if hasattr(row, "__dataclass_fields__"):
            row = [getattr(row, name) for name in header]
        writer.writerow([format_value(v, digits) for v in row])


def records_to_csv(records, digits=None):
    buf = io.StringIO()
    write_csv(SWEEP_COLUMNS, records, buf, digits)
    return buf.getvalue()


# --- figure data --------------------------------------------------------------

FIG_ETA = 0.01


def _symmetric_pair(params):
    """Return (single-band, dual-band) results for the same probe gain."""
    single = run("single_band_EA", params.replace(g_s=1.0))
    dual = run("dual_band", params.replace(g_s=params.g))
    return single, dual


def fig3_table(points=81, eta=FIG_ETA):
    """Lossless comparison of both assisted protocols with the baseline."""
    header = (
        "G_dB", "G", "single_entropy_ebits", "dual_entropy_ebits", "baseline_entropy_ebits",
        "entropy_advantage_ebits", "single_epr_variance", "dual_epr_variance",
        "baseline_epr_variance", "single_epr_squeezing_dB", "dual_epr_squeezing_dB",
        "epr_advantage_dB",
    )
    baseline = cf.de_entropy(eta)
    n_de = eta / (1.0 - eta)
    base_epr = n_de + 0.5 - np.sqrt(n_de * (n_de + 1.0))
    rows = []
    for g_db in np.linspace(0.0, 20.0, points):
        g = cf.db_to_gain(g_db)
        single, dual = _symmetric_pair(cf.ProtocolParams(eta=eta, g=g))
        s, d = single.measures["SA"], dual.measures["SA"]
        rows.append((
            g_db, g, s.entropy_ebits, d.entropy_ebits, baseline,
            d.entropy_ebits - s.entropy_ebits, s.epr_variance, d.epr_variance, base_epr,
            s.epr_squeezing_db, d.epr_squeezing_db,
            10.0 * np.log10(s.epr_variance / d.epr_variance),
        ))
    return header, rows


def fig4_table(points=81, eta=FIG_ETA, kappas=(0.30, 0.55)):
    """Log-negativity of both assisted protocols under intrinsic loss."""
    header = ("kappa_E", "G_dB", "G", "single_logneg_ebits", "dual_logneg_ebits",
              "baseline_entropy_ebits")
    baseline = cf.de_entropy(eta)
    rows = []
    for kappa_e in kappas:
        for g_db in np.linspace(0.0, 20.0, points):
            g = cf.db_to_gain(g_db)
            single, dual = _symmetric_pair(cf.ProtocolParams(eta=eta, kappa_e=kappa_e, g=g))
            rows.append((kappa_e, g_db, g, single.measures["SA"].log_negativity_ebits,
                         dual.measures["SA"].log_negativity_ebits, baseline))
    return header, rows


def epr_grid(pair="SA", points=21, eta=FIG_ETA, max_db=20.0):
    """EPR variance of a dual-band output pair on a ``(G_dB, G_S_dB)`` grid.

    Returns ``(g_db, gs_db, variance)`` with ``variance[i, j]`` at
    ``G_dB = g_db[i]`` and ``G_S_dB = gs_db[j]``.
    """
    modes = {"SA": ("S", "A"), "PB": ("P", "B")}[pair]
    axis = np.linspace(0.0, max_db, points)
    var = np.empty((points, points))
    for i, g_db in enumerate(axis):
        for j, gs_db in enumerate(axis):
            params = cf.ProtocolParams(eta=eta, g=cf.db_to_gain(g_db), g_s=cf.db_to_gain(gs_db))
            g_p, g_ps = cf.resolved_gains(params)
            state = dual_band_state(params, g_p, g_ps)
            var[i, j] = epr_variance(state, *modes)
    return axis, axis.copy(), var


def _grid_table(pair, points):
    g_db, gs_db, var = epr_grid(pair, points)
    header = ("G_dB", "G_S_dB", "epr_variance", "epr_squeezing_dB")
    rows = [(g_db[i], gs_db[j], var[i, j], epr_squeezing_db(var[i, j]))
            for i in range(len(g_db)) for j in range(len(gs_db))]
    return header, rows


def fig5_table(points=21):
    """EPR squeezing of the (S, A) pair over probe and signal gains."""
    return _grid_table("SA", points)


def fig6_table(points=21):
    """EPR squeezing of the (P, B) pair over probe and signal gains."""
    return _grid_table("PB", points)


FIGURES = {"fig3": fig3_table, "fig4": fig4_table, "fig5": fig5_table, "fig6": fig6_table}


def figure_table(which):
    try:
        return FIGURES[which]()
    except KeyError:
        raise ValueError(f"unknown figure {which!r}; choose from {sorted(FIGURES)}") from None


# --- randomized validation ----------------------------------------------------

REFERENCE_POINT = cf.ProtocolParams(eta=0.01, g=100.0, g_s=100.0)


def random_params(rng, explicit_gains=False):
    """Draw a valid parameter point for the equivalence check."""
    while True:
        eta = rng.uniform(1e-4, 0.5)
        kappa_e = rng.uniform(0.0, 0.6)
        if eta + kappa_e > 1.0:
            continue
        kappa_f = kappa_e if rng.random() < 0.5 else rng.uniform(0.0, min(0.6, 1.0 - eta))
        kwargs = dict(
            eta=eta, kappa_e=kappa_e, kappa_f=kappa_f,
            g=rng.uniform(1.0, 100.0), g_s=rng.uniform(1.0, 100.0),
            kappa_a=rng.uniform(0.5, 1.0), kappa_b=rng.uniform(0.5, 1.0),
        )
        if explicit_gains:
            kwargs.update(g_p=rng.uniform(1.0, 10.0), g_ps=rng.uniform(1.0, 10.0))
        params = cf.ProtocolParams(**kwargs)
        try:
            params.check_coupler()
        except ValueError:
            continue
        return params


def covariance_deviation(params, oracle=cf.general_covariance):
    """Largest entry-wise gap between the numeric circuits and ``oracle``.

    Both the dual-band circuit and the single-band circuit (same point with
    ``g_s = 1``) are compared.
    """
    g_p, g_ps = cf.resolved_gains(params)
    numeric = dual_band_state(params, g_p, g_ps).reorder(cf.FULL_ORDER).cov
    delta = np.max(np.abs(numeric - oracle(params, g_p, g_ps, cf.FULL_ORDER)))
    single = params.replace(g_s=1.0)
    g_p1 = (cf.single_band_optimal_gain(single.kappa_p, single.g)
            if single.g_p is None else single.g_p)
    order = ("S", "P", "A")
    numeric1 = single_band_state(single, g_p1).reorder(order).cov
    delta1 = np.max(np.abs(numeric1 - oracle(single, g_p1, 1.0, order)))
    return float(max(delta, delta1))


@dataclass
class ValidationReport:
    seed: int
    deviations: list
    points: list

    @property
    def max_deviation(self):
        return max(self.deviations)

    @property
    def passed(self):
        return self.max_deviation <= ORACLE_TOL

    def failures(self):
        return [(k, d, p) for k, (d, p) in enumerate(zip(self.deviations, self.points))
                if d > ORACLE_TOL]


def validate(seed, trials, oracle=cf.general_covariance):
    """Compare numeric and closed-form covariances at random parameter points.

    Trial 0 is always the lossless symmetric reference point; the others are
    drawn from ``seed``, half of them with explicit antisqueezing gains.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    points = [REFERENCE_POINT]
    points += [random_params(rng, explicit_gains=bool(k % 2)) for k in range(1, trials)]
    deviations = [covariance_deviation(p, oracle) for p in points]
    return ValidationReport(seed=seed, deviations=deviations, points=points)
