"""Zero-mean Gaussian states and the symplectic operations acting on them.

Quadratures are ``q = a + a^dagger`` and ``p = -i (a - a^dagger)`` so the
vacuum covariance is the identity and a thermal mode with mean photon number
``N`` has variance ``2N + 1``. Covariances are stored mode-major,
``(q1, p1, q2, p2, ...)``.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.linalg import null_space

from .errors import (
    DomainError,
    ModeError,
    ParameterError,
    PhysicalityError,
    SingularConfigurationError,
)

Mode = Union[str, int]

SYMMETRY_TOL = 1e-10
PHYSICALITY_TOL = 1e-9
SYMPLECTIC_TOL = 1e-10
# kappa_P and kappa_S closer than this are treated as equal in the coupler
REFLECTIVITY_TOL = 1e-14


def omega(n_modes):
    """Symplectic form for ``n_modes`` modes in mode-major ordering."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def symplectic_eigenvalues(cov):
    """Symplectic eigenvalues of a positive-definite matrix, ascending.

    Uses a Cholesky factor ``L`` of ``cov``: the Hermitian matrix
    ``i L^T Omega L`` is similar to ``i Omega cov`` and its spectrum comes
    in exact ``+-nu`` pairs.

    Raises
    ------
    PhysicalityError
        If ``cov`` is not positive definite.
    """
    cov = np.asarray(cov, dtype=float)
    n = cov.shape[0] // 2
    try:
        chol = np.linalg.cholesky(cov)
    except np.linalg.LinAlgError:
        lowest = float(np.linalg.eigvalsh(cov).min())
        raise PhysicalityError(
            f"covariance is not positive definite (lowest eigenvalue {lowest:.3e})",
            eigenvalue=lowest,
        ) from None
    herm = 1j * chol.T @ omega(n) @ chol
    evals = np.linalg.eigvalsh(herm)
    return np.sort(evals[n:])


@dataclass(frozen=True)
class GaussianState:
    """Zero-mean multimode Gaussian state.

    Parameters
    ----------
    labels : sequence of str
        Distinct mode names, in the order of the covariance blocks.
    cov : array_like
        Real ``2n x 2n`` quadrature covariance. It is symmetrised on
        construction and checked for physicality.
    """

    labels: tuple
    cov: np.ndarray

    def __post_init__(self):
        labels = tuple(str(lab) for lab in self.labels)
        if not labels:
            raise ModeError("a state needs at least one mode")
        if len(set(labels)) != len(labels):
            dup = sorted({lab for lab in labels if labels.count(lab) > 1})
            raise ModeError(f"duplicate mode labels: {dup}")
        cov = np.array(self.cov, dtype=float)
        if cov.shape != (2 * len(labels), 2 * len(labels)):
            raise ModeError(
                f"covariance shape {cov.shape} does not match {len(labels)} modes"
            )
        asym = np.max(np.abs(cov - cov.T))
        if asym > SYMMETRY_TOL * max(1.0, np.max(np.abs(cov))):
            raise PhysicalityError(f"covariance is not symmetric (defect {asym:.3e})")
        cov = 0.5 * (cov + cov.T)
        nu = symplectic_eigenvalues(cov)
        if nu[0] < 1.0 - PHYSICALITY_TOL:
            raise PhysicalityError(
                f"symplectic eigenvalue {nu[0]:.12g} below 1", eigenvalue=float(nu[0])
            )
        cov.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "cov", cov)

    @property
    def n_modes(self):
        return len(self.labels)

    def index(self, mode):
        """Position of ``mode`` (label or integer index)."""
        if isinstance(mode, (int, np.integer)):
            if not 0 <= mode < self.n_modes:
                raise ModeError(f"mode index {mode} out of range for {self.n_modes} modes")
            return int(mode)
        try:
            return self.labels.index(mode)
        except ValueError:
            raise ModeError(f"unknown mode {mode!r}; state has {self.labels}") from None

    def block(self, mode_a, mode_b=None):
        """The 2x2 covariance block between two modes (or one mode)."""
        i = self.index(mode_a)
        j = i if mode_b is None else self.index(mode_b)
        return np.array(self.cov[2 * i:2 * i + 2, 2 * j:2 * j + 2])

    def photon_number(self, mode):
        """Mean photon number of a single mode."""
        return (np.trace(self.block(mode)) / 2.0 - 1.0) / 2.0

    def reorder(self, labels):
        """Same state with its modes permuted (or restricted) to ``labels``."""
        idx = [self.index(lab) for lab in labels]
        quad = np.ravel([[2 * i, 2 * i + 1] for i in idx])
        return GaussianState(tuple(self.labels[i] for i in idx), self.cov[np.ix_(quad, quad)])

    def with_vacuum(self, labels):
        """Tensor the state with fresh vacuum modes appended at the end."""
        labels = tuple(labels)
        n_new = len(labels)
        cov = np.eye(2 * (self.n_modes + n_new))
        cov[:2 * self.n_modes, :2 * self.n_modes] = self.cov
        return GaussianState(self.labels + labels, cov)

    def is_pure(self, tol=1e-8):
        return bool(np.all(np.abs(symplectic_spectrum(self) - 1.0) <= tol))


@dataclass(frozen=True)
class SymplecticOp:
    """Real symplectic matrix acting on the quadratures of ``acted_modes``."""

    matrix: np.ndarray
    acted_modes: tuple

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=float)
        modes = tuple(self.acted_modes)
        if mat.shape != (2 * len(modes), 2 * len(modes)):
            raise ModeError(f"matrix shape {mat.shape} does not match modes {modes}")
        if len(set(modes)) != len(modes):
            raise ModeError(f"operator acts twice on the same mode: {modes}")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "acted_modes", modes)

    def symplectic_defect(self):
        """``max |S Omega S^T - Omega|``."""
        om = omega(len(self.acted_modes))
        return float(np.max(np.abs(self.matrix @ om @ self.matrix.T - om)))

    def embed(self, state):
        """Full ``2n x 2n`` matrix of this operator on ``state``."""
        idx = [state.index(m) for m in self.acted_modes]
        quad = np.ravel([[2 * i, 2 * i + 1] for i in idx])
        full = np.eye(2 * state.n_modes)
        full[np.ix_(quad, quad)] = self.matrix
        return full

    def apply(self, state):
        full = self.embed(state)
        return GaussianState(state.labels, full @ state.cov @ full.T)


def vacuum_state(labels):
    """Vacuum on the named modes.

    >>> vacuum_state(["S", "P"]).cov.shape
    (4, 4)
    """
    labels = tuple(labels)
    return GaussianState(labels, np.eye(2 * len(labels)))


def tmsv_covariance(n_photons):
    """Two-mode squeezed vacuum covariance with ``n_photons`` per mode."""
    if n_photons < 0:
        raise DomainError(f"photon number must be >= 0, got {n_photons}")
    a = 2.0 * n_photons + 1.0
    c = 2.0 * np.sqrt(n_photons * (n_photons + 1.0))
    z = np.diag([1.0, -1.0])
    return np.block([[a * np.eye(2), c * z], [c * z, a * np.eye(2)]])


def squeezer_matrix(gain, antisqueeze=False):
    """4x4 two-mode squeezer acting on modes ``(i, j)``.

    The squeezer maps ``a_i -> sqrt(G) a_i + sqrt(G-1) a_j^dagger``;
    the antisqueezer carries a relative minus sign and is its inverse.
    """
    if not gain >= 1.0:
        raise DomainError(f"squeezing gain must be >= 1, got {gain}")
    ch = np.sqrt(gain)
    sh = np.sqrt(gain - 1.0)
    if antisqueeze:
        sh = -sh
    # real Bogoliubov a -> A a + B a^dagger has q-block A + B and p-block A - B
    mat = np.zeros((4, 4))
    mat[0, 0] = mat[2, 2] = ch
    mat[1, 1] = mat[3, 3] = ch
    mat[0, 2] = mat[2, 0] = sh
    mat[1, 3] = mat[3, 1] = -sh
    return mat


def two_mode_squeeze(state, i, j, gain, direction="squeeze"):
    """Apply a two-mode squeezer (or antisqueezer) of gain ``gain`` to modes ``i, j``."""
    if direction not in ("squeeze", "antisqueeze"):
        raise ValueError(f"direction must be 'squeeze' or 'antisqueeze', got {direction!r}")
    a, b = state.index(i), state.index(j)
    if a == b:
        raise ModeError("two-mode squeezing needs two distinct modes")
    op = SymplecticOp(squeezer_matrix(gain, direction == "antisqueeze"), (a, b))
    return op.apply(state)


def _check_unit(name, value):
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {value}")


def coupler_amplitudes(eta, kappa_p, kappa_s):
    """Amplitudes of the coupler outputs ``P'`` and ``S'``.

    Returns a 2x4 array; rows are ``P'`` and ``S'``, columns are the inputs
    ``(P, S, E, F)`` with ``E`` and ``F`` vacuum environment modes.
    """
    for name, value in (("eta", eta), ("kappa_P", kappa_p), ("kappa_S", kappa_s)):
        _check_unit(name, value)
    kappa_e = 1.0 - eta - kappa_p
    kappa_f = 1.0 - eta - kappa_s
    if kappa_e < -1e-12 or kappa_f < -1e-12:
        raise ParameterError(
            f"eta + kappa exceeds 1 (kappa_E = {kappa_e:.3g}, kappa_F = {kappa_f:.3g})"
        )
    kappa_e = max(kappa_e, 0.0)
    kappa_f = max(kappa_f, 0.0)
    diff = np.sqrt(kappa_p) - np.sqrt(kappa_s)
    if abs(diff) <= REFLECTIVITY_TOL:
        diff = 0.0
    if diff == 0.0:
        kappa_es = 0.0
    elif kappa_e == 0.0:
        raise SingularConfigurationError(
            "kappa_E = 0 requires kappa_P == kappa_S "
            f"(got kappa_P = {kappa_p}, kappa_S = {kappa_s})"
        )
    else:
        kappa_es = eta / kappa_e * diff ** 2
    kappa_fs = kappa_f - kappa_es
    if kappa_fs < -1e-12:
        raise ParameterError(
            f"signal-side loss kappa_F = {kappa_f:.6g} is smaller than the "
            f"loss {kappa_es:.6g} forced by unequal reflectivities"
        )
    kappa_fs = max(kappa_fs, 0.0)
    sign = 1.0 if diff >= 0.0 else -1.0
    return np.array([
        [np.sqrt(kappa_p), np.sqrt(eta), np.sqrt(kappa_e), 0.0],
        [-np.sqrt(eta), np.sqrt(kappa_s), sign * np.sqrt(kappa_es), np.sqrt(kappa_fs)],
    ])


def coupler_matrix(eta, kappa_p, kappa_s):
    """8x8 passive symplectic of the coupler on modes ``(P, S, E, F)``.

    The two environment output rows are an arbitrary orthonormal completion;
    they are traced out by :func:`apply_coupler`.
    """
    rows = coupler_amplitudes(eta, kappa_p, kappa_s)
    ortho = np.vstack([rows, null_space(rows).T])
    return np.kron(ortho, np.eye(2))


def apply_coupler(state, signal, probe, eta, kappa_p, kappa_s):
    """Pass ``signal`` and ``probe`` through the lossy nonlinear coupler.

    Two vacuum environment modes are appended, mixed in and traced out, so
    the returned state has the same modes as ``state``. Phase shifts are
    omitted, all amplitudes are real.
    """
    s_idx, p_idx = state.index(signal), state.index(probe)
    if s_idx == p_idx:
        raise ModeError("signal and probe must be distinct modes")
    env = ("__E", "__F")
    extended = state.with_vacuum(env)
    op = SymplecticOp(
        coupler_matrix(eta, kappa_p, kappa_s),
        (p_idx, s_idx, state.n_modes, state.n_modes + 1),
    )
    return partial_trace(op.apply(extended), state.labels)


def apply_loss(state, mode, transmissivity):
    """Pure-loss channel of the given transmissivity on one mode."""
    _check_unit("transmissivity", transmissivity)
    i = state.index(mode)
    scale = np.ones(2 * state.n_modes)
    scale[2 * i:2 * i + 2] = np.sqrt(transmissivity)
    cov = scale[:, None] * state.cov * scale[None, :]
    cov[2 * i:2 * i + 2, 2 * i:2 * i + 2] += (1.0 - transmissivity) * np.eye(2)
    return GaussianState(state.labels, cov)


def partial_trace(state, keep):
    """Reduced state on the modes in ``keep``, in the state's own order."""
    keep = list(keep)
    if not keep:
        raise ModeError("cannot trace out every mode")
    wanted = {state.labels[state.index(m)] for m in keep}
    return state.reorder([lab for lab in state.labels if lab in wanted])


def symplectic_spectrum(state):
    """Symplectic eigenvalues of ``state``, ascending, each at least 1."""
    cov = state.cov if isinstance(state, GaussianState) else np.asarray(state, dtype=float)
    nu = symplectic_eigenvalues(cov)
    if nu[0] < 1.0 - PHYSICALITY_TOL:
        raise PhysicalityError(
            f"symplectic eigenvalue {nu[0]:.12g} below 1", eigenvalue=float(nu[0])
        )
    return nu
