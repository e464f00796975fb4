"""Gaussian simulation of entanglement-assisted microwave-optical transduction."""

from .closed_form import ProtocolParams, db_to_gain, gain_to_db
from .errors import (
    CrossbandError,
    DivergenceError,
    DomainError,
    ModeError,
    ParameterError,
    PhysicalityError,
    PurityError,
    SingularConfigurationError,
)
from .gaussian import (
    GaussianState,
    SymplecticOp,
    apply_coupler,
    apply_loss,
    partial_trace,
    symplectic_spectrum,
    two_mode_squeeze,
    vacuum_state,
)
from .measures import (
    entanglement_entropy_pure,
    epr_squeezing_db,
    epr_variance,
    log_negativity,
    plob_bound,
)
from .protocols import (
    PROTOCOLS,
    ProtocolResult,
    run,
    run_direct_entanglement,
    run_direct_transduction,
    run_dual_band,
    run_single_band_ea,
)

__version__ = "0.1.0"
