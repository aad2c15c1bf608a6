"""Python bindings for the pass_noma optimiser.

Channels are complex arrays of shape (K, N_t); radiation vectors are real
non-negative arrays of length N_t. Configuration text uses the same INI format
as the command-line tool.
"""

from ._core import (
    PassNomaError,
    best_activation,
    channels,
    closed_form_alpha,
    couplings_to_fractions,
    dbm_to_watts,
    effective_gains,
    epr_couplings,
    epr_rate,
    fractions_to_couplings,
    grid_alpha,
    optimize,
    random_p,
    render_config,
    run_experiment,
    user_rates,
    watts_to_dbm,
)

__all__ = [
    "PassNomaError",
    "best_activation",
    "channels",
    "closed_form_alpha",
    "couplings_to_fractions",
    "dbm_to_watts",
    "effective_gains",
    "epr_couplings",
    "epr_rate",
    "fractions_to_couplings",
    "grid_alpha",
    "optimize",
    "random_p",
    "render_config",
    "run_experiment",
    "user_rates",
    "watts_to_dbm",
]
