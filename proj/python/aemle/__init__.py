"""Noise-aware maximum-likelihood amplitude estimation.

Thin wrapper over the C++ core; see ``aemle --help`` for the command line.
"""

import json

from ._aemle import (
    AemleError,
    __version__,
    anomaly_density,
    anomality,
    estimate,
    fisher,
    hit_probability,
    max_grover_depth,
    required_noise,
    sample_counts,
    schedule,
    sin2_target,
)
from ._aemle import _hardware_spec_json


def hardware_spec(eps=1e-3, n_int=5, shots=100, kappa_bar=None, interval="per_shot"):
    """Hardware requirement table as a dict."""
    return json.loads(_hardware_spec_json(eps, n_int, shots, kappa_bar, interval))


__all__ = [
    "AemleError",
    "__version__",
    "anomaly_density",
    "anomality",
    "estimate",
    "fisher",
    "hardware_spec",
    "hit_probability",
    "max_grover_depth",
    "required_noise",
    "sample_counts",
    "schedule",
    "sin2_target",
]
