"""Gaussian tripartite entanglement, EPR-steering and 1SDI-QKD key-rate toolkit.

Builds three-mode Gaussian states from two optical models (a symmetric
beamsplitter network fed by squeezed vacua, and an asymmetric downconversion
plus sum-frequency system in travelling-wave and intracavity form) and
evaluates entanglement, steering and key-rate criteria on them.
"""

from .cavity import (
    AboveThresholdError,
    CavityParams,
    CavitySystem,
    NoThresholdError,
    build_system,
    critical_pump,
    output_spectrum,
    pump_sweep,
    spectral_criteria,
)
from .criteria import (
    CriterionResult,
    DegenerateInputError,
    duan_simon,
    inferred_variance,
    key_rate,
    reid_product,
    vlf_pair,
    vlf_trio,
    wang_bound,
)
from .gaussian import (
    GaussianState,
    QuadratureMap,
    apply_map,
    beamsplitter_map,
    combo_variance,
    is_symplectic,
    squeezed_inputs,
    symplectic_form,
    vacuum_state,
)
from .symmetric import SymmetricParams, build_symmetric_state, closed_forms, verify_consistency
from .travelling_wave import (
    AsymParams,
    CoefficientSet,
    coefficient_set,
    key_window,
    tw_state,
    tw_steering,
    tw_transform,
)

__version__ = "0.1.0"
