"""Electro-hydraulic servo system simulation, sliding-mode observers and
leakage-fault reconstruction."""

from .analysis import (
    ChannelMetrics,
    LyapunovCheck,
    MetricsReport,
    chattering_index,
    channel_metrics,
    comparison_table,
    lyapunov_matrices,
    norms,
    reach_time,
    reach_time_bound,
    rms,
)
from .cells import (
    AstwCellParams,
    AstwCellState,
    BoundSet,
    GainCheck,
    astw_step,
    check_gain_condition,
    fosmo_step,
    sign,
    sqrt_sign,
    stw_step,
)
from .harness import (
    ConfigError,
    ControllerGains,
    FaultWindow,
    ForceDisturbance,
    InitialPlantState,
    NoiseStd,
    NumericalAbort,
    PositionProfile,
    Scenario,
    SupplyUncertainty,
    SimTrace,
    TRACE_COLUMNS,
    default_scenario,
    nofault_scenario,
    noisy_scenario,
    pi_controllers,
    read_scenario,
    read_trace,
    run_scenario,
    step_closed_loop,
    write_scenario,
    write_trace,
)
from .observer import (
    ChannelInjections,
    FosmoGains,
    InitialEstimates,
    ObserverConfig,
    ObserverState,
    StwGains,
    init_observer,
    observer_step,
    sliding_errors,
)
from .plant import (
    ControlInputs,
    DomainViolation,
    FaultInputs,
    PlantParams,
    PlantState,
    advance_plant,
    leakage_flows,
    measure,
    pdv_flows,
    plant_derivative,
    pressure_rate_coeffs,
)
from .reconstruction import (
    FaultEstimate,
    equivalent_injection,
    estimate_faults,
    lowpass,
    reconstruct_cylinder_perturbation,
    reconstruct_faults,
    sliding_onset,
)

__version__ = "0.1.0"
