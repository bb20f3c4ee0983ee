"""Closed-loop simulation harness.

Fixed-step engine that runs plant + substitute PI controllers + observer,
executes a leakage-fault schedule, reconstructs faults online and logs one
record per sample interval.  Scenario files are strict JSON (unknown keys
rejected with their path); traces are CSV with a fixed header and floats
printed with 17 significant digits so a written trace replays bit-exactly.

Measurements, controls, injections and fault inputs are sampled/held at dt;
the continuous plant and observer lines integrate with explicit Euler at
dt/substeps (the hydraulics are stiffer than the 1 ms sample rate).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np

from .cells import AstwCellParams
from .observer import (
    FosmoGains,
    InitialEstimates,
    ObserverConfig,
    ObserverState,
    StwGains,
    init_observer,
    observer_step,
)
from .plant import (
    ControlInputs,
    FaultInputs,
    PlantParams,
    PlantState,
    advance_plant,
    leakage_flows,
)
from .reconstruction import lowpass_step

TWO_PI = 2.0 * math.pi

U1_RANGE = (-10.0, 10.0)
U2_RANGE = (0.0, 5.0)


class ConfigError(ValueError):
    """Scenario or file-format problem; maps to CLI exit code 2."""


class NumericalAbort(RuntimeError):
    """A state went non-finite; maps to CLI exit code 3."""

    def __init__(self, t: float, detail: str):
        super().__init__(f"non-finite state at t={t:.6g} s: {detail}")
        self.t = t
        self.detail = detail


@dataclass(frozen=True)
class ControllerGains:
    """PI gains for the substitute position and supply-pressure loops."""

    kp_pos: float = 10.0       # [V/m]
    ki_pos: float = 5.0        # [V/(m*s)]
    kp_supply: float = 1.0e-6  # [V/Pa]
    ki_supply: float = 2.0e-5  # [V/(Pa*s)]

    def validate(self) -> None:
        for name in ("kp_pos", "ki_pos", "kp_supply", "ki_supply"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"ControllerGains.{name} must be >= 0")


@dataclass(frozen=True)
class PositionProfile:
    """Desired cylinder position: offset + amplitude*sin(2*pi*f*t)."""

    offset: float = 0.1        # [m]
    amplitude: float = 0.05    # [m]
    frequency_hz: float = 0.05

    def setpoint(self, t: float) -> float:
        return self.offset + self.amplitude * math.sin(TWO_PI * self.frequency_hz * t)


@dataclass(frozen=True)
class SupplyUncertainty:
    """Sinusoidal additive uncertainty on the supply-pressure rate [Pa/s]."""

    amplitude: float = 0.0
    frequency_hz: float = 1.0

    def value(self, t: float) -> float:
        if self.amplitude == 0.0:
            return 0.0
        return self.amplitude * math.sin(TWO_PI * self.frequency_hz * t)


@dataclass(frozen=True)
class ForceDisturbance:
    """Sinusoidal disturbance force on the cylinder [N]."""

    amplitude: float = 0.0
    frequency_hz: float = 1.0

    def value(self, t: float) -> float:
        if self.amplitude == 0.0:
            return 0.0
        return self.amplitude * math.sin(TWO_PI * self.frequency_hz * t)


@dataclass(frozen=True)
class FaultWindow:
    """Fault-input deltas active on [t_start, t_end)."""

    t_start: float
    t_end: float
    C_i: float = 0.0
    C_e1: float = 0.0
    C_e2: float = 0.0
    f_d: float = 0.0
    Delta: float = 0.0


@dataclass(frozen=True)
class NoiseStd:
    """Measurement-noise standard deviations per channel."""

    P1: float = 0.0   # [Pa]
    P2: float = 0.0   # [Pa]
    Ps: float = 0.0   # [Pa]
    xc: float = 0.0   # [m]

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.P1, self.P2, self.Ps, self.xc)

    def validate(self) -> None:
        if any(v < 0.0 for v in self.as_tuple()):
            raise ValueError("noise standard deviations must be >= 0")


@dataclass(frozen=True)
class InitialPlantState:
    """Plant start point (spool centred, piston at rest)."""

    x1: float = 0.0
    P1: float = 1.0e6
    P2: float = 1.641e6
    Ps: float = 3.0e6
    xc: float = 0.1
    velocity: float = 0.0

    def to_state(self) -> PlantState:
        return PlantState(x1=self.x1, x2=self.P1, x3=self.P2,
                          x4=self.Ps, x5=self.xc, x6=self.velocity)


@dataclass(frozen=True)
class Scenario:
    duration: float = 30.0
    dt: float = 1.0e-3
    substeps: int = 5
    seed: int = 0
    plant: PlantParams = field(default_factory=PlantParams)
    initial_state: InitialPlantState = field(default_factory=InitialPlantState)
    observer: ObserverConfig = field(default_factory=ObserverConfig)
    controller: ControllerGains = field(default_factory=ControllerGains)
    position_profile: PositionProfile = field(default_factory=PositionProfile)
    supply_setpoint: float = 3.0e6
    faults: tuple[FaultWindow, ...] = ()
    noise_std: NoiseStd = field(default_factory=NoiseStd)
    supply_uncertainty: SupplyUncertainty = field(default_factory=SupplyUncertainty)
    force_disturbance: ForceDisturbance = field(default_factory=ForceDisturbance)
    reconstruction_tau: float = 0.02

    def validate(self) -> None:
        if self.dt <= 0.0:
            raise ConfigError("dt must be > 0")
        if self.duration < self.dt:
            raise ConfigError("duration must be >= dt")
        if self.substeps < 1:
            raise ConfigError("substeps must be >= 1")
        try:
            self.plant.validate()
            self.observer.validate()
            self.controller.validate()
            self.noise_std.validate()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        for fw in self.faults:
            if not (0.0 <= fw.t_start < fw.t_end <= self.duration):
                raise ConfigError(
                    f"fault window [{fw.t_start}, {fw.t_end}) outside [0, {self.duration}]")
        if self.reconstruction_tau < 0.0:
            raise ConfigError("reconstruction_tau must be >= 0")
        if self.reconstruction_tau and self.reconstruction_tau < self.dt:
            raise ConfigError("reconstruction_tau must be >= dt (or 0 to disable)")
        if self.observer.kind == "fosmo" and self.reconstruction_tau == 0.0:
            raise ConfigError("relay injections need reconstruction_tau > 0")
        init = self.initial_state
        if min(init.P1, init.P2, init.Ps) < 0.0:
            raise ConfigError("initial pressures must be >= 0")
        if not 0.0 <= init.xc <= self.plant.stroke:
            raise ConfigError("initial position must lie within the stroke")

    def n_records(self) -> int:
        return round(self.duration / self.dt) + 1

    def fault_inputs(self, t: float) -> FaultInputs:
        """Sum the active fault windows and the supply uncertainty at time t."""
        C_i = C_e1 = C_e2 = f_d = delta = 0.0
        for fw in self.faults:
            if fw.t_start <= t < fw.t_end:
                C_i += fw.C_i
                C_e1 += fw.C_e1
                C_e2 += fw.C_e2
                f_d += fw.f_d
                delta += fw.Delta
        delta += self.supply_uncertainty.value(t)
        f_d += self.force_disturbance.value(t)
        return FaultInputs(C_i=C_i, C_e1=C_e1, C_e2=C_e2, f_d=f_d, Delta=delta)


class TraceRecord(NamedTuple):
    """One logged sample; the CSV header is exactly these fields in order."""

    t: float
    x1: float
    x2: float
    x3: float
    x4: float
    x5: float
    x6: float
    y1: float
    y2: float
    y3: float
    y4: float
    z1_hat: float
    y1_hat: float
    y2_hat: float
    y3_hat: float
    y4_hat: float
    z2_hat: float
    sigma1: float
    sigma2: float
    sigma3: float
    sigma4: float
    mu1: float
    mu2: float
    mu3: float
    mu4: float
    L1_1: float
    L1_2: float
    L1_3: float
    L1_4: float
    L2_1: float
    L2_2: float
    L2_3: float
    L2_4: float
    QL1_true: float
    QL2_true: float
    f_d_true: float
    f1_hat: float
    f2_hat: float
    rho4_hat: float
    u1: float
    u2: float


TRACE_COLUMNS = TraceRecord._fields


@dataclass
class SimTrace:
    """Columnar run log: one row per sample, columns per TRACE_COLUMNS."""

    data: np.ndarray  # shape (n_records, len(TRACE_COLUMNS))

    def __post_init__(self) -> None:
        if self.data.ndim != 2 or self.data.shape[1] != len(TRACE_COLUMNS):
            raise ValueError("trace data must be (n, n_columns)")
        self._index = {name: i for i, name in enumerate(TRACE_COLUMNS)}

    def __len__(self) -> int:
        return self.data.shape[0]

    def __getitem__(self, name: str) -> np.ndarray:
        return self.data[:, self._index[name]]

    def write_csv(self, path) -> None:
        np.savetxt(path, self.data, fmt="%.17g", delimiter=",",
                   header=",".join(TRACE_COLUMNS), comments="")

    @classmethod
    def read_csv(cls, path) -> "SimTrace":
        with open(path, "r", encoding="utf-8") as fh:
            header = fh.readline().strip()
            if header.split(",") != list(TRACE_COLUMNS):
                raise ConfigError(f"{path}: trace header does not match the fixed schema")
            data = np.loadtxt(fh, delimiter=",", ndmin=2)
        if data.shape[1] != len(TRACE_COLUMNS):
            raise ConfigError(f"{path}: expected {len(TRACE_COLUMNS)} columns")
        return cls(data=data)


def pi_controllers(y: tuple[float, float, float, float],
                   setpoints: tuple[float, float], gains: ControllerGains,
                   integrators: tuple[float, float],
                   dt: float) -> tuple[ControlInputs, tuple[float, float]]:
    """PI position and supply-pressure loops with clamping anti-windup.

    The integrator holds its previous value whenever the output saturates.
    Returns the saturated control inputs and the updated integrator pair.
    """
    e_pos = setpoints[0] - y[3]
    e_sup = setpoints[1] - y[2]
    i_pos = integrators[0] + gains.ki_pos * dt * e_pos
    u1 = gains.kp_pos * e_pos + i_pos
    if u1 > U1_RANGE[1]:
        u1, i_pos = U1_RANGE[1], integrators[0]
    elif u1 < U1_RANGE[0]:
        u1, i_pos = U1_RANGE[0], integrators[0]
    i_sup = integrators[1] + gains.ki_supply * dt * e_sup
    u2 = gains.kp_supply * e_sup + i_sup
    if u2 > U2_RANGE[1]:
        u2, i_sup = U2_RANGE[1], integrators[1]
    elif u2 < U2_RANGE[0]:
        u2, i_sup = U2_RANGE[0], integrators[1]
    return ControlInputs(u1=u1, u2=u2), (i_pos, i_sup)


@dataclass
class LoopState:
    """Everything that persists across closed-loop steps."""

    plant: PlantState
    observer: ObserverState | None = None  # built from the first measurement
    integrators: tuple[float, float] = (0.0, 0.0)
    mu_eq1: float = 0.0
    mu_eq2: float = 0.0
    rho4_filt: float = 0.0


def step_closed_loop(state: LoopState, scenario: Scenario, t: float,
                     noise_row: tuple[float, float, float, float],
                     advance: bool = True) -> tuple[LoopState, TraceRecord]:
    """One sample interval: measure, control, observe, reconstruct, advance.

    The returned record holds the pre-advance plant state and estimates at
    time t together with the injections and gains produced at this step.
    With advance=False the plant and observer are left at time t (used for
    the final record of a run).
    """
    sc = scenario
    p = sc.plant
    x = state.plant
    faults = sc.fault_inputs(t)
    y = (x.x2 + noise_row[0], x.x3 + noise_row[1],
         x.x4 + noise_row[2], x.x5 + noise_row[3])
    setpoints = (sc.position_profile.setpoint(t), sc.supply_setpoint)
    u, integrators = pi_controllers(y, setpoints, sc.controller,
                                    state.integrators, sc.dt)
    obs = state.observer
    if obs is None:
        obs = init_observer(sc.observer, y)
    obs_next, inj = observer_step(obs, y, u, p, sc.observer, sc.dt, sc.substeps)

    tau = sc.reconstruction_tau
    mu_eq1 = lowpass_step(state.mu_eq1, inj.mu[0], sc.dt, tau)
    mu_eq2 = lowpass_step(state.mu_eq2, inj.mu[1], sc.dt, tau)
    rho4_filt = lowpass_step(state.rho4_filt, inj.mu[3], sc.dt, tau)
    f1_hat = mu_eq1 * (p.V01 + p.A1 * y[3]) / p.beta
    f2_hat = mu_eq2 * (p.V02 - p.A2 * y[3]) / p.beta

    QL1, QL2 = leakage_flows(x.x2, x.x3, p.P_T, faults)
    record = TraceRecord(
        t, x.x1, x.x2, x.x3, x.x4, x.x5, x.x6,
        y[0], y[1], y[2], y[3],
        obs.z1_hat, obs.y1_hat, obs.y2_hat, obs.y3_hat, obs.y4_hat, obs.z2_hat,
        inj.sigma[0], inj.sigma[1], inj.sigma[2], inj.sigma[3],
        inj.mu[0], inj.mu[1], inj.mu[2], inj.mu[3],
        inj.L1[0], inj.L1[1], inj.L1[2], inj.L1[3],
        inj.L2[0], inj.L2[1], inj.L2[2], inj.L2[3],
        QL1, QL2, faults.f_d,
        f1_hat, f2_hat, rho4_filt,
        u.u1, u.u2,
    )

    if advance:
        plant_next = advance_plant(x, u, faults, p, sc.dt, sc.substeps)
        for name, value in (("plant", plant_next.as_tuple()),
                            ("observer", obs_next.estimates())):
            if not all(map(math.isfinite, value)):
                raise NumericalAbort(t, f"{name} state diverged")
    else:
        plant_next = x
        obs_next = obs
    new = LoopState(plant=plant_next, observer=obs_next, integrators=integrators,
                    mu_eq1=mu_eq1, mu_eq2=mu_eq2, rho4_filt=rho4_filt)
    return new, record


def run_scenario(scenario: Scenario, observer_kind: str | None = None,
                 seed: int | None = None) -> SimTrace:
    """Run one closed-loop scenario and return the full trace.

    observer_kind / seed override the scenario fields.  The run is fully
    deterministic: (scenario, seed) fixes every record bit-for-bit.
    """
    sc = scenario
    if observer_kind is not None:
        sc = replace(sc, observer=replace(sc.observer, kind=observer_kind))
    if seed is not None:
        sc = replace(sc, seed=seed)
    sc.validate()

    n = sc.n_records()
    rng = np.random.default_rng(sc.seed)
    std = np.array(sc.noise_std.as_tuple())
    noise = (rng.normal(size=(n, 4)) * std).tolist()

    # supply integrator preloaded so the run starts at the pressure setpoint
    i_sup0 = sc.supply_setpoint / sc.plant.K_r
    state = LoopState(plant=sc.initial_state.to_state(), integrators=(0.0, i_sup0))

    dt = sc.dt
    rows = np.empty((n, len(TRACE_COLUMNS)))
    for k in range(n):
        state, record = step_closed_loop(state, sc, k * dt, noise[k],
                                         advance=k < n - 1)
        rows[k] = record
    return SimTrace(data=rows)


# --- scenario (de)serialization -------------------------------------------

_PLANT_KEYS = ("tau_v", "K_v", "tau_s", "K_r", "beta", "rho", "C_d", "w",
               "d1", "d2", "V01", "V02", "m", "c", "P_T", "stroke", "P_s_max")
_CELL_KEYS = ("epsilon", "alpha1", "Gamma1", "lambda1", "lambda2",
              "L_floor", "L_ramp", "L1_init")
_INITIAL_EST_KEYS = ("z1", "y1", "y2", "y3", "y4", "z2")
_FAULT_KEYS = ("t_start", "t_end", "C_i", "C_e1", "C_e2", "f_d", "Delta")
_SCENARIO_KEYS = ("duration", "dt", "substeps", "seed", "plant", "initial_state",
                  "observer", "controller", "position_profile", "supply_setpoint",
                  "faults", "noise_std", "supply_uncertainty", "force_disturbance",
                  "reconstruction_tau")


def _reject_unknown(d: dict, allowed, path: str) -> None:
    unknown = [k for k in d if k not in allowed]
    if unknown:
        where = f"{path}.{unknown[0]}" if path else unknown[0]
        raise ConfigError(f"unknown key '{where}'")


def _build(cls, d: dict, allowed, path: str):
    _reject_unknown(d, allowed, path)
    try:
        return cls(**d)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path or cls.__name__}: {exc}") from exc


def _observer_from_dict(d: dict, path: str) -> ObserverConfig:
    _reject_unknown(d, ("kind", "astw", "stw", "fosmo", "initial"), path)
    kwargs: dict = {"kind": d.get("kind", "astw")}
    if d.get("astw") is not None:
        kwargs["astw"] = tuple(
            _build(AstwCellParams, cd, _CELL_KEYS, f"{path}.astw[{i}]")
            for i, cd in enumerate(d["astw"]))
    if d.get("stw") is not None:
        kwargs["stw"] = tuple(
            _build(StwGains, gd, ("L1", "L2"), f"{path}.stw[{i}]")
            for i, gd in enumerate(d["stw"]))
    if d.get("fosmo") is not None:
        fd = dict(d["fosmo"])
        _reject_unknown(fd, ("rho", "rho4_vel"), f"{path}.fosmo")
        try:
            kwargs["fosmo"] = FosmoGains(rho=tuple(fd["rho"]), rho4_vel=fd["rho4_vel"])
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"{path}.fosmo: {exc}") from exc
    if d.get("initial") is not None:
        kwargs["initial"] = _build(InitialEstimates, d["initial"],
                                   _INITIAL_EST_KEYS, f"{path}.initial")
    return ObserverConfig(**kwargs)


def scenario_from_dict(d: dict) -> Scenario:
    """Build a Scenario from parsed JSON, rejecting unknown keys with their path."""
    if not isinstance(d, dict):
        raise ConfigError("scenario file must contain a JSON object")
    _reject_unknown(d, _SCENARIO_KEYS, "")
    kwargs: dict = {}
    for key in ("duration", "dt", "substeps", "seed", "supply_setpoint",
                "reconstruction_tau"):
        if key in d:
            kwargs[key] = d[key]
    if "plant" in d:
        kwargs["plant"] = _build(PlantParams, d["plant"], _PLANT_KEYS, "plant")
    if "initial_state" in d:
        kwargs["initial_state"] = _build(
            InitialPlantState, d["initial_state"],
            ("x1", "P1", "P2", "Ps", "xc", "velocity"), "initial_state")
    if "observer" in d:
        kwargs["observer"] = _observer_from_dict(d["observer"], "observer")
    if "controller" in d:
        kwargs["controller"] = _build(
            ControllerGains, d["controller"],
            ("kp_pos", "ki_pos", "kp_supply", "ki_supply"), "controller")
    if "position_profile" in d:
        kwargs["position_profile"] = _build(
            PositionProfile, d["position_profile"],
            ("offset", "amplitude", "frequency_hz"), "position_profile")
    if "faults" in d:
        kwargs["faults"] = tuple(
            _build(FaultWindow, fd, _FAULT_KEYS, f"faults[{i}]")
            for i, fd in enumerate(d["faults"]))
    if "noise_std" in d:
        kwargs["noise_std"] = _build(NoiseStd, d["noise_std"],
                                     ("P1", "P2", "Ps", "xc"), "noise_std")
    if "supply_uncertainty" in d:
        kwargs["supply_uncertainty"] = _build(
            SupplyUncertainty, d["supply_uncertainty"],
            ("amplitude", "frequency_hz"), "supply_uncertainty")
    if "force_disturbance" in d:
        kwargs["force_disturbance"] = _build(
            ForceDisturbance, d["force_disturbance"],
            ("amplitude", "frequency_hz"), "force_disturbance")
    scenario = Scenario(**kwargs)
    scenario.validate()
    return scenario


def scenario_to_dict(sc: Scenario) -> dict:
    obs = sc.observer
    obs_d: dict = {"kind": obs.kind}
    if obs.astw is not None:
        obs_d["astw"] = [{k: getattr(cp, k) for k in _CELL_KEYS} for cp in obs.astw]
    if obs.stw is not None:
        obs_d["stw"] = [{"L1": g.L1, "L2": g.L2} for g in obs.stw]
    if obs.fosmo is not None:
        obs_d["fosmo"] = {"rho": list(obs.fosmo.rho), "rho4_vel": obs.fosmo.rho4_vel}
    obs_d["initial"] = {k: getattr(obs.initial, k) for k in _INITIAL_EST_KEYS}
    return {
        "duration": sc.duration,
        "dt": sc.dt,
        "substeps": sc.substeps,
        "seed": sc.seed,
        "plant": {k: getattr(sc.plant, k) for k in _PLANT_KEYS},
        "initial_state": {k: getattr(sc.initial_state, k)
                          for k in ("x1", "P1", "P2", "Ps", "xc", "velocity")},
        "observer": obs_d,
        "controller": {k: getattr(sc.controller, k)
                       for k in ("kp_pos", "ki_pos", "kp_supply", "ki_supply")},
        "position_profile": {k: getattr(sc.position_profile, k)
                             for k in ("offset", "amplitude", "frequency_hz")},
        "supply_setpoint": sc.supply_setpoint,
        "faults": [{k: getattr(fw, k) for k in _FAULT_KEYS} for fw in sc.faults],
        "noise_std": {k: getattr(sc.noise_std, k) for k in ("P1", "P2", "Ps", "xc")},
        "supply_uncertainty": {k: getattr(sc.supply_uncertainty, k)
                               for k in ("amplitude", "frequency_hz")},
        "force_disturbance": {k: getattr(sc.force_disturbance, k)
                              for k in ("amplitude", "frequency_hz")},
        "reconstruction_tau": sc.reconstruction_tau,
    }


def read_scenario(path) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read scenario file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at line {exc.lineno}, "
                          f"column {exc.colno}: {exc.msg}") from exc
    return scenario_from_dict(raw)


def write_scenario(sc: Scenario, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario_to_dict(sc), fh, indent=2)
        fh.write("\n")


def write_trace(trace: SimTrace, path) -> None:
    trace.write_csv(path)


def read_trace(path) -> SimTrace:
    return SimTrace.read_csv(path)


# --- shipped defaults -------------------------------------------------------

def default_cell_params() -> tuple[AstwCellParams, ...]:
    """Adaptive-cell tuning for the default rig, per channel.

    Pressure channels live in Pa, so the adaptation/ratio constants are
    scaled to let the integral gain reach leak-induced pressure-rate levels
    (1e8 Pa/s and up) within a fraction of a second; the position channel
    lives in metres and stays near unit scale.
    """
    pressure = AstwCellParams(epsilon=2.0e4, alpha1=5.0e6, Gamma1=2.0,
                              lambda1=2.0e4, lambda2=1.0, L_floor=0.5,
                              L_ramp=100.0, L1_init=1.0)
    position = AstwCellParams(epsilon=2.0e-5, alpha1=2.0, Gamma1=2.0,
                              lambda1=2000.0, lambda2=1.0, L_floor=5.0e-4,
                              L_ramp=0.1, L1_init=1.0e-3)
    return (pressure, pressure, pressure, position)


def default_observer_config() -> ObserverConfig:
    """All three observer variants parameterized for the default rig.

    The fixed-gain variants are set from conservative worst-case perturbation
    bounds, which is exactly the practice the adaptive law is meant to avoid.
    """
    stw_pressure = StwGains(L1=1.0e5, L2=5.0e9)
    return ObserverConfig(
        kind="astw",
        astw=default_cell_params(),
        stw=(stw_pressure, stw_pressure, stw_pressure, StwGains(L1=50.0, L2=250.0)),
        fosmo=FosmoGains(rho=(1.0e9, 1.0e9, 1.0e8, 0.5), rho4_vel=500.0),
    )


def default_scenario() -> Scenario:
    """Sinusoid tracking at 30 bar supply with the two-stage leakage schedule."""
    return Scenario(
        observer=default_observer_config(),
        faults=(FaultWindow(t_start=12.0, t_end=30.0, C_i=1.0e-11),
                FaultWindow(t_start=23.0, t_end=30.0, C_e2=1.0e-11)),
    )


def nofault_scenario() -> Scenario:
    return replace(default_scenario(), faults=())


def noisy_scenario() -> Scenario:
    """Default fault schedule under measurement noise.

    The adaptive dead-bands sit well above the noise amplitude (several
    standard deviations), otherwise the gains would never stop growing.
    """
    base = default_scenario()
    cells = tuple(
        replace(cp, epsilon=6.0e4) if i < 3 else replace(cp, epsilon=2.0e-4)
        for i, cp in enumerate(base.observer.astw))
    return replace(
        base, seed=3,
        noise_std=NoiseStd(P1=1.0e4, P2=1.0e4, Ps=1.0e4, xc=1.0e-5),
        observer=replace(base.observer, astw=cells),
    )
