"""Deterministic discrete-time simulation of the exoskeleton run controller.

A session spins the motor one way for a fixed time (winding the strings and
flexing the joint), spins back for the same kind of interval, rests, and
repeats, stopping automatically after a set number of cycles. A deactivate
or interrupt request during a run phase lets the cycle in progress finish
(the joint is never abandoned mid-flex) and then stops without the trailing
rest; a request during a rest stops immediately. A fresh activation after a
stop starts a new session; activations during a running session are ignored.

Everything is integer-tick arithmetic on a fixed time step, so phase
boundaries land exactly and a re-run of the same inputs reproduces the same
trace byte for byte. Two equivalent drivers exist: :func:`step` advances a
:class:`ControllerState` one tick at a time, and :func:`run` schedules whole
phase segments and fills the arrays through the kernels in
:mod:`tsa_exo.kernels`; the test suite checks one against the other.

Trace row semantics: the row at tick ``t`` shows the state after all
transitions and events at ``t``, and the motor spins between rows, so row
``i + 1``'s angle is row ``i``'s angle plus one tick of motion in row
``i``'s direction. The trace starts at the first activation and ends on the
final stop row.
"""
from __future__ import annotations

import enum
import math
from bisect import bisect_left
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from . import kernels
from .errors import DomainError, NoActivationError
from .tsa_kinematics import StringSpec, contracted_length

_TWO_PI = 2.0 * math.pi
_TICK_TOL = 1e-9  # s, slack when checking durations against the time step


class Phase(enum.Enum):
    """Controller phase; values are the names used in trace CSV files."""

    IDLE = "IDLE"
    CW_RUN = "CW_RUN"
    CCW_RUN = "CCW_RUN"
    PAUSE = "PAUSE"
    STOPPED = "STOPPED"


class EventKind(enum.Enum):
    ACTIVATE = "ACTIVATE"
    DEACTIVATE = "DEACTIVATE"
    INTERRUPT = "INTERRUPT"


# Phase order fixes the integer codes used in trace arrays.
PHASE_ORDER: tuple[Phase, ...] = (
    Phase.IDLE,
    Phase.CW_RUN,
    Phase.CCW_RUN,
    Phase.PAUSE,
    Phase.STOPPED,
)
PHASE_CODE: dict[Phase, int] = {p: i for i, p in enumerate(PHASE_ORDER)}

# Motor direction while a phase is active: +1 winds, -1 unwinds.
_PHASE_DIRECTION: dict[Phase, int] = {
    Phase.IDLE: 0,
    Phase.CW_RUN: 1,
    Phase.CCW_RUN: -1,
    Phase.PAUSE: 0,
    Phase.STOPPED: 0,
}

STOP_MAX_CYCLES = "max_cycles"
STOP_DEACTIVATE = "deactivate"
STOP_INTERRUPT = "interrupt"

_REQUEST_REASON = {
    EventKind.DEACTIVATE: STOP_DEACTIVATE,
    EventKind.INTERRUPT: STOP_INTERRUPT,
}


@dataclass(frozen=True)
class SimEvent:
    """One timestamped request delivered to the controller."""

    time: float  # s
    kind: EventKind

    def __post_init__(self) -> None:
        if self.time < 0.0:
            raise DomainError(f"event time must be non-negative, got {self.time!r}")


@dataclass(frozen=True)
class ControllerConfig:
    """Timing plan for a session.

    ``motor_speed`` is the output-shaft speed magnitude used in both run
    phases [rad/s]. All durations must be positive whole multiples of
    ``time_step`` (within 1e-9 s) so phase boundaries fall on ticks.
    """

    motor_speed: float
    cw_duration: float = 3.0  # s
    ccw_duration: float = 3.0  # s
    pause_duration: float = 5.0  # s
    max_cycles: int = 5
    time_step: float = 0.01  # s
    joint_limit_deg: float = 50.0

    def __post_init__(self) -> None:
        if not self.motor_speed > 0.0:
            raise DomainError(
                f"motor_speed must be positive, got {self.motor_speed!r}"
            )
        if not self.time_step > 0.0:
            raise DomainError(f"time_step must be positive, got {self.time_step!r}")
        if self.max_cycles < 1:
            raise DomainError(f"max_cycles must be at least 1, got {self.max_cycles!r}")
        if not self.joint_limit_deg > 0.0:
            raise DomainError(
                f"joint_limit_deg must be positive, got {self.joint_limit_deg!r}"
            )
        for name in ("cw_duration", "ccw_duration", "pause_duration"):
            _duration_ticks(getattr(self, name), self.time_step, name)

    @property
    def cw_ticks(self) -> int:
        return _duration_ticks(self.cw_duration, self.time_step, "cw_duration")

    @property
    def ccw_ticks(self) -> int:
        return _duration_ticks(self.ccw_duration, self.time_step, "ccw_duration")

    @property
    def pause_ticks(self) -> int:
        return _duration_ticks(self.pause_duration, self.time_step, "pause_duration")


def _duration_ticks(duration: float, time_step: float, name: str) -> int:
    ticks = round(duration / time_step)
    if ticks < 1 or abs(ticks * time_step - duration) > _TICK_TOL:
        raise DomainError(
            f"{name} ({duration!r} s) must be a positive whole multiple of "
            f"time_step ({time_step!r} s)"
        )
    return ticks


@dataclass(frozen=True)
class ControllerState:
    """Controller bookkeeping between ticks.

    ``cycle_index`` is 1-based within a session and 0 outside one;
    ``cycles_completed`` accumulates across sessions. ``stop_kind`` records
    which request armed ``stop_requested`` (or forced the stop), so the stop
    reason survives into the stopped state.
    """

    phase: Phase = Phase.IDLE
    cycle_index: int = 0
    ticks_in_phase: int = 0
    stop_requested: bool = False
    stop_kind: EventKind | None = None
    cycles_completed: int = 0

    @property
    def direction(self) -> int:
        """Motor direction for this tick: +1, -1, or 0."""
        return _PHASE_DIRECTION[self.phase]

    @property
    def stop_reason(self) -> str | None:
        """Why the controller stopped, or None while it has not."""
        if self.phase is not Phase.STOPPED:
            return None
        if self.stop_kind is not None:
            return _REQUEST_REASON[self.stop_kind]
        return STOP_MAX_CYCLES


def step(state: ControllerState, config: ControllerConfig, dt: float) -> ControllerState:
    """Advance the controller by one tick of length ``dt``.

    ``dt`` must equal ``config.time_step``; the parameter exists so callers
    state the step they believe they are taking. Events are applied
    separately with :func:`apply_event`, after the step for their tick.
    """
    if dt != config.time_step:
        raise DomainError(
            f"dt ({dt!r}) must equal config.time_step ({config.time_step!r})"
        )
    phase = state.phase
    if phase is Phase.IDLE or phase is Phase.STOPPED:
        return state
    ticks = state.ticks_in_phase + 1
    if phase is Phase.CW_RUN:
        if ticks >= config.cw_ticks:
            return replace(state, phase=Phase.CCW_RUN, ticks_in_phase=0)
        return replace(state, ticks_in_phase=ticks)
    if phase is Phase.CCW_RUN:
        if ticks >= config.ccw_ticks:
            done = state.cycles_completed + 1
            if state.stop_requested or state.cycle_index >= config.max_cycles:
                return replace(
                    state,
                    phase=Phase.STOPPED,
                    ticks_in_phase=0,
                    cycles_completed=done,
                )
            return replace(
                state, phase=Phase.PAUSE, ticks_in_phase=0, cycles_completed=done
            )
        return replace(state, ticks_in_phase=ticks)
    # PAUSE
    if ticks >= config.pause_ticks:
        return replace(
            state,
            phase=Phase.CW_RUN,
            cycle_index=state.cycle_index + 1,
            ticks_in_phase=0,
        )
    return replace(state, ticks_in_phase=ticks)


def apply_event(
    state: ControllerState, kind: EventKind, config: ControllerConfig
) -> ControllerState:
    """Apply one request to the controller at the current tick.

    Activation starts a session from IDLE or STOPPED and is ignored while a
    session runs. Deactivate and interrupt arm a stop during a run phase
    (first request wins), stop immediately during a pause, and are ignored
    otherwise.
    """
    if kind is EventKind.ACTIVATE:
        if state.phase is Phase.IDLE or state.phase is Phase.STOPPED:
            return ControllerState(
                phase=Phase.CW_RUN,
                cycle_index=1,
                ticks_in_phase=0,
                stop_requested=False,
                stop_kind=None,
                cycles_completed=state.cycles_completed,
            )
        return state
    # DEACTIVATE / INTERRUPT
    if state.phase is Phase.CW_RUN or state.phase is Phase.CCW_RUN:
        if state.stop_requested:
            return state
        return replace(state, stop_requested=True, stop_kind=kind)
    if state.phase is Phase.PAUSE:
        return replace(
            state,
            phase=Phase.STOPPED,
            ticks_in_phase=0,
            stop_requested=True,
            stop_kind=kind,
        )
    return state


@dataclass(frozen=True)
class Plant:
    """Physical constants the trace needs besides the controller timing."""

    string: StringSpec
    pin_radius: float  # m, yoke pin: contraction / pin_radius = joint angle
    encoder_ppr: int = 11
    gear_ratio: float = 1.0

    def __post_init__(self) -> None:
        if not self.pin_radius > 0.0:
            raise DomainError(f"pin_radius must be positive, got {self.pin_radius!r}")
        if self.encoder_ppr < 1:
            raise DomainError(
                f"encoder_ppr must be a positive integer, got {self.encoder_ppr!r}"
            )
        if not self.gear_ratio > 0.0:
            raise DomainError(f"gear_ratio must be positive, got {self.gear_ratio!r}")


@dataclass(frozen=True)
class Segment:
    """One phase occupancy in absolute ticks, half open: [start, end)."""

    phase: Phase
    cycle: int  # 1-based cycle within its session, 0 for STOPPED
    start: int
    end: int


@dataclass(frozen=True)
class SimTrace:
    """Tick-by-tick record of one simulation.

    Arrays share one row per tick from the first activation to the final
    stop inclusive. ``state_code`` holds indices into ``PHASE_ORDER``.
    """

    time_s: np.ndarray
    state_code: np.ndarray
    motor_angle_rad: np.ndarray
    encoder_count: np.ndarray
    joint_angle_deg: np.ndarray
    top_string_m: np.ndarray
    bottom_string_m: np.ndarray
    segments: tuple[Segment, ...]
    tick0: int
    time_step: float
    cycles_completed: int
    stop_reason: str

    def __len__(self) -> int:
        return self.time_s.shape[0]

    @property
    def stop_time_s(self) -> float:
        return float(self.time_s[-1])

    def state_at(self, row: int) -> Phase:
        return PHASE_ORDER[int(self.state_code[row])]

    def state_names(self) -> list[str]:
        return [PHASE_ORDER[c].value for c in self.state_code]


def _quantized_events(
    events: Sequence[SimEvent], time_step: float
) -> list[tuple[int, EventKind]]:
    if not events:
        raise NoActivationError("event list is empty; nothing ever activates")
    previous = -math.inf
    ticks: list[tuple[int, EventKind]] = []
    for event in events:
        if event.time < previous:
            raise DomainError(
                f"events must be in time order "
                f"({event.time!r} s after {previous!r} s)"
            )
        previous = event.time
        ticks.append((round(event.time / time_step), event.kind))
    seen: set[int] = set()
    for tick, _ in ticks:
        if tick in seen:
            raise DomainError(
                f"two events land on the same tick ({tick}) at this time step; "
                f"space them at least one time_step apart"
            )
        seen.add(tick)
    if not any(kind is EventKind.ACTIVATE for _, kind in ticks):
        raise NoActivationError("no ACTIVATE event; the controller never starts")
    return ticks


def _build_segments(
    config: ControllerConfig, ev: list[tuple[int, EventKind]]
) -> tuple[list[Segment], int, int, int, str]:
    """Schedule phase segments for all sessions.

    Returns (segments, first_tick, final_stop_tick, cycles_completed,
    stop_reason).
    """
    cw_ticks = config.cw_ticks
    ccw_ticks = config.ccw_ticks
    pause_ticks = config.pause_ticks
    activations = [t for t, k in ev if k is EventKind.ACTIVATE]
    requests = [(t, k) for t, k in ev if k is not EventKind.ACTIVATE]
    request_ticks = [t for t, _ in requests]

    segments: list[Segment] = []
    completed_total = 0
    first_tick = activations[0]
    session_start = first_tick
    while True:
        # First stop request at or after this session's start (ticks are
        # unique, so it cannot coincide with the activation itself).
        req_index = bisect_left(request_ticks, session_start)
        if req_index < len(requests):
            request_tick, request_kind = requests[req_index]
        else:
            request_tick, request_kind = None, None

        position = session_start
        stop_tick = 0
        reason = STOP_MAX_CYCLES
        for cycle in range(1, config.max_cycles + 1):
            cw_end = position + cw_ticks
            ccw_end = cw_end + ccw_ticks
            segments.append(Segment(Phase.CW_RUN, cycle, position, cw_end))
            segments.append(Segment(Phase.CCW_RUN, cycle, cw_end, ccw_end))
            if request_tick is not None and request_tick < ccw_end:
                # Request during this cycle's motion: finish it, skip the rest.
                stop_tick = ccw_end
                reason = _REQUEST_REASON[request_kind]
                break
            if cycle == config.max_cycles:
                stop_tick = ccw_end
                reason = STOP_MAX_CYCLES
                break
            pause_end = ccw_end + pause_ticks
            if request_tick is not None and request_tick < pause_end:
                # Request during the pause: stop on the spot.
                if request_tick > ccw_end:
                    segments.append(
                        Segment(Phase.PAUSE, cycle, ccw_end, request_tick)
                    )
                stop_tick = request_tick
                reason = _REQUEST_REASON[request_kind]
                break
            segments.append(Segment(Phase.PAUSE, cycle, ccw_end, pause_end))
            position = pause_end
        completed_total += cycle

        next_index = bisect_left(activations, stop_tick)
        if next_index == len(activations):
            segments.append(Segment(Phase.STOPPED, 0, stop_tick, stop_tick + 1))
            return segments, first_tick, stop_tick, completed_total, reason
        next_start = activations[next_index]
        if next_start > stop_tick:
            segments.append(Segment(Phase.STOPPED, 0, stop_tick, next_start))
        session_start = next_start


def run(
    config: ControllerConfig, events: Sequence[SimEvent], plant: Plant
) -> SimTrace:
    """Simulate a full run and return its trace.

    Events are quantized to the nearest tick (at most one per tick). The
    trace covers the first activation through the final stop row. Raises
    if the commanded motion would wind the string past its geometric limit.
    """
    ev = _quantized_events(events, config.time_step)
    segments, first_tick, stop_tick, completed, reason = _build_segments(config, ev)

    n = stop_tick - first_tick + 1
    state_code = np.empty(n, dtype=np.int8)
    directions = np.zeros(n, dtype=np.int8)
    for seg in segments:
        lo = seg.start - first_tick
        hi = min(seg.end - first_tick, n)
        state_code[lo:hi] = PHASE_CODE[seg.phase]
        direction = _PHASE_DIRECTION[seg.phase]
        if direction != 0:
            directions[lo:hi] = direction

    string = plant.string
    step_angle = config.motor_speed * config.time_step
    angle, top, bottom, joint = kernels.trace_columns(
        directions,
        step_angle,
        string.untwisted_length,
        string.radius,
        plant.pin_radius,
        config.joint_limit_deg,
    )
    peak = float(np.max(np.abs(angle))) if n else 0.0
    if peak * string.radius >= string.untwisted_length:
        raise DomainError(
            f"commanded motion winds the string to {peak:.6g} rad, at or past "
            f"its geometric limit {string.max_twist:.6g} rad; shorten the run "
            f"phases or slow the motor"
        )
    # Encoder rounding lives here, outside the dual-backend kernel, so both
    # backends share one half-to-even rule.
    pulses = angle / _TWO_PI * plant.encoder_ppr * plant.gear_ratio
    counts = np.rint(pulses).astype(np.int64)
    times = np.arange(first_tick, stop_tick + 1, dtype=np.float64) * config.time_step

    return SimTrace(
        time_s=times,
        state_code=state_code,
        motor_angle_rad=angle,
        encoder_count=counts,
        joint_angle_deg=joint,
        top_string_m=top,
        bottom_string_m=bottom,
        segments=tuple(segments),
        tick0=first_tick,
        time_step=config.time_step,
        cycles_completed=completed,
        stop_reason=reason,
    )


def joint_angle_of(
    motor_angle: float, plant: Plant, joint_limit_deg: float = 50.0
) -> float:
    """Joint flex angle for one motor angle, clamped to the joint range [deg].

    Negative motor angles leave the top string untwisted, so they map to
    zero flex; the magnitude must stay below the string's twist limit.
    """
    string = plant.string
    if abs(motor_angle) >= string.max_twist:
        raise DomainError(
            f"motor angle magnitude {abs(motor_angle):g} rad is at or past the "
            f"string twist limit {string.max_twist:g} rad"
        )
    if not joint_limit_deg > 0.0:
        raise DomainError(
            f"joint_limit_deg must be positive, got {joint_limit_deg!r}"
        )
    twist = motor_angle if motor_angle > 0.0 else 0.0
    contracted = contracted_length(string, twist)
    flex = math.degrees(
        (string.untwisted_length - contracted) / plant.pin_radius
    )
    return min(max(flex, 0.0), joint_limit_deg)


def string_lengths(motor_angle: float, plant: Plant) -> tuple[float, float]:
    """(top, bottom) string lengths at one motor angle [m].

    The pair conserves total length: top + bottom = 2 * untwisted_length.
    """
    string = plant.string
    if abs(motor_angle) >= string.max_twist:
        raise DomainError(
            f"motor angle magnitude {abs(motor_angle):g} rad is at or past the "
            f"string twist limit {string.max_twist:g} rad"
        )
    twist = motor_angle if motor_angle > 0.0 else 0.0
    top = contracted_length(string, twist)
    return top, 2.0 * string.untwisted_length - top


def encoder_trace_of(trace: SimTrace) -> list[np.ndarray]:
    """Encoder-count series per completed cycle, motion start to end inclusive.

    Each array covers one cycle's CW start through its CCW end; with equal
    speed and duration in both directions, the last entry of every series
    is within one pulse of zero.
    """
    slices: list[np.ndarray] = []
    cw_start: int | None = None
    for seg in trace.segments:
        if seg.phase is Phase.CW_RUN:
            cw_start = seg.start
        elif seg.phase is Phase.CCW_RUN and cw_start is not None:
            lo = cw_start - trace.tick0
            hi = seg.end - trace.tick0 + 1
            slices.append(trace.encoder_count[lo:hi])
            cw_start = None
    return slices


TRACE_CSV_HEADER = (
    "time_s,state,motor_angle_rad,encoder_count,joint_angle_deg,"
    "top_string_m,bottom_string_m"
)


def write_trace_csv(trace: SimTrace, path: str | Path) -> None:
    """Write the trace in the standard CSV layout.

    Times are rendered to 10 significant digits; physical columns use the
    shortest float representation that parses back exactly. Output is
    deterministic: identical inputs produce identical bytes.
    """
    lines = [TRACE_CSV_HEADER]
    names = trace.state_names()
    for i in range(len(trace)):
        lines.append(
            f"{float(trace.time_s[i]):.10g},{names[i]},"
            f"{float(trace.motor_angle_rad[i])!r},{int(trace.encoder_count[i])},"
            f"{float(trace.joint_angle_deg[i])!r},{float(trace.top_string_m[i])!r},"
            f"{float(trace.bottom_string_m[i])!r}"
        )
    _atomic_write_text(Path(path), "\n".join(lines) + "\n")


def _atomic_write_text(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    tmp.replace(path)
