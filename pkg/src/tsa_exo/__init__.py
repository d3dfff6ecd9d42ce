"""Design analysis and controller simulation for a twisted-string-actuated
elbow exoskeleton.

The package covers the static design chain (gravity torque, pin and yoke
forces), the twisted-string transmission geometry, motor sizing with an
ideal encoder model, and a deterministic discrete-time simulation of the
device's cyclic run controller, plus a CLI that emits reports and CSV
traces. See the README for usage.
"""
from .command_link import (
    Command,
    load_event_script,
    parse_command,
    parse_event_script,
    render_command,
    to_event,
)
from .config import ProjectConfig, config_warnings, load_config
from .controller_sim import (
    ControllerConfig,
    ControllerState,
    EventKind,
    Phase,
    Plant,
    Segment,
    SimEvent,
    SimTrace,
    apply_event,
    encoder_trace_of,
    joint_angle_of,
    run,
    step,
    string_lengths,
    write_trace_csv,
)
from .elbow_statics import (
    ForearmLoad,
    LinkageGeometry,
    gravity_torque,
    required_torque_curve,
    string_force,
    tangential_pin_force,
    yoke_force,
)
from .errors import (
    ConfigError,
    DomainError,
    EventScriptError,
    MissingParameterError,
    NoActivationError,
    NoFeasibleMotorError,
    TsaExoError,
    UnknownCommandError,
)
from .motor_model import (
    BUILTIN_CATALOG,
    EncoderState,
    MotorSpec,
    encoder_count,
    encoder_state,
    load_motor_catalog,
    select_motor,
    torque_from_power,
)
from .tsa_kinematics import (
    StringSpec,
    TwistState,
    contracted_length,
    helix_angle,
    motor_torque,
    pull_force,
    solve_twist_angle,
    transmission_ratio,
    twist_for_contraction,
    twist_state,
)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_CATALOG",
    "Command",
    "ConfigError",
    "ControllerConfig",
    "ControllerState",
    "DomainError",
    "EncoderState",
    "EventKind",
    "EventScriptError",
    "ForearmLoad",
    "LinkageGeometry",
    "MissingParameterError",
    "MotorSpec",
    "NoActivationError",
    "NoFeasibleMotorError",
    "Phase",
    "Plant",
    "ProjectConfig",
    "Segment",
    "SimEvent",
    "SimTrace",
    "StringSpec",
    "TsaExoError",
    "TwistState",
    "UnknownCommandError",
    "apply_event",
    "config_warnings",
    "contracted_length",
    "encoder_count",
    "encoder_state",
    "encoder_trace_of",
    "gravity_torque",
    "helix_angle",
    "joint_angle_of",
    "load_config",
    "load_event_script",
    "load_motor_catalog",
    "motor_torque",
    "parse_command",
    "parse_event_script",
    "pull_force",
    "render_command",
    "required_torque_curve",
    "run",
    "select_motor",
    "solve_twist_angle",
    "step",
    "string_force",
    "string_lengths",
    "tangential_pin_force",
    "to_event",
    "torque_from_power",
    "transmission_ratio",
    "twist_for_contraction",
    "twist_state",
    "write_trace_csv",
    "yoke_force",
]
