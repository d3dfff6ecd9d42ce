"""Text command channel and event scripts for driving simulations.

The remote channel speaks one word per line, case-insensitively: ACTIVATE
or DEACTIVATE. Event scripts extend that with a timestamp per line and the
test-only INTERRUPT request:

    # seconds then request, '#' starts a comment
    0.0   ACTIVATE
    12.5  DEACTIVATE

Scripts come from a file or, as "-", from standard input.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .controller_sim import EventKind, SimEvent
from .errors import DomainError, EventScriptError, UnknownCommandError

# The remote channel can start and stop sessions; interrupts are injected
# only through scripts (they model a local emergency input, not a command).
_REMOTE_KINDS = {
    "ACTIVATE": EventKind.ACTIVATE,
    "DEACTIVATE": EventKind.DEACTIVATE,
}


@dataclass(frozen=True)
class Command:
    """One parsed remote command; equality ignores the raw text."""

    kind: EventKind
    raw: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.kind not in _REMOTE_KINDS.values():
            raise UnknownCommandError(
                f"{self.kind.value} is not a remote command"
            )


def parse_command(line: str) -> Command:
    """Parse one line from the command channel.

    Leading/trailing whitespace and letter case are ignored; anything that
    is not exactly one recognized word is rejected.
    """
    word = line.strip().upper()
    if word not in _REMOTE_KINDS:
        raise UnknownCommandError(f"unknown command: {line.strip()!r}")
    return Command(_REMOTE_KINDS[word], raw=line)


def render_command(command: Command) -> str:
    """Canonical wire form of a command (the upper-case word)."""
    return command.kind.value


def to_event(command: Command, time: float) -> SimEvent:
    """Timestamp a remote command so the simulator can consume it."""
    return SimEvent(time=time, kind=command.kind)


def parse_event_script(
    lines: Iterable[str], source: str = "<script>"
) -> list[SimEvent]:
    """Parse an event script into a list of timestamped events.

    Each non-blank line holds ``<time_s> <request>`` with ``#`` comments
    stripped first. Errors name the source and 1-based line number.
    """
    events: list[SimEvent] = []
    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        parts = text.split()
        if len(parts) != 2:
            raise EventScriptError(
                f"{source}:{lineno}: expected '<time_s> <request>', got {text!r}"
            )
        time_text, kind_text = parts
        try:
            time = float(time_text)
        except ValueError:
            raise EventScriptError(
                f"{source}:{lineno}: bad time {time_text!r}"
            ) from None
        kind_word = kind_text.upper()
        try:
            kind = EventKind[kind_word]
        except KeyError:
            raise EventScriptError(
                f"{source}:{lineno}: unknown request {kind_text!r} "
                f"(expected ACTIVATE, DEACTIVATE or INTERRUPT)"
            ) from None
        try:
            events.append(SimEvent(time=time, kind=kind))
        except DomainError as exc:
            raise EventScriptError(f"{source}:{lineno}: {exc}") from None
    return events


def load_event_script(path: str | Path) -> list[SimEvent]:
    """Read an event script from a file, or from stdin when ``path`` is "-"."""
    if str(path) == "-":
        return parse_event_script(sys.stdin.read().splitlines(), source="<stdin>")
    file_path = Path(path)
    return parse_event_script(
        file_path.read_text().splitlines(), source=str(file_path)
    )
