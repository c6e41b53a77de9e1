"""
Reader and writer for `.fppn` network models.

A model has three sections. Each record is one line; times are milliseconds
and `#` starts a comment::

    processes:
      X: FPPNClass=sporadic MinInterArrival=50 Deadline=50 WCET=1 Fpriority=3 Behavior=identity
      Square: FPPNClass=periodic Period=50 Deadline=50 WCET=1 Fpriority=2 Behavior=square
    channels:
      x_square: FPPNClass=mailbox Writer=X Reader=Square DataChannelSize=4 DataChannelLength=1 Ordered=true
    couplings:
      X -> Square
"""

import re
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import ValidationError

from core.errors import ModelParseError, ParseIssue
from core.models import ChannelKind, ChannelSpec, NetworkModel, ProcessKind, ProcessSpec
from core.timebase import format_ms, ms

SECTIONS = ("processes", "channels", "couplings")

PROCESS_FIELDS = ("FPPNClass", "Period", "MinInterArrival", "Deadline", "WCET", "Fpriority", "Behavior")
CHANNEL_FIELDS = ("FPPNClass", "Writer", "Reader", "DataChannelSize", "DataChannelLength", "Ordered")

_SECTION_RE = re.compile(r"^(?P<name>[A-Za-z_]+)\s*:\s*$")
_RECORD_RE = re.compile(r"^(?P<id>[A-Za-z0-9_]+)\s*:(?P<body>.*)$")
_COUPLING_RE = re.compile(r"^(?P<src>[A-Za-z0-9_]+)\s*->\s*(?P<dst>[A-Za-z0-9_]+)$")
_FIELD_RE = re.compile(r"\S+")

Fields = Dict[str, Tuple[str, int]]


class _ModelReader:
    """Line-oriented reader that collects every issue before giving up"""

    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.issues: List[ParseIssue] = []
        self.processes: List[ProcessSpec] = []
        self.channels: List[ChannelSpec] = []
        self.couplings: Dict[str, str] = {}
        self.seen_ids: Dict[str, int] = {}

    def fail(self, line: int, column: int, message: str) -> None:
        self.issues.append(ParseIssue(line, column, message))

    def read(self) -> NetworkModel:
        section: Optional[str] = None
        records = 0
        for number, raw in enumerate(self.lines, start=1):
            line = raw.split("#", 1)[0].rstrip()
            stripped = line.strip()
            if not stripped:
                continue
            column = len(line) - len(line.lstrip()) + 1

            header = _SECTION_RE.match(stripped)
            if header and header.group("name") in SECTIONS:
                section = header.group("name")
                continue
            if header:
                self.fail(number, column, f"unknown section '{header.group('name')}'")
                section = None
                continue
            if section is None:
                self.fail(number, column, "record outside of a section")
                continue

            records += 1
            if section == "couplings":
                self._coupling(number, column, stripped)
            else:
                self._record(number, column, stripped, section)

        if records == 0 and not self.issues:
            self.fail(1, 1, "empty document: no processes, channels or couplings")
        elif not self.processes and not self.issues:
            self.fail(1, 1, "model declares no process")
        if self.issues:
            raise ModelParseError(self.issues)
        return NetworkModel(
            processes=tuple(self.processes),
            channels=tuple(self.channels),
            couplings=self.couplings,
        )

    def _coupling(self, number: int, column: int, text: str) -> None:
        match = _COUPLING_RE.match(text)
        if not match:
            self.fail(number, column, f"expected 'sporadic -> periodic', got '{text}'")
            return
        src, dst = match.group("src"), match.group("dst")
        if src in self.couplings:
            self.fail(number, column, f"{src} is coupled twice")
            return
        self.couplings[src] = dst

    def _record(self, number: int, column: int, text: str, section: str) -> None:
        match = _RECORD_RE.match(text)
        if not match:
            self.fail(number, column, f"expected '<id>: Field=value ...', got '{text}'")
            return
        record_id = match.group("id")
        if record_id in self.seen_ids:
            self.fail(number, column, f"duplicate id '{record_id}' (first defined on line {self.seen_ids[record_id]})")
            return
        self.seen_ids[record_id] = number

        allowed = PROCESS_FIELDS if section == "processes" else CHANNEL_FIELDS
        body_start = column + match.start("body")
        fields: Fields = {}
        for token in _FIELD_RE.finditer(match.group("body")):
            token_column = body_start + token.start()
            key, sep, value = token.group().partition("=")
            if not sep or not value:
                self.fail(number, token_column, f"expected Field=value, got '{token.group()}'")
                continue
            if key not in allowed:
                self.fail(number, token_column, f"unknown field '{key}'")
                continue
            if key in fields:
                self.fail(number, token_column, f"field '{key}' given twice")
                continue
            fields[key] = (value, token_column)

        before = len(self.issues)
        if section == "processes":
            spec = self._process(number, column, record_id, fields)
        else:
            spec = self._channel(number, column, record_id, fields)
        if spec is None or len(self.issues) > before:
            return
        if section == "processes":
            self.processes.append(spec)
        else:
            self.channels.append(spec)

    def _value(self, number: int, fields: Fields, key: str, convert: Callable, expected: str):
        text, column = fields[key]
        try:
            return convert(text)
        except ValueError:
            self.fail(number, column, f"{key} must be {expected}, got '{text}'")
            return None

    def _require(self, number: int, column: int, record_id: str, fields: Fields, keys: Tuple[str, ...]) -> bool:
        missing = [key for key in keys if key not in fields]
        for key in missing:
            self.fail(number, column, f"{record_id}: missing field {key}")
        return not missing

    def _process(self, number: int, column: int, pid: str, fields: Fields) -> Optional[ProcessSpec]:
        if not self._require(number, column, pid, fields, ("FPPNClass", "Deadline", "Fpriority")):
            return None
        kind = self._value(number, fields, "FPPNClass", ProcessKind, "periodic or sporadic")
        if kind is None:
            return None
        rate_key = "MinInterArrival" if kind == ProcessKind.SPORADIC else "Period"
        wrong_key = "Period" if kind == ProcessKind.SPORADIC else "MinInterArrival"
        if wrong_key in fields:
            self.fail(number, fields[wrong_key][1], f"{pid}: {kind.value} processes use {rate_key}, not {wrong_key}")
            return None
        if not self._require(number, column, pid, fields, (rate_key,)):
            return None

        values = {
            "period_us": self._value(number, fields, rate_key, ms, "a duration in ms"),
            "deadline_us": self._value(number, fields, "Deadline", ms, "a duration in ms"),
            "fpriority": self._value(number, fields, "Fpriority", int, "an integer"),
        }
        if "WCET" in fields:
            values["wcet_us"] = self._value(number, fields, "WCET", ms, "a duration in ms")
        if "Behavior" in fields:
            values["behavior"] = fields["Behavior"][0]
        if any(value is None for value in values.values()):
            return None
        return self._build(number, column, pid, lambda: ProcessSpec(id=pid, kind=kind, **values))

    def _channel(self, number: int, column: int, cid: str, fields: Fields) -> Optional[ChannelSpec]:
        if not self._require(number, column, cid, fields, ("FPPNClass", "Writer", "Reader")):
            return None
        values = {
            "kind": self._value(number, fields, "FPPNClass", ChannelKind, "mailbox or blackboard"),
            "writer": fields["Writer"][0],
            "reader": fields["Reader"][0],
        }
        if "DataChannelSize" in fields:
            values["data_size"] = self._value(number, fields, "DataChannelSize", int, "an integer")
        if "DataChannelLength" in fields:
            values["length"] = self._value(number, fields, "DataChannelLength", int, "an integer")
        if "Ordered" in fields:
            values["ordered"] = self._value(number, fields, "Ordered", _boolean, "true or false")
        if any(value is None for value in values.values()):
            return None
        return self._build(number, column, cid, lambda: ChannelSpec(id=cid, **values))

    def _build(self, number: int, column: int, record_id: str, factory: Callable):
        try:
            return factory()
        except ValidationError as e:
            for error in e.errors():
                where = ".".join(str(part) for part in error["loc"])
                self.fail(number, column, f"{record_id}: {where}: {error['msg']}")
            return None


def _boolean(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    raise ValueError(text)


def parse_model(text: str) -> NetworkModel:
    """
    Parse a `.fppn` document

    Args:
        text: Document text

    Returns:
        NetworkModel in document order. Structural rules (unique priorities,
        couplings, ...) are left to validate_network.

    Raises:
        ModelParseError: With every syntax, unknown-field, duplicate-id and type issue found
    """
    return _ModelReader(text).read()


def emit_model(net: NetworkModel) -> str:
    """Render a network as a `.fppn` document that parse_model reads back unchanged"""
    lines = ["processes:"]
    for spec in net.processes:
        rate_key = "MinInterArrival" if spec.is_sporadic else "Period"
        parts = [
            f"FPPNClass={spec.kind.value}",
            f"{rate_key}={format_ms(spec.period_us)}",
            f"Deadline={format_ms(spec.deadline_us)}",
        ]
        if spec.wcet_us is not None:
            parts.append(f"WCET={format_ms(spec.wcet_us)}")
        parts.append(f"Fpriority={spec.fpriority}")
        parts.append(f"Behavior={spec.behavior}")
        lines.append(f"  {spec.id}: {' '.join(parts)}")

    lines.append("channels:")
    for channel in net.channels:
        parts = [
            f"FPPNClass={channel.kind.value}",
            f"Writer={channel.writer}",
            f"Reader={channel.reader}",
            f"DataChannelSize={channel.data_size}",
        ]
        if channel.length is not None:
            parts.append(f"DataChannelLength={channel.length}")
        parts.append(f"Ordered={'true' if channel.ordered else 'false'}")
        lines.append(f"  {channel.id}: {' '.join(parts)}")

    lines.append("couplings:")
    for sporadic, periodic in net.couplings.items():
        lines.append(f"  {sporadic} -> {periodic}")
    return "\n".join(lines) + "\n"
