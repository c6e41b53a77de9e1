from typing import Dict, List

from pydantic import ValidationError

from core.errors import ModelParseError, ParseIssue
from core.models import WriteStatus
from sim.trace import ExecutionTrace, RecordKind, TraceRecord

ABSENT = "-"

# Fields written after `<time_us> <kind>`, always in this order
_FIELD_ORDER = ("seq", "process", "k", "core", "channel", "value", "status")


def _fields(record: TraceRecord) -> Dict[str, str]:
    fields = {"seq": str(record.seq), "process": record.process}
    if record.invocation is not None:
        fields["k"] = str(record.invocation)
    if record.core is not None:
        fields["core"] = str(record.core)
    if record.channel is not None:
        fields["channel"] = record.channel
    if record.value is not None or record.kind in (RecordKind.READ, RecordKind.WRITE, RecordKind.OUTPUT):
        fields["value"] = ABSENT if record.value is None else str(record.value)
    if record.status is not None:
        fields["status"] = record.status.value
    return fields


def emit_trace(trace: ExecutionTrace) -> str:
    """
    One line per record: `<time_us> <kind> key=value ...`

    A read that found nothing shows `value=-`.
    """
    lines = []
    for record in trace.records:
        fields = _fields(record)
        rendered = " ".join(f"{key}={fields[key]}" for key in _FIELD_ORDER if key in fields)
        lines.append(f"{record.time_us} {record.kind.value} {rendered}")
    return "".join(line + "\n" for line in lines)


def parse_execution_trace(text: str) -> ExecutionTrace:
    """
    Read a trace written by emit_trace

    Raises:
        ModelParseError: On malformed lines or unknown fields
    """
    issues: List[ParseIssue] = []
    records: List[TraceRecord] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) < 3:
            issues.append(ParseIssue(number, 1, f"expected '<time_us> <kind> key=value ...', got '{line}'"))
            continue
        fields: Dict[str, str] = {}
        bad = False
        for part in parts[2:]:
            key, sep, value = part.partition("=")
            if not sep or key not in _FIELD_ORDER:
                issues.append(ParseIssue(number, line.index(part) + 1, f"unknown field '{part}'"))
                bad = True
            fields[key] = value
        if bad:
            continue
        try:
            records.append(TraceRecord(
                kind=RecordKind(parts[1]),
                time_us=int(parts[0]),
                seq=int(fields.get("seq", len(records))),
                process=fields["process"],
                invocation=int(fields["k"]) if "k" in fields else None,
                core=int(fields["core"]) if "core" in fields else None,
                channel=fields.get("channel"),
                value=None if fields.get("value", ABSENT) == ABSENT else int(fields["value"]),
                status=WriteStatus(fields["status"]) if "status" in fields else None,
            ))
        except (KeyError, ValueError, ValidationError) as e:
            issues.append(ParseIssue(number, 1, f"bad record: {str(e).splitlines()[0]}"))
    if issues:
        raise ModelParseError(issues)
    return ExecutionTrace(records=tuple(records))
