import csv
import io
from typing import Dict, List

from pydantic import ValidationError

from core.errors import ModelParseError, ParseIssue
from scheduler.models import EntryKind, ScheduleEntry, ScheduleTable, TransitionTag, Verdict, entry_sort_key

HEADER = ["kind", "process", "k", "core", "start_us", "duration_us", "tag"]

_METADATA_KEYS = ("cores", "delta_us", "horizon_us", "verdict", "reason", "dispatch_cores")


def emit_schedule(table: ScheduleTable) -> str:
    """
    Render a table as CSV

    Metadata (cores, delta_us, horizon_us, verdict, reason and, for widened
    tables, dispatch_cores) comes first as
    `# key=value` lines, then the header and one row per entry sorted by
    (start, core).
    """
    buffer = io.StringIO()
    buffer.write(f"# cores={table.cores}\n")
    buffer.write(f"# delta_us={table.delta_us}\n")
    buffer.write(f"# horizon_us={table.horizon_us}\n")
    buffer.write(f"# verdict={'feasible' if table.verdict.feasible else 'infeasible'}\n")
    buffer.write(f"# reason={table.verdict.reason}\n")
    if table.dispatch_cores is not None:
        buffer.write(f"# dispatch_cores={table.dispatch_cores}\n")

    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(HEADER)
    for entry in sorted(table.entries, key=entry_sort_key):
        writer.writerow([
            entry.kind.value,
            entry.process,
            entry.invocation,
            entry.core,
            entry.start_us,
            entry.duration_us,
            entry.tag.value if entry.tag is not None else "",
        ])
    return buffer.getvalue()


def parse_schedule(text: str) -> ScheduleTable:
    """
    Read a table written by emit_schedule

    Raises:
        ModelParseError: On malformed metadata, header or rows
    """
    issues: List[ParseIssue] = []
    metadata: Dict[str, str] = {}
    rows = []
    header_seen = False

    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].strip().partition("=")
            if sep and key in _METADATA_KEYS:
                metadata[key] = value
            continue
        cells = next(csv.reader([line]))
        if not header_seen:
            if cells != HEADER:
                issues.append(ParseIssue(number, 1, f"expected header {','.join(HEADER)}"))
            header_seen = True
            continue
        if len(cells) != len(HEADER):
            issues.append(ParseIssue(number, 1, f"expected {len(HEADER)} cells, got {len(cells)}"))
            continue
        rows.append((number, dict(zip(HEADER, cells))))

    if not header_seen:
        issues.append(ParseIssue(1, 1, "missing header row"))
    for key in ("cores", "delta_us"):
        if key not in metadata:
            issues.append(ParseIssue(1, 1, f"missing '# {key}=' metadata"))

    entries = []
    for number, row in rows:
        try:
            entries.append(ScheduleEntry(
                kind=EntryKind(row["kind"]),
                process=row["process"],
                invocation=int(row["k"]),
                core=int(row["core"]),
                start_us=int(row["start_us"]),
                duration_us=int(row["duration_us"]),
                tag=TransitionTag(row["tag"]) if row["tag"] else None,
            ))
        except (ValueError, ValidationError) as e:
            issues.append(ParseIssue(number, 1, f"bad row: {_first_line(e)}"))

    if issues:
        raise ModelParseError(issues)
    try:
        return ScheduleTable(
            entries=tuple(entries),
            cores=int(metadata["cores"]),
            delta_us=int(metadata["delta_us"]),
            horizon_us=int(metadata.get("horizon_us") or 0),
            verdict=Verdict(
                feasible=metadata.get("verdict", "feasible") == "feasible",
                reason=metadata.get("reason", ""),
            ),
            dispatch_cores=int(metadata["dispatch_cores"]) if metadata.get("dispatch_cores") else None,
        )
    except (ValueError, ValidationError) as e:
        raise ModelParseError([ParseIssue(1, 1, f"bad metadata: {_first_line(e)}")])


def _first_line(error: Exception) -> str:
    return str(error).splitlines()[0]
