from collections import defaultdict
from typing import Dict, List

from core.timebase import format_ms
from scheduler.engine import ENGINE_CORE
from scheduler.models import TAG_ORDER, EntryKind, ScheduleEntry, ScheduleTable, Violation
from taskgraph.task_graph import TaskGraph


def _overlaps(table: ScheduleTable) -> List[Violation]:
    found = []
    by_core: Dict[int, List[ScheduleEntry]] = defaultdict(list)
    for entry in table.entries:
        by_core[entry.core].append(entry)
    for core in sorted(by_core):
        busy_until = None
        holder = None
        for entry in sorted(by_core[core], key=lambda e: (e.start_us, e.end_us)):
            if busy_until is not None and entry.start_us < busy_until:
                found.append(Violation(
                    kind="overlap",
                    message=f"core {core}: {_describe(entry)} starts at {format_ms(entry.start_us)} ms "
                            f"while {_describe(holder)} runs until {format_ms(busy_until)} ms",
                ))
            if busy_until is None or entry.end_us > busy_until:
                busy_until, holder = entry.end_us, entry
    return found


def _describe(entry: ScheduleEntry) -> str:
    if entry.is_transition:
        return f"{entry.tag.value} of {entry.label}"
    return f"{entry.label}"


def _placement(table: ScheduleTable, entry: ScheduleEntry) -> List[Violation]:
    if entry.core >= table.cores:
        return [Violation(kind="placement", message=f"{_describe(entry)} on core {entry.core} of a {table.cores}-core table")]
    if table.cores >= 2:
        if entry.is_transition and entry.core != ENGINE_CORE:
            return [Violation(kind="placement", message=f"{_describe(entry)} is not on the engine core")]
        if not entry.is_transition and entry.core == ENGINE_CORE:
            return [Violation(kind="placement", message=f"{_describe(entry)} computes on the engine core")]
    return []


def check_schedule(table: ScheduleTable, tg: TaskGraph) -> List[Violation]:
    """
    Verify a time-triggered table against the task graph it was built for

    Checks core overlaps, placement, that every job is scheduled exactly once with
    its transitions around the compute segment, arrivals, precedence (a predecessor
    completes before its successor's first entry) and deadlines.

    Args:
        table: Table to check
        tg: Task graph whose jobs the table should contain

    Returns:
        Violations in check order; empty iff the table is valid and its verdict is feasible
    """
    jobs = tg.job_map()
    found: List[Violation] = []
    per_job: Dict[str, List[ScheduleEntry]] = defaultdict(list)

    for entry in table.entries:
        if entry.label not in jobs:
            found.append(Violation(kind="unknown-job", message=f"{entry.label} is not a job of the task graph"))
            continue
        found.extend(_placement(table, entry))
        if entry.is_transition and entry.duration_us != table.delta_us:
            found.append(Violation(
                kind="transition",
                message=f"{_describe(entry)} lasts {format_ms(entry.duration_us)} ms, delta is {format_ms(table.delta_us)} ms",
            ))
        per_job[entry.label].append(entry)

    found.extend(_overlaps(table))

    first_start: Dict[str, int] = {}
    completion: Dict[str, int] = {}
    for label in sorted(jobs):
        entries = per_job.get(label, [])
        segments = [e for e in entries if e.kind == EntryKind.COMPUTE]
        if not segments:
            found.append(Violation(kind="missing", message=f"{label} is never scheduled"))
            continue
        if len(segments) > 1:
            found.append(Violation(kind="duplicate", message=f"{label} has {len(segments)} compute segments"))
            continue

        tags = defaultdict(list)
        for entry in entries:
            if entry.is_transition:
                tags[entry.tag].append(entry)
        repeated = [tag.value for tag in TAG_ORDER if len(tags[tag]) > 1]
        if repeated:
            found.append(Violation(kind="duplicate", message=f"{label} repeats transition(s) {', '.join(repeated)}"))
            continue

        expected = TAG_ORDER if table.delta_us > 0 else ()
        absent = [tag.value for tag in expected if not tags[tag]]
        extra = [tag.value for tag in TAG_ORDER if tags[tag] and tag not in expected]
        if absent or extra:
            what = f"lacks {', '.join(absent)}" if absent else f"has unexpected {', '.join(extra)}"
            found.append(Violation(kind="transition", message=f"{label} {what}"))
            continue

        chain = [tags[TAG_ORDER[0]], tags[TAG_ORDER[1]], segments, tags[TAG_ORDER[2]], tags[TAG_ORDER[3]]]
        chain = [group[0] for group in chain if group]
        for before, after in zip(chain, chain[1:]):
            if after.start_us < before.end_us:
                found.append(Violation(
                    kind="transition",
                    message=f"{label}: {_describe(after)} starts before {_describe(before)} ends",
                ))

        first_start[label] = chain[0].start_us
        completion[label] = chain[-1].end_us
        job = jobs[label]
        if chain[0].start_us < job.arrival_us:
            found.append(Violation(
                kind="arrival",
                message=f"{label} starts at {format_ms(chain[0].start_us)} ms before its arrival at {format_ms(job.arrival_us)} ms",
            ))
        if completion[label] > job.deadline_us:
            found.append(Violation(
                kind="deadline",
                message=f"{label} completes at {format_ms(completion[label])} ms > deadline {format_ms(job.deadline_us)} ms",
            ))

    for src, dst in tg.edges:
        if src in completion and dst in first_start and completion[src] > first_start[dst]:
            found.append(Violation(
                kind="precedence",
                message=f"{dst} starts at {format_ms(first_start[dst])} ms before {src} completes at {format_ms(completion[src])} ms",
            ))

    if not found and not table.verdict.feasible:
        found.append(Violation(kind="verdict", message=f"table is marked {table.verdict} but no deadline is missed"))
    return found
