from collections import defaultdict
from typing import Dict, Iterable, List, Tuple

from pydantic import BaseModel, ConfigDict, Field

from core.errors import EventTraceError
from core.models import NetworkModel, Value
from core.timebase import format_ms
from taskgraph.task_graph import Job


class Event(BaseModel):
    """One sporadic activation from the environment"""

    model_config = ConfigDict(frozen=True)

    time_us: int = Field(ge=0)
    process: str
    payload: Value


class EventTrace(BaseModel):
    model_config = ConfigDict(frozen=True)

    events: Tuple[Event, ...] = ()

    def of(self, process: str) -> List[Event]:
        return [event for event in self.events if event.process == process]

    def __len__(self) -> int:
        return len(self.events)


def validate_events(net: NetworkModel, trace: EventTrace) -> List[str]:
    """
    Check an event trace against a network

    Events must be in non-decreasing time order, name sporadic processes of the
    network and respect each process's minimal inter-arrival time.

    Returns:
        One description per violation, in trace order
    """
    found = []
    previous_time = 0
    last_by_process: Dict[str, int] = {}
    for index, event in enumerate(trace.events):
        where = f"event {index + 1} ({event.process} at {format_ms(event.time_us)} ms)"
        if event.time_us < previous_time:
            found.append(f"{where}: earlier than the event before it")
        previous_time = max(previous_time, event.time_us)

        if not net.has_process(event.process):
            found.append(f"{where}: {event.process} is not a process")
            continue
        spec = net.process(event.process)
        if not spec.is_sporadic:
            found.append(f"{where}: {event.process} is not sporadic")
            continue
        last = last_by_process.get(event.process)
        if last is not None and event.time_us - last < spec.period_us:
            found.append(
                f"{where}: {format_ms(event.time_us - last)} ms after the previous event, "
                f"minimal inter-arrival time is {format_ms(spec.period_us)} ms"
            )
        last_by_process[event.process] = event.time_us
    return found


def check_events(net: NetworkModel, trace: EventTrace) -> None:
    """Raise EventTraceError carrying the first violation of validate_events"""
    found = validate_events(net, trace)
    if found:
        raise EventTraceError(found[0] if len(found) == 1 else f"{found[0]} (and {len(found) - 1} more)")


def bind_events(trace: EventTrace, jobs: Iterable[Job]) -> Dict[str, Event]:
    """
    Pair sporadic jobs with events

    Job X[k] takes the earliest event of X not taken by X[0..k-1] whose time is
    not later than the arrival of X[k]. The pairing depends only on the trace.

    Returns:
        Job label -> event, for the jobs that got one
    """
    pending: Dict[str, List[Event]] = defaultdict(list)
    for event in trace.events:
        pending[event.process].append(event)
    for queue in pending.values():
        queue.sort(key=lambda e: e.time_us)

    bound: Dict[str, Event] = {}
    for job in sorted(jobs, key=lambda j: j.sort_key):
        queue = pending.get(job.process)
        if queue and queue[0].time_us <= job.arrival_us:
            bound[job.label] = queue.pop(0)
    return bound
