from typing import List, Optional

from core.errors import EventTraceError, ModelParseError, ParseIssue
from core.models import NetworkModel
from sim.events import Event, EventTrace, check_events


def parse_event_trace(text: str, net: Optional[NetworkModel] = None) -> EventTrace:
    """
    Parse `.events` text: one `time_us process payload` line per event

    Args:
        text: Trace text; blank lines and `#` comments are ignored
        net: When given, the trace is also checked against it (process
            references and minimal inter-arrival times)

    Returns:
        EventTrace in file order

    Raises:
        ModelParseError: Malformed lines
        EventTraceError: Times going backwards, or any rule broken against net
    """
    issues: List[ParseIssue] = []
    events: List[Event] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            issues.append(ParseIssue(number, 1, f"expected 'time_us process payload', got '{line}'"))
            continue
        time_text, process, payload_text = parts
        try:
            time_us = int(time_text)
            payload = int(payload_text)
        except ValueError:
            issues.append(ParseIssue(number, 1, f"time and payload must be integers, got '{line}'"))
            continue
        if time_us < 0:
            issues.append(ParseIssue(number, 1, f"negative time {time_us}"))
            continue
        if events and time_us < events[-1].time_us:
            raise EventTraceError(f"line {number}: time {time_us} us is earlier than the previous event")
        events.append(Event(time_us=time_us, process=process, payload=payload))

    if issues:
        raise ModelParseError(issues)
    trace = EventTrace(events=tuple(events))
    if net is not None:
        check_events(net, trace)
    return trace


def emit_event_trace(trace: EventTrace) -> str:
    return "".join(f"{event.time_us} {event.process} {event.payload}\n" for event in trace.events)
