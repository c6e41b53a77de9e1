"""
Functional simulation of an FPPN driven by a time-triggered table.

A job reads its input channels when its compute segment starts, applies its
behavior and writes its outputs when the segment ends. At equal times ends are
handled before starts, and ties follow table order.

Channels without a priority arrow are double-buffered: a write is staged and
committed at the absolute deadline of the writing job, and a reader job sees
only commits not later than its own arrival.
"""

import heapq
from typing import Dict, List, Mapping, Optional, Tuple

from core.channels import channel_read, channel_write, new_channel_state
from core.errors import SimulationError
from core.models import ChannelSpec, ChannelState, NetworkModel, Value
from core.timebase import format_ms
from scheduler.checker import check_schedule
from scheduler.list_scheduler import table_from_order
from scheduler.models import EntryKind, ScheduleEntry, ScheduleTable
from scheduler.priority import asap_order
from sim.behaviors import Behavior, BehaviorStep, behaviors_for
from sim.events import EventTrace, bind_events, check_events
from sim.trace import ExecutionTrace, RecordKind, TraceRecord
from taskgraph.task_graph import Job, TaskGraph, build_task_graph
from utils.logger import get_logger

_END = 0
_START = 1

# Violations that only concern timing; the table is still executable
_TIMING_KINDS = ("deadline", "verdict")


class Simulator:
    """Runs one network with resolved behaviors over a checked table"""

    def __init__(self, net: NetworkModel, behaviors: Mapping[str, Behavior]):
        self.net = net
        self.behaviors = behaviors
        self.logger = get_logger(self.__class__.__name__)

    def run(self, tg: TaskGraph, table: ScheduleTable, events: EventTrace) -> ExecutionTrace:
        jobs = tg.job_map()
        bound = bind_events(events, tg.jobs)
        segments: Dict[str, Tuple[int, ScheduleEntry]] = {
            entry.label: (index, entry)
            for index, entry in enumerate(table.entries)
            if entry.kind == EntryKind.COMPUTE
        }

        actions = []
        for label, (index, entry) in segments.items():
            actions.append((entry.start_us, _START, index, label))
            actions.append((entry.end_us, _END, index, label))
        actions.sort()

        self._records: List[TraceRecord] = []
        self._channels: Dict[str, ChannelState] = {c.id: new_channel_state(c) for c in self.net.channels}
        # channel id -> heap of (commit time, writer sort key, value)
        self._staged: Dict[str, List[Tuple[int, Tuple[str, int], Value]]] = {c.id: [] for c in self.net.channels}
        local: Dict[str, int] = {pid: 0 for pid in self.net.process_ids()}
        steps: Dict[str, Optional[BehaviorStep]] = {}

        for time_us, phase, _, label in actions:
            job = jobs[label]
            entry = segments[label][1]
            spec = self.net.process(job.process)

            if phase == _START:
                self._record(RecordKind.JOB_START, time_us, job, core=entry.core)
                if spec.is_sporadic and label not in bound:
                    self.logger.debug(f"{label} has no pending event, skipped")
                    self._record(RecordKind.JOB_END, time_us, job)
                    steps[label] = None
                    continue
                values = [self._read(channel, job, time_us) for channel in self.net.inputs_of(job.process)]
                payload = bound[label].payload if label in bound else None
                step = self.behaviors[job.process].step(values, local[job.process], payload)
                local[job.process] = step.state
                steps[label] = step
                continue

            step = steps.get(label)
            if step is None:
                continue
            outputs = self.net.outputs_of(job.process)
            if step.result is not None:
                for channel in outputs:
                    self._write(channel, job, step.result, time_us)
                if not outputs:
                    self._record(RecordKind.OUTPUT, time_us, job, value=step.result)
            for value in step.reports:
                self._record(RecordKind.OUTPUT, time_us, job, value=value)
            self._record(RecordKind.JOB_END, time_us, job)

        for channel in self.net.channels:
            self._commit(channel, None)

        records = sorted(self._records, key=lambda r: (r.time_us, r.seq))
        self.logger.debug(f"Simulated {len(segments)} jobs into {len(records)} trace records")
        return ExecutionTrace(records=tuple(records))

    def _record(self, kind: RecordKind, time_us: int, job: Job, **fields) -> None:
        self._records.append(TraceRecord(
            kind=kind,
            time_us=time_us,
            seq=len(self._records),
            process=job.process,
            invocation=job.invocation,
            **fields,
        ))

    def _read(self, channel: ChannelSpec, job: Job, time_us: int) -> Optional[Value]:
        if not channel.ordered:
            self._commit(channel, job.arrival_us)
        value, self._channels[channel.id] = channel_read(self._channels[channel.id], channel)
        self._record(RecordKind.READ, time_us, job, channel=channel.id, value=value)
        return value

    def _write(self, channel: ChannelSpec, job: Job, value: Value, time_us: int) -> None:
        if not channel.ordered:
            heapq.heappush(self._staged[channel.id], (job.deadline_us, job.sort_key, value))
            return
        self._channels[channel.id], status = channel_write(self._channels[channel.id], channel, value)
        self._record(RecordKind.WRITE, time_us, job, channel=channel.id, value=value, status=status)

    def _commit(self, channel: ChannelSpec, limit_us: Optional[int]) -> None:
        """Apply staged writes committed not later than limit_us (all of them when None)"""
        staged = self._staged[channel.id]
        while staged and (limit_us is None or staged[0][0] <= limit_us):
            commit_us, (process, invocation), value = heapq.heappop(staged)
            self._channels[channel.id], status = channel_write(self._channels[channel.id], channel, value)
            self._records.append(TraceRecord(
                kind=RecordKind.WRITE, time_us=commit_us, seq=len(self._records), process=process,
                invocation=invocation, channel=channel.id, value=value, status=status,
            ))


def _check_table(table: ScheduleTable, tg: TaskGraph) -> None:
    violations = check_schedule(table, tg)
    structural = [v for v in violations if v.kind not in _TIMING_KINDS]
    if structural:
        more = f" (and {len(structural) - 1} more)" if len(structural) > 1 else ""
        raise SimulationError(f"table cannot be executed: {structural[0]}{more}")
    misses = [v for v in violations if v.kind == "deadline"]
    if misses:
        get_logger("simulator").warning(f"Simulating a table with {len(misses)} deadline miss(es): {misses[0].message}")


def simulate(
    net: NetworkModel,
    behaviors: Optional[Mapping[str, Behavior]],
    table: ScheduleTable,
    events: EventTrace,
    horizon_us: int,
) -> ExecutionTrace:
    """
    Execute a network according to a schedule table

    Args:
        net: Valid network with WCETs
        behaviors: Per-process behavior overrides; processes not listed use their model behavior
        table: Table built for the task graph of net over horizon_us
        events: Sporadic event trace
        horizon_us: Simulated horizon, a multiple of the hyperperiod

    Returns:
        ExecutionTrace sorted by (time, seq)

    Raises:
        SimulationError: Unknown behaviors or a table that does not fit the task graph
        EventTraceError: Invalid events
    """
    resolved = behaviors_for(net, behaviors)
    check_events(net, events)
    if table.horizon_us and table.horizon_us != horizon_us:
        raise SimulationError(
            f"table covers {format_ms(table.horizon_us)} ms but the simulation horizon is {format_ms(horizon_us)} ms"
        )
    tg = build_task_graph(net, horizon_us)
    _check_table(table, tg)
    return Simulator(net, resolved).run(tg, table, events)


def run_asap(
    net: NetworkModel,
    behaviors: Optional[Mapping[str, Behavior]],
    events: EventTrace,
    horizon_us: int,
    cores: int,
    delta_us: int,
) -> Tuple[ScheduleTable, ExecutionTrace]:
    """
    Online ASAP execution: every job starts as soon as it has arrived, its
    predecessors have completed and a core is free

    Returns:
        (realized table, trace); deadline misses show up in the table verdict
    """
    tg = build_task_graph(net, horizon_us)
    table = table_from_order(tg, asap_order(tg, net), cores, delta_us)
    return table, simulate(net, behaviors, table, events, horizon_us)
