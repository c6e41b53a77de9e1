"""
Event-driven, non-preemptive dispatch shared by list scheduling, the ASAP
policy and the exhaustive oracle.

Every job costs four engine transitions of length delta: arrive and start
before its compute segment, finish and complete after it. With one core the
transitions run on that core around the compute segment. With two or more
cores, core 0 is the engine: transitions of all jobs are serialized there in
request order and compute segments run on cores 1..cores-1.
"""

import heapq
from typing import Dict, List, Optional, Sequence, Tuple

from core.errors import ScheduleError
from scheduler.models import EntryKind, ScheduleEntry, TransitionTag, entry_sort_key
from taskgraph.task_graph import TaskGraph

ENGINE_CORE = 0


class DispatchPolicy:
    """Chooses which ready job goes to which free compute core"""

    def pick(self, ready: Sequence[str], free_cores: Sequence[int]) -> Optional[Tuple[str, int]]:
        raise NotImplementedError


class RankPolicy(DispatchPolicy):
    """Highest-ranked ready job on the lowest-index free core"""

    def __init__(self, order: Sequence[str]):
        self.rank = {label: index for index, label in enumerate(order)}

    def pick(self, ready, free_cores):
        label = min(ready, key=lambda item: self.rank[item])
        return label, min(free_cores)


class FixedPolicy(DispatchPolicy):
    """Dispatches jobs strictly in the given sequence, each on its assigned core"""

    def __init__(self, sequence: Sequence[str], assignment: Dict[str, int]):
        self.sequence = list(sequence)
        self.assignment = assignment
        self.position = 0

    def pick(self, ready, free_cores):
        if self.position >= len(self.sequence):
            return None
        label = self.sequence[self.position]
        core = self.assignment[label]
        if label in ready and core in free_cores:
            self.position += 1
            return label, core
        return None


class DispatchResult:
    def __init__(self, entries: List[ScheduleEntry], completion: Dict[str, int], cores_used: Dict[str, int]):
        self.entries = entries
        self.completion = completion
        self.cores_used = cores_used


def compute_cores(cores: int) -> List[int]:
    """Cores that may run compute segments on a platform with `cores` cores"""
    return [ENGINE_CORE] if cores == 1 else list(range(1, cores))


def dispatch(tg: TaskGraph, cores: int, delta_us: int, policy: DispatchPolicy) -> DispatchResult:
    """
    Simulate non-preemptive dispatch of a task graph

    Args:
        tg: Task graph to run
        cores: Total core count (>= 1)
        delta_us: Cost of one engine transition (>= 0)
        policy: Picks the next (job, core) among ready jobs and free cores

    Returns:
        DispatchResult with sorted entries, completion time per job and the compute core per job

    Raises:
        ScheduleError: On invalid platform parameters or when the policy stalls
    """
    if cores < 1:
        raise ScheduleError(f"core count must be at least 1, got {cores}")
    if delta_us < 0:
        raise ScheduleError(f"delta must be non-negative, got {delta_us}")

    jobs = tg.job_map()
    predecessors: Dict[str, List[str]] = {label: [] for label in jobs}
    for src, dst in tg.edges:
        predecessors[dst].append(src)

    shared = cores == 1
    core_free_at = {core: 0 for core in compute_cores(cores)}
    engine_free_at = 0
    entries: List[ScheduleEntry] = []
    completion: Dict[str, int] = {}
    cores_used: Dict[str, int] = {}
    pending = sorted(jobs)

    # Times at which readiness or core availability may change
    wakeups = sorted({job.arrival_us for job in jobs.values()})
    heapq.heapify(wakeups)
    # (compute end, dispatch sequence, label) for multi-core finish bookkeeping
    compute_ends: List[Tuple[int, int, str]] = []
    sequence = 0

    def transition(label: str, core: int, start: int, tag: TransitionTag) -> None:
        job = jobs[label]
        entries.append(ScheduleEntry(
            kind=EntryKind.TRANSITION, process=job.process, invocation=job.invocation,
            core=core, start_us=start, duration_us=delta_us, tag=tag,
        ))

    def segment(label: str, core: int, start: int) -> None:
        job = jobs[label]
        entries.append(ScheduleEntry(
            kind=EntryKind.COMPUTE, process=job.process, invocation=job.invocation,
            core=core, start_us=start, duration_us=job.wcet_us,
        ))

    while pending or compute_ends:
        candidates = []
        if wakeups:
            candidates.append(wakeups[0])
        if compute_ends:
            candidates.append(compute_ends[0][0])
        if not candidates:
            raise ScheduleError(f"dispatch stalled with {len(pending)} job(s) left")
        now = min(candidates)
        while wakeups and wakeups[0] <= now:
            heapq.heappop(wakeups)

        while compute_ends and compute_ends[0][0] == now:
            _, _, label = heapq.heappop(compute_ends)
            finish_at = max(now, engine_free_at)
            if delta_us:
                transition(label, ENGINE_CORE, finish_at, TransitionTag.FINISH)
                transition(label, ENGINE_CORE, finish_at + delta_us, TransitionTag.COMPLETE)
                engine_free_at = finish_at + 2 * delta_us
                completion[label] = engine_free_at
            else:
                completion[label] = now
            heapq.heappush(wakeups, completion[label])

        while pending:
            ready = [
                label for label in pending
                if jobs[label].arrival_us <= now
                and all(completion.get(pred, now + 1) <= now for pred in predecessors[label])
            ]
            free = [core for core, free_at in core_free_at.items() if free_at <= now]
            if not ready or not free:
                break
            choice = policy.pick(ready, free)
            if choice is None:
                break
            label, core = choice
            if label not in ready or core not in free:
                raise ScheduleError(f"policy picked {label} on core {core}, which is not available at {now}")
            pending.remove(label)
            cores_used[label] = core
            job = jobs[label]

            if shared:
                start = now
                if delta_us:
                    transition(label, core, start, TransitionTag.ARRIVE)
                    transition(label, core, start + delta_us, TransitionTag.START)
                segment(label, core, start + 2 * delta_us)
                end = start + 2 * delta_us + job.wcet_us
                if delta_us:
                    transition(label, core, end, TransitionTag.FINISH)
                    transition(label, core, end + delta_us, TransitionTag.COMPLETE)
                completion[label] = end + 2 * delta_us
                core_free_at[core] = completion[label]
                heapq.heappush(wakeups, completion[label])
            else:
                start = max(now, engine_free_at)
                if delta_us:
                    transition(label, ENGINE_CORE, start, TransitionTag.ARRIVE)
                    transition(label, ENGINE_CORE, start + delta_us, TransitionTag.START)
                    engine_free_at = start + 2 * delta_us
                compute_start = start + 2 * delta_us
                segment(label, core, compute_start)
                core_free_at[core] = compute_start + job.wcet_us
                heapq.heappush(compute_ends, (core_free_at[core], sequence, label))
            sequence += 1

    entries.sort(key=entry_sort_key)
    return DispatchResult(entries, completion, cores_used)
