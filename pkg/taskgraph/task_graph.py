import re
from collections import defaultdict
from typing import Dict, Iterable, List, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from core.errors import TaskGraphError
from core.models import NetworkModel
from core.network import fp_graph, hyperperiod, validate_network
from core.timebase import format_ms
from utils.logger import get_logger

logger = get_logger("taskgraph")

_LABEL_RE = re.compile(r"^(?P<process>[A-Za-z0-9_]+)\[(?P<k>\d+)\]$")

Edge = Tuple[str, str]


class Job(BaseModel):
    """The k-th invocation p[k] of a process with its scheduling window and WCET"""

    model_config = ConfigDict(frozen=True)

    process: str
    invocation: int = Field(ge=0)
    arrival_us: int = Field(ge=0)
    deadline_us: int = Field(gt=0)
    wcet_us: int = Field(gt=0)

    @property
    def label(self) -> str:
        return job_label(self.process, self.invocation)

    @property
    def sort_key(self) -> Tuple[str, int]:
        return (self.process, self.invocation)

    def overlaps(self, other: "Job") -> bool:
        """Whether the windows [A, D) of both jobs intersect"""
        return self.arrival_us < other.deadline_us and other.arrival_us < self.deadline_us


class TaskGraph(BaseModel):
    """Jobs over a horizon and the precedence edges between them (a DAG)"""

    model_config = ConfigDict(frozen=True)

    jobs: Tuple[Job, ...] = ()
    edges: Tuple[Edge, ...] = ()
    horizon_us: int = Field(gt=0)

    def job(self, label: str) -> Job:
        for job in self.jobs:
            if job.label == label:
                return job
        raise KeyError(f"unknown job: {label}")

    def job_map(self) -> Dict[str, Job]:
        return {job.label: job for job in self.jobs}

    def predecessors(self, label: str) -> List[str]:
        return sorted(src for src, dst in self.edges if dst == label)

    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        for job in self.jobs:
            graph.add_node(job.label, job=job)
        graph.add_edges_from(self.edges)
        return graph


def job_label(process: str, invocation: int) -> str:
    return f"{process}[{invocation}]"


def split_label(label: str) -> Tuple[str, int]:
    """'split[0]' -> ('split', 0)"""
    match = _LABEL_RE.match(label)
    if not match:
        raise ValueError(f"malformed job label: {label!r}")
    return match.group("process"), int(match.group("k"))


def unroll_jobs(net: NetworkModel, horizon_us: int) -> List[Job]:
    """
    Unroll every process into its jobs over the horizon

    Sporadic processes are unrolled at their minimal inter-arrival time. All
    release offsets are zero.

    Args:
        net: Valid network whose processes all have a WCET
        horizon_us: Positive multiple of the hyperperiod

    Returns:
        Jobs sorted by (process id, invocation)

    Raises:
        TaskGraphError: Invalid network, missing WCET, or bad horizon
    """
    violations = validate_network(net)
    if violations:
        raise TaskGraphError(f"network is not valid: {violations[0]}")
    missing = [spec.id for spec in net.processes if spec.wcet_us is None]
    if missing:
        raise TaskGraphError(f"missing WCET for {', '.join(sorted(missing))}")
    if horizon_us <= 0:
        raise TaskGraphError(f"horizon must be positive, got {format_ms(horizon_us)} ms")
    period = hyperperiod(net)
    if horizon_us % period != 0:
        raise TaskGraphError(f"horizon {format_ms(horizon_us)} ms is not a multiple of the hyperperiod {format_ms(period)} ms")

    jobs = []
    for spec in sorted(net.processes, key=lambda s: s.id):
        for k in range(horizon_us // spec.period_us):
            arrival = k * spec.period_us
            jobs.append(Job(
                process=spec.id,
                invocation=k,
                arrival_us=arrival,
                deadline_us=arrival + spec.deadline_us,
                wcet_us=spec.wcet_us,
            ))
    logger.debug(f"Unrolled {len(jobs)} jobs over {format_ms(horizon_us)} ms")
    return jobs


def _check_jobs(net: NetworkModel, jobs: Iterable[Job]) -> Dict[str, List[Job]]:
    by_process: Dict[str, List[Job]] = defaultdict(list)
    seen = set()
    for job in jobs:
        if job.label in seen:
            raise TaskGraphError(f"job {job.label} appears twice")
        seen.add(job.label)
        if not net.has_process(job.process):
            raise TaskGraphError(f"job {job.label} belongs to no process of the network")
        spec = net.process(job.process)
        if (job.arrival_us != job.invocation * spec.period_us
                or job.deadline_us - job.arrival_us != spec.deadline_us
                or job.wcet_us != spec.wcet_us):
            raise TaskGraphError(f"job {job.label} does not match process {spec.id}")
        by_process[job.process].append(job)
    for process_jobs in by_process.values():
        process_jobs.sort(key=lambda j: j.invocation)
    return by_process


def derive_edges(net: NetworkModel, jobs: Iterable[Job]) -> List[Edge]:
    """
    Precedence edges between jobs

    p[k] -> q[m] when p has functional priority over q and the windows of both jobs
    overlap; p[k] -> p[k+1] for consecutive jobs of one process. The result is
    transitively reduced.

    Returns:
        Edges as (source label, target label), sorted

    Raises:
        TaskGraphError: If the jobs do not match the network
    """
    by_process = _check_jobs(net, jobs)

    graph = nx.DiGraph()
    for process_jobs in by_process.values():
        for job in process_jobs:
            graph.add_node(job.label)
        for earlier, later in zip(process_jobs, process_jobs[1:]):
            graph.add_edge(earlier.label, later.label)

    for p, q in fp_graph(net).edges():
        for first in by_process.get(p, []):
            for second in by_process.get(q, []):
                if first.overlaps(second):
                    graph.add_edge(first.label, second.label)

    if not nx.is_directed_acyclic_graph(graph):
        raise TaskGraphError("derived precedence relation has a cycle")
    reduced = nx.transitive_reduction(graph)
    return sorted(reduced.edges())


def build_task_graph(net: NetworkModel, horizon_us: int) -> TaskGraph:
    """Unroll jobs over the horizon and connect them with precedence edges"""
    jobs = unroll_jobs(net, horizon_us)
    edges = derive_edges(net, jobs)
    logger.info(f"Task graph: {len(jobs)} jobs, {len(edges)} edges over {format_ms(horizon_us)} ms")
    return TaskGraph(jobs=tuple(jobs), edges=tuple(edges), horizon_us=horizon_us)


def inter_process_edges(tg: TaskGraph) -> List[Edge]:
    """Edges between jobs of different processes"""
    return [(src, dst) for src, dst in tg.edges if split_label(src)[0] != split_label(dst)[0]]
