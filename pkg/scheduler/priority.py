import random
from typing import Callable, Dict, List, Optional, Tuple

import networkx as nx

from core.errors import ScheduleError
from core.models import NetworkModel
from taskgraph.task_graph import Job, TaskGraph


def _ordered(tg: TaskGraph, key: Callable[[str], Tuple]) -> List[str]:
    graph = tg.graph()
    if not nx.is_directed_acyclic_graph(graph):
        raise ScheduleError("task graph has a cycle")
    return list(nx.lexicographical_topological_sort(graph, key=key))


def priority_order(tg: TaskGraph, net: NetworkModel, rng: Optional[random.Random] = None) -> List[str]:
    """
    Total priority order over jobs, earlier = higher priority

    A topological order of the task graph. Among jobs available at the same
    point, ties are broken by earlier absolute deadline, earlier arrival, smaller
    Fpriority index, then job id. With an rng, ties are broken randomly instead,
    which still yields a valid topological order.

    Returns:
        Job labels in priority order

    Raises:
        ScheduleError: If the task graph is cyclic
    """
    jobs = tg.job_map()
    if rng is not None:
        noise: Dict[str, float] = {label: rng.random() for label in sorted(jobs)}
        return _ordered(tg, lambda label: (noise[label], label))

    def key(label: str) -> Tuple:
        job: Job = jobs[label]
        return (job.deadline_us, job.arrival_us, net.process(job.process).fpriority, job.process, job.invocation)

    return _ordered(tg, key)


def asap_order(tg: TaskGraph, net: NetworkModel) -> List[str]:
    """Release order used by the online ASAP policy: arrival, then Fpriority, then id"""
    jobs = tg.job_map()

    def key(label: str) -> Tuple:
        job: Job = jobs[label]
        return (job.arrival_us, net.process(job.process).fpriority, job.process, job.invocation)

    return _ordered(tg, key)
