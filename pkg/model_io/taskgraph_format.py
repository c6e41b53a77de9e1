import re
from typing import List

from pydantic import ValidationError

from core.errors import ModelParseError, ParseIssue
from taskgraph.task_graph import Job, TaskGraph, split_label

_JOB_RE = re.compile(
    r"^job (?P<label>\S+) arrival_us=(?P<a>\d+) deadline_us=(?P<d>\d+) wcet_us=(?P<c>\d+)$"
)
_EDGE_RE = re.compile(r"^edge (?P<src>\S+) (?P<dst>\S+)$")
_HORIZON_RE = re.compile(r"^# horizon_us=(?P<h>[1-9]\d*)$")


def emit_task_graph(tg: TaskGraph) -> str:
    """Node/edge listing: a horizon line, one `job` line per job, one `edge` line per edge"""
    lines = [f"# horizon_us={tg.horizon_us}"]
    for job in sorted(tg.jobs, key=lambda j: j.sort_key):
        lines.append(f"job {job.label} arrival_us={job.arrival_us} deadline_us={job.deadline_us} wcet_us={job.wcet_us}")
    for src, dst in tg.edges:
        lines.append(f"edge {src} {dst}")
    return "\n".join(lines) + "\n"


def parse_task_graph(text: str) -> TaskGraph:
    """
    Read a listing written by emit_task_graph

    Raises:
        ModelParseError: On malformed lines, unknown edge endpoints or a missing horizon
    """
    issues: List[ParseIssue] = []
    horizon = None
    jobs: List[Job] = []
    edges = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        horizon_match = _HORIZON_RE.match(line)
        if horizon_match:
            horizon = int(horizon_match.group("h"))
            continue
        if line.startswith("#"):
            continue
        job_match = _JOB_RE.match(line)
        if job_match:
            try:
                process, k = split_label(job_match.group("label"))
                jobs.append(Job(
                    process=process,
                    invocation=k,
                    arrival_us=int(job_match.group("a")),
                    deadline_us=int(job_match.group("d")),
                    wcet_us=int(job_match.group("c")),
                ))
            except (ValueError, ValidationError) as e:
                issues.append(ParseIssue(number, 5, str(e).splitlines()[0]))
            continue
        edge_match = _EDGE_RE.match(line)
        if edge_match:
            edges.append((number, edge_match.group("src"), edge_match.group("dst")))
            continue
        issues.append(ParseIssue(number, 1, f"expected a job or edge line, got '{line}'"))

    labels = {job.label for job in jobs}
    for number, src, dst in edges:
        for label in (src, dst):
            if label not in labels:
                issues.append(ParseIssue(number, 6, f"edge endpoint {label} is not a job"))
    if horizon is None:
        issues.append(ParseIssue(1, 1, "missing '# horizon_us=' line"))
    if issues:
        raise ModelParseError(issues)
    return TaskGraph(
        jobs=tuple(jobs),
        edges=tuple((src, dst) for _, src, dst in edges),
        horizon_us=horizon,
    )
