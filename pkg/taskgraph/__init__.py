from .task_graph import (
    Job,
    TaskGraph,
    job_label,
    split_label,
    unroll_jobs,
    derive_edges,
    build_task_graph,
    inter_process_edges,
)

__all__ = [
    'Job',
    'TaskGraph',
    'job_label',
    'split_label',
    'unroll_jobs',
    'derive_edges',
    'build_task_graph',
    'inter_process_edges',
]
