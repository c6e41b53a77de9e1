from .model_format import parse_model, emit_model
from .schedule_csv import emit_schedule, parse_schedule
from .taskgraph_format import emit_task_graph, parse_task_graph
from .events_format import parse_event_trace, emit_event_trace
from .trace_format import emit_trace, parse_execution_trace
from .gantt import emit_gantt

__all__ = [
    'parse_model',
    'emit_model',
    'emit_schedule',
    'parse_schedule',
    'emit_task_graph',
    'parse_task_graph',
    'parse_event_trace',
    'emit_event_trace',
    'emit_trace',
    'parse_execution_trace',
    'emit_gantt',
]
