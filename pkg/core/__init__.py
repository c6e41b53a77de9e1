from .errors import (
    FppnError,
    UnknownProcessError,
    NetworkError,
    TaskGraphError,
    ScheduleError,
    SimulationError,
    EventTraceError,
    UnknownExampleError,
    ModelParseError,
    ParseIssue,
)
from .models import (
    Value,
    ProcessKind,
    ChannelKind,
    WriteStatus,
    ProcessSpec,
    ChannelSpec,
    NetworkModel,
    ChannelState,
)
from .channels import new_channel_state, channel_write, channel_read
from .network import validate_network, fp_precedes, fp_edges, fp_graph, hyperperiod
from .timebase import ms, format_ms

__all__ = [
    'FppnError',
    'UnknownProcessError',
    'NetworkError',
    'TaskGraphError',
    'ScheduleError',
    'SimulationError',
    'EventTraceError',
    'UnknownExampleError',
    'ModelParseError',
    'ParseIssue',
    'Value',
    'ProcessKind',
    'ChannelKind',
    'WriteStatus',
    'ProcessSpec',
    'ChannelSpec',
    'NetworkModel',
    'ChannelState',
    'new_channel_state',
    'channel_write',
    'channel_read',
    'validate_network',
    'fp_precedes',
    'fp_edges',
    'fp_graph',
    'hyperperiod',
    'ms',
    'format_ms',
]
