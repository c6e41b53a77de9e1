from .behaviors import (
    Behavior,
    BehaviorStep,
    IdentityBehavior,
    SquareBehavior,
    ConstantBehavior,
    SumBehavior,
    SinkBehavior,
    SourceBehavior,
    resolve_behavior,
    behaviors_for,
)
from .events import Event, EventTrace, validate_events, check_events, bind_events
from .trace import RecordKind, TraceRecord, ExecutionTrace
from .simulator import Simulator, simulate, run_asap
from .compare import Divergence, TraceComparison, compare_traces

__all__ = [
    'Behavior',
    'BehaviorStep',
    'IdentityBehavior',
    'SquareBehavior',
    'ConstantBehavior',
    'SumBehavior',
    'SinkBehavior',
    'SourceBehavior',
    'resolve_behavior',
    'behaviors_for',
    'Event',
    'EventTrace',
    'validate_events',
    'check_events',
    'bind_events',
    'RecordKind',
    'TraceRecord',
    'ExecutionTrace',
    'Simulator',
    'simulate',
    'run_asap',
    'Divergence',
    'TraceComparison',
    'compare_traces',
]
