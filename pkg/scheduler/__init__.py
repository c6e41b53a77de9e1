from .models import (
    EntryKind,
    TransitionTag,
    ScheduleEntry,
    ScheduleTable,
    Verdict,
    Violation,
)
from .priority import priority_order, asap_order
from .engine import ENGINE_CORE, DispatchPolicy, RankPolicy, FixedPolicy, dispatch
from .list_scheduler import list_schedule, min_cores, table_from_order, widen
from .checker import check_schedule
from .oracle import oracle_feasible
from .analysis import DemandFigure, demand, completion_times, makespan, period_completion

__all__ = [
    'EntryKind',
    'TransitionTag',
    'ScheduleEntry',
    'ScheduleTable',
    'Verdict',
    'Violation',
    'priority_order',
    'asap_order',
    'ENGINE_CORE',
    'DispatchPolicy',
    'RankPolicy',
    'FixedPolicy',
    'dispatch',
    'list_schedule',
    'min_cores',
    'table_from_order',
    'widen',
    'check_schedule',
    'oracle_feasible',
    'DemandFigure',
    'demand',
    'completion_times',
    'makespan',
    'period_completion',
]
