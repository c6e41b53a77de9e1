from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from taskgraph.task_graph import job_label


class EntryKind(str, Enum):
    COMPUTE = "compute-segment"
    TRANSITION = "engine-transition"


class TransitionTag(str, Enum):
    ARRIVE = "arrive"
    START = "start"
    FINISH = "finish"
    COMPLETE = "complete"


TAG_ORDER = (TransitionTag.ARRIVE, TransitionTag.START, TransitionTag.FINISH, TransitionTag.COMPLETE)


class ScheduleEntry(BaseModel):
    """One block of a time-triggered table: a job's compute segment or one engine transition"""

    model_config = ConfigDict(frozen=True)

    kind: EntryKind
    process: str
    invocation: int = Field(ge=0)
    core: int = Field(ge=0)
    start_us: int = Field(ge=0)
    duration_us: int = Field(gt=0)
    tag: Optional[TransitionTag] = None

    @property
    def end_us(self) -> int:
        return self.start_us + self.duration_us

    @property
    def label(self) -> str:
        return job_label(self.process, self.invocation)

    @property
    def is_transition(self) -> bool:
        return self.kind == EntryKind.TRANSITION


def entry_sort_key(entry: ScheduleEntry) -> Tuple:
    tag_rank = TAG_ORDER.index(entry.tag) if entry.tag is not None else -1
    return (entry.start_us, entry.core, entry.process, entry.invocation, tag_rank)


class Verdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    feasible: bool
    reason: str = ""

    def __str__(self) -> str:
        return "feasible" if self.feasible else f"infeasible: {self.reason}"


class ScheduleTable(BaseModel):
    """
    Time-triggered table over a horizon.

    cores counts every core; with two or more, core 0 is the engine core and
    compute segments use cores 1..cores-1.
    """

    model_config = ConfigDict(frozen=True)

    entries: Tuple[ScheduleEntry, ...] = ()
    cores: int = Field(ge=1)
    delta_us: int = Field(ge=0)
    horizon_us: int = Field(default=0, ge=0)
    verdict: Verdict = Verdict(feasible=True)
    # set when the entries were dispatched on fewer cores and widened onto `cores`
    dispatch_cores: Optional[int] = Field(default=None, ge=1)

    @property
    def widened(self) -> bool:
        return self.dispatch_cores is not None

    def compute_entries(self) -> Tuple[ScheduleEntry, ...]:
        return tuple(e for e in self.entries if e.kind == EntryKind.COMPUTE)


class Violation(BaseModel):
    """One problem found by check_schedule; kind is a short category such as 'overlap'"""

    model_config = ConfigDict(frozen=True)

    kind: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"
