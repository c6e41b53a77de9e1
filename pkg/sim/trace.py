from collections import defaultdict
from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from core.models import Value, WriteStatus
from taskgraph.task_graph import job_label


class RecordKind(str, Enum):
    JOB_START = "job-start"
    JOB_END = "job-end"
    READ = "read"
    WRITE = "write"
    OUTPUT = "output"


class TraceRecord(BaseModel):
    """
    One observable step of a simulation run

    Fields a kind does not use stay None: job-start carries the core, read carries
    the channel and the value or None when nothing was available, write carries the
    channel, the value and the status, output carries the process and the value.
    """

    model_config = ConfigDict(frozen=True)

    kind: RecordKind
    time_us: int = Field(ge=0)
    seq: int = Field(default=0, ge=0)
    process: str
    invocation: Optional[int] = None
    core: Optional[int] = None
    channel: Optional[str] = None
    value: Optional[Value] = None
    status: Optional[WriteStatus] = None

    @property
    def job(self) -> Optional[str]:
        return None if self.invocation is None else job_label(self.process, self.invocation)


class ExecutionTrace(BaseModel):
    model_config = ConfigDict(frozen=True)

    records: Tuple[TraceRecord, ...] = ()

    def of_kind(self, kind: RecordKind) -> List[TraceRecord]:
        return [record for record in self.records if record.kind == kind]

    def outputs_by_process(self) -> Dict[str, List[Value]]:
        outputs: Dict[str, List[Value]] = defaultdict(list)
        for record in self.of_kind(RecordKind.OUTPUT):
            outputs[record.process].append(record.value)
        return dict(outputs)

    def writes_by_channel(self) -> Dict[str, List[Tuple[Value, WriteStatus]]]:
        writes: Dict[str, List[Tuple[Value, WriteStatus]]] = defaultdict(list)
        for record in self.of_kind(RecordKind.WRITE):
            writes[record.channel].append((record.value, record.status))
        return dict(writes)

    def __len__(self) -> int:
        return len(self.records)
