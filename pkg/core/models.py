from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from core.errors import UnknownProcessError

# Channel payloads are plain integers
Value = int


class ProcessKind(str, Enum):
    PERIODIC = "periodic"
    SPORADIC = "sporadic"


class ChannelKind(str, Enum):
    MAILBOX = "mailbox"
    BLACKBOARD = "blackboard"


class WriteStatus(str, Enum):
    ACCEPTED = "accepted"
    DROPPED = "dropped"


class ProcessSpec(BaseModel):
    """
    One FPPN process.

    For sporadic processes period_us holds the minimal inter-arrival time.
    Cross-field rules (wcet <= deadline, unique fpriority) are reported by
    validate_network rather than rejected here.
    """

    model_config = ConfigDict(frozen=True)

    id: str = Field(pattern=r"^[A-Za-z0-9_]+$")
    kind: ProcessKind = ProcessKind.PERIODIC
    period_us: int = Field(gt=0)
    deadline_us: int = Field(gt=0)
    wcet_us: Optional[int] = Field(default=None, gt=0)
    fpriority: int = Field(gt=0)
    behavior: str = "identity"

    @property
    def is_sporadic(self) -> bool:
        return self.kind == ProcessKind.SPORADIC


class ChannelSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str = Field(pattern=r"^[A-Za-z0-9_]+$")
    kind: ChannelKind
    writer: str
    reader: str
    data_size: int = Field(default=0, ge=0)
    length: Optional[int] = Field(default=None, ge=1)
    ordered: bool = True

    @property
    def capacity(self) -> int:
        return self.length or 1


class NetworkModel(BaseModel):
    """Processes, channels and sporadic couplings of one FPPN"""

    model_config = ConfigDict(frozen=True)

    processes: Tuple[ProcessSpec, ...] = ()
    channels: Tuple[ChannelSpec, ...] = ()
    couplings: Dict[str, str] = Field(default_factory=dict)

    def process_ids(self) -> List[str]:
        return sorted(p.id for p in self.processes)

    def process(self, pid: str) -> ProcessSpec:
        for spec in self.processes:
            if spec.id == pid:
                return spec
        raise UnknownProcessError(f"unknown process: {pid}")

    def has_process(self, pid: str) -> bool:
        return any(spec.id == pid for spec in self.processes)

    def channel(self, cid: str) -> ChannelSpec:
        for spec in self.channels:
            if spec.id == cid:
                return spec
        raise KeyError(f"unknown channel: {cid}")

    def inputs_of(self, pid: str) -> List[ChannelSpec]:
        return sorted((c for c in self.channels if c.reader == pid), key=lambda c: c.id)

    def outputs_of(self, pid: str) -> List[ChannelSpec]:
        return sorted((c for c in self.channels if c.writer == pid), key=lambda c: c.id)

    def channels_between(self, p: str, q: str) -> List[ChannelSpec]:
        return sorted(
            (c for c in self.channels if {c.writer, c.reader} == {p, q}),
            key=lambda c: c.id,
        )

    def sporadic_ids(self) -> List[str]:
        return sorted(p.id for p in self.processes if p.is_sporadic)


class ChannelState(BaseModel):
    """Runtime contents of one channel: a queue for mailboxes, the last value for blackboards"""

    model_config = ConfigDict(frozen=True)

    channel_id: str
    kind: ChannelKind
    queue: Tuple[Value, ...] = ()
    last: Optional[Value] = None
