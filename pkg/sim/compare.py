from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict

from sim.trace import ExecutionTrace


class Divergence(BaseModel):
    """First place where two traces disagree"""

    model_config = ConfigDict(frozen=True)

    scope: str
    key: str
    index: int
    left: Optional[Any] = None
    right: Optional[Any] = None

    def __str__(self) -> str:
        return f"{self.scope} {self.key} #{self.index}: {_show(self.left)} != {_show(self.right)}"


class TraceComparison(BaseModel):
    model_config = ConfigDict(frozen=True)

    equal: bool
    divergence: Optional[Divergence] = None

    def __bool__(self) -> bool:
        return self.equal

    def __str__(self) -> str:
        return "equal" if self.equal else f"diverge at {self.divergence}"


def _show(item: Any) -> str:
    if item is None:
        return "nothing"
    if isinstance(item, tuple):
        value, status = item
        return f"{value} ({status.value})"
    return str(item)


def _first_difference(scope: str, left: Dict[str, List], right: Dict[str, List]) -> Optional[Divergence]:
    for key in sorted(set(left) | set(right)):
        a, b = left.get(key, []), right.get(key, [])
        for index in range(max(len(a), len(b))):
            x = a[index] if index < len(a) else None
            y = b[index] if index < len(b) else None
            if x != y:
                return Divergence(scope=scope, key=key, index=index, left=x, right=y)
    return None


def compare_traces(t1: ExecutionTrace, t2: ExecutionTrace) -> TraceComparison:
    """
    Compare what two runs computed, ignoring when and where

    Only the per-process sequences of output values and the per-channel sequences
    of written (value, status) pairs take part.

    Returns:
        TraceComparison, with the first divergence (outputs first, by process id,
        then writes, by channel id) when the traces differ
    """
    divergence = (
        _first_difference("output", t1.outputs_by_process(), t2.outputs_by_process())
        or _first_difference("channel", t1.writes_by_channel(), t2.writes_by_channel())
    )
    return TraceComparison(equal=divergence is None, divergence=divergence)
