from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from core.behavior_ids import parse_behavior_id
from core.errors import SimulationError
from core.models import NetworkModel, Value


class BehaviorStep(NamedTuple):
    """
    Outcome of one job

    result is written to every output channel of the process, or reported as an
    environment output when the process has none. reports are extra environment
    outputs (used by sinks).
    """

    result: Optional[Value]
    reports: Tuple[Value, ...]
    state: int


class Behavior:
    """
    Scripted process behavior

    A step sees the values read from the input channels (None when a read found
    nothing), the process-local state and the event payload of a sporadic job.
    It must not depend on anything else.
    """

    name = "behavior"

    def __init__(self, args: Tuple[int, ...] = ()):
        self.args = args

    @property
    def behavior_id(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({','.join(str(a) for a in self.args)})"

    def step(self, inputs: Sequence[Optional[Value]], state: int, payload: Optional[Value] = None) -> BehaviorStep:
        raise NotImplementedError

    @staticmethod
    def _present(inputs: Sequence[Optional[Value]], payload: Optional[Value]) -> List[Value]:
        values = [] if payload is None else [payload]
        values.extend(value for value in inputs if value is not None)
        return values

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.behavior_id!r})"


class IdentityBehavior(Behavior):
    """Forwards the event payload, else the first value read"""

    name = "identity"

    def step(self, inputs, state, payload=None):
        values = self._present(inputs, payload)
        return BehaviorStep(values[0] if values else None, (), state)


class SquareBehavior(Behavior):
    name = "square"

    def step(self, inputs, state, payload=None):
        values = self._present(inputs, payload)
        return BehaviorStep(values[0] * values[0] if values else None, (), state)


class ConstantBehavior(Behavior):
    name = "constant"

    def step(self, inputs, state, payload=None):
        return BehaviorStep(self.args[0], (), state)


class SumBehavior(Behavior):
    name = "sum"

    def step(self, inputs, state, payload=None):
        values = self._present(inputs, payload)
        return BehaviorStep(sum(values) if values else None, (), state)


class SinkBehavior(Behavior):
    """Reports every value it reads and writes nothing"""

    name = "sink"

    def step(self, inputs, state, payload=None):
        return BehaviorStep(None, tuple(self._present(inputs, payload)), state)


class SourceBehavior(Behavior):
    """Emits its argument sequence one value per job, cycling"""

    name = "source"

    def step(self, inputs, state, payload=None):
        return BehaviorStep(self.args[state % len(self.args)], (), state + 1)


_REGISTRY = {
    cls.name: cls
    for cls in (IdentityBehavior, SquareBehavior, ConstantBehavior, SumBehavior, SinkBehavior, SourceBehavior)
}


def resolve_behavior(behavior_id: str) -> Behavior:
    """
    Build the behavior named by an id such as 'square' or 'source(1,2)'

    Raises:
        SimulationError: On an unknown or malformed id
    """
    try:
        name, args = parse_behavior_id(behavior_id)
    except ValueError as e:
        raise SimulationError(str(e))
    return _REGISTRY[name](args)


def behaviors_for(net: NetworkModel, overrides: Optional[Mapping[str, Behavior]] = None) -> Dict[str, Behavior]:
    """Behavior of every process: the override when given, else the one named in the model"""
    overrides = overrides or {}
    unknown = sorted(set(overrides) - set(net.process_ids()))
    if unknown:
        raise SimulationError(f"behaviors given for unknown process(es): {', '.join(unknown)}")
    return {
        spec.id: overrides[spec.id] if spec.id in overrides else resolve_behavior(spec.behavior)
        for spec in net.processes
    }
