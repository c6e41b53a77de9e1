from typing import List, NamedTuple


class FppnError(Exception):
    """Base class of every error raised by the toolkit"""


class UnknownProcessError(FppnError, KeyError):
    """A process id does not name a process of the network"""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown process"


class NetworkError(FppnError, ValueError):
    """A network cannot be used for the requested operation"""


class TaskGraphError(FppnError, ValueError):
    """Jobs or edges are inconsistent with the network or horizon"""


class ScheduleError(FppnError, ValueError):
    """A schedule table is malformed or does not match its task graph"""


class SimulationError(FppnError, ValueError):
    """The simulator was given a table or behaviors it cannot execute"""


class EventTraceError(FppnError, ValueError):
    """An event trace breaks ordering, rate or reference rules"""


class UnknownExampleError(FppnError, KeyError):
    """No bundled example carries the requested name"""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown example"


class ParseIssue(NamedTuple):
    line: int
    column: int
    message: str

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}: {self.message}"


class ModelParseError(FppnError, ValueError):
    """Collects every problem found while parsing a text document"""

    def __init__(self, issues: List[ParseIssue]):
        self.issues = list(issues)
        super().__init__("; ".join(str(issue) for issue in self.issues))
