import re
from typing import Tuple

BUILTIN_BEHAVIORS = ("identity", "square", "constant", "sum", "sink", "source")

# Behaviors that take arguments and how many: None = one or more
_ARITY = {"constant": 1, "source": None}

_BEHAVIOR_RE = re.compile(r"^(?P<name>[a-z_]+)(?:\((?P<args>[^()]*)\))?$")


def parse_behavior_id(text: str) -> Tuple[str, Tuple[int, ...]]:
    """
    Split a behavior id such as 'constant(5)' or 'source(1,2,3)'

    Returns:
        (name, integer arguments)

    Raises:
        ValueError: On unknown names, malformed arguments or a wrong argument count
    """
    match = _BEHAVIOR_RE.match(text.strip())
    if not match:
        raise ValueError(f"malformed behavior id: {text!r}")
    name = match.group("name")
    if name not in BUILTIN_BEHAVIORS:
        raise ValueError(f"unknown behavior: {name}")

    raw_args = match.group("args")
    args: Tuple[int, ...] = ()
    if raw_args is not None and raw_args.strip():
        try:
            args = tuple(int(part) for part in raw_args.split(","))
        except ValueError:
            raise ValueError(f"behavior arguments must be integers: {text!r}")

    if name in _ARITY:
        arity = _ARITY[name]
        if arity is None and not args:
            raise ValueError(f"{name} needs at least one argument")
        if arity is not None and len(args) != arity:
            raise ValueError(f"{name} takes {arity} argument(s), got {len(args)}")
    elif args:
        raise ValueError(f"{name} takes no arguments")
    return name, args
