import json
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict

from core.errors import NetworkError, UnknownExampleError
from core.models import NetworkModel
from core.network import validate_network
from core.timebase import ms
from model_io.events_format import parse_event_trace
from model_io.model_format import parse_model
from sim.events import EventTrace
from utils.logger import get_logger

BUNDLE_DIR = Path(__file__).resolve().parent
MANIFEST_PATH = BUNDLE_DIR / "manifest.json"

logger = get_logger("bundles")


class ExampleBundle(BaseModel):
    """A bundled model with its event trace, simulation horizon and golden files"""

    model_config = ConfigDict(frozen=True)

    name: str
    description: str = ""
    model_path: Path
    net: NetworkModel
    events: EventTrace = EventTrace()
    horizon_us: int
    goldens: Dict[str, Path] = {}

    def golden_text(self, key: str) -> str:
        if key not in self.goldens:
            raise KeyError(f"{self.name} has no golden file '{key}'")
        return self.goldens[key].read_text(encoding="utf-8")


def _manifest() -> Dict[str, dict]:
    with open(MANIFEST_PATH, "r", encoding="utf-8") as file:
        return json.load(file)


def list_examples() -> List[str]:
    return sorted(_manifest())


def example_name(text: str) -> Optional[str]:
    """Bundle name for 'three_tasks' or 'three_tasks.fppn', None when neither is bundled"""
    candidate = text[:-len(".fppn")] if text.endswith(".fppn") else text
    return candidate if candidate in _manifest() else None


def load_example(name: str) -> ExampleBundle:
    """
    Load a bundled example

    Args:
        name: Bundle name (fig1, three_tasks, gnc, gnc_pipelined) or its model file name

    Returns:
        Parsed and validated ExampleBundle

    Raises:
        UnknownExampleError: If no bundle has that name
        NetworkError: If the bundled model breaks a structural rule
    """
    manifest = _manifest()
    key = example_name(name)
    if key is None:
        raise UnknownExampleError(f"unknown example '{name}', bundled: {', '.join(sorted(manifest))}")
    entry = manifest[key]

    model_path = BUNDLE_DIR / entry["model"]
    net = parse_model(model_path.read_text(encoding="utf-8"))
    violations = validate_network(net)
    if violations:
        raise NetworkError(f"bundled model {key} is not valid: {violations[0]}")

    events = EventTrace()
    if entry.get("events"):
        events = parse_event_trace((BUNDLE_DIR / entry["events"]).read_text(encoding="utf-8"), net)

    logger.debug(f"Loaded example {key} from {model_path}")
    return ExampleBundle(
        name=key,
        description=entry.get("description", ""),
        model_path=model_path,
        net=net,
        events=events,
        horizon_us=ms(entry["horizon_ms"]),
        goldens={label: BUNDLE_DIR / path for label, path in entry.get("goldens", {}).items()},
    )
