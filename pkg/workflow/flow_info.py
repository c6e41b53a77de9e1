import time
from typing import Any, Dict, Optional


class FlowInfo:
    """Records which design-flow steps ran, succeeded or failed."""

    def __init__(self):
        """Initialize flow information with default values."""
        self.info = {
            "success": False,
            "steps_executed": [],
            "steps_succeeded": [],
            "steps_failed": [],
            "steps_skipped": [],
            "error": None,
            "start_time": time.monotonic(),
            "end_time": None,
            "duration": None,
            "errors": {}
        }

    def get(self) -> Dict[str, Any]:
        """Get the complete flow information dictionary."""
        return self.info

    def get_step_info(self, step: str) -> Dict[str, Any]:
        """Get information for a specific step."""
        return {
            "executed": step in self.info["steps_executed"],
            "succeeded": step in self.info["steps_succeeded"],
            "failed": step in self.info["steps_failed"],
            "error": self.info["errors"].get(step)
        }

    def mark_step_executed(self, step: str) -> None:
        """Mark a step as executed."""
        if step not in self.info["steps_executed"]:
            self.info["steps_executed"].append(step)

    def mark_step_succeeded(self, step: str) -> None:
        """Mark a step as succeeded."""
        self.mark_step_executed(step)
        if step not in self.info["steps_succeeded"]:
            self.info["steps_succeeded"].append(step)
        if step in self.info["steps_failed"]:
            self.info["steps_failed"].remove(step)

    def mark_step_failed(self, step: str, error_msg: Optional[str] = None) -> None:
        """Mark a step as failed with optional error message."""
        self.mark_step_executed(step)
        if step not in self.info["steps_failed"]:
            self.info["steps_failed"].append(step)
        if step in self.info["steps_succeeded"]:
            self.info["steps_succeeded"].remove(step)
        if error_msg:
            self.info["errors"][step] = error_msg

    def mark_step_skipped(self, step: str, reason: str) -> None:
        """A step that could not run because an earlier one did not deliver its input."""
        if step not in self.info["steps_skipped"]:
            self.info["steps_skipped"].append(step)
        self.info["errors"][step] = reason

    def is_step_succeeded(self, step: str) -> bool:
        return step in self.info["steps_succeeded"]

    def get_step_error(self, step: str) -> Optional[str]:
        return self.info["errors"].get(step)

    def finalize(self, success: bool, error_msg: Optional[str] = None) -> None:
        """Finalize flow execution."""
        self.info["end_time"] = time.monotonic()
        self.info["duration"] = self.info["end_time"] - self.info["start_time"]
        self.info["success"] = success
        if error_msg:
            self.info["error"] = error_msg

    def get_execution_summary(self) -> Dict[str, Any]:
        """Get a summary of flow execution, without timing."""
        return {
            "success": self.info["success"],
            "steps_executed": self.info["steps_executed"],
            "steps_succeeded": self.info["steps_succeeded"],
            "steps_failed": self.info["steps_failed"],
            "steps_skipped": self.info["steps_skipped"],
            "errors": self.info["errors"]
        }
