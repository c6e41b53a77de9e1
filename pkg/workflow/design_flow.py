import traceback
from typing import Any, Dict, List, Optional, TYPE_CHECKING

from pydantic import BaseModel, ConfigDict

from core.errors import FppnError
from core.models import NetworkModel
from core.network import hyperperiod, validate_network
from scheduler.list_scheduler import list_schedule, min_cores
from scheduler.models import ScheduleTable
from sim.events import EventTrace
from sim.simulator import simulate
from sim.trace import ExecutionTrace
from taskgraph.task_graph import TaskGraph, build_task_graph
from utils.logger import get_logger
from .flow_info import FlowInfo

if TYPE_CHECKING:
    from config.config_manager import ConfigManager

STEPS = ("architecture", "task_graph", "schedulability", "functional_simulation")


class FlowReport(BaseModel):
    """Artifacts and step ledger of one design-flow run"""

    model_config = ConfigDict(frozen=True)

    success: bool
    violations: List[str] = []
    task_graph: Optional[TaskGraph] = None
    table: Optional[ScheduleTable] = None
    trace: Optional[ExecutionTrace] = None
    summary: Dict[str, Any] = {}

    def lines(self) -> List[str]:
        """Human-readable step summary, one line per step"""
        errors = self.summary.get("errors", {})
        lines = []
        for step in STEPS:
            if step in self.summary.get("steps_succeeded", []):
                status = "ok"
            elif step in self.summary.get("steps_failed", []):
                status = "failed"
            else:
                status = "skipped"
            detail = f": {errors[step]}" if step in errors else ""
            lines.append(f"{step}: {status}{detail}")
        return lines


class DesignFlow:
    """
    Design flow at desk scale

    Chains architecture validation, task-graph derivation, schedulability
    analysis and functional simulation, and records each step in a FlowInfo.
    """

    def __init__(self, config_manager: Optional['ConfigManager'] = None):
        """
        Initialize the design flow

        Args:
            config_manager: Source of default delta and max cores; built-in defaults when omitted
        """
        self.config_manager = config_manager
        self.logger = get_logger(self.__class__.__name__)

    def _default_delta_us(self) -> int:
        return self.config_manager.get_default_delta_us() if self.config_manager else 0

    def _max_cores(self) -> int:
        return self.config_manager.get_max_cores() if self.config_manager else 8

    def run(
        self,
        net: NetworkModel,
        horizon_us: Optional[int] = None,
        cores: Optional[int] = None,
        delta_us: Optional[int] = None,
        events: Optional[EventTrace] = None,
    ) -> FlowReport:
        """
        Run every step the network allows

        Args:
            net: Network to analyse
            horizon_us: Analysis horizon; one hyperperiod when omitted
            cores: Fixed core count; the minimum feasible count is searched when omitted
            delta_us: Engine transition cost; config default when omitted
            events: Sporadic events for the functional simulation

        Returns:
            FlowReport; success means every step succeeded
        """
        flow_info = FlowInfo()
        delta_us = self._default_delta_us() if delta_us is None else delta_us
        events = events or EventTrace()
        artifacts: Dict[str, Any] = {}

        try:
            violations = validate_network(net)
            artifacts["violations"] = violations
            if violations:
                flow_info.mark_step_failed("architecture", f"{len(violations)} violation(s), first: {violations[0]}")
                return self._finish(flow_info, artifacts, "architecture")
            flow_info.mark_step_succeeded("architecture")

            missing = sorted(spec.id for spec in net.processes if spec.wcet_us is None)
            if missing:
                flow_info.mark_step_failed("task_graph", f"WCET unknown for {', '.join(missing)}")
                return self._finish(flow_info, artifacts, "task_graph")
            horizon_us = horizon_us or hyperperiod(net)
            tg = build_task_graph(net, horizon_us)
            artifacts["task_graph"] = tg
            flow_info.mark_step_succeeded("task_graph")

            table = self._schedule(tg, net, cores, delta_us, flow_info)
            artifacts["table"] = table
            if not table.verdict.feasible:
                return self._finish(flow_info, artifacts, "schedulability")

            artifacts["trace"] = simulate(net, None, table, events, horizon_us)
            flow_info.mark_step_succeeded("functional_simulation")
            return self._finish(flow_info, artifacts, None)

        except FppnError as e:
            step = next(s for s in STEPS if s not in flow_info.get()["steps_executed"])
            self.logger.error(f"Design flow stopped at {step}: {e}")
            flow_info.mark_step_failed(step, str(e))
            return self._finish(flow_info, artifacts, step)
        except Exception as e:
            self.logger.error(f"Design flow failed: {str(e)}")
            self.logger.error(traceback.format_exc())
            flow_info.finalize(False, str(e))
            raise

    def _schedule(self, tg: TaskGraph, net: NetworkModel, cores: Optional[int], delta_us: int, flow_info: FlowInfo) -> ScheduleTable:
        if cores is not None:
            table = list_schedule(tg, net, cores, delta_us)
        else:
            found = min_cores(tg, net, delta_us, self._max_cores())
            table = list_schedule(tg, net, found or self._max_cores(), delta_us)
        if table.verdict.feasible:
            flow_info.mark_step_succeeded("schedulability")
            self.logger.info(f"Schedulable on {table.cores} core(s) at delta {delta_us} us")
        else:
            flow_info.mark_step_failed("schedulability", f"{table.cores} core(s): {table.verdict}")
        return table

    def _finish(self, flow_info: FlowInfo, artifacts: Dict[str, Any], stopped_at: Optional[str]) -> FlowReport:
        if stopped_at is not None:
            for step in STEPS[STEPS.index(stopped_at) + 1:]:
                flow_info.mark_step_skipped(step, f"{stopped_at} did not succeed")
        success = all(flow_info.is_step_succeeded(step) for step in STEPS)
        flow_info.finalize(success, None if success else flow_info.get_step_error(stopped_at))
        return FlowReport(success=success, summary=flow_info.get_execution_summary(), **artifacts)
