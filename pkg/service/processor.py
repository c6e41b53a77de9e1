import traceback
from typing import Any, Dict, List, Optional, Union

from fastapi import HTTPException, status
from pydantic import BaseModel

from bundles.loader import list_examples, load_example
from core.errors import FppnError
from core.models import NetworkModel
from core.network import hyperperiod, validate_network
from core.timebase import ms
from model_io.events_format import parse_event_trace
from model_io.model_format import parse_model
from model_io.schedule_csv import emit_schedule, parse_schedule
from model_io.taskgraph_format import emit_task_graph
from model_io.trace_format import emit_trace
from scheduler.analysis import makespan
from scheduler.checker import check_schedule
from scheduler.list_scheduler import list_schedule, min_cores
from sim.events import EventTrace
from sim.simulator import run_asap, simulate
from taskgraph.task_graph import build_task_graph
from utils.logger import get_logger
from workflow.design_flow import DesignFlow


class ModelRequest(BaseModel):
    """Model text, or the name of a bundled example"""

    model: Optional[str] = None
    example: Optional[str] = None
    horizon_ms: Optional[Union[int, float]] = None


class ScheduleRequest(ModelRequest):
    cores: Optional[int] = None
    delta_us: Optional[int] = None


class MinCoresRequest(ModelRequest):
    delta_us: Optional[int] = None
    max_cores: Optional[int] = None


class SimulateRequest(ScheduleRequest):
    events: Optional[str] = None
    schedule: Optional[str] = None


class FlowProcessor:
    """Runs toolkit operations for the HTTP service and shapes their JSON answers"""

    logger = get_logger("FlowProcessor")

    def __init__(self, config_manager):
        self.config_manager = config_manager

    def _network(self, request: ModelRequest):
        if request.example:
            bundle = load_example(request.example)
            return bundle.net, bundle.horizon_us, bundle.events
        if not request.model:
            raise HTTPException(
                status_code=status.HTTP_400_BAD_REQUEST,
                detail={"error": "either model or example is required"}
            )
        net = parse_model(request.model)
        return net, None, EventTrace()

    def _horizon(self, request: ModelRequest, net: NetworkModel, bundled: Optional[int]) -> int:
        if request.horizon_ms is not None:
            return ms(str(request.horizon_ms))
        return bundled or hyperperiod(net)

    def _delta(self, value: Optional[int]) -> int:
        return self.config_manager.get_default_delta_us() if value is None else value

    def _cores(self, value: Optional[int]) -> int:
        return self.config_manager.get_default_cores() if value is None else value

    def run(self, operation: str, request: ModelRequest) -> Dict[str, Any]:
        """
        Execute one operation and translate toolkit errors into HTTP errors

        Args:
            operation: Name of a handler method without its leading underscore
            request: Parsed request body

        Returns:
            JSON-ready response dictionary

        Raises:
            HTTPException: 400 for FppnError, 500 for anything unexpected
        """
        try:
            self.logger.info(f"Request: {operation}")
            return getattr(self, f"_{operation}")(request)
        except HTTPException:
            raise
        except FppnError as e:
            self.logger.warning(f"{operation} rejected: {e}")
            raise HTTPException(
                status_code=status.HTTP_400_BAD_REQUEST,
                detail={"error": str(e), "type": e.__class__.__name__}
            )
        except Exception as e:
            self.logger.error(f"Error processing {operation}: {e}")
            self.logger.error(traceback.format_exc())
            raise HTTPException(
                status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
                detail={"error": str(e)}
            )

    def _validate(self, request: ModelRequest) -> Dict[str, Any]:
        net, _, _ = self._network(request)
        violations = validate_network(net)
        return {"valid": not violations, "violations": violations}

    def _taskgraph(self, request: ModelRequest) -> Dict[str, Any]:
        net, bundled, _ = self._network(request)
        tg = build_task_graph(net, self._horizon(request, net, bundled))
        return {"jobs": len(tg.jobs), "edges": len(tg.edges), "listing": emit_task_graph(tg)}

    def _schedule(self, request: ScheduleRequest) -> Dict[str, Any]:
        net, bundled, _ = self._network(request)
        tg = build_task_graph(net, self._horizon(request, net, bundled))
        table = list_schedule(tg, net, self._cores(request.cores), self._delta(request.delta_us))
        return {
            "feasible": table.verdict.feasible,
            "verdict": str(table.verdict),
            "cores": table.cores,
            "makespan_us": makespan(table),
            "violations": [str(v) for v in check_schedule(table, tg)],
            "csv": emit_schedule(table),
        }

    def _mincores(self, request: MinCoresRequest) -> Dict[str, Any]:
        net, bundled, _ = self._network(request)
        tg = build_task_graph(net, self._horizon(request, net, bundled))
        limit = self.config_manager.get_max_cores() if request.max_cores is None else request.max_cores
        return {"min_cores": min_cores(tg, net, self._delta(request.delta_us), limit), "max_cores": limit}

    def _events(self, request: SimulateRequest, net: NetworkModel, bundled: EventTrace) -> EventTrace:
        if request.events is not None:
            return parse_event_trace(request.events, net)
        return bundled

    def _asap(self, request: SimulateRequest) -> Dict[str, Any]:
        net, bundled, bundled_events = self._network(request)
        table, trace = run_asap(
            net, None, self._events(request, net, bundled_events),
            self._horizon(request, net, bundled), self._cores(request.cores), self._delta(request.delta_us),
        )
        return {
            "feasible": table.verdict.feasible,
            "verdict": str(table.verdict),
            "csv": emit_schedule(table),
            "trace": emit_trace(trace),
        }

    def _simulate(self, request: SimulateRequest) -> Dict[str, Any]:
        net, bundled, bundled_events = self._network(request)
        horizon_us = self._horizon(request, net, bundled)
        if request.schedule is not None:
            table = parse_schedule(request.schedule)
        else:
            table = list_schedule(build_task_graph(net, horizon_us), net, self._cores(request.cores), self._delta(request.delta_us))
        trace = simulate(net, None, table, self._events(request, net, bundled_events), horizon_us)
        return {"outputs": trace.outputs_by_process(), "trace": emit_trace(trace)}

    def _flow(self, request: SimulateRequest) -> Dict[str, Any]:
        net, bundled, bundled_events = self._network(request)
        report = DesignFlow(self.config_manager).run(
            net,
            horizon_us=self._horizon(request, net, bundled),
            cores=request.cores,
            delta_us=request.delta_us,
            events=self._events(request, net, bundled_events),
        )
        return {"success": report.success, "steps": report.lines(), "summary": report.summary}

    @staticmethod
    def get_example_list() -> List[Dict[str, Any]]:
        examples = []
        for name in list_examples():
            bundle = load_example(name)
            examples.append({
                "name": name,
                "description": bundle.description,
                "processes": bundle.net.process_ids(),
                "horizon_us": bundle.horizon_us,
            })
        return examples
