"""
Command-line front door.

Exit codes: 0 success or feasible, 1 infeasible or violations found,
2 usage, parse and input errors.
"""

import argparse
import os
import sys
from typing import List, NamedTuple, Optional, TextIO

from bundles.loader import example_name, load_example
from config.config_manager import ConfigManager
from core.errors import FppnError
from core.models import NetworkModel
from core.network import hyperperiod, validate_network
from core.timebase import ms
from model_io.events_format import parse_event_trace
from model_io.gantt import emit_gantt
from model_io.model_format import parse_model
from model_io.schedule_csv import emit_schedule, parse_schedule
from model_io.taskgraph_format import emit_task_graph
from model_io.trace_format import emit_trace
from scheduler.analysis import period_completion
from scheduler.list_scheduler import list_schedule, min_cores
from scheduler.models import ScheduleTable
from sim.events import EventTrace
from sim.simulator import run_asap, simulate
from taskgraph.task_graph import build_task_graph
from utils.logger import get_logger
from workflow.design_flow import DesignFlow

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

COMMANDS = ("validate", "taskgraph", "schedule", "asap", "simulate", "gantt", "mincores", "flow", "serve")

logger = get_logger("cli")


class Inputs(NamedTuple):
    net: NetworkModel
    horizon_us: int
    events: EventTrace


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", help="model file (.fppn) or bundled example name")
    common.add_argument("--horizon", help="horizon in ms (default: one hyperperiod, or the bundle's horizon)")
    common.add_argument("--cores", type=int, help="total core count, engine core included when >= 2")
    common.add_argument("--delta", type=int, help="engine transition cost in microseconds")
    common.add_argument("--events", help="event trace file (.events)")
    common.add_argument("--out", help="write the main output to this file instead of stdout")
    common.add_argument("--format", choices=("csv", "svg", "text"), help="output format")
    common.add_argument("--schedule", help="schedule table (.sched.csv) to reuse for simulate/gantt")
    common.add_argument("--max-cores", type=int, dest="max_cores", help="upper bound for mincores")
    common.add_argument("--config", help="configuration file (JSON)")

    parser = argparse.ArgumentParser(prog="fppn-flow", description="Design-flow toolkit for fixed priority process networks")
    commands = parser.add_subparsers(dest="command", required=True)
    helps = {
        "validate": "check the structural rules of a model",
        "taskgraph": "list the jobs and precedence edges over the horizon",
        "schedule": "build a static time-triggered table and its verdict",
        "asap": "run the online ASAP policy and report the realized table",
        "simulate": "run the functional simulation and print the execution trace",
        "gantt": "draw a schedule table as SVG",
        "mincores": "smallest feasible total core count",
        "flow": "run every design-flow step and summarise",
        "serve": "start the HTTP service",
    }
    for name in COMMANDS:
        commands.add_parser(name, parents=[common], help=helps[name])
    return parser


class CommandRunner:
    """Executes one parsed command line"""

    def __init__(self, args: argparse.Namespace, stdout: TextIO):
        self.args = args
        self.stdout = stdout
        self.config_manager = ConfigManager(args.config)
        self.logger = get_logger(self.__class__.__name__)

    @property
    def delta_us(self) -> int:
        return self.config_manager.get_default_delta_us() if self.args.delta is None else self.args.delta

    @property
    def cores(self) -> int:
        return self.config_manager.get_default_cores() if self.args.cores is None else self.args.cores

    def emit(self, text: str) -> None:
        """Main output goes to --out when given, else to stdout"""
        if self.args.out:
            with open(self.args.out, "w", encoding="utf-8") as file:
                file.write(text)
            self.logger.info(f"Wrote {self.args.out}")
        else:
            self.stdout.write(text)

    def say(self, line: str) -> None:
        self.stdout.write(line + "\n")

    def inputs(self) -> Inputs:
        if not self.args.model:
            raise UsageError("--model is required")
        bundle = None
        if os.path.exists(self.args.model):
            with open(self.args.model, "r", encoding="utf-8") as file:
                net = parse_model(file.read())
        elif example_name(self.args.model):
            bundle = load_example(self.args.model)
            net = bundle.net
        else:
            raise UsageError(f"model not found: {self.args.model}")

        if self.args.horizon is not None:
            try:
                horizon_us = ms(self.args.horizon)
            except ValueError as e:
                raise UsageError(f"--horizon: {e}")
        elif bundle is not None:
            horizon_us = bundle.horizon_us
        else:
            horizon_us = hyperperiod(net)

        if self.args.events:
            with open(self.args.events, "r", encoding="utf-8") as file:
                events = parse_event_trace(file.read(), net)
        else:
            events = bundle.events if bundle is not None else EventTrace()
        return Inputs(net, horizon_us, events)

    def table_for(self, inputs: Inputs) -> ScheduleTable:
        if self.args.schedule:
            with open(self.args.schedule, "r", encoding="utf-8") as file:
                return parse_schedule(file.read())
        tg = build_task_graph(inputs.net, inputs.horizon_us)
        return list_schedule(tg, inputs.net, self.cores, self.delta_us)

    def render_table(self, table: ScheduleTable) -> int:
        fmt = self.args.format or "csv"
        if fmt == "svg":
            self.emit(emit_gantt(table, self.config_manager.get_gantt_config()))
        elif fmt == "text":
            self.emit(_text_table(table))
        else:
            self.emit(emit_schedule(table))
        self.say(self._note(str(table.verdict)))
        return EXIT_OK if table.verdict.feasible else EXIT_FAILED

    def _note(self, line: str) -> str:
        """Trailing summary lines stay CSV comments when they follow a table on stdout"""
        if self.args.out or self.args.format in ("text", "svg"):
            return line
        return f"# {line}"

    def run(self) -> int:
        return getattr(self, f"cmd_{self.args.command}")()

    def cmd_validate(self) -> int:
        net = self.inputs().net
        violations = validate_network(net)
        for violation in violations:
            self.say(violation)
        if not violations:
            self.say(f"valid: {len(net.processes)} processes, {len(net.channels)} channels")
        return EXIT_FAILED if violations else EXIT_OK

    def cmd_taskgraph(self) -> int:
        inputs = self.inputs()
        self.emit(emit_task_graph(build_task_graph(inputs.net, inputs.horizon_us)))
        return EXIT_OK

    def cmd_schedule(self) -> int:
        inputs = self.inputs()
        tg = build_task_graph(inputs.net, inputs.horizon_us)
        return self.render_table(list_schedule(tg, inputs.net, self.cores, self.delta_us))

    def cmd_asap(self) -> int:
        inputs = self.inputs()
        table, _ = run_asap(inputs.net, None, inputs.events, inputs.horizon_us, self.cores, self.delta_us)
        code = self.render_table(table)
        periods = [p.period_us for p in inputs.net.processes if not p.is_sporadic]
        if periods and inputs.horizon_us % min(periods) == 0:
            tg = build_task_graph(inputs.net, inputs.horizon_us)
            self.say(self._note(f"period_completion_us={period_completion(table, tg, min(periods))}"))
        return code

    def cmd_simulate(self) -> int:
        inputs = self.inputs()
        table = self.table_for(inputs)
        trace = simulate(inputs.net, None, table, inputs.events, inputs.horizon_us)
        if (self.args.format or "text") == "svg":
            self.emit(emit_gantt(trace, self.config_manager.get_gantt_config()))
        else:
            self.emit(emit_trace(trace))
        return EXIT_OK

    def cmd_gantt(self) -> int:
        table = self.table_for(self.inputs())
        self.emit(emit_gantt(table, self.config_manager.get_gantt_config()))
        return EXIT_OK

    def cmd_mincores(self) -> int:
        inputs = self.inputs()
        limit = self.config_manager.get_max_cores() if self.args.max_cores is None else self.args.max_cores
        found = min_cores(build_task_graph(inputs.net, inputs.horizon_us), inputs.net, self.delta_us, limit)
        if found is None:
            self.say(f"none <= {limit}")
            return EXIT_FAILED
        self.say(str(found))
        return EXIT_OK

    def cmd_flow(self) -> int:
        inputs = self.inputs()
        report = DesignFlow(self.config_manager).run(
            inputs.net,
            horizon_us=inputs.horizon_us,
            cores=self.args.cores,
            delta_us=self.delta_us,
            events=inputs.events,
        )
        for line in report.lines():
            self.say(line)
        return EXIT_OK if report.success else EXIT_FAILED

    def cmd_serve(self) -> int:
        from service.api import serve

        serve(self.config_manager)
        return EXIT_OK


class UsageError(Exception):
    """Bad or missing command-line input"""


def _text_table(table: ScheduleTable) -> str:
    header = f"cores={table.cores} delta_us={table.delta_us} horizon_us={table.horizon_us}"
    if table.widened:
        header += f" dispatch_cores={table.dispatch_cores}"
    lines = [header]
    for entry in table.entries:
        what = f"{entry.tag.value} {entry.label}" if entry.is_transition else entry.label
        lines.append(f"core {entry.core}  {entry.start_us:>9} .. {entry.end_us:>9}  {what}")
    return "\n".join(lines) + "\n"


def run(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """
    Run one command line

    Args:
        argv: Arguments without the program name; sys.argv[1:] when omitted
        stdout: Stream for command output; sys.stdout when omitted

    Returns:
        Exit code
    """
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        return CommandRunner(args, stdout).run()
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except (FppnError, OSError, ValueError) as e:
        logger.debug(f"{args.command} failed: {e!r}")
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


def run_main() -> None:
    """Console-script entry"""
    sys.exit(run(sys.argv[1:]))
