import csv
import io
import random
import re

import pytest

from bundles.loader import BUNDLE_DIR
from conftest import random_events, random_network
from core.errors import EventTraceError, ModelParseError
from core.network import hyperperiod
from model_io.events_format import emit_event_trace, parse_event_trace
from model_io.gantt import emit_gantt
from model_io.model_format import emit_model, parse_model
from model_io.schedule_csv import HEADER, emit_schedule, parse_schedule
from model_io.taskgraph_format import emit_task_graph, parse_task_graph
from model_io.trace_format import emit_trace, parse_execution_trace
from scheduler.list_scheduler import list_schedule, widen
from scheduler.models import ScheduleTable
from sim.simulator import run_asap, simulate
from taskgraph.task_graph import build_task_graph


def read_bundled(name):
    return (BUNDLE_DIR / "models" / name).read_text(encoding="utf-8")


def rows_of(text):
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def test_gnc_model_values():
    net = parse_model(read_bundled("gnc.fppn"))
    assert net.process_ids() == ["P1", "P2", "P3", "P4"]
    assert {p.id: p.period_us for p in net.processes} == {"P1": 50000, "P2": 50000, "P3": 50000, "P4": 500000}
    assert {p.id: p.wcet_us for p in net.processes} == {"P1": 6000, "P2": 8000, "P3": 4000, "P4": 22000}


def test_three_task_model_values():
    net = parse_model(read_bundled("three_tasks.fppn"))
    assert {p.id: p.wcet_us for p in net.processes} == {"split": 1000, "A": 12000, "B": 6000}
    assert {p.period_us for p in net.processes} == {25000}


def test_empty_document_is_rejected():
    with pytest.raises(ModelParseError, match="empty document"):
        parse_model("# nothing here\n\n")


def test_parse_errors_carry_positions():
    text = (
        "processes:\n"
        "  a: FPPNClass=periodic Period=10 Deadline=10 Fpriority=1 Colour=red\n"
        "  a: FPPNClass=periodic Period=10 Deadline=10 Fpriority=2\n"
        "  b: FPPNClass=periodic Deadline=ten Fpriority=3 Period=10\n"
        "widgets:\n"
    )
    with pytest.raises(ModelParseError) as error:
        parse_model(text)
    issues = error.value.issues
    messages = [issue.message for issue in issues]
    assert "unknown field 'Colour'" in messages
    assert any(m.startswith("duplicate id 'a'") for m in messages)
    assert "Deadline must be a duration in ms, got 'ten'" in messages
    assert "unknown section 'widgets'" in messages
    colour = issues[messages.index("unknown field 'Colour'")]
    assert (colour.line, colour.column) == (2, 59)


@pytest.mark.parametrize("value", ["inf", "-Infinity", "nan"])
def test_non_finite_durations_are_parse_issues(value):
    text = f"processes:\n  a: FPPNClass=periodic Period={value} Deadline=10 Fpriority=1\n"
    with pytest.raises(ModelParseError) as error:
        parse_model(text)
    assert f"Period must be a duration in ms, got '{value}'" in [issue.message for issue in error.value.issues]


def test_sporadic_needs_min_inter_arrival():
    text = "processes:\n  x: FPPNClass=sporadic Period=10 Deadline=10 Fpriority=1\n"
    with pytest.raises(ModelParseError, match="MinInterArrival"):
        parse_model(text)


@pytest.mark.parametrize("name", ["fig1.fppn", "three_tasks.fppn", "gnc.fppn", "gnc_pipelined.fppn"])
def test_bundled_models_round_trip(name):
    net = parse_model(read_bundled(name))
    assert parse_model(emit_model(net)) == net


@pytest.mark.parametrize("seed", range(200))
def test_random_instances_round_trip(seed):
    rng = random.Random(seed)
    net = random_network(rng)
    assert parse_model(emit_model(net)) == net

    horizon_us = hyperperiod(net)
    tg = build_task_graph(net, horizon_us)
    assert parse_task_graph(emit_task_graph(tg)) == tg

    table = list_schedule(tg, net, rng.randint(1, 4), rng.choice((0, 1000)))
    assert parse_schedule(emit_schedule(table)) == table

    events = random_events(rng, net, horizon_us)
    assert parse_event_trace(emit_event_trace(events), net) == events

    trace = simulate(net, None, table, events, horizon_us)
    assert parse_execution_trace(emit_trace(trace)) == trace


def test_three_task_csv(three_tasks):
    table = list_schedule(build_task_graph(three_tasks.net, 25000), three_tasks.net, 3, 1000)
    rows = rows_of(emit_schedule(table))
    assert any(row["process"] == "split" and row["core"] == "1" for row in rows)
    transitions = [row for row in rows if row["kind"] == "engine-transition"]
    assert len(transitions) == 12
    assert all(row["duration_us"] == "1000" for row in transitions)


def test_empty_table_csv_is_header_only():
    text = emit_schedule(ScheduleTable(cores=1, delta_us=0))
    body = [line for line in text.splitlines() if not line.startswith("#")]
    assert body == [",".join(HEADER)]
    assert parse_schedule(text) == ScheduleTable(cores=1, delta_us=0)


def test_infeasible_verdict_survives_the_csv(three_tasks):
    table = list_schedule(build_task_graph(three_tasks.net, 25000), three_tasks.net, 1, 1000)
    text = emit_schedule(table)
    assert "# reason=demand 31 ms > 25 ms\n" in text
    assert parse_schedule(text).verdict == table.verdict


def test_widened_table_keeps_its_dispatch_cores(three_tasks):
    table = widen(list_schedule(build_task_graph(three_tasks.net, 25000), three_tasks.net, 1, 0), 3)
    text = emit_schedule(table)
    assert "# dispatch_cores=1\n" in text
    assert parse_schedule(text) == table
    assert "dispatch_cores" not in three_tasks.golden_text("schedule_cores3_delta1ms")


def test_malformed_csv_is_rejected():
    with pytest.raises(ModelParseError):
        parse_schedule("# cores=1\n# delta_us=0\nkind,process\n")
    with pytest.raises(ModelParseError):
        parse_schedule(f"# cores=1\n{','.join(HEADER)}\ncompute-segment,a,0,0,0,-5,\n")


def test_event_trace_text():
    trace = parse_event_trace("# header\n0 X 3\n")
    assert [(e.time_us, e.process, e.payload) for e in trace.events] == [(0, "X", 3)]
    assert emit_event_trace(trace) == "0 X 3\n"


def test_event_rate_violation(fig1):
    with pytest.raises(EventTraceError):
        parse_event_trace("0 X 1\n1000 X 2\n", fig1.net)
    with pytest.raises(EventTraceError):
        parse_event_trace("5000 X 1\n0 X 2\n")
    with pytest.raises(ModelParseError):
        parse_event_trace("0 X\n")


def test_trace_lines_use_fixed_field_order(fig1):
    table = list_schedule(build_task_graph(fig1.net, 150000), fig1.net, 1, 0)
    text = emit_trace(simulate(fig1.net, None, table, fig1.events, 150000))
    assert re.search(r"^\d+ output seq=\d+ process=Y k=2 value=9$", text, re.MULTILINE)
    assert re.search(r"^\d+ read seq=\d+ process=Y k=0 channel=square_y value=-$", text, re.MULTILINE)


def test_gantt_has_one_lane_per_core(three_tasks, gnc_pipelined):
    table = list_schedule(build_task_graph(three_tasks.net, 25000), three_tasks.net, 3, 1000)
    assert emit_gantt(table).count('class="lane"') == 3

    pipelined, _ = run_asap(gnc_pipelined.net, None, gnc_pipelined.events, 500000, 4, 1000)
    assert emit_gantt(pipelined).count('class="lane"') == 4


def test_gantt_of_empty_table_draws_the_axis_only():
    svg = emit_gantt(ScheduleTable(cores=2, delta_us=0))
    assert 'class="lane"' not in svg
    assert 'class="entry' not in svg
    assert 'class="axis"' in svg


def test_gantt_is_byte_identical_across_runs(gnc_pipelined):
    first, trace = run_asap(gnc_pipelined.net, None, gnc_pipelined.events, 500000, 4, 1000)
    second, _ = run_asap(gnc_pipelined.net, None, gnc_pipelined.events, 500000, 4, 1000)
    assert emit_gantt(first) == emit_gantt(second)
    assert emit_gantt(trace) == emit_gantt(trace)
    assert "proc-P4" in emit_gantt(trace)


def test_gantt_settings(three_tasks):
    table = list_schedule(build_task_graph(three_tasks.net, 25000), three_tasks.net, 3, 1000)
    svg = emit_gantt(table, {"palette": ["#123456"]})
    assert "#123456" in svg
