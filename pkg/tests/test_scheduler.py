import random

import pytest

from conftest import random_network
from core.errors import ScheduleError
from core.models import NetworkModel, ProcessSpec
from core.network import hyperperiod
from model_io.schedule_csv import emit_schedule
from scheduler.analysis import completion_times, demand, makespan, period_completion
from scheduler.checker import check_schedule
from scheduler.list_scheduler import list_schedule, min_cores, table_from_order, widen
from scheduler.models import EntryKind, ScheduleEntry, TransitionTag
from scheduler.oracle import MAX_ORACLE_JOBS, oracle_feasible
from scheduler.priority import asap_order, priority_order
from sim.events import EventTrace
from sim.simulator import run_asap
from taskgraph.task_graph import build_task_graph


def three_task_graph(bundle):
    return build_task_graph(bundle.net, bundle.horizon_us)


def compute_cores(table):
    return {entry.label: entry.core for entry in table.compute_entries()}


def test_priority_order_of_three_tasks(three_tasks):
    assert priority_order(three_task_graph(three_tasks), three_tasks.net) == ["split[0]", "A[0]", "B[0]"]


def test_priority_order_prefers_earlier_deadline():
    net = NetworkModel(processes=(
        ProcessSpec(id="late", period_us=20000, deadline_us=20000, wcet_us=1000, fpriority=1),
        ProcessSpec(id="soon", period_us=20000, deadline_us=10000, wcet_us=1000, fpriority=2),
    ))
    assert priority_order(build_task_graph(net, 20000), net) == ["soon[0]", "late[0]"]


def test_random_priority_order_is_topological(gnc):
    tg = build_task_graph(gnc.net, 500000)
    for seed in range(5):
        order = priority_order(tg, gnc.net, rng=random.Random(seed))
        position = {label: index for index, label in enumerate(order)}
        assert all(position[src] < position[dst] for src, dst in tg.edges)


def test_single_core_with_engine_cost_is_infeasible(three_tasks):
    table = list_schedule(three_task_graph(three_tasks), three_tasks.net, 1, 1000)
    assert not table.verdict.feasible
    assert str(table.verdict) == "infeasible: demand 31 ms > 25 ms"


def test_single_core_without_engine_cost_is_feasible(three_tasks):
    table = list_schedule(three_task_graph(three_tasks), three_tasks.net, 1, 0)
    assert table.verdict.feasible
    assert makespan(table) == 19000
    assert not any(entry.is_transition for entry in table.entries)


def test_two_compute_cores_map_split_and_a_together(three_tasks):
    tg = three_task_graph(three_tasks)
    table = list_schedule(tg, three_tasks.net, 3, 1000)
    assert table.verdict.feasible
    assert compute_cores(table) == {"split[0]": 1, "A[0]": 1, "B[0]": 2}
    transitions = [entry for entry in table.entries if entry.is_transition]
    assert len(transitions) == 12
    assert all(entry.core == 0 and entry.duration_us == 1000 for entry in transitions)
    assert completion_times(table) == {"split[0]": 5000, "A[0]": 21000, "B[0]": 17000}
    assert check_schedule(table, tg) == []


def test_golden_three_task_table(three_tasks):
    table = list_schedule(three_task_graph(three_tasks), three_tasks.net, 3, 1000)
    assert emit_schedule(table) == three_tasks.golden_text("schedule_cores3_delta1ms")


def test_one_compute_core_misses_a_deadline(three_tasks):
    table = list_schedule(three_task_graph(three_tasks), three_tasks.net, 2, 1000)
    assert str(table.verdict) == "infeasible: deadline miss: B[0] completes at 31 ms > deadline 25 ms"


def test_min_cores(three_tasks, gnc):
    tg = three_task_graph(three_tasks)
    assert min_cores(tg, three_tasks.net, 1000, 4) == 3
    assert min_cores(tg, three_tasks.net, 0, 4) == 1
    assert min_cores(tg, three_tasks.net, 1000, 2) is None

    found = min_cores(build_task_graph(gnc.net, 500000), gnc.net, 1000, 4)
    assert found is not None and found <= 4


def test_min_cores_needs_a_positive_bound(three_tasks):
    with pytest.raises(ScheduleError):
        min_cores(three_task_graph(three_tasks), three_tasks.net, 0, 0)


@pytest.mark.parametrize("cores, delta_us", [(0, 0), (1, -1)])
def test_bad_platforms_are_rejected(three_tasks, cores, delta_us):
    with pytest.raises(ScheduleError):
        list_schedule(three_task_graph(three_tasks), three_tasks.net, cores, delta_us)


def test_demand_figures(three_tasks):
    tg = three_task_graph(three_tasks)
    (single,) = demand(tg, 1, 1000)
    assert (single.demand_us, single.capacity_us, single.exceeded) == (31000, 25000, True)
    engine, compute = demand(tg, 3, 1000)
    assert (engine.demand_us, compute.demand_us, compute.capacity_us) == (12000, 19000, 50000)
    assert not engine.exceeded and not compute.exceeded


def test_widen_moves_single_core_compute_off_the_engine(three_tasks):
    tg = three_task_graph(three_tasks)
    narrow = list_schedule(tg, three_tasks.net, 1, 0)
    wide = widen(narrow, 3)
    assert wide.cores == 3
    assert set(compute_cores(wide).values()) == {1}
    assert check_schedule(wide, tg) == []
    with pytest.raises(ScheduleError):
        widen(wide, 2)


def test_checker_accepts_list_schedule(three_tasks):
    tg = three_task_graph(three_tasks)
    assert check_schedule(list_schedule(tg, three_tasks.net, 3, 1000), tg) == []


def test_checker_reports_overlap(three_tasks):
    tg = three_task_graph(three_tasks)
    table = list_schedule(tg, three_tasks.net, 3, 0)
    moved = tuple(
        entry.model_copy(update={"core": 1}) if entry.label == "B[0]" else entry
        for entry in table.entries
    )
    violations = check_schedule(table.model_copy(update={"entries": moved}), tg)
    assert [v.kind for v in violations] == ["overlap"]


def test_checker_reports_missing_job(three_tasks):
    tg = three_task_graph(three_tasks)
    table = list_schedule(tg, three_tasks.net, 3, 1000)
    without_b = tuple(entry for entry in table.entries if entry.label != "B[0]")
    violations = check_schedule(table.model_copy(update={"entries": without_b}), tg)
    assert [v.kind for v in violations] == ["missing"]
    assert "B[0]" in violations[0].message


def test_checker_reports_precedence_and_placement(three_tasks):
    tg = three_task_graph(three_tasks)
    table = list_schedule(tg, three_tasks.net, 3, 0)
    early = tuple(
        entry.model_copy(update={"start_us": 0}) if entry.label == "B[0]" else entry
        for entry in table.entries
    )
    kinds = {v.kind for v in check_schedule(table.model_copy(update={"entries": early}), tg)}
    assert "precedence" in kinds

    on_engine = tuple(
        entry.model_copy(update={"core": 0}) if entry.label == "A[0]" else entry
        for entry in table.entries
    )
    kinds = {v.kind for v in check_schedule(table.model_copy(update={"entries": on_engine}), tg)}
    assert "placement" in kinds


def test_checker_reports_wrong_transition_length(three_tasks):
    tg = three_task_graph(three_tasks)
    table = list_schedule(tg, three_tasks.net, 3, 1000)
    extra = ScheduleEntry(
        kind=EntryKind.TRANSITION, process="B", invocation=0, core=0,
        start_us=24000, duration_us=500, tag=TransitionTag.COMPLETE,
    )
    kinds = [v.kind for v in check_schedule(table.model_copy(update={"entries": table.entries + (extra,)}), tg)]
    assert "transition" in kinds


def test_checker_reports_deadline_miss(three_tasks):
    tg = three_task_graph(three_tasks)
    table = list_schedule(tg, three_tasks.net, 2, 1000)
    assert [v.kind for v in check_schedule(table, tg)] == ["deadline"]


def test_asap_on_three_tasks_runs_a_and_b_concurrently(three_tasks):
    table, _ = run_asap(three_tasks.net, None, three_tasks.events, 25000, 3, 1000)
    segments = {entry.label: entry for entry in table.compute_entries()}
    a, b = segments["A[0]"], segments["B[0]"]
    assert a.core != b.core
    assert a.start_us < b.end_us and b.start_us < a.end_us
    assert check_schedule(table, three_task_graph(three_tasks)) == []


def test_asap_single_job_starts_at_arrival():
    net = NetworkModel(processes=(ProcessSpec(id="p", period_us=10000, deadline_us=10000, wcet_us=2000, fpriority=1),))
    table, _ = run_asap(net, None, EventTrace(), 10000, 1, 0)
    (segment,) = table.compute_entries()
    assert segment.start_us == 0


def test_pipelined_gnc_first_period_runs_in_parallel(gnc_pipelined):
    table, _ = run_asap(gnc_pipelined.net, None, gnc_pipelined.events, 500000, 4, 1000)
    first = {label: start for label, start in _first_starts(table).items() if label in ("P1[0]", "P3[0]", "P4[0]")}
    done = completion_times(table)
    assert len(first) == 3
    assert max(first.values()) < min(done[label] for label in first)


def _first_starts(table):
    starts = {}
    for entry in table.entries:
        starts[entry.label] = min(starts.get(entry.label, entry.start_us), entry.start_us)
    return starts


def test_pipelined_gnc_period_completion(gnc_pipelined):
    tg = build_task_graph(gnc_pipelined.net, 500000)
    table = table_from_order(tg, asap_order(tg, gnc_pipelined.net), 4, 1000)
    assert table.verdict.feasible
    completion = period_completion(table, tg, 50000)
    assert completion <= 40000
    assert gnc_pipelined.golden_text("asap_cores4_delta1ms_completion") == f"{table.verdict}\nperiod_completion_us={completion}\n"


def test_period_completion_needs_a_dividing_period(three_tasks):
    tg = three_task_graph(three_tasks)
    with pytest.raises(ScheduleError):
        period_completion(list_schedule(tg, three_tasks.net, 3, 0), tg, 10000)


@pytest.mark.parametrize("seed", range(200))
def test_random_networks_schedule_validly_and_monotonically(seed):
    rng = random.Random(seed)
    net = random_network(rng)
    tg = build_task_graph(net, hyperperiod(net))
    delta_us = rng.choice((0, 500, 1000))
    feasible_before = False
    for cores in range(1, 5):
        table = list_schedule(tg, net, cores, delta_us)
        if table.verdict.feasible:
            assert check_schedule(table, tg) == []
        else:
            assert not feasible_before, f"feasible on fewer cores but not on {cores}"
        feasible_before = feasible_before or table.verdict.feasible


@pytest.mark.parametrize("seed", range(40))
def test_list_feasible_implies_oracle_feasible(seed):
    rng = random.Random(seed)
    net = random_network(rng, max_processes=5, periods_ms=(10,))
    tg = build_task_graph(net, hyperperiod(net))
    assert len(tg.jobs) <= MAX_ORACLE_JOBS
    cores = rng.randint(1, 3)
    delta_us = rng.choice((0, 1000))
    table = list_schedule(tg, net, cores, delta_us)
    found = oracle_feasible(tg, net, cores, delta_us)
    if table.verdict.feasible:
        assert found is not None
    if found is not None:
        assert found.cores == cores
        assert check_schedule(found, tg) == []


def test_oracle_finds_what_list_scheduling_finds(three_tasks):
    tg = three_task_graph(three_tasks)
    assert oracle_feasible(tg, three_tasks.net, 1, 1000) is None
    assert oracle_feasible(tg, three_tasks.net, 2, 1000) is None
    assert oracle_feasible(tg, three_tasks.net, 3, 1000) is not None


def test_oracle_refuses_large_graphs(gnc):
    with pytest.raises(ScheduleError):
        oracle_feasible(build_task_graph(gnc.net, 500000), gnc.net, 2, 0)


def occupied(table, core):
    spans = []
    for start, end in sorted((e.start_us, e.end_us) for e in table.entries if e.core == core and e.duration_us > 0):
        if spans and start <= spans[-1][1]:
            spans[-1][1] = max(spans[-1][1], end)
        else:
            spans.append([start, end])
    return spans


def gaps(spans, lo, hi):
    found = []
    cursor = lo
    for start, end in spans:
        if start >= hi:
            break
        if end <= cursor:
            continue
        if start > cursor:
            found.append((cursor, start))
        cursor = max(cursor, end)
    if cursor < hi:
        found.append((cursor, hi))
    return found


def idle_while_ready(table, tg):
    """(job, core, gap) where a compute core sits idle and the engine is idle too while the job is ready"""
    jobs = tg.job_map()
    done = completion_times(table)
    predecessors = {label: [] for label in jobs}
    for src, dst in tg.edges:
        predecessors[dst].append(src)
    engine = occupied(table, 0)
    cores = [0] if table.cores == 1 else list(range(1, table.cores))
    found = []
    for entry in table.compute_entries():
        ready = max([jobs[entry.label].arrival_us] + [done[pred] for pred in predecessors[entry.label]])
        for core in cores:
            for lo, hi in gaps(occupied(table, core), ready, entry.start_us):
                found.extend((entry.label, core, gap) for gap in gaps(engine, lo, hi))
    return found


def test_widened_table_is_tagged(three_tasks):
    tg = three_task_graph(three_tasks)
    table = list_schedule(tg, three_tasks.net, 1, 0)
    wide = widen(table, 3)
    assert not table.widened
    assert wide.widened and wide.dispatch_cores == 1
    assert widen(wide, 4).dispatch_cores == 1
    assert not widen(table, 1).widened


def test_direct_dispatch_keeps_cores_busy(gnc):
    tg = build_task_graph(gnc.net, 500000)
    for cores in (1, 2, 3):
        for delta_us in (0, 1000):
            table = list_schedule(tg, gnc.net, cores, delta_us)
            if not table.widened:
                assert idle_while_ready(table, tg) == []


@pytest.mark.parametrize("seed", range(100))
def test_random_tables_are_work_conserving_or_narrower_tables(seed):
    rng = random.Random(seed)
    net = random_network(rng)
    tg = build_task_graph(net, hyperperiod(net))
    delta_us = rng.choice((0, 500, 1000))
    for cores in range(1, 5):
        table = list_schedule(tg, net, cores, delta_us)
        if table.widened:
            narrower = table_from_order(tg, priority_order(tg, net), table.dispatch_cores, delta_us)
            assert narrower.verdict.feasible
            assert table == widen(narrower, cores)
        else:
            assert idle_while_ready(table, tg) == []


@pytest.mark.parametrize("seed", range(100))
def test_makespan_grows_with_engine_cost(seed):
    rng = random.Random(seed)
    net = random_network(rng)
    tg = build_task_graph(net, hyperperiod(net))
    for cores in range(1, 4):
        spans = [makespan(list_schedule(tg, net, cores, delta_us)) for delta_us in (0, 500, 1000)]
        assert spans == sorted(spans)


@pytest.mark.parametrize("seed", range(100))
def test_infeasible_verdict_has_a_deadline_miss(seed):
    rng = random.Random(seed)
    net = random_network(rng)
    tg = build_task_graph(net, hyperperiod(net))
    for cores in range(1, 4):
        table = list_schedule(tg, net, cores, rng.choice((0, 1000, 3000)))
        kinds = {violation.kind for violation in check_schedule(table, tg)}
        if table.verdict.feasible:
            assert kinds == set()
        else:
            assert "deadline" in kinds
