import random

import networkx as nx
import pytest

from bundles.loader import list_examples, load_example
from conftest import random_network
from core.channels import channel_read, channel_write, new_channel_state
from core.errors import NetworkError, UnknownProcessError
from core.models import ChannelKind, ChannelSpec, NetworkModel, ProcessKind, ProcessSpec, WriteStatus
from core.network import fp_edges, fp_graph, fp_precedes, hyperperiod, validate_network
from core.timebase import format_ms, ms

BLACKBOARD = ChannelSpec(id="bb", kind=ChannelKind.BLACKBOARD, writer="a", reader="b")
MAILBOX_1 = ChannelSpec(id="mb", kind=ChannelKind.MAILBOX, writer="a", reader="b", length=1)
MAILBOX_2 = ChannelSpec(id="mb", kind=ChannelKind.MAILBOX, writer="a", reader="b", length=2)


def periodic(pid, period_ms, fpriority, wcet_ms=1, deadline_ms=None, behavior="identity"):
    return ProcessSpec(
        id=pid,
        period_us=ms(period_ms),
        deadline_us=ms(deadline_ms or period_ms),
        wcet_us=ms(wcet_ms) if wcet_ms is not None else None,
        fpriority=fpriority,
        behavior=behavior,
    )


def test_blackboard_first_write_is_accepted():
    state, status = channel_write(new_channel_state(BLACKBOARD), BLACKBOARD, 5)
    assert status == WriteStatus.ACCEPTED
    assert state.last == 5


def test_blackboard_overwrites_and_reads_repeatedly():
    state, _ = channel_write(new_channel_state(BLACKBOARD), BLACKBOARD, 5)
    state, _ = channel_write(state, BLACKBOARD, 6)
    first, state = channel_read(state, BLACKBOARD)
    second, state = channel_read(state, BLACKBOARD)
    assert (first, second) == (6, 6)


def test_full_mailbox_drops_the_write():
    state, _ = channel_write(new_channel_state(MAILBOX_1), MAILBOX_1, 7)
    after, status = channel_write(state, MAILBOX_1, 9)
    assert status == WriteStatus.DROPPED
    assert after.queue == (7,)


def test_mailbox_appends_below_capacity():
    state, _ = channel_write(new_channel_state(MAILBOX_2), MAILBOX_2, 7)
    state, status = channel_write(state, MAILBOX_2, 9)
    assert status == WriteStatus.ACCEPTED
    assert state.queue == (7, 9)


def test_mailbox_reads_in_fifo_order():
    state = new_channel_state(MAILBOX_2).model_copy(update={"queue": (7, 9)})
    value, state = channel_read(state, MAILBOX_2)
    assert value == 7
    assert state.queue == (9,)


def test_empty_reads_are_absent_and_do_not_block():
    empty = new_channel_state(MAILBOX_1)
    value, state = channel_read(empty, MAILBOX_1)
    assert value is None
    assert state == empty
    assert channel_read(new_channel_state(BLACKBOARD), BLACKBOARD)[0] is None


def test_state_of_another_channel_is_rejected():
    with pytest.raises(ValueError):
        channel_read(new_channel_state(BLACKBOARD), MAILBOX_1)


def test_bundled_gnc_is_valid(gnc):
    assert validate_network(gnc.net) == []


def test_shared_fpriority_names_both_processes():
    net = NetworkModel(processes=(periodic("a", 10, 1), periodic("b", 10, 1)))
    violations = validate_network(net)
    assert len(violations) == 1
    assert "a" in violations[0] and "b" in violations[0]


def test_uncoupled_sporadic_process_is_reported():
    net = NetworkModel(processes=(
        periodic("a", 10, 1),
        ProcessSpec(id="x", kind=ProcessKind.SPORADIC, period_us=10000, deadline_us=10000, wcet_us=1000, fpriority=2),
    ))
    violations = validate_network(net)
    assert violations == ["sporadic process x: not coupled to a periodic process"]


def test_structural_rules():
    net = NetworkModel(
        processes=(
            periodic("a", 10, 1, wcet_ms=12),
            periodic("b", 10, 2, behavior="teleport"),
        ),
        channels=(
            ChannelSpec(id="m", kind=ChannelKind.MAILBOX, writer="a", reader="ghost"),
            ChannelSpec(id="bb", kind=ChannelKind.BLACKBOARD, writer="a", reader="b", length=2),
        ),
        couplings={"a": "b"},
    )
    text = "\n".join(validate_network(net))
    assert "wcet 12 ms exceeds deadline 10 ms" in text
    assert "unknown behavior: teleport" in text
    assert "reader ghost is not a process" in text
    assert "mailbox needs a length" in text
    assert "blackboard cannot have a length" in text
    assert "a is not sporadic" in text


def test_fp_precedes_follows_priority_and_arrow(three_tasks, gnc_pipelined):
    assert fp_precedes(three_tasks.net, "split", "A")
    assert not fp_precedes(three_tasks.net, "A", "split")
    assert not fp_precedes(three_tasks.net, "A", "B")
    assert not fp_precedes(gnc_pipelined.net, "P1", "P4")
    assert not fp_precedes(gnc_pipelined.net, "P4", "P1")


def test_fp_precedes_rejects_reflexive_and_unknown(three_tasks):
    with pytest.raises(ValueError):
        fp_precedes(three_tasks.net, "A", "A")
    with pytest.raises(UnknownProcessError):
        fp_precedes(three_tasks.net, "A", "nope")


def test_fp_edges_of_gnc(gnc):
    assert fp_edges(gnc.net) == [("P1", "P2"), ("P1", "P4"), ("P2", "P3"), ("P2", "P4")]


def test_hyperperiod(gnc, three_tasks):
    assert hyperperiod(gnc.net) == 500000
    assert hyperperiod(three_tasks.net) == 25000
    net = NetworkModel(processes=(periodic("a", 2, 1), periodic("b", 3, 2)))
    assert hyperperiod(net) == 6000
    with pytest.raises(NetworkError):
        hyperperiod(NetworkModel())


@pytest.mark.parametrize("text, micros", [("25", 25000), ("0.5", 500), (12, 12000), ("1.001", 1001)])
def test_ms_conversion(text, micros):
    assert ms(text) == micros


def test_ms_rejects_sub_microsecond_and_garbage():
    with pytest.raises(ValueError):
        ms("0.0005")
    with pytest.raises(ValueError):
        ms("soon")


def test_format_ms():
    assert format_ms(31000) == "31"
    assert format_ms(1500) == "1.5"
    assert format_ms(1) == "0.001"


@pytest.mark.parametrize("value", ["inf", "-inf", "nan", "Infinity"])
def test_ms_rejects_non_finite_values(value):
    with pytest.raises(ValueError, match="not a finite duration"):
        ms(value)


def sporadic(pid, period_ms, fpriority):
    return ProcessSpec(
        id=pid, kind=ProcessKind.SPORADIC, period_us=ms(period_ms), deadline_us=ms(period_ms),
        wcet_us=1000, fpriority=fpriority,
    )


def test_sporadic_process_talks_to_its_coupled_process_only():
    net = NetworkModel(
        processes=(sporadic("X", 50, 3), periodic("S", 50, 2), periodic("Y", 50, 1)),
        channels=(
            ChannelSpec(id="x_s", kind=ChannelKind.MAILBOX, writer="X", reader="S", length=1),
            ChannelSpec(id="x_y", kind=ChannelKind.MAILBOX, writer="X", reader="Y", length=1),
        ),
        couplings={"X": "S"},
    )
    assert validate_network(net) == ["sporadic process X: channel x_y connects it to Y, not to S"]


def test_sporadic_process_has_a_single_channel_to_its_coupled_process():
    net = NetworkModel(
        processes=(sporadic("X", 50, 2), periodic("S", 50, 1)),
        channels=(
            ChannelSpec(id="cmd", kind=ChannelKind.MAILBOX, writer="X", reader="S", length=1),
            ChannelSpec(id="ack", kind=ChannelKind.BLACKBOARD, writer="S", reader="X"),
        ),
        couplings={"X": "S"},
    )
    assert validate_network(net) == ["coupling X -> S: 2 channels connect them (ack, cmd)"]


def candidate_networks():
    yield from (load_example(name).net for name in list_examples())
    for seed in range(100):
        yield random_network(random.Random(seed))


@pytest.mark.parametrize("net", list(candidate_networks()))
def test_functional_priority_is_a_strict_partial_order(net):
    assert validate_network(net) == []
    ids = net.process_ids()
    for p in ids:
        with pytest.raises(ValueError):
            fp_precedes(net, p, p)
    for p in ids:
        for q in ids:
            if p != q and fp_precedes(net, p, q):
                assert not fp_precedes(net, q, p)
                assert net.process(p).fpriority < net.process(q).fpriority
                for r in ids:
                    if r not in (p, q) and fp_precedes(net, q, r) and any(c.ordered for c in net.channels_between(p, r)):
                        assert fp_precedes(net, p, r)
    assert nx.is_directed_acyclic_graph(fp_graph(net))


@pytest.mark.parametrize("net", list(candidate_networks()))
def test_every_period_divides_the_hyperperiod(net):
    span = hyperperiod(net)
    assert all(span % spec.period_us == 0 for spec in net.processes)


@pytest.mark.parametrize("seed", range(100))
def test_mailbox_is_a_bounded_fifo(seed):
    rng = random.Random(seed)
    spec = ChannelSpec(id="mb", kind=ChannelKind.MAILBOX, writer="a", reader="b", length=rng.randint(1, 4))
    state = new_channel_state(spec)
    model = []
    for _ in range(30):
        if rng.random() < 0.5:
            value = rng.randint(0, 99)
            state, status = channel_write(state, spec, value)
            if len(model) < spec.capacity:
                model.append(value)
                assert status == WriteStatus.ACCEPTED
            else:
                assert status == WriteStatus.DROPPED
        else:
            value, state = channel_read(state, spec)
            assert value == (model.pop(0) if model else None)
        assert state.queue == tuple(model)
        assert len(state.queue) <= spec.capacity


@pytest.mark.parametrize("seed", range(100))
def test_blackboard_reads_are_idempotent(seed):
    rng = random.Random(seed)
    state = new_channel_state(BLACKBOARD)
    last = None
    for _ in range(20):
        if rng.random() < 0.5:
            last = rng.randint(0, 99)
            state, status = channel_write(state, BLACKBOARD, last)
            assert status == WriteStatus.ACCEPTED
        else:
            value, after = channel_read(state, BLACKBOARD)
            assert value == last
            assert after == state
