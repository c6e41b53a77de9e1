import random
from typing import List, Sequence

import pytest

from bundles.loader import load_example
from core.models import ChannelKind, ChannelSpec, NetworkModel, ProcessKind, ProcessSpec
from sim.events import Event, EventTrace

BEHAVIORS = ("identity", "square", "sum", "sink", "constant(2)", "source(1,2,3)")


def random_network(
    rng: random.Random,
    max_processes: int = 6,
    periods_ms: Sequence[int] = (20, 40),
    with_sporadic: bool = True,
) -> NetworkModel:
    """A valid network with processes p0.. and channels c0.., at most max_processes processes"""
    sporadic = with_sporadic and rng.random() < 0.5
    count = rng.randint(1, max_processes - 1 if sporadic else max_processes)
    priorities = rng.sample(range(1, max_processes + 1), count + (1 if sporadic else 0))

    processes: List[ProcessSpec] = []
    for index in range(count):
        period_us = rng.choice(periods_ms) * 1000
        processes.append(ProcessSpec(
            id=f"p{index}",
            period_us=period_us,
            deadline_us=period_us,
            wcet_us=rng.randint(1, 3) * 1000,
            fpriority=priorities[index],
            behavior=rng.choice(BEHAVIORS),
        ))

    channels: List[ChannelSpec] = []
    for first in range(count):
        for second in range(first + 1, count):
            if rng.random() >= 0.4:
                continue
            writer, reader = (first, second) if rng.random() < 0.5 else (second, first)
            kind = rng.choice((ChannelKind.MAILBOX, ChannelKind.BLACKBOARD))
            channels.append(ChannelSpec(
                id=f"c{len(channels)}",
                kind=kind,
                writer=f"p{writer}",
                reader=f"p{reader}",
                data_size=4,
                length=rng.randint(1, 2) if kind == ChannelKind.MAILBOX else None,
                ordered=rng.random() < 0.8,
            ))

    couplings = {}
    if sporadic:
        target = processes[rng.randrange(count)]
        pid = f"p{count}"
        processes.append(ProcessSpec(
            id=pid,
            kind=ProcessKind.SPORADIC,
            period_us=target.period_us,
            deadline_us=target.period_us,
            wcet_us=1000,
            fpriority=priorities[count],
            behavior="identity",
        ))
        channels.append(ChannelSpec(
            id=f"c{len(channels)}", kind=ChannelKind.MAILBOX, writer=pid, reader=target.id, data_size=4, length=1,
        ))
        couplings[pid] = target.id

    return NetworkModel(processes=tuple(processes), channels=tuple(channels), couplings=couplings)


def random_events(rng: random.Random, net: NetworkModel, horizon_us: int) -> EventTrace:
    """Events for every sporadic process, spaced at least one minimal inter-arrival time apart"""
    events = []
    for pid in net.sporadic_ids():
        gap = net.process(pid).period_us
        time_us = rng.randint(0, gap // 2)
        while time_us < horizon_us:
            events.append(Event(time_us=time_us, process=pid, payload=rng.randint(1, 9)))
            time_us += gap + rng.randint(0, gap)
    events.sort(key=lambda e: (e.time_us, e.process))
    return EventTrace(events=tuple(events))


@pytest.fixture
def three_tasks():
    return load_example("three_tasks")


@pytest.fixture
def gnc():
    return load_example("gnc")


@pytest.fixture
def gnc_pipelined():
    return load_example("gnc_pipelined")


@pytest.fixture
def fig1():
    return load_example("fig1")
