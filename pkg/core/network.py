import math
from collections import defaultdict
from typing import List, Tuple

import networkx as nx

from core.behavior_ids import parse_behavior_id
from core.errors import NetworkError
from core.models import ChannelKind, NetworkModel
from core.timebase import format_ms
from utils.logger import get_logger

logger = get_logger("network")


def validate_network(net: NetworkModel) -> List[str]:
    """
    Check every structural rule of an FPPN

    Args:
        net: Network to check

    Returns:
        One description per violation, ordered by the offending entity id.
        An empty list means the network is valid.
    """
    found: List[Tuple[str, str]] = []

    counts = defaultdict(int)
    for spec in net.processes:
        counts[spec.id] += 1
    for pid, count in counts.items():
        if count > 1:
            found.append((pid, f"process {pid}: defined {count} times"))

    channel_counts = defaultdict(int)
    for channel in net.channels:
        channel_counts[channel.id] += 1
    for cid, count in channel_counts.items():
        if count > 1:
            found.append((cid, f"channel {cid}: defined {count} times"))

    by_priority = defaultdict(list)
    for spec in net.processes:
        by_priority[spec.fpriority].append(spec.id)
        if spec.wcet_us is not None and spec.wcet_us > spec.deadline_us:
            found.append((spec.id, f"process {spec.id}: wcet {format_ms(spec.wcet_us)} ms exceeds deadline {format_ms(spec.deadline_us)} ms"))
        try:
            parse_behavior_id(spec.behavior)
        except ValueError as e:
            found.append((spec.id, f"process {spec.id}: {e}"))
    for priority, owners in by_priority.items():
        if len(owners) > 1:
            names = ", ".join(sorted(owners))
            found.append((sorted(owners)[0], f"fpriority {priority} shared by {names}"))

    for channel in net.channels:
        for role, pid in (("writer", channel.writer), ("reader", channel.reader)):
            if not net.has_process(pid):
                found.append((channel.id, f"channel {channel.id}: {role} {pid} is not a process"))
        if channel.writer == channel.reader:
            found.append((channel.id, f"channel {channel.id}: writer and reader are both {channel.writer}"))
        if channel.kind == ChannelKind.MAILBOX and channel.length is None:
            found.append((channel.id, f"channel {channel.id}: mailbox needs a length"))
        if channel.kind == ChannelKind.BLACKBOARD and channel.length is not None:
            found.append((channel.id, f"channel {channel.id}: blackboard cannot have a length"))

    for sporadic, periodic in net.couplings.items():
        if not net.has_process(sporadic):
            found.append((sporadic, f"coupling {sporadic} -> {periodic}: {sporadic} is not a process"))
            continue
        if not net.process(sporadic).is_sporadic:
            found.append((sporadic, f"coupling {sporadic} -> {periodic}: {sporadic} is not sporadic"))
        if not net.has_process(periodic):
            found.append((sporadic, f"coupling {sporadic} -> {periodic}: {periodic} is not a process"))
            continue
        if net.process(periodic).is_sporadic:
            found.append((sporadic, f"coupling {sporadic} -> {periodic}: {periodic} is not periodic"))
        links = net.channels_between(sporadic, periodic)
        if not links:
            found.append((sporadic, f"coupling {sporadic} -> {periodic}: no channel connects them"))
        elif len(links) > 1:
            names = ", ".join(sorted(channel.id for channel in links))
            found.append((sporadic, f"coupling {sporadic} -> {periodic}: {len(links)} channels connect them ({names})"))
        for channel in net.channels:
            if sporadic not in (channel.writer, channel.reader) or channel.writer == channel.reader:
                continue
            other = channel.reader if channel.writer == sporadic else channel.writer
            if other != periodic:
                found.append((sporadic, f"sporadic process {sporadic}: channel {channel.id} connects it to {other}, not to {periodic}"))

    for pid in net.sporadic_ids():
        if pid not in net.couplings:
            found.append((pid, f"sporadic process {pid}: not coupled to a periodic process"))

    found.sort()
    if found:
        logger.debug(f"Network has {len(found)} violation(s)")
    return [message for _, message in found]


def fp_precedes(net: NetworkModel, p: str, q: str) -> bool:
    """
    Functional priority between two processes

    True iff p has the smaller Fpriority index and some channel between p and q
    carries a priority arrow (ordered = true).

    Raises:
        UnknownProcessError: If p or q is not a process
        ValueError: If p == q
    """
    if p == q:
        raise ValueError(f"functional priority is irreflexive: {p} compared with itself")
    first = net.process(p)
    second = net.process(q)
    if first.fpriority >= second.fpriority:
        return False
    return any(channel.ordered for channel in net.channels_between(p, q))


def fp_edges(net: NetworkModel) -> List[Tuple[str, str]]:
    """All (p, q) pairs with fp_precedes(p, q), sorted"""
    edges = set()
    for channel in net.channels:
        if not channel.ordered or channel.writer == channel.reader:
            continue
        if not (net.has_process(channel.writer) and net.has_process(channel.reader)):
            continue
        for p, q in ((channel.writer, channel.reader), (channel.reader, channel.writer)):
            if fp_precedes(net, p, q):
                edges.add((p, q))
    return sorted(edges)


def fp_graph(net: NetworkModel) -> nx.DiGraph:
    """The functional priority relation as a DAG over process ids"""
    graph = nx.DiGraph()
    graph.add_nodes_from(net.process_ids())
    graph.add_edges_from(fp_edges(net))
    return graph


def hyperperiod(net: NetworkModel) -> int:
    """
    Least common multiple of all periods (minimal inter-arrival times for sporadics)

    Returns:
        Hyperperiod in microseconds

    Raises:
        NetworkError: If the network has no process
    """
    if not net.processes:
        raise NetworkError("hyperperiod of an empty network is undefined")
    return math.lcm(*(spec.period_us for spec in net.processes))
