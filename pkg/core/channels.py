"""Non-blocking channel semantics: bounded FIFO mailboxes and last-value blackboards."""

from typing import Optional, Tuple

from core.models import ChannelKind, ChannelSpec, ChannelState, Value, WriteStatus


def new_channel_state(spec: ChannelSpec) -> ChannelState:
    """Empty state for a channel: no queued items, no blackboard value"""
    return ChannelState(channel_id=spec.id, kind=spec.kind)


def _check_match(state: ChannelState, spec: ChannelSpec) -> None:
    if state.channel_id != spec.id or state.kind != spec.kind:
        raise ValueError(f"state of {state.channel_id} ({state.kind.value}) does not match channel {spec.id}")


def channel_write(state: ChannelState, spec: ChannelSpec, value: Value) -> Tuple[ChannelState, WriteStatus]:
    """
    Write one value without blocking

    Args:
        state: Current channel state
        spec: Channel the state belongs to
        value: Value to write

    Returns:
        (new state, status). A full mailbox keeps its contents and reports DROPPED.
    """
    _check_match(state, spec)
    if spec.kind == ChannelKind.BLACKBOARD:
        return state.model_copy(update={"last": value}), WriteStatus.ACCEPTED

    if len(state.queue) >= spec.capacity:
        return state, WriteStatus.DROPPED
    return state.model_copy(update={"queue": state.queue + (value,)}), WriteStatus.ACCEPTED


def channel_read(state: ChannelState, spec: ChannelSpec) -> Tuple[Optional[Value], ChannelState]:
    """
    Read one value without blocking

    Args:
        state: Current channel state
        spec: Channel the state belongs to

    Returns:
        (value or None when nothing is available, new state). Blackboard reads
        leave the state untouched; mailbox reads pop the head.
    """
    _check_match(state, spec)
    if spec.kind == ChannelKind.BLACKBOARD:
        return state.last, state

    if not state.queue:
        return None, state
    return state.queue[0], state.model_copy(update={"queue": state.queue[1:]})
