from typing import Any, Dict, List, NamedTuple, Optional, Union

import svgwrite

from core.timebase import US_PER_MS, format_ms
from scheduler.models import ScheduleTable
from sim.trace import ExecutionTrace, RecordKind

DEFAULT_SETTINGS = {
    "px_per_ms": 10,
    "lane_height": 28,
    "palette": ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7"],
}

TRANSITION_FILL = "#9e9e9e"
LABEL_WIDTH = 110
TOP = 10
AXIS_HEIGHT = 30
_TICK_STEPS_MS = (1, 2, 5, 10, 20, 25, 50, 100, 200, 250, 500, 1000, 2000, 5000)


class _Bar(NamedTuple):
    core: int
    start_us: int
    end_us: int
    process: str
    label: str
    transition: bool


def _bars_from_table(table: ScheduleTable) -> List[_Bar]:
    return [
        _Bar(e.core, e.start_us, e.end_us, e.process, e.tag.value if e.is_transition else e.label, e.is_transition)
        for e in table.entries
    ]


def _bars_from_trace(trace: ExecutionTrace) -> List[_Bar]:
    starts = {}
    bars = []
    for record in trace.records:
        if record.kind == RecordKind.JOB_START:
            starts[record.job] = record
        elif record.kind == RecordKind.JOB_END and record.job in starts:
            start = starts.pop(record.job)
            if record.time_us > start.time_us:
                bars.append(_Bar(start.core or 0, start.time_us, record.time_us, record.process, record.job, False))
    return bars


def _tick_step_ms(span_ms: float) -> int:
    for step in _TICK_STEPS_MS:
        if span_ms / step <= 20:
            return step
    return _TICK_STEPS_MS[-1]


def emit_gantt(source: Union[ScheduleTable, ExecutionTrace], settings: Optional[Dict[str, Any]] = None) -> str:
    """
    Draw a table (or the job intervals of a trace) as an SVG Gantt chart

    One lane per core with core 0 on top, one rectangle per entry filled by
    process, and a time axis in ms. Equal inputs give byte-identical output.

    Args:
        source: ScheduleTable or ExecutionTrace
        settings: px_per_ms, lane_height and palette; missing keys use DEFAULT_SETTINGS

    Returns:
        SVG document text
    """
    options = dict(DEFAULT_SETTINGS)
    options.update(settings or {})
    px_per_ms = float(options["px_per_ms"])
    lane_height = int(options["lane_height"])
    palette = list(options["palette"]) or DEFAULT_SETTINGS["palette"]

    if isinstance(source, ScheduleTable):
        bars = _bars_from_table(source)
        lanes = source.cores if bars else 0
        span_us = max([source.horizon_us] + [bar.end_us for bar in bars])
        engine_lane = source.cores >= 2
    else:
        bars = _bars_from_trace(source)
        lanes = max((bar.core for bar in bars), default=-1) + 1
        span_us = max((bar.end_us for bar in bars), default=0)
        engine_lane = False

    processes = sorted({bar.process for bar in bars})
    colours = {process: palette[index % len(palette)] for index, process in enumerate(processes)}

    span_ms = span_us / US_PER_MS
    width = LABEL_WIDTH + max(span_ms, 1) * px_per_ms + 20
    axis_y = TOP + lanes * lane_height
    height = axis_y + AXIS_HEIGHT

    def x_of(micros: int) -> float:
        return round(LABEL_WIDTH + micros / US_PER_MS * px_per_ms, 3)

    drawing = svgwrite.Drawing(size=(f"{round(width, 3)}", f"{height}"), debug=False)
    drawing.add(drawing.rect(insert=(0, 0), size=("100%", "100%"), fill="white"))

    for core in range(lanes):
        y = TOP + core * lane_height
        drawing.add(drawing.rect(
            insert=(LABEL_WIDTH, y), size=(round(max(span_ms, 1) * px_per_ms, 3), lane_height),
            class_="lane", fill="#f4f4f4" if core % 2 == 0 else "#ffffff", stroke="#dddddd",
        ))
        name = f"core {core} (engine)" if engine_lane and core == 0 else f"core {core}"
        drawing.add(drawing.text(name, insert=(8, y + lane_height * 0.65), font_size=12, font_family="sans-serif"))

    for bar in sorted(bars, key=lambda b: (b.core, b.start_us, b.process, b.label)):
        y = TOP + bar.core * lane_height + 3
        fill = TRANSITION_FILL if bar.transition else colours[bar.process]
        group = drawing.g(class_=f"entry proc-{bar.process}" + (" transition" if bar.transition else ""))
        group.add(drawing.rect(
            insert=(x_of(bar.start_us), y), size=(round(x_of(bar.end_us) - x_of(bar.start_us), 3), lane_height - 6),
            fill=fill, stroke="#333333", stroke_width=0.5,
        ))
        group.set_desc(title=f"{bar.process} {bar.label}: {format_ms(bar.start_us)}-{format_ms(bar.end_us)} ms")
        drawing.add(group)

    drawing.add(drawing.line(start=(LABEL_WIDTH, axis_y), end=(x_of(span_us), axis_y), stroke="#000000", class_="axis"))
    step = _tick_step_ms(span_ms)
    tick = 0
    while tick <= span_ms:
        x = x_of(tick * US_PER_MS)
        drawing.add(drawing.line(start=(x, axis_y), end=(x, axis_y + 5), stroke="#000000"))
        drawing.add(drawing.text(f"{tick}", insert=(x - 4, axis_y + 18), font_size=10, font_family="sans-serif"))
        tick += step
    drawing.add(drawing.text("ms", insert=(x_of(span_us) + 4, axis_y + 18), font_size=10, font_family="sans-serif"))
    return drawing.tostring()
