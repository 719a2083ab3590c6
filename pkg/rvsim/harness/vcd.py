"""
Value Change Dump output for bench and core traces.

Rendering is delegated to pyvcd; this module only validates events against
the declared signals and feeds them in time order.
"""

import io
import logging
import re
from pathlib import Path
from typing import Iterable, Mapping

from vcd import VCDWriter

from ..core.errors import UndeclaredSignal, WidthMismatch
from .base import Trace, TraceEvent

logger = logging.getLogger(__name__)

TIMESCALE = "1ns"
# фиксированные поля заголовка: вывод побайтно одинаков между запусками
VCD_DATE = "rvsim"
VCD_VERSION = "rvsim"


def _validate(events: Iterable[TraceEvent], signals: Mapping[str, int]) -> list[TraceEvent]:
    checked = []
    for e in events:
        width = signals.get(e.signal)
        if width is None:
            raise UndeclaredSignal(f"signal {e.signal} is not declared")
        if e.value < 0 or e.value >> width:
            raise WidthMismatch(f"value 0x{e.value:x} at {e.time}ns does not fit {e.signal}[{width}]")
        checked.append(e)
    return sorted(checked, key=lambda e: e.time)


def write_vcd(events: Iterable[TraceEvent], signals: Mapping[str, int], scope: str = "bench") -> bytes:
    """
    Render events as VCD text.

    Values at time 0 become the `$dumpvars` initial values; signals without
    one start as `x`. Repeated values are not re-emitted.

    Raises:
        UndeclaredSignal: event on a signal missing from `signals`
        WidthMismatch: value wider than its signal
    """
    ordered = _validate(events, signals)
    initial: dict[str, int] = {}
    for e in ordered:
        if e.time == 0:
            initial[e.signal] = e.value

    out = io.StringIO()
    with VCDWriter(out, timescale=TIMESCALE, date=VCD_DATE, version=VCD_VERSION) as writer:
        variables = {}
        last: dict[str, int | None] = {}
        for name, width in signals.items():
            if name in initial:
                variables[name] = writer.register_var(scope, name, "wire", size=width, init=initial[name])
            else:
                variables[name] = writer.register_var(scope, name, "wire", size=width)
            last[name] = initial.get(name)

        for e in ordered:
            if e.time == 0 or last[e.signal] == e.value:
                continue
            last[e.signal] = e.value
            writer.change(variables[e.signal], e.time, e.value)

    # pyvcd печатает единицу через пробел ("1 ns")
    text = re.sub(r"^\$timescale .* \$end$", f"$timescale {TIMESCALE} $end", out.getvalue(), count=1, flags=re.M)
    return text.encode("ascii")


def write_trace(trace: Trace, path: str | Path, scope: str = "bench") -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    events = trace.events
    p.write_bytes(write_vcd(events, trace.signals, scope=scope))
    logger.info(f"Wrote {len(events)} trace events to {p}")
    return p
