"""Identity-check records and their JSON / CSV serialisation.

File formats print every float with 17 significant digits, which round-trips
IEEE doubles exactly.  A float whose 17-digit form looks like an integer gets
a trailing ``.0`` so that parsing restores the type: inside ``inputs`` an
unquoted token is read as ``true``/``false``, then int, then float, then left
as a string.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, fields

CSV_HEADER = ("identity_id", "inputs", "residual", "tolerance", "passed", "notes")


@dataclass
class IdentityReport:
    """Outcome of one identity check; ``passed`` is ``residual <= tolerance``."""

    identity_id: str
    inputs: dict = field(default_factory=dict)
    residual: float = 0.0
    tolerance: float = 0.0
    passed: bool = field(default=None)
    notes: str = ""

    def __post_init__(self):
        ok = bool(self.residual <= self.tolerance)  # NaN residual fails
        if self.passed is None:
            self.passed = ok
        elif bool(self.passed) != ok:
            raise ValueError(
                f"{self.identity_id}: passed={self.passed} contradicts "
                f"residual={self.residual!r} vs tolerance={self.tolerance!r}"
            )


def format_float(v: float) -> str:
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    s = f"{v:.17g}"
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def _format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format_float(v)
    s = str(v)
    if any(ch in s for ch in ";=\n"):
        raise ValueError(f"input value {s!r} contains a reserved character")
    if not isinstance(_parse_value(s), str):
        raise ValueError(f"string input {s!r} would read back as a number or boolean")
    return s


def _parse_value(s: str):
    if s == "true":
        return True
    if s == "false":
        return False
    try:
        return int(s)
    except ValueError:
        pass
    try:
        return float(s)
    except ValueError:
        return s


def format_inputs(inputs: dict) -> str:
    """``key=value`` pairs joined by ``;`` in insertion order."""
    parts = []
    for k, v in inputs.items():
        if any(ch in str(k) for ch in ";=\n"):
            raise ValueError(f"input key {k!r} contains a reserved character")
        parts.append(f"{k}={_format_value(v)}")
    return ";".join(parts)


def parse_inputs(text: str) -> dict:
    if not text:
        return {}
    out = {}
    for part in text.split(";"):
        k, _, v = part.partition("=")
        out[k] = _parse_value(v)
    return out


def json_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            # JSON has no literal for these; match the json module's extension
            return {"nan": "NaN", "inf": "Infinity", "-inf": "-Infinity"}[format_float(v)]
        return format_float(v)
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {json_value(x)}" for k, x in v.items()) + "}"
    return json.dumps(str(v))


def csv_cell(s: str, force: bool = False) -> str:
    if force or any(ch in s for ch in ',"\n\r'):
        return '"' + s.replace('"', '""') + '"'
    return s


def emit_report(results, fmt: str, sink) -> None:
    """Write ``results`` to the text stream ``sink`` as ``json`` or ``csv``."""
    results = list(results)
    if fmt == "json":
        if not results:
            sink.write("[]\n")
            return
        rows = []
        for r in results:
            body = ", ".join(f"{json.dumps(f.name)}: {json_value(getattr(r, f.name))}" for f in fields(r))
            rows.append("  {" + body + "}")
        sink.write("[\n" + ",\n".join(rows) + "\n]\n")
    elif fmt == "csv":
        sink.write(",".join(CSV_HEADER) + "\n")
        for r in results:
            cells = [csv_cell(r.identity_id), csv_cell(format_inputs(r.inputs), force=True),
                     format_float(float(r.residual)), format_float(float(r.tolerance)),
                     "true" if r.passed else "false", csv_cell(r.notes)]
            sink.write(",".join(cells) + "\n")
    else:
        raise ValueError(f"unsupported report format {fmt!r}")


def emit_report_text(results, fmt: str) -> str:
    buf = io.StringIO()
    emit_report(results, fmt, buf)
    return buf.getvalue()


def parse_report(text: str, fmt: str) -> list[IdentityReport]:
    """Inverse of :func:`emit_report`."""
    if fmt == "json":
        return [IdentityReport(**row) for row in json.loads(text)]
    if fmt == "csv":
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if tuple(header or ()) != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header!r}")
        out = []
        for rid, inputs, res, tol, passed, notes in reader:
            out.append(IdentityReport(rid, parse_inputs(inputs), float(res), float(tol),
                                      passed == "true", notes))
        return out
    raise ValueError(f"unsupported report format {fmt!r}")
