"""Deterministic CSV / JSON writers with an embedded provenance record."""

from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np


def _plain(value):
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return value


def csv_cell(value) -> str:
    if isinstance(value, (float, np.floating)):
        if math.isinf(value) or math.isnan(value):
            return str(float(value))
        return f"{float(value):.12g}"
    return str(_plain(value))


def render_csv(provenance: dict, columns, rows) -> str:
    lines = [f"# {key}={json.dumps(_plain(val), sort_keys=True)}" for key, val in provenance.items()]
    lines.append(",".join(columns))
    lines.extend(",".join(csv_cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def render_json(provenance: dict, payload: dict) -> str:
    # json emits the shortest repr that round-trips, i.e. full double precision
    doc = {"provenance": _plain(provenance)}
    doc.update(_plain(payload))
    return json.dumps(doc, indent=1, sort_keys=False) + "\n"
