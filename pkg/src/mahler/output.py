"""JSON/CSV envelopes for CLI output.

Exact numbers are written as strings ("p/q" or "p"), cyclotomic values as a
level plus coefficient list, and floating results as decimal strings next to
a ``bits`` field.  Nothing exact is ever written as a JSON float.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from typing import Any, TextIO

import mpmath

from .cyclotomic import CyclotomicElement

LIST_SEP = ";"


def exact_str(x: Any) -> str:
    return str(Fraction(x))


def cyclotomic_fields(x: Any) -> dict[str, Any]:
    """``{"level": m, "coeffs": [...]}``; rationals are level 0."""
    if isinstance(x, CyclotomicElement):
        return {"level": x.level, "coeffs": [exact_str(c) for c in x.coeffs]}
    return {"level": 0, "coeffs": [exact_str(x)]}


def decimal_str(x: Any, bits: int) -> str:
    digits = max(15, int(bits * math.log10(2)))
    return mpmath.nstr(x, digits)


def envelope(command: str, params: dict[str, Any], rows: list[dict[str, Any]]) -> dict[str, Any]:
    return {"command": command, "params": params, "rows": rows}


def _cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, (list, tuple)):
        return LIST_SEP.join(_cell(x) for x in v)
    return str(v)


def write(env: dict[str, Any], fmt: str, out: TextIO) -> None:
    if fmt == "json":
        json.dump(env, out, indent=2)
        out.write("\n")
        return
    out.write(f"# command: {env['command']}\n")
    out.write(f"# params: {json.dumps(env['params'])}\n")
    rows = env["rows"]
    if not rows:
        return
    fields: list[str] = []
    for row in rows:
        for k in row:
            if k not in fields:
                fields.append(k)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(fields)
    for row in rows:
        w.writerow([_cell(row.get(k)) for k in fields])


def read(text: str, fmt: str) -> dict[str, Any]:
    """Parse output produced by :func:`write` (CSV cells come back as strings)."""
    if fmt == "json":
        return json.loads(text)
    command = ""
    params: dict[str, Any] = {}
    body: list[str] = []
    for line in text.splitlines():
        if line.startswith("# command: "):
            command = line[len("# command: "):]
        elif line.startswith("# params: "):
            params = json.loads(line[len("# params: "):])
        elif line:
            body.append(line)
    rows = list(csv.DictReader(io.StringIO("\n".join(body))))
    return envelope(command, params, rows)


def parse_list(cell: str) -> list[str]:
    return cell.split(LIST_SEP) if cell else []
