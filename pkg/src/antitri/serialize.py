"""Text and JSON encodings: rationals as ``"p/q"``, never decimals."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

from .exact import Matrix, Poly, to_fraction


def frac_text(q) -> str:
    return str(to_fraction(q))


def matrix_to_json(m: Matrix) -> dict:
    return {"n": m.n, "rows": [[str(v) for v in r] for r in m.rows]}


def matrix_from_json(data: dict) -> Matrix:
    m = Matrix(data["rows"])
    if "n" in data and data["n"] != m.n:
        raise ValueError(f"declared n={data['n']} but rows give n={m.n}")
    return m


def poly_to_json(p: Poly) -> dict:
    return {"coeffs": [str(c) for c in p.coeffs]}


def poly_from_json(data: dict) -> Poly:
    return Poly(data["coeffs"])


def parse_rational_list(text: str) -> list[Fraction]:
    """``"1, 1/2, 1/4"`` or a JSON list of strings/ints."""
    text = text.strip()
    if text.startswith("["):
        return [to_fraction(v) for v in json.loads(text)]
    return [to_fraction(v) for v in text.split(",") if v.strip()]


def load_json_arg(value: str) -> Any:
    """Inline JSON, ``-`` for stdin, or a path to a JSON file."""
    if value == "-":
        import sys

        return json.load(sys.stdin)
    stripped = value.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        return json.loads(value)
    return json.loads(Path(value).read_text())


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def matrix_to_csv(m: Matrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for r in m.rows:
        writer.writerow(str(v) for v in r)
    return buf.getvalue()


def records_to_csv(records: Iterable[dict]) -> str:
    records = list(records)
    buf = io.StringIO()
    if not records:
        return ""
    writer = csv.DictWriter(buf, fieldnames=list(records[0]), lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow({k: _cell(v) for k, v in rec.items()})
    return buf.getvalue()


def _cell(v):
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    if v is None:
        return ""
    return str(v)
