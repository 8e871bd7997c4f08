"""Reading and writing PMF files.

Accepted input: JSON ``{"pmf": [...]}`` (a bare JSON list also works) or a
single-column CSV of masses, optionally with a non-numeric header line.
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import TextIO

from .exceptions import MajlatError, ParseError
from .pmf import OrderedPmf, PmfLike, as_pmf, make_pmf, prefix_sums


def parse_pmf_text(text: str, strict: bool = False) -> OrderedPmf:
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty PMF file")
    if stripped[0] in "{[":
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        values = data.get("pmf") if isinstance(data, dict) else data
        if not isinstance(values, list):
            raise ParseError('JSON input must be {"pmf": [...]} or a list')
    else:
        values = []
        for lineno, row in enumerate(csv.reader(io.StringIO(stripped)), start=1):
            cells = [c.strip() for c in row if c.strip()]
            if not cells:
                continue
            if len(cells) != 1:
                raise ParseError(f"line {lineno}: expected one column, got {len(cells)}")
            try:
                values.append(float(cells[0]))
            except ValueError:
                if lineno == 1 and not values:
                    continue  # header
                raise ParseError(f"line {lineno}: not a number: {cells[0]!r}") from None
    try:
        return make_pmf([float(v) for v in values], strict=strict)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, MajlatError):
            raise ParseError(str(exc)) from None
        raise ParseError(f"non-numeric mass in {values!r}") from None


def read_pmf(path: str | Path, strict: bool = False) -> OrderedPmf:
    """Load a PMF file; rounded data is renormalized unless ``strict``."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_pmf_text(text, strict=strict)


def round_list(values, precision: int = 9) -> list[float]:
    return [round(float(v), precision) for v in values]


def pmf_to_json(p: PmfLike, precision: int = 9) -> str:
    return json.dumps({"pmf": round_list(as_pmf(p).masses, precision)})


def write_lorenz_csv(p: PmfLike, out: TextIO, precision: int = 9) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["t", "L"])
    for t, v in prefix_sums(p).points():
        writer.writerow([t, f"{round(v, precision):.{precision}g}"])


def emit_lorenz_csv(p: PmfLike, path: str | Path, precision: int = 9) -> Path:
    """Write the Lorenz breakpoints ``(k, P_k)``, origin included, as ``t,L`` CSV."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        write_lorenz_csv(p, fh, precision)
    return path
