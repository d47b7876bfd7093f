"""The ``.psoset`` text format, DOT export and operation-table grids.

``.psoset`` is line oriented::

    # comment
    elements: 0 m 1
    bottom: 0
    top: 1
    rel: 0 < m, m < 1, 0 < 1

``rel:`` may repeat; ``bottom:`` / ``top:`` are optional and validated.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from .core import BoundedTrellis, Psoset, PsosetError, build_psoset
from .optable import OpTable

TABLE_FORMATS = ("csv", "markdown")


class PsosetSyntaxError(PsosetError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass
class PsosetDocument:
    elements: list[str] = field(default_factory=list)
    bottom: Optional[str] = None
    top: Optional[str] = None
    relations: list[tuple[str, str]] = field(default_factory=list)

    def build(self) -> Psoset:
        P = build_psoset(self.elements, self.relations)
        for key, name in (("bottom", self.bottom), ("top", self.top)):
            if name is None:
                continue
            i = P.index(name)
            if key == "bottom":
                bad = [y for y in range(P.n) if not P.relation[i][y]]
            else:
                bad = [y for y in range(P.n) if not P.relation[y][i]]
            if bad:
                side = "below" if key == "bottom" else "above"
                raise PsosetError(
                    f"declared {key} {name!r} is not {side} all elements "
                    f"(e.g. {P.labels[bad[0]]!r})"
                )
        return P


def parse_document(text: str) -> PsosetDocument:
    doc = PsosetDocument()
    seen_elements = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        key, sep, rest = line.strip().partition(":")
        if not sep:
            raise PsosetSyntaxError("expected 'key: value'", lineno, indent + 1)
        key = key.strip()
        after_colon = indent + len(key) + 2
        value_col = after_colon + len(rest) - len(rest.lstrip())
        if key == "elements":
            if seen_elements:
                raise PsosetSyntaxError("duplicate 'elements:' line", lineno, indent + 1)
            seen_elements = True
            doc.elements = rest.split()
            if not doc.elements:
                raise PsosetSyntaxError("no elements listed", lineno, value_col)
        elif key in ("bottom", "top"):
            names = rest.split()
            if len(names) != 1:
                raise PsosetSyntaxError(f"'{key}:' takes exactly one label", lineno, value_col)
            setattr(doc, key, names[0])
        elif key == "rel":
            offset = after_colon
            for chunk in rest.split(","):
                col = offset + (len(chunk) - len(chunk.lstrip()))
                offset += len(chunk) + 1
                if not chunk.strip():
                    continue
                left, lt, right = chunk.partition("<")
                x, y = left.split(), right.split()
                if not lt or len(x) != 1 or len(y) != 1:
                    raise PsosetSyntaxError(f"expected 'x < y', got {chunk.strip()!r}", lineno, col)
                doc.relations.append((x[0], y[0]))
        else:
            raise PsosetSyntaxError(f"unknown key {key!r}", lineno, indent + 1)
    if not seen_elements:
        raise PsosetSyntaxError("missing 'elements:' line", 1, 1)
    return doc


def parse_psoset(text: str) -> Psoset:
    return parse_document(text).build()


def read_psoset(path) -> Psoset:
    return parse_psoset(Path(path).read_text())


def serialize_psoset(P: Psoset, per_line: int = 8) -> str:
    lines = ["elements: " + " ".join(P.labels)]
    if isinstance(P, BoundedTrellis):
        lines.append(f"bottom: {P.labels[P.bottom]}")
        lines.append(f"top: {P.labels[P.top]}")
    pairs = [f"{P.labels[i]} < {P.labels[j]}" for i, j in P.strict_pairs()]
    for k in range(0, len(pairs), per_line):
        lines.append("rel: " + ", ".join(pairs[k : k + per_line]))
    return "\n".join(lines) + "\n"


def bundled_text(name: str) -> str:
    """Text of a fixture shipped in ``psoset/data``."""
    return resources.files("psoset").joinpath("data").joinpath(name).read_text()


def load_bundled(name: str) -> Psoset:
    if not name.endswith(".psoset"):
        name += ".psoset"
    return parse_psoset(bundled_text(name))


# -- DOT ----------------------------------------------------------------------


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(P: Psoset, rule: str = "step", name: str = "psoset") -> str:
    """Every strict pair as a solid arc, every dashed pair as a dashed line.

    No transitive reduction is applied: in a non-transitive relation an arc
    implied by a chain may be genuinely absent.
    """
    out = [f"digraph {name} {{", "  rankdir=BT;"]
    out += [f"  {_quote(lab)};" for lab in P.labels]
    for i, j in P.strict_pairs():
        out.append(f"  {_quote(P.labels[i])} -> {_quote(P.labels[j])};")
    for i, j in P.dashed_pairs(rule):
        out.append(f"  {_quote(P.labels[i])} -> {_quote(P.labels[j])} [style=dashed, dir=none];")
    out.append("}")
    return "\n".join(out) + "\n"


# -- operation tables -----------------------------------------------------------


def export_table(V: OpTable, format: str = "csv", corner: str = "") -> str:
    labels = V.universe.labels
    head = [labels[x] for x in V.elements]
    rows = [[labels[x]] + [labels[v] for v in row] for x, row in zip(V.elements, V.cells)]
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([corner] + head)
        writer.writerows(rows)
        return buf.getvalue()
    if format == "markdown":
        width = len(head) + 1
        lines = ["| " + " | ".join([corner or "V"] + head) + " |", "|" + "---|" * width]
        lines += ["| " + " | ".join(r) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown table format {format!r}; expected one of {TABLE_FORMATS}")


def _grid(text: str, format: str) -> list[list[str]]:
    if format == "csv":
        return [row for row in csv.reader(io.StringIO(text)) if row]
    if format == "markdown":
        grid = []
        for line in text.splitlines():
            line = line.strip()
            if not line.startswith("|"):
                continue
            cells = [c.strip() for c in line.strip("|").split("|")]
            if all(set(c) <= set("-: ") for c in cells):
                continue
            grid.append(cells)
        return grid
    raise ValueError(f"unknown table format {format!r}; expected one of {TABLE_FORMATS}")


def parse_table(text: str, P: BoundedTrellis, format: str = "csv") -> OpTable:
    """Read a grid in :func:`export_table` shape back into an :class:`OpTable`.

    The header row fixes the sub-universe; rows must list it in the same order.
    """
    grid = _grid(text, format)
    if not grid:
        raise PsosetError("empty table")
    head = grid[0][1:]
    elements = P.indices(head)
    if len(grid) - 1 != len(head):
        raise PsosetError(f"expected {len(head)} rows, found {len(grid) - 1}")
    cells = []
    for k, row in enumerate(grid[1:], start=2):
        if len(row) != len(head) + 1:
            raise PsosetError(f"row {k}: expected {len(head) + 1} cells, found {len(row)}")
        if P.index(row[0]) != elements[k - 2]:
            raise PsosetError(f"row {k}: header {row[0]!r} out of order")
        cells.append(P.indices(row[1:]))
    return OpTable(P, tuple(elements), tuple(cells))


def read_table(path, P: BoundedTrellis) -> OpTable:
    path = Path(path)
    fmt = "markdown" if path.suffix.lower() in (".md", ".markdown") else "csv"
    return parse_table(path.read_text(), P, fmt)
