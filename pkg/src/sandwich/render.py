"""Egg-box diagrams as plain text, Graphviz DOT or JSON.

A layout lists the D-classes bottom-up in a linear extension of the
D-order.  Within a D-class the rows are R-classes (sorted by kernel) and
the columns are L-classes (sorted by image); each cell records the size of
its H-class and whether it is a group.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from html import escape
from math import factorial
from typing import Sequence

import numpy as np

from .core import Transformation, kernel_key
from .engine import GreenData, SemigroupTable, green_classes

FORMATS = ("text", "dot", "json")
SEMIGROUPS = ("variant", "reg", "exa", "tn")
_CASE_ORDER = {"singleton": 0, "R": 1, "L": 2, "regular": 3}


@dataclass
class DClassLayout:
    rank: int
    case: str
    rows: int
    cols: int
    hsize: int | list[list[int]]
    groups: list[list[bool]]

    def cell_size(self, i: int, j: int) -> int:
        return self.hsize if isinstance(self.hsize, int) else self.hsize[i][j]

    @property
    def size(self) -> int:
        return sum(self.cell_size(i, j) for i in range(self.rows) for j in range(self.cols))


@dataclass
class EggBoxLayout:
    n: int
    sandwich: list[int] | None
    semigroup: str
    dclasses: list[DClassLayout]
    dorder: list[list[int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "EggBoxLayout":
        dcl = [DClassLayout(**x) for x in d["dclasses"]]
        return cls(d["n"], d.get("sandwich"), d["semigroup"], dcl, [list(e) for e in d.get("dorder", [])])

    @classmethod
    def from_json(cls, text: str) -> "EggBoxLayout":
        return cls.from_dict(json.loads(text))


def _image_key(f) -> tuple:
    return tuple(sorted(set(f)))


def build_layout(S: SemigroupTable, green: GreenData | None = None, sandwich: Transformation | None = None,
                 semigroup: str = "tn", case_of=None) -> EggBoxLayout:
    """Lay out the egg-box of S.

    For transformation semigroups rows and columns are sorted by kernel and
    image set and ``rank`` is the rank of the maps.  ``case_of`` maps an
    element to its case tag; without it the tag is read off the shape.
    """
    if len(S) == 0:
        raise ValueError("cannot lay out an empty semigroup")
    green = green_classes(S) if green is None else green
    elems = S.elements
    is_tf = all(isinstance(e, Transformation) for e in elems)
    k = green.n_d
    members: list[list[int]] = [[] for _ in range(k)]
    for x, d in enumerate(green.d_ids.tolist()):
        members[d].append(x)
    leq = green.d_leq
    downset = leq.sum(axis=0)  # number of classes below or equal

    def rank_of(d):
        x = members[d][0]
        return len(set(elems[x])) if is_tf else int(downset[d])

    def row_key(x):
        return (kernel_key(elems[x]), x) if is_tf else (int(green.r_ids[x]),)

    def col_key(x):
        return (_image_key(elems[x]), x) if is_tf else (int(green.l_ids[x]),)

    built = []
    for d in range(k):
        xs = members[d]
        regular = bool(green.idempotent[xs].any())
        rows: dict[int, tuple] = {}
        cols: dict[int, tuple] = {}
        for x in xs:
            rk, ck = int(green.r_ids[x]), int(green.l_ids[x])
            rows[rk] = min(rows.get(rk, row_key(x)), row_key(x))
            cols[ck] = min(cols.get(ck, col_key(x)), col_key(x))
        row_ids = sorted(rows, key=rows.get)
        col_ids = sorted(cols, key=cols.get)
        rpos = {r: i for i, r in enumerate(row_ids)}
        cpos = {c: j for j, c in enumerate(col_ids)}
        sizes = [[0] * len(col_ids) for _ in row_ids]
        groups = [[False] * len(col_ids) for _ in row_ids]
        for x in xs:
            i, j = rpos[int(green.r_ids[x])], cpos[int(green.l_ids[x])]
            sizes[i][j] += 1
            groups[i][j] = groups[i][j] or bool(green.idempotent[x])
        flat = {v for row in sizes for v in row}
        hsize: int | list[list[int]] = flat.pop() if len(flat) == 1 else sizes
        if case_of is not None:
            case = case_of(elems[xs[0]])
        elif regular:
            case = "regular"
        elif len(xs) == 1:
            case = "singleton"
        elif len(row_ids) == 1:
            case = "R"
        elif len(col_ids) == 1:
            case = "L"
        else:
            case = "singleton"
        key = (rank_of(d), int(downset[d]), _CASE_ORDER[case], rows[row_ids[0]], cols[col_ids[0]])
        built.append((key, d, DClassLayout(rank_of(d), case, len(row_ids), len(col_ids), hsize, groups)))
    built.sort(key=lambda t: t[0])
    order = [d for _, d, _ in built]
    pos = {d: i for i, d in enumerate(order)}
    edges = sorted([pos[lo], pos[hi]] for lo, hi in green.d_covers())
    n = len(elems[0]) if is_tf else len(S)
    sw = None if sandwich is None else [v + 1 for v in sandwich]
    return EggBoxLayout(n, sw, semigroup, [t[2] for t in built], edges)


def _cell_label(dc: DClassLayout, i: int, j: int) -> str:
    size = dc.cell_size(i, j)
    if not dc.groups[i][j]:
        return "."
    # H-classes of T_n and its relatives are symmetric groups S_m; label by m
    return str(dc.rank) if size == factorial(dc.rank) else f"#{size}"


def render_text(layout: EggBoxLayout) -> str:
    out = []
    head = f"{layout.semigroup} n={layout.n}"
    if layout.sandwich is not None:
        head += " a=[" + ",".join(map(str, layout.sandwich)) + "]"
    out.append(head)
    out.append(f"{len(layout.dclasses)} D-classes, {sum(d.size for d in layout.dclasses)} elements")
    for idx in range(len(layout.dclasses) - 1, -1, -1):
        dc = layout.dclasses[idx]
        above = [hi for lo, hi in layout.dorder if lo == idx]
        hs = dc.hsize if isinstance(dc.hsize, int) else "mixed"
        out.append("")
        out.append(f"D{idx} rank={dc.rank} case={dc.case} {dc.rows}x{dc.cols} H={hs}"
                   + (f" below={above}" if above else ""))
        labels = [[_cell_label(dc, i, j) for j in range(dc.cols)] for i in range(dc.rows)]
        w = max(len(s) for row in labels for s in row)
        sep = "+" + "+".join("-" * (w + 2) for _ in range(dc.cols)) + "+"
        out.append(sep)
        for row in labels:
            out.append("|" + "|".join(f" {s:^{w}} " for s in row) + "|")
            out.append(sep)
    return "\n".join(out) + "\n"


def render_dot(layout: EggBoxLayout) -> str:
    lines = ["digraph eggbox {", "  rankdir=BT;", "  node [shape=plaintext];"]
    for idx, dc in enumerate(layout.dclasses):
        cells = []
        for i in range(dc.rows):
            tds = []
            for j in range(dc.cols):
                text = escape(_cell_label(dc, i, j) if dc.groups[i][j] else " ")
                fill = ' BGCOLOR="gray80"' if dc.groups[i][j] else ""
                tds.append(f"<TD{fill}>{text}</TD>")
            cells.append("<TR>" + "".join(tds) + "</TR>")
        table = '<TABLE BORDER="2" CELLBORDER="1" CELLSPACING="0">' + "".join(cells) + "</TABLE>"
        lines.append(f'  d{idx} [label=<{table}>, tooltip="rank {dc.rank} {dc.case}"];')
    for lo, hi in layout.dorder:
        lines.append(f"  d{lo} -> d{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_json(layout: EggBoxLayout) -> str:
    return json.dumps(layout.to_dict(), sort_keys=False, separators=(",", ":"))


def render(obj, format: str = "text", S: SemigroupTable | None = None, **kw) -> str:
    """Render an EggBoxLayout, or GreenData together with its table ``S``."""
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    if isinstance(obj, GreenData):
        if S is None:
            raise ValueError("rendering GreenData needs the semigroup table")
        obj = build_layout(S, obj, **kw)
    elif isinstance(obj, SemigroupTable):
        obj = build_layout(obj, **kw)
    if not isinstance(obj, EggBoxLayout):
        raise TypeError(f"cannot render {type(obj).__name__}")
    if not obj.dclasses:
        raise ValueError("nothing to render")
    return {"text": render_text, "dot": render_dot, "json": render_json}[format](obj)


def check_regular_cover(layout: EggBoxLayout) -> bool:
    """Every row and column of a regular D-class holds a group cell."""
    for dc in layout.dclasses:
        if dc.case != "regular":
            continue
        g = np.array(dc.groups, dtype=bool)
        if not (g.any(axis=1).all() and g.any(axis=0).all()):
            return False
    return True


def grid_shapes(layout: EggBoxLayout) -> list[tuple[int, int, int | list]]:
    return [(dc.rows, dc.cols, dc.hsize) for dc in layout.dclasses]


def layout_for(elements: Sequence[Transformation], sandwich: Transformation | None, semigroup: str,
               case_of=None) -> EggBoxLayout:
    from .engine import transformation_table

    S = transformation_table(elements, sandwich)
    return build_layout(S, sandwich=sandwich, semigroup=semigroup, case_of=case_of)
