"""Text serialization of machines and symbol tables, plus DOT output.

Arc lines are ``src<TAB>dst<TAB>isym<TAB>osym[<TAB>weight]`` (weight
omitted when it is 0.0); tabs, newlines and backslashes inside symbols
are backslash-escaped. Final lines are ``state<TAB>weight``. The start
state is always written as state 0.
"""

from pathlib import Path as FilePath

from . import semiring
from .fst import Fst
from .symbols import SymbolTable, _escape, _unescape


def _start_first_order(fst):
    order = [fst.start] + [s for s in fst.states() if s != fst.start]
    return {s: i for i, s in enumerate(order)}


def to_text(fst):
    if fst.start is None:
        return ""
    table = fst.table
    remap = _start_first_order(fst)
    lines = []
    for s in sorted(fst.states(), key=remap.get):
        for arc in fst.arcs(s):
            fields = [str(remap[s]), str(remap[arc.nextstate]),
                      _escape(table.lookup(arc.ilabel)), _escape(table.lookup(arc.olabel))]
            if arc.weight != semiring.ONE:
                fields.append(semiring.format_weight(arc.weight))
            lines.append("\t".join(fields))
    for s in sorted(fst.finals, key=remap.get):
        lines.append(f"{remap[s]}\t{semiring.format_weight(fst.finals[s])}")
    return "".join(line + "\n" for line in lines)


def from_text(text, table):
    """Parse the arc/final line format; unknown symbols are added to ``table``."""
    fst = Fst(table)
    rows = []
    top = -1
    for n, line in enumerate(text.split("\n"), 1):
        if line == "":
            continue
        fields = line.split("\t")
        if len(fields) in (4, 5):
            src, dst = int(fields[0]), int(fields[1])
            w = semiring.parse_weight(fields[4]) if len(fields) == 5 else semiring.ONE
            rows.append(("arc", src, dst, table.add(_unescape(fields[2])),
                         table.add(_unescape(fields[3])), w))
            top = max(top, src, dst)
        elif len(fields) in (1, 2):
            s = int(fields[0])
            w = semiring.parse_weight(fields[1]) if len(fields) == 2 else semiring.ONE
            rows.append(("final", s, w))
            top = max(top, s)
        else:
            raise ValueError(f"line {n}: expected 1, 2, 4 or 5 tab-separated fields")
    if top < 0:
        return fst
    fst.add_states(top + 1)
    fst.set_start(0)
    for row in rows:
        if row[0] == "arc":
            _, src, dst, i, o, w = row
            fst.add_arc(src, i, o, w, dst)
        else:
            fst.set_final(row[1], row[2])
    return fst


def write_fst(fst, path):
    FilePath(path).write_text(to_text(fst), encoding="utf-8")


def read_fst(path, table):
    return from_text(FilePath(path).read_text(encoding="utf-8"), table)


def write_symbols(table, path):
    FilePath(path).write_text(table.to_text(), encoding="utf-8")


def read_symbols(path):
    return SymbolTable.from_text(FilePath(path).read_text(encoding="utf-8"))


def _dot_quote(text):
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(fst, title="fst"):
    """Graphviz description; epsilon is drawn as ε."""
    table = fst.table

    def sym(label):
        return "ε" if label == 0 else table.lookup(label)

    lines = [f"digraph {_dot_quote(title)} {{", "  rankdir=LR;"]
    if fst.start is not None:
        remap = _start_first_order(fst)
        for s in sorted(fst.states(), key=remap.get):
            if s in fst.finals:
                w = fst.finals[s]
                label = str(remap[s]) if w == 0 else f"{remap[s]}/{semiring.format_weight(w)}"
                lines.append(f"  {remap[s]} [shape=doublecircle, label={_dot_quote(label)}];")
            else:
                lines.append(f"  {remap[s]} [shape=circle];")
        for s in sorted(fst.states(), key=remap.get):
            for arc in fst.arcs(s):
                label = sym(arc.ilabel)
                if arc.olabel != arc.ilabel:
                    label += ":" + sym(arc.olabel)
                if arc.weight != 0:
                    label += "/" + semiring.format_weight(arc.weight)
                lines.append(f"  {remap[s]} -> {remap[arc.nextstate]} [label={_dot_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
