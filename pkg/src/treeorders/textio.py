"""Line-oriented text documents, their canonical serialization, and DOT
export.

A document starts with a header line naming its kind; several documents may
follow each other in one file.  Blank lines and ``#`` comments are ignored.

    wstree                      segtree
    node r parent=-             node r parent=-
    node a parent=r edgelen=w   node a parent=r len=3/2 top=open

    grading                     family
    r 0                         (0) (1,2)
    a@1 1/2                     -
                                ()
    jumpfn                      region
    piece end=1/2 low=0 high=1/2 value=1/2
                                vertex a
                                interval a 0 1/2 closed open
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .brto import CLOSED, OPEN, Region, SegmentTree
from .common import DomainError, ParseError, Point, fmt_q, parse_point, parse_q
from .jumps import JumpFunction
from .ordinal import OMEGA, Ordinal, format_ordinal
from .wstree import OrdinalTree

KINDS = ("wstree", "segtree", "grading", "family", "jumpfn", "region")


@dataclass(frozen=True)
class Document:
    kind: str
    value: object
    line: int = 1


def _body_lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line


def parse_documents(text: str) -> list[Document]:
    docs = []
    current = None
    body: list = []
    for i, line in _body_lines(text):
        if line in KINDS:
            if current is not None:
                docs.append(_parse_body(*current, body))
            current, body = (line, i), []
        elif current is None:
            raise ParseError(i, f"expected a header ({', '.join(KINDS)}), got {line!r}")
        else:
            body.append((i, line))
    if current is None:
        raise ParseError(1, "empty document: expected a header")
    docs.append(_parse_body(*current, body))
    return docs


def parse(text: str):
    """Parse a single document and return its value."""
    docs = parse_documents(text)
    if len(docs) != 1:
        raise ParseError(docs[1].line, "expected a single document")
    return docs[0].value


def _parse_body(kind: str, header_line: int, body) -> Document:
    fn = {
        "wstree": _parse_tree_body,
        "segtree": _parse_tree_body,
        "grading": _parse_grading,
        "family": _parse_family,
        "jumpfn": _parse_jumpfn,
        "region": _parse_region,
    }[kind]
    return Document(kind, fn(kind, header_line, body), header_line)


def _fields(i: int, parts, allowed, required):
    out = {}
    for part in parts:
        key, eq, val = part.partition("=")
        if not eq or key not in allowed:
            raise ParseError(i, f"expected one of {', '.join(k + '=' for k in allowed)}, got {part!r}")
        if key in out:
            raise ParseError(i, f"duplicate field {key!r}")
        out[key] = val
    for key in required:
        if key not in out:
            raise ParseError(i, f"missing field {key}=")
    return out


def _parse_tree_body(kind: str, header_line: int, body):
    ws = kind == "wstree"
    parent: dict = {}
    length: dict = {}
    top: dict = {}
    lines: dict = {}
    for i, line in body:
        parts = line.split()
        if parts[0] != "node" or len(parts) < 3:
            raise ParseError(i, f"expected 'node <id> parent=<id|->', got {line!r}")
        name = parts[1]
        if name in parent:
            raise ParseError(i, f"duplicate node {name!r}")
        allowed = ("parent", "edgelen") if ws else ("parent", "len", "top")
        f = _fields(i, parts[2:], allowed, ("parent",))
        par = None if f["parent"] == "-" else f["parent"]
        if par is None:
            if len(f) > 1:
                raise ParseError(i, f"root {name!r} cannot carry an edge")
        elif par not in parent:
            raise ParseError(i, f"unknown parent {par!r} (parents must come first)")
        parent[name] = par
        lines[name] = i
        if par is None:
            continue
        if ws:
            if "edgelen" not in f:
                raise ParseError(i, "missing field edgelen=")
            val = f["edgelen"]
            if val in ("w", "omega"):
                length[name] = OMEGA
            elif val.isdigit() and int(val) > 0:
                length[name] = Ordinal.of(int(val))
            else:
                raise ParseError(i, f"expected edgelen=<positive natural|w>, got {val!r}")
        else:
            if "len" not in f:
                raise ParseError(i, "missing field len=")
            try:
                ln = parse_q(f["len"])
            except ValueError:
                raise ParseError(i, f"expected len=<rational>, got {f['len']!r}") from None
            if ln <= 0:
                raise ParseError(i, f"edge length must be positive, got {f['len']}")
            length[name] = ln
            tp = f.get("top", CLOSED)
            if tp not in (CLOSED, OPEN):
                raise ParseError(i, f"expected top=closed|open, got {tp!r}")
            top[name] = tp
    roots = [v for v, p in parent.items() if p is None]
    if len(roots) > 1:
        raise ParseError(lines[roots[1]], f"second root {roots[1]!r}")
    if ws:
        return OrdinalTree(parent, length)
    if not roots:
        raise ParseError(header_line, "segment tree needs a root")
    return SegmentTree(parent, length, top)


def _parse_grading(kind, header_line, body):
    out = {}
    for i, line in body:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(i, f"expected '<point> <value>', got {line!r}")
        try:
            p = parse_point(parts[0])
        except ValueError as e:
            raise ParseError(i, f"expected a point: {e}") from None
        try:
            v = parse_q(parts[1])
        except ValueError:
            raise ParseError(i, f"expected a rational value, got {parts[1]!r}") from None
        if p in out:
            raise ParseError(i, f"point {p} graded twice")
        out[p] = v
    return out


_WORD = re.compile(r"^\((\d+(?:,\d+)*)?\)$")


def _parse_family(kind, header_line, body):
    fam = []
    for i, line in body:
        if line == "-":
            fam.append(frozenset())
            continue
        words = []
        for tok in line.split():
            m = _WORD.match(tok)
            if not m:
                raise ParseError(i, f"expected a word like (0,1,2), got {tok!r}")
            words.append(tuple(int(x) for x in m.group(1).split(",")) if m.group(1) else ())
        fam.append(frozenset(words))
    return fam


def _parse_jumpfn(kind, header_line, body):
    breaks, lows, highs, values = [Fraction(0)], [], [], []
    for i, line in body:
        parts = line.split()
        if parts[0] != "piece":
            raise ParseError(i, f"expected 'piece end=.. low=.. high=.. value=..', got {line!r}")
        f = _fields(i, parts[1:], ("end", "low", "high", "value"), ("end", "low", "high"))
        try:
            vals = {k: parse_q(v) for k, v in f.items()}
        except ValueError as e:
            raise ParseError(i, str(e)) from None
        breaks.append(vals["end"])
        lows.append(vals["low"])
        highs.append(vals["high"])
        values.append(vals.get("value", vals["high"]))
    if not lows:
        raise ParseError(header_line, "jump function needs at least one piece")
    try:
        return JumpFunction(tuple(breaks), tuple(lows), tuple(highs), tuple(values))
    except DomainError as e:
        raise ParseError(body[-1][0], str(e)) from None


def _parse_region(kind, header_line, body):
    verts = set()
    intervals = []
    for i, line in body:
        parts = line.split()
        if parts[0] == "vertex" and len(parts) == 2:
            verts.add(parts[1])
        elif parts[0] == "interval" and len(parts) == 6:
            try:
                lo, hi = parse_q(parts[2]), parse_q(parts[3])
            except ValueError as e:
                raise ParseError(i, str(e)) from None
            if parts[4] not in (CLOSED, OPEN) or parts[5] not in (CLOSED, OPEN):
                raise ParseError(i, "interval ends must be closed or open")
            intervals.append((parts[1], lo, hi, parts[4] == CLOSED, parts[5] == CLOSED))
        else:
            raise ParseError(i, f"expected 'vertex <id>' or 'interval <edge> <lo> <hi> <closed|open> <closed|open>', got {line!r}")
    return Region(frozenset(verts), tuple(sorted(intervals)))


# -- serialization ---------------------------------------------------------


def _tree_order(T) -> list:
    # parent before child, children by identifier
    return list(T.dfs())


def serialize(value, kind: Optional[str] = None) -> str:
    kind = kind or _kind_of(value)
    lines = [kind]
    if kind == "wstree":
        for v in _tree_order(value):
            par = value.parent[v]
            if par is None:
                lines.append(f"node {v} parent=-")
            else:
                ln = value.length[v]
                txt = "w" if ln == OMEGA else format_ordinal(ln)
                lines.append(f"node {v} parent={par} edgelen={txt}")
    elif kind == "segtree":
        for v in _tree_order(value):
            par = value.parent[v]
            if par is None:
                lines.append(f"node {v} parent=-")
            else:
                tp = OPEN if value.is_open(v) else CLOSED
                lines.append(f"node {v} parent={par} len={fmt_q(value.length[v])} top={tp}")
    elif kind == "grading":
        for p in sorted(value, key=Point.sort_key):
            lines.append(f"{p} {fmt_q(value[p])}")
    elif kind == "family":
        for A in value:
            if not A:
                lines.append("-")
            else:
                words = sorted((tuple(w) for w in A), key=lambda w: (len(w), w))
                lines.append(" ".join("(" + ",".join(map(str, w)) + ")" for w in words))
    elif kind == "jumpfn":
        f = value
        for i in range(f.pieces):
            lines.append(
                f"piece end={fmt_q(f.breaks[i + 1])} low={fmt_q(f.lows[i])} "
                f"high={fmt_q(f.highs[i])} value={fmt_q(f.values[i])}"
            )
    elif kind == "region":
        for v in sorted(value.vertices):
            lines.append(f"vertex {v}")
        for e, lo, hi, lc, hc in sorted(value.intervals):
            a = CLOSED if lc else OPEN
            b = CLOSED if hc else OPEN
            lines.append(f"interval {e} {fmt_q(lo)} {fmt_q(hi)} {a} {b}")
    else:
        raise ValueError(f"unknown document kind {kind!r}")
    return "\n".join(lines) + "\n"


def _kind_of(value) -> str:
    if isinstance(value, OrdinalTree):
        return "wstree"
    if isinstance(value, SegmentTree):
        return "segtree"
    if isinstance(value, JumpFunction):
        return "jumpfn"
    if isinstance(value, Region):
        return "region"
    if isinstance(value, dict):
        return "grading"
    if isinstance(value, (list, tuple)):
        return "family"
    raise ValueError(f"cannot serialize {type(value).__name__}")


# -- DOT -------------------------------------------------------------------


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def emit_dot(tree, annotations: Optional[dict] = None) -> str:
    """Directed graph with edge-length labels; branching vertices are filled,
    and graded vertices show their values."""
    ann = annotations or {}
    lines = ["digraph T {"]
    if tree.root is not None:
        for v in tree.dfs():
            label = v
            val = ann.get(Point(v))
            if val is not None:
                label += f"\n{fmt_q(val)}"
            attrs = [f"label={_q(label)}"]
            if len(tree.children(v)) >= 2:
                attrs.append("style=filled")
                attrs.append('fillcolor="lightgray"')
            if isinstance(tree, SegmentTree) and tree.is_open(v):
                attrs.append("shape=circle")
                attrs.append("style=dashed")
            lines.append(f"  {_q(v)} [{', '.join(attrs)}];")
        for v in tree.dfs():
            par = tree.parent[v]
            if par is None:
                continue
            ln = tree.length[v]
            if isinstance(tree, OrdinalTree):
                txt = "w" if ln == OMEGA else format_ordinal(ln)
            else:
                txt = fmt_q(ln)
            lines.append(f"  {_q(par)} -> {_q(v)} [label={_q(txt)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
