"""Line-based text formats for graphs and colourings.

Graph:     n <count> / outer <v0 ... v_{n-1}> / e <u> <v>, with # comments.
Colouring: s <k> / c <v> <colour>.
"""
from __future__ import annotations

from typing import Iterator

from .errors import ParseError
from .graph_core import Coloring, Graph


def _tokens(text: str) -> Iterator[tuple[int, list[tuple[int, str]]]]:
    """Yield (line number, [(column, token), ...]) for each non-blank line, comments stripped."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = []
        col = 0
        for part in line.split():
            col = line.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        if toks:
            yield lineno, toks


def _int(tok: tuple[int, str], lineno: int, what: str) -> int:
    col, s = tok
    try:
        return int(s)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {s!r}", lineno, col) from None


def parse_graph(text: str) -> Graph:
    n = None
    outer = None
    edges = []
    for lineno, toks in _tokens(text):
        key = toks[0][1]
        if n is None and key != "n":
            raise ParseError("expected header 'n <count>' first", lineno, toks[0][0])
        if key == "n":
            if n is not None:
                raise ParseError("duplicate header", lineno, toks[0][0])
            if len(toks) != 2:
                raise ParseError("header takes exactly one number", lineno, toks[0][0])
            n = _int(toks[1], lineno, "vertex count")
            if n < 0:
                raise ParseError("vertex count must be non-negative", lineno, toks[1][0])
        elif key == "outer":
            if outer is not None:
                raise ParseError("duplicate outer order", lineno, toks[0][0])
            outer = [_int(t, lineno, "vertex") for t in toks[1:]]
            if sorted(outer) != list(range(n)):
                raise ParseError(f"outer order must list each of the {n} vertices once", lineno, toks[0][0])
        elif key == "e":
            if len(toks) != 3:
                raise ParseError("edge line takes two vertices", lineno, toks[0][0])
            u, v = (_int(t, lineno, "vertex") for t in toks[1:])
            for (col, _), x in zip(toks[1:], (u, v)):
                if not 0 <= x < n:
                    raise ParseError(f"vertex {x} out of range 0..{n - 1}", lineno, col)
            if u == v:
                raise ParseError(f"self-loop at {u}", lineno, toks[1][0])
            edges.append((u, v))
        else:
            raise ParseError(f"unknown record {key!r}", lineno, toks[0][0])
    if n is None:
        raise ParseError("missing header 'n <count>'", 1, 1)
    return Graph(n, edges, outer)


def format_graph(g: Graph, comments: tuple[str, ...] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"n {g.n}")
    if g.outer_order is not None:
        lines.append("outer " + " ".join(map(str, g.outer_order)))
    lines += [f"e {u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def parse_coloring(text: str, n: int | None = None) -> Coloring:
    s = None
    colour: dict[int, int] = {}
    for lineno, toks in _tokens(text):
        key = toks[0][1]
        if key == "s":
            if len(toks) != 2:
                raise ParseError("header takes exactly one number", lineno, toks[0][0])
            s = _int(toks[1], lineno, "colour count")
        elif key == "c":
            if s is None:
                raise ParseError("expected header 's <k>' first", lineno, toks[0][0])
            if len(toks) != 3:
                raise ParseError("colour line takes a vertex and a colour", lineno, toks[0][0])
            v, c = (_int(t, lineno, "value") for t in toks[1:])
            if v in colour:
                raise ParseError(f"vertex {v} coloured twice", lineno, toks[1][0])
            if not 1 <= c <= s:
                raise ParseError(f"colour {c} outside 1..{s}", lineno, toks[2][0])
            colour[v] = c
        else:
            raise ParseError(f"unknown record {key!r}", lineno, toks[0][0])
    if s is None:
        raise ParseError("missing header 's <k>'", 1, 1)
    size = n if n is not None else (max(colour) + 1 if colour else 0)
    missing = [v for v in range(size) if v not in colour]
    if missing or any(v >= size for v in colour):
        raise ParseError(f"colouring must cover vertices 0..{size - 1} exactly", 1, 1)
    return Coloring.from_assignment(s, [colour[v] for v in range(size)])


def format_coloring(c: Coloring, comments: tuple[str, ...] = ()) -> str:
    lines = [f"# {x}" for x in comments]
    lines.append(f"s {c.s}")
    lines += [f"c {v} {col}" for v, col in enumerate(c.assignment)]
    return "\n".join(lines) + "\n"
