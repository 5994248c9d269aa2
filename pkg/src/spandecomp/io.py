"""Text formats: edge lists, bag lists, decomposition JSON and DOT.

Edge list: one edge ``name1 name2`` per line; ``v name`` declares a vertex
(useful for isolated vertices); ``#`` starts a comment.  Names are any
non-whitespace tokens and are mapped to dense integer ids in order of first
appearance.

Bag list: one bag per line, whitespace-separated names, in path order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .decomposer import ForestDecomposition
from .graph import Graph
from .pathdec import PathDecomposition


class MalformedInput(ValueError):
    """Input text that does not follow the expected format."""


@dataclass
class NameTable:
    names: list[str] = field(default_factory=list)
    index: dict[str, int] = field(default_factory=dict)

    @classmethod
    def from_names(cls, names: Iterable[str]) -> "NameTable":
        t = cls()
        for n in names:
            t.intern(n)
        return t

    @classmethod
    def identity(cls, ids: Iterable[int]) -> "NameTable":
        """Names are the decimal ids themselves (ids must be 0..n-1)."""
        ids = sorted(ids)
        if ids != list(range(len(ids))):
            raise ValueError("identity naming needs ids 0..n-1")
        return cls.from_names(str(i) for i in ids)

    def intern(self, name: str) -> int:
        i = self.index.get(name)
        if i is None:
            i = len(self.names)
            self.names.append(name)
            self.index[name] = i
        return i

    def lookup(self, name: str, where: str = "") -> int:
        try:
            return self.index[name]
        except KeyError:
            raise MalformedInput(f"{where}unknown vertex name {name!r}") from None

    def name(self, i: int) -> str:
        return self.names[i]

    def __len__(self) -> int:
        return len(self.names)


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_edge_list(text: str) -> tuple[Graph, NameTable]:
    names = NameTable()
    edges = []
    for lineno, tokens in _content_lines(text):
        if len(tokens) == 2 and tokens[0] == "v":
            names.intern(tokens[1])
            continue
        if len(tokens) != 2:
            raise MalformedInput(f"line {lineno}: expected 'name1 name2' or 'v name', got {' '.join(tokens)!r}")
        a, b = tokens
        if a == b:
            raise MalformedInput(f"line {lineno}: self-loop on {a!r}")
        edges.append((names.intern(a), names.intern(b)))
    return Graph(range(len(names)), edges), names


def parse_bag_list(text: str, names: NameTable) -> PathDecomposition:
    bags = []
    for lineno, tokens in _content_lines(text):
        bags.append({names.lookup(t, f"line {lineno}: ") for t in tokens})
    return PathDecomposition(bags)


def format_edge_list(g: Graph, names: NameTable) -> str:
    lines = []
    touched = {v for e in g.edges for v in e}
    for v in sorted(g.vertices):
        if v not in touched:
            lines.append(f"v {names.name(v)}")
    for u, v in sorted(g.edges):
        lines.append(f"{names.name(u)} {names.name(v)}")
    return "\n".join(lines) + "\n"


def format_bag_list(p: PathDecomposition, names: NameTable) -> str:
    return "".join(" ".join(names.name(v) for v in sorted(bag)) + "\n" for bag in p.bags)


def decomposition_to_dict(d: ForestDecomposition, names: NameTable, meta: dict | None = None) -> dict:
    nodes = sorted(d.forest.vertices)
    return {
        "vertices": [names.name(v) for v in nodes],
        "tree_edges": [[names.name(u), names.name(v)] for u, v in sorted(d.forest.edges)],
        "bags": {names.name(x): [names.name(v) for v in sorted(d.bags[x])] for x in nodes},
        "width": d.width,
        "meta": dict(meta or {}),
    }


def dump_json(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def decomposition_from_dict(obj: object, names: NameTable) -> ForestDecomposition:
    if not isinstance(obj, dict):
        raise MalformedInput("decomposition JSON must be an object")
    for key in ("vertices", "tree_edges", "bags"):
        if key not in obj:
            raise MalformedInput(f"decomposition JSON lacks {key!r}")
    try:
        nodes = [names.lookup(str(n), "vertices: ") for n in obj["vertices"]]
        edges = []
        for pair in obj["tree_edges"]:
            if len(pair) != 2:
                raise MalformedInput(f"tree edge {pair!r} does not have two endpoints")
            u, v = (names.lookup(str(n), "tree_edges: ") for n in pair)
            if u == v:
                raise MalformedInput(f"tree edge {pair!r} is a loop")
            edges.append((u, v))
        raw_bags = obj["bags"]
        if not isinstance(raw_bags, dict):
            raise MalformedInput("'bags' must map node names to vertex lists")
        bags = {names.lookup(str(x), "bags: "): frozenset(names.lookup(str(v), "bags: ") for v in members)
                for x, members in raw_bags.items()}
    except TypeError as exc:
        raise MalformedInput(f"decomposition JSON has the wrong shape: {exc}") from None
    return ForestDecomposition(Graph(nodes, edges), bags)


def to_dot(d: ForestDecomposition, names: NameTable) -> str:
    lines = ["graph decomposition {"]
    for x in sorted(d.forest.vertices):
        bag = ", ".join(names.name(v) for v in sorted(d.bags[x]))
        label = f"{names.name(x)}: {{{bag}}}".replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  n{x} [label="{label}"];')
    for u, v in sorted(d.forest.edges):
        lines.append(f"  n{u} -- n{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedInput(f"{path}: not UTF-8 text ({exc})") from None


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
