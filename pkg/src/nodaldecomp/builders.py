"""Graph family constructors: cliques, unions, joins, G-joins and clique representations."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from itertools import accumulate, combinations
from typing import Sequence

from .graph import Graph, GraphError, disjoint_union_raw


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs at least one vertex")
    return Graph(n, tuple(combinations(range(n), 2)))


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs at least one vertex")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least three vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def disjoint_union(a: Graph, b: Graph) -> Graph:
    """Vertices of ``b`` are shifted by ``a.n``; no edges between the two sides."""
    return disjoint_union_raw(a, b)


def join(a: Graph, b: Graph) -> Graph:
    shift = a.n
    cross = tuple((u, shift + v) for u in range(a.n) for v in range(b.n))
    return Graph(a.n + b.n, disjoint_union_raw(a, b).edges + cross)


def g_join(base: Graph, fibers: Sequence[Graph]) -> Graph:
    """Replace each base vertex ``i`` by ``fibers[i]``.

    Fiber blocks are laid out consecutively in base-vertex order. Two vertices
    in different blocks are adjacent exactly when their base vertices are.
    """
    if len(fibers) != base.n:
        raise GraphError(f"g_join needs {base.n} fibers, got {len(fibers)}")
    offsets = [0, *accumulate(f.n for f in fibers)]
    edges = []
    for i, fiber in enumerate(fibers):
        off = offsets[i]
        edges.extend((off + u, off + v) for u, v in fiber.edges)
    for x, y in base.edges:
        edges.extend(
            (offsets[x] + u, offsets[y] + v)
            for u in range(fibers[x].n)
            for v in range(fibers[y].n)
        )
    return Graph(offsets[-1], tuple(edges))


def complete_multipartite(part_sizes: Sequence[int]) -> Graph:
    if not part_sizes:
        raise GraphError("complete multipartite graph needs at least one part")
    if any(s < 1 for s in part_sizes):
        raise GraphError(f"part sizes must be positive, got {list(part_sizes)}")
    label = []
    for r, size in enumerate(part_sizes):
        label.extend([r] * size)
    n = len(label)
    return Graph(n, tuple((u, v) for u, v in combinations(range(n), 2) if label[u] != label[v]))


@dataclass(frozen=True)
class Representation:
    """Clique-fibred complete multipartite graph.

    ``parts[r]`` lists the clique sizes attached to the base vertices of the
    r-th independent part. Everything else is derived from ``parts``.
    """

    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        parts = tuple(tuple(int(p) for p in part) for part in self.parts)
        if not parts:
            raise GraphError("representation needs at least one part")
        for part in parts:
            if not part:
                raise GraphError("every part needs at least one clique")
            if any(p < 1 for p in part):
                raise GraphError(f"clique sizes must be positive, got {list(part)}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, parts: Sequence[Sequence[int]]) -> "Representation":
        return cls(tuple(tuple(p) for p in parts))

    @property
    def s(self) -> int:
        return len(self.parts)

    @property
    def part_counts(self) -> list[int]:
        """``n_r``: number of cliques (base vertices) in each part."""
        return [len(p) for p in self.parts]

    @property
    def part_totals(self) -> list[int]:
        """``N_r``: number of graph vertices in each part."""
        return [sum(p) for p in self.parts]

    @property
    def N(self) -> int:
        return sum(self.part_totals)

    @property
    def base_order(self) -> int:
        return sum(self.part_counts)

    @property
    def clique_sizes(self) -> list[int]:
        """All clique sizes in layout order (the flattened ``parts``)."""
        return [p for part in self.parts for p in part]

    def clique_offsets(self) -> list[int]:
        """Start index of every clique block, plus ``N`` as a sentinel."""
        return [0, *accumulate(self.clique_sizes)]

    def part_offsets(self) -> list[int]:
        return [0, *accumulate(self.part_totals)]

    def to_json(self) -> str:
        return json.dumps({"parts": [list(p) for p in self.parts]})

    @classmethod
    def from_json(cls, text: str) -> "Representation":
        return cls.of(json.loads(text)["parts"])


def from_representation(r: Representation) -> Graph:
    base = complete_multipartite(r.part_counts)
    return g_join(base, [complete(p) for p in r.clique_sizes])


# -- builder expressions -------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z]+)(?P<num>\d+)?|(?P<punct>[(),\[\]])|(?P<int>\d+))")


class ExpressionError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExpressionError(f"unexpected character at {pos}: {text[pos:]!r}")
        pos = m.end()
        if m.group("name"):
            tokens.append(("name", m.group("name")))
            if m.group("num") is not None:
                tokens.append(("int", m.group("num")))
        elif m.group("punct"):
            tokens.append(("punct", m.group("punct")))
        else:
            tokens.append(("int", m.group("int")))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("eof", "")

    def take(self, kind, value=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            raise ExpressionError(f"expected {value or kind}, got {tok[1] or 'end of input'!r}")
        self.i += 1
        return tok[1]

    def int_list(self) -> list:
        self.take("punct", "[")
        items = []
        while True:
            if self.peek() == ("punct", "["):
                items.append(self.int_list())
            else:
                items.append(int(self.take("int")))
            if self.peek() == ("punct", ","):
                self.i += 1
                continue
            self.take("punct", "]")
            return items

    def expr(self) -> Graph:
        name = self.take("name").upper()
        if self.peek()[0] == "int":
            k = int(self.take("int"))
            sized = {"K": complete, "P": path, "C": cycle, "E": lambda k: Graph(k)}
            if name not in sized:
                raise ExpressionError(f"unknown graph family {name}{k}")
            return sized[name](k)
        self.take("punct", "(")
        if name in ("U", "J"):
            args = [self.expr()]
            while self.peek() == ("punct", ","):
                self.i += 1
                args.append(self.expr())
            self.take("punct", ")")
            combine = disjoint_union if name == "U" else join
            out = args[0]
            for g in args[1:]:
                out = combine(out, g)
            return out
        if name == "MP":
            sizes = [int(self.take("int"))]
            while self.peek() == ("punct", ","):
                self.i += 1
                sizes.append(int(self.take("int")))
            self.take("punct", ")")
            return complete_multipartite(sizes)
        if name == "REP":
            parts = self.int_list()
            self.take("punct", ")")
            return from_representation(Representation.of(parts))
        raise ExpressionError(f"unknown builder {name}")


def parse_expr(text: str) -> Graph:
    """Build a graph from an expression such as ``J(U(K2,K3),J(K4,K11))``.

    Atoms: ``Kn`` (complete), ``Pn`` (path), ``Cn`` (cycle), ``En`` (edgeless).
    Combinators: ``U(a,b,...)`` disjoint union, ``J(a,b,...)`` join,
    ``MP(n1,n2,...)`` complete multipartite, ``REP([[..],..])`` representation.
    """
    parser = _Parser(text)
    try:
        g = parser.expr()
    except ExpressionError:
        raise
    except ValueError as exc:
        raise ExpressionError(str(exc)) from exc
    if parser.peek()[0] != "eof":
        raise ExpressionError(f"trailing input after expression: {parser.peek()[1]!r}")
    return g

