"""Undirected simple graphs on vertices ``0..n-1`` and their structural predicates."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

IntegerMatrix = list[list[int]]


class GraphError(ValueError):
    """Raised for malformed graph input (bad endpoints, self-loops)."""


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph.

    ``edges`` is normalized on construction: each pair is stored as ``(u, v)``
    with ``u < v``, duplicates dropped, sorted. ``adjacency[v]`` holds the
    sorted neighbours of ``v``.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = self.n
        if not isinstance(n, int) or n < 0:
            raise GraphError(f"vertex count must be a non-negative integer, got {n!r}")
        normalized = set()
        for pair in self.edges:
            u, v = pair
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            normalized.add((u, v) if u < v else (v, u))
        edges = tuple(sorted(normalized))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._edge_set

    @property
    def _edge_set(self) -> frozenset[tuple[int, int]]:
        cached = self.__dict__.get("_edge_set_cache")
        if cached is None:
            cached = frozenset(self.edges)
            object.__setattr__(self, "_edge_set_cache", cached)
        return cached

    def neighbor_masks(self) -> list[int]:
        """Adjacency as Python-int bitmasks (bit ``u`` set in ``masks[v]`` iff u ~ v)."""
        cached = self.__dict__.get("_mask_cache")
        if cached is None:
            cached = []
            for nbrs in self.adjacency:
                mask = 0
                for u in nbrs:
                    mask |= 1 << u
                cached.append(mask)
            object.__setattr__(self, "_mask_cache", cached)
        return list(cached)


def new_graph(n: int, edges: Iterable[Sequence[int]] = ()) -> Graph:
    return Graph(n, tuple(tuple(e) for e in edges))


def empty_graph(n: int) -> Graph:
    return Graph(n)


def laplacian(g: Graph) -> IntegerMatrix:
    """Exact Laplacian ``D - A`` as a list of integer rows."""
    mat = [[0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        mat[u][v] = -1
        mat[v][u] = -1
    for v in range(g.n):
        mat[v][v] = g.degree(v)
    return mat


def complement(g: Graph) -> Graph:
    present = g._edge_set
    return Graph(g.n, tuple(p for p in combinations(range(g.n), 2) if p not in present))


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex blocks of the connected components, each sorted, ordered by smallest vertex."""
    seen = [False] * g.n
    blocks = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        stack = [start]
        block = []
        while stack:
            v = stack.pop()
            block.append(v)
            for u in g.adjacency[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        blocks.append(sorted(block))
    return blocks


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


def articulation_points(g: Graph) -> set[int]:
    """Cut vertices via iterative depth-first low-link search (per component)."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    cut: set[int] = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        # frames: (vertex, parent, next neighbour index)
        stack = [(root, -1, 0)]
        while stack:
            v, parent, i = stack[-1]
            nbrs = g.adjacency[v]
            if i < len(nbrs):
                stack[-1] = (v, parent, i + 1)
                u = nbrs[i]
                if disc[u] == -1:
                    disc[u] = low[u] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((u, v, 0))
                elif u != parent:
                    low[v] = min(low[v], disc[u])
            else:
                stack.pop()
                if parent != -1:
                    low[parent] = min(low[parent], low[v])
                    if parent != root and low[v] >= disc[parent]:
                        cut.add(parent)
        if root_children > 1:
            cut.add(root)
    return cut


def dominating_vertices(g: Graph) -> set[int]:
    return {v for v in range(g.n) if g.degree(v) == g.n - 1}


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced on ``s``, relabelled ``0..|s|-1``.

    Returns the graph and the remap table ``old_of_new`` (``old_of_new[i]`` is
    the original label of new vertex ``i``).
    """
    old_of_new = sorted(set(s))
    for v in old_of_new:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} not in graph of order {g.n}")
    new_of_old = {v: i for i, v in enumerate(old_of_new)}
    edges = [
        (new_of_old[u], new_of_old[v])
        for u, v in g.edges
        if u in new_of_old and v in new_of_old
    ]
    return Graph(len(old_of_new), tuple(edges)), old_of_new


def component_count_without(g: Graph, v: int) -> int:
    """Number of connected components of ``g - v``."""
    sub, _ = induced_subgraph(g, (u for u in range(g.n) if u != v))
    return len(connected_components(sub))


def degree_sequence(g: Graph) -> list[int]:
    return sorted(g.degrees(), reverse=True)


# -- isomorphism -------------------------------------------------------------


def _refine(g: Graph, colors: list[int]) -> list[int]:
    """Colour refinement to a stable partition; colours are canonical ranks."""
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in g.adjacency[v])))
            for v in range(g.n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def find_isomorphism(a: Graph, b: Graph) -> list[int] | None:
    """Return a vertex map ``phi`` with ``{u,v} in E(a) <=> {phi u, phi v} in E(b)``, or None.

    Joint colour refinement prunes candidates; the remaining choices are made by
    backtracking, so twin-heavy graphs (cliques, joins) resolve on the first branch.
    """
    if a.n != b.n or a.m != b.m or degree_sequence(a) != degree_sequence(b):
        return None
    n = a.n
    if n == 0:
        return []
    # refine both graphs against a shared palette so colours are comparable
    both = disjoint_union_raw(a, b)
    colors = _refine(both, [0] * both.n)
    ca, cb = colors[:n], colors[n:]
    if sorted(ca) != sorted(cb):
        return None
    order = sorted(range(n), key=lambda v: (sum(1 for u in range(n) if ca[u] == ca[v]), ca[v], v))
    by_color: dict[int, list[int]] = {}
    for v in range(n):
        by_color.setdefault(cb[v], []).append(v)
    amask = a.neighbor_masks()
    bmask = b.neighbor_masks()
    phi = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        for w in by_color[ca[v]]:
            if used[w]:
                continue
            ok = True
            for j in range(k):
                u = order[j]
                if ((amask[v] >> u) & 1) != ((bmask[w] >> phi[u]) & 1):
                    ok = False
                    break
            if ok:
                phi[v] = w
                used[w] = True
                if extend(k + 1):
                    return True
                used[w] = False
                phi[v] = -1
        return False

    return list(phi) if extend(0) else None


def are_isomorphic(a: Graph, b: Graph) -> bool:
    return find_isomorphism(a, b) is not None


def disjoint_union_raw(a: Graph, b: Graph) -> Graph:
    shift = a.n
    return Graph(a.n + b.n, a.edges + tuple((u + shift, v + shift) for u, v in b.edges))
