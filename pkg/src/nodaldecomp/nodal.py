"""Strong/weak nodal domains, nodal edges, sign completions and the nodal
decomposition number D(f).

D(f) is the minimum, over every completion g of f (zeros of f replaced by +1
or -1), of the number of strong nodal domains of g. A completion has no
zeros, so its strong domains partition V and are exactly the blocks of a
nodal decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded
from .graph import Graph, articulation_points, connected_components, is_connected, laplacian
from .spectra import verify_eigenpair_exact

DEFAULT_CAP = 22
SNAP_REL = 1e-9


class NotAnEigenvector(ValueError):
    pass


class UnionFind:
    """Disjoint sets over ``0..n-1`` with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


def _is_float_like(x) -> bool:
    return isinstance(x, (float, np.floating))


def sign_pattern(f: Sequence, snap: float | None = None) -> tuple[tuple[int, ...], float]:
    """Signs of ``f`` as -1/0/+1, with float dust snapped to zero.

    Exact entries (int, Fraction) are compared exactly and the returned
    threshold is 0. If any entry is a float, entries with
    ``|x| < snap * max|f|`` count as zero (``snap`` defaults to 1e-9).
    """
    if any(_is_float_like(x) for x in f):
        rel = SNAP_REL if snap is None else snap
        scale = max((abs(float(x)) for x in f), default=0.0)
        threshold = rel * scale
        signs = tuple(0 if abs(float(x)) < threshold or x == 0 else (1 if x > 0 else -1) for x in f)
        return signs, threshold
    return tuple((x > 0) - (x < 0) for x in (Fraction(v) for v in f)), 0.0


def _check_dim(g: Graph, f: Sequence) -> None:
    if len(f) != g.n:
        raise ValueError(f"vector has length {len(f)}, graph has {g.n} vertices")


def _sign_classes(g: Graph, signs: Sequence[int]) -> list[list[int]]:
    uf = UnionFind(g.n)
    for u, v in g.edges:
        if signs[u] and signs[u] == signs[v]:
            uf.union(u, v)
    blocks: dict[int, list[int]] = {}
    for v in range(g.n):
        if signs[v]:
            blocks.setdefault(uf.find(v), []).append(v)
    return sorted(blocks.values())


def strong_nodal_domains(g: Graph, f: Sequence) -> tuple[int, list[list[int]]]:
    """Count and vertex blocks of the strong nodal domains (zero vertices excluded)."""
    _check_dim(g, f)
    signs, _ = sign_pattern(f)
    blocks = _sign_classes(g, signs)
    return len(blocks), blocks


def _components_within(g: Graph, allowed: Sequence[bool]) -> list[frozenset[int]]:
    uf = UnionFind(g.n)
    for u, v in g.edges:
        if allowed[u] and allowed[v]:
            uf.union(u, v)
    blocks: dict[int, set[int]] = {}
    for v in range(g.n):
        if allowed[v]:
            blocks.setdefault(uf.find(v), set()).add(v)
    return [frozenset(b) for b in blocks.values()]


def weak_nodal_domain_sets(g: Graph, f: Sequence) -> list[frozenset[int]]:
    _check_dim(g, f)
    signs, _ = sign_pattern(f)
    for block in connected_components(g):
        if all(signs[v] == 0 for v in block):
            raise ValueError(f"f vanishes identically on the component {block}")
    candidates = set(_components_within(g, [s >= 0 for s in signs]))
    candidates |= set(_components_within(g, [s <= 0 for s in signs]))
    # an all-zero component of one side can sit inside a component of the other side
    maximal = [c for c in candidates if not any(c < d for d in candidates)]
    return sorted(maximal, key=lambda c: sorted(c))


def weak_nodal_domains(g: Graph, f: Sequence) -> int:
    return len(weak_nodal_domain_sets(g, f))


def nodal_edges(g: Graph, f: Sequence, mode: str = "strong") -> list[tuple[int, int]]:
    _check_dim(g, f)
    signs, _ = sign_pattern(f)
    if mode == "strong":
        return [(u, v) for u, v in g.edges if signs[u] * signs[v] < 0]
    if mode == "weak":
        return [(u, v) for u, v in g.edges if signs[u] * signs[v] <= 0]
    raise ValueError(f"mode must be 'strong' or 'weak', got {mode!r}")


def _zero_set(signs: Sequence[int]) -> list[int]:
    return [v for v, s in enumerate(signs) if s == 0]


def sign_completions(f: Sequence, cap: int = DEFAULT_CAP) -> Iterator[tuple]:
    """All completions of ``f`` in index order.

    Completion ``k`` sets the i-th zero (ascending vertex order) to +1 when bit
    i of k is 0 and to -1 when it is 1, so completion 0 is the all-plus one.
    """
    signs, _ = sign_pattern(f)
    zeros = _zero_set(signs)
    if len(zeros) > cap:
        raise BudgetExceeded(
            f"{len(zeros)} zero entries need 2^{len(zeros)} completions; cap is {cap}",
            len(zeros),
            cap,
        )
    base = list(f)
    for k in range(1 << len(zeros)):
        g = list(base)
        for i, v in enumerate(zeros):
            g[v] = -1 if (k >> i) & 1 else 1
        yield tuple(g)


def _count_components(mask: int, adj: Sequence[int]) -> int:
    count = 0
    while mask:
        seed = mask & -mask
        comp = seed
        frontier = seed
        while frontier:
            bit = frontier & -frontier
            frontier ^= bit
            new = adj[bit.bit_length() - 1] & mask & ~comp
            comp |= new
            frontier |= new
        mask &= ~comp
        count += 1
    return count


@dataclass
class NodalReport:
    strong_count: int
    weak_count: int | None
    strong_domains: list[list[int]]
    decomposition_number: int
    witness_completion: tuple
    witness_partition: list[list[int]]
    search_size: int
    completions_examined: int
    snap_threshold: float = 0.0

    def to_dict(self) -> dict:
        return {
            "S": self.strong_count,
            "W": self.weak_count,
            "D": self.decomposition_number,
            "strong_domains": self.strong_domains,
            "witness": [_jsonable(x) for x in self.witness_completion],
            "witness_partition": self.witness_partition,
            "search_size": self.search_size,
            "completions_examined": self.completions_examined,
            "snap_threshold": self.snap_threshold,
        }


def _jsonable(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    return int(x)


def decomposition_number(g: Graph, f: Sequence, cap: int = DEFAULT_CAP) -> tuple[int, int, int]:
    """Return ``(D, witness_index, examined)`` without building a full report.

    Bitmask component counting over completions in index order; stops as soon
    as the floor is reached (2 when f takes both signs, otherwise 1).
    """
    _check_dim(g, f)
    signs, _ = sign_pattern(f)
    if not any(signs):
        raise ValueError("f is identically zero")
    zeros = _zero_set(signs)
    if len(zeros) > cap:
        raise BudgetExceeded(
            f"{len(zeros)} zero entries need 2^{len(zeros)} completions; cap is {cap}",
            len(zeros),
            cap,
        )
    adj = g.neighbor_masks()
    pos = sum(1 << v for v, s in enumerate(signs) if s > 0)
    neg = sum(1 << v for v, s in enumerate(signs) if s < 0)
    floor = 2 if pos and neg else 1
    zero_bits = [1 << v for v in zeros]
    zmask = sum(zero_bits)
    best, best_k = None, 0
    examined = 0
    for k in range(1 << len(zeros)):
        flip = 0
        for i, bit in enumerate(zero_bits):
            if (k >> i) & 1:
                flip |= bit
        pmask = pos | (zmask & ~flip)
        nmask = neg | flip
        count = _count_components(pmask, adj) + _count_components(nmask, adj)
        examined += 1
        if best is None or count < best:
            best, best_k = count, k
            if best <= floor:
                break
    return best, best_k, examined


def nodal_decomposition_number(g: Graph, f: Sequence, cap: int = DEFAULT_CAP) -> NodalReport:
    """Exact D(f) by exhaustive search over sign completions, with a witness."""
    _check_dim(g, f)
    signs, threshold = sign_pattern(f)
    if threshold:
        # work on the snapped signs so float dust cannot flip a domain
        f = [x if s else 0 for x, s in zip(f, signs)]
    d, k, examined = decomposition_number(g, f, cap)
    zeros = _zero_set(signs)
    witness = list(f)
    for i, v in enumerate(zeros):
        witness[v] = -1 if (k >> i) & 1 else 1
    s_count, s_blocks = strong_nodal_domains(g, f)
    try:
        w_count = weak_nodal_domains(g, f)
    except ValueError:
        w_count = None
    _, partition = strong_nodal_domains(g, witness)
    return NodalReport(
        strong_count=s_count,
        weak_count=w_count,
        strong_domains=s_blocks,
        decomposition_number=d,
        witness_completion=tuple(witness),
        witness_partition=partition,
        search_size=1 << len(zeros),
        completions_examined=examined,
        snap_threshold=threshold,
    )


def check_partition_structure(g: Graph, completion: Sequence, partition: Sequence[Sequence[int]]) -> bool:
    """Blocks partition V, induce connected subgraphs, are constant-sign, and are maximal."""
    seen = sorted(v for block in partition for v in block)
    if seen != list(range(g.n)):
        return False
    signs, _ = sign_pattern(completion)
    if 0 in signs:
        return False
    owner = {}
    for i, block in enumerate(partition):
        if len({signs[v] for v in block}) != 1:
            return False
        members = set(block)
        start = block[0]
        reached = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in g.adjacency[v]:
                if u in members and u not in reached:
                    reached.add(u)
                    stack.append(u)
        if reached != members:
            return False
        for v in block:
            owner[v] = i
    # adjacent vertices in different blocks must carry opposite signs
    return all(owner[u] == owner[v] or signs[u] != signs[v] for u, v in g.edges)


def _is_eigenvector(g: Graph, f: Sequence, value, tol: float = 1e-8) -> bool:
    if any(_is_float_like(x) for x in f) or _is_float_like(value):
        lap = np.array(laplacian(g), dtype=float)
        vec = np.asarray(f, dtype=float)
        scale = max(np.abs(vec).max(), 1.0)
        return bool(np.abs(lap @ vec - float(value) * vec).max() < tol * scale)
    return verify_eigenpair_exact(g, f, value)


def check_courant_floor(g: Graph, f: Sequence, value, cap: int = DEFAULT_CAP) -> bool:
    """D(f) >= 2 for an eigenvector of a nonzero eigenvalue on a connected graph."""
    if not is_connected(g):
        raise ValueError("graph must be connected")
    if value == 0:
        raise ValueError("eigenvalue 0 is outside the floor's hypothesis")
    if not _is_eigenvector(g, f, value):
        raise NotAnEigenvector(f"vector is not an eigenvector for eigenvalue {value}")
    d, _, _ = decomposition_number(g, f, cap)
    return d >= 2


@dataclass
class SingleNegativeReport:
    applicable: bool
    reason: str
    decomposition_number: int | None = None

    @property
    def holds(self) -> bool | None:
        if not self.applicable:
            return None
        return self.decomposition_number == 2


def check_single_negative_lemma(g: Graph, f: Sequence, cap: int = DEFAULT_CAP) -> SingleNegativeReport:
    """Exactly one negative entry at a non-cut vertex of a connected graph forces D(f) = 2."""
    _check_dim(g, f)
    if not is_connected(g):
        return SingleNegativeReport(False, "graph is not connected")
    signs, _ = sign_pattern(f)
    negatives = [v for v, s in enumerate(signs) if s < 0]
    if len(negatives) != 1:
        return SingleNegativeReport(False, f"{len(negatives)} negative entries")
    if negatives[0] in articulation_points(g):
        return SingleNegativeReport(False, f"negative vertex {negatives[0]} is a cut vertex")
    d, _, _ = decomposition_number(g, f, cap)
    return SingleNegativeReport(True, "hypotheses hold", d)
