"""Finite groups as Cayley tables, element orders, cyclic subgroups and power graphs."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graph import Graph

ASSOCIATIVITY_FULL_CHECK = 64
ASSOCIATIVITY_SPOT_CHECKS = 10_000
MAX_ORDER = 512


class GroupTableError(ValueError):
    """Raised when a table does not define a group."""


@dataclass(frozen=True)
class FiniteGroup:
    """A group on elements ``0..order-1`` with ``table[a][b] = a*b``."""

    table: tuple[tuple[int, ...], ...]
    identity: int
    name: str = "group"
    params: dict = field(default_factory=dict, compare=False)

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def power(self, x: int, k: int) -> int:
        y = self.identity
        for _ in range(k):
            y = self.table[y][x]
        return y

    def is_abelian(self) -> bool:
        t = np.asarray(self.table)
        return bool((t == t.T).all())


def _validate(table: Sequence[Sequence[int]], seed: int = 0) -> tuple[tuple[tuple[int, ...], ...], int]:
    n = len(table)
    if n == 0:
        raise GroupTableError("empty table")
    if n > MAX_ORDER:
        raise GroupTableError(f"order {n} exceeds the supported maximum {MAX_ORDER}")
    if any(len(row) != n for row in table):
        raise GroupTableError("table is not square")
    t = np.asarray(table, dtype=np.int64)
    if t.min() < 0 or t.max() >= n:
        raise GroupTableError("table entries out of range")
    target = np.arange(n)
    if not all((np.sort(t[i]) == target).all() for i in range(n)) or not all(
        (np.sort(t[:, j]) == target).all() for j in range(n)
    ):
        raise GroupTableError("table is not a Latin square")
    ids = [e for e in range(n) if (t[e] == target).all() and (t[:, e] == target).all()]
    if not ids:
        raise GroupTableError("no identity element")
    if n <= ASSOCIATIVITY_FULL_CHECK:
        # (ab)c vs a(bc) over every triple at once
        left = t[t, :]
        right = t[:, t]
        if not (left == right).all():
            a, b, c = map(int, np.argwhere(left != right)[0])
            raise GroupTableError(f"associativity fails at ({a}, {b}, {c})")
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, ASSOCIATIVITY_SPOT_CHECKS))
        bad = t[t[a, b], c] != t[a, t[b, c]]
        if bad.any():
            i = int(np.argmax(bad))
            raise GroupTableError(f"associativity fails at ({a[i]}, {b[i]}, {c[i]})")
    return tuple(tuple(int(x) for x in row) for row in t), ids[0]


def from_cayley_table(table: Sequence[Sequence[int]], name: str = "table") -> FiniteGroup:
    rows, e = _validate(table)
    return FiniteGroup(rows, e, name)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupTableError("cyclic group order must be positive")
    rows = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return FiniteGroup(rows, 0, f"Z{n}", {"n": n})


def abelian_group(factors: Sequence[int]) -> FiniteGroup:
    """Direct product of cyclic groups, elements indexed lexicographically by coordinate tuple."""
    factors = list(factors)
    if any(f < 2 for f in factors):
        raise GroupTableError(f"cyclic factors must be at least 2, got {factors}")
    elements = list(itertools.product(*(range(f) for f in factors)))
    index = {x: i for i, x in enumerate(elements)}
    rows = tuple(
        tuple(index[tuple((xa + xb) % f for xa, xb, f in zip(a, b, factors))] for b in elements)
        for a in elements
    )
    name = "x".join(f"Z{f}" for f in factors) or "trivial"
    return FiniteGroup(rows, 0, name, {"factors": factors})


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def semidirect_pq(p: int, q: int, t: int | None = None) -> FiniteGroup:
    """Non-abelian group Z_q x| Z_p of order pq (requires p | q-1).

    Elements ``(a, b)`` with a in Z_q, b in Z_p are indexed ``a*p + b`` and
    multiply as ``(a, b)(c, d) = (a + t^b c, b + d)``. ``t`` must have
    multiplicative order p modulo q; the default is the smallest such t > 1.
    """
    if not (is_prime(p) and is_prime(q)):
        raise GroupTableError(f"p={p} and q={q} must both be prime")
    if (q - 1) % p:
        raise GroupTableError(f"p={p} does not divide q-1={q - 1}")
    if t is None:
        t = next(x for x in range(2, q) if pow(x, p, q) == 1)
    elif t % q in (0, 1) or pow(t, p, q) != 1:
        raise GroupTableError(f"t={t} does not have multiplicative order {p} mod {q}")
    t %= q
    twist = [pow(t, b, q) for b in range(p)]
    n = p * q
    rows = []
    for x in range(n):
        a, b = divmod(x, p)
        rows.append(tuple(((a + twist[b] * c) % q) * p + (b + d) % p for c, d in (divmod(y, p) for y in range(n))))
    table, e = _validate(rows)
    return FiniteGroup(table, e, f"Z{q}:Z{p}", {"p": p, "q": q, "t": t})


def element_order(h: FiniteGroup, x: int) -> int:
    k, y = 1, x
    while y != h.identity:
        y = h.table[y][x]
        k += 1
    return k


def cyclic_subgroup(h: FiniteGroup, x: int) -> frozenset[int]:
    members = {x}
    y = x
    while y != h.identity:
        y = h.table[y][x]
        members.add(y)
    return frozenset(members)


def power_graph(h: FiniteGroup) -> Graph:
    """x ~ y (x != y) iff one is a positive power of the other."""
    subgroups = [cyclic_subgroup(h, x) for x in range(h.order)]
    edges = [
        (x, y)
        for x in range(h.order)
        for y in range(x + 1, h.order)
        if x in subgroups[y] or y in subgroups[x]
    ]
    return Graph(h.order, tuple(edges))


def euler_totient(n: int) -> int:
    if n < 1:
        raise ValueError("totient is defined for positive integers")
    result, m, d = n, n, 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


def parse_group(spec: str) -> FiniteGroup:
    """Group from a spec string: ``cyclic:12``, ``abelian:2,2,4``,
    ``semidirect:p=2,q=3[,t=..]`` or ``table:path.json``."""
    kind, _, arg = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "cyclic":
        return cyclic_group(int(arg))
    if kind == "abelian":
        return abelian_group([int(x) for x in arg.split(",") if x.strip()])
    if kind == "semidirect":
        kw = {}
        for item in arg.split(","):
            key, _, val = item.partition("=")
            kw[key.strip()] = int(val)
        if "p" not in kw or "q" not in kw:
            raise GroupTableError(f"semidirect spec needs p= and q=, got {arg!r}")
        return semidirect_pq(kw["p"], kw["q"], kw.get("t"))
    if kind == "table":
        with open(arg) as fh:
            return from_cayley_table(json.load(fh), name=arg)
    raise ValueError(f"unknown group spec {spec!r}")


def order_census(h: FiniteGroup) -> dict[int, int]:
    census: dict[int, int] = {}
    for x in range(h.order):
        k = element_order(h, x)
        census[k] = census.get(k, 0) + 1
    return dict(sorted(census.items()))

