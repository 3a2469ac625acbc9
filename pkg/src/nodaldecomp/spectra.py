"""Laplacian spectra: a cyclic Jacobi eigensolver, the exact eigenbasis of
clique-fibred complete multipartite graphs, exact eigenpair checks,
characteristic polynomials and the two join and upper-bound spectral checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .builders import Representation, from_representation, join
from .errors import BudgetExceeded, ConvergenceError
from .graph import Graph, complement, is_connected, laplacian

CLUSTER_TOL = 1e-6
CHARPOLY_MAX_N = 64

Number = Union[int, Fraction, float]


@dataclass(frozen=True)
class EigenPair:
    """Eigenvalue with eigenvector ``vector / denominator``.

    Exact pairs carry integer ``vector`` entries; numeric pairs carry floats and
    ``denominator == 1``. ``index`` is ``(r, w)`` for Z/Y vectors and
    ``(r, l, w)`` for X vectors (all 1-based), ``(k,)`` for numeric ones.
    """

    value: Number
    vector: tuple
    denominator: int = 1
    family: str = "NUMERIC"
    index: tuple = ()

    @property
    def exact(self) -> bool:
        return self.family != "NUMERIC"

    def floats(self) -> np.ndarray:
        return np.asarray(self.vector, dtype=float) / self.denominator

    def to_dict(self) -> dict:
        value = self.value if self.exact else float(self.value)
        return {
            "value": _json_number(value),
            "vector_num": [_json_number(x) for x in self.vector],
            "vector_den": self.denominator,
            "family": self.family,
            "index": list(self.index),
        }


@dataclass(frozen=True)
class Cluster:
    value: Number
    multiplicity: int


@dataclass(frozen=True)
class EigenBasis:
    pairs: tuple[EigenPair, ...]
    clusters: tuple[Cluster, ...] = field(default=())

    @property
    def values(self) -> list[Number]:
        return [p.value for p in self.pairs]

    def multiplicities(self) -> dict:
        return {c.value: c.multiplicity for c in self.clusters}

    def max_value(self) -> Number:
        return self.clusters[-1].value

    def to_dict(self) -> dict:
        clusters = []
        for c in self.clusters:
            entry = {"value": _json_number(c.value), "multiplicity": c.multiplicity}
            if isinstance(c.value, float):
                entry["rounded"] = _rounded(c.value)
            clusters.append(entry)
        return {"clusters": clusters, "basis": [p.to_dict() for p in self.pairs]}


def _json_number(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    if isinstance(x, (np.floating, float)):
        return float(x)
    return int(x)


def _rounded(x: float, digits: int = 6):
    r = round(x, digits)
    if r == int(r):
        return int(r)
    return r


# -- numeric route -------------------------------------------------------------


def jacobi_eigh(matrix, max_sweeps: int = 100, rel_tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi diagonalization of a real symmetric matrix.

    Sweeps over all (p, q) with p < q, annihilating each off-diagonal entry by a
    plane rotation, until the largest off-diagonal magnitude drops below
    ``rel_tol * ||A||_F``. Returns ascending eigenvalues and the matching
    orthonormal eigenvectors as columns.
    """
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    v = np.eye(n)
    threshold = rel_tol * np.linalg.norm(a)
    for _ in range(max_sweeps):
        off = np.abs(a - np.diag(np.diag(a)))
        if n < 2 or off.max() <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= threshold * 1e-3:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        off = np.abs(a - np.diag(np.diag(a)))
        if off.max() > threshold:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal {off.max():.3e})"
            )
    values = np.diag(a).copy()
    order = np.argsort(values, kind="stable")
    return values[order], v[:, order]


def cluster_values(values: Sequence[Number], tol: float = CLUSTER_TOL) -> list[Cluster]:
    """Merge ascending values whose consecutive gaps are within ``tol``."""
    clusters: list[list[Number]] = []
    for x in sorted(values):
        if clusters and abs(x - clusters[-1][-1]) <= tol:
            clusters[-1].append(x)
        else:
            clusters.append([x])
    out = []
    for group in clusters:
        if all(isinstance(x, (int, Fraction)) for x in group):
            out.append(Cluster(group[0], len(group)))
        else:
            out.append(Cluster(_snap_integer(float(sum(group)) / len(group)), len(group)))
    return out


def _snap_integer(x: float, rel: float = 1e-9) -> float:
    # a rational Laplacian eigenvalue is an integer, so integer-close means integer
    r = round(x)
    return float(r) if abs(x - r) <= rel * max(1.0, abs(x)) else x + 0.0


def _orient(vec: np.ndarray) -> np.ndarray:
    scale = np.abs(vec).max()
    for x in vec:
        if abs(x) > 1e-9 * scale:
            return vec if x > 0 else -vec
    return vec


def eigen_decompose(g: Graph, tol: float = 1e-8, max_sweeps: int = 100) -> EigenBasis:
    """Numeric Laplacian eigenbasis of ``g`` (unit vectors, first nonzero entry positive)."""
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    if tol <= 0:
        raise ValueError("tol must be positive")
    lap = np.array(laplacian(g), dtype=float)
    values, vectors = jacobi_eigh(lap, max_sweeps=max_sweeps)
    pairs = []
    for k in range(g.n):
        vec = _orient(vectors[:, k])
        lam = float(values[k])
        residual = np.abs(lap @ vec - lam * vec).max()
        if residual >= tol:
            raise ConvergenceError(f"eigenpair {k} residual {residual:.3e} exceeds tol {tol:g}")
        pairs.append(EigenPair(lam, tuple(float(x) for x in vec), 1, "NUMERIC", (k + 1,)))
    return EigenBasis(tuple(pairs), tuple(cluster_values(values.tolist())))


# -- exact route ---------------------------------------------------------------


class RepresentationError(ValueError):
    pass


def closed_form_basis(r: Representation) -> EigenBasis:
    """Exact integer-scaled eigenbasis for a representation with at least two parts.

    Emitted in order: the constant vector (eigenvalue 0); for each part r the
    n_r - 1 part-difference vectors at N - N_r (clique w of the part against the
    part's last clique); for each clique l of size p_l the p_l - 1 intra-clique
    vectors at N - N_r + p_l; the s - 1 part-against-last-part vectors at N.
    Every pair is checked exactly before it is returned.
    """
    if r.s < 2:
        raise RepresentationError(
            "closed form needs at least two parts; a single part is a disjoint union of "
            "cliques and the top eigenvalue is not N"
        )
    g = from_representation(r)
    lap = laplacian(g)
    N = r.N
    totals = r.part_totals
    sizes = r.clique_sizes
    cstart = r.clique_offsets()
    pstart = r.part_offsets()
    pairs = [EigenPair(0, (1,) * N, 1, "CONST", ())]

    first_clique = 0
    for ri, part in enumerate(r.parts):
        last = first_clique + len(part) - 1
        p_last = sizes[last]
        for w in range(1, len(part)):
            cl = first_clique + w - 1
            vec = [0] * N
            for q in range(cstart[cl], cstart[cl + 1]):
                vec[q] = p_last
            for q in range(cstart[last], cstart[last + 1]):
                vec[q] = -sizes[cl]
            pairs.append(EigenPair(N - totals[ri], tuple(vec), 1, "Z", (ri + 1, w)))
        first_clique = last + 1

    first_clique = 0
    for ri, part in enumerate(r.parts):
        for li in range(len(part)):
            cl = first_clique + li
            end = cstart[cl + 1] - 1
            for w in range(1, sizes[cl]):
                vec = [0] * N
                vec[end - w] = 1
                vec[end] = -1
                pairs.append(EigenPair(N - totals[ri] + sizes[cl], tuple(vec), 1, "X", (ri + 1, li + 1, w)))
        first_clique += len(part)

    last_total = totals[-1]
    for w in range(r.s - 1):
        vec = [0] * N
        for q in range(pstart[w], pstart[w + 1]):
            vec[q] = last_total
        for q in range(pstart[-2], pstart[-1]):
            vec[q] = -totals[w]
        pairs.append(EigenPair(N, tuple(vec), 1, "Y", (w + 1,)))

    if len(pairs) != N:
        raise AssertionError(f"closed form produced {len(pairs)} vectors for N={N}")
    for pair in pairs:
        if not _exact_check(lap, pair.vector, pair.value):
            raise AssertionError(f"closed-form pair {pair.family}{pair.index} failed exact verification")
    values = sorted(p.value for p in pairs)
    clusters = []
    for x in values:
        if clusters and clusters[-1][0] == x:
            clusters[-1][1] += 1
        else:
            clusters.append([x, 1])
    return EigenBasis(tuple(pairs), tuple(Cluster(v, m) for v, m in clusters))


def _exact_check(lap, vec, value) -> bool:
    n = len(vec)
    for i in range(n):
        row = lap[i]
        if sum(row[j] * vec[j] for j in range(n) if row[j]) != value * vec[i]:
            return False
    return True


def _clear_denominators(vector: Sequence) -> list[int]:
    fracs = [Fraction(x) for x in vector]
    den = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
    return [int(f * den) for f in fracs]


def verify_eigenpair_exact(g: Graph, vector: Sequence, value) -> bool:
    """True iff ``L(g) vector == value * vector`` in exact rational arithmetic.

    ``vector`` entries may be ints, Fractions or decimal strings like ``"1/3"``.
    """
    if len(vector) != g.n:
        raise ValueError(f"vector has length {len(vector)}, graph has {g.n} vertices")
    ints = _clear_denominators(vector)
    return _exact_check(laplacian(g), ints, Fraction(value))


def exact_rank(vectors: Sequence[Sequence]) -> int:
    """Rank over the rationals by Gaussian elimination on Fractions."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                factor = rows[i][col] / pr[col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], pr)]
        rank += 1
        if rank == len(rows):
            break
    return rank


# -- characteristic polynomials ----------------------------------------------------
# Polynomials are lists of integer coefficients, lowest degree first.


def characteristic_polynomial(g: Graph, max_n: int = CHARPOLY_MAX_N) -> list[int]:
    """det(xI - L(g)) by the Faddeev-LeVerrier recurrence in exact integers.

    M_0 = 0, c_n = 1; M_k = L M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(L M_k) / k.
    The division is exact for integer matrices. Products with L use the
    sparse form ``(L M)_i = deg(i) M_i - sum_{j ~ i} M_j``.
    """
    n = g.n
    if n > max_n:
        raise BudgetExceeded(f"characteristic polynomial limited to n <= {max_n}, got {n}", n, max_n)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    deg = g.degrees()
    adj = g.adjacency
    m = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = L M_{k-1} + c_{n-k+1} I
        lm = []
        for i in range(n):
            row = [deg[i] * x for x in m[i]]
            for j in adj[i]:
                mj = m[j]
                row = [a - b for a, b in zip(row, mj)]
            lm.append(row)
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            lm[i][i] += c_prev
        m = lm
        # tr(L M_k)
        trace = 0
        for i in range(n):
            trace += deg[i] * m[i][i] - sum(m[j][i] for j in adj[i])
        q, rem = divmod(-trace, k)
        if rem:
            raise AssertionError("Faddeev-LeVerrier division was not exact")
        coeffs[n - k] = q
    return coeffs


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_shift(p: Sequence[int], c: int) -> list[int]:
    """Coefficients of ``p(x + c)`` (Horner with a linear factor)."""
    out = [0]
    for coef in reversed(p):
        out = poly_mul(out, [c, 1])
        out[0] += coef
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def poly_eval(p: Sequence[int], x):
    acc = 0
    for coef in reversed(p):
        acc = acc * x + coef
    return acc


@dataclass(frozen=True)
class JoinIdentityReport:
    n1: int
    n2: int
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {"n1": self.n1, "n2": self.n2, "lhs": list(self.lhs), "rhs": list(self.rhs), "holds": self.holds}


def join_spectrum_identity_check(a: Graph, b: Graph) -> JoinIdentityReport:
    """Check Theta(a+b, x)(x-n1)(x-n2) == x(x-n1-n2) Theta(a, x-n2) Theta(b, x-n1)."""
    n1, n2 = a.n, b.n
    lhs = poly_mul(characteristic_polynomial(join(a, b)), poly_mul([-n1, 1], [-n2, 1]))
    rhs = poly_mul(
        poly_mul([0, 1], [-(n1 + n2), 1]),
        poly_mul(poly_shift(characteristic_polynomial(a), -n2), poly_shift(characteristic_polynomial(b), -n1)),
    )
    return JoinIdentityReport(n1, n2, tuple(lhs), tuple(rhs))


@dataclass(frozen=True)
class MoharReport:
    lambda_max: float
    n: int
    complement_connected: bool
    bound_holds: bool
    equality_consistent: bool

    @property
    def holds(self) -> bool:
        return self.bound_holds and self.equality_consistent

    def to_dict(self) -> dict:
        return {
            "lambda_max": self.lambda_max,
            "n": self.n,
            "complementConnected": self.complement_connected,
            "boundHolds": self.bound_holds,
            "equalityConsistent": self.equality_consistent,
        }


def mohar_bound_check(g: Graph, tol: float = 1e-8, eq_tol: float = CLUSTER_TOL) -> MoharReport:
    """lambda_max <= n, with equality exactly when the complement is disconnected."""
    lam = float(eigen_decompose(g, tol=max(tol, 1e-8)).pairs[-1].value) if g.n else 0.0
    comp_connected = is_connected(complement(g))
    at_n = abs(lam - g.n) < eq_tol
    return MoharReport(lam, g.n, comp_connected, lam <= g.n + tol, at_n == (not comp_connected))
