"""Interaction graph of the oscillator network.

The graph is stored as a symmetric coupling matrix ``a`` (units 1/s).  The
incidence form (``B``, ``W``) orients every edge from the smaller node index
(+1) to the larger one (-1) and orders edges lexicographically, so the
weighted Laplacian ``L = B W B^T`` is reproducible bit for bit.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

FloatArray = NDArray[np.float64]

_SYMMETRY_ATOL = 1e-12


def _frozen(x: np.ndarray) -> np.ndarray:
    x.setflags(write=False)
    return x


@dataclass(frozen=True)
class CouplingGraph:
    """Symmetric, non-negative local coupling strengths among ``n`` nodes."""

    a: FloatArray

    def __post_init__(self) -> None:
        a = np.array(self.a, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError(f"coupling matrix must be square n x n with n >= 1, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("coupling matrix contains non-finite entries")
        if np.any(a < 0):
            raise ValueError("coupling strengths must be non-negative")
        if np.any(np.diag(a) != 0):
            raise ValueError("coupling matrix must have a zero diagonal (no self-loops)")
        if not np.allclose(a, a.T, rtol=0.0, atol=_SYMMETRY_ATOL):
            raise ValueError("coupling matrix must be symmetric (a_ij == a_ji)")
        a = 0.5 * (a + a.T)
        object.__setattr__(self, "a", _frozen(a))

    @property
    def n(self) -> int:
        return int(self.a.shape[0])

    def scaled(self, factor: float) -> "CouplingGraph":
        return CouplingGraph(self.a * float(factor))

    def degrees(self) -> FloatArray:
        """Weighted degree sum_{j != i} a_ij of every node."""
        return self.a.sum(axis=1)


@dataclass(frozen=True)
class PacemakerCoupling:
    """Per-node pacemaker strengths g_i >= 0 (1/s)."""

    g: FloatArray

    def __post_init__(self) -> None:
        g = np.array(self.g, dtype=np.float64).reshape(-1)
        if g.size < 1:
            raise ValueError("pacemaker strengths must be a non-empty vector")
        if not np.all(np.isfinite(g)) or np.any(g < 0):
            raise ValueError("pacemaker strengths must be finite and non-negative")
        object.__setattr__(self, "g", _frozen(g))

    @property
    def n(self) -> int:
        return int(self.g.size)

    @property
    def g_min(self) -> float:
        return float(self.g.min())

    @property
    def g_max(self) -> float:
        return float(self.g.max())

    def scaled(self, factor: float) -> "PacemakerCoupling":
        return PacemakerCoupling(self.g * float(factor))


@dataclass(frozen=True)
class IncidenceRepresentation:
    """Signed incidence matrix ``b`` (n x m), edge weights ``w`` and edge list."""

    b: FloatArray
    w: FloatArray
    edges: tuple[tuple[int, int], ...] = field(default=())

    @property
    def n(self) -> int:
        return int(self.b.shape[0])

    @property
    def m(self) -> int:
        return int(self.b.shape[1])


def build_incidence(graph: CouplingGraph) -> IncidenceRepresentation:
    """Incidence form of ``graph``: one column per pair i < j with a_ij > 0.

    Column k carries +1 at row i and -1 at row j; ``w[k] = a_ij``.
    """
    n = graph.n
    rows, cols = np.nonzero(np.triu(graph.a, k=1) > 0)
    edges = tuple((int(i), int(j)) for i, j in zip(rows, cols))  # row-major order == lexicographic
    m = len(edges)
    b = np.zeros((n, m))
    w = np.empty(m)
    for k, (i, j) in enumerate(edges):
        b[i, k] = 1.0
        b[j, k] = -1.0
        w[k] = graph.a[i, j]
    return IncidenceRepresentation(b=_frozen(b), w=_frozen(w), edges=edges)


def laplacian(inc: IncidenceRepresentation) -> FloatArray:
    """Weighted Laplacian ``B W B^T``."""
    L = (inc.b * inc.w) @ inc.b.T
    return 0.5 * (L + L.T)


def laplacian_from_coupling(a: FloatArray) -> FloatArray:
    """Laplacian assembled entrywise: -a_ij off the diagonal, row sums on it."""
    a = np.asarray(a, dtype=np.float64)
    return np.diag(a.sum(axis=1)) - a


def is_connected(graph: CouplingGraph) -> bool:
    """Breadth-first reachability over edges with a_ij > 0."""
    n = graph.n
    if n == 1:
        return True
    adj = graph.a > 0
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in np.flatnonzero(adj[i] & ~seen):
            seen[j] = True
            queue.append(int(j))
    return bool(seen.all())


def random_uniform_coupling(
    n: int,
    lo: float,
    hi: float,
    rng: np.random.Generator,
    max_tries: int = 1000,
) -> CouplingGraph:
    """Draw a_ij ~ U[lo, hi] for every pair i < j, resampling until connected."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not (0 <= lo <= hi):
        raise ValueError(f"invalid coupling interval [{lo}, {hi}]")
    iu = np.triu_indices(n, k=1)
    for _ in range(max_tries):
        a = np.zeros((n, n))
        a[iu] = rng.uniform(lo, hi, size=iu[0].size)
        a = a + a.T
        graph = CouplingGraph(a)
        if is_connected(graph):
            return graph
    raise RuntimeError(f"no connected graph after {max_tries} draws from U[{lo}, {hi}]")
