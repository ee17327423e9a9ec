"""Total k-cut and k-cut complexes of graphs.

A face is a vertex bitmask ``sigma``; it belongs to the complex iff its
complement contains a *witness*: an independent k-set (total cut) or a k-set
inducing a disconnected subgraph (cut).  Faces are generated on demand and
never stored globally, except through :func:`face_table`, a dense indicator
over all ``2**n`` masks used by the Morse engine for small graphs.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from .graphs import (
    Graph,
    disconnected_k_sets,
    independent_k_sets,
    is_complete_on,
    is_connected_on,
    members,
    vset,
)

TOTAL = "total"
CUT = "cut"
KINDS = (TOTAL, CUT)

# Above this many vertices the dense 2**n face table is never built.
DENSE_LIMIT = 24


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class ComplexSpec:
    graph: Graph
    kind: str
    k: int

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ComplexError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.k < 1:
            raise ComplexError(f"k must be >= 1, got {self.k}")
        if self.kind == CUT and self.k < 2:
            raise ComplexError("the k-cut complex needs k >= 2")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def top_dim(self) -> int:
        """Dimension of every facet (the complex is pure), ``n - k - 1``."""
        return self.n - self.k - 1

    def witnesses(self) -> tuple[int, ...]:
        return _witnesses(self)

    def is_void(self) -> bool:
        return not self.witnesses()

    def label(self) -> str:
        name = "total_cut" if self.kind == TOTAL else "cut"
        return f"{name}(k={self.k}, n={self.n})"


@lru_cache(maxsize=256)
def _witnesses(spec: ComplexSpec) -> tuple[int, ...]:
    if spec.k > spec.n:
        return ()
    if spec.kind == TOTAL:
        return tuple(sorted(independent_k_sets(spec.graph, spec.k)))
    return tuple(sorted(disconnected_k_sets(spec.graph, spec.k)))


@dataclass(frozen=True)
class FVector:
    """Face counts; ``counts[i]`` is the number of faces of dimension ``i - 1``."""

    counts: tuple[int, ...] = ()
    void: bool = True

    def f(self, d: int) -> int:
        i = d + 1
        return self.counts[i] if 0 <= i < len(self.counts) else 0

    @property
    def dim(self) -> int:
        return len(self.counts) - 2

    def total(self) -> int:
        return sum(self.counts)

    def as_dict(self) -> dict[int, int]:
        return {i - 1: c for i, c in enumerate(self.counts)}

    def reduced_euler(self) -> int:
        """Sum over d >= -1 of (-1)**d f_d.  Equals minus the usual reduced Euler characteristic."""
        return sum((-1) ** (i - 1) * c for i, c in enumerate(self.counts))


# -- membership -------------------------------------------------------------


def _has_independent(adj: tuple[int, ...], s: int, k: int) -> bool:
    if k <= 0:
        return True
    size = s.bit_count()
    if size < k:
        return False
    if k == 1:
        return True
    if k == 2:
        return not _clique(adj, s)
    low = s & -s
    v = low.bit_length() - 1
    rest = s ^ low
    # v has no non-neighbour in s: it never helps an independent set
    if not rest & ~adj[v]:
        return _has_independent(adj, rest, k)
    return _has_independent(adj, rest & ~adj[v], k - 1) or _has_independent(adj, rest, k)


def _clique(adj: tuple[int, ...], s: int) -> bool:
    rest = s
    while rest:
        low = rest & -rest
        rest ^= low
        if rest & ~adj[low.bit_length() - 1]:
            return False
    return True


def _has_disconnected(g: Graph, s: int, k: int) -> bool:
    if s.bit_count() < k:
        return False
    if not is_connected_on(g, s):
        return True
    adj = g.adj
    # G[s] connected: look for a connected A with |A| < k whose non-neighbours
    # in s leave room for the other k - |A| vertices.
    seen: set[int] = set()
    stack = [1 << v for v in members(s)]
    while stack:
        a = stack.pop()
        if a in seen:
            continue
        seen.add(a)
        size = a.bit_count()
        closed = a
        for v in members(a):
            closed |= adj[v]
        outside = s & ~closed
        if outside.bit_count() >= k - size:
            return True
        if size + 1 < k:
            nbrs = s & closed & ~a
            while nbrs:
                low = nbrs & -nbrs
                nbrs ^= low
                stack.append(a | low)
    return False


def complement_has_witness(spec: ComplexSpec, tau: int) -> bool:
    if spec.kind == TOTAL:
        return _has_independent(spec.graph.adj, tau, spec.k)
    return _has_disconnected(spec.graph, tau, spec.k)


def is_face(spec: ComplexSpec, sigma: int) -> bool:
    """Membership test: the complement of ``sigma`` contains a witness k-set."""
    tau = spec.graph.full & ~sigma
    if spec.kind == TOTAL and spec.k == 2:
        return tau.bit_count() >= 2 and not is_complete_on(spec.graph, tau)
    return complement_has_witness(spec, tau)


def facets(spec: ComplexSpec) -> list[int]:
    """Complements of the witnesses, in lexicographic order of sorted vertex lists."""
    full = spec.graph.full
    return sorted((full ^ w for w in spec.witnesses()), key=lex_key)


def lex_key(mask: int) -> list[int]:
    return members(mask)


# -- enumeration ------------------------------------------------------------


def face_table(spec: ComplexSpec) -> np.ndarray:
    """Boolean array ``t`` of length ``2**n`` with ``t[sigma]`` iff sigma is a face."""
    return _face_table(spec)


@lru_cache(maxsize=16)
def _face_table(spec: ComplexSpec) -> np.ndarray:
    n = spec.n
    if n > DENSE_LIMIT:
        raise ComplexError(f"dense face table refused for n={n} > {DENSE_LIMIT}")
    size = 1 << n
    # contains[tau]: tau contains some witness; superset closure one bit at a time
    contains = np.zeros(size, dtype=bool)
    w = np.fromiter(spec.witnesses(), dtype=np.int64)
    if w.size:
        contains[w] = True
    for b in range(n):
        view = contains.reshape(-1, 2, 1 << b)
        view[:, 1, :] |= view[:, 0, :]
    table = contains[::-1].copy()
    table.flags.writeable = False
    return table


def _lex_sorted(masks: np.ndarray, n: int) -> np.ndarray:
    """Sort equal-size masks lexicographically by their sorted vertex lists."""
    if masks.size == 0:
        return masks
    rev = np.zeros_like(masks)
    for v in range(n):
        rev |= ((masks >> v) & 1) << (n - 1 - v)
    return masks[np.argsort(-rev, kind="stable")]


@lru_cache(maxsize=1)
def _popcounts(n: int) -> np.ndarray:
    pc = np.zeros(1 << n, dtype=np.int8)
    for b in range(n):
        view = pc.reshape(-1, 2, 1 << b)
        view[:, 1, :] += 1
    return pc


def face_masks(spec: ComplexSpec, d: int) -> list[int]:
    """All d-faces as bitmasks, in lexicographic order of sorted vertex lists."""
    n = spec.n
    if spec.is_void() or d < -1 or d > spec.top_dim:
        return []
    if n <= DENSE_LIMIT:
        table = face_table(spec)
        idx = np.flatnonzero(table & (_popcounts(n) == d + 1)).astype(np.int64)
        return _lex_sorted(idx, n).tolist()
    return [s for s in (vset(c) for c in combinations(range(n), d + 1)) if is_face(spec, s)]


def faces_of_dim(spec: ComplexSpec, d: int) -> Iterator[int]:
    """Yield every d-face, lexicographically ordered; the void complex yields nothing."""
    n = spec.n
    if spec.is_void() or d < -1 or d > spec.top_dim:
        return
    if n <= DENSE_LIMIT:
        yield from face_masks(spec, d)
        return
    for c in combinations(range(n), d + 1):
        s = vset(c)
        if is_face(spec, s):
            yield s


def count_faces(spec: ComplexSpec, d: int) -> int:
    if spec.is_void() or d < -1 or d > spec.top_dim:
        return 0
    if spec.n <= DENSE_LIMIT:
        return int(np.count_nonzero(face_table(spec) & (_popcounts(spec.n) == d + 1)))
    return sum(1 for _ in faces_of_dim(spec, d))


def f_vector(spec: ComplexSpec, budget: int | None = None) -> FVector:
    """Face counts per dimension.  ``budget`` bounds the subsets scanned in sparse mode."""
    if spec.is_void():
        return FVector()
    n = spec.n
    if n <= DENSE_LIMIT:
        table = face_table(spec)
        counts = np.bincount(_popcounts(n)[table], minlength=spec.top_dim + 2)
        return FVector(tuple(int(c) for c in counts[: spec.top_dim + 2]), void=False)
    scanned = sum(comb(n, d + 1) for d in range(-1, spec.top_dim + 1))
    if budget is not None and scanned > budget:
        raise ComplexError(f"f-vector needs {scanned} subset tests, above budget {budget}")
    return FVector(tuple(count_faces(spec, d) for d in range(-1, spec.top_dim + 1)), void=False)


def total_cut(g: Graph, k: int) -> ComplexSpec:
    return ComplexSpec(g, TOTAL, k)


def cut(g: Graph, k: int) -> ComplexSpec:
    return ComplexSpec(g, CUT, k)


def f_vector_of_facets(facet_masks: Iterable[int]) -> FVector:
    """f-vector of the downward closure of an explicit facet list (no graph needed)."""
    faces: set[int] = set()
    for facet in facet_masks:
        sub = facet
        while True:  # every submask of the facet, including 0
            faces.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & facet
    if not faces:
        return FVector()
    top = max(s.bit_count() for s in faces)
    counts = [0] * (top + 1)
    for s in faces:
        counts[s.bit_count()] += 1
    return FVector(tuple(counts), void=False)
