"""Simple undirected graphs with adjacency stored as per-vertex bitmasks.

A vertex set over a graph on ``n`` vertices is a plain ``int`` whose bit ``v``
is set iff ``v`` is a member.  Every other module uses this encoding for
faces, complements and witnesses.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from itertools import combinations

MAX_VERTICES = 128


class GraphError(ValueError):
    """Invalid graph parameters or malformed graph input."""


def vset(vertices: Iterable[int]) -> int:
    """Bitmask of an iterable of vertex indices."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: int) -> list[int]:
    """Sorted vertex indices of a bitmask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def iter_members(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Graph on vertices ``0..n-1``; ``adj[v]`` is the neighbour bitmask of ``v``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count must be in [0, {MAX_VERTICES}], got {self.n}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency list length does not match n")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise GraphError(f"vertex {v} has a neighbour index >= n")
            if nb >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            for u in iter_members(nb):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_members(self.adj[u]) if u < v]

    def num_edges(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    def complement(self) -> Graph:
        full = self.full
        return Graph(self.n, tuple(full & ~nb & ~(1 << v) for v, nb in enumerate(self.adj)))


# -- families ---------------------------------------------------------------


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"complete graph needs n >= 1, got {n}")
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"path graph needs n >= 1, got {n}")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle graph needs n >= 3, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def cycle_power(n: int, p: int) -> Graph:
    """p-th power of the n-cycle: i ~ j iff their circular distance is in [1, p]."""
    if n < 3:
        raise GraphError(f"cycle power needs n >= 3, got {n}")
    if p < 1:
        raise GraphError(f"cycle power needs p >= 1, got {p}")
    return Graph.from_edges(
        n, ((i, (i + j) % n) for i in range(n) for j in range(1, p + 1) if (i + j) % n != i)
    )


def circulant(n: int, shifts: Iterable[int]) -> Graph:
    """Cayley graph of Z_n: u ~ v iff (u - v) mod n lies in S or -S."""
    if n < 2:
        raise GraphError(f"circulant graph needs n >= 2, got {n}")
    shifts = sorted(set(shifts))
    if not shifts:
        raise GraphError("circulant graph needs a nonempty shift set")
    for s in shifts:
        if not 1 <= s <= n - 1:
            raise GraphError(f"shift {s} outside [1, {n - 1}]")
    return Graph.from_edges(n, ((i, (i + s) % n) for i in range(n) for s in shifts))


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """G □ H with vertex (i, j) flattened to ``i * h.n + j``."""
    w = h.n
    if g.n * w > MAX_VERTICES:
        raise GraphError(f"product has {g.n * w} vertices, above the {MAX_VERTICES} cap")
    edges = []
    for i in range(g.n):
        for j1, j2 in h.edges():
            edges.append((i * w + j1, i * w + j2))
    for i1, i2 in g.edges():
        for j in range(w):
            edges.append((i1 * w + j, i2 * w + j))
    return Graph.from_edges(g.n * w, edges)


def product_vertex(i: int, j: int, width: int) -> int:
    return i * width + j


def product_label(v: int, width: int) -> str:
    """Human label ``"i.j"`` for a flattened product vertex."""
    return f"{v // width}.{v % width}"


# -- induced-subgraph predicates --------------------------------------------


def is_complete_on(g: Graph, s: int) -> bool:
    """True iff every pair of distinct vertices of ``s`` is adjacent (vacuous for |s| <= 1)."""
    adj = g.adj
    rest = s
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        if rest & ~adj[v]:
            return False
    return True


def is_connected_on(g: Graph, s: int) -> bool:
    """True iff G[s] is connected.  The empty set counts as connected."""
    if not s:
        return True
    adj = g.adj
    seen = s & -s
    frontier = seen
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        new = adj[low.bit_length() - 1] & s & ~seen
        seen |= new
        frontier |= new
    return seen == s


def component_of(g: Graph, s: int, v: int) -> int:
    """Vertex set of the component of G[s] containing ``v``."""
    adj = g.adj
    seen = 1 << v
    frontier = seen
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        new = adj[low.bit_length() - 1] & s & ~seen
        seen |= new
        frontier |= new
    return seen


def independent_k_sets(g: Graph, k: int) -> Iterator[int]:
    """All independent vertex sets of size exactly ``k``, as bitmasks."""

    def extend(chosen: int, candidates: int, need: int) -> Iterator[int]:
        if need == 0:
            yield chosen
            return
        while candidates.bit_count() >= need:
            low = candidates & -candidates
            v = low.bit_length() - 1
            candidates ^= low
            yield from extend(chosen | low, candidates & ~g.adj[v], need - 1)

    yield from extend(0, g.full, k)


def disconnected_k_sets(g: Graph, k: int) -> Iterator[int]:
    """All k-subsets S with G[S] disconnected, as bitmasks."""
    for combo in combinations(range(g.n), k):
        s = vset(combo)
        if not is_connected_on(g, s):
            yield s


# -- edge-list format -------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v`` (0-indexed)."""
    lines = [(i, ln.split()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, toks) for i, toks in lines if toks and not toks[0].startswith("#")]
    if not lines:
        raise GraphError("line 1: empty edge list, expected header 'n m'")
    lineno, header = lines[0]
    try:
        n, m = (int(t) for t in header)
    except ValueError:
        raise GraphError(f"line {lineno}: expected header 'n m', got {' '.join(header)!r}") from None
    if n < 0 or n > MAX_VERTICES or m < 0:
        raise GraphError(f"line {lineno}: invalid header n={n} m={m}")
    body = lines[1:]
    if len(body) != m:
        raise GraphError(f"line {lineno}: header declares {m} edges, found {len(body)}")
    seen: set[tuple[int, int]] = set()
    edges = []
    for lineno, toks in body:
        try:
            u, v = (int(t) for t in toks)
        except ValueError:
            raise GraphError(f"line {lineno}: expected 'u v', got {' '.join(toks)!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"line {lineno}: vertex out of range in edge ({u}, {v})")
        if u == v:
            raise GraphError(f"line {lineno}: loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphError(f"line {lineno}: duplicate edge ({u}, {v})")
        seen.add(key)
        edges.append(key)
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    return "\n".join([f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"


def read_edge_list(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())
