"""Sequential element matchings on a cut complex and their certification.

The filtration is run over a dense face table indexed by vertex bitmask: at
stage ``i`` every pair ``(sigma - x_i, sigma + x_i)`` with both members still
unmatched is matched, and the survivors form the next pool.  Acyclicity is
checked directly, by searching the modified Hasse diagram for
directed cycles.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .complexes import ComplexSpec, face_table, lex_key
from .graphs import members

MORSE_VERTEX_LIMIT = 20


class MorseError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class MorseData:
    spec: ComplexSpec
    order: tuple[int, ...]
    lower: np.ndarray  # matched pair bottoms, bitmasks
    upper: np.ndarray  # matched pair tops
    stage: np.ndarray  # index into ``order`` of the stage that matched the pair
    critical: tuple[int, ...]
    filtration_sizes: tuple[int, ...]

    @property
    def num_faces(self) -> int:
        return self.filtration_sizes[0]

    @property
    def num_pairs(self) -> int:
        return int(self.lower.size)

    def pairs(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(lower, upper, stage)`` triples."""
        for lo, up, st in zip(self.lower.tolist(), self.upper.tolist(), self.stage.tolist()):
            yield lo, up, st

    def critical_by_dim(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for s in self.critical:
            out.setdefault(s.bit_count() - 1, []).append(s)
        return out

    def critical_counts(self) -> dict[int, int]:
        return {d: len(v) for d, v in sorted(self.critical_by_dim().items())}

    def empty_matched(self) -> bool:
        return 0 not in self.critical and bool(self.num_faces)


def _sorted_faces(masks: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(masks, key=lambda s: (s.bit_count(), lex_key(s))))


def canonical_order(spec: ComplexSpec) -> list[int]:
    return list(range(spec.n))


def run_element_matchings(spec: ComplexSpec, order: Sequence[int] | None = None) -> MorseData:
    """Run the element matchings along ``order`` (default: all vertices ascending)."""
    n = spec.n
    order = tuple(canonical_order(spec) if order is None else order)
    if len(set(order)) != len(order):
        raise MorseError(f"matching order has repeated vertices: {list(order)}")
    for x in order:
        if not 0 <= x < n:
            raise MorseError(f"matching vertex {x} out of range for n={n}")
    if spec.is_void():
        raise MorseError("the complex is void; nothing to match")
    if n > MORSE_VERTEX_LIMIT:
        raise MorseError(f"Morse runs are limited to {MORSE_VERTEX_LIMIT} vertices, got {n}")

    alive = face_table(spec).copy()
    ids = np.arange(1 << n, dtype=np.int64)
    sizes = [int(np.count_nonzero(alive))]
    lowers, uppers, stages = [], [], []
    for i, x in enumerate(order):
        bit = 1 << x
        bottoms = ids[(ids & bit) == 0]
        tops = bottoms | bit
        hit = alive[bottoms] & alive[tops]
        lo = bottoms[hit]
        up = tops[hit]
        alive[lo] = False
        alive[up] = False
        lowers.append(lo)
        uppers.append(up)
        stages.append(np.full(lo.size, i, dtype=np.int32))
        sizes.append(sizes[-1] - 2 * int(lo.size))
    critical = _sorted_faces(np.flatnonzero(alive).tolist())
    return MorseData(
        spec=spec,
        order=order,
        lower=np.concatenate(lowers) if lowers else np.zeros(0, dtype=np.int64),
        upper=np.concatenate(uppers) if uppers else np.zeros(0, dtype=np.int64),
        stage=np.concatenate(stages) if stages else np.zeros(0, dtype=np.int32),
        critical=critical,
        filtration_sizes=tuple(sizes),
    )


def matching_from_pairs(
    spec: ComplexSpec, pairs: Iterable[tuple[int, int]], order: Sequence[int] = ()
) -> MorseData:
    """Wrap an arbitrary list of ``(lower, upper)`` pairs, e.g. a hand-built matching."""
    pairs = list(pairs)
    matched = {s for pr in pairs for s in pr}
    if spec.n <= MORSE_VERTEX_LIMIT:
        faces = np.flatnonzero(face_table(spec)).tolist()
    else:
        raise MorseError(f"Morse data is limited to {MORSE_VERTEX_LIMIT} vertices")
    critical = _sorted_faces(s for s in faces if s not in matched)
    stage_of = {x: i for i, x in enumerate(order)}
    stage = [stage_of.get((up ^ lo).bit_length() - 1, -1) for lo, up in pairs]
    return MorseData(
        spec=spec,
        order=tuple(order),
        lower=np.array([lo for lo, _ in pairs], dtype=np.int64),
        upper=np.array([up for _, up in pairs], dtype=np.int64),
        stage=np.array(stage, dtype=np.int32),
        critical=critical,
        filtration_sizes=(len(faces), len(critical)),
    )


# -- acyclicity -------------------------------------------------------------


@dataclass(frozen=True)
class Acyclicity:
    ok: bool
    cycle: tuple[int, ...] = ()  # alternating faces sigma_1, tau_1, sigma_2, ... , sigma_1
    checked_pairs: int = 0

    def __bool__(self) -> bool:
        return self.ok


def _check_matching(spec: ComplexSpec, data: MorseData) -> None:
    if data.spec != spec:
        raise MorseError("Morse data was produced for a different complex")
    lo = data.lower.astype(np.int64)
    up = data.upper.astype(np.int64)
    diff = lo ^ up
    bad = np.flatnonzero(((lo & ~up) != 0) | (diff == 0) | ((diff & (diff - 1)) != 0))
    if bad.size:
        i = int(bad[0])
        raise MorseError(
            f"pair {members(int(lo[i]))} / {members(int(up[i]))} is not a codimension-one pair"
        )
    both = np.concatenate([lo, up])
    uniq, counts = np.unique(both, return_counts=True)
    if np.any(counts > 1):
        raise MorseError(f"face {members(int(uniq[counts > 1][0]))} lies in two pairs")
    table = face_table(spec)
    outside = np.flatnonzero(~(table[lo] & table[up]))
    if outside.size:
        i = int(outside[0])
        raise MorseError(f"pair {members(int(lo[i]))} / {members(int(up[i]))} leaves the complex")


def verify_acyclic(spec: ComplexSpec, data: MorseData) -> Acyclicity:
    """Search the modified Hasse diagram for a directed cycle.

    A cycle can only run through matched faces, so the search graph has one
    node per pair ``(sigma, tau)`` and an edge to every other pair whose lower
    face is a facet of ``tau``.  Each node's edges stay within one dimension
    pair, so this covers all (d, d+1) layers at once.
    """
    _check_matching(spec, data)
    n = spec.n
    lower = data.lower.astype(np.int64)
    upper = data.upper.astype(np.int64)
    count = lower.size
    if count == 0:
        return Acyclicity(True, checked_pairs=0)
    node_of = np.full(1 << n, -1, dtype=np.int64)
    node_of[lower] = np.arange(count)
    src_parts, dst_parts = [], []
    for b in range(n):
        bit = np.int64(1 << b)
        has = (upper & bit) != 0
        face = upper[has] ^ bit
        src = np.flatnonzero(has)
        keep = face != lower[has]
        face, src = face[keep], src[keep]
        dst = node_of[face]
        ok = dst >= 0
        src_parts.append(src[ok])
        dst_parts.append(dst[ok])
    src = np.concatenate(src_parts)
    dst = np.concatenate(dst_parts)
    graph = csr_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(count, count))
    ncomp, labels = connected_components(graph, directed=True, connection="strong")
    if ncomp == count:
        return Acyclicity(True, checked_pairs=count)
    big = np.bincount(labels).argmax()
    cycle_nodes = _find_cycle(graph, np.flatnonzero(labels == big))
    faces: list[int] = []
    for node in cycle_nodes:
        faces.extend([int(lower[node]), int(upper[node])])
    faces.append(int(lower[cycle_nodes[0]]))
    return Acyclicity(False, cycle=tuple(faces), checked_pairs=count)


def _find_cycle(graph: csr_matrix, component: np.ndarray) -> list[int]:
    """Iterative DFS inside one strongly connected component; returns node ids of a cycle."""
    inside = set(component.tolist())
    indptr, indices = graph.indptr, graph.indices
    start = int(component[0])
    on_path = {start: 0}
    path = [start]
    stack = [iter(indices[indptr[start]:indptr[start + 1]].tolist())]
    done: set[int] = set()
    while stack:
        advanced = False
        for nxt in stack[-1]:
            if nxt not in inside or nxt in done:
                continue
            if nxt in on_path:
                return path[on_path[nxt]:]
            on_path[nxt] = len(path)
            path.append(nxt)
            stack.append(iter(indices[indptr[nxt]:indptr[nxt + 1]].tolist()))
            advanced = True
            break
        if not advanced:
            stack.pop()
            node = path.pop()
            del on_path[node]
            done.add(node)
    raise MorseError("strong component without a cycle")


def hasse_cycle_bruteforce(spec: ComplexSpec, data: MorseData) -> bool:
    """Reference check on the full modified Hasse diagram (every face, every incidence).

    Quadratic-ish and only meant for small complexes in tests.
    """
    faces = np.flatnonzero(face_table(spec)).tolist()
    up_of = dict(zip(data.lower.tolist(), data.upper.tolist()))
    adj: dict[int, list[int]] = {s: [] for s in faces}
    face_set = set(faces)
    for tau in faces:
        for v in members(tau):
            sigma = tau ^ (1 << v)
            if sigma not in face_set:
                continue
            if up_of.get(sigma) == tau:
                adj[sigma].append(tau)
            else:
                adj[tau].append(sigma)
    color = dict.fromkeys(faces, 0)
    for root in faces:
        if color[root]:
            continue
        color[root] = 1
        stack = [(root, iter(adj[root]))]
        while stack:
            node, it = stack[-1]
            for nxt in it:
                if color[nxt] == 1:
                    return True
                if color[nxt] == 0:
                    color[nxt] = 1
                    stack.append((nxt, iter(adj[nxt])))
                    break
            else:
                color[node] = 2
                stack.pop()
    return False


# -- homotopy verdicts ------------------------------------------------------

WEDGE = "wedge"
CONTRACTIBLE = "contractible"
VOID = "void"
UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class HomotopyClaim:
    verdict: str
    count: int = 0
    dim: int | None = None

    def as_dict(self) -> dict:
        return {"verdict": self.verdict, "count": self.count, "dim": self.dim}

    def __str__(self) -> str:
        if self.verdict == WEDGE:
            return f"wedge of {self.count} S^{self.dim}"
        return self.verdict


def homotopy_claim(data: MorseData | None, acyclicity: Acyclicity | None) -> HomotopyClaim:
    """Homotopy type read off an acyclic matching (``data=None`` stands for a void complex)."""
    if data is None:
        return HomotopyClaim(VOID)
    if not isinstance(acyclicity, Acyclicity) or not acyclicity.ok:
        raise MorseError("homotopy_claim needs a passing acyclicity certificate")
    if not data.empty_matched():
        return HomotopyClaim(UNDETERMINED)
    if not data.critical:
        return HomotopyClaim(CONTRACTIBLE)
    dims = {s.bit_count() - 1 for s in data.critical}
    if len(dims) == 1:
        return HomotopyClaim(WEDGE, len(data.critical), dims.pop())
    return HomotopyClaim(UNDETERMINED)


def first_matching_diagnostics(spec: ComplexSpec, v: int) -> set[int]:
    """C_1 after matching at ``v``, computed by the filtration and by the closed criterion.

    The criterion ``sigma in C_1  <=>  sigma + v is not a face`` only uses
    downward closure, so it is checked for any complex, not just k = 2.
    """
    if spec.is_void():
        return set()
    by_filtration = set(run_element_matchings(spec, [v]).critical)
    table = face_table(spec)
    faces = np.flatnonzero(table)
    by_criterion = set(faces[~table[faces | (1 << v)]].tolist())
    if by_filtration != by_criterion:
        raise AssertionError(
            f"first matching mismatch at v={v}: "
            f"{len(by_filtration ^ by_criterion)} faces disagree"
        )
    return by_filtration


def morse_inequalities(data: MorseData, betti: dict[int, int]) -> dict[int, tuple[int, int]]:
    """Dimensions where the critical count falls below the Betti number (empty if all hold)."""
    counts = data.critical_counts()
    bad = {}
    for d, b in betti.items():
        c = counts.get(d, 0)
        if c < b:
            bad[d] = (c, b)
    return bad
