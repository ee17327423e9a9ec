"""Exact reduced simplicial homology over the integers.

Boundary matrices are built in the lexicographic face order of
:func:`cutcomplex.complexes.face_masks`; the d = 0 matrix is the augmentation
onto the empty face, so reduced Betti numbers fall out directly.

Two independent rank computations are provided:

* :func:`smith_normal_form` -- sparse unimodular elimination (unit pivots via
  Schur complements, Euclidean steps otherwise) returning rank and invariant
  factors;
* :func:`rational_rank` -- fraction-free column echelon form with primitive
  column normalisation.
"""
from __future__ import annotations

import os
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from math import comb, gcd

from .complexes import DENSE_LIMIT, ComplexSpec, f_vector, face_masks
from .graphs import members

DEFAULT_BUDGET = 1 << 20
BUDGET_ENV = "CUTCOMPLEX_BUDGET"


class BudgetExceeded(RuntimeError):
    pass


def face_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


# -- sparse matrices --------------------------------------------------------


@dataclass
class SparseIntMatrix:
    """Column-major sparse integer matrix; ``columns[c]`` maps row -> nonzero value."""

    rows: int
    cols: int
    columns: list[dict[int, int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.columns:
            self.columns = [{} for _ in range(self.cols)]
        if len(self.columns) != self.cols:
            raise ValueError("column count mismatch")

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int, int]]) -> SparseIntMatrix:
        m = cls(rows, cols)
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r}, {c}) outside a {rows}x{cols} matrix")
            if r in m.columns[c]:
                raise ValueError(f"duplicate entry ({r}, {c})")
            if v:
                m.columns[c][r] = int(v)
        return m

    @classmethod
    def from_dense(cls, dense: list[list[int]]) -> SparseIntMatrix:
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        return cls.from_entries(
            rows, cols, ((r, c, dense[r][c]) for r in range(rows) for c in range(cols) if dense[r][c])
        )

    def entries(self) -> Iterator[tuple[int, int, int]]:
        for c, col in enumerate(self.columns):
            for r in sorted(col):
                yield r, c, col[r]

    @property
    def nnz(self) -> int:
        return sum(len(col) for col in self.columns)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries():
            out[r][c] = v
        return out

    def matmul(self, other: SparseIntMatrix) -> SparseIntMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = SparseIntMatrix(self.rows, other.cols)
        for c, col in enumerate(other.columns):
            acc: dict[int, int] = {}
            for k, v in col.items():
                for r, w in self.columns[k].items():
                    acc[r] = acc.get(r, 0) + v * w
            out.columns[c] = {r: v for r, v in acc.items() if v}
        return out

    def dumps(self) -> str:
        """Text dump: header ``rows cols nnz`` then one ``r c v`` triple per line."""
        lines = [f"{self.rows} {self.cols} {self.nnz}"]
        lines += [f"{r} {c} {v}" for r, c, v in self.entries()]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> SparseIntMatrix:
        it = (ln.split() for ln in text.splitlines() if ln.strip())
        rows, cols, nnz = (int(t) for t in next(it))
        triples = [tuple(int(t) for t in parts) for parts in it]
        if len(triples) != nnz:
            raise ValueError(f"header declares {nnz} entries, found {len(triples)}")
        return cls.from_entries(rows, cols, triples)


# -- boundary matrices ------------------------------------------------------


def _boundary_from_faces(row_faces: list[int], col_faces: list[int]) -> SparseIntMatrix:
    index = {s: i for i, s in enumerate(row_faces)}
    columns = []
    for s in col_faces:
        col = {}
        sign = 1
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            col[index[s ^ low]] = sign
            sign = -sign
        columns.append(col)
    return SparseIntMatrix(len(row_faces), len(col_faces), columns)


def boundary_matrix(spec: ComplexSpec, d: int) -> SparseIntMatrix:
    """Matrix of the boundary map from d-faces to (d-1)-faces, lexicographic bases.

    Column ``[v_0 < ... < v_d]`` has ``(-1)**i`` in the row of the face missing ``v_i``.
    """
    if spec.is_void():
        raise ValueError("the void complex has no chain groups")
    if not 0 <= d <= spec.top_dim:
        raise ValueError(f"boundary dimension {d} outside [0, {spec.top_dim}]")
    return _boundary_from_faces(face_masks(spec, d - 1), face_masks(spec, d))


# -- Smith normal form ------------------------------------------------------


def _invariant_factors(diagonal: list[int]) -> list[int]:
    """Normalise a diagonal into the divisibility chain d_1 | d_2 | ... (dropping units)."""
    ds = sorted(abs(x) for x in diagonal if abs(x) != 1)
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            g = gcd(ds[i], ds[j])
            ds[i], ds[j] = g, ds[i] // g * ds[j]
    return sorted(x for x in ds if x != 1)


class _Eliminator:
    """Mutable sparse matrix supporting unimodular row and column operations."""

    def __init__(self, m: SparseIntMatrix):
        self.cols: dict[int, dict[int, int]] = {}
        self.rows: dict[int, set[int]] = {}
        for c, col in enumerate(m.columns):
            if col:
                self.cols[c] = dict(col)
                for r in col:
                    self.rows.setdefault(r, set()).add(c)
        self.diagonal: list[int] = []

    def _axpy(self, dst: int, factor: int, src: dict[int, int]) -> None:
        """Column ``dst`` -= factor * ``src``."""
        col = self.cols[dst]
        rows = self.rows
        for r, v in src.items():
            nv = col.get(r, 0) - factor * v
            if nv:
                if r not in col:
                    rows[r].add(dst)
                col[r] = nv
            elif r in col:
                del col[r]
                rows[r].discard(dst)

    def _drop(self, r: int, c: int) -> None:
        col = self.cols.pop(c)
        for r2 in col:
            if r2 != r:
                self.rows[r2].discard(c)
        for c2 in self.rows.pop(r):
            if c2 != c:
                self.cols[c2].pop(r, None)

    def eliminate_unit(self, r: int, c: int) -> None:
        """Schur complement step on a pivot of value +-1."""
        pivot = self.cols[c]
        a = pivot[r]
        for c2 in list(self.rows[r]):
            if c2 != c:
                self._axpy(c2, self.cols[c2][r] * a, pivot)
        self._drop(r, c)
        self.diagonal.append(1)

    def unit_pass(self, order: Iterable[int]) -> int:
        done = 0
        rows = self.rows
        for c in order:
            col = self.cols.get(c)
            if not col:
                continue
            best = None
            for r, v in col.items():
                if v == 1 or v == -1:
                    key = (len(rows[r]), -r)
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is not None:
                self.eliminate_unit(best[1], c)
                done += 1
        return done

    def _prune(self) -> None:
        for c in [c for c, col in self.cols.items() if not col]:
            del self.cols[c]
        for r in [r for r, cs in self.rows.items() if not cs]:
            del self.rows[r]

    def general(self) -> None:
        """Euclidean elimination for whatever the unit passes left behind."""
        self._prune()
        while self.cols:
            best = None
            for c, col in self.cols.items():
                for r, v in col.items():
                    key = (abs(v), len(col) * len(self.rows[r]))
                    if best is None or key < best[0]:
                        best = (key, r, c)
            _, r, c = best
            p = self.cols[c][r]
            if p in (1, -1):
                self.eliminate_unit(r, c)
                self._prune()
                continue
            # clear row r with column operations
            clean = True
            for c2 in list(self.rows[r]):
                if c2 == c:
                    continue
                q = self.cols[c2][r] // p
                self._axpy(c2, q, self.cols[c])
                if r in self.cols[c2]:
                    clean = False
            if clean:
                # row r is now e_c; row operations only touch column c
                col = self.cols[c]
                for r2 in list(col):
                    if r2 == r:
                        continue
                    rem = col[r2] - (col[r2] // p) * p
                    if rem:
                        col[r2] = rem
                        clean = False
                    else:
                        del col[r2]
                        self.rows[r2].discard(c)
            if clean:
                self._drop(r, c)
                self.diagonal.append(abs(p))
            self._prune()


def smith_normal_form(m: SparseIntMatrix) -> tuple[int, list[int]]:
    """Rank over Q and the nontrivial invariant factors (each > 1, dividing the next)."""
    elim = _Eliminator(m)
    order = sorted(elim.cols)
    while elim.unit_pass(order):
        order = sorted(elim.cols)
    elim.general()
    return len(elim.diagonal), _invariant_factors(elim.diagonal)


def rational_rank(m: SparseIntMatrix) -> int:
    """Rank over Q by fraction-free column reduction to echelon form."""
    pivots: dict[int, dict[int, int]] = {}
    for col in m.columns:
        col = dict(col)
        while col:
            low = max(col)
            other = pivots.get(low)
            if other is None:
                pivots[low] = col
                break
            a, b = col[low], other[low]
            g = gcd(a, b)
            a, b = a // g, b // g
            merged = {}
            for r in col.keys() | other.keys():
                v = b * col.get(r, 0) - a * other.get(r, 0)
                if v:
                    merged[r] = v
            content = 0
            for v in merged.values():
                content = gcd(content, v)
                if content == 1:
                    break
            if content > 1:
                merged = {r: v // content for r, v in merged.items()}
            col = merged
    return len(pivots)


# -- homology ---------------------------------------------------------------


@dataclass(frozen=True)
class BettiReport:
    """Reduced integral homology: ``betti[d]`` free rank, ``torsion[d]`` invariant factors."""

    betti: dict[int, int]
    torsion: dict[int, list[int]]
    dims: tuple[int, ...]
    void: bool = False
    empty_only: bool = False

    @property
    def complete(self) -> bool:
        return not self.void and bool(self.dims) and self.dims == tuple(range(-1, self.dims[-1] + 1))

    def rank(self, d: int) -> int:
        return self.betti.get(d, 0)

    def nonzero(self) -> dict[int, int]:
        return {d: b for d, b in sorted(self.betti.items()) if b}

    def has_torsion(self) -> bool:
        return any(self.torsion.values())

    def as_dict(self) -> dict:
        return {
            "void": self.void,
            "empty_only": self.empty_only,
            "computed_dims": list(self.dims),
            "dims": {
                str(d): {"rank": self.betti[d], "torsion": self.torsion.get(d, [])}
                for d in self.dims
                if self.betti[d] or self.torsion.get(d)
            },
        }


VOID_REPORT = BettiReport({}, {}, (), void=True)


def _estimated_faces(spec: ComplexSpec) -> int:
    if spec.n <= DENSE_LIMIT:
        return f_vector(spec).total()
    return sum(comb(spec.n, i) for i in range(spec.top_dim + 2))


def reduced_homology(
    spec: ComplexSpec,
    dims: Iterable[int] | None = None,
    budget: int | None = None,
    rank_method: str = "snf",
) -> BettiReport:
    """Reduced homology in every dimension, or only in ``dims``.

    Full-range computation is refused when the complex has more faces than
    ``budget`` (default: ``$CUTCOMPLEX_BUDGET`` or 2**20).
    """
    if spec.is_void():
        return VOID_REPORT
    top = spec.top_dim
    if dims is None:
        budget = face_budget() if budget is None else budget
        total = _estimated_faces(spec)
        if total > budget:
            raise BudgetExceeded(
                f"{spec.label()} has {total} faces, above the budget of {budget}; pass a dimension window"
            )
        wanted = list(range(-1, top + 1))
    else:
        wanted = sorted({d for d in dims if -1 <= d <= top})

    faces: dict[int, list[int]] = {}

    def faces_at(d: int) -> list[int]:
        if d not in faces:
            faces[d] = face_masks(spec, d)
        return faces[d]

    ranks: dict[int, tuple[int, list[int]]] = {}

    def rank_at(d: int) -> tuple[int, list[int]]:
        # boundary from d-faces; zero outside [0, top]
        if d < 0 or d > top:
            return 0, []
        if d not in ranks:
            m = _boundary_from_faces(faces_at(d - 1), faces_at(d))
            if rank_method == "snf":
                ranks[d] = smith_normal_form(m)
            elif rank_method == "rational":
                ranks[d] = (rational_rank(m), [])
            else:
                raise ValueError(f"unknown rank method {rank_method!r}")
        return ranks[d]

    betti: dict[int, int] = {}
    torsion: dict[int, list[int]] = {}
    for d in wanted:
        f_d = len(faces_at(d))
        r_d, _ = rank_at(d)
        r_up, inv_up = rank_at(d + 1)
        betti[d] = f_d - r_d - r_up
        torsion[d] = inv_up
    empty_only = top == -1
    return BettiReport(betti, torsion, tuple(wanted), empty_only=empty_only)


def euler_characteristic_check(spec: ComplexSpec, report: BettiReport) -> bool:
    """Check sum_{d>=-1} (-1)^d f_d == sum_{d>=-1} (-1)^d beta_d (both reduced)."""
    if report.void or spec.is_void():
        return report.void and spec.is_void()
    if not report.complete or report.dims[-1] != spec.top_dim:
        raise ValueError("Euler check needs homology in every dimension")
    lhs = f_vector(spec).reduced_euler()
    rhs = sum((-1) ** d * b for d, b in report.betti.items())
    return lhs == rhs


def chain_complex_is_exact(spec: ComplexSpec) -> bool:
    """True iff every composite of consecutive boundary maps vanishes."""
    if spec.is_void():
        return True
    prev = None
    for d in range(0, spec.top_dim + 1):
        cur = boundary_matrix(spec, d)
        if prev is not None and prev.matmul(cur).nnz:
            return False
        prev = cur
    return True


def face_label(mask: int) -> list[int]:
    return members(mask)
