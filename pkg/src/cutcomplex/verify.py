"""Executable checks of the homotopy theorems, homology tables and conjectures.

Every check returns a :class:`VerificationReport`.  Theorem and table checks
end in ``pass``/``fail``; conjecture checks end in ``agree``/``disagree`` and
are never fatal on their own.  Anything beyond the configured vertex budgets
ends in ``skipped`` with a reason.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable

from .complexes import CUT, TOTAL, ComplexSpec
from .homology import BettiReport, reduced_homology
from .morse import homotopy_claim, run_element_matchings, verify_acyclic
from .predict import (
    CYCLE_POWER,
    KM_CN,
    KM_PN,
    canonical_order,
    expected_wedge,
    family_graph,
    predicted_critical_cells,
)
from .tables import TABLES, UNKNOWN, VOID, expected_betti, is_shaded

PASS, FAIL, SKIPPED, AGREE, DISAGREE = "pass", "fail", "skipped", "agree", "disagree"


@dataclass(frozen=True)
class Budget:
    full_homology: int = 18  # vertices
    window_homology: int = 30
    morse: int = 20

    def capped(self, vertices: int) -> Budget:
        """Budget with every limit capped at ``vertices``."""
        return Budget(
            min(self.full_homology, vertices),
            min(self.window_homology, vertices),
            min(self.morse, vertices),
        )


DEFAULT_BUDGET = Budget()


@dataclass
class VerificationReport:
    id: str
    family: str
    params: dict
    method: str
    result: str
    expected: Any = None
    computed: Any = None
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return self.result == FAIL

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "family": self.family,
            "params": self.params,
            "method": self.method,
            "result": self.result,
            "expected": self.expected,
            "computed": self.computed,
            "seconds": round(self.seconds, 3),
            "notes": self.notes,
        }

    def line(self) -> str:
        extra = f"  ({'; '.join(self.notes)})" if self.notes else ""
        return f"{self.result.upper():9s} {self.id}  [{self.method}, {self.seconds:.2f}s]{extra}"


def _spec(family: str, a: int, b: int, kind: str, k: int) -> ComplexSpec:
    return ComplexSpec(family_graph(family, a, b), kind, k)


@lru_cache(maxsize=512)
def _homology(family: str, a: int, b: int, kind: str, k: int, dims: tuple[int, ...] | None) -> BettiReport:
    spec = _spec(family, a, b, kind, k)
    return reduced_homology(spec, dims=dims, budget=1 << 62)


def _betti_json(report: BettiReport) -> dict:
    if report.void:
        return {"void": True}
    out: dict[str, Any] = {"betti": {str(d): b for d, b in report.nonzero().items()}}
    tors = {str(d): t for d, t in report.torsion.items() if t}
    if tors:
        out["torsion"] = tors
    return out


def _wedge_json(count: int, dim: int) -> dict:
    return {"wedge": {"count": count, "dim": dim}}


def _matches_wedge(report: BettiReport, count: int, dim: int) -> bool:
    return not report.has_torsion() and report.nonzero() == {dim: count}


# -- theorem checks ---------------------------------------------------------


def _theorem_check(
    claim_id: str, family: str, a: int, b: int, params: dict, budget: Budget
) -> VerificationReport:
    t0 = time.perf_counter()
    count, dim = expected_wedge(family, a, b)
    spec = _spec(family, a, b, TOTAL, 2)
    vertices = spec.n
    expected = _wedge_json(count, dim)
    computed: dict[str, Any] = {}
    notes: list[str] = []
    ok = True
    methods = []

    if vertices <= budget.morse:
        methods.append("morse")
        data = run_element_matchings(spec, canonical_order(family, a, b))
        acyc = verify_acyclic(spec, data)
        predicted = predicted_critical_cells(family, a, b)
        computed["critical"] = data.critical_counts()
        computed["acyclic"] = acyc.ok
        computed["critical_equals_prediction"] = set(data.critical) == predicted
        ok &= acyc.ok and set(data.critical) == predicted
        if acyc.ok:
            claim = homotopy_claim(data, acyc)
            computed["claim"] = claim.as_dict()
            ok &= claim.verdict == "wedge" and (claim.count, claim.dim) == (count, dim)
    else:
        notes.append(f"Morse run skipped: {vertices} vertices > {budget.morse}")

    if vertices <= budget.full_homology:
        methods.append("homology")
        report = _homology(family, a, b, TOTAL, 2, None)
        computed["homology"] = _betti_json(report)
        ok &= _matches_wedge(report, count, dim)
    elif vertices <= budget.window_homology:
        methods.append("homology-window")
        report = _homology(family, a, b, TOTAL, 2, (dim,))
        computed["homology_window"] = _betti_json(report)
        ok &= report.rank(dim) == count and not report.has_torsion()
        notes.append(f"homology restricted to dimension {dim}")
    else:
        notes.append(f"homology skipped: {vertices} vertices > {budget.window_homology}")

    if not methods:
        return VerificationReport(claim_id, family, params, "none", SKIPPED, expected, None,
                                  time.perf_counter() - t0, notes)
    method = "both" if len(methods) == 2 else methods[0]
    return VerificationReport(claim_id, family, params, method, PASS if ok else FAIL, expected,
                              computed, time.perf_counter() - t0, notes)


def check_cycle_power(n: int, p: int, budget: Budget = DEFAULT_BUDGET) -> VerificationReport:
    claim_id = f"thm-cycle-power-n{n:02d}-p{p:02d}"
    params = {"n": n, "p": p}
    if not (p >= 1 and n >= 2 * p + 2 and (n == 2 * p + 2 or n >= 3 * p + 1)):
        return VerificationReport(claim_id, CYCLE_POWER, params, "none", SKIPPED,
                                  notes=["outside theorem regime: need n = 2p+2 or n >= 3p+1"])
    return _theorem_check(claim_id, CYCLE_POWER, n, p, params, budget)


def check_km_pn(m: int, n: int, budget: Budget = DEFAULT_BUDGET) -> VerificationReport:
    claim_id = f"thm-km-pn-m{m:02d}-n{n:02d}"
    params = {"m": m, "n": n}
    if m < 2 or n < 2:
        return VerificationReport(claim_id, KM_PN, params, "none", SKIPPED,
                                  notes=["outside theorem regime: need m, n >= 2"])
    return _theorem_check(claim_id, KM_PN, m, n, params, budget)


def check_km_cn(m: int, n: int, budget: Budget = DEFAULT_BUDGET) -> VerificationReport:
    claim_id = f"thm-km-cn-m{m:02d}-n{n:02d}"
    params = {"m": m, "n": n}
    if m < 2 or n < 4:
        return VerificationReport(claim_id, KM_CN, params, "none", SKIPPED,
                                  notes=["outside theorem regime: need m >= 2, n >= 4"])
    return _theorem_check(claim_id, KM_CN, m, n, params, budget)


# -- conjectures ------------------------------------------------------------


def middle_r(n: int, p: int) -> int:
    """The positive integer r with 2p + p/(r+1) < n <= 2p + p/r (exact rational comparison)."""
    if not 2 * p + 3 <= n <= 3 * p:
        raise ValueError(f"n={n} outside 2p+3 <= n <= 3p for p={p}")
    for r in range(1, p + 1):
        if 2 * p + Fraction(p, r + 1) < n <= 2 * p + Fraction(p, r):
            return r
    raise AssertionError(f"no r found for n={n}, p={p}")


def conjectured_cycle_power_middle(n: int, p: int) -> dict[int, int]:
    r = middle_r(n, p)
    if n == 2 * p + Fraction(p, r):
        return {n - 2 * r - 3: n - 2 * p - 1}
    return {n - 2 * r - 4: 1}


def _half(x: Fraction | int) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise AssertionError(f"conjectured rank {x} is not an integer")
    return int(x)


CONJ_TOTAL3_KM_PN = "total3-km-pn"
CONJ_CUT3_KM_PN = "cut3-km-pn"
CONJ_TOTAL3_KM_CN = "total3-km-cn"
CONJ_CUT3_KM_CN = "cut3-km-cn"
PRODUCT_CONJECTURES = {
    CONJ_TOTAL3_KM_PN: (KM_PN, TOTAL, 2),
    CONJ_CUT3_KM_PN: (KM_PN, CUT, 3),
    CONJ_TOTAL3_KM_CN: (KM_CN, TOTAL, 4),
    CONJ_CUT3_KM_CN: (KM_CN, CUT, 5),
}


def conjectured_product_betti(which: str, m: int, n: int) -> dict[int, int] | None:
    """Conjectured nonzero reduced Betti numbers, or None outside the conjecture's range."""
    h = Fraction(1, 2)
    if which == CONJ_TOTAL3_KM_PN:
        if m >= 2 and n >= 3:
            return {m * n - 6: _half(h * (n * n - 3 * n + 2) * (m - 1) ** 2)}
        return None
    if which == CONJ_CUT3_KM_PN:
        if m >= 3 and n >= 3:
            return {
                m * n - 5: _half(h * (m * m - 3 * m + 2) * (n - 1)),
                m * n - 4: _half(Fraction(m, 2) * (m * n - m - 2) * (n - 2)),
            }
        return None
    if which == CONJ_TOTAL3_KM_CN:
        if m >= 3 and n == 3:
            return {m * n - 6: _half(h * (m * m - 3 * m + 2))}
        if m >= 2 and n in (4, 5):
            return {m * n - 6: _half(Fraction(m - 1, 2) * ((m - 1) * n * n - (m - 3) * n - 2))}
        if m >= 2 and n >= 6:
            return {m * n - 6: _half(h * ((m - 1) ** 2 * n * n - (m * m - 4 * m + 3) * n + 2))}
        return None
    if which == CONJ_CUT3_KM_CN:
        if m >= 2 and n == 4:
            return {m * n - 5: 2 * m * m - 5 * m + 3, m * n - 4: 2 * m * (m - 1)}
        if m == 2 and n >= 5:
            return {m * n - 4: 2 * n * n - 8 * n + 1}
        return None
    raise ValueError(f"unknown conjecture {which!r}")


def _conjecture_report(claim_id, family, params, expected, a, b, kind, k, budget, notes, t0):
    vertices = a if family == CYCLE_POWER else a * b
    expected = {d: v for d, v in expected.items() if v}
    exp_json = {"betti": {str(d): v for d, v in sorted(expected.items())}}
    if vertices > budget.full_homology:
        notes.append(f"homology skipped: {vertices} vertices > {budget.full_homology}")
        return VerificationReport(claim_id, family, params, "homology", SKIPPED, exp_json, None,
                                  time.perf_counter() - t0, notes)
    report = _homology(family, a, b, kind, k, None)
    agree = not report.has_torsion() and report.nonzero() == expected
    return VerificationReport(claim_id, family, params, "homology", AGREE if agree else DISAGREE,
                              exp_json, _betti_json(report), time.perf_counter() - t0, notes)


def check_cycle_power_middle(n: int, p: int, budget: Budget = DEFAULT_BUDGET) -> VerificationReport:
    t0 = time.perf_counter()
    claim_id = f"conj-cycle-power-middle-n{n:02d}-p{p:02d}"
    params = {"n": n, "p": p}
    if not 2 * p + 3 <= n <= 3 * p:
        return VerificationReport(claim_id, CYCLE_POWER, params, "none", SKIPPED,
                                  notes=["outside conjecture regime 2p+3 <= n <= 3p"])
    r = middle_r(n, p)
    notes = [f"r={r} (exact rational bounds)", _table_backing(1, n, p)]
    params["r"] = r
    return _conjecture_report(claim_id, CYCLE_POWER, params, conjectured_cycle_power_middle(n, p),
                              n, p, TOTAL, 2, budget, notes, t0)


def check_conjectures_products(which: str, m: int, n: int, budget: Budget = DEFAULT_BUDGET) -> VerificationReport:
    t0 = time.perf_counter()
    family, kind, table_id = PRODUCT_CONJECTURES[which]
    claim_id = f"conj-{which}-m{m:02d}-n{n:02d}"
    params = {"m": m, "n": n}
    expected = conjectured_product_betti(which, m, n)
    if expected is None:
        return VerificationReport(claim_id, family, params, "none", SKIPPED,
                                  notes=["outside conjecture regime"])
    notes = [_table_backing(table_id, m, n)]
    return _conjecture_report(claim_id, family, params, expected, m, n, kind, 3, budget, notes, t0)


def _table_backing(table_id: int, row: int, col: int) -> str:
    entry = TABLES[table_id].entries.get((row, col))
    if entry is None or isinstance(entry, str):
        return "informational (not a table entry)"
    return f"table-backed (table {table_id})"


def is_table_backed(report: VerificationReport) -> bool:
    return any(note.startswith("table-backed") for note in report.notes)


# -- tables -----------------------------------------------------------------


def check_table_entry(table_id: int, row: int, col: int, max_vertices: int) -> VerificationReport:
    t0 = time.perf_counter()
    table = TABLES[table_id]
    entry = table.entries.get((row, col), VOID)
    params = {table.row_name: row, table.col_name: col}
    claim_id = f"table-{table_id}-{table.row_name}{row:02d}-{table.col_name}{col:02d}"
    vertices = table.vertices(row, col)
    a, b = table.graph_params(row, col)
    if entry == UNKNOWN:
        return VerificationReport(claim_id, table.family, params, "none", SKIPPED,
                                  notes=["asterisk: unknown in the source table"])
    if entry == VOID and (row, col) not in table.entries:
        return VerificationReport(claim_id, table.family, params, "none", SKIPPED,
                                  notes=["blank: void complex"])
    if vertices > max_vertices:
        return VerificationReport(claim_id, table.family, params, "none", SKIPPED,
                                  notes=[f"{vertices} vertices > budget {max_vertices}"])
    report = _homology(table.family, a, b, table.kind, table.k, None)
    notes = []
    if entry == VOID:
        expected = {"void": True}
        ok = report.void
    else:
        betti, interpreted = expected_betti(entry)
        expected = {"betti": {str(d): v for d, v in sorted(betti.items())}}
        if interpreted:
            notes.append("empty exponent read as rank 1 (interpreted)")
        ok = not report.void and report.nonzero() == betti and not report.has_torsion()
    if report.has_torsion():
        notes.append("TORSION FOUND")
    if table_id == 1 and is_shaded(row, col):
        notes.append("shaded region 2p+3 <= n <= 3p")
    return VerificationReport(claim_id, table.family, params, "homology", PASS if ok else FAIL,
                              expected, _betti_json(report), time.perf_counter() - t0, notes)


def check_table(table_id: int, max_vertices: int) -> list[VerificationReport]:
    table = TABLES[table_id]
    return [check_table_entry(table_id, r, c, max_vertices) for r, c, _ in table.cells()]


# -- suites -----------------------------------------------------------------


@dataclass(frozen=True)
class Claim:
    """One schedulable check: the function name in this module and its arguments.

    ``source`` says where the expected value comes from: ``table`` (published
    homology data), ``theorem`` (proven closed form) or ``conjecture``.
    """

    check: str
    args: tuple
    source: str

    def run(self) -> VerificationReport:
        return _CHECKS[self.check](*self.args)


_CHECKS: dict[str, Callable[..., VerificationReport]] = {}


def theorem_claims(budget: Budget = DEFAULT_BUDGET, max_n: int = 20, max_product: int = 16) -> list[Claim]:
    claims: list[Claim] = []
    for p in range(1, 7):
        for n in [2 * p + 2] + list(range(max(3 * p + 1, 2 * p + 3), max_n + 1)):
            if n <= max_n:
                claims.append(Claim("check_cycle_power", (n, p, budget), "theorem"))
    for m in range(2, max_product + 1):
        for n in range(2, max_product + 1):
            if m * n <= max_product:
                claims.append(Claim("check_km_pn", (m, n, budget), "theorem"))
                if n >= 4:
                    claims.append(Claim("check_km_cn", (m, n, budget), "theorem"))
    return claims


TABLE_VERTEX_BUDGET = {1: 18, 2: 16, 3: 16, 4: 16, 5: 16}


def table_claims(table_budget: dict[int, int] | None = None) -> list[Claim]:
    table_budget = table_budget or TABLE_VERTEX_BUDGET
    return [
        Claim("check_table_entry", (tid, r, c, table_budget[tid]), "table")
        for tid, table in TABLES.items()
        for r, c, _ in table.cells()
    ]


def conjecture_claims(budget: Budget = DEFAULT_BUDGET, product_vertices: int = 16) -> list[Claim]:
    claims: list[Claim] = []
    for n in range(9, budget.full_homology + 1):
        for p in range(3, n):
            if 2 * p + 3 <= n <= 3 * p:
                claims.append(Claim("check_cycle_power_middle", (n, p, budget), "conjecture"))
    pb = Budget(product_vertices, budget.window_homology, budget.morse)
    for which in PRODUCT_CONJECTURES:
        for m in range(2, product_vertices + 1):
            for n in range(3, product_vertices + 1):
                if m * n <= product_vertices and conjectured_product_betti(which, m, n) is not None:
                    claims.append(Claim("check_conjectures_products", (which, m, n, pb), "conjecture"))
    return claims


def _run(claim: Claim) -> VerificationReport:
    return claim.run()


def run_claims(claims: list[Claim], workers: int = 1) -> list[VerificationReport]:
    """Run checks, in a process pool when ``workers > 1``; results ordered by claim id."""
    if workers > 1 and len(claims) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run, claims))
    else:
        reports = [_run(c) for c in claims]
    return sorted(reports, key=lambda r: r.id)


SUITES = ("theorems", "tables", "conjectures", "all")


def suite_claims(suite: str, max_vertices: int | None = None) -> list[Claim]:
    """Claims of a suite; ``max_vertices`` caps every vertex budget."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    budget = DEFAULT_BUDGET if max_vertices is None else DEFAULT_BUDGET.capped(max_vertices)
    cap = max_vertices if max_vertices is not None else 1 << 30
    claims: list[Claim] = []
    if suite in ("theorems", "all"):
        claims += theorem_claims(budget, max_n=min(20, cap), max_product=min(16, cap))
    if suite in ("tables", "all"):
        claims += table_claims({tid: min(v, cap) for tid, v in TABLE_VERTEX_BUDGET.items()})
    if suite in ("conjectures", "all"):
        claims += conjecture_claims(budget, product_vertices=min(16, cap))
    return claims


def suite_failed(reports: list[VerificationReport]) -> bool:
    """Theorem/table failures, or a conjecture disagreeing on a table-backed point."""
    for r in reports:
        if r.result == FAIL:
            return True
        if r.result == DISAGREE and is_table_backed(r):
            return True
    return False


_CHECKS.update(
    check_cycle_power=check_cycle_power,
    check_km_pn=check_km_pn,
    check_km_cn=check_km_cn,
    check_cycle_power_middle=check_cycle_power_middle,
    check_conjectures_products=check_conjectures_products,
    check_table_entry=check_table_entry,
)


# -- markdown rendering -----------------------------------------------------


def _cell_text(report: VerificationReport | None, entry) -> str:
    if entry == UNKNOWN:
        return "*"
    if report is None or report.result == SKIPPED:
        return "" if entry == VOID else "(skipped)"
    comp = report.computed or {}
    if comp.get("void"):
        text = "void"
    else:
        text = " ".join(f"H{d}^{b}" if b != 1 else f"H{d}" for d, b in comp.get("betti", {}).items())
    return text + ("" if report.result == PASS else " **FAIL**")


def render_table_markdown(table_id: int, reports: list[VerificationReport]) -> str:
    table = TABLES[table_id]
    by_params = {}
    for r in reports:
        if r.id.startswith(f"table-{table_id}-"):
            by_params[(r.params[table.row_name], r.params[table.col_name])] = r
    head = f"| {table.row_name} \\ {table.col_name} | " + " | ".join(str(c) for c in table.cols) + " |"
    sep = "|" + "---|" * (len(table.cols) + 1)
    lines = [f"**{table.title}** (table {table_id}, computed)", "", head, sep]
    for row in table.rows:
        cells = [_cell_text(by_params.get((row, c)), table.entries.get((row, c), VOID)) for c in table.cols]
        lines.append(f"| {row} | " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"
