"""Published homology tables for total cut and cut complexes of graph families.

Each entry is one of

* a tuple of ``(dimension, rank)`` pairs listing the nonzero reduced homology,
  where ``rank`` is ``None`` when the source prints the group with an empty
  exponent (read as rank 1, flagged as interpreted);
* ``VOID`` for a complex printed as void or left blank (blank = void);
* ``UNKNOWN`` for an asterisk.
"""
from __future__ import annotations

from dataclasses import dataclass

VOID = "void"
UNKNOWN = "*"


@dataclass(frozen=True)
class TableSpec:
    table_id: int
    family: str  # cycle_power, km_pn or km_cn
    kind: str  # total or cut
    k: int
    row_name: str
    col_name: str
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    entries: dict  # (row, col) -> entry
    title: str

    def graph_params(self, row: int, col: int) -> tuple[int, int]:
        """Family parameters ``(n, p)`` or ``(m, n)`` for a table cell."""
        return (row, col)

    def vertices(self, row: int, col: int) -> int:
        return row if self.family == "cycle_power" else row * col

    def cells(self):
        for r in self.rows:
            for c in self.cols:
                yield r, c, self.entries.get((r, c), VOID)


def _h(dim: int, rank: int | None = None) -> tuple[int, int | None]:
    return (dim, rank)


# id 1: reduced homology of the total 2-cut complex of C_n^p, rows n, columns p.
# Cells with 2p + 3 <= n <= 3p are the shaded (conjectural) region.
_T1_RAW = {
    8: {3: [_h(2)]},
    9: {3: [_h(4, 2)]},
    10: {3: [_h(6)], 4: [_h(3)]},
    11: {3: [_h(7)], 4: [_h(5)]},
    12: {3: [_h(8)], 4: [_h(7, 3)], 5: [_h(4)]},
    13: {3: [_h(9)], 4: [_h(9)], 5: [_h(7)]},
    14: {3: [_h(10)], 4: [_h(10)], 5: [_h(8)], 6: [_h(5)]},
    15: {3: [_h(11)], 4: [_h(11)], 5: [_h(10, 4)], 6: [_h(8, 2)]},
    16: {3: [_h(12)], 4: [_h(12)], 5: [_h(12)], 6: [_h(10)], 7: [_h(6)]},
    17: {3: [_h(13)], 4: [_h(13)], 5: [_h(13)], 6: [_h(11)], 7: [_h(9)]},
    18: {3: [_h(14)], 4: [_h(14)], 5: [_h(14)], 6: [_h(13, 5)], 7: [_h(12)], 8: [_h(7)]},
    19: {3: [_h(15)], 4: [_h(15)], 5: [_h(15)], 6: [_h(15)], 7: [_h(13)], 8: [_h(11)]},
    20: {3: [_h(16)], 4: [_h(16)], 5: [_h(16)], 6: [_h(16)], 7: [_h(14)], 8: [_h(13, 3)]},
    21: {3: [_h(17)], 4: [_h(17)], 5: [_h(17)], 6: [_h(17)], 7: [_h(16, 6)], 8: [_h(15)]},
    22: {3: [_h(18)], 4: [_h(18)], 5: [_h(18)], 6: [_h(18)], 7: [_h(18)], 8: [_h(16)]},
    23: {3: [_h(19)], 4: [_h(19)], 5: [_h(19)], 6: [_h(19)], 7: [_h(19)], 8: [_h(17)]},
    24: {3: [_h(20)], 4: [_h(20)], 5: [_h(20)], 6: [_h(20)], 7: [_h(20)], 8: [_h(19, 7)]},
    25: {3: [_h(21)], 4: [_h(21)], 5: [_h(21)], 6: [_h(21)], 7: [_h(21)], 8: [_h(21)]},
}

# id 2: total 3-cut complex of K_m □ P_n, rows m, columns n.
_T2_RAW = {
    2: {3: [_h(0)], 4: [_h(2, 3)], 5: [_h(4, 6)], 6: [_h(6, 10)], 7: [_h(8, 15)]},
    3: {3: [_h(3, 4)], 4: [_h(6, 12)], 5: [_h(9, 24)], 6: [_h(12, 40)], 7: [_h(15, 60)]},
    4: {3: [_h(6, 9)], 4: [_h(10, 27)], 5: [_h(14, 54)], 6: UNKNOWN, 7: UNKNOWN},
    5: {3: [_h(9, 16)], 4: [_h(14, 48)], 5: UNKNOWN, 6: UNKNOWN, 7: UNKNOWN},
    6: {3: [_h(12, 25)], 4: [_h(18, 75)], 5: UNKNOWN, 6: UNKNOWN, 7: UNKNOWN},
    7: {3: [_h(15, 36)], 4: UNKNOWN, 5: UNKNOWN, 6: UNKNOWN, 7: UNKNOWN},
}

# id 3: 3-cut complex of K_m □ P_n.
_T3_RAW = {
    3: {3: [_h(4, 2), _h(5, 6)], 4: [_h(7, 3), _h(8, 21)], 5: [_h(10, 4), _h(11, 45)], 6: [_h(13, 5), _h(14, 78)]},
    4: {3: [_h(7, 6), _h(8, 12)], 4: [_h(11, 9), _h(12, 40)], 5: [_h(15, 12), _h(16, 84)], 6: UNKNOWN},
    5: {3: [_h(10, 12), _h(11, 20)], 4: [_h(15, 18), _h(16, 65)], 5: UNKNOWN, 6: UNKNOWN},
    6: {3: [_h(13, 20), _h(14, 30)], 4: UNKNOWN, 5: UNKNOWN, 6: UNKNOWN},
}

# id 4: total 3-cut complex of K_m □ C_n.
_T4_RAW = {
    2: {3: VOID, 4: [_h(2, 9)], 5: [_h(4, 14)], 6: [_h(6, 22)], 7: [_h(8, 29)], 8: [_h(10, 37)],
        9: [_h(12, 46)], 10: [_h(14, 56)]},
    3: {3: [_h(3)], 4: [_h(6, 30)], 5: [_h(9, 48)], 6: [_h(12, 73)], 7: [_h(15, 99)],
        8: UNKNOWN, 9: UNKNOWN, 10: UNKNOWN},
    4: {3: [_h(6, 3)], 4: [_h(10, 63)], 5: [_h(14, 102)], 6: UNKNOWN, 7: UNKNOWN, 8: UNKNOWN,
        9: UNKNOWN, 10: UNKNOWN},
    5: {3: [_h(9, 6)], 4: [_h(14, 108)], 5: UNKNOWN, 6: UNKNOWN, 7: UNKNOWN, 8: UNKNOWN,
        9: UNKNOWN, 10: UNKNOWN},
    6: {3: [_h(12, 10)], 4: [_h(18, 165)], 5: UNKNOWN, 6: UNKNOWN, 7: UNKNOWN, 8: UNKNOWN,
        9: UNKNOWN, 10: UNKNOWN},
    7: {3: [_h(15, 15)], 4: UNKNOWN, 5: UNKNOWN, 6: UNKNOWN, 7: UNKNOWN, 8: UNKNOWN,
        9: UNKNOWN, 10: UNKNOWN},
}

# id 5: 3-cut complex of K_m □ C_n.
_T5_RAW = {
    2: {4: [_h(3), _h(4, 4)], 5: [_h(6, 11)], 6: [_h(8, 25)], 7: [_h(10, 43)], 8: [_h(12, 65)]},
    3: {4: [_h(7, 6), _h(8, 12)], 5: [_h(10, 5), _h(11, 31)], 6: [_h(13, 6), _h(14, 64)],
        7: UNKNOWN, 8: UNKNOWN},
    4: {4: [_h(11, 15), _h(12, 24)], 5: [_h(15, 15), _h(16, 61)], 6: UNKNOWN, 7: UNKNOWN, 8: UNKNOWN},
    5: {4: [_h(15, 28), _h(16, 40)], 5: UNKNOWN, 6: UNKNOWN, 7: UNKNOWN, 8: UNKNOWN},
}


def _flatten(raw: dict) -> dict:
    out = {}
    for r, row in raw.items():
        for c, cell in row.items():
            out[(r, c)] = cell if isinstance(cell, str) else tuple(cell)
    return out


TABLES: dict[int, TableSpec] = {
    1: TableSpec(1, "cycle_power", "total", 2, "n", "p", tuple(range(8, 26)), tuple(range(3, 9)),
                 _flatten(_T1_RAW), "Nonzero reduced homology of the total 2-cut complex of C_n^p"),
    2: TableSpec(2, "km_pn", "total", 3, "m", "n", tuple(range(2, 8)), tuple(range(3, 8)),
                 _flatten(_T2_RAW), "Nonzero reduced homology of the total 3-cut complex of K_m □ P_n"),
    3: TableSpec(3, "km_pn", "cut", 3, "m", "n", tuple(range(3, 7)), tuple(range(3, 7)),
                 _flatten(_T3_RAW), "Nonzero reduced homology of the 3-cut complex of K_m □ P_n"),
    4: TableSpec(4, "km_cn", "total", 3, "m", "n", tuple(range(2, 8)), tuple(range(3, 11)),
                 _flatten(_T4_RAW), "Nonzero reduced homology of the total 3-cut complex of K_m □ C_n"),
    5: TableSpec(5, "km_cn", "cut", 3, "m", "n", tuple(range(2, 6)), tuple(range(4, 9)),
                 _flatten(_T5_RAW), "Nonzero reduced homology of the 3-cut complex of K_m □ C_n"),
}


def expected_betti(entry) -> tuple[dict[int, int], bool]:
    """Rank map of a table entry and whether an empty exponent was read as rank 1."""
    interpreted = any(rank is None for _, rank in entry)
    return {d: (1 if rank is None else rank) for d, rank in entry}, interpreted


def is_shaded(n: int, p: int) -> bool:
    """Cycle-power cells outside the proven range: 2p + 3 <= n <= 3p."""
    return 2 * p + 3 <= n <= 3 * p
