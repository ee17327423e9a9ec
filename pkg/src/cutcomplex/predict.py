"""Closed-form critical faces of the canonical element matchings on Δ₂ᵗ.

Family ids:

``cycle_power``  C_n^p, matching order 0, 1, ..., n-1.
``km_pn``        K_m □ P_n, matching order (0,0), (0,1), ..., (0,n-1).
``km_cn``        K_m □ C_n, same order.

Product vertices are flattened as ``i * n + j``.
"""
from __future__ import annotations

from .graphs import cartesian_product, complete, cycle, cycle_power, path, vset

CYCLE_POWER = "cycle_power"
KM_PN = "km_pn"
KM_CN = "km_cn"
FAMILIES = (CYCLE_POWER, KM_PN, KM_CN)


class RegimeError(ValueError):
    """Parameters outside the range where a closed form is known."""


def family_graph(family: str, a: int, b: int):
    """Graph of a family: ``(n, p)`` for cycle powers, ``(m, n)`` for the products."""
    if family == CYCLE_POWER:
        return cycle_power(a, b)
    if family == KM_PN:
        return cartesian_product(complete(a), path(b))
    if family == KM_CN:
        return cartesian_product(complete(a), cycle(b))
    raise ValueError(f"unknown family {family!r}")


def canonical_order(family: str, a: int, b: int) -> list[int]:
    # cycle powers use every vertex; products use the row (0, 0..n-1), which is 0..n-1 flattened
    return list(range(a)) if family == CYCLE_POWER else list(range(b))


def in_regime(family: str, a: int, b: int) -> bool:
    try:
        _check_regime(family, a, b)
    except RegimeError:
        return False
    return True


def _check_regime(family: str, a: int, b: int) -> None:
    if family == CYCLE_POWER:
        n, p = a, b
        if p < 1 or n < 3:
            raise RegimeError(f"cycle power needs p >= 1, n >= 3 (got n={n}, p={p})")
        if not (n == 2 * p + 2 or n >= 3 * p + 1):
            raise RegimeError(f"no closed form for n={n}, p={p}: need n = 2p+2 or n >= 3p+1")
    elif family == KM_PN:
        if a < 2 or b < 2:
            raise RegimeError(f"K_m □ P_n needs m, n >= 2 (got m={a}, n={b})")
    elif family == KM_CN:
        if a < 2 or b < 4:
            raise RegimeError(f"K_m □ C_n needs m >= 2, n >= 4 (got m={a}, n={b})")
    else:
        raise ValueError(f"unknown family {family!r}")


def predicted_critical_cells(family: str, a: int, b: int) -> set[int]:
    """Critical faces (bitmasks) left by the canonical matching order."""
    _check_regime(family, a, b)
    if family == CYCLE_POWER:
        n, p = a, b
        full = (1 << n) - 1
        if n == 2 * p + 2:
            return {vset(range(1, p + 1))}
        return {full ^ vset((0, n - 2 * p, n - p))}

    m, n = a, b
    full = (1 << (m * n)) - 1
    origin = 0  # (0, 0)
    out = set()
    for i in range(1, m):
        for j in range(1, n):
            out.add(full ^ vset((origin, i * n + j - 1, i * n + j)))
    if family == KM_CN:
        out.add(full ^ vset((origin, n - 2, n - 1)))
        for i in range(1, m):
            out.add(full ^ vset((origin, i * n, i * n + n - 1)))
    return out


def expected_wedge(family: str, a: int, b: int) -> tuple[int, int]:
    """(number of spheres, sphere dimension) of Δ₂ᵗ for a family in its proven regime."""
    _check_regime(family, a, b)
    if family == CYCLE_POWER:
        n, p = a, b
        return (1, (n - 4) // 2) if n == 2 * p + 2 else (1, n - 4)
    m, n = a, b
    if family == KM_PN:
        return (m - 1) * (n - 1), m * n - 4
    return n * (m - 1) + 1, m * n - 4
