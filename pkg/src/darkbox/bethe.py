"""Exact levels of the centered (c = 0) contact interaction.

For two bosons the quasi-momenta K = k1 + k2 and Delta = k1 - k2 decouple,

    q = 2 arctan(g / q) + pi * offset,

with offset n + m for K and n - m for Delta; the energy is (K^2 + Delta^2) / 2.
Fermions never feel the contact and keep pi^2 (n^2 + m^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from darkbox.errors import InvalidArgument, NumericFailure
from darkbox.model import Sector

BISECT_WIDTH = 1e-13


@dataclass(frozen=True)
class BetheLevel:
    n: int
    m: int
    K: float
    Delta: float
    energy: float


def _residual(q, g, offset):
    return q - 2.0 * math.atan(g / q) - math.pi * offset


def solve_quasimomentum(offset: int, g: float, tol: float = 1e-12) -> float:
    """Root of q = 2 arctan(g/q) + pi*offset in (pi*offset, pi*(offset+1)]."""
    if offset < 0 or int(offset) != offset:
        raise InvalidArgument(f"offset must be a non-negative integer, got {offset!r}")
    if g < 0 or math.isnan(g):
        raise InvalidArgument(f"only repulsive couplings are supported, got g={g!r}")
    if tol <= 0:
        raise InvalidArgument("tol must be positive")
    offset = int(offset)
    if g == 0:
        return math.pi * offset
    if math.isinf(g):
        return math.pi * (offset + 1)

    lo, hi = math.pi * offset, math.pi * (offset + 1)
    if _residual(hi, g, offset) < 0:
        raise NumericFailure("analytic bracket does not contain a sign change",
                             {"offset": offset, "g": g, "bracket": (lo, hi)})
    # f is increasing on the bracket and negative at lo (the q -> 0+ limit when offset = 0)
    while hi - lo > BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _residual(mid, g, offset) < 0:
            lo = mid
        else:
            hi = mid

    q = 0.5 * (lo + hi)
    f = _residual(q, g, offset)
    step = f / (1.0 + 2.0 * g / (q * q + g * g))
    polished = q - step
    if lo <= polished <= hi and abs(_residual(polished, g, offset)) <= abs(f):
        q, f = polished, _residual(polished, g, offset)
    if abs(f) > tol:
        raise NumericFailure("quasi-momentum residual above tolerance",
                             {"offset": offset, "g": g, "root": q, "residual": f})
    return q


def bosonic_level(n: int, m: int, g: float) -> BetheLevel:
    if not n >= m >= 1:
        raise InvalidArgument(f"bosonic levels need n >= m >= 1, got ({n}, {m})")
    K = solve_quasimomentum(n + m, g)
    D = solve_quasimomentum(n - m, g)
    return BetheLevel(n, m, K, D, 0.5 * (K * K + D * D))


def fermionic_level(n: int, m: int) -> float:
    if not n > m >= 1:
        raise InvalidArgument(f"fermionic levels need n > m >= 1, got ({n}, {m})")
    return math.pi**2 * (n * n + m * m)


def bosonic_level_limit_check(n: int, m: int) -> tuple[float, float]:
    """The g -> 0 and g -> infinity energies of the bosonic (n, m) level."""
    if not n >= m >= 1:
        raise InvalidArgument(f"bosonic levels need n >= m >= 1, got ({n}, {m})")
    return math.pi**2 * (n * n + m * m), math.pi**2 * ((n + 1) ** 2 + m * m)


def sector_levels(sector: Sector, g: float, count: int) -> list[tuple[int, int, float]]:
    """The ``count`` lowest c = 0 levels of ``sector`` as (n, m, energy)."""
    if count < 1:
        raise InvalidArgument("count must be positive")
    # bosonic energies lie between the (n, m) and (n+1, m) free values, so
    # scanning n up to a free-energy bound that covers count levels suffices
    out = []
    n_top = 2
    while True:
        out.clear()
        for n in range(1, n_top + 1):
            for m in range(1, n + (1 if sector.sigma == 1 else 0)):
                if (-1) ** (n + m) != sector.pi:
                    continue
                if sector.sigma == 1:
                    e = bosonic_level(n, m, g).energy
                else:
                    e = fermionic_level(n, m)
                out.append((n, m, e))
        out.sort(key=lambda t: (t[2], t[0], t[1]))
        if len(out) >= count and out[count - 1][2] < math.pi**2 * (n_top**2 + 1):
            return out[:count]
        n_top *= 2
