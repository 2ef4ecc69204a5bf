"""Infinite-coupling limit: the outside region as a pair of right isosceles triangles.

For g -> infinity the wavefunction vanishes on x2 - x1 = +-c.  Regions I
(x2 - x1 > c) and III (x1 - x2 > c) are right isosceles triangles of leg
a = 1 - c, whose Dirichlet eigenfunctions are the two-fermion box states of
length a.  Each triangle level appears once in a bosonic and once in a
fermionic sector of opposite parity.  The inside strip has no closed form
and is handled with large-g exact diagonalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from darkbox._trig import sinpi
from darkbox.eigen import lowest_eigenpairs
from darkbox.elements import assemble_hamiltonian
from darkbox.errors import InvalidArgument
from darkbox.model import ModelParams, Sector, enumerate_basis, region_weights

SQRT2 = math.sqrt(2.0)
LARGE_G = 1e4
INSIDE_THRESHOLD = 0.99


@dataclass(frozen=True)
class TriangleState:
    n: int
    m: int
    a: float

    def __post_init__(self):
        if not self.n > self.m >= 1:
            raise InvalidArgument(f"triangle states need n > m >= 1, got ({self.n}, {self.m})")
        if not 0.0 < self.a <= 1.0:
            raise InvalidArgument(f"leg length must lie in (0, 1], got {self.a}")

    @classmethod
    def for_displacement(cls, n, m, c):
        return cls(n, m, 1.0 - c)

    @property
    def k_n(self) -> float:
        return math.pi * self.n / self.a

    @property
    def k_m(self) -> float:
        return math.pi * self.m / self.a

    @property
    def energy(self) -> float:
        return math.pi**2 * (self.n**2 + self.m**2) / self.a**2


@dataclass(frozen=True)
class OutsideLevel:
    triangle: TriangleState

    @property
    def energy(self) -> float:
        return self.triangle.energy

    @property
    def sectors(self) -> tuple[Sector, Sector]:
        """(bosonic, fermionic) partners; their parities are always opposite."""
        par = (-1) ** (self.triangle.n + self.triangle.m)
        return Sector(1, -par), Sector(-1, par)


def triangle_eigenfunction(state: TriangleState, u, v):
    """(2/a)[sin(k_n u) sin(k_m v) - sin(k_m u) sin(k_n v)] on 0 <= u <= v <= a."""
    a = state.a
    u = np.asarray(u, dtype=float) / a
    v = np.asarray(v, dtype=float) / a
    val = (2.0 / a) * (sinpi(state.n * u) * sinpi(state.m * v) - sinpi(state.m * u) * sinpi(state.n * v))
    return float(val) if np.ndim(val) == 0 else val


def snippet_eval(region: str, state: TriangleState, c: float, x1, x2):
    """Triangle state placed in region I (``"I"``) or III (``"III"``), zero elsewhere.

    Region I:   Psi(x1, x2 - c)   where x2 - x1 >= c
    Region III: -Psi(x2, x1 - c)  where x1 - x2 >= c
    """
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    if region == "I":
        val = np.where(x2 - x1 >= c, triangle_eigenfunction(state, x1, x2 - c), 0.0)
    elif region == "III":
        val = np.where(x1 - x2 >= c, -triangle_eigenfunction(state, x2, x1 - c), 0.0)
    else:
        raise InvalidArgument(f"region must be 'I' or 'III', got {region!r}")
    return float(val) if np.ndim(val) == 0 else val


def outside_state(combination: str, state: TriangleState, c: float, x1, x2):
    """Exchange-even (``"sym"``) or exchange-odd (``"antisym"``) outside eigenstate.

    With the sign carried by the region-III snippet, exchanging the particles
    maps psi_I onto -psi_III, so the exchange-even state is
    (psi_I - psi_III)/sqrt2.  Its parity is -(-1)^(n+m); the odd partner
    has +(-1)^(n+m).
    """
    one = snippet_eval("I", state, c, x1, x2)
    three = snippet_eval("III", state, c, x1, x2)
    if combination == "sym":
        return (one - three) / SQRT2
    if combination == "antisym":
        return (one + three) / SQRT2
    raise InvalidArgument(f"combination must be 'sym' or 'antisym', got {combination!r}")


def outside_parity(combination: str, state: TriangleState) -> int:
    par = (-1) ** (state.n + state.m)
    return -par if combination == "sym" else par


def outside_spectrum(c: float, e_max: float) -> list[OutsideLevel]:
    """All outside levels with energy <= e_max, ascending (ties by (n, m))."""
    if not 0.0 <= c < 1.0:
        raise InvalidArgument(f"outside spectrum needs 0 <= c < 1, got {c}")
    if e_max <= 0:
        raise InvalidArgument("e_max must be positive")
    a = 1.0 - c
    bound = e_max * a * a / math.pi**2
    levels = []
    n = 2
    while n * n + 1 <= bound:
        for m in range(1, n):
            if n * n + m * m > bound:
                break
            levels.append(OutsideLevel(TriangleState(n, m, a)))
        n += 1
    levels.sort(key=lambda lv: (lv.energy, lv.triangle.n, lv.triangle.m))
    return levels


def outside_ground(sector: Sector, c: float) -> OutsideLevel:
    """Lowest outside level with a partner in ``sector``."""
    # (2,1) and (3,1) cover both parities of the bosonic and fermionic partners
    for n, m in ((2, 1), (3, 1)):
        lv = OutsideLevel(TriangleState(n, m, 1.0 - c))
        if sector in lv.sectors:
            return lv
    raise AssertionError("unreachable")


def mean_relative_error(ed_values, analytic_values) -> float:
    ed = np.asarray(ed_values, dtype=float)
    ref = np.asarray(analytic_values, dtype=float)
    if ed.shape != ref.shape:
        raise InvalidArgument(f"length mismatch: {ed.shape} vs {ref.shape}")
    if ed.size == 0:
        raise InvalidArgument("empty input")
    if np.any(ref == 0):
        raise InvalidArgument("analytic values must be nonzero")
    return float(np.mean(np.abs(ed - ref) / np.abs(ref)))


@dataclass(frozen=True)
class ClassifiedLevel:
    energy: float
    origin: str  # "out" or "in"
    p_in: float


def classify_levels(sector: Sector, c: float, g: float = LARGE_G, n_max: int = 60, k: int = 6,
                    resolution: int | None = None, tol: float = 1e-10) -> list[ClassifiedLevel]:
    """Lowest ``k`` ED levels at coupling ``g`` labelled inside/outside by region weight."""
    basis = enumerate_basis(sector, n_max)
    sol = lowest_eigenpairs(assemble_hamiltonian(basis, ModelParams(g, c)), k=k, tol=tol)
    resolution = resolution or 4 * n_max + 1
    out = []
    for e, vec in zip(sol.eigenvalues, sol.eigenvectors):
        p_in, p_out = region_weights(vec, basis, c, resolution)
        p_in = p_in / (p_in + p_out)
        out.append(ClassifiedLevel(float(e), "in" if p_in > INSIDE_THRESHOLD else "out", p_in))
    return out


def crossing_displacement(sector: Sector, g: float = LARGE_G, n_max: int = 60, c_lo: float = 0.05,
                          c_hi: float = 0.6, tol: float = 1e-3) -> float:
    """Displacement where the sector ground state moves from outside to inside.

    Bisection on the sign of (lowest outside level - lowest inside level),
    read off as whether the ED ground state has most weight inside.
    """

    def ground_inside(c):
        lv = classify_levels(sector, c, g, n_max, k=1)[0]
        return lv.p_in > 0.5

    lo_in, hi_in = ground_inside(c_lo), ground_inside(c_hi)
    if lo_in == hi_in:
        raise InvalidArgument(f"no crossing between c={c_lo} and c={c_hi} in sector {sector}")
    while c_hi - c_lo > tol:
        mid = 0.5 * (c_lo + c_hi)
        if ground_inside(mid) == lo_in:
            c_lo = mid
        else:
            c_hi = mid
    return 0.5 * (c_lo + c_hi)
