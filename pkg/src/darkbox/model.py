"""Dimensionless model, symmetry sectors, basis enumeration and grid observables.

Lengths are in units of the box length and energies in units of
E0 = hbar^2 / (2 m L^2).  The Hamiltonian is

    H = -(d^2/dx1^2 + d^2/dx2^2) + g [delta(x2 - x1 + c) + delta(x2 - x1 - c)]

on the unit square with Dirichlet walls.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from darkbox._trig import sinpi
from darkbox.errors import InvalidArgument

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class ModelParams:
    g: float
    c: float

    def __post_init__(self):
        if not (0.0 <= self.c <= 1.0):
            raise InvalidArgument(f"displacement c must lie in [0, 1], got {self.c!r}")
        if not math.isfinite(self.g):
            raise InvalidArgument(f"interaction strength must be finite, got {self.g!r}")


@dataclass(frozen=True, order=True)
class Sector:
    """Exchange eigenvalue ``sigma`` and spatial parity ``pi``."""

    sigma: int
    pi: int

    def __post_init__(self):
        if self.sigma not in (1, -1) or self.pi not in (1, -1):
            raise InvalidArgument(f"sector labels must be +1 or -1, got ({self.sigma}, {self.pi})")

    @property
    def bosonic(self) -> bool:
        return self.sigma == 1

    @property
    def label(self) -> str:
        kind = "bosonic" if self.sigma == 1 else "fermionic"
        par = "even" if self.pi == 1 else "odd"
        return f"{kind}-{par}"

    def __str__(self):
        return f"({self.sigma:+d},{self.pi:+d})"


SECTORS = (Sector(1, 1), Sector(1, -1), Sector(-1, 1), Sector(-1, -1))


@dataclass(frozen=True, order=True)
class BasisPair:
    n: int
    m: int

    @property
    def energy(self) -> float:
        """Non-interacting energy pi^2 (n^2 + m^2)."""
        return math.pi**2 * (self.n**2 + self.m**2)


def check_pair(pair: BasisPair, sector: Sector) -> None:
    """Raise InvalidArgument unless ``pair`` is admissible in ``sector``."""
    n, m = pair.n, pair.m
    if m < 1:
        raise InvalidArgument(f"quantum numbers must be positive, got {pair}")
    if sector.sigma == 1 and n < m:
        raise InvalidArgument(f"bosonic pairs need n >= m, got {pair}")
    if sector.sigma == -1 and n <= m:
        raise InvalidArgument(f"fermionic pairs need n > m, got {pair}")
    if (-1) ** (n + m) != sector.pi:
        raise InvalidArgument(f"{pair} has parity {(-1) ** (n + m):+d}, sector wants {sector.pi:+d}")


@dataclass(frozen=True)
class Basis:
    sector: Sector
    n_max: int
    pairs: tuple[BasisPair, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.pairs)})

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def index(self, pair: BasisPair) -> int:
        try:
            return self._index[pair]
        except KeyError:
            raise InvalidArgument(f"{pair} is not in the basis (sector {self.sector}, n_max={self.n_max})") from None

    def __contains__(self, pair):
        return pair in self._index

    @property
    def ns(self) -> np.ndarray:
        return np.array([p.n for p in self.pairs], dtype=np.int64)

    @property
    def ms(self) -> np.ndarray:
        return np.array([p.m for p in self.pairs], dtype=np.int64)

    def energies(self) -> np.ndarray:
        """Diagonal kinetic energies pi^2 (n^2 + m^2), in basis order."""
        ns, ms = self.ns, self.ms
        return math.pi**2 * (ns * ns + ms * ms).astype(float)


def enumerate_basis(sector: Sector, n_max: int) -> Basis:
    """All admissible (n, m) with n^2 + m^2 <= n_max^2, sorted by energy then (n, m)."""
    if int(n_max) != n_max or n_max < 1:
        raise InvalidArgument(f"n_max must be a positive integer, got {n_max!r}")
    n_max = int(n_max)
    cutoff = n_max * n_max
    lower = 0 if sector.sigma == 1 else 1
    pairs = []
    for n in range(1, n_max + 1):
        for m in range(1, n + 1 - lower):
            if n * n + m * m > cutoff:
                break
            if (n + m) % 2 == (0 if sector.pi == 1 else 1):
                pairs.append(BasisPair(n, m))
    pairs.sort(key=lambda p: (p.n * p.n + p.m * p.m, p.n, p.m))
    return Basis(sector, n_max, tuple(pairs))


def _norm(n: int, m: int, sigma: int) -> float:
    if sigma == 1 and n == m:
        return 2.0
    return SQRT2


def eval_basis_function(pair: BasisPair, sector: Sector, x1, x2):
    """Symmetry-adapted basis function psi_nm(x1, x2); accepts arrays."""
    check_pair(pair, sector)
    n, m = pair.n, pair.m
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    val = 2.0 * (sinpi(n * x1) * sinpi(m * x2) + sector.sigma * sinpi(m * x1) * sinpi(n * x2))
    val = val / _norm(n, m, sector.sigma)
    return float(val) if np.ndim(val) == 0 else val


@dataclass(frozen=True)
class WavefunctionGrid:
    """Psi sampled on the uniform grid over [0,1]^2; ``values[i, j] = Psi(x[i], x[j])``."""

    resolution: int
    values: np.ndarray

    @property
    def x(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.resolution)

    def norm_squared(self) -> float:
        """Trapezoidal integral of Psi^2 over the square."""
        h = 1.0 / (self.resolution - 1)
        w = np.full(self.resolution, h)
        w[0] = w[-1] = h / 2
        return float(w @ (self.values**2) @ w)

    def to_csv(self) -> str:
        x = self.x
        lines = ["x1,x2,value"]
        for i in range(self.resolution):
            for j in range(self.resolution):
                lines.append(f"{x[i]:.12g},{x[j]:.12g},{self.values[i, j]:.12g}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({"resolution": self.resolution, "values": [[float(v) for v in row] for row in self.values]})


def _coefficient_matrix(coeffs, basis: Basis, n_top: int) -> np.ndarray:
    C = np.zeros((n_top, n_top))
    sigma = basis.sector.sigma
    for c_k, p in zip(coeffs, basis.pairs):
        # phi_n phi_m = 2 sin sin
        w = c_k * 2.0 / _norm(p.n, p.m, sigma)
        C[p.n - 1, p.m - 1] += w
        C[p.m - 1, p.n - 1] += sigma * w
    return C


def eval_wavefunction(coeffs, basis: Basis, resolution: int = 101) -> WavefunctionGrid:
    """Expand ``coeffs`` in ``basis`` and sample on a resolution x resolution grid."""
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.ndim != 1 or len(coeffs) != len(basis):
        raise InvalidArgument(f"expected {len(basis)} coefficients, got shape {coeffs.shape}")
    if resolution < 2:
        raise InvalidArgument("resolution must be at least 2")
    x = np.linspace(0.0, 1.0, resolution)
    n_top = max((p.n for p in basis.pairs), default=1)
    modes = sinpi(np.outer(np.arange(1, n_top + 1), x))
    C = _coefficient_matrix(coeffs, basis, n_top)
    values = modes.T @ C @ modes
    return WavefunctionGrid(resolution, values)


def region_weights(coeffs, basis: Basis, c: float, resolution: int = 201) -> tuple[float, float]:
    """Probability inside (|x2 - x1| < c) and outside the interaction strip.

    Composite trapezoidal rule: each grid cell contributes the mean of Psi^2
    over its four corners, and is assigned to the strip by its center.
    """
    if not (0.0 <= c <= 1.0):
        raise InvalidArgument(f"c must lie in [0, 1], got {c}")
    grid = eval_wavefunction(coeffs, basis, resolution)
    d2 = grid.values**2
    cells = 0.25 * (d2[:-1, :-1] + d2[1:, :-1] + d2[:-1, 1:] + d2[1:, 1:])
    h = 1.0 / (resolution - 1)
    centers = (np.arange(resolution - 1) + 0.5) * h
    # strict: c = 0 gives an empty strip, c = 1 covers every cell center
    inside = np.abs(centers[None, :] - centers[:, None]) < c
    p_in = float(cells[inside].sum() * h * h)
    p_out = float(cells[~inside].sum() * h * h)
    return p_in, p_out
