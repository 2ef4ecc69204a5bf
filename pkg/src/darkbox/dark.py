"""Dark states: free box eigenstates that the interaction does not see.

At c = p/q a free state psi_NM vanishes on both lines x2 = x1 +- c exactly
when N and M are quantized quasi-momenta of the outside triangles,
N = n/(1-c), M = m/(1-c), i.e. (q-p) | n and (q-p) | m.  Equivalently N and
M are multiples of q.  Along x2 = x1 + c the two product terms of psi_NM
pick up signs (-1)^(Nc) and (-1)^(Mc), so the combination that cancels has
exchange label sigma = -(-1)^((N-M)c).
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from darkbox import _backend
from darkbox.eigen import lowest_eigenpairs
from darkbox.elements import assemble_hamiltonian
from darkbox.errors import InvalidArgument
from darkbox.model import BasisPair, ModelParams, Sector, enumerate_basis

PI2 = math.pi**2


@dataclass(frozen=True, order=True)
class RationalC:
    p: int
    q: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise InvalidArgument("p and q must be integers")
        if not 0 < self.p < self.q:
            raise InvalidArgument(f"need 0 < p < q, got {self.p}/{self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise InvalidArgument(f"{self.p}/{self.q} is not reduced")

    @classmethod
    def parse(cls, text: str) -> "RationalC":
        """Parse ``"p/q"``; decimals are rejected rather than rounded."""
        parts = str(text).strip().split("/")
        if len(parts) != 2:
            raise InvalidArgument(f"displacement must be given as p/q, got {text!r}")
        try:
            p, q = int(parts[0]), int(parts[1])
        except ValueError:
            raise InvalidArgument(f"displacement must be given as p/q, got {text!r}") from None
        return cls(p, q)

    @classmethod
    def from_fraction(cls, frac: Fraction) -> "RationalC":
        return cls(frac.numerator, frac.denominator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def gap(self) -> int:
        """q - p, the divisor that n and m must share."""
        return self.q - self.p

    def __float__(self):
        return self.p / self.q

    def __str__(self):
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class DarkState:
    c: RationalC
    primitive: tuple[int, int]
    tower_index: int
    N: int
    M: int
    sector: Sector

    @property
    def n(self) -> int:
        return self.tower_index * self.primitive[0]

    @property
    def m(self) -> int:
        return self.tower_index * self.primitive[1]

    @property
    def energy_over_pi2(self) -> int:
        return self.N * self.N + self.M * self.M

    @property
    def energy(self) -> float:
        return PI2 * self.energy_over_pi2

    @property
    def outside_energy(self) -> float:
        """pi^2 j^2 (n0^2 + m0^2) / (1 - c)^2 evaluated independently of (N, M)."""
        a = 1.0 - float(self.c)
        return PI2 * (self.n**2 + self.m**2) / (a * a)


def dark_sector(c: RationalC, N: int, M: int) -> Sector:
    """Sector of the dark free state psi_NM (N, M multiples of q)."""
    shift = Fraction((N - M) * c.p, c.q)
    if shift.denominator != 1:
        raise InvalidArgument(f"({N}, {M}) is not dark at c = {c}")
    return Sector(-((-1) ** int(shift)), (-1) ** (N + M))


def make_dark_state(c: RationalC, N: int, M: int) -> DarkState:
    """DarkState for free quantum numbers (N, M); raises if they fail the divisibility test."""
    if not N > M >= 1:
        raise InvalidArgument(f"dark states need N > M >= 1, got ({N}, {M})")
    if N % c.q or M % c.q:
        raise InvalidArgument(f"({N}, {M}) is not dark at c = {c}: both must be multiples of {c.q}")
    t, s = N // c.q, M // c.q
    j = math.gcd(t, s)
    d = c.gap
    return DarkState(c, (d * t // j, d * s // j), j, N, M, dark_sector(c, N, M))


def enumerate_dark_states(c: RationalC, e_max: float) -> list[DarkState]:
    """Every dark state at ``c`` with energy <= e_max, ascending, ties by (N, M)."""
    if e_max <= 0:
        raise InvalidArgument("e_max must be positive")
    bound = e_max / PI2
    q = c.q
    out = []
    t = 2
    while q * q * (t * t + 1) <= bound:
        for s in range(1, t):
            if q * q * (t * t + s * s) > bound:
                break
            out.append(make_dark_state(c, q * t, q * s))
        t += 1
    out.sort(key=lambda d: (d.energy_over_pi2, d.N, d.M))
    return out


def reduced_fractions(q_max: int) -> list[RationalC]:
    """All p/q in (0, 1) with q <= q_max, ascending by value."""
    if q_max < 2:
        raise InvalidArgument("q_max must be at least 2")
    out = [RationalC(p, q) for q in range(2, q_max + 1) for p in range(1, q) if math.gcd(p, q) == 1]
    out.sort(key=lambda r: r.value)
    return out


def dark_distribution(q_max: int, e_max: float) -> dict[RationalC, list[DarkState]]:
    """Dark lists for every reduced p/q with q <= q_max (empty lists included)."""
    return {c: enumerate_dark_states(c, e_max) for c in reduced_fractions(q_max)}


def tower(primitive: DarkState, j_max: int) -> list[DarkState]:
    """Members (jN, jM) for j = 1..j_max; energies scale as j^2.

    The exchange label is recomputed for each member; it flips whenever
    j (N - M) c changes parity.
    """
    if j_max < 1:
        raise InvalidArgument("j_max must be at least 1")
    return [primitive] + [make_dark_state(primitive.c, j * primitive.N, j * primitive.M)
                          for j in range(2, j_max + 1)]


def _as_fraction(c) -> Fraction:
    if isinstance(c, RationalC):
        return c.value
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise InvalidArgument(f"displacement must be rational (RationalC, Fraction or 'p/q'), got {c!r}")


def verify_dark(c, N: int, M: int, sector: Sector, n_max: int) -> float:
    """max over the sector basis of |<pair|V|NM>|/g; zero up to roundoff for a dark state."""
    frac = _as_fraction(c)
    if not 0 <= frac <= 1:
        raise InvalidArgument(f"c must lie in [0, 1], got {frac}")
    basis = enumerate_basis(sector, n_max)
    target = BasisPair(N, M)
    col = basis.index(target)
    V = _backend.potential_column(basis.ns, basis.ms, sector.sigma, float(frac), col)
    return float(np.max(np.abs(V)))


def _nearby_count(basis, energy):
    # V >= 0, so eigenvalue i never drops below the i-th free energy
    return int(np.searchsorted(basis.energies(), energy * (1 + 1e-9), side="right"))


def dark_flatness_probe(c: RationalC, dark: DarkState, g_list, n_max: int, full: bool = False, tol: float = 1e-10):
    """Eigenvalue nearest the dark energy for each g.

    With ``full=True`` each entry is ``(nearest, eigenvalues)`` where
    ``eigenvalues`` holds every computed level up to just past the dark one.
    """
    basis = enumerate_basis(dark.sector, n_max)
    basis.index(BasisPair(dark.N, dark.M))
    k = min(len(basis), _nearby_count(basis, dark.energy) + 2)
    out = []
    for g in g_list:
        H = assemble_hamiltonian(basis, ModelParams(float(g), float(c)))
        w = lowest_eigenpairs(H, k=k, tol=tol).eigenvalues
        nearest = float(w[np.argmin(np.abs(w - dark.energy))])
        out.append((nearest, w) if full else nearest)
    return out


def noninteracting_spectrum(sector: Sector, e_max: float) -> list[tuple[float, list[tuple[int, int]]]]:
    """Free levels of ``sector`` up to e_max grouped by energy; groups of size > 1 are degeneracies."""
    if e_max <= 0:
        raise InvalidArgument("e_max must be positive")
    bound = e_max / PI2
    groups = defaultdict(list)
    n = 1
    while n * n + 1 <= bound:
        for m in range(1, n + (1 if sector.sigma == 1 else 0)):
            if n * n + m * m > bound:
                break
            if (-1) ** (n + m) == sector.pi:
                groups[n * n + m * m].append((n, m))
        n += 1
    return [(PI2 * key, sorted(groups[key], reverse=True)) for key in sorted(groups)]


class TripleDegeneracy(NamedTuple):
    energy: float
    is_dark: bool
    outside: tuple[int, int]
    free_pairs: tuple[tuple[int, int], ...]

    @property
    def energy_over_pi2(self) -> Fraction:
        return Fraction(round(self.energy / PI2))


def _free_pairs_with_norm(r: int) -> tuple[tuple[int, int], ...]:
    out = []
    N = math.isqrt(r)
    while N * N * 2 >= r:
        rest = r - N * N
        M = math.isqrt(rest)
        if M >= 1 and M * M == rest:
            out.append((N, M))
        N -= 1
    return tuple(out)


def triple_degeneracy_scan(c: RationalC, e_max: float) -> list[TripleDegeneracy]:
    """Outside levels that coincide with a free level, flagged dark or accidental.

    Energies are compared exactly: the outside level is pi^2 q^2 (n^2+m^2)/(q-p)^2
    and the free level pi^2 (N^2+M^2).
    """
    if not isinstance(c, RationalC):
        raise InvalidArgument("triple_degeneracy_scan needs a RationalC displacement")
    if e_max <= 0:
        raise InvalidArgument("e_max must be positive")
    d, q = c.gap, c.q
    bound = Fraction(e_max / PI2).limit_denominator(10**12)
    out = []
    n = 2
    while Fraction(q * q * (n * n + 1), d * d) <= bound:
        for m in range(1, n):
            r = Fraction(q * q * (n * n + m * m), d * d)
            if r > bound:
                break
            if r.denominator != 1:
                continue
            pairs = _free_pairs_with_norm(int(r))
            if pairs:
                dark = n % d == 0 and m % d == 0
                out.append(TripleDegeneracy(PI2 * int(r), dark, (n, m), pairs))
        n += 1
    out.sort(key=lambda t: (t.energy, t.outside))
    return out
