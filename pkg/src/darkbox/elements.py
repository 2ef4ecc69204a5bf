"""Matrix elements of the decentered contact interaction and Hamiltonian assembly.

Two closed-form routes exist.  The reference route below follows the
five-case line integrals T(p, q) on each delta line separately and builds
single elements.  The assembly route (``darkbox._backend``) sums both lines
first, which reduces everything to sin/cos tables and is what fills whole
matrices.  ``quadrature_potential_element`` integrates the basis functions
directly and checks both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import integrate

from darkbox import _backend
from darkbox._trig import cospi, sinpi
from darkbox.errors import InvalidArgument, NumericFailure
from darkbox.model import Basis, BasisPair, ModelParams, Sector, eval_basis_function

PLUS = "plus"
MINUS = "minus"


class TArgs(NamedTuple):
    p: int
    q: int
    sign: str
    c: float


def _check_sign(sign):
    if sign not in (PLUS, MINUS):
        raise InvalidArgument(f"sign must be {PLUS!r} or {MINUS!r}, got {sign!r}")


def t_general_case(p, q, sign, c):
    """Closed form valid for p != +-q, both nonzero; accepts real p, q."""
    denom = 2.0 * (p - q) * (p + q) * math.pi
    if sign == PLUS:
        num = (2 * q * sinpi(c * q)
               - (p + q) * sinpi((c - 1) * p + q)
               + (p - q) * sinpi((1 - c) * p + q))
    else:
        num = (-2 * p * sinpi(c * p)
               + (p + q) * sinpi(p + (c - 1) * q)
               + (p - q) * sinpi(p + (1 - c) * q))
    return num / denom


def t_integral(p: int, q: int, sign: str, c: float) -> float:
    """int over D cos(p pi x) cos(q pi (x +- c)) dx, D+ = [0, 1-c], D- = [c, 1].

    Branches are chosen by exact integer comparison of p and q.
    """
    _check_sign(sign)
    p, q = int(p), int(q)
    if p == 0 and q == 0:
        return 1.0 - c
    if p == 0:
        if sign == PLUS:
            return (sinpi(q) - sinpi(c * q)) / (q * math.pi)
        return sinpi((1 - c) * q) / (q * math.pi)
    if q == 0:
        if sign == PLUS:
            return sinpi((1 - c) * p) / (p * math.pi)
        return (sinpi(p) - sinpi(c * p)) / (p * math.pi)
    if p == q or p == -q:
        return -(sinpi((c - 2) * q) + sinpi(c * q)
                 + 2 * math.pi * (c - 1) * q * cospi(c * q)) / (4 * q * math.pi)
    return t_general_case(p, q, sign, c)


def s_element(n: int, n_p: int, m: int, m_p: int, sign: str, c: float) -> float:
    """int over D of 4 sin(n pi x) sin(m pi (x+-c)) sin(n' pi x) sin(m' pi (x+-c)) dx."""
    return (t_integral(n - n_p, m - m_p, sign, c)
            - t_integral(n - n_p, m + m_p, sign, c)
            - t_integral(n + n_p, m - m_p, sign, c)
            + t_integral(n + n_p, m + m_p, sign, c))


def _check_ordering(pair: BasisPair, sigma: int):
    if pair.m < 1 or pair.n < pair.m or (sigma == -1 and pair.n == pair.m):
        kind = "bosonic" if sigma == 1 else "fermionic"
        raise InvalidArgument(f"{pair} is not a valid {kind} pair")


def potential_element(pair: BasisPair, pair_p: BasisPair, sector: Sector, c: float) -> float:
    """<psi_nm | V | psi_n'm'> / g for the exchange symmetry of ``sector``.

    Only the exchange label of ``sector`` enters the formula.  Elements
    between pairs of opposite total parity vanish and are returned as an
    exact 0.0.
    """
    _check_ordering(pair, sector.sigma)
    _check_ordering(pair_p, sector.sigma)
    return closed_form_element(pair.n, pair.m, pair_p.n, pair_p.m, sector.sigma, c)


def closed_form_element(n: int, m: int, n2: int, m2: int, sigma: int, c: float) -> float:
    """Unvalidated closed form behind ``potential_element``; any positive n, m, n', m'."""
    if (n + m + n2 + m2) % 2:
        return 0.0
    tot = 0.0
    for sign in (PLUS, MINUS):
        tot += (s_element(n, n2, m, m2, sign, c)
                + sigma * s_element(m, n2, m2, n, sign, c)
                + sigma * s_element(m2, n, m, n2, sign, c)
                + s_element(m, m2, n, n2, sign, c))
    return tot / (2.0 * math.sqrt((1 + (n == m)) * (1 + (n2 == m2))))


def quadrature_potential_element(pair: BasisPair, pair_p: BasisPair, sector: Sector, c: float,
                                 tol: float = 1e-12) -> float:
    """Adaptive quadrature of the two line integrals of psi_nm psi_n'm'."""
    if tol <= 0:
        raise InvalidArgument("tol must be positive")
    _check_ordering(pair, sector.sigma)
    _check_ordering(pair_p, sector.sigma)
    # eval_basis_function validates parity too, so evaluate through a parity-matched sector
    sec_a = Sector(sector.sigma, (-1) ** (pair.n + pair.m))
    sec_b = Sector(sector.sigma, (-1) ** (pair_p.n + pair_p.m))

    def below(x):
        return eval_basis_function(pair, sec_a, x, x - c) * eval_basis_function(pair_p, sec_b, x, x - c)

    def above(x):
        return eval_basis_function(pair, sec_a, x, x + c) * eval_basis_function(pair_p, sec_b, x, x + c)

    top = max(pair.n, pair.m, pair_p.n, pair_p.m)
    limit = max(200, 20 * top)
    total = 0.0
    err = 0.0
    for f, a, b in ((below, c, 1.0), (above, 0.0, 1.0 - c)):
        if b <= a:
            continue
        val, est, *info = integrate.quad(f, a, b, epsabs=tol / 4, epsrel=0.0, limit=limit, full_output=1)
        total += val
        err += est
    if err > tol:
        raise NumericFailure(
            "line-integral quadrature did not reach the requested tolerance",
            {"estimate": total, "error": err, "tol": tol, "pairs": (pair, pair_p), "c": c},
        )
    return total


@dataclass(frozen=True)
class HamiltonianMatrix:
    basis: Basis
    params: ModelParams
    entries: np.ndarray

    @property
    def size(self) -> int:
        return len(self.basis)

    def dump(self, fh) -> None:
        """Write the upper triangle as text: header ``N n_max sigma pi g c`` then ``i j value``."""
        b = self.basis
        fh.write(f"{self.size} {b.n_max} {b.sector.sigma} {b.sector.pi} {float(self.params.g)!r} {float(self.params.c)!r}\n")
        H = self.entries
        for i in range(self.size):
            row = H[i]
            fh.write("".join(f"{i} {j} {row[j]:.17g}\n" for j in range(i, self.size)))


def read_dump(fh) -> tuple[dict, np.ndarray]:
    """Inverse of ``HamiltonianMatrix.dump``; returns the header fields and the full matrix."""
    size, n_max, sigma, pi, g, c = fh.readline().split()
    header = {"N": int(size), "n_max": int(n_max), "sigma": int(sigma), "pi": int(pi),
              "g": float(g), "c": float(c)}
    H = np.zeros((header["N"], header["N"]))
    for line in fh:
        i, j, v = line.split()
        H[int(i), int(j)] = H[int(j), int(i)] = float(v)
    return header, H


def potential_matrix(basis: Basis, c: float, backend: str | None = None) -> np.ndarray:
    """Dense V/g over ``basis`` (symmetric by construction)."""
    return _backend.potential_matrix(basis.ns, basis.ms, basis.sector.sigma, c, backend=backend)


def assemble_hamiltonian(basis: Basis, params: ModelParams, backend: str | None = None) -> HamiltonianMatrix:
    """H = diag(pi^2 (n^2 + m^2)) + g V in units of E0."""
    if params.g == 0.0:
        H = np.diag(basis.energies())
    else:
        H = params.g * potential_matrix(basis, params.c, backend=backend)
        H[np.diag_indices_from(H)] += basis.energies()
    return HamiltonianMatrix(basis, params, H)
