"""Acceptance checks with their tolerances fixed.

Each ``check_*`` function runs one criterion and returns a CheckResult; the
test suite asserts on them and ``darkbox verify`` prints them.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from darkbox import _backend
from darkbox.bethe import bosonic_level, bosonic_level_limit_check, fermionic_level
from darkbox.dark import RationalC, dark_flatness_probe, enumerate_dark_states, verify_dark
from darkbox.eigen import lowest_eigenpairs
from darkbox.elements import assemble_hamiltonian, closed_form_element, potential_matrix, quadrature_potential_element
from darkbox.model import SECTORS, BasisPair, ModelParams, Sector, enumerate_basis, region_weights
from darkbox.strong import mean_relative_error, outside_ground

PI2 = math.pi**2

# published c = 0 ground energies: (g, sector) -> value, truncated to 5 decimals
REFERENCE_BETHE = {
    (1, (1, 1)): 22.53213, (1, (1, -1)): 53.13085,
    (20, (1, 1)): 41.16319, (20, (1, -1)): 82.75898,
    (100, (1, 1)): 47.43657, (100, (1, -1)): 94.87942,
}
# sector ground states at c = 0: bosonic even (1,1), bosonic odd (2,1), fermionic even (3,1), fermionic odd (2,1)
GROUND_PAIRS = {(1, 1): (1, 1), (1, -1): (2, 1), (-1, 1): (3, 1), (-1, -1): (2, 1)}

ED_NMAX = 120
ED_REL_TOL = {1: 1e-4, 20: 2.5e-3, 100: 2.5e-3}
FERMION_REL_TOL = 1e-9
STRONG_G = 1e4
STRONG_CS = tuple(np.linspace(0.01, 0.18, 20))
STRONG_TOL = 5e-3
ORACLE_SAMPLES = 250
ORACLE_TOL = 1e-10
SYMMETRY_TOL = 1e-12
DARK_TOL = 1e-12
FLAT_TOL = 1e-8
FLAT_GS = (0.0, 1.0, 20.0, 100.0)
FLAT_NMAX = 60
EIG_REL_TOL = 1e-9


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] criterion {self.number}: {self.title} ({self.seconds:.1f}s) -- {self.detail}"


def _timed(number, title):
    def wrap(fn):
        def run():
            t0 = time.perf_counter()
            passed, detail = fn()
            return CheckResult(number, title, bool(passed), detail, time.perf_counter() - t0)
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


@_timed(1, "exact c=0 ground energies")
def check_bethe_reference():
    t0 = time.perf_counter()
    worst = 0.0
    for (g, key), ref in REFERENCE_BETHE.items():
        n, m = GROUND_PAIRS[key]
        worst = max(worst, abs(bosonic_level(n, m, g).energy - ref))
    ferm = max(abs(fermionic_level(2, 1) - 5 * PI2) / (5 * PI2), abs(fermionic_level(3, 1) - 10 * PI2) / (10 * PI2))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-5 and ferm <= 2.3e-16 and elapsed < 1.0
    return ok, f"max |bethe - reference| = {worst:.2e} (< 1e-5), fermionic rel = {ferm:.1e}, {elapsed * 1e3:.1f} ms"


def ed_bethe_errors(n_max=ED_NMAX):
    """Relative ED-vs-exact errors at c = 0 for each (g, sector)."""
    out = {}
    for sector in SECTORS:
        basis = enumerate_basis(sector, n_max)
        n, m = GROUND_PAIRS[(sector.sigma, sector.pi)]
        for g in (1, 20, 100):
            exact = bosonic_level(n, m, g).energy if sector.bosonic else fermionic_level(n, m)
            ed = lowest_eigenpairs(assemble_hamiltonian(basis, ModelParams(float(g), 0.0)), k=1).eigenvalues[0]
            out[(g, sector)] = (float(ed), exact, abs(ed - exact) / exact)
    return out


@_timed(2, "ED vs Bethe at c=0, n_max=120")
def check_ed_vs_bethe():
    errs = ed_bethe_errors()
    bad = []
    parts = []
    for (g, sector), (ed, exact, rel) in errs.items():
        tol = ED_REL_TOL[g] if sector.bosonic else FERMION_REL_TOL
        if rel > tol:
            bad.append(f"g={g} {sector}: {rel:.2e} > {tol:g}")
        if sector.bosonic:
            parts.append(f"g={g}{sector}={rel:.2e}")
    detail = "; ".join(parts)
    if bad:
        detail += " | exceeded: " + "; ".join(bad)
    return not bad, detail


@_timed(3, "lowest dark states")
def check_dark_catalog():
    expected = [
        (RationalC(1, 2), (2, 1), 20, Sector(1, 1)),
        (RationalC(1, 2), (3, 1), 40, Sector(-1, 1)),
        (RationalC(1, 3), (4, 2), 45, Sector(1, -1)),
        (RationalC(2, 3), (2, 1), 45, Sector(-1, -1)),
    ]
    worst = 0.0
    problems = []
    for c, nm, e, sector in expected:
        states = [d for d in enumerate_dark_states(c, 200 * PI2) if d.sector == sector]
        first = states[0] if states else None
        if first is None or (first.n, first.m) != nm or first.energy_over_pi2 != e:
            problems.append(f"c={c} {sector.label}: got {first}")
            continue
        worst = max(worst, verify_dark(c, first.N, first.M, sector, first.N + 2))
    ok = not problems and worst <= DARK_TOL
    return ok, f"4 rows reproduced, max verify_dark = {worst:.1e}" if not problems else "; ".join(problems)


@_timed(4, "dark flatness at c=1/2")
def check_dark_flatness():
    c = RationalC(1, 2)
    dark = [d for d in enumerate_dark_states(c, 25 * PI2) if d.sector == Sector(1, 1)][0]
    probe = dark_flatness_probe(c, dark, FLAT_GS, FLAT_NMAX, full=True)
    devs = [abs(near - dark.energy) / dark.energy for near, _ in probe]
    below = []
    for near, w in probe:
        idx = int(np.argmin(np.abs(w - dark.energy)))
        below.append(w[idx - 2:idx])
    below = np.array(below)
    monotone = bool(np.all(np.diff(below, axis=0) > 0))
    ok = max(devs) <= FLAT_TOL and monotone and below.shape == (len(FLAT_GS), 2)
    return ok, (f"max rel dev = {max(devs):.1e}; two levels below (eps/pi^2): "
                + " -> ".join(f"({a / PI2:.3f},{b / PI2:.3f})" for a, b in below))


def oracle_samples(count=ORACLE_SAMPLES, seed=20240917, top=9):
    """(n, m, n', m', sigma, c, stratum) covering the five T-integral cases in both sectors."""
    rng = np.random.default_rng(seed)
    out = []
    strata = ("generic", "p=+-q", "p=0", "q=0", "p=q=0")
    while len(out) < count:
        stratum = strata[len(out) % len(strata)]
        sigma = 1 if (len(out) // len(strata)) % 2 == 0 else -1
        lo = 0 if sigma == 1 else 1
        n = int(rng.integers(1 + lo, top + 1))
        m = int(rng.integers(1, n + 1 - lo))
        if stratum == "p=q=0":
            n2, m2 = n, m
        elif stratum == "p=0":
            n2 = n
            m2 = int(rng.integers(1, n2 + 1 - lo))
        elif stratum == "q=0":
            m2 = m
            n2 = int(rng.integers(m2 + lo, top + 1))
        elif stratum == "p=+-q":
            shift = int(rng.integers(-3, 4))
            n2, m2 = n + shift, m + shift
        else:
            n2 = int(rng.integers(1 + lo, top + 1))
            m2 = int(rng.integers(1, n2 + 1 - lo))
        if m2 < 1 or n2 < m2 or (sigma == -1 and n2 == m2):
            continue
        if (n + m + n2 + m2) % 2:
            m2 = m2 - 1 if m2 > 1 else m2 + 1
            if n2 < m2 or (sigma == -1 and n2 == m2) or (n + m + n2 + m2) % 2:
                continue
        c = float(rng.choice([0.0, 1.0, rng.random(), rng.random(), 0.5]))
        out.append((n, m, n2, m2, sigma, c, stratum))
    return out


@_timed(5, "matrix-element oracle")
def check_oracle():
    worst_ref = worst_kernel = worst_sym = 0.0
    parity_zero = True
    for n, m, n2, m2, sigma, c, _ in oracle_samples():
        sec = Sector(sigma, (-1) ** (n + m))
        quad = quadrature_potential_element(BasisPair(n, m), BasisPair(n2, m2), sec, c, tol=1e-12)
        ref = closed_form_element(n, m, n2, m2, sigma, c)
        kern = _backend.potential_matrix([n, n2], [m, m2], sigma, c)[0, 1]
        worst_ref = max(worst_ref, abs(ref - quad))
        worst_kernel = max(worst_kernel, abs(kern - quad))
        worst_sym = max(worst_sym, abs(ref - closed_form_element(m, n, m2, n2, sigma, c)))
        # odd partner: shift one index by one
        if closed_form_element(n, m, n2 + 1, m2, sigma, c) != 0.0:
            parity_zero = False
        if _backend.potential_matrix([n, n2 + 1], [m, m2], sigma, c)[0, 1] != 0.0:
            parity_zero = False
    ok = worst_ref <= ORACLE_TOL and worst_kernel <= ORACLE_TOL and worst_sym <= SYMMETRY_TOL and parity_zero
    return ok, (f"{ORACLE_SAMPLES} samples: |ref-quad| {worst_ref:.1e}, |kernel-quad| {worst_kernel:.1e}, "
                f"|V(nm,n'm')-V(mn,m'n')| {worst_sym:.1e}, odd-sum zeros exact: {parity_zero}")


@_timed(6, "strong-limit mean relative error, g=1e4, n_max=120")
def check_strong_limit(n_max=ED_NMAX):
    means = {}
    for sector in SECTORS:
        basis = enumerate_basis(sector, n_max)
        ed, exact = [], []
        for c in STRONG_CS:
            H = assemble_hamiltonian(basis, ModelParams(STRONG_G, float(c)))
            ed.append(lowest_eigenpairs(H, k=1).eigenvalues[0])
            exact.append(outside_ground(sector, float(c)).energy)
        means[sector] = mean_relative_error(ed, exact)
    ok = all(v <= STRONG_TOL for v in means.values())
    return ok, ", ".join(f"{s}: {v:.2e}" for s, v in means.items()) + f" (limit {STRONG_TOL:.0e}, {len(STRONG_CS)} c values)"


@_timed(7, "limit identities")
def check_limits():
    basis = enumerate_basis(Sector(1, 1), 40)
    zero_block = not np.any(potential_matrix(basis, 1.0))
    H = assemble_hamiltonian(basis, ModelParams(1000.0, 1.0)).entries
    zero_block = zero_block and np.array_equal(H, np.diag(basis.energies()))
    k = 15
    free = lowest_eigenpairs(assemble_hamiltonian(basis, ModelParams(0.0, 0.3)), k=k).eigenvalues
    free_ok = np.array_equal(free, np.sort(basis.energies())[:k])
    worst = 0.0
    for n, m in ((1, 1), (2, 1), (3, 1), (3, 2)):
        worst = max(worst, abs(bosonic_level(n, m, 1e8).energy - bosonic_level_limit_check(n, m)[1]))
    ok = zero_block and free_ok and worst <= 1e-5
    return ok, f"c=1 zero block: {zero_block}; g=0 spectrum exact: {free_ok}; g=1e8 Bethe gap {worst:.1e}"


def localization_summary(n_max=80, resolution=321):
    basis = enumerate_basis(Sector(1, 1), n_max)
    out = {}
    for c in (0.1, 0.5, 0.9):
        for g in (0.0, 100.0):
            vec = lowest_eigenpairs(assemble_hamiltonian(basis, ModelParams(g, c)), k=1).eigenvectors[0]
            p_in, p_out = region_weights(vec, basis, c, resolution)
            out[(c, g)] = (p_in, p_out, float(vec[basis.index(BasisPair(1, 1))] ** 2))
    return out


@_timed(8, "ground-state localization")
def check_localization():
    s = localization_summary()
    a = s[(0.1, 100.0)][1] > s[(0.1, 0.0)][1]
    b = s[(0.5, 100.0)][0] > s[(0.5, 0.0)][0]
    overlap = s[(0.9, 100.0)][2]
    ok = a and b and overlap > 0.99
    return ok, (f"c=0.1 p_out {s[(0.1, 0.0)][1]:.3f}->{s[(0.1, 100.0)][1]:.3f}; "
                f"c=0.5 p_in {s[(0.5, 0.0)][0]:.3f}->{s[(0.5, 100.0)][0]:.3f}; c=0.9 overlap^2 {overlap:.5f}")


@_timed(9, "eigensolver vs full dense decomposition")
def check_eigensolver():
    rng = np.random.default_rng(7)
    mats = []
    for size in (30, 200, 500):
        A = rng.standard_normal((size, size))
        mats.append(A + A.T)
    for sector, n_max, g, c in ((Sector(1, 1), 40, 20.0, 0.3), (Sector(-1, -1), 44, 100.0, 0.5)):
        b = enumerate_basis(sector, n_max)
        assert len(b) <= 500
        mats.append(assemble_hamiltonian(b, ModelParams(g, c)).entries)
    worst = 0.0
    for A in mats:
        ref = np.linalg.eigvalsh(A)
        for method in ("dense", "lanczos"):
            sol = lowest_eigenpairs(A, k=6, method=method)
            rel = np.abs(sol.eigenvalues - ref[:6]) / np.maximum(np.abs(ref[:6]), 1.0)
            worst = max(worst, float(rel.max()))
    return worst <= EIG_REL_TOL, f"{len(mats)} matrices x 2 methods, max rel diff {worst:.1e} (residual bounds enforced)"


CHECKS = (
    check_bethe_reference,
    check_ed_vs_bethe,
    check_dark_catalog,
    check_dark_flatness,
    check_oracle,
    check_strong_limit,
    check_limits,
    check_localization,
    check_eigensolver,
)
SLOW = {check_ed_vs_bethe.__name__, check_strong_limit.__name__}


def run_all(include_slow=True, echo=print):
    results = []
    for check in CHECKS:
        if not include_slow and check.__name__ in SLOW:
            continue
        res = check()
        echo(res.line())
        results.append(res)
    return results
