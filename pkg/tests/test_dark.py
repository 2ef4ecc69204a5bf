import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from darkbox import (
    InvalidArgument,
    RationalC,
    Sector,
    dark_distribution,
    dark_flatness_probe,
    enumerate_dark_states,
    noninteracting_spectrum,
    tower,
    triple_degeneracy_scan,
    verify_dark,
)
from darkbox.dark import make_dark_state, reduced_fractions

PI2 = math.pi**2
HALF = RationalC(1, 2)


def lowest_in(c, sector, e_max=200):
    return [d for d in enumerate_dark_states(c, e_max * PI2) if d.sector == sector][0]


@pytest.mark.parametrize("c,sector,nm,e", [
    (HALF, Sector(1, 1), (2, 1), 20),
    (HALF, Sector(-1, 1), (3, 1), 40),
    (RationalC(1, 3), Sector(1, -1), (4, 2), 45),
    (RationalC(2, 3), Sector(-1, -1), (2, 1), 45),
])
def test_lowest_dark_states(c, sector, nm, e):
    d = lowest_in(c, sector)
    assert (d.n, d.m) == nm and d.energy_over_pi2 == e
    assert d.energy == pytest.approx(d.outside_energy, rel=1e-14)
    assert verify_dark(c, d.N, d.M, sector, d.N + 2) <= 1e-12


def test_half_admits_every_pair():
    found = {(d.n, d.m) for d in enumerate_dark_states(HALF, 200 * PI2)}
    assert {(2, 1), (3, 1), (3, 2), (4, 1), (4, 3), (4, 2)} <= found
    assert found == {(n, m) for n in range(2, 8) for m in range(1, n) if 4 * (n * n + m * m) <= 200}


@pytest.mark.parametrize("c", reduced_fractions(5), ids=str)
def test_catalog_matches_brute_force(c):
    e_max = 300
    found = {(d.N, d.M) for d in enumerate_dark_states(c, e_max * PI2)}
    brute = set()
    for N in range(2, 30):
        for M in range(1, N):
            if N * N + M * M > e_max:
                continue
            # both lines x2 = x1 +- c are nodal for one exchange label
            if N * c.p % c.q == 0 and M * c.p % c.q == 0:
                brute.add((N, M))
    assert found == brute
    for d in enumerate_dark_states(c, e_max * PI2):
        assert d.n % c.gap == 0 and d.m % c.gap == 0


@pytest.mark.parametrize("c", reduced_fractions(4), ids=str)
def test_every_listed_state_is_dark_and_partner_is_not(c):
    for d in enumerate_dark_states(c, 120 * PI2):
        n_max = d.N + 2
        assert verify_dark(c, d.N, d.M, d.sector, n_max) <= 1e-12
        other = Sector(-d.sector.sigma, d.sector.pi)
        assert verify_dark(c, d.N, d.M, other, n_max) > 1e-3


def test_not_dark_examples():
    assert verify_dark(HALF, 2, 2, Sector(1, 1), 10) > 0.01
    assert verify_dark(Fraction(0), 5, 2, Sector(-1, -1), 10) <= 1e-14


def test_verify_needs_pair_in_basis():
    with pytest.raises(InvalidArgument):
        verify_dark(HALF, 40, 2, Sector(1, 1), 10)


def test_decimal_displacement_rejected():
    with pytest.raises(InvalidArgument):
        RationalC.parse("0.5")
    with pytest.raises(InvalidArgument):
        verify_dark(0.5, 4, 2, Sector(1, 1), 10)
    assert RationalC.parse("2/3") == RationalC(2, 3)


@pytest.mark.parametrize("p,q", [(2, 4), (0, 3), (3, 3), (5, 2)])
def test_rational_validation(p, q):
    with pytest.raises(InvalidArgument):
        RationalC(p, q)


def test_distribution():
    assert list(dark_distribution(2, 50 * PI2)) == [HALF]
    dist = dark_distribution(4, 100 * PI2)
    assert [str(c) for c in dist] == ["1/4", "1/3", "1/2", "2/3", "3/4"]


def test_tower_energies_and_parity():
    base = lowest_in(HALF, Sector(1, 1))
    members = tower(base, 3)
    assert members[0] == base
    assert [d.energy_over_pi2 for d in members] == [20, 80, 180]
    for j, d in enumerate(members, 1):
        assert (d.n, d.m) == (2 * j, j) and d.tower_index == j
        assert d.sector.pi == (-1) ** (j * (base.N + base.M))
        assert verify_dark(HALF, d.N, d.M, d.sector, d.N + 2) <= 1e-12


def test_second_tower_member_is_fermionic():
    second = tower(lowest_in(HALF, Sector(1, 1)), 2)[1]
    assert (second.N, second.M) == (8, 4)
    assert second.sector == Sector(-1, 1)
    assert verify_dark(HALF, 8, 4, Sector(1, 1), 12) > 1e-3


@given(p=st.integers(1, 6), dq=st.integers(1, 6), t=st.integers(2, 6), data=st.data())
@settings(max_examples=40, deadline=None)
def test_make_dark_state_is_dark(p, dq, t, data):
    q = p + dq
    if math.gcd(p, q) != 1:
        return
    c = RationalC(p, q)
    s = data.draw(st.integers(1, t - 1))
    d = make_dark_state(c, q * t, q * s)
    assert verify_dark(c, d.N, d.M, d.sector, math.isqrt(d.N**2 + d.M**2) + 1) <= 1e-11


def test_flatness_probe():
    d = lowest_in(HALF, Sector(1, 1))
    probe = dark_flatness_probe(HALF, d, [0.0, 1.0, 20.0, 100.0], 50, full=True)
    for nearest, _ in probe:
        assert abs(nearest - d.energy) <= 1e-8 * d.energy
    w100 = probe[-1][1]
    below = [e for e in w100 if 0.85 * d.energy <= e < d.energy * (1 - 1e-8)]
    assert len(below) >= 2


def test_noninteracting_groups():
    groups = noninteracting_spectrum(Sector(1, 1), 60 * PI2)
    by_energy = {round(e / PI2): pairs for e, pairs in groups}
    assert set(by_energy[50]) == {(7, 1), (5, 5)}
    flat = [p for _, pairs in groups for p in pairs]
    assert len(flat) == len(set(flat))


@pytest.mark.parametrize("sector", [Sector(1, 1), Sector(1, -1), Sector(-1, 1), Sector(-1, -1)], ids=str)
def test_noninteracting_histogram(sector):
    e_max = 300
    hist = {}
    for n in range(1, 20):
        for m in range(1, n + (sector.sigma == 1)):
            if n * n + m * m <= e_max and (-1) ** (n + m) == sector.pi:
                hist[n * n + m * m] = hist.get(n * n + m * m, 0) + 1
    got = {round(e / PI2): len(p) for e, p in noninteracting_spectrum(sector, e_max * PI2)}
    assert got == hist


def test_triple_scan_flags_dark_at_half():
    hits = triple_degeneracy_scan(HALF, 60 * PI2)
    first = hits[0]
    assert first.energy_over_pi2 == 20 and first.is_dark and first.outside == (2, 1)
    assert (4, 2) in first.free_pairs
    assert all(h.is_dark for h in hits)


def test_triple_scan_flags_accidental():
    hits = triple_degeneracy_scan(RationalC(1, 6), 80 * PI2)
    acc = [h for h in hits if not h.is_dark]
    assert acc and acc[0].outside == (7, 1) and acc[0].free_pairs == ((6, 6),)
    assert acc[0].energy_over_pi2 == 72


def test_triple_scan_needs_rational():
    with pytest.raises(InvalidArgument):
        triple_degeneracy_scan(0.5, 100)
