import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from darkbox import (
    BasisPair,
    InvalidArgument,
    ModelParams,
    NumericFailure,
    Sector,
    assemble_hamiltonian,
    enumerate_basis,
    potential_element,
    quadrature_potential_element,
    s_element,
    t_integral,
)
from darkbox.acceptance import oracle_samples
from darkbox.elements import MINUS, PLUS, closed_form_element, potential_matrix, read_dump, t_general_case

signs = st.sampled_from([PLUS, MINUS])
cs = st.floats(0.0, 1.0)


def t_quad(p, q, sign, c):
    if sign == PLUS:
        a, b, f = 0.0, 1.0 - c, lambda x: math.cos(p * math.pi * x) * math.cos(q * math.pi * (x + c))
    else:
        a, b, f = c, 1.0, lambda x: math.cos(p * math.pi * x) * math.cos(q * math.pi * (x - c))
    if b <= a:
        return 0.0
    return integrate.quad(f, a, b, epsabs=1e-14, epsrel=1e-14, limit=400)[0]


def which_case(p, q):
    if p == 0 and q == 0:
        return "v"
    if p == 0:
        return "iii"
    if q == 0:
        return "iv"
    if abs(p) == abs(q):
        return "ii"
    return "i"


@pytest.mark.parametrize("sign", [PLUS, MINUS])
def test_t_zero_zero(sign):
    assert t_integral(0, 0, sign, 0.25) == 0.75


def test_t_quadrature_point():
    assert t_integral(1, 2, PLUS, 0.3) == pytest.approx(t_quad(1, 2, PLUS, 0.3), abs=1e-12)


@given(p=st.integers(-12, 12), q=st.integers(-12, 12), sign=signs)
def test_t_vanishes_at_full_displacement(p, q, sign):
    assert abs(t_integral(p, q, sign, 1.0)) <= 1e-15


@given(p=st.integers(-10, 10), q=st.integers(-10, 10), sign=signs, c=cs)
@settings(max_examples=300)
def test_t_matches_quadrature_all_cases(p, q, sign, c):
    assert t_integral(p, q, sign, c) == pytest.approx(t_quad(p, q, sign, c), abs=1e-12)


@pytest.mark.parametrize("case,p,q", [
    ("i", 3, 1), ("i", -4, 2), ("ii", 2, 2), ("ii", 3, -3), ("ii", -5, 5),
    ("iii", 0, 3), ("iii", 0, -2), ("iv", 4, 0), ("iv", -1, 0), ("v", 0, 0),
])
@pytest.mark.parametrize("sign", [PLUS, MINUS])
@pytest.mark.parametrize("c", [0.0, 0.17, 0.5, 0.83])
def test_t_each_case(case, p, q, sign, c):
    assert which_case(p, q) == case
    assert t_integral(p, q, sign, c) == pytest.approx(t_quad(p, q, sign, c), abs=1e-12)


DIAGONAL_GRID = [(q, sign, c) for q in (1, 2, 3, 7) for sign in (PLUS, MINUS) for c in (0.1, 0.45, 0.9)]


def diagonal_gap(q, sign, c, eps):
    ref = t_integral(q, q, sign, c)
    return max(abs(t_general_case(q + e, q, sign, c) - ref) for e in (eps, -eps))


def test_general_case_within_1e6_of_diagonal_at_eps_1e4():
    worst = max(diagonal_gap(q, sign, c, 1e-4) for q, sign, c in DIAGONAL_GRID)
    assert worst <= 1e-6


@pytest.mark.parametrize("q,sign,c", DIAGONAL_GRID)
def test_general_case_converges_linearly_to_diagonal(q, sign, c):
    g4, g6 = diagonal_gap(q, sign, c, 1e-4), diagonal_gap(q, sign, c, 1e-6)
    assert g6 <= 1e-6
    if g4 > 1e-6:
        assert g4 / g6 == pytest.approx(100, rel=0.05)


@pytest.mark.parametrize("q,sign,c", DIAGONAL_GRID)
def test_general_case_symmetric_mean_at_diagonal(q, sign, c):
    eps = 1e-4
    mean = 0.5 * (t_general_case(q + eps, q, sign, c) + t_general_case(q - eps, q, sign, c))
    assert mean == pytest.approx(t_integral(q, q, sign, c), abs=1e-6)


def s_quad(n, n_p, m, m_p, sign, c):
    shift = c if sign == PLUS else -c
    a, b = (0.0, 1.0 - c) if sign == PLUS else (c, 1.0)
    if b <= a:
        return 0.0

    def f(x):
        return 4 * (math.sin(n * math.pi * x) * math.sin(m * math.pi * (x + shift))
                    * math.sin(n_p * math.pi * x) * math.sin(m_p * math.pi * (x + shift)))

    return integrate.quad(f, a, b, epsabs=1e-13, epsrel=1e-13, limit=400)[0]


idx = st.integers(1, 8)


@given(n=idx, n_p=idx, m=idx, m_p=idx, sign=signs, c=cs)
@settings(max_examples=150)
def test_s_matches_quadrature(n, n_p, m, m_p, sign, c):
    assert s_element(n, n_p, m, m_p, sign, c) == pytest.approx(s_quad(n, n_p, m, m_p, sign, c), abs=1e-11)


@given(n=idx, n_p=idx, m=idx, m_p=idx, sign=signs, c=cs)
def test_s_symmetric_under_primed_swap(n, n_p, m, m_p, sign, c):
    assert s_element(n, n_p, m, m_p, sign, c) == pytest.approx(s_element(n_p, n, m_p, m, sign, c), abs=1e-13)


@given(n=idx, n_p=idx, m=idx, m_p=idx, sign=signs)
def test_s_vanishes_at_full_displacement(n, n_p, m, m_p, sign):
    assert abs(s_element(n, n_p, m, m_p, sign, 1.0)) <= 1e-14


def test_unknown_sign():
    with pytest.raises(InvalidArgument):
        t_integral(1, 1, "up", 0.3)


def fermion_pairs(top=8):
    return [BasisPair(n, m) for n in range(2, top) for m in range(1, n)]


def test_fermions_blind_to_contact():
    pairs = fermion_pairs()
    worst = max(abs(potential_element(a, b, Sector(-1, 1), 0.0)) for a in pairs for b in pairs)
    assert worst <= 1e-14


def test_odd_index_sum_is_exact_zero():
    for a, b in [((2, 1), (1, 1)), ((3, 2), (4, 2)), ((5, 5), (2, 1))]:
        assert potential_element(BasisPair(*a), BasisPair(*b), Sector(1, 1), 0.37) == 0.0


def test_ground_pair_against_quadrature():
    pair = BasisPair(1, 1)
    got = potential_element(pair, pair, Sector(1, 1), 0.2)
    assert got == pytest.approx(quadrature_potential_element(pair, pair, Sector(1, 1), 0.2), abs=1e-10)


def test_quadrature_fermions_at_contact():
    a, b = BasisPair(3, 1), BasisPair(5, 1)
    assert abs(quadrature_potential_element(a, b, Sector(-1, 1), 0.0)) <= 1e-12


def test_quadrature_failure_carries_diagnostics():
    with pytest.raises(NumericFailure) as info:
        quadrature_potential_element(BasisPair(40, 2), BasisPair(38, 4), Sector(1, 1), 0.3, tol=1e-30)
    assert info.value.diagnostics["tol"] == 1e-30


@pytest.mark.parametrize("a,b,sector", [
    ((2, 2), (1, 1), Sector(-1, 1)),
    ((1, 2), (1, 1), Sector(1, 1)),
    ((1, 0), (1, 1), Sector(1, 1)),
])
def test_bad_pairs_rejected(a, b, sector):
    with pytest.raises(InvalidArgument):
        potential_element(BasisPair(*a), BasisPair(*b), sector, 0.3)


def test_oracle_samples_cover_every_case():
    seen = set()
    for n, m, n2, m2, sigma, c, _ in oracle_samples():
        for p in (n - n2, n + n2, m - m2, m + m2):
            for q in (n - n2, n + n2, m - m2, m + m2):
                seen.add(which_case(p, q))
    assert seen == {"i", "ii", "iii", "iv", "v"}
    assert {s[4] for s in oracle_samples()} == {1, -1}


@pytest.mark.parametrize("sample", oracle_samples(60, seed=11), ids=lambda s: f"{s[:5]}-{s[6]}")
def test_closed_form_against_quadrature(sample):
    n, m, n2, m2, sigma, c, _ = sample
    sector = Sector(sigma, (-1) ** (n + m))
    quad = quadrature_potential_element(BasisPair(n, m), BasisPair(n2, m2), sector, c)
    assert closed_form_element(n, m, n2, m2, sigma, c) == pytest.approx(quad, abs=1e-10)


@given(n=idx, m=idx, n2=idx, m2=idx, sigma=st.sampled_from([1, -1]), c=cs)
def test_exchange_relabelling_symmetry(n, m, n2, m2, sigma, c):
    a = closed_form_element(n, m, n2, m2, sigma, c)
    assert a == pytest.approx(closed_form_element(m, n, m2, n2, sigma, c), abs=1e-12)
    assert a == pytest.approx(closed_form_element(n2, m2, n, m, sigma, c), abs=1e-12)


@pytest.mark.parametrize("sector", [Sector(1, 1), Sector(-1, -1)], ids=str)
@pytest.mark.parametrize("c", [0.0, 0.3, 0.5])
def test_matrix_matches_elementwise(sector, c):
    basis = enumerate_basis(sector, 9)
    V = potential_matrix(basis, c)
    ref = np.array([[potential_element(a, b, sector, c) for b in basis] for a in basis])
    np.testing.assert_allclose(V, ref, atol=1e-13)
    assert np.array_equal(V, V.T)


def test_zero_coupling_is_diagonal():
    basis = enumerate_basis(Sector(1, 1), 20)
    H = assemble_hamiltonian(basis, ModelParams(0.0, 0.4)).entries
    assert np.array_equal(H, np.diag(basis.energies()))


@pytest.mark.parametrize("g", [1.0, 1e3, 1e6])
def test_full_displacement_has_no_potential(g):
    basis = enumerate_basis(Sector(1, -1), 30)
    H = assemble_hamiltonian(basis, ModelParams(g, 1.0)).entries
    assert np.array_equal(H, np.diag(basis.energies()))


def test_dump_round_trip():
    basis = enumerate_basis(Sector(1, 1), 8)
    H = assemble_hamiltonian(basis, ModelParams(3.5, 0.21))
    buf = io.StringIO()
    H.dump(buf)
    buf.seek(0)
    header, M = read_dump(buf)
    assert header == {"N": len(basis), "n_max": 8, "sigma": 1, "pi": 1, "g": 3.5, "c": 0.21}
    assert np.array_equal(M, H.entries)
