import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from darkbox import InvalidArgument, ModelParams, NumericFailure, Sector, assemble_hamiltonian, enumerate_basis
from darkbox.eigen import lowest_eigenpairs

METHODS = ["full", "dense", "lanczos"]


@pytest.mark.parametrize("method", METHODS)
def test_two_by_two(method):
    a, b = 3.0, -1.25
    sol = lowest_eigenpairs(np.array([[a, b], [b, a]]), k=2, method=method)
    np.testing.assert_allclose(sol.eigenvalues, [a - abs(b), a + abs(b)], rtol=1e-14)


@pytest.mark.parametrize("method", METHODS)
def test_diagonal_free_spectrum(method):
    basis = enumerate_basis(Sector(1, 1), 30)
    H = assemble_hamiltonian(basis, ModelParams(0.0, 0.0))
    sol = lowest_eigenpairs(H, k=8, method=method)
    np.testing.assert_allclose(sol.eigenvalues, np.sort(basis.energies())[:8], rtol=1e-12)
    order = np.argsort(basis.energies(), kind="stable")
    for i in range(8):
        assert abs(sol.eigenvectors[i, order[i]]) == pytest.approx(1.0, abs=1e-10)


@given(seed=st.integers(0, 2**32 - 1), size=st.integers(2, 120), k=st.integers(1, 6))
@settings(max_examples=30, deadline=None)
def test_random_symmetric_against_eigvalsh(seed, size, k):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((size, size))
    A = A + A.T
    k = min(k, size)
    ref = np.linalg.eigvalsh(A)[:k]
    for method in METHODS:
        sol = lowest_eigenpairs(A, k=k, method=method)
        np.testing.assert_allclose(sol.eigenvalues, ref, rtol=1e-9, atol=1e-9)
        for lam, vec, r in zip(sol.eigenvalues, sol.eigenvectors, sol.residuals):
            assert np.linalg.norm(A @ vec - lam * vec) == pytest.approx(r, abs=1e-12)
            assert r <= 1e-10 * (1 + abs(lam))
            assert vec[np.argmax(np.abs(vec))] > 0


def test_lanczos_on_hamiltonian():
    basis = enumerate_basis(Sector(1, -1), 40)
    H = assemble_hamiltonian(basis, ModelParams(50.0, 0.35))
    dense = lowest_eigenpairs(H, k=5, method="dense")
    lanc = lowest_eigenpairs(H, k=5, method="lanczos")
    np.testing.assert_allclose(lanc.eigenvalues, dense.eigenvalues, rtol=1e-10)
    np.testing.assert_allclose(np.abs(lanc.eigenvectors @ dense.eigenvectors.T), np.eye(5), atol=1e-6)


def test_k_too_large():
    with pytest.raises(InvalidArgument):
        lowest_eigenpairs(np.eye(3), k=4)


def test_unknown_method():
    with pytest.raises(InvalidArgument):
        lowest_eigenpairs(np.eye(3), k=1, method="power")


def test_iteration_budget_exhausted():
    rng = np.random.default_rng(0)
    A = rng.standard_normal((300, 300))
    A = A + A.T
    with pytest.raises(NumericFailure) as info:
        lowest_eigenpairs(A, k=5, method="lanczos", maxiter=2)
    assert "residuals" in info.value.diagnostics


@pytest.mark.slow
def test_contact_ground_state_at_large_cutoff():
    basis = enumerate_basis(Sector(1, 1), 160)
    H = assemble_hamiltonian(basis, ModelParams(1.0, 0.0))
    assert lowest_eigenpairs(H, k=1).eigenvalues[0] == pytest.approx(22.533, abs=2e-3)
