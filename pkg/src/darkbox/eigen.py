"""Lowest eigenpairs of a real symmetric Hamiltonian matrix."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from darkbox.errors import InvalidArgument, NumericFailure

DEFAULT_TOL = 1e-10
BUFFER = 4
# above this size "auto" switches from the full dense solve to the LAPACK subset solve
FULL_DENSE_LIMIT = 500


@dataclass(frozen=True)
class EigenSolution:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # shape (k, N); row i belongs to eigenvalues[i]
    residuals: np.ndarray
    method: str

    def __len__(self):
        return len(self.eigenvalues)


def _orient(vecs):
    # largest-magnitude coefficient (first one on ties) made positive
    idx = np.argmax(np.abs(vecs), axis=0)
    signs = np.sign(vecs[idx, np.arange(vecs.shape[1])])
    signs[signs == 0] = 1.0
    return vecs * signs


def _solve(A, want, method, tol, maxiter):
    N = A.shape[0]
    if method == "full" or (method == "auto" and N <= FULL_DENSE_LIMIT):
        w, v = np.linalg.eigh(A)
        return w[:want], v[:, :want], "full"
    if method in ("dense", "auto"):
        w, v = scipy.linalg.eigh(A, subset_by_index=[0, want - 1], driver="evr")
        return w, v, "dense"
    if method == "lanczos":
        if want >= N - 1:
            w, v = np.linalg.eigh(A)
            return w[:want], v[:, :want], "full"
        v0 = np.ones(N) / np.sqrt(N)
        try:
            w, v = eigsh(A, k=want, which="SA", v0=v0, tol=tol * 1e-2, maxiter=maxiter)
        except ArpackNoConvergence as exc:
            partial = exc.eigenvalues
            res = [np.linalg.norm(A @ exc.eigenvectors[:, i] - partial[i] * exc.eigenvectors[:, i])
                   for i in range(len(partial))]
            raise NumericFailure("Lanczos iteration did not converge",
                                 {"converged": len(partial), "eigenvalues": partial, "residuals": res}) from exc
        order = np.argsort(w)
        return w[order], v[:, order], "lanczos"
    raise InvalidArgument(f"unknown method {method!r}")


def lowest_eigenpairs(H, k: int = 1, tol: float = DEFAULT_TOL, method: str = "auto",
                      maxiter: int | None = None) -> EigenSolution:
    """The ``k`` lowest eigenpairs of ``H`` (a HamiltonianMatrix or a symmetric array).

    ``method`` is ``"full"`` (complete dense decomposition), ``"dense"``
    (LAPACK index-subset solve), ``"lanczos"`` (implicitly restarted
    Lanczos via ARPACK) or ``"auto"``.  ``k + 4`` pairs are computed and the
    extras dropped so that clusters are not cut at an arbitrary member.
    Raises NumericFailure if any residual ||Hv - lv|| exceeds tol (1 + |l|).
    """
    A = np.asarray(getattr(H, "entries", H), dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidArgument(f"expected a square matrix, got shape {A.shape}")
    N = A.shape[0]
    if not 1 <= k <= N:
        raise InvalidArgument(f"k must be in [1, {N}], got {k}")
    if tol <= 0:
        raise InvalidArgument("tol must be positive")
    want = min(k + BUFFER, N)
    if maxiter is None:
        maxiter = 50 * want
    w, v, used = _solve(A, want, method, tol, maxiter)
    w, v = w[:k], _orient(v[:, :k])
    res = np.linalg.norm(A @ v - v * w, axis=0)
    bad = res > tol * (1.0 + np.abs(w))
    if bad.any():
        raise NumericFailure("eigenpair residuals exceed tolerance",
                             {"eigenvalues": w, "residuals": res, "tol": tol, "method": used})
    return EigenSolution(w, np.ascontiguousarray(v.T), res, used)
