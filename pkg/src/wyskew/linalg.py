"""Dense complex linear algebra used throughout: Hermitian checks, spectral
decomposition, PSD square roots, Kronecker products and traces.

Matrices are plain ``numpy`` complex arrays. Functions never mutate inputs.
"""

from __future__ import annotations

from functools import reduce
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    EmptyFactorList,
    NoConvergence,
    NotHermitian,
    NotPositiveSemidefinite,
    WrongShape,
)

HERMITICITY_TOL = 1e-9
PSD_TOL = 1e-9
RECONSTRUCTION_TOL = 1e-9


class SpectralDecomposition(NamedTuple):
    eigenvalues: np.ndarray  # ascending, real
    eigenvectors: np.ndarray  # columns

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_square(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise WrongShape(f"expected a nonempty square matrix, got shape {a.shape}")
    return a


def as_hermitian(m, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Return ``(M + M^dagger)/2`` after checking ``M`` is Hermitian to ``tol``."""
    a = as_square(m)
    err = np.max(np.abs(a - a.conj().T))
    if not err <= tol:
        raise NotHermitian(f"max |M - M^dagger| = {err:.3e} exceeds {tol:g}")
    return (a + a.conj().T) / 2


def is_hermitian(m, tol: float = HERMITICITY_TOL) -> bool:
    try:
        as_hermitian(m, tol)
    except (NotHermitian, WrongShape):
        return False
    return True


def hermitian_eigendecomposition(op) -> SpectralDecomposition:
    h = as_hermitian(op)
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return SpectralDecomposition(w, v)


def psd_sqrt(rho, tol: float = PSD_TOL) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues in ``[-tol, 0)`` are treated as zero; anything below ``-tol``
    raises ``NotPositiveSemidefinite``. Positive eigenvalues under the usual
    numerical-rank cutoff ``dim * eps * max|w|`` are also zeroed: they are
    rounding noise, and their square roots (~1e-8) would otherwise pollute
    results for rank-deficient states.
    """
    w, v = hermitian_eigendecomposition(rho)
    if w[0] < -tol:
        raise NotPositiveSemidefinite(f"smallest eigenvalue {w[0]:.3e} < -{tol:g}")
    cutoff = len(w) * np.finfo(float).eps * max(np.max(np.abs(w)), 0.0)
    root = np.sqrt(np.where(w > cutoff, w, 0.0))
    return (v * root) @ v.conj().T


def tensor_product(factors: Sequence) -> np.ndarray:
    """Kronecker product of ``factors`` in the given order."""
    factors = list(factors)
    if not factors:
        raise EmptyFactorList("tensor_product needs at least one factor")
    return reduce(np.kron, (np.asarray(f, dtype=complex) for f in factors))


def trace(m) -> complex:
    return complex(np.trace(np.asarray(m)))


def trace_of_product(a: np.ndarray, b: np.ndarray) -> complex:
    """``tr(a @ b)`` without forming the product."""
    return complex(np.einsum("ij,ji->", a, b))


def embed(op, site: int, local_dims: Sequence[int]) -> np.ndarray:
    """Place a single-site operator at ``site``, identities elsewhere."""
    op = as_square(op)
    if op.shape[0] != local_dims[site]:
        raise WrongShape(
            f"operator of dim {op.shape[0]} does not fit site {site} of dim {local_dims[site]}"
        )
    left = int(np.prod(local_dims[:site], dtype=int))
    right = int(np.prod(local_dims[site + 1 :], dtype=int))
    return np.kron(np.kron(np.eye(left), op), np.eye(right))
