"""State families: GHZ, generalized GHZ, Werner-like GHZ mixtures, products,
convex mixtures, random states, and the two-qubit Schmidt form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyFactorList,
    InvalidRank,
    InvalidSize,
    NotNormalized,
    NotPositiveSemidefinite,
    OutOfRange,
    WrongShape,
)
from .linalg import as_hermitian, tensor_product

STATE_TOL = 1e-9


def _dims(local_dims) -> tuple[int, ...]:
    dims = tuple(int(d) for d in local_dims)
    if not dims or any(d < 1 for d in dims):
        raise InvalidSize(f"local dimensions must be positive integers, got {local_dims!r}")
    return dims


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Unit-trace PSD operator over the tensor factorization ``dims``."""

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = _dims(self.dims)
        m = as_hermitian(self.matrix)
        if m.shape[0] != int(np.prod(dims)):
            raise DimensionMismatch(f"matrix dim {m.shape[0]} != product of dims {dims}")
        tr = np.trace(m).real
        if abs(tr - 1) > STATE_TOL:
            raise NotNormalized(f"trace {tr!r} differs from 1")
        lo = np.linalg.eigvalsh(m)[0]
        if lo < -STATE_TOL:
            raise NotPositiveSemidefinite(f"smallest eigenvalue {lo:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_sites(self) -> int:
        return len(self.dims)

    def purity(self) -> float:
        return float(np.einsum("ij,ji->", self.matrix, self.matrix).real)


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = _dims(self.dims)
        psi = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if psi.size != int(np.prod(dims)):
            raise DimensionMismatch(f"{psi.size} amplitudes for dims {dims}")
        norm = np.linalg.norm(psi)
        if abs(norm - 1) > STATE_TOL:
            raise NotNormalized(f"norm {norm!r} differs from 1")
        psi = psi.copy()
        psi.setflags(write=False)
        object.__setattr__(self, "amplitudes", psi)
        object.__setattr__(self, "dims", dims)

    @property
    def n_sites(self) -> int:
        return len(self.dims)

    def density(self) -> DensityMatrix:
        psi = self.amplitudes
        return DensityMatrix(np.outer(psi, psi.conj()), self.dims)


@dataclass(frozen=True, eq=False)
class SchmidtForm:
    p: float
    q: float
    basis_1: np.ndarray  # rows are |phi_1>, |phi_2>
    basis_2: np.ndarray  # rows are |chi_1>, |chi_2>

    def reconstruct(self) -> np.ndarray:
        b1, b2 = self.basis_1, self.basis_2
        return self.p * np.kron(b1[0], b2[0]) + self.q * np.kron(b1[1], b2[1])


@dataclass(frozen=True)
class WernerGhzParams:
    n: int
    lam: float

    def __post_init__(self):
        if self.n < 2:
            raise InvalidSize(f"Werner-GHZ mixture needs n >= 2, got {self.n}")
        if not 0.0 <= self.lam <= 1.0:
            raise OutOfRange(f"lambda must lie in [0, 1], got {self.lam}")


@dataclass(frozen=True)
class MixtureSpec:
    weights: Sequence[float]
    components: Sequence[DensityMatrix]

    def __post_init__(self):
        if len(self.weights) != len(self.components) or not self.components:
            raise DimensionMismatch("weights and components must be nonempty and equally long")
        w = np.asarray(self.weights, dtype=float)
        if np.any(w < 0) or abs(w.sum() - 1) > STATE_TOL:
            raise NotNormalized(f"weights must be nonnegative and sum to 1, got {list(w)}")
        d0 = self.components[0].dims
        if any(c.dims != d0 for c in self.components):
            raise DimensionMismatch("mixture components have differing dims")


def basis_state(index: int, dims: Sequence[int]) -> PureState:
    dims = _dims(dims)
    psi = np.zeros(int(np.prod(dims)), dtype=complex)
    psi[index] = 1.0
    return PureState(psi, dims)


def ghz_state(n: int) -> PureState:
    if n < 2:
        raise InvalidSize(f"GHZ state needs n >= 2, got {n}")
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = psi[-1] = 1 / np.sqrt(2)
    return PureState(psi, (2,) * n)


def bell_state() -> PureState:
    return ghz_state(2)


def generalized_ghz(alpha: float, beta: float) -> PureState:
    """``alpha|000> + beta|111>`` with real nonnegative coefficients."""
    if alpha < 0 or beta < 0:
        raise OutOfRange("alpha and beta must be nonnegative")
    if abs(alpha**2 + beta**2 - 1) > STATE_TOL:
        raise NotNormalized(f"alpha^2 + beta^2 = {alpha**2 + beta**2!r}")
    psi = np.zeros(8, dtype=complex)
    psi[0], psi[7] = alpha, beta
    # absorb the tolerated normalization slack
    return PureState(psi / np.linalg.norm(psi), (2, 2, 2))


def werner_ghz(params: WernerGhzParams) -> DensityMatrix:
    n, lam = params.n, params.lam
    ghz = ghz_state(n).amplitudes
    rho = lam * np.outer(ghz, ghz.conj()) + (1 - lam) / 2**n * np.eye(2**n)
    return DensityMatrix(rho, (2,) * n)


def product_state(factors: Sequence[DensityMatrix]) -> DensityMatrix:
    factors = list(factors)
    if not factors:
        raise EmptyFactorList("product_state needs at least one factor")
    dims = tuple(d for f in factors for d in f.dims)
    return DensityMatrix(tensor_product([f.matrix for f in factors]), dims)


def product_pure(factors: Sequence[PureState]) -> PureState:
    factors = list(factors)
    if not factors:
        raise EmptyFactorList("product_pure needs at least one factor")
    psi = factors[0].amplitudes
    for f in factors[1:]:
        psi = np.kron(psi, f.amplitudes)
    return PureState(psi, tuple(d for f in factors for d in f.dims))


def mix(spec: MixtureSpec) -> DensityMatrix:
    rho = sum(w * c.matrix for w, c in zip(spec.weights, spec.components))
    return DensityMatrix(rho, spec.components[0].dims)


def maximally_mixed(dims: Sequence[int]) -> DensityMatrix:
    d = int(np.prod(_dims(dims)))
    return DensityMatrix(np.eye(d) / d, dims)


def schmidt_decompose_two_qubit(psi: PureState) -> SchmidtForm:
    """Schmidt coefficients ``p >= q`` and bases via SVD of the 2x2 amplitude matrix.

    The phase of each ``|phi_i>`` is fixed so its largest-magnitude component is
    real and nonnegative; the compensating phase goes into ``|chi_i>``.
    """
    if psi.dims != (2, 2):
        raise WrongShape(f"expected a two-qubit state, got dims {psi.dims}")
    u, s, vh = np.linalg.svd(psi.amplitudes.reshape(2, 2))
    phis, chis = u.T.copy(), vh.copy()
    for i in range(2):
        k = np.argmax(np.abs(phis[i]))
        phase = phis[i, k] / abs(phis[i, k])
        phis[i] /= phase
        phis[i, k] = abs(phis[i, k])
        chis[i] *= phase
    return SchmidtForm(float(s[0]), float(s[1]), phis, chis)


def _rng(seed) -> np.random.Generator:
    # PCG64 via default_rng; a Generator passes through so callers can share a stream
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_pure(local_dims: Sequence[int], seed=None) -> PureState:
    """Haar-random pure state: normalized complex Gaussian vector."""
    dims = _dims(local_dims)
    rng = _rng(seed)
    d = int(np.prod(dims))
    psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return PureState(psi / np.linalg.norm(psi), dims)


def random_density(local_dims: Sequence[int], rank: int | None = None, seed=None) -> DensityMatrix:
    """``G G^dagger / tr(G G^dagger)`` with ``G`` a dim x rank complex Gaussian."""
    dims = _dims(local_dims)
    d = int(np.prod(dims))
    rank = d if rank is None else rank
    if rank < 1:
        raise InvalidRank(f"rank must be >= 1, got {rank}")
    rng = _rng(seed)
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    return DensityMatrix(rho / np.trace(rho).real, dims)


def random_product_state(n: int, seed=None, max_rank: int = 2) -> DensityMatrix:
    """Product of ``n`` random qubit states, each of random rank in ``1..max_rank``."""
    rng = _rng(seed)
    return product_state(
        [random_density([2], rank=int(rng.integers(1, max_rank + 1)), seed=rng) for _ in range(n)]
    )


def random_separable(n: int, n_terms: int, seed=None) -> DensityMatrix:
    """Random convex mixture of ``n_terms`` random product states."""
    rng = _rng(seed)
    comps = [random_product_state(n, rng) for _ in range(n_terms)]
    w = rng.dirichlet(np.ones(n_terms))
    return mix(MixtureSpec(list(w), comps))
