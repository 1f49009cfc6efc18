"""Spin observables (involutions), qubit Bloch parameterization, and the
local-sum operator ``A_1 + ... + A_n`` on the full Hilbert space."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, EmptyFactorList, NotUnitVector, ValidationError
from .linalg import as_hermitian, embed

UNIT_TOL = 1e-9
INVOLUTION_TOL = 1e-9

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])

_AXES = {"x": (1.0, 0.0, 0.0), "y": (0.0, 1.0, 0.0), "z": (0.0, 0.0, 1.0)}


@dataclass(frozen=True)
class BlochVector:
    a: tuple[float, float, float]

    def __post_init__(self):
        a = tuple(float(x) for x in self.a)
        if len(a) != 3:
            raise NotUnitVector(f"Bloch vector needs 3 components, got {len(a)}")
        norm = np.sqrt(sum(x * x for x in a))
        if abs(norm - 1) > UNIT_TOL:
            raise NotUnitVector(f"|a| = {norm!r} is not 1")
        object.__setattr__(self, "a", a)

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "BlochVector":
        st = np.sin(theta)
        return cls((st * np.cos(phi), st * np.sin(phi), np.cos(theta)))

    def angles(self) -> tuple[float, float]:
        x, y, z = self.a
        return float(np.arccos(np.clip(z, -1, 1))), float(np.arctan2(y, x) % (2 * np.pi))


@dataclass(frozen=True, eq=False)
class LocalSpinObservable:
    """Hermitian involution on one site; ``bloch`` is set for qubit sites built
    from a Bloch vector."""

    operator: np.ndarray
    bloch: BlochVector | None = None

    def __post_init__(self):
        op = as_hermitian(self.operator)
        err = np.max(np.abs(op @ op - np.eye(op.shape[0])))
        if err > INVOLUTION_TOL:
            raise ValidationError(f"not a spin observable: max |A^2 - 1| = {err:.3e}")
        op.setflags(write=False)
        object.__setattr__(self, "operator", op)

    @property
    def site_dim(self) -> int:
        return self.operator.shape[0]


def spin_from_bloch(b: BlochVector | Sequence[float]) -> LocalSpinObservable:
    """``a . sigma`` for a unit vector ``a``."""
    if not isinstance(b, BlochVector):
        b = BlochVector(tuple(b))
    op = np.tensordot(np.asarray(b.a), PAULIS, axes=1)
    return LocalSpinObservable(op, b)


def pauli(axis: str) -> LocalSpinObservable:
    try:
        return spin_from_bloch(BlochVector(_AXES[axis]))
    except KeyError:
        raise ValidationError(f"axis must be one of x, y, z; got {axis!r}") from None


def observables_from_axes(axes: str) -> list[LocalSpinObservable]:
    """``"xzz"`` -> ``[sigma_x, sigma_z, sigma_z]``."""
    return [pauli(c) for c in axes.lower()]


def local_sum_operator(
    sites: Sequence[LocalSpinObservable], local_dims: Sequence[int] | None = None
) -> np.ndarray:
    """``sum_j 1 x ... x A_j x ... x 1``.

    ``local_dims``, when given, must match the observables' site dimensions.
    """
    sites = list(sites)
    if not sites:
        raise EmptyFactorList("need at least one local observable")
    dims = [s.site_dim for s in sites]
    if local_dims is not None and tuple(local_dims) != tuple(dims):
        raise DimensionMismatch(f"observable dims {tuple(dims)} != state dims {tuple(local_dims)}")
    return sum(embed(s.operator, j, dims) for j, s in enumerate(sites))
