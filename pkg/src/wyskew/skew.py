"""Wigner-Yanase skew information ``I(rho, A)``.

Three routes are provided:

* ``skew_information``: ``tr(rho A^2) - tr(sqrt(rho) A sqrt(rho) A)`` (default path);
* ``skew_information_commutator``: ``-1/2 tr([sqrt(rho), A]^2)``, kept as an
  independent cross-check of the first;
* ``pure_state_skew``: the variance of ``A`` in a pure state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DimensionMismatch, InconsistentResult
from .linalg import as_hermitian, psd_sqrt, trace_of_product
from .states import DensityMatrix, PureState

NEGATIVE_TOL = 1e-9

Form = Literal["trace_form", "commutator_form", "pure_variance"]


@dataclass(frozen=True)
class SkewResult:
    value: float
    form_used: Form

    def __float__(self) -> float:
        return self.value


def _clamp(value: float, form: Form) -> SkewResult:
    if value < -NEGATIVE_TOL:
        raise InconsistentResult(f"skew information came out negative: {value:.3e}")
    return SkewResult(max(value, 0.0), form)


def _rho_matrix(rho) -> np.ndarray:
    if isinstance(rho, PureState):
        rho = rho.density()
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return as_hermitian(rho)


def _check_dims(m: np.ndarray, a: np.ndarray):
    if m.shape != a.shape:
        raise DimensionMismatch(f"state dim {m.shape[0]} != observable dim {a.shape[0]}")


def skew_information(rho, a) -> SkewResult:
    m = _rho_matrix(rho)
    a = as_hermitian(a)
    _check_dims(m, a)
    s = psd_sqrt(m)
    sa = s @ a
    value = trace_of_product(m, a @ a).real - trace_of_product(sa, sa).real
    return _clamp(value, "trace_form")


def skew_information_commutator(rho, a) -> SkewResult:
    m = _rho_matrix(rho)
    a = as_hermitian(a)
    _check_dims(m, a)
    s = psd_sqrt(m)
    c = s @ a - a @ s
    value = -0.5 * trace_of_product(c, c).real
    return _clamp(value, "commutator_form")


def pure_state_skew(psi: PureState, a) -> SkewResult:
    a = as_hermitian(a)
    v = np.asarray(psi.amplitudes)
    if v.size != a.shape[0]:
        raise DimensionMismatch(f"state dim {v.size} != observable dim {a.shape[0]}")
    av = a @ v
    value = np.vdot(av, av).real - np.vdot(v, av).real ** 2
    return _clamp(value, "pure_variance")
