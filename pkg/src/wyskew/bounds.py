"""Closed-form quantities: the ``E_k`` bound hierarchy, Werner-GHZ values and
thresholds, two-qubit and generalized-GHZ values, and the three-qubit reference
table for the Mermin-Klyshko and quadratic Bell inequalities."""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import bisect

from .errors import NotNormalized, OutOfRange

NORM_TOL = 1e-9


@dataclass(frozen=True)
class BoundTable:
    """``e[k - 1] = E_k`` for ``k = 1..n``."""

    n: int
    e: tuple[int, ...]

    def at(self, k: int) -> int:
        if not 1 <= k <= self.n:
            raise OutOfRange(f"k must lie in [1, {self.n}], got {k}")
        return self.e[k - 1]


@dataclass(frozen=True)
class ReferenceComparison:
    """Maximum values per class (ES_1, ES_2, ES_3) for three qubits.

    ``mk`` and ``bi2`` are quoted constants, not computed here.
    """

    mk: tuple[float, float, float]
    bi2: tuple[float, float, float]
    wy: tuple[int, int, int]


def e_k(n: int, k: int) -> int:
    """Bound on ``I(rho, A_1 + ... + A_n)`` for states at most k-entangled."""
    n, k = int(n), int(k)
    if n < 1 or not 1 <= k <= n:
        raise OutOfRange(f"need 1 <= k <= n, got n={n}, k={k}")
    blocks, rest = divmod(n, k)
    return blocks * k * k + rest * rest


def bound_table(n: int) -> BoundTable:
    if n < 1:
        raise OutOfRange(f"n must be >= 1, got {n}")
    return BoundTable(n, tuple(e_k(n, k) for k in range(1, n + 1)))


def reference_comparison() -> ReferenceComparison:
    return ReferenceComparison(
        mk=(1.0, math.sqrt(2), 2.0),
        bi2=(8.0, 8.0, 16.0),
        wy=tuple(bound_table(3).e),
    )


def two_qubit_pure_value(p: float, q: float | None = None) -> float:
    """``2 + 4pq`` for Schmidt coefficients ``p, q``."""
    if q is None:
        if not 0 <= p <= 1:
            raise NotNormalized(f"p must lie in [0, 1], got {p}")
        q = math.sqrt(1 - p * p)
    if p < 0 or q < 0 or abs(p * p + q * q - 1) > NORM_TOL:
        raise NotNormalized(f"p^2 + q^2 = {p * p + q * q!r}")
    return 2 + 4 * p * q


def werner_closed_form(n: int, lam: float) -> float:
    """Nonlocal skew information of ``lam |GHZ><GHZ| + (1 - lam) I / 2^n``."""
    if n < 2 or not 0 <= lam <= 1:
        raise OutOfRange(f"need n >= 2 and lambda in [0, 1], got n={n}, lambda={lam}")
    eps = (1 - lam) / 2**n
    root_eps = math.sqrt(eps)
    f = math.sqrt(lam + eps) - root_eps
    return (lam - 2 * root_eps * f) * n * n


def lambda_threshold(n: int) -> float:
    """Mixing weight above which the Werner-GHZ value exceeds ``n``."""
    if n < 2:
        raise OutOfRange(f"n must be >= 2, got {n}")
    return (1 / n) * (1 - 1 / 2 ** (n - 1)) + math.sqrt(
        (1 / (2 ** (n - 2) * n)) * (1 - 1 / n + 1 / (2**n * n))
    )


def lambda_threshold_bisect(n: int, xtol: float = 1e-14) -> float:
    """Root of ``werner_closed_form(n, .) - n`` by bisection; cross-checks the formula."""
    if n < 2:
        raise OutOfRange(f"n must be >= 2, got {n}")
    return bisect(lambda lam: werner_closed_form(n, lam) - n, 0.0, 1.0, xtol=xtol)


def werner_separability_threshold(n: int) -> float:
    """Largest separable mixing weight, ``1 / (1 + 2^(n-1))`` (quoted result)."""
    if n < 2:
        raise OutOfRange(f"n must be >= 2, got {n}")
    return 1 / (1 + 2 ** (n - 1))


def werner_value_at_separability_threshold(n: int) -> float:
    return (2 - math.sqrt(3)) * n * n / (1 + 2 ** (n - 1))


def lambda_bracket_check(n: int) -> tuple[float, float, bool]:
    if n < 8:
        raise OutOfRange(f"bracket is only stated for n >= 8, got {n}")
    lo, hi = (1 / (n - 1), 1 / (n - 2)) if n <= 12 else (1 / n, 1 / (n - 1))
    lam = lambda_threshold(n)
    return lo, hi, lo < lam < hi


def gen_ghz_objective(z, c: float) -> float:
    """Skew information of ``alpha|000> + beta|111>`` as a function of the z
    components ``z = (a_13, a_23, a_33)`` of the three Bloch vectors, with
    ``c = (alpha^2 - beta^2)^2``."""
    z1, z2, z3 = z
    return 3 + 2 * (z1 * z2 + z1 * z3 + z2 * z3) - c * (z1 + z2 + z3) ** 2


def gen_ghz_value(alpha: float, beta: float) -> float:
    """Supremum of ``gen_ghz_objective`` over the cube: ``max(3, 9 - 9c)``.

    The ``9 - 9c`` branch is only optimal for ``c <= 2/3``; beyond that the
    best choice is ``z = 0`` (all observables in the xy plane) giving 3.
    """
    if alpha < 0 or beta < 0 or abs(alpha**2 + beta**2 - 1) > NORM_TOL:
        raise NotNormalized(f"need alpha, beta >= 0 with alpha^2 + beta^2 = 1")
    c = (alpha**2 - beta**2) ** 2
    return max(3.0, 9 - 9 * c)


def gen_ghz_detection_threshold() -> float:
    """Both coefficients must exceed this for the value to exceed 3."""
    return math.sqrt((1 - math.sqrt(2 / 3)) / 2)
