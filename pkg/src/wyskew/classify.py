"""Entanglement-depth certification from a nonlocal skew information value.

A state that is at most k-entangled satisfies ``I(rho) <= E_k``, so a value
above ``E_k`` certifies that at least ``k + 1`` particles are entangled. The
converse does not hold: a small value certifies nothing (some fully entangled
Werner-GHZ mixtures have values close to zero).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .bounds import BoundTable, bound_table, e_k
from .errors import OutOfRange
from .observables import local_sum_operator, observables_from_axes
from .skew import skew_information
from .states import DensityMatrix, basis_state, ghz_state, product_pure

DEFAULT_MARGIN = 1e-6


@dataclass(frozen=True)
class EntanglementVerdict:
    n: int
    i_value: float
    certified_min_class: int
    fully_entangled_certified: bool
    thresholds: BoundTable
    margin: float = DEFAULT_MARGIN

    def describe(self) -> str:
        if self.certified_min_class == 1:
            return "no entanglement certified (this does not imply separability)"
        if self.fully_entangled_certified:
            return f"fully entangled (all {self.n} particles) certified"
        return f"at least {self.certified_min_class}-entangled certified"


def classify(i_value: float, n: int, margin: float = DEFAULT_MARGIN) -> EntanglementVerdict:
    """``certified_min_class = 1 + #{k : i_value > E_k + margin}``.

    ``margin`` is a safety band: optimizer values are lower bounds on the
    supremum and carry rounding error.
    """
    if n < 2:
        raise OutOfRange(f"n must be >= 2, got {n}")
    if i_value < 0 or i_value > n * n + 1e-6 or not np.isfinite(i_value):
        raise OutOfRange(f"i_value must lie in [0, n^2] = [0, {n * n}], got {i_value}")
    table = bound_table(n)
    exceeded = sum(1 for e in table.e if i_value > e + margin)
    return EntanglementVerdict(
        n=n,
        i_value=float(i_value),
        certified_min_class=1 + exceeded,
        fully_entangled_certified=i_value > table.at(n - 1) + margin,
        thresholds=table,
        margin=margin,
    )


def attainment_blocks(n: int, k: int) -> list[int]:
    """Block sizes: ``n // k`` blocks of ``k`` and one block with the remainder."""
    if not 1 <= k <= n:
        raise OutOfRange(f"need 1 <= k <= n, got n={n}, k={k}")
    blocks, rest = divmod(n, k)
    return [k] * blocks + ([rest] if rest else [])


def _block_state(size: int):
    # a one-qubit "GHZ block" is |0>, which has variance 1 under sigma_x
    return basis_state(0, (2,)) if size == 1 else ghz_state(size)


def attainment_state(n: int, k: int) -> DensityMatrix:
    """Product of GHZ blocks whose skew information reaches ``E_k``."""
    return product_pure([_block_state(s) for s in attainment_blocks(n, k)]).density()


def attainment_axes(n: int, k: int) -> tuple[str, float]:
    """Search sigma_x / sigma_z per block for the axis string that maximizes the
    skew information of ``attainment_state(n, k)``. Returns ``(axes, value)``."""
    blocks = attainment_blocks(n, k)
    psi = product_pure([_block_state(s) for s in blocks])
    rho = psi.density()
    best = ("", -1.0)
    for choice in itertools.product("xz", repeat=len(blocks)):
        axes = "".join(c * s for c, s in zip(choice, blocks))
        value = skew_information(rho, local_sum_operator(observables_from_axes(axes))).value
        if value > best[1]:
            best = (axes, value)
    return best


def attainment_check(n: int, k: int) -> tuple[float, int]:
    """``(achieved, E_k)`` for the block construction."""
    return attainment_axes(n, k)[1], e_k(n, k)
