"""The determinant sector, specific to the special unitary group: averages
with exactly N more factors of U than of U-dagger.

The n = 0 base case is the epsilon-tensor integral, equivalently det K at the
generating-function level.  For n >= 1 the trace-monomial coefficients come
from two independent routes: the dimension-shift relation applied to the
balanced-sector table, and the recursion system whose only differences from
the balanced one are the N -> N+1 replacement in the delta-contraction term
and an extra (N+n) factor on the right-hand side.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

import numpy as np

from .exactmath import N, PolyN, RatFuncN
from .partitions import Partition, enumerate_partitions
from .weingarten import (
    MAX_WEIGHT,
    CoeffTable,
    SectorError,
    SourceMatrices,
    recursion_step,
    weingarten_table_character,
)


def _levi_civita(indices: Sequence[int], dim: int) -> int:
    """Sign of the index tuple as a permutation of 1..dim; 0 on repeats."""
    if sorted(indices) != list(range(1, dim + 1)):
        return 0
    perm = [x - 1 for x in indices]
    sign = 1
    seen = [False] * dim
    for start in range(dim):
        if seen[start]:
            continue
        length = 0
        a = start
        while not seen[a]:
            seen[a] = True
            a = perm[a]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def epsilon_integral(i: Sequence[int], j: Sequence[int],
                     dim: int) -> Fraction:
    """Exact Haar average over the special unitary group of
    U_{i1 j1} ... U_{iN jN} (one factor per dimension, no daggers):
    the product of the two epsilon signs divided by N!.  Indices 1-based."""
    if len(i) != dim or len(j) != dim:
        raise ValueError(f"index lists must have length {dim}")
    return Fraction(_levi_civita(i, dim) * _levi_civita(j, dim),
                    factorial(dim))


def _rising_product(n: int) -> PolyN:
    """(N+n)(N+n-1)...(N+1); the empty product (n=0) is 1."""
    out = PolyN([1])
    for k in range(1, n + 1):
        out = out * (N + k)
    return out


@lru_cache(maxsize=None)
def shifted_table(n: int) -> CoeffTable:
    """Determinant-sector table via the dimension-shift relation:
    entry(alpha) = (N+n)(N+n-1)...(N+1) * balanced entry(alpha) at N+1."""
    if n < 0:
        raise ValueError("weight must be nonnegative")
    base = weingarten_table_character(n)
    scale = _rising_product(n)
    entries = {a: scale * v.shifted(1) for a, v in base.entries.items()}
    return CoeffTable(n=n, family="su-shifted", entries=entries)


@lru_cache(maxsize=None)
def shifted_table_recursive(n: int) -> CoeffTable:
    """Determinant-sector table from the recursion system alone, anchored at
    the weight-0 base {empty: 1} (the epsilon-tensor / det K case)."""
    if n < 0:
        raise ValueError("weight must be nonnegative")
    if n > MAX_WEIGHT:
        raise ValueError(f"weight {n} above supported cap {MAX_WEIGHT}")
    if n == 0:
        return CoeffTable(n=0, family="su-shifted",
                          entries={Partition(): RatFuncN(1)})
    prev = shifted_table_recursive(n - 1)
    entries = recursion_step(prev, marked=N + 1, rhs_scale=(N + n) * n)
    return CoeffTable(n=n, family="su-shifted", entries=entries)


def eval_shifted(n: int, src: SourceMatrices) -> complex:
    """Numeric value of the determinant-sector generating integral: the Haar
    average over SU(dim) of (tr KU)^(dim+n) (tr J U-dagger)^n, equal to
    det K times the coefficient-weighted sum of trace monomials t_alpha."""
    if n < 0:
        raise ValueError("weight must be nonnegative")
    if n >= src.dim:
        raise SectorError(
            f"weight {n} not below dimension {src.dim}: outside validity domain")
    det_k = complex(np.linalg.det(src.K))
    if n == 0:
        return det_k
    table = shifted_table(n)
    total = complex(0)
    for alpha, coeff in table.entries.items():
        total += float(coeff.evaluate(src.dim)) * src.trace_monomial(alpha)
    return det_k * total


def check_shift_identity(n: int) -> list[dict]:
    """Confirm, per partition of n, that the recursion-derived
    determinant-sector entry matches the pole-stripped numerator of the
    balanced entry evaluated one dimension up.

    The balanced entry times N^2 (N^2-1) ... (N^2-(n-1)^2) must be a
    polynomial P; the claim is entry * (N+1) N (N-1) ... (N-(n-2)) = P(N+1).
    The determinant-sector side uses the recursion route so the two tables
    enter through independent derivations.
    """
    if n < 1:
        raise ValueError("weight must be positive")
    balanced = weingarten_table_character(n)
    shifted = shifted_table_recursive(n)
    even_product = PolyN([1])      # N^2 (N^2-1) ... (N^2-(n-1)^2)
    down_product = PolyN([1])      # (N+1) N (N-1) ... (N-(n-2))
    for m in range(n):
        even_product = even_product * (N**2 - m * m)
        down_product = down_product * (N + 1 - m)
    report = []
    for alpha in enumerate_partitions(n):
        stripped = balanced[alpha] * even_product
        ok = stripped.is_polynomial
        if ok:
            ok = shifted[alpha] * down_product == stripped.shifted(1)
        report.append({
            "partition": alpha.to_string(),
            "ok": bool(ok),
            "numerator": str(stripped) if stripped.is_polynomial else None,
        })
    return report
