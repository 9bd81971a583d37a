"""The balanced sector: averages of n matrix elements of U against n of
U-dagger over the unitary group.

Two independent derivations of the coefficient table are provided.  The
character formula sums over irreducibles of S_n; the recursion route solves
the overdetermined linear system obtained by differentiating the generating
integral once in each source and matching coefficients of the formally
independent tensors (JK)^m_{il} * t_beta.  Their agreement is a regression
test, not an implementation shortcut: neither calls the other.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from pathlib import Path
from typing import Sequence

import numpy as np

from .exactmath import (
    N,
    PolyN,
    RatFuncN,
    solve_linear_system,
)
from .partitions import (
    Partition,
    class_size,
    character,
    dim_gl,
    dim_sn,
    enumerate_diagrams,
    enumerate_partitions,
)

MAX_WEIGHT = 8          # table sizes stay desk-scale; p(8) = 22 unknowns
MAX_TENSOR_WEIGHT = 6   # the (n!)^2 pair sum is capped here


class SectorError(ValueError):
    """Requested evaluation outside the validity domain (e.g. n >= N)."""


@dataclass(frozen=True)
class CoeffTable:
    """Coefficients of the trace monomials t_alpha for one sector weight.

    ``entries`` is keyed by every partition of ``n`` in enumeration order;
    ``family`` is "weingarten" for the balanced sector and "su-shifted" for
    the determinant sector.
    """

    n: int
    family: str
    entries: dict[Partition, RatFuncN]

    def __post_init__(self):
        expected = enumerate_partitions(self.n)
        if list(self.entries.keys()) != expected:
            raise ValueError("entries must cover all partitions of n "
                             "in enumeration order")

    def __getitem__(self, alpha: Partition) -> RatFuncN:
        return self.entries[alpha]

    def as_json_dict(self) -> dict:
        return {
            "n": self.n,
            "family": self.family,
            "entries": [
                {"partition": a.to_string(), "value": str(v)}
                for a, v in self.entries.items()
            ],
        }


@dataclass(frozen=True, eq=False)
class SourceMatrices:
    """A pair of square complex source matrices of matching dimension."""

    J: np.ndarray
    K: np.ndarray

    def __post_init__(self):
        j = np.asarray(self.J, dtype=complex)
        k = np.asarray(self.K, dtype=complex)
        if j.shape != k.shape or j.ndim != 2 or j.shape[0] != j.shape[1]:
            raise ValueError("J and K must be square matrices of equal size")
        object.__setattr__(self, "J", j)
        object.__setattr__(self, "K", k)

    @property
    def dim(self) -> int:
        return self.J.shape[0]

    def trace_powers(self, n_max: int) -> list[complex]:
        """[t_1, ..., t_n_max] with t_q = tr((JK)^q)."""
        m = self.J @ self.K
        out = []
        power = np.eye(self.dim, dtype=complex)
        for _ in range(n_max):
            power = power @ m
            out.append(complex(np.trace(power)))
        return out

    def trace_monomial(self, alpha: Partition) -> complex:
        t = self.trace_powers(max((q for q, _ in alpha.items()), default=0))
        value = complex(1)
        for q, m in alpha.items():
            value *= t[q - 1] ** m
        return value

    @classmethod
    def from_json_dict(cls, payload: dict) -> SourceMatrices:
        dim = int(payload["N"])

        def decode(data):
            # primary layout: N*N entries as [re, im] pairs, row-major;
            # a nested row-of-rows layout is accepted as well
            if len(data) == dim * dim and (
                    dim * dim != dim or not isinstance(data[0][0], list)):
                flat = [complex(re, im) for re, im in data]
                return np.array(flat).reshape(dim, dim)
            if len(data) == dim:
                mat = np.array([[complex(re, im) for re, im in row]
                                for row in data])
                if mat.shape == (dim, dim):
                    return mat
            raise ValueError("matrix entries do not match N")

        return cls(decode(payload["J"]), decode(payload["K"]))

    @classmethod
    def from_json_file(cls, path: str | Path) -> SourceMatrices:
        with open(path, encoding="utf-8") as fh:
            return cls.from_json_dict(json.load(fh))

    def as_json_dict(self) -> dict:
        def encode(mat):
            return [[float(z.real), float(z.imag)] for z in mat.reshape(-1)]

        return {"N": self.dim, "J": encode(self.J), "K": encode(self.K)}


@lru_cache(maxsize=None)
def weingarten_class_coefficient(alpha: Partition) -> RatFuncN:
    """The class function C on S_n whose permutation-pair sum gives the
    balanced-sector integral: sum over diagrams lam of weight n of
    dim(lam)^2 chi^lam(alpha) / (n!^2 dim_gl(lam))."""
    n = alpha.weight
    total = RatFuncN(0)
    scale = Fraction(1, factorial(n) ** 2)
    for lam in enumerate_diagrams(n):
        num = scale * dim_sn(lam) ** 2 * character(lam, alpha)
        if num:
            total = total + RatFuncN(PolyN([num]), dim_gl(lam))
    return total


def weingarten_table_character(n: int) -> CoeffTable:
    """Coefficient table for the balanced sector via the character formula:
    entry(alpha) = class_size(alpha) * C(alpha)."""
    if n < 0:
        raise ValueError("weight must be nonnegative")
    entries = {a: class_size(a) * weingarten_class_coefficient(a)
               for a in enumerate_partitions(n)}
    return CoeffTable(n=n, family="weingarten", entries=entries)


# -- recursion route ---------------------------------------------------------
#
# Differentiating the weight-n generating integral once in each source turns
# every trace monomial t_alpha into a combination of tensors
# (JK)^m_{il} * t_beta with m + |beta| = n - 1 (with (JK)^0 = delta).  Those
# tensors are formally independent for generic sources, so matching their
# coefficients against the weight-(n-1) side yields one equation per (m, beta)
# and one unknown per alpha: an overdetermined exact linear system.

def _recursion_contributions(alpha: Partition, marked: PolyN):
    """Yield ((m, beta), coefficient) rows produced by one unknown.

    ``marked`` is the polynomial multiplying the delta-contraction term: N for
    the balanced sector, N+1 for the determinant sector.
    """
    for q, aq in alpha.items():
        hat = alpha.remove_part(q)
        yield (q - 1, hat), marked * (q * aq)
        for s in range(1, q):
            yield (q - s - 1, hat.add_part(s)), q * aq
        if aq >= 2:
            yield (2 * q - 1, hat.remove_part(q)), q * q * aq * (aq - 1)
        for r, ar in alpha.items():
            if r > q:
                yield (q + r - 1, hat.remove_part(r)), 2 * q * r * aq * ar


def recursion_step(prev: CoeffTable, marked: PolyN,
                   rhs_scale: PolyN | int) -> dict[Partition, RatFuncN]:
    """Solve the weight-(n) coefficients from the weight-(n-1) table.

    The right-hand side row (0, beta) receives rhs_scale * prev[beta]; all
    other rows are homogeneous.  Raises the solver's fatal diagnostics if the
    overdetermined system is rank-deficient or inconsistent.
    """
    n = prev.n + 1
    cols = enumerate_partitions(n)
    row_keys = [(m, beta)
                for m in range(n)
                for beta in enumerate_partitions(n - 1 - m)]
    index = {key: i for i, key in enumerate(row_keys)}
    matrix = [[RatFuncN(0)] * len(cols) for _ in row_keys]
    for c, alpha in enumerate(cols):
        for key, coeff in _recursion_contributions(alpha, marked):
            matrix[index[key]][c] = matrix[index[key]][c] + coeff
    rhs = [RatFuncN(0)] * len(row_keys)
    for beta in enumerate_partitions(n - 1):
        rhs[index[(0, beta)]] = rhs_scale * prev[beta]
    solution = solve_linear_system(matrix, rhs)
    return dict(zip(cols, solution))


@lru_cache(maxsize=None)
def weingarten_table_recursive(n: int) -> CoeffTable:
    """Balanced-sector table derived from the recursion system alone."""
    if n < 0:
        raise ValueError("weight must be nonnegative")
    if n > MAX_WEIGHT:
        raise ValueError(f"weight {n} above supported cap {MAX_WEIGHT}")
    if n == 0:
        return CoeffTable(n=0, family="weingarten",
                          entries={Partition(): RatFuncN(1)})
    prev = weingarten_table_recursive(n - 1)
    entries = recursion_step(prev, marked=N, rhs_scale=n)
    return CoeffTable(n=n, family="weingarten", entries=entries)


# -- tensor-level integral ----------------------------------------------------

def _cycle_type(sigma: Sequence[int]) -> Partition:
    seen = [False] * len(sigma)
    parts = []
    for start in range(len(sigma)):
        if seen[start]:
            continue
        length = 0
        a = start
        while not seen[a]:
            seen[a] = True
            a = sigma[a]
            length += 1
        parts.append(length)
    return Partition.from_parts(parts)


def monomial_integral(i: Sequence[int], j: Sequence[int],
                      k: Sequence[int], l: Sequence[int],
                      dim: int) -> Fraction:
    """Exact Haar average of U_{i1 j1} ... U_{in jn} * conj over index pairs
    (k, l): the balanced product of n elements of U and n of U-dagger on a
    dim-dimensional unitary group.  Indices are 1-based.  The value is real.

    Computed as the double sum over permutation pairs (tau, sigma) weighted by
    the class function C evaluated at dim, with sigma grouped by conjugacy
    class so C is evaluated once per class.
    """
    n = len(i)
    if not (len(j) == len(k) == len(l) == n):
        raise ValueError("index lists must have equal length")
    if n > MAX_TENSOR_WEIGHT:
        raise ValueError(f"monomial weight {n} above cap {MAX_TENSOR_WEIGHT}")
    if n >= dim:
        raise SectorError(
            f"weight {n} not below dimension {dim}: outside validity domain")
    for lists in (i, j, k, l):
        if any(x < 1 for x in lists):
            raise ValueError("indices are 1-based")
    if n == 0:
        return Fraction(1)

    taus = [tau for tau in itertools.permutations(range(n))
            if all(i[a] == l[tau[a]] for a in range(n))]
    if not taus:
        return Fraction(0)
    class_values = {a: weingarten_class_coefficient(a).evaluate(dim)
                    for a in enumerate_partitions(n)}
    total = Fraction(0)
    for sigma in itertools.permutations(range(n)):
        matches = sum(1 for tau in taus
                      if all(j[a] == k[tau[sigma[a]]] for a in range(n)))
        if matches:
            total += class_values[_cycle_type(sigma)] * matches
    return total


def eval_ordinary(n: int, src: SourceMatrices) -> complex:
    """Numeric value of the balanced generating integral of weight n:
    the Haar average of (tr KU)^n (tr J U-dagger)^n, computed as
    n! * sum over alpha of entry(alpha) at N=dim times t_alpha."""
    if n < 0:
        raise ValueError("weight must be nonnegative")
    if n >= src.dim:
        raise SectorError(
            f"weight {n} not below dimension {src.dim}: outside validity domain")
    if n == 0:
        return complex(1)
    table = weingarten_table_character(n)
    total = complex(0)
    for alpha, coeff in table.entries.items():
        total += float(coeff.evaluate(src.dim)) * src.trace_monomial(alpha)
    return factorial(n) * total
