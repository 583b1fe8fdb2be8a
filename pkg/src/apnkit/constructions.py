"""Gold and Pott-Zhou constructors, parameter validation, and counting.

The Pott-Zhou family on GF(2^m)^2, m even, is

    f_{k,s,alpha}(x, y) = (x^(2^k+1) + alpha * y^((2^k+1) 2^s),  x y)

which is APN exactly when gcd(k, m) = 1, s is even, and alpha is a
non-cube. Distinct canonical parameter pairs (k, s) with 0 < k < m/2 and
0 <= s <= m/2 give pairwise CCZ-inequivalent functions, which yields the
closed count (floor(m/4) + 1) * phi(m) / 2 reproduced here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .gf2m import FieldCtx
from .vbf import VBF, power_function


def totient(m: int) -> int:
    result = m
    x = m
    d = 2
    while d * d <= x:
        if x % d == 0:
            result -= result // d
            while x % d == 0:
                x //= d
        d += 1
    if x > 1:
        result -= result // x
    return result


@dataclass(frozen=True)
class PottZhouParams:
    """Parameters (m, k, s, alpha) of a Pott-Zhou function.

    Validation enforces the APN characterization (m even, gcd(k, m) = 1,
    s even, alpha a non-cube). The canonical range 0 < k < m/2,
    0 <= s <= m/2 is deliberately not required: the equivalence-witness
    machinery needs instances like f_{-k,s} and f_{k,-s} with k, s reduced
    mod m only.
    """

    m: int
    k: int
    s: int
    alpha: int

    @classmethod
    def default(cls, ctx: FieldCtx, k: int, s: int) -> "PottZhouParams":
        """Parameters with alpha = gamma, which is a non-cube for even m
        (its order 2^m - 1 is divisible by 3)."""
        return cls(ctx.m, k, s, ctx.gamma)

    def validate(self, ctx: FieldCtx) -> None:
        if self.m != ctx.m:
            raise ParameterError(f"params have m={self.m} but field has m={ctx.m}")
        if self.m % 2 != 0:
            raise ParameterError("m must be even")
        if math.gcd(self.k, self.m) != 1:
            raise ParameterError(f"k must be coprime to m: gcd({self.k}, {self.m}) != 1")
        if self.s % 2 != 0:
            raise ParameterError("s must be even")
        if not 0 < self.alpha < ctx.order:
            raise ParameterError("alpha must be a nonzero field element")
        if ctx.is_cube(self.alpha):
            raise ParameterError(f"alpha={self.alpha:#x} must be a non-cube")

    @property
    def is_canonical(self) -> bool:
        if self.m == 2:
            return (self.k, self.s) == (1, 0)
        return 0 < self.k < self.m / 2 and 0 <= self.s <= self.m // 2 and self.s % 2 == 0


def pott_zhou(
    ctx: FieldCtx,
    params: PottZhouParams,
    *,
    unsafe_skip_validation: bool = False,
) -> VBF:
    """Truth table of f_{k,s,alpha} on n = 2m.

    `unsafe_skip_validation` bypasses the parameter check so that the
    necessity of the APN conditions (s even, alpha non-cube) can be
    exercised; the resulting table is then typically not APN.
    """
    if not unsafe_skip_validation:
        params.validate(ctx)
    elif params.m != ctx.m:
        raise ParameterError(f"params have m={params.m} but field has m={ctx.m}")
    m, q = ctx.m, ctx.order
    k = params.k % m
    s = params.s % m
    e1 = (1 << k) + 1
    xs = np.arange(q, dtype=np.int64)
    fx = ctx.pow_array(xs, e1)                                  # x^(2^k+1)
    fy = ctx.mul_array(ctx.pow_array(xs, e1 << s), params.alpha)  # alpha*y^((2^k+1)2^s)
    low = fy[:, None] ^ fx[None, :]       # rows indexed by y, cols by x
    high = ctx.mul_outer(xs, xs)          # y*x
    return VBF(2 * m, (low | (high << m)).ravel())


def gold(ctx: FieldCtx, k: int) -> VBF:
    """Gold power map x -> x^(2^k+1) on GF(2^m); requires gcd(k, m) = 1."""
    if math.gcd(k, ctx.m) != 1:
        raise ParameterError(f"k must be coprime to m: gcd({k}, {ctx.m}) != 1")
    return power_function(ctx, (1 << (k % ctx.m)) + 1)


def canonicalize(m: int, k: int, s: int) -> tuple[int, int]:
    """Map (k, s) to the canonical representative (k', s') with
    0 < k' < m/2 and 0 <= s' <= m/2, using k' in {k, -k} and
    s' in {s, -s} mod m."""
    if m < 2 or m % 2 != 0:
        raise ParameterError("m must be even and >= 2")
    if math.gcd(k, m) != 1:
        raise ParameterError(f"k must be coprime to m: gcd({k}, {m}) != 1")
    if s % 2 != 0:
        raise ParameterError("s must be even")
    k %= m
    s %= m
    return min(k, m - k), min(s, (m - s) % m)


def enumerate_canonical(m: int) -> list[tuple[int, int]]:
    """All canonical (k, s) pairs in lexicographic order.

    For m = 2 the range 0 < k < m/2 is vacuous; the single class is
    represented by (1, 0)."""
    if m < 2 or m % 2 != 0:
        raise ParameterError("m must be even and >= 2")
    if m == 2:
        return [(1, 0)]
    return [
        (k, s)
        for k in range(1, (m + 1) // 2)
        if math.gcd(k, m) == 1
        for s in range(0, m // 2 + 1, 2)
    ]


def count_inequivalent(m: int) -> int:
    """(floor(m/4) + 1) * phi(m) / 2 pairwise CCZ-inequivalent Pott-Zhou
    functions on GF(2^m)^2, for even m >= 4; one for m = 2."""
    if m < 2 or m % 2 != 0:
        raise ParameterError("m must be even and >= 2")
    if m == 2:
        return 1
    return (m // 4 + 1) * totient(m) // 2


def count_bounds(m: int) -> tuple[float, float]:
    """(m*sqrt(m)/2, m*(m+4)/16): lower (valid for m > 210) and upper
    (valid for all even m >= 4, sharp at powers of 2) bounds on the count."""
    if m < 4 or m % 2 != 0:
        raise ParameterError("m must be even and >= 4")
    return m * math.sqrt(m) / 2, m * (m + 4) / 16
