"""Deterministic arithmetic in GF(2^m).

Field elements are plain Python ints: bit i of the int is the coefficient
of X^i in the representative polynomial, reduced modulo a fixed
irreducible polynomial of degree m. Addition is XOR; the ints 0 and 1 are
the field's zero and one.

Construction is pinned so that every value is reproducible across runs
and platforms: ``field_new(m)`` picks the smallest irreducible modulus of
degree m (smallest as an integer bitmask, constant term 1) and the
smallest element of full multiplicative order as the generator gamma.
All quantities computed downstream (APN property, counts, ranks,
automorphism orders) are invariant under field isomorphism, so the choice
is free; determinism is what matters.

For m <= 16 a log/antilog table pair is built eagerly, which also powers
the vectorized (numpy) helpers used by the truth-table constructors.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ParameterError

MAX_M = 32
_TABLE_MAX_M = 16


def _prime_factors(x: int) -> list[int]:
    """Distinct prime factors of x by trial division (x <= 2^32)."""
    out = []
    d = 2
    while d * d <= x:
        if x % d == 0:
            out.append(d)
            while x % d == 0:
                x //= d
        d += 1
    if x > 1:
        out.append(x)
    return out


def _clmul_mod(a: int, b: int, modulus: int, m: int) -> int:
    """Carry-less product of a and b reduced modulo `modulus` (degree m)."""
    r = 0
    top = 1 << m
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= modulus
    return r


def _poly_mod(a: int, b: int) -> int:
    """Remainder of polynomial a modulo nonzero polynomial b over F_2."""
    db = b.bit_length() - 1
    while a.bit_length() - 1 >= db and a:
        a ^= b << (a.bit_length() - 1 - db)
    return a


def _poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _poly_mod(a, b)
    return a


def is_irreducible(poly: int, m: int) -> bool:
    """Whether `poly` is an irreducible degree-m polynomial usable as modulus.

    Uses the Frobenius criterion: X^(2^m) = X mod poly together with
    gcd(X^(2^(m/p)) - X, poly) = 1 for every prime p dividing m. Degree-1
    polynomials must have constant term 1 (X itself is excluded; it cannot
    serve as a field modulus).
    """
    if poly.bit_length() - 1 != m:
        return False
    if not poly & 1:
        return False
    if m == 1:
        return True
    frob = {}
    t = 2  # the element X
    for j in range(1, m + 1):
        t = _clmul_mod(t, t, poly, m)
        frob[j] = t
    if frob[m] != 2:
        return False
    for p in _prime_factors(m):
        if _poly_gcd(frob[m // p] ^ 2, poly) != 1:
            return False
    return True


class FieldCtx:
    """A concrete model of GF(2^m): modulus, generator, arithmetic.

    Instances are immutable after construction and safe to share across
    threads; every operation is a pure function of its inputs.
    """

    __slots__ = ("m", "modulus", "gamma", "order", "_exp", "_log")

    def __init__(self, m: int, modulus: int, gamma: int | None = None):
        if not 1 <= m <= MAX_M:
            raise ParameterError(f"m must be in 1..{MAX_M}, got {m}")
        if not is_irreducible(modulus, m):
            raise ParameterError(
                f"modulus {modulus:#x} is not an irreducible polynomial of degree {m}"
            )
        self.m = m
        self.modulus = modulus
        self.order = 1 << m
        self._exp = None
        self._log = None
        if gamma is None:
            gamma = self._find_generator()
        elif not self._has_full_order(gamma):
            raise ParameterError(f"gamma {gamma:#x} does not have order 2^m - 1")
        self.gamma = gamma
        if m <= _TABLE_MAX_M:
            self._build_tables()

    # -- construction helpers -------------------------------------------

    def _raw_mul(self, a: int, b: int) -> int:
        return _clmul_mod(a, b, self.modulus, self.m)

    def _raw_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._raw_mul(r, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return r

    def _has_full_order(self, g: int) -> bool:
        q1 = self.order - 1
        if g == 0 or self._raw_pow(g, q1) != 1:
            return False
        return all(self._raw_pow(g, q1 // p) != 1 for p in _prime_factors(q1))

    def _find_generator(self) -> int:
        for g in range(1, self.order):
            if self._has_full_order(g):
                return g
        raise AssertionError("no generator found; modulus not irreducible?")

    def _build_tables(self):
        q1 = self.order - 1
        exp = np.zeros(2 * q1 + 1, dtype=np.int64)
        log = np.full(self.order, -1, dtype=np.int64)
        v = 1
        for i in range(q1):
            exp[i] = v
            log[v] = i
            v = self._raw_mul(v, self.gamma)
        exp[q1 : 2 * q1] = exp[:q1]
        exp[2 * q1] = 1
        self._exp = exp
        self._log = log

    # -- scalar arithmetic ----------------------------------------------

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if self._log is not None:
            if a == 0 or b == 0:
                return 0
            return int(self._exp[self._log[a] + self._log[b]])
        return self._raw_mul(a, b)

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def pow(self, a: int, e: int) -> int:
        """a**e with exponent reduction mod 2^m - 1; 0**0 is defined as 1."""
        if e < 0:
            raise ParameterError("exponent must be nonnegative")
        if a == 0:
            return 1 if e == 0 else 0
        e %= self.order - 1
        if self._log is not None:
            return int(self._exp[(self._log[a] * e) % (self.order - 1)])
        return self._raw_pow(a, e)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ParameterError("cannot invert zero")
        if self._log is not None:
            return int(self._exp[(self.order - 1) - self._log[a]])
        return self._raw_pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def dlog(self, a: int) -> int:
        """Discrete log base gamma (0 <= dlog < 2^m - 1); a must be nonzero."""
        if a == 0:
            raise ParameterError("zero has no discrete logarithm")
        if self._log is not None:
            return int(self._log[a])
        v, i = 1, 0
        while v != a:
            v = self._raw_mul(v, self.gamma)
            i += 1
        return i

    def is_cube(self, a: int) -> bool:
        """Whether nonzero a is a cube; only meaningful for even m.

        For odd m every nonzero element is a cube (gcd(3, 2^m - 1) = 1), so
        calling this is a caller bug and raises.
        """
        if self.m % 2 != 0:
            raise ParameterError(
                "is_cube requires even m; for odd m every nonzero element is a cube"
            )
        if a == 0:
            raise ParameterError("is_cube is undefined at zero")
        return self.pow(a, (self.order - 1) // 3) == 1

    def elements(self) -> range:
        return range(self.order)

    def nonzero_elements(self) -> range:
        return range(1, self.order)

    def non_cubes(self) -> list[int]:
        return [a for a in self.nonzero_elements() if not self.is_cube(a)]

    # -- vectorized arithmetic (requires tables, i.e. m <= 16) -----------

    def _require_tables(self):
        if self._log is None:
            raise ParameterError(
                f"vectorized operations need log tables (m <= {_TABLE_MAX_M}), have m={self.m}"
            )

    def mul_array(self, a: np.ndarray, b: int) -> np.ndarray:
        """Elementwise a[i] * b for an int64 array; zeros stay zero."""
        self._require_tables()
        if b == 0:
            return np.zeros_like(a, dtype=np.int64)
        lb = int(self._log[b])
        out = self._exp[self._log[a] + lb]
        return np.where(a == 0, 0, out)

    def pow_array(self, a: np.ndarray, e: int) -> np.ndarray:
        """Elementwise a[i]**e (e >= 0); follows the scalar pow conventions."""
        self._require_tables()
        if e == 0:
            return np.ones_like(a, dtype=np.int64)
        e %= self.order - 1
        if e == 0:
            e = self.order - 1  # a^(q-1) = 1 for nonzero a
        out = self._exp[(self._log[a] * e) % (self.order - 1)]
        return np.where(a == 0, 0, out)

    def mul_outer(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Outer product table a[i] * b[j], shape (len(a), len(b))."""
        self._require_tables()
        la = self._log[a][:, None]
        lb = self._log[b][None, :]
        out = self._exp[(la + lb) % (self.order - 1)]
        zero = (a == 0)[:, None] | (b == 0)[None, :]
        return np.where(zero, 0, out)

    def frobenius_table(self, i: int) -> np.ndarray:
        """Array F with F[x] = x^(2^i) over all field elements."""
        self._require_tables()
        xs = np.arange(self.order, dtype=np.int64)
        return self.pow_array(xs, 1 << (i % self.m))

    # -- misc -------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and (self.m, self.modulus, self.gamma) == (other.m, other.modulus, other.gamma)
        )

    def __hash__(self):
        return hash((self.m, self.modulus, self.gamma))

    def __repr__(self):
        return f"FieldCtx(m={self.m}, modulus={self.modulus:#x}, gamma={self.gamma:#x})"


def field_new(m: int) -> FieldCtx:
    """Build GF(2^m) with the smallest irreducible modulus and generator.

    The modulus is the lexicographically smallest irreducible polynomial of
    degree m (as an integer bitmask) and gamma the smallest element of
    multiplicative order 2^m - 1, so results are deterministic everywhere.
    """
    if not 1 <= m <= MAX_M:
        raise ParameterError(f"m must be in 1..{MAX_M}, got {m}")
    for cand in range((1 << m) + 1, 1 << (m + 1), 2):
        if is_irreducible(cand, m):
            return FieldCtx(m, cand)
    raise AssertionError(f"no irreducible polynomial of degree {m} found")


def field_with_modulus(m: int, modulus: int) -> FieldCtx:
    """Build GF(2^m) over a caller-chosen irreducible modulus."""
    return FieldCtx(m, modulus)


def gcd_pow2_identities(k: int, m: int) -> tuple[int, int]:
    """(gcd(2^k - 1, 2^m - 1), gcd(2^k + 1, 2^m - 1)) by integer gcd.

    Serves as the computational side of the closed forms
    gcd(2^k - 1, 2^m - 1) = 2^gcd(k, m) - 1 and, for even m with
    gcd(k, m) = 1, gcd(2^k + 1, 2^m - 1) = 3.
    """
    if k < 1 or m < 1:
        raise ParameterError("k and m must be >= 1")
    return math.gcd(2**k - 1, 2**m - 1), math.gcd(2**k + 1, 2**m - 1)


def solve_scaled_congruence(ctx: FieldCtx, k: int, s: int, rhs: int) -> int:
    """Smallest c >= 0 with (2^k + 1) * 2^s * c = rhs  (mod 2^m - 1).

    Requires even m and gcd(k, m) = 1, so that the coefficient has gcd 3
    with 2^m - 1; a solution exists iff rhs is divisible by 3.
    """
    m = ctx.m
    if m % 2 != 0:
        raise ParameterError("solve_scaled_congruence requires even m")
    if math.gcd(k, m) != 1:
        raise ParameterError(f"k={k} must be coprime to m={m}")
    modulus = ctx.order - 1
    a = ((pow(2, k, modulus) + 1) * pow(2, s, modulus)) % modulus
    g = math.gcd(a, modulus)
    rhs %= modulus
    if rhs % g != 0:
        raise ParameterError(
            f"no solution: rhs={rhs} is not divisible by {g} (caller bug: rhs must be divisible by 3)"
        )
    m2 = modulus // g
    return (rhs // g) * pow(a // g, -1, m2) % m2
