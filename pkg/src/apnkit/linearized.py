"""Linearized polynomials, bivariate linear maps, and explicit
equivalence witnesses between Gold and Pott-Zhou functions.

A linearized polynomial sum(a_i X^(2^i)) evaluates to an F_2-linear map
of GF(2^m); a BivariateLinearMap is a 2x2 block of them acting on
GF(2^m)^2 as (x, y) -> (B1(x) + B3(y), B2(x) + B4(y)). An EAWitness is a
triple (L, N, M) certifying f(L(v)) = N(g(v)) + M(v) for all v, with L
and N invertible; witnesses are always checked pointwise over the full
domain, never trusted from their construction.

The witness constructors realize the explicit linear equivalences of the
Pott-Zhou family: independence of the non-cube choice (pz_alpha_witness),
the k -> -k and s -> -s symmetries (pz_sign_witness), and the monomial
and m=4 binomial self-equivalences of Gold functions.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .bitmatrix import BitMatrix
from .errors import FormatError, ParameterError
from .gf2m import FieldCtx, field_with_modulus, solve_scaled_congruence
from .vbf import VBF


@dataclass(frozen=True)
class LinearizedPoly:
    """sum(coeffs[i] * X^(2^i)) over GF(2^m); an F_2-linear map on n = m bits."""

    field: FieldCtx
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.field.m:
            raise ParameterError(f"need exactly m={self.field.m} coefficients")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "LinearizedPoly":
        return cls(ctx, (0,) * ctx.m)

    @classmethod
    def monomial(cls, ctx: FieldCtx, a: int, u: int) -> "LinearizedPoly":
        """a X^(2^u) with u taken mod m."""
        c = [0] * ctx.m
        c[u % ctx.m] = a
        return cls(ctx, tuple(c))

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "LinearizedPoly":
        return cls.monomial(ctx, 1, 0)

    @property
    def n(self) -> int:
        return self.field.m

    def __call__(self, x: int) -> int:
        ctx = self.field
        acc = 0
        for i, a in enumerate(self.coeffs):
            if a:
                acc ^= ctx.mul(a, ctx.pow(x, 1 << i))
        return acc

    def as_table(self) -> np.ndarray:
        ctx = self.field
        out = np.zeros(ctx.order, dtype=np.int64)
        for i, a in enumerate(self.coeffs):
            if a:
                out ^= ctx.mul_array(ctx.frobenius_table(i), a)
        return out

    def add(self, other: "LinearizedPoly") -> "LinearizedPoly":
        return LinearizedPoly(
            self.field, tuple(a ^ b for a, b in zip(self.coeffs, other.coeffs))
        )

    def compose(self, other: "LinearizedPoly") -> "LinearizedPoly":
        """self after other: (self o other)(x) = self(other(x))."""
        ctx = self.field
        m = ctx.m
        out = [0] * m
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[(i + j) % m] ^= ctx.mul(a, ctx.pow(b, 1 << i))
        return LinearizedPoly(ctx, tuple(out))

    def to_matrix(self) -> BitMatrix:
        """m x m F_2 matrix in the polynomial basis (column j = image of X^j)."""
        m = self.field.m
        mat = BitMatrix(m, m)
        for j in range(m):
            v = self(1 << j)
            for i in range(m):
                if (v >> i) & 1:
                    mat.set(i, j, 1)
        return mat

    def is_permutation(self) -> bool:
        return self.to_matrix().is_invertible()


@dataclass(frozen=True)
class BivariateLinearMap:
    """(x, y) -> (B1(x) + B3(y), B2(x) + B4(y)) on GF(2^m)^2, n = 2m."""

    b1: LinearizedPoly
    b2: LinearizedPoly
    b3: LinearizedPoly
    b4: LinearizedPoly

    def __post_init__(self):
        fields = {p.field for p in (self.b1, self.b2, self.b3, self.b4)}
        if len(fields) != 1:
            raise ParameterError("all four blocks must share one field")

    @property
    def field(self) -> FieldCtx:
        return self.b1.field

    @property
    def n(self) -> int:
        return 2 * self.field.m

    @classmethod
    def diagonal(cls, p: LinearizedPoly, q: LinearizedPoly) -> "BivariateLinearMap":
        z = LinearizedPoly.zero(p.field)
        return cls(p, z, z, q)

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "BivariateLinearMap":
        one = LinearizedPoly.identity(ctx)
        return cls.diagonal(one, one)

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "BivariateLinearMap":
        z = LinearizedPoly.zero(ctx)
        return cls(z, z, z, z)

    def __call__(self, x: int, y: int) -> tuple[int, int]:
        return self.b1(x) ^ self.b3(y), self.b2(x) ^ self.b4(y)

    def as_table(self) -> np.ndarray:
        m = self.field.m
        t1, t2 = self.b1.as_table(), self.b2.as_table()
        t3, t4 = self.b3.as_table(), self.b4.as_table()
        low = t3[:, None] ^ t1[None, :]   # rows y, cols x
        high = t4[:, None] ^ t2[None, :]
        return (low | (high << m)).ravel()

    def to_matrix(self) -> BitMatrix:
        m = self.field.m
        n = 2 * m
        mat = BitMatrix(n, n)
        for j in range(n):
            x, y = ((1 << j, 0) if j < m else (0, 1 << (j - m)))
            o1, o2 = self(x, y)
            v = o1 | (o2 << m)
            for i in range(n):
                if (v >> i) & 1:
                    mat.set(i, j, 1)
        return mat

    def is_invertible(self) -> bool:
        return self.to_matrix().is_invertible()

    def compose(self, other: "BivariateLinearMap") -> "BivariateLinearMap":
        """self after other."""
        b1, b2, b3, b4 = self.b1, self.b2, self.b3, self.b4
        c1, c2, c3, c4 = other.b1, other.b2, other.b3, other.b4
        return BivariateLinearMap(
            b1.compose(c1).add(b3.compose(c2)),
            b2.compose(c1).add(b4.compose(c2)),
            b1.compose(c3).add(b3.compose(c4)),
            b2.compose(c3).add(b4.compose(c4)),
        )

    def add(self, other: "BivariateLinearMap") -> "BivariateLinearMap":
        return BivariateLinearMap(
            self.b1.add(other.b1), self.b2.add(other.b2),
            self.b3.add(other.b3), self.b4.add(other.b4),
        )


LinearMap = LinearizedPoly | BivariateLinearMap


@dataclass(frozen=True)
class EAWitness:
    """(L, N, M) with f o L = N o g + M; M = None means the zero map.

    L and N must be invertible for the witness to verify. Univariate
    witnesses (Gold functions) carry LinearizedPoly maps, bivariate ones
    (Pott-Zhou) carry BivariateLinearMap blocks, in the same layout either
    way so verification has one code path.
    """

    L: LinearMap
    N: LinearMap
    M: LinearMap | None = None

    @property
    def n(self) -> int:
        return self.L.n

    def compose(self, other: "EAWitness") -> "EAWitness":
        """Chain f~g (self) and g~h (other) into a witness f~h."""
        L = self.L.compose(other.L)
        N = self.N.compose(other.N)
        if self.M is None and other.M is None:
            M = None
        else:
            z = type(self.L).zero(self.L.field) if hasattr(type(self.L), "zero") else None
            m1 = self.M if self.M is not None else z
            m2 = other.M if other.M is not None else z
            M = self.N.compose(m2).add(m1.compose(other.L))
        return EAWitness(L, N, M)


def _map_is_invertible(p: LinearMap) -> bool:
    return p.is_permutation() if isinstance(p, LinearizedPoly) else p.is_invertible()


def verify_ea_witness(f: VBF, g: VBF, w: EAWitness) -> bool:
    """Exhaustively check f(L(v)) = N(g(v)) + M(v) over all 2^n inputs,
    and that L and N are invertible."""
    if f.n != g.n or w.n != f.n:
        raise ParameterError(
            f"dimension mismatch: f has n={f.n}, g has n={g.n}, witness has n={w.n}"
        )
    if not (_map_is_invertible(w.L) and _map_is_invertible(w.N)):
        return False
    tl = w.L.as_table()
    tn = w.N.as_table()
    rhs = tn[g.table]
    if w.M is not None:
        rhs = rhs ^ w.M.as_table()
    return bool(np.array_equal(f.table[tl], rhs))


# -- Pott-Zhou witnesses ---------------------------------------------------


def _check_pz_args(ctx: FieldCtx, k: int, s: int) -> None:
    if ctx.m % 2 != 0:
        raise ParameterError("m must be even")
    if math.gcd(k, ctx.m) != 1:
        raise ParameterError(f"k must be coprime to m: gcd({k}, {ctx.m}) != 1")
    if s % 2 != 0:
        raise ParameterError("s must be even")


def pz_alpha_witness(ctx: FieldCtx, k: int, s: int, alpha: int, beta: int) -> EAWitness:
    """Linear-equivalence witness between f_{k,s,alpha} and f_{k,s,beta}
    for any two non-cubes alpha, beta.

    Writing alpha = gamma^a and beta = gamma^b: if a = b (mod 3) the
    witness is L = (x, gamma^c y), N = (u, gamma^c v) with
    (2^k+1) 2^s c = b - a (mod 2^m - 1); otherwise the squared variant
    L = (x^2, gamma^c y^2), N = (u^2, gamma^c v^2) with the congruence
    right-hand side 2b - a. Both congruences are solvable because the
    right side is divisible by 3 exactly when needed.
    """
    _check_pz_args(ctx, k, s)
    for name, val in (("alpha", alpha), ("beta", beta)):
        if val == 0 or ctx.is_cube(val):
            raise ParameterError(f"{name}={val:#x} must be a non-cube")
    a, b = ctx.dlog(alpha), ctx.dlog(beta)
    q1 = ctx.order - 1
    if (a - b) % 3 == 0:
        c = solve_scaled_congruence(ctx, k, s, (b - a) % q1)
        gc = ctx.pow(ctx.gamma, c)
        L = BivariateLinearMap.diagonal(
            LinearizedPoly.identity(ctx), LinearizedPoly.monomial(ctx, gc, 0)
        )
        N = BivariateLinearMap.diagonal(
            LinearizedPoly.identity(ctx), LinearizedPoly.monomial(ctx, gc, 0)
        )
    else:
        c = solve_scaled_congruence(ctx, k, s, (2 * b - a) % q1)
        gc = ctx.pow(ctx.gamma, c)
        L = BivariateLinearMap.diagonal(
            LinearizedPoly.monomial(ctx, 1, 1), LinearizedPoly.monomial(ctx, gc, 1)
        )
        N = BivariateLinearMap.diagonal(
            LinearizedPoly.monomial(ctx, 1, 1), LinearizedPoly.monomial(ctx, gc, 1)
        )
    return EAWitness(L, N, None)


def pz_sign_witness(
    ctx: FieldCtx,
    k: int,
    s: int,
    sign_k: int = 1,
    sign_s: int = 1,
    alpha: int | None = None,
) -> EAWitness:
    """Witness between f_{k,s,alpha} and f_{sign_k*k, sign_s*s, alpha}
    (parameters mod m).

    The k-negation is L = (x^(2^-k), y^(2^-k)), N = (u, v^(2^-k)). The
    s-negation is the swap-and-rescale witness L = (c1 y^2, x^2),
    N = (alpha u^(2^(s+1)), c1 v^2) with c1^(2^k+1) = alpha^(1+2^(s+1)),
    solvable since 1 + 2^(s+1) = 0 (mod 3) for even s. The double
    negation composes the two.
    """
    _check_pz_args(ctx, k, s)
    if sign_k not in (1, -1) or sign_s not in (1, -1):
        raise ParameterError("sign_k and sign_s must be +1 or -1")
    if alpha is None:
        alpha = ctx.gamma
    if alpha == 0 or ctx.is_cube(alpha):
        raise ParameterError(f"alpha={alpha:#x} must be a non-cube")
    m = ctx.m
    if sign_k == 1 and sign_s == 1:
        ident = BivariateLinearMap.identity(ctx)
        return EAWitness(ident, ident, None)
    if sign_k == -1 and sign_s == 1:
        frob = LinearizedPoly.monomial(ctx, 1, m - (k % m))
        L = BivariateLinearMap.diagonal(frob, frob)
        N = BivariateLinearMap.diagonal(LinearizedPoly.identity(ctx), frob)
        return EAWitness(L, N, None)
    if sign_k == 1 and sign_s == -1:
        a = ctx.dlog(alpha)
        rhs = (a * (1 + (1 << ((s + 1) % m)))) % (ctx.order - 1)
        e = solve_scaled_congruence(ctx, k, 0, rhs)
        c1 = ctx.pow(ctx.gamma, e)
        z = LinearizedPoly.zero(ctx)
        L = BivariateLinearMap(
            b1=z,
            b2=LinearizedPoly.monomial(ctx, 1, 1),
            b3=LinearizedPoly.monomial(ctx, c1, 1),
            b4=z,
        )
        N = BivariateLinearMap.diagonal(
            LinearizedPoly.monomial(ctx, alpha, (s + 1) % m),
            LinearizedPoly.monomial(ctx, c1, 1),
        )
        return EAWitness(L, N, None)
    # double negation: chain f_{k,s} ~ f_{-k,s} ~ f_{-k,-s}
    w1 = pz_sign_witness(ctx, k, s, -1, 1, alpha)
    w2 = pz_sign_witness(ctx, (m - k) % m, s, 1, -1, alpha)
    return w1.compose(w2)


# -- Gold automorphisms ----------------------------------------------------


def gold_monomial_automorphisms(ctx: FieldCtx, k: int) -> list[EAWitness]:
    """All m(2^m - 1) monomial self-equivalences of x -> x^(2^k+1):
    L = a X^(2^u), N = a^(2^k+1) X^(2^u), M = 0."""
    if math.gcd(k, ctx.m) != 1:
        raise ParameterError(f"k must be coprime to m: gcd({k}, {ctx.m}) != 1")
    e = (1 << (k % ctx.m)) + 1
    out = []
    for u in range(ctx.m):
        for a in ctx.nonzero_elements():
            out.append(
                EAWitness(
                    LinearizedPoly.monomial(ctx, a, u),
                    LinearizedPoly.monomial(ctx, ctx.pow(a, e), u),
                    None,
                )
            )
    return out


def gold_m4_binomial_automorphisms(ctx: FieldCtx) -> list[EAWitness]:
    """The 300 binomial self-equivalences of x -> x^3 on GF(2^4).

    Two families, each with a non-cube coefficient-ratio condition:
      L = a1 X^2 + a3 X^8, N = a3^2 a1 X + a1^3 X^2 + a1^2 a3 X^4 + a3^3 X^8
      L = a0 X + a2 X^4,   N = a0^3 X + a0^2 a2 X^2 + a2^3 X^4 + a2^2 a0 X^8
    with a1/a3 resp. a0/a2 a non-cube (15 * 10 choices each).
    """
    if ctx.m != 4:
        raise ParameterError("binomial automorphisms exist only for m = 4")
    out = []
    for a1 in ctx.nonzero_elements():
        for a3 in ctx.nonzero_elements():
            if ctx.is_cube(ctx.div(a1, a3)):
                continue
            L = LinearizedPoly(ctx, (0, a1, 0, a3))
            N = LinearizedPoly(
                ctx,
                (
                    ctx.mul(ctx.sqr(a3), a1),
                    ctx.pow(a1, 3),
                    ctx.mul(ctx.sqr(a1), a3),
                    ctx.pow(a3, 3),
                ),
            )
            out.append(EAWitness(L, N, None))
    for a0 in ctx.nonzero_elements():
        for a2 in ctx.nonzero_elements():
            if ctx.is_cube(ctx.div(a0, a2)):
                continue
            L = LinearizedPoly(ctx, (a0, 0, a2, 0))
            N = LinearizedPoly(
                ctx,
                (
                    ctx.pow(a0, 3),
                    ctx.mul(ctx.sqr(a0), a2),
                    ctx.pow(a2, 3),
                    ctx.mul(ctx.sqr(a2), a0),
                ),
            )
            out.append(EAWitness(L, N, None))
    return out


def gold_m4_case2_exhaustion(ctx: FieldCtx) -> tuple[int, int]:
    """Exhaust the remaining coefficient case of the m=4 Gold analysis.

    Enumerates all quadrinomials L = a0 X + a1 X^2 + a2 X^4 + a3 X^8 with
    every a_i nonzero, a1/a3 a cube, (a1/a3)^2 = a2/a0 and
    a0^3 != a3^2 a1, and counts how many are permutation polynomials.
    Returns (candidates, permutations); the expected outcome is
    (900, 0), i.e. the case contributes no automorphisms.
    """
    if ctx.m != 4:
        raise ParameterError("case-2 exhaustion is specific to m = 4")
    candidates = 0
    permutations = 0
    for a1 in ctx.nonzero_elements():
        for a3 in ctx.nonzero_elements():
            ratio = ctx.div(a1, a3)
            if not ctx.is_cube(ratio):
                continue
            r2 = ctx.sqr(ratio)
            bound = ctx.mul(ctx.sqr(a3), a1)
            for a0 in ctx.nonzero_elements():
                if ctx.pow(a0, 3) == bound:
                    continue
                a2 = ctx.mul(a0, r2)
                candidates += 1
                if LinearizedPoly(ctx, (a0, a1, a2, a3)).is_permutation():
                    permutations += 1
    return candidates, permutations


def p_map_is_bijective(ctx: FieldCtx, k: int, s: int, alpha: int, delta: int) -> bool:
    """Whether P(x) = x + alpha delta^((2^k+1) 2^s) x^(2^s) is bijective.

    For non-cube alpha this holds for every nonzero delta (the two sides
    of P(x) = 0 would have to be a non-cube and a cube at once); for cube
    alpha it can fail, which callers probe for deliberately, so alpha is
    not validated beyond being nonzero.
    """
    m = ctx.m
    if m % 2 != 0:
        raise ParameterError("m must be even")
    if s % 2 != 0 or s % m == 0:
        raise ParameterError("s must be even and nonzero mod m")
    if alpha == 0:
        raise ParameterError("alpha must be nonzero")
    if delta == 0:
        raise ParameterError("delta must be nonzero")
    coeff = ctx.mul(alpha, ctx.pow(delta, ((1 << k) + 1) << s))
    coeffs = [0] * m
    coeffs[0] = 1
    coeffs[s % m] ^= coeff
    return LinearizedPoly(ctx, tuple(coeffs)).is_permutation()


# -- witness serialization ---------------------------------------------------
#
# JSON document, format tag "ea-witness/1". Coefficients are lowercase hex
# strings of the element bit patterns under the stated modulus. Bivariate
# maps carry the four blocks b1..b4 (each m coefficients); univariate maps
# carry a single m-coefficient list. M may be null (the zero map).


def _map_to_doc(p: LinearMap | None):
    if p is None:
        return None
    if isinstance(p, LinearizedPoly):
        return {"coeffs": [format(c, "x") for c in p.coeffs]}
    return {
        name: [format(c, "x") for c in getattr(p, name).coeffs]
        for name in ("b1", "b2", "b3", "b4")
    }


def witness_to_json(w: EAWitness) -> str:
    field = w.L.field
    doc = {
        "format": "ea-witness/1",
        "n": w.n,
        "m": field.m,
        "modulus": format(field.modulus, "x"),
        "variant": "univariate" if isinstance(w.L, LinearizedPoly) else "bivariate",
        "L": _map_to_doc(w.L),
        "N": _map_to_doc(w.N),
        "M": _map_to_doc(w.M),
    }
    return json.dumps(doc, indent=2) + "\n"


def _map_from_doc(doc, ctx: FieldCtx, variant: str):
    if doc is None:
        return None
    try:
        if variant == "univariate":
            return LinearizedPoly(ctx, tuple(int(c, 16) for c in doc["coeffs"]))
        return BivariateLinearMap(
            *(
                LinearizedPoly(ctx, tuple(int(c, 16) for c in doc[name]))
                for name in ("b1", "b2", "b3", "b4")
            )
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed witness map: {exc}") from None


def witness_from_json(text: str) -> EAWitness:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != "ea-witness/1":
        raise FormatError("not an ea-witness/1 document")
    try:
        m = int(doc["m"])
        modulus = int(doc["modulus"], 16)
        variant = doc["variant"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed witness header: {exc}") from None
    if variant not in ("univariate", "bivariate"):
        raise FormatError(f"unknown witness variant {variant!r}")
    ctx = field_with_modulus(m, modulus)
    L = _map_from_doc(doc.get("L"), ctx, variant)
    N = _map_from_doc(doc.get("N"), ctx, variant)
    M = _map_from_doc(doc.get("M"), ctx, variant)
    if L is None or N is None:
        raise FormatError("witness must carry both L and N")
    return EAWitness(L, N, M)
