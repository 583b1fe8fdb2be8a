"""Truth-table representation of vectorial Boolean functions on F_2^n.

A VBF stores the full value table of f: F_2^n -> F_2^n under the fixed
integer encoding of F_2^n (bit i of the int is coordinate i). For
functions built from a bivariate description over GF(2^m) x GF(2^m), the
packing is x in the low m bits and y in the high m bits, on both the
input and the output side; this convention is part of the on-disk format.

Differential analysis (the APN property and the full differential
spectrum) and algebraic degree via the Moebius transform live here.
"""

from __future__ import annotations

from collections import Counter
from typing import Callable

import numpy as np

from .errors import FormatError, ParameterError
from .gf2m import FieldCtx

_POPCOUNT16 = None


def _popcount(idx: np.ndarray) -> np.ndarray:
    global _POPCOUNT16
    if _POPCOUNT16 is None:
        _POPCOUNT16 = np.array(
            [bin(i).count("1") for i in range(1 << 16)], dtype=np.int64
        )
    idx = idx.astype(np.int64)
    return _POPCOUNT16[idx & 0xFFFF] + _POPCOUNT16[idx >> 16]


class VBF:
    """A function on F_2^n as an immutable table of 2^n ints < 2^n."""

    __slots__ = ("n", "table", "_cache")

    def __init__(self, n: int, table):
        if n < 1:
            raise ParameterError("n must be >= 1")
        tab = np.asarray(table, dtype=np.int64).copy()
        if tab.shape != (1 << n,):
            raise ParameterError(f"table must have exactly 2^{n} entries")
        if tab.min() < 0 or tab.max() >= (1 << n):
            raise ParameterError("table entries must be in [0, 2^n)")
        tab.setflags(write=False)
        self.n = n
        self.table = tab
        self._cache: dict = {}

    def __eq__(self, other):
        return isinstance(other, VBF) and self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.n, self.table.tobytes()))

    def __repr__(self):
        return f"VBF(n={self.n})"

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    # -- differential analysis -------------------------------------------

    def is_apn(self) -> bool:
        """Exhaustive check of Definition: every nonzero-direction derivative
        equation f(x+a) + f(x) = b has 0 or 2 solutions.

        Exits early on the first derivative bucket exceeding 2. Cost is
        O(2^(2n)) time and O(2^n) space.
        """
        if "is_apn" in self._cache:
            return self._cache["is_apn"]
        size = 1 << self.n
        tab = self.table
        idx = np.arange(size, dtype=np.int64)
        ok = True
        for a in range(1, size):
            d = tab ^ tab[idx ^ a]
            if np.bincount(d, minlength=size).max() > 2:
                ok = False
                break
        self._cache["is_apn"] = ok
        return ok

    def differential_spectrum(self) -> Counter:
        """Multiset {count of solutions of f(x+a)+f(x)=b : a != 0, all b}.

        The function is APN iff the support of the result is within {0, 2}.
        """
        size = 1 << self.n
        tab = self.table
        idx = np.arange(size, dtype=np.int64)
        spectrum = Counter()
        for a in range(1, size):
            d = tab ^ tab[idx ^ a]
            counts = np.bincount(d, minlength=size)
            values, mult = np.unique(counts, return_counts=True)
            for v, c in zip(values, mult):
                spectrum[int(v)] += int(c)
        return spectrum

    def algebraic_degree(self) -> int:
        """Max monomial degree over the coordinate functions' ANFs."""
        anf = mobius_transform(self.table)
        nz = np.nonzero(anf)[0]
        if len(nz) == 0:
            return 0
        return int(_popcount(nz).max())


def mobius_transform(table: np.ndarray) -> np.ndarray:
    """Moebius/zeta transform over the subset lattice, XOR-accumulated.

    Acts on all coordinate functions at once via bitwise XOR of the int
    entries; the transform is an involution.
    """
    t = np.array(table, dtype=np.int64)
    size = len(t)
    h = 1
    while h < size:
        t = t.reshape(-1, 2 * h)
        t[:, h:] ^= t[:, :h]
        t = t.reshape(-1)
        h *= 2
    return t


def from_bivariate(
    ctx: FieldCtx,
    f1: Callable[[int, int], int],
    f2: Callable[[int, int], int],
) -> VBF:
    """Table of (x, y) -> (f1(x,y), f2(x,y)) on GF(2^m)^2, n = 2m.

    Index encoding: x in the low m bits, y in the high m bits; outputs
    pack the same way (f1 low, f2 high). Evaluates the callables at every
    point, so this is the reference path; bulk constructors use the
    vectorized field helpers instead.
    """
    m = ctx.m
    q = ctx.order
    tab = np.empty(q * q, dtype=np.int64)
    for y in range(q):
        base = y << m
        for x in range(q):
            tab[base | x] = f1(x, y) | (f2(x, y) << m)
    return VBF(2 * m, tab)


def power_function(ctx: FieldCtx, d: int) -> VBF:
    """Univariate x -> x^d on GF(2^m) as a table with n = m."""
    if d < 0:
        raise ParameterError("exponent d must be >= 0")
    if ctx.m <= 16:
        xs = np.arange(ctx.order, dtype=np.int64)
        return VBF(ctx.m, ctx.pow_array(xs, d))
    return VBF(ctx.m, [ctx.pow(x, d) for x in range(ctx.order)])


# -- truth-table text format ---------------------------------------------
#
# Line 1:  n=<decimal>
# Then 2^n lowercase hex entries in index order, 16 per line as written;
# readers accept any whitespace split.


def to_text(f: VBF) -> str:
    lines = [f"n={f.n}"]
    entries = [format(int(v), "x") for v in f.table]
    for i in range(0, len(entries), 16):
        lines.append(" ".join(entries[i : i + 16]))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> VBF:
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty truth-table document")
    head = lines[0].strip()
    if not head.startswith("n=") or not head[2:].isdigit():
        raise FormatError(f"first line must be 'n=<decimal>', got {head!r}")
    n = int(head[2:])
    if n < 1 or n > 30:
        raise FormatError(f"unsupported dimension n={n}")
    tokens = "\n".join(lines[1:]).split()
    if len(tokens) != 1 << n:
        raise FormatError(f"expected {1 << n} entries for n={n}, found {len(tokens)}")
    try:
        values = [int(t, 16) for t in tokens]
    except ValueError as exc:
        raise FormatError(f"invalid hex entry: {exc}") from None
    if any(v < 0 or v >= 1 << n for v in values):
        raise FormatError("table entry out of range for n")
    return VBF(n, values)


def write_table(f: VBF, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(to_text(f))


def read_table(path: str) -> VBF:
    with open(path) as fh:
        return from_text(fh.read())
