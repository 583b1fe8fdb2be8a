"""Packed-bit matrices over F_2 and their rank.

Rows are packed 64 bits per machine word into a numpy uint64 array of
shape (rows, words); bit j of row i lives at word j >> 6, bit j & 63.
Rank is computed by in-place Gaussian elimination on the packed rows.
Pivoting always takes the first row carrying the lowest unprocessed bit,
so the elimination path (and any intermediate state) is deterministic.

The elimination kernel is JIT-compiled with numba when available; the
pure-numpy fallback implements the identical algorithm. At the scale of
the graph-development matrices (2^16 x 2^16 bits) the compiled kernel is
what keeps the rank computation in the minutes range.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False


def _rank_inplace_numpy(M: np.ndarray) -> int:
    rows, words = M.shape
    r = 0
    for b in range(words):
        if r >= rows:
            break
        for t in range(64):
            bit = np.uint64(1) << np.uint64(t)
            col = M[r:, b] & bit
            nz = np.nonzero(col)[0]
            if nz.size == 0:
                continue
            p = r + int(nz[0])
            if p != r:
                M[[r, p]] = M[[p, r]]
            below = np.nonzero(M[r + 1 :, b] & bit)[0]
            if below.size:
                M[r + 1 + below, b:] ^= M[r, b:]
            r += 1
            if r >= rows:
                break
    return r


if _HAVE_NUMBA:

    @njit(cache=True)
    def _rank_inplace_m4r(M):  # pragma: no cover - exercised via rank()
        # Method of Four Russians, 64 columns at a time. Per block: collect
        # up to 64 pivot rows kept in reduced form (each pivot bit appears
        # in exactly one basis word), then clear the block word of every
        # remaining row with two-to-eight byte-table lookups instead of up
        # to 64 individual row XORs.
        rows, words = M.shape
        basis = np.zeros((64, words), dtype=np.uint64)
        tables = np.zeros((8, 256, words), dtype=np.uint64)
        bw = np.zeros(64, dtype=np.uint64)
        pb = np.zeros(64, dtype=np.int64)
        r = 0
        for b in range(words):
            if r >= rows:
                break
            k = 0
            # phase 1: find pivot rows for this block, swap them to the front
            for i in range(r, rows):
                v = M[i, b]
                for j in range(k):
                    if (v >> np.uint64(pb[j])) & np.uint64(1):
                        v ^= bw[j]
                if v == np.uint64(0):
                    continue
                ow = M[i, b]
                dest = r + k
                if i != dest:
                    for w in range(b, words):
                        tmp = M[dest, w]
                        M[dest, w] = M[i, w]
                        M[i, w] = tmp
                # full reduction of the new pivot row (combination is given
                # by the original word's bits at the established pivot bits)
                for j in range(k):
                    if (ow >> np.uint64(pb[j])) & np.uint64(1):
                        for w in range(b, words):
                            M[dest, w] ^= basis[j, w]
                # pivot bit: lowest set bit of the reduced word
                t = 0
                while not (v >> np.uint64(t)) & np.uint64(1):
                    t += 1
                # keep earlier basis words clear at the new pivot bit
                for j in range(k):
                    if (bw[j] >> np.uint64(t)) & np.uint64(1):
                        bw[j] ^= v
                        for w in range(b, words):
                            basis[j, w] ^= M[dest, w]
                for w in range(b, words):
                    basis[k, w] = M[dest, w]
                bw[k] = v
                pb[k] = t
                k += 1
                if k == 64:
                    break
            if k == 0:
                continue
            # phase 2: byte tables of basis-row combinations
            ntab = (k + 7) >> 3
            for t in range(ntab):
                for w in range(b, words):
                    tables[t, 0, w] = np.uint64(0)
                hi = min(8, k - 8 * t)
                for idx in range(1, 1 << hi):
                    low = idx & (idx - 1)
                    j = 0
                    while not (idx >> j) & 1:
                        j += 1
                    for w in range(b, words):
                        tables[t, idx, w] = tables[t, low, w] ^ basis[8 * t + j, w]
            for i in range(r + k, rows):
                w0 = M[i, b]
                sel = np.uint64(0)
                for j in range(k):
                    sel |= ((w0 >> np.uint64(pb[j])) & np.uint64(1)) << np.uint64(j)
                if sel == np.uint64(0):
                    continue
                for t in range(ntab):
                    st = int((sel >> np.uint64(8 * t)) & np.uint64(255))
                    if st:
                        for w in range(b, words):
                            M[i, w] ^= tables[t, st, w]
            r += k
        return r


def rank_inplace(data: np.ndarray) -> int:
    """Rank of a packed uint64 row array; destroys its argument."""
    if data.size == 0:
        return 0
    if _HAVE_NUMBA:
        return int(_rank_inplace_m4r(np.ascontiguousarray(data)))
    return _rank_inplace_numpy(data)


class BitMatrix:
    """A rows x cols matrix over F_2 with packed uint64 rows."""

    __slots__ = ("rows", "cols", "words", "data")

    def __init__(self, rows: int, cols: int, data: np.ndarray | None = None):
        if rows < 0 or cols < 0:
            raise ParameterError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        self.words = max((cols + 63) >> 6, 1)
        if data is None:
            data = np.zeros((rows, self.words), dtype=np.uint64)
        else:
            if data.shape != (rows, self.words) or data.dtype != np.uint64:
                raise ParameterError("data must be uint64 of shape (rows, ceil(cols/64))")
        self.data = data

    @classmethod
    def from_dense(cls, arr) -> "BitMatrix":
        arr = np.asarray(arr)
        rows, cols = arr.shape
        m = cls(rows, cols)
        for i in range(rows):
            v = 0
            for j in range(cols):
                if arr[i, j] & 1:
                    v |= 1 << j
            m.set_row_int(i, v)
        return m

    @classmethod
    def from_int_rows(cls, ints, cols: int) -> "BitMatrix":
        m = cls(len(ints), cols)
        for i, v in enumerate(ints):
            m.set_row_int(i, v)
        return m

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        m = cls(n, n)
        for i in range(n):
            m.set(i, i, 1)
        return m

    def set(self, i: int, j: int, v: int) -> None:
        w, b = j >> 6, np.uint64(j & 63)
        if v & 1:
            self.data[i, w] |= np.uint64(1) << b
        else:
            self.data[i, w] &= ~(np.uint64(1) << b)

    def get(self, i: int, j: int) -> int:
        return int(self.data[i, j >> 6] >> np.uint64(j & 63)) & 1

    def set_row_int(self, i: int, v: int) -> None:
        for w in range(self.words):
            self.data[i, w] = (v >> (64 * w)) & 0xFFFFFFFFFFFFFFFF

    def row_int(self, i: int) -> int:
        v = 0
        for w in range(self.words):
            v |= int(self.data[i, w]) << (64 * w)
        return v

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for i in range(self.rows):
            v = self.row_int(i)
            for j in range(self.cols):
                out[i, j] = (v >> j) & 1
        return out

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.rows, self.cols, self.data.copy())

    def rank(self) -> int:
        return rank_inplace(self.data.copy())

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def __repr__(self):
        return f"BitMatrix({self.rows}x{self.cols})"
