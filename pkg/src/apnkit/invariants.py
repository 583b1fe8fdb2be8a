"""CCZ-invariants: Gamma-rank, automorphism group orders, equivalence.

The Gamma-rank of f is the F_2-rank of the development matrix of the
graph G_f = {(x, f(x))} inside F_2^n x F_2^n: the 2^(2n) x 2^(2n) 0/1
matrix M with M[(a,b)][(x,y)] = 1 iff y + b = f(x + a), i.e. row w is the
indicator of the translate G_f + w. The rank is invariant under CCZ
equivalence. Row w is the XOR-by-w permutation of row 0, which lets the
packed matrix be assembled wordwise: for position p = q ^ w the word
index is word(q) ^ hi(w) and the bit index is bit(q) ^ lo(w), so each row
is a bit-shuffled gather of the base row.

Automorphism orders and CCZ decision are exhaustive backtracking searches
over graph-point images; see graphsearch.py for the engine.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .bitmatrix import rank_inplace
from .errors import ParameterError
from .graphsearch import GraphMapSearch, difference_color_data
from .vbf import VBF

_GAMMA_RANK_MAX_N = 16
_GAMMA_RANK_MEMORY_CAP = 3 << 30  # bytes; n=8 needs 512 MiB, n=9 would need 8 GiB

_BIT_SWAP_MASKS = [
    (1, np.uint64(0x5555555555555555)),
    (2, np.uint64(0x3333333333333333)),
    (4, np.uint64(0x0F0F0F0F0F0F0F0F)),
    (8, np.uint64(0x00FF00FF00FF00FF)),
    (16, np.uint64(0x0000FFFF0000FFFF)),
    (32, np.uint64(0x00000000FFFFFFFF)),
]


def _bit_shuffle(words: np.ndarray, s: int) -> np.ndarray:
    """Permute the bits of each 64-bit word by index-XOR with s (s < 64)."""
    out = words.copy()
    for shift, mask in _BIT_SWAP_MASKS:
        if s & shift:
            sh = np.uint64(shift)
            out = ((out >> sh) & mask) | ((out & mask) << sh)
    return out


def _development_matrix_packed(f: VBF) -> np.ndarray:
    """Packed rows of the graph development matrix, 2^(2n) x 2^(2n) bits."""
    n = f.n
    size = 1 << (2 * n)
    pts = np.arange(1 << n, dtype=np.int64) | (f.table << n)
    words = size >> 6
    base = np.zeros(words, dtype=np.uint64)
    np.bitwise_or.at(base, pts >> 6, np.uint64(1) << (pts & 63).astype(np.uint64))
    M = np.empty((size, words), dtype=np.uint64)
    hi = np.arange(words, dtype=np.int64)
    gather = hi[:, None] ^ hi[None, :]  # row w_hi is base permuted by w_hi
    for lo in range(64):
        M[(hi << 6) | lo] = _bit_shuffle(base, lo)[gather]
    return M


def _development_matrix_small(f: VBF) -> np.ndarray:
    """Fallback row construction for 2n < 6 (matrix narrower than a word)."""
    n = f.n
    size = 1 << (2 * n)
    pts = np.arange(1 << n, dtype=np.int64) | (f.table << n)
    M = np.zeros((size, 1), dtype=np.uint64)
    for w in range(size):
        row = 0
        for q in pts:
            row |= 1 << int(q ^ w)
        M[w, 0] = row
    return M


def gamma_rank(f: VBF) -> int:
    """F_2-rank of the development matrix of G_f (a CCZ-invariant).

    Memory scales as 2^(4n) bits (n = 8 already takes 512 MiB), so sizes
    beyond the cap are refused rather than attempted. The result is cached
    on the VBF instance.
    """
    if "gamma_rank" in f._cache:
        return f._cache["gamma_rank"]
    n = f.n
    if n > _GAMMA_RANK_MAX_N:
        raise ParameterError(f"gamma_rank requires n <= {_GAMMA_RANK_MAX_N}, got n={n}")
    size = 1 << (2 * n)
    need = size * size // 8
    if need > _GAMMA_RANK_MEMORY_CAP:
        raise ParameterError(
            f"gamma_rank on n={n} needs {need >> 20} MiB for the development matrix; "
            f"cap is {_GAMMA_RANK_MEMORY_CAP >> 20} MiB"
        )
    M = _development_matrix_packed(f) if 2 * n >= 6 else _development_matrix_small(f)
    rank = rank_inplace(M)
    f._cache["gamma_rank"] = rank
    return rank


def graph_aut_order(f: VBF, *, timeout: float | None = None) -> int:
    """Order of the group of affine permutations of F_2^(2n) preserving G_f.

    Exhaustive backtracking over images of an affine basis of graph
    points, with linear-closure forcing and difference-class pruning.
    Guaranteed practical for n <= 8; larger sizes are best effort. Raises
    SearchTimeout when the budget expires.
    """
    if "graph_aut_order" in f._cache:
        return f._cache["graph_aut_order"]
    order = GraphMapSearch(f, f, timeout=timeout).count()
    f._cache["graph_aut_order"] = order
    return order


def aut_l_order(f: VBF, *, timeout: float | None = None) -> int:
    """Number of pairs (A1, A2) of invertible linear maps with
    A2(f(x)) = f(A1(x)) for all x, counted by the same backtracking with
    the images restricted to block-diagonal linear maps."""
    if "aut_l_order" in f._cache:
        return f._cache["aut_l_order"]
    order = GraphMapSearch(f, f, linear=True, block_diagonal=True, timeout=timeout).count()
    f._cache["aut_l_order"] = order
    return order


@dataclass
class InvariantReport:
    """Flat report of the CCZ-invariants of one function.

    Fields that were not computed (guarded out or timed out) are None and
    serialize as JSON nulls.
    """

    gamma_rank: int | None = None
    aut_l_order: int | None = None
    aut_ea_order: int | None = None
    aut_order: int | None = None
    is_apn: bool | None = None
    algebraic_degree: int | None = None

    def to_json(self) -> str:
        keys = ["gamma_rank", "aut_l_order", "aut_ea_order", "aut_order", "is_apn", "algebraic_degree"]
        return json.dumps({k: getattr(self, k) for k in keys}, indent=2) + "\n"


def aut_orders_quadratic(
    f: VBF,
    *,
    cross_check: bool | None = None,
    timeout: float | None = None,
) -> InvariantReport:
    """Automorphism orders of a quadratic APN function.

    Computes |Aut_L| by search and derives |Aut_EA| = 2^n |Aut_L| and
    |Aut| = |Aut_EA|, which is valid precisely for quadratic APN
    functions (the precondition is checked, not assumed). With
    cross_check (default: automatic for n <= 6) the derived |Aut| is
    verified against the independent affine graph search.
    """
    degree = f.algebraic_degree()
    if degree != 2:
        raise ParameterError(f"function is not quadratic (degree {degree})")
    if not f.is_apn():
        raise ParameterError("function is not APN")
    autl = aut_l_order(f, timeout=timeout)
    ea = (1 << f.n) * autl
    if cross_check is None:
        cross_check = f.n <= 6
    if cross_check:
        graph = graph_aut_order(f, timeout=timeout)
        if graph != ea:
            raise AssertionError(
                f"graph automorphism search ({graph}) disagrees with 2^n * |Aut_L| ({ea})"
            )
    return InvariantReport(
        gamma_rank=f._cache.get("gamma_rank"),
        aut_l_order=autl,
        aut_ea_order=ea,
        aut_order=ea,
        is_apn=True,
        algebraic_degree=2,
    )


def ccz_equivalent(f: VBF, g: VBF, *, timeout: float | None = None) -> bool:
    """Whether an affine permutation of F_2^n x F_2^n maps G_f onto G_g.

    Decision ladder: cheap invariants (degree, differential spectrum,
    difference-class structure) can refute immediately; a node-budgeted
    witness search usually finds a witness fast for equivalent pairs; the
    Gamma-rank fast path (n <= 8) refutes inequivalent pairs that cheap
    invariants cannot separate; only then does the unbudgeted exhaustive
    search run. Timeouts raise SearchTimeout, never a silent False.
    """
    if f.n != g.n:
        raise ParameterError(f"functions have different dimensions: {f.n} != {g.n}")
    if f == g:
        return True
    if f.algebraic_degree() != g.algebraic_degree():
        return False
    if f.differential_spectrum() != g.differential_spectrum():
        return False
    # difference-class comparison; also primes the color cache for the search
    if not difference_color_data(f).compatible(difference_color_data(g)):
        return False
    search = GraphMapSearch(f, g, timeout=timeout)
    found = search.find_witness(max_nodes=200_000)
    if found is not None:
        return found
    if f.n <= 8:
        if gamma_rank(f) != gamma_rank(g):
            return False
    result = GraphMapSearch(f, g, timeout=timeout).find_witness()
    return bool(result)
