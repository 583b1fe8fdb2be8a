"""Exhaustive backtracking over affine maps between function graphs.

The searches behind graph_aut_order, aut_l_order and ccz_equivalent all
count (or find) affine permutations C of F_2^(2n) with C(G_f) = G_g.
C is pinned down by the image c0 of a base graph point plus the images
of 2n linearly independent graph-point differences; after each choice,
linear closure forces the image of every graph point already inside the
affine span of the chosen points, and a forced image that is not a graph
point kills the branch. Candidate images are drawn from the target graph
(2^n points), so completeness is by construction, and a full assignment
with independent difference images is a verified automorphism: every
graph point's image was checked when its offset entered the span, and
independence makes C bijective.

Closure pruning alone is far too weak: for an APN graph the affine span
of j chosen points contains almost no further graph points until j is
close to 2n, while branching stays at 2^n per level, so consistent
partial maps pile up exponentially before the first forced point
appears. Two exact devices make the search practical:

* difference classes: the linear part A of any solution maps the
  difference multiset of G_f onto that of G_g, so the XOR-convolution
  refinement classes of differences (a Weisfeiler-Leman iteration
  computed with fast Walsh-Hadamard transforms) are preserved by A.
  Candidates for the image of d must match d's class, pairwise against
  every previously placed difference and every already-forced graph
  point ("anchors"). The filter never discards a true solution.

* orbit-stabilizer factorization (automorphism counting only): when the
  translation-compensation maps (x, y) -> (x + u, y + f(x) + f(x + u))
  are all verified pointwise to be affine graph automorphisms - true
  exactly when every derivative of f is affine, checked, not assumed -
  they witness that the automorphism group is transitive on graph
  points, so |Aut| = 2^n * |Stab(base point)| and only the stabilizer
  subtree (c0 = base) needs exhaustive counting.
"""

from __future__ import annotations

import time

import numpy as np

from .errors import ParameterError, SearchTimeout
from .vbf import VBF

_MAX_COLOR_CLASSES = 64
_MAX_REFINE_ROUNDS = 3
_TIMEOUT_CHECK_MASK = 0xFFF
_SPAN_FILTER_CAP = 1024


def _wht(v: np.ndarray) -> np.ndarray:
    """Fast Walsh-Hadamard transform, exact over int64."""
    a = v.astype(np.int64).copy()
    size = len(a)
    h = 1
    while h < size:
        a = a.reshape(-1, 2, h)
        top = a[:, 0, :].copy()
        a[:, 0, :] += a[:, 1, :]
        a[:, 1, :] = top - a[:, 1, :]
        a = a.reshape(-1)
        h *= 2
    return a


def _xor_convolve_wht(wu: np.ndarray, v: np.ndarray) -> np.ndarray:
    """XOR-convolution given one side already transformed."""
    size = len(wu)
    return _wht(wu * _wht(v)) // size


class DifferenceColorData:
    """Classes of F_2^(2n) points under iterated difference-set refinement.

    ids[d] is the class of the difference d; classes are labeled by the
    lexicographic rank of their invariant key, so labels are directly
    comparable between two functions. Any disagreement in the per-round
    key tables or class sizes certifies CCZ-inequivalence.
    """

    def __init__(self, f: VBF):
        n = f.n
        size = 1 << (2 * n)
        chi = np.zeros(size, dtype=np.int64)
        chi[np.arange(1 << n, dtype=np.int64) | (f.table << n)] = 1
        w = _wht(chi)
        mult = _wht(w * w) // size  # multiplicity of each graph difference
        self.mult = mult
        keys, ids = np.unique(mult, return_inverse=True)
        self.history: list[np.ndarray] = [keys]
        wm = _wht(mult)
        for _ in range(_MAX_REFINE_ROUNDS):
            nclasses = len(self.history[-1])
            if nclasses > _MAX_COLOR_CLASSES:
                break
            feats = [ids]
            for c in range(nclasses):
                ind = (ids == c).astype(np.int64)
                feats.append(_xor_convolve_wht(wm, ind))
            key = np.stack(feats, axis=1)
            uniq, new_ids = np.unique(key, axis=0, return_inverse=True)
            stable = len(uniq) == nclasses
            self.history.append(uniq)
            ids = new_ids
            if stable:
                break
        self.ids = ids
        self.class_sizes = np.bincount(ids)

    def compatible(self, other: "DifferenceColorData") -> bool:
        if len(self.history) != len(other.history):
            return False
        for a, b in zip(self.history, other.history):
            if a.shape != b.shape or not np.array_equal(a, b):
                return False
        return np.array_equal(self.class_sizes, other.class_sizes)


def difference_color_data(f: VBF) -> DifferenceColorData:
    if "diff_colors" not in f._cache:
        f._cache["diff_colors"] = DifferenceColorData(f)
    return f._cache["diff_colors"]


class _LinMapState:
    """Partial linear map as an XOR basis of (key, image) pairs.

    Keys are kept mutually reduced (no key contains another key's pivot
    bit), so a single pass both reduces a query and accumulates the image
    of the reduced-away part.
    """

    __slots__ = ("entries",)

    def __init__(self, entries=None):
        self.entries = entries if entries is not None else []

    def reduce(self, x: int) -> tuple[int, int]:
        img = 0
        for t, key, val in self.entries:
            if (x >> t) & 1:
                x ^= key
                img ^= val
        return x, img

    def inserted(self, resid: int, img: int) -> "_LinMapState":
        t = (resid & -resid).bit_length() - 1
        entries = []
        for tt, key, val in self.entries:
            if (key >> t) & 1:
                entries.append((tt, key ^ resid, val ^ img))
            else:
                entries.append((tt, key, val))
        entries.append((t, resid, img))
        return _LinMapState(entries)


class _Side:
    def __init__(self, f: VBF):
        self.f = f
        n = f.n
        self.pts = (np.arange(1 << n, dtype=np.int64) | (f.table << n))
        self.base = int(self.pts[0])
        self.offs = self.pts ^ self.base
        self.point_bitmap = np.zeros(1 << (2 * n), dtype=bool)
        self.point_bitmap[self.pts] = True
        self.colors = difference_color_data(f)


def _translation_maps_verified(f: VBF) -> bool:
    """Whether (x, y) -> (x + u, y + f(x) + f(x+u)) is an affine graph
    automorphism for every u, checked pointwise.

    The map visibly fixes the graph and sends (0, f(0)) to (u, f(u));
    what needs checking is affineness, i.e. that every derivative
    D_u f(x) = f(x+u) + f(x) is an affine function of x. Holds exactly
    for functions of algebraic degree <= 2.
    """
    n = f.n
    size = 1 << n
    tab = f.table
    idx = np.arange(size, dtype=np.int64)
    for u in range(1, size):
        du = tab ^ tab[idx ^ u]
        # build the linear extension of du from its values on the basis
        lin = np.zeros(size, dtype=np.int64)
        step = np.int64(du[0])
        block = 1
        for i in range(n):
            v = du[1 << i] ^ step
            lin[block : 2 * block] = lin[:block] ^ v
            block *= 2
        if not np.array_equal(du, lin ^ step):
            return False
    return True


class GraphMapSearch:
    """One search instance: count or find affine C with C(G_f) = G_g.

    linear restricts C to linear maps; block_diagonal additionally to
    C(x, y) = (A1 x, A2 y), which makes leaves correspond exactly to the
    pairs (A1, A2) with A2 o f = f o A1 (the linear-equivalence
    automorphisms when f is g). Candidate order, basis choice and
    tie-breaking are all deterministic.
    """

    def __init__(
        self,
        f: VBF,
        g: VBF | None = None,
        *,
        linear: bool = False,
        block_diagonal: bool = False,
        timeout: float | None = None,
    ):
        g = f if g is None else g
        if f.n != g.n:
            raise ParameterError("graph search requires equal dimensions")
        if block_diagonal:
            linear = True
            if f.table[0] != 0 or g.table[0] != 0:
                raise ParameterError("block-diagonal search requires f(0) = 0")
        self.n = f.n
        self.n2 = 2 * f.n
        self.is_aut = g is f or f == g
        self.fside = _Side(f)
        self.gside = self.fside if g is f else _Side(g)
        self.linear = linear
        self.block_diagonal = block_diagonal
        self.timeout = timeout
        self.impossible = not self.fside.colors.compatible(self.gside.colors)
        if not self.impossible:
            self._choose_basis()
            self._precompute_levels()

    # -- preprocessing ----------------------------------------------------

    def _choose_basis(self):
        """Greedy basis of graph-point differences, largest closure first.

        At each step the chosen difference is the one whose residual
        (after reduction by the span so far) is shared by the most
        not-yet-covered offsets, since all of those enter the affine span
        together and become forced checks. Ties break to the smallest
        difference value.
        """
        offs = self.fside.offs
        resid = offs.copy()
        basis: list[int] = []
        cover_level = np.full(len(offs), -1, dtype=np.int64)
        for level in range(self.n2):
            live = resid != 0
            if not live.any():
                break
            vals, counts = np.unique(resid[live], return_counts=True)
            best = vals[counts == counts.max()].min()
            newly = live & (resid == best)
            cover_level[newly] = level
            # the chosen difference: smallest offset with this residual
            basis.append(int(offs[newly].min()))
            t = int(best & -best).bit_length() - 1
            resid = np.where(((resid >> t) & 1) == 1, resid ^ best, resid)
        if len(basis) != self.n2:
            raise ParameterError(
                "graph-point differences do not span F_2^(2n); "
                "automorphism search is not supported for this function"
            )
        self.basis = basis
        self.cover_level = cover_level

    def _precompute_levels(self):
        n2 = self.n2
        size = 1 << n2
        # coordinates of every space element over the chosen basis; the
        # span arrays built during the search are indexed by these masks
        coord = np.zeros(size, dtype=np.int64)
        elems = np.zeros(1, dtype=np.int64)
        for j, d in enumerate(self.basis):
            coord[elems ^ d] = coord[elems] | (1 << j)
            elems = np.concatenate([elems, elems ^ d])
        offs = self.fside.offs
        self.level_batches = []
        for level in range(n2):
            batch_offs = np.sort(offs[self.cover_level == level])
            # span index of each batch offset with the new level bit cleared
            low = coord[batch_offs] & ~(1 << level)
            self.level_batches.append(low)
        fcolors = self.fside.colors.ids
        self.level_color = [int(fcolors[d]) for d in self.basis]

    # -- search -----------------------------------------------------------

    def _run(self, *, count_all: bool, max_nodes: int | None):
        if self.impossible:
            return 0 if count_all else False
        self._count = 0
        self._nodes = 0
        self._max_nodes = max_nodes
        self._budget_hit = False
        self._found = False
        self._deadline = None if self.timeout is None else time.monotonic() + self.timeout
        self._count_all = count_all
        gpts = self.gside.pts
        factor = 1
        if self.block_diagonal:
            c0_candidates = [int(p) for p in gpts if (p & ((1 << self.n) - 1)) == 0]
        elif self.linear:
            c0_candidates = [0] if bool(self.gside.point_bitmap[0]) else []
        else:
            c0_candidates = [int(p) for p in gpts]
            if count_all and self.is_aut and _translation_maps_verified(self.fside.f):
                # verified transitivity: count the base-point stabilizer only
                c0_candidates = [self.fside.base]
                factor = 1 << self.n
        for c0 in c0_candidates:
            cand_e = (gpts ^ c0).astype(np.int64)
            cand_colors = self.gside.colors.ids[cand_e]
            if self.block_diagonal:
                a1 = _LinMapState()
                a2 = _LinMapState()
            else:
                a1 = a2 = None
            span_f = np.zeros(1, dtype=np.int64)
            span_g = np.zeros(1, dtype=np.int64)
            self._dfs(0, c0, cand_e, cand_colors, span_f, span_g, [], a1, a2)
            if self._budget_hit:
                break
            if self._found and not count_all:
                break
        if count_all:
            return self._count * factor
        if self._found:
            return True
        return None if self._budget_hit else False

    def count(self) -> int:
        return self._run(count_all=True, max_nodes=None)

    def find_witness(self, max_nodes: int | None = None):
        """True if a witness exists, False if exhaustively ruled out,
        None if the node budget was hit first."""
        return self._run(count_all=False, max_nodes=max_nodes)

    def _tick(self):
        self._nodes += 1
        if self._max_nodes is not None and self._nodes > self._max_nodes:
            self._budget_hit = True
            raise _Budget
        if self._deadline is not None and (self._nodes & _TIMEOUT_CHECK_MASK) == 0:
            if time.monotonic() > self._deadline:
                raise SearchTimeout(
                    f"graph search exceeded {self.timeout} s after {self._nodes} nodes"
                )

    def _dfs(self, *args):
        try:
            self._dfs_inner(*args)
        except _Budget:
            pass

    def _dfs_inner(self, level, c0, cand_e, cand_colors, span_f, span_g, indep, a1, a2):
        self._tick()
        d = self.basis[level]
        fcolors = self.fside.colors.ids
        gcolors = self.gside.colors.ids
        keep = cand_colors == self.level_color[level]
        e_sub = cand_e[keep]
        if e_sub.size == 0:
            return
        # difference classes of d + s against e + A(s) for every element s
        # already spanned: exact invariants of the linear part, and the
        # strongest class filter available from the placed images
        cap = min(span_f.size, _SPAN_FILTER_CAP)
        if cap > 1:
            target = fcolors[d ^ span_f[1:cap]]
            ok = (gcolors[e_sub[:, None] ^ span_g[None, 1:cap]] == target[None, :]).all(axis=1)
            e_sub = e_sub[ok]
            if e_sub.size == 0:
                return
        # linear independence of the difference images
        red = e_sub.copy()
        for v in indep:
            t = (v & -v).bit_length() - 1
            red = np.where(((red >> t) & 1) == 1, red ^ v, red)
        nz = red != 0
        e_sub, red = e_sub[nz], red[nz]
        if e_sub.size == 0:
            return
        # block-diagonal consistency of the two halves
        nmask = (1 << self.n) - 1
        if self.block_diagonal:
            dx_res, dx_img = a1.reduce(d & nmask)
            if dx_res == 0:
                sel = (e_sub & nmask) == dx_img
                e_sub, red = e_sub[sel], red[sel]
                if e_sub.size == 0:
                    return
            dy_res, dy_img = a2.reduce(d >> self.n)
            if dy_res == 0:
                sel = (e_sub >> self.n) == dy_img
                e_sub, red = e_sub[sel], red[sel]
                if e_sub.size == 0:
                    return
        # forced images of every graph offset entering the span now must be
        # graph points of g
        low = self.level_batches[level]
        if low.size:
            forced = span_g[low][None, :] ^ e_sub[:, None] ^ c0
            ok = self.gside.point_bitmap[forced].all(axis=1)
            e_sub, red = e_sub[ok], red[ok]
            if e_sub.size == 0:
                return
        if level == self.n2 - 1:
            self._count += int(e_sub.size)
            if e_sub.size:
                self._found = True
            return
        span_f2 = np.concatenate([span_f, span_f ^ d])
        for e, r in zip(e_sub, red):
            e, r = int(e), int(r)
            child_a1 = child_a2 = None
            if self.block_diagonal:
                child_a1 = a1 if dx_res == 0 else a1.inserted(dx_res, (e & nmask) ^ dx_img)
                child_a2 = a2 if dy_res == 0 else a2.inserted(dy_res, (e >> self.n) ^ dy_img)
            span_g2 = np.concatenate([span_g, span_g ^ e])
            self._dfs_inner(
                level + 1, c0, cand_e, cand_colors, span_f2, span_g2, indep + [r], child_a1, child_a2
            )
            if self._found and not self._count_all:
                return


class _Budget(Exception):
    pass
