"""g-vectors of the initial variables of Gamma_c: mutation tracking and braid action.

A g-vector is a sparse dict {vertex: int}. G-matrices are IndexedMatrix
objects with G[row, column], one column per initial variable.
"""

from __future__ import annotations

from .errors import BoundaryTouch, NotStabilized, QClusterError
from .lie import DynkinDatum
from .quiver import GhlQuiver, Window, ghl_surgery, mutate_matrix, order_key, shift_vertex
from .sparse import IndexedMatrix, invert_unimodular

__all__ = [
    "braid_apply",
    "braid_word_apply",
    "shift",
    "block_of",
    "g_matrix_tracked",
    "g_stabilized",
    "g_stabilized_braid",
    "StabilizedG",
]


def shift(vec: dict, s: int, window: Window | None = None) -> dict:
    """v[s]: the entry at (i, l) is the old entry at (i, l - 2s)."""
    out = {(i, r + 2 * s): x for (i, r), x in vec.items() if x}
    if window is not None and any(not window.contains(r) for _, r in out):
        raise BoundaryTouch("shifted vector leaves the window")
    return out


def braid_apply(datum: DynkinDatum, i: int, vec: dict, window: Window | None = None) -> dict:
    """Theta_i: fixes e_(j,r) for j != i and sends e_(i,r) to -e_(i,r-2) + sum of e_(k,r-1), k ~ i."""
    out: dict = {}

    def add(v, x):
        out[v] = out.get(v, 0) + x

    for (j, r), x in vec.items():
        if j != i:
            add((j, r), x)
            continue
        add((i, r - 2), -x)
        for k in datum.neighbors(i):
            add((k, r - 1), x)
    out = {v: x for v, x in out.items() if x}
    if window is not None and any(not window.contains(r) for _, r in out):
        raise BoundaryTouch("braid image leaves the window")
    return out


def braid_word_apply(datum: DynkinDatum, word, vec: dict) -> dict:
    """Theta_{w_1} ... Theta_{w_t}(vec), rightmost factor first."""
    for i in reversed(word):
        vec = braid_apply(datum, i, vec)
    return vec


def block_of(q: GhlQuiver, v) -> list:
    """The block I(m) containing v, in the total order."""
    m, _ = order_key(q.cox, v)
    return [(i, q.cox.l(i) + 2 * m) for i in q.datum.nodes]


def _mutate_with_coefficients(b: IndexedMatrix, c: dict, k) -> None:
    # c maps a column to its c-vector {frozen copy label: entry}. Coefficients
    # follow the exchange matrix -b: with b[v, w] = #(v->w) - #(w->v) this is
    # the orientation for which the G-matrices come out block diagonal.
    row = b.row(k)
    ck = c[k]
    for x, cxk in ck.items():
        for j, bkj in row.items():
            if cxk * bkj < 0:
                col = c[j]
                val = col.get(x, 0) + cxk * abs(bkj)
                if val:
                    col[x] = val
                else:
                    col.pop(x, None)
    c[k] = {x: -y for x, y in ck.items()}
    mutate_matrix(b, k)


def _max_height(q: GhlQuiver) -> int:
    return max(q.cox.height.values())


def _g_from_c(q: GhlQuiver, cvec: dict, columns) -> IndexedMatrix:
    """G = (C^T)^{-1}, computed block by block over the blocks I(m)."""
    g = IndexedMatrix()
    done = set()
    for v in columns:
        if v in done:
            continue
        blk = block_of(q, v)
        blk_set = set(blk)
        for w in blk:
            if w not in cvec:
                raise BoundaryTouch(f"block of {v} leaves the computation window")
            if any(x not in blk_set for x in cvec[w]):
                raise QClusterError(f"C-matrix is not block diagonal at column {w}")
        ct = [[cvec[w].get(x, 0) for x in blk] for w in blk]
        inv = invert_unimodular(ct)
        for a, x in enumerate(blk):
            for bcol, w in enumerate(blk):
                g[x, w] = inv[a][bcol]
        done.update(blk)
    wanted = set(columns)
    return IndexedMatrix.from_rows(
        {r: {c: val for c, val in row.items() if c in wanted} for r, row in g._rows.items()}
    )


def g_matrix_tracked(q: GhlQuiver, k: int) -> IndexedMatrix:
    """G^(k): g-vectors of the variables of Gamma_c with respect to the seed after k green rounds.

    Runs k green rounds forward, attaches principal coefficients there, and
    replays the mutations backwards to Gamma_c; then G = (C^T)^{-1}.
    Columns are the core vertices of q.
    """
    if q.rounds:
        raise QClusterError("tracking starts from Gamma_c itself")
    cols = q.core_vertices()
    hmax = _max_height(q)
    low_green = min(r for _, r in q.greens)
    lo = min(q.window.core_lo, low_green) - 2 * k - 2 * hmax - 4
    hi = max(q.window.core_hi, 0) + 2 * hmax + 4
    big = ghl_surgery(q.datum, q.cox, Window(lo, hi))
    b = big.b.copy()
    sequence = []
    for j in range(k):
        for g in big.greens:
            sequence.append(shift_vertex(g, -j))
    for v in sequence:
        mutate_matrix(b, v)
    c = {v: {v: 1} for v in big.vertices}
    for v in reversed(sequence):
        _mutate_with_coefficients(b, c, v)
    return _g_from_c(q, c, cols)


class StabilizedG:
    """Result of g_stabilized: the limit matrix and the round where it was reached."""

    def __init__(self, matrix: IndexedMatrix, rounds: int, history: list):
        self.matrix = matrix
        self.rounds = rounds
        self.history = history

    def column(self, v) -> dict:
        return {r: x for (r, c), x in self.matrix.items() if c == v}


def g_stabilized(q: GhlQuiver, cap: int | None = None, extra_checks: int = 2) -> StabilizedG:
    """G^(infinity) on the core of q, by mutation tracking.

    G^(k) for consecutive k is obtained in one pass: by translation symmetry,
    the C-matrix of Gamma_c against the seed k rounds below equals the
    C-matrix of the seed k rounds above against Gamma_c, shifted down by 2k.
    The seed k rounds above is reached by k inverse rounds (mutating at the
    red vertices, moved up by 2 each round). Iteration stops once two
    consecutive matrices agree on the tracked range, which is then checked
    for ``extra_checks`` further rounds.
    """
    if q.rounds:
        raise QClusterError("tracking starts from Gamma_c itself")
    cols = q.core_vertices()
    hmax = _max_height(q)
    low_green = min(r for _, r in q.greens)
    t_lo = min(q.window.core_lo, low_green) - 2 * hmax - 2
    t_hi = max(q.window.core_hi, 0) + 2 * hmax + 2
    if cap is None:
        cap = (t_hi - t_lo) // 2 + 2 * abs(q.h_c) + 4
    total = cap + extra_checks + 1
    lo = t_lo - 2 * hmax - 4
    hi = t_hi + 2 * total + 2 * hmax + 4
    big = ghl_surgery(q.datum, q.cox, Window(lo, hi))
    tracked = [v for v in big.vertices if t_lo <= v[1] <= t_hi]
    b = big.b.copy()
    c = {v: {v: 1} for v in big.vertices}
    reds = big.reds

    def snapshot(j):
        out = {}
        for v in tracked:
            col = c[shift_vertex(v, j)]
            out[v] = {shift_vertex(x, -j): y for x, y in col.items()}
        return out

    history = [snapshot(0)]
    stable_at = None
    for j in range(1, total + 1):
        for v in reds:
            _mutate_with_coefficients(b, c, shift_vertex(v, j - 1))
        history.append(snapshot(j))
        if stable_at is None and history[j] == history[j - 1]:
            stable_at = j - 1
        elif stable_at is not None and history[j] != history[stable_at]:
            raise NotStabilized(f"G-matrix changed again at round {j} after stabilizing at {stable_at}")
        if stable_at is not None and j >= stable_at + 1 + extra_checks:
            break
        if stable_at is None and j > cap:
            raise NotStabilized(f"no stabilization within {cap} rounds")
    if stable_at is None:
        raise NotStabilized(f"no stabilization within {cap} rounds")
    g = _g_from_c(q, history[stable_at], cols)
    for v in cols:
        m, _ = order_key(q.cox, v)
        if m > 0 and g.row(v) != {v: 1}:
            raise QClusterError(f"block of {v} is not the identity above the red vertices")
    return StabilizedG(g, stable_at, history)


def g_stabilized_braid(q: GhlQuiver) -> IndexedMatrix:
    """G^(infinity) on the core of q from the braid group action.

    For the t-th green vertex (i_t, a_t) the column is
    Theta_{i_1}...Theta_{i_t}(e_(i_t, m_{i_t}))[-s_t], with s_t the number of
    earlier greens in the same column and (i, m_i) the highest red vertex.
    Any other vertex has the column of the vertex two levels above it,
    shifted down by one step; above the highest red vertex this gives e_v.
    """
    word = q.green_word
    green_index = {g: t for t, g in enumerate(q.greens)}
    cache: dict = {}

    def green_column(t):
        if t not in cache:
            i = word[t]
            s_t = sum(1 for j in word[:t] if j == i)
            base = {q.highest_reds[i]: 1}
            cache[t] = shift(braid_word_apply(q.datum, word[: t + 1], base), -s_t)
        return cache[t]

    g = IndexedMatrix()
    for v in q.core_vertices():
        i = v[0]
        w, steps = v, 0
        while True:
            if w in green_index:
                col = shift(green_column(green_index[w]), -steps)
                break
            if w[1] > q.highest_reds[i][1]:
                col = {v: 1}
                break
            w, steps = shift_vertex(w, 1), steps + 1
        for x, val in col.items():
            g[x, v] = val
    return g
