"""Quantization matrices: the inverse quantum Cartan series, F, Lambda_e, Lambda_c,
compatibility and convergence checks, and Lambda-mutation."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import BoundaryTouch, FrozenVertex
from .gvectors import block_of, g_matrix_tracked, g_stabilized
from .lie import CoxeterWord, DynkinDatum
from .quiver import GhlQuiver, Window, _window_vertices, build_gamma_e, ghl_surgery, mutate_matrix, shift_vertex
from .report import Report, vertex_label
from .sparse import IndexedMatrix

__all__ = [
    "InvCartanSeries",
    "QuantizationMatrix",
    "inv_cartan",
    "f_map",
    "lambda_e",
    "lambda_e_entry",
    "lambda_c",
    "check_compatible",
    "check_convergence",
    "check_convergence_finite",
    "check_translation_covariance",
    "lambda_mutate",
]


@dataclass(frozen=True)
class InvCartanSeries:
    """Coefficients C~_ij(m), m = 1..m_max, of the inverse quantum Cartan matrix."""

    datum: DynkinDatum
    m_max: int
    coeffs: dict  # (i, j) -> tuple indexed by m - 1

    def __call__(self, i: int, j: int, m: int) -> int:
        if m <= 0:
            return 0
        if m > self.m_max:
            raise ValueError(f"coefficient of order {m} beyond m_max={self.m_max}")
        return self.coeffs[i, j][m - 1]


def inv_cartan(datum: DynkinDatum, m_max: int) -> InvCartanSeries:
    """C~(z) = C(z)^{-1} with C(z)_ii = z + 1/z, C(z)_ij = c_ij, by the three-term recurrence
    C~_ij(m+1) = delta_ij delta_m0 - C~_ij(m-1) - sum_{k != i} c_ik C~_kj(m)."""
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    nodes = list(datum.nodes)
    # vals[m][(i, j)], with m = 0 and m = -1 implicitly zero
    prev = {(i, j): 0 for i in nodes for j in nodes}
    cur = {(i, j): int(i == j) for i in nodes for j in nodes}
    rows = [cur]
    for m in range(1, m_max):
        nxt = {}
        for i in nodes:
            for j in nodes:
                acc = -prev[i, j]
                for k in datum.neighbors(i):
                    acc -= datum.c(i, k) * cur[k, j]
                nxt[i, j] = acc
        prev, cur = cur, nxt
        rows.append(cur)
    coeffs = {(i, j): tuple(r[i, j] for r in rows) for i in nodes for j in nodes}
    return InvCartanSeries(datum, m_max, coeffs)


@lru_cache(maxsize=64)
def _series(datum: DynkinDatum, m_max: int) -> InvCartanSeries:
    return inv_cartan(datum, m_max)


def _series_for(datum: DynkinDatum, m: int) -> InvCartanSeries:
    # round up so that nearby requests share one cached series
    size = 64
    while size < m + 1:
        size *= 2
    return _series(datum, size)


@lru_cache(maxsize=1 << 16)
def f_map(datum: DynkinDatum, i: int, j: int, m: int) -> int:
    """F_ij(m) = -sum over k >= 1 with 2k-1 <= m of C~_ij(m-2k+1); F_ij(-m) = -F_ji(m)."""
    if m < 0:
        return -f_map(datum, j, i, -m)
    if m == 0:
        return 0
    ser = _series_for(datum, m)
    return -sum(ser(i, j, m - 2 * k + 1) for k in range(1, (m + 1) // 2 + 1))


def lambda_e_entry(datum: DynkinDatum, v, w) -> int:
    """Lambda_e[(i,r),(j,s)] = F_ij(s - r)."""
    (i, r), (j, s) = v, w
    return f_map(datum, i, j, s - r)


@dataclass(frozen=True)
class QuantizationMatrix:
    vertices: tuple
    matrix: IndexedMatrix
    provenance: str = "custom"

    def __getitem__(self, key) -> int:
        return self.matrix[key]

    def is_skew(self) -> bool:
        return self.matrix.is_skew()


def lambda_e(datum: DynkinDatum, cox: CoxeterWord, window: Window) -> QuantizationMatrix:
    verts = tuple(_window_vertices(cox, window))
    m = IndexedMatrix()
    for a, v in enumerate(verts):
        for w in verts[a + 1:]:
            x = lambda_e_entry(datum, v, w)
            if x:
                m[v, w] = x
                m[w, v] = -x
    return QuantizationMatrix(verts, m, "lambda_e")


def _columns(g: IndexedMatrix) -> dict:
    cols: dict = {}
    for (r, c), x in g.items():
        cols.setdefault(c, {})[r] = x
    return cols


def lambda_c(q: GhlQuiver, g: IndexedMatrix | None = None) -> QuantizationMatrix:
    """Lambda_c = G^T Lambda_e G on the core of q, with G = G^(infinity).

    Each stabilized g-vector is supported on one block, so every entry is a
    finite sum and no truncation enters.
    """
    if g is None:
        g = g_stabilized(q).matrix
    cols = _columns(g)
    verts = tuple(q.core_vertices())
    missing = [v for v in verts if v not in cols]
    if missing:
        raise BoundaryTouch(f"no g-vector for {missing[0]}")
    datum = q.datum
    m = IndexedMatrix()
    for a, v in enumerate(verts):
        gv = cols[v]
        for w in verts[a + 1:]:
            gw = cols[w]
            x = sum(
                cx * cy * lambda_e_entry(datum, vx, wy)
                for vx, cx in gv.items()
                for wy, cy in gw.items()
            )
            if x:
                m[v, w] = x
                m[w, v] = -x
    return QuantizationMatrix(verts, m, "lambda_c")


def _inner_rows(b: IndexedMatrix, verts) -> list:
    """Vertices all of whose B-neighbours lie in verts (compatibility is local there)."""
    vs = set(verts)
    return [v for v in verts if all(x in vs for x in b.row(v))]


def check_compatible(b: IndexedMatrix, lam, vertices, rows=None, name: str = "compatibility") -> Report:
    """(B^T Lambda)_{vw} = -2 delta_vw for v in rows, w in vertices.

    rows defaults to the vertices whose neighbourhood is inside ``vertices``.
    """
    lam = lam.matrix if isinstance(lam, QuantizationMatrix) else lam
    vertices = list(vertices)
    rows = _inner_rows(b, vertices) if rows is None else list(rows)
    rep = Report(name, info={"rows": len(rows), "columns": len(vertices)})
    for v in rows:
        col_v = b.row(v)  # b[v, x] = -b[x, v]
        for w in vertices:
            val = -sum(bvx * lam[x, w] for x, bvx in col_v.items())
            want = -2 if v == w else 0
            if val != want:
                rep.fail(row=vertex_label(v), col=vertex_label(w), value=val, expected=want)
    return rep


def check_convergence(q: GhlQuiver, g: IndexedMatrix | None = None) -> Report:
    """B_e = G B_c G^T on the vertices whose whole block lies in the core of q."""
    if g is None:
        g = g_stabilized(q).matrix
    be = build_gamma_e(q.datum, q.cox, q.window).b
    return _compare_conjugate(q, g, q.b, be, "convergence")


def _compare_conjugate(q, g, b_inner, b_outer, name) -> Report:
    core = set(q.core_vertices())
    test = [v for v in q.core_vertices() if set(block_of(q, v)) <= core]
    # only rows/columns inside fully covered blocks are exact
    prod = (g @ b_inner) @ g.T
    rep = Report(name, info={"vertices": len(test)})
    for v in test:
        for w in test:
            if prod[v, w] != b_outer[v, w]:
                rep.fail(row=vertex_label(v), col=vertex_label(w), value=prod[v, w], expected=b_outer[v, w])
    return rep


def check_convergence_finite(q: GhlQuiver, k: int) -> Report:
    """B^(k) = G^(k) B_c (G^(k))^T, with B^(k) obtained by k actual green rounds."""
    g = g_matrix_tracked(q, k)
    lo = q.window.lo - 2 * k - 4 * q.datum.coxeter_number
    big = ghl_surgery(q.datum, q.cox, Window(lo, q.window.hi + 4))
    bk = big.b.copy()
    for j in range(k):
        for v in big.greens:
            mutate_matrix(bk, shift_vertex(v, -j))
    return _compare_conjugate(q, g, q.b, bk, f"convergence-k{k}")


def lambda_mutate(lam: IndexedMatrix, b: IndexedMatrix, v, frozen=()) -> IndexedMatrix:
    """Lambda' = E^T Lambda E with E the identity except column v:
    E[v, v] = -1 and E[w, v] = max(0, -b[w, v])."""
    if v in frozen:
        raise FrozenVertex(f"{v} is frozen")
    ecol = {v: -1}
    for w, bvw in b.row(v).items():
        if bvw > 0:  # b[w, v] = -bvw < 0
            ecol[w] = bvw
    out = lam.copy()
    # row/column v of Lambda E
    labels = set(r for (r, _), _ in lam.items()) | {v}
    new_col = {}
    for x in labels:
        if x == v:
            continue
        val = sum(lam[x, y] * e for y, e in ecol.items())
        new_col[x] = val
    for x, val in new_col.items():
        out[x, v] = val
        out[v, x] = -val
    out[v, v] = 0
    return out


def check_translation_covariance(q: GhlQuiver, lam: QuantizationMatrix) -> Report:
    """Mutating (Lambda_c, B_c) at every green vertex gives Lambda_c moved down by 2."""
    b = q.b.copy()
    m = lam.matrix.copy()
    verts = set(lam.vertices)
    for gv in q.greens:
        if gv not in verts or any(x not in verts for x in b.row(gv)):
            raise BoundaryTouch(f"green vertex {gv} is too close to the quantization window edge")
        m = lambda_mutate(m, b, gv)
        mutate_matrix(b, gv)
    test = [v for v in lam.vertices if shift_vertex(v, 1) in verts]
    rep = Report("translation-covariance", info={"vertices": len(test)})
    for v in test:
        for w in test:
            want = lam.matrix[shift_vertex(v, 1), shift_vertex(w, 1)]
            if m[v, w] != want:
                rep.fail(row=vertex_label(v), col=vertex_label(w), value=m[v, w], expected=want)
    return rep
