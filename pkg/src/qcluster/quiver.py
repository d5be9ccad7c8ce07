"""Finite windows of the infinite quivers Gamma_e and Gamma_c, and quiver mutation.

Vertices are pairs ``(i, r)``: a Dynkin node and a level. Exchange matrices
follow b[v, w] = #arrows v->w - #arrows w->v.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import (
    BoundaryTouch,
    FrozenVertex,
    KnittingFailed,
    TranslationMismatch,
    WindowTooSmall,
)
from .lie import CoxeterWord, DynkinDatum
from .sparse import IndexedMatrix

__all__ = [
    "Window",
    "LabeledQuiver",
    "GhlQuiver",
    "default_margin",
    "order_key",
    "build_gamma_e",
    "knit_gc",
    "ghl_surgery",
    "mutate",
    "mutate_matrix",
    "green_round",
    "shift_vertex",
]

PLAIN, RED, GREEN, FROZEN = "plain", "red", "green", "frozen"


def default_margin(datum: DynkinDatum) -> int:
    return 2 * datum.coxeter_number


@dataclass(frozen=True)
class Window:
    lo: int
    hi: int
    margin: int = 0

    def __post_init__(self):
        if self.hi < self.lo:
            raise WindowTooSmall(f"empty window [{self.lo},{self.hi}]")
        if self.margin < 0:
            raise WindowTooSmall("negative margin")

    @property
    def core_lo(self) -> int:
        return self.lo + self.margin

    @property
    def core_hi(self) -> int:
        return self.hi - self.margin

    def contains(self, r: int) -> bool:
        return self.lo <= r <= self.hi

    def in_core(self, r: int) -> bool:
        return self.core_lo <= r <= self.core_hi

    def widened(self, below: int, above: int) -> "Window":
        return Window(self.lo - below, self.hi + above, self.margin)

    def to_json(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "margin": self.margin}


def order_key(cox: CoxeterWord, v) -> tuple[int, int]:
    """Sort key for the total order: (i, l(i)+2a) < (j, l(j)+2b) iff (a, i) < (b, j)."""
    i, r = v
    return ((r - cox.l(i)) // 2, i)


def shift_vertex(v, s: int):
    """Move a vertex by s steps of 2 levels (s > 0 moves up)."""
    return (v[0], v[1] + 2 * s)


def _window_vertices(cox: CoxeterWord, window: Window) -> list:
    out = []
    for i in cox.datum.nodes:
        r0 = cox.l(i)
        start = window.lo + ((r0 - window.lo) % 2)
        out.extend((i, r) for r in range(start, window.hi + 1, 2))
    return sorted(out, key=lambda v: order_key(cox, v))


@dataclass(frozen=True)
class LabeledQuiver:
    cox: CoxeterWord
    window: Window
    vertices: tuple
    b: IndexedMatrix = field(repr=False)
    marks: dict = field(default_factory=dict, repr=False)

    @property
    def datum(self) -> DynkinDatum:
        return self.cox.datum

    def mark(self, v) -> str:
        return self.marks.get(v, PLAIN)

    def has(self, v) -> bool:
        return v in self._vertex_set

    @property
    def _vertex_set(self) -> frozenset:
        vs = self.__dict__.get("_vs")
        if vs is None:
            vs = frozenset(self.vertices)
            object.__setattr__(self, "_vs", vs)
        return vs

    def arrows(self) -> list[tuple]:
        """Arrows as (source, target, multiplicity) in the total order of sources."""
        out = []
        key = lambda v: order_key(self.cox, v)
        for v in self.vertices:
            for w, m in sorted(self.b.row(v).items(), key=lambda kv: key(kv[0])):
                if m > 0:
                    out.append((v, w, m))
        return out

    def neighbors(self, v) -> list:
        return list(self.b.row(v))

    def core_vertices(self) -> list:
        return [v for v in self.vertices if self.window.in_core(v[1])]

    def to_json(self) -> dict:
        arrows = []
        for v, w, m in self.arrows():
            arrows.extend([[v[0], v[1], w[0], w[1]]] * m)
        return {
            "vertices": [{"i": i, "r": r, "mark": self.mark((i, r))} for (i, r) in self.vertices],
            "arrows": arrows,
            "window": self.window.to_json(),
        }


@dataclass(frozen=True)
class GhlQuiver(LabeledQuiver):
    """Gamma_c (possibly after some green rounds) on a finite window."""

    greens: tuple = ()
    highest_reds: dict = field(default_factory=dict, repr=False)
    dims: dict = field(default_factory=dict, repr=False)
    rounds: int = 0

    @property
    def green_word(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.greens)

    @property
    def reds(self) -> list:
        return [shift_vertex(g, 1) for g in self.greens]

    @property
    def h_c(self) -> int:
        """Smallest m such that I(m) contains a green vertex."""
        return min((r - self.cox.l(i)) // 2 for i, r in self.greens)


def build_gamma_e(datum: DynkinDatum, cox: CoxeterWord, window: Window) -> LabeledQuiver:
    """Gamma_e: arrows (i,r)->(i,r+2) and (i,r)->(j,r-1) for every Dynkin neighbour j."""
    if window.hi - window.lo < 4:
        raise WindowTooSmall("Gamma_e needs at least 3 levels per column")
    verts = _window_vertices(cox, window)
    vs = set(verts)
    b = IndexedMatrix()
    for (i, r) in verts:
        targets = [(i, r + 2)] + [(j, r - 1) for j in datum.neighbors(i)]
        for w in targets:
            if w in vs:
                b[(i, r), w] = b[(i, r), w] + 1
                b[w, (i, r)] = b[w, (i, r)] - 1
    return LabeledQuiver(cox, window, tuple(verts), b, {})


def _projective_dims(cox: CoxeterWord) -> dict[int, tuple[int, ...]]:
    # dim P(i) at k = number of paths i -> k in Q
    datum = cox.datum
    out = {}
    for i in datum.nodes:
        reach, stack = {i}, [i]
        while stack:
            a = stack.pop()
            for (x, y) in cox.arrows:
                if x == a and y not in reach:
                    reach.add(y)
                    stack.append(y)
        out[i] = tuple(int(k in reach) for k in datum.nodes)
    return out


def knit_gc(datum: DynkinDatum, cox: CoxeterWord) -> dict:
    """Place G_c inside Gamma_e by knitting dimension vectors.

    Irreducible maps run down the diagonals of Gamma_e, so the projective
    slice sits on top: P(i) at (i, -l(i)). Each column is continued downward
    with dim(i, r-2) = sum of dim(j, r-1) over neighbours j, minus dim(i, r),
    and stops at the first vector that is not a positive root. The sinks of
    Q land on level 0. Returns {vertex: dim}.
    """
    roots = set(datum.roots)
    dims = {(i, -cox.l(i)): d for i, d in _projective_dims(cox).items()}
    finished = set()
    r = 0
    while len(finished) < datum.rank:
        r -= 1
        if r < -4 * len(roots) - 4:
            raise KnittingFailed("knitting did not terminate")
        for i in datum.nodes:
            if i in finished or r >= -cox.l(i) or (r + cox.l(i)) % 2:
                continue
            acc = [0] * datum.rank
            for j in datum.neighbors(i):
                for k, x in enumerate(dims.get((j, r + 1), ())):
                    acc[k] += x
            cand = tuple(a - b for a, b in zip(acc, dims[(i, r + 2)]))
            if cand in roots:
                dims[(i, r)] = cand
            else:
                finished.add(i)
    if sorted(dims.values()) != sorted(roots):
        raise KnittingFailed("knitted dimension vectors are not the positive roots")
    return dims


def ghl_surgery(datum: DynkinDatum, cox: CoxeterWord, window: Window) -> GhlQuiver:
    """Gamma_c on a window: surgery at every vertex of G_c, with red/green marks.

    At a site x=(i,r) a new vertex * is inserted below x in its column; the
    arrow y->x from the vertex y below becomes x->*<-y, the arrows x->(j,r-1)
    become *->(j,r-1), and everything below x in column i moves down by 2.
    Since each site only rewires its own outgoing diagonals and the vertical
    arrow just below it, sites can be processed in any order; vertices are
    tracked as objects and relabelled at the end.
    """
    if window.hi - window.lo < 4:
        raise WindowTooSmall("Gamma_c needs at least 3 levels per column")
    gc = knit_gc(datum, cox)
    per_column = {i: sorted((r for (j, r) in gc if j == i), reverse=True) for i in datum.nodes}
    depth = 2 * max(len(c) for c in per_column.values())
    lo = min(window.lo, min(r for _, r in gc)) - depth - 4
    hi = max(window.hi, 0) + 4
    base = build_gamma_e(datum, cox, Window(lo, hi))
    arrows = {}
    for (v, w, m) in base.arrows():
        arrows[(("o", v), ("o", w))] = m

    def drop(a, b):
        if arrows.pop((a, b), 0) != 1:
            raise KnittingFailed(f"missing arrow {a}->{b} during surgery")

    for (i, r) in gc:
        x, y, star = ("o", (i, r)), ("o", (i, r - 2)), ("s", (i, r))
        drop(y, x)
        arrows[(x, star)] = 1
        arrows[(y, star)] = 1
        for j in datum.neighbors(i):
            drop(x, ("o", (j, r - 1)))
            arrows[(star, ("o", (j, r - 1)))] = 1

    def final(obj):
        kind, (i, r) = obj
        if kind == "o":
            return (i, r - 2 * sum(1 for s in per_column[i] if s > r))
        return (i, r - 2 - 2 * sum(1 for s in per_column[i] if s > r))

    verts = _window_vertices(cox, window)
    vs = set(verts)
    b = IndexedMatrix()
    for (a, c), m in arrows.items():
        v, w = final(a), final(c)
        if v in vs and w in vs:
            b[v, w] = b[v, w] + m
            b[w, v] = b[w, v] - m
    if any(abs(x) > 1 for _, x in b.items()):
        raise KnittingFailed("double arrow produced by surgery")
    marks = {}
    greens = []
    for (i, r) in gc:
        red, green = final(("o", (i, r))), final(("s", (i, r)))
        greens.append(green)
        if red in vs:
            marks[red] = RED
        if green in vs:
            marks[green] = GREEN
    greens.sort(key=lambda v: (-v[1], v[0]))
    highest = {}
    for (i, r) in greens:
        red = (i, r + 2)
        if i not in highest or red[1] > highest[i][1]:
            highest[i] = red
    dims = {final(("o", v)): d for v, d in gc.items()}
    return GhlQuiver(
        cox, window, tuple(verts), b, marks,
        greens=tuple(greens), highest_reds=highest, dims=dims, rounds=0,
    )


def mutate_matrix(b: IndexedMatrix, k) -> None:
    """In-place Fomin-Zelevinsky mutation of a skew-symmetric matrix at k."""
    row = dict(b.row(k))
    for x, bkx in row.items():
        bxk = -bkx
        for y, bky in row.items():
            if x == y:
                continue
            if bxk > 0 and bky > 0:
                b[x, y] = b[x, y] + bxk * bky
            elif bxk < 0 and bky < 0:
                b[x, y] = b[x, y] - bxk * bky
    for y, bky in row.items():
        b[k, y] = -bky
        b[y, k] = bky


def _check_safe(q: LabeledQuiver, v) -> None:
    if not q.has(v):
        raise BoundaryTouch(f"{v} is outside the window")
    for w in [v] + q.neighbors(v):
        if not q.window.in_core(w[1]):
            raise BoundaryTouch(f"mutation at {v} touches {w} outside the safe core")


def mutate(q: LabeledQuiver, v, *, strict: bool = True) -> LabeledQuiver:
    """Quiver mutation at v; marks are kept except at v, which becomes plain."""
    if q.mark(v) == FROZEN:
        raise FrozenVertex(f"{v} is frozen")
    if strict:
        _check_safe(q, v)
    elif not q.has(v):
        raise BoundaryTouch(f"{v} is outside the window")
    b = q.b.copy()
    mutate_matrix(b, v)
    marks = dict(q.marks)
    marks.pop(v, None)
    return replace(q, b=b, marks=marks)


def green_round(q: GhlQuiver, *, strict: bool = True) -> tuple[GhlQuiver, list]:
    """Mutate at every green vertex; the result is q translated down by 2."""
    greens = list(q.greens)
    for g in greens:
        for h in greens:
            if q.b[g, h]:
                raise TranslationMismatch(f"green vertices {g} and {h} are adjacent")
        if strict:
            _check_safe(q, g)
        elif not q.has(g):
            raise BoundaryTouch(f"green vertex {g} outside the window")
    b = q.b.copy()
    for g in greens:
        mutate_matrix(b, g)
    down = lambda v: shift_vertex(v, -1)
    marks = {down(v): m for v, m in q.marks.items() if q.has(down(v))}
    core = [v for v in q.core_vertices() if q.window.in_core(v[1] - 2)]
    for v in core:
        for w in core:
            if b[down(v), down(w)] != q.b[v, w]:
                raise TranslationMismatch(f"entry {v},{w} is not translated by the green round")
    out = replace(
        q,
        b=b,
        marks=marks,
        greens=tuple(down(g) for g in greens),
        highest_reds={i: down(v) for i, v in q.highest_reds.items()},
        dims={down(v): d for v, d in q.dims.items()},
        rounds=q.rounds + 1,
    )
    return out, greens
