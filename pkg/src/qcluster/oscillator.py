"""The three-vertex quantum cluster algebra inside the A1 construction, the
t-oscillator algebra relations, the quantum double Bruhat cell of SL2, and the
comparison with the Berenstein-Zelevinsky initial quantization in types A1, A2.

Conventions: X^u X^w = t^(Lambda(u,w)/2) X^(u+w), so with Lambda_ab = 1 the
generators satisfy ab = t ba. Several relations are recorded twice: in the
printed ("printed") form and in the form forced by these t-commutation
relations ("consistent"). Where the two differ only the latter can hold.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MismatchWithLambdaC
from .lie import coxeter_word, make_datum
from .quantization import check_compatible, lambda_c, lambda_mutate
from .quiver import Window, ghl_surgery, mutate_matrix, order_key
from .report import PresentationReport, Report, vertex_label
from .sparse import IndexedMatrix
from .torus import QElement, QTorus, QuantumSeed, frame, initial_seed, quantum_mutate

__all__ = [
    "OscillatorSeed",
    "build_oscillator_seed",
    "exchange_check",
    "oscillator_relations",
    "bruhat_relations",
    "bz_comparison",
    "gamma_small",
]

LABELS = ("a", "b", "c")
# a sits at -2 (mutable), b at 0 and c at -4 (frozen)
POSITIONS = {"a": (1, -2), "b": (1, 0), "c": (1, -4)}
OSC_LAMBDA = ((0, 1, 1), (-1, 0, 0), (-1, 0, 0))
OSC_B = (0, 1, 1)  # column of the mutable vertex a, rows (a, b, c)


@dataclass(frozen=True)
class OscillatorSeed:
    seed: QuantumSeed
    lam: IndexedMatrix
    b: IndexedMatrix

    @property
    def torus(self) -> QTorus:
        return self.seed.torus

    def var(self, name: str) -> QElement:
        return self.seed.variables[name]

    def mutated(self) -> QElement:
        """a*, the single new cluster variable."""
        return quantum_mutate(self.seed, "a")[1]


def _a1_lambda_c(margin_window: Window | None = None):
    datum = make_datum("A", 1)
    q = ghl_surgery(datum, coxeter_word(datum, (1,)), margin_window or Window(-12, 12))
    return q, lambda_c(q)


def build_oscillator_seed(verify: bool = True) -> OscillatorSeed:
    """Seed (a, b, c) with b, c frozen and invertible."""
    lam = IndexedMatrix.from_dense(OSC_LAMBDA, LABELS)
    b = IndexedMatrix()
    for name, x in zip(LABELS, OSC_B):
        if x:
            # x arrows name -> a; b[v, w] counts v -> w minus w -> v
            b[name, "a"] = x
            b["a", name] = -x
    if verify:
        _, lc = _a1_lambda_c()
        for v in LABELS:
            for w in LABELS:
                if lc[POSITIONS[v], POSITIONS[w]] != lam[v, w]:
                    raise MismatchWithLambdaC(
                        f"Lambda_c{vertex_label(POSITIONS[v])},{vertex_label(POSITIONS[w])} "
                        f"= {lc[POSITIONS[v], POSITIONS[w]]}, expected {lam[v, w]}",
                        residual=lc[POSITIONS[v], POSITIONS[w]] - lam[v, w],
                    )
    torus = QTorus(lam, order=LABELS.index, name="T_osc")
    seed = initial_seed(torus, LABELS, b, mutable=["a"], frozen=["b", "c"])
    return OscillatorSeed(seed, lam, b)


def compatibility(osc: OscillatorSeed) -> Report:
    """B~^T Lambda = (-2, 0, 0)."""
    return check_compatible(osc.b, osc.lam, LABELS, rows=["a"], name="oscillator compatibility")


def exchange_check(osc: OscillatorSeed | None = None) -> PresentationReport:
    osc = osc or build_oscillator_seed()
    T = osc.torus
    a, b, c = (osc.var(x) for x in LABELS)
    a_star = osc.mutated()
    rep = PresentationReport("exchange relations")
    rep.record("a* = M(-e_a + e_b + e_c) + M(-e_a)", a_star,
               frame(osc.seed, {"a": -1, "b": 1, "c": 1}) + frame(osc.seed, {"a": -1}), "printed")
    rep.record("a a* = 1 + t^-1 bc", a * a_star, 1 + T.t(-2) * b * c, "printed")
    rep.record("a* a = 1 + t bc", a_star * a, 1 + T.t(2) * b * c, "printed")
    rep.record("a a* = 1 + t bc", a * a_star, 1 + T.t(2) * b * c, "consistent")
    rep.record("a* a = 1 + t^-1 bc", a_star * a, 1 + T.t(-2) * b * c, "consistent")
    return rep


def oscillator_relations(osc: OscillatorSeed | None = None) -> PresentationReport:
    """Images of the t-oscillator relations under e -> za, f -> a*,
    k -> -(t - t^-1)^2 b^2, C -> z, with z = b c^-1."""
    osc = osc or build_oscillator_seed()
    T = osc.torus
    a, b, c = (osc.var(x) for x in LABELS)
    a_star = osc.mutated()
    z = b * c.inverse()
    b2 = b * b
    scalar = -(T.t(2) - T.t(-2)) * (T.t(2) - T.t(-2))
    e, f, k = z * a, a_star, scalar * b2
    rep = PresentationReport("oscillator relations")
    rep.record("k e = t^2 e k", k * e, T.t(4) * e * k, "printed")
    rep.record("k f = t^-2 f k", k * f, T.t(-4) * f * k, "printed")
    rep.record("k e = t^-2 e k", k * e, T.t(-4) * e * k, "consistent")
    rep.record("k f = t^2 f k", k * f, T.t(4) * f * k, "consistent")
    # k^-1 needs 1/(t - t^-1)^2, outside Z[t^(1/2), t^(-1/2)]; only the monomial part is inverted
    rep.record("b^2 b^-2 = 1 (monomial part of k k^-1)", b2 * b2.inverse(), T.one(), "printed")
    rep.record("b^-2 b^2 = 1 (monomial part of k^-1 k)", b2.inverse() * b2, T.one(), "printed")
    rep.notes.append("the scalar -(t - t^-1)^2 in k is not invertible over Z[t^(1/2), t^(-1/2)]")
    for name, x in (("a", a), ("a*", a_star), ("b", b), ("c", c)):
        rep.record(f"z {name} = {name} z", z * x, x * z, "printed")
    # C = ef + t^-1 k / (t - t^-1)^2 = fe + t k / (t - t^-1)^2
    rep.record("z a a* - t^-1 b^2 = z", e * f - T.t(-2) * b2, z, "printed")
    rep.record("a* z a - t b^2 = z", f * e - T.t(2) * b2, z, "printed")
    rep.record("z a a* - t b^2 = z", e * f - T.t(2) * b2, z, "consistent")
    rep.record("a* z a - t^-1 b^2 = z", f * e - T.t(-2) * b2, z, "consistent")
    return rep


def bruhat_relations(osc: OscillatorSeed | None = None) -> PresentationReport:
    """The presentation of the quantum double Bruhat cell of SL2 with d = a*."""
    osc = osc or build_oscillator_seed()
    T = osc.torus
    a, b, c = (osc.var(x) for x in LABELS)
    d = osc.mutated()
    bi, ci = b.inverse(), c.inverse()
    rep = PresentationReport("double Bruhat cell relations")
    rep.record("ab = t ba", a * b, T.t(2) * b * a)
    rep.record("cd = t dc", c * d, T.t(2) * d * c)
    rep.record("ac = t ca", a * c, T.t(2) * c * a)
    rep.record("bd = t db", b * d, T.t(2) * d * b)
    rep.record("b b^-1 = b^-1 b = 1", b * bi + bi * b, T.one() * 2)
    rep.record("c c^-1 = c^-1 c = 1", c * ci + ci * c, T.one() * 2)
    rep.record("bc = cb", b * c, c * b)
    rep.record("ad - t^-1 bc = 1", a * d - T.t(-2) * b * c, T.one())
    rep.record("da - t bc = 1", d * a - T.t(2) * b * c, T.one())
    rep.record("ad - t bc = 1", a * d - T.t(2) * b * c, T.one(), "consistent")
    rep.record("da - t^-1 bc = 1", d * a - T.t(-2) * b * c, T.one(), "consistent")
    return rep


# Initial seeds of the quantum double Bruhat cell: arrows of the quiver Q and
# its quantization matrix (rows in the total order of the vertices).
BZ_DATA = {
    1: {
        "word": (1,),
        "vertices": ((1, -2), (1, 0), (1, 2)),
        "arrows": (((1, 2), (1, 0)), ((1, -2), (1, 0))),
        "lambda": (
            (0, -1, 0),
            (1, 0, 1),
            (0, -1, 0),
        ),
        "path": ((1, 0),),
        "sign": 1,
    },
    2: {
        "word": (1, 2),
        "vertices": ((1, -6), (1, -4), (2, -3), (1, -2), (2, -1), (1, 0), (2, 1), (1, 2)),
        "arrows": (
            ((2, 1), (1, 0)), ((1, 0), (1, 2)), ((1, 0), (2, -1)), ((2, -1), (2, 1)),
            ((2, -1), (1, -2)), ((2, -1), (2, -3)), ((1, -2), (1, 0)), ((1, -2), (1, -4)),
            ((1, -4), (2, -1)), ((1, -4), (1, -6)), ((2, -3), (1, -4)),
        ),
        "lambda": (
            (0, -1, 0, -1, -1, 0, 0, 0),
            (1, 0, 0, -1, 0, 0, 1, 0),
            (0, 0, 0, -1, -1, -1, 0, 0),
            (1, 1, 1, 0, 0, 1, 1, 1),
            (1, 0, 1, 0, 0, 0, 1, 1),
            (0, 0, 1, -1, 0, 0, 0, 1),
            (0, -1, 0, -1, -1, 0, 0, 0),
            (0, 0, 0, -1, -1, -1, 0, 0),
        ),
        "path": ((1, -2),),
        "sign": -1,
    },
}


def gamma_small(q) -> list:
    """Vertex set of the finite ice quiver: reds, greens, and the vertex right
    above the highest red vertex of each column, in the total order."""
    above = [(i, r + 2) for i, (_, r) in sorted(q.highest_reds.items())]
    verts = set(q.reds) | set(q.greens) | set(above)
    return sorted(verts, key=lambda v: order_key(q.cox, v))


def bz_comparison(rank: int) -> Report:
    """Mutating the BZ quantization matrix along the path from Q to the small
    ice quiver gives +Lambda_c restricted (rank 1) or -Lambda_c restricted (rank 2)."""
    if rank not in BZ_DATA:
        raise ValueError("comparison data exists for A1 and A2 only")
    data = BZ_DATA[rank]
    datum = make_datum("A", rank)
    q = ghl_surgery(datum, coxeter_word(datum, data["word"]), Window(-30, 30))
    verts = gamma_small(q)
    rep = Report(f"bz-comparison A{rank}", info={"vertices": [vertex_label(v) for v in verts]})
    if tuple(verts) != data["vertices"]:
        rep.fail(reason="vertex set differs", got=[vertex_label(v) for v in verts])
        return rep
    bq = IndexedMatrix()
    for v, w in data["arrows"]:
        bq[v, w] = bq[v, w] + 1
        bq[w, v] = bq[w, v] - 1
    lam = IndexedMatrix.from_dense(data["lambda"], verts)
    frozen = set(gamma_frozen(q))
    mutable = [v for v in verts if v not in frozen]
    # BZ normalize B^T Lambda with either sign; record which one holds
    plus = check_compatible(bq, lam, verts, rows=mutable, name="BZ compatibility")
    minus = check_compatible(-bq, lam, verts, rows=mutable, name="BZ compatibility")
    if plus.passed or minus.passed:
        rep.info["bz_compatibility"] = "B^T Lambda = -2 Id" if plus.passed else "B^T Lambda = 2 Id"
    else:
        rep.merge(plus)
    b = bq.copy()
    for v in data["path"]:
        lam = lambda_mutate(lam, b, v)
        mutate_matrix(b, v)
    # the mutated quiver must be the restriction of Gamma_c (arrows between frozen vertices aside)
    small = q.b.restrict(set(verts))
    for v in verts:
        for w in verts:
            if b[v, w] != small[v, w] and not (v in frozen and w in frozen):
                rep.fail(reason="quiver after mutation differs", row=vertex_label(v), col=vertex_label(w),
                         value=b[v, w], expected=small[v, w])
    lc = lambda_c(q)
    sign = data["sign"]
    for v in verts:
        for w in verts:
            if lam[v, w] != sign * lc[v, w]:
                rep.fail(row=vertex_label(v), col=vertex_label(w), value=lam[v, w], expected=sign * lc[v, w])
    rep.info["relation"] = "Lambda_0 = Lambda_c" if sign == 1 else "Lambda_0 = -Lambda_c"
    return rep


def gamma_frozen(q) -> list:
    """Frozen vertices: the vertex above each highest red and the lowest green of each column."""
    out = [(i, r + 2) for i, (_, r) in sorted(q.highest_reds.items())]
    for i in q.datum.nodes:
        out.append(min((g for g in q.greens if g[0] == i), key=lambda g: g[1]))
    return out
