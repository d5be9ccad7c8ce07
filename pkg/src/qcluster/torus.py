"""Quantum tori over Z[t^(1/2), t^(-1/2)], toric frames and quantum seed mutation.

An element is a finite sum of c * t^(h/2) * X^u with X^u the normalized
monomial: X^u X^w = t^(Lambda(u,w)/2) X^(u+w). Powers of t^(1/2) are stored
as the integer h ("twice the exponent").
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Iterable

from .errors import BoundaryTouch, FrameMismatch, FrozenVertex, QClusterError
from .quantization import lambda_mutate
from .quiver import mutate_matrix
from .report import vertex_label
from .sparse import IndexedMatrix

__all__ = [
    "QTorus",
    "QElement",
    "QuantumSeed",
    "format_half",
    "initial_seed",
    "frame",
    "quantum_mutate",
    "quasi_commutation_defects",
    "fit_t_powers",
]


def format_half(h: int) -> str:
    """t-exponent h/2 as a string: "1", "-1/2", "0"."""
    return str(h // 2) if h % 2 == 0 else f"{h}/2"


def _exp_key(u: dict) -> tuple:
    return tuple(sorted((v, k) for v, k in u.items() if k))


def _exp_add(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, k in b:
        out[v] = out.get(v, 0) + k
    return _exp_key(out)


class QTorus:
    """The quantum torus attached to a skew-symmetric matrix Lambda."""

    def __init__(self, lam: IndexedMatrix, order: Callable | None = None, name: str = "T"):
        self.lam = lam
        self.name = name
        self.order = order or (lambda v: v)

    def pairing(self, u: tuple, w: tuple) -> int:
        """Lambda(u, w) = sum_v sum_x u_v Lambda[v, x] w_x."""
        return sum(a * self.lam[v, x] * b for v, a in u for x, b in w)

    def element(self, terms: dict) -> "QElement":
        return QElement(self, {k: c for k, c in terms.items() if c})

    def one(self) -> "QElement":
        return self.element({((), 0): 1})

    def zero(self) -> "QElement":
        return self.element({})

    def t(self, half: int) -> "QElement":
        """The scalar t^(half/2)."""
        return self.element({((), half): 1})

    def x(self, u: dict, coeff: int = 1, half: int = 0) -> "QElement":
        """coeff * t^(half/2) * X^u."""
        return self.element({(_exp_key(u), half): coeff})

    def gen(self, v) -> "QElement":
        return self.x({v: 1})


@dataclass(frozen=True)
class QElement:
    torus: QTorus
    terms: dict = field(default_factory=dict)  # (exponent key, h) -> int

    def _same(self, other: "QElement") -> None:
        if other.torus is not self.torus:
            raise FrameMismatch("elements live in different quantum tori")

    def _coerce(self, other) -> "QElement":
        if isinstance(other, int):
            return self.torus.element({((), 0): other})
        self._same(other)
        return other

    def __add__(self, other) -> "QElement":
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return self.torus.element(out)

    __radd__ = __add__

    def __neg__(self) -> "QElement":
        return self.torus.element({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "QElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "QElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "QElement":
        if isinstance(other, int):
            return self.torus.element({k: c * other for k, c in self.terms.items()})
        self._same(other)
        pair = self.torus.pairing
        out: dict = {}
        for (u, h1), c1 in self.terms.items():
            for (w, h2), c2 in other.terms.items():
                key = (_exp_add(u, w), h1 + h2 + pair(u, w))
                out[key] = out.get(key, 0) + c1 * c2
        return self.torus.element(out)

    def __rmul__(self, other) -> "QElement":
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> "QElement":
        if n < 0:
            return self.inverse() ** (-n)
        out = self.torus.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.torus.element({((), 0): other})
        if not isinstance(other, QElement):
            return NotImplemented
        return other.torus is self.torus and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def inverse(self) -> "QElement":
        """Inverse of a unit c * t^(h/2) * X^u with c = +-1."""
        if not self.is_monomial():
            raise QClusterError("only single-term elements are invertible in the torus")
        ((u, h), c), = self.terms.items()
        if c not in (1, -1):
            raise QClusterError(f"coefficient {c} is not a unit")
        neg = tuple((v, -k) for v, k in u)
        # X^u X^-u = t^(Lambda(u,-u)/2) X^0 = X^0
        return self.torus.element({(neg, -h): c})

    def bar(self) -> "QElement":
        """The ring anti-involution t^(1/2) -> t^(-1/2), X^u -> X^u."""
        return self.torus.element({(u, -h): c for (u, h), c in self.terms.items()})

    def classical(self) -> dict:
        """Specialization t -> 1: {exponent key: int}."""
        out: dict = {}
        for (u, _), c in self.terms.items():
            out[u] = out.get(u, 0) + c
        return {u: c for u, c in out.items() if c}

    def sorted_terms(self) -> list:
        key = self.torus.order
        return sorted(
            self.terms.items(),
            key=lambda kv: ([(key(v), k) for v, k in kv[0][0]], kv[0][1]),
        )

    def to_json(self, labels: Callable = vertex_label) -> list:
        out = []
        for (u, h), c in self.sorted_terms():
            ordered = sorted(u, key=lambda vk: self.torus.order(vk[0]))
            out.append({
                "t_power": format_half(h),
                "exponents": {labels(v): k for v, k in ordered},
                "coeff": c,
            })
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (u, h), c in self.sorted_terms():
            mono = "*".join(f"X{vertex_label(v)}^{k}" if k != 1 else f"X{vertex_label(v)}" for v, k in u)
            tpart = f"t^({format_half(h)})" if h else ""
            body = "*".join(p for p in (tpart, mono) if p) or "1"
            parts.append(f"{c}*{body}" if c != 1 else body)
        return " + ".join(parts)


@dataclass(frozen=True)
class QuantumSeed:
    """A seed with its cluster variables written in a fixed ambient torus."""

    vertices: tuple
    lam: IndexedMatrix
    b: IndexedMatrix
    variables: dict
    mutable: frozenset
    frozen: frozenset = frozenset()
    labels: dict = field(default_factory=dict)

    @property
    def torus(self) -> QTorus:
        return next(iter(self.variables.values())).torus


def initial_seed(torus: QTorus, vertices: Iterable, b: IndexedMatrix, mutable: Iterable, frozen=()) -> QuantumSeed:
    """The seed whose variables are the generators X^{e_v} of the torus."""
    vertices = tuple(vertices)
    vs = set(vertices)
    b_loc = b.restrict(vs)
    return QuantumSeed(
        vertices=vertices,
        lam=torus.lam,
        b=b_loc,
        variables={v: torus.gen(v) for v in vertices},
        mutable=frozenset(mutable) - frozenset(frozen),
        frozen=frozenset(frozen),
    )


def frame(seed: QuantumSeed, u: dict) -> QElement:
    """M(u) = t^(-1/2 sum_{a<b} u_a u_b Lambda_ab) * X_a1^u_a1 * ... (ordered product)."""
    for v in u:
        if v not in seed.variables:
            raise BoundaryTouch(f"{v} is not a vertex of the seed")
    items = [(v, k) for v, k in sorted(u.items(), key=lambda vk: seed.vertices.index(vk[0])) if k]
    torus = seed.torus
    h = 0
    for a, (v, x) in enumerate(items):
        for w, y in items[a + 1:]:
            h -= x * y * seed.lam[v, w]
    out = torus.t(h)
    for v, k in items:
        out = out * seed.variables[v] ** k
    return out


def quantum_mutate(seed: QuantumSeed, v) -> tuple[QuantumSeed, QElement]:
    """Quantum exchange at v:
    X_v* = M(-e_v + sum_{b_wv > 0} b_wv e_w) + M(-e_v - sum_{b_wv < 0} b_wv e_w).

    The frame needs X_v^-1, so the variable at v must still be a unit of the
    torus (true for every vertex not mutated before).
    """
    if v in seed.frozen:
        raise FrozenVertex(f"{v} is frozen")
    if v not in seed.mutable:
        raise BoundaryTouch(f"mutation at {v} needs vertices outside the seed")
    plus, minus = {v: -1}, {v: -1}
    for w, bvw in seed.b.row(v).items():
        bwv = -bvw
        if bwv > 0:
            plus[w] = bwv
        else:
            minus[w] = -bwv
    new = frame(seed, plus) + frame(seed, minus)
    lam = lambda_mutate(seed.lam, seed.b, v)
    b = seed.b.copy()
    mutate_matrix(b, v)
    variables = dict(seed.variables)
    variables[v] = new
    return replace(seed, lam=lam, b=b, variables=variables), new


def quasi_commutation_defects(seed: QuantumSeed, pairs=None) -> list:
    """Pairs (v, w) whose variables fail X_v X_w = t^(Lambda_vw) X_w X_v."""
    verts = list(seed.variables)
    pairs = pairs if pairs is not None else [(a, b) for i, a in enumerate(verts) for b in verts[i + 1:]]
    torus = seed.torus
    bad = []
    for a, b in pairs:
        xa, xb = seed.variables[a], seed.variables[b]
        if xa * xb != torus.t(2 * seed.lam[a, b]) * xb * xa:
            bad.append((a, b))
    return bad


def fit_t_powers(x: QElement, monomials: list) -> list | None:
    """Half-integer powers h_k with x = sum_k t^(h_k/2) m_k, for single-term m_k.

    Returns None if x is not of that shape.
    """
    out = []
    remaining = dict(x.terms)
    for m in monomials:
        if not m.is_monomial():
            raise QClusterError("fit_t_powers needs single-term elements")
        ((u, h), c), = m.terms.items()
        hits = [(key, cx) for key, cx in remaining.items() if key[0] == u]
        if len(hits) != 1 or hits[0][1] != c:
            return None
        (key, _), = hits
        out.append(key[1] - h)
        del remaining[key]
    return None if remaining else out
