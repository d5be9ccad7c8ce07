"""Simply-laced Lie data: Cartan matrices, positive roots, Coxeter words, Weyl words."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import NotAdapted, UnsupportedType

__all__ = [
    "DynkinDatum",
    "CoxeterWord",
    "WeylWordReport",
    "make_datum",
    "coxeter_word",
    "positive_roots",
    "reflect",
    "weyl_word_check",
]


def _edges(family: str, rank: int) -> list[tuple[int, int]]:
    # Bourbaki numbering
    if family == "A":
        return [(i, i + 1) for i in range(1, rank)]
    if family == "D":
        chain = [(i, i + 1) for i in range(1, rank - 1)]
        return chain + [(rank - 2, rank)]
    if family == "E":
        edges = [(1, 3), (3, 4), (4, 5), (2, 4)]
        edges += [(i, i + 1) for i in range(5, rank)]
        return edges
    raise UnsupportedType(f"family {family!r} is not simply laced")


_COXETER_NUMBER = {"E": {6: 12, 7: 18, 8: 30}}


@dataclass(frozen=True)
class DynkinDatum:
    family: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    coxeter_number: int
    roots: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)

    @property
    def num_positive_roots(self) -> int:
        return len(self.roots)

    def c(self, i: int, j: int) -> int:
        return self.cartan[i - 1][j - 1]

    def neighbors(self, i: int) -> list[int]:
        return [j for j in self.nodes if j != i and self.c(i, j) != 0]

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"


def make_datum(family: str, rank: int) -> DynkinDatum:
    """Build the Dynkin datum of a simply-laced type, e.g. ``make_datum("D", 4)``."""
    family = family.upper()
    valid = (
        (family == "A" and rank >= 1)
        or (family == "D" and rank >= 4)
        or (family == "E" and rank in (6, 7, 8))
    )
    if not valid:
        raise UnsupportedType(f"{family}{rank} is not a simply-laced finite type")
    cartan = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in _edges(family, rank):
        cartan[i - 1][j - 1] = cartan[j - 1][i - 1] = -1
    if family == "A":
        h = rank + 1
    elif family == "D":
        h = 2 * rank - 2
    else:
        h = _COXETER_NUMBER["E"][rank]
    cartan_t = tuple(tuple(row) for row in cartan)
    roots = _root_closure(cartan_t)
    return DynkinDatum(family, rank, cartan_t, h, roots)


def reflect(cartan, i: int, beta: tuple[int, ...]) -> tuple[int, ...]:
    """Simple reflection s_i on a vector written in simple-root coordinates."""
    pairing = sum(cartan[i - 1][j] * b for j, b in enumerate(beta))
    out = list(beta)
    out[i - 1] -= pairing
    return tuple(out)


def _root_closure(cartan) -> tuple[tuple[int, ...], ...]:
    n = len(cartan)
    simple = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for i in range(1, n + 1):
            gamma = reflect(cartan, i, beta)
            if all(x >= 0 for x in gamma) and gamma not in seen:
                seen.add(gamma)
                queue.append(gamma)
    return tuple(sorted(seen, key=lambda b: (sum(b), b)))


def positive_roots(datum: DynkinDatum) -> list[tuple[int, ...]]:
    """Positive roots in simple-root coordinates, ordered by (height, lex)."""
    return list(datum.roots)


@dataclass(frozen=True)
class CoxeterWord:
    datum: DynkinDatum
    word: tuple[int, ...]
    arrows: frozenset[tuple[int, int]]
    height: dict[int, int]

    def l(self, i: int) -> int:
        return self.height[i]


def _is_adapted(word, arrows) -> bool:
    arrows = set(arrows)
    for i in reversed(word):
        if any(b == i for (_, b) in arrows):
            return False
        flipped = {(b, a) if i in (a, b) else (a, b) for (a, b) in arrows}
        arrows = flipped
    return True


def coxeter_word(datum: DynkinDatum, word) -> CoxeterWord:
    """Orientation and height function attached to a Coxeter word.

    For adjacent nodes the arrow points from the letter that occurs later in
    the word to the one that occurs earlier; heights drop by one along arrows
    and are normalized so that the minimum is 0.
    """
    word = tuple(int(i) for i in word)
    if sorted(word) != list(datum.nodes):
        raise NotAdapted(f"{word} is not a permutation of the nodes of {datum.name}")
    pos = {i: p for p, i in enumerate(word)}
    arrows = set()
    for i in datum.nodes:
        for j in datum.neighbors(i):
            if pos[i] > pos[j]:
                arrows.add((i, j))
    if not _is_adapted(word, arrows):
        raise NotAdapted(f"{word} is not adapted to its orientation")
    rel = {word[0]: 0}
    queue = deque([word[0]])
    while queue:
        i = queue.popleft()
        for j in datum.neighbors(i):
            if j not in rel:
                rel[j] = rel[i] + 1 if (j, i) in arrows else rel[i] - 1
                queue.append(j)
    low = min(rel.values())
    height = {i: rel[i] - low for i in datum.nodes}
    return CoxeterWord(datum, word, frozenset(arrows), height)


@dataclass(frozen=True)
class WeylWordReport:
    length: int
    is_reduced: bool
    is_w0: bool


def weyl_word_check(datum: DynkinDatum, word) -> WeylWordReport:
    """Reducedness via inversions: the k-th letter must add a new positive root
    sent to a negative one, i.e. s_{i_1}...s_{i_{k-1}}(alpha_{i_k}) > 0."""
    word = [int(i) for i in word]
    n = datum.rank
    reduced = True
    for k, i in enumerate(word):
        beta = tuple(int(j == i - 1) for j in range(n))
        for letter in reversed(word[:k]):
            beta = reflect(datum.cartan, letter, beta)
        if not all(x >= 0 for x in beta):
            reduced = False
            break
    return WeylWordReport(len(word), reduced, reduced and len(word) == datum.num_positive_roots)
