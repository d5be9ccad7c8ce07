"""Shared fixtures-by-cache for the test modules: the type/word suite, cached
per-configuration results, golden-table loading."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from qcluster.gvectors import g_matrix_tracked, g_stabilized, g_stabilized_braid
from qcluster.lie import coxeter_word, make_datum
from qcluster.quantization import (
    check_compatible,
    check_convergence,
    check_convergence_finite,
    check_translation_covariance,
    lambda_c,
    lambda_e,
)
from qcluster.quiver import Window, build_gamma_e, default_margin, ghl_surgery

DATA = Path(__file__).parent / "data"

# A1 has a single Coxeter element; every other type gets at least two words.
SUITE = [
    ("A", 1, (1,)),
    ("A", 2, (1, 2)),
    ("A", 2, (2, 1)),
    ("A", 3, (1, 2, 3)),
    ("A", 3, (2, 1, 3)),
    ("A", 4, (1, 2, 3, 4)),
    ("A", 4, (2, 4, 1, 3)),
    ("A", 5, (1, 2, 3, 4, 5)),
    ("A", 5, (3, 1, 5, 2, 4)),
    ("D", 4, (1, 2, 3, 4)),
    ("D", 4, (2, 1, 3, 4)),
    ("D", 5, (1, 2, 3, 4, 5)),
    ("D", 5, (3, 2, 1, 4, 5)),
    ("E", 6, (1, 2, 3, 4, 5, 6)),
    ("E", 6, (4, 3, 5, 1, 2, 6)),
]

R_MAX = 40


def suite_id(cfg) -> str:
    fam, rank, word = cfg
    return f"{fam}{rank}-{''.join(map(str, word))}"


@dataclass
class SuiteResult:
    q: object
    lam_e: object
    lam_c: object
    g: object
    g_braid: object
    compat_e: object
    compat_c: object
    convergence: object
    finite: dict
    translation: object


@lru_cache(maxsize=None)
def window_for(family: str, rank: int) -> Window:
    return Window(-R_MAX, R_MAX, default_margin(make_datum(family, rank)))


@lru_cache(maxsize=None)
def suite_result(family: str, rank: int, word: tuple) -> SuiteResult:
    datum = make_datum(family, rank)
    cox = coxeter_word(datum, word)
    w = window_for(family, rank)
    q = ghl_surgery(datum, cox, w)
    stab = g_stabilized(q)
    lam_c = lambda_c(q, stab.matrix)
    ge = build_gamma_e(datum, cox, w)
    lam_e = lambda_e(datum, cox, w)
    core_e = [v for v in lam_e.vertices if w.in_core(v[1])]
    return SuiteResult(
        q=q,
        lam_e=lam_e,
        lam_c=lam_c,
        g=stab,
        g_braid=g_stabilized_braid(q),
        compat_e=check_compatible(ge.b, lam_e, lam_e.vertices, rows=core_e),
        compat_c=check_compatible(q.b, lam_c, lam_c.vertices),
        convergence=check_convergence(q, stab.matrix),
        finite={k: check_convergence_finite(q, k) for k in (1, 2)},
        translation=_translation(datum, cox),
    )


def _translation(datum, cox):
    # Lambda_c is truncation-free, so the full range can serve as the core here
    q0 = ghl_surgery(datum, cox, Window(-R_MAX, R_MAX, 0))
    return check_translation_covariance(q0, lambda_c(q0))


def load_table(name: str) -> dict:
    """Golden TSV -> {(row, col): value}; bare integer labels mean node 1."""
    lines = [line.rstrip("\n").split("\t") for line in open(DATA / f"{name}.tsv")]

    def parse(label: str):
        if label.startswith("("):
            i, r = label.strip("()").split(",")
            return int(i), int(r)
        return 1, int(label)

    cols = [parse(c) for c in lines[0][1:]]
    return {(parse(row[0]), c): int(x) for row in lines[1:] for c, x in zip(cols, row[1:])}


def table_mismatches(table: dict, matrix) -> list:
    return [(k, v, matrix[k]) for k, v in table.items() if matrix[k] != v]


def tracked(q, k):
    return g_matrix_tracked(q, k)
