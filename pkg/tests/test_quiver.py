from dataclasses import replace

import pytest

from qcluster.errors import BoundaryTouch, FrozenVertex, WindowTooSmall
from qcluster.lie import coxeter_word, make_datum, weyl_word_check
from qcluster.quiver import (
    FROZEN,
    Window,
    build_gamma_e,
    ghl_surgery,
    green_round,
    knit_gc,
    mutate,
    mutate_matrix,
    order_key,
)
from support import SUITE, suite_id


def setup(family, rank, word, window=Window(-30, 20, 4)):
    d = make_datum(family, rank)
    c = coxeter_word(d, word)
    return d, c, ghl_surgery(d, c, window)


def test_gamma_e_a1_is_a_chain():
    d = make_datum("A", 1)
    q = build_gamma_e(d, coxeter_word(d, (1,)), Window(-4, 4))
    assert [(v, w) for v, w, _ in q.arrows()] == [((1, -4), (1, -2)), ((1, -2), (1, 0)), ((1, 0), (1, 2)), ((1, 2), (1, 4))]


def test_gamma_e_arrow_rule_a2():
    d = make_datum("A", 2)
    q = build_gamma_e(d, coxeter_word(d, (1, 2)), Window(-6, 6))
    assert q.b[(1, 0), (1, 2)] == 1
    assert q.b[(1, 0), (2, -1)] == 1
    assert q.b[(2, 1), (1, 0)] == 1
    assert q.b.is_skew()


def test_gamma_e_window_too_small():
    d = make_datum("A", 1)
    with pytest.raises(WindowTooSmall):
        build_gamma_e(d, coxeter_word(d, (1,)), Window(0, 2))


def test_knitting_a2():
    d = make_datum("A", 2)
    dims = knit_gc(d, coxeter_word(d, (1, 2)))
    assert dims == {(1, 0): (1, 0), (2, -1): (1, 1), (1, -2): (0, 1)}


def test_knitting_a3_linear():
    d = make_datum("A", 3)
    dims = knit_gc(d, coxeter_word(d, (1, 2, 3)))
    assert dims == {
        (1, 0): (1, 0, 0), (2, -1): (1, 1, 0), (3, -2): (1, 1, 1),
        (1, -2): (0, 1, 0), (2, -3): (0, 1, 1), (1, -4): (0, 0, 1),
    }


def test_a1_surgery():
    _, _, q = setup("A", 1, (1,))
    assert q.greens == ((1, -2),)
    assert q.reds == [(1, 0)]
    assert q.b[(1, 0), (1, -2)] == 1 and q.b[(1, 0), (1, 2)] == 1
    assert q.b[(1, -4), (1, -2)] == 1


def test_a2_reds_and_greens():
    _, _, q = setup("A", 2, (1, 2))
    assert q.reds == [(1, 0), (2, -1), (1, -4)]
    assert q.greens == ((1, -2), (2, -3), (1, -6))


def test_a3_reds_match_figure():
    _, _, q = setup("A", 3, (1, 2, 3))
    assert q.reds == [(1, 0), (2, -1), (3, -2), (1, -4), (2, -5), (1, -8)]


@pytest.mark.parametrize("cfg", SUITE, ids=suite_id)
def test_structural_invariants(cfg):
    d, c, q = setup(*cfg, window=Window(-40, 40, 4))
    assert len(q.greens) == d.num_positive_roots
    assert weyl_word_check(d, q.green_word).is_w0
    assert sorted(knit_gc(d, c).values()) == sorted(d.roots)
    q2, mutated = green_round(q)
    assert mutated == list(q.greens)
    assert q2.rounds == 1
    assert q2.greens == tuple((i, r - 2) for i, r in q.greens)


def test_mutation_is_involutive():
    _, _, q = setup("D", 4, (2, 1, 3, 4))
    b = q.b.copy()
    for v in [(1, -4), (2, -5), (3, -2)]:
        mutate_matrix(b, v)
        mutate_matrix(b, v)
    assert b == q.b


def test_mutate_guards():
    _, _, q = setup("A", 1, (1,), Window(-10, 10, 2))
    with pytest.raises(BoundaryTouch):
        mutate(q, (1, 10))
    q_marked = replace(q, marks={**q.marks, (1, 0): FROZEN})
    with pytest.raises(FrozenVertex):
        mutate(q_marked, (1, 0))


def test_total_order():
    c = coxeter_word(make_datum("A", 2), (1, 2))
    labels = [(1, -6), (1, -4), (2, -3), (1, -2), (2, -1), (1, 0), (2, 1), (1, 2)]
    assert sorted(reversed(labels), key=lambda v: order_key(c, v)) == labels
