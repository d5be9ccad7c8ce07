import pytest
from hypothesis import given, settings, strategies as st

from qcluster.gvectors import braid_apply, braid_word_apply, block_of, g_matrix_tracked, g_stabilized, shift
from qcluster.lie import coxeter_word, make_datum
from qcluster.quiver import Window, ghl_surgery, order_key
from support import SUITE, suite_id, suite_result


@pytest.mark.parametrize("cfg", SUITE, ids=suite_id)
def test_tracking_equals_braid(cfg):
    res = suite_result(*cfg)
    assert res.g.matrix == res.g_braid


@pytest.mark.parametrize("cfg", SUITE, ids=suite_id)
def test_blocks_above_reds_are_identity(cfg):
    res = suite_result(*cfg)
    q = res.q
    for v in q.core_vertices():
        if order_key(q.cox, v)[0] > 0:
            assert res.g.column(v) == {v: 1}


@pytest.mark.parametrize("cfg", SUITE, ids=suite_id)
def test_g_vectors_supported_on_own_block(cfg):
    res = suite_result(*cfg)
    q = res.q
    for v in q.core_vertices():
        assert set(res.g.column(v)) <= set(block_of(q, v))


def test_a1_g_infinity():
    d = make_datum("A", 1)
    q = ghl_surgery(d, coxeter_word(d, (1,)), Window(-12, 12, 2))
    g = g_stabilized(q)
    for v in q.core_vertices():
        assert g.column(v) == {v: 1 if v[1] >= 0 else -1}


def test_finite_tracking_reaches_limit():
    d = make_datum("A", 3)
    q = ghl_surgery(d, coxeter_word(d, (2, 1, 3)), Window(-16, 10, 2))
    g = g_stabilized(q)
    assert g_matrix_tracked(q, g.rounds + 1) == g.matrix


def test_shift_and_theta():
    d = make_datum("A", 2)
    assert shift({(1, 0): 2}, -1) == {(1, -2): 2}
    assert braid_apply(d, 1, {(1, 0): 1}) == {(1, -2): -1, (2, -1): 1}
    assert braid_apply(d, 2, {(1, 0): 1}) == {(1, 0): 1}


def _vectors(datum):
    key = st.tuples(st.sampled_from(list(datum.nodes)), st.integers(-8, 8))
    return st.dictionaries(key, st.integers(-3, 3), max_size=5)


BRAID_TYPES = [make_datum("A", 3), make_datum("D", 4), make_datum("E", 6)]


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_theta_braid_relations(data):
    d = data.draw(st.sampled_from(BRAID_TYPES))
    vec = {k: v for k, v in data.draw(_vectors(d)).items() if v}
    i = data.draw(st.sampled_from(list(d.nodes)))
    j = data.draw(st.sampled_from([x for x in d.nodes if x != i]))
    if d.c(i, j):
        assert braid_word_apply(d, (i, j, i), vec) == braid_word_apply(d, (j, i, j), vec)
    else:
        assert braid_word_apply(d, (i, j), vec) == braid_word_apply(d, (j, i), vec)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_theta_is_invertible_linear(data):
    # Theta_i is linear and commutes with the shift
    d = data.draw(st.sampled_from(BRAID_TYPES))
    u = {k: v for k, v in data.draw(_vectors(d)).items() if v}
    w = {k: v for k, v in data.draw(_vectors(d)).items() if v}
    i = data.draw(st.sampled_from(list(d.nodes)))
    total = {k: u.get(k, 0) + w.get(k, 0) for k in set(u) | set(w)}
    total = {k: v for k, v in total.items() if v}
    tu, tw = braid_apply(d, i, u), braid_apply(d, i, w)
    expect = {k: tu.get(k, 0) + tw.get(k, 0) for k in set(tu) | set(tw)}
    assert braid_apply(d, i, total) == {k: v for k, v in expect.items() if v}
    assert braid_apply(d, i, shift(u, 1)) == shift(tu, 1)
