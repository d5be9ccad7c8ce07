import pytest

from qcluster.errors import BoundaryTouch, ConfigError
from qcluster.quiver import Window
from qcluster.relations import a1_setup, iso_G, verify_baxter, verify_qq
from support import SUITE, suite_id, suite_result

WINDOW = Window(-30, 30, 4)


@pytest.fixture(scope="module")
def a1():
    return a1_setup(WINDOW)


@pytest.mark.parametrize("r", range(-20, 21, 2))
def test_quantum_qq_both_orderings(a1, r):
    rep = verify_qq(a1, r)
    assert rep.passed, rep.violations
    assert len(rep.info["holds"]) == 2


def test_qq_rejects_odd_and_far_levels(a1):
    with pytest.raises(ConfigError):
        verify_qq(a1, 1)
    with pytest.raises(BoundaryTouch):
        verify_qq(a1, 40)


@pytest.mark.parametrize("r", range(2, 21, 2))
def test_baxter_exponents(a1, r):
    rep = verify_baxter(a1, r)
    # the mutated variable has the Baxter shape with mirrored t-powers
    assert rep.info["fitted_t_powers_left_inverse"] == [-0.5, 0.5]
    assert rep.info["fitted_t_powers_right_inverse"] == [0.5, -0.5]


def test_baxter_needs_r_at_least_2(a1):
    with pytest.raises(ConfigError):
        verify_baxter(a1, 0)


@pytest.mark.parametrize("cfg", SUITE[:6], ids=suite_id)
def test_torus_isomorphism(cfg):
    res = suite_result(*cfg)
    core = res.lam_c.vertices
    mid = core[len(core) // 3: 2 * len(core) // 3]
    rep = iso_G(res.q, res.lam_c, res.g.matrix, vertices=mid)
    assert rep.passed, rep.violations[:3]
