"""Exact computations for the quantum cluster algebra built on the GHL quivers
Gamma_e and Gamma_c of a simply-laced Dynkin type."""

from .errors import *  # noqa: F401,F403
from .gvectors import braid_apply, g_matrix_tracked, g_stabilized, g_stabilized_braid
from .lie import CoxeterWord, DynkinDatum, coxeter_word, make_datum, positive_roots, weyl_word_check
from .quantization import (
    check_compatible,
    check_convergence,
    check_convergence_finite,
    check_translation_covariance,
    f_map,
    inv_cartan,
    lambda_c,
    lambda_e,
    lambda_mutate,
)
from .quiver import Window, build_gamma_e, ghl_surgery, green_round, knit_gc, mutate, mutate_matrix
from .sparse import IndexedMatrix
from .torus import QElement, QTorus, frame, initial_seed, quantum_mutate

__version__ = "0.1.0"
