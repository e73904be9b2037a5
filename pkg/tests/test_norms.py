import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amalgamlab import (
    FieldSpec,
    GridFunction,
    LatticeArray,
    conjugate,
    make_grid,
    mixed_lebesgue_norm,
    mixed_sequence_norm,
    sample,
    windowed_holder_bound,
)
from amalgamlab.errors import ExponentError

INF = math.inf


def bump_pair(seed, grid):
    f = sample(FieldSpec("random-bump-sum", {"seed": seed}), grid)
    g = sample(FieldSpec("random-bump-sum", {"seed": seed + 10_000}), grid)
    return f, g


# --------------------------------------------------------------------------
# conjugation


def test_conjugate_examples():
    assert conjugate([2, 2]) == (Fraction(2), Fraction(2))
    assert conjugate([4, Fraction(4, 3)]) == (Fraction(4, 3), Fraction(4))
    assert conjugate(1) == INF
    assert conjugate(INF) == Fraction(1)


@given(
    num=st.integers(min_value=1, max_value=200),
    den=st.integers(min_value=1, max_value=200),
)
@settings(max_examples=200)
def test_conjugate_involutive_exactly(num, den):
    p = 1 + Fraction(num, den)
    assert conjugate(conjugate(p)) == p
    recip_sum = Fraction(1) / p + Fraction(1) / conjugate(p)
    assert recip_sum == 1


def test_conjugate_rejects_out_of_range():
    with pytest.raises(ExponentError):
        conjugate(0.5)


# --------------------------------------------------------------------------
# mixed Lebesgue norm: frozen oracles


def test_iterated_norm_closed_form_2d():
    # constant 1 on [0,2]x[0,3]: (int_0^3 (int_0^2 1)^2 )^(1/2) = sqrt(12)
    g = make_grid([[0, 2], [0, 3]], [4, 6])
    f = sample(FieldSpec("constant", {"value": 1.0}), g)
    got = mixed_lebesgue_norm(f, [1, 2])
    assert got == pytest.approx(math.sqrt(12.0), rel=1e-12)


@pytest.mark.parametrize("p", [[1, 1], [2, 3], [INF, 2], [2, INF]])
def test_unit_box_indicator_norm_is_one(p):
    g = make_grid([[-1, 2], [-1, 2]], [12, 12])
    f = sample(FieldSpec("indicator-box", {"lower": [0, 0], "upper": [1, 1]}), g)
    got = mixed_lebesgue_norm(f, p)
    if INF in p:
        # sup norms of an indicator are exactly 1
        assert got == pytest.approx(1.0, rel=1e-12)
    else:
        assert got == pytest.approx(1.0, rel=1e-12)


def test_zero_function_norm_zero():
    g = make_grid([[0, 1], [0, 1]], [4, 4])
    f = GridFunction(g, np.zeros(g.counts))
    assert mixed_lebesgue_norm(f, [2, 2]) == 0.0


def test_scalar_collapse_oracle():
    # all p_i = p: iterated norm equals the flat weighted p-norm
    g = make_grid([[-4, 4], [-4, 4]], [64, 64])
    f, _ = bump_pair(3, g)
    for p in (1.0, 2.0, 3.5):
        flat = (np.sum(np.abs(f.values) ** p) * g.cell_volume) ** (1.0 / p)
        got = mixed_lebesgue_norm(f, [p, p])
        assert got == pytest.approx(flat, rel=1e-12)


def test_homogeneity_and_triangle_and_monotonicity():
    g = make_grid([[-4, 4], [-4, 4]], [32, 32])
    f, h = bump_pair(11, g)
    for p in ([2, 3], [1, INF], [INF, INF]):
        nf = mixed_lebesgue_norm(f, p)
        assert mixed_lebesgue_norm(-2.5 * f, p) == pytest.approx(2.5 * nf, rel=1e-12)
        lhs = mixed_lebesgue_norm(f + h, p)
        rhs = nf + mixed_lebesgue_norm(h, p)
        assert lhs <= rhs * (1 + 1e-12)
        dominated = GridFunction(g, np.abs(f.values) * 0.5)
        dominating = GridFunction(g, np.abs(f.values))
        assert mixed_lebesgue_norm(dominated, p) <= mixed_lebesgue_norm(
            dominating, p
        ) * (1 + 1e-12)


# --------------------------------------------------------------------------
# lattice sequence norm


def test_sequence_norm_hand_example():
    a = LatticeArray({(0, 0): 1.0, (1, 0): 1.0})
    assert mixed_sequence_norm(a, [2, 3]) == pytest.approx(math.sqrt(2.0), rel=1e-12)


def test_sequence_norm_zero_and_single_row():
    assert mixed_sequence_norm(LatticeArray({}), [2, 2]) == 0.0
    m = 5
    a = LatticeArray({(k, 0): 1.0 for k in range(m)})
    for s in (1.5, 2.0, 4.0):
        assert mixed_sequence_norm(a, [s, INF]) == pytest.approx(
            m ** (1.0 / s), rel=1e-12
        )


def test_sequence_norm_rejects_negative():
    with pytest.raises(ExponentError):
        LatticeArray({(0,): -1.0})


def test_sequence_norm_inf_is_max():
    a = LatticeArray({(0,): 0.5, (3,): 2.0, (-2,): 1.0})
    assert mixed_sequence_norm(a, [INF]) == 2.0


# --------------------------------------------------------------------------
# windowed Hoelder bound (4.1)


def test_holder_equality_on_unit_indicator():
    g = make_grid([[-2, 2]], [64])
    f = sample(FieldSpec("indicator-box", {"lower": [0.0], "upper": [1.0]}), g)
    rep = windowed_holder_bound(f, f, [2], [2], 1.0)
    assert rep.passed
    assert rep.lhs == pytest.approx(1.0, rel=1e-12)
    assert rep.rhs == pytest.approx(1.0, rel=1e-12)


def test_holder_zero_factor_passes():
    g = make_grid([[-2, 2]], [32])
    f = sample(FieldSpec("gaussian", {"width": 0.5}), g)
    zero = GridFunction(g, np.zeros(g.counts))
    rep = windowed_holder_bound(f, zero, [3], [2], 0.5)
    assert rep.passed and rep.lhs == 0.0


def test_holder_sweep_zero_violations():
    # the spec's exhaustive sweep: 200 random pairs, three tiling scales
    g = make_grid([[-8, 8], [-8, 8]], [64, 64])
    for seed in range(200):
        f, h = bump_pair(seed, g)
        r = [0.5, 1.0, 2.0][seed % 3]
        rep = windowed_holder_bound(f, h, [3, 2], [2, 4], r)
        assert rep.passed, f"violation at seed {seed}: {rep}"
