import math
from fractions import Fraction

import numpy as np
import pytest

from amalgamlab import (
    ExponentSystem,
    FieldSpec,
    GridFunction,
    RadiusSweep,
    alpha_amalgam_norm,
    discrete_alpha_norm,
    discrete_amalgam_norm,
    embedding_check,
    equivalence_ratio,
    global_amalgam_norm,
    make_grid,
    mixed_lebesgue_norm,
    sample,
    validate_exponents,
)
from amalgamlab.errors import GridError, IndexGateViolation, NonTilingRadius

INF = math.inf


def bumps(seed, grid):
    return sample(FieldSpec("random-bump-sum", {"seed": seed}), grid)


# --------------------------------------------------------------------------
# index gate (the three stated cases plus boundary flags)


def test_gate_accepts_interior_case():
    sys = validate_exponents([2, 2], [4, 4], 3)
    assert sys.gate_boundary == ()


def test_gate_rejects_low_alpha():
    with pytest.raises(IndexGateViolation, match="1/alpha"):
        validate_exponents([2, 2], [4, 4], 1)


def test_gate_rejects_high_alpha():
    with pytest.raises(IndexGateViolation, match="sum 1/s_i"):
        validate_exponents([2, 2], [4, 4], 8)


def test_gate_boundary_flagged():
    sys = validate_exponents([2, 2], [4, 4], 4)
    assert sys.gate_boundary == ("s-side",)
    sys = validate_exponents([2, 2], [4, 4], 2)
    assert sys.gate_boundary == ("p-side",)
    sys = validate_exponents([2, 2], [2, 2], 2)
    assert set(sys.gate_boundary) == {"s-side", "p-side"}


def test_gate_force_flag():
    sys = validate_exponents([2, 2], [4, 4], 1, force=True)
    assert sys.gate_boundary == ("forced",)


# --------------------------------------------------------------------------
# unit-window (global) amalgam norm


def test_global_norm_zero():
    g = make_grid([[-2, 2]], [64])
    assert global_amalgam_norm(GridFunction(g, np.zeros(g.counts)), [2], [2]) == 0.0


def test_global_norm_overlap_mass_closed_form():
    # chi_[0,1], p=s=2, rho=1/2: the squared norm is the total overlap mass,
    # which on the grid is exactly 1 * (2*rho - h)
    g = make_grid([[-2, 2]], [256])
    h = g.spacings[0]
    f = sample(FieldSpec("indicator-box", {"lower": [0.0], "upper": [1.0]}), g)
    got = global_amalgam_norm(f, [2], [2], rho=0.5)
    assert got == pytest.approx(math.sqrt(1.0 - h), rel=1e-12)
    assert got == pytest.approx(1.0, rel=0.01)


def test_global_norm_homogeneous():
    g = make_grid([[-8, 8]], [512])
    f = bumps(5, g)
    a = global_amalgam_norm(f, [3], [2], rho=0.5)
    b = global_amalgam_norm(10.0 * f, [3], [2], rho=0.5)
    assert b == pytest.approx(10.0 * a, rel=1e-12)


def test_global_norm_box_too_small():
    g = make_grid([[-1.5, 1.5]], [64])
    f = sample(FieldSpec("indicator-ball", {"center": [0.0], "radius": 1.0}), g)
    with pytest.raises(GridError, match="box too small"):
        global_amalgam_norm(f, [2], [2], rho=1.0)


def test_global_norm_agrees_with_restrict_path():
    # same inner value as restrict+norm at a few centers (radius chosen away
    # from lattice-distance boundaries so both membership rules coincide)
    from amalgamlab import ball, restrict
    from amalgamlab._kernels import ball_mixed_norm, ball_stencil

    g = make_grid([[-4, 4]], [128])
    f = bumps(9, g)
    rho = 0.77
    inner = ball_mixed_norm(
        np.abs(f.values), g.spacings, np.array([3.0]), ball_stencil(g.spacings, rho)
    )
    mids = g.axis_midpoints(0)
    for c in (13, 64, 101):
        direct = mixed_lebesgue_norm(restrict(f, ball([mids[c]], rho)), [3])
        assert inner[c] == pytest.approx(direct, rel=1e-12)


# --------------------------------------------------------------------------
# sup-weighted (alpha) ball norm


def test_alpha_norm_zero_function():
    g = make_grid([[-2, 2]], [64])
    sys = validate_exponents([2], [INF], 2)
    sweep = RadiusSweep((0.5, 1.0, 2.0), window="ball")
    res = alpha_amalgam_norm(GridFunction(g, np.zeros(g.counts)), sys, sweep)
    assert res.value == 0.0
    assert res.argmax_radius == 0.5


def test_alpha_norm_flat_weight_case():
    # p=(2), s=(inf), alpha=2: the weight exponent vanishes and the sup is
    # the plain L^2 norm, attained once a window covers the support
    g = make_grid([[-4, 4]], [512])
    f = sample(FieldSpec("indicator-ball", {"center": [0.0], "radius": 1.0}), g)
    sys = validate_exponents([2], [INF], 2)
    sweep = RadiusSweep((0.25, 0.5, 1.0, 2.0, 4.0), window="ball")
    res = alpha_amalgam_norm(f, sys, sweep)
    assert res.value == pytest.approx(math.sqrt(2.0), rel=1e-12)
    assert res.argmax_radius == 2.0


def test_alpha_norm_requires_gate():
    g = make_grid([[-2, 2]], [64])
    f = sample(FieldSpec("indicator-ball", {"center": [0.0], "radius": 1.0}), g)
    sys = ExponentSystem(p=[2], s=[4], alpha=8)
    with pytest.raises(IndexGateViolation):
        alpha_amalgam_norm(f, sys, RadiusSweep((1.0,), window="ball"))


# --------------------------------------------------------------------------
# lattice-cube norms


def test_discrete_norm_scalar_collapse():
    g = make_grid([[-8, 8], [-8, 8]], [64, 64])
    f = bumps(21, g)
    for p in (1.0, 2.0, 3.0):
        flat = mixed_lebesgue_norm(f, [p, p])
        for r in (0.5, 1.0, 2.0):
            got = discrete_amalgam_norm(f, [p, p], [p, p], r)
            assert got == pytest.approx(flat, rel=1e-12)


def test_discrete_norm_single_cube_indicator():
    g = make_grid([[-2, 2], [-2, 2]], [64, 64])
    f = sample(
        FieldSpec("indicator-box", {"lower": [0.0, 0.0], "upper": [1.0, 1.0]}), g
    )
    for p, s in (([2, 3], [4, 2]), ([1, 1], [INF, 2])):
        assert discrete_amalgam_norm(f, p, s, 1.0) == pytest.approx(1.0, rel=1e-12)


def test_discrete_norm_zero_and_nontiling():
    g = make_grid([[-2, 2]], [64])
    z = GridFunction(g, np.zeros(g.counts))
    assert discrete_amalgam_norm(z, [2], [2], 1.0) == 0.0
    with pytest.raises(NonTilingRadius):
        discrete_amalgam_norm(z, [2], [2], 0.3)


def test_discrete_alpha_scalar_morrey_collapse():
    # p = s = alpha scalar: the weight exponent vanishes and every sweep term
    # equals the flat norm
    g = make_grid([[-8, 8]], [256])
    f = bumps(2, g)
    sys = validate_exponents([2], [2], 2)
    sweep = RadiusSweep((0.5, 1.0, 2.0, 4.0))
    res = discrete_alpha_norm(f, sys, sweep)
    assert res.value == pytest.approx(mixed_lebesgue_norm(f, [2]), rel=1e-12)
    assert res.argmax_radius == 0.5  # ties resolve to the smallest radius


def test_discrete_alpha_homogeneity_and_sweep_monotonicity():
    g = make_grid([[-8, 8]], [256])
    f = bumps(3, g)
    sys = validate_exponents([3], [6], Fraction(4))
    small = RadiusSweep((0.5, 1.0))
    wide = RadiusSweep((0.25, 0.5, 1.0, 2.0, 4.0))
    a = discrete_alpha_norm(f, sys, small).value
    b = discrete_alpha_norm(f, sys, wide).value
    assert b >= a
    assert discrete_alpha_norm(2.0 * f, sys, wide).value == pytest.approx(
        2.0 * b, rel=1e-12
    )


def test_forced_gate_divergence_probe():
    # rejected alpha on the p side: widening the sweep grows the indicator
    # norm without bound
    g = make_grid([[-16, 16]], [512])
    f = sample(FieldSpec("indicator-ball", {"center": [0.0], "radius": 1.0}), g)
    sys = ExponentSystem(p=[2], s=[4], alpha=1)
    values = []
    for top in (0, 1, 2, 3):
        sweep = RadiusSweep(tuple(2.0**j for j in range(0, top + 1)))
        values.append(discrete_alpha_norm(f, sys, sweep, force=True).value)
    assert all(b > a for a, b in zip(values, values[1:]))


# --------------------------------------------------------------------------
# equivalence ratios


def test_equivalence_scaling_cancels():
    g = make_grid([[-16, 16]], [1024])
    f = bumps(7, g)
    sys = validate_exponents([3], [4], 3)
    band1 = equivalence_ratio(f, sys, "ball-vs-scaled-ball", radii=(0.25, 0.5), rho=2.0)
    band2 = equivalence_ratio(
        10.0 * f, sys, "ball-vs-scaled-ball", radii=(0.25, 0.5), rho=2.0
    )
    np.testing.assert_allclose(band1.ratios, band2.ratios, rtol=1e-12)


def test_equivalence_band_independent_of_function():
    g = make_grid([[-16, 16]], [1024])
    sys = validate_exponents([3], [4], 3)
    bands = []
    for seed in range(12):
        f = bumps(seed, g)
        band = equivalence_ratio(f, sys, "ball-vs-scaled-ball", radii=(0.25, 0.5), rho=2.0)
        bands.append(band)
    lo = min(b.min_ratio for b in bands)
    hi = max(b.max_ratio for b in bands)
    assert 0 < lo <= hi < math.inf
    assert hi / lo < 4.0  # a fixed band across functions


def test_equivalence_continuous_vs_discrete_single_cube():
    g = make_grid([[-4, 4]], [256])
    f = sample(FieldSpec("indicator-box", {"lower": [0.0], "upper": [1.0]}), g)
    sys = validate_exponents([2], [4], 3)
    band = equivalence_ratio(f, sys, "continuous-vs-discrete")
    assert 0 < band.min_ratio == band.max_ratio < math.inf


def test_equivalence_rejects_zero():
    g = make_grid([[-2, 2]], [64])
    sys = validate_exponents([2], [4], 3)
    with pytest.raises(GridError):
        equivalence_ratio(GridFunction(g, np.zeros(g.counts)), sys, "cube-vs-ball", radii=(0.5,))


# --------------------------------------------------------------------------
# embeddings (lattice forms, exact in the discretization)


def test_embedding_indicator_example():
    g = make_grid([[-4, 4]], [256])
    f = sample(FieldSpec("indicator-ball", {"center": [0.0], "radius": 1.0}), g)
    rep = embedding_check(f, [2], [4], [4], 4, RadiusSweep((0.5, 1.0, 2.0)))
    assert rep.passed


def test_embedding_zero_function():
    g = make_grid([[-4, 4]], [128])
    z = GridFunction(g, np.zeros(g.counts))
    rep = embedding_check(z, [2], [4], [4], 4, RadiusSweep((1.0,)))
    assert rep.passed


def test_embedding_random_sweep():
    g = make_grid([[-8, 8]], [512])
    sweep = RadiusSweep((0.25, 0.5, 1.0, 2.0, 4.0))
    for seed in range(40):
        f = bumps(seed, g)
        rep = embedding_check(f, [2], [4], [4], 4, sweep)
        assert rep.passed, f"seed {seed}: {rep}"


def test_embedding_requires_p_le_q():
    g = make_grid([[-4, 4]], [128])
    f = bumps(0, g)
    with pytest.raises(IndexGateViolation, match="entrywise"):
        embedding_check(f, [4], [2], [4], 4, RadiusSweep((1.0,)))
