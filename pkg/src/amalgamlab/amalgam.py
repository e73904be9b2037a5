"""Amalgam norms over ball windows and lattice cubes, and their comparisons.

Four norms: the unit-window global norm, its scale-invariant sup-weighted
variant over a radius sweep, and the two lattice-cube (discrete)
counterparts. The sup over all radii is approximated by a finite sweep;
since every weight is a power law, a dyadic sweep loses at most a bounded
factor, which the measurement ops report rather than hide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import GridError, IndexGateViolation, NonTilingRadius
from .grid import GridFunction
from .norms import (
    ExponentSystem,
    InequalityReport,
    LatticeArray,
    as_exponent,
    as_exponent_vector,
    exponent_float,
    mean_reciprocal,
    mixed_lebesgue_norm,
    mixed_sequence_norm,
    reciprocal,
    sum_reciprocal,
)

#: volume of the unit ball in dimensions 1..3
UNIT_BALL_VOLUME = {1: 2.0, 2: math.pi, 3: 4.0 * math.pi / 3.0}


@dataclass(frozen=True)
class RadiusSweep:
    """Finite increasing list of radii standing in for sup over r > 0."""

    radii: tuple[float, ...]
    window: str = "cube"  # cube | ball

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        if not radii:
            raise GridError("radius sweep must be nonempty")
        if any(r <= 0 for r in radii) or any(
            b <= a for a, b in zip(radii, radii[1:])
        ):
            raise GridError("radii must be positive and strictly increasing")
        if self.window not in ("cube", "ball"):
            raise GridError(f"unknown window family {self.window!r}")
        object.__setattr__(self, "radii", radii)

    @classmethod
    def dyadic(cls, j_min: int, j_max: int, window: str = "cube") -> "RadiusSweep":
        if j_max < j_min:
            raise GridError("empty dyadic range")
        return cls(tuple(2.0**j for j in range(j_min, j_max + 1)), window)

    def including(self, *extra: float) -> "RadiusSweep":
        return RadiusSweep(tuple(sorted(set(self.radii) | set(extra))), self.window)


@dataclass(frozen=True)
class AlphaNorm:
    value: float
    argmax_radius: float


def validate_exponents(p, s, alpha, n: int | None = None, force: bool = False) -> ExponentSystem:
    """Gate (1/n) sum 1/s_i <= 1/alpha <= (1/n) sum 1/p_i, checked exactly.

    Returns the system with conjugates available and any boundary equalities
    recorded. ``force=True`` skips the gate (debug path for the divergence
    probe) and records "forced".
    """
    p = as_exponent_vector(p, n)
    s = as_exponent_vector(s, len(p))
    alpha = as_exponent(alpha)
    inv_alpha = reciprocal(alpha)
    lo = mean_reciprocal(s)
    hi = mean_reciprocal(p)
    boundary = []
    if force:
        boundary.append("forced")
    else:
        if not lo <= inv_alpha:
            raise IndexGateViolation(
                f"(1/n) sum 1/s_i = {lo} > 1/alpha = {inv_alpha}"
            )
        if not inv_alpha <= hi:
            raise IndexGateViolation(
                f"1/alpha = {inv_alpha} > (1/n) sum 1/p_i = {hi}"
            )
        if lo == inv_alpha:
            boundary.append("s-side")
        if inv_alpha == hi:
            boundary.append("p-side")
    return ExponentSystem(p=p, s=s, alpha=alpha, gate_boundary=tuple(boundary))


def _support_margin(f: GridFunction, threshold: float = 1e-12) -> float:
    """Distance from the effective support of f to the box boundary."""
    a = np.abs(f.values)
    peak = a.max()
    if peak == 0:
        return math.inf
    idx = np.argwhere(a > threshold * peak)
    margin = math.inf
    for i in range(f.grid.ndim):
        lo, hi = f.grid.bounds[i]
        h = f.grid.spacings[i]
        xs = lo + (idx[:, i] + 0.5) * h
        margin = min(margin, xs.min() - lo, hi - xs.max())
    return margin


def _ball_inner_map(f: GridFunction, p, rho: float) -> np.ndarray:
    p = as_exponent_vector(p, f.grid.ndim)
    stencil = _kernels.ball_stencil(f.grid.spacings, rho)
    pf = np.array([exponent_float(e) for e in p])
    return _kernels.ball_mixed_norm(np.abs(f.values), f.grid.spacings, pf, stencil)


def global_amalgam_norm(f: GridFunction, p, s, rho: float = 1.0) -> float:
    """Outer mixed s-norm over centers of the inner windowed p-norm.

    Centers run over the grid midpoints; rho=1 is the unit-window norm, other
    rho realize the equivalent rescaled-window norms.
    """
    if rho <= 0:
        raise GridError("window radius must be positive")
    if _support_margin(f) < rho:
        raise GridError(
            "box too small: support must stay >= rho away from the boundary"
        )
    inner = _ball_inner_map(f, p, rho)
    return mixed_lebesgue_norm(GridFunction(f.grid, inner), s)


def _ball_weight_exponent(sys: ExponentSystem) -> Fraction:
    return reciprocal(sys.alpha) - mean_reciprocal(sys.p) - mean_reciprocal(sys.s)


def alpha_amalgam_norm(
    f: GridFunction, sys: ExponentSystem, sweep: RadiusSweep, force: bool = False
) -> AlphaNorm:
    """sup over the sweep of |B(.,r)|^(1/alpha - hm(p) - hm(s))-weighted norms.

    |B(y,r)| is the exact v_n r^n; masks only gate which samples enter the
    inner norm. Ties take the smallest maximizing radius.
    """
    sys = validate_exponents(sys.p, sys.s, sys.alpha, force=force)
    v_n = UNIT_BALL_VOLUME[f.grid.ndim]
    expo = float(_ball_weight_exponent(sys))
    best = -math.inf
    best_r = sweep.radii[0]
    for r in sweep.radii:
        weight = (v_n * r**f.grid.ndim) ** expo
        inner = _ball_inner_map(f, sys.p, r)
        term = weight * mixed_lebesgue_norm(GridFunction(f.grid, inner), sys.s)
        if term > best:
            best = term
            best_r = r
    return AlphaNorm(best, best_r)


def _tiling_cells(grid, r: float) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Cells-per-cube and lattice origin per axis; raises if r does not tile."""
    ms = []
    k0 = []
    for (lo, _), h in zip(grid.bounds, grid.spacings):
        m = r / h
        if abs(m - round(m)) > 1e-9 * max(1.0, m) or round(m) < 1:
            raise NonTilingRadius(f"cube side {r} is not a multiple of spacing {h}")
        offset = lo / h
        if abs(offset - round(offset)) > 1e-9 * max(1.0, abs(offset)):
            raise NonTilingRadius(
                f"box lower bound {lo} is not aligned to the cell lattice"
            )
        m = int(round(m))
        big_l = int(round(offset))
        ms.append(m)
        k0.append(math.floor(big_l / m))
    return tuple(ms), tuple(k0)


def discrete_amalgam_norm(f: GridFunction, p, s, r: float) -> float:
    """Lattice-cube amalgam norm: l^s over k of || f restricted to Q_{r,k} ||_p."""
    cubes = _per_cube_norms(f, p, r)
    return mixed_sequence_norm(LatticeArray.from_dense(cubes), s)


def _per_cube_norms(f: GridFunction, p, r: float) -> np.ndarray:
    p = as_exponent_vector(p, f.grid.ndim)
    grid = f.grid
    ms, k0 = _tiling_cells(grid, r)
    a = np.abs(f.values)
    pad = []
    for i in range(grid.ndim):
        big_l = int(round(grid.bounds[i][0] / grid.spacings[i]))
        lo_pad = big_l - k0[i] * ms[i]
        total = lo_pad + grid.counts[i]
        q = -(-total // ms[i])
        pad.append((lo_pad, q * ms[i] - total))
    a = np.pad(a, pad)
    d = grid.ndim
    shape = []
    for i in range(d):
        shape.extend([a.shape[i] // ms[i], ms[i]])
    a = a.reshape(shape)
    a = np.transpose(a, [2 * i for i in range(d)] + [2 * i + 1 for i in range(d)])
    # shape is now (q_1..q_d, m_1..m_d); each reduction consumes the m axis
    # sitting at position d, innermost first
    for i in range(d):
        a = np.moveaxis(a, d, 0)
        flat = a.reshape(a.shape[0], -1)
        pf = exponent_float(p[i])
        if math.isinf(pf):
            red = _kernels.max_axis0(flat)
        else:
            red = (grid.spacings[i] * _kernels.pow_sum_axis0(flat, pf)) ** (1.0 / pf)
        a = red.reshape(a.shape[1:])
    return a


def discrete_alpha_norm(
    f: GridFunction, sys: ExponentSystem, sweep: RadiusSweep, force: bool = False
) -> AlphaNorm:
    """sup over the sweep of r^(n/alpha - sum 1/p_i) times the cube norm."""
    sys = validate_exponents(sys.p, sys.s, sys.alpha, force=force)
    n = f.grid.ndim
    expo = float(n * reciprocal(sys.alpha) - sum_reciprocal(sys.p))
    best = -math.inf
    best_r = sweep.radii[0]
    for r in sweep.radii:
        term = r**expo * discrete_amalgam_norm(f, sys.p, sys.s, r)
        if term > best:
            best = term
            best_r = r
    return AlphaNorm(best, best_r)


@dataclass(frozen=True)
class RatioBand:
    min_ratio: float
    max_ratio: float
    ratios: tuple[float, ...]

    @property
    def width(self) -> float:
        return self.max_ratio / self.min_ratio if self.min_ratio > 0 else math.inf


def equivalence_ratio(
    f: GridFunction,
    sys: ExponentSystem,
    mode: str,
    radii: Sequence[float] = (),
    rho: float = 2.0,
) -> RatioBand:
    """Extreme ratios of two norm variants over a radius family.

    Modes: ``ball-vs-scaled-ball`` compares windows at r and rho*r;
    ``cube-vs-ball`` compares the cube norm with the r^(-sum 1/s_i)-weighted
    ball norm at the same scale; ``continuous-vs-discrete`` compares the
    unit-window norm with the unit-cube norm.
    """
    if not np.any(f.values):
        raise GridError("equivalence ratios need a nonzero function")
    ratios = []
    if mode == "ball-vs-scaled-ball":
        for r in radii:
            a = global_amalgam_norm(f, sys.p, sys.s, rho=r)
            b = global_amalgam_norm(f, sys.p, sys.s, rho=rho * r)
            ratios.append(a / b)
    elif mode == "cube-vs-ball":
        w = float(sum_reciprocal(sys.s))
        for r in radii:
            cube_side = discrete_amalgam_norm(f, sys.p, sys.s, r)
            ball_side = r ** (-w) * global_amalgam_norm(f, sys.p, sys.s, rho=r)
            ratios.append(cube_side / ball_side)
    elif mode == "continuous-vs-discrete":
        ratios.append(
            global_amalgam_norm(f, sys.p, sys.s, rho=1.0)
            / discrete_amalgam_norm(f, sys.p, sys.s, 1.0)
        )
    else:
        raise GridError(f"unknown equivalence mode {mode!r}")
    return RatioBand(min(ratios), max(ratios), tuple(ratios))


@dataclass(frozen=True)
class EmbeddingReport:
    global_vs_alpha: InequalityReport
    alpha_p_vs_q: InequalityReport

    @property
    def passed(self) -> bool:
        return self.global_vs_alpha.passed and self.alpha_p_vs_q.passed


def _leq_exponent(a, b) -> bool:
    return reciprocal(a) >= reciprocal(b)


def embedding_check(
    f: GridFunction, p, q, s, alpha, sweep: RadiusSweep, slack: float = 1e-12
) -> EmbeddingReport:
    """Check the two lattice-norm embeddings for p <= q entrywise.

    The sweep is extended to contain r=1 so the unit-cube norm is literally
    one term of the sup; with that, both inequalities are exact in the
    discretization and the check runs at 1e-12 relative slack.
    """
    p = as_exponent_vector(p)
    q = as_exponent_vector(q, len(p))
    s = as_exponent_vector(s, len(p))
    if not all(_leq_exponent(a, b) for a, b in zip(p, q)):
        raise IndexGateViolation("embedding requires p <= q entrywise")
    sys_p = validate_exponents(p, s, alpha)
    sys_q = validate_exponents(q, s, alpha)
    sweep = sweep.including(1.0)
    base = discrete_amalgam_norm(f, p, s, 1.0)
    alpha_p = discrete_alpha_norm(f, sys_p, sweep).value
    alpha_q = discrete_alpha_norm(f, sys_q, sweep).value
    rep1 = InequalityReport(base, alpha_p, base <= alpha_p * (1 + slack), slack)
    rep2 = InequalityReport(alpha_p, alpha_q, alpha_p <= alpha_q * (1 + slack), slack)
    return EmbeddingReport(rep1, rep2)
