"""Mean oscillation, BMO norms over ball families, and doubling drift.

All three oscillation estimators run through one code path (an L^1-ratio
with the same quadrature weights), so the mixed-norm variant at p = (1,..,1)
reproduces the plain BMO norm bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import GridError
from .grid import Grid, GridFunction, WindowSpec, ball, window_mask
from .norms import as_exponent_vector, mixed_lebesgue_norm


@dataclass(frozen=True)
class BallFamily:
    """Grid-centered balls: a center sublattice stride and dyadic radii.

    Policy "inside" keeps only balls contained in the box, which is what the
    whole-space supremum never clips; "clipped" keeps every center.
    """

    stride: int
    radii: tuple[float, ...]
    policy: str = "inside"

    def __post_init__(self):
        if self.stride < 1:
            raise GridError("stride must be >= 1")
        radii = tuple(float(r) for r in self.radii)
        if not radii or any(r <= 0 for r in radii) or any(
            b <= a for a, b in zip(radii, radii[1:])
        ):
            raise GridError("radii must be positive and increasing")
        if self.policy not in ("inside", "clipped"):
            raise GridError(f"unknown policy {self.policy!r}")
        object.__setattr__(self, "radii", radii)

    @classmethod
    def default(cls, grid: Grid, stride: int = 4) -> "BallFamily":
        h = max(grid.spacings)
        span = min(hi - lo for lo, hi in grid.bounds)
        radii = []
        r = 2.0 * h
        while r <= span / 4.0 + 1e-12:
            radii.append(r)
            r *= 2.0
        if not radii:
            raise GridError("grid too coarse for a default ball family")
        return cls(stride, tuple(radii))

    def balls(self, grid: Grid) -> Iterator[WindowSpec]:
        axes = [grid.axis_midpoints(i)[:: self.stride] for i in range(grid.ndim)]
        mesh = np.meshgrid(*axes, indexing="ij")
        centers = np.stack([m.ravel() for m in mesh], axis=-1)
        for r in self.radii:
            for c in centers:
                if self.policy == "inside":
                    ok = all(
                        c[i] - r >= grid.bounds[i][0] and c[i] + r <= grid.bounds[i][1]
                        for i in range(grid.ndim)
                    )
                    if not ok:
                        continue
                yield ball(c, r)


def _ball_mean(b: GridFunction, mask: np.ndarray) -> float:
    weight = float(np.sum(mask))
    if weight == 0:
        raise GridError("empty mask")
    return float(np.sum(b.values * mask)) / weight


def _oscillation_ratio(b: GridFunction, w: WindowSpec, p) -> float:
    """|| (b - b_B) chi_B ||_p / || chi_B ||_p with midpoint quadrature."""
    mask = window_mask(w, b.grid)
    mean = _ball_mean(b, mask.values)
    centered = GridFunction(b.grid, (b.values - mean) * mask.values)
    return mixed_lebesgue_norm(centered, p) / mixed_lebesgue_norm(mask, p)


def mean_oscillation(b: GridFunction, w: WindowSpec) -> float:
    """Average of |b - b_B| over the ball, b_B the ball mean."""
    if b.is_complex:
        raise GridError("oscillation is defined for real-valued b")
    ones = (1,) * b.grid.ndim
    return _oscillation_ratio(b, w, ones)


def bmo_norm(b: GridFunction, family: BallFamily) -> float:
    """Largest mean oscillation over the family; monotone in the family."""
    if b.is_complex:
        raise GridError("oscillation is defined for real-valued b")
    ones = (1,) * b.grid.ndim
    values = [_oscillation_ratio(b, w, ones) for w in family.balls(b.grid)]
    if not values:
        raise GridError("ball family is empty on this grid")
    return max(values)


def mixed_bmo_norm(b: GridFunction, p, family: BallFamily) -> float:
    """sup over the family of || (b - b_B) chi_B ||_p / || chi_B ||_p."""
    if b.is_complex:
        raise GridError("oscillation is defined for real-valued b")
    p = as_exponent_vector(p, b.grid.ndim)
    values = [_oscillation_ratio(b, w, p) for w in family.balls(b.grid)]
    if not values:
        raise GridError("ball family is empty on this grid")
    return max(values)


@dataclass(frozen=True)
class DriftReport:
    drift: float
    bound: float
    passed: bool
    chain_oscillations: tuple[float, ...]


def doubling_drift(b: GridFunction, w: WindowSpec, j: int, slack: float = 1e-9) -> DriftReport:
    """Mean drift |b_{2^{j+1} B} - b_B| against (j+1) 2^n times the chain BMO norm.

    2^n is the measure ratio of one doubling; the chain composes j+1
    doublings. The whole chain must stay inside the box.
    """
    if w.kind != "ball":
        raise GridError("doubling drift is defined for ball windows")
    if j < 1:
        raise GridError("j must be a positive integer")
    grid = b.grid
    n = grid.ndim
    top = w.radius * 2.0 ** (j + 1)
    for i in range(n):
        lo, hi = grid.bounds[i]
        if w.center[i] - top < lo or w.center[i] + top > hi:
            raise GridError("doubling chain exits the box")
    chain = [ball(w.center, w.radius * 2.0**k) for k in range(j + 2)]
    means = []
    oscillations = []
    for cb in chain:
        mask = window_mask(cb, grid)
        means.append(_ball_mean(b, mask.values))
        oscillations.append(mean_oscillation(b, cb))
    drift = abs(means[-1] - means[0])
    bound = (j + 1) * 2.0**n * max(oscillations)
    return DriftReport(drift, bound, drift <= bound * (1.0 + slack), tuple(oscillations))
