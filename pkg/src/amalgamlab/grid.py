"""Tensor grids, grid functions, window masks, and the analytic field catalogue.

Functions are represented by one sample per cell, taken at the cell midpoint,
and are zero outside the box. Midpoint sampling is used for quadrature
everywhere downstream, so piecewise-constant identities (partitions,
restriction idempotence) hold exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import FieldError, GridError

#: hard cap on the total number of cells of a grid
DEFAULT_CELL_BUDGET = 2**24


@dataclass(frozen=True)
class Grid:
    """Axis-aligned tensor grid over a box, with one value slot per cell.

    ``bounds[i]`` is the (lower, upper) interval of axis i, ``counts[i]`` the
    number of cells along it. Cell j on axis i covers
    [lower + j*h, lower + (j+1)*h) with h = (upper - lower)/count, and its
    sample point is the midpoint lower + (j + 1/2)*h.
    """

    bounds: tuple[tuple[float, float], ...]
    counts: tuple[int, ...]

    @property
    def ndim(self) -> int:
        return len(self.counts)

    @property
    def spacings(self) -> tuple[float, ...]:
        return tuple(
            (hi - lo) / n for (lo, hi), n in zip(self.bounds, self.counts)
        )

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacings))

    @property
    def size(self) -> int:
        return int(np.prod(self.counts))

    def axis_midpoints(self, i: int) -> np.ndarray:
        lo, _ = self.bounds[i]
        h = self.spacings[i]
        return lo + (np.arange(self.counts[i]) + 0.5) * h

    def midpoint_mesh(self) -> tuple[np.ndarray, ...]:
        """Midpoint coordinate arrays broadcast to the full grid shape."""
        axes = [self.axis_midpoints(i) for i in range(self.ndim)]
        return tuple(np.meshgrid(*axes, indexing="ij"))

    def scaled(self, factor: float) -> "Grid":
        """The grid with all bounds multiplied by ``factor`` (counts kept)."""
        if factor <= 0:
            raise GridError("scale factor must be positive")
        return Grid(
            tuple((lo * factor, hi * factor) for lo, hi in self.bounds),
            self.counts,
        )


def make_grid(
    bounds: Sequence[Sequence[float]],
    counts: Sequence[int],
    cell_budget: int = DEFAULT_CELL_BUDGET,
) -> Grid:
    """Build a validated grid.

    Raises GridError for dimension 0 or > 3, a degenerate axis (empty
    interval or fewer than 2 cells), or a total cell count over the budget.
    """
    if len(bounds) == 0 or len(bounds) > 3:
        raise GridError(f"dimension must be 1..3, got {len(bounds)}")
    if len(counts) != len(bounds):
        raise GridError("bounds and counts must have equal length")
    for (lo, hi), n in zip(bounds, counts):
        if not np.isfinite(lo) or not np.isfinite(hi) or hi <= lo:
            raise GridError(f"degenerate axis: interval [{lo}, {hi}]")
        if int(n) < 2:
            raise GridError(f"degenerate axis: cell count {n} < 2")
    total = int(np.prod([int(n) for n in counts]))
    if total > cell_budget:
        raise GridError(f"cell budget exceeded: {total} > {cell_budget}")
    return Grid(
        tuple((float(lo), float(hi)) for lo, hi in bounds),
        tuple(int(n) for n in counts),
    )


@dataclass(frozen=True)
class GridFunction:
    """Samples of a function at the cell midpoints of a grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values)
        if vals.shape != self.grid.counts:
            raise GridError(
                f"sample shape {vals.shape} != grid shape {self.grid.counts}"
            )
        if vals.dtype.kind == "c":
            vals = vals.astype(np.complex128, copy=False)
        else:
            vals = vals.astype(np.float64, copy=False)
        if not np.all(np.isfinite(vals.view(np.float64) if vals.dtype.kind == "c" else vals)):
            raise GridError("non-finite samples")
        vals = vals.copy() if vals.flags.writeable else vals
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def is_complex(self) -> bool:
        return self.values.dtype.kind == "c"

    def with_values(self, values: np.ndarray) -> "GridFunction":
        return GridFunction(self.grid, values)

    def __add__(self, other: "GridFunction") -> "GridFunction":
        _check_same_grid(self, other)
        return GridFunction(self.grid, self.values + other.values)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        _check_same_grid(self, other)
        return GridFunction(self.grid, self.values - other.values)

    def __mul__(self, c) -> "GridFunction":
        if isinstance(c, GridFunction):
            _check_same_grid(self, c)
            return GridFunction(self.grid, self.values * c.values)
        return GridFunction(self.grid, self.values * c)

    __rmul__ = __mul__

    def integral(self) -> float | complex:
        """Midpoint quadrature of the samples over the box."""
        total = np.sum(self.values)
        value = total * self.grid.cell_volume
        return complex(value) if self.is_complex else float(value)


def _check_same_grid(f: GridFunction, g: GridFunction) -> None:
    if f.grid != g.grid:
        raise GridError("grid mismatch between operands")


def zeros(grid: Grid) -> GridFunction:
    return GridFunction(grid, np.zeros(grid.counts))


@dataclass(frozen=True)
class WindowSpec:
    """A ball B(y, r) or a lattice cube r*[k + [0,1)^n].

    Balls are open (strict inequality at midpoints); cubes are half-open, so
    cubes of a common side partition space.
    """

    kind: str  # "ball" | "cube"
    radius: float
    center: tuple[float, ...] | None = None  # balls
    index: tuple[int, ...] | None = None  # cubes

    def __post_init__(self):
        if self.kind not in ("ball", "cube"):
            raise GridError(f"unknown window kind {self.kind!r}")
        if self.radius <= 0:
            raise GridError("window radius must be positive")
        if self.kind == "ball" and self.center is None:
            raise GridError("ball window needs a center")
        if self.kind == "cube" and self.index is None:
            raise GridError("cube window needs a lattice index")


def ball(center: Sequence[float], radius: float) -> WindowSpec:
    return WindowSpec("ball", float(radius), center=tuple(float(c) for c in center))


def cube(side: float, index: Sequence[int]) -> WindowSpec:
    return WindowSpec("cube", float(side), index=tuple(int(k) for k in index))


def window_mask(w: WindowSpec, grid: Grid) -> GridFunction:
    """0/1 indicator of the window at the cell midpoints."""
    if w.kind == "ball":
        if len(w.center) != grid.ndim:
            raise GridError("window dimension != grid dimension")
        for (lo, hi), c in zip(grid.bounds, w.center):
            if c < lo - w.radius or c > hi + w.radius:
                raise GridError("ball center too far outside the box")
        mesh = grid.midpoint_mesh()
        dist2 = np.zeros(grid.counts)
        for i in range(grid.ndim):
            dist2 = dist2 + (mesh[i] - w.center[i]) ** 2
        inside = dist2 < w.radius * w.radius
    else:
        if len(w.index) != grid.ndim:
            raise GridError("window dimension != grid dimension")
        inside = np.ones(grid.counts, dtype=bool)
        mesh = grid.midpoint_mesh()
        for i in range(grid.ndim):
            lo = w.radius * w.index[i]
            hi = w.radius * (w.index[i] + 1)
            inside &= (mesh[i] >= lo) & (mesh[i] < hi)
    return GridFunction(grid, inside.astype(np.float64))


def restrict(f: GridFunction, w: WindowSpec) -> GridFunction:
    """Pointwise product of f with the window indicator."""
    mask = window_mask(w, f.grid)
    return GridFunction(f.grid, f.values * mask.values)


# --------------------------------------------------------------------------
# Field catalogue

@dataclass(frozen=True)
class FieldSpec:
    """A named analytic test field plus its numeric parameters."""

    name: str
    params: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in FIELD_CATALOGUE:
            raise FieldError(
                f"unknown field {self.name!r}; known: {sorted(FIELD_CATALOGUE)}"
            )
        object.__setattr__(self, "params", dict(self.params))


def _vector_param(params, key, ndim, default=0.0):
    v = params.get(key, [default] * ndim)
    if np.isscalar(v):
        v = [v] * ndim
    v = [float(x) for x in v]
    if len(v) != ndim:
        raise FieldError(f"parameter {key!r} must have length {ndim}")
    return v


def _radial2(mesh, center):
    r2 = np.zeros(mesh[0].shape)
    for m, c in zip(mesh, center):
        r2 = r2 + (m - c) ** 2
    return r2


def _field_constant(params, grid):
    value = complex(params.get("value", 1.0))
    arr = np.full(grid.counts, value)
    return arr.real if value.imag == 0 else arr


def _field_indicator_ball(params, grid):
    center = _vector_param(params, "center", grid.ndim)
    radius = float(params.get("radius", 1.0))
    if radius <= 0:
        raise FieldError("indicator-ball radius must be positive")
    r2 = _radial2(grid.midpoint_mesh(), center)
    return (r2 < radius * radius).astype(np.float64)


def _field_indicator_box(params, grid):
    lower = _vector_param(params, "lower", grid.ndim, default=0.0)
    upper = _vector_param(params, "upper", grid.ndim, default=1.0)
    mesh = grid.midpoint_mesh()
    inside = np.ones(grid.counts, dtype=bool)
    for m, lo, hi in zip(mesh, lower, upper):
        if hi <= lo:
            raise FieldError("indicator-box needs lower < upper per axis")
        inside &= (m >= lo) & (m < hi)
    return inside.astype(np.float64)


def _field_gaussian(params, grid):
    center = _vector_param(params, "center", grid.ndim)
    width = float(params.get("width", 1.0))
    amplitude = float(params.get("amplitude", 1.0))
    if width <= 0:
        raise FieldError("gaussian width must be positive")
    r2 = _radial2(grid.midpoint_mesh(), center)
    return amplitude * np.exp(-r2 / (width * width))


def _check_nonsingular_midpoints(r2, grid):
    h = min(grid.spacings)
    if np.min(r2) < (1e-9 * h) ** 2:
        raise FieldError(
            "singular midpoint: a cell midpoint hits the field singularity "
            "(use even cell counts on a symmetric box)"
        )


def _field_power_radial(params, grid):
    a = float(params.get("exponent", -0.5))
    if a <= -grid.ndim:
        raise FieldError(f"power-radial exponent {a} <= -n is not integrable")
    r2 = _radial2(grid.midpoint_mesh(), [0.0] * grid.ndim)
    if a < 0:
        _check_nonsingular_midpoints(r2, grid)
    return np.power(r2, a / 2.0)


def _field_log_abs(params, grid):
    r2 = _radial2(grid.midpoint_mesh(), [0.0] * grid.ndim)
    _check_nonsingular_midpoints(r2, grid)
    return 0.5 * np.log(r2)


def _field_modulated_indicator(params, grid):
    # e^{-2i m.x/t} restricted to a ball window; m may be any real vector
    m = _vector_param(params, "m", grid.ndim)
    t = float(params.get("t", 1.0))
    if t <= 0:
        raise FieldError("modulation scale t must be positive")
    center = _vector_param(params, "center", grid.ndim)
    radius = float(params.get("radius", 1.0))
    mesh = grid.midpoint_mesh()
    phase = np.zeros(grid.counts)
    for mi, x in zip(m, mesh):
        phase = phase + mi * x
    mask = (_radial2(mesh, center) < radius * radius).astype(np.float64)
    return np.exp(-2j * phase / t) * mask


def _field_random_bump_sum(params, grid):
    # centers and widths are confined to the middle of the box so the
    # effective support keeps a generous margin to the boundary (window
    # sweeps require it)
    seed = int(params.get("seed", 0))
    rng = np.random.default_rng(seed)
    count = int(rng.integers(1, 6))
    spans = [hi - lo for lo, hi in grid.bounds]
    out = np.zeros(grid.counts)
    mesh = grid.midpoint_mesh()
    for _ in range(count):
        center = [
            lo + span * rng.uniform(0.4, 0.6)
            for (lo, _), span in zip(grid.bounds, spans)
        ]
        width = min(spans) * rng.uniform(0.01, 0.03)
        amplitude = rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0])
        out = out + amplitude * np.exp(-_radial2(mesh, center) / (width * width))
    if rng.uniform() < 0.5:
        center = [
            lo + span * rng.uniform(0.42, 0.58)
            for (lo, _), span in zip(grid.bounds, spans)
        ]
        radius = min(spans) * rng.uniform(0.01, 0.04)
        out = out + rng.uniform(0.5, 1.5) * (
            _radial2(mesh, center) < radius * radius
        )
    return out


FIELD_CATALOGUE: dict[str, Callable] = {
    "constant": _field_constant,
    "indicator-ball": _field_indicator_ball,
    "indicator-box": _field_indicator_box,
    "gaussian": _field_gaussian,
    "power-radial": _field_power_radial,
    "log-abs": _field_log_abs,
    "cosine-modulated-indicator": _field_modulated_indicator,
    "random-bump-sum": _field_random_bump_sum,
}


def sample(spec: FieldSpec, grid: Grid) -> GridFunction:
    """Evaluate a catalogue field at the cell midpoints.

    Deterministic given (spec, grid); random-bump-sum derives everything from
    its seed parameter.
    """
    values = FIELD_CATALOGUE[spec.name](spec.params, grid)
    return GridFunction(grid, values)
