"""Iterated mixed norms, lattice sequence norms, and exponent algebra.

Exponents live in [1, inf] and are kept as `fractions.Fraction` (with
`math.inf` for the endpoint) so conjugation is exactly involutive and the
admissibility gate can compare reciprocals without rounding. Array
reductions convert to float at the kernel boundary.

Reduction order is fixed: axis 1 first (array axis 0), then axis 2, and so
on outward. Infinite exponents reduce by the maximum over midpoint samples,
without a quadrature weight; finite exponents use compensated summation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from . import _kernels
from .errors import ExponentError
from .grid import GridFunction, _check_same_grid

Exponent = Union[Fraction, float]  # Fraction in [1, ...) or math.inf
INF = math.inf


def as_exponent(x) -> Exponent:
    """Normalize an exponent to Fraction-or-inf and validate it is in [1, inf]."""
    if isinstance(x, str):
        if x.strip().lower() in ("inf", "infinity"):
            return INF
        x = Fraction(x)
    if isinstance(x, float):
        if math.isinf(x) and x > 0:
            return INF
        if math.isnan(x):
            raise ExponentError("exponent must not be NaN")
        x = Fraction(x)
    if isinstance(x, int):
        x = Fraction(x)
    if not isinstance(x, Fraction):
        raise ExponentError(f"cannot interpret {x!r} as an exponent")
    if x < 1:
        raise ExponentError(f"exponent {x} outside [1, inf]")
    return x


def as_exponent_vector(xs, n: int | None = None) -> tuple[Exponent, ...]:
    if isinstance(xs, (int, float, str, Fraction)):
        xs = [xs]
    vec = tuple(as_exponent(x) for x in xs)
    if n is not None and len(vec) != n:
        raise ExponentError(f"exponent vector has length {len(vec)}, expected {n}")
    return vec


def reciprocal(x: Exponent) -> Fraction:
    """1/x with 1/inf = 0, exactly."""
    return Fraction(0) if x is INF or x == INF else Fraction(1) / x


def conjugate(x):
    """Entrywise Hoelder conjugate: 1/x + 1/x' = 1, with 1 <-> inf.

    Involutive exactly: conjugate(conjugate(x)) == x. Accepts a scalar or a
    sequence; returns the same shape.
    """
    if isinstance(x, (tuple, list)):
        return tuple(conjugate(e) for e in x)
    e = as_exponent(x)
    if e is INF or e == INF:
        return Fraction(1)
    if e == 1:
        return INF
    return e / (e - 1)


def mean_reciprocal(xs: Sequence[Exponent]) -> Fraction:
    """(1/n) sum_i 1/x_i, exactly."""
    xs = tuple(xs)
    return sum((reciprocal(x) for x in xs), Fraction(0)) / len(xs)


def sum_reciprocal(xs: Sequence[Exponent]) -> Fraction:
    return sum((reciprocal(x) for x in xs), Fraction(0))


def exponent_float(x: Exponent) -> float:
    return float("inf") if x is INF or x == INF else float(x)


@dataclass(frozen=True)
class ExponentSystem:
    """All index symbols of a run: p, s (and optionally q), alpha, beta, gamma.

    Conjugates are derived on demand and are exact. ``gate_boundary`` records
    which side of the admissibility gate held with equality when the system
    was validated (see amalgam.validate_exponents).
    """

    p: tuple[Exponent, ...]
    s: tuple[Exponent, ...]
    alpha: Exponent
    q: tuple[Exponent, ...] | None = None
    beta: Exponent | None = None
    gamma: float | None = None
    gate_boundary: tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "p", as_exponent_vector(self.p))
        object.__setattr__(self, "s", as_exponent_vector(self.s, len(self.p)))
        object.__setattr__(self, "alpha", as_exponent(self.alpha))
        if self.q is not None:
            object.__setattr__(self, "q", as_exponent_vector(self.q, len(self.p)))
        if self.beta is not None:
            object.__setattr__(self, "beta", as_exponent(self.beta))
        if self.gamma is not None:
            n = len(self.p)
            if not 0 < self.gamma < n:
                raise ExponentError(f"gamma={self.gamma} outside (0, {n})")

    @property
    def n(self) -> int:
        return len(self.p)

    @property
    def p_conj(self) -> tuple[Exponent, ...]:
        return conjugate(self.p)

    @property
    def s_conj(self) -> tuple[Exponent, ...]:
        return conjugate(self.s)

    @property
    def alpha_conj(self) -> Exponent:
        return conjugate(self.alpha)

    @property
    def beta_conj(self) -> Exponent:
        if self.beta is None:
            raise ExponentError("system has no beta")
        return conjugate(self.beta)


# --------------------------------------------------------------------------
# Mixed Lebesgue norm on grid functions


def _reduce_axes(a: np.ndarray, exps: Sequence[float], weights: Sequence[float | None]) -> float:
    """Iterated reduction, innermost axis first.

    ``weights[i]`` is the quadrature weight of axis i (None for unweighted
    sequence reductions); infinite exponents take the axis maximum.
    """
    for p, h in zip(exps, weights):
        rest = a.shape[1:]
        flat = a.reshape(a.shape[0], -1)
        if math.isinf(p):
            a = _kernels.max_axis0(flat).reshape(rest)
        else:
            s = _kernels.pow_sum_axis0(flat, p)
            if h is not None:
                s = h * s
            a = (s ** (1.0 / p)).reshape(rest)
    return float(a)


def mixed_lebesgue_norm(f: GridFunction, p) -> float:
    """Iterated L^p norm of a grid function by midpoint quadrature.

    Reduces axis 1 first, then axis 2, ..., replacing each integral by the
    h-weighted midpoint sum (or the maximum for an infinite entry). Zero iff
    f vanishes everywhere.
    """
    p = as_exponent_vector(p, f.grid.ndim)
    a = np.abs(f.values)
    return _reduce_axes(
        a, [exponent_float(e) for e in p], list(f.grid.spacings)
    )


# --------------------------------------------------------------------------
# Lattice arrays and the discrete sequence norm


@dataclass(frozen=True)
class LatticeArray:
    """Finitely supported nonnegative values indexed by Z^n (zero elsewhere)."""

    entries: Mapping[tuple[int, ...], float]

    def __post_init__(self):
        clean = {}
        ndim = None
        for k, v in self.entries.items():
            k = tuple(int(i) for i in k)
            if ndim is None:
                ndim = len(k)
            elif len(k) != ndim:
                raise ExponentError("inconsistent lattice index dimensions")
            v = float(v)
            if not math.isfinite(v) or v < 0:
                raise ExponentError(f"lattice value at {k} must be finite and >= 0")
            if v != 0.0:
                clean[k] = v
        object.__setattr__(self, "entries", clean)

    @property
    def ndim(self) -> int:
        for k in self.entries:
            return len(k)
        return 0

    @classmethod
    def from_dense(cls, values: np.ndarray, origin: Sequence[int] | None = None) -> "LatticeArray":
        values = np.asarray(values, dtype=np.float64)
        if origin is None:
            origin = (0,) * values.ndim
        idx = np.argwhere(values != 0.0)
        entries = {
            tuple(int(i + o) for i, o in zip(ix, origin)): float(values[tuple(ix)])
            for ix in idx
        }
        return cls(entries)

    def to_dense(self) -> np.ndarray:
        if not self.entries:
            return np.zeros((0,))
        keys = np.array(list(self.entries.keys()))
        lo = keys.min(axis=0)
        hi = keys.max(axis=0)
        arr = np.zeros(tuple(hi - lo + 1))
        for k, v in self.entries.items():
            arr[tuple(np.array(k) - lo)] = v
        return arr


def mixed_sequence_norm(a: LatticeArray, s) -> float:
    """Iterated little-l^s norm: innermost sum over k_1, outermost over k_n."""
    if not a.entries:
        return 0.0
    s = as_exponent_vector(s, a.ndim)
    dense = a.to_dense()
    return _reduce_axes(
        dense, [exponent_float(e) for e in s], [None] * a.ndim
    )


# --------------------------------------------------------------------------
# Windowed Hoelder product bound


@dataclass(frozen=True)
class InequalityReport:
    lhs: float
    rhs: float
    passed: bool
    slack: float

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs if self.rhs != 0 else (0.0 if self.lhs == 0 else math.inf)


def windowed_holder_bound(
    f: GridFunction, g: GridFunction, p, s, r: float, slack: float = 1e-12
) -> InequalityReport:
    """Check || f g ||_1 <= (cube amalgam norm of f) * (conjugate norm of g).

    Both sides use the lattice-cube amalgam norm at scale r; r must tile the
    grid.
    """
    from .amalgam import discrete_amalgam_norm

    _check_same_grid(f, g)
    p = as_exponent_vector(p, f.grid.ndim)
    s = as_exponent_vector(s, f.grid.ndim)
    lhs = float(np.sum(np.abs(f.values * g.values))) * f.grid.cell_volume
    rhs = discrete_amalgam_norm(f, p, s, r) * discrete_amalgam_norm(
        g, conjugate(p), conjugate(s), r
    )
    return InequalityReport(lhs, rhs, lhs <= rhs * (1.0 + slack), slack)
