"""Block decompositions, synthesis, the block-norm upper bound, and duality.

A decomposition is a finite list of (coefficient, dyadic scale, unit-norm
profile) triples; synthesizing applies the norm-weighted dilation to each
profile and sums on a common grid. The sum of |coefficients| upper-bounds
the predual norm; the true infimum over all decompositions is out of scope,
and every check here only ever uses the upper bound on the side where it is
sound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .amalgam import (
    RadiusSweep,
    alpha_amalgam_norm,
    discrete_alpha_norm,
    discrete_amalgam_norm,
    validate_exponents,
)
from .errors import BlockNormExceeded, EmptyDecomposition, GridError
from .grid import FieldSpec, Grid, GridFunction, _check_same_grid, sample
from .norms import (
    ExponentSystem,
    InequalityReport,
    conjugate,
    exponent_float,
    reciprocal,
)
from .operators import st_dilation


@dataclass(frozen=True)
class Block:
    coeff: complex
    scale: float
    profile: GridFunction
    field: FieldSpec | None = None  # kept when the profile came from the catalogue


@dataclass(frozen=True)
class BlockDecomposition:
    """Validated blocks plus the exponent system whose conjugates they obey."""

    blocks: tuple[Block, ...]
    system: ExponentSystem

    @property
    def coeff_sum(self) -> float:
        return float(sum(abs(b.coeff) for b in self.blocks))


def make_block_decomposition(
    blocks: Sequence[Block], sys: ExponentSystem, slack: float = 1e-12
) -> BlockDecomposition:
    """Validate the unit-norm condition of every block (cube norm at r=1).

    Coefficients and profiles are kept exactly as supplied; nothing is
    renormalized.
    """
    if not blocks:
        raise EmptyDecomposition("a decomposition needs at least one block")
    p_conj = sys.p_conj
    s_conj = sys.s_conj
    for idx, blk in enumerate(blocks):
        norm = discrete_amalgam_norm(blk.profile, p_conj, s_conj, 1.0)
        if norm > 1.0 + slack:
            raise BlockNormExceeded(idx, norm)
        if blk.scale <= 0:
            raise GridError("block scales must be positive")
    return BlockDecomposition(tuple(blocks), sys)


def synthesize(dec: BlockDecomposition, grid: Grid) -> GridFunction:
    """Sum of coeff * St_scale(profile); every dilated block must land on grid."""
    alpha_conj = exponent_float(dec.system.alpha_conj)
    total = np.zeros(grid.counts, dtype=np.complex128)
    for blk in dec.blocks:
        piece = st_dilation(blk.profile, blk.scale, alpha_conj)
        if piece.grid != grid:
            raise GridError(
                "incompatible scale: a dilated block does not land on the "
                "synthesis grid"
            )
        total = total + complex(blk.coeff) * piece.values
    if np.all(total.imag == 0.0):
        return GridFunction(grid, total.real.copy())
    return GridFunction(grid, total)


def h_norm_upper_bound(dec: BlockDecomposition) -> float:
    """sum |c_j|: an upper bound for the predual-norm infimum."""
    return dec.coeff_sum


def pairing(f: GridFunction, g: GridFunction) -> float | complex:
    """Midpoint quadrature of f*g (no conjugation)."""
    _check_same_grid(f, g)
    total = np.sum(f.values * g.values) * f.grid.cell_volume
    if f.is_complex or g.is_complex:
        return complex(total)
    return float(total)


def duality_check(
    g: GridFunction,
    dec: BlockDecomposition,
    sys: ExponentSystem,
    sweep: RadiusSweep,
    slack: float = 1e-9,
) -> InequalityReport:
    """|<synthesized f, g>| against (discrete alpha norm of g) * (coeff sum).

    The sweep is extended with every block scale: each |<St_r f_j, g>| is
    bounded by the r-term of the alpha sup, so those terms must be present
    for the finite-sweep right side to dominate. The right side uses the
    coefficient-sum upper bound, which only ever enlarges it, so failures
    are genuine.
    """
    validate_exponents(sys.p, sys.s, sys.alpha)
    sweep = sweep.including(*(blk.scale for blk in dec.blocks))
    f = synthesize(dec, g.grid)
    lhs = abs(pairing(f, g))
    rhs = discrete_alpha_norm(g, sys, sweep).value * h_norm_upper_bound(dec)
    return InequalityReport(lhs, rhs, lhs <= rhs * (1.0 + slack), slack)


@dataclass(frozen=True)
class CharacteristicBounds:
    radius: float
    alpha_norm: float
    alpha_ratio: float  # alpha_norm / r^(n/alpha)
    h_bound: float
    h_ratio: float  # h_bound / r^(n/alpha')


def characteristic_norm_bounds(
    radii: Sequence[float],
    sys: ExponentSystem,
    sweep: RadiusSweep,
    grid: Grid,
) -> tuple[CharacteristicBounds, ...]:
    """Scale-invariance ratios of indicator-ball norms across radii.

    For each r0: the ball-window alpha norm of the indicator of B(0, r0)
    against r0^(n/alpha), and the single-block predual upper bound (built by
    rescaling the unit-ball indicator) against r0^(n/alpha').
    """
    validate_exponents(sys.p, sys.s, sys.alpha)
    n = grid.ndim
    na = float(n * reciprocal(sys.alpha))
    na_conj = float(n * reciprocal(sys.alpha_conj))
    out = []
    for r0 in radii:
        chi = sample(FieldSpec("indicator-ball", {"center": [0.0] * n, "radius": r0}), grid)
        a_norm = alpha_amalgam_norm(chi, sys, sweep).value
        profile = sample(
            FieldSpec("indicator-ball", {"center": [0.0] * n, "radius": 1.0}),
            grid.scaled(1.0 / r0),
        )
        nu = discrete_amalgam_norm(profile, sys.p_conj, sys.s_conj, 1.0)
        h_bound = r0**na_conj * nu
        out.append(
            CharacteristicBounds(
                r0, a_norm, a_norm / r0**na, h_bound, h_bound / r0**na_conj
            )
        )
    return tuple(out)


# --------------------------------------------------------------------------
# JSON document form: {"alpha_prime": ..., "blocks": [{"c", "r", "field"}]}


def decomposition_to_json(dec: BlockDecomposition) -> dict:
    blocks = []
    for blk in dec.blocks:
        if blk.field is None:
            raise GridError(
                "only decompositions built from catalogue fields serialize"
            )
        c = complex(blk.coeff)
        blocks.append(
            {
                "c": c.real if c.imag == 0 else [c.real, c.imag],
                "r": blk.scale,
                "field": {"name": blk.field.name, "params": dict(blk.field.params)},
            }
        )
    alpha_conj = exponent_float(dec.system.alpha_conj)
    return {
        "alpha_prime": "inf" if math.isinf(alpha_conj) else alpha_conj,
        "blocks": blocks,
    }


def decomposition_from_json(
    doc: dict, grid: Grid, sys: ExponentSystem
) -> BlockDecomposition:
    declared = doc.get("alpha_prime")
    declared = math.inf if declared in ("inf", None) else float(declared)
    actual = exponent_float(sys.alpha_conj)
    if not (math.isinf(declared) and math.isinf(actual)) and not math.isclose(
        declared, actual, rel_tol=1e-9
    ):
        raise GridError(
            f"document alpha_prime {declared} != system conjugate {actual}"
        )
    blocks = []
    for entry in doc["blocks"]:
        c = entry["c"]
        coeff = complex(c[0], c[1]) if isinstance(c, (list, tuple)) else complex(c)
        r = float(entry["r"])
        spec = FieldSpec(entry["field"]["name"], entry["field"].get("params", {}))
        profile = sample(spec, grid.scaled(1.0 / r))
        blocks.append(Block(coeff, r, profile, field=spec))
    return make_block_decomposition(blocks, sys)
