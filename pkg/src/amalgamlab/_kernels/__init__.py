"""Hot-loop kernels with two interchangeable backends.

The default backend jit-compiles the loops with numba; a pure-numpy fallback
is selected with ``AMALGAMLAB_BACKEND=numpy`` (or if numba is missing).
``use_backend`` switches at runtime; ``benchmarks/bench_kernels.py`` compares
the two.

Window geometry is shared: `ball_stencil` resolves which integer offsets lie
in an open ball once, from exact (d*h)**2 predicates, so both backends and
every window center agree on the same cell set.
"""

from __future__ import annotations

import math
import os

import numpy as np

from . import _numpy as _numpy_impl

_active = None
_active_name = ""


def use_backend(name: str | None = None) -> str:
    """Select the kernel backend ("numba" or "numpy").

    With ``name=None`` the ``AMALGAMLAB_BACKEND`` environment variable
    decides, defaulting to numba when importable. Returns the active name.
    """
    global _active, _active_name
    if name is None:
        name = os.environ.get("AMALGAMLAB_BACKEND", "numba")
    if name == "numba":
        try:
            from . import _numba as _numba_impl
        except ImportError:
            _active, _active_name = _numpy_impl, "numpy"
            return _active_name
        _active, _active_name = _numba_impl, "numba"
    elif name == "numpy":
        _active, _active_name = _numpy_impl, "numpy"
    else:
        raise ValueError(f"unknown backend {name!r}; use 'numba' or 'numpy'")
    return _active_name


def active_backend() -> str:
    return _active_name


use_backend()


def pow_sum_axis0(a, p):
    return _active.pow_sum_axis0(a, p)


def max_axis0(a):
    return _active.max_axis0(a)


def ball_mixed_norm(a, spacings, p_vec, stencil):
    """Per-center mixed norm of |f| over the open ball window, all centers."""
    if a.ndim == 1:
        return _active.ball_mixed_norm_1d(a, spacings[0], p_vec[0], stencil[0])
    if a.ndim == 2:
        hw, w2 = stencil
        return _active.ball_mixed_norm_2d(
            a, spacings[0], spacings[1], p_vec[0], p_vec[1], hw, w2
        )
    hw, w2, w3 = stencil
    return _active.ball_mixed_norm_3d(
        a,
        spacings[0],
        spacings[1],
        spacings[2],
        p_vec[0],
        p_vec[1],
        p_vec[2],
        hw,
        w2,
        w3,
    )


def riesz_apply(vals, spacings, gamma):
    """Riesz kernel integral (without the C_gamma prefactor), all centers."""
    if vals.ndim == 1:
        return _active.riesz_1d(vals, spacings[0], gamma)
    self_mass = riesz_self_mass(spacings, gamma)
    if vals.ndim == 2:
        return _active.riesz_2d(vals, spacings[0], spacings[1], gamma, self_mass)
    return _active.riesz_3d(
        vals, spacings[0], spacings[1], spacings[2], gamma, self_mass
    )


# --------------------------------------------------------------------------
# Shared geometry


def ball_stencil(spacings, rho: float):
    """Integer halfwidths of the open ball of radius rho on the cell lattice.

    A cell at integer offset d belongs to the window iff
    sum((d_i * h_i)**2) < rho**2 with the products evaluated exactly as
    written here, which pins one deterministic window set for all centers.
    """
    rho2 = rho * rho
    ndim = len(spacings)

    def w_along(h, used):
        w = 0
        while ((w + 1) * h) ** 2 + used < rho2:
            w += 1
        return w

    if ndim == 1:
        return (w_along(spacings[0], 0.0),)
    if ndim == 2:
        h1, h2 = spacings
        w2 = w_along(h2, 0.0)
        hw = np.empty(2 * w2 + 1, dtype=np.int64)
        for t in range(2 * w2 + 1):
            b = ((t - w2) * h2) ** 2
            hw[t] = w_along(h1, b)
        return (hw, w2)
    h1, h2, h3 = spacings
    w3 = w_along(h3, 0.0)
    w2 = w_along(h2, 0.0)
    hw = np.full((2 * w3 + 1, 2 * w2 + 1), -1, dtype=np.int64)
    for u in range(2 * w3 + 1):
        c = ((u - w3) * h3) ** 2
        for t in range(2 * w2 + 1):
            b = ((t - w2) * h2) ** 2
            if b + c < rho2:
                hw[u, t] = w_along(h1, b + c)
    return (hw, w2, w3)


def riesz_self_mass(spacings, gamma: float) -> float:
    """Exact-or-near-exact kernel mass of the singular (diagonal) cell.

    1D: closed form. 2D: polar integral over the inscribed disk plus a
    one-point rule at the centroid of each corner remainder. 3D: inscribed
    ball only; callers flag the dropped corner mass.
    """
    ndim = len(spacings)
    if ndim == 1:
        hh = 0.5 * spacings[0]
        return 2.0 * hh**gamma / gamma
    if ndim == 2:
        a1, a2 = 0.5 * spacings[0], 0.5 * spacings[1]
        rho = min(a1, a2)
        disk = 2.0 * math.pi * rho**gamma / gamma
        area = a1 * a2 - 0.25 * math.pi * rho * rho
        if area <= 0:
            return disk
        cx = (0.5 * a1 * a1 * a2 - rho**3 / 3.0) / area
        cy = (0.5 * a2 * a2 * a1 - rho**3 / 3.0) / area
        corner = area * (cx * cx + cy * cy) ** (0.5 * (gamma - 2.0))
        return disk + 4.0 * corner
    rho = 0.5 * min(spacings)
    return 4.0 * math.pi * rho**gamma / gamma
