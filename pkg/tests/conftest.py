import numpy as np
import pytest

from amalgamlab import FieldSpec, make_grid, sample, use_backend
from amalgamlab._kernels import ball_mixed_norm, ball_stencil, riesz_apply


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger jit compilation once so timed tests measure compute only."""
    use_backend()
    g = make_grid([[-1, 1], [-1, 1]], [8, 8])
    f = sample(FieldSpec("gaussian", {"width": 0.5}), g)
    st = ball_stencil(g.spacings, 0.5)
    ball_mixed_norm(np.abs(f.values), g.spacings, np.array([2.0, 2.0]), st)
    ball_mixed_norm(np.abs(f.values), g.spacings, np.array([1.0, np.inf]), st)
    riesz_apply(f.values, g.spacings, 0.5)
    riesz_apply(f.values.astype(np.complex128), g.spacings, 0.5)
    g1 = make_grid([[-1, 1]], [8])
    f1 = sample(FieldSpec("gaussian", {"width": 0.5}), g1)
    riesz_apply(f1.values, g1.spacings, 0.5)
    riesz_apply(f1.values.astype(np.complex128), g1.spacings, 0.5)
    ball_mixed_norm(np.abs(f1.values), g1.spacings, np.array([2.0]), ball_stencil(g1.spacings, 0.5))
    yield
