import random

import pytest

from icosa import kernels
from icosa.ring_arith import FiniteField

pytestmark = pytest.mark.skipif(kernels.compiled_kernels is None, reason="compiled extension not built")


def test_backend_selected():
    assert kernels.BACKEND_NAME in ("cython", "python")


@pytest.mark.parametrize("p", [3, 7, 11, 101, 1009])
def test_fp_counts_agree(p):
    rng = random.Random(p)
    for _ in range(10):
        a = [rng.randrange(p) for _ in range(3)]
        assert kernels.compiled_kernels.count_points_fp(*a, p) == kernels.python_kernels.count_points_fp(*a, p)


@pytest.mark.parametrize("p", [3, 7, 13, 17])
def test_fp2_counts_agree(p):
    F = FiniteField(p, 2)
    rng = random.Random(p)
    for _ in range(5):
        a = [rng.randrange(p) for _ in range(6)]
        args = (*a, p, F.d0, F.d1)
        assert kernels.compiled_kernels.count_points_fp2(*args) == kernels.python_kernels.count_points_fp2(*args)


def test_partial_sums_agree():
    vals = [0, 1, -1, -1, 1]
    for s in [(2.0, 0.0), (3.0, 1.5), (1.2, -4.0)]:
        c = kernels.compiled_kernels.dirichlet_partial_sum(vals, *s, 5000)
        py = kernels.python_kernels.dirichlet_partial_sum(vals, *s, 5000)
        assert abs(c - py) < 1e-12
