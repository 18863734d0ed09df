import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from walab import _pykernels, kernels

try:
    from walab import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_python_env_forces_fallback():
    out = subprocess.run(
        [sys.executable, "-c", "from walab import kernels; print(kernels.BACKEND)"],
        env={**os.environ, "WALAB_PURE_PYTHON": "1"}, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_e8_theta_head():
    from walab.rootsys import build

    G = [[int(x) for x in r] for r in build("E8").simple_gram]
    assert _pykernels.shell_counts(G, [0] * 8, 1, 6) == [1, 0, 240, 0, 2160, 0, 6720]


def test_shifted_rank_one():
    # odd integers y with 2 y^2 <= 50
    counts = _pykernels.shell_counts([[2]], [1], 2, 50)
    assert {N: c for N, c in enumerate(counts) if c} == {2: 2, 18: 2, 50: 2}


def test_eta_powers():
    assert _pykernels.eta_power_coeffs(24, 4) == [1, -24, 252, -1472, 4830]
    assert _pykernels.eta_power_coeffs(-1, 6) == [1, 1, 2, 3, 5, 7, 11]
    assert _pykernels.eta_power_coeffs(0, 2) == [1, 0, 0]


def _pos_def():
    # small diagonally dominant integer forms
    @st.composite
    def build(draw):
        n = draw(st.integers(1, 3))
        off = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                off[i][j] = off[j][i] = draw(st.integers(-1, 1))
        return [[(2 * n + draw(st.integers(0, 2)) if i == j else off[i][j]) for j in range(n)] for i in range(n)]

    return build()


@needs_ext
@settings(max_examples=40, deadline=None)
@given(_pos_def(), st.integers(1, 3), st.integers(0, 40), st.data())
def test_backends_agree(gram, d, bound, data):
    t = [data.draw(st.integers(-d, d)) for _ in gram]
    assert _pykernels.shell_counts(gram, t, d, bound) == _ckernels.shell_counts(gram, t, d, bound)


@needs_ext
@given(st.integers(-8, 8), st.integers(0, 40))
def test_eta_backends_agree(k, order):
    assert _pykernels.eta_power_coeffs(k, order) == _ckernels.eta_power_coeffs(k, order)


@settings(max_examples=30, deadline=None)
@given(_pos_def(), st.integers(0, 30))
def test_counts_against_brute_force(gram, bound):
    n = len(gram)
    import itertools

    brute = [0] * (bound + 1)
    r = 6
    for x in itertools.product(range(-r, r + 1), repeat=n):
        N = sum(gram[i][j] * x[i] * x[j] for i in range(n) for j in range(n))
        if N <= bound:
            brute[N] += 1
    assert kernels.shell_counts(gram, [0] * n, 1, bound) == brute
