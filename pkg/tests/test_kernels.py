import os
import subprocess
import sys

import numpy as np
import pytest

from thetaframe import _pykernels, kernels

try:
    from thetaframe import _ckernels
except ImportError:  # pragma: no cover - extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")


def _case(rng):
    a = rng.uniform(0.2, 2.0)
    c = rng.uniform(0.2, 2.0)
    b = rng.uniform(-0.9, 0.9) * np.sqrt(a * c)
    s1, s2 = rng.uniform(-0.5, 0.5, 2)
    pts = rng.uniform(0, 1, (7, 2))
    pts[0] = 0.0
    return a, b, c, int(rng.integers(1, 12)), s1, s2, pts


@needs_ext
def test_backends_agree(rng):
    for _ in range(50):
        a, b, c, k, s1, s2, pts = _case(rng)
        args = (a, b, c, k, s1, s2, pts[:, 0].copy(), pts[:, 1].copy())
        re_c, im_c = _ckernels.lattice_sum(*args)
        re_p, im_p = _pykernels.lattice_sum(*args)
        np.testing.assert_allclose(re_c, re_p, rtol=1e-13, atol=1e-14)
        np.testing.assert_allclose(im_c, im_p, rtol=1e-13, atol=1e-14)


def test_python_matches_direct_sum(rng):
    a, b, c, k, s1, s2, pts = _case(rng)
    re, im = _pykernels.lattice_sum(a, b, c, k, s1, s2, pts[:, 0], pts[:, 1])
    for p, (x, w) in enumerate(pts):
        tot = 0j
        for i in range(-k, k + 1):
            for j in range(-k, k + 1):
                u, v = i + s1, j + s2
                tot += np.exp(-np.pi * (a * u * u + 2 * b * u * v + c * v * v)) * np.exp(
                    2j * np.pi * (i * x + j * w))
        assert re[p] == pytest.approx(tot.real, abs=1e-13)
        assert im[p] == pytest.approx(tot.imag, abs=1e-13)


def test_backend_flag():
    assert kernels.BACKEND in ("cython", "python")
    if _ckernels is not None and os.environ.get("THETAFRAME_PURE", "") != "1":
        assert kernels.BACKEND == "cython"


def test_pure_env_forces_fallback():
    code = "import thetaframe.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, THETAFRAME_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_results_identical_across_backends(monkeypatch):
    from thetaframe.framebounds import GaborConfig, upper_bound_even
    from thetaframe.lattice import hexagonal
    cfg = GaborConfig(hexagonal(1), 1)
    v_default = upper_bound_even(cfg)
    monkeypatch.setattr(kernels, "lattice_sum", _pykernels.lattice_sum)
    assert upper_bound_even(cfg) == pytest.approx(v_default, abs=1e-14)
