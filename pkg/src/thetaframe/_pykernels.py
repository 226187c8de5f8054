"""Pure numpy implementation of the Gaussian lattice sum."""
import numpy as np


def lattice_sum(m11, m12, m22, radius, s1, s2, xs, ws):
    """Sum ``exp(-pi Q(k+s1, l+s2)) exp(2 pi i (k x + l w))`` over ``|k|, |l| <= radius``.

    ``Q(u, v) = m11 u^2 + 2 m12 u v + m22 v^2``. Returns real and imaginary
    parts, one entry per point ``(xs[p], ws[p])``.
    """
    idx = np.arange(-radius, radius + 1, dtype=np.float64)
    u = (idx + s1)[:, None]
    v = (idx + s2)[None, :]
    weight = np.exp(-np.pi * (m11 * u * u + 2.0 * m12 * u * v + m22 * v * v))
    xs = np.atleast_1d(np.asarray(xs, dtype=np.float64))
    ws = np.atleast_1d(np.asarray(ws, dtype=np.float64))
    ex = np.exp(2j * np.pi * np.outer(xs, idx))
    ew = np.exp(2j * np.pi * np.outer(ws, idx))
    total = np.einsum("pk,kl,pl->p", ex, weight, ew)
    return total.real.copy(), total.imag.copy()
