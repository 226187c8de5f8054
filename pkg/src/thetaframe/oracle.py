"""Brute-force cross-checks for the closed forms.

Nothing here goes through the certified lattice-sum kernel: inner products
are integrated numerically, Fourier series are summed over a fixed box from
individually computed coefficients, and the Poisson identity behind
``b = c`` is summed with plain numpy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import GridTooCoarse, QuadratureNotConverged
from .framebounds import GaborConfig, janssen_coefficient
from .lattice import HEXAGONAL_FORM
from .theta import truncation_radius


@dataclass(frozen=True)
class QuadratureSpec:
    half_width: float
    nodes: int
    residual: float


def _gauss_legendre(f, lo, hi, panels, order=20):
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    t = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wt = (half[:, None] * w[None, :]).ravel()
    return np.sum(wt * f(t))


def inner_product_quadrature(k: int, l: int, alpha: float, beta: float, gamma: float,
                             full_output: bool = False, max_doublings: int = 8):
    """``<g_{-gamma}, M_{l/alpha} T_{k/beta} g_{-gamma}>`` by composite Gauss-Legendre."""
    shift = k / beta

    def integrand(t):
        chirp = np.exp(-1j * np.pi * gamma * (t * t - (t - shift) ** 2))
        env = np.exp(-np.pi * (t * t + (t - shift) ** 2))
        return math.sqrt(2) * chirp * env * np.exp(-2j * np.pi * l * t / alpha)

    half_width = 6.0 + abs(shift)
    order = 20
    panels = 400 // order
    prev = _gauss_legendre(integrand, -half_width, half_width, panels, order)
    for _ in range(max_doublings):
        panels *= 2
        cur = _gauss_legendre(integrand, -half_width, half_width, panels, order)
        resid = abs(cur - prev)
        if resid <= 1e-10:
            if full_output:
                return complex(cur), QuadratureSpec(half_width, panels * order, float(resid))
            return complex(cur)
        prev = cur
    raise QuadratureNotConverged(f"k={k}, l={l}: residual {resid:.3g} after {panels * order} nodes")


def _coefficients(cfg: GaborConfig, radius: int) -> np.ndarray:
    a, b, g = cfg.lattice.alpha, cfg.lattice.beta, cfg.lattice.gamma
    idx = range(-radius, radius + 1)
    return np.array([[janssen_coefficient(k, l, a, b, g) for l in idx] for k in idx])


def _series(coef: np.ndarray, xs, ws, radius: int, scale: float) -> np.ndarray:
    idx = np.arange(-radius, radius + 1)
    ex = np.exp(2j * np.pi * np.outer(np.atleast_1d(xs), idx))
    ew = np.exp(2j * np.pi * np.outer(np.atleast_1d(ws), idx))
    return scale * (ex @ coef @ ew.T)


def brute_force_F(x: float, omega: float, cfg: GaborConfig, radius: int = 50) -> float:
    """Janssen Fourier series summed naively over ``|k|, |l| <= radius``."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    lat = cfg.lattice
    coef = _coefficients(cfg, radius)
    val = _series(coef, x, omega, radius, 1.0 / (lat.alpha * lat.beta))[0, 0]
    return float(val.real)


def _first_lexicographic(mask: np.ndarray):
    i, j = min(map(tuple, np.argwhere(mask)))
    return int(i), int(j)


def grid_extrema(cfg: GaborConfig, grid_n: int = 96, radius: int = 50):
    """Exhaustive min/max of the brute-force series on a ``grid_n^2`` torus grid.

    Near-ties (relative 1e-12) resolve to the lexicographically smallest point.
    Returns ``(min, argmin, max, argmax)``.
    """
    if grid_n < 8:
        raise GridTooCoarse(f"grid_n={grid_n} < 8")
    lat = cfg.lattice
    ticks = np.arange(grid_n) / grid_n
    coef = _coefficients(cfg, radius)
    vals = _series(coef, ticks, ticks, radius, 1.0 / (lat.alpha * lat.beta)).real
    vmin, vmax = vals.min(), vals.max()
    imin = _first_lexicographic(vals <= vmin + 1e-12 * abs(vmin))
    imax = _first_lexicographic(vals >= vmax - 1e-12 * abs(vmax))
    argmin = (imin[0] / grid_n, imin[1] / grid_n)
    argmax = (imax[0] / grid_n, imax[1] / grid_n)
    return float(vmin), argmin, float(vmax), argmax


def poisson_bc_sides():
    """Both sides of the Poisson identity relating ``b`` and ``c`` at ``exp(-2 pi/sqrt 3)``.

    Left: ``sum exp(-(2 pi/sqrt 3)(k^2 - k l + l^2)) exp(-2 pi i (k + l)/3)``.
    Right: the same Gaussian over the shifted set ``(k + 1/3, l + 1/3)`` with
    the form ``k^2 + k l + l^2``.
    """
    radius = truncation_radius(HEXAGONAL_FORM, 1.0, 1e-17) + 2
    idx = np.arange(-radius, radius + 1, dtype=float)
    k, l = np.meshgrid(idx, idx, indexing="ij")
    t = 2 * np.pi / np.sqrt(3)
    lhs = np.sum(np.exp(-t * (k * k - k * l + l * l)) * np.exp(-2j * np.pi * (k + l) / 3))
    u, v = k + 1 / 3, l + 1 / 3
    rhs = np.sum(np.exp(-t * (u * u + u * v + v * v)))
    return complex(lhs), float(rhs)


class PoissonCheck(NamedTuple):
    lhs: float
    rhs: float
    passed: bool


def poisson_bc_check(tolerance: float = 1e-12) -> PoissonCheck:
    lhs, rhs = poisson_bc_sides()
    ok = abs(lhs.real - rhs) < tolerance and abs(lhs.imag) < tolerance
    return PoissonCheck(lhs.real, rhs, bool(ok))
