"""Sharp frame bounds for the standard Gaussian on lattices of density 2n.

The window is always ``g0(t) = 2^(1/4) exp(-pi t^2)``; a chirped window is
represented by the shear of the lattice instead.  At even density the
Janssen coefficients are real and positive, so the frame bounds are the
minimum and the maximum (attained at the origin) of the periodic function

    F(x, w) = 2n * sum_{k,l} exp(-pi/2 |S°(k, l)|^2) exp(2 pi i (k x + l w)),

with ``S°`` the generator of the adjoint lattice.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .errors import DensityMismatch, GridTooCoarse
from .lattice import (
    HEXAGONAL_FORM,
    Lattice2D,
    forms_equivalent,
    gram,
    quadratic_form,
    square,
)
from .theta import (
    DEFAULT_EPS,
    TruncationSpec,
    _check_eps,
    _radius_for,
    cubic_theta,
    gaussian_sum,
    jacobi_theta,
    lattice_theta,
)

DENSITY_RTOL = 1e-12
SQUARE_FORM = quadratic_form(square(1))


@dataclass(frozen=True)
class GaborConfig:
    """Standard Gaussian window paired with a lattice of density ``2n``."""

    lattice: Lattice2D
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        dev = abs(2 * self.n * self.lattice.volume - 1.0)
        if dev > DENSITY_RTOL:
            raise DensityMismatch(
                f"lattice volume {self.lattice.volume!r} is not 1/(2n) for n={self.n}"
            )

    @classmethod
    def _unchecked(cls, lattice: Lattice2D, n: int) -> "GaborConfig":
        # bypasses the density check; for truncation sanity tests only
        obj = object.__new__(cls)
        object.__setattr__(obj, "lattice", lattice)
        object.__setattr__(obj, "n", n)
        return obj

    @property
    def density(self) -> int:
        return 2 * self.n


@dataclass
class FrameBoundReport:
    upper: float
    lower: float | None
    lower_source: str | None
    condition: float | None
    argmax: tuple[float, float]
    argmin: tuple[float, float] | None
    route_spread: float
    routes: dict
    route_tails: dict
    truncation: TruncationSpec
    lower_grid: float | None = None
    grid_n: int | None = None
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "upper": self.upper,
            "lower": self.lower,
            "lower_source": self.lower_source,
            "lower_grid": self.lower_grid,
            "condition": self.condition,
            "argmax": list(self.argmax),
            "argmin": None if self.argmin is None else list(self.argmin),
            "route_spread": self.route_spread,
            "routes": dict(self.routes),
            "route_tails": dict(self.route_tails),
            "truncation": self.truncation.as_dict(),
            "grid_n": self.grid_n,
            "grid_resolution": None if self.grid_n is None else 1.0 / self.grid_n,
            "notes": list(self.notes),
        }


def ambiguity_gaussian(x, omega):
    """Ambiguity function of ``g0``: ``exp(-pi/2 (x^2 + omega^2))``."""
    return np.exp(-0.5 * np.pi * (np.square(x) + np.square(omega)))


def janssen_coefficient(k: int, l: int, alpha: float, beta: float, gamma: float) -> complex:
    """``<g_{-gamma}, M_{l/alpha} T_{k/beta} g_{-gamma}>`` in closed form."""
    phase = cmath.exp(-1j * math.pi * k * l / (alpha * beta))
    mag = math.exp(-0.5 * math.pi * ((k / beta) ** 2 + (l / alpha + k * gamma / beta) ** 2))
    return phase * mag


def _adjoint_matrix(alpha: float, beta: float, gamma: float, cross_sign: float = 1.0):
    """Half the Gram matrix of the adjoint generator ``[[1/b, 0], [g/b, 1/a]]``."""
    c = cross_sign * gamma / (alpha * beta)
    return 0.5 * np.array([[(1 + gamma * gamma) / beta**2, c], [c, 1 / alpha**2]])


def fourier_series_F(x, omega, cfg: GaborConfig, eps: float = DEFAULT_EPS):
    """Evaluate the Janssen Fourier series at ``(x, omega)`` (array-friendly)."""
    _check_eps(eps)
    lat = cfg.lattice
    a, b, g = lat.alpha, lat.beta, lat.gamma
    xs = np.asarray(x, dtype=float)
    ws = np.asarray(omega, dtype=float)
    shape = np.broadcast(xs, ws).shape
    pts = np.column_stack([np.broadcast_to(xs, shape).ravel(),
                           np.broadcast_to(ws, shape).ravel()])
    scale = 1.0 / (a * b)
    vals, _ = gaussian_sum(_adjoint_matrix(a, b, g), eps / scale, points=pts)
    vals = scale * vals
    resid = np.max(np.abs(vals.imag)) if vals.size else 0.0
    if resid >= 1e-12:
        raise ArithmeticError(f"F has imaginary residue {resid!r}")
    out = vals.real.reshape(shape)
    return float(out) if out.ndim == 0 else out


def upper_bound_params(alpha: float, beta: float, gamma: float, n: int,
                       eps: float = DEFAULT_EPS, full_output: bool = False):
    """Upper frame bound ``B(alpha, beta, gamma)`` for ``alpha beta = 1/(2n)``.

    The shear is used as given, without periodic reduction.
    """
    m = _adjoint_matrix(alpha, beta, gamma, cross_sign=-1.0)
    vals, spec = gaussian_sum(m, eps / (2 * n))
    value = 2 * n * float(vals[0].real)
    if full_output:
        return value, spec
    return value


def upper_bound_even(cfg: GaborConfig, eps: float = DEFAULT_EPS, full_output: bool = False):
    """Upper bound from the series over the adjoint lattice."""
    lat = cfg.lattice
    return upper_bound_params(lat.alpha, lat.beta, lat.gamma, cfg.n, eps, full_output)


def upper_bound_theta_route(cfg: GaborConfig, eps: float = DEFAULT_EPS,
                            full_output: bool = False):
    """Upper bound as ``2 theta_q(1/n)``, cross-checked against ``2n theta_q(n)``."""
    q = quadratic_form(cfg.lattice)
    n = cfg.n
    small, spec_small = lattice_theta(q, 1.0 / n, eps / 2)
    big, spec_big = lattice_theta(q, float(n), eps / (2 * n))
    v1, v2 = 2 * small, 2 * n * big
    allowed = 2 * spec_small.certified_tail + 2 * n * spec_big.certified_tail + 1e-13 * v1
    if abs(v1 - v2) > allowed:
        raise ArithmeticError(f"modular identity mismatch: {v1!r} vs {v2!r}")
    if full_output:
        return v1, spec_small
    return v1


def upper_bound_ambiguity_route(cfg: GaborConfig, eps: float = DEFAULT_EPS,
                                full_output: bool = False):
    """Upper bound as ``2 sum_{lambda} Ag0(2 lambda)`` over the lattice points."""
    _check_eps(eps)
    g = gram(cfg.lattice).matrix
    t = math.pi * np.linalg.eigvalsh(2.0 * g)[0]
    radius, tail = _radius_for(t, eps / 2, 0.0)
    pts = cfg.lattice.points(radius)
    samples = ambiguity_gaussian(2.0 * pts[:, 0], 2.0 * pts[:, 1])
    value = 2.0 * math.fsum(samples)
    if full_output:
        return value, TruncationSpec(eps / 2, radius, tail)
    return value


def _grid_values(cfg: GaborConfig, grid_n: int, eps: float) -> np.ndarray:
    ticks = np.arange(grid_n) / grid_n
    xx, ww = np.meshgrid(ticks, ticks, indexing="ij")
    return fourier_series_F(xx, ww, cfg, eps)


def _lexicographic_argmin(values: np.ndarray, rtol: float = 1e-12):
    vmin = values.min()
    cand = np.argwhere(values <= vmin + rtol * abs(vmin))
    i, j = min(map(tuple, cand))
    return int(i), int(j)


def lower_bound_grid(cfg: GaborConfig, grid_n: int = 96, eps: float = DEFAULT_EPS):
    """Minimum of F from a torus grid refined by a simplex search.

    Returns ``(value, (x, omega))`` with the location reduced to ``[0, 1)^2``.
    Away from the known square/hexagonal cases the result is an estimate.
    """
    if grid_n < 8:
        raise GridTooCoarse(f"grid_n={grid_n} < 8")
    vals = _grid_values(cfg, grid_n, eps)
    i, j = _lexicographic_argmin(vals)
    start = np.array([i, j], dtype=float) / grid_n
    step = 1.0 / grid_n
    simplex = np.array([start, start + [step, 0.0], start + [0.0, step]])
    res = minimize(
        lambda p: fourier_series_F(p[0], p[1], cfg, eps),
        start,
        method="Nelder-Mead",
        options={"xatol": 1e-10, "fatol": 1e-16, "initial_simplex": simplex,
                 "maxiter": 10_000},
    )
    value, loc = float(res.fun), res.x
    if value > vals[i, j]:
        value, loc = float(vals[i, j]), start
    return value, (float(loc[0] % 1.0), float(loc[1] % 1.0))


def frequency_mirror(point):
    """Map ``(x, omega)`` to ``(x, -omega)`` on the torus.

    Reversing the chirp sign mirrors the frequency coordinate; for the
    canonical hexagonal lattice this moves the minima of F from
    ``(1/3, 2/3), (2/3, 1/3)`` to ``(1/3, 1/3), (2/3, 2/3)``.
    """
    x, w = point
    return (x % 1.0, (-w) % 1.0)


def closed_form_square_red2():
    """Sharp ``(A, B)`` for the square lattice at density 2, via Gamma(3/4)."""
    g = math.gamma(0.75)
    pi4 = math.pi ** 0.25
    upper = 2.0 * (pi4 / g) ** 2
    lower = 2.0 * (pi4 / (2 ** 0.25 * g)) ** 2
    return lower, upper


def hexagonal_red2_bounds(eps: float = DEFAULT_EPS):
    """Sharp ``(A, B)`` for the hexagonal lattice at density 2 via cubic thetas."""
    t = 2 * math.pi / math.sqrt(3)
    a = cubic_theta("a", t, eps)
    b = cubic_theta("b", t, eps)
    c = cubic_theta("c", t, eps)
    if abs(b - c) >= 1e-12:
        raise ArithmeticError(f"b and c disagree: {b!r} vs {c!r}")
    lower, upper = 2 * b, 2 * a
    if abs(upper**3 - 2 * lower**3) >= 1e-12:
        raise ArithmeticError("B^3 = 2 A^3 fails")
    return lower, upper


def _known_lower(cfg: GaborConfig):
    if cfg.n != 1:
        return None
    q = quadratic_form(cfg.lattice)
    if forms_equivalent(q, SQUARE_FORM, 1e-9):
        return 2.0 * jacobi_theta(4, 1.0) ** 2
    if forms_equivalent(q, HEXAGONAL_FORM, 1e-9):
        return hexagonal_red2_bounds()[0]
    return None


def report(cfg: GaborConfig, grid_n: int = 96, eps: float = DEFAULT_EPS) -> FrameBoundReport:
    """Run all three upper-bound routes and the grid lower bound."""
    even, spec_even = upper_bound_even(cfg, eps, full_output=True)
    th, spec_th = upper_bound_theta_route(cfg, eps, full_output=True)
    amb, spec_amb = upper_bound_ambiguity_route(cfg, eps, full_output=True)
    routes = {"even": even, "theta": th, "ambiguity": amb}
    tails = {
        "even": 2 * cfg.n * spec_even.certified_tail,
        "theta": 2 * spec_th.certified_tail,
        "ambiguity": 2 * spec_amb.certified_tail,
    }
    vals = list(routes.values())
    spread = max(vals) - min(vals)

    grid_vals = _grid_values(cfg, grid_n, eps)
    imax = np.unravel_index(np.argmax(grid_vals), grid_vals.shape)
    argmax = (float(imax[0]) / grid_n, float(imax[1]) / grid_n)
    lower_grid, argmin = lower_bound_grid(cfg, grid_n, eps)

    notes = []
    known = _known_lower(cfg)
    if known is not None:
        lower, source = known, "closed-form"
    else:
        lower, source = lower_grid, "grid"
        notes.append(f"lower bound is a grid estimate (grid_n={grid_n}, simplex refined)")
    return FrameBoundReport(
        upper=even,
        lower=lower,
        lower_source=source,
        condition=even / lower,
        argmax=argmax,
        argmin=argmin,
        route_spread=spread,
        routes=routes,
        route_tails=tails,
        truncation=spec_even,
        lower_grid=lower_grid,
        grid_n=grid_n,
        notes=notes,
    )
