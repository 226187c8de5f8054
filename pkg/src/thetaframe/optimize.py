"""Minimisation of the upper frame bound over shear and lattice shape.

At fixed density ``2n`` a lattice up to rotation and change of basis is
described by ``(alpha, gamma)`` with ``beta = 1/(2 n alpha)``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from ._search import golden_section
from .errors import ConvergenceFailure, DensityMismatch, HypothesisViolated
from .framebounds import upper_bound_params
from .lattice import HEXAGONAL_FORM, Lattice2D, QuadraticForm, forms_equivalent
from .theta import DEFAULT_EPS, _radius_for, gaussian_tail_1d, lattice_theta

DENSITY_TOL = 1e-9


@dataclass
class ScanResult:
    gammas: np.ndarray
    values: np.ndarray
    argmin: float
    min_value: float

    def as_dict(self) -> dict:
        return {
            "gamma": self.gammas.tolist(),
            "B": self.values.tolist(),
            "argmin": self.argmin,
            "min_value": self.min_value,
        }


def _check_density(alpha: float, beta: float, n: int):
    if abs(2 * n * alpha * beta - 1.0) > DENSITY_TOL:
        raise DensityMismatch(
            f"alpha*beta={alpha * beta!r} is not 1/(2n) for n={n}"
        )


def scan_gamma(alpha: float, beta: float, n: int, samples: int = 64,
               eps: float = DEFAULT_EPS) -> ScanResult:
    """Upper bound on a uniform grid over one shear period ``[0, beta/alpha)``."""
    if samples < 16:
        raise ValueError(f"samples must be >= 16, got {samples}")
    _check_density(alpha, beta, n)
    period = beta / alpha
    gammas = period * np.arange(samples) / samples
    values = np.array([upper_bound_params(alpha, beta, g, n, eps) for g in gammas])
    i = int(np.argmin(values))  # first occurrence: smaller gamma wins ties
    return ScanResult(gammas, values, float(gammas[i]), float(values[i]))


def _shear_part(alpha: float, beta: float, n: int, eps: float = 1e-17):
    """Shear-dependent part of B, up to a positive factor.

    Poisson summation in one index gives

        B = 2n sqrt(2) alpha sum_{k,l} exp(-2 pi alpha^2 (l^2 + n^2 k^2)) cos(2 pi k l r gamma)

    with ``r = alpha/beta``.  Dropping the ``k l = 0`` terms leaves a function
    of gamma whose minimiser is that of B but whose scale is not swamped by
    the constant part, which keeps the flat minimum resolvable.
    """
    tk = 2 * math.pi * alpha * alpha * n * n
    tl = 2 * math.pi * alpha * alpha
    kk, _ = _radius_for(tk, eps, 0.0, tail=gaussian_tail_1d)
    kl, _ = _radius_for(tl, eps, 0.0, tail=gaussian_tail_1d)
    k = np.arange(1, kk + 1, dtype=float)
    l = np.arange(1, kl + 1, dtype=float)
    weight = np.outer(np.exp(-tk * k * k), np.exp(-tl * l * l))
    kl_prod = np.outer(k, l)
    r = alpha / beta

    def part(gamma):
        return float(np.sum(weight * np.cos(2 * math.pi * r * gamma * kl_prod)))

    return part


def minimize_gamma(alpha: float, beta: float, n: int, tol: float = 1e-8,
                   eps: float = DEFAULT_EPS, bracket=None):
    """Shear minimising B at fixed ``(alpha, beta)``.

    Golden-section search on ``[0, beta/(2 alpha)]`` (B is symmetric about
    the half period).  Emits :class:`HypothesisViolated` when
    ``alpha < 1/(sqrt(2) sqrt(2n))``, where the minimiser is not known to lie
    at the half period.

    Returns
    -------
    gamma_star, B_star : float
    """
    _check_density(alpha, beta, n)
    if alpha < 1 / (math.sqrt(2) * math.sqrt(2 * n)) * (1 - 1e-12):
        warnings.warn(
            f"alpha={alpha!r} below 1/(sqrt(2) sqrt(2n)); minimiser location not guaranteed",
            HypothesisViolated,
            stacklevel=2,
        )
    lo, hi = bracket if bracket is not None else (0.0, beta / (2 * alpha))
    gamma_star, _, _ = golden_section(_shear_part(alpha, beta, n), lo, hi, tol=tol)
    return gamma_star, upper_bound_params(alpha, beta, gamma_star, n, eps)


def _alpha_window(n: int):
    r = math.sqrt(2 * n)
    return 1 / (math.sqrt(2) * r), 2 / r


def minimize_lattice(n: int, tol: float = 1e-8, eps: float = DEFAULT_EPS,
                     coarse: int = 24, max_iter: int = 10_000):
    """Lattice of density ``2n`` with the smallest upper frame bound.

    A coarse grid over ``alpha`` in ``[1/(sqrt 2 sqrt 2n), 2/sqrt 2n]`` and
    ``gamma`` in ``[0, beta/(2 alpha)]`` seeds a Nelder-Mead refinement in
    ``(alpha, gamma)``.

    Returns
    -------
    lattice : Lattice2D
        Canonical form of the optimum.
    B_star : float
    """
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")

    def objective(p):
        a, g = p
        if a <= 0:
            return math.inf
        return upper_bound_params(a, 1 / (2 * n * a), g, n, eps)

    lo, hi = _alpha_window(n)
    best = None
    for a in np.linspace(lo, hi, coarse):
        b = 1 / (2 * n * a)
        for g in np.linspace(0.0, b / (2 * a), coarse):
            v = objective((a, g))
            # ties: smaller gamma, then smaller alpha
            key = (v, g, a)
            if best is None or key < best:
                best = key
    start = np.array([best[2], best[1]])
    step = (hi - lo) / coarse
    simplex = np.array([start, start + [step, 0.0], start + [0.0, step]])
    res = minimize(objective, start, method="Nelder-Mead",
                   options={"xatol": tol, "fatol": 1e-15, "maxiter": max_iter,
                            "maxfev": 4 * max_iter, "initial_simplex": simplex})
    if res.nit >= max_iter or not res.success:
        raise ConvergenceFailure(f"simplex refinement failed: {res.message}")
    a, g = res.x
    lat = Lattice2D.from_params(a, 1 / (2 * n * a), g).canonical()
    return lat, float(res.fun)


@dataclass
class MontgomeryReport:
    rhos: list
    grid_n: int
    forms_checked: int
    min_margin: dict
    argmin_form: dict
    violations: list = field(default_factory=list)
    equality_points: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations and all(e["hex_equivalent"] for e in self.equality_points)

    def as_dict(self) -> dict:
        return {
            "rhos": list(self.rhos),
            "grid_n": self.grid_n,
            "forms_checked": self.forms_checked,
            "min_margin": {str(k): v for k, v in self.min_margin.items()},
            "argmin_form": {str(k): list(v) for k, v in self.argmin_form.items()},
            "violations": list(self.violations),
            "equality_points": list(self.equality_points),
            "passed": self.passed,
        }


def reduced_form_grid(grid_n: int, a_min: float = 0.05):
    """Reduced forms ``0 <= b <= a <= c`` with discriminant exactly -1.

    ``a`` runs over ``[a_min, 1/sqrt(3)]``; for each ``a`` the admissible ``b``
    interval is sampled at ``grid_n`` points and ``c = (b^2 + 1)/(4a)``.  The
    last row collapses onto the hexagonal form.
    """
    forms = {}
    for a in np.linspace(a_min, 1 / math.sqrt(3), grid_n):
        b_lo = math.sqrt(max(0.0, 4 * a * a - 1))
        for b in np.linspace(min(b_lo, a), a, grid_n):
            q = QuadraticForm(float(a), float(b), float((b * b + 1) / (4 * a)))
            forms.setdefault(tuple(q), q)
    return list(forms.values())


def verify_montgomery(rho_list, grid_n: int = 20, eps: float = DEFAULT_EPS,
                      tol: float = 1e-12) -> MontgomeryReport:
    """Check ``theta_q(rho) >= theta_h(rho)`` over a grid of reduced forms."""
    if grid_n < 10:
        raise ValueError("grid_n must be >= 10")
    rhos = [float(r) for r in rho_list]
    if any(r <= 0 for r in rhos):
        raise ValueError("rho values must be positive")
    forms = reduced_form_grid(grid_n)
    rep = MontgomeryReport(rhos, grid_n, len(forms), {}, {})
    for rho in rhos:
        th_h = lattice_theta(HEXAGONAL_FORM, rho, eps)[0]
        margins = np.array([lattice_theta(q, rho, eps)[0] - th_h for q in forms])
        i = int(np.argmin(margins))
        rep.min_margin[rho] = float(margins[i])
        rep.argmin_form[rho] = tuple(forms[i])
        for q, m in zip(forms, margins):
            if m < -tol:
                rep.violations.append({"rho": rho, "form": list(q), "margin": float(m)})
            if abs(m) <= 2 * tol:
                rep.equality_points.append({
                    "rho": rho, "form": list(q), "margin": float(m),
                    "hex_equivalent": forms_equivalent(q, HEXAGONAL_FORM, 1e-9),
                })
    return rep
