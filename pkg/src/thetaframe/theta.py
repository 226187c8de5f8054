"""Theta series with certified truncation.

Every series here is a sum of ``exp(-pi * v^T M v)`` over (shifted) integer
points, optionally weighted by a character ``exp(2 pi i k . x)``.  The sums
are cut to the box ``max(|k|, |l|) <= K`` and the omitted mass is bounded via

    v^T M v >= lambda_min(M) |v|^2

together with a geometric majorant of the one-dimensional Gaussian tail.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import kernels
from .errors import NonPositiveParameter, TruncationOverflow
from .lattice import HEXAGONAL_FORM, QuadraticForm, exact_rebase, reduction

DEFAULT_EPS = 1e-15
MAX_RADIUS = 1_000_000
PARAM_MIN, PARAM_MAX = 1e-6, 1e6


@dataclass(frozen=True)
class TruncationSpec:
    """Summation radius ``K`` and an upper bound on the omitted tail."""

    epsilon: float
    radius: int
    certified_tail: float

    def __post_init__(self):
        if self.radius < 1:
            raise ValueError("radius must be >= 1")
        if not self.certified_tail <= self.epsilon:
            raise ValueError("certified tail exceeds epsilon")

    def as_dict(self) -> dict:
        return {"epsilon": self.epsilon, "radius": self.radius,
                "certified_tail": self.certified_tail}


def _check_param(name: str, value: float, lo: float = PARAM_MIN, hi: float = PARAM_MAX):
    if not (lo <= value <= hi):
        raise NonPositiveParameter(f"{name}={value!r} outside [{lo:g}, {hi:g}]")


def _check_eps(eps: float):
    if not eps > 0:
        raise NonPositiveParameter(f"eps must be positive, got {eps!r}")


def gaussian_tail_1d(t: float, radius: int, shift: float = 0.0) -> float:
    """Upper bound on ``sum_{|k| > radius} exp(-t (k + s)^2)`` for ``|s| <= shift <= 1/2``."""
    d = radius + 1 - shift
    first = math.exp(-t * d * d)
    ratio_gap = -math.expm1(-t * (2.0 * d + 1.0))
    return 2.0 * first / ratio_gap


def _tail_2d(t: float, radius: int, shift: float) -> float:
    full = 1.0 + math.sqrt(math.pi / t)  # max + integral bounds any shifted 1D sum
    return 2.0 * gaussian_tail_1d(t, radius, shift) * full


def _radius_for(t: float, eps: float, shift: float, tail=_tail_2d) -> tuple[int, float]:
    if t <= 0:
        raise NonPositiveParameter("quadratic form is not positive definite")
    full = 1.0 + math.sqrt(math.pi / t)
    guess = math.sqrt(max(math.log(8.0 * full / eps), 0.0) / t) + shift - 1.0
    if guess > MAX_RADIUS:
        raise TruncationOverflow(f"required radius ~{guess:.3g} exceeds {MAX_RADIUS}")
    k = max(1, int(guess) - 1)
    while tail(t, k, shift) >= eps:
        k += 1
        if k > MAX_RADIUS:
            raise TruncationOverflow(f"required radius exceeds {MAX_RADIUS}")
    while k > 1 and tail(t, k - 1, shift) < eps:
        k -= 1
    return k, tail(t, k, shift)


def _min_eig(m: np.ndarray) -> float:
    return QuadraticForm(m[0, 0], 2.0 * m[0, 1], m[1, 1]).min_eigenvalue


def gaussian_sum(matrix, eps: float = DEFAULT_EPS, shift=(0.0, 0.0), points=None):
    """Certified sum of ``exp(-pi Q(v + shift)) exp(2 pi i k . x)``.

    Parameters
    ----------
    matrix : array_like, shape (2, 2)
        Symmetric positive definite ``M`` with ``Q(v) = v^T M v``.
    eps : float
        Target bound on the omitted mass (per point, characters included).
    shift : pair of float
        Offset added to the summation index; each component in ``[-1/2, 1/2]``.
    points : array_like, shape (p, 2), optional
        Character arguments ``x``; default is the single point ``(0, 0)``.

    Returns
    -------
    values : ndarray of complex, shape (p,)
    spec : TruncationSpec
    """
    _check_eps(eps)
    m = np.asarray(matrix, dtype=float)
    s1, s2 = float(shift[0]), float(shift[1])
    smax = max(abs(s1), abs(s2))
    if smax > 0.5:
        raise ValueError("shift components must lie in [-1/2, 1/2]")
    t = math.pi * _min_eig(m)
    radius, bound = _radius_for(t, eps, smax)
    if points is None:
        pts = np.zeros((1, 2))
    else:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
    re, im = kernels.lattice_sum(m[0, 0], 0.5 * (m[0, 1] + m[1, 0]), m[1, 1], radius,
                                 s1, s2, pts[:, 0], pts[:, 1])
    return re + 1j * im, TruncationSpec(eps, radius, bound)


def jacobi_theta(kind: Literal[2, 3, 4], s: float, eps: float = DEFAULT_EPS) -> float:
    """Jacobi theta functions in the ``exp(-pi k^2 s)`` normalisation."""
    if s <= 0:
        raise NonPositiveParameter(f"s must be positive, got {s!r}")
    _check_param("s", s)
    shift = {2: 0.5, 3: 0.0, 4: 0.0}[kind]
    t = math.pi * s
    radius, _ = _radius_for(t, eps, shift, tail=gaussian_tail_1d)
    k = np.arange(-radius, radius + 1, dtype=float)
    terms = np.exp(-t * (k - shift) ** 2)
    if kind == 4:
        terms = terms * np.where(k % 2 == 0, 1.0, -1.0)
    # add from the outside in
    order = np.argsort(np.abs(k))[::-1]
    return float(math.fsum(terms[order]))


def truncation_radius(q: QuadraticForm, rho: float, eps: float = DEFAULT_EPS) -> int:
    return truncation_spec(q, rho, eps).radius


def truncation_spec(q: QuadraticForm, rho: float, eps: float = DEFAULT_EPS) -> TruncationSpec:
    _check_param("rho", rho)
    _check_eps(eps)
    if not q.is_positive_definite():
        raise NonPositiveParameter(f"form {q} is not positive definite")
    radius, bound = _radius_for(2.0 * math.pi * rho * q.min_eigenvalue, eps, 0.0)
    return TruncationSpec(eps, radius, bound)


def lattice_theta(q: QuadraticForm, rho: float, eps: float = DEFAULT_EPS):
    """``theta_q(rho) = sum exp(-2 pi rho q(k, l))`` and its truncation record."""
    _check_param("rho", rho)
    if not q.is_positive_definite():
        raise NonPositiveParameter(f"form {q} is not positive definite")
    # the sum is basis-independent; a reduced basis avoids cancellation in q(k, l)
    q = exact_rebase(q, reduction(q)[1])
    vals, spec = gaussian_sum(2.0 * rho * q.matrix, eps)
    return float(vals[0].real), spec


def montgomery_vartheta(r: float, s: float, c: float, eps: float = DEFAULT_EPS) -> float:
    """``sum_k exp(-c pi s k^2) sum_l exp(-(c pi / s)(l + k r)^2)``.

    Decreasing in ``r`` on ``(0, 1/2)`` for ``s >= 1/2``; other real ``r`` are
    accepted since the series converges for every shear.
    """
    if s <= 0 or c <= 0:
        raise NonPositiveParameter(f"s and c must be positive, got s={s!r}, c={c!r}")
    m = c * np.array([[s + r * r / s, r / s], [r / s, 1.0 / s]])
    vals, _ = gaussian_sum(m, eps)
    return float(vals[0].real)


_CUBIC = np.array([[1.0, 0.5], [0.5, 1.0]])


def cubic_theta(which: Literal["a", "b", "c"], t: float, eps: float = DEFAULT_EPS) -> float:
    """Cubic theta functions ``a, b, c`` at nome ``q = exp(-t)``.

    ``b`` uses the cosine weight ``cos(2 pi (k - l) / 3)``; the matching sine
    sum must cancel and is checked.
    """
    if t <= 0:
        raise NonPositiveParameter(f"t must be positive, got {t!r}")
    m = (t / math.pi) * _CUBIC
    if which == "a":
        vals, _ = gaussian_sum(m, eps)
    elif which == "b":
        vals, _ = gaussian_sum(m, eps, points=[(1 / 3, -1 / 3)])
        if abs(vals[0].imag) >= 1e-13:
            raise ArithmeticError(f"b(q) has imaginary residue {vals[0].imag!r}")
    elif which == "c":
        vals, _ = gaussian_sum(m, eps, shift=(1 / 3, 1 / 3))
    else:
        raise ValueError(f"unknown cubic theta {which!r}")
    return float(vals[0].real)


def hexagonal_theta(rho: float, eps: float = DEFAULT_EPS) -> float:
    return lattice_theta(HEXAGONAL_FORM, rho, eps)[0]
