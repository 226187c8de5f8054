"""Planar lattices, their Gram matrices and binary quadratic forms.

A lattice is stored through its lower-triangular generator

    S = [[alpha,         0],
         [alpha * gamma, beta]]

so that ``Lambda = S Z^2``.  Any full-rank generator can be brought to this
shape by discarding the orthogonal factor of a QR-type decomposition.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DiscriminantMismatch, SingularMatrix

_TIE_RTOL = 1e-12


@dataclass(frozen=True)
class Lattice2D:
    """Full-rank planar lattice with generator ``[[s11, 0], [s21, s22]]``."""

    s11: float
    s21: float
    s22: float

    def __post_init__(self):
        if not (self.s11 > 0 and self.s22 > 0):
            raise ValueError(f"diagonal entries must be positive, got {self.s11}, {self.s22}")

    @classmethod
    def from_params(cls, alpha: float, beta: float, gamma: float) -> "Lattice2D":
        """Sheared lattice with raw shear ``gamma`` (no periodic reduction)."""
        return cls(float(alpha), float(alpha) * float(gamma), float(beta))

    @property
    def alpha(self) -> float:
        return self.s11

    @property
    def beta(self) -> float:
        return self.s22

    @property
    def gamma(self) -> float:
        return self.s21 / self.s11

    @property
    def volume(self) -> float:
        return self.s11 * self.s22

    @property
    def density(self) -> float:
        return 1.0 / self.volume

    @property
    def shear_period(self) -> float:
        return self.s22 / self.s11

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.s11, 0.0], [self.s21, self.s22]])

    def canonical(self) -> "Lattice2D":
        """Same lattice with the shear reduced into ``[0, beta/alpha)``."""
        p = self.shear_period
        g = self.gamma % p
        if g >= p or math.isclose(g, p, rel_tol=1e-14):
            g = 0.0
        return Lattice2D(self.s11, self.s11 * g, self.s22)

    def scaled(self, factor: float) -> "Lattice2D":
        return Lattice2D(self.s11 * factor, self.s21 * factor, self.s22 * factor)

    def points(self, radius: int) -> np.ndarray:
        """Lattice points ``S (k, l)`` for ``|k|, |l| <= radius``, shape (m, 2)."""
        idx = np.arange(-radius, radius + 1)
        k, l = np.meshgrid(idx, idx, indexing="ij")
        kl = np.stack([k.ravel(), l.ravel()]).astype(float)
        return (self.matrix @ kl).T


@dataclass(frozen=True)
class GramMatrix:
    g11: float
    g12: float
    g22: float

    @property
    def det(self) -> float:
        return self.g11 * self.g22 - self.g12 * self.g12

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.g11, self.g12], [self.g12, self.g22]])

    def is_positive_definite(self) -> bool:
        return self.g11 > 0 and self.g22 > 0 and self.det > 0


@dataclass(frozen=True)
class QuadraticForm:
    """``q(u1, u2) = a u1^2 + b u1 u2 + c u2^2``."""

    a: float
    b: float
    c: float

    @property
    def discriminant(self) -> float:
        return self.b * self.b - 4.0 * self.a * self.c

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b / 2.0], [self.b / 2.0, self.c]])

    @property
    def min_eigenvalue(self) -> float:
        # closed form is more accurate than eigvalsh for nearly-degenerate forms
        half_trace = 0.5 * (self.a + self.c)
        det = self.a * self.c - 0.25 * self.b * self.b
        root = math.hypot(0.5 * (self.a - self.c), 0.5 * self.b)
        big = half_trace + root
        return det / big

    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.discriminant < 0

    def __call__(self, u1, u2):
        return self.a * u1 * u1 + self.b * u1 * u2 + self.c * u2 * u2

    def __iter__(self):
        yield self.a
        yield self.b
        yield self.c

    def rebase(self, basis) -> "QuadraticForm":
        """Form ``v -> q(basis @ v)``."""
        m = np.asarray(basis, dtype=float)
        g = m.T @ self.matrix @ m
        return QuadraticForm(g[0, 0], 2.0 * g[0, 1], g[1, 1])

    def normalized(self) -> "QuadraticForm":
        """Positive multiple of this form with discriminant -1."""
        s = 1.0 / math.sqrt(-self.discriminant)
        return QuadraticForm(self.a * s, self.b * s, self.c * s)


HEXAGONAL_FORM = QuadraticForm(1 / math.sqrt(3), 1 / math.sqrt(3), 1 / math.sqrt(3))


def from_matrix(m11: float, m12: float, m21: float, m22: float) -> Lattice2D:
    """Canonical lattice generated by ``[[m11, m12], [m21, m22]]``.

    The second column becomes ``(0, beta)`` after an orthogonal change of
    coordinates; the shear is then reduced into ``[0, beta/alpha)``.
    """
    det = m11 * m22 - m12 * m21
    scale = max(abs(m11), abs(m12), abs(m21), abs(m22))
    if abs(det) <= 1e-14 * scale * scale:
        raise SingularMatrix(f"generator is singular (det={det!r})")
    s22 = math.hypot(m12, m22)
    s21 = (m11 * m12 + m21 * m22) / s22
    s11 = abs(det) / s22
    return Lattice2D(s11, s21, s22).canonical()


def hexagonal(n: int) -> Lattice2D:
    """Hexagonal lattice of density ``2n`` (shear ``1/sqrt(3)``)."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    r = math.sqrt(2 * n)
    q3 = 3 ** 0.25
    alpha = q3 / (math.sqrt(2) * r)
    beta = math.sqrt(2) / (q3 * r)
    return Lattice2D.from_params(alpha, beta, 1 / math.sqrt(3))


def square(n: int) -> Lattice2D:
    if n < 1:
        raise ValueError("n must be a positive integer")
    side = 1 / math.sqrt(2 * n)
    return Lattice2D(side, 0.0, side)


def gram(lat: Lattice2D) -> GramMatrix:
    a, g, b = lat.alpha, lat.gamma, lat.beta
    return GramMatrix((1 + g * g) * a * a, a * b * g, b * b)


def adjoint(lat: Lattice2D) -> Lattice2D:
    """Adjoint lattice ``vol(L)^-1 L``; an involution."""
    return lat.scaled(1.0 / lat.volume)


def quadratic_form(lat: Lattice2D) -> QuadraticForm:
    """Gram form of ``lat`` rescaled to discriminant -1.

    For volume ``1/(2n)`` this is ``n`` times the Gram form.
    """
    g = gram(lat)
    s = 1.0 / (2.0 * lat.volume)
    return QuadraticForm(g.g11 * s, 2.0 * g.g12 * s, g.g22 * s)


def reduction(q: QuadraticForm, tie_rtol: float = _TIE_RTOL, max_iter: int = 10_000):
    """Lagrange-Gauss reduction of a positive definite binary form.

    Boundary cases ``|b| = a`` and ``a = c`` are detected up to a relative
    ``tie_rtol`` and resolved towards ``b >= 0``.

    Returns
    -------
    reduced : QuadraticForm
        Equivalent form with ``|b| <= a <= c``; ``b >= 0`` on the boundary.
    basis : ndarray of int, shape (2, 2)
        Unimodular matrix with ``reduced(v) == q(basis @ v)``.
    """
    if not q.is_positive_definite():
        raise ValueError(f"form {q} is not positive definite")
    disc = q.discriminant
    a, b, c = q.a, q.b, q.c

    def _tie(x, y, scale):
        return abs(x - y) <= tie_rtol * scale

    basis = np.eye(2, dtype=np.int64)
    shift = lambda t: np.array([[1, t], [0, 1]], dtype=np.int64)  # noqa: E731
    swap = np.array([[0, -1], [1, 0]], dtype=np.int64)

    for _ in range(max_iter):
        t = -round(b / (2.0 * a))
        if t != 0:
            b, c = b + 2.0 * a * t, a * t * t + b * t + c
            basis = basis @ shift(t)
        if c < a and not _tie(a, c, a):
            a, b, c = c, -b, a
            basis = basis @ swap
            continue
        break
    else:  # pragma: no cover - reduction halts in O(log) steps
        raise RuntimeError("reduction did not terminate")

    if b < 0:
        if _tie(-b, a, a):
            b, c = b + 2.0 * a, a + b + c
            basis = basis @ shift(1)
        elif _tie(a, c, a):
            a, b, c = c, -b, a
            basis = basis @ swap
    c = (b * b - disc) / (4.0 * a)
    return QuadraticForm(a, b, c), basis


def exact_rebase(q: QuadraticForm, basis) -> QuadraticForm:
    """``q(basis @ v)`` with coefficients rounded once from exact rationals.

    Skewed forms lose digits when rebased in floating point; doing the
    integer change of basis in rational arithmetic avoids that.
    """
    a, b, c = (Fraction(x) for x in q)
    (p, r), (s, t) = ((int(x) for x in row) for row in np.asarray(basis))
    # columns (p, s) and (r, t)
    na = a * p * p + b * p * s + c * s * s
    nb = 2 * a * p * r + b * (p * t + r * s) + 2 * c * s * t
    nc = a * r * r + b * r * t + c * t * t
    return QuadraticForm(float(na), float(nb), float(nc))


def reduce_form(q: QuadraticForm, tie_rtol: float = _TIE_RTOL) -> QuadraticForm:
    return reduction(q, tie_rtol)[0]


def forms_equivalent(q1: QuadraticForm, q2: QuadraticForm, tol: float = 1e-9) -> bool:
    """True when both forms reduce to the same triple within ``tol``."""
    d1, d2 = q1.discriminant, q2.discriminant
    if abs(d1 - d2) > tol:
        raise DiscriminantMismatch(f"discriminants differ: {d1!r} vs {d2!r}")
    r1 = reduce_form(q1, tol / q1.a)
    r2 = reduce_form(q2, tol / q2.a)
    variants = [tuple(r1)]
    # on the boundary of the reduced domain (a, b, c) ~ (a, -b, c)
    if abs(abs(r1.b) - r1.a) <= tol or abs(r1.c - r1.a) <= tol:
        variants.append((r1.a, -r1.b, r1.c))
    return any(all(abs(x - y) <= tol for x, y in zip(v, r2)) for v in variants)


def random_sl2z(rng: np.random.Generator, max_entry: int = 5) -> np.ndarray:
    """Random integer matrix with determinant 1 and entries bounded by ``max_entry``."""
    while True:
        m = rng.integers(-max_entry, max_entry + 1, size=(2, 2))
        if m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0] == 1:
            return m
