"""Integer binary forms with exact coefficients.

A degree-n binary form f(x, y) = sum c_i x^(n-i) y^i is stored as the tuple
(c_0, ..., c_n) of Python integers, descending in the power of x.  All
coefficient arithmetic here is exact; only root finding is numeric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConvergenceError


@dataclass(frozen=True)
class BinaryForm:
    """Binary form with integer coefficients, descending x-power."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) < 2:
            raise ValueError("a binary form has degree >= 1")
        if not any(coeffs):
            raise ValueError("the zero form is not allowed")
        if coeffs[0] == 0 and coeffs[-1] == 0:
            raise ValueError("leading and trailing coefficients are both zero")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x, y):
        """Evaluate f(x, y) by homogeneous Horner."""
        acc = 0
        for i, c in enumerate(self.coeffs):
            acc = acc * x + c * y**i
        return acc

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.coeffs) + "]"


@dataclass(frozen=True)
class UnimodularMatrix:
    """2x2 integer matrix [[a, b], [c, d]] with determinant 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, int(getattr(self, name)))
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("matrix determinant must be 1")

    @classmethod
    def identity(cls) -> "UnimodularMatrix":
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, m: int) -> "UnimodularMatrix":
        """Matrix of the substitution x -> x + m*y."""
        return cls(1, m, 0, 1)

    @classmethod
    def inversion(cls) -> "UnimodularMatrix":
        """The order-4 element S; as a substitution (x, y) -> (-y, x)."""
        return cls(0, -1, 1, 0)

    def inverse(self) -> "UnimodularMatrix":
        return UnimodularMatrix(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: "UnimodularMatrix") -> "UnimodularMatrix":
        return UnimodularMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c


@dataclass(frozen=True)
class UpperRootSet:
    """Roots of a real form split into upper half-plane representatives and
    real roots; n = len(real) + 2*len(upper).  A root at infinity (leading
    coefficient zero) is reported as math.inf in `real`."""

    upper: tuple
    real: tuple[float, ...]
    repeated: bool = False

    @property
    def signature(self) -> tuple[int, int]:
        return (len(self.real), len(self.upper))


def content(f: BinaryForm) -> int:
    """gcd of the coefficients, always positive."""
    g = 0
    for c in f.coeffs:
        g = math.gcd(g, abs(c))
    return g


def primitive(f: BinaryForm) -> BinaryForm:
    """Divide out the content and make the leading nonzero coefficient positive."""
    g = content(f)
    coeffs = [c // g for c in f.coeffs]
    for c in coeffs:
        if c != 0:
            if c < 0:
                coeffs = [-x for x in coeffs]
            break
    return BinaryForm(tuple(coeffs))


def height(f: BinaryForm) -> int:
    """Naive height: max |c_i| of the primitive representative."""
    return max(abs(c) for c in primitive(f).coeffs)


def _conv(p: Sequence[int], q: Sequence[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def from_upper_roots(roots) -> BinaryForm:
    """Monic totally complex form with the given conjugate pairs of roots.

    Each root t + iu (integer t, integer u >= 1) contributes the factor
    x^2 - 2t*x*y + (t^2 + u^2)*y^2; the result has degree 2*len(roots).
    """
    if not roots:
        raise ValueError("need at least one root")
    coeffs = [1]
    for z in roots:
        t, u = z.t, z.u
        if t != int(t) or u != int(u):
            raise ValueError(f"root {z} does not have integer coordinates")
        if u < 1:
            raise ValueError(f"root {z} has imaginary part below 1")
        t, u = int(t), int(u)
        coeffs = _conv(coeffs, [1, -2 * t, t * t + u * u])
    return BinaryForm(tuple(coeffs))


def transform(f: BinaryForm, M: UnimodularMatrix) -> BinaryForm:
    """Coefficients of f(a*x + b*y, c*x + d*y), computed exactly.

    The action composes as transform(transform(f, M), N) = transform(f, M @ N),
    and transform(transform(f, M), M.inverse()) == f.
    """
    n = f.degree
    row = [[1]]  # powers of (a*x + b*y)
    for _ in range(n):
        row.append(_conv(row[-1], [M.a, M.b]))
    col = [[1]]  # powers of (c*x + d*y)
    for _ in range(n):
        col.append(_conv(col[-1], [M.c, M.d]))
    out = [0] * (n + 1)
    for i, coeff in enumerate(f.coeffs):
        if coeff == 0:
            continue
        term = _conv(row[n - i], col[i])
        for j, v in enumerate(term):
            out[j] += coeff * v
    return BinaryForm(tuple(out))


def shift(f: BinaryForm, m: int) -> BinaryForm:
    """f(x + m*y, y): the unimodular translation, via an in-place Taylor shift."""
    m = int(m)
    if m == 0:
        return f
    n = f.degree
    b = list(f.coeffs)
    for k in range(n):
        for j in range(1, n - k + 1):
            b[j] += m * b[j - 1]
    return BinaryForm(tuple(b))


def _horner2(coeffs: Sequence[int], z: complex):
    """p(z), p'(z) and a bound on the rounding error of the p(z) evaluation."""
    p = 0j
    dp = 0j
    e = 0.0
    az = abs(z)
    for c in coeffs:
        dp = dp * z + p
        p = p * z + c
        e = e * az + abs(p)
    return p, dp, e * 2.2e-16


def _polish_root(coeffs: Sequence[int], z: complex, steps: int = 3):
    """Newton against the exact integer coefficients, in doubles.

    Returns (root, ill) where ill means the evaluation rounding bound keeps
    the forward error above ~1e-13, i.e. doubles cannot certify this root."""
    for _ in range(steps):
        p, dp, _ = _horner2(coeffs, z)
        if dp == 0:
            break
        step = p / dp
        z = z - step
        if abs(step) < 1e-16 * (1 + abs(z)):
            break
    _, dp, ebound = _horner2(coeffs, z)
    ill = dp == 0 or ebound / abs(dp) > 1e-13 * (1 + abs(z))
    return z, ill


def _roots_high_precision(coeffs: Sequence[int]):
    """All roots at once by arbitrary-precision Durand-Kerner; None when the
    iteration does not converge (genuinely repeated roots)."""
    import mpmath as mp

    for dps, extraprec in ((40, 160), (80, 400)):
        try:
            with mp.workdps(dps):
                rs, err = mp.polyroots(coeffs, maxsteps=300,
                                       extraprec=extraprec, error=True)
                scale = 1 + max(abs(complex(z)) for z in rs)
                if err <= 1e-14 * scale:
                    return [complex(z) for z in rs]
        except (mp.libmp.NoConvergence, ZeroDivisionError):
            continue
    return None


def roots_upper(f: BinaryForm, tol: float = 1e-8) -> UpperRootSet:
    """Numeric roots of f split by half-plane.

    Roots with imaginary part above tol*(1 + |root|) are classified as upper,
    |Im| at most that threshold as real, the rest as lower-half conjugates.
    Leading zero coefficients become real roots at infinity.  Clustered
    configurations that double precision cannot separate are redone with an
    arbitrary-precision solver; raises ConvergenceError when conjugates still
    fail to pair up.
    """
    coeffs = list(f.coeffs)
    at_infinity = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        at_infinity += 1
    if len(coeffs) < 2:
        # f = c * y^n: the only root is at infinity, with multiplicity n.
        return UpperRootSet(upper=(), real=(math.inf,) * f.degree,
                            repeated=f.degree > 1)
    raw = np.roots([float(c) for c in coeffs])
    polished = [_polish_root(coeffs, complex(z)) for z in raw]
    roots = [z for z, _ in polished]
    if any(ill for _, ill in polished):
        redo = _roots_high_precision(coeffs)
        if redo is not None:
            roots = redo
    upper: list[complex] = []
    lower: list[complex] = []
    real: list[float] = []
    for z in roots:
        band = tol * (1 + abs(z))
        if abs(z.imag) <= band:
            real.append(z.real)
        elif z.imag > 0:
            upper.append(z)
        else:
            lower.append(z)
    if len(upper) != len(lower):
        raise ConvergenceError(
            f"could not pair conjugate roots of {f}: {len(upper)} upper vs "
            f"{len(lower)} lower at tol={tol}"
        )
    repeated = False
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if abs(roots[i] - roots[j]) <= tol * (1 + abs(roots[i])):
                repeated = True
    real.extend([math.inf] * at_infinity)

    from .hyper import UhpPoint  # deferred: forms is imported by hyper

    upper_pts = tuple(
        UhpPoint(z.real, z.imag) for z in sorted(upper, key=lambda w: (w.real, w.imag))
    )
    return UpperRootSet(upper=upper_pts, real=tuple(sorted(real)), repeated=repeated)
