"""Geometry of the upper half-plane.

Points are t + iu with u > 0.  The centroid of a root set is computed from
the closed forms (a (1/y)-weighted mean in each of t and |z|^2); exact
rational arithmetic is used whenever the inputs are exact, so lattice-point
databases get exact t-coordinates and only the final square root is a float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ConvergenceError, DomainError
from .forms import UnimodularMatrix


def _exact(v) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


@dataclass(frozen=True)
class UhpPoint:
    """Point t + iu of the upper half-plane; u > 0."""

    t: object
    u: object

    def __post_init__(self):
        t, u = self.t, self.u
        if not _exact(t):
            t = float(t)
        if not _exact(u):
            u = float(u)
        if u <= 0:
            raise ValueError(f"imaginary part must be positive, got {u}")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "u", u)

    def as_complex(self) -> complex:
        return complex(float(self.t), float(self.u))


@dataclass(frozen=True)
class CentroidResult:
    """Hyperbolic centroid plus the convex weights and the centroid quadratic."""

    point: UhpPoint
    weights: tuple
    quadratic: object  # QuadraticForm

    def __post_init__(self):
        s = sum(self.weights)
        if any(w <= 0 for w in self.weights) or abs(float(s) - 1.0) > 1e-12:
            raise ValueError("centroid weights must be positive and sum to 1")


def nint(x, mode: str = "away") -> int:
    """Round to the nearest integer; `mode` picks the half-way convention:
    'away' (default) from zero, 'even' banker's, 'zero' toward zero,
    'up' toward +infinity, 'up-2dp' half-up after a 2-decimal pre-round
    (the convention of the reference comparison runs).  Exact for
    Fraction/int input."""
    if mode == "up-2dp":
        return math.floor(round(float(x), 2) + 0.5)
    x = Fraction(x)  # exact, also for floats (binary expansion)
    num, den = x.numerator, x.denominator
    if mode == "away":
        q = (2 * abs(num) + den) // (2 * den)
        return q if num >= 0 else -q
    if mode == "zero":
        q = (2 * abs(num) + den - 1) // (2 * den)
        return q if num >= 0 else -q
    if mode == "up":
        return (2 * num + den) // (2 * den)
    if mode == "even":
        q, r = divmod(num, den)
        if 2 * r < den:
            return q
        if 2 * r > den:
            return q + 1
        return q if q % 2 == 0 else q + 1
    raise ValueError(f"unknown rounding mode {mode!r}")


def mobius(M: UnimodularMatrix, z: UhpPoint) -> UhpPoint:
    """Direct fractional-linear map w = (a*z + b)/(c*z + d)."""
    if M.c == 0:
        # a*d = 1 forces a = d = +-1, so this is the exact translation z + b*d
        return UhpPoint(z.t + M.b * M.d, z.u)
    t, u = float(z.t), float(z.u)
    den = (M.c * t + M.d) ** 2 + (M.c * u) ** 2
    wt = ((M.a * t + M.b) * (M.c * t + M.d) + M.a * M.c * u * u) / den
    return UhpPoint(wt, u / den)


def right_action(z: UhpPoint, M: UnimodularMatrix) -> UhpPoint:
    """The right action z*M = M^{-1}(z) used throughout the reduction theory."""
    return mobius(M.inverse(), z)


def dist_h(z: UhpPoint, w: UhpPoint) -> float:
    """Hyperbolic distance, via cosh d = 1 + |z - w|^2 / (2 * Im z * Im w)."""
    dt = float(z.t) - float(w.t)
    du = float(z.u) - float(w.u)
    arg = 1.0 + (dt * dt + du * du) / (2.0 * float(z.u) * float(w.u))
    return math.acosh(max(1.0, arg))


def psi(x: Sequence, y: Sequence):
    """The (1/y)-weighted mean of x: sum_i (prod_{k!=i} y_k / s_{n-1}) x_i.

    Exact (Fraction) when every input is exact, float otherwise.  The value
    always lies in [min x, max x]."""
    if len(x) != len(y):
        raise ValueError("x and y must have the same length")
    if not x:
        raise ValueError("psi of empty vectors")
    if any(v <= 0 for v in y):
        raise ValueError("weights y must be positive")
    if all(_exact(v) for v in x) and all(_exact(v) for v in y):
        prods = []
        for i in range(len(y)):
            p = 1
            for k, v in enumerate(y):
                if k != i:
                    p *= v
            prods.append(p)
        s = sum(prods)
        return Fraction(sum(p * xi for p, xi in zip(prods, x)), 1) / s
    inv = [1.0 / float(v) for v in y]
    s = sum(inv)
    return sum(wi * float(xi) for wi, xi in zip(inv, x)) / s


def center_of_mass(points: Sequence[UhpPoint]) -> UhpPoint:
    """Coordinatewise arithmetic mean of the points."""
    if not points:
        raise ValueError("center of mass of no points")
    n = len(points)
    ts = [p.t for p in points]
    us = [p.u for p in points]
    if all(_exact(v) for v in ts + us):
        return UhpPoint(Fraction(sum(ts), n), Fraction(sum(us), n))
    return UhpPoint(sum(float(v) for v in ts) / n, sum(float(v) for v in us) / n)


def _centroid_weights(ys: Sequence):
    if all(_exact(v) for v in ys):
        prods = []
        for i in range(len(ys)):
            p = 1
            for k, v in enumerate(ys):
                if k != i:
                    p *= v
            prods.append(p)
        s = sum(prods)
        return tuple(Fraction(p, 1) / s for p in prods)
    inv = [1.0 / float(v) for v in ys]
    s = sum(inv)
    return tuple(w / s for w in inv)


def hyperbolic_centroid(points: Sequence[UhpPoint]) -> CentroidResult:
    """The unique minimizer of sum_j ((t-x_j)^2 + (u-y_j)^2) / (u*y_j).

    Closed form: t = psi(x, y), |C|^2 = psi(|z|^2, y), u^2 = |C|^2 - t^2;
    the centroid quadratic is the same convex combination of the root
    quadratics [1, -2x_j, |z_j|^2]."""
    if not points:
        raise ValueError("centroid of no points")
    xs = [p.t for p in points]
    ys = [p.u for p in points]
    t = psi(xs, ys)
    normsq = psi([x * x + y * y for x, y in zip(xs, ys)], ys)
    usq = normsq - t * t
    assert usq > 0, "centroid norm defect is positive for interior points"
    u = math.sqrt(float(usq))
    weights = _centroid_weights(ys)

    from .quad import QuadraticForm  # deferred: quad imports hyper

    one = Fraction(1) if _exact(t) else 1.0
    quadratic = QuadraticForm(one, -2 * t, normsq)
    return CentroidResult(point=UhpPoint(t, u), weights=weights, quadratic=quadratic)


def centroid_from_factors(a: Sequence, b: Sequence) -> CentroidResult:
    """Centroid of the roots of prod_i (X^2 + a_i*X*Z + b_i*Z^2).

    Each factor must be positive definite (4*b_i > a_i^2); its root pair is
    (-a_i/2, d_i/2) with d_i = sqrt(4*b_i - a_i^2).  The explicit u^2
    double-sum formula is evaluated alongside and must agree with
    u^2 = |C|^2 - t^2."""
    if len(a) != len(b):
        raise ValueError("factor vectors must have the same length")
    if not a:
        raise ValueError("no factors")
    ds = []
    for ai, bi in zip(a, b):
        disc = 4 * bi - ai * ai
        if disc <= 0:
            raise DomainError(f"factor x^2 + {ai}xz + {bi}z^2 is not positive definite")
        if _exact(disc):
            r = math.isqrt(int(disc)) if isinstance(disc, int) else None
            if r is not None and r * r == disc:
                ds.append(r)
                continue
        ds.append(math.sqrt(float(disc)))
    points = []
    for ai, di in zip(a, ds):
        x = Fraction(-ai, 2) if _exact(ai) else -float(ai) / 2
        y = Fraction(di, 2) if _exact(di) else float(di) / 2
        points.append(UhpPoint(x, y))
    res = hyperbolic_centroid(points)

    # Cross-check against the explicit double-sum formula for u^2.
    n = len(ds)
    dsf = [float(v) for v in ds]
    af = [float(v) for v in a]
    prods = [math.prod(dsf[:i] + dsf[i + 1:]) for i in range(n)]
    s = sum(prods)
    pair_sum = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            pij = math.prod(dsf[k] for k in range(n) if k != i and k != j)
            pair_sum += pij * (af[i] - af[j]) ** 2
    u2_explicit = math.prod(dsf) * (s * sum(dsf) + pair_sum) / (4.0 * s * s)
    u2_psi = float(res.point.u) ** 2
    if not math.isclose(u2_explicit, u2_psi, rel_tol=1e-9):
        raise ConvergenceError(
            f"centroid u^2 mismatch: psi route {u2_psi} vs explicit {u2_explicit}"
        )
    return res


def reduce_to_fundamental(z: UhpPoint, max_iter: int = 10000):
    """Move z into |Re| <= 1/2, |z| >= 1 by translations and inversions.

    Returns (z', M) where z' = mobius(M.inverse(), z); equivalently z' is the
    right action of M on z, so transform(f, M) is the reduced form when z is
    the zero of f.  Boundary points are normalized to the Re >= 0
    representative."""
    t, u = z.t, z.u
    N = UnimodularMatrix.identity()
    S = UnimodularMatrix.inversion()
    for _ in range(max_iter):
        m = nint(t, "away")
        if m != 0:
            t = t - m
            N = UnimodularMatrix.translation(-m) @ N
        normsq = t * t + u * u
        if normsq < 1:
            scale = float(normsq)
            t = -float(t) / scale
            u = float(u) / scale
            N = S @ N
        else:
            break
    else:
        raise ConvergenceError(f"fundamental-domain reduction did not settle for {z}")
    if 2 * t == -1:
        t = t + 1
        N = UnimodularMatrix.translation(1) @ N
    if t * t + u * u == 1 and t < 0:
        t = -t
        N = S @ N
    return UhpPoint(t, u), N.inverse()
