"""End-to-end height reduction pipelines.

Every stage is monotone: it returns its input (primitive) unchanged when the
attempted transformation does not strictly lower the height.  Shifts here are
substitutions x -> x + m*y; moving a center at Re = t into the fundamental
strip therefore uses m = nint(t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .forms import (BinaryForm, UnimodularMatrix, height, primitive,
                    roots_upper, shift, transform)
from .hyper import UhpPoint, center_of_mass, hyperbolic_centroid, nint, \
    reduce_to_fundamental
from .julia import minimize_theta0

METHODS = ("julia", "hyperbolic", "com", "shift-descent", "scaling", "full")


@dataclass(frozen=True)
class ReductionReport:
    input: BinaryForm
    output: BinaryForm
    matrix: UnimodularMatrix
    scale: Fraction
    method: str
    input_height: int
    output_height: int
    zero_used: UhpPoint | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.output_height > self.input_height:
            raise ValueError("reduction increased the height")

    def to_json_dict(self) -> dict:
        zero = None
        if self.zero_used is not None:
            zero = [round(float(self.zero_used.t), 6),
                    round(float(self.zero_used.u), 6)]
        M = self.matrix
        return {
            "method": self.method,
            "input": [str(c) for c in self.input.coeffs],
            "output": [str(c) for c in self.output.coeffs],
            "matrix": [[M.a, M.b], [M.c, M.d]],
            "scale": str(self.scale),
            "input_height": self.input_height,
            "output_height": self.output_height,
            "zero_used": zero,
        }


def _finish(f: BinaryForm, candidate: BinaryForm, M: UnimodularMatrix,
            method: str, zero: UhpPoint | None = None,
            scale: Fraction = Fraction(1)) -> ReductionReport:
    """Keep the candidate only when it strictly lowers the height."""
    f0 = primitive(f)
    h0 = height(f0)
    cand = primitive(candidate)
    h1 = height(cand)
    if h1 < h0:
        return ReductionReport(f, cand, M, scale, method, h0, h1, zero)
    return ReductionReport(f, f0, UnimodularMatrix.identity(), Fraction(1),
                           method, h0, h0, zero)


def reduce_hyperbolic(f: BinaryForm, tol: float = 1e-8) -> ReductionReport:
    """Reduce a totally complex form by its hyperbolic centroid."""
    rootset = roots_upper(f, tol)
    if rootset.real:
        raise DomainError("hyperbolic reduction requires a form with no real roots")
    cent = hyperbolic_centroid(list(rootset.upper))
    _, M = reduce_to_fundamental(cent.point)
    return _finish(f, transform(f, M), M, "hyperbolic", cent.point)


def reduce_com(f: BinaryForm, tie: str = "away", tol: float = 1e-8) -> ReductionReport:
    """Shift by the rounded real part of the upper-root center of mass
    (the experimental stand-in for Julia reduction in the database runs)."""
    rootset = roots_upper(f, tol)
    if not rootset.upper:
        raise DomainError("center-of-mass reduction requires a non-real root")
    com = center_of_mass(list(rootset.upper))
    m = nint(com.t, tie)
    return _finish(f, shift(f, m), UnimodularMatrix.translation(m), "com", com)


def reduce_julia(f: BinaryForm, tol: float = 1e-10) -> ReductionReport:
    """True Julia reduction: move the theta_0 minimizer's zero into the
    fundamental domain."""
    res = minimize_theta0(f, tol=tol)
    _, M = reduce_to_fundamental(res.zero)
    return _finish(f, transform(f, M), M, "julia", res.zero)


def shift_direction(f: BinaryForm) -> set:
    """Which unit shifts lower the height: '+' for x -> x+y, '-' for x -> x-y."""
    h = height(f)
    out = set()
    if height(shift(f, 1)) < h:
        out.add("+")
    if height(shift(f, -1)) < h:
        out.add("-")
    return out


def shift_descent(f: BinaryForm, patience: int = 3) -> ReductionReport:
    """Walk integer shifts in both directions, keeping the best form seen;
    each direction stops after `patience` consecutive non-improving steps."""
    if patience < 1:
        raise ValueError("patience must be at least 1")
    f0 = primitive(f)
    h0 = height(f0)
    best_h, best_m = h0, 0
    for direction in (1, -1):
        cur = f0
        misses = 0
        m = 0
        while misses < patience:
            m += direction
            cur = shift(cur, direction)
            h = max(abs(c) for c in cur.coeffs)  # cur stays primitive
            if h < best_h:
                best_h, best_m = h, m
                misses = 0
            else:
                misses += 1
    out = shift(f0, best_m)
    M = UnimodularMatrix.translation(best_m)
    if best_m == 0:
        return ReductionReport(f, f0, UnimodularMatrix.identity(), Fraction(1),
                               "shift-descent", h0, h0)
    return ReductionReport(f, out, M, Fraction(1), "shift-descent", h0, best_h)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def wgcd(f: BinaryForm) -> int:
    """Weighted gcd of the ascending coefficients a_1..a_n with weights
    (1, ..., n): the largest d with d^i dividing a_i for every i >= 1.

    Convention note: a_i is the coefficient of x^i; any monic form has
    a_n = 1 and hence wgcd 1."""
    asc = f.coeffs[::-1]
    tail = [c for c in asc[1:] if c != 0]
    if not tail:
        return 1
    g = 0
    for c in tail:
        g = math.gcd(g, abs(c))
    for d in reversed(_divisors(g)):
        if all(c == 0 or c % d**i == 0 for i, c in enumerate(asc[1:], start=1)):
            return d
    return 1


def scale_lemma(f: BinaryForm) -> ReductionReport:
    """Scaling by p = gcd(a_0, wgcd(a_1..a_n)): the fast path promised by the
    scaling lemma.

    Vacuous in practice: p divides a_0 and (through q) every other
    coefficient, hence the content, so on primitive input p = 1 and nothing
    is rescaled.  scale_search is the authoritative scan; tests cross-check
    that it never does worse than this path."""
    f0 = primitive(f)
    q = wgcd(f0)
    p = math.gcd(abs(f0.coeffs[-1]), q)  # a_0 is the trailing coefficient
    if p == 1:
        h0 = height(f0)
        return ReductionReport(f, f0, UnimodularMatrix.identity(), Fraction(1),
                               "scaling", h0, h0)
    n = f0.degree
    scaled = BinaryForm(tuple(c * p ** (n - i) for i, c in enumerate(f0.coeffs)))
    return _finish(f, scaled, UnimodularMatrix.identity(), "scaling",
                   scale=Fraction(p))


def scale_search(f: BinaryForm, bound: int = 64) -> ReductionReport:
    """Exhaustive scan of scalings x -> (u/v) x with 1 <= u, v <= bound.

    A candidate is the primitive form with coefficients c_i u^(n-i) v^i; the
    minimal-height one wins, with ties resolved to lambda = 1 first and then
    to the smallest u + v."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    f0 = primitive(f)
    n = f0.degree
    c = f0.coeffs
    best_h = height(f0)
    best = (best_h, Fraction(1), f0)
    powers = {w: [w**i for i in range(n + 1)] for w in range(1, bound + 1)}
    pairs = sorted(
        ((u, v) for u in range(1, bound + 1) for v in range(1, bound + 1)
         if math.gcd(u, v) == 1 and (u, v) != (1, 1)),
        key=lambda p: (p[0] + p[1], p[0]),
    )
    for u, v in pairs:
        up, vp = powers[u], powers[v]
        g0 = c[0] * up[n]
        gn = c[-1] * vp[n]
        if g0 and gn:
            dmax = math.gcd(g0, gn)
            if max(abs(g0), abs(gn)) // dmax >= best_h:
                continue
        g = [ci * up[n - i] * vp[i] for i, ci in enumerate(c)]
        cont = 0
        for gi in g:
            cont = math.gcd(cont, abs(gi))
        h = max(abs(gi) for gi in g) // cont
        if h < best_h:
            form = primitive(BinaryForm(tuple(g)))
            best_h = h
            best = (h, Fraction(u, v), form)
    h0 = height(f0)
    if best[2] is f0:
        return ReductionReport(f, f0, UnimodularMatrix.identity(), Fraction(1),
                               "scaling", h0, h0)
    return ReductionReport(f, best[2], UnimodularMatrix.identity(), best[1],
                           "scaling", h0, best[0])


def minimize(f: BinaryForm, patience: int = 3, bound: int = 64,
             tie: str = "away") -> ReductionReport:
    """Full pipeline: centroid (or center-of-mass, or Julia) reduction, then
    shift descent, then the scaling scan."""
    if f.degree < 2:
        raise ValueError("minimize needs degree >= 2")
    try:
        stage1 = reduce_hyperbolic(f)
    except DomainError:
        try:
            stage1 = reduce_com(f, tie=tie)
        except DomainError:
            stage1 = reduce_julia(f)
    stage2 = shift_descent(stage1.output, patience)
    stage3 = scale_search(stage2.output, bound)
    matrix = stage1.matrix @ stage2.matrix
    return ReductionReport(
        input=f,
        output=stage3.output,
        matrix=matrix,
        scale=stage3.scale,
        method="full",
        input_height=stage1.input_height,
        output_height=stage3.output_height,
        zero_used=stage1.zero_used,
    )
