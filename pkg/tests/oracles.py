"""Independent oracles the tests check the library against.

Everything here is deliberately written from the definitions (brute force,
exhaustive scans, generic numeric minimizers) and shares no code with the
implementation paths it verifies.
"""

import itertools
import math
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize as sp_minimize


def gcd_list(values):
    g = 0
    for v in values:
        g = math.gcd(g, abs(v))
    return g


def poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def quad_eval(abc, x, y):
    a, b, c = abc
    return a * x * x + b * x * y + c * y * y


def reduce_quad_brute(abc, depth=12):
    """Reduce [a,b,c] by breadth-first search over short SL2(Z) words."""
    def translate(q, m):
        a, b, c = q
        return (a, b + 2 * a * m, a * m * m + b * m + c)

    def flip(q):
        a, b, c = q
        return (c, -b, a)

    seen = {tuple(abc)}
    frontier = [tuple(abc)]
    best = tuple(abc)
    for _ in range(depth):
        nxt = []
        for q in frontier:
            for cand in (translate(q, 1), translate(q, -1), flip(q)):
                if cand not in seen:
                    seen.add(cand)
                    nxt.append(cand)
        frontier = nxt
    reduced = [q for q in seen if abs(q[1]) <= q[0] <= q[2]]
    reduced = [q for q in reduced
               if not (q[1] < 0 and (-q[1] == q[0] or q[0] == q[2]))]
    assert reduced, "no reduced form reached; increase depth"
    return min(reduced)


def enumerate_reduced_scan(D, primitive_only=False):
    """Exhaustive double loop over (a, b) with c solved from the discriminant."""
    out = set()
    bmax = math.isqrt(D // 3) + 2
    amax = math.isqrt(D // 3) + 2
    for b in range(-bmax, bmax + 1):
        for a in range(1, amax + 1):
            num = b * b + D
            if num % (4 * a) != 0:
                continue
            c = num // (4 * a)
            if not (abs(b) <= a <= c):
                continue
            if b < 0 and (-b == a or a == c):
                continue
            if primitive_only and math.gcd(math.gcd(a, b), c) != 1:
                continue
            out.add((a, b, c))
    return out


def dist_crossratio(z, w):
    """Hyperbolic distance from the ideal-endpoint cross ratio."""
    x1, y1 = float(z[0]), float(z[1])
    x2, y2 = float(w[0]), float(w[1])
    if abs(x1 - x2) < 1e-300:
        return abs(math.log(y2 / y1))
    # circle center xi on the real axis: |z - xi| = |w - xi|
    xi = (x1 * x1 + y1 * y1 - x2 * x2 - y2 * y2) / (2 * (x1 - x2))
    r = math.hypot(x1 - xi, y1)
    a, b = xi - r, xi + r  # ideal endpoints
    za, zb = math.hypot(x1 - a, y1), math.hypot(x1 - b, y1)
    wa, wb = math.hypot(x2 - a, y2), math.hypot(x2 - b, y2)
    return abs(math.log((za / zb) * (wb / wa)))


def centroid_minimize(points, tol=1e-13):
    """2-D minimization of sum ((t-x)^2+(u-y)^2)/(u y) straight from the
    definition: Nelder-Mead, then Newton on the objective's own gradient."""
    xs = np.array([float(p[0]) for p in points])
    ys = np.array([float(p[1]) for p in points])

    def obj(v):
        t, logu = v
        u = math.exp(logu)
        return float(np.sum(((t - xs) ** 2 + (u - ys) ** 2) / (u * ys)))

    def grad(t, u):
        gt = float(np.sum(2 * (t - xs) / (u * ys)))
        gu = float(np.sum(2 * (u - ys) / (u * ys)
                          - ((t - xs) ** 2 + (u - ys) ** 2) / (u * u * ys)))
        return np.array([gt, gu])

    start = [xs.mean(), math.log(ys.mean())]
    res = sp_minimize(obj, start, method="Nelder-Mead",
                      options=dict(xatol=tol, fatol=tol,
                                   maxiter=50000, maxfev=50000))
    t, u = res.x[0], math.exp(res.x[1])
    for _ in range(40):
        g = grad(t, u)
        h = 1e-6 * (1 + abs(t) + u)
        H = np.column_stack([(grad(t + h, u) - grad(t - h, u)) / (2 * h),
                             (grad(t, u + h) - grad(t, u - h)) / (2 * h)])
        try:
            step = np.linalg.solve(0.5 * (H + H.T), -g)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(step)):
            break
        t, u = t + step[0], max(u + step[1], 1e-12)
        if np.max(np.abs(step)) < 1e-12 * (1 + abs(t) + u):
            break
    return t, u


def julia_zero_grid(coeffs_descending, upper_roots):
    """Grid search plus Nelder-Mead polish of theta_0 over the complex-pair
    weights on the sum-log-zero slice; totally complex forms only."""
    xs = np.array([float(x) for x, _ in upper_roots])
    ys = np.array([float(y) for _, y in upper_roots])
    s = len(upper_roots)
    n = 2 * s
    a0 = float(coeffs_descending[0])

    def theta_log(logu):
        u2 = np.exp(2 * np.asarray(logu))
        A = 2 * np.sum(u2)
        B = -4 * np.sum(u2 * xs)
        C = 2 * np.sum(u2 * (xs ** 2 + ys ** 2))
        D = B * B - 4 * A * C
        return math.log(a0 ** 2) + (n / 2) * math.log(abs(D)) - 2 * np.sum(np.log(u2))

    best = None
    grid = np.linspace(-2.0, 2.0, 41)
    for combo in itertools.product(grid, repeat=s - 1):
        v = list(combo) + [-sum(combo)]
        val = theta_log(v)
        if best is None or val < best[0]:
            best = (val, v)
    res = sp_minimize(theta_log, best[1], method="Nelder-Mead",
                      options=dict(xatol=1e-12, fatol=1e-13,
                                   maxiter=50000, maxfev=50000))
    u2 = np.exp(2 * res.x)
    A = 2 * np.sum(u2)
    B = -4 * np.sum(u2 * xs)
    C = 2 * np.sum(u2 * (xs ** 2 + ys ** 2))
    D = B * B - 4 * A * C
    return -B / (2 * A), math.sqrt(abs(D)) / (2 * A)


def scale_exhaustive(coeffs_descending, bound):
    """Best height reachable by x -> (u/v) x, straight from the definition."""
    n = len(coeffs_descending) - 1
    best = None
    for u in range(1, bound + 1):
        for v in range(1, bound + 1):
            if math.gcd(u, v) != 1:
                continue
            g = [c * u ** (n - i) * v ** i
                 for i, c in enumerate(coeffs_descending)]
            cont = gcd_list(g)
            h = max(abs(x) for x in g) // cont
            if best is None or h < best:
                best = h
    return best


def random_sl2(rng, span=5):
    """Random SL2(Z) matrix with small entries, via extended gcd."""
    while True:
        a = int(rng.integers(-span, span + 1))
        c = int(rng.integers(-span, span + 1))
        if math.gcd(a, c) == 1 and (a, c) != (0, 0):
            break
    # solve a*d - b*c = 1
    g, x, y = _egcd(a, c)
    d, b = x, -y
    shift = int(rng.integers(-2, 3))
    # (a, b + shift*a, c, d + shift*c) keeps det 1
    return a, b + shift * a, c, d + shift * c


def _egcd(a, b):
    if b == 0:
        return (a, 1, 0) if a > 0 else (-a, -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y
