"""n-gon databases over Gaussian-integer roots and the batch experiments.

Roots live in the half-disc y >= 1, 1 < x^2 + y^2 <= r2^2 (the region whose
point counts make the reference n-gon totals exact binomials); each k-subset
yields a monic totally complex form of degree 2k.  The heavy passes
(max-distance scan, head-to-head shift comparison) run on int64/float64
numpy blocks; all height comparisons stay in exact integer arithmetic.
"""

from __future__ import annotations

import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .forms import UpperRootSet, from_upper_roots, height, shift
from .hyper import UhpPoint, center_of_mass, hyperbolic_centroid, nint
from .julia import minimize_theta0

REGIONS = ("halfdisc-exclude-i", "positive-re")

TIE_NAMES = {
    "away": "away-from-zero",
    "even": "half-even",
    "zero": "half-toward-zero",
    "up": "half-up",
    "up-2dp": "half-up-after-2dp-round",
}

# Shift convention reproducing the reference comparison buckets exactly:
# round the center's t to 2 decimals first (the precision the reference
# databases stored) and then take floor(t + 1/2).
DEFAULT_COMPARE_TIE = "up-2dp"

# Conventions under which the reference max-distance witnesses reproduce
# (calibrated against the two worked examples; see README).  "mean-y" scores
# the centroid with u = psi(y, y), the weighted mean of the root heights,
# which is what the reference center values were computed with; the stored
# records always carry the definition u = sqrt(|C|^2 - t^2).
DEFAULT_MAXDIST_METRIC = "euclidean"
DEFAULT_MAXDIST_SCOPE = "positive-re"
DEFAULT_MAXDIST_SCAN_U = "mean-y"

_CHUNK_ROWS = 200_000


@dataclass(frozen=True)
class LatticeConfig:
    """Parameters of one database: outer radius, k-gon size, region."""

    r2: int
    kgon: int
    region: str = "halfdisc-exclude-i"
    r1: int = 1
    allow_large: bool = False

    def __post_init__(self):
        if self.r2 < 2:
            raise ValueError("r2 must be at least 2")
        if self.r2 > 64 and not self.allow_large:
            raise ValueError("r2 > 64 needs allow_large=True (combinatorial blowup)")
        if self.kgon < 1:
            raise ValueError("kgon must be at least 1")
        if self.region not in REGIONS:
            raise ValueError(f"unknown region {self.region!r}")
        if not 0 <= self.r1 < self.r2:
            raise ValueError("need 0 <= r1 < r2")


@dataclass(frozen=True)
class NGonRecord:
    """One database row: sorted roots, exact coefficients, the two centers."""

    roots: tuple
    coeffs: tuple
    com: tuple
    hyp: tuple


@dataclass(frozen=True)
class CompareStats:
    total: int
    hyperbolic_wins: int
    julia_wins: int
    same: int

    def __post_init__(self):
        if self.total != self.hyperbolic_wins + self.julia_wins + self.same:
            raise ValueError("comparison buckets do not sum to the total")


def lattice_points(r2: int, region: str = "halfdisc-exclude-i", r1: int = 1):
    """Gaussian integers x + iy with y >= 1 and r1^2 < x^2 + y^2 <= r2^2,
    sorted lexicographically.  Region 'positive-re' additionally needs x >= 1."""
    if region not in REGIONS:
        raise ValueError(f"unknown region {region!r}")
    lo = 1 if region == "positive-re" else -r2
    pts = []
    for x in range(lo, r2 + 1):
        for y in range(1, r2 + 1):
            q = x * x + y * y
            if r1 * r1 < q <= r2 * r2:
                pts.append((x, y))
    pts.sort()
    return pts


def gauss_estimate(r1: float, r2: float) -> float:
    """Gauss-circle estimate pi * (r2^2 - r1^2) for the annulus point count."""
    if not 0 <= r1 <= r2:
        raise ValueError("need 0 <= r1 <= r2")
    return math.pi * (r2 * r2 - r1 * r1)


def enumerate_ngons(points, k: int, first_range=None):
    """Stream the k-subsets of `points` in lexicographic order.

    `first_range=(lo, hi)` restricts the index of the first element; the
    concatenation of disjoint ranges reproduces the full sequence, which is
    what the parallel passes rely on."""
    if k > len(points):
        raise ValueError("k exceeds the number of points")
    pts = tuple(points)
    if first_range is None:
        yield from itertools.combinations(pts, k)
        return
    lo, hi = first_range
    for i in range(lo, min(hi, len(pts) - k + 1)):
        for rest in itertools.combinations(pts[i + 1:], k - 1):
            yield (pts[i],) + rest


def build_record(roots) -> NGonRecord:
    """Expand one n-gon into a database record (exact coefficients, centers)."""
    roots = tuple(sorted(tuple(r) for r in roots))
    pts = [UhpPoint(x, y) for x, y in roots]
    form = from_upper_roots(pts)
    com = center_of_mass(pts)
    hyp = hyperbolic_centroid(pts).point
    return NGonRecord(
        roots=roots,
        coeffs=form.coeffs,
        com=(float(com.t), float(com.u)),
        hyp=(float(hyp.t), float(hyp.u)),
    )


def generate_records(config: LatticeConfig, workers: int = 1):
    """Stream NGonRecords for the whole database in canonical order."""
    points = lattice_points(config.r2, config.region, config.r1)
    if workers <= 1:
        for roots in enumerate_ngons(points, config.kgon):
            yield build_record(roots)
        return
    nfirst = max(len(points) - config.kgon + 1, 0)
    ranges = _split_ranges(nfirst, 8 * workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        args = ((points, config.kgon, lo, hi) for lo, hi in ranges)
        for batch in pool.map(_records_for_range, args):
            yield from batch


def _records_for_range(args):
    points, k, lo, hi = args
    return [build_record(r) for r in enumerate_ngons(points, k, (lo, hi))]


def _split_ranges(n: int, parts: int):
    parts = max(1, min(parts, n)) if n else 1
    step = -(-n // parts) if n else 1
    return [(lo, min(lo + step, n)) for lo in range(0, n, step)] or [(0, 0)]


# ---------------------------------------------------------------------------
# vectorized scan engines
# ---------------------------------------------------------------------------

def _index_chunks(n: int, k: int, lo: int, hi: int, rows: int = _CHUNK_ROWS):
    combos = itertools.chain.from_iterable(_iter_index_combos(n, k, lo, hi))
    while True:
        arr = np.fromiter(itertools.islice(combos, rows * k), dtype=np.int64)
        if arr.size == 0:
            return
        yield arr.reshape(-1, k)


def _iter_index_combos(n: int, k: int, lo: int, hi: int):
    for i in range(lo, min(hi, n - k + 1)):
        for rest in itertools.combinations(range(i + 1, n), k - 1):
            yield (i,) + rest


def _centers(X: np.ndarray, Y: np.ndarray, scan_u: str = "definition"):
    """Center of mass and hyperbolic centroid for rows of (x, y) columns.

    scan_u picks the centroid height used for distance scoring: "definition"
    is sqrt(|C|^2 - t^2); "mean-y" is psi(y, y), the convention behind the
    reference witnesses."""
    com_t = X.mean(axis=1)
    com_u = Y.mean(axis=1)
    W = Y.prod(axis=1, keepdims=True) / Y  # prod_{k != i} y_k
    s = W.sum(axis=1)
    hyp_t = (W * X).sum(axis=1) / s
    if scan_u == "mean-y":
        hyp_u = (W * Y).sum(axis=1) / s
    elif scan_u == "definition":
        normsq = (W * (X * X + Y * Y)).sum(axis=1) / s
        hyp_u = np.sqrt(np.maximum(normsq - hyp_t * hyp_t, 0.0))
    else:
        raise ValueError(f"unknown scan_u {scan_u!r}")
    return com_t, com_u, hyp_t, hyp_u


def _distance_key(metric, com_t, com_u, hyp_t, hyp_u):
    d2 = (com_t - hyp_t) ** 2 + (com_u - hyp_u) ** 2
    if metric == "euclidean":
        return d2
    if metric == "hyperbolic":
        # monotone surrogate for acosh(1 + d2 / (2 u v))
        return d2 / (2.0 * com_u * hyp_u)
    raise ValueError(f"unknown metric {metric!r}")


def _maxdist_range(args):
    points, k, metric, scan_u, lo, hi = args
    xs = np.array([p[0] for p in points], dtype=np.float64)
    ys = np.array([p[1] for p in points], dtype=np.float64)
    best_key = -math.inf
    best_combo = None
    for idx in _index_chunks(len(points), k, lo, hi):
        X = xs[idx]
        Y = ys[idx]
        com_t, com_u, hyp_t, hyp_u = _centers(X, Y, scan_u)
        key = _distance_key(metric, com_t, com_u, hyp_t, hyp_u)
        j = int(np.argmax(key))
        if key[j] > best_key:
            best_key = float(key[j])
            best_combo = tuple(int(v) for v in idx[j])
    return best_key, best_combo


def max_distance(config: LatticeConfig, metric: str | None = None,
                 scope: str | None = None, scan_u: str | None = None,
                 workers: int = 1) -> NGonRecord:
    """The record whose center of mass and hyperbolic centroid are farthest
    apart; ties go to the lexicographically smallest root set.

    `scope` restricts the scan to n-gons with all roots in that region
    (default 'positive-re', the restriction under which the reference
    witnesses are the maxima); the database region itself is unchanged.
    `scan_u` picks the centroid height used in the distance (see _centers)."""
    metric = metric or DEFAULT_MAXDIST_METRIC
    scope = scope or DEFAULT_MAXDIST_SCOPE
    scan_u = scan_u or DEFAULT_MAXDIST_SCAN_U
    points = lattice_points(config.r2, config.region, config.r1)
    if scope == "positive-re":
        points = [p for p in points if p[0] >= 1]
    elif scope != "all":
        raise ValueError(f"unknown scope {scope!r}")
    k = config.kgon
    if k > len(points):
        raise ValueError("k-gon larger than the point set")
    nfirst = len(points) - k + 1
    # many small ranges: combination counts fall off sharply with the first
    # index, so equal index ranges would leave most workers idle
    parts = 1 if workers <= 1 else 16 * workers
    tasks = [(points, k, metric, scan_u, lo, hi)
             for lo, hi in _split_ranges(nfirst, parts)]
    if workers <= 1:
        results = [_maxdist_range(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_maxdist_range, tasks))
    best_key, best_roots = -math.inf, None
    for key, combo in results:
        if combo is None:
            continue
        roots = tuple(points[i] for i in combo)
        if key > best_key or (key == best_key and roots < best_roots):
            best_key, best_roots = key, roots
    if best_roots is None:
        raise ValueError("empty scan")
    return build_record(best_roots)


def _nint_vec(num: np.ndarray, den, mode: str) -> np.ndarray:
    """Vectorized nearest integer of num/den (den > 0), exact in int64."""
    num = num.astype(np.int64)
    den = np.int64(den) if np.isscalar(den) else den.astype(np.int64)
    if mode == "away":
        q = (2 * np.abs(num) + den) // (2 * den)
        return np.where(num >= 0, q, -q)
    if mode == "zero":
        q = (2 * np.abs(num) + den - 1) // (2 * den)
        return np.where(num >= 0, q, -q)
    if mode == "up":
        return (2 * num + den) // (2 * den)
    if mode == "even":
        q = num // den
        r = num - q * den
        hi = 2 * r > den
        half = 2 * r == den
        return q + hi + (half & (q % 2 != 0))
    raise ValueError(f"unknown rounding mode {mode!r}")


def _shifts_from_ratio(num: np.ndarray, den, tie: str) -> np.ndarray:
    """Integer shifts from the exact ratio num/den under a tie convention."""
    if tie == "up-2dp":
        den_arr = np.broadcast_to(np.asarray(den, dtype=np.int64), num.shape)
        t = num.astype(np.float64) / den_arr.astype(np.float64)
        t2 = np.fromiter((round(float(v), 2) for v in t), dtype=np.float64,
                         count=len(t))
        return np.floor(t2 + 0.5).astype(np.int64)
    return _nint_vec(num, den, tie)


def _expand_forms(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Coefficient rows of prod_i (x^2 - 2 x_i xy + (x_i^2+y_i^2) y^2), int64."""
    m, k = X.shape
    cur = np.zeros((m, 3), dtype=np.int64)
    cur[:, 0] = 1
    cur[:, 1] = -2 * X[:, 0]
    cur[:, 2] = X[:, 0] ** 2 + Y[:, 0] ** 2
    for j in range(1, k):
        A = (-2 * X[:, j])[:, None]
        B = (X[:, j] ** 2 + Y[:, j] ** 2)[:, None]
        new = np.zeros((m, cur.shape[1] + 2), dtype=np.int64)
        new[:, :-2] += cur
        new[:, 1:-1] += cur * A
        new[:, 2:] += cur * B
        cur = new
    return cur


def _pascal_shift(n: int, m: int) -> np.ndarray:
    """Matrix P with (coeffs of f(x + m y, y)) = coeffs @ P."""
    P = np.zeros((n + 1, n + 1), dtype=np.int64)
    for i in range(n + 1):
        for j in range(i, n + 1):
            P[i, j] = math.comb(n - i, j - i) * m ** (j - i)
    return P


def _shift_heights(coeffs: np.ndarray, shifts: np.ndarray) -> np.ndarray:
    """Heights of the shifted (monic, hence primitive) forms, exact int64."""
    n = coeffs.shape[1] - 1
    out = np.empty(coeffs.shape[0], dtype=np.int64)
    for mval in np.unique(shifts):
        mask = shifts == mval
        sub = coeffs[mask] @ _pascal_shift(n, int(mval))
        out[mask] = np.abs(sub).max(axis=1)
    return out


def _int64_safe(r2: int, k: int) -> bool:
    # coefficient bound (1+r2)^(2k) and shift growth (1+r2)^(2k) again
    return (1 + r2) ** (4 * k) < 2 ** 62


def _compare_range(args):
    points, k, tie, lo, hi = args
    xs = np.array([p[0] for p in points], dtype=np.int64)
    ys = np.array([p[1] for p in points], dtype=np.int64)
    hyp_w = julia_w = same = total = 0
    for idx in _index_chunks(len(points), k, lo, hi):
        X = xs[idx]
        Y = ys[idx]
        m_com = _shifts_from_ratio(X.sum(axis=1), k, tie)
        prodY = Y.prod(axis=1)
        W = prodY[:, None] // Y
        s = W.sum(axis=1)
        m_hyp = _shifts_from_ratio((W * X).sum(axis=1), s, tie)
        coeffs = _expand_forms(X, Y)
        h_com = _shift_heights(coeffs, m_com)
        h_hyp = _shift_heights(coeffs, m_hyp)
        hyp_w += int((h_hyp < h_com).sum())
        julia_w += int((h_com < h_hyp).sum())
        same += int((h_com == h_hyp).sum())
        total += int(idx.shape[0])
    return total, hyp_w, julia_w, same


def compare_stats(config: LatticeConfig, tie: str = DEFAULT_COMPARE_TIE,
                  workers: int = 1) -> CompareStats:
    """Head-to-head comparison over the whole database.

    Per record, the center-of-mass shift nint(com.t) plays the Julia role and
    the centroid shift nint(hyp.t) the hyperbolic role; the strictly smaller
    shifted height wins, equal heights count as the same result.  (Counting
    equal *shifts* as `same` gives identical buckets: equal shifts force
    equal heights, and unequal shifts with equal heights land in `same`
    either way.)"""
    points = lattice_points(config.r2, config.region, config.r1)
    k = config.kgon
    if not _int64_safe(config.r2, k):
        return _compare_stats_exact(points, k, tie)
    nfirst = max(len(points) - k + 1, 0)
    nparts = 1 if workers <= 1 else 16 * workers
    tasks = [(points, k, tie, lo, hi)
             for lo, hi in _split_ranges(nfirst, nparts)]
    if workers <= 1:
        parts = [_compare_range(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_compare_range, tasks))
    total = sum(p[0] for p in parts)
    return CompareStats(
        total=total,
        hyperbolic_wins=sum(p[1] for p in parts),
        julia_wins=sum(p[2] for p in parts),
        same=sum(p[3] for p in parts),
    )


def compare_record(roots, tie: str = DEFAULT_COMPARE_TIE):
    """Exact single-record comparison; the reference for the block engine.

    Returns (m_com, m_hyp, h_com, h_hyp)."""
    pts = [UhpPoint(x, y) for x, y in roots]
    f = from_upper_roots(pts)
    com_num, com_den = sum(x for x, _ in roots), len(roots)
    ys = [y for _, y in roots]
    prods = [math.prod(ys[:i] + ys[i + 1:]) for i in range(len(ys))]
    hyp_num, hyp_den = sum(p * x for p, (x, _) in zip(prods, roots)), sum(prods)
    if tie == "up-2dp":
        m_com = math.floor(round(com_num / com_den, 2) + 0.5)
        m_hyp = math.floor(round(hyp_num / hyp_den, 2) + 0.5)
    else:
        m_com = nint(Fraction(com_num, com_den), tie)
        m_hyp = nint(Fraction(hyp_num, hyp_den), tie)
    return m_com, m_hyp, height(shift(f, m_com)), height(shift(f, m_hyp))


def _compare_stats_exact(points, k, tie=DEFAULT_COMPARE_TIE) -> CompareStats:
    hyp_w = julia_w = same = total = 0
    for roots in enumerate_ngons(points, k):
        _, _, h_com, h_hyp = compare_record(roots, tie)
        if h_hyp < h_com:
            hyp_w += 1
        elif h_com < h_hyp:
            julia_w += 1
        else:
            same += 1
        total += 1
    return CompareStats(total, hyp_w, julia_w, same)


def stats_json_dict(config: LatticeConfig, stats: CompareStats,
                    tie: str = DEFAULT_COMPARE_TIE) -> dict:
    return {
        "total": stats.total,
        "hyperbolic": stats.hyperbolic_wins,
        "julia": stats.julia_wins,
        "same": stats.same,
        "tie_convention": TIE_NAMES[tie],
        "region": config.region,
        "r2": config.r2,
        "k": config.kgon,
    }


# ---------------------------------------------------------------------------
# persistence
# ---------------------------------------------------------------------------

def _record_line(rec: NGonRecord) -> str:
    roots = json.dumps([[x, y] for x, y in rec.roots], separators=(",", ":"))
    coeffs = json.dumps([str(c) for c in rec.coeffs], separators=(",", ":"))
    return '{"roots":%s,"coeffs":%s,"com":[%.6f,%.6f],"hyp":[%.6f,%.6f]}' % (
        roots, coeffs, rec.com[0], rec.com[1], rec.hyp[0], rec.hyp[1])


def write_db(records, path) -> int:
    """Write records as JSONL (one object per line); returns the count."""
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(_record_line(rec))
            fh.write("\n")
            count += 1
    return count


def read_db(path):
    """Read a JSONL database back; malformed lines report their line number."""
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                rec = NGonRecord(
                    roots=tuple((int(x), int(y)) for x, y in obj["roots"]),
                    coeffs=tuple(int(c) for c in obj["coeffs"]),
                    com=(float(obj["com"][0]), float(obj["com"][1])),
                    hyp=(float(obj["hyp"][0]), float(obj["hyp"][1])),
                )
            except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
                raise ValueError(f"{path}: malformed record on line {lineno}: {exc}")
            out.append(rec)
    return out


# ---------------------------------------------------------------------------
# true-Julia vs center-of-mass shift report
# ---------------------------------------------------------------------------

def julia_vs_com_report(config: LatticeConfig, tie: str = "away") -> dict:
    """Fraction of database records whose rounded true-Julia shift differs
    from the rounded center-of-mass shift.  Deterministic for a fixed config."""
    points = lattice_points(config.r2, config.region, config.r1)
    total = 0
    differ = 0
    for roots in enumerate_ngons(points, config.kgon):
        pts = tuple(UhpPoint(x, y) for x, y in roots)
        f = from_upper_roots(pts)
        rootset = UpperRootSet(upper=pts, real=())
        res = minimize_theta0(f, roots=rootset)
        m_j = nint(res.zero.t, tie)
        m_com = nint(Fraction(sum(x for x, _ in roots), len(roots)), tie)
        total += 1
        if m_j != m_com:
            differ += 1
    return {
        "k": config.kgon,
        "r2": config.r2,
        "region": config.region,
        "tie_convention": TIE_NAMES[tie],
        "total": total,
        "differ": differ,
        "fraction": differ / total if total else 0.0,
    }
