"""Congruence and translation censuses of point configurations, and the
distance-pair / rigid-motion audit of a planar point set.

Points of F_q^d are identified with integers in ``[0, q^d)`` (big-endian base q)
so that translation and isometry actions become table lookups; the heavy loops
live in :mod:`qplane.kernels`.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from . import kernels
from .errors import DimensionMismatch, NoAnchor, TooLarge, TranslationOnly, ZeroLength
from .field import GF
from .motions import motion_between_segments, require_3_mod_4
from .plane import Point, PointSet, dist, index_point, point_index

FORMAT_VERSION = "qplane-1"
CENSUS_GUARD = 10**8


def orthogonal_group(q: int) -> list[tuple[int, int, int, int]]:
    """O(2,q) as row-major matrices (m11, m12, m21, m22): rotations then reflections."""
    GF(q)
    units = [(a, b) for a in range(q) for b in range(q) if (a * a + b * b) % q == 1]
    rots = [(a, -b % q, b, a) for a, b in units]
    refl = [(a, b, b, -a % q) for a, b in units]
    return rots + refl


def theta(x1: Point, x2: Point, x3: Point, q: int) -> tuple[int, int, int]:
    """The ordered side-length triple (|x1-x2|, |x2-x3|, |x3-x1|)."""
    if not len(x1) == len(x2) == len(x3) == 2:
        raise DimensionMismatch("theta is defined for planar triangles")
    return (dist(x1, x2, q), dist(x2, x3, q), dist(x3, x1, q))


# lookup tables ------------------------------------------------------------


def _coords(q: int, d: int) -> np.ndarray:
    idx = np.arange(q**d, dtype=np.int64)
    cols = []
    for _ in range(d):
        idx, c = np.divmod(idx, q)
        cols.append(c)
    return np.stack(cols[::-1], axis=1)


def _encode(coords: np.ndarray, q: int) -> np.ndarray:
    out = np.zeros(coords.shape[:-1], dtype=np.int64)
    for i in range(coords.shape[-1]):
        out = out * q + coords[..., i]
    return out


@lru_cache(maxsize=16)
def sub_table(q: int, d: int) -> np.ndarray:
    """Flattened table with ``T[i * q^d + j]`` = index of point_i - point_j."""
    c = _coords(q, d)
    diff = (c[:, None, :] - c[None, :, :]) % q
    return _encode(diff, q).ravel()


@lru_cache(maxsize=16)
def dist_table(q: int) -> np.ndarray:
    c = _coords(q, 2)
    diff = c[:, None, :] - c[None, :, :]
    return ((diff * diff).sum(axis=2) % q).ravel()


@lru_cache(maxsize=16)
def canon_table(q: int) -> np.ndarray:
    """``C[u * q^2 + v]`` = min over g in O(2,q) of ``g(u) * q^2 + g(v)``.

    This is the lexicographically least image of the ordered triangle (0, u, v)
    under the isometries fixing the origin.
    """
    q2 = q * q
    c = _coords(q, 2)
    best = np.full(q2 * q2, np.iinfo(np.int64).max, dtype=np.int64)
    for m11, m12, m21, m22 in orthogonal_group(q):
        img = (((m11 * c[:, 0] + m12 * c[:, 1]) % q) * q + (m21 * c[:, 0] + m22 * c[:, 1]) % q)
        np.minimum(best, (img[:, None] * q2 + img[None, :]).ravel(), out=best)
    return best


# class keys ---------------------------------------------------------------


@dataclass(frozen=True)
class ClassKey:
    kind: str
    canonical: tuple

    def to_dict(self):
        return {"kind": self.kind, "canonical": [list(p) for p in self.canonical]}


def congruence_key(points, q: int) -> ClassKey:
    """Key of an unordered triangle under isometries and vertex permutations."""
    if len(points) != 3:
        raise DimensionMismatch("congruence keys are implemented for triangles")
    q2 = q * q
    sub, canon = sub_table(q, 2), canon_table(q)
    ids = [point_index(tuple(p), q) for p in points]
    best = None
    for a, b, c in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
        u = sub[ids[b] * q2 + ids[a]]
        v = sub[ids[c] * q2 + ids[a]]
        k = int(canon[u * q2 + v])
        best = k if best is None else min(best, k)
    u, v = divmod(best, q2)
    return ClassKey("congruence", ((0, 0), index_point(u, q, 2), index_point(v, q, 2)))


def translation_key(points, q: int) -> ClassKey:
    x1 = points[0]
    return ClassKey(
        "translation",
        tuple(tuple((a - b) % q for a, b in zip(x, x1)) for x in points[1:]),
    )


# congruence census --------------------------------------------------------


@dataclass
class CensusReport:
    q: int
    set_descriptor: dict
    size: int
    class_count: int
    total_class_count: int
    side_triple_count: int
    ordered_class_count: int
    include_degenerate: bool
    backend: str = kernels.BACKEND

    @property
    def fraction(self) -> float:
        return self.class_count / self.total_class_count

    def to_dict(self) -> dict:
        d = asdict(self)
        d["fraction"] = self.fraction
        return d


def _policy(include_degenerate: bool) -> str:
    return "with-degenerate" if include_degenerate else "distinct"


def _compute_total_classes(q: int, include_degenerate: bool) -> int:
    # every class has a representative through the origin: count {0, u, v}
    q2 = q * q
    sub, canon = sub_table(q, 2), canon_table(q)
    u, v = np.meshgrid(np.arange(q2), np.arange(q2), indexing="ij")
    u, v = u.ravel(), v.ravel()
    if not include_degenerate:
        keep = (u < v) & (u != 0)
        u, v = u[keep], v[keep]
    nu = sub[u]  # 0 - u
    nv = sub[v]
    vu = sub[v * q2 + u]
    uv = sub[u * q2 + v]
    keys = np.minimum.reduce([
        canon[u * q2 + v], canon[v * q2 + u],
        canon[nu * q2 + vu], canon[vu * q2 + nu],
        canon[nv * q2 + uv], canon[uv * q2 + nv],
    ])
    return int(np.unique(keys).size)


def _cache_path(q: int, include_degenerate: bool) -> Path | None:
    root = os.environ.get("QPLANE_CACHE_DIR")
    if not root:
        return None
    return Path(root) / f"total_classes_q{q}_congruence_{_policy(include_degenerate)}.json"


@lru_cache(maxsize=None)
def total_class_count(q: int, include_degenerate: bool = False) -> int:
    """Number of congruence classes of triangles in the whole plane F_q^2."""
    path = _cache_path(q, include_degenerate)
    if path is not None and path.exists():
        try:
            rec = json.loads(path.read_text())
            if rec.get("format_version") == FORMAT_VERSION:
                return int(rec["total"])
        except (ValueError, KeyError):
            pass
    total = _compute_total_classes(q, include_degenerate)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        rec = {
            "format_version": FORMAT_VERSION,
            "q": q,
            "kind": "congruence",
            "policy": _policy(include_degenerate),
            "total": total,
        }
        path.write_text(json.dumps(rec, sort_keys=True) + "\n")
    return total


def congruence_census(E: PointSet, include_degenerate: bool = False) -> CensusReport:
    if E.dim != 2:
        raise DimensionMismatch("congruence censuses are planar")
    n = len(E)
    if n**3 > CENSUS_GUARD:
        raise TooLarge(f"|E|^3 = {n**3} exceeds {CENSUS_GUARD}")
    q = E.q
    idx = np.asarray(E.indices(), dtype=np.int64)
    cong, ordered, sides = kernels.triangle_marks(
        idx, sub_table(q, 2), canon_table(q), dist_table(q), q, include_degenerate
    )
    return CensusReport(
        q=q,
        set_descriptor=dict(E.provenance),
        size=n,
        class_count=int(np.count_nonzero(cong)),
        total_class_count=total_class_count(q, include_degenerate),
        side_triple_count=int(np.count_nonzero(sides)),
        ordered_class_count=int(np.count_nonzero(ordered)),
        include_degenerate=include_degenerate,
    )


# translation classes ------------------------------------------------------


def translation_coverage(E: PointSet, n: int) -> dict:
    """How many translation classes of n-configurations E contains."""
    q, d, m = E.q, E.dim, len(E)
    if n < 1:
        raise ValueError("n must be positive")
    if m**n > CENSUS_GUARD or q ** (d * (n - 1)) > CENSUS_GUARD:
        raise TooLarge(f"|E|^n = {m**n} or q^(d(n-1)) exceeds {CENSUS_GUARD}")
    idx = np.asarray(E.indices(), dtype=np.int64)
    covered = kernels.difference_cover(idx, sub_table(q, d), q**d, n)
    total = q ** (d * (n - 1))
    frac = covered / total
    bound = frac ** (1 / n) * q ** (d * (1 - 1 / n))
    return {
        "q": q,
        "d": d,
        "n": n,
        "size": m,
        "covered": covered,
        "total": total,
        "fraction": frac,
        "size_bound": bound,
        # |E| >= frac^(1/n) q^(d(1-1/n)) is equivalent to |E|^n >= covered
        "size_bound_holds": m**n >= covered,
    }


def multitranslation_factorization(E: PointSet, n: int) -> bool:
    """Whether E^n T is all of G = (F_q^d)^n, computed in the group directly."""
    q, d = E.q, E.dim
    size = q ** (d * n)
    if len(E) ** n * q**d > CENSUS_GUARD:
        raise TooLarge("group model too large")
    import itertools

    V = list(itertools.product(range(q), repeat=d))
    product = set()
    for es in itertools.product(E.points, repeat=n):
        for a in V:
            # the multitranslation T_{e_1..e_n} o T_a
            product.add(tuple(tuple((x + y) % q for x, y in zip(e, a)) for e in es))
    return len(product) == size


# distance pairs and the rigid-motion audit --------------------------------


@dataclass
class PairCountReport:
    q: int
    ell: int
    size: int
    pairs: int

    @property
    def predicted(self) -> float:
        return self.size**2 / (2 * self.q)

    @property
    def residual(self) -> float:
        return self.pairs - self.predicted

    @property
    def residual_bound(self) -> float:
        return math.sqrt(self.q) * self.size

    @property
    def within_bound(self) -> bool:
        return abs(self.residual) <= self.residual_bound

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "ell": self.ell,
            "size": self.size,
            "pairs": self.pairs,
            "predicted": self.predicted,
            "residual": self.residual,
            "residual_bound": self.residual_bound,
            "within_bound": self.within_bound,
        }


def _xy(E: PointSet) -> tuple[np.ndarray, np.ndarray]:
    arr = np.asarray(E.points, dtype=np.int64).reshape(-1, 2)
    return np.ascontiguousarray(arr[:, 0]), np.ascontiguousarray(arr[:, 1])


def pair_count(E: PointSet, ell: int) -> PairCountReport:
    """Unordered pairs of E at distance ell, against the |E|^2/(2q) prediction."""
    if E.dim != 2:
        raise DimensionMismatch("pair counts are planar")
    q = E.q
    ell %= q
    if ell == 0:
        raise ZeroLength("ell must be nonzero")
    xs, ys = _xy(E)
    return PairCountReport(q, ell, len(E), int(kernels.pair_count(xs, ys, q, ell)))


def distance_pairs(E: PointSet, ell: int) -> list[tuple[Point, Point]]:
    """All unordered pairs {x, y} of E at distance ell, as (x, y) with x < y."""
    q = E.q
    pts = E.points
    return [
        (x, y)
        for i, x in enumerate(pts)
        for y in pts[i + 1:]
        if dist(x, y, q) == ell
    ]


@dataclass
class ElekesSharirReport:
    q: int
    ell: int
    size: int
    anchor: list
    pairs: int
    predicted: float
    residual: float
    residual_bound: float
    motions: int
    uncovered: int
    y_bound: float
    image_size: int
    vacuous: bool
    violations: list = field(default_factory=list)

    @property
    def slack(self) -> float:
        return self.uncovered / self.y_bound

    def to_dict(self) -> dict:
        d = asdict(self)
        d["slack"] = self.slack
        return d


def elekes_sharir_audit(E: PointSet, ell: int, anchor: tuple[Point, Point] | None = None) -> ElekesSharirReport:
    """Build D, the motion set P onto the anchor pair, the missed set Y and E' = P(E)."""
    q = E.q
    require_3_mod_4(q)
    if E.dim != 2:
        raise DimensionMismatch("the audit is planar")
    ell %= q
    if ell == 0:
        raise ZeroLength("ell must be nonzero")
    D = distance_pairs(E, ell)
    if anchor is None:
        if not D:
            raise NoAnchor(f"no pair of E at distance {ell}")
        x0, y0 = D[0]
    else:
        x0, y0 = (tuple(c % q for c in p) for p in anchor)
        if x0 not in E or y0 not in E or dist(x0, y0, q) != ell:
            raise NoAnchor("anchor must be a pair of E at distance ell")

    P = set()
    for x, y in D:
        for tx, ty in ((x0, y0), (y0, x0)):
            try:
                s = motion_between_segments(x, y, tx, ty, q)
            except TranslationOnly:
                continue
            P.add(s.coords)

    pmask = np.zeros(q**3, dtype=np.uint8)
    for c in P:
        pmask[(c[0] * q + c[1]) * q + c[2]] = 1
    ex, ey = _xy(E)
    y_mask = kernels.uncovered_targets(ex, ey, pmask, q)

    # E' by applying every motion of P to E directly
    covered = np.zeros(q * q, dtype=bool)
    F = GF(q)
    for p1, p2, r in P:
        den = F.inv(r * r + 1)
        a, b = (r * r - 1) * den % q, 2 * r * den % q
        dx, dy = ex - p1, ey - p2
        ix = (a * dx - b * dy + p1) % q
        iy = (b * dx + a * dy + p2) % q
        covered[ix * q + iy] = True

    violations = []
    if not np.array_equal(y_mask.astype(bool), ~covered):
        violations.append("Y is not the complement of E'")
    pc = pair_count(E, ell)
    if pc.pairs != len(D):
        violations.append("kernel pair count disagrees with direct enumeration")
    n = len(E)
    y_bound = 2 * q**9 / n**4
    return ElekesSharirReport(
        q=q,
        ell=ell,
        size=n,
        anchor=[list(x0), list(y0)],
        pairs=len(D),
        predicted=pc.predicted,
        residual=pc.residual,
        residual_bound=pc.residual_bound,
        motions=len(P),
        uncovered=int(y_mask.sum()),
        y_bound=y_bound,
        image_size=int(covered.sum()),
        vacuous=y_bound >= q * q,
        violations=violations,
    )

