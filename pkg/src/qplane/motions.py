"""Orientation-preserving rigid motions of F_q^2 and the screw-point model of SF'.

For q = 3 mod 4 every non-translation motion is a rotation about a unique
center ``p`` by ``phi(r)`` for a unique ``r``; the pair ``(p, r)`` is a point of
F_q^3 and the motions taking ``x`` to ``y`` form a line there.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .errors import DimensionMismatch, LengthMismatch, TranslationOnly, WrongResidueClass
from .field import GF
from .plane import Point, all_points, dist, perp


def require_3_mod_4(q: int) -> None:
    if q % 4 != 3:
        raise WrongResidueClass(f"q = {q} is 1 mod 4; the screw correspondence needs q = 3 mod 4")


@dataclass(frozen=True)
class Rotation:
    """The matrix [[a, -b], [b, a]] with a^2 + b^2 = 1."""

    a: int
    b: int
    q: int

    @classmethod
    def identity(cls, q: int) -> Rotation:
        return cls(1, 0, q)

    def is_valid(self) -> bool:
        return (self.a * self.a + self.b * self.b) % self.q == 1

    def apply(self, x: Point) -> Point:
        if len(x) != 2:
            raise DimensionMismatch("rotations act on the plane")
        a, b, q = self.a, self.b, self.q
        return ((a * x[0] - b * x[1]) % q, (b * x[0] + a * x[1]) % q)

    def __matmul__(self, other: Rotation) -> Rotation:
        a, b, c, d, q = self.a, self.b, other.a, other.b, self.q
        return Rotation((a * c - b * d) % q, (a * d + b * c) % q, q)

    def inverse(self) -> Rotation:
        return Rotation(self.a, -self.b % self.q, self.q)

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, -self.b % self.q), (self.b, self.a))


@dataclass(frozen=True)
class RigidMotion:
    """x -> rot(x) + trans."""

    rot: Rotation
    trans: Point

    @property
    def q(self) -> int:
        return self.rot.q

    @classmethod
    def identity(cls, q: int) -> RigidMotion:
        return cls(Rotation.identity(q), (0, 0))

    @classmethod
    def translation(cls, t: Point, q: int) -> RigidMotion:
        return cls(Rotation.identity(q), (t[0] % q, t[1] % q))

    def is_translation(self) -> bool:
        return self.rot.a == 1 and self.rot.b == 0

    def apply(self, x: Point) -> Point:
        rx = self.rot.apply(x)
        q = self.q
        return ((rx[0] + self.trans[0]) % q, (rx[1] + self.trans[1]) % q)

    def inverse(self) -> RigidMotion:
        inv = self.rot.inverse()
        t = inv.apply(self.trans)
        return RigidMotion(inv, (-t[0] % self.q, -t[1] % self.q))


def compose(m1: RigidMotion, m2: RigidMotion) -> RigidMotion:
    """The motion ``x -> m1(m2(x))``."""
    t = m1.rot.apply(m2.trans)
    q = m1.q
    return RigidMotion(m1.rot @ m2.rot, ((t[0] + m1.trans[0]) % q, (t[1] + m1.trans[1]) % q))


def apply(m, x: Point) -> Point:
    return m.apply(x)


def enumerate_so2(q: int) -> list[Rotation]:
    """All rotations, ordered lexicographically by (a, b)."""
    GF(q)
    return [Rotation(a, b, q) for a in range(q) for b in range(q) if (a * a + b * b) % q == 1]


def enumerate_motions(q: int) -> list[RigidMotion]:
    return [RigidMotion(R, t) for R in enumerate_so2(q) for t in all_points(q, 2)]


def phi(r: int, q: int) -> Rotation:
    """The rational parametrisation r -> ((r^2-1)/(r^2+1), 2r/(r^2+1))."""
    require_3_mod_4(q)
    F = GF(q)
    den = F.inv(r * r + 1)
    return Rotation((r * r - 1) * den % q, 2 * r * den % q, q)


def phi_inverse(rot: Rotation) -> int:
    """The parameter r with phi(r) = rot; rot must not be the identity."""
    q = rot.q
    require_3_mod_4(q)
    if rot.a == 1:
        raise TranslationOnly("the identity rotation has no phi parameter")
    return rot.b * GF(q).inv(1 - rot.a) % q


@dataclass(frozen=True)
class ScrewPoint:
    """The rotation by phi(r) about ``center``, i.e. the point (center, r) of F_q^3."""

    center: Point
    r: int
    q: int

    @property
    def coords(self) -> tuple[int, int, int]:
        return (self.center[0], self.center[1], self.r)

    @property
    def rotation(self) -> Rotation:
        return phi(self.r, self.q)

    def as_motion(self) -> RigidMotion:
        rot = self.rotation
        rp = rot.apply(self.center)
        q = self.q
        return RigidMotion(rot, ((self.center[0] - rp[0]) % q, (self.center[1] - rp[1]) % q))

    def apply(self, x: Point) -> Point:
        if len(x) != 2:
            raise DimensionMismatch("screw motions act on the plane")
        q = self.q
        d = ((x[0] - self.center[0]) % q, (x[1] - self.center[1]) % q)
        rd = self.rotation.apply(d)
        return ((rd[0] + self.center[0]) % q, (rd[1] + self.center[1]) % q)


def screw_from_motion(m: RigidMotion) -> ScrewPoint:
    """Recover (center, r) from a non-translation motion."""
    q = m.q
    require_3_mod_4(q)
    if m.is_translation():
        raise TranslationOnly("a pure translation has no rotation center")
    r = phi_inverse(m.rot)
    # center solves (I - rot) p = trans
    a, b = m.rot.a, m.rot.b
    m11, m12, m21, m22 = (1 - a) % q, b % q, -b % q, (1 - a) % q
    det_inv = GF(q).inv(m11 * m22 - m12 * m21)
    t1, t2 = m.trans
    p1 = (m22 * t1 - m12 * t2) * det_inv % q
    p2 = (m11 * t2 - m21 * t1) * det_inv % q
    return ScrewPoint((p1, p2), r, q)


def enumerate_screw_points(q: int) -> list[ScrewPoint]:
    require_3_mod_4(q)
    return [ScrewPoint((p1, p2), r, q) for p1 in range(q) for p2 in range(q) for r in range(q)]


def motion_between_segments(x1: Point, y1: Point, x2: Point, y2: Point, q: int) -> ScrewPoint:
    """The unique screw point sending x1 to x2 and y1 to y2."""
    require_3_mod_4(q)
    if dist(x1, y1, q) != dist(x2, y2, q):
        raise LengthMismatch("segments have different lengths")
    u = ((x1[0] - y1[0]) % q, (x1[1] - y1[1]) % q)
    v = ((x2[0] - y2[0]) % q, (x2[1] - y2[1]) % q)
    if u == v:
        raise TranslationOnly("the segments differ by a translation")
    F = GF(q)
    # with q = 3 mod 4 a zero-length segment is a single point, so u != 0 here
    ninv = F.inv(u[0] * u[0] + u[1] * u[1])
    rot = Rotation(
        (u[0] * v[0] + u[1] * v[1]) * ninv % q,
        (u[0] * v[1] - u[1] * v[0]) * ninv % q,
        q,
    )
    rx = rot.apply(x1)
    motion = RigidMotion(rot, ((x2[0] - rx[0]) % q, (x2[1] - rx[1]) % q))
    return screw_from_motion(motion)


@dataclass(frozen=True)
class PairLine:
    """{base + t*dir : t in F_q} in F_q^3, with dir normalised to last coordinate 1."""

    base: tuple[int, int, int]
    dir: tuple[int, int, int]
    q: int

    def points(self) -> list[tuple[int, int, int]]:
        q = self.q
        b, v = self.base, self.dir
        return [((b[0] + t * v[0]) % q, (b[1] + t * v[1]) % q, (b[2] + t) % q) for t in range(q)]

    def __contains__(self, s) -> bool:
        if isinstance(s, ScrewPoint):
            s = s.coords
        q = self.q
        t = (s[2] - self.base[2]) % q
        return (
            (self.base[0] + t * self.dir[0] - s[0]) % q == 0
            and (self.base[1] + t * self.dir[1] - s[1]) % q == 0
        )

    def __len__(self):
        return self.q


def pair_line(x: Point, y: Point, q: int) -> PairLine:
    """The line of screw points (p, r) whose motion sends x to y."""
    require_3_mod_4(q)
    h = GF(q).half
    mid = ((x[0] + y[0]) * h % q, (x[1] + y[1]) * h % q)
    w = perp(((x[0] - y[0]) % q, (x[1] - y[1]) % q), q)
    return PairLine((mid[0], mid[1], 0), (w[0] * h % q, w[1] * h % q, 1), q)


def line_family_audit(q: int) -> dict:
    """Check that pair lines into (or out of) a fixed point partition F_q^3."""
    require_3_mod_4(q)
    if q > 31:
        raise WrongResidueClass("line_family_audit is limited to q <= 31")
    start = time.perf_counter()
    pts = all_points(q, 2)
    q3 = q**3
    violations = []
    checks = 0

    def code(s):
        return (s[0] * q + s[1]) * q + s[2]

    for mode in ("into", "out_of"):
        for z in pts:
            hits = bytearray(q3)
            for x in pts:
                line = pair_line(x, z, q) if mode == "into" else pair_line(z, x, q)
                for s in line.points():
                    hits[code(s)] += 1
            checks += 1
            bad = [i for i, h in enumerate(hits) if h != 1]
            if bad:
                violations.append({"mode": mode, "fixed": list(z), "bad_cells": len(bad)})
    return {
        "q": q,
        "checks_run": checks,
        "lines_per_family": q * q,
        "points_per_line": q,
        "violations": violations,
        "elapsed": time.perf_counter() - start,
    }


def screw_bijection_audit(q: int) -> dict:
    """The q^3 screw points give q^3 distinct non-translation motions, i.e. all of SF'."""
    require_3_mod_4(q)
    start = time.perf_counter()
    motions = [s.as_motion() for s in enumerate_screw_points(q)]
    distinct = len(set(motions))
    translations = sum(1 for m in motions if m.is_translation())
    group_order = len(enumerate_so2(q)) * q * q
    violations = []
    if distinct != q**3:
        violations.append(f"only {distinct} distinct motions from {q**3} screw points")
    if translations:
        violations.append(f"{translations} screw points are translations")
    if distinct + q * q != group_order:
        violations.append("screw motions plus translations do not exhaust SF(2,q)")
    return {
        "q": q,
        "checks_run": 3,
        "screw_points": q**3,
        "distinct_motions": distinct,
        "group_order": group_order,
        "violations": violations,
        "elapsed": time.perf_counter() - start,
    }


def segment_uniqueness_audit(q: int, check_solver: bool = True) -> dict:
    """Exhaustively count, for every pair of segments, the screw points realising it.

    Every equal-length pair (x1,y1), (x2,y2) with x1 - y1 != x2 - y2 must be
    realised by exactly one screw point, and (when ``check_solver``) that point
    must be what :func:`motion_between_segments` returns.
    """
    import numpy as np

    require_3_mod_4(q)
    start = time.perf_counter()
    pts = all_points(q, 2)
    n = len(pts)
    screws = enumerate_screw_points(q)
    perms = np.array([[_idx(s.apply(x), q) for x in pts] for s in screws], dtype=np.int64)
    counts = np.zeros(n**4, dtype=np.int32)
    src = np.arange(n, dtype=np.int64)
    pair_src = (src[:, None] * n + src[None, :]).ravel()
    for perm in perms:
        img = (perm[:, None] * n + perm[None, :]).ravel()
        np.add.at(counts, pair_src * n * n + img, 1)
    coords = np.array(pts, dtype=np.int64)
    diff = (coords[:, None, :] - coords[None, :, :]) % q
    seg_len = (diff * diff).sum(axis=2).ravel() % q
    seg_vec = (diff[..., 0] * q + diff[..., 1]).ravel()
    counts = counts.reshape(n * n, n * n)
    eligible = (seg_len[:, None] == seg_len[None, :]) & (seg_vec[:, None] != seg_vec[None, :])
    bad = int(np.count_nonzero(eligible & (counts != 1)))
    # degenerate segments x1 = y1, x2 = y2 are realised by the q points of l_{x1->x2};
    # every other ineligible pair needs the identity rotation and is never realised
    point_pair = (seg_vec[:, None] == 0) & (seg_vec[None, :] == 0)
    stray = int(np.count_nonzero(~eligible & ~point_pair & (counts != 0)))
    degenerate_bad = int(np.count_nonzero(point_pair & (counts != q)))
    violations = []
    if bad:
        violations.append(f"{bad} eligible segment pairs not realised exactly once")
    if stray:
        violations.append(f"{stray} ineligible segment pairs realised by a screw point")
    if degenerate_bad:
        violations.append(f"{degenerate_bad} point pairs not realised by exactly q screw points")
    solver_checks = 0
    if check_solver:
        mismatches = 0
        for s, perm in zip(screws, perms):
            for i in range(n):
                for j in range(n):
                    if seg_vec[i * n + j] == seg_vec[perm[i] * n + perm[j]]:
                        continue
                    got = motion_between_segments(pts[i], pts[j], pts[perm[i]], pts[perm[j]], q)
                    solver_checks += 1
                    if got != s:
                        mismatches += 1
        if mismatches:
            violations.append(f"motion_between_segments disagreed {mismatches} times")
    return {
        "q": q,
        "eligible_pairs": int(np.count_nonzero(eligible)),
        "checks_run": int(eligible.size) + solver_checks,
        "solver_checks": solver_checks,
        "violations": violations,
        "elapsed": time.perf_counter() - start,
    }


def _idx(x: Point, q: int) -> int:
    return x[0] * q + x[1]
