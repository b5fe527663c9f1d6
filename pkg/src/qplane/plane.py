"""Points of F_q^d, the square-norm distance, and experiment point-set generators.

Points are tuples of canonical residues in ``[0, q)``; the modulus travels
alongside explicitly (or inside a :class:`PointSet`).
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    BadSpec,
    DimensionMismatch,
    EmptySet,
    IsotropicUnavailable,
    NonResidue,
    SizeTooLarge,
)
from .field import GF

Point = tuple[int, ...]


def dist(u: Point, v: Point, q: int) -> int:
    if len(u) != len(v):
        raise DimensionMismatch(f"dimension {len(u)} vs {len(v)}")
    return sum((a - b) * (a - b) for a, b in zip(u, v)) % q


def norm(u: Point, q: int) -> int:
    return sum(a * a for a in u) % q


def perp(a: Point, q: int) -> Point:
    if len(a) != 2:
        raise DimensionMismatch("perp is defined on the plane only")
    return (a[1] % q, -a[0] % q)


def add(u: Point, v: Point, q: int) -> Point:
    return tuple((a + b) % q for a, b in zip(u, v))


def sub(u: Point, v: Point, q: int) -> Point:
    return tuple((a - b) % q for a, b in zip(u, v))


def scale(c: int, u: Point, q: int) -> Point:
    return tuple(c * a % q for a in u)


def all_points(q: int, d: int) -> list[Point]:
    return list(itertools.product(range(q), repeat=d))


def point_index(x: Point, q: int) -> int:
    i = 0
    for c in x:
        i = i * q + c
    return i


def index_point(i: int, q: int, d: int) -> Point:
    coords = []
    for _ in range(d):
        i, c = divmod(i, q)
        coords.append(c)
    return tuple(reversed(coords))


@dataclass(frozen=True)
class PointSet:
    q: int
    dim: int
    points: tuple[Point, ...]
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        pts = sorted({tuple(c % self.q for c in x) for x in self.points})
        for x in pts:
            if len(x) != self.dim:
                raise DimensionMismatch(f"point {x} is not in dimension {self.dim}")
        object.__setattr__(self, "points", tuple(pts))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, x):
        return tuple(x) in self._lookup

    @property
    def _lookup(self) -> frozenset:
        lk = self.__dict__.get("_lk")
        if lk is None:
            lk = frozenset(self.points)
            object.__setattr__(self, "_lk", lk)
        return lk

    def indices(self) -> list[int]:
        return [point_index(x, self.q) for x in self.points]

    def to_text(self) -> str:
        head = f"# q={self.q} d={self.dim} n={len(self.points)}\n"
        return head + "".join(",".join(map(str, x)) + "\n" for x in self.points)


def distance_set(E: PointSet, exclude_diagonal: bool = False) -> set[int]:
    if len(E) == 0:
        raise EmptySet("distance set of an empty set")
    q = E.q
    out = set()
    pts = E.points
    for i, x in enumerate(pts):
        for y in pts[i:]:
            if exclude_diagonal and x == y:
                continue
            out.add(dist(x, y, q))
    return out


def read_points(path: str | Path, q: int, d: int | None = None) -> list[Point]:
    pts = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            x = tuple(int(t) % q for t in line.split(","))
        except ValueError:
            raise BadSpec(f"{path}:{lineno}: not a comma-separated integer list") from None
        if d is not None and len(x) != d:
            raise BadSpec(f"{path}:{lineno}: expected {d} coordinates, got {len(x)}")
        pts.append(x)
    return pts


def write_points(path: str | Path, E: PointSet) -> None:
    Path(path).write_text(E.to_text())


SPEC_GRAMMAR = "all | random:size=N | list:file=PATH | product:A;B[;...] | isotropic"


def _parse_factor(text: str, q: int) -> list[int]:
    text = text.strip()
    if text == "*":
        return list(range(q))
    vals = set()
    for part in text.split(","):
        part = part.strip()
        m = re.fullmatch(r"(-?\d+)-(-?\d+)", part)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            vals.update(v % q for v in range(lo, hi + 1))
        elif re.fullmatch(r"-?\d+", part):
            vals.add(int(part) % q)
        else:
            raise BadSpec(f"bad product factor {text!r}; use residues, ranges a-b, or *")
    return sorted(vals)


def isotropic_unit(q: int) -> int:
    """The canonical (smaller) square root of -1, when it exists."""
    try:
        return GF(q).sqrt(q - 1)[0]
    except NonResidue:
        raise IsotropicUnavailable(f"-1 is not a square mod {q} (q = 3 mod 4)") from None


def generate(spec: str, p: int, d: int = 2, seed: int | None = 0) -> PointSet:
    """Build a point set from a generator spec; see ``SPEC_GRAMMAR``."""
    GF(p)
    prov = {"spec": spec, "p": p, "d": d, "seed": seed}
    kind, _, rest = spec.partition(":")
    kind = kind.strip()
    if kind == "all" and not rest:
        return PointSet(p, d, tuple(all_points(p, d)), prov)
    if kind == "isotropic" and not rest:
        if d != 2:
            raise IsotropicUnavailable("the isotropic line lives in the plane (d = 2)")
        i = isotropic_unit(p)
        return PointSet(p, 2, tuple((t, i * t % p) for t in range(p)), prov)
    if kind == "random":
        m = re.fullmatch(r"size=(\d+)", rest.strip())
        if not m:
            raise BadSpec(f"bad random spec {spec!r}; grammar: {SPEC_GRAMMAR}")
        n = int(m.group(1))
        if n > p**d:
            raise SizeTooLarge(f"size {n} exceeds p^d = {p**d}")
        rng = random.Random(seed)
        idx = rng.sample(range(p**d), n)
        return PointSet(p, d, tuple(index_point(i, p, d) for i in idx), prov)
    if kind == "list":
        m = re.fullmatch(r"file=(.+)", rest.strip())
        if not m:
            raise BadSpec(f"bad list spec {spec!r}; grammar: {SPEC_GRAMMAR}")
        return PointSet(p, d, tuple(read_points(m.group(1), p, d)), prov)
    if kind == "product":
        factors = [_parse_factor(f, p) for f in rest.split(";")]
        if len(factors) != d:
            raise BadSpec(f"product spec has {len(factors)} factors but d = {d}")
        return PointSet(p, d, tuple(itertools.product(*factors)), prov)
    raise BadSpec(f"unrecognised set spec {spec!r}; grammar: {SPEC_GRAMMAR}")
