"""Affine k-flats of F_q^d: canonical forms, enumeration, closed-form counts, incidences."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BadDims, MixedDims, TooLarge
from .field import GF
from .plane import Point

ENUMERATION_GUARD = 10**8


def rref(rows: Sequence[Sequence[int]], q: int) -> tuple[tuple[int, ...], ...]:
    """Reduced row-echelon form mod q with zero rows dropped."""
    m = [[c % q for c in r] for r in rows]
    if not m:
        return ()
    ncols = len(m[0])
    F = GF(q)
    row = 0
    for col in range(ncols):
        piv = next((i for i in range(row, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = F.inv(m[row][col])
        m[row] = [c * inv % q for c in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % q for a, b in zip(m[i], m[row])]
        row += 1
        if row == len(m):
            break
    return tuple(tuple(r) for r in m[:row])


def _pivot(row: Sequence[int]) -> int:
    return next(i for i, c in enumerate(row) if c)


def reduce_point(x: Sequence[int], basis, q: int) -> Point:
    """Canonical coset representative: zero every pivot coordinate."""
    x = list(x)
    for row in basis:
        c = _pivot(row)
        f = x[c]
        if f:
            x = [(a - f * b) % q for a, b in zip(x, row)]
    return tuple(v % q for v in x)


@dataclass(frozen=True)
class Flat:
    q: int
    dim_ambient: int
    basis: tuple[tuple[int, ...], ...]
    base: Point

    @property
    def dim_flat(self) -> int:
        return len(self.basis)

    @classmethod
    def from_spanning(cls, q: int, base: Sequence[int], vectors: Iterable[Sequence[int]]) -> Flat:
        base = tuple(int(c) % q for c in base)
        basis = rref(list(vectors), q)
        return cls(q, len(base), basis, reduce_point(base, basis, q))

    def contains(self, x: Sequence[int]) -> bool:
        return reduce_point(x, self.basis, self.q) == self.base

    __contains__ = contains

    def points(self) -> list[Point]:
        q, d = self.q, self.dim_ambient
        out = []
        for coeffs in itertools.product(range(q), repeat=self.dim_flat):
            x = list(self.base)
            for c, row in zip(coeffs, self.basis):
                if c:
                    for i in range(d):
                        x[i] = (x[i] + c * row[i]) % q
            out.append(tuple(x))
        return out

    def is_subflat_of(self, other: Flat) -> bool:
        if not other.contains(self.base):
            return False
        zero = (0,) * self.dim_ambient
        return all(reduce_point(row, other.basis, self.q) == zero for row in self.basis)

    def to_row(self) -> str:
        basis = "; ".join(",".join(map(str, r)) for r in self.basis)
        return ",".join(map(str, self.base)) + " | " + basis


def parse_flat_row(text: str, q: int) -> Flat:
    base_s, _, basis_s = text.partition("|")
    base = [int(t) for t in base_s.split(",")]
    rows = [[int(t) for t in r.split(",")] for r in basis_s.split(";") if r.strip()]
    return Flat.from_spanning(q, base, rows)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if not 0 <= k <= n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


def alpha_formula(h: int, k: int, q: int) -> int:
    """Number of k-flats in F_q^h, by the q^h/q^k * prod (q^h - q^i)/(q^k - q^i) product."""
    if not 0 <= k <= h:
        raise BadDims(f"need 0 <= k <= h, got h={h}, k={k}")
    val = Fraction(q**h, q**k)
    for i in range(k):
        val *= Fraction(q**h - q**i, q**k - q**i)
    assert val.denominator == 1
    return int(val)


def beta_formula(d: int, h: int, k: int, q: int, *, form: str = "product") -> int:
    """Number of h-flats of F_q^d containing a fixed k-flat.

    ``form="ratio"`` evaluates alpha(h,k) alpha(d,h) / alpha(d,k); the default
    evaluates the closed product over i = k..h-1.
    """
    if not 0 <= k <= h <= d:
        raise BadDims(f"need 0 <= k <= h <= d, got d={d}, h={h}, k={k}")
    if form == "ratio":
        val = Fraction(alpha_formula(h, k, q) * alpha_formula(d, h, q), alpha_formula(d, k, q))
    elif form == "product":
        val = Fraction(1)
        for i in range(k, h):
            val *= Fraction(q ** (d - i) - 1, q ** (h - i) - 1)
    else:
        raise ValueError(f"unknown form {form!r}")
    assert val.denominator == 1
    return int(val)


def through_counts(d: int, k: int, q: int) -> tuple[int, int]:
    """(number of (k+1)-flats through a point, number of (k+1)-flats containing a k-flat)."""
    if not 0 <= k < d:
        raise BadDims(f"need 0 <= k < d, got d={d}, k={k}")
    through_point = Fraction(1)
    for i in range(k + 1):
        through_point *= Fraction(q ** (d - i) - 1, q ** (k - i + 1) - 1)
    through_flat = Fraction(q ** (d - k) - 1, q - 1)
    assert through_point.denominator == 1 and through_flat.denominator == 1
    return int(through_point), int(through_flat)


def enumerate_subspaces(q: int, d: int, k: int) -> list[tuple[tuple[int, ...], ...]]:
    """Every k-dimensional linear subspace of F_q^d as an RREF basis."""
    out = []
    for pivots in itertools.combinations(range(d), k):
        # free slots: columns right of the row's pivot that are not pivots
        slots = [
            (r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, d) if c not in pivots
        ]
        for fill in itertools.product(range(q), repeat=len(slots)):
            rows = [[0] * d for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(slots, fill):
                rows[r][c] = v
            out.append(tuple(tuple(r) for r in rows))
    return out


def enumerate_flats(q: int, d: int, k: int) -> list[Flat]:
    if not 0 <= k < d:
        raise BadDims(f"need 0 <= k < d, got d={d}, k={k}")
    total = alpha_formula(d, k, q)
    if total * q**d > ENUMERATION_GUARD:
        raise TooLarge(f"alpha({d},{k}) * q^d = {total * q**d} exceeds {ENUMERATION_GUARD}")
    out = []
    for basis in enumerate_subspaces(q, d, k):
        pivots = {_pivot(r) for r in basis}
        free = [c for c in range(d) if c not in pivots]
        for vals in itertools.product(range(q), repeat=len(free)):
            base = [0] * d
            for c, v in zip(free, vals):
                base[c] = v
            out.append(Flat(q, d, basis, tuple(base)))
    return out


@dataclass(frozen=True)
class IncidenceReport:
    q: int
    d: int
    k: int
    num_flats: int
    num_points: int
    incidences: int
    main_term: Fraction
    error_term: float

    @property
    def slack(self) -> float:
        if self.error_term == 0:
            return 0.0
        return float(self.incidences - self.main_term) / self.error_term

    def within(self, constant: float = 2.0) -> bool:
        return self.incidences <= float(self.main_term) + constant * self.error_term

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "d": self.d,
            "k": self.k,
            "num_flats": self.num_flats,
            "num_points": self.num_points,
            "incidences": self.incidences,
            "main_term": float(self.main_term),
            "error_term": self.error_term,
            "slack": self.slack,
        }


def count_incidences(M: Sequence[Flat], N: Sequence[Sequence[int]], strategy: str = "auto") -> IncidenceReport:
    """Exact number of (flat, point) pairs with the point on the flat."""
    if not M:
        raise MixedDims("need at least one flat to fix (q, d, k)")
    q, d, k = M[0].q, M[0].dim_ambient, M[0].dim_flat
    for f in M:
        if (f.q, f.dim_ambient, f.dim_flat) != (q, d, k):
            raise MixedDims("flats disagree on (q, d, k)")
    pts = {tuple(int(c) % q for c in x) for x in N}
    for x in pts:
        if len(x) != d:
            raise MixedDims(f"point {x} is not in dimension {d}")
    if strategy == "auto":
        strategy = "expand" if q**k < len(pts) else "membership"
    inc = 0
    if strategy == "expand":
        for f in M:
            inc += sum(1 for x in f.points() if x in pts)
    elif strategy == "membership":
        for f in M:
            inc += sum(1 for x in pts if f.contains(x))
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    mn = len(M) * len(pts)
    return IncidenceReport(
        q, d, k, len(M), len(pts), inc,
        Fraction(mn, q ** (d - k)),
        math.sqrt(q ** (k * (d - k)) * mn),
    )


def double_count(M: Sequence[Flat], N: Sequence[Sequence[int]]) -> tuple[int, int]:
    """(sum over (k+1)-flats P of incidences inside P, I * (q^(d-k) - 1)/(q - 1))."""
    q, d, k = M[0].q, M[0].dim_ambient, M[0].dim_flat
    pts = [tuple(x) for x in {tuple(int(c) % q for c in x) for x in N}]
    inc_pairs = [(f, x) for f in M for x in pts if f.contains(x)]
    total = 0
    for P in enumerate_flats(q, d, k + 1) if k + 1 < d else [Flat.from_spanning(q, (0,) * d, _identity(d))]:
        total += sum(1 for f, x in inc_pairs if f.is_subflat_of(P))
    return total, len(inc_pairs) * (q ** (d - k) - 1) // (q - 1)


def _identity(d: int):
    return [[int(i == j) for j in range(d)] for i in range(d)]


def incidence_audit(q: int, d: int, k: int, trials: int = 100, seed: int = 0, constant: float = 2.0) -> dict:
    """Random (flat set, point set) instances measured against the incidence bound."""
    import random

    rng = random.Random(seed)
    flats = enumerate_flats(q, d, k)
    points = list(itertools.product(range(q), repeat=d))
    worst = -math.inf
    violations = []
    for t in range(trials):
        M = rng.sample(flats, rng.randint(1, len(flats)))
        N = rng.sample(points, rng.randint(1, len(points)))
        rep = count_incidences(M, N)
        worst = max(worst, rep.slack)
        if not rep.within(constant):
            violations.append({"trial": t, **rep.to_dict()})
    return {
        "q": q,
        "d": d,
        "k": k,
        "trials": trials,
        "seed": seed,
        "constant": constant,
        "max_slack": worst,
        "violations": violations,
    }
