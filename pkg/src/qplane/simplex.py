"""Triangles and simplices with prescribed side lengths over F_p.

A (d+1)-point configuration anchored at the origin exists exactly when its
length matrix factors as A A^T; :func:`gram_decompose` constructs such an A or
reports why none exists.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .errors import AsymmetricInput, NonzeroDiagonal, QPlaneError, ZeroBaseLength
from .field import GF, QuadExtElement, odd_primes_below, quad_ext
from .plane import Point, dist

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class LengthTriple:
    l1: int
    l2: int
    l3: int
    q: int

    @property
    def sigma1(self) -> int:
        return (self.l1 + self.l2 + self.l3) % self.q

    @property
    def sigma2(self) -> int:
        return (self.l1 * self.l2 + self.l2 * self.l3 + self.l3 * self.l1) % self.q

    @property
    def discriminant(self) -> int:
        """4 sigma2 - sigma1^2."""
        return (4 * self.sigma2 - self.sigma1 * self.sigma1) % self.q


def extend_segment(x1: Point, x2: Point, l2: int, l3: int, q: int) -> list[Point]:
    """All x3 with |x2 - x3| = l2 and |x3 - x1| = l3, sorted."""
    F = GF(q)
    l1 = dist(x1, x2, q)
    if l1 == 0:
        raise ZeroBaseLength("segment has zero length")
    a, b = (x2[0] - x1[0]) % q, (x2[1] - x1[1]) % q
    l2 %= q
    l3 %= q
    # with x1 at the origin and x3 = (c, e): c^2 + e^2 = l3 and a c + b e = m
    m = (l1 + l3 - l2) * F.half % q
    swap = b == 0
    if swap:
        a, b = b, a
    # eliminate e = (m - a c)/b:  l1 c^2 - 2 a m c + (m^2 - l3 b^2) = 0
    disc = (4 * a * a * m * m - 4 * l1 * (m * m - l3 * b * b)) % q
    if F.legendre(disc) < 0:
        return []
    r = F.sqrt(disc)[0]
    inv2l1 = F.inv(2 * l1)
    binv = F.inv(b)
    out = set()
    for root in {r, -r % q}:
        c = (2 * a * m + root) * inv2l1 % q
        e = (m - a * c) * binv % q
        if swap:
            c, e = e, c
        out.add(((x1[0] + c) % q, (x1[1] + e) % q))
    return sorted(out)


@dataclass(frozen=True)
class TriangleExistence:
    exists: bool
    discriminant: int
    legendre: int
    witness: tuple[Point, Point, Point] | None
    reason: str

    def to_dict(self) -> dict:
        return {
            "exists": self.exists,
            "discriminant": self.discriminant,
            "legendre": self.legendre,
            "witness": [list(p) for p in self.witness] if self.witness else None,
            "reason": self.reason,
        }


def triangle_exists(t: LengthTriple) -> TriangleExistence:
    """Decide by the discriminant and, when possible, build a witness.

    The witness (w1, w2, w3) satisfies |w1-w2| = l1, |w2-w3| = l2, |w3-w1| = l3.
    """
    q = t.q
    F = GF(q)
    disc = t.discriminant
    leg = F.legendre(disc)
    if leg < 0:
        return TriangleExistence(False, disc, leg, None, f"{disc} nonsquare mod {q}")
    ls = [t.l1 % q, t.l2 % q, t.l3 % q]
    if ls == [0, 0, 0]:
        o = (0, 0)
        return TriangleExistence(True, disc, leg, (o, o, o), "degenerate one-point triangle")
    # rotate so the base side is nonzero; side i joins vertex i and vertex i+1
    shift = next(i for i in range(3) if ls[i])
    base, s2, s3 = ls[shift], ls[(shift + 1) % 3], ls[(shift + 2) % 3]
    w1 = (0, 0)
    w2 = F.sum_of_two_squares(base)
    w3 = extend_segment(w1, w2, s2, s3, q)[0]
    verts = [w1, w2, w3]
    witness = tuple(verts[(i - shift) % 3] for i in range(3))
    return TriangleExistence(True, disc, leg, witness, f"{disc} is a square mod {q}")


# length matrices and Gram factorisation -----------------------------------


def _matrix(rows, q) -> Matrix:
    return tuple(tuple(int(v) % q for v in r) for r in rows)


@dataclass(frozen=True)
class LengthMatrix:
    q: int
    entries: Matrix

    @property
    def d(self) -> int:
        return len(self.entries)


def length_matrix(lengths: Sequence[Sequence[int]], q: int) -> LengthMatrix:
    """B_ii = l_0i, B_ij = (l_0i + l_0j - l_ij)/2 from a (d+1)x(d+1) length table."""
    L = _matrix(lengths, q)
    n = len(L)
    if any(len(r) != n for r in L):
        raise AsymmetricInput("length table must be square")
    for i in range(n):
        if L[i][i] != 0:
            raise NonzeroDiagonal(f"l[{i}][{i}] = {L[i][i]} must be 0")
        for j in range(n):
            if L[i][j] != L[j][i]:
                raise AsymmetricInput(f"l[{i}][{j}] != l[{j}][{i}]")
    h = GF(q).half
    B = tuple(
        tuple((L[0][i] + L[0][j] - L[i][j]) * h % q for j in range(1, n)) for i in range(1, n)
    )
    return LengthMatrix(q, B)


def lengths_of(points: Sequence[Point], q: int) -> Matrix:
    return tuple(tuple(dist(x, y, q) for y in points) for x in points)


def matmul(A: Matrix, B: Matrix, q: int) -> Matrix:
    Bt = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) % q for col in Bt) for row in A)


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A))


def gram(A: Matrix, q: int) -> Matrix:
    """A A^T."""
    return matmul(A, transpose(A), q)


def det_mod(M: Sequence[Sequence[int]], q: int) -> int:
    """Determinant by Gaussian elimination mod q."""
    F = GF(q)
    m = [[v % q for v in r] for r in M]
    n = len(m)
    det = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col] % q
        inv = F.inv(m[col][col])
        for i in range(col + 1, n):
            f = m[i][col] * inv % q
            if f:
                m[i] = [(a - f * b) % q for a, b in zip(m[i], m[col])]
    return det % q


def congruent_diagonalize(B: Matrix, q: int) -> tuple[list[int], Matrix]:
    """Return (D, P) with P B P^T = diag(D), P invertible."""
    F = GF(q)
    n = len(B)
    M = [list(r) for r in B]
    P = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap(i, j):
        M[i], M[j] = M[j], M[i]
        for r in M:
            r[i], r[j] = r[j], r[i]
        P[i], P[j] = P[j], P[i]

    def add_to(i, j, f):
        # row_i += f row_j, then col_i += f col_j
        M[i] = [(a + f * b) % q for a, b in zip(M[i], M[j])]
        for r in M:
            r[i] = (r[i] + f * r[j]) % q
        P[i] = [(a + f * b) % q for a, b in zip(P[i], P[j])]

    for i in range(n):
        if M[i][i] == 0:
            j = next((j for j in range(i + 1, n) if M[j][j]), None)
            if j is not None:
                swap(i, j)
            else:
                j = next((j for j in range(i + 1, n) if M[i][j]), None)
                if j is None:
                    continue
                # M[i][i] becomes 2 M[i][j] != 0 in odd characteristic
                add_to(i, j, 1)
        inv = F.inv(M[i][i])
        for j in range(i + 1, n):
            if M[j][i]:
                add_to(j, i, -M[j][i] * inv % q)
    D = [M[i][i] for i in range(n)]
    return D, _matrix(P, q)


def invert(M: Matrix, q: int) -> Matrix:
    F = GF(q)
    n = len(M)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(M)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] % q)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = F.inv(aug[col][col])
        aug[col] = [v * inv % q for v in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [(a - f * b) % q for a, b in zip(aug[i], aug[col])]
    return _matrix([r[n:] for r in aug], q)


@dataclass(frozen=True)
class GramWitness:
    B: Matrix
    q: int
    A: Matrix | None
    reason: str | None  # "DetNonSquare" or "SearchExhausted" when A is None
    rank: int
    det: int

    @property
    def exists(self) -> bool:
        return self.A is not None

    def points(self) -> list[Point]:
        """The realised configuration: the origin followed by the rows of A."""
        if self.A is None:
            return []
        d = len(self.B)
        return [(0,) * d] + [tuple(r) for r in self.A]

    def to_dict(self) -> dict:
        return {
            "exists": self.exists,
            "reason": self.reason,
            "rank": self.rank,
            "det": self.det,
            "B": [list(r) for r in self.B],
            "A": [list(r) for r in self.A] if self.A is not None else None,
        }


def _realize_diagonal(D: Sequence[int], q: int) -> Matrix | None:
    """Rows c_i, pairwise orthogonal under the dot product, with c_i . c_i = D[i].

    Keeps an orthogonal basis (w_j, e_j = w_j . w_j != 0) of the space still
    available; each nonzero D[i] is written as x^2 e_1 + y^2 e_2 on the first two
    basis vectors, which are then replaced by the orthogonal complement of the
    new row inside their span. A single remaining vector needs D[i]/e_1 square.
    """
    F = GF(q)
    d = len(D)
    basis = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    norms = [1] * d
    rows: list[tuple[int, ...] | None] = [None] * d
    order = [i for i in range(d) if D[i]]
    for i in order:
        c = D[i]
        if len(basis) == 1:
            ratio = c * F.inv(norms[0]) % q
            if F.legendre(ratio) < 0:
                return None
            t = F.sqrt(ratio)[0]
            rows[i] = tuple(t * v % q for v in basis[0])
            basis, norms = [], []
            continue
        (w1, w2), (e1, e2) = basis[:2], norms[:2]
        x, y = F.represent_binary(e1, e2, c)
        rows[i] = tuple((x * a + y * b) % q for a, b in zip(w1, w2))
        comp = tuple((-y * e2 * a + x * e1 * b) % q for a, b in zip(w1, w2))
        basis = [comp] + basis[2:]
        norms = [e1 * e2 * c % q] + norms[2:]
    zero = (0,) * d
    return tuple(r if r is not None else zero for r in rows)


def gram_decompose(B: LengthMatrix | Sequence[Sequence[int]], q: int | None = None) -> GramWitness:
    """Factor B = A A^T over F_q, or explain why no factor exists.

    Decision rule: a factor exists iff B is singular, or B is nonsingular with
    square determinant. Every returned A is checked by multiplication.
    """
    if isinstance(B, LengthMatrix):
        q = B.q
        Bm = B.entries
    else:
        if q is None:
            raise QPlaneError("modulus required for a raw matrix")
        Bm = _matrix(B, q)
    F = GF(q)
    n = len(Bm)
    if n == 0:
        return GramWitness(Bm, q, (), None, 0, 1)
    D, P = congruent_diagonalize(Bm, q)
    rank = sum(1 for v in D if v)
    det = det_mod(Bm, q)
    if rank == n and F.legendre(det) < 0:
        return GramWitness(Bm, q, None, "DetNonSquare", rank, det)
    C = _realize_diagonal(D, q)
    if C is None:
        return GramWitness(Bm, q, None, "SearchExhausted", rank, det)
    A = matmul(invert(P, q), C, q)
    if gram(A, q) != Bm:
        raise AssertionError("Gram witness failed verification")
    return GramWitness(Bm, q, A, None, rank, det)


def equilateral_length_matrix(d: int, ell: int, q: int) -> LengthMatrix:
    lengths = [[0 if i == j else ell for j in range(d + 1)] for i in range(d + 1)]
    return length_matrix(lengths, q)


def equilateral_simplex(d: int, ell: int, q: int) -> dict:
    """Equilateral d-simplex of side ell: determinant check and Gram construction."""
    if d < 1:
        raise QPlaneError("d must be at least 1")
    F = GF(q)
    ell %= q
    B = equilateral_length_matrix(d, ell, q)
    direct = det_mod(B.entries, q)
    formula = (d + 1) * pow(ell * F.half % q, d, q) % q
    w = gram_decompose(B)
    report = {
        "d": d,
        "ell": ell,
        "q": q,
        "det_direct": direct,
        "det_formula": formula,
        "det_agrees": direct == formula,
        "witness": w.to_dict(),
        "violations": [],
    }
    if direct != formula:
        report["violations"].append("det(B) differs from (d+1)(ell/2)^d")
    if d % 2 == 0 and ell and F.legendre(d + 1) < 0 and w.exists:
        report["violations"].append("witness found although d+1 is a nonsquare")
    return report


def equilateral_triangle_table(p_max: int) -> list[dict]:
    """For each odd prime p < p_max: does F_p (and F_{p^2}) contain an equilateral triangle?"""
    if p_max > 1000:
        raise QPlaneError("p_max is limited to 1000")
    rows = []
    for p in odd_primes_below(p_max):
        F = GF(p)
        by_rule = p % 12 in (1, 3, 11)
        by_legendre = F.legendre(3) >= 0
        res = triangle_exists(LengthTriple(1, 1, 1, p))
        # sqrt(3) = 0 in F_3
        root3 = quad_ext(F(3)) if p != 3 else QuadExtElement(0, 0, p)
        rows.append({
            "p": p,
            "p_mod_12": p % 12,
            "exists_mod12_rule": by_rule,
            "exists_legendre": by_legendre,
            "exists_Fp": res.exists,
            "witness": [list(v) for v in res.witness] if res.witness else None,
            "exists_Fp2": root3.square() == QuadExtElement(3 % p, 0, p),
            "sqrt3_Fp2": str(root3),
        })
    return rows


def random_lengths(q: int, count: int, seed: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.randrange(q) for _ in range(count)]
