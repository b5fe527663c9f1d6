"""Brute-force reference implementations used to check the library.

Nothing here imports qplane; each routine recomputes its answer from the
definitions by exhaustive search.
"""

import itertools
from functools import lru_cache

import numpy as np


def squares(q):
    """Map a -> sorted list of square roots of a mod q."""
    out = {a: [] for a in range(q)}
    for r in range(q):
        out[r * r % q].append(r)
    return out


def sums_of_two_squares(q):
    """Map c -> list of (x, y) with x^2 + y^2 = c mod q."""
    out = {c: [] for c in range(q)}
    for x in range(q):
        for y in range(q):
            out[(x * x + y * y) % q].append((x, y))
    return out


@lru_cache(maxsize=None)
def orthogonal_matrices(q):
    """Every 2x2 matrix M over F_q with M^T M = I, as (m11, m12, m21, m22)."""
    out = []
    for a, b, c, d in itertools.product(range(q), repeat=4):
        if (a * a + c * c) % q == 1 and (b * b + d * d) % q == 1 and (a * b + c * d) % q == 0:
            out.append((a, b, c, d))
    return out


def rotations(q):
    return [m for m in orthogonal_matrices(q) if (m[0] * m[3] - m[1] * m[2]) % q == 1]


def _act(m, t, x, q):
    return ((m[0] * x[0] + m[1] * x[1] + t[0]) % q, (m[2] * x[0] + m[3] * x[1] + t[1]) % q)


@lru_cache(maxsize=None)
def triangle_orbits(q, include_degenerate=False):
    """Orbit id of every 3-multiset of F_q^2 under the full isometry group.

    Returns (orbit_of, number_of_orbits). Without degenerates only sets of
    three distinct points are considered.
    """
    pts = list(itertools.product(range(q), repeat=2))
    if include_degenerate:
        triples = itertools.combinations_with_replacement(pts, 3)
    else:
        triples = itertools.combinations(pts, 3)
    group = [(m, t) for m in orthogonal_matrices(q) for t in pts]
    orbit_of = {}
    n = 0
    for tri in triples:
        if tri in orbit_of:
            continue
        for m, t in group:
            orbit_of[tuple(sorted(_act(m, t, x, q) for x in tri))] = n
        n += 1
    return orbit_of, n


def orbits_hit(points, q, include_degenerate=False):
    orbit_of, _ = triangle_orbits(q, include_degenerate)
    pts = sorted(points)
    combos = itertools.combinations_with_replacement if include_degenerate else itertools.combinations
    return {orbit_of[t] for t in combos(pts, 3)}


def realized_side_triples(q):
    """All (|a-b|, |b-c|, |c-a|) over (F_q^2)^3, with a at the origin."""
    xs, ys = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    P = np.stack([xs.ravel(), ys.ravel()], axis=1)
    nb = (P**2).sum(axis=1) % q
    B = P[:, None, :]
    C = P[None, :, :]
    l2 = ((C - B) ** 2).sum(axis=2) % q
    l1 = np.broadcast_to(nb[:, None], l2.shape)
    l3 = np.broadcast_to(nb[None, :], l2.shape)
    code = (l1 * q + l2) * q + l3
    return {tuple(int(v) for v in np.unravel_index(c, (q, q, q))) for c in np.unique(code)}


def count_third_vertices(x1, x2, l2, l3, q):
    """Number of x3 with |x2 - x3| = l2 and |x3 - x1| = l3."""
    n = 0
    for c in range(q):
        for e in range(q):
            if ((x2[0] - c) ** 2 + (x2[1] - e) ** 2) % q == l2 % q and \
                    ((c - x1[0]) ** 2 + (e - x1[1]) ** 2) % q == l3 % q:
                n += 1
    return n


@lru_cache(maxsize=None)
def gram_set(q, d):
    """Every A A^T over F_q with A d x d, as tuples of rows."""
    out = set()
    for flat in itertools.product(range(q), repeat=d * d):
        A = np.array(flat, dtype=np.int64).reshape(d, d)
        out.add(tuple(map(tuple, (A @ A.T % q).tolist())))
    return out


def symmetric_matrices(q, d):
    cells = [(i, j) for i in range(d) for j in range(i, d)]
    for vals in itertools.product(range(q), repeat=len(cells)):
        M = [[0] * d for _ in range(d)]
        for (i, j), v in zip(cells, vals):
            M[i][j] = M[j][i] = v
        yield tuple(map(tuple, M))


def leibniz_det(M, q):
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i in range(n):
            prod = prod * M[i][perm[i]] % q
        total += -prod if inv % 2 else prod
    return total % q


def translation_classes(E, n, q, d):
    """Distinct (e2-e1, ..., en-e1) over E^n."""
    seen = set()
    for es in itertools.product(E, repeat=n):
        seen.add(tuple(tuple((a - b) % q for a, b in zip(e, es[0])) for e in es[1:]))
    return len(seen)


def flats_by_span(q, d, k):
    """Every k-flat of F_q^d as a frozenset of points, from base point plus spanning k-tuple."""
    pts = list(itertools.product(range(q), repeat=d))
    out = set()
    for vecs in itertools.product(pts, repeat=k):
        span = {tuple([0] * d)}
        for v in vecs:
            span = {tuple((s[i] + t * v[i]) % q for i in range(d)) for s in span for t in range(q)}
        if len(span) != q**k:
            continue
        for x in pts:
            out.add(frozenset(tuple((x[i] + s[i]) % q for i in range(d)) for s in span))
    return out
