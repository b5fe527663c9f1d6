import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from qplane.errors import AsymmetricInput, NonzeroDiagonal, QPlaneError, ZeroBaseLength
from qplane.field import GF
from qplane.plane import dist
from qplane.simplex import (
    LengthTriple,
    congruent_diagonalize,
    det_mod,
    equilateral_length_matrix,
    equilateral_simplex,
    equilateral_triangle_table,
    extend_segment,
    gram,
    gram_decompose,
    length_matrix,
    lengths_of,
    matmul,
    random_lengths,
    transpose,
    triangle_exists,
)


def test_extend_examples():
    assert extend_segment((0, 0), (1, 0), 1, 1, 11) == [(6, 3), (6, 8)]
    assert extend_segment((0, 0), (1, 0), 2, 2, 7) == [(4, 0)]
    assert extend_segment((0, 0), (1, 0), 1, 1, 7) == []
    with pytest.raises(ZeroBaseLength):
        extend_segment((1, 1), (1, 1), 1, 1, 7)


def test_extend_a_chart():
    # base along the x-axis forces the swapped chart
    for x3 in extend_segment((2, 5), (4, 5), 3, 5, 11):
        assert dist((4, 5), x3, 11) == 3 and dist(x3, (2, 5), 11) == 5


@pytest.mark.parametrize("q", [7, 11])
def test_mu_classification(q):
    F = GF(q)
    for x2 in itertools.product(range(q), repeat=2):
        l1 = dist((0, 0), x2, q)
        if l1 == 0:
            continue
        for l2, l3 in itertools.product(range(q), repeat=2):
            out = extend_segment((0, 0), x2, l2, l3, q)
            assert len(out) == 1 + F.legendre(LengthTriple(l1, l2, l3, q).discriminant)
            assert all(dist(x2, x, q) == l2 and dist(x, (0, 0), q) == l3 for x in out)
    # brute-force count on a sample of bases
    for x2 in [(1, 0), (2, 3), (0, 5)]:
        l1 = dist((0, 0), x2, q)
        for l2, l3 in itertools.product(range(q), repeat=2):
            assert len(extend_segment((0, 0), x2, l2, l3, q)) == \
                oracles.count_third_vertices((0, 0), x2, l2, l3, q)


def test_triangle_examples():
    r = triangle_exists(LengthTriple(1, 1, 1, 7))
    assert not r.exists and r.reason == "3 nonsquare mod 7" and r.witness is None
    assert triangle_exists(LengthTriple(1, 1, 1, 13)).exists
    zero = triangle_exists(LengthTriple(0, 0, 0, 7))
    assert zero.exists and zero.witness == ((0, 0),) * 3


@pytest.mark.parametrize("q", [5, 7])
def test_triangle_exists_brute_force(q):
    realized = oracles.realized_side_triples(q)
    for ls in itertools.product(range(q), repeat=3):
        r = triangle_exists(LengthTriple(*ls, q))
        assert r.exists == (ls in realized)
        if r.exists:
            a, b, c = r.witness
            assert (dist(a, b, q), dist(b, c, q), dist(c, a, q)) == ls


def test_equilateral_rule():
    for q in (5, 7, 11, 13, 17, 19, 23):
        F = GF(q)
        for ell in range(1, q):
            assert triangle_exists(LengthTriple(ell, ell, ell, q)).exists == (F.legendre(3) >= 0)


def test_equilateral_table():
    rows = equilateral_triangle_table(100)
    for r in rows:
        assert r["exists_Fp"] == (r["p"] % 12 in (1, 3, 11)) == r["exists_mod12_rule"]
        assert r["exists_Fp2"]
    by_p = {r["p"]: r for r in rows}
    assert by_p[13]["exists_Fp"] and not by_p[5]["exists_Fp"]
    assert by_p[5]["sqrt3_Fp2"] == "0+2w"
    assert by_p[3]["exists_Fp"] and by_p[3]["sqrt3_Fp2"] == "0"
    with pytest.raises(QPlaneError):
        equilateral_triangle_table(2000)


def test_length_matrix_and_lengths():
    pts = [(0, 0), (1, 0), (0, 1)]
    L = lengths_of(pts, 7)
    B = length_matrix(L, 7)
    A = tuple(tuple(p) for p in pts[1:])
    assert B.entries == gram(A, 7)
    with pytest.raises(NonzeroDiagonal):
        length_matrix([[1, 0], [0, 0]], 7)
    with pytest.raises(AsymmetricInput):
        length_matrix([[0, 1], [2, 0]], 7)


def test_equilateral_length_matrix():
    q, ell = 11, 3
    h = GF(q).half
    B = equilateral_length_matrix(3, ell, q).entries
    assert all(B[i][j] == (ell * h * (2 if i == j else 1)) % q for i in range(3) for j in range(3))


def test_diag_nonsquare_det():
    w = gram_decompose([[1, 0], [0, 3]], 7)
    assert not w.exists and w.reason == "DetNonSquare"


@pytest.mark.parametrize("d", [2, 3])
def test_gram_brute_force_q3(d):
    q = 3
    achievable = oracles.gram_set(q, d)
    for B in oracles.symmetric_matrices(q, d):
        w = gram_decompose(B, q)
        assert w.exists == (B in achievable)
        if w.exists:
            assert gram(w.A, q) == B
        elif w.rank == d:
            assert GF(q).legendre(w.det) < 0


def test_equilateral_simplex_examples():
    rep = equilateral_simplex(4, 1, 7)
    assert rep["det_agrees"] and not rep["witness"]["exists"]
    assert rep["witness"]["reason"] == "DetNonSquare"
    tri = equilateral_simplex(2, 1, 13)
    assert tri["witness"]["exists"]


def test_diagonalize_congruence():
    B = ((0, 1, 2), (1, 0, 3), (2, 3, 0))
    D, P = congruent_diagonalize(B, 5)
    assert matmul(matmul(P, B, 5), transpose(P), 5) == tuple(
        tuple(D[i] if i == j else 0 for j in range(3)) for i in range(3)
    )
    assert det_mod(P, 5) != 0


def test_random_lengths_deterministic():
    assert random_lengths(11, 20, 1) == random_lengths(11, 20, 1)
    assert all(0 <= v < 11 for v in random_lengths(11, 20, 1))


def test_witness_points_round_trip():
    q = 11
    target = lengths_of([(0, 0), (1, 2), (3, 5)], q)
    w = gram_decompose(length_matrix(target, q))
    assert w.exists
    assert lengths_of(w.points(), q) == target
    json.dumps(w.to_dict())


sym = st.integers(0, 10**6)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([5, 7, 11, 13]), st.integers(1, 5), st.data())
def test_gram_witness_always_verifies(q, d, data):
    vals = data.draw(st.lists(st.integers(0, q - 1), min_size=d * d, max_size=d * d))
    M = [[0] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            M[i][j] = M[j][i] = vals[i * d + j]
    w = gram_decompose(M, q)
    if w.exists:
        assert gram(w.A, q) == tuple(map(tuple, M))
    else:
        assert w.rank == d and GF(q).legendre(w.det) == -1


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([5, 7, 11, 13]), st.integers(1, 5), st.data())
def test_det_matches_leibniz(q, n, data):
    vals = data.draw(st.lists(st.integers(-50, 50), min_size=n * n, max_size=n * n))
    M = [vals[i * n:(i + 1) * n] for i in range(n)]
    assert det_mod(M, q) == oracles.leibniz_det([[v % q for v in r] for r in M], q)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([7, 11, 13, 19]), st.integers(), st.integers(), st.integers())
def test_triangle_witness_is_valid(q, a, b, c):
    r = triangle_exists(LengthTriple(a, b, c, q))
    if r.exists:
        x, y, z = r.witness
        assert (dist(x, y, q), dist(y, z, q), dist(z, x, q)) == (a % q, b % q, c % q)
