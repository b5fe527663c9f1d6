import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from qplane.errors import DivisionByZero, ModulusMismatch, NonResidue, QPlaneError
from qplane.field import (
    GF,
    FieldElement,
    QuadExtElement,
    arith,
    is_prime,
    legendre,
    odd_primes_below,
    quad_ext,
    sqrt,
    sum_of_two_squares,
    tonelli_shanks,
)

PRIMES = odd_primes_below(60)


def test_primes_below():
    assert odd_primes_below(20) == [3, 5, 7, 11, 13, 17, 19]
    assert is_prime(2_147_483_647)
    assert not is_prime(2_147_483_649)


@pytest.mark.parametrize("p", [1, 2, 4, 9, 15, 2**31 + 11])
def test_bad_modulus(p):
    with pytest.raises(QPlaneError):
        GF(p)


def test_legendre_examples():
    assert legendre(FieldElement(3, 13)) == 1
    assert legendre(FieldElement(3, 5)) == -1
    assert legendre(FieldElement(-1, 7)) == -1
    assert legendre(FieldElement(0, 7)) == 0


def test_sqrt_examples():
    assert [int(r) for r in sqrt(FieldElement(3, 13))] == [4, 9]
    with pytest.raises(NonResidue):
        sqrt(FieldElement(3, 7))


def test_sum_of_two_squares_examples():
    assert tuple(map(int, sum_of_two_squares(FieldElement(3, 7)))) == (1, 3)
    assert tuple(map(int, sum_of_two_squares(FieldElement(6, 7)))) == (2, 3)


def test_quad_ext_example():
    z = quad_ext(FieldElement(3, 5))
    assert (z.a0, z.a1) == (0, 2)
    assert z.ns == 2
    assert z.square() == QuadExtElement(3, 0, 5)


def test_quad_ext_rejects_zero():
    with pytest.raises(QPlaneError):
        quad_ext(FieldElement(0, 7))


@pytest.mark.parametrize("p", PRIMES)
def test_sqrt_and_legendre_against_square_table(p):
    F = GF(p)
    table = oracles.squares(p)
    for a in range(p):
        roots = table[a]
        assert F.legendre(a) == (0 if a == 0 else (1 if roots else -1))
        if roots:
            assert sorted(set(F.sqrt(a))) == roots
        else:
            with pytest.raises(NonResidue):
                F.sqrt(a)


@pytest.mark.parametrize("p", PRIMES)
def test_sum_of_two_squares_minimal(p):
    F = GF(p)
    reps = oracles.sums_of_two_squares(p)
    for c in range(p):
        x, y = F.sum_of_two_squares(c)
        assert (x * x + y * y) % p == c
        assert x == min(r[0] for r in reps[c])


@pytest.mark.parametrize("p", [1009, 10007, 1_000_003, 2_147_483_647])
def test_tonelli_shanks_large(p):
    F = GF(p)
    for a in (2, 3, 5, 7, 11, 12345, p - 1):
        if F.legendre(a) == 1:
            r, s = F.sqrt(a)
            assert r * r % p == a % p and (r + s) % p == 0 and r <= s
            assert tonelli_shanks(a, p) ** 2 % p == a % p


def test_arithmetic_and_errors():
    x, y = FieldElement(5, 7), FieldElement(4, 7)
    assert int(x + y) == 2 and int(x - y) == 1 and int(x * y) == 6
    assert int(x / y) * 4 % 7 == 5
    assert int(x.inverse()) == 3 and int(x**6) == 1
    with pytest.raises(QPlaneError):
        x**-1
    assert int(arith(x, y, "add")) == 2 and int(arith(x, 2, "pow")) == 4
    with pytest.raises(DivisionByZero):
        x / FieldElement(0, 7)
    with pytest.raises(ZeroDivisionError):
        x / 0
    with pytest.raises(ModulusMismatch):
        x + FieldElement(1, 11)


def test_quad_ext_table_p3():
    # every nonzero element of F_p has a square root in F_{p^2}
    for p in (5, 7, 11, 13, 17):
        for a in range(1, p):
            z = quad_ext(FieldElement(a, p))
            assert z.square() == QuadExtElement(a, 0, p)
            assert z.in_base_field == (GF(p).legendre(a) == 1)


prime = st.sampled_from(PRIMES + [101, 1009, 65537])


@given(prime, st.integers(), st.integers(), st.integers())
def test_field_axioms(p, a, b, c):
    x, y, z = FieldElement(a, p), FieldElement(b, p), FieldElement(c, p)
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x - x == FieldElement(0, p)
    if int(y):
        assert (x / y) * y == x


@given(prime, st.integers(min_value=1))
def test_euler_criterion_matches_square(p, a):
    F = GF(p)
    a %= p
    if a == 0:
        return
    if F.legendre(a) == 1:
        r, _ = F.sqrt(a)
        assert r * r % p == a
    else:
        assert F.legendre(a * F.nonresidue) == 1


@settings(max_examples=200)
@given(prime, st.integers(), st.integers(), st.integers())
def test_represent_binary(p, e1, e2, c):
    F = GF(p)
    e1, e2 = e1 % p or 1, e2 % p or 1
    x, y = F.represent_binary(e1, e2, c)
    assert (e1 * x * x + e2 * y * y - c) % p == 0
