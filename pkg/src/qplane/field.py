"""Exact arithmetic in F_p and its quadratic extension F_{p^2}.

Geometry elsewhere in the package works on plain integer residues for speed;
:class:`PrimeField` supplies the integer-level operations and
:class:`FieldElement` wraps a residue for callers who want operator syntax.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DivisionByZero, ModulusMismatch, NonResidue, QPlaneError

MAX_MODULUS = 2**31
# below this bound square roots come from an exhaustive table of squares
SQRT_TABLE_LIMIT = 1000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13):
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.4e14
    for a in (2, 3, 5, 7, 11, 13, 17):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def odd_primes_below(n: int) -> list[int]:
    return [p for p in range(3, n, 2) if is_prime(p)]


class PrimeField:
    """The prime field F_p for an odd prime 3 <= p < 2**31.

    Use :func:`GF` to obtain a cached instance.
    """

    def __init__(self, p: int):
        p = int(p)
        if p % 2 == 0:
            raise QPlaneError(f"characteristic 2 is not supported (p={p})")
        if not 3 <= p < MAX_MODULUS or not is_prime(p):
            raise QPlaneError(f"modulus must be an odd prime below 2**31, got {p}")
        self.p = p
        self._roots: dict[int, int] | None = None
        self._ns: int | None = None

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value % self.p, self.p)

    def elements(self):
        return [FieldElement(v, self.p) for v in range(self.p)]

    # integer-level operations -------------------------------------------

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise DivisionByZero(f"0 has no inverse mod {self.p}")
        return pow(a, -1, self.p)

    @property
    def half(self) -> int:
        return (self.p + 1) // 2

    def legendre(self, a: int) -> int:
        a %= self.p
        if a == 0:
            return 0
        return 1 if pow(a, (self.p - 1) // 2, self.p) == 1 else -1

    def is_square(self, a: int) -> bool:
        return self.legendre(a) >= 0

    @property
    def nonresidue(self) -> int:
        """Smallest positive quadratic nonresidue."""
        if self._ns is None:
            self._ns = next(a for a in range(2, self.p) if self.legendre(a) == -1)
        return self._ns

    def _root_table(self) -> dict[int, int]:
        if self._roots is None:
            table: dict[int, int] = {}
            for r in range((self.p + 1) // 2):
                table.setdefault(r * r % self.p, r)
            self._roots = table
        return self._roots

    def sqrt(self, a: int) -> tuple[int, int]:
        """Both square roots of ``a`` as ``(r, p - r)`` with ``r <= p - r``."""
        a %= self.p
        if a == 0:
            return (0, 0)
        if self.p < SQRT_TABLE_LIMIT:
            r = self._root_table().get(a)
            if r is None:
                raise NonResidue(f"{a} is not a square mod {self.p}")
        else:
            if self.legendre(a) != 1:
                raise NonResidue(f"{a} is not a square mod {self.p}")
            r = tonelli_shanks(a, self.p)
        r = min(r, self.p - r)
        return (r, self.p - r)

    def sum_of_two_squares(self, c: int) -> tuple[int, int]:
        """Smallest ``x`` (then smaller root ``y``) with ``x^2 + y^2 = c``."""
        return self.represent_binary(1, 1, c)

    def represent_binary(self, e1: int, e2: int, c: int) -> tuple[int, int]:
        """Solve ``e1*x^2 + e2*y^2 = c`` for nonzero ``e1, e2``, smallest ``x`` first.

        Every binary nondegenerate form over F_p represents every element, so
        this always succeeds.
        """
        p = self.p
        e1 %= p
        e2 %= p
        c %= p
        if e1 == 0 or e2 == 0:
            raise QPlaneError("represent_binary needs nonzero coefficients")
        e2inv = self.inv(e2)
        for x in range(p):
            rest = (c - e1 * x * x) * e2inv % p
            if self.legendre(rest) >= 0:
                return (x, self.sqrt(rest)[0])
        raise AssertionError("binary form failed to represent a value")  # unreachable


def tonelli_shanks(a: int, p: int) -> int:
    """A square root of the quadratic residue ``a`` modulo the odd prime ``p``."""
    a %= p
    if a == 0:
        return 0
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


@dataclass(frozen=True)
class FieldElement:
    value: int
    modulus: int

    def __post_init__(self):
        if not 0 <= self.value < self.modulus:
            object.__setattr__(self, "value", self.value % self.modulus)

    @property
    def field(self) -> PrimeField:
        return GF(self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise ModulusMismatch(f"mod {self.modulus} vs mod {other.modulus}")
            return other.value
        if isinstance(other, int):
            return other % self.modulus
        return NotImplemented

    def _new(self, v: int) -> FieldElement:
        return FieldElement(v % self.modulus, self.modulus)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.value * self.field.inv(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(o * self.field.inv(self.value))

    def __neg__(self):
        return self._new(-self.value)

    def __pow__(self, e: int):
        if e < 0:
            raise QPlaneError("exponent must be a nonnegative integer")
        # square-and-multiply
        result, base = 1, self.value
        while e:
            if e & 1:
                result = result * base % self.modulus
            base = base * base % self.modulus
            e >>= 1
        return self._new(result)

    def inverse(self) -> FieldElement:
        return self._new(self.field.inv(self.value))

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __str__(self):
        return str(self.value)


def arith(x: FieldElement, y: FieldElement | int, op: str) -> FieldElement:
    """Dispatch a named field operation (add, sub, mul, div, neg, pow)."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "neg":
        return -x
    if op == "pow":
        return x ** int(y)
    raise QPlaneError(f"unknown operation {op!r}")


def legendre(a: FieldElement) -> int:
    return a.field.legendre(a.value)


def sqrt(a: FieldElement) -> tuple[FieldElement, FieldElement]:
    r, s = a.field.sqrt(a.value)
    return (a._new(r), a._new(s))


def sum_of_two_squares(c: FieldElement) -> tuple[FieldElement, FieldElement]:
    x, y = c.field.sum_of_two_squares(c.value)
    return (c._new(x), c._new(y))


@dataclass(frozen=True)
class QuadExtElement:
    """``a0 + a1*w`` in F_{p^2}, where ``w^2`` is the smallest nonresidue mod p."""

    a0: int
    a1: int
    modulus: int

    @property
    def ns(self) -> int:
        return GF(self.modulus).nonresidue

    def _check(self, other: QuadExtElement):
        if other.modulus != self.modulus:
            raise ModulusMismatch(f"mod {self.modulus} vs mod {other.modulus}")

    def __add__(self, other: QuadExtElement) -> QuadExtElement:
        self._check(other)
        p = self.modulus
        return QuadExtElement((self.a0 + other.a0) % p, (self.a1 + other.a1) % p, p)

    def __sub__(self, other: QuadExtElement) -> QuadExtElement:
        self._check(other)
        p = self.modulus
        return QuadExtElement((self.a0 - other.a0) % p, (self.a1 - other.a1) % p, p)

    def __mul__(self, other: QuadExtElement) -> QuadExtElement:
        self._check(other)
        p = self.modulus
        a0 = (self.a0 * other.a0 + self.ns * self.a1 * other.a1) % p
        a1 = (self.a0 * other.a1 + self.a1 * other.a0) % p
        return QuadExtElement(a0, a1, p)

    def square(self) -> QuadExtElement:
        return self * self

    @property
    def in_base_field(self) -> bool:
        return self.a1 == 0

    def __str__(self):
        if self.a1 == 0:
            return str(self.a0)
        return f"{self.a0}+{self.a1}w"


def quad_ext(a: FieldElement) -> QuadExtElement:
    """A square root of ``a`` in F_{p^2}; lies in F_p when ``a`` is a residue."""
    F = a.field
    if a.value == 0:
        raise QPlaneError("quad_ext requires a nonzero element")
    if F.legendre(a.value) == 1:
        return QuadExtElement(F.sqrt(a.value)[0], 0, F.p)
    # a = ns * t^2 and (t w)^2 = t^2 ns
    t = F.sqrt(a.value * F.inv(F.nonresidue))[0]
    return QuadExtElement(0, t, F.p)
