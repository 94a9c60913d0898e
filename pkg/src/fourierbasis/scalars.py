"""Exact scalar arithmetic.

Every scalar the package needs (character values, transform coefficients)
lives in the cyclotomic field generated by a primitive 60th root of unity,
since 60 = lcm(1,...,6) covers all element orders that occur.  Elements are
stored on the power basis z^0..z^15 modulo the 60th cyclotomic polynomial,
with Fraction coefficients.  The representation is canonical, so == and hash
are exact; floats appear only in evaluate().
"""
from __future__ import annotations

import cmath
from fractions import Fraction

ORDER = 60


def _poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # Long division of integer polynomials; den must divide exactly wherever
    # this is used (cyclotomic factorizations), so a nonzero remainder or a
    # non-integer quotient coefficient is a hard error.
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            continue
        if c % lead:
            raise ArithmeticError("non-exact polynomial division")
        q = c // lead
        quot[i - dn] = q
        for j, b in enumerate(den):
            num[i - dn + j] -= q * b
    while num and num[-1] == 0:
        num.pop()
    return quot, num


_CYCLO_CACHE: dict[int, list[int]] = {1: [-1, 1]}


def _cyclotomic(n: int) -> list[int]:
    if n not in _CYCLO_CACHE:
        num = [0] * n + [1]
        num[0] = -1
        den = [1]
        for d in range(1, n):
            if n % d == 0:
                den = _poly_mul(den, _cyclotomic(d))
        quot, rem = _poly_divmod(num, den)
        if rem:
            raise ArithmeticError("cyclotomic factorization failed")
        _CYCLO_CACHE[n] = quot
    return _CYCLO_CACHE[n]


_PHI = _cyclotomic(ORDER)
DEGREE = len(_PHI) - 1  # 16


def _power_table() -> list[list[int]]:
    # z^k on the power basis for k = 0..ORDER-1 (conjugation needs the full
    # range; products of basis monomials only reach 2*(DEGREE-1)).
    table: list[list[int]] = []
    for k in range(ORDER):
        if k < DEGREE:
            row = [0] * DEGREE
            row[k] = 1
        else:
            row = [0] + table[k - 1][:]
            lead = row.pop()
            if lead:
                row = [c - lead * p for c, p in zip(row, _PHI[:DEGREE])]
        table.append(row)
    return table


_POWER = _power_table()

_RatLike = (int, Fraction)


class Cyclo:
    """An element of Q(z), z = primitive 60th root of unity.

    Immutable.  Coefficients are kept sparsely as {exponent: Fraction} over
    exponents 0..15 with zero values pruned, which makes equality and hashing
    canonical.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: dict[int, Fraction] | None = None):
        c: dict[int, Fraction] = {}
        if coeffs:
            for k, v in coeffs.items():
                if not 0 <= k < DEGREE:
                    raise ValueError(f"exponent {k} outside the power basis")
                v = v if isinstance(v, Fraction) else Fraction(v)
                if v:
                    c[k] = v
        self._c = c
        self._hash = None

    @classmethod
    def from_rational(cls, q) -> Cyclo:
        return cls({0: Fraction(q)})

    @classmethod
    def root_of_unity(cls, n: int, k: int = 1) -> Cyclo:
        """exp(2*pi*i*k/n) as a ring element; n must divide 60."""
        if n <= 0 or ORDER % n:
            raise ValueError(f"order {n} does not divide {ORDER}")
        e = (ORDER // n * k) % ORDER
        return cls({i: Fraction(c) for i, c in enumerate(_POWER[e]) if c})

    @classmethod
    def deserialize(cls, data) -> Cyclo:
        return cls({int(k): Fraction(int(num), int(den)) for k, num, den in data})

    def serialize(self) -> list[list[int]]:
        """Sorted (exponent, numerator, denominator) triples; rationals come
        out as a single exponent-0 triple."""
        return [[k, v.numerator, v.denominator] for k, v in sorted(self._c.items())]

    # -- structure queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self._c

    def is_rational(self) -> bool:
        return all(k == 0 for k in self._c)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self._c.get(0, Fraction(0))

    def is_real(self) -> bool:
        return self == self.conjugate()

    def is_nonneg_real(self, tol: float = 1e-12) -> bool:
        """Exact for rational values; for irrational real values the numeric
        evaluation is compared against -tol.  Non-real values are never
        accepted (reality is tested exactly, not numerically)."""
        if not self.is_real():
            return False
        if self.is_rational():
            return self.as_fraction() >= 0
        return self.evaluate().real >= -tol

    # -- arithmetic -------------------------------------------------------

    def _scaled(self, q: Fraction) -> Cyclo:
        if not q:
            return ZERO
        return Cyclo({k: v * q for k, v in self._c.items()})

    def __add__(self, other) -> Cyclo:
        if isinstance(other, _RatLike):
            other = Cyclo.from_rational(other)
        if not isinstance(other, Cyclo):
            return NotImplemented
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, Fraction(0)) + v
        return Cyclo(c)

    __radd__ = __add__

    def __neg__(self) -> Cyclo:
        return Cyclo({k: -v for k, v in self._c.items()})

    def __sub__(self, other) -> Cyclo:
        if isinstance(other, _RatLike):
            other = Cyclo.from_rational(other)
        if not isinstance(other, Cyclo):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Cyclo:
        return (-self) + other

    def __mul__(self, other) -> Cyclo:
        if isinstance(other, _RatLike):
            return self._scaled(Fraction(other))
        if not isinstance(other, Cyclo):
            return NotImplemented
        if other.is_rational():
            return self._scaled(other._c.get(0, Fraction(0)))
        if self.is_rational():
            return other._scaled(self._c.get(0, Fraction(0)))
        acc = [Fraction(0)] * DEGREE
        for k1, v1 in self._c.items():
            for k2, v2 in other._c.items():
                w = v1 * v2
                e = k1 + k2
                if e < DEGREE:
                    acc[e] += w
                else:
                    for i, c in enumerate(_POWER[e]):
                        if c:
                            acc[i] += w * c
        return Cyclo({i: v for i, v in enumerate(acc) if v})

    __rmul__ = __mul__

    def __truediv__(self, other) -> Cyclo:
        if isinstance(other, _RatLike):
            other = Cyclo.from_rational(other)
        if not isinstance(other, Cyclo):
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero in the cyclotomic ring")
        if other.is_rational():
            return self._scaled(1 / other.as_fraction())
        return self * other.inverse()

    def __pow__(self, n: int) -> Cyclo:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> Cyclo:
        """Multiplicative inverse, by solving the 16x16 linear system for
        multiplication by self (exact Gaussian elimination)."""
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        if self.is_rational():
            return Cyclo({0: 1 / self.as_fraction()})
        cols = []
        for j in range(DEGREE):
            prod = self * Cyclo({j: Fraction(1)})
            cols.append([prod._c.get(i, Fraction(0)) for i in range(DEGREE)])
        # augmented system: sum_j x_j * cols[j] = e_0
        m = [[cols[j][i] for j in range(DEGREE)] for i in range(DEGREE)]
        rhs = [Fraction(1 if i == 0 else 0) for i in range(DEGREE)]
        for col in range(DEGREE):
            piv = next(r for r in range(col, DEGREE) if m[r][col])
            m[col], m[piv] = m[piv], m[col]
            rhs[col], rhs[piv] = rhs[piv], rhs[col]
            inv = 1 / m[col][col]
            m[col] = [x * inv for x in m[col]]
            rhs[col] *= inv
            for r in range(DEGREE):
                if r != col and m[r][col]:
                    f = m[r][col]
                    m[r] = [x - f * y for x, y in zip(m[r], m[col])]
                    rhs[r] -= f * rhs[col]
        return Cyclo({i: v for i, v in enumerate(rhs) if v})

    def conjugate(self) -> Cyclo:
        acc = [Fraction(0)] * DEGREE
        for k, v in self._c.items():
            for i, c in enumerate(_POWER[(ORDER - k) % ORDER]):
                if c:
                    acc[i] += v * c
        return Cyclo({i: v for i, v in enumerate(acc) if v})

    def evaluate(self) -> complex:
        return sum(
            (complex(v) * cmath.exp(2j * cmath.pi * k / ORDER) for k, v in self._c.items()),
            complex(0),
        )

    # -- canonical form ----------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, _RatLike):
            other = Cyclo.from_rational(other)
        if not isinstance(other, Cyclo):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._c)

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k, v in sorted(self._c.items()):
            if k == 0:
                parts.append(str(v))
            elif v == 1:
                parts.append(f"z^{k}")
            elif v == -1:
                parts.append(f"-z^{k}")
            else:
                parts.append(f"{v}*z^{k}")
        return " + ".join(parts).replace("+ -", "- ")


ZERO = Cyclo()
ONE = Cyclo.from_rational(1)
MINUS_ONE = Cyclo.from_rational(-1)


def is_nonneg_real(a: Cyclo, tol: float = 1e-12) -> bool:
    return a.is_nonneg_real(tol)
