"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored as rational coordinates with respect to the power basis
``1, z, ..., z^(phi(n)-1)`` reduced modulo the n-th cyclotomic polynomial.
Binary operations on elements of different conductors embed both operands
into the lcm of the conductors first.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in _divisors(n)[:-1]:
        num = _exact_int_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _exact_int_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % lead:
            raise ArithmeticError("inexact polynomial division")
        c //= lead
        q[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row e holds the power-basis coordinates of zeta_n^e, for 0 <= e < n."""
    phi = totient(n)
    poly = cyclotomic_polynomial(n)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(phi):
                cur[i] -= top * poly[i]
    return tuple(rows)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _solve_rational(rows: Sequence[Sequence[Fraction]], target: Sequence[Fraction]):
    """Solve x @ rows == target over Q; return x or None if inconsistent."""
    m = len(rows)
    k = len(target)
    # augmented system in column form: sum_i x_i rows[i][j] = target[j]
    aug = [[Fraction(rows[i][j]) for i in range(m)] + [Fraction(target[j])] for j in range(k)]
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, k) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(k):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == k:
            break
    if any(aug[i][m] != 0 for i in range(r, k)):
        return None
    x = [Fraction(0)] * m
    for i, c in enumerate(pivots):
        x[c] = aug[i][m]
    return x


class Cyclotomic:
    """An element of Q(zeta_n). Immutable."""

    __slots__ = ("n", "coeffs", "_canon")

    def __init__(self, n: int, coeffs: Iterable[Scalar]):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if n < 1:
            raise ValueError("conductor must be positive")
        if len(coeffs) != totient(n):
            raise ValueError(f"expected {totient(n)} coordinates for conductor {n}, got {len(coeffs)}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_canon", None)

    def __setattr__(self, key, value):
        raise AttributeError("Cyclotomic is immutable")

    # construction -----------------------------------------------------
    @classmethod
    def rational(cls, value: Scalar, n: int = 1) -> "Cyclotomic":
        coeffs = [Fraction(0)] * totient(n)
        coeffs[0] = Fraction(value)
        return cls(n, coeffs)

    @classmethod
    def zeta(cls, n: int, power: int = 1) -> "Cyclotomic":
        return cls(n, power_table(n)[power % n])

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[tuple[int, Scalar]]) -> "Cyclotomic":
        """Build sum(c * zeta_n^e) from (e, c) pairs; exponents may be arbitrary."""
        table = power_table(n)
        acc = [Fraction(0)] * totient(n)
        for e, c in terms:
            c = Fraction(c)
            if c:
                for i, v in enumerate(table[e % n]):
                    if v:
                        acc[i] += c * v
        return cls(n, acc)

    @classmethod
    def coerce(cls, value, n: int = 1) -> "Cyclotomic":
        if isinstance(value, Cyclotomic):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.rational(value, n)
        raise TypeError(f"cannot coerce {type(value).__name__} to Cyclotomic")

    # conductor changes ---------------------------------------------
    def embed(self, m: int) -> "Cyclotomic":
        """Image in Q(zeta_m); requires n | m."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"conductor {self.n} does not divide {m}")
        step = m // self.n
        return Cyclotomic.from_terms(m, ((i * step, c) for i, c in enumerate(self.coeffs) if c))

    def to_conductor(self, m: int) -> "Cyclotomic":
        """Rewrite over conductor m (embedding or descending); ValueError if impossible."""
        if m == self.n:
            return self
        if m % self.n == 0:
            return self.embed(m)
        big = _lcm(self.n, m)
        target = self.embed(big).coeffs
        step = big // m
        table = power_table(big)
        basis = [table[(i * step) % big] for i in range(totient(m))]
        x = _solve_rational(basis, target)
        if x is None:
            raise ValueError(f"element does not lie in Q(zeta_{m})")
        return Cyclotomic(m, x)

    def canonical(self) -> "Cyclotomic":
        """Same element over the smallest conductor that contains it."""
        if self._canon is None:
            result = self
            if self.is_rational():
                result = Cyclotomic.rational(self.coeffs[0])
            else:
                for d in _divisors(self.n)[:-1]:
                    try:
                        result = self.to_conductor(d)
                        break
                    except ValueError:
                        continue
            object.__setattr__(self, "_canon", result)
        return self._canon

    # predicates ------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_integral_in_basis(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    # arithmetic ---------------------------------------------------------
    def _unify(self, other) -> tuple["Cyclotomic", "Cyclotomic"]:
        other = Cyclotomic.coerce(other, self.n)
        if other.n == self.n:
            return self, other
        m = _lcm(self.n, other.n)
        return self.embed(m), other.embed(m)

    def __add__(self, other):
        try:
            a, b = self._unify(other)
        except TypeError:
            return NotImplemented
        return Cyclotomic(a.n, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.n, [-x for x in self.coeffs])

    def __sub__(self, other):
        try:
            a, b = self._unify(other)
        except TypeError:
            return NotImplemented
        return Cyclotomic(a.n, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.n, [x * other for x in self.coeffs])
        try:
            a, b = self._unify(other)
        except TypeError:
            return NotImplemented
        n = a.n
        table = power_table(n)
        acc = [Fraction(0)] * totient(n)
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if not y:
                    continue
                xy = x * y
                for k, v in enumerate(table[(i + j) % n]):
                    if v:
                        acc[k] += xy * v
        return Cyclotomic(n, acc)

    __rmul__ = __mul__

    def _mul_matrix(self) -> list[list[Fraction]]:
        # row i: coordinates of self * zeta^i
        return [list((self * Cyclotomic.zeta(self.n, i)).coeffs) for i in range(totient(self.n))]

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.is_rational():
            return Cyclotomic.rational(1 / self.coeffs[0], self.n)
        one = [Fraction(0)] * totient(self.n)
        one[0] = Fraction(1)
        x = _solve_rational(self._mul_matrix(), one)
        return Cyclotomic(self.n, x)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in cyclotomic field")
            return Cyclotomic(self.n, [x / other for x in self.coeffs])
        try:
            a, b = self._unify(other)
        except TypeError:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return Cyclotomic.coerce(other, self.n) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.rational(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation zeta -> zeta^-1."""
        return Cyclotomic.from_terms(self.n, ((-i, c) for i, c in enumerate(self.coeffs) if c))

    def galois(self, k: int) -> "Cyclotomic":
        """Image under zeta -> zeta^k (k coprime to n)."""
        if gcd(k, self.n) != 1:
            raise ValueError("Galois exponent must be coprime to the conductor")
        return Cyclotomic.from_terms(self.n, ((i * k, c) for i, c in enumerate(self.coeffs) if c))

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._unify(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        c = self.canonical()
        if c.n == 1:
            return hash(c.coeffs[0])
        return hash((c.n, c.coeffs))

    def __bool__(self):
        return not self.is_zero()

    # conversion ---------------------------------------------------------
    def __complex__(self):
        z = cmath.exp(2j * cmath.pi / self.n)
        return complex(sum(float(c) * z**i for i, c in enumerate(self.coeffs)))

    def terms(self) -> list[tuple[int, Fraction]]:
        return [(i, c) for i, c in enumerate(self.coeffs) if c]

    def serialize(self) -> list[list]:
        """[[exponent, "num", "den"], ...] over this element's conductor."""
        return [[i, str(c.numerator), str(c.denominator)] for i, c in self.terms()]

    @classmethod
    def deserialize(cls, n: int, data: Sequence[Sequence]) -> "Cyclotomic":
        terms = []
        for entry in data:
            if len(entry) != 3:
                raise ValueError(f"cyclotomic term must be [exponent, num, den], got {entry!r}")
            e, num, den = entry
            e = int(e)
            if not 0 <= e < n:
                raise ValueError(f"exponent {e} outside [0, {n})")
            terms.append((e, Fraction(int(num), int(den))))
        return cls.from_terms(n, terms)

    def __repr__(self):
        return f"Cyclotomic({self.n}, {self})"

    def __str__(self):
        return format_cyclotomic(self)


def format_cyclotomic(x: Cyclotomic, symbol: str = "z") -> str:
    """Human-readable form such as ``-2z - 1`` or ``z^3 + 1`` (highest power first)."""
    parts = []
    for i, c in sorted(x.terms(), key=lambda t: -t[0]):
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = symbol if i == 1 else f"{symbol}^{i}"
            body = mono if mag == 1 else f"{mag}{mono}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def cyclotomic_arith(a: Cyclotomic, b: Cyclotomic, op: str) -> Cyclotomic:
    """Strict binary operation: both operands must share a conductor."""
    if a.n != b.n:
        raise ValueError(f"conductor mismatch: {a.n} vs {b.n}; embed into a common conductor first")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")
