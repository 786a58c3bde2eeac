"""Dense univariate polynomials over the rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

Scalar = int | Fraction


class Polynomial:
    """Polynomial in ``t`` with rational coefficients, lowest degree first.

    Trailing zeros are stripped so that equal polynomials compare equal
    coefficient-wise. The zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, key, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> "Polynomial":
        return cls([0] * degree + [coeff])

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Polynomial([1])
        for _ in range(k):
            result = result * self
        return result

    def __divmod__(self, other):
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for i in range(dq, -1, -1):
            c = rem[i + len(other.coeffs) - 1] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return Polynomial(quot), Polynomial(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("polynomial has non-integral coefficients")
        return [int(c) for c in self.coeffs]

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mag = abs(c)
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            body = str(mag) if (mag != 1 or i == 0) else ""
            parts.append(("-" if c < 0 else "+", body + mono))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


# The polynomials in play are fake degrees and Poincare series, which have
# integer coefficients; the class itself admits rationals.
IntPolynomial = Polynomial


def _coerce(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial([x])
    raise TypeError(f"cannot coerce {type(x).__name__} to Polynomial")


def poly_divides(f: Polynomial, g: Polynomial) -> bool:
    """True iff ``f`` divides ``g`` in Q[t]."""
    if f.is_zero():
        raise ZeroDivisionError("divisor is the zero polynomial")
    return divmod(g, f)[1].is_zero()


def exact_quotient(g: Polynomial, f: Polynomial) -> Polynomial:
    q, r = divmod(g, f)
    if not r.is_zero():
        raise ArithmeticError(f"{f} does not divide {g}")
    return q


def trailing_degree(f: Polynomial) -> int:
    """Order of vanishing at t = 0."""
    if f.is_zero():
        raise ValueError("trailing degree of the zero polynomial is undefined")
    return next(i for i, c in enumerate(f.coeffs) if c)
