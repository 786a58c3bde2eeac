"""Linear forms in the parameters k_{Omega,j}, without constant term."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .cyclotomic import Cyclotomic

Key = tuple[int, int]


class LinearForm:
    """Sum of ``coeff * k_{Omega,j}`` with Cyclotomic coefficients.

    Zero coefficients are never stored, so equality is plain dict equality
    after canonical reduction of each coefficient.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[Key, object] | None = None):
        clean = {}
        for key, c in (coeffs or {}).items():
            c = Cyclotomic.coerce(c)
            if not c.is_zero():
                clean[(int(key[0]), int(key[1]))] = c.canonical()
        object.__setattr__(self, "_coeffs", clean)

    def __setattr__(self, key, value):
        raise AttributeError("LinearForm is immutable")

    @classmethod
    def variable(cls, omega: int, j: int, coeff=1) -> "LinearForm":
        return cls({(omega, j): coeff})

    @classmethod
    def from_vector(cls, order: Sequence[Key], vector: Iterable) -> "LinearForm":
        return cls(dict(zip(order, vector)))

    def __getitem__(self, key: Key) -> Cyclotomic:
        return self._coeffs.get(key, Cyclotomic.rational(0))

    def keys(self):
        return sorted(self._coeffs)

    def items(self):
        return [(k, self._coeffs[k]) for k in self.keys()]

    def is_zero(self) -> bool:
        return not self._coeffs

    def __add__(self, other: "LinearForm") -> "LinearForm":
        if not isinstance(other, LinearForm):
            return NotImplemented
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out[k] + c if k in out else c
        return LinearForm(out)

    def __neg__(self):
        return LinearForm({k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar) -> "LinearForm":
        if isinstance(scalar, LinearForm):
            return NotImplemented
        s = Cyclotomic.coerce(scalar)
        return LinearForm({k: c * s for k, c in self._coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "LinearForm":
        if isinstance(scalar, (int, Fraction)):
            return self * (1 / Fraction(scalar))
        return self * Cyclotomic.coerce(scalar).inverse()

    def __eq__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(sorted(self._coeffs.items())))

    def evaluate(self, point: Mapping[Key, object]):
        """Value at a parameter point given as a mapping (Omega, j) -> scalar."""
        acc = Cyclotomic.rational(0)
        for k, c in self._coeffs.items():
            acc = acc + c * Cyclotomic.coerce(point.get(k, 0))
        return acc.canonical().to_rational() if acc.canonical().is_rational() else acc

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self._coeffs.values())

    def rational_coeffs(self) -> dict[Key, Fraction]:
        """Lossless demotion to rational coefficients."""
        if not self.is_rational():
            raise ValueError(f"form has irrational coefficients: {self}")
        return {k: c.to_rational() for k, c in self._coeffs.items()}

    def to_vector(self, order: Sequence[Key]) -> list[Fraction]:
        rc = self.rational_coeffs()
        stray = set(rc) - set(order)
        if stray:
            raise KeyError(f"form uses parameters outside the coordinate order: {sorted(stray)}")
        return [rc.get(k, Fraction(0)) for k in order]

    def __repr__(self):
        return f"LinearForm({self})"

    def __str__(self):
        return format_form(self)


def _fmt_coeff(c: Cyclotomic) -> tuple[str, str]:
    """Sign and magnitude text for a coefficient."""
    if c.is_rational():
        q = c.to_rational()
        mag = abs(q)
        return ("-" if q < 0 else "+"), ("" if mag == 1 else str(mag))
    return "+", f"({c})"


def format_form(form: LinearForm) -> str:
    """Render as e.g. ``12k_{1,0} - 12k_{1,1}``; the zero form renders as ``0``."""
    parts = []
    for (om, j), c in form.items():
        sign, mag = _fmt_coeff(c)
        parts.append((sign, f"{mag}k_{{{om},{j}}}"))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*k_\{(\d+),(\d+)\}")


def parse_form(text: str) -> LinearForm:
    """Inverse of :func:`format_form` for rational forms."""
    s = text.replace(" ", "").replace("−", "-")
    if s == "0":
        return LinearForm()
    pos = 0
    coeffs: dict[Key, Fraction] = {}
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m:
            raise ValueError(f"cannot parse linear form {text!r} at offset {pos}")
        sign, mag, om, j = m.groups()
        c = Fraction(mag) if mag else Fraction(1)
        if sign == "-":
            c = -c
        key = (int(om), int(j))
        coeffs[key] = coeffs.get(key, Fraction(0)) + c
        pos = m.end()
    return LinearForm(coeffs)
