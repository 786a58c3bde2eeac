"""Character tables: column matching, exact validation, fake degrees."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

import numpy as np

from . import _kernels
from .bundles import CharacterBundle
from .errors import ValidationError
from .exact.cyclotomic import Cyclotomic, power_table, totient
from .exact.poly import Polynomial, trailing_degree
from .groups import GroupData

CONVENTIONS = ("plain", "conjugate")


@dataclass(frozen=True)
class FakeDegreeRecord:
    character: int
    f: Polynomial
    b: int
    d: int


@dataclass
class CharacterTable:
    """Validated table with columns reordered to the group's class order."""

    group: GroupData
    labels: list[str]
    values: list[list[Cyclotomic]]  # values[row][class index]
    degrees: list[int]
    column_match: dict[int, int]  # bundle column -> class index
    fake_degree_convention: str | None = None
    _fake: dict[int, FakeDegreeRecord] = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.labels)

    def dim(self, row: int) -> int:
        return int(self.values[row][0].to_rational())

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no character labelled {label!r} in {self.group.name}") from None

    def value(self, row: int, cls: int) -> Cyclotomic:
        return self.values[row][cls]

    def value_at_word(self, row: int, word) -> Cyclotomic:
        return self.values[row][int(self.group.class_of[self.group.word(word)])]


def poincare_series(degrees) -> Polynomial:
    """Product of 1 + t + ... + t^(d-1) over the invariant degrees."""
    p = Polynomial([1])
    for d in degrees:
        if d < 1:
            raise ValueError("invariant degrees must be positive")
        p = p * Polynomial([1] * d)
    return p


def _int_coords(x: Cyclotomic, n: int, what: str) -> list[int]:
    c = x.to_conductor(n).coeffs
    if any(v.denominator != 1 for v in c):
        raise ValidationError(f"{what} is not an algebraic integer: {x}")
    return [int(v) for v in c]


def _values_array(values: list[list[Cyclotomic]], n: int) -> np.ndarray:
    phi = totient(n)
    arr = np.zeros((len(values), len(values[0]) if values else 0, phi), dtype=np.int64)
    for i, row in enumerate(values):
        for j, x in enumerate(row):
            arr[i, j] = _int_coords(x, n, f"character value at row {i}, class {j}")
    return arr


def _conj_array(arr: np.ndarray, n: int) -> np.ndarray:
    """Complex conjugate of integer coordinate vectors."""
    phi = totient(n)
    table = np.array(power_table(n), dtype=np.int64)
    perm = table[[(-i) % n for i in range(phi)]]  # coords of zeta^-i
    return arr @ perm


def match_columns(bundle: CharacterBundle, g: GroupData) -> dict[int, int]:
    """Map bundle columns to class indices by fingerprint, honoring pins."""
    if len(bundle.fingerprints) != len(g.classes):
        raise ValidationError(
            f"{bundle.group}: bundle has {len(bundle.fingerprints)} columns but the group has {len(g.classes)} classes"
        )
    keys = {}
    for c in g.classes:
        keys.setdefault((c.size, c.element_order, c.trace.canonical(), c.det.canonical()), []).append(c.index)
    match: dict[int, int] = {}
    for col, fp in enumerate(bundle.fingerprints):
        cands = keys.get(fp.key(), [])
        if col in bundle.column_pins:
            try:
                target = int(g.class_of[g.word(bundle.column_pins[col])])
            except KeyError as exc:
                raise ValidationError(f"{bundle.group}: column pin {col}: {exc}") from None
            if target not in cands:
                raise ValidationError(f"{bundle.group}: pinned class for column {col} does not have the declared fingerprint")
            match[col] = target
        elif len(cands) == 1:
            match[col] = cands[0]
        elif not cands:
            raise ValidationError(f"{bundle.group}: no class matches the fingerprint of column {col} (size {fp.size}, order {fp.order})")
        else:
            raise ValidationError(
                f"{bundle.group}: fingerprint of column {col} matches classes {cands}; add a column_pin"
            )
    if len(set(match.values())) != len(match):
        raise ValidationError(f"{bundle.group}: columns do not match classes bijectively")
    return match


def check_orthogonality(values: list[list[Cyclotomic]], g: GroupData) -> None:
    n = g.conductor
    arr = _values_array(values, n)
    conj = _conj_array(arr, n)
    sizes = np.array([c.size for c in g.classes], dtype=np.int64)
    phi = totient(n)
    red = _kernels.reduction_table(power_table(n), phi)
    full = np.zeros((len(values), len(values), 2 * phi - 1), dtype=np.int64)
    for p in range(phi):
        for q in range(phi):
            full[:, :, p + q] += np.einsum("ak,bk->ab", arr[:, :, p] * sizes, conj[:, :, q])
    gram = full @ red
    expected = np.zeros_like(gram)
    expected[np.arange(len(values)), np.arange(len(values)), 0] = g.order
    if not np.array_equal(gram, expected):
        bad = np.argwhere(np.any(gram != expected, axis=2))
        a, b = (int(x) for x in bad[0])
        raise ValidationError(f"orthogonality fails for rows {a} and {b} ({len(bad)} offending pairs)")


def load_and_validate(bundle: CharacterBundle, g: GroupData, convention: str | None = None) -> CharacterTable:
    if bundle.group != g.name:
        raise ValidationError(f"character bundle is for {bundle.group!r}, group is {g.name!r}")
    if len(bundle.labels) != len(g.classes):
        raise ValidationError(f"{g.name}: {len(bundle.labels)} characters for {len(g.classes)} classes")
    if list(bundle.degrees) != list(g.spec.degrees):
        raise ValidationError(f"{g.name}: character bundle degrees {bundle.degrees} differ from group bundle {list(g.spec.degrees)}")
    match = match_columns(bundle, g)
    k = len(g.classes)
    values = [[None] * k for _ in bundle.labels]
    for col, cls in match.items():
        for r, row in enumerate(bundle.values):
            values[r][cls] = row[col].to_conductor(g.conductor) if row[col].n != g.conductor else row[col]
    for r, row in enumerate(values):
        d = row[0]
        if not d.is_rational() or d.to_rational() <= 0 or d.to_rational().denominator != 1:
            raise ValidationError(f"{g.name}: degree of {bundle.labels[r]} is not a positive integer")
    if sum(int(row[0].to_rational()) ** 2 for row in values) != g.order:
        raise ValidationError(f"{g.name}: sum of squared degrees differs from the group order")
    if prod(g.spec.degrees) != g.order:
        raise ValidationError(f"{g.name}: product of invariant degrees {prod(g.spec.degrees)} differs from |W| = {g.order}")
    check_orthogonality(values, g)
    table = CharacterTable(group=g, labels=list(bundle.labels), values=values, degrees=list(bundle.degrees), column_match=match)
    table.fake_degree_convention = _fix_convention(table, convention or bundle.fake_degree_convention)
    return table


# ----------------------------------------------------------------- fake degrees


def _series_setup(g: GroupData):
    n = g.conductor
    phi = totient(n)
    red = _kernels.reduction_table(power_table(n), phi)
    cps = np.zeros((len(g.classes), g.dim + 1, phi), dtype=np.int64)
    for c in g.classes:
        for i, x in enumerate(c.charpoly):
            cps[c.index, i] = _int_coords(x, n, "characteristic polynomial coefficient")
    top = sum(d - 1 for d in g.spec.degrees)
    length = top + 1 + g.exponent
    return red, _kernels.series(cps, length, red), top, length


def _raw_fake_degrees(table: CharacterTable, conjugate: bool) -> list[list[Fraction]] | list[None]:
    g = table.group
    n = g.conductor
    red, series, top, length = _series_setup(g)
    sizes = np.array([c.size for c in g.classes], dtype=np.int64)
    arr = _values_array(table.values, n)
    if conjugate:
        arr = _conj_array(arr, n)
    num = Polynomial([1])
    for d in g.spec.degrees:
        num = num * Polynomial([1] + [0] * (d - 1) + [-1])
    num_c = [int(x) for x in num.coeffs]
    out = []
    for r in range(len(table)):
        acc = _kernels.weighted_sum(sizes, arr[r], series, red)
        if np.any(acc[:, 1:]):
            out.append(None)
            continue
        s = acc[:, 0]
        coeffs = []
        for k in range(length):
            v = sum(num_c[i] * int(s[k - i]) for i in range(min(k, len(num_c) - 1) + 1))
            coeffs.append(Fraction(v, g.order))
        if any(c.denominator != 1 for c in coeffs) or any(coeffs[top + 1 :]):
            out.append(None)
            continue
        out.append(coeffs[: top + 1])
    return out


def _certified(raw, table: CharacterTable) -> bool:
    if any(r is None for r in raw):
        return False
    for row, coeffs in enumerate(raw):
        if any(c < 0 for c in coeffs) or sum(coeffs) != table.dim(row):
            return False
    triv = [r for r in range(len(table)) if all(v == 1 for v in table.values[r])]
    return all(Polynomial(raw[r]) == 1 for r in triv)


def _fix_convention(table: CharacterTable, requested: str | None) -> str:
    options = [requested] if requested else list(CONVENTIONS)
    for conv in options:
        if conv not in CONVENTIONS:
            raise ValueError(f"unknown fake degree convention {conv!r}")
        raw = _raw_fake_degrees(table, conjugate=(conv == "conjugate"))
        if _certified(raw, table):
            for row, coeffs in enumerate(raw):
                f = Polynomial(coeffs)
                table._fake[row] = FakeDegreeRecord(character=row, f=f, b=trailing_degree(f), d=table.dim(row))
            return conv
    raise ValidationError(
        f"{table.group.name}: fake degrees are not polynomials with nonnegative integer coefficients; "
        "check the eigenvalue data and the invariant degrees"
    )


def fake_degree(table: CharacterTable, row: int) -> FakeDegreeRecord:
    return table._fake[row]


def fake_degree_exact(table: CharacterTable, row: int, conjugate: bool) -> Polynomial:
    """Reference computation with Cyclotomic arithmetic throughout.

    Slow; used to cross-check the integer kernels on small groups.
    """
    g = table.group
    top = sum(d - 1 for d in g.spec.degrees)
    length = top + 1
    total = [Cyclotomic.rational(0)] * length
    for c in g.classes:
        chi = table.values[row][c.index]
        if conjugate:
            chi = chi.conjugate()
        # 1/det(1 - w t) = prod over eigenvalues of sum_k (eps t)^k
        ser = [Cyclotomic.rational(1)] + [Cyclotomic.rational(0)] * (length - 1)
        for eps in c.eigenvalues:
            geo = [eps**k for k in range(length)]
            ser = [sum((ser[i] * geo[k - i] for i in range(k + 1)), Cyclotomic.rational(0)) for k in range(length)]
        for k in range(length):
            total[k] = total[k] + chi * ser[k] * c.size
    num = Polynomial([1])
    for d in g.spec.degrees:
        num = num * Polynomial([1] + [0] * (d - 1) + [-1])
    coeffs = []
    for k in range(length):
        v = sum((total[k - i] * num[i] for i in range(k + 1)), Cyclotomic.rational(0)) / g.order
        coeffs.append(v.canonical().to_rational())
    return Polynomial(coeffs)
