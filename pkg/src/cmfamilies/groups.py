"""Finite matrix groups over cyclotomic fields.

A group is enumerated by breadth-first closure from its generators. Elements
are stored as integer coordinate tensors with a common denominator, which
gives an exact canonical byte key for deduplication. Conjugacy classes,
reflections, reflection hyperplanes and their orbits are derived from the
multiplication table.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import GroupEnumerationError, ValidationError
from .exact.cyclotomic import Cyclotomic, power_table, totient

Matrix = list[list[Cyclotomic]]

DEFAULT_CAP = 2_000_000


@dataclass(frozen=True)
class MatrixGroupSpec:
    name: str
    dim: int
    conductor: int
    generators: tuple[Matrix, ...]
    generator_names: tuple[str, ...] = ()
    degrees: tuple[int, ...] = ()
    pinned_orbit_order: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.generator_names:
            object.__setattr__(self, "generator_names", tuple(f"g{i + 1}" for i in range(len(self.generators))))
        if len(self.generator_names) != len(self.generators):
            raise ValueError("one name per generator is required")
        for m in self.generators:
            if len(m) != self.dim or any(len(row) != self.dim for row in m):
                raise ValueError(f"generator is not {self.dim}x{self.dim}")


@dataclass(frozen=True)
class ConjugacyClass:
    index: int
    representative: int
    size: int
    element_order: int
    trace: Cyclotomic
    det: Cyclotomic
    charpoly: tuple[Cyclotomic, ...]  # coefficients of det(1 - w t), constant term first
    eigenvalues: tuple[Cyclotomic, ...]
    eigen_exponents: tuple[Fraction, ...]  # eigenvalue = exp(2 pi i q), 0 <= q < 1
    is_reflection: bool
    nontrivial_eigenvalue: Cyclotomic | None = None
    orbit: int | None = None


@dataclass(frozen=True)
class HyperplaneOrbit:
    index: int
    e: int
    hyperplanes: tuple[tuple[Cyclotomic, ...], ...]
    reflection_classes: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.hyperplanes)


@dataclass
class GroupData:
    spec: MatrixGroupSpec
    nums: np.ndarray
    dens: np.ndarray
    table: np.ndarray
    inverse: np.ndarray
    class_of: np.ndarray
    classes: list[ConjugacyClass]
    reflections: list[int]
    hyperplane_of: dict[int, tuple]
    hyperplane_orbits: list[HyperplaneOrbit]
    omega_bar: list[tuple[int, int]]
    generator_index: dict[str, int] = field(default_factory=dict)
    parent: np.ndarray | None = None
    via: np.ndarray | None = None

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def dim(self) -> int:
        return self.spec.dim

    @property
    def conductor(self) -> int:
        return self.spec.conductor

    @property
    def order(self) -> int:
        return len(self.dens)

    @property
    def exponent(self) -> int:
        return lcm(*(c.element_order for c in self.classes))

    def matrix(self, idx: int) -> Matrix:
        return _to_matrix(self.nums[idx], int(self.dens[idx]), self.conductor)

    def multiply(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def word(self, letters: Sequence[str] | str) -> int:
        """Element index of a product of named generators, left to right.

        A string is split on whitespace, otherwise tokenized by longest
        matching generator name ("s1s2", "sts").
        """
        if isinstance(letters, str):
            letters = letters.split() if " " in letters else self._tokenize(letters)
        x = 0
        for name in letters:
            if name not in self.generator_index:
                raise KeyError(f"unknown generator {name!r} for {self.name}")
            x = int(self.table[x, self.generator_index[name]])
        return x

    def _tokenize(self, text: str) -> list[str]:
        names = sorted(self.generator_index, key=len, reverse=True)
        out, pos = [], 0
        while pos < len(text):
            name = next((g for g in names if text.startswith(g, pos)), None)
            if name is None:
                raise KeyError(f"cannot read {text[pos:]!r} as generators of {self.name}")
            out.append(name)
            pos += len(name)
        return out

    def element_word(self, idx: int) -> list[str]:
        """A shortest word in the generators for an element (BFS order)."""
        names = self.spec.generator_names
        out = []
        while idx != 0:
            out.append(names[int(self.via[idx])])
            idx = int(self.parent[idx])
        return out[::-1]

    def reflection_classes(self) -> list[tuple[ConjugacyClass, Cyclotomic, int]]:
        return [(c, c.nontrivial_eigenvalue, c.orbit) for c in self.classes if c.is_reflection]

    def orbit(self, omega: int) -> HyperplaneOrbit:
        return self.hyperplane_orbits[omega - 1]


# ----------------------------------------------------------------- helpers


def _to_int_tensor(m: Matrix, n: int) -> tuple[np.ndarray, int]:
    d = len(m)
    phi = totient(n)
    entries = [[Cyclotomic.coerce(x, n).to_conductor(n) for x in row] for row in m]
    den = 1
    for row in entries:
        for x in row:
            for c in x.coeffs:
                den = lcm(den, c.denominator)
    arr = np.zeros((d, d, phi), dtype=np.int64)
    for i, row in enumerate(entries):
        for j, x in enumerate(row):
            for k, c in enumerate(x.coeffs):
                arr[i, j, k] = int(c * den)
    return arr, den


def _to_matrix(num: np.ndarray, den: int, n: int) -> Matrix:
    d = num.shape[0]
    return [[Cyclotomic(n, [Fraction(int(v), den) for v in num[i, j]]) for j in range(d)] for i in range(d)]


def _normalize(nums: np.ndarray, dens: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    flat = np.abs(nums.reshape(len(nums), -1))
    g = np.gcd.reduce(flat, axis=1)
    g = np.gcd(g, dens)
    g[g == 0] = 1
    return nums // g[:, None, None, None], dens // g


def _key(num: np.ndarray, den: int) -> bytes:
    return int(den).to_bytes(8, "little", signed=True) + num.tobytes()


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    d = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(d)), Cyclotomic.rational(0)) for j in range(d)] for i in range(d)]


def identity_matrix(d: int, n: int = 1) -> Matrix:
    return [[Cyclotomic.rational(1 if i == j else 0, n) for j in range(d)] for i in range(d)]


def charpoly(m: Matrix) -> list[Cyclotomic]:
    """Coefficients of det(x I - m), constant term first (Faddeev-LeVerrier)."""
    d = len(m)
    coeffs = [Cyclotomic.rational(0)] * (d + 1)
    coeffs[d] = Cyclotomic.rational(1)
    mk = [[Cyclotomic.rational(0)] * d for _ in range(d)]
    for k in range(1, d + 1):
        am = mat_mul(m, mk)
        mk = [[am[i][j] + (coeffs[d - k + 1] if i == j else 0) for j in range(d)] for i in range(d)]
        amk = mat_mul(m, mk)
        tr = sum((amk[i][i] for i in range(d)), Cyclotomic.rational(0))
        coeffs[d - k] = (-tr / k).canonical()
    return coeffs


def _poly_eval(coeffs: Sequence[Cyclotomic], x: Cyclotomic) -> Cyclotomic:
    acc = Cyclotomic.rational(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs: Sequence[Cyclotomic], root: Cyclotomic) -> list[Cyclotomic]:
    """Quotient of the polynomial by (x - root); the remainder must vanish."""
    out = [Cyclotomic.rational(0)] * (len(coeffs) - 1)
    carry = Cyclotomic.rational(0)
    for i in range(len(coeffs) - 1, 0, -1):
        carry = coeffs[i] + carry * root
        out[i - 1] = carry
    return out


def eigenvalues_from_charpoly(cp: Sequence[Cyclotomic], order: int) -> list[Fraction]:
    """Eigenvalues of a matrix of the given finite order, as exponents q with
    eigenvalue exp(2 pi i q). Candidates are the order-th roots of unity."""
    remaining = list(cp)
    found: list[Fraction] = []
    for i in range(order):
        root = Cyclotomic.zeta(order, i)
        while len(remaining) > 1 and _poly_eval(remaining, root).is_zero():
            remaining = _deflate(remaining, root)
            found.append(Fraction(i, order))
    if len(remaining) != 1:
        raise ValidationError("characteristic polynomial does not split over roots of unity")
    return sorted(found)


def _row_key(row: Sequence[Cyclotomic]) -> tuple:
    return tuple(tuple(x.coeffs) for x in row)


def coroot(m: Matrix, n: int) -> tuple[Cyclotomic, ...]:
    """Projective class of the linear form cutting out Ker(m - 1).

    For a reflection every nonzero row of m - 1 is proportional to this form;
    it is scaled so that its first nonzero entry is 1.
    """
    d = len(m)
    rows = [[(m[i][j] - (1 if i == j else 0)).to_conductor(n) for j in range(d)] for i in range(d)]
    nonzero = [r for r in rows if any(not x.is_zero() for x in r)]
    if not nonzero:
        raise ValueError("identity matrix has no hyperplane")
    r = nonzero[0]
    lead = next(x for x in r if not x.is_zero())
    inv = lead.inverse()
    form = tuple((x * inv).to_conductor(n) for x in r)
    for other in nonzero[1:]:
        olead = next(x for x in other if not x.is_zero())
        if tuple((x * olead.inverse()).to_conductor(n) for x in other) != form:
            raise ValueError("matrix is not a reflection: rank of m - 1 exceeds one")
    return form


# ----------------------------------------------------------------- enumeration


def enumerate_group(spec: MatrixGroupSpec, cap: int = DEFAULT_CAP) -> GroupData:
    n = spec.conductor
    d = spec.dim
    phi = totient(n)
    red = _kernels.reduction_table(power_table(n), phi)

    gens = []
    for name, m in zip(spec.generator_names, spec.generators):
        cp = charpoly(m)
        if cp[0].is_zero():
            raise ValidationError(f"generator {name} of {spec.name} is not invertible")
        gens.append(_to_int_tensor(m, n))

    ident = np.zeros((d, d, phi), dtype=np.int64)
    for i in range(d):
        ident[i, i, 0] = 1
    nums = [ident]
    dens = [1]
    index = {_key(ident, 1): 0}
    parent = [-1]
    via = [-1]
    right_rows: list[list[int]] = [[] for _ in gens]

    frontier = np.arange(1)
    while len(frontier):
        fnums = np.stack([nums[i] for i in frontier])
        fdens = np.array([dens[i] for i in frontier], dtype=np.int64)
        new_frontier = []
        for g, (gnum, gden) in enumerate(gens):
            prod = _kernels.matmul_batch(fnums, gnum, red)
            pn, pd = _normalize(prod, fdens * gden)
            targets = []
            for src, num, den in zip(frontier, pn, pd):
                key = _key(num, den)
                idx = index.get(key)
                if idx is None:
                    idx = len(nums)
                    if idx >= cap:
                        raise GroupEnumerationError(
                            f"{spec.name}: enumeration exceeded {cap} elements; group infinite or cap too small"
                        )
                    index[key] = idx
                    nums.append(num)
                    dens.append(int(den))
                    parent.append(int(src))
                    via.append(g)
                    new_frontier.append(idx)
                targets.append((int(src), idx))
            right_rows[g].extend(targets)
        frontier = np.array(new_frontier, dtype=np.int64)

    order = len(nums)
    right = np.empty((len(gens), order), dtype=np.int64)
    for g, pairs in enumerate(right_rows):
        for src, dst in pairs:
            right[g, src] = dst
    nums_arr = np.stack(nums)
    dens_arr = np.array(dens, dtype=np.int64)

    if gens:
        table = _kernels.cayley_from_words(right, np.array(parent), np.array(via), 0)
    else:
        table = np.zeros((1, 1), dtype=np.int64)
    inverse = np.argmax(table == 0, axis=1).astype(np.int64)

    gen_idx = [int(right[g, 0]) for g in range(len(gens))]
    labels = _kernels.class_labels(table, gen_idx, [int(inverse[i]) for i in gen_idx]) if gens else np.zeros(1, np.int64)
    reps = sorted(set(int(x) for x in labels))
    rep_pos = {r: i for i, r in enumerate(reps)}
    class_of = np.array([rep_pos[int(x)] for x in labels], dtype=np.int64)
    sizes = np.bincount(class_of, minlength=len(reps))

    classes = []
    for ci, rep in enumerate(reps):
        m = _to_matrix(nums_arr[rep], int(dens_arr[rep]), n)
        o = _element_order(table, rep)
        cp = charpoly(m)
        exps = eigenvalues_from_charpoly(cp, o)
        eigs = tuple(Cyclotomic.zeta(q.denominator, q.numerator).canonical() for q in exps)
        det = ((-1) ** d * cp[0]).canonical()
        trace = (-cp[d - 1]).canonical()
        rev = tuple(c.to_conductor(n) for c in reversed(cp))  # det(1 - w t)
        nontriv = [e for e, q in zip(eigs, exps) if q != 0]
        is_ref = len(nontriv) == 1
        classes.append(
            ConjugacyClass(
                index=ci,
                representative=rep,
                size=int(sizes[ci]),
                element_order=o,
                trace=trace,
                det=det,
                charpoly=rev,
                eigenvalues=eigs,
                eigen_exponents=tuple(exps),
                is_reflection=is_ref,
                nontrivial_eigenvalue=nontriv[0] if is_ref else None,
            )
        )

    reflections = [x for x in range(order) if classes[class_of[x]].is_reflection]
    hyperplane_of = {}
    for x in reflections:
        hyperplane_of[x] = coroot(_to_matrix(nums_arr[x], int(dens_arr[x]), n), n)

    orbits, orbit_of_class = _hyperplane_orbits(spec, classes, class_of, reflections, hyperplane_of, gen_idx)
    classes = [
        ConjugacyClass(**{**c.__dict__, "orbit": orbit_of_class.get(c.index)}) for c in classes
    ]
    omega_bar = [(o.index, j) for o in orbits for j in range(o.e)]

    data = GroupData(
        spec=spec,
        nums=nums_arr,
        dens=dens_arr,
        table=table,
        inverse=inverse,
        class_of=class_of,
        classes=classes,
        reflections=reflections,
        hyperplane_of=hyperplane_of,
        hyperplane_orbits=orbits,
        omega_bar=omega_bar,
        generator_index={name: i for name, i in zip(spec.generator_names, gen_idx)},
        parent=np.array(parent, dtype=np.int64),
        via=np.array(via, dtype=np.int64),
    )
    n_ref_classes = sum(1 for c in classes if c.is_reflection)
    if n_ref_classes != sum(o.e - 1 for o in orbits):
        raise ValidationError(
            f"{spec.name}: {n_ref_classes} reflection classes but {sum(o.e - 1 for o in orbits)} pairs (Omega, j>0)"
        )
    return data


def _element_order(table: np.ndarray, x: int) -> int:
    k, y = 1, x
    while y != 0:
        y = int(table[y, x])
        k += 1
    return k


def _hyperplane_orbits(spec, classes, class_of, reflections, hyperplane_of, gen_idx):
    by_plane: dict[tuple, list[int]] = {}
    for x in reflections:
        by_plane.setdefault(_row_key(hyperplane_of[x]), []).append(x)

    # reflection classes sharing a hyperplane belong to one orbit
    parent = {c.index: c.index for c in classes if c.is_reflection}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for refl in by_plane.values():
        first = find(int(class_of[refl[0]]))
        for x in refl[1:]:
            other = find(int(class_of[x]))
            if other != first:
                parent[max(first, other)] = min(first, other)
                first = min(first, other)

    groups: dict[int, list[int]] = {}
    for ci in parent:
        groups.setdefault(find(ci), []).append(ci)

    raw = []
    for members in groups.values():
        mset = set(members)
        planes = {k: v for k, v in by_plane.items() if int(class_of[v[0]]) in mset}
        es = {len(v) + 1 for v in planes.values()}
        if len(es) != 1:
            raise ValidationError(f"{spec.name}: pointwise stabilizer order varies within a hyperplane orbit")
        e = es.pop()
        reps = [hyperplane_of[v[0]] for _, v in sorted(planes.items())]
        # order classes by the exponent j of the nontrivial eigenvalue exp(2 pi i j / e)
        def j_of(ci):
            q = next(q for q in classes[ci].eigen_exponents if q != 0)
            return int(q * e)

        raw.append((e, len(planes), min(planes), tuple(reps), tuple(sorted(members, key=j_of)), set(v2 for v in planes.values() for v2 in v)))

    if spec.pinned_orbit_order:
        names = list(spec.generator_names)
        pinned = []
        for gname in spec.pinned_orbit_order:
            if gname not in names:
                raise ValidationError(f"{spec.name}: pinned orbit generator {gname!r} is not a generator name")
            gi = gen_idx[names.index(gname)]
            match = [r for r in raw if gi in r[5]]
            if not match:
                raise ValidationError(f"{spec.name}: pinned generator {gname!r} is not a reflection")
            pinned.append(match[0])
        if len({id(p) for p in pinned}) != len(raw) or len(pinned) != len(raw):
            raise ValidationError(f"{spec.name}: pinned orbit order must name each hyperplane orbit once")
        raw = pinned
    else:
        raw.sort(key=lambda r: (r[0], r[1], r[2]))

    orbits = []
    orbit_of_class = {}
    for i, (e, _, _, reps, members, _) in enumerate(raw, start=1):
        orbits.append(HyperplaneOrbit(index=i, e=e, hyperplanes=reps, reflection_classes=members))
        for ci in members:
            orbit_of_class[ci] = i
    return orbits, orbit_of_class


def parameter_space(g: GroupData) -> list[tuple[int, int]]:
    return list(g.omega_bar)


def reflection_classes(g: GroupData) -> list[tuple[ConjugacyClass, Cyclotomic, int]]:
    return g.reflection_classes()
