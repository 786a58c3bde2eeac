"""Reading the JSON bundle files: group realizations, character tables and
Rouquier family data.

Parse problems raise :class:`BundleParseError` with the file, the line and
column (for syntax errors) or the offending field (for schema errors).
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Iterable

from .errors import BundleParseError, MissingBundleError
from .exact.cyclotomic import Cyclotomic
from .groups import MatrixGroupSpec

KINDS = ("group", "characters", "rouquier")
SUFFIX = {"group": ".group.json", "characters": ".chars.json", "rouquier": ".rouquier.json"}


def default_bundle_dir() -> Path:
    return Path(str(resources.files("cmfamilies") / "data" / "bundles"))


def bundle_path(group: str, kind: str, bundle_dir: str | Path | None = None) -> Path:
    base = Path(bundle_dir) if bundle_dir else default_bundle_dir()
    path = base / f"{group}{SUFFIX[kind]}"
    if not path.is_file():
        raise MissingBundleError(f"no {kind} bundle for {group!r} in {base}")
    return path


def available_groups(bundle_dir: str | Path | None = None) -> list[str]:
    base = Path(bundle_dir) if bundle_dir else default_bundle_dir()
    names = [p.name[: -len(SUFFIX["group"])] for p in base.glob("*" + SUFFIX["group"])]
    return sorted(names, key=_group_sort_key)


def _group_sort_key(name: str):
    m = re.fullmatch(r"G(\d+)", name)
    return (0, int(m.group(1)), "") if m else (1, 0, name)


# --------------------------------------------------------------- raw JSON


def read_json(path: str | Path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise BundleParseError(f"cannot read file: {exc.strerror}", path=str(path)) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BundleParseError(exc.msg, path=str(path), line=exc.lineno, column=exc.colno) from exc
    if not isinstance(data, dict):
        raise BundleParseError("top level must be an object", path=str(path), line=1, column=1)
    data["__text__"] = text
    data["__path__"] = str(path)
    return data


def _field_line(data: dict, name: str) -> int | None:
    text = data.get("__text__", "")
    m = re.search(r'"%s"\s*:' % re.escape(name), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _fail(data: dict, name: str, message: str):
    raise BundleParseError(message, path=data.get("__path__"), line=_field_line(data, name), field=name)


def _require(data: dict, name: str, kind: type | tuple[type, ...]):
    if name not in data:
        _fail(data, name, "missing required field")
    value = data[name]
    if not isinstance(value, kind) or isinstance(value, bool):
        _fail(data, name, f"expected {getattr(kind, '__name__', kind)}, got {type(value).__name__}")
    return value


def parse_cyclotomic(data: dict, name: str, value: Any, n: int) -> Cyclotomic:
    if not isinstance(value, list):
        _fail(data, name, f"cyclotomic value must be a list of [exponent, num, den] triples, got {value!r}")
    try:
        return Cyclotomic.deserialize(n, value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        _fail(data, name, f"bad cyclotomic value {value!r}: {exc}")


def _check_kind(data: dict, kind: str):
    got = data.get("kind")
    if got != kind:
        _fail(data, "kind", f"expected bundle kind {kind!r}, got {got!r}")


# --------------------------------------------------------------- group bundles


def parse_group_bundle(data: dict) -> MatrixGroupSpec:
    _check_kind(data, "group")
    name = _require(data, "name", str)
    dim = _require(data, "dim", int)
    n = _require(data, "conductor", int)
    if dim < 1:
        _fail(data, "dim", "dimension must be positive")
    if n < 1:
        _fail(data, "conductor", "conductor must be positive")
    degrees = _require(data, "degrees", list)
    if len(degrees) != dim or not all(isinstance(d, int) and d > 0 for d in degrees):
        _fail(data, "degrees", f"expected {dim} positive integer invariant degrees")
    raw = _require(data, "generators", list)
    names = data.get("generator_names") or [f"g{i + 1}" for i in range(len(raw))]
    if len(names) != len(raw):
        _fail(data, "generator_names", "one name per generator is required")
    gens = []
    for gi, m in enumerate(raw):
        if not isinstance(m, list) or len(m) != dim or any(not isinstance(r, list) or len(r) != dim for r in m):
            _fail(data, "generators", f"generator {gi} is not a {dim}x{dim} matrix")
        gens.append([[parse_cyclotomic(data, "generators", x, n) for x in row] for row in m])
    pinned = data.get("pinned_orbit_order", [])
    if not isinstance(pinned, list) or not all(isinstance(p, str) for p in pinned):
        _fail(data, "pinned_orbit_order", "must be a list of generator names")
    return MatrixGroupSpec(
        name=name,
        dim=dim,
        conductor=n,
        generators=tuple(gens),
        generator_names=tuple(names),
        degrees=tuple(degrees),
        pinned_orbit_order=tuple(pinned),
    )


def load_group_bundle(path: str | Path) -> MatrixGroupSpec:
    return parse_group_bundle(read_json(path))


# --------------------------------------------------------------- character bundles


@dataclass(frozen=True)
class ClassFingerprint:
    size: int
    order: int
    trace: Cyclotomic
    det: Cyclotomic

    def key(self) -> tuple:
        return (self.size, self.order, self.trace, self.det)


@dataclass
class CharacterBundle:
    group: str
    conductor: int
    labels: list[str]
    fingerprints: list[ClassFingerprint]
    values: list[list[Cyclotomic]]
    degrees: list[int]
    column_pins: dict[int, str] = field(default_factory=dict)
    fake_degree_convention: str | None = None
    path: str | None = None


def parse_character_bundle(data: dict) -> CharacterBundle:
    _check_kind(data, "characters")
    group = _require(data, "group", str)
    n = _require(data, "conductor", int)
    labels = _require(data, "labels", list)
    if not all(isinstance(x, str) for x in labels):
        _fail(data, "labels", "labels must be strings")
    if len(set(labels)) != len(labels):
        _fail(data, "labels", "labels must be distinct")
    fps = []
    for i, fp in enumerate(_require(data, "class_fingerprints", list)):
        if not isinstance(fp, dict) or not {"size", "order", "trace", "det"} <= set(fp):
            _fail(data, "class_fingerprints", f"entry {i} needs size, order, trace and det")
        fps.append(
            ClassFingerprint(
                size=int(fp["size"]),
                order=int(fp["order"]),
                trace=parse_cyclotomic(data, "class_fingerprints", fp["trace"], n).canonical(),
                det=parse_cyclotomic(data, "class_fingerprints", fp["det"], n).canonical(),
            )
        )
    rows = _require(data, "values", list)
    if len(rows) != len(labels):
        _fail(data, "values", f"{len(rows)} rows of values for {len(labels)} labels")
    values = []
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != len(fps):
            _fail(data, "values", f"row {r} ({labels[r]}) must have {len(fps)} entries")
        values.append([parse_cyclotomic(data, "values", x, n) for x in row])
    degrees = _require(data, "degrees", list)
    pins_raw = data.get("column_pins", {})
    if not isinstance(pins_raw, dict):
        _fail(data, "column_pins", "must map column index to a generator word")
    pins = {}
    for k, v in pins_raw.items():
        try:
            col = int(k)
        except ValueError:
            _fail(data, "column_pins", f"column key {k!r} is not an integer")
        if not 0 <= col < len(fps):
            _fail(data, "column_pins", f"column {col} out of range")
        pins[col] = str(v)
    conv = data.get("fake_degree_convention")
    if conv is not None and conv not in ("plain", "conjugate"):
        _fail(data, "fake_degree_convention", "must be 'plain' or 'conjugate'")
    return CharacterBundle(
        group=group,
        conductor=n,
        labels=list(labels),
        fingerprints=fps,
        values=values,
        degrees=[int(d) for d in degrees],
        column_pins=pins,
        fake_degree_convention=conv,
        path=data.get("__path__"),
    )


def load_character_bundle(path: str | Path) -> CharacterBundle:
    return parse_character_bundle(read_json(path))


def serialize_character_bundle(b: CharacterBundle) -> dict:
    out = {
        "kind": "characters",
        "group": b.group,
        "conductor": b.conductor,
        "degrees": b.degrees,
        "labels": b.labels,
        "class_fingerprints": [
            {"size": f.size, "order": f.order, "trace": f.trace.to_conductor(b.conductor).serialize(), "det": f.det.to_conductor(b.conductor).serialize()}
            for f in b.fingerprints
        ],
        "column_pins": {str(k): v for k, v in sorted(b.column_pins.items())},
        "values": [[x.to_conductor(b.conductor).serialize() for x in row] for row in b.values],
    }
    if b.fake_degree_convention:
        out["fake_degree_convention"] = b.fake_degree_convention
    return out


# --------------------------------------------------------------- rouquier bundles

CONVENTIONS = ("cherednik", "hecke")


@dataclass
class RouquierBundle:
    group: str
    families: list[list[str]]
    essential_planes: list[list[int]]
    coordinate_convention: str
    provenance: str
    path: str | None = None


def parse_rouquier_bundle(data: dict) -> RouquierBundle:
    _check_kind(data, "rouquier")
    group = _require(data, "group", str)
    fams = _require(data, "families", list)
    for i, f in enumerate(fams):
        if not isinstance(f, list) or not f or not all(isinstance(x, str) for x in f):
            _fail(data, "families", f"family {i} must be a non-empty list of labels")
    planes = _require(data, "essential_planes", list)
    for i, p in enumerate(planes):
        if not isinstance(p, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in p):
            _fail(data, "essential_planes", f"plane {i} must be a list of integers")
    conv = _require(data, "coordinate_convention", str)
    if conv not in CONVENTIONS:
        _fail(data, "coordinate_convention", f"must be one of {CONVENTIONS}")
    prov = _require(data, "provenance", str)
    return RouquierBundle(group, [list(f) for f in fams], [list(p) for p in planes], conv, prov, data.get("__path__"))


def load_rouquier_bundle(path: str | Path) -> RouquierBundle:
    return parse_rouquier_bundle(read_json(path))


def detect_kind(data: dict) -> str:
    kind = data.get("kind")
    if kind not in KINDS:
        _fail(data, "kind", f"unknown bundle kind {kind!r}; expected one of {KINDS}")
    return kind


def iter_bundle_files(bundle_dir: str | Path | None = None) -> Iterable[Path]:
    base = Path(bundle_dir) if bundle_dir else default_bundle_dir()
    return sorted(base.glob("*.json"))


