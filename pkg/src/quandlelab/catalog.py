"""Built-in quandles and knots.

Tables and PD codes live in JSON files under ``data/`` (``quandles/*.json``,
``knots/*.json``, ``aliases.json``). Setting QUANDLELAB_DATA points the
catalog at another directory with the same layout. Parametric families are
built on demand: ``Sp_q_n``, ``Sphere_q_n``, ``R<n>`` (dihedral),
``Trivial<n>``.
"""

from __future__ import annotations

import json
import os
import re
from functools import lru_cache
from pathlib import Path

from .diagram import LinkDiagram, parse_pd
from .errors import InputError
from .quandle import QuandleTable, make_alexander, make_spherical, make_symplectic, make_trivial

__all__ = [
    "DATA_ENV",
    "data_dir",
    "quandle_names",
    "knot_names",
    "load_quandle",
    "load_knot",
    "knot_diagrams",
    "resolve_alias",
]

DATA_ENV = "QUANDLELAB_DATA"

_FAMILIES = {
    re.compile(r"Sp_(\d+)_(\d+)"): lambda q, n: make_symplectic(int(q), int(n)),
    re.compile(r"Sphere_(\d+)_(\d+)"): lambda q, n: make_spherical(int(q), int(n)),
    re.compile(r"R(\d+)"): lambda n: make_alexander([int(n)], -1, name=f"R{n}"),
    re.compile(r"Trivial(\d+)"): lambda n: _named(make_trivial(int(n)), f"Trivial{n}"),
}


def _named(Q: QuandleTable, name: str) -> QuandleTable:
    Q.name = name
    return Q


def data_dir() -> Path:
    env = os.environ.get(DATA_ENV)
    if env:
        p = Path(env)
        if not p.is_dir():
            raise InputError(f"{DATA_ENV}={env} is not a directory")
        return p
    return Path(__file__).resolve().parent / "data"


def _aliases(root: Path) -> dict:
    f = root / "aliases.json"
    if not f.is_file():
        return {}
    return json.loads(f.read_text())


def resolve_alias(name: str) -> str:
    return _aliases(data_dir()).get(name, name)


def _names(sub: str) -> list:
    d = data_dir() / sub
    return sorted(p.stem for p in d.glob("*.json")) if d.is_dir() else []


def quandle_names() -> list:
    return _names("quandles")


def knot_names() -> list:
    return _names("knots")


def load_quandle(name: str) -> QuandleTable:
    """A catalog name, a family name, or a path to a quandle JSON file."""
    root = data_dir()
    key = _aliases(root).get(name, name)
    f = root / "quandles" / f"{key}.json"
    if f.is_file():
        return _load_quandle_file(str(f), f.stat().st_mtime_ns)
    for pat, make in _FAMILIES.items():
        m = pat.fullmatch(key)
        if m:
            return _family(key, make, m.groups())
    p = Path(name)
    if p.suffix == ".json" and p.is_file():
        return _load_quandle_file(str(p), p.stat().st_mtime_ns)
    raise InputError(f"unknown quandle {name!r}; known: {', '.join(quandle_names())}, Sp_q_n, Sphere_q_n, R<n>")


@lru_cache(maxsize=64)
def _load_quandle_file(path: str, mtime: int) -> QuandleTable:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: {exc}") from exc
    Q = QuandleTable.from_json(obj)
    if not Q.name:
        Q.name = Path(path).stem
    return Q


@lru_cache(maxsize=64)
def _family(key, make, groups) -> QuandleTable:
    return make(*groups)


def knot_diagrams(name: str) -> list:
    """All stored diagrams of a catalog knot, or the single diagram in a PD file."""
    root = data_dir()
    key = _aliases(root).get(name, name)
    f = root / "knots" / f"{key}.json"
    if not f.is_file():
        p = Path(name)
        if p.is_file():
            f = p
        else:
            raise InputError(f"unknown knot {name!r}; known: {', '.join(knot_names())}")
    try:
        obj = json.loads(f.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{f}: {exc}") from exc
    if isinstance(obj, dict) and "diagrams" in obj:
        return [parse_pd(d) for d in obj["diagrams"]]
    return [parse_pd(obj)]


def load_knot(name: str, diagram: int = 0) -> LinkDiagram:
    ds = knot_diagrams(name)
    if not 0 <= diagram < len(ds):
        raise InputError(f"{name} has {len(ds)} diagrams")
    return ds[diagram]
