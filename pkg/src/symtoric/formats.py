"""JSON file formats and report serialization.

Rationals are written as strings ``"p/q"`` (bare integers are accepted on
input), complex entries as ``{"re": ..., "im": ...}``.  Every ``parse_*``
function raises :class:`~symtoric.errors.InputError` naming the offending
location; ``render_*`` is its inverse.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import InputError
from .exact import Gaussian, Matrix
from .polytope import HPolytope
from .symplin import WeightRep
from .torus import Subtorus

__all__ = [
    "load_json",
    "dumps",
    "parse_rational",
    "parse_polytope",
    "render_polytope",
    "parse_weight_rep",
    "render_weight_rep",
    "parse_subtorus",
    "render_subtorus",
    "parse_matrix",
    "render_matrix",
    "scalar_to_json",
]


def load_json(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{source}:{e.lineno}:{e.colno}: invalid JSON: {e.msg}") from None


def load_file(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"{path}: cannot read file: {e.strerror}") from None
    except UnicodeDecodeError:
        raise InputError(f"{path}: not valid UTF-8") from None
    return load_json(text, path)


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _fail(where: str, msg: str):
    raise InputError(f"{where}: {msg}")


def _obj(doc, where: str, keys: tuple[str, ...], optional: tuple[str, ...] = ()) -> dict:
    if not isinstance(doc, dict):
        _fail(where, "expected a JSON object")
    missing = [k for k in keys if k not in doc]
    if missing:
        _fail(where, f"missing key {missing[0]!r}")
    extra = sorted(set(doc) - set(keys) - set(optional))
    if extra:
        _fail(where, f"unexpected key {extra[0]!r}")
    return doc


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        _fail(where, f"expected an integer, got {json.dumps(x)}")
    return x


def _count(x, where: str) -> int:
    x = _int(x, where)
    if x < 0:
        _fail(where, "expected a nonnegative integer")
    return x


def _list(x, where: str, length: int | None = None) -> list:
    if not isinstance(x, list):
        _fail(where, "expected a JSON array")
    if length is not None and len(x) != length:
        _fail(where, f"expected {length} entries, got {len(x)}")
    return x


def parse_rational(x, where: str = "value") -> Fraction:
    if isinstance(x, bool):
        _fail(where, "expected a rational, got a boolean")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            _fail(where, f"cannot parse {x!r} as a rational")
    _fail(where, f"expected a rational string \"p/q\" or an integer, got {json.dumps(x)}")


def rat(x) -> str:
    return str(Fraction(x))


def scalar_to_json(x):
    if isinstance(x, Gaussian):
        if not x.im:
            return rat(x.re)
        return {"re": rat(x.re), "im": rat(x.im)}
    return rat(x)


def _scalar(x, where: str):
    if isinstance(x, dict):
        _obj(x, where, ("re", "im"))
        g = Gaussian(parse_rational(x["re"], where + ".re"), parse_rational(x["im"], where + ".im"))
        return g if g.im else g.re
    return parse_rational(x, where)


# polytopes

def parse_polytope(doc, where: str = "polytope") -> HPolytope:
    _obj(doc, where, ("dim", "facets"))
    n = _count(doc["dim"], where + ".dim")
    normals, offsets = [], []
    for i, f in enumerate(_list(doc["facets"], where + ".facets")):
        w = f"{where}.facets[{i}]"
        _obj(f, w, ("normal", "offset"))
        normal = [_int(x, f"{w}.normal[{j}]") for j, x in enumerate(_list(f["normal"], w + ".normal", n))]
        normals.append(tuple(normal))
        offsets.append(parse_rational(f["offset"], w + ".offset"))
    try:
        return HPolytope(n, tuple(normals), tuple(offsets))
    except InputError as e:
        raise InputError(f"{where}: {e}") from None


def render_polytope(p: HPolytope) -> dict:
    return {"dim": p.dim,
            "facets": [{"normal": list(v), "offset": rat(o)} for v, o in zip(p.normals, p.offsets)]}


# weight representations and subtori

def parse_weight_rep(doc, where: str = "representation") -> WeightRep:
    _obj(doc, where, ("torus_rank", "weights"), ("shift",))
    d = _count(doc["torus_rank"], where + ".torus_rank")
    weights = []
    for j, w in enumerate(_list(doc["weights"], where + ".weights")):
        ww = f"{where}.weights[{j}]"
        weights.append(tuple(_int(x, f"{ww}[{k}]") for k, x in enumerate(_list(w, ww, d))))
    shift = ()
    if "shift" in doc:
        shift = tuple(parse_rational(x, f"{where}.shift[{k}]")
                      for k, x in enumerate(_list(doc["shift"], where + ".shift", d)))
    return WeightRep(d, tuple(weights), shift)


def render_weight_rep(rep: WeightRep) -> dict:
    out = {"torus_rank": rep.torus_rank, "weights": [list(w) for w in rep.weights]}
    if any(rep.shift):
        out["shift"] = [rat(x) for x in rep.shift]
    return out


def parse_subtorus(doc, where: str = "subtorus") -> Subtorus:
    _obj(doc, where, ("ambient_rank", "basis"))
    n = _count(doc["ambient_rank"], where + ".ambient_rank")
    rows = []
    for j, r in enumerate(_list(doc["basis"], where + ".basis")):
        rw = f"{where}.basis[{j}]"
        rows.append(tuple(_int(x, f"{rw}[{k}]") for k, x in enumerate(_list(r, rw, n))))
    try:
        return Subtorus(n, Matrix(rows, n))
    except InputError as e:
        raise InputError(f"{where}: {e}") from None


def render_subtorus(h: Subtorus) -> dict:
    return {"ambient_rank": h.ambient_rank, "basis": [list(r) for r in h.basis.row_list()]}


# matrices

def parse_matrix(doc, where: str = "matrix") -> Matrix:
    _obj(doc, where, ("rows", "cols", "entries"))
    r = _count(doc["rows"], where + ".rows")
    c = _count(doc["cols"], where + ".cols")
    entries = _list(doc["entries"], where + ".entries", r * c)
    vals = [_scalar(x, f"{where}.entries[{k}]") for k, x in enumerate(entries)]
    return Matrix.from_entries(r, c, vals)


def render_matrix(m: Matrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": [scalar_to_json(x) for x in m.entries]}
