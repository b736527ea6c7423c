"""JSON documents: ``{"schema": "1", "kind": ..., "payload": ...}``.

Printing is canonical: rays sorted, cones as sorted index arrays, integers in
decimal and non-integral rationals as ``"p/q"`` strings in lowest terms, two
space indentation and a trailing newline.  ``dumps(loads(text)) == text`` for
every canonical document.
"""
import json
import re
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from .bdivisors import CartierBDivisor, MonomialIdeal
from .divisors import PLFunction, ToricDivisor
from .errors import SchemaError
from .fan import Fan, RationalComplex
from .lattice import format_number
from .line_bundles import StrataWeights
from .polyhedra import LatticePolytope
from .tropical import LaurentSupport
from .weights import MinkowskiWeight

SCHEMA = "1"
KINDS = (
    "fan",
    "weighted_fan",
    "divisor",
    "pl_function",
    "strata_weights",
    "bdivisor",
    "laurent_support",
    "report",
    "complex",
    "polytope",
    "monomial_ideal",
)

_RATIONAL = re.compile(r"^(-?[1-9][0-9]*)/([1-9][0-9]*)$")


# -- scalar readers ----------------------------------------------------
def _int(x, path) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(f"expected an integer, got {x!r}", path)
    return x


def _number(x, path):
    if isinstance(x, bool):
        raise SchemaError(f"expected a number, got {x!r}", path)
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        m = _RATIONAL.match(x)
        if m:
            q = Fraction(int(m.group(1)), int(m.group(2)))
            if q.denominator == 1 or f"{q.numerator}/{q.denominator}" != x:
                raise SchemaError(f"rational {x!r} is not in lowest terms", path)
            return q
    raise SchemaError(f"expected an integer or a 'p/q' string, got {x!r}", path)


def _list(x, path) -> list:
    if not isinstance(x, list):
        raise SchemaError(f"expected a list, got {type(x).__name__}", path)
    return x


def _obj(x, path, keys, optional=()) -> dict:
    if not isinstance(x, dict):
        raise SchemaError(f"expected an object, got {type(x).__name__}", path)
    missing = [k for k in keys if k not in x]
    if missing:
        raise SchemaError(f"missing field {missing[0]!r}", path)
    extra = [k for k in x if k not in keys and k not in optional]
    if extra:
        raise SchemaError(f"unexpected field {extra[0]!r}", path)
    return x


def _vector(x, path, length=None) -> Tuple[int, ...]:
    v = tuple(_int(a, f"{path}[{i}]") for i, a in enumerate(_list(x, path)))
    if length is not None and len(v) != length:
        raise SchemaError(f"expected length {length}, got {len(v)}", path)
    return v


def _qvector(x, path, length=None):
    v = tuple(_number(a, f"{path}[{i}]") for i, a in enumerate(_list(x, path)))
    if length is not None and len(v) != length:
        raise SchemaError(f"expected length {length}, got {len(v)}", path)
    return v


def _numbers(values) -> List:
    return [format_number(v) for v in values]


# -- fans ----------------------------------------------------------------
def fan_to_payload(fan: Fan) -> Dict[str, Any]:
    return {
        "rank": fan.rank,
        "rays": [list(r) for r in fan.rays],
        "cones": [list(c) for c in fan.maximal],
        "complete": fan.declared_complete,
    }


def _read_fan(p, path):
    """Return ``(fan, order)`` where ``order[i]`` is the canonical index of input ray ``i``."""
    from math import gcd

    p = _obj(p, path, ("rank", "rays", "cones"), ("complete",))
    n = _int(p["rank"], f"{path}.rank")
    if n < 0:
        raise SchemaError("rank must be nonnegative", f"{path}.rank")
    rays = [_vector(r, f"{path}.rays[{i}]", n) for i, r in enumerate(_list(p["rays"], f"{path}.rays"))]
    seen = {}
    for i, r in enumerate(rays):
        g = 0
        for a in r:
            g = gcd(g, a)
        if g != 1:
            raise SchemaError("ray generators must be primitive and nonzero", f"{path}.rays[{i}]")
        if r in seen:
            raise SchemaError(f"duplicate ray {list(r)} (also at index {seen[r]})", f"{path}.rays[{i}]")
        seen[r] = i
    cones = []
    for i, c in enumerate(_list(p["cones"], f"{path}.cones")):
        idx = _vector(c, f"{path}.cones[{i}]")
        for j, k in enumerate(idx):
            if not 0 <= k < len(rays):
                raise SchemaError(f"ray index {k} out of range", f"{path}.cones[{i}][{j}]")
        cones.append(idx)
    complete = p.get("complete")
    if complete is not None and not isinstance(complete, bool):
        raise SchemaError("expected true, false or null", f"{path}.complete")
    fan = Fan(n, rays, cones, complete=complete)
    order = [fan.ray_index(r) for r in rays]
    return fan, order


def _read_cone(x, fan: Fan, path, order=None):
    idx = _vector(x, path)
    if order is not None:
        for j, k in enumerate(idx):
            if not 0 <= k < len(order):
                raise SchemaError(f"ray index {k} out of range", f"{path}[{j}]")
        idx = [order[k] for k in idx]
    try:
        return fan.cone(idx)
    except Exception:
        raise SchemaError(f"{list(idx)} is not a cone of the fan", path) from None


# -- payload writers / readers per kind -----------------------------------
def weight_to_payload(c: MinkowskiWeight) -> Dict[str, Any]:
    return {
        "fan": fan_to_payload(c.fan),
        "dim": c.dim,
        "weights": [{"cone": list(k), "weight": format_number(v)} for k, v in c.weights.items()],
    }


def _read_weight(p, path) -> MinkowskiWeight:
    return _read_weight_ordered(p, path)[0]


def _read_weight_ordered(p, path):
    p = _obj(p, path, ("fan", "dim", "weights"))
    fan, order = _read_fan(p["fan"], f"{path}.fan")
    d = _int(p["dim"], f"{path}.dim")
    weights = {}
    for i, e in enumerate(_list(p["weights"], f"{path}.weights")):
        q = f"{path}.weights[{i}]"
        e = _obj(e, q, ("cone", "weight"))
        cone = _read_cone(e["cone"], fan, f"{q}.cone", order)
        if fan.dim(cone) != d:
            raise SchemaError(f"cone has dimension {fan.dim(cone)}, expected {d}", f"{q}.cone")
        if cone in weights:
            raise SchemaError("cone listed twice", f"{q}.cone")
        weights[cone] = _number(e["weight"], f"{q}.weight")
    return MinkowskiWeight(fan, d, weights), order


def _per_ray(values, order):
    out = [None] * len(values)
    for i, v in enumerate(values):
        out[order[i]] = v
    return out


def _read_divisor(p, path) -> ToricDivisor:
    p = _obj(p, path, ("fan", "coefficients"))
    fan, order = _read_fan(p["fan"], f"{path}.fan")
    coeffs = _qvector(p["coefficients"], f"{path}.coefficients", len(order))
    return ToricDivisor(fan, tuple(_per_ray(coeffs, order)))


def _read_pl(p, path) -> PLFunction:
    p = _obj(p, path, ("fan", "values"))
    fan, order = _read_fan(p["fan"], f"{path}.fan")
    vals = _qvector(p["values"], f"{path}.values", len(order))
    return PLFunction(fan, _per_ray(vals, order))


def _read_strata(p, path) -> StrataWeights:
    p = _obj(p, path, ("weight", "values"))
    c, order = _read_weight_ordered(p["weight"], f"{path}.weight")
    faces = set(c.faces_below())
    vals = {}
    for i, e in enumerate(_list(p["values"], f"{path}.values")):
        q = f"{path}.values[{i}]"
        e = _obj(e, q, ("cone", "value"))
        cone = _read_cone(e["cone"], c.fan, f"{q}.cone", order)
        if cone not in faces:
            raise SchemaError("cone is not a face of a weighted cone", f"{q}.cone")
        vals[cone] = _number(e["value"], f"{q}.value")
    return StrataWeights(c, vals)


def _read_bdivisor(p, path) -> CartierBDivisor:
    p = _obj(p, path, ("base", "fan", "values"))
    base, _ = _read_fan(p["base"], f"{path}.base")
    fan, order = _read_fan(p["fan"], f"{path}.fan")
    vals = _qvector(p["values"], f"{path}.values", len(order))
    return CartierBDivisor(base, fan, PLFunction(fan, _per_ray(vals, order)))


def _read_support(p, path) -> LaurentSupport:
    p = _obj(p, path, ("rank", "exponents"), ("coefficients",))
    n = _int(p["rank"], f"{path}.rank")
    exps = [_vector(e, f"{path}.exponents[{i}]", n) for i, e in enumerate(_list(p["exponents"], f"{path}.exponents"))]
    if not exps:
        raise SchemaError("support must be nonempty", f"{path}.exponents")
    if len(set(exps)) != len(exps):
        raise SchemaError("exponents must be distinct", f"{path}.exponents")
    coeffs = p.get("coefficients")
    if coeffs is not None:
        coeffs = _list(coeffs, f"{path}.coefficients")
        if len(coeffs) != len(exps) or not all(isinstance(x, str) for x in coeffs):
            raise SchemaError("one string tag per exponent", f"{path}.coefficients")
        pairs = sorted(zip(exps, coeffs))
        return LaurentSupport(n, tuple(e for e, _ in pairs), tuple(c for _, c in pairs))
    return LaurentSupport(n, tuple(sorted(exps)))


def _read_complex(p, path) -> RationalComplex:
    p = _obj(p, path, ("ambient", "polyhedra"))
    n = _int(p["ambient"], f"{path}.ambient")
    polys = []
    for i, e in enumerate(_list(p["polyhedra"], f"{path}.polyhedra")):
        q = f"{path}.polyhedra[{i}]"
        e = _obj(e, q, ("vertices", "rays"))
        verts = [_qvector(v, f"{q}.vertices[{j}]", n) for j, v in enumerate(_list(e["vertices"], f"{q}.vertices"))]
        if not verts:
            raise SchemaError("polyhedra must be nonempty", f"{q}.vertices")
        rays = [_vector(r, f"{q}.rays[{j}]", n) for j, r in enumerate(_list(e["rays"], f"{q}.rays"))]
        polys.append((verts, rays))
    return RationalComplex.from_lists(n, polys)


def _complex_payload(c: RationalComplex):
    return {
        "ambient": c.ambient,
        "polyhedra": [
            {"vertices": [_numbers(v) for v in verts], "rays": [list(r) for r in rays]}
            for verts, rays in c.polyhedra
        ],
    }


def _read_polytope(p, path) -> LatticePolytope:
    p = _obj(p, path, ("ambient", "vertices", "rays", "lineality"))
    n = _int(p["ambient"], f"{path}.ambient")
    verts = tuple(tuple(Fraction(x) for x in _qvector(v, f"{path}.vertices[{i}]", n)) for i, v in enumerate(_list(p["vertices"], f"{path}.vertices")))
    rays = tuple(_vector(r, f"{path}.rays[{i}]", n) for i, r in enumerate(_list(p["rays"], f"{path}.rays")))
    lin = tuple(_vector(r, f"{path}.lineality[{i}]", n) for i, r in enumerate(_list(p["lineality"], f"{path}.lineality")))
    return LatticePolytope(n, tuple(sorted(verts)), tuple(sorted(rays)), lin)


def _polytope_payload(P: LatticePolytope):
    return {
        "ambient": P.ambient,
        "vertices": [_numbers(v) for v in P.vertices],
        "rays": [list(r) for r in P.rays],
        "lineality": [list(r) for r in P.lineality],
    }


def _read_ideal(p, path) -> MonomialIdeal:
    p = _obj(p, path, ("rank", "generators"))
    n = _int(p["rank"], f"{path}.rank")
    gens = [_vector(g, f"{path}.generators[{i}]", n) for i, g in enumerate(_list(p["generators"], f"{path}.generators"))]
    if not gens:
        raise SchemaError("an ideal needs a generator", f"{path}.generators")
    return MonomialIdeal(n, tuple(gens))


def _report_value(x):
    if isinstance(x, Fraction):
        return format_number(x)
    if isinstance(x, dict):
        return {str(k): _report_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_report_value(v) for v in x]
    return x


def payload_of(obj) -> Tuple[str, Any]:
    """``(kind, payload)`` for a library object."""
    if isinstance(obj, Fan):
        return "fan", fan_to_payload(obj)
    if isinstance(obj, MinkowskiWeight):
        return "weighted_fan", weight_to_payload(obj)
    if isinstance(obj, ToricDivisor):
        return "divisor", {"fan": fan_to_payload(obj.fan), "coefficients": _numbers(obj.coefficients)}
    if isinstance(obj, PLFunction):
        return "pl_function", {"fan": fan_to_payload(obj.fan), "values": _numbers(obj.values)}
    if isinstance(obj, StrataWeights):
        return "strata_weights", {
            "weight": weight_to_payload(obj.weight),
            "values": [{"cone": list(k), "value": format_number(v)} for k, v in obj.values.items()],
        }
    if isinstance(obj, CartierBDivisor):
        return "bdivisor", {
            "base": fan_to_payload(obj.base),
            "fan": fan_to_payload(obj.fan),
            "values": _numbers(obj.phi.values),
        }
    if isinstance(obj, LaurentSupport):
        p = {"rank": obj.rank, "exponents": [list(e) for e in obj.exponents]}
        if obj.coefficients is not None:
            p["coefficients"] = list(obj.coefficients)
        return "laurent_support", p
    if isinstance(obj, RationalComplex):
        return "complex", _complex_payload(obj)
    if isinstance(obj, LatticePolytope):
        return "polytope", _polytope_payload(obj)
    if isinstance(obj, MonomialIdeal):
        return "monomial_ideal", {"rank": obj.rank, "generators": [list(g) for g in obj.generators]}
    if isinstance(obj, Report):
        return "report", _report_value(dict(obj))
    raise TypeError(f"cannot serialize {type(obj).__name__}")


class Report(dict):
    """Free-form result table; values may contain fractions."""


_READERS = {
    "fan": lambda p, path: _read_fan(p, path)[0],
    "weighted_fan": _read_weight,
    "divisor": _read_divisor,
    "pl_function": _read_pl,
    "strata_weights": _read_strata,
    "bdivisor": _read_bdivisor,
    "laurent_support": _read_support,
    "complex": _read_complex,
    "polytope": _read_polytope,
    "monomial_ideal": _read_ideal,
    "report": lambda p, path: Report(_obj(p, path, (), tuple(p) if isinstance(p, dict) else ())),
}


def to_document(obj) -> Dict[str, Any]:
    kind, payload = payload_of(obj)
    return {"schema": SCHEMA, "kind": kind, "payload": payload}


def _format(x, level: int = 0) -> str:
    """Two-space indented JSON with scalar lists kept on one line."""
    pad, inner = "  " * level, "  " * (level + 1)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_format(v, level + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(x, list):
        if all(not isinstance(v, (dict, list)) for v in x):
            return "[" + ", ".join(json.dumps(v, ensure_ascii=False) for v in x) + "]"
        return "[\n" + ",\n".join(inner + _format(v, level + 1) for v in x) + "\n" + pad + "]"
    return json.dumps(x, ensure_ascii=False)


def format_document(doc) -> str:
    return _format(doc) + "\n"


def dumps(obj) -> str:
    return format_document(to_document(obj))


def from_document(doc, expect=None):
    doc = _obj(doc, "", ("schema", "kind", "payload"))
    if doc["schema"] != SCHEMA:
        raise SchemaError(f"unsupported schema {doc['schema']!r}", "schema")
    kind = doc["kind"]
    if kind not in _READERS:
        raise SchemaError(f"unknown kind {kind!r}", "kind")
    if expect is not None:
        allowed = (expect,) if isinstance(expect, str) else tuple(expect)
        if kind not in allowed:
            raise SchemaError(f"expected kind {' or '.join(allowed)}, got {kind!r}", "kind")
    return _READERS[kind](doc["payload"], "payload")


def loads(text: str, expect=None):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(e.msg, f"line {e.lineno} column {e.colno}") from None
    return from_document(doc, expect)


def kind_of(text: str) -> str:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(e.msg, f"line {e.lineno} column {e.colno}") from None
    if not isinstance(doc, dict) or "kind" not in doc:
        raise SchemaError("missing field 'kind'")
    return doc["kind"]
