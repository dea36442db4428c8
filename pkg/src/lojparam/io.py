"""JSON input and output for polynomials, families and regions.

Inputs are validated against the schemas shipped in ``lojparam/schemas``.
A polynomial is exact when it says ``"mode": "exact"`` or when any term uses
``re_rat``/``im_rat``; floats in an exact polynomial keep their binary value.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import jsonschema
from referencing import Registry, Resource

from .errors import SchemaError
from .gaussrat import GaussRat
from .poly import MultiPoly, ParamFamily, Region

SCHEMAS = ("polynomial", "family", "region", "request", "report")


@lru_cache(maxsize=None)
def _registry() -> Registry:
    reg = Registry()
    for name in SCHEMAS:
        doc = load_schema(name)
        reg = reg.with_resource(doc["$id"], Resource.from_contents(doc))
    return reg


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("lojparam").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def validate(doc, name: str) -> None:
    """Raise :class:`SchemaError` (with the failing location) if ``doc`` does not match."""
    schema = load_schema(name)
    validator = jsonschema.Draft202012Validator(schema, registry=_registry())
    err = jsonschema.exceptions.best_match(validator.iter_errors(doc))
    if err is not None:
        loc = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise SchemaError(f"{name} schema violation at {loc}: {err.message}")


def _scalar(v):
    if isinstance(v, list):
        return complex(v[0], v[1])
    return v


def _coefficient(term: dict, exact: bool):
    if exact:
        re = Fraction(term["re_rat"]) if "re_rat" in term else Fraction(term.get("re", 0.0))
        im = Fraction(term["im_rat"]) if "im_rat" in term else Fraction(term.get("im", 0.0))
        return GaussRat(re, im)
    re = float(Fraction(term["re_rat"])) if "re_rat" in term else term.get("re", 0.0)
    im = float(Fraction(term["im_rat"])) if "im_rat" in term else term.get("im", 0.0)
    return complex(re, im)


def poly_from_json(doc: dict, schema: str = "polynomial") -> MultiPoly:
    validate(doc, schema)
    names = doc["vars"]
    if "expr" in doc:
        f = MultiPoly.parse(doc["expr"], names)
        return f.to_float() if doc.get("mode") == "float" else f
    terms = doc["terms"]
    exact = doc.get("mode") == "exact" or (
        doc.get("mode") is None and any("re_rat" in t or "im_rat" in t for t in terms)
    )
    out: dict = {}
    for t in terms:
        e = tuple(t["exp"])
        if len(e) != len(names):
            raise SchemaError(f"term exponent {list(e)} does not match {len(names)} variables")
        out[e] = out.get(e, 0) + _coefficient(t, exact)
    return MultiPoly(out, len(names), exact, names)


def family_from_json(doc: dict) -> ParamFamily:
    f = poly_from_json(doc, "family")
    if doc["param"] not in f.names:
        raise SchemaError(f"param {doc['param']!r} is not one of vars {list(f.names)}")
    bp = doc.get("base_point")
    return ParamFamily(
        f,
        f.names.index(doc["param"]),
        _scalar(doc.get("t0", 0)),
        None if bp is None else tuple(_scalar(b) for b in bp),
    )


def _coeff_json(c, exact: bool) -> dict:
    if exact:
        c = GaussRat.coerce(c)
        d = {"re_rat": str(c.re)}
        if c.im:
            d["im_rat"] = str(c.im)
        return d
    c = complex(c)
    return {"re": c.real, "im": c.imag}


def poly_to_json(f: MultiPoly) -> dict:
    terms = [{"exp": list(e), **_coeff_json(c, f.exact)} for e, c in f.terms.items()]
    return {"vars": list(f.names), "mode": "exact" if f.exact else "float", "terms": terms}


def family_to_json(fam: ParamFamily) -> dict:
    doc = poly_to_json(fam.poly)
    doc["param"] = fam.poly.names[fam.param]
    t0 = complex(fam.t0)
    doc["t0"] = [t0.real, t0.imag]
    if fam.base_point is not None:
        doc["base_point"] = [[complex(b).real, complex(b).imag] for b in fam.base_point]
    return doc


def region_from_json(doc: dict) -> Region:
    validate(doc, "region")
    return Region(tuple(complex(a, b) for a, b in doc["center"]), tuple(doc["radii"]))


def load_json(path) -> dict:
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON ({exc})") from exc


def load_poly(path) -> MultiPoly:
    return poly_from_json(load_json(path))


def load_family(path) -> ParamFamily:
    return family_from_json(load_json(path))


def dump(doc, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(doc))


def dumps(doc) -> str:
    """Canonical JSON: sorted keys, fixed indentation, no NaN or infinity."""
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"
