"""JSON documents (format ``reeb-spectra/1``) for values, tuples and models.

Rationals are ``"p/q"`` strings (integers without the ``/1``).  A value with
irrational part is an object ``{symbol: "p/q"}`` where ``"1"`` is the
rational unit; purely rational values are written as bare strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from typing import Any

import jsonschema

from .errors import ReebSpectraError
from .models import BesseModel, EllipsoidModel
from .qlinear import BasisRegistry, BasisSymbol, Interval, QLinearValue, as_fraction
from .seifert import NormalForm, SeifertInvariants

SCHEMA_ID = "reeb-spectra/1"


class DocumentError(ReebSpectraError):
    """Malformed input document (exit code 2 in the CLI)."""


def load_schema() -> dict:
    text = resources.files("reeb_spectra").joinpath("schema/reeb-spectra-1.json").read_text()
    return json.loads(text)


_VALIDATOR = None


def validate(doc: Any) -> None:
    global _VALIDATOR
    if _VALIDATOR is None:
        _VALIDATOR = jsonschema.Draft202012Validator(load_schema())
    err = jsonschema.exceptions.best_match(_VALIDATOR.iter_errors(doc))
    if err is not None:
        path = "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path)
        raise DocumentError(err.message, path=path.lstrip(".") or "$")


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- rationals and values ---------------------------------------------------


def rational_to_doc(q: Fraction) -> str:
    return str(Fraction(q))


def rational_from_doc(s: Any, path: str) -> Fraction:
    if not isinstance(s, str):
        raise DocumentError("rationals are written as \"p/q\" strings", path=path)
    try:
        return as_fraction(s)
    except ValueError as exc:
        raise DocumentError(str(exc), path=path) from exc


def value_to_doc(v: QLinearValue) -> str | dict:
    r = v.as_rational()
    if r is not None:
        return rational_to_doc(r)
    return {s: rational_to_doc(c) for s, c in v.coeffs.items()}


def value_from_doc(d: Any, path: str) -> QLinearValue:
    if isinstance(d, str):
        return QLinearValue.rational(rational_from_doc(d, path))
    if isinstance(d, dict):
        return QLinearValue({s: rational_from_doc(c, f"{path}.{s}") for s, c in d.items()})
    raise DocumentError("a value is a \"p/q\" string or a {symbol: \"p/q\"} map", path=path)


def value_ref_from_text(text: str, path: str) -> QLinearValue:
    """Command-line value reference: a rational literal or an inline JSON map."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return value_from_doc(json.loads(text), path)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"bad JSON value reference: {exc}", path=path) from exc
    return value_from_doc(text, path)


def interval_to_doc(iv: Interval) -> dict:
    return {"lo": rational_to_doc(iv.lo), "hi": rational_to_doc(iv.hi)}


def interval_from_doc(d: dict, path: str) -> Interval:
    return Interval(rational_from_doc(d["lo"], f"{path}.lo"), rational_from_doc(d["hi"], f"{path}.hi"))


# -- registry ---------------------------------------------------------------


def registry_to_doc(reg: BasisRegistry) -> list:
    return [{"symbol": e.symbol, "approx": e.approx, "precision_digits": e.precision_digits}
            for e in reg.entries]


def registry_from_doc(d: Any, max_precision_digits: int | None = None) -> BasisRegistry:
    entries = [BasisSymbol(e["symbol"], e["approx"], e["precision_digits"]) for e in (d or [])]
    return BasisRegistry(tuple(entries), max_precision_digits)


# -- Seifert data and models ------------------------------------------------


def seifert_to_doc(s: SeifertInvariants) -> dict:
    return {"genus": s.genus, "pairs": [[a, b] for a, b in s.pairs]}


def seifert_from_doc(d: Any, path: str) -> SeifertInvariants:
    if not isinstance(d, dict) or "genus" not in d:
        raise DocumentError("Seifert tuples are {\"genus\": g, \"pairs\": [[a, b], ...]}", path=path)
    return SeifertInvariants(d["genus"], tuple(tuple(p) for p in d.get("pairs", [])))


def normal_form_to_doc(nf: NormalForm) -> dict:
    return {"genus": nf.genus, "b": nf.b, "exceptional": [[a, c] for a, c in nf.exceptional]}


def model_to_doc(m: BesseModel) -> dict:
    return {"manifold": m.manifold_label, "tau": value_to_doc(m.tau),
            "seifert": seifert_to_doc(m.seifert)}


def model_from_doc(d: Any, registry: BasisRegistry, path: str) -> BesseModel:
    if not isinstance(d, dict):
        raise DocumentError("a model is an object", path=path)
    return BesseModel(d["manifold"], value_from_doc(d["tau"], f"{path}.tau"),
                      seifert_from_doc(d["seifert"], f"{path}.seifert"), registry)


def ellipsoid_to_doc(e: EllipsoidModel) -> dict:
    return {"a": value_to_doc(e.a), "b": value_to_doc(e.b)}


def ellipsoid_from_doc(d: Any, registry: BasisRegistry, path: str) -> EllipsoidModel:
    if not isinstance(d, dict):
        raise DocumentError("an ellipsoid is an object with keys a, b", path=path)
    return EllipsoidModel(value_from_doc(d["a"], f"{path}.a"),
                          value_from_doc(d["b"], f"{path}.b"), registry)

