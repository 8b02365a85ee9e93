"""Command-line front end: JSON document in, JSON document out.

Exit codes: 0 on success, 1 on a domain error, 2 on a malformed document or
command line.  Errors are reported as ``{"error": {"name", "message",
"path"}}`` documents on the output stream.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable

from . import ech, models, seifert, spectra
from .documents import (
    SCHEMA_ID,
    DocumentError,
    dumps,
    ellipsoid_from_doc,
    interval_to_doc,
    model_from_doc,
    model_to_doc,
    normal_form_to_doc,
    registry_from_doc,
    registry_to_doc,
    seifert_from_doc,
    seifert_to_doc,
    rational_to_doc,
    validate,
    value_from_doc,
    value_ref_from_text,
    value_to_doc,
)
from .errors import ReebSpectraError
from .qlinear import BasisRegistry, QLinearValue


class Request:
    """A parsed input document plus command-line overrides."""

    def __init__(self, doc: dict, args: argparse.Namespace):
        self.doc = doc
        self.args = args
        self.registry: BasisRegistry = registry_from_doc(doc.get("registry"),
                                                         args.max_precision_digits)

    def payload(self, key: str) -> Any:
        if key not in self.doc:
            raise DocumentError(f"missing payload {key!r}", path=key)
        return self.doc[key]

    def param(self, name: str, *, required: bool = True) -> Any:
        flag = getattr(self.args, name, None)
        if flag is not None:
            return flag
        for source in (self.doc.get("params") or {}, self.doc.get("ech") or {}):
            if name in source:
                return source[name]
        if required:
            raise DocumentError(f"missing parameter {name!r}", path=f"params.{name}")
        return None

    def value_param(self, name: str) -> QLinearValue:
        flag = getattr(self.args, name, None)
        if flag is not None:
            return value_ref_from_text(flag, name)
        return value_from_doc(self.param(name), f"params.{name}")

    def spectrum(self) -> spectra.PrimeSpectrum:
        items = self.payload("spectrum")
        values = [value_from_doc(v, f"spectrum[{i}]") for i, v in enumerate(items)]
        return spectra.PrimeSpectrum(values, self.registry)

    def seifert(self, count: int = 1):
        d = self.payload("seifert")
        if count == 1:
            if isinstance(d, list):
                raise DocumentError("expected one Seifert tuple", path="seifert")
            return seifert_from_doc(d, "seifert")
        if not isinstance(d, list) or len(d) != count:
            raise DocumentError(f"expected a list of {count} Seifert tuples", path="seifert")
        return [seifert_from_doc(x, f"seifert[{i}]") for i, x in enumerate(d)]

    def model(self, count: int = 1):
        d = self.payload("model")
        if count == 1:
            if isinstance(d, list):
                raise DocumentError("expected one model", path="model")
            return model_from_doc(d, self.registry, "model")
        if not isinstance(d, list) or len(d) != count:
            raise DocumentError(f"expected a list of {count} models", path="model")
        return [model_from_doc(x, self.registry, f"model[{i}]") for i, x in enumerate(d)]

    def ellipsoid(self) -> models.EllipsoidModel:
        return ellipsoid_from_doc(self.payload("ellipsoid"), self.registry, "ellipsoid")

    def ech_pair(self) -> tuple[QLinearValue, QLinearValue]:
        d = self.payload("ech")
        return value_from_doc(d["a"], "ech.a"), value_from_doc(d["b"], "ech.b")


def _values(vs) -> list:
    return [value_to_doc(v) for v in vs]


# -- command handlers ---------------------------------------------------------


def cmd_rank(req: Request) -> dict:
    return {"rank": spectra.spectrum_rank(req.spectrum())}


def cmd_common_period(req: Request) -> dict:
    t = spectra.common_period(req.spectrum())
    return {"common_period": None if t is None else value_to_doc(t)}


def cmd_besse_check(req: Request) -> dict:
    sp = req.spectrum()
    v = spectra.besse_verdict(sp)
    w = spectra.rank_one_witness(sp)
    return {"verdict": v.verdict.value,
            "witness": None if v.witness is None else value_to_doc(v.witness),
            "rank": spectra.spectrum_rank(sp),
            "rank_one_witness": None if w is None else value_to_doc(w)}


def cmd_zoll_check(req: Request) -> dict:
    return {"zoll": spectra.is_zoll(req.spectrum())}


def cmd_spectrum_enumerate(req: Request) -> dict:
    cutoff = req.value_param("cutoff")
    return {"cutoff": value_to_doc(cutoff),
            "values": _values(spectra.enumerate_action_spectrum(req.spectrum(), cutoff))}


def cmd_seifert_normalize(req: Request) -> dict:
    s = req.seifert()
    return {"normal_form": normal_form_to_doc(seifert.normalize(s)),
            "euler": rational_to_doc(seifert.euler_number(s))}


def cmd_seifert_euler(req: Request) -> dict:
    return {"euler": rational_to_doc(seifert.euler_number(req.seifert()))}


def cmd_seifert_equiv(req: Request) -> dict:
    s1, s2 = req.seifert(2)
    return {"equivalent": seifert.equivalent(s1, s2)}


def cmd_seifert_reverse(req: Request) -> dict:
    r = seifert.reverse_orientation(req.seifert())
    return {"seifert": seifert_to_doc(r), "euler": rational_to_doc(seifert.euler_number(r))}


def cmd_seifert_besse_ok(req: Request) -> dict:
    s = req.seifert()
    return {"besse_realizable": seifert.besse_realizable(s),
            "euler": rational_to_doc(seifert.euler_number(s))}


def cmd_lens_check(req: Request) -> dict:
    p, q = req.param("p"), req.param("q")
    return {"p": p, "q": q, "passes": seifert.lens_fibration_check(p, q, req.seifert())}


def cmd_lens_obstruction(req: Request) -> dict:
    p, q, alpha, bound = (req.param(n) for n in ("p", "q", "alpha", "bound"))
    return {"p": p, "q": q, "alpha": alpha, "bound": bound,
            "obstructed": seifert.singular_count_obstruction(p, q, alpha, bound)}


def cmd_model_spectrum(req: Request) -> dict:
    return {"prime_spectrum": _values(models.model_prime_spectrum(req.model()))}


def cmd_model_strata(req: Request) -> dict:
    st = models.multiplicity_strata(req.model())
    return {"support": list(st.support),
            "exceptional": [[a, n] for a, n in sorted(st.exceptional.items())]}


def cmd_model_equiv(req: Request) -> dict:
    m1, m2 = req.model(2)
    return {"equivalent": models.besse_forms_equivalent(m1, m2)}


def cmd_model_reconstruct(req: Request) -> dict:
    rec = models.reconstruct_multiplicities(req.spectrum())
    if rec is None:
        return {"reconstructible": False, "tau": None, "multiplicities": None}
    return {"reconstructible": True, "tau": value_to_doc(rec.tau),
            "multiplicities": sorted(rec.multiplicities)}


def cmd_ellipsoid_spectrum(req: Request) -> dict:
    return {"prime_spectrum": _values(models.ellipsoid_prime_spectrum(req.ellipsoid()))}


def cmd_ellipsoid_besse(req: Request) -> dict:
    e = req.ellipsoid()
    return {"besse": models.ellipsoid_is_besse(e),
            "prime_spectrum": _values(models.ellipsoid_prime_spectrum(e))}


def cmd_ellipsoid_to_model(req: Request) -> dict:
    m = models.ellipsoid_to_besse_model(req.ellipsoid())
    return {"model": model_to_doc(m), "euler": rational_to_doc(seifert.euler_number(m.seifert))}


def cmd_ech_values(req: Request) -> dict:
    a, b = req.ech_pair()
    kmax = req.param("kmax")
    return {"kmax": kmax, "values": _values(ech.ech_spectrum_values(a, b, kmax, req.registry))}


def cmd_ech_count(req: Request) -> dict:
    a, b = req.ech_pair()
    level = req.value_param("L")
    return {"L": value_to_doc(level),
            "count": ech.filtered_generator_count(a, b, level, req.registry)}


def cmd_ech_gap(req: Request) -> dict:
    a, b = req.ech_pair()
    kmax = req.param("kmax")
    return {"kmax": kmax, "k": ech.first_gap_collision(a, b, kmax, req.registry)}


def cmd_ech_sublinear(req: Request) -> dict:
    a, b = req.ech_pair()
    checkpoints = req.param("checkpoints")
    try:
        checkpoints = [int(c) for c in checkpoints]
    except (TypeError, ValueError) as exc:
        raise DocumentError("checkpoints must be integers", path="checkpoints") from exc
    profile = ech.sublinearity_profile(a, b, checkpoints, req.registry)
    return {"checkpoints": checkpoints,
            "profile": [dict(k=k, **interval_to_doc(iv)) for k, iv in zip(checkpoints, profile)],
            "decreasing": ech.is_strictly_decreasing(profile)}


def cmd_ech_volume(req: Request) -> dict:
    a, b = req.ech_pair()
    k = req.param("k")
    return {"k": k, "ratio": interval_to_doc(ech.volume_asymptotic_ratio(a, b, k, req.registry))}


# (group, action) -> (handler, needs input document, extra flags)
COMMANDS: dict[tuple[str, ...], tuple[Callable[[Request], dict], bool, tuple[str, ...]]] = {
    ("rank",): (cmd_rank, True, ()),
    ("common-period",): (cmd_common_period, True, ()),
    ("besse-check",): (cmd_besse_check, True, ()),
    ("zoll-check",): (cmd_zoll_check, True, ()),
    ("spectrum", "enumerate"): (cmd_spectrum_enumerate, True, ("cutoff",)),
    ("seifert", "normalize"): (cmd_seifert_normalize, True, ()),
    ("seifert", "euler"): (cmd_seifert_euler, True, ()),
    ("seifert", "equiv"): (cmd_seifert_equiv, True, ()),
    ("seifert", "reverse"): (cmd_seifert_reverse, True, ()),
    ("seifert", "besse-ok"): (cmd_seifert_besse_ok, True, ()),
    ("lens-check",): (cmd_lens_check, True, ("p", "q")),
    ("lens-obstruction",): (cmd_lens_obstruction, False, ("p", "q", "alpha", "bound")),
    ("model", "spectrum"): (cmd_model_spectrum, True, ()),
    ("model", "strata"): (cmd_model_strata, True, ()),
    ("model", "equiv"): (cmd_model_equiv, True, ()),
    ("model", "reconstruct"): (cmd_model_reconstruct, True, ()),
    ("ellipsoid", "spectrum"): (cmd_ellipsoid_spectrum, True, ()),
    ("ellipsoid", "besse"): (cmd_ellipsoid_besse, True, ()),
    ("ellipsoid", "to-model"): (cmd_ellipsoid_to_model, True, ()),
    ("ech", "values"): (cmd_ech_values, True, ("kmax",)),
    ("ech", "count"): (cmd_ech_count, True, ("L",)),
    ("ech", "gap"): (cmd_ech_gap, True, ("kmax",)),
    ("ech", "sublinear"): (cmd_ech_sublinear, True, ("checkpoints",)),
    ("ech", "volume"): (cmd_ech_volume, True, ("k",)),
}

_FLAG_SPECS = {
    "cutoff": dict(metavar="VALUE", help="rational literal or inline JSON value map"),
    "L": dict(metavar="VALUE", help="action level: rational literal or inline JSON value map"),
    "kmax": dict(type=int),
    "k": dict(type=int),
    "p": dict(type=int),
    "q": dict(type=int),
    "alpha": dict(type=int),
    "bound": dict(type=int),
    "checkpoints": dict(type=lambda s: [int(x) for x in s.split(",") if x.strip()],
                        metavar="K1,K2,..."),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise DocumentError(message, path="argv")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--input", default=None, help="input document path, or - for stdin")
    common.add_argument("--output", default="-", help="output document path, or - for stdout")
    common.add_argument("--max-precision-digits", type=int, default=None,
                        help="cap on decimal digits used when ordering irrational values")

    parser = _Parser(prog="reeb-spectra", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)
    groups: dict[str, argparse._SubParsersAction] = {}
    for key, (_, _, flags) in COMMANDS.items():
        if len(key) == 1:
            leaf = top.add_parser(key[0], parents=[common])
        else:
            if key[0] not in groups:
                g = top.add_parser(key[0])
                groups[key[0]] = g.add_subparsers(dest="action", required=True,
                                                  parser_class=_Parser)
            leaf = groups[key[0]].add_parser(key[1], parents=[common])
        leaf.set_defaults(command=key)
        for flag in _FLAG_SPECS:
            spec = dict(_FLAG_SPECS[flag])
            if flag not in flags:
                spec["help"] = argparse.SUPPRESS
            leaf.add_argument(f"--{flag}", dest=flag, default=None, **spec)
    return parser


def _read_input(path: str | None, needed: bool, stdin) -> dict:
    if path is None:
        if not needed:
            return {"schema": SCHEMA_ID}
        path = "-"
    try:
        text = stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise DocumentError(f"cannot read input: {exc}", path="--input") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"input is not JSON: {exc}", path="$") from exc
    validate(doc)
    return doc


def _error_doc(command: str | None, exc: ReebSpectraError) -> dict:
    doc = {"schema": SCHEMA_ID,
           "error": {"name": type(exc).__name__, "message": str(exc), "path": exc.path}}
    if command:
        doc["command"] = command
    return doc


def run(argv: list[str], stdin=None) -> tuple[str, int, str]:
    """Execute one invocation; returns ``(document text, exit code, output path)``."""
    stdin = stdin if stdin is not None else sys.stdin
    output_path, command_name = "-", None
    try:
        args = build_parser().parse_args(argv)
        output_path = args.output
        command_name = " ".join(args.command)
        handler, needed, _ = COMMANDS[args.command]
        doc = _read_input(args.input, needed, stdin)
        req = Request(doc, args)
        result = handler(req)
    except DocumentError as exc:
        return dumps(_error_doc(command_name, exc)), 2, output_path
    except ReebSpectraError as exc:
        return dumps(_error_doc(command_name, exc)), 1, output_path
    except (KeyError, TypeError) as exc:
        err = DocumentError(f"malformed document: {exc!r}", path=None)
        return dumps(_error_doc(command_name, err)), 2, output_path
    out = {"schema": SCHEMA_ID, "command": command_name,
           "registry": registry_to_doc(req.registry), "result": result}
    return dumps(out), 0, output_path


def main(argv: list[str] | None = None) -> int:
    text, code, path = run(sys.argv[1:] if argv is None else argv)
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
