import io
import json
import math
from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reeb_spectra.cli import COMMANDS, main, run
from reeb_spectra.documents import (
    SCHEMA_ID,
    DocumentError,
    dumps,
    model_from_doc,
    model_to_doc,
    registry_from_doc,
    registry_to_doc,
    seifert_from_doc,
    seifert_to_doc,
    validate,
    value_from_doc,
    value_ref_from_text,
    value_to_doc,
)
from reeb_spectra.models import BesseModel
from reeb_spectra.qlinear import BasisRegistry, QLinearValue
from reeb_spectra.seifert import SeifertInvariants

GOLDEN = Path(__file__).parent / "golden"
MANIFEST = json.loads((GOLDEN / "manifest.json").read_text())


def invoke(entry):
    argv = list(entry["argv"])
    if "input" in entry:
        argv += ["--input", str(GOLDEN / entry["input"])]
    text, code, _ = run(argv, io.StringIO(""))
    return text, code


def run_doc(argv, doc):
    text, code, _ = run(argv, io.StringIO(json.dumps(doc)))
    return json.loads(text), code


# -- golden corpus ----------------------------------------------------------


@pytest.mark.parametrize("entry", MANIFEST, ids=[e["name"] for e in MANIFEST])
def test_golden(entry):
    text, code = invoke(entry)
    assert code == entry["exit"]
    assert text == (GOLDEN / f"{entry['name']}.out.json").read_text()
    validate(json.loads(text))


def test_corpus_covers_every_subcommand():
    covered = {tuple(w for w in e["argv"] if not w.startswith("-") and not w[0].isdigit())[:2]
               for e in MANIFEST}
    for key in COMMANDS:
        assert any(c[: len(key)] == key for c in covered), key


def test_output_is_deterministic():
    for entry in MANIFEST:
        assert invoke(entry) == invoke(entry)


# -- documents --------------------------------------------------------------


def test_examples():
    out, code = run_doc(["ellipsoid", "besse"], {"schema": SCHEMA_ID, "ellipsoid": {"a": "1", "b": "2"}})
    assert code == 0 and out["result"] == {"besse": True, "prime_spectrum": ["1", "2"]}
    seif = {"genus": 0, "pairs": [[2, 1], [2, -1]]}
    out, code = run_doc(["seifert", "euler"], {"schema": SCHEMA_ID, "seifert": seif})
    assert out["result"] == {"euler": "0"}
    out, code = run_doc(["ech", "gap"], {"schema": SCHEMA_ID, "ech": {"a": "1", "b": "2", "kmax": 10}})
    assert out["result"]["k"] == 2


def test_flags_override_document_params():
    doc = {"schema": SCHEMA_ID, "ech": {"a": "1", "b": "1", "kmax": 10}}
    out, _ = run_doc(["ech", "values", "--kmax", "2"], doc)
    assert out["result"]["values"] == ["0", "1", "1"]


def test_inline_value_flag():
    reg = [{"symbol": "s", "approx": "1.4142135623730951", "precision_digits": 15}]
    doc = {"schema": SCHEMA_ID, "registry": reg, "ech": {"a": "1", "b": {"s": "1"}}}
    out, code = run_doc(["ech", "count", "--L", '{"s": "1"}'], doc)
    assert code == 0 and out["result"]["count"] == 3  # (0,0), (1,0), (0,1)


@pytest.mark.parametrize("argv, doc, code, name, path", [
    (["rank"], {"schema": SCHEMA_ID, "spectrum": ["1", "-1"]}, 1, "InvalidSpectrum", None),
    (["rank"], {"schema": SCHEMA_ID, "spectrum": ["1", {"t": "1"}]}, 1, "RegistryMismatch", None),
    (["rank"], {"schema": "other", "spectrum": ["1"]}, 2, "DocumentError", "schema"),
    (["rank"], {"schema": SCHEMA_ID, "spectrum": ["0.5"]}, 2, "DocumentError", "spectrum[0]"),
    (["rank"], {"schema": SCHEMA_ID}, 2, "DocumentError", "spectrum"),
    (["ech", "values"], {"schema": SCHEMA_ID, "ech": {"a": "1", "b": "2"}}, 2, "DocumentError", "params.kmax"),
    (["ellipsoid", "to-model"],
     {"schema": SCHEMA_ID, "registry": [{"symbol": "s", "approx": "1.41", "precision_digits": 3}],
      "ellipsoid": {"a": "1", "b": {"s": "1"}}}, 1, "NotBesse", "ellipsoid"),
    (["model", "spectrum"],
     {"schema": SCHEMA_ID, "model": {"manifold": "S3", "tau": "1", "seifert": {"genus": 0, "pairs": [[2, -1]]}}},
     1, "InvalidModel", "seifert"),
    (["model", "equiv"],
     {"schema": SCHEMA_ID, "model": [{"manifold": "A", "tau": "1", "seifert": {"genus": 0, "pairs": [[1, 1]]}},
                                     {"manifold": "B", "tau": "1", "seifert": {"genus": 0, "pairs": [[1, 1]]}}]},
     1, "ManifoldMismatch", "model"),
])
def test_errors_are_structured(argv, doc, code, name, path):
    out, got = run_doc(argv, doc)
    assert got == code
    assert out["error"]["name"] == name
    if path is not None:
        assert out["error"]["path"] == path
    validate(out)


def test_bad_command_line_is_exit_2():
    out, code = run_doc(["ech", "values", "--kmax", "many"], {"schema": SCHEMA_ID})
    assert code == 2 and out["error"]["path"] == "argv"
    text, code, _ = run(["frobnicate"], io.StringIO(""))
    assert code == 2


def test_non_json_input():
    text, code, _ = run(["rank"], io.StringIO("not json"))
    assert code == 2
    assert json.loads(text)["error"]["path"] == "$"


def test_precision_cap_surfaces_as_domain_error():
    reg = [{"symbol": "s", "approx": "1.41421356237309504880", "precision_digits": 4}]
    doc = {"schema": SCHEMA_ID, "registry": reg, "spectrum": [{"s": "1"}, "1414213562373/1000000000000"]}
    out, code = run_doc(["spectrum", "enumerate", "--cutoff", "2", "--max-precision-digits", "8"], doc)
    assert code == 1 and out["error"]["name"] == "IndistinguishableAtPrecision"
    out, code = run_doc(["spectrum", "enumerate", "--cutoff", "2"], doc)
    assert code == 0


def test_main_writes_output_file(tmp_path):
    target = tmp_path / "out.json"
    code = main(["lens-obstruction", "--p", "4", "--q", "1", "--alpha", "2", "--bound", "100",
                 "--output", str(target)])
    assert code == 0
    out = json.loads(target.read_text())
    assert out["result"]["obstructed"] is True
    assert out["command"] == "lens-obstruction"


def test_outputs_reparse_as_inputs():
    # an output document is itself a valid document, and its registry and
    # values feed back into a new request unchanged
    entry = next(e for e in MANIFEST if e["name"] == "ellipsoid_besse_irrational")
    out = json.loads(invoke(entry)[0])
    doc = {"schema": SCHEMA_ID, "registry": out["registry"], "spectrum": out["result"]["prime_spectrum"]}
    again, code = run_doc(["besse-check"], doc)
    assert code == 0 and again["result"]["verdict"] == "NotBesse"


# -- value round trips ------------------------------------------------------


symbols = st.sampled_from(["1", "s", "t", "sqrt_3"])
fractions = st.fractions(max_denominator=10 ** 6).filter(lambda x: abs(x) < 10 ** 9)
values = st.dictionaries(symbols, fractions, max_size=4).map(QLinearValue)


@given(values)
def test_value_round_trip(v):
    doc = value_to_doc(v)
    assert value_from_doc(json.loads(json.dumps(doc)), "v") == v
    validate({"schema": SCHEMA_ID, "spectrum": [doc]})


@given(fractions)
def test_rational_text_round_trip(x):
    assert value_ref_from_text(str(x), "v") == QLinearValue.rational(x)


@given(st.integers(0, 3), st.lists(st.tuples(st.integers(1, 9), st.integers(-20, 20)), max_size=4))
def test_seifert_round_trip(genus, pairs):
    pairs = [(a, b) for a, b in pairs if math.gcd(a, b) == 1]
    s = SeifertInvariants(genus, tuple(pairs))
    assert seifert_from_doc(json.loads(json.dumps(seifert_to_doc(s))), "s") == s


def test_registry_and_model_round_trip():
    reg = BasisRegistry.of(("s", "1.4142135623730951", 15), ("t", "2.5", 2))
    assert registry_from_doc(registry_to_doc(reg)) == reg
    m = BesseModel("S3", QLinearValue.symbol("s", F(3, 2)), SeifertInvariants.of(0, 2, 1), reg)
    assert model_from_doc(model_to_doc(m), reg, "m") == m


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
    with pytest.raises(DocumentError):
        validate({"schema": SCHEMA_ID, "extra": 1})
