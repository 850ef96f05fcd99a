import csv
import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from dyndeg.cli import OUT_DIR_ENV, dispatch, replay_report
from dyndeg.io import (
    SpecError,
    canonical_json,
    dump_spec,
    load_json_arg,
    load_spec,
    parse_matrix,
    validate_spec,
)
from dyndeg.linalg import IntMatrix
from dyndeg.oracle import PRIMES

P = str(PRIMES[2])


def term(e, c):
    return {"exponents": list(e), "coeff": str(c)}


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code, rep = dispatch(argv, stdout=out, stderr=err)
    return code, rep, out.getvalue(), err.getvalue()


# -- map specifications ----------------------------------------------------------


def test_fab_spec_mod_p_accepted_with_degree_two():
    loaded = validate_spec({"kind": "fab", "a": "1", "b": "1", "field": {"prime": P}})
    assert loaded.kind == "fab" and loaded.map.degree == 2 and not loaded.warnings


def test_unequal_degrees_rejected_with_degrees_listed():
    doc = {"kind": "explicit", "components": [[term((1, 0, 0), 1)], [term((0, 2, 0), 1)], [term((0, 0, 1), 1)]]}
    with pytest.raises(SpecError, match=r"unequal degrees \[1, 2, 1\]"):
        validate_spec(doc)


def test_common_monomial_normalized_with_warning():
    doc = {
        "kind": "explicit",
        "components": [[term((2, 0, 0), 1)], [term((1, 1, 0), 1)], [term((1, 0, 1), 1)]],
    }
    loaded = validate_spec(doc)
    assert loaded.map.degree == 1
    assert loaded.warnings and "x0" in loaded.warnings[0]


@pytest.mark.parametrize(
    "doc, msg",
    [
        ({"kind": "nope"}, "schema"),
        ({"kind": "explicit", "components": [[term((1, 0), 1)], [term((0, 1), 1)], [term((1, 0), 1)]]}, "exponent vector"),
        ({"kind": "explicit", "components": [[term((1, 0, 0), 1)], [term((0, 1, 0), 1), term((0, 0, 2), 1)], [term((0, 0, 1), 1)]]}, "homogeneous"),
        ({"kind": "explicit", "components": [[{"exponents": [1, 0], "coeff": "1.5"}], [term((0, 1), 1)]]}, "schema"),
        ({"kind": "fab", "a": 1, "b": 1, "field": {"prime": "4"}}, "prime"),
        ({"kind": "monomial", "matrix": [[1, 2], [2, 4]]}, "singular"),
        ({"kind": "matinv", "q": 1, "which": "J"}, "schema"),
        ({"kind": "explicit", "k": 3, "components": [[term((1, 0, 0), 1)], [term((0, 1, 0), 1)], [term((0, 0, 1), 1)]]}, "components given"),
    ],
)
def test_spec_rejections(doc, msg):
    with pytest.raises(SpecError, match=msg):
        validate_spec(doc)


def test_other_kinds():
    assert validate_spec({"kind": "monomial", "matrix": [[1, -1], [-2, -3]]}).map.degree == 5
    assert validate_spec({"kind": "matinv", "q": 3, "which": "K"}).map.degree == 7
    big = validate_spec({"kind": "fab", "a": str(10**40), "b": "-7"})
    assert big.meta == {"a": str(10**40), "b": "-7"}


def test_dump_parse_roundtrip_is_byte_identical():
    for doc in (
        {"kind": "fab", "a": "3", "b": "5", "field": {"prime": P}},
        {"kind": "monomial", "matrix": [[1, -1], [-2, -3]]},
        {"kind": "matinv", "q": 2, "which": "J"},
    ):
        text = dump_spec(validate_spec(doc).map)
        again = dump_spec(load_spec(text).map)
        assert text == again
        assert text == canonical_json(json.loads(text))


@given(st.lists(st.lists(st.integers(-10**30, 10**30), min_size=3, max_size=3), min_size=3, max_size=3))
def test_matrix_json_roundtrip(rows):
    m = IntMatrix(rows)
    assert parse_matrix(json.loads(canonical_json(m.to_json()))) == m


def test_parse_matrix_rejections():
    for bad in ([[1.0]], [[True]], [[1, 2]], "x", [["1e3"]]):
        with pytest.raises(SpecError):
            parse_matrix(bad)


def test_load_json_arg_file_and_inline(tmp_path):
    f = tmp_path / "m.json"
    f.write_text("[[1]]")
    assert load_json_arg(f) == [[1]]
    assert load_json_arg("[[2]]") == [[2]]
    with pytest.raises(SpecError):
        load_json_arg(str(tmp_path / "missing.json"))


# -- CLI ------------------------------------------------------------------------


def test_monomial_example():
    code, rep, out, _ = run(["monomial", "--matrix", "[[1,-1],[-2,-3]]"])
    assert code == 0
    doc = json.loads(out)
    r = doc["results"]
    assert r["deg1"] == 5
    assert r["projectivized"]["display"] == "[x1^2*x2^3 : x1^3*x2^2 : x0^5]"
    assert r["Deg"]["1"] == [["1", "1"], ["2", "3"]]
    assert doc["version"] and doc["input_sha256"] == rep.input_hash


def test_fab_chi_n0():
    code, _, out, _ = run(["fab", "chi", "--n", "0"])
    assert code == 0
    r = json.loads(out)["results"]
    assert r["coeffs"] == ["-1", "-1", "0", "1", "1"]
    assert r["charpoly_matches"] is True


def test_certify_identity_from_file(tmp_path):
    f = tmp_path / "identity.json"
    f.write_text("[[1,0,0],[0,1,0],[0,0,1]]")
    code, _, out, _ = run(["certify", "--matrix", str(f)])
    assert code == 0
    assert json.loads(out)["results"]["verdict"]["case"] == "radius_one"


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        [],
        ["certify", "--matrix", "[[2,0],[0,1]]"],
        ["monomial", "--matrix", "[[1,2],[2,4]]"],
        ["monomial", "--matrix", "[[1.5]]"],
        ["degseq", "--map", "{\"kind\": \"nope\"}", "--n", "2"],
        ["fab", "chi", "--n", "-1"],
        ["matinv", "--q", "5", "--which", "K", "--mode", "symbolic"],
        ["charpoly", "--matrix", "not json"],
    ],
)
def test_input_errors_exit_2(argv):
    code, rep, _, _ = run(argv)
    assert code == 2 and rep is None


def test_degseq_exit_3_on_degenerate_samples(monkeypatch):
    import dyndeg.cli as cli
    from dyndeg.oracle import DegenerateSampleError

    def boom(*a, **k):
        raise DegenerateSampleError("all samples degenerate")

    monkeypatch.setattr(cli, "degree_sequence", boom)
    code, _, _, err = run(["degseq", "--map", '{"kind": "fab", "a": 2, "b": 3}', "--n", "2"])
    assert code == 3 and "DegenerateSampleError" in err


def test_out_dir_env_and_csv(tmp_path, monkeypatch):
    monkeypatch.setenv(OUT_DIR_ENV, str(tmp_path))
    code, rep, out, _ = run(
        ["fab", "degseq", "--a", "3", "--b", "5", "--prime", P, "--n", "6", "--out", "r.json", "--csv", "d.csv"]
    )
    assert code == 0 and out == ""
    doc = json.loads((tmp_path / "r.json").read_text())
    assert doc["results"]["picard_agrees"] is True
    rows = list(csv.reader(open(tmp_path / "d.csv")))
    assert rows[0] == ["n", "degree", "ratio", "agreement"]
    assert [r[1] for r in rows[1:]] == doc["results"]["degrees"]
    code, rep, _, _ = run(["fab", "lambda", "--n", "7"])
    assert (tmp_path / f"fab-lambda-{rep.results_digest[:12]}.json").is_file()


@pytest.mark.parametrize(
    "argv",
    [
        ["fab", "degseq", "--a", "3", "--b", "5", "--prime", P, "--n", "6", "--seed", "4"],
        ["monomial", "--matrix", "[[2,1],[1,1]]", "--n", "5", "--all-degrees"],
        ["matinv", "--q", "3", "--which", "K", "--n", "3"],
        ["degseq", "--map", '{"kind": "matinv", "q": 3, "which": "K"}', "--n", "3", "--subspace", "cyclic"],
        ["fab", "search", "--n", "5", "--restarts", "8"],
        ["charpoly", "--matrix", "[[2,1,1],[-1,-1,0],[-1,-1,-1]]"],
    ],
)
def test_replay_is_byte_identical(argv):
    code, rep, out, _ = run(argv)
    assert code == 0
    again = replay_report(json.loads(out))
    assert canonical_json(again.results) == canonical_json(rep.results)
    assert again.provenance == rep.provenance
    assert again.results_digest == rep.results_digest


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "dyndeg", "fab", "chi", "--n", "1"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["display"]
    proc = subprocess.run([sys.executable, "-m", "dyndeg", "nope"], capture_output=True, text=True)
    assert proc.returncode == 2 and "usage" in proc.stderr
