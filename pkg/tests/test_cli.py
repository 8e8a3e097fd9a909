from __future__ import annotations

import json
from importlib import resources

import jsonschema
import pytest

from g2forge.cli import main, render_text
from g2forge.exterior import render_form
from g2forge.g2core import STANDARD_PHI
from g2forge.reproduce import printed_form

SCHEMA = json.loads(resources.files("g2forge").joinpath("data/report.schema.json").read_text(encoding="utf-8"))


def run(capsys, *argv, as_json=True):
    code = main([*argv, "--json"] if as_json else list(argv))
    out = capsys.readouterr().out
    if not as_json:
        return code, out
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return code, report


MATRIX = [
    (("catalog", "--filter", "unimodular", "--table", "1"), 0),
    (("catalog",), 0),
    (("catalog", "--filter", "nosuchtag"), 2),
    (("info", "L7_2"), 0),
    (("info", "R+h3"), 0),
    (("info", "L7_3", "--param", "a=0"), 2),
    (("info", "(0,-e12"), 2),
    (("closed", "so3 ⊕ aff ⊕ aff", "-k", "3"), 0),
    (("closed", "R7", "-k", "3"), 0),
    (("closed", "sl2", "-k", "2"), 0),
    (("obstruct", "so3 ⊕ h4"), 0),
    (("obstruct", "L7_6"), 0),
    (("obstruct", "sl2 ⊕ r4_-1/2"), 1),
    (("verify", "R7", "--form", STANDARD_PHI), 0),
    (("verify", "R7", "--form", "e123"), 1),
    (("search", "so3 ⊕ d4", "--restarts", "5"), 1),
    (("search", "R7", "--seed", "7"), 0),
    (("reproduce", "appendix"), 0),
]


@pytest.mark.parametrize("argv,code", MATRIX, ids=[" ".join(a) for a, _ in MATRIX])
def test_exit_codes(capsys, argv, code):
    got, report = run(capsys, *argv)
    assert got == code
    assert report["status"] == {0: "ok", 1: "no-result", 2: "input-error"}[code]
    assert report["command"][: len(argv)] == list(argv)
    if code == 2:
        assert report["error"]


def test_catalog_results(capsys):
    _, r = run(capsys, "catalog")
    assert len(r["results"]["algebras"]) > 60
    _, r = run(capsys, "catalog", "--filter", "unimodular", "--table", "1")
    assert [e["name"] for e in r["results"]["algebras"]] == ["L7_2", "L7_3_-2", "L7_6", "L7_7"]


def test_info_results(capsys):
    _, r = run(capsys, "info", "L7_2")
    assert r["results"]["unimodular"] is True and r["results"]["solvable"] is False
    _, r = run(capsys, "info", "R+h3")
    assert r["results"]["center_dim"] == 2


def test_closed_results(capsys):
    _, r = run(capsys, "closed", "so3 ⊕ aff ⊕ aff", "-k", "3")
    assert r["results"]["dim"] == 16
    _, r = run(capsys, "closed", "R7", "-k", "3")
    assert r["results"]["dim"] == 35
    # every 2-form on sl2 is closed (d maps into 3-forms, which are all exact); none survive in cohomology
    _, r = run(capsys, "closed", "sl2", "-k", "2")
    assert r["results"]["dim"] == 3 and r["results"]["cohomology_dim"] == 0


def test_obstruct_results(capsys):
    _, r = run(capsys, "obstruct", "so3 ⊕ h4")
    cert = r["results"]["certificate"]
    assert cert["kind"] == "ZeroDiagonal" and cert["witness"]["indices"] == [7] and r["results"]["reverified"]
    _, r = run(capsys, "obstruct", "L7_6")
    cert = r["results"]["certificate"]
    assert cert["kind"] == "ScriptedL76" and all(v == "0" for v in cert["residuals"].values())


def test_verify_results(capsys, tmp_path):
    form = render_form(printed_form("MT4", {}))
    path = tmp_path / "phi.txt"
    path.write_text(form)
    code, r = run(capsys, "verify", "L7_3", "--param", "a=-2", "--form", str(path))
    res = r["results"]
    assert code == 0 and res["closed"] and res["definiteSign"] == 1 and res["coclosed"] is False
    _, r = run(capsys, "verify", "R7", "--form", STANDARD_PHI)
    assert r["results"]["coclosed"] is True and r["results"]["detB"] == "1"
    _, r = run(capsys, "verify", "R7", "--form", "e123")
    assert r["results"]["stable"] is False


def test_search_results(capsys):
    code, r = run(capsys, "search", "sl2 ⊕ r4p_1")
    assert code == 0 and r["results"]["found"]


def test_search_reports_deterministic(capsys):
    _, a = run(capsys, "search", "R7", "--seed", "7")
    _, b = run(capsys, "search", "R7", "--seed", "7")
    a.pop("timings"), b.pop("timings")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


@pytest.mark.parametrize("argv", [("info", "L7_2"), ("closed", "sl2", "-k", "2"), ("obstruct", "so3 ⊕ h4")])
def test_text_and_json_carry_same_data(capsys, argv):
    _, report = run(capsys, *argv)
    _, text = run(capsys, *argv, as_json=False)
    report["command"] = list(argv)
    drop = lambda s: [ln for ln in s.splitlines() if "seconds" not in ln]  # noqa: E731
    assert drop(text) == drop(render_text(report))


def test_out_writes_file(capsys, tmp_path):
    path = tmp_path / "report.json"
    assert main(["info", "sl2", "--json", "--out", str(path)]) == 0
    assert capsys.readouterr().out == ""
    jsonschema.validate(json.loads(path.read_text()), SCHEMA)


def test_unknown_reproduce_target_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["reproduce", "prop9.9"])
    assert exc.value.code == 2
