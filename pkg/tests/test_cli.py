import io
import json
import subprocess
import sys

import pytest

from iffcat.cli import SCHEMA, run
from iffcat.io import bundled_corpus_dir


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, _ = call(*argv, "--format", "json")
    return code, json.loads(out)


def test_check_category():
    code, out, _ = call("check-category", "arrow")
    assert code == 0
    assert "valid" in out and out.rstrip().endswith("OK")


def test_morphism_table_for_arrow():
    code, report = call_json("morphisms", "arrow")
    assert code == 0 and report["schema"] == SCHEMA
    (a,) = [r for r in report["morphisms"] if r["morphism"] == "a"]
    assert (a["mono"], a["epi"], a["bimorphism"], a["iso"]) == (True, True, True, False)


def test_morphism_table_text():
    _, out, _ = call("morphisms", "arrow")
    row = [line.split() for line in out.splitlines() if line.startswith("a ")][0]
    assert row == ["a", "0", "1", "yes", "yes", "yes", "no"]


def test_opposite_is_json():
    code, out, _ = call("opposite", "arrow")
    assert code == 0
    body = out.rsplit("\n", 2)[0]
    assert json.loads(body)["graph"]["objects"] == ["0", "1"]


def test_initial():
    code, report = call_json("initial", "span3")
    assert code == 0 and report["initial"] == ["span#0"]
    code, report = call_json("initial", "par")
    assert code == 1 and report["initial"] == []


def test_pushout_of_po_corner():
    code, report = call_json("pushout", "po", "--span", "a", "ab", "ac")
    assert code == 0
    assert report["objects"] == ["d"]
    assert report["pushouts"] == [{"opvertex": "d", "opfirst": "bd", "opsecond": "cd"}]


def test_pushout_rejects_a_non_span():
    code, _, err = call("pushout", "po", "--span", "a", "bd", "ac")
    assert code == 1 and "not a span" in err


def test_colimit_of_a_diagram():
    code, report = call_json("colimit", "--diagram", "po_corner_diagram")
    assert code == 0
    assert report["objects"] == ["d"] and report["isomorphicColimits"]


def test_cocompleteness_exit_codes():
    assert call("check-finitely-cocomplete", "po")[0] == 0
    code, report = call_json("check-finitely-cocomplete", "span3")
    assert code == 1 and not report["finitelyCocomplete"]
    assert report["failures"]


def test_usage_errors_exit_2():
    assert call("morphisms", "no_such_fixture")[0] == 2
    assert call("morphisms")[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("kif-check", "--model", "arrow", "/nonexistent.kif")[0] == 2


def test_help_exits_0(capsys):
    assert run(["--help"]) == 0
    assert "cls-pushout" in capsys.readouterr().out


def test_kif_check(tmp_path):
    code, report = call_json("kif-check", "--model", "arrow,po", "--model", "z2",
                             str(bundled_corpus_dir() / "corpus.kif"))
    assert code == 0 and report["ok"] and report["model"] == ["ARROW", "PO", "Z2"]
    bad = tmp_path / "bad.kif"
    bad.write_text(";@ everything.mono\n(forall (?c (CAT$category ?c))\n"
                   "  (= (CAT$monomorphism ?c) (CAT$morphism ?c)))\n")
    code, report = call_json("kif-check", "--model", "absorbing", str(bad))
    assert code == 1 and report["failures"] == ["everything.mono"]
    assert report["sentences"][0]["witness"] == {"?c": "ABSORB"}


def test_kif_check_invertible_reading():
    code, report = call_json("kif-check", "--model", "arrow", "--isomorphism", "invertible",
                             str(bundled_corpus_dir() / "corpus.kif"))
    assert code == 1 and report["failures"] == ["isomorphism.definition"]


def test_kif_syntax_error_exits_1(tmp_path):
    bad = tmp_path / "bad.kif"
    bad.write_text("(forall (?c (CAT$category ?c))")
    code, _, err = call("kif-check", "--model", "arrow", str(bad))
    assert code == 1 and "KifSyntaxError" in err


def test_corpus_with_mutations():
    code, report = call_json("corpus", "--mutations", "20")
    assert code == 0
    assert len(report["mutations"]) == 20
    for m in report["mutations"]:
        assert m["detected"] and m["falsified"] and m["witness"]


def test_cls_pushout_verify():
    code, report = call_json("cls-pushout", "--left", "span1_left", "--right", "span1_right",
                             "--verify")
    assert code == 0
    u = report["universality"]
    assert u["passed"] and u["mediatorCounts"] == {"1": u["cocones"]} and u["rejected"] == 0


def test_cls_pushout_source_mismatch():
    code, _, err = call("cls-pushout", "--left", "span1_left", "--right", "span2_right")
    assert code == 1 and "SourceMismatch" in err


@pytest.mark.parametrize("argv", [
    ("morphisms", "po"),
    ("colimit", "--diagram", "po_corner_diagram"),
    ("corpus", "--mutations", "4", "--seed", "3"),
    ("cls-pushout", "--left", "span1_left", "--right", "span1_right", "--verify",
     "--universe", "random", "--random", "10"),
])
@pytest.mark.parametrize("fmt", ["text", "json"])
def test_output_is_byte_identical_across_runs(argv, fmt):
    first = call(*argv, "--format", fmt)
    second = call(*argv, "--format", fmt)
    assert first == second


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "iffcat.cli", "initial", "arrow"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "initial objects of ARROW: 0" in r.stdout
