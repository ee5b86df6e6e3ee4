import json
import shutil

import pytest

from iffcat.category import CategoryValidationError
from iffcat.classification import InfomorphismError
from iffcat.io import (
    FIXTURE_ENV,
    FixtureError,
    bundled_categories,
    bundled_fixture_dir,
    category_from_json,
    category_to_json,
    classification_from_json,
    classification_to_json,
    infomorphism_to_json,
    load_category,
    load_classification,
    load_classification_family,
    load_diagram,
    load_functor,
    load_infomorphism,
    resolve_fixture,
)


def test_bundled_names_and_order():
    names = [c.name for c in bundled_categories()]
    assert names == ["ONE", "ARROW", "SPAN3", "PO", "PAR", "ABSORB", "Z2", "ISO", "PO_DUP"]


def test_bare_name_path_and_json_suffix_agree():
    path = bundled_fixture_dir() / "arrow.json"
    assert load_category("arrow") == load_category("arrow.json") == load_category(str(path))


def test_missing_fixture():
    with pytest.raises(FixtureError):
        load_category("no_such_fixture")


def test_env_directory_takes_precedence(tmp_path, monkeypatch):
    data = json.loads((bundled_fixture_dir() / "one.json").read_text())
    data["name"] = "SHADOW"
    (tmp_path / "arrow.json").write_text(json.dumps(data))
    monkeypatch.setenv(FIXTURE_ENV, str(tmp_path))
    assert resolve_fixture("arrow") == tmp_path / "arrow.json"
    assert load_category("arrow").name == "SHADOW"


def test_relative_references_resolve_beside_the_file(tmp_path):
    for name in ("span1_left.json", "cls_a.json", "cls_b.json"):
        shutil.copy(bundled_fixture_dir() / name, tmp_path / name)
    f = load_infomorphism(str(tmp_path / "span1_left.json"))
    assert f.source == load_classification("cls_a")


def test_category_json_round_trip():
    for c in bundled_categories():
        back = category_from_json(category_to_json(c))
        assert back == c and back.name == c.name


def test_invalid_category_fixture_rejected(tmp_path):
    data = category_to_json(load_category("arrow"))
    data["composition"] = [row for row in data["composition"] if row[:2] != ["a", "id1"]]
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(data))
    with pytest.raises(CategoryValidationError):
        load_category(str(p))


def test_duplicate_composite_rejected():
    data = category_to_json(load_category("arrow"))
    data["composition"].append(data["composition"][0])
    with pytest.raises(FixtureError):
        category_from_json(data)


def test_diagram_with_builtin_shape():
    d = load_diagram("po_corner_diagram")
    assert d.shape.objects == ("span#0", "span#1", "span#2")
    assert d.ambient == load_category("po")
    assert load_functor("po_corner_diagram") == d.functor


def test_classification_round_trip():
    a = load_classification("cls_b")
    assert classification_from_json(classification_to_json(a)) == a


def test_infomorphism_fixture_is_validated(tmp_path):
    f = load_infomorphism("span1_left")
    data = infomorphism_to_json(f)
    assert load_infomorphism(data) == f
    data["instanceMap"]["b1"] = "a1"
    with pytest.raises(InfomorphismError):
        load_infomorphism(data)


def test_family_members_by_stem():
    clss, infos = load_classification_family("cls_family")
    assert [c.name for c in clss] == ["cls_a", "cls_b", "cls_c"]
    assert len(infos) == 14


def test_family_with_foreign_member():
    data = json.loads((bundled_fixture_dir() / "cls_family.json").read_text())
    data["infomorphisms"][0]["source"] = "cls_z"
    with pytest.raises(FixtureError):
        load_classification_family(data)
