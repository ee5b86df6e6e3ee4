import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles as O
from iffcat.category import (
    ASSOCIATIVITY,
    PARTIALITY,
    TYPING,
    UNIT_LAW,
    CategoryError,
    CategoryValidationError,
    FiniteCategory,
    RawCategoryTables,
    UnknownMorphism,
    UnknownObject,
    category_violations,
    check_monoid_laws_as_graph_morphisms,
    hom_set,
    inverses,
    is_bimorphism,
    is_epimorphism,
    is_isomorphism,
    is_monomorphism,
    monoid_category,
    morphism_table,
    mu_eta,
    opposite_category,
    validate_category,
)
from iffcat.graph import FiniteGraph
from iffcat.io import bundled_categories, load_raw_category
from strategies import preorders

FIXTURES = bundled_categories()


def raw_with(ref, composition=None, identities=None):
    raw = load_raw_category(ref)
    comp = dict(raw.composition)
    comp.update(composition or {})
    ids = dict(raw.identities)
    ids.update(identities or {})
    return RawCategoryTables(raw.graph, comp, ids, raw.name)


@pytest.mark.parametrize("c", FIXTURES, ids=lambda c: c.name)
def test_fixtures_satisfy_the_laws_by_oracle(c):
    assert O.law_failures(*O.tables(c)) == []
    assert category_violations(c.tables()) == []


def test_arrow_typing_violation_witness():
    raw = raw_with("arrow", composition={("id0", "a"): "id1"})
    found = category_violations(raw)
    assert any(v.kind == TYPING and v.witness == ("id0", "a") for v in found)
    with pytest.raises(CategoryValidationError) as exc:
        validate_category(raw)
    assert exc.value.violations == found


def test_missing_composite_is_partiality():
    raw = load_raw_category("arrow")
    comp = dict(raw.composition)
    del comp[("a", "id1")]
    found = category_violations(RawCategoryTables(raw.graph, comp, raw.identities))
    assert [v.kind for v in found] == [PARTIALITY]
    assert found[0].witness == ("a", "id1")


def test_extra_composite_is_partiality():
    found = category_violations(raw_with("arrow", composition={("a", "a"): "a"}))
    assert any(v.kind == PARTIALITY and v.witness == ("a", "a") for v in found)


def test_missing_identity():
    raw = load_raw_category("arrow")
    found = category_violations(RawCategoryTables(raw.graph, raw.composition, {"0": "id0"}))
    assert any(v.kind == PARTIALITY and v.witness == ("1",) for v in found)


def test_unit_law_violation():
    # in ABSORB, make e the identity: 1 then e != 1
    found = category_violations(raw_with("absorbing", identities={"*": "e"}))
    assert any(v.kind == UNIT_LAW for v in found)


def test_non_associative_magma():
    # x.y is not associative: (x.x).y = y.y = x, x.(x.y) = x.y = y
    g = FiniteGraph.from_edges(["*"], [("1", "*", "*"), ("x", "*", "*"), ("y", "*", "*")])
    table = {("1", "1"): "1", ("1", "x"): "x", ("x", "1"): "x", ("1", "y"): "y",
             ("y", "1"): "y", ("x", "x"): "y", ("x", "y"): "y", ("y", "x"): "x",
             ("y", "y"): "x"}
    raw = RawCategoryTables(g, table, {"*": "1"})
    found = category_violations(raw)
    assoc = [v for v in found if v.kind == ASSOCIATIVITY]
    assert assoc and all(O.witness_holds(v.kind, v.witness, g.src, g.tgt, table, {"*": "1"})
                         for v in assoc)
    unchecked = FiniteCategory(g, table, {"*": "1"})
    report = {k.law: k for k in check_monoid_laws_as_graph_morphisms(unchecked)}
    assert not report["associativity"].passed
    assert report["left-unit"].passed and report["right-unit"].passed
    # witnesses are composable triples m1, (m2, m3)
    assert ("x", ("x", "y")) in report["associativity"].witnesses


def test_unknown_reference_raises():
    raw = raw_with("arrow", composition={("a", "id1"): "zzz"})
    with pytest.raises(UnknownMorphism):
        category_violations(raw)


def test_hom_sets(fixtures):
    assert hom_set(fixtures["ARROW"], "0", "1") == ("a",)
    assert hom_set(fixtures["ONE"], "t0", "t0") == ("t00",)
    assert hom_set(fixtures["SPAN3"], "span#1", "span#2") == ()
    with pytest.raises(UnknownObject):
        hom_set(fixtures["ARROW"], "0", "9")


def test_mu_eta_of_fixtures(fixtures):
    mu, eta = mu_eta(fixtures["ONE"])
    assert mu.morphism_map == {("t00", "t00"): "t00"}
    _, eta = mu_eta(fixtures["ARROW"])
    assert eta.morphism_map["0"] == "id0"
    for c in FIXTURES:
        mu, eta = mu_eta(c)
        assert mu.is_valid() and eta.is_valid()
        assert mu.object_map == eta.object_map == {o: o for o in c.objects}


def test_opposite_of_arrow(fixtures):
    op = opposite_category(fixtures["ARROW"])
    assert op.src("a") == "1" and op.tgt("a") == "0"
    assert op.compose("a", "id0") == "a"
    assert category_violations(op.tables()) == []
    assert opposite_category(fixtures["ONE"]) == fixtures["ONE"]


def test_absorbing_element_is_not_mono(fixtures):
    c = fixtures["ABSORB"]
    assert not is_monomorphism(c, "e")
    # witness m0=1, m1=e
    assert c.compose("1", "e") == c.compose("e", "e")
    assert is_monomorphism(c, "1")


def test_arrow_classes(fixtures):
    c = fixtures["ARROW"]
    assert is_monomorphism(c, "a") and is_epimorphism(c, "a")
    assert is_bimorphism(c, "a") and not is_isomorphism(c, "a")
    assert inverses(c, "a") == []
    row = {r["morphism"]: r for r in morphism_table(c)}["a"]
    assert (row["mono"], row["epi"], row["bimorphism"], row["iso"]) == (True, True, True, False)


def test_unknown_morphism_in_predicates(fixtures):
    with pytest.raises(UnknownMorphism):
        is_monomorphism(fixtures["ARROW"], "nope")


def test_compose_outside_domain(fixtures):
    with pytest.raises(CategoryError):
        fixtures["ARROW"].compose("a", "a")


def test_monoid_builder_finds_unit():
    c = monoid_category(["1", "s"], {("1", "1"): "1", ("1", "s"): "s", ("s", "1"): "s", ("s", "s"): "1"})
    assert c.identity("*") == "1"
    with pytest.raises(CategoryError):
        monoid_category(["a"], {("a", "a"): "b"})


def test_equality_ignores_name(fixtures):
    c = fixtures["PO"]
    renamed = FiniteCategory(c.graph, c.composition, c.identities, "other")
    assert renamed == c and hash(renamed) == hash(c)


@pytest.mark.parametrize("c", FIXTURES, ids=lambda c: c.name)
def test_class_predicates_match_oracles(c):
    op = opposite_category(c)
    for m in c.morphisms:
        assert is_monomorphism(c, m) == O.right_cancellable(c, m)
        assert is_epimorphism(c, m) == O.left_cancellable(c, m)
        assert is_epimorphism(c, m) == is_monomorphism(op, m)
        assert is_monomorphism(c, m) == is_epimorphism(op, m)
        assert is_isomorphism(c, m) == O.has_two_sided_inverse(c, m)
        if is_isomorphism(c, m):
            assert is_bimorphism(c, m)


@given(preorders())
def test_random_preorders_validate_and_agree(c):
    assert O.law_failures(*O.tables(c)) == []
    assert all(k.passed for k in check_monoid_laws_as_graph_morphisms(c))
    op = opposite_category(c)
    assert category_violations(op.tables()) == []
    assert opposite_category(op) == c
    for m in c.morphisms:
        assert is_epimorphism(c, m) == O.left_cancellable(c, m)
        # in a preorder every morphism is mono and epi
        assert is_bimorphism(c, m)
        assert is_isomorphism(c, m) == O.has_two_sided_inverse(c, m)


@given(preorders(), st.data())
def test_single_entry_perturbation(c, data):
    """A perturbed table is rejected with true witnesses, or it is lawful."""
    objects, morphisms, src, tgt, comp, ids = O.tables(c)
    if len(morphisms) < 2:
        return
    key = data.draw(st.sampled_from(sorted(comp)))
    comp[key] = data.draw(st.sampled_from([m for m in morphisms if m != comp[key]]))
    found = category_violations(RawCategoryTables(c.graph, comp, ids))
    lawful = O.satisfies_laws(objects, morphisms, src, tgt, comp, ids)
    assert bool(found) != lawful
    assert all(O.witness_holds(v.kind, v.witness, src, tgt, comp, ids) for v in found)
    typed = not [b for b in O.law_failures(objects, morphisms, src, tgt, comp, ids)
                 if b[0] in ("domain", "typing", "identity-typing")]
    if typed:
        unchecked = FiniteCategory(c.graph, comp, ids)
        graph_level = all(k.passed for k in check_monoid_laws_as_graph_morphisms(unchecked))
        assert graph_level == O.table6_holds(unchecked)
