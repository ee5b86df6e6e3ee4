"""JSON fixture formats and fixture lookup.

Formats (all identifiers are strings):

* graph: ``{"objects": [...], "morphisms": [{"id", "src", "tgt"}, ...]}``
* category: ``{"graph": <graph>, "composition": [[m1, m2, r], ...],
  "identities": {object: morphism}}``
* functor / diagram: ``{"source" | "shape": ref, "target": ref,
  "objectMap": {...}, "morphismMap": {...}}``
* classification: ``{"instances", "types", "incidence": [[i, t], ...]}``
* infomorphism: ``{"source": ref, "target": ref, "typeMap", "instanceMap"}``
* classification family: ``{"classifications": [ref, ...], "infomorphisms":
  [<infomorphism whose source and target name family members>, ...]}``

A ``ref`` is either an inline object or a fixture reference resolved by
:func:`resolve_fixture`. Diagram shapes may also name a built-in shape
(``empty``, ``terminal``, ``parallel``, ``span``).
"""

from __future__ import annotations

import json
import os
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .category import FiniteCategory, RawCategoryTables, validate_category
from .classification import Classification, Infomorphism, validate_infomorphism
from .colimit import (
    Diagram,
    empty_category,
    parallel_shape_category,
    span_shape_category,
    terminal_category,
)
from .functor import Functor, validate_functor
from .graph import FiniteGraph, GraphError

FIXTURE_ENV = "IFFCAT_FIXTURES"

BUILTIN_SHAPES = {
    "empty": empty_category,
    "terminal": terminal_category,
    "parallel": parallel_shape_category,
    "span": span_shape_category,
}


# the category fixtures shipped with the package, in report order
BUNDLED_CATEGORIES = ("one", "arrow", "span3", "po", "par", "absorbing", "z2", "isopair",
                      "po_dup")


class FixtureError(ValueError):
    pass


def bundled_fixture_dir() -> Path:
    return Path(str(resources.files("iffcat") / "data" / "fixtures"))


def bundled_corpus_dir() -> Path:
    return Path(str(resources.files("iffcat") / "data" / "corpus"))


def search_path() -> list[Path]:
    dirs = [Path(p) for p in os.environ.get(FIXTURE_ENV, "").split(os.pathsep) if p]
    return dirs + [bundled_fixture_dir()]


def resolve_fixture(ref: str, base: Path | None = None) -> Path:
    """Find a fixture file: as given, then beside ``base``, then in each
    ``IFFCAT_FIXTURES`` directory, then in the bundled fixtures. Bare names
    get a ``.json`` suffix."""
    p = Path(ref)
    candidates = [p]
    if base is not None:
        candidates.append(base / p)
    names = [p.name] if p.suffix else [p.name + ".json"]
    for d in search_path():
        candidates += [d / ref, *(d / n for n in names)]
    for cand in candidates:
        if cand.is_file():
            return cand
    raise FixtureError(f"fixture {ref!r} not found (searched {', '.join(map(str, search_path()))})")


def _read(ref, base=None):
    if isinstance(ref, dict):
        return ref, base
    path = resolve_fixture(ref, base)
    with open(path) as fh:
        return json.load(fh), path.parent


def graph_from_json(data: dict) -> FiniteGraph:
    objects = list(data["objects"])
    edges = [(m["id"], m["src"], m["tgt"]) for m in data["morphisms"]]
    ids = [e[0] for e in edges]
    if len(set(ids)) != len(ids) or len(set(objects)) != len(objects):
        raise GraphError("duplicate identifiers in graph fixture")
    return FiniteGraph.from_edges(objects, edges)


def graph_to_json(g: FiniteGraph) -> dict:
    return {"objects": list(g.objects),
            "morphisms": [{"id": m, "src": s, "tgt": t} for m, s, t in g.edges()]}


def raw_tables_from_json(data: dict, name: str = "") -> RawCategoryTables:
    graph = graph_from_json(data["graph"])
    comp = {}
    for a, b, r in data["composition"]:
        if (a, b) in comp:
            raise FixtureError(f"composite of ({a}, {b}) given twice")
        comp[(a, b)] = r
    return RawCategoryTables(graph, comp, dict(data["identities"]), data.get("name", name))


def category_from_json(data: dict, name: str = "") -> FiniteCategory:
    return validate_category(raw_tables_from_json(data, name))


def category_to_json(c: FiniteCategory) -> dict:
    return {
        "name": c.name,
        "graph": graph_to_json(c.graph),
        "composition": [[a, b, r] for (a, b), r in c.composition.items()],
        "identities": dict(c.identities),
    }


def load_raw_category(ref, base=None) -> RawCategoryTables:
    data, _ = _read(ref, base)
    name = data.get("name") or (Path(ref).stem if isinstance(ref, str) else "")
    return raw_tables_from_json(data, name)


def load_category(ref, base=None) -> FiniteCategory:
    return validate_category(load_raw_category(ref, base))


@lru_cache(maxsize=None)
def fixture(name: str) -> FiniteCategory:
    """A bundled category fixture by name (``one``, ``arrow``, ``po``, ...)."""
    return load_category(str(bundled_fixture_dir() / f"{name}.json"))


def bundled_categories() -> list[FiniteCategory]:
    return [fixture(n) for n in BUNDLED_CATEGORIES]


def _load_shape(ref, base):
    if isinstance(ref, str) and ref in BUILTIN_SHAPES:
        return BUILTIN_SHAPES[ref]()
    return load_category(ref, base)


def load_functor(ref, base=None) -> Functor:
    data, here = _read(ref, base)
    f = Functor(_load_shape(data.get("source", data.get("shape")), here),
                load_category(data["target"], here),
                data["objectMap"], data["morphismMap"], data.get("name", ""))
    return validate_functor(f)


def load_diagram(ref, base=None) -> Diagram:
    data, here = _read(ref, base)
    shape = _load_shape(data.get("shape", data.get("source")), here)
    target = load_category(data["target"], here)
    return Diagram(Functor(shape, target, data["objectMap"], data["morphismMap"],
                           data.get("name", "")))


def classification_from_json(data: dict, name: str = "") -> Classification:
    return Classification(tuple(data["instances"]), tuple(data["types"]),
                          frozenset(tuple(p) for p in data["incidence"]),
                          data.get("name", name))


def classification_to_json(c: Classification) -> dict:
    return {
        "name": c.name,
        "instances": list(c.instances),
        "types": list(c.types),
        "incidence": sorted([list(p) for p in c.incidence]),
    }


def load_classification(ref, base=None) -> Classification:
    data, _ = _read(ref, base)
    name = Path(ref).stem if isinstance(ref, str) else ""
    return classification_from_json(data, name)


def load_infomorphism(ref, base=None) -> Infomorphism:
    data, here = _read(ref, base)
    name = data.get("name") or (Path(ref).stem if isinstance(ref, str) else "")
    f = Infomorphism(load_classification(data["source"], here),
                     load_classification(data["target"], here),
                     data["typeMap"], data["instanceMap"], name)
    return validate_infomorphism(f)


def load_classification_family(ref, base=None) -> tuple[list, list]:
    """Classifications and named infomorphisms of a family fixture. Member
    classifications are named by their reference stem."""
    data, here = _read(ref, base)
    clss = {}
    for r in data["classifications"]:
        c = load_classification(r, here)
        clss[c.name] = c
    infos = []
    for d in data["infomorphisms"]:
        try:
            src, tgt = clss[d["source"]], clss[d["target"]]
        except KeyError as exc:
            raise FixtureError(f"{d.get('name')}: {exc.args[0]!r} is not a family member") from None
        infos.append(validate_infomorphism(
            Infomorphism(src, tgt, d["typeMap"], d["instanceMap"], d["name"])))
    return list(clss.values()), infos


def infomorphism_to_json(f: Infomorphism) -> dict:
    return {
        "name": f.name,
        "source": classification_to_json(f.source),
        "target": classification_to_json(f.target),
        "typeMap": dict(sorted(f.type_map.items())),
        "instanceMap": dict(sorted(f.instance_map.items())),
    }
