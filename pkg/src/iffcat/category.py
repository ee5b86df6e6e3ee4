"""Finite categories presented as monoids in graphs.

Composition is diagrammatic throughout: ``compose(m1, m2)`` is defined when
``tgt(m1) == src(m2)`` and means "first ``m1``, then ``m2``".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Hashable, Iterable, Mapping

from .graph import (
    FiniteGraph,
    GraphMorphism,
    compose_graph_morphisms,
    identity_graph_morphism,
    left_unitor,
    opposite_graph,
    right_unitor,
    sorted_ids,
    tensor,
    tensor_graph_morphisms,
    unit_graph,
    alpha,
)

Ident = Hashable


class CategoryError(ValueError):
    pass


class UnknownObject(CategoryError, KeyError):
    pass


class UnknownMorphism(CategoryError, KeyError):
    pass


TYPING = "TypingViolation"
ASSOCIATIVITY = "AssociativityViolation"
UNIT_LAW = "UnitLawViolation"
PARTIALITY = "PartialityViolation"


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        return f"{self.kind} at {self.witness!r}: {self.detail}"


class CategoryValidationError(CategoryError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        head = "; ".join(str(v) for v in violations[:3])
        more = f" (+{len(violations) - 3} more)" if len(violations) > 3 else ""
        super().__init__(f"{len(violations)} law violation(s): {head}{more}")


@dataclass(frozen=True)
class RawCategoryTables:
    """Unvalidated category input: a graph plus composition and identity tables."""

    graph: FiniteGraph
    composition: Mapping[tuple[Ident, Ident], Ident]
    identities: Mapping[Ident, Ident]
    name: str = ""


@dataclass(frozen=True, eq=False)
class FiniteCategory:
    """A finite category: underlying graph, composition table on composable
    pairs, identity table on objects.

    The constructor does not check the category laws; build through
    :func:`validate_category` unless you deliberately want an unchecked
    structure. Equality is componentwise on graph and tables; ``name`` is a
    display label only.
    """

    graph: FiniteGraph
    composition: Mapping[tuple[Ident, Ident], Ident]
    identities: Mapping[Ident, Ident]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "composition", dict(self.composition))
        object.__setattr__(self, "identities", dict(self.identities))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteCategory):
            return NotImplemented
        return (self.graph == other.graph and self.composition == other.composition
                and self.identities == other.identities)

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.graph, frozenset(self.composition.items()),
                      frozenset(self.identities.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        label = self.name or "category"
        return f"<FiniteCategory {label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    def sort_key(self) -> tuple:
        k = self.__dict__.get("_sort_key")
        if k is None:
            k = (self.name, tuple(self.graph.edges()),
                 sorted_ids(self.composition.items()), sorted_ids(self.identities.items()))
            object.__setattr__(self, "_sort_key", k)
        return k

    @property
    def objects(self) -> tuple:
        return self.graph.objects

    @property
    def morphisms(self) -> tuple:
        return self.graph.morphisms

    def src(self, m: Ident) -> Ident:
        try:
            return self.graph.src[m]
        except KeyError:
            raise UnknownMorphism(m) from None

    def tgt(self, m: Ident) -> Ident:
        try:
            return self.graph.tgt[m]
        except KeyError:
            raise UnknownMorphism(m) from None

    def identity(self, o: Ident) -> Ident:
        try:
            return self.identities[o]
        except KeyError:
            raise UnknownObject(o) from None

    def composable(self, m1: Ident, m2: Ident) -> bool:
        return self.tgt(m1) == self.src(m2)

    def compose(self, m1: Ident, m2: Ident) -> Ident:
        try:
            return self.composition[(m1, m2)]
        except KeyError:
            raise CategoryError(f"{m1!r} and {m2!r} are not composable") from None

    def composable_pairs(self) -> list[tuple[Ident, Ident]]:
        return [(m1, m2) for m1 in self.morphisms for m2 in self.morphisms
                if self.graph.tgt[m1] == self.graph.src[m2]]

    def out_of(self, o: Ident) -> list[Ident]:
        return [m for m in self.morphisms if self.graph.src[m] == o]

    def into(self, o: Ident) -> list[Ident]:
        return [m for m in self.morphisms if self.graph.tgt[m] == o]

    def tables(self) -> RawCategoryTables:
        return RawCategoryTables(self.graph, self.composition, self.identities, self.name)


def _check_references(raw: RawCategoryTables):
    mors, objs = set(raw.graph.morphisms), set(raw.graph.objects)
    for (m1, m2), r in raw.composition.items():
        for x in (m1, m2, r):
            if x not in mors:
                raise UnknownMorphism(x)
    for o, i in raw.identities.items():
        if o not in objs:
            raise UnknownObject(o)
        if i not in mors:
            raise UnknownMorphism(i)


def category_violations(raw: RawCategoryTables) -> list[Violation]:
    """Every violated law of the raw tables, each with its witness."""
    _check_references(raw)
    g = raw.graph
    comp, ids = raw.composition, raw.identities
    out: list[Violation] = []

    pairs = [(a, b) for a in g.morphisms for b in g.morphisms if g.tgt[a] == g.src[b]]
    pairset = set(pairs)
    for pair in pairs:
        if pair not in comp:
            out.append(Violation(PARTIALITY, pair, "composable pair has no composite"))
    for pair in sorted_ids(set(comp) - pairset):
        out.append(Violation(PARTIALITY, pair, "composite defined on a non-composable pair"))
    for o in g.objects:
        if o not in ids:
            out.append(Violation(PARTIALITY, (o,), "object has no identity"))

    for (m1, m2) in pairs:
        if (m1, m2) not in comp:
            continue
        r = comp[(m1, m2)]
        if g.src[r] != g.src[m1]:
            out.append(Violation(TYPING, (m1, m2),
                                 f"src of composite {r!r} is {g.src[r]!r}, expected {g.src[m1]!r}"))
        if g.tgt[r] != g.tgt[m2]:
            out.append(Violation(TYPING, (m1, m2),
                                 f"tgt of composite {r!r} is {g.tgt[r]!r}, expected {g.tgt[m2]!r}"))
    for o in g.objects:
        if o in ids and (g.src[ids[o]] != o or g.tgt[ids[o]] != o):
            out.append(Violation(TYPING, (o,), f"identity {ids[o]!r} is not a loop at {o!r}"))

    for m in g.morphisms:
        a, b = g.src[m], g.tgt[m]
        if a in ids and (ids[a], m) in comp and comp[(ids[a], m)] != m:
            out.append(Violation(UNIT_LAW, (ids[a], m), "left identity law fails"))
        if b in ids and (m, ids[b]) in comp and comp[(m, ids[b])] != m:
            out.append(Violation(UNIT_LAW, (m, ids[b]), "right identity law fails"))

    for (m1, m2) in pairs:
        if (m1, m2) not in comp:
            continue
        left = comp[(m1, m2)]
        for m3 in g.morphisms:
            if g.tgt[m2] != g.src[m3]:
                continue
            if (m2, m3) not in comp:
                continue
            right = comp[(m2, m3)]
            lhs = comp.get((left, m3))
            rhs = comp.get((m1, right))
            if lhs is None or rhs is None:
                # already reported as typing/partiality
                continue
            if lhs != rhs:
                out.append(Violation(ASSOCIATIVITY, (m1, m2, m3),
                                     f"(m1.m2).m3 = {lhs!r} but m1.(m2.m3) = {rhs!r}"))
    return out


def validate_category(raw: RawCategoryTables) -> FiniteCategory:
    """Return the validated category, or raise :class:`CategoryValidationError`
    carrying every violation found."""
    problems = category_violations(raw)
    if problems:
        raise CategoryValidationError(problems)
    return FiniteCategory(raw.graph, raw.composition, raw.identities, raw.name)


def make_category(objects: Iterable[Ident], edges: Iterable[tuple[Ident, Ident, Ident]],
                  composition: Mapping | Iterable, identities: Mapping,
                  name: str = "") -> FiniteCategory:
    """Convenience builder. ``composition`` is a mapping or ``(m1, m2, r)`` triples."""
    if not isinstance(composition, Mapping):
        composition = {(a, b): r for a, b, r in composition}
    graph = FiniteGraph.from_edges(objects, edges)
    return validate_category(RawCategoryTables(graph, composition, identities, name))


def with_identity_composites(objects, edges, identities, extra=(), name=""):
    """Build a category whose composition table is the unit laws plus ``extra``
    triples. Enough for shapes with no non-trivial composable pairs."""
    edges = list(edges)
    src = {m: s for m, s, _ in edges}
    tgt = {m: t for m, _, t in edges}
    comp = {}
    for m, _, _ in edges:
        comp[(identities[src[m]], m)] = m
        comp[(m, identities[tgt[m]])] = m
    for a, b, r in extra:
        comp[(a, b)] = r
    return make_category(objects, edges, comp, identities, name)


def thin_category(objects: Iterable[Ident], relation: Iterable[tuple[Ident, Ident]],
                  name: str = "") -> FiniteCategory:
    """The preorder generated by ``relation`` as a thin category.

    The morphism ``x -> y`` is named ``f"{x}{y}"`` (so identities are ``"aa"``).
    """
    objects = list(objects)
    le = {(x, x) for x in objects} | set(relation)
    changed = True
    while changed:
        changed = False
        for (x, y), (y2, z) in product(list(le), list(le)):
            if y == y2 and (x, z) not in le:
                le.add((x, z))
                changed = True
    name_of = {p: f"{p[0]}{p[1]}" for p in le}
    edges = [(name_of[(x, y)], x, y) for (x, y) in sorted_ids(le)]
    comp = {(name_of[(x, y)], name_of[(y2, z)]): name_of[(x, z)]
            for (x, y) in le for (y2, z) in le if y == y2}
    ids = {x: name_of[(x, x)] for x in objects}
    return make_category(objects, edges, comp, ids, name)


def monoid_category(elements: Iterable[Ident], table: Mapping[tuple[Ident, Ident], Ident],
                    obj: Ident = "*", name: str = "") -> FiniteCategory:
    """One-object category from a monoid multiplication table (diagrammatic
    order). The unit is detected from the table."""
    elements = list(elements)
    units = [u for u in elements if all(table[(u, x)] == x and table[(x, u)] == x for x in elements)]
    if not units:
        raise CategoryError("table has no two-sided unit")
    edges = [(e, obj, obj) for e in elements]
    return make_category([obj], edges, dict(table), {obj: units[0]}, name)


def hom_set(c: FiniteCategory, a: Ident, b: Ident) -> tuple:
    for o in (a, b):
        if o not in c.identities:
            raise UnknownObject(o)
    return tuple(m for m in c.morphisms if c.graph.src[m] == a and c.graph.tgt[m] == b)


def mu_eta(c: FiniteCategory) -> tuple[GraphMorphism, GraphMorphism]:
    """Composition and identity as graph morphisms ``C(x)C -> C`` and ``I -> C``."""
    g = c.graph
    ident = {o: o for o in g.objects}
    mu = GraphMorphism(tensor(g, g), g, ident, c.composition)
    eta = GraphMorphism(unit_graph(g.objects), g, ident, c.identities)
    return mu, eta


@dataclass
class LawCheck:
    law: str
    passed: bool
    witnesses: list = field(default_factory=list)


def _graph_morphism_difference(f: GraphMorphism, g: GraphMorphism) -> list:
    if f.source != g.source or f.target != g.target:
        return ["boundary graphs differ"]
    out = [("object", o) for o in f.source.objects if f.object_map[o] != g.object_map[o]]
    out += [m for m in f.source.morphisms if f.morphism_map[m] != g.morphism_map[m]]
    return out


def check_monoid_laws_as_graph_morphisms(c: FiniteCategory) -> list[LawCheck]:
    """The associativity and unit laws as equations between graph morphisms.

    Works on unchecked structures too, as long as the composition table is
    total on composable pairs and typed (so mu is a graph morphism); witness
    lists name the carrier elements on which the two sides disagree.
    """
    g = c.graph
    mu, eta = mu_eta(c)
    idg = identity_graph_morphism(g)
    # (id (x) mu) ; mu  versus  alpha ; (mu (x) id) ; mu
    lhs = compose_graph_morphisms(tensor_graph_morphisms(idg, mu), mu)
    rhs = compose_graph_morphisms(
        compose_graph_morphisms(alpha(g), tensor_graph_morphisms(mu, idg)), mu)
    assoc = _graph_morphism_difference(lhs, rhs)

    left = compose_graph_morphisms(tensor_graph_morphisms(eta, idg), mu)
    right = compose_graph_morphisms(tensor_graph_morphisms(idg, eta), mu)
    lw = _graph_morphism_difference(left, left_unitor(g))
    rw = _graph_morphism_difference(right, right_unitor(g))
    return [
        LawCheck("associativity", not assoc, assoc),
        LawCheck("left-unit", not lw, lw),
        LawCheck("right-unit", not rw, rw),
    ]


def opposite_category(c: FiniteCategory) -> FiniteCategory:
    return FiniteCategory(
        opposite_graph(c.graph),
        {(m2, m1): r for (m1, m2), r in c.composition.items()},
        c.identities,
        f"{c.name}^op" if not c.name.endswith("^op") else c.name[:-3],
    )


def _require(c: FiniteCategory, m: Ident):
    if m not in c.graph.src:
        raise UnknownMorphism(m)


def is_monomorphism(c: FiniteCategory, m: Ident) -> bool:
    """Right-cancellable: ``m0.m == m1.m`` implies ``m0 == m1``."""
    _require(c, m)
    seen = {}
    for m0 in c.into(c.src(m)):
        r = c.compose(m0, m)
        if r in seen and seen[r] != m0:
            return False
        seen[r] = m0
    return True


def is_epimorphism(c: FiniteCategory, m: Ident) -> bool:
    """A monomorphism of the opposite category."""
    _require(c, m)
    return is_monomorphism(opposite_category(c), m)


def is_bimorphism(c: FiniteCategory, m: Ident) -> bool:
    return is_monomorphism(c, m) and is_epimorphism(c, m)


def inverses(c: FiniteCategory, m: Ident) -> list:
    _require(c, m)
    a, b = c.src(m), c.tgt(m)
    return [n for n in hom_set(c, b, a)
            if c.compose(m, n) == c.identities[a] and c.compose(n, m) == c.identities[b]]


def is_isomorphism(c: FiniteCategory, m: Ident) -> bool:
    """Has a two-sided inverse. Stronger than :func:`is_bimorphism` in general."""
    return bool(inverses(c, m))


def morphism_table(c: FiniteCategory) -> list[dict]:
    return [
        {
            "morphism": m,
            "source": c.src(m),
            "target": c.tgt(m),
            "mono": is_monomorphism(c, m),
            "epi": is_epimorphism(c, m),
            "bimorphism": is_bimorphism(c, m),
            "iso": is_isomorphism(c, m),
        }
        for m in c.morphisms
    ]
