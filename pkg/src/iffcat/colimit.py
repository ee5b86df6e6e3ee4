"""Colimits in finite categories, decided by exhaustive universality checks.

Binary constructions (initial objects, spans, binary cocones, pushouts,
coequalizers, binary coproducts) are implemented directly. General colimits
go through diagrams (functors from a shape category) and cocones over them.
The two routes are deliberately independent so each can check the other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Hashable, Iterable, Mapping, NamedTuple

from .category import (
    CategoryError,
    FiniteCategory,
    UnknownObject,
    hom_set,
    is_isomorphism,
    make_category,
    with_identity_composites,
)
from .functor import (
    Functor,
    NaturalTransformation,
    compose_functors,
    validate_functor,
)
from .graph import sorted_ids

Ident = Hashable


class ColimitError(CategoryError):
    pass


class NotInitial(ColimitError):
    pass


class NotPushout(ColimitError):
    pass


class SpanMismatch(ColimitError):
    pass


class NotColimit(ColimitError):
    pass


class DiagramMismatch(ColimitError):
    pass


# --- initial objects -------------------------------------------------------

def initial_objects(c: FiniteCategory) -> tuple:
    return tuple(i for i in c.objects
                 if all(len(hom_set(c, i, o)) == 1 for o in c.objects))


def counique(c: FiniteCategory, i: Ident, o: Ident) -> Ident:
    if i not in initial_objects(c):
        raise NotInitial(f"{i!r} is not an initial object")
    (m,) = hom_set(c, i, o)
    return m


# --- spans and binary cocones ---------------------------------------------

class Span(NamedTuple):
    vertex: Ident
    first: Ident
    second: Ident


class Cocone2(NamedTuple):
    span: Span
    opvertex: Ident
    opfirst: Ident
    opsecond: Ident


def enumerate_spans(c: FiniteCategory) -> list[Span]:
    return [Span(v, f1, f2) for v in c.objects
            for f1 in c.out_of(v) for f2 in c.out_of(v)]


def is_span(c: FiniteCategory, s: Span) -> bool:
    return (s.first in c.graph.src and s.second in c.graph.src
            and c.src(s.first) == s.vertex == c.src(s.second))


def is_cocone2(c: FiniteCategory, k: Cocone2) -> bool:
    s = k.span
    if not is_span(c, s) or k.opfirst not in c.graph.src or k.opsecond not in c.graph.src:
        return False
    return (c.src(k.opfirst) == c.tgt(s.first) and c.src(k.opsecond) == c.tgt(s.second)
            and c.tgt(k.opfirst) == k.opvertex == c.tgt(k.opsecond)
            and c.compose(s.first, k.opfirst) == c.compose(s.second, k.opsecond))


def enumerate_cocones2(c: FiniteCategory, s: Span) -> list[Cocone2]:
    """All commuting squares completing the span."""
    out = []
    for apex in c.objects:
        for g1 in hom_set(c, c.tgt(s.first), apex):
            square = c.compose(s.first, g1)
            for g2 in hom_set(c, c.tgt(s.second), apex):
                if c.compose(s.second, g2) == square:
                    out.append(Cocone2(s, apex, g1, g2))
    return out


def all_cocones2(c: FiniteCategory) -> list[Cocone2]:
    return [k for s in enumerate_spans(c) for k in enumerate_cocones2(c, s)]


def mediators2(c: FiniteCategory, p: Cocone2, s: Cocone2) -> list:
    """Every ``m`` out of ``p.opvertex`` with ``p.opfirst.m == s.opfirst`` and
    ``p.opsecond.m == s.opsecond``."""
    return [m for m in c.out_of(p.opvertex)
            if c.compose(p.opfirst, m) == s.opfirst
            and c.compose(p.opsecond, m) == s.opsecond]


def is_pushout_cocone2(c: FiniteCategory, p: Cocone2) -> bool:
    return all(len(mediators2(c, p, s)) == 1 for s in enumerate_cocones2(c, p.span))


def pushout_cocones(c: FiniteCategory, span: Span | None = None) -> list[Cocone2]:
    spans = [span] if span is not None else enumerate_spans(c)
    return [p for s in spans for p in enumerate_cocones2(c, s) if is_pushout_cocone2(c, p)]


def pushout_objects(c: FiniteCategory, span: Span | None = None) -> tuple:
    seen = []
    for p in pushout_cocones(c, span):
        if p.opvertex not in seen:
            seen.append(p.opvertex)
    return tuple(o for o in c.objects if o in seen)


def mediator2(c: FiniteCategory, p: Cocone2, s: Cocone2) -> Ident:
    if s.span != p.span:
        raise SpanMismatch("cocones sit over different spans")
    if not is_pushout_cocone2(c, p):
        raise NotPushout(f"{p!r} is not a pushout cocone")
    (m,) = mediators2(c, p, s)
    return m


# --- coequalizers and binary coproducts -----------------------------------

def parallel_pairs(c: FiniteCategory) -> list[tuple[Ident, Ident]]:
    return [(f, g) for f in c.morphisms for g in c.morphisms
            if c.src(f) == c.src(g) and c.tgt(f) == c.tgt(g)]


def coforks(c: FiniteCategory, pp: tuple[Ident, Ident]) -> list:
    f, g = pp
    return [h for h in c.out_of(c.tgt(f)) if c.compose(f, h) == c.compose(g, h)]


def is_coequalizer(c: FiniteCategory, pp: tuple[Ident, Ident], e: Ident) -> bool:
    forks = coforks(c, pp)
    if e not in forks:
        return False
    return all(sum(1 for u in c.out_of(c.tgt(e)) if c.compose(e, u) == h) == 1
               for h in forks)


def coequalizers(c: FiniteCategory, pp: tuple[Ident, Ident]) -> list:
    return [e for e in coforks(c, pp) if is_coequalizer(c, pp, e)]


class CoproductCocone(NamedTuple):
    apex: Ident
    inj1: Ident
    inj2: Ident


def coproduct_candidates(c: FiniteCategory, a: Ident, b: Ident) -> list[CoproductCocone]:
    return [CoproductCocone(q, i1, i2) for q in c.objects
            for i1 in hom_set(c, a, q) for i2 in hom_set(c, b, q)]


def is_binary_coproduct(c: FiniteCategory, a: Ident, b: Ident, k: CoproductCocone) -> bool:
    for other in coproduct_candidates(c, a, b):
        n = sum(1 for u in hom_set(c, k.apex, other.apex)
                if c.compose(k.inj1, u) == other.inj1 and c.compose(k.inj2, u) == other.inj2)
        if n != 1:
            return False
    return True


def binary_coproducts(c: FiniteCategory, a: Ident, b: Ident) -> list[CoproductCocone]:
    return [k for k in coproduct_candidates(c, a, b) if is_binary_coproduct(c, a, b, k)]


def binary_coproduct_objects(c: FiniteCategory) -> dict:
    """Map every ordered object pair to the apexes of its coproduct cocones."""
    out = {}
    for a, b in product(c.objects, repeat=2):
        apexes = {k.apex for k in binary_coproducts(c, a, b)}
        out[(a, b)] = tuple(o for o in c.objects if o in apexes)
    return out


@dataclass
class FiniteCocompleteness:
    has_initial: bool
    has_coequalizers: bool
    has_pushouts: bool
    has_binary_coproducts: bool
    failures: list = field(default_factory=list)

    def __bool__(self):
        return (self.has_initial and self.has_coequalizers
                and self.has_pushouts and self.has_binary_coproducts)


def finite_cocompleteness(c: FiniteCategory) -> FiniteCocompleteness:
    """All four clauses checked independently, with the first failing witness
    of each."""
    failures = []
    has_initial = bool(initial_objects(c))
    if not has_initial:
        failures.append(("initial", None))
    no_coeq = [pp for pp in parallel_pairs(c) if not coequalizers(c, pp)]
    if no_coeq:
        failures.append(("coequalizer", no_coeq[0]))
    no_po = [s for s in enumerate_spans(c) if not pushout_cocones(c, s)]
    if no_po:
        failures.append(("pushout", tuple(no_po[0])))
    no_cp = [pair for pair, apexes in binary_coproduct_objects(c).items() if not apexes]
    if no_cp:
        failures.append(("binary-coproduct", no_cp[0]))
    return FiniteCocompleteness(has_initial, not no_coeq, not no_po, not no_cp, failures)


def is_finitely_cocomplete(c: FiniteCategory) -> bool:
    return bool(finite_cocompleteness(c))


# --- shapes and special functors ------------------------------------------

TERMINAL_OBJECT = "terminal#0"


def terminal_category() -> FiniteCategory:
    """One object and one morphism, both called ``terminal#0``."""
    t = TERMINAL_OBJECT
    return make_category([t], [(t, t, t)], {(t, t): t}, {t: t}, "terminal")


def empty_category() -> FiniteCategory:
    return make_category([], [], {}, {}, "empty")


def span_shape_category() -> FiniteCategory:
    return with_identity_composites(
        ["span#0", "span#1", "span#2"],
        [("span#00", "span#0", "span#0"), ("span#11", "span#1", "span#1"),
         ("span#22", "span#2", "span#2"), ("span#a1", "span#0", "span#1"),
         ("span#a2", "span#0", "span#2")],
        {"span#0": "span#00", "span#1": "span#11", "span#2": "span#22"},
        name="span",
    )


def parallel_shape_category() -> FiniteCategory:
    return with_identity_composites(
        ["par#0", "par#1"],
        [("par#00", "par#0", "par#0"), ("par#11", "par#1", "par#1"),
         ("par#f", "par#0", "par#1"), ("par#g", "par#0", "par#1")],
        {"par#0": "par#00", "par#1": "par#11"},
        name="parallel",
    )


def default_shapes() -> list[FiniteCategory]:
    return [empty_category(), terminal_category(), parallel_shape_category(),
            span_shape_category()]


def unique_functor(c: FiniteCategory) -> Functor:
    t = terminal_category()
    return Functor(c, t, {o: TERMINAL_OBJECT for o in c.objects},
                   {m: TERMINAL_OBJECT for m in c.morphisms}, f"!_{c.name}")


def object_functor(c: FiniteCategory, o: Ident) -> Functor:
    if o not in c.identities:
        raise UnknownObject(o)
    return Functor(terminal_category(), c, {TERMINAL_OBJECT: o},
                   {TERMINAL_OBJECT: c.identity(o)}, f"obj({o})")


def constant_functor(j: FiniteCategory, c: FiniteCategory, o: Ident) -> Functor:
    """The functor ``j -> c`` constant at ``o``, built as ``!_j`` then ``obj(o)``."""
    return compose_functors(unique_functor(j), object_functor(c, o))


# --- diagrams and cocones --------------------------------------------------

@dataclass(frozen=True)
class Diagram:
    functor: Functor

    def __post_init__(self):
        validate_functor(self.functor)

    @property
    def shape(self) -> FiniteCategory:
        return self.functor.source

    @property
    def ambient(self) -> FiniteCategory:
        return self.functor.target

    def __hash__(self):
        return hash(self.functor)

    def sort_key(self) -> tuple:
        return self.functor.sort_key()

    def describe(self) -> dict:
        f = self.functor
        return {
            "shape": self.shape.name,
            "objectMap": {str(k): v for k, v in f.object_map.items()},
            "morphismMap": {str(k): v for k, v in f.morphism_map.items()},
        }


def make_diagram(shape: FiniteCategory, c: FiniteCategory, object_map: Mapping,
                 morphism_map: Mapping, name: str = "") -> Diagram:
    return Diagram(Functor(shape, c, object_map, morphism_map, name))


def span_diagram(c: FiniteCategory, s: Span) -> Diagram:
    """The span-shaped diagram selecting ``s``."""
    shape = span_shape_category()
    return make_diagram(
        shape, c,
        {"span#0": s.vertex, "span#1": c.tgt(s.first), "span#2": c.tgt(s.second)},
        {"span#00": c.identity(s.vertex), "span#11": c.identity(c.tgt(s.first)),
         "span#22": c.identity(c.tgt(s.second)), "span#a1": s.first, "span#a2": s.second},
    )


def span_of(d: Diagram) -> Span:
    """Inverse of :func:`span_diagram` for diagrams of span shape."""
    mm = d.functor.morphism_map
    return Span(d.functor.object_map["span#0"], mm["span#a1"], mm["span#a2"])


def enumerate_diagrams(shape: FiniteCategory, c: FiniteCategory) -> list[Diagram]:
    """Every functor ``shape -> c``, by backtracking over object images and
    then morphism images, pruning as soon as a typing, identity or
    composition constraint among assigned elements fails."""
    objs = list(shape.objects)
    # identities first so they are fixed before anything composes with them
    ids = {shape.identity(o) for o in objs}
    mors = [m for m in shape.morphisms if m in ids] + \
           [m for m in shape.morphisms if m not in ids]
    out = []
    for images in product(c.objects, repeat=len(objs)):
        om = dict(zip(objs, images))
        mm: dict = {}

        def consistent(m):
            for (a, b), r in shape.composition.items():
                if m not in (a, b, r):
                    continue
                if a in mm and b in mm and r in mm and c.compose(mm[a], mm[b]) != mm[r]:
                    return False
            return True

        def extend(k):
            if k == len(mors):
                out.append(Diagram(Functor(shape, c, om, dict(mm))))
                return
            m = mors[k]
            if m in ids:
                candidates = [c.identity(om[shape.src(m)])]
            else:
                candidates = hom_set(c, om[shape.src(m)], om[shape.tgt(m)])
            for x in candidates:
                mm[m] = x
                if consistent(m):
                    extend(k + 1)
                del mm[m]

        extend(0)
    return out


@dataclass(frozen=True, eq=False)
class Cocone:
    diagram: Diagram
    apex: Ident
    components: Mapping[Ident, Ident]

    def __post_init__(self):
        object.__setattr__(self, "components", dict(self.components))

    def __eq__(self, other):
        if not isinstance(other, Cocone):
            return NotImplemented
        return (self.apex == other.apex and self.components == other.components
                and self.diagram == other.diagram)

    def __hash__(self):
        return hash((self.diagram, self.apex, frozenset(self.components.items())))

    def sort_key(self) -> tuple:
        return (self.diagram.sort_key(), self.apex, sorted_ids(self.components.items()))

    def __repr__(self):
        comps = ", ".join(f"{j}:{m}" for j, m in sorted(self.components.items(), key=repr))
        return f"Cocone(apex={self.apex!r}, {{{comps}}})"

    def as_natural_transformation(self) -> NaturalTransformation:
        d = self.diagram
        return NaturalTransformation(
            d.functor, constant_functor(d.shape, d.ambient, self.apex), self.components)


def is_cocone(c: FiniteCategory, k: Cocone) -> bool:
    d = k.diagram
    f = d.functor
    for j in d.shape.objects:
        m = k.components.get(j)
        if m not in c.graph.src or c.src(m) != f.object_map[j] or c.tgt(m) != k.apex:
            return False
    return all(c.compose(f.morphism_map[n], k.components[d.shape.tgt(n)])
               == k.components[d.shape.src(n)] for n in d.shape.morphisms)


def enumerate_cocones(c: FiniteCategory, d: Diagram, apex: Ident | None = None) -> list[Cocone]:
    if d.ambient != c:
        raise DiagramMismatch("diagram does not land in this category")
    apexes = c.objects if apex is None else (apex,)
    shape, f = d.shape, d.functor
    objs = list(shape.objects)
    out = []
    for a in apexes:
        comps: dict = {}

        def extend(k):
            if k == len(objs):
                out.append(Cocone(d, a, dict(comps)))
                return
            j = objs[k]
            for m in hom_set(c, f.object_map[j], a):
                comps[j] = m
                ok = True
                for n in shape.morphisms:
                    s, t = shape.src(n), shape.tgt(n)
                    if s in comps and t in comps and \
                            c.compose(f.morphism_map[n], comps[t]) != comps[s]:
                        ok = False
                        break
                if ok:
                    extend(k + 1)
                del comps[j]

        extend(0)
    return out


def cocone_mediators(c: FiniteCategory, gamma: Cocone, tau: Cocone) -> list:
    """All ``m: apex(gamma) -> apex(tau)`` with ``gamma(j).m == tau(j)`` for every j."""
    return [m for m in hom_set(c, gamma.apex, tau.apex)
            if all(c.compose(gamma.components[j], m) == tau.components[j]
                   for j in gamma.diagram.shape.objects)]


def is_universal_cocone(c: FiniteCategory, gamma: Cocone,
                        cocones: Iterable[Cocone] | None = None) -> bool:
    if cocones is None:
        cocones = enumerate_cocones(c, gamma.diagram)
    return all(len(cocone_mediators(c, gamma, tau)) == 1 for tau in cocones)


def colimit_cocones(c: FiniteCategory, d: Diagram) -> list[Cocone]:
    cocones = enumerate_cocones(c, d)
    return [g for g in cocones if is_universal_cocone(c, g, cocones)]


def colimit_objects(c: FiniteCategory, d: Diagram) -> tuple:
    apexes = {g.apex for g in colimit_cocones(c, d)}
    return tuple(o for o in c.objects if o in apexes)


def universal_cocone(c: FiniteCategory, d: Diagram, o: Ident) -> Cocone:
    """The first universal cocone with apex ``o`` (canonical enumeration order)."""
    cocones = enumerate_cocones(c, d)
    for g in cocones:
        if g.apex == o and is_universal_cocone(c, g, cocones):
            return g
    raise NotColimit(f"{o!r} is not a colimit of the diagram")


def comediator(c: FiniteCategory, d: Diagram, colim: Cocone, tau: Cocone) -> Ident:
    if colim.diagram != d or tau.diagram != d:
        raise DiagramMismatch("cocones are not over the given diagram")
    if not is_universal_cocone(c, colim):
        raise NotColimit("the chosen cocone is not universal")
    (m,) = cocone_mediators(c, colim, tau)
    return m


def is_cocomplete_over_shapes(c: FiniteCategory,
                              shapes: Iterable[FiniteCategory] | None = None) -> bool:
    """Every diagram of every given shape has a colimit. Full cocompleteness
    ranges over all shapes and is not decidable by enumeration; this checks
    the given finite family (by default empty, terminal, parallel pair, span)."""
    shapes = default_shapes() if shapes is None else shapes
    return all(colimit_objects(c, d) for j in shapes for d in enumerate_diagrams(j, c))


@dataclass
class IsoCheck:
    first: Ident
    second: Ident
    forward: Ident
    backward: Ident
    forward_is_iso: bool
    round_trips: bool
    forward_unique: bool
    backward_unique: bool

    @property
    def passed(self) -> bool:
        return (self.forward_is_iso and self.round_trips
                and self.forward_unique and self.backward_unique)


@dataclass
class ColimitUniquenessReport:
    colimits: tuple
    checks: list

    @property
    def passed(self) -> bool:
        return all(k.passed for k in self.checks)


def check_colimits_isomorphic(c: FiniteCategory, d: Diagram) -> ColimitUniquenessReport:
    """For every pair of colimit objects, the comediators between their chosen
    universal cocones are mutually inverse isomorphisms, and unique as
    mediators in both directions."""
    cocones = enumerate_cocones(c, d)
    chosen: dict = {}
    for g in cocones:
        if g.apex not in chosen and is_universal_cocone(c, g, cocones):
            chosen[g.apex] = g
    objs = tuple(o for o in c.objects if o in chosen)
    checks = []
    for o1, o2 in product(objs, repeat=2):
        g1, g2 = chosen[o1], chosen[o2]
        fw, bw = cocone_mediators(c, g1, g2), cocone_mediators(c, g2, g1)
        m, n = fw[0], bw[0]
        checks.append(IsoCheck(
            o1, o2, m, n,
            forward_is_iso=is_isomorphism(c, m),
            round_trips=(c.compose(m, n) == c.identity(o1) and c.compose(n, m) == c.identity(o2)),
            forward_unique=len(fw) == 1,
            backward_unique=len(bw) == 1,
        ))
    return ColimitUniquenessReport(objs, checks)
