"""The standard model: CAT$/COL$ vocabulary interpreted by the native engine.

Every vocabulary function takes a category and returns a finite class or a
:class:`FiniteFunction`, so ``((CAT$source ?c) ?m)`` is two lookups. The
class ``CAT$category`` is exactly the supplied set; function tables are
defined on its closure under ``opposite`` together with the default colimit
shapes (and their opposites), so sentences such as ``(opposite (opposite
?c))`` or ``(CAT$object (FUNC$source ?d))`` stay inside the tables.

Colimit vocabulary (COL$) is tabulated only for the supplied categories.
``COL$diagram`` ranges over every diagram of a default shape.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterable

from ..category import (
    FiniteCategory,
    is_bimorphism,
    is_epimorphism,
    is_isomorphism,
    is_monomorphism,
    mu_eta,
    opposite_category,
)
from ..colimit import (
    all_cocones2,
    binary_coproducts,
    coequalizers,
    colimit_objects,
    counique,
    default_shapes,
    enumerate_cocones,
    enumerate_diagrams,
    enumerate_spans,
    initial_objects,
    is_finitely_cocomplete,
    is_pushout_cocone2,
    mediator2,
    parallel_pairs,
    pushout_cocones,
    pushout_objects,
    universal_cocone,
)
from ..graph import (
    alpha,
    compose_graph_morphisms,
    identity_graph_morphism,
    left_unitor,
    opposite_graph,
    opposite_graph_morphism,
    right_unitor,
    sorted_ids,
    tau,
    tensor,
    tensor_graph_morphisms,
    unit_graph,
)
from .semantics import FiniteFunction, KifModel, LazyFunction

ISOMORPHISM_READINGS = ("bimorphism", "invertible")


def _closure(categories, shapes):
    out: list = []
    for c in list(categories) + list(shapes):
        for x in (c, opposite_category(c)):
            if x not in out:
                out.append(x)
    return out


def _table(domain, fn, name):
    return FiniteFunction({c: fn(c) for c in domain}, name)


def _cat_vocabulary(cats, isomorphism):
    def members(pred):
        return lambda c: frozenset(m for m in c.morphisms if pred(c, m))

    iso_pred = is_bimorphism if isomorphism == "bimorphism" else is_isomorphism
    v = {
        "CAT$object": lambda c: frozenset(c.objects),
        "CAT$morphism": lambda c: frozenset(c.morphisms),
        "CAT$source": lambda c: FiniteFunction(c.graph.src, "source"),
        "CAT$target": lambda c: FiniteFunction(c.graph.tgt, "target"),
        "CAT$composable": lambda c: frozenset(c.composable_pairs()),
        "CAT$first": lambda c: FiniteFunction({p: p[0] for p in c.composable_pairs()}, "first"),
        "CAT$second": lambda c: FiniteFunction({p: p[1] for p in c.composable_pairs()}, "second"),
        "CAT$composition": lambda c: FiniteFunction(c.composition, "composition"),
        "CAT$identity": lambda c: FiniteFunction(c.identities, "identity"),
        "CAT$monomorphism": members(is_monomorphism),
        "CAT$epimorphism": members(is_epimorphism),
        "CAT$bimorphism": members(is_bimorphism),
        "CAT$invertible": members(is_isomorphism),
        "CAT$isomorphism": members(iso_pred),
    }
    out = {name: _table(cats, fn, name) for name, fn in v.items()}
    out["CAT$opposite"] = FiniteFunction(
        {c: next(x for x in cats if x == opposite_category(c)) for c in cats}, "opposite")
    return out


def _col_vocabulary(cats, shapes):
    def per(fn, name):
        return _table(cats, fn, name)

    def spans(c):
        return frozenset(enumerate_spans(c))

    def cocones2(c):
        return frozenset(all_cocones2(c))

    def comediator2_pairs(c):
        return frozenset((p, s) for p in pushout_cocones(c) for s in all_cocones2(c)
                         if s.span == p.span)

    def initial_pairs(c):
        return {(i, o): counique(c, i, o) for i in initial_objects(c) for o in c.objects}

    diagrams = {c: [d for j in shapes for d in enumerate_diagrams(j, c)] for c in cats}
    colims = {c: {d: colimit_objects(c, d) for d in diagrams[c]} for c in cats}

    def cocone_table(c):
        return FiniteFunction({(d, o): frozenset(enumerate_cocones(c, d, o))
                               for d in diagrams[c] for o in c.objects}, "cocone")

    def comediator_table(c):
        return FiniteFunction({d: FiniteFunction({o: universal_cocone(c, d, o)
                                                  for o in colims[c][d]}, "universal-cocone")
                               for d in diagrams[c]}, "comediator")

    v = {
        "COL$initial": lambda c: frozenset(initial_objects(c)),
        "COL$counique": lambda c: FiniteFunction(initial_pairs(c), "counique"),
        "COL$span": spans,
        "COL$vertex": lambda c: FiniteFunction({s: s.vertex for s in spans(c)}, "vertex"),
        "COL$first": lambda c: FiniteFunction({s: s.first for s in spans(c)}, "first"),
        "COL$second": lambda c: FiniteFunction({s: s.second for s in spans(c)}, "second"),
        "COL$cocone2": cocones2,
        "COL$cocone2-span": lambda c: FiniteFunction({k: k.span for k in cocones2(c)},
                                                     "cocone2-span"),
        "COL$opvertex": lambda c: FiniteFunction({k: k.opvertex for k in cocones2(c)},
                                                 "opvertex"),
        "COL$opfirst": lambda c: FiniteFunction({k: k.opfirst for k in cocones2(c)}, "opfirst"),
        "COL$opsecond": lambda c: FiniteFunction({k: k.opsecond for k in cocones2(c)},
                                                 "opsecond"),
        "COL$pushout-cocone2": lambda c: frozenset(pushout_cocones(c)),
        "COL$pushout": lambda c: frozenset(pushout_objects(c)),
        "COL$comediator2-pair": comediator2_pairs,
        "COL$comediator2": lambda c: FiniteFunction(
            {(p, s): mediator2(c, p, s) for p, s in comediator2_pairs(c)}, "comediator2"),
        "COL$parallel-pair": lambda c: frozenset(parallel_pairs(c)),
        "COL$coequalizer": lambda c: FiniteFunction(
            {pp: frozenset(coequalizers(c, pp)) for pp in parallel_pairs(c)}, "coequalizer"),
        "COL$coproduct": lambda c: FiniteFunction(
            {(a, b): frozenset(k.apex for k in binary_coproducts(c, a, b))
             for a, b in product(c.objects, repeat=2)}, "coproduct"),
        "COL$diagram": lambda c: frozenset(diagrams[c]),
        "COL$colimit": lambda c: FiniteFunction(
            {d: frozenset(os) for d, os in colims[c].items()}, "colimit"),
        "COL$cocone": cocone_table,
        "COL$comediator": comediator_table,
    }
    out = {name: per(fn, name) for name, fn in v.items()}
    out["COL$finitely-cocomplete"] = frozenset(c for c in cats if is_finitely_cocomplete(c))
    out["FUNC$functor"] = frozenset(d for c in cats for d in diagrams[c])
    return out


def _graph_vocabulary(closure):
    """Graph-level values for the monoid-in-graphs axioms."""
    mus = {c: mu_eta(c) for c in closure}

    def lazy(fn, name):
        return LazyFunction(fn, name)

    return {
        "CAT$underlying": _table(closure, lambda c: c.graph, "underlying"),
        "CAT$mu": _table(closure, lambda c: mus[c][0], "mu"),
        "CAT$eta": _table(closure, lambda c: mus[c][1], "eta"),
        "GPH$object": lazy(lambda g: frozenset(g.objects), "GPH$object"),
        "GPH$morphism": lazy(lambda g: frozenset(g.morphisms), "GPH$morphism"),
        "GPH$multiplication": lazy(tensor, "GPH$multiplication"),
        "GPH$unit": lazy(lambda objs: unit_graph(sorted_ids(objs)), "GPH$unit"),
        "GPH$opposite": lazy(opposite_graph, "GPH$opposite"),
        "GPH.MOR$source": lazy(lambda f: f.source, "GPH.MOR$source"),
        "GPH.MOR$target": lazy(lambda f: f.target, "GPH.MOR$target"),
        "GPH.MOR$object": lazy(lambda f: FiniteFunction(f.object_map, "object-map"),
                               "GPH.MOR$object"),
        "GPH.MOR$morphism": lazy(lambda f: FiniteFunction(f.morphism_map, "morphism-map"),
                                 "GPH.MOR$morphism"),
        "GPH.MOR$composition": lazy(compose_graph_morphisms, "GPH.MOR$composition"),
        "GPH.MOR$multiplication": lazy(tensor_graph_morphisms, "GPH.MOR$multiplication"),
        "GPH.MOR$identity": lazy(identity_graph_morphism, "GPH.MOR$identity"),
        "GPH.MOR$alpha": lazy(lambda g, h, k: alpha(g) if g == h == k else _mixed(),
                              "GPH.MOR$alpha"),
        "GPH.MOR$left": lazy(left_unitor, "GPH.MOR$left"),
        "GPH.MOR$right": lazy(right_unitor, "GPH.MOR$right"),
        "GPH.MOR$tau": lazy(lambda g, h: tau(g) if g == h else _mixed(), "GPH.MOR$tau"),
        "GPH.MOR$opposite": lazy(opposite_graph_morphism, "GPH.MOR$opposite"),
        "SET$identity": lazy(lambda xs: FiniteFunction({x: x for x in xs}, "identity"),
                             "SET$identity"),
    }


def _mixed():
    raise ValueError("coherence morphisms are only tabulated for a single graph")


class StandardModel(KifModel):
    """A :class:`KifModel` that remembers what it was built from."""

    categories: tuple
    closure: tuple
    isomorphism: str


def build_standard_model(categories: Iterable[FiniteCategory], extras=None, *,
                         shapes: Iterable[FiniteCategory] | None = None,
                         isomorphism: str = "bimorphism",
                         graph_level: bool = False) -> StandardModel:
    """Interpret the vocabulary over ``categories``.

    ``isomorphism`` picks the reading of ``CAT$isomorphism``: ``bimorphism``
    (mono and epi, the default) or ``invertible`` (two-sided inverse). Both
    readings are always available as ``CAT$bimorphism`` and
    ``CAT$invertible``. ``extras`` adds or overrides named values.
    """
    if isomorphism not in ISOMORPHISM_READINGS:
        raise ValueError(f"isomorphism must be one of {ISOMORPHISM_READINGS}")
    cats: list = []
    for c in categories:
        if c not in cats:
            cats.append(c)
    shapes = list(default_shapes() if shapes is None else shapes)
    closure = _closure(cats, shapes)
    values = {"CAT$category": frozenset(cats)}
    values.update(_cat_vocabulary(closure, isomorphism))
    values.update(_col_vocabulary(cats, shapes))
    values["FUNC$source"] = LazyFunction(lambda d: d.shape, "FUNC$source")
    values["FUNC$target"] = LazyFunction(lambda d: d.ambient, "FUNC$target")
    values["NAT$component"] = LazyFunction(
        lambda k: FiniteFunction(k.components, "component"), "NAT$component")
    if graph_level:
        values.update(_graph_vocabulary(closure))
    values.update(extras or {})
    m = StandardModel(values, namespaces=("CAT", "COL"))
    m.categories, m.closure, m.isomorphism = tuple(cats), tuple(closure), isomorphism
    return m


# --- seeded mutations --------------------------------------------------------

@dataclass
class Mutation:
    kind: str
    description: str
    model: KifModel


def _inner(model, name, c):
    return model.values[name].table[c]


def _set_inner(model, name, c, value):
    return model.replaced(name, model.values[name].replaced(c, value))


def _pick(rng, xs):
    xs = sorted_ids(xs)
    return xs[rng.randrange(len(xs))] if xs else None


def _mut_composition(model, rng):
    # retarget one composite so its typing breaks
    c = _pick(rng, [c for c in model.categories if len(c.objects) > 1])
    pair = _pick(rng, c.composition)
    r = c.composition[pair]
    wrong = [m for m in c.morphisms
             if (c.src(m), c.tgt(m)) != (c.src(r), c.tgt(r))]
    new = _pick(rng, wrong)
    f = _inner(model, "CAT$composition", c).replaced(pair, new)
    return f"{c.name}: composition{list(pair)} := {new} (was {r})", \
        _set_inner(model, "CAT$composition", c, f)


def _mut_identity(model, rng):
    c = _pick(rng, [c for c in model.categories if len(c.morphisms) > len(c.objects)])
    o = _pick(rng, c.objects)
    new = _pick(rng, [m for m in c.morphisms if m != c.identity(o)])
    f = _inner(model, "CAT$identity", c).replaced(o, new)
    return f"{c.name}: identity({o}) := {new}", _set_inner(model, "CAT$identity", c, f)


def _toggle_member(name):
    def mutate(model, rng):
        c = _pick(rng, [c for c in model.categories])
        m = _pick(rng, c.morphisms)
        cls = _inner(model, name, c)
        return (f"{c.name}: toggle {m} in {name}",
                _set_inner(model, name, c, cls ^ {m}))
    return mutate


def _mut_opposite(model, rng):
    opp = model.values["CAT$opposite"]
    c = _pick(rng, model.categories)
    wrong = [d for d in model.closure if d != opp.table[c] and opp.table[d] != c]
    d = _pick(rng, wrong)
    return f"{c.name}: opposite := {d.name}", model.replaced("CAT$opposite", opp.replaced(c, d))


def _mut_initial(model, rng):
    c = _pick(rng, model.categories)
    o = _pick(rng, c.objects)
    cls = _inner(model, "COL$initial", c)
    return f"{c.name}: toggle {o} in COL$initial", \
        _set_inner(model, "COL$initial", c, cls ^ {o})


def _mut_counique(model, rng):
    c = _pick(rng, [c for c in model.categories
                    if initial_objects(c) and len(c.morphisms) > 1])
    f = _inner(model, "COL$counique", c)
    key = _pick(rng, f.table)
    new = _pick(rng, [m for m in c.morphisms if m != f.table[key]])
    return f"{c.name}: counique{list(key)} := {new}", \
        _set_inner(model, "COL$counique", c, f.replaced(key, new))


def _mut_pushout_cocone(model, rng):
    candidates = [(c, k) for c in model.categories for k in all_cocones2(c)
                  if not is_pushout_cocone2(c, k)]
    c, k = candidates[rng.randrange(len(candidates))]
    cls = _inner(model, "COL$pushout-cocone2", c)
    return f"{c.name}: add non-pushout cocone {tuple(k)} to COL$pushout-cocone2", \
        _set_inner(model, "COL$pushout-cocone2", c, cls | {k})


def _mut_pushout(model, rng):
    c = _pick(rng, model.categories)
    o = _pick(rng, c.objects)
    cls = _inner(model, "COL$pushout", c)
    return f"{c.name}: toggle {o} in COL$pushout", _set_inner(model, "COL$pushout", c, cls ^ {o})


def _mut_cocomplete(model, rng):
    c = _pick(rng, model.categories)
    cls = model.values["COL$finitely-cocomplete"]
    return f"toggle {c.name} in COL$finitely-cocomplete", \
        model.replaced("COL$finitely-cocomplete", cls ^ {c})


def _mut_source(model, rng):
    c = _pick(rng, [c for c in model.categories if len(c.objects) > 1])
    m = _pick(rng, c.morphisms)
    new = _pick(rng, [o for o in c.objects if o != c.src(m)])
    f = _inner(model, "CAT$source", c).replaced(m, new)
    return f"{c.name}: source({m}) := {new}", _set_inner(model, "CAT$source", c, f)


MUTATION_KINDS = {
    "composition": _mut_composition,
    "identity": _mut_identity,
    "monomorphism": _toggle_member("CAT$monomorphism"),
    "epimorphism": _toggle_member("CAT$epimorphism"),
    "isomorphism": _toggle_member("CAT$isomorphism"),
    "opposite": _mut_opposite,
    "initial": _mut_initial,
    "counique": _mut_counique,
    "pushout-cocone2": _mut_pushout_cocone,
    "pushout": _mut_pushout,
    "finitely-cocomplete": _mut_cocomplete,
    "source": _mut_source,
}


def seeded_mutations(model: StandardModel, n: int = 20, seed: int = 0) -> list[Mutation]:
    """``n`` single-entry perturbations of ``model``, cycling through every
    kind in :data:`MUTATION_KINDS` with sites drawn from ``random.Random(seed)``.
    Each kind changes one value so that some corpus sentence must fail."""
    rng = random.Random(seed)
    kinds = list(MUTATION_KINDS)
    out = []
    for i in range(n):
        kind = kinds[i % len(kinds)]
        desc, mutated = MUTATION_KINDS[kind](model, rng)
        out.append(Mutation(kind, desc, mutated))
    return out


__all__ = [
    "ISOMORPHISM_READINGS", "MUTATION_KINDS", "Mutation", "StandardModel",
    "build_standard_model", "seeded_mutations",
]
