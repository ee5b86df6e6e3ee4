"""Finite graphs, graph morphisms and the monoidal structure on graphs.

A category is presented here as a monoid in graphs, so this module carries
the carriers for that presentation: the tensor ``g (x) h`` of two graphs over
a shared object set (the pullback of composable pairs), the discrete loop
graph used as unit, opposite graphs, and the coherence morphisms
(associator, unitors and the swap ``tau``).

Identifiers are opaque hashables. Object and morphism names from fixtures are
strings; tensor graphs use ordered pairs ``(m, n)`` as morphism identifiers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Mapping

Ident = Hashable


class GraphError(ValueError):
    """A graph or graph morphism is malformed."""


class ObjectSetMismatch(GraphError):
    pass


class GraphMismatch(GraphError):
    pass


def ident_key(x: Any):
    """Total, run-stable sort key over identifiers (strings, tuples, other)."""
    if isinstance(x, str):
        return (0, x)
    if isinstance(x, tuple):
        return (1, tuple(ident_key(i) for i in x))
    if isinstance(x, (int, float)):
        return (0, str(x))
    sk = getattr(x, "sort_key", None)
    if callable(sk):
        return (2, ident_key(sk()))
    name = getattr(x, "name", None)
    if isinstance(name, str):
        return (2, name, repr(x))
    return (3, repr(x))


def sorted_ids(xs: Iterable[Any]) -> tuple:
    return tuple(sorted(xs, key=ident_key))


def _canonical(xs: Iterable[Ident], what: str) -> tuple:
    xs = list(xs)
    if len(set(xs)) != len(xs):
        seen, dups = set(), []
        for x in xs:
            if x in seen:
                dups.append(x)
            seen.add(x)
        raise GraphError(f"duplicate {what} identifiers: {sorted_ids(set(dups))}")
    return sorted_ids(xs)


@dataclass(frozen=True)
class FiniteGraph:
    """A finite directed multigraph: object and morphism carriers with source
    and target maps. Carriers are stored sorted, so equal graphs compare equal
    as tuples."""

    objects: tuple
    morphisms: tuple
    src: Mapping[Ident, Ident]
    tgt: Mapping[Ident, Ident]

    def __post_init__(self):
        object.__setattr__(self, "objects", _canonical(self.objects, "object"))
        object.__setattr__(self, "morphisms", _canonical(self.morphisms, "morphism"))
        object.__setattr__(self, "src", dict(self.src))
        object.__setattr__(self, "tgt", dict(self.tgt))
        objs = set(self.objects)
        for name, table in (("src", self.src), ("tgt", self.tgt)):
            if set(table) != set(self.morphisms):
                missing = set(self.morphisms) - set(table)
                extra = set(table) - set(self.morphisms)
                raise GraphError(
                    f"{name} must be total on morphisms "
                    f"(missing {sorted_ids(missing)}, extra {sorted_ids(extra)})"
                )
            bad = [m for m, o in table.items() if o not in objs]
            if bad:
                raise GraphError(f"{name} maps {sorted_ids(bad)} outside the object set")

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.objects, self.morphisms, frozenset(self.src.items()),
                      frozenset(self.tgt.items())))
            object.__setattr__(self, "_hash", h)
        return h

    @classmethod
    def from_edges(cls, objects: Iterable[Ident],
                   edges: Iterable[tuple[Ident, Ident, Ident]]) -> "FiniteGraph":
        """Build from ``(id, src, tgt)`` triples."""
        edges = list(edges)
        return cls(
            objects=tuple(objects),
            morphisms=tuple(e[0] for e in edges),
            src={m: s for m, s, _ in edges},
            tgt={m: t for m, _, t in edges},
        )

    def edges(self) -> list[tuple[Ident, Ident, Ident]]:
        return [(m, self.src[m], self.tgt[m]) for m in self.morphisms]


@dataclass(frozen=True)
class GraphMorphism:
    """A pair of carrier maps between two graphs.

    Construction does not validate; call :meth:`validate` (or inspect
    :meth:`violations`) to check totality and the two structure squares.
    """

    source: FiniteGraph
    target: FiniteGraph
    object_map: Mapping[Ident, Ident]
    morphism_map: Mapping[Ident, Ident]

    def __post_init__(self):
        object.__setattr__(self, "object_map", dict(self.object_map))
        object.__setattr__(self, "morphism_map", dict(self.morphism_map))

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.object_map.items()),
                     frozenset(self.morphism_map.items())))

    def violations(self) -> list[str]:
        out = []
        s, t = self.source, self.target
        if set(self.object_map) != set(s.objects):
            out.append("object map is not total on source objects")
        if set(self.morphism_map) != set(s.morphisms):
            out.append("morphism map is not total on source morphisms")
        tobjs, tmors = set(t.objects), set(t.morphisms)
        for o, image in self.object_map.items():
            if image not in tobjs:
                out.append(f"object {o!r} maps outside the target graph")
        for m, image in self.morphism_map.items():
            if image not in tmors:
                out.append(f"morphism {m!r} maps outside the target graph")
        if out:
            return out
        for m in s.morphisms:
            image = self.morphism_map[m]
            if t.src[image] != self.object_map[s.src[m]]:
                out.append(f"source square fails at {m!r}")
            if t.tgt[image] != self.object_map[s.tgt[m]]:
                out.append(f"target square fails at {m!r}")
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def validate(self) -> "GraphMorphism":
        problems = self.violations()
        if problems:
            raise GraphError("; ".join(problems))
        return self


def tensor(g: FiniteGraph, h: FiniteGraph) -> FiniteGraph:
    """Graph of composable pairs ``(m, n)`` with ``tgt_g(m) == src_h(n)``."""
    if g.objects != h.objects:
        raise ObjectSetMismatch("tensor needs graphs over the same object set")
    edges = [
        ((m, n), g.src[m], h.tgt[n])
        for m in g.morphisms
        for n in h.morphisms
        if g.tgt[m] == h.src[n]
    ]
    return FiniteGraph.from_edges(g.objects, edges)


def unit_graph(objects: Iterable[Ident]) -> FiniteGraph:
    """Discrete loop graph: one loop per object, named by the object itself."""
    objects = tuple(objects)
    return FiniteGraph.from_edges(objects, [(o, o, o) for o in objects])


def opposite_graph(g: FiniteGraph) -> FiniteGraph:
    return FiniteGraph(g.objects, g.morphisms, g.tgt, g.src)


def identity_graph_morphism(g: FiniteGraph) -> GraphMorphism:
    return GraphMorphism(g, g, {o: o for o in g.objects}, {m: m for m in g.morphisms})


def compose_graph_morphisms(f: GraphMorphism, g: GraphMorphism) -> GraphMorphism:
    """Diagrammatic composite: first ``f``, then ``g``."""
    if f.target != g.source:
        raise GraphMismatch("target graph of the first morphism is not the source of the second")
    return GraphMorphism(
        f.source,
        g.target,
        {o: g.object_map[x] for o, x in f.object_map.items()},
        {m: g.morphism_map[x] for m, x in f.morphism_map.items()},
    )


def tensor_graph_morphisms(f: GraphMorphism, g: GraphMorphism) -> GraphMorphism:
    """``f (x) g``, acting componentwise on composable pairs.

    Both factors must share source objects, target objects and object map,
    which is what makes the componentwise image of a composable pair
    composable again.
    """
    if f.source.objects != g.source.objects or f.target.objects != g.target.objects:
        raise GraphMismatch("tensor of graph morphisms needs shared object sets")
    if f.object_map != g.object_map:
        raise GraphMismatch("tensor of graph morphisms needs equal object maps")
    source = tensor(f.source, g.source)
    target = tensor(f.target, g.target)
    return GraphMorphism(
        source,
        target,
        dict(f.object_map),
        {(m, n): (f.morphism_map[m], g.morphism_map[n]) for (m, n) in source.morphisms},
    )


def opposite_graph_morphism(f: GraphMorphism) -> GraphMorphism:
    return GraphMorphism(opposite_graph(f.source), opposite_graph(f.target),
                         f.object_map, f.morphism_map)


def alpha(g: FiniteGraph) -> GraphMorphism:
    """Associator ``g(x)(g(x)g) -> (g(x)g)(x)g``."""
    gg = tensor(g, g)
    source = tensor(g, gg)
    target = tensor(gg, g)
    return GraphMorphism(
        source, target,
        {o: o for o in g.objects},
        {(m, (n, p)): ((m, n), p) for (m, (n, p)) in source.morphisms},
    )


def left_unitor(g: FiniteGraph) -> GraphMorphism:
    source = tensor(unit_graph(g.objects), g)
    return GraphMorphism(source, g, {o: o for o in g.objects},
                         {(loop, m): m for (loop, m) in source.morphisms})


def right_unitor(g: FiniteGraph) -> GraphMorphism:
    source = tensor(g, unit_graph(g.objects))
    return GraphMorphism(source, g, {o: o for o in g.objects},
                         {(m, loop): m for (m, loop) in source.morphisms})


def tau(g: FiniteGraph) -> GraphMorphism:
    """Swap ``op(g)(x)op(g) -> op(g(x)g)``, ``(m, n) |-> (n, m)``."""
    og = opposite_graph(g)
    source = tensor(og, og)
    target = opposite_graph(tensor(g, g))
    return GraphMorphism(source, target, {o: o for o in g.objects},
                         {(m, n): (n, m) for (m, n) in source.morphisms})


@dataclass(frozen=True)
class Coherence:
    alpha: GraphMorphism
    left: GraphMorphism
    right: GraphMorphism
    tau: GraphMorphism = field(repr=False)


def coherence_morphisms(g: FiniteGraph) -> Coherence:
    return Coherence(alpha(g), left_unitor(g), right_unitor(g), tau(g))
