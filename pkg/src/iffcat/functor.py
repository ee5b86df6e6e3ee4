"""Functors and natural transformations between finite categories.

Only what the colimit machinery needs: validation, composition, identities,
and naturality checking.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping

from .category import CategoryError, FiniteCategory, Violation
from .graph import sorted_ids

Ident = Hashable

NATURALITY = "NaturalityViolation"


class FunctorError(CategoryError):
    pass


class CategoryMismatch(FunctorError):
    pass


class FunctorValidationError(FunctorError):
    def __init__(self, violations):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations[:3]))


@dataclass(frozen=True, eq=False)
class Functor:
    source: FiniteCategory
    target: FiniteCategory
    object_map: Mapping[Ident, Ident]
    morphism_map: Mapping[Ident, Ident]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "object_map", dict(self.object_map))
        object.__setattr__(self, "morphism_map", dict(self.morphism_map))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Functor):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.object_map == other.object_map
                and self.morphism_map == other.morphism_map)

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.source, self.target, frozenset(self.object_map.items()),
                      frozenset(self.morphism_map.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def sort_key(self) -> tuple:
        return (self.source.sort_key(), self.target.sort_key(),
                sorted_ids(self.object_map.items()), sorted_ids(self.morphism_map.items()))

    def __repr__(self):
        return (f"<Functor {self.name or ''} {self.source.name or 'J'} -> "
                f"{self.target.name or 'C'} {sorted(self.object_map.items(), key=repr)}>")


def functor_violations(f: Functor) -> list[Violation]:
    s, t = f.source, f.target
    out = []
    if set(f.object_map) != set(s.objects):
        out.append(Violation("TotalityViolation", ("objects",), "object map not total"))
    if set(f.morphism_map) != set(s.morphisms):
        out.append(Violation("TotalityViolation", ("morphisms",), "morphism map not total"))
    bad = [x for x in f.object_map.values() if x not in t.identities]
    bad += [x for x in f.morphism_map.values() if x not in t.graph.src]
    if bad:
        out.append(Violation("TotalityViolation", tuple(bad), "images outside the target"))
    if out:
        return out
    om, mm = f.object_map, f.morphism_map
    for m in s.morphisms:
        if t.src(mm[m]) != om[s.src(m)]:
            out.append(Violation("TypingViolation", (m,), "source not preserved"))
        if t.tgt(mm[m]) != om[s.tgt(m)]:
            out.append(Violation("TypingViolation", (m,), "target not preserved"))
    if out:
        return out
    for o in s.objects:
        if mm[s.identity(o)] != t.identity(om[o]):
            out.append(Violation("IdentityViolation", (o,), "identity not preserved"))
    for (m1, m2), r in s.composition.items():
        if mm[r] != t.compose(mm[m1], mm[m2]):
            out.append(Violation("CompositionViolation", (m1, m2), "composite not preserved"))
    return out


def validate_functor(f: Functor) -> Functor:
    problems = functor_violations(f)
    if problems:
        raise FunctorValidationError(problems)
    return f


def identity_functor(c: FiniteCategory) -> Functor:
    return Functor(c, c, {o: o for o in c.objects}, {m: m for m in c.morphisms},
                   f"id_{c.name}")


def compose_functors(f: Functor, g: Functor) -> Functor:
    """First ``f``, then ``g``."""
    if f.target != g.source:
        raise CategoryMismatch("target of the first functor is not the source of the second")
    return Functor(
        f.source,
        g.target,
        {o: g.object_map[x] for o, x in f.object_map.items()},
        {m: g.morphism_map[x] for m, x in f.morphism_map.items()},
    )


@dataclass(frozen=True, eq=False)
class NaturalTransformation:
    source_functor: Functor
    target_functor: Functor
    components: Mapping[Ident, Ident]

    def __post_init__(self):
        object.__setattr__(self, "components", dict(self.components))

    def __eq__(self, other):
        if not isinstance(other, NaturalTransformation):
            return NotImplemented
        return (self.source_functor == other.source_functor
                and self.target_functor == other.target_functor
                and self.components == other.components)

    def __hash__(self):
        return hash((self.source_functor, self.target_functor,
                     frozenset(self.components.items())))


def natural_transformation_violations(t: NaturalTransformation) -> list[Violation]:
    F, G = t.source_functor, t.target_functor
    if F.source != G.source or F.target != G.target:
        return [Violation("CategoryMismatch", (), "functors are not parallel")]
    shape, c = F.source, F.target
    if set(t.components) != set(shape.objects):
        return [Violation("TotalityViolation", (), "components not total on shape objects")]
    out = []
    for j in shape.objects:
        comp = t.components[j]
        if comp not in c.graph.src or c.src(comp) != F.object_map[j] or c.tgt(comp) != G.object_map[j]:
            out.append(Violation("TypingViolation", (j,), f"component {comp!r} is not F(j) -> G(j)"))
    if out:
        return out
    for n in shape.morphisms:
        j, k = shape.src(n), shape.tgt(n)
        lhs = c.compose(F.morphism_map[n], t.components[k])
        rhs = c.compose(t.components[j], G.morphism_map[n])
        if lhs != rhs:
            out.append(Violation(NATURALITY, (n,), f"{lhs!r} != {rhs!r}"))
    return out


def validate_natural_transformation(t: NaturalTransformation) -> NaturalTransformation:
    problems = natural_transformation_violations(t)
    if problems:
        raise FunctorValidationError(problems)
    return t
