"""Finite classifications and infomorphisms.

A classification is a set of instances, a set of types and an incidence
relation between them. An infomorphism ``f: A -> B`` maps types forward
(``A`` to ``B``) and instances backward (``B`` to ``A``) subject to the
fundamental condition::

    instance_map(b) |=_A t   <=>   b |=_B type_map(t)

Classifications with infomorphisms form a category; pushouts in it are
computed here by the usual construction (types glued along the span,
instances paired when they agree on the common source) and checked against
bounded universes of competing cocones.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, permutations, product
from typing import Hashable, Iterable, Mapping

from .category import FiniteCategory, RawCategoryTables, Violation, validate_category
from .graph import FiniteGraph, sorted_ids

Ident = Hashable

FUNDAMENTAL = "FundamentalConditionViolation"


class ClassificationError(ValueError):
    pass


class InfomorphismError(ClassificationError):
    def __init__(self, violations):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations[:3]))


class NotClosedUnderComposition(ClassificationError):
    pass


class MissingIdentity(ClassificationError):
    pass


class SourceMismatch(ClassificationError):
    pass


class IllFormedQuotient(ClassificationError):
    pass


@dataclass(frozen=True, eq=False)
class Classification:
    instances: tuple
    types: tuple
    incidence: frozenset
    name: str = ""

    def __post_init__(self):
        inst, typ = tuple(self.instances), tuple(self.types)
        if len(set(inst)) != len(inst) or len(set(typ)) != len(typ):
            raise ClassificationError("duplicate instance or type identifiers")
        object.__setattr__(self, "instances", sorted_ids(inst))
        object.__setattr__(self, "types", sorted_ids(typ))
        inc = frozenset(tuple(p) for p in self.incidence)
        si, st = set(inst), set(typ)
        bad = [p for p in inc if p[0] not in si or p[1] not in st]
        if bad:
            raise ClassificationError(f"incidence mentions undeclared elements: {sorted_ids(bad)}")
        object.__setattr__(self, "incidence", inc)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Classification):
            return NotImplemented
        return (self.instances == other.instances and self.types == other.types
                and self.incidence == other.incidence)

    def __hash__(self):
        return hash((self.instances, self.types, self.incidence))

    def __repr__(self):
        return (f"<Classification {self.name or '?'}: {len(self.instances)} instances, "
                f"{len(self.types)} types>")

    def satisfies(self, a, t) -> bool:
        return (a, t) in self.incidence


@dataclass(frozen=True, eq=False)
class Infomorphism:
    source: Classification
    target: Classification
    type_map: Mapping
    instance_map: Mapping
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "type_map", dict(self.type_map))
        object.__setattr__(self, "instance_map", dict(self.instance_map))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Infomorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.type_map == other.type_map and self.instance_map == other.instance_map)

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.type_map.items()),
                     frozenset(self.instance_map.items())))

    def __repr__(self):
        return f"<Infomorphism {self.name or '?'}: {self.source.name} -> {self.target.name}>"


def infomorphism_violations(f: Infomorphism) -> list[Violation]:
    a, b = f.source, f.target
    out = []
    if set(f.type_map) != set(a.types) or not set(f.type_map.values()) <= set(b.types):
        out.append(Violation("TotalityViolation", ("types",), "type map is not total A -> B"))
    if set(f.instance_map) != set(b.instances) or \
            not set(f.instance_map.values()) <= set(a.instances):
        out.append(Violation("TotalityViolation", ("instances",),
                             "instance map is not total B -> A"))
    if out:
        return out
    for x in b.instances:
        for t in a.types:
            if a.satisfies(f.instance_map[x], t) != b.satisfies(x, f.type_map[t]):
                out.append(Violation(FUNDAMENTAL, (x, t),
                                     f"f^({x!r}) |= {t!r} disagrees with {x!r} |= f({t!r})"))
    return out


def validate_infomorphism(f: Infomorphism) -> Infomorphism:
    problems = infomorphism_violations(f)
    if problems:
        raise InfomorphismError(problems)
    return f


def identity_infomorphism(a: Classification) -> Infomorphism:
    return Infomorphism(a, a, {t: t for t in a.types}, {x: x for x in a.instances},
                        f"id_{a.name}")


def compose_infomorphisms(f: Infomorphism, g: Infomorphism, name: str = "") -> Infomorphism:
    """First ``f: A -> B``, then ``g: B -> C``."""
    if f.target != g.source:
        raise SourceMismatch("target of the first infomorphism is not the source of the second")
    return Infomorphism(
        f.source, g.target,
        {t: g.type_map[u] for t, u in f.type_map.items()},
        {x: f.instance_map[y] for x, y in g.instance_map.items()},
        name or f"{f.name};{g.name}",
    )


def all_infomorphisms(a: Classification, b: Classification) -> list[Infomorphism]:
    """Every infomorphism ``a -> b``.

    For a fixed instance map the fundamental condition says each source type
    must go to a target type whose extent is the pulled-back extent, so type
    images are chosen from those candidates only.
    """
    out = []
    b_ext = {u: frozenset(x for x in b.instances if b.satisfies(x, u)) for u in b.types}
    for images in product(a.instances, repeat=len(b.instances)):
        imap = dict(zip(b.instances, images))
        choices = []
        for t in a.types:
            pulled = frozenset(x for x in b.instances if a.satisfies(imap[x], t))
            choices.append([u for u in b.types if b_ext[u] == pulled])
        for chosen in product(*choices):
            out.append(Infomorphism(a, b, dict(zip(a.types, chosen)), imap))
    return out


def as_abstract_category(clss: Iterable[Classification], infos: Iterable[Infomorphism],
                         name: str = "Classification") -> FiniteCategory:
    """The finite category with the given classifications as objects and the
    given infomorphisms as morphisms, identified by their names.

    The infomorphism family must contain every identity and be closed under
    composition; nothing is added silently.
    """
    clss, infos = list(clss), list(infos)
    cls_names = [c.name for c in clss]
    info_names = [f.name for f in infos]
    if not all(cls_names) or len(set(cls_names)) != len(cls_names):
        raise ClassificationError("classifications need distinct non-empty names")
    if not all(info_names) or len(set(info_names)) != len(info_names):
        raise ClassificationError("infomorphisms need distinct non-empty names")
    obj_of = {c: c.name for c in clss}
    if len(obj_of) != len(clss):
        raise ClassificationError("two family members are the same classification")
    for f in infos:
        for end in (f.source, f.target):
            if end not in obj_of:
                raise ClassificationError(f"{f.name} touches a classification outside the family")
        validate_infomorphism(f)
    lookup = {f: f.name for f in infos}
    if len(lookup) != len(infos):
        raise ClassificationError("two family members are the same infomorphism")

    identities = {}
    for c in clss:
        ident = identity_infomorphism(c)
        if ident not in lookup:
            raise MissingIdentity(f"no identity infomorphism on {c.name}")
        identities[c.name] = lookup[ident]
    composition = {}
    for f in infos:
        for g in infos:
            if f.target != g.source:
                continue
            h = compose_infomorphisms(f, g)
            if h not in lookup:
                raise NotClosedUnderComposition(f"{f.name};{g.name} is not in the family")
            composition[(f.name, g.name)] = lookup[h]
    graph = FiniteGraph.from_edges(
        [c.name for c in clss],
        [(f.name, obj_of[f.source], obj_of[f.target]) for f in infos],
    )
    return validate_category(RawCategoryTables(graph, composition, identities, name))


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@dataclass
class ClassificationPushout:
    left: Infomorphism
    right: Infomorphism
    apex: Classification
    inj1: Infomorphism
    inj2: Infomorphism
    type_classes: dict = field(default_factory=dict)


def pushout_classification(f: Infomorphism, g: Infomorphism,
                           name: str = "") -> ClassificationPushout:
    """Pushout of the span ``B <-f- A -g-> C``.

    Apex types are the classes of ``types(B) + types(C)`` under the
    equivalence generated by ``f(t) ~ g(t)``; apex instances are the pairs
    ``(b, c)`` with ``f^(b) == g^(c)``.
    """
    if f.source != g.source:
        raise SourceMismatch("pushout legs must share their source classification")
    validate_infomorphism(f)
    validate_infomorphism(g)
    B, C = f.target, g.target
    tagged = [(1, u) for u in B.types] + [(2, v) for v in C.types]
    parent = {x: x for x in tagged}
    for t in f.source.types:
        ra, rb = _find(parent, (1, f.type_map[t])), _find(parent, (2, g.type_map[t]))
        if ra != rb:
            parent[rb] = ra
    classes: dict = {}
    for x in tagged:
        classes.setdefault(_find(parent, x), []).append(x)
    label_of = {}
    type_classes = {}
    for members in classes.values():
        members = sorted(members, key=lambda m: (m[0], str(m[1])))
        label = "|".join(f"{side}:{t}" for side, t in members)
        type_classes[label] = members
        for m in members:
            label_of[m] = label
    pairs = [(b, c) for b in B.instances for c in C.instances
             if f.instance_map[b] == g.instance_map[c]]
    inst_label = {p: f"<{p[0]},{p[1]}>" for p in pairs}
    if len(set(inst_label.values())) != len(pairs) or len(type_classes) != len(classes):
        raise IllFormedQuotient("element labels collide; rename instances or types")

    incidence = set()
    for (b, c) in pairs:
        for label, members in type_classes.items():
            verdicts = {B.satisfies(b, t) if side == 1 else C.satisfies(c, t)
                        for side, t in members}
            if len(verdicts) != 1:
                raise IllFormedQuotient(f"incidence of {inst_label[(b, c)]} on {label} "
                                        "depends on the representative")
            if verdicts.pop():
                incidence.add((inst_label[(b, c)], label))
    apex = Classification(tuple(inst_label.values()), tuple(type_classes), incidence,
                          name or f"{B.name}+[{f.source.name}]{C.name}")
    inj1 = Infomorphism(B, apex, {u: label_of[(1, u)] for u in B.types},
                        {inst_label[p]: p[0] for p in pairs}, f"inj1_{apex.name}")
    inj2 = Infomorphism(C, apex, {v: label_of[(2, v)] for v in C.types},
                        {inst_label[p]: p[1] for p in pairs}, f"inj2_{apex.name}")
    validate_infomorphism(inj1)
    validate_infomorphism(inj2)
    return ClassificationPushout(f, g, apex, inj1, inj2, type_classes)


@dataclass(frozen=True)
class ClassificationCocone:
    apex: Classification
    leg1: Infomorphism
    leg2: Infomorphism


def cocone_commutes(po: ClassificationPushout, k: ClassificationCocone) -> bool:
    if k.leg1.source != po.left.target or k.leg2.source != po.right.target:
        return False
    if k.leg1.target != k.apex or k.leg2.target != k.apex:
        return False
    if infomorphism_violations(k.leg1) or infomorphism_violations(k.leg2):
        return False
    return compose_infomorphisms(po.left, k.leg1) == compose_infomorphisms(po.right, k.leg2)


def cocones_into(po: ClassificationPushout, d: Classification) -> list[ClassificationCocone]:
    """Every commuting cocone over the span with apex ``d``."""
    legs2 = all_infomorphisms(po.right.target, d)
    out = []
    for h1 in all_infomorphisms(po.left.target, d):
        via1 = compose_infomorphisms(po.left, h1)
        for h2 in legs2:
            if compose_infomorphisms(po.right, h2) == via1:
                out.append(ClassificationCocone(d, h1, h2))
    return out


def exhaustive_mediators(po: ClassificationPushout, k: ClassificationCocone) -> list[Infomorphism]:
    """All infomorphisms ``m: apex -> k.apex`` with ``inj1;m == leg1`` and
    ``inj2;m == leg2``.

    The triangle equations constrain each apex type and each test instance
    separately, so the search takes, for every element, all images allowed
    by its own equations and then every combination of those; no map that
    satisfies the triangles is skipped. Each combination is then checked
    against the fundamental condition."""
    P, D = po.apex, k.apex
    type_choices = []
    for tau in P.types:
        allowed = [d for d in D.types
                   if all(d == k.leg1.type_map[u] for u, x in po.inj1.type_map.items() if x == tau)
                   and all(d == k.leg2.type_map[v] for v, x in po.inj2.type_map.items() if x == tau)]
        type_choices.append(allowed)
    inst_choices = []
    for x in D.instances:
        allowed = [p for p in P.instances
                   if po.inj1.instance_map[p] == k.leg1.instance_map[x]
                   and po.inj2.instance_map[p] == k.leg2.instance_map[x]]
        inst_choices.append(allowed)
    out = []
    for timages in product(*type_choices):
        tm = dict(zip(P.types, timages))
        for iimages in product(*inst_choices):
            m = Infomorphism(P, D, tm, dict(zip(D.instances, iimages)))
            if not infomorphism_violations(m):
                out.append(m)
    return out


@dataclass
class UniversalityReport:
    cocones: int
    rejected: int
    mediator_counts: list
    bound: str = ""

    @property
    def passed(self) -> bool:
        return self.cocones > 0 and all(n == 1 for n in self.mediator_counts)


def verify_pushout_universality(po: ClassificationPushout,
                                cocones: Iterable[ClassificationCocone],
                                bound: str = "") -> UniversalityReport:
    """Count mediators for every commuting test cocone. Non-commuting inputs
    are rejected before any search and reported separately. The check covers
    only the supplied universe, never all classifications."""
    counts, rejected = [], 0
    for k in cocones:
        if not cocone_commutes(po, k):
            rejected += 1
            continue
        counts.append(len(exhaustive_mediators(po, k)))
    return UniversalityReport(len(counts), rejected, counts, bound)


def small_classifications(max_instances: int, max_types: int) -> list[Classification]:
    """All classifications on ``{0..k-1} x {0..l-1}`` for ``k <= max_instances``
    and ``1 <= l <= max_types`` (labelled, not up to isomorphism)."""
    out = []
    for k in range(max_instances + 1):
        for l in range(1, max_types + 1):
            insts = [f"x{i}" for i in range(k)]
            types = [f"t{j}" for j in range(l)]
            cells = list(product(insts, types))
            for bits in product((False, True), repeat=len(cells)):
                inc = {cell for cell, on in zip(cells, bits) if on}
                out.append(Classification(insts, types, inc, f"D{k}x{l}#{len(out)}"))
    return out


def random_classification(rng: random.Random, max_instances: int = 4,
                          max_types: int = 4, name: str = "") -> Classification:
    k = rng.randint(1, max_instances)
    l = rng.randint(1, max_types)
    insts = [f"x{i}" for i in range(k)]
    types = [f"t{j}" for j in range(l)]
    inc = {(x, t) for x in insts for t in types if rng.random() < 0.5}
    return Classification(insts, types, inc, name)


def bounded_test_universe(po: ClassificationPushout, seed: int = 0, n_random: int = 200,
                          max_instances: int = 4, max_types: int = 4,
                          extra: Iterable[Classification] = ()
                          ) -> tuple[list[ClassificationCocone], str]:
    """A bounded universe of test cocones for ``po``.

    Apexes: every labelled classification up to 2 instances x 2 types, the
    span's own classifications and pushout apex, anything in ``extra``, and
    ``n_random`` seeded random classifications within the given bound. For
    each apex every commuting cocone is enumerated.
    """
    rng = random.Random(seed)
    extra = list(extra)
    apexes = small_classifications(2, 2)
    apexes += [po.left.source, po.left.target, po.right.target, po.apex, *extra]
    apexes += [random_classification(rng, max_instances, max_types, f"R{i}")
               for i in range(n_random)]
    cocones = [k for d in apexes for k in cocones_into(po, d)]
    bound = (f"all classifications <=2x2, span and apex, {len(extra)} extra, "
             f"{n_random} seeded random <= {max_instances}x{max_types} (seed {seed})")
    return cocones, bound


def classifications_up_to_iso(max_instances: int, max_types: int) -> list[Classification]:
    """One representative of every isomorphism class of classifications with
    at most ``max_instances`` instances and ``max_types`` types.

    A class is a multiset of instance rows over a fixed type set, taken up to
    permuting the types; the representative is the lexicographically least
    sorted row tuple over all type permutations.
    """
    out = []
    for l in range(max_types + 1):
        rows = list(product((False, True), repeat=l))
        perms = list(permutations(range(l)))
        for k in range(max_instances + 1):
            seen = set()
            for rs in combinations_with_replacement(rows, k):
                canon = min(tuple(sorted(tuple(r[i] for i in p) for r in rs)) for p in perms)
                if canon in seen:
                    continue
                seen.add(canon)
                insts = [f"x{i}" for i in range(k)]
                types = [f"t{j}" for j in range(l)]
                inc = {(insts[i], types[j]) for i, r in enumerate(canon)
                       for j, on in enumerate(r) if on}
                out.append(Classification(insts, types, inc, f"I{k}x{l}#{len(seen) - 1}"))
    return out


def exhaustive_test_universe(po: ClassificationPushout, max_instances: int = 4,
                             max_types: int = 4) -> tuple[list[ClassificationCocone], str]:
    """Every commuting cocone whose apex has at most ``max_instances`` x
    ``max_types`` elements, up to isomorphism of the apex.

    Isomorphic apexes carry isomorphic cocone sets with equal mediator
    counts, so one representative per class covers the whole bounded
    universe.
    """
    apexes = classifications_up_to_iso(max_instances, max_types)
    cocones = [k for d in apexes for k in cocones_into(po, d)]
    bound = (f"every classification <= {max_instances}x{max_types} up to isomorphism "
             f"({len(apexes)} apexes)")
    return cocones, bound
