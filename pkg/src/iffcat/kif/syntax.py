"""Analysis of S-expressions into KIF sentences.

Binding lists follow the dialect's usage: a flat sequence in which each
variable may be followed by a sort guard ``(S ?v)`` whose last argument is
that variable, e.g. ``(?c (CAT$category ?c) ?o ((CAT$object ?c) ?o))``. The
guard's head ``S`` denotes the finite class the variable ranges over and may
mention earlier variables of the same list. A nested pair ``(?v (S ?v))`` is
accepted too.
"""

from __future__ import annotations

from dataclasses import dataclass

from .sexpr import Atom, SList, to_text


class AnalysisError(ValueError):
    def __init__(self, msg, node=None):
        where = ""
        if node is not None and getattr(node, "line", 0):
            where = f" (line {node.line}, column {node.col})"
        super().__init__(msg + where)


# --- AST -------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class App:
    head: object
    args: tuple


@dataclass(frozen=True)
class Tup:
    items: tuple


@dataclass(frozen=True)
class Binder:
    var: str
    sort: object | None  # term denoting the class enumerated, or None


@dataclass(frozen=True)
class The:
    binder: Binder
    body: object


@dataclass(frozen=True)
class Eq:
    left: object
    right: object


@dataclass(frozen=True)
class Not:
    body: object


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


@dataclass(frozen=True)
class Implies:
    premise: object
    conclusion: object


@dataclass(frozen=True)
class Iff:
    left: object
    right: object


@dataclass(frozen=True)
class Forall:
    binders: tuple
    body: object


@dataclass(frozen=True)
class Exists:
    binders: tuple
    body: object


@dataclass(frozen=True)
class ExistsUnique:
    binders: tuple
    body: object


@dataclass(frozen=True)
class Declaration:
    kind: str
    args: tuple


@dataclass(frozen=True)
class Sentence:
    """An analyzed top-level form with its source text and label."""

    node: object
    text: str
    label: str = ""
    line: int = 0

    @property
    def is_declaration(self) -> bool:
        return isinstance(self.node, Declaration)


DECLARATION_ARITY = {
    "KIF$function": (1, 1),
    "KIF$class": (1, 1),
    "KIF$relation": (1, 1),
    "KIF$signature": (2, None),
}

QUANTIFIERS = {"forall": Forall, "exists": Exists, "exists-unique": ExistsUnique}
CONNECTIVES = {"=", "not", "and", "or", "=>", "<=>", "the"} | set(QUANTIFIERS)
UNSUPPORTED = {"if", "cond", "lambda", "kappa", "setof", "setofall", "listof",
               "holds", "value", "quote", "<=", "exists!", "iota"}


def _text(x):
    return x.text if isinstance(x, Atom) else None


def _parse_binders(spec, node, bound: frozenset):
    if isinstance(spec, Atom):
        if not spec.is_var:
            raise AnalysisError(f"binder {spec.text!r} is not a variable", spec)
        return (Binder(spec.text, None),), bound | {spec.text}
    if not isinstance(spec, SList) or spec.bracket:
        raise AnalysisError("malformed binding list", node)
    items = list(spec.items)
    binders = []
    i = 0
    while i < len(items):
        it = items[i]
        if isinstance(it, SList) and len(it) == 2 and isinstance(it[0], Atom) and it[0].is_var:
            var, guard = it[0].text, it[1]
            i += 1
        elif isinstance(it, Atom) and it.is_var:
            var, guard = it.text, None
            nxt = items[i + 1] if i + 1 < len(items) else None
            if isinstance(nxt, SList) and not (nxt.items and isinstance(nxt[0], Atom)
                                               and nxt[0].is_var):
                guard = nxt
                i += 2
            else:
                i += 1
        else:
            raise AnalysisError(f"malformed binding list near {to_text(it)!r}", it)
        sort = None
        if guard is not None:
            if not (isinstance(guard, SList) and not guard.bracket and len(guard) == 2
                    and _text(guard[1]) == var):
                raise AnalysisError(
                    f"sort guard {to_text(guard)!r} must have the form (S {var})", guard)
            sort = _term(guard[0], bound)
        binders.append(Binder(var, sort))
        bound = bound | {var}
    if not binders:
        raise AnalysisError("empty binding list", node)
    return tuple(binders), bound


def _term(x, bound: frozenset):
    if isinstance(x, Atom):
        if x.is_var:
            if x.text not in bound:
                raise AnalysisError(f"unbound variable {x.text}", x)
            return Var(x.text)
        if x.text in CONNECTIVES or x.text in UNSUPPORTED:
            raise AnalysisError(f"{x.text!r} used as a term", x)
        return Const(x.text)
    if x.bracket:
        return Tup(tuple(_term(i, bound) for i in x.items))
    if not x.items:
        raise AnalysisError("empty application", x)
    head = x.items[0]
    h = _text(head)
    if h == "the":
        if len(x) != 3:
            raise AnalysisError("'the' takes a binder and a body", x)
        binders, inner = _parse_binders(x[1], x, bound)
        if len(binders) != 1:
            raise AnalysisError("'the' binds exactly one variable", x)
        return The(binders[0], _formula(x[2], inner))
    if h in CONNECTIVES:
        raise AnalysisError(f"formula {h!r} used as a term", x)
    if h in UNSUPPORTED:
        raise AnalysisError(f"unknown special form {h!r}", x)
    return App(_term(head, bound), tuple(_term(a, bound) for a in x.items[1:]))


def _formula(x, bound: frozenset):
    if isinstance(x, Atom) or x.bracket or not x.items:
        return _term(x, bound)
    h = _text(x.items[0])
    args = x.items[1:]
    if h == "=":
        if len(args) != 2:
            raise AnalysisError("'=' takes two arguments", x)
        return Eq(_term(args[0], bound), _term(args[1], bound))
    if h == "not":
        if len(args) != 1:
            raise AnalysisError("'not' takes one argument", x)
        return Not(_formula(args[0], bound))
    if h in ("and", "or"):
        parts = tuple(_formula(a, bound) for a in args)
        return And(parts) if h == "and" else Or(parts)
    if h in ("=>", "<=>"):
        if len(args) != 2:
            raise AnalysisError(f"{h!r} takes two arguments", x)
        a, b = _formula(args[0], bound), _formula(args[1], bound)
        return Implies(a, b) if h == "=>" else Iff(a, b)
    if h in QUANTIFIERS:
        if len(args) != 2:
            raise AnalysisError(f"{h!r} takes a binding list and a body", x)
        binders, inner = _parse_binders(args[0], x, bound)
        return QUANTIFIERS[h](binders, _formula(args[1], inner))
    return _term(x, bound)


def analyze(form) -> Sentence:
    """Turn one top-level form into a :class:`Sentence`.

    Declarations (``KIF$function``, ``KIF$signature``, ...) are recorded with
    an arity check and never evaluated.
    """
    text = to_text(form)
    label = getattr(form, "label", "")
    line = getattr(form, "line", 0)
    if isinstance(form, SList) and form.items and _text(form.items[0]) in DECLARATION_ARITY:
        kind = form.items[0].text
        lo, hi = DECLARATION_ARITY[kind]
        n = len(form) - 1
        if n < lo or (hi is not None and n > hi):
            raise AnalysisError(f"{kind} declaration has {n} argument(s)", form)
        return Sentence(Declaration(kind, tuple(to_text(a) for a in form.items[1:])),
                        text, label, line)
    return Sentence(_formula(form, frozenset()), text, label, line)


def free_constants(node) -> set:
    """Every constant name occurring in an analyzed node."""
    out = set()

    def walk(n):
        if isinstance(n, Const):
            out.add(n.name)
        elif isinstance(n, (list, tuple)):
            for i in n:
                walk(i)
        elif hasattr(n, "__dataclass_fields__"):
            for f in n.__dataclass_fields__:
                walk(getattr(n, f))

    walk(node)
    return out
