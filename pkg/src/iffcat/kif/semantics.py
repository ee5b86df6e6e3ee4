"""Finite models and the evaluator for analyzed KIF sentences.

A model maps names to values. A value is a finite class (``frozenset``), a
function (:class:`FiniteFunction` with an explicit table, or
:class:`LazyFunction` backed by a Python callable), or a ground element
(anything hashable). Applying a class tests membership; applying a function
looks up its argument, with several arguments or a bracket tuple forming one
tuple key. Quantifiers enumerate the class named by the binder's sort guard.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping

from ..graph import sorted_ids
from .syntax import (
    And,
    App,
    Const,
    Eq,
    Exists,
    ExistsUnique,
    Forall,
    Iff,
    Implies,
    Not,
    Or,
    The,
    Tup,
    Var,
)


class EvalError(Exception):
    """Evaluation could not produce a truth value."""


class UnknownSymbol(EvalError):
    pass


class ArityMismatch(EvalError):
    pass


class DescriptionFailure(EvalError):
    pass


class NonFiniteSort(EvalError):
    pass


class OutsideDomain(EvalError):
    pass


class FiniteFunction:
    """A function given by a finite table."""

    __slots__ = ("table", "name")

    def __init__(self, table: Mapping, name: str = ""):
        self.table = dict(table)
        self.name = name

    def __call__(self, key):
        try:
            return self.table[key]
        except KeyError:
            raise OutsideDomain(f"{self.name or 'function'} is undefined at {describe(key)}") from None
        except TypeError:
            raise OutsideDomain(f"{self.name or 'function'} applied to an unhashable value") from None

    def __eq__(self, other):
        return isinstance(other, FiniteFunction) and self.table == other.table

    def __hash__(self):
        return hash(frozenset(self.table.items()))

    def __repr__(self):
        return f"<FiniteFunction {self.name} |{len(self.table)}|>"

    def replaced(self, key, value) -> "FiniteFunction":
        table = dict(self.table)
        table[key] = value
        return FiniteFunction(table, self.name)


class LazyFunction:
    """A function computed on demand. Equality is identity."""

    __slots__ = ("fn", "name")

    def __init__(self, fn: Callable, name: str = ""):
        self.fn, self.name = fn, name

    def __call__(self, key):
        try:
            return self.fn(*key) if isinstance(key, tuple) else self.fn(key)
        except EvalError:
            raise
        except Exception as exc:  # noqa: BLE001 - surfaced as a domain error
            raise OutsideDomain(f"{self.name}: {exc}") from exc

    def __repr__(self):
        return f"<LazyFunction {self.name}>"


def describe(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, tuple):
        return "[" + " ".join(describe(i) for i in v) + "]"
    if isinstance(v, frozenset):
        return "{" + " ".join(describe(i) for i in sorted_ids(v)) + "}"
    name = getattr(v, "name", None)
    if isinstance(name, str) and name:
        return name
    return repr(v)


def _subclass(a, b):
    if not isinstance(a, frozenset) or not isinstance(b, frozenset):
        raise ArityMismatch("subclass relates two classes")
    return a <= b


def _empty(a):
    if not isinstance(a, frozenset):
        raise ArityMismatch("empty applies to a class")
    return not a


BUILTINS = {
    "SET$subclass": LazyFunction(_subclass, "SET$subclass"),
    "KIF$subclass": LazyFunction(_subclass, "KIF$subclass"),
    "SET$empty": LazyFunction(_empty, "SET$empty"),
    "empty": LazyFunction(_empty, "empty"),
}


class KifModel:
    """Interpretation of names. Unprefixed names fall back to each namespace
    in ``namespaces`` in order, then to the logical builtins."""

    def __init__(self, values: Mapping, namespaces: Iterable[str] = (), universe=None):
        self.values = dict(values)
        self.namespaces = tuple(namespaces)
        self.universe = universe

    def lookup(self, name: str):
        if name in self.values:
            return self.values[name]
        if "$" not in name:
            for ns in self.namespaces:
                q = f"{ns}${name}"
                if q in self.values:
                    return self.values[q]
        if name in BUILTINS:
            return BUILTINS[name]
        raise UnknownSymbol(name)

    def replaced(self, name: str, value) -> "KifModel":
        clone = object.__new__(type(self))
        clone.__dict__.update(self.__dict__)
        clone.values = dict(self.values)
        clone.values[name] = value
        return clone


def apply(head, args: list):
    if isinstance(head, frozenset):
        key = args[0] if len(args) == 1 else tuple(args)
        try:
            return key in head
        except TypeError:
            return False
    if isinstance(head, (FiniteFunction, LazyFunction)):
        if not args:
            raise ArityMismatch(f"{head.name} applied to nothing")
        return head(args[0] if len(args) == 1 else tuple(args))
    raise ArityMismatch(f"{describe(head)} is neither a class nor a function")


class Evaluator:
    def __init__(self, model: KifModel):
        self.model = model

    # terms
    def term(self, node, env: dict):
        if isinstance(node, Var):
            return env[node.name]
        if isinstance(node, Const):
            return self.model.lookup(node.name)
        if isinstance(node, Tup):
            return tuple(self.term(i, env) for i in node.items)
        if isinstance(node, App):
            head = self.term(node.head, env)
            return apply(head, [self.term(a, env) for a in node.args])
        if isinstance(node, The):
            found = [env2[node.binder.var]
                     for env2 in self.assignments((node.binder,), env)
                     if self.holds(node.body, env2)]
            if len(found) != 1:
                raise DescriptionFailure(
                    f"'the {node.binder.var}' has {len(found)} satisfiers")
            return found[0]
        return self.holds(node, env)

    def domain(self, binder, env):
        if binder.sort is None:
            if self.model.universe is None:
                raise NonFiniteSort(f"{binder.var} has no sort and the model has no universe")
            return sorted_ids(self.model.universe)
        cls = self.term(binder.sort, env)
        if not isinstance(cls, frozenset):
            raise NonFiniteSort(f"sort of {binder.var} does not denote a finite class")
        return sorted_ids(cls)

    def assignments(self, binders, env):
        if not binders:
            yield env
            return
        first, rest = binders[0], binders[1:]
        for v in self.domain(first, env):
            env2 = dict(env)
            env2[first.var] = v
            yield from self.assignments(rest, env2)

    # formulas
    def holds(self, node, env: dict) -> bool:
        if isinstance(node, Eq):
            return self.term(node.left, env) == self.term(node.right, env)
        if isinstance(node, Not):
            return not self.holds(node.body, env)
        if isinstance(node, And):
            return all(self.holds(p, env) for p in node.parts)
        if isinstance(node, Or):
            return any(self.holds(p, env) for p in node.parts)
        if isinstance(node, Implies):
            return (not self.holds(node.premise, env)) or self.holds(node.conclusion, env)
        if isinstance(node, Iff):
            return self.holds(node.left, env) == self.holds(node.right, env)
        if isinstance(node, Forall):
            return all(self.holds(node.body, e) for e in self.assignments(node.binders, env))
        if isinstance(node, Exists):
            return any(self.holds(node.body, e) for e in self.assignments(node.binders, env))
        if isinstance(node, ExistsUnique):
            n = 0
            for e in self.assignments(node.binders, env):
                if self.holds(node.body, e):
                    n += 1
                    if n > 1:
                        return False
            return n == 1
        value = self.term(node, env)
        if not isinstance(value, bool):
            raise ArityMismatch(f"{describe(value)} is not a truth value")
        return value

    def counterexample(self, node, env: dict) -> dict | None:
        """The first falsifying assignment of the outer universal variables
        (descending through conjunctions, implications and nested foralls),
        or ``None`` when ``node`` holds."""
        if isinstance(node, Forall):
            for e in self.assignments(node.binders, env):
                if not self.holds(node.body, e):
                    inner = self.counterexample(node.body, e)
                    return inner if inner is not None else e
            return None
        if isinstance(node, And):
            for p in node.parts:
                if not self.holds(p, env):
                    return self.counterexample(p, env) or dict(env)
            return None
        if isinstance(node, Implies) and isinstance(node.conclusion, (Forall, And)):
            if self.holds(node.premise, env):
                return self.counterexample(node.conclusion, env)
            return None
        return None if self.holds(node, env) else dict(env)


def evaluate(model: KifModel, sentence) -> bool:
    """Truth value of a closed sentence (or bare analyzed node)."""
    node = getattr(sentence, "node", sentence)
    return Evaluator(model).holds(node, {})


def count_satisfiers(model: KifModel, binders, body, env=None) -> int:
    ev = Evaluator(model)
    return sum(1 for e in ev.assignments(tuple(binders), env or {}) if ev.holds(body, e))


__all__ = [
    "ArityMismatch", "DescriptionFailure", "EvalError", "Evaluator", "FiniteFunction",
    "KifModel", "LazyFunction", "NonFiniteSort", "OutsideDomain", "UnknownSymbol",
    "apply", "count_satisfiers", "describe", "evaluate",
]
