"""S-expression reader and printer for the KIF dialect.

Parentheses build lists, square brackets build tuple lists, ``;`` starts a
line comment. A comment of the form ``;@ label`` attaches ``label`` to the
next top-level form, which is how corpus files name their sentences.
"""

from __future__ import annotations

from dataclasses import dataclass, field

VARIABLE = "variable"
NAMESPACED = "namespaced"
QUALIFIED = "qualified"
SYMBOL = "symbol"

_DELIMS = "()[];"


class KifSyntaxError(SyntaxError):
    def __init__(self, msg, line, col):
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line, self.col = line, col


@dataclass(frozen=True)
class Atom:
    text: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    @property
    def kind(self) -> str:
        if self.text.startswith("?"):
            return VARIABLE
        if "$" in self.text:
            return NAMESPACED
        if "#" in self.text:
            return QUALIFIED
        return SYMBOL

    @property
    def is_var(self) -> bool:
        return self.text.startswith("?")


@dataclass(frozen=True)
class SList:
    items: tuple
    bracket: bool = False
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)
    label: str = field(default="", compare=False)

    def __len__(self):
        return len(self.items)

    def __getitem__(self, i):
        return self.items[i]

    @property
    def head(self):
        return self.items[0] if self.items else None


def _tokens(text: str):
    line, col, i, n = 1, 1, 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        if ch == ";":
            j = text.find("\n", i)
            j = n if j < 0 else j
            comment = text[i:j]
            if comment.startswith(";@"):
                yield ("label", comment[2:].strip(), line, col)
            col += j - i
            i = j
            continue
        if ch in "()[]":
            yield (ch, ch, line, col)
            i, col = i + 1, col + 1
            continue
        j = i
        while j < n and not text[j].isspace() and text[j] not in _DELIMS:
            j += 1
        yield ("atom", text[i:j], line, col)
        col += j - i
        i = j


_CLOSER = {"(": ")", "[": "]"}


def parse(text: str) -> list:
    """Read every top-level form in ``text``."""
    forms = []
    stack: list[tuple[str, list, int, int]] = []
    pending_label = ""
    for kind, val, line, col in _tokens(text):
        if kind == "label":
            if not stack:
                pending_label = val
            continue
        if kind in ("(", "["):
            stack.append((kind, [], line, col))
            continue
        if kind in (")", "]"):
            if not stack:
                raise KifSyntaxError(f"unexpected {val!r}", line, col)
            opener, items, l0, c0 = stack.pop()
            if _CLOSER[opener] != val:
                raise KifSyntaxError(f"{val!r} closes {opener!r} opened at line {l0}, column {c0}",
                                     line, col)
            node = SList(tuple(items), opener == "[", l0, c0,
                         pending_label if not stack else "")
            if stack:
                stack[-1][1].append(node)
            else:
                forms.append(node)
                pending_label = ""
            continue
        atom = Atom(val, line, col)
        if stack:
            stack[-1][1].append(atom)
        else:
            forms.append(atom)
    if stack:
        opener, _, l0, c0 = stack[-1]
        raise KifSyntaxError(f"unbalanced {opener!r}: never closed", l0, c0)
    return forms


def to_text(x) -> str:
    """Print a form on one line with single spaces."""
    if isinstance(x, Atom):
        return x.text
    open_, close = ("[", "]") if x.bracket else ("(", ")")
    return open_ + " ".join(to_text(i) for i in x.items) + close


def pretty(x, width: int = 72, indent: int = 0) -> str:
    flat = to_text(x)
    if isinstance(x, Atom) or len(flat) + indent <= width or len(x.items) < 2:
        return flat
    open_, close = ("[", "]") if x.bracket else ("(", ")")
    head = to_text(x.items[0])
    pad = " " * (indent + 2)
    rest = [pad + pretty(i, width, indent + 2) for i in x.items[1:]]
    return open_ + head + "\n" + "\n".join(rest) + close
