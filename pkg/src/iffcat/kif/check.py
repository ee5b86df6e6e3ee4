"""Sentence-by-sentence model checking of axiom files."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .semantics import EvalError, Evaluator, KifModel, describe
from .sexpr import parse
from .syntax import AnalysisError, Sentence, analyze

TRUE = "true"
FALSE = "false"
ERROR = "error"
SKIPPED = "skipped-declaration"


@dataclass
class Verdict:
    index: int
    label: str
    status: str
    text: str
    line: int = 0
    witness: dict = field(default_factory=dict)
    message: str = ""

    @property
    def name(self) -> str:
        return self.label or f"#{self.index}"

    def as_dict(self) -> dict:
        return {
            "index": self.index,
            "label": self.label,
            "line": self.line,
            "status": self.status,
            "witness": {k: describe(v) for k, v in self.witness.items()},
            "message": self.message,
        }


@dataclass
class Report:
    source: str
    verdicts: list

    def count(self, status: str) -> int:
        return sum(1 for v in self.verdicts if v.status == status)

    @property
    def ok(self) -> bool:
        return not any(v.status in (FALSE, ERROR) for v in self.verdicts)

    def failures(self) -> list:
        return [v for v in self.verdicts if v.status in (FALSE, ERROR)]

    def as_dict(self) -> dict:
        return {
            "source": self.source,
            "ok": self.ok,
            "counts": {s: self.count(s) for s in (TRUE, FALSE, ERROR, SKIPPED)},
            "sentences": [v.as_dict() for v in self.verdicts],
        }


def load_sentences(text: str) -> list[Sentence]:
    return [analyze(f) for f in parse(text)]


def check_sentence(model: KifModel, s: Sentence, index: int = 0) -> Verdict:
    if s.is_declaration:
        return Verdict(index, s.label, SKIPPED, s.text, s.line)
    ev = Evaluator(model)
    try:
        if ev.holds(s.node, {}):
            return Verdict(index, s.label, TRUE, s.text, s.line)
        witness = ev.counterexample(s.node, {}) or {}
        return Verdict(index, s.label, FALSE, s.text, s.line, witness)
    except EvalError as exc:
        return Verdict(index, s.label, ERROR, s.text, s.line,
                       message=f"{type(exc).__name__}: {exc}")


def check_text(model: KifModel, text: str, source: str = "<text>") -> Report:
    """Check every form of ``text``. Forms that fail analysis are reported as
    errors; a lexical error in the text propagates."""
    verdicts = []
    for i, form in enumerate(parse(text)):
        try:
            s = analyze(form)
        except AnalysisError as exc:
            verdicts.append(Verdict(i, getattr(form, "label", ""), ERROR, "",
                                    getattr(form, "line", 0), message=str(exc)))
            continue
        verdicts.append(check_sentence(model, s, i))
    return Report(source, verdicts)


def check_axiom_file(model: KifModel, path) -> Report:
    path = Path(path)
    return check_text(model, path.read_text(), str(path))
