"""Embedded classical corpus with frozen expected invariants.

The expected ``(r, delta, mu)`` values below were produced by running the
implicit oracle on each germ and recording its output; the test suite
recomputes them from scratch (and against the Brieskorn formula for
``y**a - x**b``) so none of them is taken on authority.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .documents import _read, germ_from_dict, germ_to_dict
from .errors import DocumentError
from .germ import Branch, CurveGerm


@dataclass(frozen=True)
class CorpusEntry:
    germ: CurveGerm
    r: int
    delta: int
    mu: int

    @property
    def name(self) -> str:
        return self.germ.name


def _mono(a: int, b: int, cy: int = 1) -> Branch:
    """``(t**a, cy*t**b)``; ``b = 0`` stands for the zero component."""
    return Branch.polynomial({a: 1} if a else {}, {b: cy} if b else {})


def _line(p: int, q: int) -> Branch:
    """The line through ``(p, q)``, parameterized ``t -> (p t, q t)``."""
    return Branch.polynomial({1: p} if p else {}, {1: q} if q else {})


def _entry(name: str, branches: list[Branch], r: int, delta: int, mu: int) -> CorpusEntry:
    return CorpusEntry(CurveGerm(tuple(branches), name), r, delta, mu)


DEFAULT_CORPUS: tuple[CorpusEntry, ...] = (
    _entry("smooth", [_mono(1, 2)], 1, 0, 0),
    _entry("node", [_line(1, 0), _line(0, 1)], 2, 1, 1),
    _entry("cusp", [_mono(2, 3)], 1, 1, 2),
    _entry("tacnode", [_mono(1, 2), _mono(1, 2, -1)], 2, 2, 3),
    _entry("A4", [_mono(2, 5)], 1, 2, 4),
    _entry("A6", [_mono(2, 7)], 1, 3, 6),
    _entry("E6", [_mono(3, 4)], 1, 3, 6),
    _entry("E8", [_mono(3, 5)], 1, 4, 8),
    _entry("triple", [_line(1, 0), _line(0, 1), _line(1, 1)], 3, 3, 4),
    _entry("quadruple", [_line(1, 0), _line(0, 1), _line(1, 1), _line(1, -1)], 4, 6, 9),
)


def corpus_to_list(entries: tuple[CorpusEntry, ...] | list[CorpusEntry]) -> list[dict]:
    return [
        {**germ_to_dict(e.germ), "expected": {"r": e.r, "delta": e.delta, "mu": e.mu}}
        for e in entries
    ]


def load_corpus(path: str | Path) -> list[CorpusEntry]:
    """Read a corpus file: a JSON list of germ documents with an ``expected`` block."""
    text = _read(path)
    try:
        raw: Any = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None
    if not isinstance(raw, list):
        raise DocumentError("corpus", "expected a list of entries")
    out = []
    for i, item in enumerate(raw):
        if not isinstance(item, dict) or not isinstance(item.get("expected"), dict):
            raise DocumentError(f"corpus entry {i}", "needs an 'expected' object with r, delta, mu")
        exp = item["expected"]
        if not all(isinstance(exp.get(k), int) for k in ("r", "delta", "mu")):
            raise DocumentError(f"corpus entry {i}", "expected r, delta, mu must be integers")
        doc = {k: v for k, v in item.items() if k != "expected"}
        try:
            germ = germ_from_dict(doc)
        except DocumentError as exc:
            raise DocumentError(f"corpus entry {i}", str(exc)) from None
        out.append(CorpusEntry(germ, exp["r"], exp["delta"], exp["mu"]))
    return out
