"""Reading and writing germ and stratum-table documents.

Both document kinds are single JSON objects.  Coefficients are exact: a term
is a triple ``[numerator, denominator, exponent]`` of integers, so nothing
ever passes through a decimal float.

Germ document::

    {
      "name": "cusp",
      "branches": [
        {"label": "b0", "x": [[1, 1, 2]], "y": [[1, 1, 3]]}
      ],
      "precision_hint": null
    }

A branch may carry ``"precision": N``; its terms are then a power series
known modulo ``t**N`` instead of a polynomial.

Stratum-table document::

    {"n": 2, "r": 1, "chi_Xk": {"2": 1}, "upstairs": [0], "isolated_flag": true, "s": 0}
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import DocumentError
from .germ import Branch, CurveGerm
from .ledger import StratumTable
from .series import TruncatedSeries

_BRANCH_KEYS = {"label", "x", "y", "precision"}
_GERM_KEYS = {"name", "branches", "precision_hint"}
_LEDGER_KEYS = {"n", "r", "chi_Xk", "upstairs", "isolated_flag", "s", "monodromy_compatible"}


def _is_int(v: Any) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None


def _array_element_lines(text: str, key: str) -> list[int]:
    """Line numbers where the elements of the top-level array ``key`` start.

    Only used to decorate error messages, so any surprise yields ``[]``.
    """
    dec = json.JSONDecoder()
    try:
        i = text.index(f'"{key}"')
        i = text.index("[", i) + 1
        lines = []
        while True:
            while text[i] in " \t\r\n,":
                i += 1
            if text[i] == "]":
                return lines
            lines.append(text.count("\n", 0, i) + 1)
            _, i = dec.raw_decode(text, i)
    except (ValueError, IndexError):
        return []


def branch_lines(path: str | Path) -> list[int]:
    """Document line on which each branch starts (empty if unavailable)."""
    try:
        return _array_element_lines(_read(path), "branches")
    except DocumentError:
        return []


def _terms(raw: Any, where: str) -> dict[int, Fraction]:
    if not isinstance(raw, list):
        raise DocumentError(where, "expected a list of [numerator, denominator, exponent] terms")
    out: dict[int, Fraction] = {}
    for k, term in enumerate(raw):
        tw = f"{where} term {k}"
        if not (isinstance(term, list) and len(term) == 3 and all(_is_int(v) for v in term)):
            raise DocumentError(tw, "a term is [numerator, denominator, exponent] with integer entries")
        num, den, exp = term
        if den <= 0:
            raise DocumentError(tw, "denominator must be positive")
        if exp < 0:
            raise DocumentError(tw, "exponent must be non-negative")
        out[exp] = out.get(exp, Fraction(0)) + Fraction(num, den)
    return {e: c for e, c in out.items() if c}


def _branch(raw: Any, where: str) -> Branch:
    if not isinstance(raw, dict):
        raise DocumentError(where, "a branch is an object with keys x and y")
    unknown = set(raw) - _BRANCH_KEYS
    if unknown:
        raise DocumentError(where, f"unknown keys {sorted(unknown)}")
    for k in ("x", "y"):
        if k not in raw:
            raise DocumentError(where, f"missing component {k}")
    label = raw.get("label", "")
    if not isinstance(label, str):
        raise DocumentError(where, "label must be a string")
    x = _terms(raw["x"], f"{where} component x")
    y = _terms(raw["y"], f"{where} component y")
    prec = raw.get("precision")
    if prec is None:
        return Branch.polynomial(x, y, label)
    if not _is_int(prec) or prec < 1:
        raise DocumentError(where, "precision must be a positive integer")
    too_high = [e for e in list(x) + list(y) if e >= prec]
    if too_high:
        raise DocumentError(where, f"exponent {max(too_high)} is not below the stated precision {prec}")
    return Branch.truncated(x, y, prec, label)


def germ_from_dict(doc: Any, text: str = "") -> CurveGerm:
    if not isinstance(doc, dict):
        raise DocumentError("document", "top level must be an object")
    unknown = set(doc) - _GERM_KEYS
    if unknown:
        raise DocumentError("document", f"unknown keys {sorted(unknown)}")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise DocumentError("name", "must be a string")
    raw = doc.get("branches")
    if not isinstance(raw, list) or not raw:
        raise DocumentError("branches", "expected a nonempty list of branches")
    hint = doc.get("precision_hint")
    if hint is not None and (not _is_int(hint) or hint < 1):
        raise DocumentError("precision_hint", "must be a positive integer or null")
    lines = _array_element_lines(text, "branches") if text else []
    branches = []
    for i, b in enumerate(raw):
        where = f"branch {i}"
        if i < len(lines):
            where += f" (line {lines[i]})"
        branches.append(_branch(b, where))
    return CurveGerm(tuple(branches), name, hint)


def parse_germ(text: str) -> CurveGerm:
    return germ_from_dict(_load_json(text), text)


def load_germ(path: str | Path) -> CurveGerm:
    return parse_germ(_read(path))


def _term_list(s: TruncatedSeries) -> list[list[int]]:
    return [[c.numerator, c.denominator, e] for e, c in s.coeffs.items()]


def germ_to_dict(c: CurveGerm) -> dict:
    branches = []
    for b in c.branches:
        d: dict[str, Any] = {}
        if b.label:
            d["label"] = b.label
        d["x"] = _term_list(b.x)
        d["y"] = _term_list(b.y)
        if not b.exact:
            d["precision"] = b.known_precision
        branches.append(d)
    return {"name": c.name, "branches": branches, "precision_hint": c.precision_hint}


def dump_germ(c: CurveGerm) -> str:
    """Deterministic text form; one branch per line."""
    rows = [json.dumps(b, separators=(", ", ": ")) for b in germ_to_dict(c)["branches"]]
    body = ",\n    ".join(rows)
    return (
        "{\n"
        f'  "name": {json.dumps(c.name)},\n'
        f'  "branches": [\n    {body}\n  ],\n'
        f'  "precision_hint": {json.dumps(c.precision_hint)}\n'
        "}\n"
    )


# ---------------------------------------------------------------------------
# stratum tables


def table_from_dict(doc: Any) -> StratumTable:
    if not isinstance(doc, dict):
        raise DocumentError("document", "top level must be an object")
    unknown = set(doc) - _LEDGER_KEYS
    if unknown:
        raise DocumentError("document", f"unknown keys {sorted(unknown)}")
    for k in ("n", "r"):
        if not _is_int(doc.get(k)):
            raise DocumentError(k, "required integer")
    raw_chi = doc.get("chi_Xk", {})
    if not isinstance(raw_chi, dict):
        raise DocumentError("chi_Xk", "expected an object mapping k to an integer")
    chi = {}
    for k, v in raw_chi.items():
        try:
            kk = int(k)
        except ValueError:
            raise DocumentError(f"chi_Xk[{k!r}]", "key must be an integer") from None
        if not _is_int(v):
            raise DocumentError(f"chi_Xk[{k!r}]", "value must be an integer")
        chi[kk] = v
    ups = doc.get("upstairs", [])
    if not isinstance(ups, list) or not all(_is_int(v) for v in ups):
        raise DocumentError("upstairs", "expected a list of integers")
    iso = doc.get("isolated_flag", False)
    if not isinstance(iso, bool):
        raise DocumentError("isolated_flag", "must be true or false")
    s = doc.get("s")
    if s is not None and (not _is_int(s) or s < 0):
        raise DocumentError("s", "must be a non-negative integer or null")
    mono = doc.get("monodromy_compatible", True)
    if not isinstance(mono, bool):
        raise DocumentError("monodromy_compatible", "must be true or false")
    try:
        return StratumTable(doc["n"], doc["r"], chi, tuple(ups), iso, s, mono)
    except ValueError as exc:
        raise DocumentError("table", str(exc)) from None


def parse_table(text: str) -> StratumTable:
    return table_from_dict(_load_json(text))


def load_table(path: str | Path) -> StratumTable:
    return parse_table(_read(path))


def table_to_dict(t: StratumTable) -> dict:
    return {
        "n": t.n,
        "r": t.r,
        "chi_Xk": {str(k): v for k, v in sorted(t.chi_Xk.items())},
        "upstairs": list(t.upstairs),
        "isolated_flag": t.isolated,
        "s": t.s,
    }


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(str(path), exc.strerror or "cannot read file") from None
    except UnicodeDecodeError:
        raise DocumentError(str(path), "not valid UTF-8") from None
