"""Rendering of word and commutator series as text, LaTeX and JSON.

Output is always emitted in canonical term order so that identical inputs
produce byte-identical documents.  Exact coefficients travel as 'p/q'
strings in JSON; words are plain letter strings.
"""

from __future__ import annotations

import json

from .commutators import CommutatorSeries
from .rationals import pretty_rational, rational_str
from .words import Word, WordSeries

KIND_LETTERS = {"zassenhaus": "ab", "bch": "xy"}
KIND_SYMBOLS = {"zassenhaus": "c", "bch": "z"}

RESULT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["kind", "order", "representation", "terms"],
    "additionalProperties": False,
    "properties": {
        "kind": {"enum": ["zassenhaus", "bch"]},
        "order": {"type": "integer", "minimum": 2},
        "representation": {
            "enum": ["words", "dynkin", "ba-commutators", "ab-commutators"]
        },
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["coeff", "word"],
                "additionalProperties": False,
                "properties": {
                    "coeff": {"type": "string", "pattern": r"^-?[0-9]+/[0-9]+$"},
                    "word": {"type": "string", "pattern": "^([ab]+|[xy]+)$"},
                },
            },
        },
    },
}


def commutator_string(skeleton: Word, letters: str) -> str:
    """Nested-bracket spelling of a left-normed skeleton, e.g. [[b,a],b]."""
    chars = skeleton.to_string(letters)
    out = chars[0]
    for ch in chars[1:]:
        out = f"[{out},{ch}]"
    return out


def _term_pairs(series: WordSeries | CommutatorSeries, letters: str, bracket: bool):
    if isinstance(series, CommutatorSeries):
        items = [(w, c) for c, w in series]
    else:
        items = list(series.items())
    for word, coeff in items:
        label = commutator_string(word, letters) if bracket else word.to_string(letters)
        yield coeff, label


def series_text(series: WordSeries | CommutatorSeries, letters: str = "ab") -> str:
    """Signed one-line form, e.g. '- 1/2 ab + 1/2 ba'."""
    bracket = isinstance(series, CommutatorSeries)
    parts: list[str] = []
    for coeff, label in _term_pairs(series, letters, bracket):
        sign = "-" if coeff < 0 else "+"
        magnitude = pretty_rational(abs(coeff))
        if not parts:
            lead = f"- {magnitude} {label}" if sign == "-" else f"{magnitude} {label}"
            parts.append(lead)
        else:
            parts.append(f"{sign} {magnitude} {label}")
    return " ".join(parts) if parts else "0"


def _latex_coeff(coeff) -> str:
    sign = "-" if coeff < 0 else "+"
    mag = abs(coeff)
    if mag.denominator == 1:
        body = str(mag.numerator)
    else:
        body = rf"\frac{{{mag.numerator}}}{{{mag.denominator}}}"
    return sign, body


def series_latex(
    series: WordSeries | CommutatorSeries,
    kind: str,
    order: int,
) -> str:
    """Display-math fragment with the order symbol on the left."""
    letters = KIND_LETTERS[kind]
    bracket = isinstance(series, CommutatorSeries)
    chunks: list[str] = []
    for coeff, label in _term_pairs(series, letters, bracket):
        sign, body = _latex_coeff(coeff)
        if not chunks:
            prefix = "-" if sign == "-" else ""
            chunks.append(rf"{prefix}{body}\,{label}")
        else:
            chunks.append(rf"{sign} {body}\,{label}")
    body = " ".join(chunks) if chunks else "0"
    return f"\\[\n{KIND_SYMBOLS[kind]}_{{{order}}} = {body}\n\\]"


def series_document(
    series: WordSeries | CommutatorSeries,
    kind: str,
    order: int,
    representation: str,
) -> dict:
    """JSON-ready document following RESULT_SCHEMA."""
    letters = KIND_LETTERS[kind]
    if isinstance(series, CommutatorSeries):
        terms = [
            {"coeff": rational_str(c), "word": w.to_string(letters)} for c, w in series
        ]
    else:
        terms = [
            {"coeff": rational_str(c), "word": w.to_string(letters)}
            for w, c in series.items()
        ]
    return {
        "kind": kind,
        "order": order,
        "representation": representation,
        "terms": terms,
    }


def document_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_word_document(doc: dict) -> tuple[str, int, WordSeries]:
    """Inverse of series_document for representation 'words'."""
    from .rationals import parse_rational

    kind = doc["kind"]
    if kind not in KIND_LETTERS:
        raise ValueError(f"unknown kind {kind!r}")
    if doc.get("representation") != "words":
        raise ValueError("only the 'words' representation round-trips")
    order = int(doc["order"])
    letters = KIND_LETTERS[kind]
    series = WordSeries(
        {
            Word.from_string(term["word"], letters): parse_rational(term["coeff"])
            for term in doc["terms"]
        }
    )
    return kind, order, series
