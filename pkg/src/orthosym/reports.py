"""Report construction for the service and CLI.

Reports are plain JSON-able dicts with a ``schema`` version field.  Two runs
on the same input produce identical reports except for ``timing_ms``, which
is excluded from the determinism canon, so sweeps can feed diff-based
regression checks.
"""

from __future__ import annotations

import json
import time

import numpy as np

from . import catalog
from .chirality import chirality_invariant
from .elem import ElementSyntaxError, OrthElement, parse_element
from .group import FiniteGroup, classify, closure
from .scalar import ScalarError

SCHEMA_VERSION = 1


class ReportInputError(ValueError):
    """User-supplied input failed to parse or validate."""


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _floats(values) -> list[float]:
    return [float(x) for x in values]


def _matrix(M: np.ndarray) -> list[list[float]]:
    return [[float(x) for x in row] for row in M]


def _parse_generators(texts: list[str]) -> list[OrthElement]:
    if not texts:
        raise ReportInputError("generator list is empty")
    out = []
    for t in texts:
        try:
            out.append(parse_element(t))
        except (ElementSyntaxError, ScalarError, ValueError) as exc:
            raise ReportInputError(f"bad generator {t!r}: {exc}") from exc
    return out


def _classification_payload(c) -> dict:
    return {
        "case": c.case,
        "line": None if c.line is None else _floats(c.line),
        "reflection": None if c.reflection is None else _matrix(c.reflection),
        "chiral_element": None if c.chiral_element is None else c.chiral_element.pair_text(),
        "conjugator": None if c.conjugator is None else c.conjugator.pair_text(),
        "note": c.note,
    }


def _element_rows(G: FiniteGroup) -> list[dict]:
    rows = []
    for e, order in zip(G.elements, G.element_orders()):
        rows.append(
            {
                "element": e.pair_text(),
                "trace": float(round(e.trace(), 12)),
                "det": int(round(e.det())),
                "order": order,
                "has_invariant_line": e.has_invariant_line(),
            }
        )
    return rows


def _chirality_rows(G: FiniteGroup) -> list[dict]:
    rows = []
    for e in G.elements:
        if e.star or e.has_invariant_line():
            continue
        data = chirality_invariant(e)
        rows.append(
            {
                "element": e.pair_text(),
                "m": data.m,
                "a1": data.a1,
                "a2": data.a2,
                "isoclinic": data.isoclinic,
                "lk_sign": data.lk_sign,
                "lk_class": data.lk_class,
            }
        )
    return rows


def group_report(name: str, G: FiniteGroup, generator_texts: list[str], max_order: int | None) -> dict:
    started = time.perf_counter()
    c = classify(G)
    report = {
        "schema": SCHEMA_VERSION,
        "name": name,
        "input": {"generators": list(generator_texts), "max_order": max_order},
        "group_order": len(G),
        "classification": _classification_payload(c),
        "elements": _element_rows(G),
        "chirality": _chirality_rows(G),
    }
    report["timing_ms"] = (time.perf_counter() - started) * 1000.0
    return report


def classify_report(name: str, generator_texts: list[str], max_order: int | None = None) -> dict:
    gens = _parse_generators(generator_texts)
    G = closure(gens, max_order=max_order)
    return group_report(name, G, generator_texts, max_order)


def sweep_response(family: str, ranges: dict[str, str] | None = None, expect_paper: bool = False) -> dict:
    try:
        specs = catalog.sweep_specs(family, ranges)
    except (catalog.FamilyParameterError, ValueError) as exc:
        raise ReportInputError(str(exc)) from exc
    items = []
    counts: dict[str, int] = {}
    mismatches = []
    for spec in specs:
        gens = catalog.generators(spec)
        G = closure(gens)
        report = group_report(spec.label(), G, [g.pair_text() for g in gens], None)
        case = report["classification"]["case"]
        counts[case] = counts.get(case, 0) + 1
        expected = catalog.expected_classification(spec) if expect_paper else None
        match = None if expected is None else expected == case
        if match is False:
            mismatches.append({"spec": spec.label(), "expected": expected, "got": case})
        items.append(
            {
                "params": dict(spec.params),
                "expected": expected,
                "match": match,
                "report": report,
            }
        )
    return {
        "schema": SCHEMA_VERSION,
        "family": family,
        "ranges": dict(ranges or {}),
        "expect_paper": expect_paper,
        "reports": items,
        "summary": {"total": len(items), "counts": counts, "mismatches": mismatches},
    }


def invariant_report(element_text: str) -> dict:
    try:
        e = parse_element(element_text)
    except (ElementSyntaxError, ScalarError, ValueError) as exc:
        raise ReportInputError(f"bad element {element_text!r}: {exc}") from exc
    try:
        data = chirality_invariant(e)
    except ValueError as exc:
        raise ReportInputError(str(exc)) from exc
    return {
        "schema": SCHEMA_VERSION,
        "element": element_text,
        "canonical": e.pair_text(),
        "m": data.m,
        "a1": data.a1,
        "a2": data.a2,
        "isoclinic": data.isoclinic,
        "lk_sign": data.lk_sign,
        "lk_class": data.lk_class,
    }


def strip_timing(payload):
    """Copy of a report tree without the timing fields (the determinism
    comparison canon)."""
    if isinstance(payload, dict):
        return {k: strip_timing(v) for k, v in payload.items() if k != "timing_ms"}
    if isinstance(payload, list):
        return [strip_timing(v) for v in payload]
    return payload
