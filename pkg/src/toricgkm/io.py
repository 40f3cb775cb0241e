"""JSON documents: characteristic pairs, sections, piecewise elements, sequences."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List, Mapping, Union

from .characteristic import CharacteristicPair, DimensionMismatch
from .gkm import PiecewiseElement, Section, face_ideal, ring_for
from .polytope import PolytopeError, SimplePolytope
from .retraction import InvalidRetraction, RetractionSequence, sequence_from_steps

PathLike = Union[str, Path]


class DocumentError(ValueError):
    """Malformed input document; ``where`` points at the offending field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def read_json(path: PathLike) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(str(path), exc.strerror or str(exc)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None


def dumps(doc: Any) -> str:
    """Stable rendering: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _require(doc: Mapping, key: str, where: str, kind=None):
    if not isinstance(doc, Mapping) or key not in doc:
        raise DocumentError(where, f"missing field {key!r}")
    val = doc[key]
    if kind is not None and not isinstance(val, kind):
        raise DocumentError(f"{where}.{key}", f"expected {kind.__name__}")
    return val


def _int_list(val: Any, where: str) -> List[int]:
    if not isinstance(val, list) or not all(isinstance(a, int) and not isinstance(a, bool) for a in val):
        raise DocumentError(where, "expected a list of integers")
    return val


def pair_from_doc(doc: Mapping, where: str = "$") -> CharacteristicPair:
    dim = _require(doc, "dim", where, int)
    facets = _require(doc, "facets", where, list)
    if not all(isinstance(f, str) for f in facets):
        raise DocumentError(f"{where}.facets", "facet names must be strings")
    index = {name: i for i, name in enumerate(facets)}
    verts = _require(doc, "vertices", where, list)
    names, incid = [], []
    for k, v in enumerate(verts):
        w = f"{where}.vertices[{k}]"
        names.append(_require(v, "name", w, str))
        fs = _require(v, "facets", w, list)
        try:
            incid.append([index[f] for f in fs])
        except (KeyError, TypeError):
            raise DocumentError(f"{w}.facets", f"unknown facet in {fs}") from None
        if len(set(fs)) != len(fs):
            raise DocumentError(f"{w}.facets", "repeated facet")
    try:
        P = SimplePolytope(dim, incid, facets, names, len(facets))
    except PolytopeError as exc:
        raise DocumentError(where, str(exc)) from None
    lam_doc = _require(doc, "lambda", where, dict)
    lam = []
    for name in facets:
        if name not in lam_doc:
            raise DocumentError(f"{where}.lambda", f"no vector for facet {name!r}")
        lam.append(_int_list(lam_doc[name], f"{where}.lambda.{name}"))
    extra = sorted(set(lam_doc) - set(facets))
    if extra:
        raise DocumentError(f"{where}.lambda", f"unknown facets {extra}")
    try:
        return CharacteristicPair(P, lam)
    except DimensionMismatch as exc:
        raise DocumentError(f"{where}.lambda", str(exc)) from None


def pair_to_doc(pair: CharacteristicPair) -> Dict[str, Any]:
    P = pair.polytope
    return {
        "dim": P.dim,
        "facets": list(P.facet_names),
        "vertices": [
            {"name": P.vertex_names[v], "facets": [P.facet_names[i] for i in sorted(P.vertex_facets[v])]}
            for v in range(P.vertex_count)
        ],
        "lambda": {P.facet_names[i]: list(l) for i, l in enumerate(pair.lam)},
    }


def load_pair(path: PathLike) -> CharacteristicPair:
    return pair_from_doc(read_json(path), str(path))


def _poly(items: Any, n: int, theory: str, where: str):
    ring = ring_for(theory)
    if not isinstance(items, list):
        raise DocumentError(where, "expected a list of {exp, coef} terms")
    terms = []
    for k, t in enumerate(items):
        e = _int_list(_require(t, "exp", f"{where}[{k}]"), f"{where}[{k}].exp")
        c = _require(t, "coef", f"{where}[{k}]", int)
        if len(e) != n:
            raise DocumentError(f"{where}[{k}].exp", f"expected {n} exponents")
        terms.append((e, c))
    try:
        return ring(n, terms)
    except ValueError as exc:
        raise DocumentError(where, str(exc)) from None


def _theory(doc: Mapping, where: str, override: str = None) -> str:
    theory = override
    if theory is None and isinstance(doc, Mapping):
        theory = doc.get("theory")
    if theory not in ("K", "H"):
        raise DocumentError(f"{where}.theory", f"expected 'K' or 'H', got {theory!r}")
    return theory


def section_from_doc(pair: CharacteristicPair, doc: Mapping, where: str = "$", theory: str = None) -> Section:
    theory = _theory(doc, where, theory)
    P = pair.polytope
    values = _require(doc, "values", where, dict)
    missing = [v for v in P.vertex_names if v not in values]
    if missing:
        raise DocumentError(f"{where}.values", f"no value for vertices {missing}")
    extra = sorted(set(values) - set(P.vertex_names))
    if extra:
        raise DocumentError(f"{where}.values", f"unknown vertices {extra}")
    return Section(theory, tuple(_poly(values[v], pair.dim, theory, f"{where}.values.{v}") for v in P.vertex_names))


def section_to_doc(pair: CharacteristicPair, s: Section) -> Dict[str, Any]:
    P = pair.polytope
    return {"theory": s.theory, "values": {P.vertex_names[v]: f.to_terms() for v, f in enumerate(s.values)}}


def piecewise_from_doc(pair: CharacteristicPair, doc: Mapping, where: str = "$", theory: str = None) -> PiecewiseElement:
    theory = _theory(doc, where, theory)
    P = pair.polytope
    faces = _require(doc, "faces", where, dict)
    values = {}
    for name, items in faces.items():
        try:
            F = P.face_by_name(name)
        except PolytopeError as exc:
            raise DocumentError(f"{where}.faces", str(exc)) from None
        if F in values:
            raise DocumentError(f"{where}.faces", f"face {P.face_name(F)} given twice")
        values[F] = _poly(items, pair.dim, theory, f"{where}.faces.{name}")
    return PiecewiseElement(theory, P, values, {F: face_ideal(pair, F) for F in values})


def piecewise_to_doc(pair: CharacteristicPair, p: PiecewiseElement) -> Dict[str, Any]:
    P = pair.polytope
    return {
        "theory": p.theory,
        "faces": {P.face_name(F): p.values[F].to_terms() for F in P.faces if F in p.values},
        "ideals": {P.face_name(F): [list(u) for u in face_ideal(pair, F)] for F in P.faces if F in p.values},
    }


def sequence_to_doc(seq: RetractionSequence) -> List[Dict[str, Any]]:
    P = seq.polytope
    return [
        {"step": i + 1, "face": P.face_name(F), "vertex": P.vertex_names[v], "dim": F.dim}
        for i, (F, v) in enumerate(zip(seq.faces, seq.vertices))
    ]


def sequence_from_doc(pair: CharacteristicPair, doc: Any, where: str = "$") -> RetractionSequence:
    """Accepts a step list, ``{"steps": [...]}``, a certificate or a ``retract`` report."""
    if isinstance(doc, Mapping):
        if "certificate" in doc and doc["certificate"]:
            doc, where = doc["certificate"], f"{where}.certificate"
        elif "sequences" in doc and doc["sequences"]:
            doc, where = doc["sequences"][0], f"{where}.sequences[0]"
        if isinstance(doc, Mapping):
            doc, where = _require(doc, "steps", where, list), f"{where}.steps"
    if not isinstance(doc, list):
        raise DocumentError(where, "expected a list of steps")
    P = pair.polytope
    steps = []
    for k, st in enumerate(doc):
        w = f"{where}[{k}]"
        try:
            F = P.face_by_name(_require(st, "face", w, str))
            v = P.vertex_by_name(_require(st, "vertex", w, str))
        except PolytopeError as exc:
            raise DocumentError(w, str(exc)) from None
        steps.append((F, v))
    try:
        return sequence_from_steps(P, steps)
    except InvalidRetraction as exc:
        raise DocumentError(where, str(exc)) from None
