"""Text serializations of a built family digraph: DOT, CSV edge list, JSON."""
from __future__ import annotations

import csv
import io
import json

from .digraph import Digraph
from .words import FamilySpec, InvalidInput, format_word, parse_word


def _spec_of(g: Digraph) -> FamilySpec:
    spec = g.meta.get("spec")
    if not isinstance(spec, FamilySpec):
        raise InvalidInput("digraph carries no family spec")
    return spec


def to_dot(g: Digraph) -> str:
    spec = _spec_of(g)
    names = sorted(format_word(w, spec.d) for w in g.labels)
    arcs = sorted((format_word(a, spec.d), format_word(b, spec.d)) for a, b in g.label_arcs())
    lines = [f'digraph "{spec}" {{']
    lines += [f'  "{v}";' for v in names]
    lines += [f'  "{a}" -> "{b}";' for a, b in arcs]
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_edges(g: Digraph) -> str:
    spec = _spec_of(g)
    rows = sorted((format_word(a, spec.d), format_word(b, spec.d)) for a, b in g.label_arcs())
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)  # quotes comma-separated words
    return buf.getvalue()


def to_json_doc(g: Digraph) -> dict:
    spec = _spec_of(g)
    return {
        "spec": {"family": spec.family.value, "d": spec.d, "l": spec.l},
        "vertices": [format_word(w, spec.d) for w in g.labels],
        "arcs": [[u, v] for u, v in g.arcs()],
        "metadata": {
            "order": g.n,
            "arc_count": g.m,
            "regularity": g.regularity(),
            "disconnected": bool(g.meta.get("disconnected", False)),
        },
    }


def to_json(g: Digraph) -> str:
    return json.dumps(to_json_doc(g), indent=1) + "\n"


def from_json(text: str) -> Digraph:
    """Rebuild the digraph written by :func:`to_json`; vertex order is preserved."""
    try:
        doc = json.loads(text)
        s = doc["spec"]
        spec = FamilySpec(s["family"], int(s["d"]), int(s["l"]))
        labels = [parse_word(v, spec.d) for v in doc["vertices"]]
        arcs = [(int(u), int(v)) for u, v in doc["arcs"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed digraph JSON: {exc}") from None
    meta = {"spec": spec}
    if doc.get("metadata", {}).get("disconnected"):
        meta["disconnected"] = True
    return Digraph(labels, arcs, meta)
