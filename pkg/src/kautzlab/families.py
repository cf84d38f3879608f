"""Constructors for K, sK, CK and MCK, plus the operators that relate them."""
from __future__ import annotations

import logging
from typing import Hashable, Iterable

from .digraph import Arc, Digraph
from .words import Family, FamilySpec, InvalidInput, Word, enumerate_vertices, is_kautz, reverse

log = logging.getLogger(__name__)


def successor_symbols(w: Word, spec: FamilySpec) -> list[int]:
    """Symbols y such that w -> w[1:] + (y,) is an arc of K, sK or CK."""
    if spec.family is Family.K:
        banned = {w[-1]}
    elif spec.family is Family.SK:
        banned = {w[0], w[-1]}
    else:
        banned = {w[1], w[-1]}
    return [y for y in range(spec.d + 1) if y not in banned]


def repaired_successor(w: Word, d: int) -> Word | None:
    """The extra MCK arc out of CK vertex ``w``.

    Appending a_{l+1} = a_2 is the one shift CK forbids; the head is repaired
    by swapping a_2 for the smallest symbol a_2' not in {a_3, a_{l+1}}.
    """
    a2 = w[1]
    if a2 == w[-1]:
        return None  # appending a_2 would repeat the last symbol
    tail = w[2:] + (a2,)
    first = tail[0]
    for s in range(d + 1):
        if s != first and s != a2:
            return (s,) + tail
    return None


def build(spec: FamilySpec) -> Digraph:
    vertices = enumerate_vertices(spec)
    index = {w: i for i, w in enumerate(vertices)}
    arcs: list[Arc] = []
    for i, w in enumerate(vertices):
        for y in successor_symbols(w, spec):
            arcs.append((i, index[w[1:] + (y,)]))
        if spec.family is Family.MCK and spec.l >= 3:
            target = repaired_successor(w, spec.d)
            if target is not None:
                arcs.append((i, index[target]))
    meta = {"spec": spec}
    if spec.known_disconnected:
        meta["disconnected"] = True
        log.warning("%s is not strongly connected", spec)
    return Digraph(vertices, arcs, meta)


def order_formula(spec: FamilySpec) -> int:
    d, l = spec.d, spec.l
    if spec.cyclic:
        return cyclic_order(d, l)
    return d**l + d ** (l - 1)


def cyclic_order(d: int, l: int) -> int:
    if l == 1:
        return d + 1
    return d**l + (-1) ** l * d


def cyclic_order_recurrence(d: int, l: int) -> int:
    """n_{d,l} from n_{d,2} = d^2 + d and n_{d,l} = d^l + d^{l-1} - n_{d,l-1}."""
    if l == 1:
        return d + 1
    n = d * d + d
    for k in range(3, l + 1):
        n = d**k + d ** (k - 1) - n
    return n


def degree_formula(spec: FamilySpec, w: Word) -> tuple[int, int | None]:
    """(out-degree, in-degree) read off the label. MCK in-degree depends on
    the repair policy and is returned as None."""
    d = spec.d
    if spec.family is Family.K:
        return d, d
    if spec.family is Family.SK:
        k = d + 1 - len({w[0], w[-1]})
        return k, k
    out = d + 1 - len({w[1], w[-1]})
    inn = d + 1 - len({w[0], w[-2]})
    if spec.family is Family.MCK:
        if spec.l >= 3 and w[1] != w[-1]:
            out += 1
        return out, None
    return out, inn


def _merge(a: Hashable, b: Hashable) -> Hashable:
    if isinstance(a, tuple) and isinstance(b, tuple) and len(a) == len(b) and a[1:] == b[:-1]:
        return a + b[-1:]
    return (a, b)


def _sorted_vertices(labels: list[Hashable]) -> list[int]:
    try:
        return sorted(range(len(labels)), key=lambda i: labels[i])
    except TypeError:
        return list(range(len(labels)))


def line_digraph(g: Digraph) -> Digraph:
    """Vertices are the arcs uv of g, labelled by merging the word labels;
    uv -> vw for every arc vw."""
    arcs = g.arcs()
    labels = [_merge(g.labels[u], g.labels[v]) for u, v in arcs]
    order = _sorted_vertices(labels)
    pos = {arcs[i]: k for k, i in enumerate(order)}
    new_arcs = [(pos[(u, v)], pos[(v, w)]) for (u, v) in arcs for w in g.forward[v]]
    return Digraph([labels[i] for i in order], new_arcs)


def partial_line_digraph(g: Digraph, kept_arcs: Iterable[Arc]) -> Digraph:
    """Line digraph restricted to ``kept_arcs``. An arc uv -> vw whose target
    vw is not kept is redirected to v'w, v' the smallest-labelled in-neighbour
    of w with v'w kept."""
    kept = sorted(set(kept_arcs))
    kept_set = set(kept)
    for u, v in kept:
        if v not in g.forward[u]:
            raise InvalidInput(f"kept arc ({g.labels[u]}, {g.labels[v]}) is not an arc of the digraph")
    heads = {v for _, v in kept}
    missing = [g.labels[v] for v in range(g.n) if v not in heads]
    if missing:
        raise InvalidInput(f"kept arcs must reach every vertex; no kept arc enters {missing[0]}")
    substitute = {}
    for w in range(g.n):
        cands = [u for u in g.reverse[w] if (u, w) in kept_set]
        substitute[w] = min(cands, key=lambda u: g.labels[u])
    labels = [_merge(g.labels[u], g.labels[v]) for u, v in kept]
    order = _sorted_vertices(labels)
    pos = {kept[i]: k for k, i in enumerate(order)}
    new_arcs = []
    for u, v in kept:
        for w in g.forward[v]:
            src = v if (v, w) in kept_set else substitute[w]
            new_arcs.append((pos[(u, v)], pos[(src, w)]))
    return Digraph([labels[i] for i in order], new_arcs)


def reversal_is_isomorphism(spec: FamilySpec, g: Digraph | None = None) -> bool:
    """Does word reversal map the arcs of the digraph onto its converse?"""
    if spec.family is Family.MCK:
        raise InvalidInput("the reversal isomorphism is stated for K, sK and CK only")
    g = g or build(spec)
    if any(reverse(w) not in g for w in g.labels):
        return False
    arcs = g.label_arcs()
    converse_arcs = {(b, a) for a, b in arcs}
    return {(reverse(a), reverse(b)) for a, b in arcs} == converse_arcs


def closed_walk_arcs(d: int, l: int) -> set[tuple[Word, Word]]:
    """K(d, l) arcs x -> x_2..x_l x_1, one per vertex with x_1 != x_l."""
    spec = FamilySpec(Family.K, d, l)
    return {(w, w[1:] + w[:1]) for w in enumerate_vertices(spec) if w[0] != w[-1]}


def verify_subkautz_removal(d: int, l: int) -> bool:
    k_arcs = build(FamilySpec(Family.K, d, l)).label_arcs()
    sk_arcs = build(FamilySpec(Family.SK, d, l)).label_arcs()
    removed = closed_walk_arcs(d, l)
    if not removed <= k_arcs or k_arcs - removed != sk_arcs:
        return False
    for a, _ in removed:
        walk = a + a[:1]  # x_1 .. x_l x_1, a closed walk of length l in K*_{d+1}
        if len(walk) != l + 1 or not is_kautz(walk):
            return False
    return True


def subkautz_arcs_in_kautz(d: int, l: int) -> tuple[Digraph, list[Arc]]:
    """K(d, l) together with the index pairs of its arcs that survive in sK(d, l)."""
    k = build(FamilySpec(Family.K, d, l))
    kept = [(u, v) for u, v in k.arcs() if k.labels[v][-1] != k.labels[u][0]]
    return k, kept
