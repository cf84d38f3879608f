"""Distances, routes and structural parameters computed from labels alone.

A t-step walk from x to y in any of these word digraphs is a *path word*: a
symbol sequence of length l + t that starts with x, ends with y, and whose
windows are all vertices joined by arcs. Validity reduces to inequalities
between symbols at fixed offsets:

    K:  s[i] != s[i+1]
    sK: s[i] != s[i+1], s[i] != s[i+l]      (appended symbol differs from the first)
    CK: s[i] != s[i+1], s[i] != s[i+l-1]    (every window has first != last)

The analytic router walks CK alignments of y against the extended sequence
of x in order of decreasing overlap and accepts the first whose forced
inequalities and free-symbol chain are satisfiable. sK distances go through
CK(d, l+1), its line digraph. :func:`solve_path_word` is the independent
route: plain backtracking that checks every window against the vertex and
arc rules.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
import math

from .families import successor_symbols
from .words import Family, FamilySpec, InvalidInput, Word, is_valid_vertex

log = logging.getLogger(__name__)


class Case(str, enum.Enum):
    A = "case_a"  # y overlaps x itself: dist = l - |x ⊓ y|
    B = "case_b"  # y starts right after x: dist = l
    C = "case_c"  # a chain of free symbols between x and y
    D = "case_d"  # no overlap at all: dist = 2l - 1
    BEYOND = "beyond"  # outside the analytic range; solver answer


class Unreachable(ValueError):
    pass


@dataclass(frozen=True)
class OverlapResult:
    kind: Case
    overlap_len: int  # |x~ ⊓ y|
    suffix_len: int  # |x ⊓ y|
    alignment: int  # offset of y_1 in x~


@dataclass(frozen=True)
class PathWord:
    symbols: Word
    t: int
    l: int

    @property
    def free_span(self) -> range:
        return range(self.l, self.t) if self.t > self.l else range(0)

    def windows(self) -> list[Word]:
        return [self.symbols[i:i + self.l] for i in range(self.t + 1)]


@dataclass(frozen=True)
class Route:
    distance: int
    case: Case
    path_word: PathWord
    fell_through: bool = False  # the largest admissible overlap was not realisable

    def vertices(self) -> list[Word]:
        return self.path_word.windows()


def constraint_offsets(spec: FamilySpec) -> tuple[int, ...]:
    if spec.family is Family.K:
        return (1,)
    if spec.family is Family.SK:
        return (1, spec.l)
    if spec.family is Family.CK:
        return (1, spec.l - 1) if spec.l > 2 else (1,)
    raise InvalidInput("path words are not defined for MCK")


def _check_pair(x: Word, y: Word, spec: FamilySpec) -> None:
    for w in (x, y):
        if not is_valid_vertex(w, spec):
            raise InvalidInput(f"{w} is not a vertex of {spec}")


def search_limit(spec: FamilySpec) -> int:
    l = spec.l
    if spec.family is Family.K:
        return l
    if spec.family is Family.SK and spec.d >= 3:
        return 2 * l
    if spec.family is Family.CK and (spec.d >= 3 or l == 2):
        return 2 * l - 1
    log.warning("%s is outside the proven diameter range; searching up to t = %d", spec, 3 * l)
    return 3 * l


# ------------------------------------------------------------------ solver route

def _window_ok(s: list[int], i: int, spec: FamilySpec) -> bool:
    """Window s[i:i+l] is a vertex and, if a predecessor window exists, the step is an arc."""
    l = spec.l
    w = tuple(s[i:i + l])
    if not is_valid_vertex(w, spec):
        return False
    if i > 0:
        prev = tuple(s[i - 1:i - 1 + l])
        return w[-1] in successor_symbols(prev, spec)
    return True


def solve_path_word(x: Word, y: Word, spec: FamilySpec, t: int) -> PathWord | None:
    """A valid path word with exactly t steps from x to y, or None."""
    if spec.family is Family.MCK:
        raise InvalidInput("path words are not defined for MCK")
    l = spec.l
    if t < 0:
        return None
    total = l + t
    s: list[int | None] = [None] * total
    for i, a in enumerate(x):
        s[i] = a
    for i, b in enumerate(y):
        if s[t + i] is not None and s[t + i] != b:
            return None
        s[t + i] = b
    free = [i for i in range(total) if s[i] is None]

    def windows_ending_in(lo: int, hi: int) -> bool:
        return all(_window_ok(s, q - l + 1, spec) for q in range(max(lo, l - 1), hi))

    # windows that end before the first free slot never change
    if not windows_ending_in(0, free[0] if free else total):
        return None

    def rec(k: int) -> bool:
        if k == len(free):
            return True
        p = free[k]
        nxt = free[k + 1] if k + 1 < len(free) else total
        for a in range(spec.d + 1):
            s[p] = a
            # windows ending in [p, nxt) are now fully assigned
            if windows_ending_in(p, nxt) and rec(k + 1):
                return True
        s[p] = None
        return False

    if rec(0):
        return PathWord(tuple(s), t, l)  # type: ignore[arg-type]
    return None


def solver_distance(x: Word, y: Word, spec: FamilySpec, limit: int | None = None) -> tuple[int, PathWord]:
    """Smallest feasible t, scanning upward; feasibility is not monotone in t."""
    _check_pair(x, y, spec)
    limit = search_limit(spec) if limit is None else limit
    for t in range(limit + 1):
        pw = solve_path_word(x, y, spec, t)
        if pw is not None:
            return t, pw
    raise Unreachable(f"no path from {x} to {y} in {spec} within {limit} steps")


# ---------------------------------------------------------------- analytic route

def _suffix_prefix(x: Word, y: Word) -> int:
    for k in range(len(x) - 1, 0, -1):
        if x[-k:] == y[:k]:
            return k
    return 0


def _admissible(x: Word, y: Word, t: int) -> bool:
    """y_1 at offset t of x~ = x_1..x_l x̄_2..x̄_l: literal agreement over x,
    and y_k != x_{p-l+2} wherever y_k sits on a barred slot p."""
    l = len(x)
    for k, b in enumerate(y):
        p = t + k
        if p < l:
            if x[p] != b:
                return False
        elif p <= 2 * l - 2:
            if b == x[p - l + 1]:
                return False
    return True


def overlap(x: Word, y: Word, spec: FamilySpec) -> OverlapResult:
    if spec.family is not Family.CK:
        raise InvalidInput("the extended-sequence overlap is defined for CK only")
    _check_pair(x, y, spec)
    l = spec.l
    suffix = _suffix_prefix(x, y) if x != y else l
    for t in range(2 * l - 1):
        if _admissible(x, y, t):
            j = min(l, 2 * l - 1 - t)
            return OverlapResult(_case_for(t, l), j, suffix, t)
    return OverlapResult(Case.D, 0, suffix, 2 * l - 1)


def _case_for(t: int, l: int) -> Case:
    if t < l:
        return Case.A
    if t == l:
        return Case.B
    if t < 2 * l - 1:
        return Case.C
    return Case.D


def _fill_alignment(x: Word, y: Word, t: int, alphabet: int) -> Word | None:
    """Complete CK alignment t (l <= t <= 2l - 1) or report it infeasible.

    Fixed-against-fixed conditions are the barred slots plus y_1 != x_l when
    t = l. Free symbols z at p = l .. t-1 avoid s[p-1], s[p+1] (when fixed),
    x_{p-l+2} and y_{p-t+l}; among themselves only neighbours interact, so a
    forward sweep of reachable values settles the chain exactly.
    """
    l = len(x)
    s: list[int | None] = [None] * (l + t)
    s[:l] = x
    s[t:] = y
    if t == l and y[0] == x[-1]:
        return None
    for k, b in enumerate(y):
        p = t + k
        if l <= p <= 2 * l - 2 and b == x[p - l + 1]:
            return None
    free = list(range(l, t))
    if not free:
        return tuple(s)  # type: ignore[arg-type]
    domains = []
    for p in free:
        banned = {x[p - l + 1], s[p + l - 1]}
        if p == l:
            banned.add(x[-1])
        if p == t - 1:
            banned.add(y[0])
        domains.append([a for a in range(alphabet) if a not in banned])
    return _chain(domains, s, free)


def _chain(domains: list[list[int]], s: list[int | None], free: list[int]) -> Word | None:
    reach = [set(domains[0])]
    for dom in domains[1:]:
        prev = reach[-1]
        if not prev:
            return None
        reach.append({a for a in dom if len(prev - {a}) > 0})
    if not reach[-1]:
        return None
    choice = min(reach[-1])
    picks = [choice]
    for r in reversed(reach[:-1]):
        choice = min(r - {choice})
        picks.append(choice)
    for p, a in zip(free, reversed(picks)):
        s[p] = a
    return tuple(s)  # type: ignore[arg-type]


def _ck_route(x: Word, y: Word, spec: FamilySpec) -> Route:
    l = spec.l
    top = overlap(x, y, spec)
    for t in range(top.alignment, 2 * l):
        if t < l:
            if not _admissible(x, y, t):
                continue
            sym = x[:t] + y
        else:
            sym = _fill_alignment(x, y, t, spec.d + 1)
            if sym is None:
                continue
        return Route(t, _case_for(t, l), PathWord(sym, t, l), fell_through=t != top.alignment)
    log.warning("no route from %s to %s within 2l-1 in %s; deferring to the solver", x, y, spec)
    t, pw = solver_distance(x, y, spec)
    return Route(t, Case.BEYOND, pw, fell_through=True)


def _lift_pair(x: Word, y: Word, spec: FamilySpec) -> tuple[Word, Word]:
    """Arcs a->x and y->b of sK(d, l), read as CK(d, l+1) vertices, with
    (a x) != (y b) so their line-digraph distance is dist(x, y) + 1."""
    for a in range(spec.d + 1):
        if a in (x[0], x[-1]):
            continue
        for b in range(spec.d + 1):
            if b in (y[0], y[-1]):
                continue
            ex, fy = (a,) + x, y + (b,)
            if ex != fy:
                return ex, fy
    raise InvalidInput(f"cannot lift {x}, {y} of {spec} to its line digraph")


def route(x: Word, y: Word, spec: FamilySpec) -> Route:
    """Shortest route from labels alone."""
    _check_pair(x, y, spec)
    if spec.known_disconnected:
        raise Unreachable(f"{spec} is not strongly connected")
    if spec.family is Family.K:
        k = l = spec.l
        if x == y:
            k = 0
        else:
            k = l - _suffix_prefix(x, y)
        return Route(k, Case.A if k < l else Case.B, PathWord(x[:k] + y, k, l))
    if spec.family is Family.CK:
        return _ck_route(x, y, spec)
    if spec.family is Family.SK:
        lifted = FamilySpec(Family.CK, spec.d, spec.l + 1)
        ex, fy = _lift_pair(x, y, spec)
        r = _ck_route(ex, fy, lifted)
        inner = r.path_word.symbols[1:-1]
        return Route(r.distance - 1, r.case, PathWord(inner, r.distance - 1, spec.l), r.fell_through)
    raise InvalidInput("analytic routing is not available for MCK")


def distance_analytic(x: Word, y: Word, spec: FamilySpec) -> tuple[int, Case]:
    r = route(x, y, spec)
    return r.distance, r.case


def shortest_path(x: Word, y: Word, spec: FamilySpec) -> list[Word]:
    return route(x, y, spec).vertices()


def checked_route(x: Word, y: Word, spec: FamilySpec) -> Route:
    """:func:`route`, confirmed by the solver. On disagreement the solver's
    path word is returned and the discrepancy is logged."""
    r = route(x, y, spec)
    t, pw = solver_distance(x, y, spec, max(r.distance, search_limit(spec)))
    if t == r.distance:
        return r
    log.error("analytic distance %d (%s) disagrees with solver %d for %s -> %s in %s",
              r.distance, r.case.value, t, x, y, spec)
    return Route(t, Case.BEYOND, pw, fell_through=True)


# ----------------------------------------------------------------- formulas

@dataclass(frozen=True)
class Formula:
    value: object
    guard: str
    citation: str

    @property
    def known(self) -> bool:
        return self.value is not None


UNKNOWN = "no closed form"


def diameter_formula(spec: FamilySpec) -> Formula:
    d, l, fam = spec.d, spec.l, spec.family
    if fam is Family.K:
        return Formula(l, "d, l >= 2", "Kautz digraphs have optimal diameter l")
    if fam is Family.CK:
        if l == 2:
            return Formula(2, "l = 2", "CK(d,2) = K(d,2)")
        if d == 2:
            return Formula(None, "d = 2", "CK(2,l) measured only")
        if d == 3 and l == 4:
            return Formula(6, "d = 3, l = 4", "CK(3,4) = L(sK(3,3))")
        if d == 3 or l == 3:
            return Formula(2 * l - 1, "d = 3 and l != 4, or l = 3", "diameter 2l-1")
        return Formula(2 * l - 2, "d, l >= 4", "diameter 2l-2")
    if fam is Family.SK:
        if d == 2:
            return Formula(None, "d = 2", "sK(2,l) measured only")
        if l == 2:
            return Formula(4, "d >= 3, l = 2", "diameter 2l")
        if d == 3 and l == 3:
            return Formula(5, "d = l = 3", "diameter 2l-1")
        if d == 3:
            return Formula(2 * l, "d = 3, l >= 4", "diameter 2l")
        return Formula(2 * l - 1, "d >= 4, l >= 3", "diameter 2l-1")
    return Formula(None, "MCK", "MCK measured only")


def girth_lower_bound(l: int) -> int:
    """Smallest k >= 2 with l mod k != 1."""
    k = 2
    while l % k == 1:
        k += 1
    return k


def family_girth_lower_bound(spec: FamilySpec) -> int:
    # sK(d, l) has the girth of its line digraph CK(d, l+1)
    if spec.family is Family.SK:
        return girth_lower_bound(spec.l + 1)
    return girth_lower_bound(spec.l)


@dataclass(frozen=True)
class GirthSearch:
    girth: int | None  # None: no cycle up to k_max
    k_max: int
    witness: Word | None
    infeasible: tuple[int, ...] = field(default=())

    @property
    def bounded(self) -> bool:
        return self.girth is None


def _periodic_patterns(k: int, alphabet: int, offsets: tuple[int, ...]):
    """Cyclic sequences p of length k with p[r] != p[(r+o) % k] for all offsets, lexicographic."""
    steps = sorted({o % k for o in offsets})
    if 0 in steps:
        return
    p = [0] * k

    def ok(r: int) -> bool:
        for o in steps:
            for q in (r - o, r + o - k):
                if 0 <= q < r and p[q] == p[r]:
                    return False
            if r == k - 1:
                # wrap-around pairs once the pattern is complete
                for i in range(k):
                    if p[i] == p[(i + o) % k]:
                        return False
        return True

    def rec(r: int):
        if r == k:
            yield tuple(p)
            return
        for a in range(alphabet):
            p[r] = a
            if ok(r):
                yield from rec(r + 1)

    yield from rec(0)


def girth_periodic_search(spec: FamilySpec, k_max: int = 12) -> GirthSearch:
    """Least k admitting a k-periodic path word, i.e. a closed walk of length k.

    Scans k from 2, so every k below the reported girth is recorded as
    infeasible rather than assumed so.
    """
    if spec.family not in (Family.SK, Family.CK):
        raise InvalidInput("periodic girth search covers sK and CK")
    if k_max > 12:
        raise InvalidInput("k_max is capped at 12")
    offsets = constraint_offsets(spec)
    infeasible = []
    for k in range(2, k_max + 1):
        for pattern in _periodic_patterns(k, spec.d + 1, offsets):
            word = tuple(pattern[i % k] for i in range(spec.l))
            return GirthSearch(k, k_max, word, tuple(infeasible))
        infeasible.append(k)
    return GirthSearch(None, k_max, None, tuple(infeasible))


# --------------------------------------------------- connectivity predictions

@dataclass(frozen=True)
class ConnectivityPrediction:
    maximally_arc_connected: bool | None
    maximally_vertex_connected: bool | None
    super_lambda: bool | None
    super_kappa: bool | None
    derivation: tuple[str, ...]

    @property
    def has_prediction(self) -> bool:
        return any(v is not None for v in (self.maximally_arc_connected, self.maximally_vertex_connected,
                                           self.super_lambda, self.super_kappa))


def fabrega_fiol(delta: int, gamma: int, diam: int) -> dict[str, bool]:
    """Properties guaranteed by the semigirth criteria (only the true ones are implied)."""
    out = {"lambda=delta": False, "kappa=delta": False, "super_lambda": False, "super_kappa": False}
    if delta > 1:
        out["lambda=delta"] = diam <= 2 * gamma
        out["kappa=delta"] = diam <= 2 * gamma - 1
    if delta >= 3:
        out["super_lambda"] = diam <= 2 * gamma
        out["super_kappa"] = diam <= 2 * gamma - 2
    return out


def min_degree_formula(spec: FamilySpec) -> int:
    if spec.family is Family.K:
        return spec.d
    if spec.family is Family.CK and spec.l == 2:
        return spec.d
    return spec.d - 1


def connectivity_prediction(spec: FamilySpec) -> ConnectivityPrediction:
    """Connectivity verdicts for sK and CK with the criterion that supports them.

    Semigirth is bounded below by l (these are subdigraphs of K(d, l)); the
    diameter comes from :func:`diameter_formula`.
    """
    d, l, fam = spec.d, spec.l, spec.family
    diam = diameter_formula(spec).value
    delta = min_degree_formula(spec)
    notes = [f"gamma >= {l}", f"D = {diam}", f"delta = {delta}"]
    if fam not in (Family.SK, Family.CK) or d < 3 or diam is None or (fam is Family.CK and l < 3):
        return ConnectivityPrediction(None, None, None, None, tuple(notes + ["no prediction"]))
    ff = fabrega_fiol(delta, l, diam)
    notes += [f"{k} by D <= 2gamma criteria: {v}" for k, v in ff.items()]
    if fam is Family.SK:
        s_lam = True
        kmax = (d == 3 and l == 3) or (d >= 4 and l >= 3)
        s_kap = None
    else:
        s_lam = True
        s_kap = True if (d == 3 and l == 4) or (d >= 4 and l >= 4) else None
        kmax = (d == 3 and l != 4) or (d >= 4 and l == 3) or bool(s_kap)
    if delta < 3:
        notes.append("delta < 3: super-lambda/super-kappa verdicts rest on the family proposition, "
                     "not on the delta >= 3 criterion")
    return ConnectivityPrediction(True, True if kmax else None, s_lam, s_kap, tuple(notes))


# ------------------------------------------------------------ mean distance

def layer_formula(spec: FamilySpec) -> list[int]:
    d = spec.d
    if d < 3:
        raise InvalidInput("layer counts are given for d >= 3")
    if spec.family is Family.SK and spec.l == 2:
        return [1, d - 1, (d - 1) ** 2, 2 * (d - 1), 1]
    if spec.family is Family.CK and spec.l == 3:
        return [1, d - 1, (d - 1) ** 2, (d - 1) ** 3 - 1, 2 * (d - 1) ** 2, d - 1]
    raise InvalidInput("layer counts are given for sK(d,2) and CK(d,3) only")


def mean_distance_formula(spec: FamilySpec) -> Fraction:
    d = spec.d
    layer_formula(spec)  # same domain check
    if spec.family is Family.SK:
        return Fraction(2 * d * d + 3 * d - 1, d * d + d)
    return Fraction(3 * d**3 + d * d - 5 * d - 2, d**3 - d)


def moore_bound(max_degree: int, diam: int) -> int:
    if max_degree < 1 or diam < 1:
        raise InvalidInput("Moore bound needs degree >= 1 and diameter >= 1")
    if max_degree == 1:
        return diam + 1
    return (max_degree ** (diam + 1) - 1) // (max_degree - 1)


def moore_mean_distance(max_degree: int, diam: int) -> Fraction:
    """Mean distance of a digraph meeting the Moore bound, k*Delta^k layers."""
    D, g = diam, max_degree
    if g < 1 or D < 1:
        raise InvalidInput("Moore mean distance needs degree >= 1 and diameter >= 1")
    if g == 1:
        return Fraction(D * (D + 1) // 2, D + 1)
    return Fraction(D * g ** (D + 2) - (1 + D) * g ** (D + 1) + g, g ** (D + 2) - g ** (D + 1) - g + 1)


def log_optimality_ratio(mean: Fraction, max_degree: int, order: int) -> float:
    """mean / log_Delta(N); bounded ratios across a family mean O(log N) mean distance."""
    return float(mean) / math.log(order, max_degree)
