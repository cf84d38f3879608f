"""Formula-versus-oracle harness.

Each check compares a closed-form prediction with a brute-force measurement
on one instance and emits :class:`Record` rows. Size limits live in
:data:`CHECKS` as data; an instance over a limit gets a ``skipped(guard)``
row, never a silent pass.
"""
from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Callable, Iterable, Sequence

import numpy as np

from . import digraph as dg
from . import families as fm
from . import routing as rt
from .words import Family, FamilySpec, format_word

MATCH = "match"
MISMATCH = "mismatch"


def skipped(reason: str) -> str:
    return f"skipped({reason})"


INDETERMINATE = "indeterminate(budget)"


@dataclass
class Record:
    family: str
    d: int
    l: int
    check: str
    predicted: object
    measured: object
    verdict: str
    citation: str
    runtime_ms: float | None = None
    detail: dict | None = None


@dataclass(frozen=True)
class Guard:
    max_n: int | None = None
    max_m: int | None = None
    max_subsets: int | None = None


@dataclass(frozen=True)
class Budget:
    max_subsets: int = 10**7
    hamilton_expansions: int = 10**7
    max_n: int | None = None  # preset-wide cap on top of per-check guards


def _jsonable(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else v.numerator
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (np.integer,)):
        return int(v)
    if hasattr(v, "value") and isinstance(getattr(v, "value"), str):
        return v.value
    return v


def _words(obj, d: int):
    """Render word labels (int tuples) inside a witness as strings."""
    if isinstance(obj, tuple) and obj and all(isinstance(s, int) for s in obj):
        return format_word(obj, d)
    if isinstance(obj, (list, tuple)):
        return [_words(x, d) for x in obj]
    if isinstance(obj, dict):
        return {k: _words(x, d) for k, x in obj.items()}
    return obj


class Instance:
    """Lazily built digraph plus cached oracle results for one spec."""

    def __init__(self, spec: FamilySpec):
        self.spec = spec
        self.order = fm.order_formula(spec)
        self.max_degree = spec.d

    @property
    def arc_bound(self) -> int:
        return self.order * self.max_degree

    @cached_property
    def graph(self) -> dg.Digraph:
        return fm.build(self.spec)

    @cached_property
    def strongly_connected(self) -> bool:
        return not self.spec.known_disconnected and dg.is_strongly_connected(self.graph)

    @cached_property
    def dist(self) -> np.ndarray:
        return dg.distance_matrix(self.graph)

    @cached_property
    def diameter(self) -> int:
        return int(self.dist.max())

    @cached_property
    def semigirth(self) -> dg.SemigirthResult:
        return dg.semigirth(self.graph)

    @cached_property
    def kappa(self) -> int:
        return dg.vertex_connectivity(self.graph)

    @cached_property
    def lam(self) -> int:
        return dg.arc_connectivity(self.graph)


Row = tuple  # (suffix, predicted, measured, verdict, citation, detail)


def _cmp(pred, meas) -> str:
    return MATCH if pred == meas else MISMATCH


# --------------------------------------------------------------------- checks

def check_order(inst: Instance, budget: Budget) -> list[Row]:
    spec = inst.spec
    rows = [("", inst.order, inst.graph.n, _cmp(inst.order, inst.graph.n),
             "order d^l + d^(l-1)" if not spec.cyclic else "order d^l + (-1)^l d", None)]
    if spec.cyclic:
        rec = fm.cyclic_order_recurrence(spec.d, spec.l)
        rows.append(("recurrence", rec, inst.graph.n, _cmp(rec, inst.graph.n),
                     "n_l = d^l + d^(l-1) - n_(l-1)", None))
    return rows


def check_degrees(inst: Instance, budget: Budget) -> list[Row]:
    g, spec = inst.graph, inst.spec
    outs, ins = g.out_degrees(), g.in_degrees()
    bad = None
    agree = 0
    for v, w in enumerate(g.labels):
        o, i = fm.degree_formula(spec, w)
        if outs[v] == o and (i is None or ins[v] == i):
            agree += 1
        elif bad is None:
            bad = {"vertex": format_word(w, spec.d), "formula": [o, i], "built": [outs[v], ins[v]]}
    return [("", g.n, agree, _cmp(g.n, agree), "degrees read off the label", bad)]


def check_line_digraph(inst: Instance, budget: Budget) -> list[Row]:
    spec = inst.spec
    d, l = spec.d, spec.l
    if spec.family is Family.SK:
        same = fm.line_digraph(inst.graph) == fm.build(FamilySpec(Family.CK, d, l + 1))
        return [("", True, same, _cmp(True, same), "L(sK(d,l)) = CK(d,l+1)", None)]
    if spec.family is Family.CK and l >= 3:
        same = fm.line_digraph(fm.build(FamilySpec(Family.SK, d, l - 1))) == inst.graph
        return [("", True, same, _cmp(True, same), "CK(d,l) = L(sK(d,l-1))", None)]
    if spec.family is Family.MCK and l >= 3:
        k, kept = fm.subkautz_arcs_in_kautz(d, l - 1)
        pl = fm.partial_line_digraph(k, kept)
        same = pl == inst.graph
        rows = [("partial", True, same, _cmp(True, same), "MCK(d,l) = PL(K(d,l-1))", None)]
        ck = fm.build(FamilySpec(Family.CK, d, l))
        sub = ck.labels == inst.graph.labels and ck.label_arcs() <= inst.graph.label_arcs()
        rows.append(("contains_ck", True, sub, _cmp(True, sub), "MCK adds arcs to CK on the same vertices", None))
        return rows
    return [("", None, None, skipped("not applicable"), "", None)]


def check_converse(inst: Instance, budget: Budget) -> list[Row]:
    if inst.spec.family is Family.MCK:
        return [("", None, None, skipped("not applicable"), "", None)]
    ok = fm.reversal_is_isomorphism(inst.spec, inst.graph)
    return [("", True, ok, _cmp(True, ok), "word reversal is an isomorphism onto the converse", None)]


def check_subkautz_removal(inst: Instance, budget: Budget) -> list[Row]:
    if inst.spec.family not in (Family.K, Family.SK):
        return [("", None, None, skipped("not applicable"), "", None)]
    ok = fm.verify_subkautz_removal(inst.spec.d, inst.spec.l)
    return [("", True, ok, _cmp(True, ok), "sK = K minus arcs of closed l-walks in K*_{d+1}", None)]


def verify_distance_triangle(spec: FamilySpec, inst: Instance | None = None) -> dict:
    """analytic == solver == BFS on every ordered pair."""
    inst = inst or Instance(spec)
    g, dist = inst.graph, inst.dist
    mismatches = []
    for i, x in enumerate(g.labels):
        for j, y in enumerate(g.labels):
            a, _ = rt.distance_analytic(x, y, spec)
            s, _ = rt.solver_distance(x, y, spec)
            b = int(dist[i, j])
            if not a == s == b:
                mismatches.append({"x": format_word(x, spec.d), "y": format_word(y, spec.d), "analytic": a, "solver": s, "bfs": b})
    return {"pairs": g.n * g.n, "mismatches": mismatches, "ok": not mismatches}


def check_distances(inst: Instance, budget: Budget) -> list[Row]:
    if inst.spec.family is Family.MCK:
        return [("", None, None, skipped("not applicable"), "", None)]
    if not inst.strongly_connected:
        return [("", None, None, skipped("disconnected"), "", None)]
    res = verify_distance_triangle(inst.spec, inst)
    agree = res["pairs"] - len(res["mismatches"])
    detail = {"first_mismatch": res["mismatches"][0]} if res["mismatches"] else None
    return [("", res["pairs"], agree, _cmp(res["pairs"], agree), "dist from labels: analytic = solver = BFS", detail)]


def check_diameter(inst: Instance, budget: Budget) -> list[Row]:
    if not inst.strongly_connected:
        return [("", None, None, skipped("disconnected"), "", None)]
    f = rt.diameter_formula(inst.spec)
    if not f.known:
        return [("", None, inst.diameter, skipped("no formula"), f.citation, None)]
    return [("", f.value, inst.diameter, _cmp(f.value, inst.diameter), f"{f.citation} ({f.guard})", None)]


def check_girth(inst: Instance, budget: Budget) -> list[Row]:
    spec = inst.spec
    rows: list[Row] = []
    bound = rt.family_girth_lower_bound(spec) if spec.family in (Family.SK, Family.CK) else None
    periodic = None
    if spec.family in (Family.SK, Family.CK):
        periodic = rt.girth_periodic_search(spec)
        if periodic.bounded:
            rows.append(("periodic", f">= {bound}", f"> {periodic.k_max}", MATCH, "girth >= min{k : l mod k != 1}", None))
        else:
            ok = periodic.girth >= bound
            rows.append(("periodic", f">= {bound}", periodic.girth, MATCH if ok else MISMATCH,
                         "girth >= min{k : l mod k != 1}", {"witness": format_word(periodic.witness, spec.d)}))
    too_big = budget.max_n is not None and inst.order > budget.max_n or inst.order > CHECKS["girth"].guard.max_n
    if too_big:
        rows.append(("bfs", periodic.girth if periodic else None, None, skipped("guard"), "", None))
        return rows
    if not inst.strongly_connected:
        rows.append(("bfs", None, None, skipped("disconnected"), "", None))
        return rows
    measured = dg.girth_bfs(inst.graph)
    if periodic is not None:
        rows.append(("bfs", periodic.girth, measured, _cmp(periodic.girth, measured),
                     "periodic path words give the girth", None))
    else:
        rows.append(("bfs", None, measured, skipped("no formula"), "", None))
    if spec.family is Family.SK:
        other = fm.build(FamilySpec(Family.CK, spec.d, spec.l + 1))
        if other.n <= CHECKS["girth"].guard.max_n:
            g2 = dg.girth_bfs(other)
            rows.append(("line_digraph", measured, g2, _cmp(measured, g2), "girth(sK(d,l)) = girth(CK(d,l+1))", None))
    return rows


CHAIN_MAX_N = 120


def verify_semigirth_chain(d: int, l: int) -> dict:
    """gamma and D both grow by one from sK(d, l) to its line digraph CK(d, l+1)."""
    g = fm.build(FamilySpec(Family.SK, d, l))
    lg = fm.build(FamilySpec(Family.CK, d, l + 1))
    a, b = dg.semigirth(g), dg.semigirth(lg)
    return {"gamma": (a.gamma, b.gamma), "diameter": (a.diameter, b.diameter),
            "ok": b.gamma == a.gamma + 1 and b.diameter == a.diameter + 1}


def check_semigirth(inst: Instance, budget: Budget) -> list[Row]:
    spec = inst.spec
    if not inst.strongly_connected:
        return [("", None, None, skipped("disconnected"), "", None)]
    res = inst.semigirth
    detail = {"diagonal": res.diagonal.value, "witness": _words(res.witness_pair, spec.d)}
    rows: list[Row]
    if spec.family is Family.K:
        rows = [("", spec.l, res.gamma, _cmp(spec.l, res.gamma), "K(d,l) has semigirth l", detail)]
    elif spec.family in (Family.SK, Family.CK):
        ok = res.gamma >= spec.l
        rows = [("", f">= {spec.l}", res.gamma, MATCH if ok else MISMATCH,
                 "subdigraphs of K(d,l) have semigirth >= l", detail)]
    else:
        rows = [("", None, res.gamma, skipped("no formula"), "", detail)]
    if spec.family is Family.SK and inst.order <= CHAIN_MAX_N:
        chain = verify_semigirth_chain(spec.d, spec.l)
        rows.append(("line_digraph", "+1", {"gamma": chain["gamma"], "diameter": chain["diameter"]},
                     MATCH if chain["ok"] else MISMATCH, "L(G) has semigirth gamma+1 and diameter D+1", None))
    return rows


def check_connectivity(inst: Instance, budget: Budget) -> list[Row]:
    if not inst.strongly_connected:
        return [("", None, None, skipped("disconnected"), "", None)]
    g = inst.graph
    delta, kappa, lam = g.min_degree(), inst.kappa, inst.lam
    measured = {"delta": delta, "kappa": kappa, "lambda": lam}
    rows: list[Row] = [("inequality", "kappa <= lambda <= delta", measured,
                        MATCH if kappa <= lam <= delta else MISMATCH, "kappa <= lambda <= delta", None)]
    pred = rt.connectivity_prediction(inst.spec)
    detail = {"derivation": list(pred.derivation)}
    for key, claim, value in (("lambda", pred.maximally_arc_connected, lam),
                              ("kappa", pred.maximally_vertex_connected, kappa)):
        if claim:
            rows.append((key, delta, value, _cmp(delta, value), f"{key} = delta", detail))
        else:
            rows.append((key, None, value, skipped("no prediction"), "", None))
    if inst.semigirth is not None:
        implied = rt.fabrega_fiol(delta, inst.semigirth.gamma, inst.diameter)
        broken = [k for k, v in implied.items() if v and not {
            "lambda=delta": lam == delta, "kappa=delta": kappa == delta,
            "super_lambda": True, "super_kappa": True}[k]]
        rows.append(("semigirth_criteria", implied, measured, MISMATCH if broken else MATCH,
                     "D <= 2gamma criteria on measured (gamma, D, delta)", {"broken": broken} if broken else None))
    return rows


def _subset_count(inst: Instance) -> tuple[int, int]:
    delta = rt.min_degree_formula(inst.spec)
    return comb(inst.arc_bound, delta), comb(inst.order, delta)


def check_superconnectivity(inst: Instance, budget: Budget) -> list[Row]:
    spec = inst.spec
    limit = min(budget.max_subsets, CHECKS["superconnectivity"].guard.max_subsets)
    arc_subsets, vertex_subsets = _subset_count(inst)
    if arc_subsets > limit and vertex_subsets > limit:
        return [("", None, None, skipped("guard"), "", {"arc_subsets": arc_subsets})]
    if not inst.strongly_connected:
        return [("", None, None, skipped("disconnected"), "", None)]
    pred = rt.connectivity_prediction(spec)
    rows: list[Row] = []
    g = inst.graph
    for key, claim, fn, conn in (("lambda", pred.super_lambda, dg.is_super_lambda, inst.lam),
                                 ("kappa", pred.super_kappa, dg.is_super_kappa, inst.kappa)):
        pool = g.m if key == "lambda" else g.n
        if comb(pool, conn) > limit:
            rows.append((key, claim, None, skipped("guard"), "", {"subsets": comb(pool, conn)}))
            continue
        res = fn(g, conn, limit)
        detail = {"checked": res.checked, "disconnecting": res.disconnecting, "witness": _words(res.witness, spec.d)}
        if claim is None:
            rows.append((key, None, res.holds, skipped("no prediction"), "", detail))
        else:
            rows.append((key, claim, res.holds, _cmp(claim, res.holds), f"super-{key}", detail))
    return rows


def check_mean_distance(inst: Instance, budget: Budget) -> list[Row]:
    spec = inst.spec
    if not inst.strongly_connected:
        return [("", None, None, skipped("disconnected"), "", None)]
    measured = Fraction(int(inst.dist.sum()), inst.graph.n ** 2)
    try:
        pred = rt.mean_distance_formula(spec)
    except ValueError:
        return [("", None, measured, skipped("no formula"), "", None)]
    cite = "(2d^2+3d-1)/(d^2+d)" if spec.family is Family.SK else "(3d^3+d^2-5d-2)/(d^3-d)"
    return [("", pred, measured, _cmp(pred, measured), f"mean distance {cite}", None)]


def check_layers(inst: Instance, budget: Budget) -> list[Row]:
    spec = inst.spec
    try:
        pred = rt.layer_formula(spec)
    except ValueError:
        return [("", None, None, skipped("no formula"), "", None)]
    g = inst.graph
    profiles = {tuple(np.bincount(inst.dist[v]).tolist()) for v in range(g.n)}
    in_profiles = {tuple(np.bincount(inst.dist[:, v]).tolist()) for v in range(g.n)}
    measured = sorted(profiles)
    rows: list[Row] = [("", pred, measured[0] if len(measured) == 1 else measured,
                        _cmp({tuple(pred)}, profiles), "distance layers from every vertex", None)]
    rows.append(("transitivity_necessary", True, len(profiles) == 1 and len(in_profiles) == 1,
                 _cmp(True, len(profiles) == 1 and len(in_profiles) == 1),
                 "vertex-transitive: identical per-vertex layer profiles", None))
    return rows


def check_antipodality(inst: Instance, budget: Budget) -> list[Row]:
    if not inst.strongly_connected:
        return [("", None, None, skipped("disconnected"), "", None)]
    measured = dg.antipodality_class(inst.graph).value
    if inst.spec.family is Family.SK and inst.spec.l == 2 and inst.spec.d >= 3:
        return [("", "antipodal", measured, _cmp("antipodal", measured), "sK(d,2) is antipodal", None)]
    return [("", None, measured, skipped("no claim"), "", None)]


def check_eulerian_hamiltonian(inst: Instance, budget: Budget) -> list[Row]:
    spec, g = inst.spec, inst.graph
    claimed = (spec.family is Family.CK and spec.l == 3 and spec.d >= 3) or (
        spec.family is Family.SK and spec.l == 2 and spec.d >= 3)
    if not inst.strongly_connected:
        return [("", None, None, skipped("disconnected"), "", None)]
    eul = dg.is_eulerian(g)
    rows: list[Row] = []
    if not claimed:
        rows.append(("eulerian", None, eul, skipped("no claim"), "", None))
        return rows
    d = spec.d
    rows.append(("regularity", d - 1, g.regularity(), _cmp(d - 1, g.regularity()), "(d-1)-regular", None))
    if spec.family is Family.CK:
        m = (d + 1) * d * (d - 1) ** 2
        rows.append(("arcs", m, g.m, _cmp(m, g.m), "m = (d+1)d(d-1)^2", None))
    rows.append(("eulerian", True, eul, _cmp(True, eul), "Eulerian", None))
    if spec.family is Family.CK:
        if g.n > CHECKS["eulerian_hamiltonian"].guard.max_n:
            rows.append(("hamiltonian", True, None, skipped("guard"), "", None))
        else:
            res = dg.find_hamiltonian_cycle(g, budget.hamilton_expansions)
            if res.found:
                ok = dg.replay_cycle(g, res.cycle)
                rows.append(("hamiltonian", True, ok, _cmp(True, ok), "Hamiltonian",
                             {"expansions": res.expansions, "cycle_start": [format_word(g.labels[v], d) for v in res.cycle[:4]]}))
            elif res.exhausted:
                rows.append(("hamiltonian", True, None, INDETERMINATE, "Hamiltonian", {"expansions": res.expansions}))
            else:
                rows.append(("hamiltonian", True, False, MISMATCH, "Hamiltonian", {"expansions": res.expansions}))
    return rows


@dataclass(frozen=True)
class CheckDef:
    run: Callable[[Instance, Budget], list[Row]]
    guard: Guard = field(default_factory=Guard)
    citation: str = ""


CHECKS: dict[str, CheckDef] = {
    "order": CheckDef(check_order, Guard(max_n=200_000), "closed-form order"),
    "degrees": CheckDef(check_degrees, Guard(max_n=200_000), "degrees read off the label"),
    "line_digraph": CheckDef(check_line_digraph, Guard(max_n=20_000), "line digraph identities"),
    "converse": CheckDef(check_converse, Guard(max_n=200_000), "word reversal is an isomorphism onto the converse"),
    "subkautz_removal": CheckDef(check_subkautz_removal, Guard(max_n=200_000), "sK = K minus closed l-walk arcs"),
    "distances": CheckDef(check_distances, Guard(max_n=300, max_m=1_200), "dist from labels: analytic = solver = BFS"),
    "diameter": CheckDef(check_diameter, Guard(max_n=5_000), "diameter closed forms"),
    "girth": CheckDef(check_girth, Guard(max_n=5_000), "girth from periodic path words"),
    "semigirth": CheckDef(check_semigirth, Guard(max_n=300), "semigirth >= l"),
    "connectivity": CheckDef(check_connectivity, Guard(max_n=300, max_m=3_000), "maximal connectivity"),
    "superconnectivity": CheckDef(check_superconnectivity, Guard(max_n=300, max_m=3_000, max_subsets=10**7), "super-lambda / super-kappa"),
    "mean_distance": CheckDef(check_mean_distance, Guard(max_n=5_000), "mean distance closed forms"),
    "layers": CheckDef(check_layers, Guard(max_n=5_000), "distance layer counts"),
    "antipodality": CheckDef(check_antipodality, Guard(max_n=5_000), "sK(d,2) is antipodal"),
    "eulerian_hamiltonian": CheckDef(check_eulerian_hamiltonian, Guard(max_n=100), "CK(d,3) is Eulerian and Hamiltonian"),
}

# checks that decide their own size handling (girth falls back to the periodic search)
_SELF_GUARDED = {"girth", "eulerian_hamiltonian"}


def run_instance(spec: FamilySpec, checks: Sequence[str], budget: Budget = Budget(), timings: bool = True) -> list[Record]:
    inst = Instance(spec)
    out: list[Record] = []
    for name in checks:
        if name not in CHECKS:
            raise ValueError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
        cdef = CHECKS[name]
        cap = cdef.guard.max_n
        if budget.max_n is not None:
            cap = min(cap, budget.max_n) if cap is not None else budget.max_n
        start = time.perf_counter()
        over_m = cdef.guard.max_m is not None and inst.arc_bound > cdef.guard.max_m
        if name not in _SELF_GUARDED and cap is not None and inst.order > cap:
            rows = [("", None, None, skipped("guard"), "", {"n": inst.order, "max_n": cap})]
        elif name not in _SELF_GUARDED and over_m:
            rows = [("", None, None, skipped("guard"), "", {"m_bound": inst.arc_bound, "max_m": cdef.guard.max_m})]
        else:
            rows = cdef.run(inst, budget)
        elapsed = round((time.perf_counter() - start) * 1000, 1) if timings else None
        for suffix, pred, meas, verdict, cite, detail in rows:
            out.append(Record(spec.family.value, spec.d, spec.l, f"{name}.{suffix}" if suffix else name,
                              pred, meas, verdict, cite or cdef.citation, elapsed, detail))
    return out


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("KAUTZLAB_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(grid: Iterable[FamilySpec], checks: Sequence[str] | None = None, budget: Budget = Budget(),
              timings: bool = True, workers: int | None = None) -> list[Record]:
    """Run ``checks`` (default: all) on every spec; output order follows the grid."""
    grid = list(grid)
    checks = list(CHECKS) if checks is None else list(checks)
    if not checks:
        return []
    workers = workers or _threads()
    if workers > 1 and len(grid) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run_instance, grid, [checks] * len(grid), [budget] * len(grid),
                                  [timings] * len(grid)))
    else:
        parts = [run_instance(s, checks, budget, timings) for s in grid]
    return [r for part in parts for r in part]


def default_grid() -> list[FamilySpec]:
    return [FamilySpec(f, d, l) for f in (Family.SK, Family.CK) for d in (3, 4) for l in (2, 3, 4)]


def preset(name: str) -> tuple[list[tuple[FamilySpec, Sequence[str] | None]], Budget]:
    """Grid and budget for a named preset: ``quick`` (n <= 120) or ``full`` (n <= 300)."""
    if name == "quick":
        grid = [s for s in default_grid() if fm.order_formula(s) <= 120]
        return [(s, None) for s in grid], Budget(max_subsets=10**6, max_n=120)
    if name == "full":
        grid = [s for s in default_grid() if fm.order_formula(s) <= 300]
        grid += [FamilySpec(Family.CK, 3, 5), FamilySpec(Family.K, 3, 3), FamilySpec(Family.MCK, 3, 4)]
        items: list[tuple[FamilySpec, Sequence[str] | None]] = [(s, None) for s in grid]
        items.append((FamilySpec(Family.CK, 3, 13), ("girth",)))
        return items, Budget(max_n=300)
    raise ValueError(f"unknown preset {name!r}; choose quick or full")


def suite_ok(records: Iterable[Record]) -> bool:
    return not any(r.verdict == MISMATCH for r in records)


def to_json(records: Sequence[Record]) -> str:
    rows = []
    for r in records:
        row = {k: _jsonable(v) for k, v in asdict(r).items()}
        rows.append(row)
    return json.dumps(rows, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def render_table(records: Sequence[Record]) -> str:
    def cell(v) -> str:
        v = _jsonable(v)
        text = json.dumps(v, ensure_ascii=False) if isinstance(v, (list, dict)) else ("" if v is None else str(v))
        return text if len(text) <= 40 else text[:37] + "..."

    header = ("instance", "check", "predicted", "measured", "verdict")
    body = [(f"{r.family}({r.d},{r.l})", r.check, cell(r.predicted), cell(r.measured), r.verdict) for r in records]
    widths = [max(len(row[i]) for row in [header, *body]) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in [header, *body]]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"
