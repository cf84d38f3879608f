"""A small immutable digraph and the brute-force analyses run on it.

Everything here works on vertex indices; labels only ride along so results
can be reported as words. Distances and means are exact (ints and
``Fraction``); nothing in this module uses floating point.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Hashable, Iterable, Sequence

import numpy as np

Arc = tuple[int, int]


class NotStronglyConnected(ValueError):
    def __init__(self, source: Hashable, target: Hashable):
        super().__init__(f"digraph is not strongly connected: {target} unreachable from {source}")
        self.pair = (source, target)


class NoCycle(ValueError):
    pass


class GuardExceeded(RuntimeError):
    pass


class Digraph:
    """Vertex-indexed simple digraph with sorted forward and reverse lists."""

    __slots__ = ("labels", "forward", "reverse", "_index", "meta")

    def __init__(self, labels: Sequence[Hashable], arcs: Iterable[Arc], meta: dict | None = None):
        self.labels = tuple(labels)
        n = len(self.labels)
        fwd: list[set[int]] = [set() for _ in range(n)]
        for u, v in arcs:
            if u == v:
                raise ValueError(f"loop at vertex {self.labels[u]}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) out of range")
            fwd[u].add(v)
        rev: list[list[int]] = [[] for _ in range(n)]
        for u in range(n):
            for v in fwd[u]:
                rev[v].append(u)
        self.forward = tuple(tuple(sorted(s)) for s in fwd)
        self.reverse = tuple(tuple(sorted(r)) for r in rev)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != n:
            raise ValueError("duplicate vertex labels")
        self.meta = dict(meta or {})

    @classmethod
    def from_label_arcs(cls, labels: Sequence[Hashable], label_arcs: Iterable[tuple[Hashable, Hashable]],
                        meta: dict | None = None) -> "Digraph":
        index = {lab: i for i, lab in enumerate(labels)}
        return cls(labels, ((index[a], index[b]) for a, b in label_arcs), meta)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return sum(len(f) for f in self.forward)

    def index(self, label: Hashable) -> int:
        return self._index[label]

    def __contains__(self, label: Hashable) -> bool:
        return label in self._index

    def arcs(self) -> list[Arc]:
        return [(u, v) for u in range(self.n) for v in self.forward[u]]

    def label_arcs(self) -> set[tuple[Hashable, Hashable]]:
        labs = self.labels
        return {(labs[u], labs[v]) for u, v in self.arcs()}

    def has_arc(self, u: int, v: int) -> bool:
        fu = self.forward[u]
        # forward lists are short; a scan beats building sets for every vertex
        return v in fu

    def out_degrees(self) -> list[int]:
        return [len(f) for f in self.forward]

    def in_degrees(self) -> list[int]:
        return [len(r) for r in self.reverse]

    def min_degree(self) -> int:
        return min(min(self.out_degrees()), min(self.in_degrees()))

    def regularity(self) -> int | None:
        degs = set(self.out_degrees()) | set(self.in_degrees())
        return degs.pop() if len(degs) == 1 else None

    def converse(self) -> "Digraph":
        return Digraph(self.labels, ((v, u) for u, v in self.arcs()), self.meta)

    def same_labeled(self, other: "Digraph") -> bool:
        return self.labels == other.labels and self.forward == other.forward

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Digraph) and self.same_labeled(other)

    def __hash__(self) -> int:
        return hash((self.labels, self.forward))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.m})"


def cycle_digraph(n: int) -> Digraph:
    return Digraph(range(n), ((i, (i + 1) % n) for i in range(n)))


def complete_symmetric_digraph(n: int) -> Digraph:
    return Digraph(range(n), ((u, v) for u in range(n) for v in range(n) if u != v))


# --------------------------------------------------------------------- distances

@dataclass(frozen=True)
class DistanceField:
    source: int
    dist: tuple[int | None, ...]

    def layers(self) -> list[int]:
        reached = [k for k in self.dist if k is not None]
        sizes = [0] * (max(reached) + 1)
        for k in reached:
            sizes[k] += 1
        return sizes


def _bfs_list(adj: Sequence[Sequence[int]], source: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return dist


def bfs(g: Digraph, source: int) -> DistanceField:
    if not 0 <= source < g.n:
        raise IndexError(f"source {source} out of range")
    return DistanceField(source, tuple(k if k >= 0 else None for k in _bfs_list(g.forward, source)))


def distance_matrix(g: Digraph) -> np.ndarray:
    """All-pairs distances; raises on the first unreachable pair."""
    out = np.empty((g.n, g.n), dtype=np.int64)
    for s in range(g.n):
        row = _bfs_list(g.forward, s)
        if -1 in row:
            t = row.index(-1)
            raise NotStronglyConnected(g.labels[s], g.labels[t])
        out[s] = row
    return out


def is_strongly_connected(g: Digraph) -> bool:
    if g.n == 0:
        return True
    return -1 not in _bfs_list(g.forward, 0) and -1 not in _bfs_list(g.reverse, 0)


def diameter(g: Digraph) -> int:
    return int(distance_matrix(g).max())


def mean_distance(g: Digraph) -> Fraction:
    """Sum of all n^2 ordered distances (zeros included) over n^2."""
    total = int(distance_matrix(g).sum())
    return Fraction(total, g.n * g.n)


def layer_profile(g: Digraph, source: int) -> list[int]:
    field_ = bfs(g, source)
    if None in field_.dist:
        raise NotStronglyConnected(g.labels[source], g.labels[field_.dist.index(None)])
    return field_.layers()


def girth_bfs(g: Digraph) -> int:
    best = None
    for v in range(g.n):
        if not g.reverse[v]:
            continue
        dist = _bfs_list(g.forward, v)
        for u in g.reverse[v]:
            if dist[u] >= 0 and (best is None or dist[u] + 1 < best):
                best = dist[u] + 1
    if best is None:
        raise NoCycle("digraph has no directed cycle")
    return best


def girth_walk_counts(g: Digraph) -> int:
    """Smallest k with a nonzero diagonal in A^k (independent girth check)."""
    a = adjacency_matrix(g)
    power = np.eye(g.n, dtype=np.int64)
    for k in range(1, g.n + 1):
        power = np.minimum(power @ a, 1)
        if power.trace() > 0:
            return k
    raise NoCycle("digraph has no directed cycle")


def adjacency_matrix(g: Digraph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.arcs():
        a[u, v] = 1
    return a


# --------------------------------------------------------------------- semigirth

class Diagonal(str, enum.Enum):
    """How a pair (x, x) enters the semigirth conditions.

    ``CLOSED_WALK`` measures x against itself by its shortest closed walk;
    ``ZERO`` uses dist(x, x) = 0, which only asks for the absence of loops.
    """
    CLOSED_WALK = "closed_walk"
    ZERO = "zero"


@dataclass(frozen=True)
class SemigirthResult:
    gamma: int
    diameter: int
    witness_pair: tuple[Hashable, Hashable, str] | None = None
    diagonal: Diagonal = Diagonal.CLOSED_WALK


def walk_count_table(g: Digraph, max_len: int) -> np.ndarray:
    """``W[k, x, y]`` = number of x->y walks of length k, saturated at 2."""
    a = adjacency_matrix(g)
    table = np.empty((max_len + 1, g.n, g.n), dtype=np.int64)
    table[0] = np.eye(g.n, dtype=np.int64)
    for k in range(1, max_len + 1):
        table[k] = np.minimum(table[k - 1] @ a, 2)
    return table


def semigirth(g: Digraph, diagonal: Diagonal = Diagonal.CLOSED_WALK) -> SemigirthResult:
    """Largest gamma <= D such that shortest paths within distance gamma are unique
    and, below gamma, no path one step longer exists.

    Walk counts stand in for path counts: in a loopless digraph any walk of
    length dist or dist + 1 between its endpoints is a path.
    """
    if any(u in g.forward[u] for u in range(g.n)):
        raise ValueError("semigirth is undefined with loops")
    dist = distance_matrix(g)
    diam = int(dist.max())
    eff = dist.copy()
    if diagonal is Diagonal.CLOSED_WALK:
        for v in range(g.n):
            back = [dist[v, u] + 1 for u in g.reverse[v]]
            eff[v, v] = min(back) if back else 0
    walks = walk_count_table(g, int(eff.max()) + 1)
    idx = np.arange(g.n)
    count_at = walks[eff, idx[:, None], idx[None, :]]
    count_next = walks[eff + 1, idx[:, None], idx[None, :]]
    unique = count_at == 1
    no_longer = count_next == 0

    # non-unique shortest paths at distance k force gamma <= k - 1;
    # an extra path of length k + 1 at distance k forces gamma <= k
    bounds = [(diam, None)]
    for mask, shift, reason in ((~unique, 1, "shortest paths of length {k} are not unique"),
                                (~no_longer, 0, "a path of length {k1} exists beside distance {k}")):
        if mask.any():
            ks = np.where(mask, eff, np.iinfo(np.int64).max)
            x, y = np.unravel_index(int(np.argmin(ks)), ks.shape)
            k = int(eff[x, y])
            bounds.append((k - shift, (g.labels[x], g.labels[y], reason.format(k=k, k1=k + 1))))
    gamma, witness = min(bounds, key=lambda b: b[0])
    return SemigirthResult(max(gamma, 1), diam, witness, diagonal)


def semigirth_by_paths(g: Digraph, diagonal: Diagonal = Diagonal.CLOSED_WALK) -> int:
    """Reference semigirth by explicit simple-path enumeration (small n only)."""
    dist = distance_matrix(g)
    diam = int(dist.max())

    def count_paths(x: int, y: int, length: int, cap: int = 2) -> int:
        # simple paths x -> y with exactly `length` arcs; closed when x == y
        found = 0
        stack = [(x, 0, frozenset([x]))]
        while stack:
            u, k, seen = stack.pop()
            if k == length:
                if u == y:
                    found += 1
                    if found >= cap:
                        return found
                continue
            for v in g.forward[u]:
                if v == y and k + 1 == length:
                    stack.append((v, k + 1, seen))
                elif v not in seen:
                    stack.append((v, k + 1, seen | {v}))
        return found

    best = diam
    for x in range(g.n):
        for y in range(g.n):
            if x == y:
                if diagonal is Diagonal.ZERO:
                    continue
                k = min(dist[x, u] + 1 for u in g.reverse[x])
            else:
                k = int(dist[x, y])
            if count_paths(x, y, k) != 1:
                best = min(best, k - 1)
            elif count_paths(x, y, k + 1) != 0:
                best = min(best, k)
    return max(best, 1)


# ------------------------------------------------------------------ connectivity

class _UnitFlow:
    """Residual network for unit-capacity max-flow by BFS augmentation."""

    def __init__(self, n_nodes: int, edges: Iterable[tuple[int, int]]):
        self.n = n_nodes
        self.head: list[int] = []
        self.cap: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(n_nodes)]
        for u, v in edges:
            self.adj[u].append(len(self.head))
            self.head.append(v)
            self.cap.append(1)
            self.adj[v].append(len(self.head))
            self.head.append(u)
            self.cap.append(0)

    def max_flow(self, s: int, t: int, cutoff: int) -> int:
        cap = list(self.cap)
        head, adj = self.head, self.adj
        flow = 0
        while flow < cutoff:
            parent_edge = [-1] * self.n
            parent_edge[s] = -2
            queue = deque([s])
            found = False
            while queue and not found:
                u = queue.popleft()
                for e in adj[u]:
                    if cap[e] and parent_edge[head[e]] == -1:
                        parent_edge[head[e]] = e
                        if head[e] == t:
                            found = True
                            break
                        queue.append(head[e])
            if not found:
                break
            v = t
            while v != s:
                e = parent_edge[v]
                cap[e] -= 1
                cap[e ^ 1] += 1
                v = head[e ^ 1]
            flow += 1
        return flow


def _split_network(g: Digraph) -> _UnitFlow:
    # v_in = 2v, v_out = 2v + 1
    edges = [(2 * v, 2 * v + 1) for v in range(g.n)]
    edges += [(2 * u + 1, 2 * v) for u, v in g.arcs()]
    return _UnitFlow(2 * g.n, edges)


def local_vertex_connectivity(g: Digraph, s: int, t: int, cutoff: int | None = None,
                              network: _UnitFlow | None = None) -> int:
    """Max number of internally vertex-disjoint s->t paths (s, t non-adjacent)."""
    if g.has_arc(s, t):
        raise ValueError("local vertex connectivity needs a non-adjacent pair")
    network = network or _split_network(g)
    return network.max_flow(2 * s + 1, 2 * t, cutoff if cutoff is not None else g.n)


def local_arc_connectivity(g: Digraph, s: int, t: int, cutoff: int | None = None,
                           network: _UnitFlow | None = None) -> int:
    network = network or _UnitFlow(g.n, g.arcs())
    return network.max_flow(s, t, cutoff if cutoff is not None else g.m)


def vertex_connectivity(g: Digraph, exhaustive: bool = False) -> int:
    """kappa by Menger over non-adjacent ordered pairs.

    Default mode only tries pairs touching v_1, ..., v_{k+1}: one of them
    lies outside any minimum separator. ``exhaustive`` scans every pair.
    """
    if not is_strongly_connected(g):
        return 0
    net = _split_network(g)
    best = g.n - 1
    if exhaustive:
        for s in range(g.n):
            for t in range(g.n):
                if s != t and not g.has_arc(s, t):
                    best = min(best, local_vertex_connectivity(g, s, t, best, net))
        return best
    best = min(best, g.min_degree())
    i = 0
    while i <= best and i < g.n:
        v = i
        for w in range(g.n):
            if w == v:
                continue
            if not g.has_arc(v, w):
                best = min(best, local_vertex_connectivity(g, v, w, best, net))
            if not g.has_arc(w, v):
                best = min(best, local_vertex_connectivity(g, w, v, best, net))
        i += 1
    return best


def arc_connectivity(g: Digraph, exhaustive: bool = False) -> int:
    if not is_strongly_connected(g):
        return 0
    net = _UnitFlow(g.n, g.arcs())
    best = g.min_degree()
    sources = range(g.n) if exhaustive else (0,)
    for v in sources:
        for w in range(g.n):
            if w != v:
                best = min(best, net.max_flow(v, w, best), net.max_flow(w, v, best))
    return best


def _masks(adj: Sequence[Sequence[int]]) -> list[int]:
    return [sum(1 << v for v in row) for row in adj]


def _reach(masks: Sequence[int], start: int, alive: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= masks[low.bit_length() - 1]
            f ^= low
        nxt &= alive & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def _bfs_tree_arcs(masks: Sequence[int], start: int, alive: int, reverse: bool) -> set[Arc]:
    seen = 1 << start
    frontier = [start]
    tree: set[Arc] = set()
    while frontier:
        nxt = []
        for u in frontier:
            m = masks[u] & alive & ~seen
            seen |= m
            while m:
                low = m & -m
                v = low.bit_length() - 1
                tree.add((v, u) if reverse else (u, v))
                nxt.append(v)
                m ^= low
        frontier = nxt
    return tree


@dataclass(frozen=True)
class SuperResult:
    holds: bool
    checked: int
    disconnecting: int
    witness: tuple | None = None


@dataclass(frozen=True)
class ConnectivityReport:
    delta: int
    kappa: int
    lam: int
    super_kappa: bool | None = None
    super_lambda: bool | None = None
    nontrivial_min_cut_witness: tuple | None = field(default=None)


def is_super_lambda(g: Digraph, lam: int | None = None, max_subsets: int = 10**7) -> SuperResult:
    """Exhaustive check that every minimum arc-disconnecting set is trivial.

    All arc subsets of size lambda are tried. A disconnecting subset is
    trivial when it is the full out-arc or in-arc set of one vertex.
    """
    delta = g.min_degree()
    lam = arc_connectivity(g) if lam is None else lam
    if lam != delta:
        return SuperResult(False, 0, 0, ("lambda < delta", lam, delta))
    arcs = g.arcs()
    if comb(len(arcs), lam) > max_subsets:
        raise GuardExceeded(f"C({len(arcs)}, {lam}) subsets: instance too large for exhaustive superconnectivity")
    out_sets = {frozenset((v, w) for w in g.forward[v]) for v in range(g.n) if len(g.forward[v]) == lam}
    in_sets = {frozenset((u, v) for u in g.reverse[v]) for v in range(g.n) if len(g.reverse[v]) == lam}
    trivial = out_sets | in_sets

    fwd, rev = _masks(g.forward), _masks(g.reverse)
    alive = (1 << g.n) - 1
    checked = disconnecting = 0

    def disconnects(removed: Sequence[Arc], check_f: bool, check_b: bool) -> bool:
        for u, v in removed:
            fwd[u] &= ~(1 << v)
            rev[v] &= ~(1 << u)
        try:
            return (check_f and _reach(fwd, 0, alive) != alive) or (check_b and _reach(rev, 0, alive) != alive)
        finally:
            for u, v in removed:
                fwd[u] |= 1 << v
                rev[v] |= 1 << u

    witness = None
    for prefix in combinations(range(len(arcs)), lam - 1):
        removed = [arcs[i] for i in prefix]
        for u, v in removed:
            fwd[u] &= ~(1 << v)
            rev[v] &= ~(1 << u)
        # only an arc of a surviving BFS tree can break reachability from/to vertex 0
        ftree = _bfs_tree_arcs(fwd, 0, alive, reverse=False)
        btree = _bfs_tree_arcs(rev, 0, alive, reverse=True)
        prefix_cut = _reach(fwd, 0, alive) != alive or _reach(rev, 0, alive) != alive
        for u, v in removed:
            fwd[u] |= 1 << v
            rev[v] |= 1 << u
        start = prefix[-1] + 1 if prefix else 0
        for j in range(start, len(arcs)):
            checked += 1
            a = arcs[j]
            in_f, in_b = a in ftree, a in btree
            subset = removed + [a]
            if prefix_cut:
                cut = True
            elif not (in_f or in_b):
                cut = False
            else:
                cut = disconnects(subset, in_f, in_b)
            if cut:
                disconnecting += 1
                if frozenset(subset) not in trivial and witness is None:
                    witness = tuple((g.labels[x], g.labels[y]) for x, y in subset)
    return SuperResult(witness is None, checked, disconnecting, witness)


def is_super_kappa(g: Digraph, kappa: int | None = None, max_subsets: int = 10**7) -> SuperResult:
    """Exhaustive check that every minimum vertex-disconnecting set is trivial
    (equal to the out- or in-neighbourhood of a single remaining vertex)."""
    delta = g.min_degree()
    kappa = vertex_connectivity(g) if kappa is None else kappa
    if kappa != delta:
        return SuperResult(False, 0, 0, ("kappa < delta", kappa, delta))
    if comb(g.n, kappa) > max_subsets:
        raise GuardExceeded(f"C({g.n}, {kappa}) subsets: instance too large for exhaustive superconnectivity")
    trivial = {frozenset(g.forward[v]) for v in range(g.n) if len(g.forward[v]) == kappa}
    trivial |= {frozenset(g.reverse[v]) for v in range(g.n) if len(g.reverse[v]) == kappa}
    fwd, rev = _masks(g.forward), _masks(g.reverse)
    full = (1 << g.n) - 1
    checked = disconnecting = 0
    witness = None
    for subset in combinations(range(g.n), kappa):
        checked += 1
        alive = full
        for v in subset:
            alive &= ~(1 << v)
        root = (alive & -alive).bit_length() - 1
        if alive & (alive - 1) == 0:
            continue  # one vertex left: trivial digraph, not a disconnection
        if _reach(fwd, root, alive) != alive or _reach(rev, root, alive) != alive:
            disconnecting += 1
            if frozenset(subset) not in trivial and witness is None:
                witness = tuple(g.labels[v] for v in subset)
    return SuperResult(witness is None, checked, disconnecting, witness)


def connectivity_report(g: Digraph, superconnectivity: bool = False, max_subsets: int = 10**7) -> ConnectivityReport:
    delta = g.min_degree()
    kappa = vertex_connectivity(g)
    lam = arc_connectivity(g)
    sk = sl = None
    witness = None
    if superconnectivity:
        sl_res = is_super_lambda(g, lam, max_subsets)
        sk_res = is_super_kappa(g, kappa, max_subsets)
        sk, sl = sk_res.holds, sl_res.holds
        witness = sl_res.witness or sk_res.witness
    return ConnectivityReport(delta, kappa, lam, sk, sl, witness)


# ------------------------------------------------------- Euler, Hamilton, antipodes

def is_eulerian(g: Digraph) -> bool:
    return is_strongly_connected(g) and g.out_degrees() == g.in_degrees()


@dataclass(frozen=True)
class HamiltonResult:
    cycle: tuple[int, ...] | None
    expansions: int
    exhausted: bool  # True when the budget ran out before a verdict

    @property
    def found(self) -> bool:
        return self.cycle is not None


def find_hamiltonian_cycle(g: Digraph, budget: int = 10**7) -> HamiltonResult:
    """Backtracking search from vertex 0, trying successors with the fewest
    onward options first. Never reports non-Hamiltonicity on budget exhaustion:
    ``cycle is None and not exhausted`` means the search space was exhausted."""
    if g.n > 100:
        raise GuardExceeded("Hamiltonian search limited to n <= 100")
    n = g.n
    if n == 1:
        return HamiltonResult(None, 0, False)
    visited = [False] * n
    visited[0] = True
    path = [0]
    expansions = 0

    def options(u: int) -> list[int]:
        cand = [v for v in g.forward[u] if not visited[v]]
        cand.sort(key=lambda v: sum(1 for w in g.forward[v] if not visited[w]))
        return cand

    stack = [iter(options(0))]
    while stack:
        if expansions >= budget:
            return HamiltonResult(None, expansions, True)
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            last = path.pop()
            if path:
                visited[last] = False
            continue
        expansions += 1
        visited[nxt] = True
        path.append(nxt)
        if len(path) == n:
            if 0 in g.forward[nxt]:
                return HamiltonResult(tuple(path), expansions, False)
            visited[nxt] = False
            path.pop()
            continue
        # visiting nxt may strand a predecessor with no way onward
        dead = any(not visited[w] and all(visited[x] for x in g.forward[w]) and 0 not in g.forward[w]
                   for w in g.reverse[nxt])
        if dead:
            visited[nxt] = False
            path.pop()
            continue
        stack.append(iter(options(nxt)))
    return HamiltonResult(None, expansions, False)


def replay_cycle(g: Digraph, cycle: Sequence[int]) -> bool:
    if sorted(cycle) != list(range(g.n)):
        return False
    return all(g.has_arc(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle)))


class Antipodality(str, enum.Enum):
    ANTIPODAL = "antipodal"
    WEAKLY_ANTIPODAL = "weakly_antipodal"
    NEITHER = "neither"


def antipodality_class(g: Digraph) -> Antipodality:
    dist = distance_matrix(g)
    diam = dist.max()
    antipode = {}
    for u in range(g.n):
        far = np.flatnonzero(dist[u] == diam)
        if len(far) != 1:
            return Antipodality.NEITHER
        antipode[u] = int(far[0])
    if all(antipode[antipode[u]] == u for u in range(g.n)):
        return Antipodality.ANTIPODAL
    return Antipodality.WEAKLY_ANTIPODAL
