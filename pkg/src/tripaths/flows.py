"""Disjoint-path machinery: unit-capacity flows on vertex-split networks.

Every request (internally disjoint paths, fans, set-to-set path
systems, cuts, connectivity) reduces to max flow on a network where
each interior vertex is split into an in/out pair joined by a
capacity-1 arc.  Augmentation uses shortest paths (BFS) with arcs
scanned in insertion order, so results are deterministic; an optional
order seed reshuffles per-vertex neighbor order for randomized
restarts.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass

from .errors import InsufficientConnectivity

_INF = 1 << 30


@dataclass(frozen=True)
class Path:
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def reverse(self) -> "Path":
        return Path(tuple(reversed(self.vertices)))

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [
            (vs[i], vs[i + 1]) if vs[i] < vs[i + 1] else (vs[i + 1], vs[i])
            for i in range(len(vs) - 1)
        ]

    def interior(self) -> tuple[int, ...]:
        return self.vertices[1:-1]


class PathKind(enum.Enum):
    INTERNALLY_DISJOINT = "internally-disjoint"
    FULLY_DISJOINT = "fully-disjoint"


@dataclass(frozen=True)
class PathFamily:
    paths: tuple[Path, ...]
    kind: PathKind

    def __len__(self) -> int:
        return len(self.paths)


@dataclass
class StepCounter:
    used: int = 0

    def add(self, k: int = 1) -> None:
        self.used += k


@dataclass(frozen=True)
class CutResult:
    vertices: tuple[int, ...]
    adjacent: bool


class _Net:
    """Residual network; arcs stored as paired forward/backward entries."""

    def __init__(self, nodes: int):
        self.head: list[list[int]] = [[] for _ in range(nodes)]
        self.to: list[int] = []
        self.cap: list[int] = []
        self.orig: list[int] = []

    def add(self, u: int, v: int, c: int) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.orig.append(c)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)
        self.orig.append(0)

    def max_flow(self, s: int, t: int, limit: int, counter: StepCounter | None = None) -> int:
        value = 0
        nodes = len(self.head)
        while value < limit:
            if counter is not None:
                counter.add()
            parent = [-1] * nodes
            parent[s] = -2
            queue = [s]
            qi = 0
            while qi < len(queue) and parent[t] == -1:
                u = queue[qi]
                qi += 1
                for e in self.head[u]:
                    w = self.to[e]
                    if self.cap[e] > 0 and parent[w] == -1:
                        parent[w] = e
                        if w == t:
                            break
                        queue.append(w)
            if parent[t] == -1:
                break
            bottleneck = _INF
            node = t
            while node != s:
                e = parent[node]
                bottleneck = min(bottleneck, self.cap[e])
                node = self.to[e ^ 1]
            bottleneck = min(bottleneck, limit - value)
            node = t
            while node != s:
                e = parent[node]
                self.cap[e] -= bottleneck
                self.cap[e ^ 1] += bottleneck
                node = self.to[e ^ 1]
            value += bottleneck
        return value

    def flow_on(self, e: int) -> int:
        return self.orig[e] - self.cap[e]

    def residual_reachable(self, s: int) -> set[int]:
        seen = {s}
        queue = [s]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            for e in self.head[u]:
                w = self.to[e]
                if self.cap[e] > 0 and w not in seen:
                    seen.add(w)
                    queue.append(w)
        return seen


class _SplitNet:
    """Vertex-split wrapper keeping the graph/vertex bookkeeping together."""

    def __init__(self, view, order_seed=None, entry_blocked=(), exit_blocked=(),
                 no_split=(), uncapped=(), extra_nodes=0):
        verts = view.vertices()
        self.verts = verts
        self.idx = {v: i for i, v in enumerate(verts)}
        self.base = 2 * len(verts)
        self.net = _Net(self.base + extra_nodes)
        no_split = set(no_split)
        uncapped = set(uncapped)
        entry_blocked = set(entry_blocked)
        exit_blocked = set(exit_blocked)
        for v in verts:
            if v in no_split:
                continue
            cap = _INF if v in uncapped else 1
            self.net.add(self.vin(v), self.vout(v), cap)
        rng = random.Random(order_seed) if order_seed is not None else None
        for v in verts:
            if v in exit_blocked or v in no_split:
                continue
            nbrs = [w for w, _ in view.neighbors(v)]
            if rng is not None:
                rng.shuffle(nbrs)
            for w in nbrs:
                if w in entry_blocked:
                    continue
                self.net.add(self.vout(v), self.vin(w), 1)

    def vin(self, v: int) -> int:
        return 2 * self.idx[v]

    def vout(self, v: int) -> int:
        return 2 * self.idx[v] + 1

    def node_vertex(self, node: int) -> int | None:
        if node < self.base:
            return self.verts[node // 2]
        return None

    def extract_paths(self, source_node: int, sink_node: int) -> list[Path]:
        """Decompose the current flow into walks from source to sink.

        Unit interior capacities make every walk a simple path; leftover
        circulation (if any) never touches the source and is ignored.
        """
        net = self.net
        remaining: dict[int, int] = {}
        used_out: dict[int, list[int]] = {}
        for node in range(len(net.head)):
            for e in net.head[node]:
                if e % 2 == 0 and net.flow_on(e) > 0:
                    remaining[e] = net.flow_on(e)
                    used_out.setdefault(node, []).append(e)
        paths = []
        while True:
            arcs = used_out.get(source_node, [])
            start = next((e for e in arcs if remaining.get(e, 0) > 0), None)
            if start is None:
                break
            node_path = [source_node]
            e = start
            while True:
                remaining[e] -= 1
                node = net.to[e]
                node_path.append(node)
                if node == sink_node:
                    break
                e = next(a for a in used_out.get(node, []) if remaining.get(a, 0) > 0)
            vp: list[int] = []
            for node in node_path:
                v = self.node_vertex(node)
                if v is not None and (not vp or vp[-1] != v):
                    vp.append(v)
            paths.append(Path(tuple(vp)))
        return paths

    def witness_cut(self, source_node: int, terminal_vertices: set[int]) -> tuple[int, ...]:
        """Vertex separator read off the residual cut.

        Crossing split arcs name their vertex; crossing edge arcs name
        whichever endpoint is not an uncapped terminal.
        """
        net = self.net
        reach = net.residual_reachable(source_node)
        cut: set[int] = set()
        for node in range(len(net.head)):
            if node not in reach:
                continue
            for e in net.head[node]:
                if e % 2 or net.orig[e] == 0 or net.to[e] in reach:
                    continue
                u = self.node_vertex(node)
                w = self.node_vertex(net.to[e])
                if u is not None and w is not None and u == w:
                    cut.add(u)  # split arc
                elif w is not None and w not in terminal_vertices:
                    cut.add(w)
                elif u is not None and u not in terminal_vertices:
                    cut.add(u)
                elif w is not None:
                    cut.add(w)
        return tuple(sorted(cut))


def shortest_path(view, u: int, v: int, avoid=frozenset()) -> Path | None:
    """BFS path from u to v with interior vertices outside `avoid`."""
    avoid = frozenset(avoid)
    assert u not in avoid and v not in avoid, (u, v)
    if u == v:
        return Path((u,))
    parent = {u: None}
    queue = [u]
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        for w, _ in view.neighbors(x):
            if w in parent or w in avoid:
                continue
            parent[w] = x
            if w == v:
                out = [w]
                while parent[out[-1]] is not None:
                    out.append(parent[out[-1]])
                return Path(tuple(reversed(out)))
            queue.append(w)
    return None


def max_internally_disjoint_paths(view, u: int, v: int, limit: int | None = None,
                                  order_seed: int | None = None,
                                  counter: StepCounter | None = None) -> PathFamily:
    """All (or `limit`) internally disjoint u-v paths; adjacency contributes
    the direct edge as a one-edge path."""
    assert u != v, u
    assert view.contains(u) and view.contains(v), (u, v)
    cap = min(view.degree(u), view.degree(v))
    goal = cap if limit is None else min(limit, cap)
    sn = _SplitNet(view, order_seed=order_seed,
                   entry_blocked={u}, exit_blocked={v}, uncapped={u, v})
    sn.net.max_flow(sn.vout(u), sn.vin(v), goal, counter)
    paths = sn.extract_paths(sn.vout(u), sn.vin(v))
    return PathFamily(tuple(paths), PathKind.INTERNALLY_DISJOINT)


def k_fan(view, x: int, targets, k: int, order_seed: int | None = None,
          counter: StepCounter | None = None) -> PathFamily:
    """k paths from x to k distinct members of `targets`, pairwise sharing
    only x and internally avoiding the whole target set."""
    ys = sorted(set(targets))
    assert len(ys) == len(list(targets)), "duplicate fan targets"
    if x in ys:
        raise ValueError(f"fan root {x} cannot be a target")
    if k > len(ys):
        raise ValueError(f"fan of {k} paths needs at least {k} targets, got {len(ys)}")
    for y in ys:
        assert view.contains(y), y
    sn = _SplitNet(view, order_seed=order_seed, entry_blocked={x},
                   no_split=set(ys), uncapped={x}, extra_nodes=1)
    tnode = sn.base
    for y in ys:
        sn.net.add(sn.vin(y), tnode, 1)
    value = sn.net.max_flow(sn.vout(x), tnode, k, counter)
    paths = sn.extract_paths(sn.vout(x), tnode)
    fam = PathFamily(tuple(paths), PathKind.INTERNALLY_DISJOINT)
    if value < k:
        cut = sn.witness_cut(sn.vout(x), {x})
        raise InsufficientConnectivity(
            f"fan from {x} reached only {value} of {k} targets",
            achieved=fam, witness_cut=cut)
    return fam


def disjoint_set_paths(view, xs, ys, k: int, order_seed: int | None = None,
                       counter: StepCounter | None = None) -> PathFamily:
    """k pairwise fully disjoint paths from X to Y, internally avoiding
    X and Y; members of X∩Y count as zero-length paths."""
    xset = sorted(set(xs))
    yset = sorted(set(ys))
    assert len(xset) == len(list(xs)) and len(yset) == len(list(ys)), "duplicate terminals"
    if k > min(len(xset), len(yset)):
        raise ValueError(f"{k} disjoint paths need {k} terminals on each side")
    for v in xset + yset:
        assert view.contains(v), v
    shared = sorted(set(xset) & set(yset))
    zero = [Path((w,)) for w in shared[:k]]
    need = k - len(zero)
    if need <= 0:
        return PathFamily(tuple(zero), PathKind.FULLY_DISJOINT)
    xonly = [v for v in xset if v not in shared]
    yonly = [v for v in yset if v not in shared]
    sub = view.without(shared)
    sn = _SplitNet(sub, order_seed=order_seed,
                   entry_blocked=set(xonly), exit_blocked=set(yonly),
                   no_split=set(yonly), extra_nodes=2)
    snode, tnode = sn.base, sn.base + 1
    for x in xonly:
        sn.net.add(snode, sn.vin(x), 1)
    for y in yonly:
        sn.net.add(sn.vin(y), tnode, 1)
    value = sn.net.max_flow(snode, tnode, need, counter)
    flow_paths = sn.extract_paths(snode, tnode)
    fam = PathFamily(tuple(zero + flow_paths), PathKind.FULLY_DISJOINT)
    if value < need:
        cut = sn.witness_cut(snode, set())
        raise InsufficientConnectivity(
            f"only {len(zero) + value} of {k} disjoint set paths exist",
            achieved=fam, witness_cut=tuple(sorted(set(cut) | set(shared))))
    return fam


def _flow_value(view, u: int, v: int, drop_direct: bool, counter=None) -> tuple[int, "_SplitNet"]:
    sn = _SplitNet(view, entry_blocked={u}, exit_blocked={v}, uncapped={u, v})
    if drop_direct:
        # zero out both arcs of the direct edge
        net = sn.net
        for e in list(net.head[sn.vout(u)]):
            if e % 2 == 0 and net.to[e] == sn.vin(v):
                net.cap[e] = 0
                net.orig[e] = 0
    cap = min(view.degree(u), view.degree(v)) + 1
    value = sn.net.max_flow(sn.vout(u), sn.vin(v), cap, counter)
    return value, sn


def min_vertex_cut(view, u: int, v: int, counter: StepCounter | None = None) -> CutResult:
    """Minimum u,v-separator; adjacent pairs are cut in the graph minus
    the direct edge and flagged."""
    adjacent = view.adjacent(u, v)
    _, sn = _flow_value(view, u, v, drop_direct=adjacent, counter=counter)
    cut = sn.witness_cut(sn.vout(u), {u, v})
    return CutResult(cut, adjacent)


def local_connectivity(view, u: int, v: int, counter: StepCounter | None = None) -> int:
    """Maximum number of internally disjoint u-v paths (direct edge counts)."""
    value, _ = _flow_value(view, u, v, drop_direct=False, counter=counter)
    return value


def vertex_connectivity(view, counter: StepCounter | None = None) -> int:
    """Connectivity of the view: 0 if disconnected, n-1 if complete,
    else the min over a standard candidate family of pair connectivities."""
    verts = view.vertices()
    nv = len(verts)
    if nv < 2:
        raise ValueError("connectivity needs at least two vertices")
    # connectivity check by BFS
    seen = {verts[0]}
    queue = [verts[0]]
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        for w, _ in view.neighbors(x):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) < nv:
        return 0
    degs = {v: view.degree(v) for v in verts}
    if all(d == nv - 1 for d in degs.values()):
        return nv - 1
    v0 = min(verts, key=lambda v: (degs[v], v))
    nbrs = sorted(w for w, _ in view.neighbors(v0))
    nbr_set = set(nbrs)
    best = degs[v0]
    for w in verts:
        if w == v0 or w in nbr_set:
            continue
        best = min(best, local_connectivity(view, v0, w, counter))
    for i in range(len(nbrs)):
        for j in range(i + 1, len(nbrs)):
            x, y = nbrs[i], nbrs[j]
            if not view.adjacent(x, y):
                best = min(best, local_connectivity(view, x, y, counter))
    return best
