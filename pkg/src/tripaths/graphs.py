"""Cayley graphs on S_n for the star/adjacent generator families.

Vertices are Lehmer ranks; adjacency lists carry (neighbor_rank,
generator_index) pairs sorted by neighbor rank.  The copy of a vertex
sigma is sigma(n); deleting the generator that moves position n from
the wheel family splits the graph into n copies, each isomorphic to
the bubble-sort star graph one degree down.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .errors import DuplicateVertices, RankOutOfRange, SameCopy, WrongFamily
from .perms import (
    Family,
    Transposition,
    apply_generator,
    generator_set,
    permutation_text,
    rank,
    unrank,
)


class CayleyGraph:
    """Immutable by convention; build once, share everywhere."""

    def __init__(self, n: int, family: Family):
        gens = generator_set(family, n)
        self.n = n
        self.family = family
        self.gens = gens.members
        self.vertex_count = factorial(n)
        self.degree = len(self.gens)
        perms = [unrank(v, n) for v in range(self.vertex_count)]
        adj = []
        for v in range(self.vertex_count):
            sigma = perms[v]
            row = []
            for gi, t in enumerate(self.gens):
                row.append((rank(apply_generator(sigma, t)), gi))
            row.sort()
            adj.append(tuple(row))
        self.adj = tuple(adj)
        self.copy_id = tuple(p.images[n - 1] for p in perms)
        members: dict[int, list[int]] = {i: [] for i in range(1, n + 1)}
        for v, c in enumerate(self.copy_id):
            members[c].append(v)
        self.copy_members = {c: tuple(vs) for c, vs in members.items()}
        # generator indices whose transposition moves position n (cross edges)
        self._cross_gens = frozenset(
            gi for gi, t in enumerate(self.gens) if t.j == n
        )
        self._gen_index = {t: gi for gi, t in enumerate(self.gens)}

    def check_rank(self, v: int) -> None:
        if not 0 <= v < self.vertex_count:
            raise RankOutOfRange(f"vertex rank {v} outside [0, {self.vertex_count})")

    def perm(self, v: int):
        self.check_rank(v)
        return unrank(v, self.n)

    def vertex_text(self, v: int) -> str:
        return permutation_text(self.perm(v))

    def generator_index(self, t: Transposition) -> int:
        return self._gen_index[t]

    def intra_gen_indices(self) -> frozenset[int]:
        """Indices of generators that fix position n (stay inside a copy)."""
        return frozenset(range(self.degree)) - self._cross_gens


def build(n: int, family: Family) -> CayleyGraph:
    return CayleyGraph(n, family)


@dataclass(frozen=True)
class View:
    """Restriction of a graph to a vertex subset and/or generator subset.

    None means unrestricted.  Views compose; flows and solvers only
    ever see the graph through a View.
    """

    graph: CayleyGraph
    allowed: frozenset[int] | None = None
    allowed_gens: frozenset[int] | None = None

    def contains(self, v: int) -> bool:
        return self.allowed is None or v in self.allowed

    def vertices(self) -> list[int]:
        if self.allowed is None:
            return list(range(self.graph.vertex_count))
        return sorted(self.allowed)

    @property
    def vertex_count(self) -> int:
        if self.allowed is None:
            return self.graph.vertex_count
        return len(self.allowed)

    def neighbors(self, v: int) -> list[tuple[int, int]]:
        assert self.contains(v), v
        out = []
        for w, gi in self.graph.adj[v]:
            if self.allowed_gens is not None and gi not in self.allowed_gens:
                continue
            if self.allowed is not None and w not in self.allowed:
                continue
            out.append((w, gi))
        return out

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def adjacent(self, u: int, v: int) -> bool:
        return any(w == v for w, _ in self.neighbors(u))

    def without(self, removed) -> "View":
        removed = frozenset(removed)
        base = frozenset(self.vertices()) if self.allowed is None else self.allowed
        return View(self.graph, base - removed, self.allowed_gens)

    def restricted_to(self, kept) -> "View":
        kept = frozenset(kept)
        if self.allowed is not None:
            kept = kept & self.allowed
        return View(self.graph, kept, self.allowed_gens)


def full_view(g: CayleyGraph) -> View:
    return View(g)


class AdjacencyView:
    """View-compatible wrapper over an explicit adjacency mapping.

    Lets the solvers and checkers run on small ad-hoc graphs; neighbor
    entries carry -1 in place of a generator index.
    """

    def __init__(self, adjacency: dict):
        nbrs: dict[int, set[int]] = {v: set() for v in adjacency}
        for v, ws in adjacency.items():
            for w in ws:
                if w == v:
                    continue
                nbrs.setdefault(v, set()).add(w)
                nbrs.setdefault(w, set()).add(v)
        self._nbrs = {v: tuple(sorted(ws)) for v, ws in nbrs.items()}

    def contains(self, v: int) -> bool:
        return v in self._nbrs

    def vertices(self) -> list[int]:
        return sorted(self._nbrs)

    @property
    def vertex_count(self) -> int:
        return len(self._nbrs)

    def neighbors(self, v: int) -> list[tuple[int, int]]:
        return [(w, -1) for w in self._nbrs[v]]

    def degree(self, v: int) -> int:
        return len(self._nbrs[v])

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._nbrs[u]

    def without(self, removed) -> "AdjacencyView":
        removed = set(removed)
        return AdjacencyView({
            v: [w for w in ws if w not in removed]
            for v, ws in self._nbrs.items() if v not in removed
        })

    def restricted_to(self, kept) -> "AdjacencyView":
        kept = set(kept)
        return AdjacencyView({
            v: [w for w in ws if w in kept]
            for v, ws in self._nbrs.items() if v in kept
        })


def spanning_intra_view(g: CayleyGraph) -> View:
    """All vertices, intra-copy generators only (wheel: drops (2 n) too).

    For even-degree work on the wheel family this is the spanning
    subgraph generated by the star/adjacent set alone.
    """
    gens = frozenset(
        gi for gi, t in enumerate(g.gens) if not (t.i == 2 and t.j == g.n)
    )
    return View(g, None, gens)


def copy_of(g: CayleyGraph, v: int) -> int:
    g.check_rank(v)
    return g.copy_id[v]


def outside_neighbors(g: CayleyGraph, v: int) -> tuple[int, int, int]:
    """(v+, v-, v*) = images under (1 n), (n-1 n), (2 n); wheel only.

    The three land in the copies sigma(1), sigma(n-1), sigma(2), which
    are pairwise distinct and differ from sigma(n).
    """
    if g.family is not Family.WHEEL:
        raise WrongFamily("outside-neighbor triple is defined for the wheel family")
    g.check_rank(v)
    sigma = g.perm(v)
    plus = rank(apply_generator(sigma, Transposition(1, g.n)))
    minus = rank(apply_generator(sigma, Transposition(g.n - 1, g.n)))
    star = rank(apply_generator(sigma, Transposition(2, g.n)))
    return (plus, minus, star)


def _check_copy_ids(g: CayleyGraph, copies) -> frozenset[int]:
    ids = frozenset(copies)
    if not ids:
        raise ValueError("empty copy set")
    for c in ids:
        if not 1 <= c <= g.n:
            raise RankOutOfRange(f"copy id {c} outside [1, {g.n}]")
    return ids


def copy_union(g: CayleyGraph, copies) -> View:
    ids = _check_copy_ids(g, copies)
    verts = frozenset(v for c in ids for v in g.copy_members[c])
    return View(g, verts, None)


def delete_copies(g: CayleyGraph, copies) -> View:
    ids = _check_copy_ids(g, copies)
    verts = frozenset(
        v for c in range(1, g.n + 1) if c not in ids for v in g.copy_members[c]
    )
    if not verts:
        raise ValueError("deleting every copy leaves nothing")
    return View(g, verts, None)


def cross_edges(g: CayleyGraph, i: int, j: int) -> list[tuple[int, int]]:
    """Edges between copy i and copy j, as (u in copy i, v in copy j), sorted."""
    if g.family is not Family.WHEEL:
        raise WrongFamily("cross-edge enumeration is defined for the wheel family")
    _check_copy_ids(g, (i, j))
    if i == j:
        raise SameCopy(f"cross edges need two distinct copies, got {i} twice")
    out = []
    for u in g.copy_members[i]:
        for w, _gi in g.adj[u]:
            if g.copy_id[w] == j:
                out.append((u, w))
    out.sort()
    return out


def common_neighbors(g: CayleyGraph, vertices) -> list[int]:
    vs = list(vertices)
    if len(vs) not in (2, 3):
        raise ValueError(f"common neighbors take 2 or 3 vertices, got {len(vs)}")
    seen = set()
    for v in vs:
        g.check_rank(v)
        if v in seen:
            raise DuplicateVertices(f"vertex {v} appears twice")
        seen.add(v)
    common = None
    for v in vs:
        nbrs = {w for w, _ in g.adj[v]}
        common = nbrs if common is None else (common & nbrs)
    return sorted(common)


def to_dot(g: CayleyGraph) -> str:
    lines = ["graph cayley {"]
    lines.append(f'  // n={g.n} family={g.family.value}')
    for v in range(g.vertex_count):
        lines.append(f'  {v} [label="{g.vertex_text(v)}"];')
    for v in range(g.vertex_count):
        for w, gi in g.adj[v]:
            if v < w:
                lines.append(f'  {v} -- {w} [gen="{g.gens[gi].text()}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_edgelist(g: CayleyGraph) -> str:
    lines = [f"{g.n} {g.family.value}"]
    for v in range(g.vertex_count):
        for w, gi in g.adj[v]:
            if v < w:
                lines.append(f"{v} {w} {g.gens[gi].text()}")
    return "\n".join(lines) + "\n"
