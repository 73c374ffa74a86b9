"""Solve for tripod structures: three bundles of paths joining a vertex
triple, every path internally disjoint from every other across bundles.

The workhorse is a two-phase flow heuristic with exchange repair and
seeded restarts.  A phase-A shortfall is an exact max-flow statement,
so it certifies the target infeasible.  Small views (at most 40
vertices) fall back to an integral multicommodity program, which is
also the engine behind the exact packing oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp

from ._util import mix_seed
from .errors import OracleScaleExceeded
from .flows import (
    Path,
    StepCounter,
    _SplitNet,
    max_internally_disjoint_paths,
)
from .verification import VerdictReport, check_tripod

MILP_VERTEX_LIMIT = 40


@dataclass(frozen=True)
class StructureTarget:
    ab: int
    ac: int
    bc: int

    @property
    def total(self) -> int:
        return self.ab + self.ac + self.bc

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.ab, self.ac, self.bc)


def standard_target(n: int) -> StructureTarget:
    """Bundle sizes carried by the main construction: (2d-2)^3 for n=2d,
    (2d-2, 2d, 2d) for n=2d+1."""
    d = n // 2
    if n % 2 == 0:
        k = 2 * d - 2
        return StructureTarget(k, k, k)
    return StructureTarget(2 * d - 2, 2 * d, 2 * d)


@dataclass(frozen=True)
class TripodStructure:
    omega: tuple[int, int, int]
    bundle_ab: tuple[Path, ...]
    bundle_ac: tuple[Path, ...]
    bundle_bc: tuple[Path, ...]

    def counts(self) -> tuple[int, int, int]:
        return (len(self.bundle_ab), len(self.bundle_ac), len(self.bundle_bc))

    def all_paths(self) -> list[Path]:
        return list(self.bundle_ab) + list(self.bundle_ac) + list(self.bundle_bc)


@dataclass(frozen=True)
class Budget:
    max_steps: int = 1_000_000
    max_restarts: int = 32


@dataclass(frozen=True)
class TripodFailure:
    reason: str
    steps_used: int
    restarts_used: int
    certified_infeasible: bool = False


def verify_tripod(view, structure: TripodStructure, target: StructureTarget,
                  exact: bool = True) -> VerdictReport:
    return check_tripod(view, structure, target, exact=exact)


_INFEASIBLE = "infeasible"


def _phase_plan(omega, target, pivot):
    a, b, c = omega
    if pivot == "a":
        return (a, (b, target.ab, "ab"), (c, target.ac, "ac"), (b, c, target.bc, "bc"))
    if pivot == "b":
        return (b, (a, target.ab, "ab"), (c, target.bc, "bc"), (a, c, target.ac, "ac"))
    return (c, (a, target.ac, "ac"), (b, target.bc, "bc"), (a, b, target.ab, "ab"))


def _orient(path: Path, start: int) -> Path:
    return path if path.vertices[0] == start else path.reverse()


def _assemble(omega, named_paths) -> TripodStructure:
    a, b, c = omega
    ends = {"ab": (a, b), "ac": (a, c), "bc": (b, c)}
    bundles = {"ab": [], "ac": [], "bc": []}
    for name, path in named_paths:
        bundles[name].append(_orient(path, ends[name][0]))
    return TripodStructure(omega, tuple(bundles["ab"]), tuple(bundles["ac"]),
                           tuple(bundles["bc"]))


def _phase_a(view, pivot_v, sink1, k1, sink2, k2, order_seed, counter):
    """k1+k2 paths from the pivot, split between two capped sinks.

    Returns (paths_to_sink1, paths_to_sink2) or _INFEASIBLE: the flow
    value is exact, so a shortfall rules the target out entirely.
    """
    if k1 + k2 == 0:
        return [], []
    sn = _SplitNet(view, order_seed=order_seed, entry_blocked={pivot_v},
                   exit_blocked={sink1, sink2}, no_split={sink1, sink2},
                   uncapped={pivot_v}, extra_nodes=1)
    tnode = sn.base
    if k1:
        sn.net.add(sn.vin(sink1), tnode, k1)
    if k2:
        sn.net.add(sn.vin(sink2), tnode, k2)
    value = sn.net.max_flow(sn.vout(pivot_v), tnode, k1 + k2, counter)
    if value < k1 + k2:
        return _INFEASIBLE
    paths = sn.extract_paths(sn.vout(pivot_v), tnode)
    to1 = [p for p in paths if p.vertices[-1] == sink1]
    to2 = [p for p in paths if p.vertices[-1] == sink2]
    assert len(to1) == k1 and len(to2) == k2, (len(to1), len(to2))
    return to1, to2


def _two_phase(view, omega, target, pivot, order_seed, counter):
    pivot_v, (s1, k1, n1), (s2, k2, n2), (bs, bt, k3, n3) = _phase_plan(omega, target, pivot)
    res = _phase_a(view, pivot_v, s1, k1, s2, k2, order_seed, counter)
    if res == _INFEASIBLE:
        return _INFEASIBLE
    to1, to2 = res
    phase_a_paths = [(n1, p) for p in to1] + [(n2, p) for p in to2]

    def finish(kept, third_paths):
        named = list(kept) + [(n3, p) for p in third_paths]
        return _assemble(omega, named)

    blocked = {w for _, p in phase_a_paths for w in p.interior()}
    sub = view.without(blocked | {pivot_v})
    if k3 == 0:
        return finish(phase_a_paths, [])
    fam = max_internally_disjoint_paths(sub, bs, bt, limit=k3,
                                        order_seed=order_seed, counter=counter)
    if len(fam.paths) >= k3:
        return finish(phase_a_paths, list(fam.paths[:k3]))

    # exchange repair: free one first-phase path, redo the third bundle,
    # then re-route the freed path through what remains
    for drop in range(len(phase_a_paths)):
        name_d, path_d = phase_a_paths[drop]
        kept = [phase_a_paths[i] for i in range(len(phase_a_paths)) if i != drop]
        blocked_k = {w for _, p in kept for w in p.interior()}
        sub_b = view.without(blocked_k | {pivot_v})
        fam_b = max_internally_disjoint_paths(sub_b, bs, bt, limit=k3,
                                              order_seed=order_seed, counter=counter)
        if len(fam_b.paths) < k3:
            continue
        third = list(fam_b.paths[:k3])
        used_b = {w for p in third for w in p.interior()}
        sink_d = path_d.vertices[-1]
        other = s2 if sink_d == s1 else s1
        sub_r = view.without(blocked_k | used_b | {other})
        # a kept path may BE the direct pivot-sink edge; the rerouted path
        # has no interior blocks against it, so it must skip that edge
        has_direct = any(len(p.vertices) == 2 and p.vertices[-1] == sink_d
                         for _, p in kept)
        fam_r = max_internally_disjoint_paths(
            sub_r, pivot_v, sink_d, limit=2 if has_direct else 1,
            order_seed=order_seed, counter=counter)
        cands = [p for p in fam_r.paths
                 if not (has_direct and len(p.vertices) == 2)]
        if cands:
            kept.append((name_d, cands[0]))
            return finish(kept, third)
    return None


def solve_tripod(view, omega, target: StructureTarget, budget: Budget | None = None,
                 seed: int = 0):
    """Find a tripod structure hitting the target exactly, or report failure.

    Returns TripodStructure on success, else TripodFailure; the failure
    is marked certified when an exact argument rules the target out.
    """
    budget = budget or Budget()
    a, b, c = omega
    assert len({a, b, c}) == 3, omega
    for v in omega:
        assert view.contains(v), v
    counter = StepCounter()
    certified = False
    restarts = 0
    for r in range(budget.max_restarts + 1):
        restarts = r
        order_seed = None if r == 0 else mix_seed(seed, r)
        for pivot in ("a", "b", "c"):
            if counter.used >= budget.max_steps:
                break
            res = _two_phase(view, omega, target, pivot, order_seed, counter)
            if res == _INFEASIBLE:
                certified = True
                break
            if res is not None:
                verdict = check_tripod(view, res, target, exact=True)
                assert verdict.ok, verdict.violations
                return res
        if certified or counter.used >= budget.max_steps:
            break
    if not certified and view.vertex_count <= MILP_VERTEX_LIMIT:
        res = _milp_solve(view, omega, target)
        if res == _INFEASIBLE:
            certified = True
        elif res is not None:
            verdict = check_tripod(view, res, target, exact=True)
            assert verdict.ok, verdict.violations
            return res
    reason = "target certified infeasible" if certified else "search budget exhausted"
    return TripodFailure(reason, counter.used, restarts, certified)


# ---------------------------------------------------------------- MILP core

def _view_edges(view):
    edges = []
    for u in view.vertices():
        for w, _ in view.neighbors(u):
            if u < w:
                edges.append((u, w))
    return edges


def _commodity_arcs(edges, s, t, r):
    arcs = []
    for (u, v) in edges:
        if r in (u, v):
            continue
        if v != s and u != t:
            arcs.append((u, v))
        if u != s and v != t:
            arcs.append((v, u))
    return arcs


class _MilpModel:
    """Three-commodity integral flow on a view, one commodity per bundle."""

    def __init__(self, view, omega):
        a, b, c = omega
        self.omega = omega
        self.edges = _view_edges(view)
        self.edge_index = {e: i for i, e in enumerate(self.edges)}
        self.commodities = [("ab", a, b, c), ("ac", a, c, b), ("bc", b, c, a)]
        self.arcs = []
        self.offsets = []
        off = 0
        for _, s, t, r in self.commodities:
            arcs = _commodity_arcs(self.edges, s, t, r)
            self.offsets.append(off)
            self.arcs.append(arcs)
            off += len(arcs)
        self.n_arc_vars = off
        self.verts = view.vertices()
        self.view = view

    def conservation_rows(self, rows, demand_terms):
        """rows: list of (coeffs dict var->coef, lb, ub).  demand_terms maps
        commodity index -> list of (var, coef) added to its source row."""
        for ci, (_, s, t, r) in enumerate(self.commodities):
            off = self.offsets[ci]
            arcs = self.arcs[ci]
            in_at = {}
            out_at = {}
            for ai, (u, v) in enumerate(arcs):
                out_at.setdefault(u, []).append(off + ai)
                in_at.setdefault(v, []).append(off + ai)
            for w in self.verts:
                if w in (s, t, r):
                    continue
                coeffs = {var: 1 for var in in_at.get(w, [])}
                for var in out_at.get(w, []):
                    coeffs[var] = coeffs.get(var, 0) - 1
                if coeffs:
                    rows.append((coeffs, 0, 0))
            coeffs = {var: 1 for var in out_at.get(s, [])}
            lb = ub = 0
            for var, coef in demand_terms[ci]:
                if var is None:
                    lb = ub = coef
                else:
                    coeffs[var] = coeffs.get(var, 0) + coef
            rows.append((coeffs, lb, ub))

    def capacity_rows(self, rows):
        omega = set(self.omega)
        in_rows: dict[int, dict[int, int]] = {}
        edge_rows: dict[int, dict[int, int]] = {}
        for ci in range(3):
            off = self.offsets[ci]
            for ai, (u, v) in enumerate(self.arcs[ci]):
                if v not in omega:
                    in_rows.setdefault(v, {})[off + ai] = 1
                e = (u, v) if u < v else (v, u)
                edge_rows.setdefault(self.edge_index[e], {})[off + ai] = 1
        for w in sorted(in_rows):
            rows.append((in_rows[w], 0, 1))
        for ei in sorted(edge_rows):
            rows.append((edge_rows[ei], 0, 1))

    def solve(self, rows, n_vars, objective, integrality, lower, upper):
        data, ri, ci_ = [], [], []
        lbs, ubs = [], []
        for rn, (coeffs, lb, ub) in enumerate(rows):
            for var, coef in coeffs.items():
                ri.append(rn)
                ci_.append(var)
                data.append(coef)
            lbs.append(lb)
            ubs.append(ub)
        mat = sparse.csc_matrix((data, (ri, ci_)), shape=(len(rows), n_vars))
        res = milp(c=np.asarray(objective, dtype=float),
                   constraints=LinearConstraint(mat, np.asarray(lbs, dtype=float),
                                                np.asarray(ubs, dtype=float)),
                   integrality=np.asarray(integrality),
                   bounds=Bounds(np.asarray(lower, dtype=float),
                                 np.asarray(upper, dtype=float)))
        return res

    def extract_bundles(self, x):
        """Walk each commodity's used arcs into paths, smallest successor first."""
        named = []
        for ci, (name, s, t, _) in enumerate(self.commodities):
            off = self.offsets[ci]
            outmap: dict[int, list[int]] = {}
            for ai, (u, v) in enumerate(self.arcs[ci]):
                if x[off + ai] > 0.5:
                    outmap.setdefault(u, []).append(v)
            for u in outmap:
                outmap[u].sort()
            while outmap.get(s):
                cur = s
                verts = [s]
                while cur != t:
                    nxt = outmap[cur].pop(0)
                    if not outmap[cur]:
                        del outmap[cur]
                    verts.append(nxt)
                    cur = nxt
                named.append((name, Path(tuple(verts))))
        return named


def _milp_solve(view, omega, target: StructureTarget):
    """Feasibility program with fixed bundle demands; exact yes/no."""
    model = _MilpModel(view, omega)
    rows: list = []
    demands = {0: [(None, target.ab)], 1: [(None, target.ac)], 2: [(None, target.bc)]}
    model.conservation_rows(rows, demands)
    model.capacity_rows(rows)
    n = model.n_arc_vars
    res = model.solve(rows, n, [0.0] * n, [1] * n, [0] * n, [1] * n)
    if res.status == 2:
        return _INFEASIBLE
    if res.status != 0:
        return None
    named = model.extract_bundles(res.x)
    named.sort(key=lambda item: (item[0], item[1].vertices))
    return _assemble(omega, named)


def exact_pi(view, omega) -> int:
    """Exact maximum number of internally disjoint paths through all of
    omega, by integral multicommodity flow with pairing counters."""
    if view.vertex_count > MILP_VERTEX_LIMIT:
        raise OracleScaleExceeded(
            f"exact oracle capped at {MILP_VERTEX_LIMIT} vertices, "
            f"got {view.vertex_count}")
    a, b, c = omega
    assert len({a, b, c}) == 3, omega
    for v in omega:
        assert view.contains(v), v
    model = _MilpModel(view, omega)
    n_arcs = model.n_arc_vars
    # variables: arcs, then m_ab m_ac m_bc, then mu_a mu_b mu_c
    m0, mu0 = n_arcs, n_arcs + 3
    n_vars = n_arcs + 6
    rows: list = []
    demands = {ci: [(m0 + ci, -1)] for ci in range(3)}
    model.conservation_rows(rows, demands)
    model.capacity_rows(rows)
    # mu_a + mu_b <= m_ab and cyclic mates
    rows.append(({mu0 + 0: 1, mu0 + 1: 1, m0 + 0: -1}, -np.inf, 0))
    rows.append(({mu0 + 0: 1, mu0 + 2: 1, m0 + 1: -1}, -np.inf, 0))
    rows.append(({mu0 + 1: 1, mu0 + 2: 1, m0 + 2: -1}, -np.inf, 0))
    deg_cap = [min(view.degree(s), view.degree(t)) for _, s, t, _ in model.commodities]
    lower = [0] * n_vars
    upper = [1] * n_arcs + deg_cap + [max(deg_cap)] * 3
    objective = [0.0] * n_arcs + [0.0] * 3 + [-1.0] * 3
    res = model.solve(rows, n_vars, objective, [1] * n_vars, lower, upper)
    assert res.status == 0, res.message
    return int(round(-res.fun))
