"""Pairing bundle paths into paths through all three terminals, plus the
packing bounds derived from them."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ._util import mix_seed
from .errors import InvalidStructure
from .flows import Path
from .graphs import CayleyGraph, full_view
from .perms import Family
from .tripod import StructureTarget, TripodStructure
from .verification import check_omega_path_set, check_tripod


def pairing_capacity(x: int, y: int, z: int) -> int:
    """Largest number of terminal-spanning paths obtainable by pairing
    bundles of sizes x, y, z at shared endpoints."""
    assert min(x, y, z) >= 0, (x, y, z)
    return min((x + y + z) // 2, x + y, y + z, z + x)


def optimal_split(x: int, y: int, z: int) -> tuple[int, int, int]:
    """Lexicographically smallest (mu_a, mu_b, mu_c) achieving the capacity:
    mu_a pairs ab+ac, mu_b pairs ab+bc, mu_c pairs ac+bc."""
    best = pairing_capacity(x, y, z)
    for mu_a in range(best + 1):
        for mu_b in range(best - mu_a + 1):
            mu_c = best - mu_a - mu_b
            if mu_a + mu_b <= x and mu_a + mu_c <= y and mu_b + mu_c <= z:
                return (mu_a, mu_b, mu_c)
    raise AssertionError((x, y, z))


@dataclass(frozen=True)
class OmegaPathSet:
    omega: tuple[int, int, int]
    paths: tuple[Path, ...]

    def __len__(self) -> int:
        return len(self.paths)


def pair_structure(view, structure: TripodStructure) -> OmegaPathSet:
    """Concatenate bundle paths at shared terminals, lowest indices first.

    The structure is re-verified before pairing; an unsound structure is
    rejected rather than propagated into certificates.
    """
    counts = structure.counts()
    verdict = check_tripod(view, structure, StructureTarget(*counts), exact=True)
    if not verdict.ok:
        raise InvalidStructure("; ".join(verdict.violations[:4]))
    mu_a, mu_b, mu_c = optimal_split(*counts)
    ab, ac, bc = structure.bundle_ab, structure.bundle_ac, structure.bundle_bc
    out: list[Path] = []
    for i in range(mu_a):
        # b..a + a..c
        out.append(Path(ab[i].reverse().vertices + ac[i].vertices[1:]))
    for i in range(mu_b):
        # a..b + b..c
        out.append(Path(ab[mu_a + i].vertices + bc[i].vertices[1:]))
    for i in range(mu_c):
        # a..c + c..b
        out.append(Path(ac[mu_a + i].vertices + bc[mu_b + i].reverse().vertices[1:]))
    result = OmegaPathSet(structure.omega, tuple(out))
    verdict = check_omega_path_set(view, structure.omega, result.paths)
    assert verdict.ok, verdict.violations
    return result


# ------------------------------------------------------------------ bounds

@dataclass(frozen=True)
class UpperBoundReport:
    value: int
    connectivity: int
    r: int
    witness: tuple[int, int, int] | None


@dataclass
class LowerBoundReport:
    value: int
    evaluated: int
    case_counts: dict = field(default_factory=dict)
    fallback_count: int = 0
    failures: list = field(default_factory=list)
    worst_triple: tuple[int, int, int] | None = None


def formula_value(n: int) -> int:
    return (6 * n - 9) // 4


def max_triple_common_neighbors(g: CayleyGraph) -> tuple[int, tuple[int, int, int] | None]:
    """Exact maximum |N(u) ∩ N(v) ∩ N(w)| over vertex triples.

    Scans pairs at distance two (adjacent pairs share no neighbors in
    these families) and extends by a third vertex; both families cap the
    answer at 3, so the scan exits early on a witness of that size.
    """
    best, witness = 0, None
    nbr = [frozenset(w for w, _ in g.adj[v]) for v in range(g.vertex_count)]
    for u in range(g.vertex_count):
        two_away = set()
        for w1 in nbr[u]:
            two_away.update(nbr[w1])
        for v in sorted(two_away):
            if v <= u or v in nbr[u]:
                continue
            cn = nbr[u] & nbr[v]
            if len(cn) <= best:
                continue
            cands = set()
            for m in cn:
                cands.update(nbr[m])
            for t in sorted(cands):
                if t in (u, v):
                    continue
                k = len(cn & nbr[t])
                if k > best:
                    best, witness = k, (u, v, t)
                    if best >= 3:
                        return best, witness
    return best, witness


def pi3_upper(g: CayleyGraph) -> UpperBoundReport:
    """Degree/packing upper bound from the maximum shared-neighbor count."""
    if g.family is Family.WHEEL:
        k = 2 * g.n - 2
    else:
        k = 2 * g.n - 3
    r, witness = max_triple_common_neighbors(g)
    value = (3 * k - r) // 4
    return UpperBoundReport(value, k, r, witness)


def sample_triples(g: CayleyGraph, count: int, seed: int) -> list[tuple[int, int, int]]:
    """Deterministic sample stratified by copy multiplicity: thirds with all
    terminals in one copy, split two/one, and three distinct copies."""
    rng = random.Random(mix_seed(seed, g.n, 1 if g.family is Family.WHEEL else 0))
    out: list[tuple[int, int, int]] = []
    seen = set()
    quotas = [count // 3 + (1 if i < count % 3 else 0) for i in range(3)]
    copies = sorted(g.copy_members)

    def push(tri):
        tri = tuple(sorted(tri))
        if tri not in seen:
            seen.add(tri)
            out.append(tri)
            return True
        return False

    made = 0
    while made < quotas[0]:
        c = rng.choice(copies)
        made += push(rng.sample(g.copy_members[c], 3))
    made = 0
    while made < quotas[1]:
        c, d = rng.sample(copies, 2)
        tri = rng.sample(g.copy_members[c], 2) + [rng.choice(g.copy_members[d])]
        made += push(tri)
    made = 0
    while made < quotas[2]:
        cs = rng.sample(copies, 3)
        made += push([rng.choice(g.copy_members[c]) for c in cs])
    return out


def pi3_lower(g: CayleyGraph, triples, seed: int = 0, budget=None) -> LowerBoundReport:
    """Constructive lower bound: build a structure and pair it for every
    triple; the bound is the worst pairing count seen."""
    from .construct import build_structure  # local import to avoid a cycle

    from .errors import ConstructionFailed

    view = full_view(g)
    report = LowerBoundReport(value=0, evaluated=0)
    best_min = None
    for tri in triples:
        report.evaluated += 1
        try:
            structure, trace = build_structure(g, tri, seed=mix_seed(seed, *tri), budget=budget)
        except ConstructionFailed as exc:
            report.failures.append((tri, str(exc)))
            continue
        omega_paths = pair_structure(view, structure)
        got = len(omega_paths)
        report.case_counts[trace.case_id] = report.case_counts.get(trace.case_id, 0) + 1
        if trace.fallback:
            report.fallback_count += 1
        if best_min is None or got < best_min:
            best_min = got
            report.worst_triple = tri
    report.value = best_min if best_min is not None else 0
    return report
