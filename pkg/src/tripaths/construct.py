"""Case-by-case construction of tripod structures on wheel Cayley graphs.

Terminals in one copy route through the copy plus neighbor copies;
terminals split two/one harvest copy paths and fan from the lone vertex;
terminals in three copies match slice vertices across copies and thread
the remaining demand through the untouched copies.  Every route ends in
an exact verification; anything that misses falls back to the generic
solver on the whole graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ._util import mix_seed
from .errors import (
    ConstructionFailed,
    DuplicateVertices,
    InsufficientConnectivity,
    WrongFamily,
)
from .flows import (
    Path,
    disjoint_set_paths,
    k_fan,
    max_internally_disjoint_paths,
    shortest_path,
)
from .graphs import (
    CayleyGraph,
    copy_of,
    copy_union,
    cross_edges,
    delete_copies,
    full_view,
    outside_neighbors,
    spanning_intra_view,
)
from .perms import Family, compose, inverse, rank
from .tripod import (
    Budget,
    StructureTarget,
    TripodStructure,
    solve_tripod,
    standard_target,
)
from .verification import check_tripod

CASE_EVEN = "Even"
CASE_1_1 = "OddCase1_1"
CASE_1_2_1 = "OddCase1_2_1"
CASE_1_2_2 = "OddCase1_2_2"
CASE_2 = "OddCase2"
CASE_3_1 = "OddCase3_1"
CASE_3_2 = "OddCase3_2"
CASE_3_3 = "OddCase3_3"
CASE_FALLBACK = "FallbackGeneric"


@dataclass
class CaseTrace:
    case_id: str
    roles: dict = field(default_factory=dict)
    copies: dict = field(default_factory=dict)
    auxiliary: dict = field(default_factory=dict)
    fallback: bool = False
    seed: int = 0


def _pair_ends(tag: str, a: int, b: int, c: int) -> tuple[int, int]:
    return {"ab": (a, b), "ac": (a, c), "bc": (b, c)}[tag]


def _group(tagged, roles: tuple[int, int, int]) -> TripodStructure:
    """Bucket (tag, path) entries into a structure, orienting every path
    from the tag's first terminal to its second."""
    a, b, c = roles
    buckets: dict[str, list[Path]] = {"ab": [], "ac": [], "bc": []}
    for tag, p in tagged:
        vs = p.vertices if isinstance(p, Path) else tuple(p)
        first, last = _pair_ends(tag, a, b, c)
        if vs[0] == last and vs[-1] == first:
            vs = tuple(reversed(vs))
        assert vs[0] == first and vs[-1] == last, (tag, vs[0], vs[-1])
        buckets[tag].append(Path(vs))
    return TripodStructure(
        (a, b, c), tuple(buckets["ab"]), tuple(buckets["ac"]), tuple(buckets["bc"])
    )


def _cat(*parts) -> Path:
    """Concatenate vertex runs, merging equal junction vertices."""
    out: list[int] = []
    for part in parts:
        vs = part.vertices if isinstance(part, Path) else tuple(part)
        if out and vs and out[-1] == vs[0]:
            out.extend(vs[1:])
        else:
            out.extend(vs)
    return Path(tuple(out))


def _bundle_between(structure: TripodStructure, x: int, y: int) -> list[Path]:
    o = structure.omega
    table = {
        frozenset((o[0], o[1])): structure.bundle_ab,
        frozenset((o[0], o[2])): structure.bundle_ac,
        frozenset((o[1], o[2])): structure.bundle_bc,
    }
    paths = table[frozenset((x, y))]
    return [p if p.vertices[0] == x else p.reverse() for p in paths]


# ------------------------------------------------------------- dispatcher

def build_structure(g: CayleyGraph, omega, seed: int = 0,
                    budget: Budget | None = None):
    """Build a standard-size tripod structure for the terminal triple.

    Returns (TripodStructure, CaseTrace); raises ConstructionFailed when
    even the generic fallback cannot realize the target.
    """
    if g.family is not Family.WHEEL:
        raise WrongFamily("structure construction runs on the wheel family")
    tri = tuple(sorted(omega))
    if len(set(tri)) != 3:
        raise DuplicateVertices(f"need three distinct terminals, got {tuple(omega)}")
    for v in tri:
        g.check_rank(v)
    budget = budget or Budget()
    target = standard_target(g.n)

    if g.n % 2 == 0:
        got = _case_even(g, tri, seed, budget, target)
    else:
        copies = [copy_of(g, v) for v in tri]
        distinct = len(set(copies))
        if distinct == 1:
            got = _same_copy(g, tri, seed, budget)
        elif distinct == 2:
            got = _two_copies(g, tri, seed)
        else:
            got = _three_copies(g, tri, seed)
    if got is None:
        got = _fallback(g, tri, seed, budget, target)
    structure, trace = got
    verdict = check_tripod(full_view(g), structure, target, exact=True)
    assert verdict.ok, verdict.violations
    return structure, trace


def _roles_dict(a: int, b: int, c: int) -> dict:
    return {"a": a, "b": b, "c": c}


def _copies_dict(g: CayleyGraph, a: int, b: int, c: int) -> dict:
    return {r: copy_of(g, v) for r, v in (("a", a), ("b", b), ("c", c))}


def _case_even(g, tri, seed, budget, target):
    view = spanning_intra_view(g)
    res = solve_tripod(view, tri, target, budget, seed)
    if isinstance(res, TripodStructure):
        trace = CaseTrace(CASE_EVEN, _roles_dict(*tri), _copies_dict(g, *tri),
                          {}, False, seed)
        return res, trace
    return None


def _fallback(g, tri, seed, budget, target):
    res = solve_tripod(full_view(g), tri, target, budget, mix_seed(seed, 0xFA11))
    if isinstance(res, TripodStructure):
        trace = CaseTrace(CASE_FALLBACK, _roles_dict(*tri), _copies_dict(g, *tri),
                          {}, True, seed)
        return res, trace
    raise ConstructionFailed(
        f"no structure for terminals {tri} at n={g.n}: {res.reason}")


# ------------------------------------------------------- one shared copy

def _detect_cyclic_triple(g, tri):
    """Ordered roles (A, B, C) with B = A t and C = B t for a 3-cycle
    t moving positions {1, j, j+1}, or None."""
    n = g.n
    perms = {v: g.perm(v) for v in tri}
    for A, B, C in itertools.permutations(tri):
        t = compose(inverse(perms[A]), perms[B])
        j = t.images[0]
        if not 2 <= j <= n - 2:
            continue
        if t.images[j - 1] != j + 1 or t.images[j] != 1:
            continue
        if any(t.images[i] != i + 1 for i in range(n) if i not in (0, j - 1, j)):
            continue
        if rank(compose(perms[B], t)) == C:
            return (A, B, C, j)
    return None


def _same_copy(g, tri, seed, budget):
    d = g.n // 2
    K = copy_of(g, tri[0])
    rot = _detect_cyclic_triple(g, tri)
    if rot is not None:
        got = _route_cyclic(g, K, rot, seed, budget)
        if got is not None:
            return got
    cview = copy_union(g, {K})
    base_target = StructureTarget(2 * d - 2, 2 * d - 2, 2 * d - 2)
    for attempt in range(3):
        aseed = mix_seed(seed, 11, attempt)
        base = solve_tripod(cview, tri, base_target, budget, aseed)
        if not isinstance(base, TripodStructure):
            if base.certified_infeasible:
                break
            continue
        hit = _scan_unused_neighbor(cview, tri, base)
        if hit is not None:
            t, w = hit
            got = _route_1_1(g, K, tri, base, t, w, aseed, seed)
            if got is not None:
                return got
        got = _route_1_2_1(g, K, cview, tri, base, aseed, seed)
        if got is not None:
            return got
    return None


def _scan_unused_neighbor(cview, tri, base):
    used = set()
    for p in base.all_paths():
        used.update(p.vertices)
    for t in tri:
        for w, _gi in cview.neighbors(t):
            if w not in used:
                return (t, w)
    return None


def _route_1_1(g, K, tri, base, t, w, order_seed, seed):
    """Terminal t has a copy neighbor w untouched by the base structure:
    t takes the role with the larger bundles and w doubles its exits."""
    others = [v for v in tri if v != t]
    a, b, c = others[0], others[1], t
    a_out = outside_neighbors(g, a)
    b_out = outside_neighbors(g, b)
    c_out = outside_neighbors(g, c)
    w_plus = outside_neighbors(g, w)[0]
    X = [c_out[0], c_out[1], c_out[2], w_plus]
    Y = [a_out[0], a_out[1], b_out[0], b_out[1]]
    if len(set(X) | set(Y)) != 8:
        return None
    outside = delete_copies(g, {K})
    try:
        fam = disjoint_set_paths(outside, X, Y, 4, order_seed=order_seed)
    except InsufficientConnectivity:
        return None
    tagged = [("ab", p) for p in _bundle_between(base, a, b)]
    tagged += [("ac", p) for p in _bundle_between(base, a, c)]
    tagged += [("bc", p) for p in _bundle_between(base, b, c)]
    for p in fam.paths:
        start, end = p.vertices[0], p.vertices[-1]
        prefix = (c, w) if start == w_plus else (c,)
        owner = a if end in (a_out[0], a_out[1]) else b
        tag = "ac" if owner == a else "bc"
        tagged.append((tag, _cat(prefix, p, (owner,))))
    structure = _group(tagged, (a, b, c))
    trace = CaseTrace(CASE_1_1, _roles_dict(a, b, c), _copies_dict(g, a, b, c),
                      {"unused_neighbor": w}, False, seed)
    return structure, trace


def _route_1_2_1(g, K, cview, tri, base, order_seed, seed):
    """Every copy neighbor of every terminal sits on some base path:
    cannibalize three paths to free a detour vertex g0 next to C."""
    for A, B, C in itertools.permutations(tri):
        ab = _bundle_between(base, A, B)
        ac = _bundle_between(base, A, C)
        bc = _bundle_between(base, B, C)
        used_ab_ac = set(v for p in ab + ac for v in p.vertices)
        used_ac_bc = set(v for p in ac + bc for v in p.vertices)
        used_ab_bc = set(v for p in ab + bc for v in p.vertices)
        for a_pr, _gi in cview.neighbors(A):
            if a_pr in used_ab_ac:
                continue
            R1 = next((p for p in bc if a_pr in p.vertices), None)
            if R1 is None:
                continue
            idx = R1.vertices.index(a_pr)
            if len(R1.vertices) - 1 - idx < 2:
                continue
            c_pr = P1 = None
            for v, _ in cview.neighbors(C):
                if v in used_ac_bc:
                    continue
                hit = next((p for p in ab if v in p.vertices), None)
                if hit is not None:
                    c_pr, P1 = v, hit
                    break
            if P1 is None:
                continue
            b_pr = Q1 = None
            for v, _ in cview.neighbors(B):
                if v in used_ab_bc:
                    continue
                hit = next((p for p in ac if v in p.vertices), None)
                if hit is not None:
                    b_pr, Q1 = v, hit
                    break
            if Q1 is None:
                continue
            got = _finish_1_2_1(g, K, (A, B, C), ab, ac, bc,
                                (P1, Q1, R1), (a_pr, b_pr, c_pr), idx,
                                order_seed, seed)
            if got is not None:
                return got
    return None


def _finish_1_2_1(g, K, roles, ab, ac, bc, picked, primes, idx, order_seed, seed):
    A, B, C = roles
    P1, Q1, R1 = picked
    a_pr, b_pr, c_pr = primes
    g0 = R1.vertices[-2]
    # rewire: ab keeps its count via the freed bc segment, ac and bc each
    # hand one vertex to a cross exit
    p1_star = Path((A,) + tuple(R1.vertices[idx::-1]))
    ci = P1.vertices.index(c_pr)
    q1_star = Path(tuple(P1.vertices[: ci + 1]) + (C,))
    qi = Q1.vertices.index(b_pr)
    r1_star = Path((B,) + tuple(Q1.vertices[qi:]))
    a_out = outside_neighbors(g, A)
    b_out = outside_neighbors(g, B)
    c_out = outside_neighbors(g, C)
    g_plus = outside_neighbors(g, g0)[0]
    X = [c_out[0], c_out[1], c_out[2], g_plus]
    Y = [a_out[0], a_out[1], b_out[0], b_out[1]]
    if len(set(X) | set(Y)) != 8:
        return None
    outside = delete_copies(g, {K})
    try:
        fam = disjoint_set_paths(outside, X, Y, 4, order_seed=order_seed)
    except InsufficientConnectivity:
        return None
    tagged = [("ab", p1_star)] + [("ab", p) for p in ab if p is not P1]
    tagged += [("ac", q1_star)] + [("ac", p) for p in ac if p is not Q1]
    tagged += [("bc", r1_star)] + [("bc", p) for p in bc if p is not R1]
    for p in fam.paths:
        start, end = p.vertices[0], p.vertices[-1]
        prefix = (C, g0) if start == g_plus else (C,)
        owner = A if end in (a_out[0], a_out[1]) else B
        tag = "ac" if owner == A else "bc"
        tagged.append((tag, _cat(prefix, p, (owner,))))
    structure = _group(tagged, (A, B, C))
    trace = CaseTrace(
        CASE_1_2_1, _roles_dict(A, B, C), _copies_dict(g, A, B, C),
        {"a_prime": a_pr, "b_prime": b_pr, "c_prime": c_pr, "detour": g0},
        False, seed)
    return structure, trace


def _route_cyclic(g, K, rot, seed, budget):
    """Roles form a rotation under a 3-cycle moving {1, j, j+1}: their
    outside neighbors pair up inside shared copies."""
    A, B, C, j = rot
    n = g.n
    outs = {V: outside_neighbors(g, V) for V in (A, B, C)}
    owner_of = {}
    for V in (A, B, C):
        for w in outs[V]:
            owner_of[w] = V
    if len(owner_of) != 9:
        return None
    aP, aM, aS = outs[A]
    bP, bM, bS = outs[B]
    cP, cM, cS = outs[C]
    if j == 2:
        regions = [(aP, cS, "ac"), (aS, bP, "ab"), (bS, cP, "bc"), (bM, cM, "bc")]
    elif j == n - 2:
        regions = [(aP, bM, "ab"), (bP, cM, "bc"), (aM, cP, "ac"), (bS, cS, "bc")]
    else:
        return _route_cyclic_bridge(g, K, rot, outs, owner_of, seed, budget)
    tally = {"ab": 0, "ac": 0, "bc": 0}
    tagged_cross = []
    used_copies = set()
    for u, v, tag in regions:
        cu = copy_of(g, u)
        assert cu == copy_of(g, v) and cu != K, (u, v)
        assert cu not in used_copies, cu
        used_copies.add(cu)
        inner = shortest_path(copy_union(g, {cu}), u, v)
        assert inner is not None
        tagged_cross.append((tag, _cat((owner_of[u],), inner, (owner_of[v],))))
        tally[tag] += 1
    return _finish_cyclic(g, K, (A, B, C), j, tally, tagged_cross, seed, budget,
                          regime=f"paired-j{j}")


def _finish_cyclic(g, K, roles, j, tally, tagged_cross, seed, budget, regime):
    d = g.n // 2
    in_target = StructureTarget(
        2 * d - 2 - tally["ab"], 2 * d - tally["ac"], 2 * d - tally["bc"])
    base = solve_tripod(copy_union(g, {K}), roles, in_target, budget,
                        mix_seed(seed, 122))
    if not isinstance(base, TripodStructure):
        return None
    tagged = [("ab", p) for p in base.bundle_ab]
    tagged += [("ac", p) for p in base.bundle_ac]
    tagged += [("bc", p) for p in base.bundle_bc]
    tagged += tagged_cross
    structure = _group(tagged, roles)
    A, B, C = roles
    trace = CaseTrace(CASE_1_2_2, _roles_dict(A, B, C), _copies_dict(g, A, B, C),
                      {"rotation_step": j, "regime": regime}, False, seed)
    return structure, trace


def _route_cyclic_bridge(g, K, rot, outs, owner_of, seed, budget):
    """Middle rotation steps leave the minus and star images unpaired;
    a cross edge between their two copies stitches them together."""
    A, B, C, j = rot
    aP, aM, aS = outs[A]
    bP, bM, bS = outs[B]
    cP, cM, cS = outs[C]
    copy_minus = copy_of(g, aM)
    copy_star = copy_of(g, aS)
    assert copy_of(g, bM) == copy_minus == copy_of(g, cM)
    assert copy_of(g, bS) == copy_star == copy_of(g, cS)
    minus_set = {aM, bM, cM}
    star_set = {aS, bS, cS}
    vm = copy_union(g, {copy_minus})
    vs = copy_union(g, {copy_star})
    plus_copies = {copy_of(g, aP), copy_of(g, bP), copy_of(g, cP)}
    assert len(plus_copies) == 3
    tried = 0
    for u, w in cross_edges(g, copy_minus, copy_star):
        if u in minus_set or w in star_set:
            continue
        tried += 1
        if tried > 24:
            break
        try:
            fam1 = disjoint_set_paths(vm, [aM, bM], [cM, u], 2)
        except InsufficientConnectivity:
            continue
        to_u = next(p for p in fam1.paths if p.vertices[-1] == u)
        to_cm = next(p for p in fam1.paths if p.vertices[-1] == cM)
        bridge_owner = owner_of[to_u.vertices[0]]
        try:
            fam2 = disjoint_set_paths(vs, [aS, w], [bS, cS], 2)
        except InsufficientConnectivity:
            continue
        from_w = next(p for p in fam2.paths if p.vertices[0] == w)
        from_as = next(p for p in fam2.paths if p.vertices[0] == aS)
        if bridge_owner == B and from_w.vertices[-1] == bS:
            # a b-to-b bridge collapses; re-anchor the star copy
            p1 = shortest_path(vs, w, cS, avoid={aS, bS})
            if p1 is None:
                continue
            p2 = shortest_path(vs.without(set(p1.vertices)), aS, bS)
            if p2 is None:
                continue
            from_w, from_as = p1, p2
        end_owner = owner_of[from_w.vertices[-1]]
        bridge_tag = "".join(sorted(
            {A: "a", B: "b", C: "c"}[t] for t in (bridge_owner, end_owner)))
        tagged_cross = [
            (bridge_tag, _cat((bridge_owner,), to_u, from_w, (end_owner,))),
            ("".join(sorted({A: "a", B: "b", C: "c"}[t]
                            for t in (owner_of[to_cm.vertices[0]], C))),
             _cat((owner_of[to_cm.vertices[0]],), to_cm, (C,))),
            ("".join(sorted({A: "a", B: "b", C: "c"}[t]
                            for t in (A, owner_of[from_as.vertices[-1]]))),
             _cat((A,), from_as, (owner_of[from_as.vertices[-1]],))),
        ]
        plus_path = shortest_path(copy_union(g, plus_copies), aP, cP)
        if plus_path is None:
            continue
        tagged_cross.append(("ac", _cat((A,), plus_path, (C,))))
        tally = {"ab": 0, "ac": 0, "bc": 0}
        for tag, _p in tagged_cross:
            tally[tag] += 1
        if tally != {"ab": 1, "ac": 2, "bc": 1}:
            continue
        got = _finish_cyclic(g, K, (A, B, C), j, tally, tagged_cross, seed,
                             budget, regime=f"bridged-j{j}")
        if got is not None:
            return got
    return None


# ------------------------------------------------------------- two copies

def _two_copies(g, tri, seed):
    d = g.n // 2
    by_copy: dict[int, list[int]] = {}
    for v in tri:
        by_copy.setdefault(copy_of(g, v), []).append(v)
    K = next(cc for cc, vs in by_copy.items() if len(vs) == 2)
    a, c = sorted(by_copy[K])
    b = next(v for cc, vs in by_copy.items() if len(vs) == 1 for v in vs)
    cview = copy_union(g, {K})
    outside = delete_copies(g, {K})
    need = 2 * d - 3

    for attempt in range(3):
        oseed = None if attempt == 0 else mix_seed(seed, 2, attempt)
        fam = max_internally_disjoint_paths(cview, a, c, order_seed=oseed)
        paths = list(fam.paths)
        if len(paths) < 4 * d - 3:
            continue
        chosen, keep = [], []
        for p in paths:
            if p.length >= 3 and len(chosen) < need:
                chosen.append(p)
            else:
                keep.append(p)
        if len(chosen) < need:
            continue

        star = {}
        directs: list[tuple[str, Path]] = []
        legs: list[tuple[str, int, int]] = []  # tag, copy vertex, fan target
        for p in chosen:
            u_i, v_i = p.vertices[1], p.vertices[-2]
            star[u_i] = outside_neighbors(g, u_i)[2]
            star[v_i] = outside_neighbors(g, v_i)[2]
            if star[u_i] == b:
                directs.append(("ab", Path((a, u_i, b))))
            else:
                legs.append(("ab", u_i, star[u_i]))
            if star[v_i] == b:
                directs.append(("bc", Path((b, v_i, c))))
            else:
                legs.append(("bc", v_i, star[v_i]))
        a_star = outside_neighbors(g, a)[2]
        if a_star == b:
            directs.append(("ab", Path((a, b))))
        else:
            legs.append(("ab", a, a_star))
        for w in outside_neighbors(g, c):
            if w == b:
                directs.append(("bc", Path((b, c))))
            else:
                legs.append(("bc", c, w))

        targets = [t for _tag, _v, t in legs]
        if len(set(targets)) != len(targets):
            continue
        try:
            fanfam = k_fan(outside, b, targets, len(targets), order_seed=oseed)
        except (InsufficientConnectivity, ValueError):
            continue
        by_end = {p.vertices[-1]: p for p in fanfam.paths}
        tagged = [("ac", p) for p in keep] + list(directs)
        for tag, inner_v, tgt in legs:
            fp = by_end[tgt]
            if tag == "ab":
                run = (a,) if inner_v == a else (a, inner_v)
                tagged.append((tag, _cat(run, fp.reverse())))
            else:
                run = (c,) if inner_v == c else (inner_v, c)
                tagged.append((tag, _cat(fp, run)))
        structure = _group(tagged, (a, b, c))
        trace = CaseTrace(
            CASE_2, _roles_dict(a, b, c), _copies_dict(g, a, b, c),
            {"harvested": [p.vertices[1] for p in chosen]},
            False, seed)
        return structure, trace
    return None


# ----------------------------------------------------------- three copies

def _slice_pool(g, i_from, j_to, reserved):
    """Vertices w of copy i_from whose star image lands in copy j_to with
    both ends clear of reserved vertices; returns (w, w*) pairs ascending."""
    out = []
    for w in g.copy_members[i_from]:
        if w in reserved:
            continue
        if g.perm(w).images[1] != j_to:
            continue
        ws = outside_neighbors(g, w)[2]
        if ws in reserved:
            continue
        out.append((w, ws))
    return out


def _extra_or_direct(root: int, target: int, far: int, root_role: str,
                     tag: str, plan: dict) -> None:
    """Fan leg root->target followed by the edge target->far, degrading to
    the direct root-far edge when the target is the root terminal itself."""
    if target == root:
        plan["directs"].append((tag, Path((min(root, far), max(root, far)))))
    else:
        plan["extras"].append((root_role, target, far, tag))


def _three_copies(g, tri, seed):
    n, d = g.n, g.n // 2
    outs = {v: outside_neighbors(g, v) for v in tri}
    term_copies = {copy_of(g, v) for v in tri}
    doors = {v: [w for w in outs[v] if copy_of(g, w) not in term_copies]
             for v in tri}
    h = {v: len(doors[v]) for v in tri}
    twos = sorted(v for v in tri if h[v] == 2)
    ones = sorted(v for v in tri if h[v] == 1)

    if twos:
        c = twos[0]
        t_c = next(w for w in outs[c] if copy_of(g, w) in term_copies)
        if t_c in tri:
            a = t_c
        else:
            a = next(v for v in tri if v != c and copy_of(g, v) == copy_of(g, t_c))
        b = next(v for v in tri if v not in (a, c))
        plans = _plans_3_1(g, a, b, c, t_c, doors, d)
        case_id = CASE_3_1
    elif len(ones) >= 2:
        b, c = ones[0], ones[1]
        a = next(v for v in tri if v not in (b, c))
        plans = _plans_3_2(g, a, b, c, outs, doors, d)
        case_id = CASE_3_2
    else:
        if ones:
            a = ones[0]
            b, c = sorted(v for v in tri if v != a)
        else:
            a, b, c = tri
        plans = _plans_3_3(g, a, b, c, doors, d)
        case_id = CASE_3_3

    chat_copies = frozenset(range(1, n + 1)) - term_copies
    for plan in plans:
        for attempt in range(3):
            oseed = None if attempt == 0 else mix_seed(seed, 3, attempt)
            built = _execute_three(g, (a, b, c), chat_copies, outs, plan, oseed)
            if built is not None:
                trace = CaseTrace(
                    plan.get("case", case_id), _roles_dict(a, b, c),
                    _copies_dict(g, a, b, c), plan["aux"], False, seed)
                return built, trace
    return None


def _plans_3_1(g, a, b, c, t_c, doors, d):
    plan = {
        "xsizes": [2 * d - 2, 2 * d - 2, 2 * d - 1],
        "extras": [], "directs": [],
        "chat_x": sorted(doors[c]), "chat_y": [], "y_owner": {},
        "needs": {"ac": 1, "bc": 1}, "bridge": None,
        "aux": {"t_c": t_c},
    }
    _extra_or_direct(a, t_c, c, "a", "ac", plan)
    pick = next(((ya, yb) for ya in sorted(doors[a]) for yb in sorted(doors[b])
                 if ya != yb), None)
    if pick is not None:
        ya, yb = pick
        plan["chat_y"] = [ya, yb]
        plan["y_owner"] = {ya: a, yb: b}
        return [plan]
    # both fans share one sole outer door: leave via a bridge vertex
    w = doors[a][0]
    bplan = {
        "case": CASE_3_1,
        "xsizes": [2 * d - 2, 2 * d - 3, 2 * d - 2],
        "extras": [], "directs": [],
        "chat_x": sorted(doors[c]), "chat_y": [w], "y_owner": {w: b},
        "needs": {"bc": 1}, "bridge": ("a", "ac"),
        "aux": {"t_c": t_c, "shared_door": w},
    }
    _extra_or_direct(a, t_c, c, "a", "ac", bplan)
    alpha_c = next((v for v in outside_neighbors(g, a)
                    if v == c or copy_of(g, v) == copy_of(g, c)), None)
    beta_c = next((v for v in outside_neighbors(g, b)
                   if v == c or copy_of(g, v) == copy_of(g, c)), None)
    if alpha_c is None or beta_c is None:
        return [bplan]
    if alpha_c == beta_c and alpha_c != c:
        return [bplan]
    _extra_or_direct(c, alpha_c, a, "c", "ac", bplan)
    _extra_or_direct(c, beta_c, b, "c", "bc", bplan)
    return [bplan]


def _plans_3_2(g, a, b, c, outs, doors, d):
    ia, ib, ic = copy_of(g, a), copy_of(g, b), copy_of(g, c)
    beta_a = next(v for v in outs[b] if v == a or copy_of(g, v) == ia)
    gamma_a = next(v for v in outs[c] if v == a or copy_of(g, v) == ia)
    gamma_b = next(v for v in outs[c] if v == b or copy_of(g, v) == ib)
    beta_c = next(v for v in outs[b] if v == c or copy_of(g, v) == ic)
    alpha0 = sorted(doors[a])[0]
    gamma0 = doors[c][0]
    plan = {
        "xsizes": [2 * d - 3, 2 * d - 2, 2 * d - 2],
        "extras": [], "directs": [],
        "chat_x": [gamma0], "chat_y": [alpha0], "y_owner": {alpha0: a},
        "needs": {"ac": 1}, "bridge": None,
        "aux": {"alpha0": alpha0, "gamma0": gamma0},
    }
    if beta_a == gamma_a and beta_a != a:
        # one shared helper next to both b and c: spend it on the a-c side
        plan["xsizes"][0] = 2 * d - 2
        plan["extras"].append(("a", gamma_a, c, "ac"))
        plan["aux"]["shared_helper"] = beta_a
    else:
        _extra_or_direct(a, beta_a, b, "a", "ab", plan)
        _extra_or_direct(a, gamma_a, c, "a", "ac", plan)
    if gamma_b == b and beta_c == c:
        # b and c adjacent: both helper legs collapse onto one edge
        plan["directs"].append(("bc", Path((min(b, c), max(b, c)))))
        plan["xsizes"][2] = 2 * d - 1
    else:
        _extra_or_direct(b, gamma_b, c, "b", "bc", plan)
        _extra_or_direct(c, beta_c, b, "c", "bc", plan)
    return [plan]


def _plans_3_3(g, a, b, c, doors, d):
    alpha0 = sorted(doors[a])[0]
    ybs = [v for v in sorted(doors[b]) if v != alpha0][:2]
    if len(ybs) < 2:
        return []
    plan = {
        "xsizes": [2 * d - 2, 2 * d - 1, 2 * d - 2],
        "extras": [], "directs": [],
        "chat_x": sorted(doors[c]),
        "chat_y": [alpha0] + ybs,
        "y_owner": {alpha0: a, ybs[0]: b, ybs[1]: b},
        "needs": {"ac": 1, "bc": 2}, "bridge": None,
        "aux": {"alpha0": alpha0},
    }
    return [plan]


def _execute_three(g, roles, chat_copies, outs, plan, oseed):
    a, b, c = roles
    ia, ib, ic = copy_of(g, a), copy_of(g, b), copy_of(g, c)
    x1, x2, x3 = plan["xsizes"]

    reserved = {a, b, c}
    for _root, target, _far, _tag in plan["extras"]:
        reserved.add(target)
    reserved |= set(plan["chat_x"]) | set(plan["chat_y"])

    w1 = _slice_pool(g, ia, ib, reserved)
    w2 = _slice_pool(g, ia, ic, reserved)
    w3 = _slice_pool(g, ib, ic, reserved)
    if len(w1) < x1 or len(w2) < x2 or len(w3) < x3:
        return None
    matches = ([(w, ws, "ab") for w, ws in w1[:x1]]
               + [(w, ws, "ac") for w, ws in w2[:x2]]
               + [(w, ws, "bc") for w, ws in w3[:x3]])

    chat_y = list(plan["chat_y"])
    bridge = None
    if plan["bridge"] is not None:
        root_role, btag = plan["bridge"]
        root = {"a": a, "b": b, "c": c}[root_role]
        used_from = {w for w, _ws, _t in matches} | reserved
        u = None
        for v in g.copy_members[copy_of(g, root)]:
            if v in used_from:
                continue
            if g.perm(v).images[1] not in chat_copies:
                continue
            v_star = outside_neighbors(g, v)[2]
            if v_star in set(plan["chat_x"]) | set(chat_y) | reserved:
                continue
            u = (v, v_star)
            break
        if u is None:
            return None
        bridge = (root, u[0], u[1], btag)
        chat_y.append(u[1])

    fan_targets: dict[int, list[int]] = {a: [], b: [], c: []}
    for w, ws, tag in matches:
        left, right = _pair_ends(tag, a, b, c)
        fan_targets[left].append(w)
        fan_targets[right].append(ws)
    role_v = {"a": a, "b": b, "c": c}
    for root_role, target, _far, _tag in plan["extras"]:
        fan_targets[role_v[root_role]].append(target)
    if bridge is not None:
        fan_targets[bridge[0]].append(bridge[1])

    fans: dict[int, dict[int, Path]] = {}
    for term in (a, b, c):
        tgts = fan_targets[term]
        if not tgts:
            continue
        if len(set(tgts)) != len(tgts):
            return None
        try:
            fam = k_fan(copy_union(g, {copy_of(g, term)}), term, tgts,
                        len(tgts), order_seed=oseed)
        except (InsufficientConnectivity, ValueError):
            return None
        fans[term] = {p.vertices[-1]: p for p in fam.paths}

    chat_paths: list[Path] = []
    if plan["chat_x"]:
        try:
            fam = disjoint_set_paths(copy_union(g, chat_copies),
                                     plan["chat_x"], chat_y,
                                     len(plan["chat_x"]), order_seed=oseed)
        except (InsufficientConnectivity, ValueError):
            return None
        chat_paths = list(fam.paths)

    tagged: list[tuple[str, Path]] = list(plan["directs"])
    for w, ws, tag in matches:
        left, right = _pair_ends(tag, a, b, c)
        tagged.append((tag, _cat(fans[left][w], fans[right][ws].reverse())))
    for root_role, target, far, tag in plan["extras"]:
        tagged.append((tag, _cat(fans[role_v[root_role]][target], (far,))))

    if bridge is not None:
        root, u, u_star, btag = bridge
        bp = next((p for p in chat_paths if p.vertices[-1] == u_star), None)
        if bp is None:
            return None
        chat_paths.remove(bp)
        tagged.append((btag, _cat(fans[root][u], bp.reverse(), (c,))))

    need = dict(plan["needs"])
    if chat_paths:
        options = []
        for p in chat_paths:
            y = p.vertices[-1]
            forced = plan["y_owner"].get(y)
            if forced is not None:
                owners = [forced]
            else:
                owners = [t for t in (a, b) if y in outs[t]]
            if not owners:
                return None
            options.append(owners)
        assign = None
        for combo in itertools.product(*options):
            tally: dict[str, int] = {}
            for owner in combo:
                tag = "ac" if owner == a else "bc"
                tally[tag] = tally.get(tag, 0) + 1
            if tally == need:
                assign = combo
                break
        if assign is None:
            return None
        for p, owner in zip(chat_paths, assign):
            tag = "ac" if owner == a else "bc"
            tagged.append((tag, _cat((owner,), p.reverse(), (c,))))
    elif need:
        return None

    structure = _group(tagged, (a, b, c))
    target = standard_target(g.n)
    if structure.counts() != target.as_tuple():
        return None
    verdict = check_tripod(full_view(g), structure, target, exact=True)
    if not verdict.ok:
        return None
    return structure
