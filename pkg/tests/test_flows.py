"""Flow primitives: disjoint path families, fans, cuts, Menger duality."""

import random

from tripaths.flows import (
    Path,
    disjoint_set_paths,
    k_fan,
    local_connectivity,
    max_internally_disjoint_paths,
    min_vertex_cut,
    shortest_path,
    vertex_connectivity,
)
from tripaths.graphs import build, copy_union, full_view
from tripaths.perms import Family
from tripaths.verification import (
    check_disjoint_set_paths,
    check_fan,
    check_internally_disjoint,
)


def test_path_basics():
    p = Path((3, 7, 2))
    assert p.length == 2
    assert p.reverse().vertices == (2, 7, 3)
    assert p.edges() == [(3, 7), (2, 7)]
    assert p.interior() == (7,)


def test_shortest_path():
    g = build(4, Family.WHEEL)
    view = full_view(g)
    p = shortest_path(view, 0, 23)
    assert p is not None
    assert p.vertices[0] == 0 and p.vertices[-1] == 23
    for u, w in zip(p.vertices, p.vertices[1:]):
        assert view.adjacent(u, w)
    assert shortest_path(view, 0, 23, avoid=set(range(1, 23))) is None


def test_connectivity_bss():
    assert vertex_connectivity(full_view(build(3, Family.BUBBLE_SORT_STAR))) == 3
    assert vertex_connectivity(full_view(build(4, Family.BUBBLE_SORT_STAR))) == 5


def test_connectivity_wheel():
    assert vertex_connectivity(full_view(build(4, Family.WHEEL))) == 6


def test_max_internally_disjoint_paths_hits_degree():
    g = build(4, Family.WHEEL)
    view = full_view(g)
    fam = max_internally_disjoint_paths(view, 0, 23)
    assert len(fam.paths) == 6
    verdict = check_internally_disjoint(view, 0, 23, fam)
    assert verdict.ok, verdict.violations


def test_menger_duality_seeded_pairs():
    g = build(4, Family.WHEEL)
    view = full_view(g)
    rng = random.Random(11)
    checked = 0
    while checked < 60:
        u = rng.randrange(24)
        v = rng.randrange(24)
        if u == v or view.adjacent(u, v):
            continue
        fam = max_internally_disjoint_paths(view, u, v)
        cut = min_vertex_cut(view, u, v)
        assert len(fam.paths) == len(cut.vertices)
        assert not cut.adjacent
        # removing the cut really separates
        assert shortest_path(view.without(set(cut.vertices)), u, v) is None
        checked += 1


def test_local_connectivity_adjacent_pair():
    g = build(4, Family.WHEEL)
    view = full_view(g)
    # adjacent vertices: direct edge counts as one path
    v, _ = g.adj[0][0]
    assert local_connectivity(view, 0, v) == 6


def test_k_fan():
    g = build(4, Family.WHEEL)
    view = full_view(g)
    targets = [5, 9, 17, 20]
    fam = k_fan(view, 0, targets, 4)
    verdict = check_fan(view, 0, targets, fam, 4)
    assert verdict.ok, verdict.violations
    ends = sorted(p.vertices[-1] for p in fam.paths)
    assert ends == sorted(targets)


def test_k_fan_source_adjacent_target():
    g = build(4, Family.WHEEL)
    view = full_view(g)
    targets = [w for w, _ in g.adj[0][:3]]
    fam = k_fan(view, 0, targets, 3)
    verdict = check_fan(view, 0, targets, fam, 3)
    assert verdict.ok, verdict.violations


def test_disjoint_set_paths():
    g = build(4, Family.WHEEL)
    view = full_view(g)
    xs = [0, 1, 2, 3]
    ys = [20, 21, 22, 23]
    fam = disjoint_set_paths(view, xs, ys, 4)
    verdict = check_disjoint_set_paths(view, xs, ys, fam, 4)
    assert verdict.ok, verdict.violations
    assert sorted(p.vertices[-1] for p in fam.paths) == ys


def test_disjoint_set_paths_overlap_zero_length():
    g = build(4, Family.WHEEL)
    view = full_view(g)
    xs = [0, 5, 9]
    ys = [9, 14, 0]
    fam = disjoint_set_paths(view, xs, ys, 3)
    verdict = check_disjoint_set_paths(view, xs, ys, fam, 3)
    assert verdict.ok, verdict.violations
    lengths = sorted(p.length for p in fam.paths)
    assert lengths[0] == 0 and lengths[1] == 0


def test_order_seed_changes_routes_not_counts():
    g = build(4, Family.WHEEL)
    view = full_view(g)
    base = max_internally_disjoint_paths(view, 0, 23)
    saw_different = False
    for seed in range(6):
        fam = max_internally_disjoint_paths(view, 0, 23, order_seed=seed)
        assert len(fam.paths) == len(base.paths)
        verdict = check_internally_disjoint(view, 0, 23, fam)
        assert verdict.ok, verdict.violations
        if sorted(p.vertices for p in fam.paths) != sorted(
                p.vertices for p in base.paths):
            saw_different = True
    assert saw_different


def test_deterministic_given_seed():
    g = build(4, Family.WHEEL)
    view = full_view(g)
    one = max_internally_disjoint_paths(view, 0, 23, order_seed=4)
    two = max_internally_disjoint_paths(view, 0, 23, order_seed=4)
    assert [p.vertices for p in one.paths] == [p.vertices for p in two.paths]


def test_copy_view_connectivity():
    g = build(5, Family.WHEEL)
    # one copy of the n=5 wheel looks like the degree-4 star-plus-adjacent graph
    assert vertex_connectivity(copy_union(g, {3})) == 5
