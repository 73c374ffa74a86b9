"""Case machine: routes, traces, and structural guarantees per terminal layout."""

import random

import pytest

from tripaths.construct import (
    CASE_1_1,
    CASE_1_2_1,
    CASE_1_2_2,
    CASE_2,
    CASE_3_1,
    CASE_3_2,
    CASE_3_3,
    CASE_EVEN,
    build_structure,
)
from tripaths.errors import DuplicateVertices, WrongFamily
from tripaths.graphs import build, full_view
from tripaths.pairing import pair_structure
from tripaths.perms import Family, parse_permutation, rank
from tripaths.tripod import standard_target
from tripaths.verification import check_tripod

G4 = build(4, Family.WHEEL)
G5 = build(5, Family.WHEEL)


def _check(g, omega, seed=0):
    structure, trace = build_structure(g, omega, seed=seed)
    verdict = check_tripod(full_view(g), structure, standard_target(g.n), exact=True)
    assert verdict.ok, (omega, verdict.violations)
    assert structure.counts() == standard_target(g.n).as_tuple()
    return structure, trace


def test_wrong_family():
    bss = build(4, Family.BUBBLE_SORT_STAR)
    with pytest.raises(WrongFamily):
        build_structure(bss, (0, 1, 2))


def test_duplicate_vertices():
    with pytest.raises(DuplicateVertices):
        build_structure(G4, (0, 1, 1))


def test_even_case_n4():
    rng = random.Random(42)
    for _ in range(15):
        omega = tuple(rng.sample(range(24), 3))
        structure, trace = _check(G4, omega)
        assert trace.case_id == CASE_EVEN
        assert not trace.fallback
        assert structure.counts() == (2, 2, 2)


def test_cyclic_rotation_example_n5():
    # a = e, b = a rotated by (1 2 3), c = b rotated again: same copy,
    # algebraically cyclic with rotation step 2
    a = rank(parse_permutation("[1,2,3,4,5]"))
    b = rank(parse_permutation("[2,3,1,4,5]"))
    c = rank(parse_permutation("[3,1,2,4,5]"))
    structure, trace = _check(G5, (a, b, c))
    assert trace.case_id == CASE_1_2_2
    assert trace.auxiliary["rotation_step"] == 2
    assert trace.auxiliary["regime"] == "paired-j2"
    assert structure.counts() == (2, 4, 4)


def test_cyclic_rotation_high_step_n5():
    # rotation step n-2 lands in the mirrored paired regime
    a = rank(parse_permutation("[1,2,3,4,5]"))
    b = rank(parse_permutation("[3,2,4,1,5]"))
    c = rank(parse_permutation("[4,2,1,3,5]"))
    structure, trace = _check(G5, (a, b, c))
    assert trace.case_id == CASE_1_2_2
    assert trace.auxiliary["rotation_step"] == 3
    assert trace.auxiliary["regime"] == "paired-j3"


def test_same_copy_sweep_n5():
    members = G5.copy_members[2]
    rng = random.Random(0)
    seen = set()
    for _ in range(30):
        omega = tuple(sorted(rng.sample(members, 3)))
        _, trace = _check(G5, omega)
        assert trace.case_id in (CASE_1_1, CASE_1_2_1, CASE_1_2_2)
        seen.add(trace.case_id)
        assert set(trace.copies.values()) == {2}
    assert CASE_1_1 in seen


def test_two_copy_sweep_n5():
    rng = random.Random(1)
    for _ in range(25):
        pair = rng.sample(G5.copy_members[1], 2)
        loner = rng.choice(G5.copy_members[4])
        omega = tuple(sorted(pair + [loner]))
        structure, trace = _check(G5, omega)
        assert trace.case_id == CASE_2
        # the harvest donates first vertices of 2d-3 long pair paths
        assert len(trace.auxiliary["harvested"]) == G5.n - 4


def test_three_copy_sweep_n5():
    rng = random.Random(2)
    seen = set()
    for _ in range(40):
        omega = tuple(sorted(
            rng.choice(G5.copy_members[c]) for c in (1, 3, 5)))
        _, trace = _check(G5, omega)
        assert trace.case_id in (CASE_3_1, CASE_3_2, CASE_3_3)
        seen.add(trace.case_id)
    assert CASE_3_1 in seen


def test_trace_roles_match_omega():
    omega = (10, 40, 90)
    _, trace = _check(G5, omega)
    assert sorted(trace.roles.values()) == sorted(omega)
    for role, v in trace.roles.items():
        assert trace.copies[role] == G5.copy_id[v]


def test_no_fallback_across_mixed_sweep_n5():
    rng = random.Random(3)
    for _ in range(60):
        omega = tuple(sorted(rng.sample(range(120), 3)))
        _, trace = _check(G5, omega)
        assert not trace.fallback


def test_deterministic_given_seed():
    omega = (7, 61, 113)
    s1, t1 = build_structure(G5, omega, seed=5)
    s2, t2 = build_structure(G5, omega, seed=5)
    assert s1 == s2
    assert t1.case_id == t2.case_id


def test_omega_order_does_not_matter():
    one, trace_one = _check(G5, (90, 10, 40))
    two, trace_two = _check(G5, (10, 40, 90))
    assert one == two
    assert trace_one.case_id == trace_two.case_id
    assert set(one.omega) == {10, 40, 90}


def test_bridged_rotation_regime_n7():
    # rotation steps strictly between 2 and n-2 only exist from n=7 up
    g7 = build(7, Family.WHEEL)
    a = rank(parse_permutation("[1,2,3,4,5,6,7]"))
    b = rank(parse_permutation("[3,2,4,1,5,6,7]"))
    c = rank(parse_permutation("[4,2,1,3,5,6,7]"))
    structure, trace = build_structure(g7, (a, b, c), seed=0)
    verdict = check_tripod(full_view(g7), structure, standard_target(7), exact=True)
    assert verdict.ok, verdict.violations
    assert trace.case_id == CASE_1_2_2
    assert trace.auxiliary["regime"] == "bridged-j3"
    omega_set = pair_structure(full_view(g7), structure)
    assert len(omega_set) == 8
