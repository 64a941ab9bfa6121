import random
from fractions import Fraction
from math import comb

import pytest

from frameproof_lab.core import (
    DisjointnessParams,
    ParameterError,
    SubsetFamily,
    enumerate_subsets,
    is_disjoint_collection,
)
from frameproof_lab.matching import (
    MatchingInstance,
    cyclic_partition_plan,
    find_violating_collection,
    matching_closed_bounds,
    matching_number_brute,
    matching_number_exact,
    star_family,
)


def inst(n, t, lam, k1, k2):
    return MatchingInstance(n, t, DisjointnessParams(lam, k1, k2))


def test_find_violating_examples():
    all_pairs = SubsetFamily(4, tuple(enumerate_subsets(4, 2)), 2)
    hit = find_violating_collection(all_pairs, DisjointnessParams(2, 2, 2))
    assert hit is not None
    masks = [all_pairs.sets[i] for i in hit]
    assert masks[0] | masks[1] == 0b1111 and masks[0] & masks[1] == 0

    star = SubsetFamily.from_iterables(4, [[1, 2], [1, 3], [1, 4]], 2)
    assert find_violating_collection(star, DisjointnessParams(2, 2, 2)) is None

    fam = SubsetFamily.from_iterables(4, [[1, 2], [3, 4], [1, 3]], 2)
    p34 = DisjointnessParams(3, 3, 4)
    hit = find_violating_collection(fam, p34)
    assert hit is not None
    assert is_disjoint_collection([fam.sets[i] for i in hit], 4, p34)
    # in particular the three distinct members themselves qualify
    assert is_disjoint_collection(list(fam.sets), 4, p34)


def test_find_violating_must_include():
    fam = SubsetFamily.from_iterables(4, [[1, 2], [1, 3], [3, 4]], 2)
    p = DisjointnessParams(2, 2, 2)
    assert find_violating_collection(fam, p, must_include=1) is None
    hit = find_violating_collection(fam, p, must_include=2)
    assert hit is not None and 2 in hit
    with pytest.raises(ParameterError):
        find_violating_collection(fam, p, must_include=7)


def test_matching_exact_known_values():
    assert matching_number_exact(inst(4, 2, 2, 2, 2)).value == 3
    assert matching_number_exact(inst(4, 2, 1, 2, 2)).value == 0
    assert matching_number_exact(inst(4, 2, 4, 2, 2)).value == 6
    assert matching_number_exact(inst(6, 2, 2, 2, 3)).value == 5
    assert matching_number_exact(inst(6, 3, 2, 2, 2)).value == 10


def test_matching_certificates_validate():
    for args in [(4, 2, 2, 2, 2), (6, 2, 2, 2, 3), (6, 3, 2, 2, 2), (6, 4, 2, 3, 2)]:
        cert = matching_number_exact(inst(*args))
        assert cert.status == "exact"
        assert len(cert.family) == cert.value
        assert find_violating_collection(cert.family, inst(*args).params) is None


def test_matching_single_sided_modes():
    # classic intersecting-family specialization: no two disjoint pairs
    assert matching_number_exact(inst(6, 2, 2, 2, None)).value == 5
    assert matching_number_exact(inst(5, 2, 2, 2, None)).value == 4
    # covering-only mode
    cert = matching_number_exact(inst(4, 2, 2, None, 2))
    value, _ = matching_number_brute(inst(4, 2, 2, None, 2))
    assert cert.value == value


def test_matching_budget_lower_only():
    cert = matching_number_exact(inst(6, 3, 2, 2, 2), budget=3)
    assert cert.status == "lower-only"
    assert cert.value <= 10
    assert find_violating_collection(cert.family, DisjointnessParams(2, 2, 2)) is None


def test_matching_subset_cap():
    with pytest.raises(ParameterError):
        matching_number_exact(inst(20, 10, 2, 2, 2))


def test_brute_equivalence_tiny():
    rng = random.Random(2718)
    cases = 0
    for _ in range(40):
        n = rng.randint(2, 6)
        t = rng.randint(1, n)
        if comb(n, t) > 20:
            continue
        lam = rng.randint(1, 4)
        k1 = rng.choice([None, rng.randint(1, 4)])
        k2 = rng.choice([None, rng.randint(1, 4)])
        instance = inst(n, t, lam, k1, k2)
        brute_value, brute_family = matching_number_brute(instance)
        cert = matching_number_exact(instance)
        assert cert.value == brute_value, (n, t, lam, k1, k2)
        assert find_violating_collection(brute_family, instance.params) is None
        cases += 1
    assert cases >= 25


def test_closed_bounds_pinning_examples():
    r = matching_closed_bounds(6, 2, 2, 1, 2)
    uppers = [e.value for e in r.applicable("upper")]
    lowers = [e.value for e in r.applicable("lower")]
    assert min(uppers) == 5 and max(lowers) == 5
    assert r.exact_value() == 5

    r2 = matching_closed_bounds(6, 3, 2, 1, 1)
    assert r2.exact_value() == 10

    r3 = matching_closed_bounds(6, 2, 4, 1, 2)  # lam >= s1+s2+1
    assert r3.entries[0].direction == "exact" and r3.entries[0].value == comb(6, 2)

    r4 = matching_closed_bounds(6, 2, 1, 1, 2)  # lam <= min(s1, s2)
    assert r4.entries[0].value == 0


def test_closed_bounds_sandwich_solver():
    rng = random.Random(99)
    for _ in range(60):
        n = rng.randint(3, 6)
        t = rng.randint(2, n - 1)
        s1 = rng.randint(1, 3)
        s2 = rng.randint(1, 3)
        lam = rng.randint(min(s1, s2) + 1, s1 + s2)
        if comb(n, t) > 25:
            continue
        report = matching_closed_bounds(n, t, lam, s1, s2)
        value = matching_number_exact(inst(n, t, lam, s1 + 1, s2 + 1)).value
        for e in report.applicable("upper"):
            assert value <= e.value, (n, t, lam, s1, s2)
        for e in report.applicable("lower"):
            assert value >= e.value, (n, t, lam, s1, s2)


def test_explicit_corollary_entries():
    # c | n exact specialization: m(4,2,2;2,2) = (1/2) C(4,2) = 3
    r = matching_closed_bounds(4, 2, 2, 1, 1, c=2, s=1)
    exact = [e for e in r.entries if e.source == "divisible exact value"]
    assert len(exact) == 1 and exact[0].value == 3 and exact[0].applicable
    # and the explicit upper bound with the divisibility hypothesis
    div_upper = [e for e in r.entries if e.source == "explicit cyclic-interval, divisible"]
    assert div_upper[0].value == Fraction(1, 2) * comb(4, 2)


def test_cyclic_partition_plan_examples():
    plan = cyclic_partition_plan(6, 3, 1, 1)
    assert plan.chi == 3 and plan.gamma == 3
    assert plan.classes == ((1, 4), (2, 5), (3, 6))

    plan2 = cyclic_partition_plan(4, 2, 1, 1)
    assert plan2.classes == ((1, 3), (2, 4))

    plan3 = cyclic_partition_plan(5, 2, 2, 2)
    assert (plan3.chi, plan3.m, plan3.gamma, plan3.n0) == (2, 2, 3, 1)
    assert len(plan3.classes) == 3

    with pytest.raises(ParameterError):
        cyclic_partition_plan(4, 4, 1, 1)


def test_cyclic_plan_classes_are_disjoint_collections():
    plan = cyclic_partition_plan(9, 4, 2, 3)
    for i, cls in enumerate(plan.classes):
        masks = plan.class_masks(i)
        dp = DisjointnessParams(len(masks), plan.s1 + 1, plan.s2 + 1)
        assert is_disjoint_collection(masks, plan.n, dp)


def test_star_family_examples():
    fam = star_family(5, 2, 3, 2)
    assert len(fam) == 4
    assert all(m & 0b1 for m in fam.sets)
    assert find_violating_collection(fam, DisjointnessParams(3, 3, 4)) is None

    fam2 = star_family(6, 3, 2, 1)
    assert len(fam2) == comb(6, 3) - comb(5, 3) == 10
    assert find_violating_collection(fam2, DisjointnessParams(2, 2, 3)) is None

    assert len(star_family(5, 2, 1, 2)) == 0


def test_star_family_violation_free_single_sided():
    # pure (s+1)-disjoint mode realized with k2 = lam + 1
    rng = random.Random(60)
    for _ in range(40):
        n = rng.randint(2, 7)
        t = rng.randint(1, n)
        s = rng.randint(1, 3)
        lam = rng.randint(1, 5)
        fam = star_family(n, t, lam, s)
        assert len(fam) == comb(n, t) - comb(max(n - (-(-lam // s) - 1), 0), t)
        if len(fam):
            assert find_violating_collection(fam, DisjointnessParams(lam, s + 1, lam + 1)) is None


def test_certificate_json():
    cert = matching_number_exact(inst(4, 2, 2, 2, 2))
    doc = cert.to_json()
    assert doc["value"] == 3 and doc["status"] == "exact"
    assert len(doc["family"]) == 3


def test_two_sided_value_dominates_single_sided():
    # disabling one clause can only shrink the admissible-collection set of
    # the complementary problem, so the two-sided value dominates both
    # single-sided reductions (the second on complemented families).
    rng = random.Random(321)
    for _ in range(25):
        n = rng.randint(3, 6)
        t = rng.randint(1, n - 1)
        if comb(n, t) > 20:
            continue
        lam = rng.randint(2, 4)
        s1 = rng.randint(1, 3)
        s2 = rng.randint(1, 3)
        both = matching_number_exact(inst(n, t, lam, s1 + 1, s2 + 1)).value
        left = matching_number_exact(inst(n, t, lam, s1 + 1, None)).value
        right = matching_number_exact(inst(n, n - t, lam, s2 + 1, None)).value
        assert both >= left, (n, t, lam, s1, s2)
        assert both >= right, (n, t, lam, s1, s2)


def test_more_divisible_exact_values():
    # (s0/c) and ((c-s0)/c) closed forms at c | n, frozen from the formula
    for (n, t, lam, k1, k2), want in [
        ((6, 2, 3, 2, 3), 10),  # c=3, s=1, lam = c-s0+1
        ((6, 4, 3, 3, 2), 10),  # c=3, s=2, lam = c-s0+1
        ((8, 4, 2, 2, 2), 35),  # c=2, s=1, lam = s0+1
    ]:
        cert = matching_number_exact(inst(n, t, lam, k1, k2))
        assert cert.status == "exact" and cert.value == want
