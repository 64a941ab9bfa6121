"""Exact generalized matching numbers with certificates and closed-form bounds.

m(n,t,lam;k1,k2) is the maximum size of a t-uniform family on [n] containing
no lam repeatable members whose per-point multiplicities all fall between
lam-k2+1 and k1-1.  The solver is a branch-and-bound over the colex list of
t-subsets; legality of an inclusion is decided by an incremental violation
oracle restricted to collections through the new set.  A brute-force sweep
over all subfamilies doubles as an independent cross-check on tiny instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Sequence

from . import _kernels
from .bounds import BoundEntry, BoundReport, Hypothesis
from .core import (
    DisjointnessParams,
    ParameterError,
    SubsetFamily,
    enumerate_subsets,
    full_mask,
    points_from_mask,
)

DEFAULT_SUBSET_CAP = 400


@dataclass(frozen=True)
class MatchingInstance:
    n: int
    t: int
    params: DisjointnessParams

    def __post_init__(self) -> None:
        if not 1 <= self.t <= self.n:
            raise ParameterError(f"uniformity t={self.t} outside [1..{self.n}]")


@dataclass(frozen=True)
class MatchingCertificate:
    value: int
    family: SubsetFamily
    status: str  # "exact" | "lower-only"
    explored: int

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "status": self.status,
            "family": [list(points_from_mask(m)) for m in self.family.sets],
            "explored": self.explored,
        }


# ---------------------------------------------------------------------------
# violation oracle


def _find_violating(
    masks: Sequence[int],
    n: int,
    params: DisjointnessParams,
    must_include: int | None = None,
) -> tuple[int, ...] | None:
    """Least non-decreasing index multiset forming a qualifying collection."""
    lam, lo, hi = params.lam, params.min_count, params.max_count
    if lo > hi or not masks:
        return None
    counts = [0] * n
    chosen: list[int] = []

    def apply(mask: int, delta: int) -> bool:
        ok = True
        for p in range(n):
            if mask & (1 << p):
                counts[p] += delta
                if counts[p] > hi:
                    ok = False
        return ok

    slots = lam
    if must_include is not None:
        apply(masks[must_include], 1)
        if any(c > hi for c in counts):
            apply(masks[must_include], -1)
            return None
        slots -= 1

    def feasible(remaining: int) -> bool:
        # every point must still be able to reach the lower bound
        return all(c + remaining >= lo for c in counts)

    def dfs(start: int, remaining: int) -> bool:
        if remaining == 0:
            return all(lo <= c <= hi for c in counts)
        if not feasible(remaining):
            return False
        for v in range(start, len(masks)):
            if apply(masks[v], 1):
                chosen.append(v)
                if dfs(v, remaining - 1):
                    return True
                chosen.pop()
            apply(masks[v], -1)
        return False

    if not feasible(slots):
        if must_include is not None:
            apply(masks[must_include], -1)
        return None
    found = dfs(0, slots)
    if must_include is not None:
        apply(masks[must_include], -1)
    if not found:
        return None
    result = list(chosen)
    if must_include is not None:
        result.append(must_include)
    return tuple(sorted(result))


def find_violating_collection(
    family: SubsetFamily,
    params: DisjointnessParams,
    must_include: int | None = None,
) -> tuple[int, ...] | None:
    """Least lam-multiset of member indices meeting the per-point caps, if any."""
    if must_include is not None and not 0 <= must_include < len(family):
        raise ParameterError(f"must_include index {must_include} out of range")
    return _find_violating(family.sets, family.n, params, must_include)


# ---------------------------------------------------------------------------
# exact solver


class _Budget:
    def __init__(self, limit: int | None) -> None:
        self.limit = limit
        self.used = 0

    def tick(self) -> bool:
        self.used += 1
        return self.limit is None or self.used <= self.limit


def matching_number_exact(
    instance: MatchingInstance,
    budget: int | None = None,
    subset_cap: int = DEFAULT_SUBSET_CAP,
) -> MatchingCertificate:
    """Branch-and-bound value of m(n,t,lam;k1,k2) with an extremal family.

    Short-circuits: if every collection qualifies the value is 0; if none can
    exist the value is C(n,t).  Otherwise include/exclude branching over the
    colex t-subset list, bounded by remaining candidates and the closed-form
    upper bound.  A budget overrun downgrades the status to "lower-only".
    """
    n, t, params = instance.n, instance.t, instance.params
    total = comb(n, t)
    if total > subset_cap:
        raise ParameterError(f"C({n},{t})={total} exceeds the cap {subset_cap}")
    if params.vacuous:
        return MatchingCertificate(0, SubsetFamily(n, (), t), "exact", 0)
    candidates = enumerate_subsets(n, t)
    if not params.feasible:
        return MatchingCertificate(
            total, SubsetFamily(n, tuple(candidates), t), "exact", 0
        )

    cap = total
    if params.k1 is not None and params.k2 is not None and min(params.k1, params.k2) >= 2:
        report = matching_closed_bounds(n, t, params.lam, params.k1 - 1, params.k2 - 1)
        for entry in report.entries:
            if entry.direction == "upper" and entry.applicable:
                cap = min(cap, int(entry.value))

    best: list[int] = []
    chosen: list[int] = []
    budget_box = _Budget(budget)
    exhausted = False

    def dfs(i: int) -> bool:
        """Returns True when the search can stop (cap reached or budget out)."""
        nonlocal best, exhausted
        while i < len(candidates):
            if not budget_box.tick():
                exhausted = True
                return True
            if len(chosen) + (len(candidates) - i) <= len(best):
                return False
            mask = candidates[i]
            if (
                _find_violating(
                    [candidates[j] for j in chosen] + [mask],
                    n,
                    params,
                    must_include=len(chosen),
                )
                is None
            ):
                chosen.append(i)
                if len(chosen) > len(best):
                    best = list(chosen)
                    if len(best) == cap:
                        chosen.pop()
                        return True
                if dfs(i + 1):
                    chosen.pop()
                    return True
                chosen.pop()
            i += 1
        return False

    dfs(0)
    family = SubsetFamily(n, tuple(candidates[i] for i in best), t)
    status = "lower-only" if exhausted else "exact"
    if status == "exact":
        assert find_violating_collection(family, params) is None
    return MatchingCertificate(len(best), family, status, budget_box.used)


def matching_number_brute(instance: MatchingInstance) -> tuple[int, SubsetFamily]:
    """Independent oracle: full sweep over all subfamilies of the t-subsets.

    Qualifying collections are enumerated from the quantifier definition
    (every k1 of them intersect in nothing, every k2 of them cover [n],
    vacuously when fewer than k1 resp. k2 entries exist), then the kernel
    sweeps all 2^M subfamilies for the largest one avoiding every support.
    """
    n, t, params = instance.n, instance.t, instance.params
    candidates = enumerate_subsets(n, t)
    m = len(candidates)
    if m > 24:
        raise ParameterError(f"brute-force oracle capped at C(n,t) <= 24, got {m}")
    supports = set()
    ground = full_mask(n)
    for combo in combinations_with_replacement(range(m), params.lam):
        sets = [candidates[i] for i in combo]
        ok = True
        if params.k1 is not None and params.k1 <= params.lam:
            for sub in combinations(range(params.lam), params.k1):
                inter = ground
                for i in sub:
                    inter &= sets[i]
                if inter:
                    ok = False
                    break
        if ok and params.k2 is not None and params.k2 <= params.lam:
            for sub in combinations(range(params.lam), params.k2):
                union = 0
                for i in sub:
                    union |= sets[i]
                if union != ground:
                    ok = False
                    break
        if ok:
            support = 0
            for i in combo:
                support |= 1 << i
            supports.add(support)
    size, member_mask = _kernels.max_subfamily_avoiding(sorted(supports), m)
    picked = tuple(
        candidates[i] for i in range(m) if member_mask & (1 << i)
    )
    return size, SubsetFamily(n, picked, t)


# ---------------------------------------------------------------------------
# closed-form bounds


def matching_closed_bounds(
    n: int,
    t: int,
    lam: int,
    s1: int,
    s2: int,
    c: int | None = None,
    s: int | None = None,
) -> BoundReport:
    """Closed-form sandwich for m(n,t,lam;s1+1,s2+1), all arithmetic exact.

    Outside min(s1+1,s2+1) <= lam <= s1+s2 the value short-circuits to 0 or
    C(n,t).  Inside, the cyclic-interval upper bound and the pierced-star
    lower bound are emitted, plus the explicit specializations when the
    frameproof parameters (c, s) are supplied.
    """
    if min(n, t, lam, s1, s2) < 1:
        raise ParameterError("all of n, t, lam, s1, s2 must be >= 1")
    quantity = f"m({n},{t},{lam};{s1 + 1},{s2 + 1})"
    total = comb(n, t)
    entries: list[BoundEntry] = []

    if lam < min(s1 + 1, s2 + 1):
        entries.append(
            BoundEntry(
                quantity,
                0,
                "exact",
                "short-circuit: every collection qualifies",
                (Hypothesis(f"lam={lam} <= min(s1,s2)", True),),
            )
        )
        return BoundReport(quantity, tuple(entries))
    if lam >= s1 + s2 + 1:
        entries.append(
            BoundEntry(
                quantity,
                total,
                "exact",
                "short-circuit: no collection can exist",
                (Hypothesis(f"lam={lam} >= s1+s2+1", True),),
            )
        )
        return BoundReport(quantity, tuple(entries))

    # cyclic-interval upper bound
    hyp_range = Hypothesis(f"n > t > 1 (n={n}, t={t})", n > t > 1)
    if hyp_range.ok:
        chi = max(-(-t // s1), -(-(n - t) // s2))
        m_cls = n // chi
        gamma = -(-n // m_cls)
        value = Fraction(total * (lam - 1) * gamma, n)
        entries.append(
            BoundEntry(
                quantity,
                int(value),  # floored: the quantity is an integer
                "upper",
                "cyclic-interval classes",
                (hyp_range,),
            )
        )
    else:
        entries.append(
            BoundEntry(quantity, total, "upper", "cyclic-interval classes", (hyp_range,))
        )

    # pierced-star lower bound
    lower = max(
        total - comb(max(n - -(-lam // s1) + 1, 0), t),
        total - comb(max(n - -(-lam // s2) + 1, 0), n - t),
    )
    entries.append(
        BoundEntry(
            quantity,
            lower,
            "lower",
            "pierced-star families",
            (Hypothesis(f"min(s1+1,s2+1) <= lam <= s1+s2 (lam={lam})", True),),
        )
    )

    if c is not None and s is not None:
        entries.extend(_explicit_entries(quantity, n, t, lam, c, s, total))
    return BoundReport(quantity, tuple(entries))


def _explicit_entries(
    quantity: str, n: int, t: int, lam: int, c: int, s: int, total: int
) -> list[BoundEntry]:
    s0 = min(s, c - s)
    hyp_n = Hypothesis(f"n >= c(c-1) = {c * (c - 1)}", n >= c * (c - 1))
    hyp_lam = Hypothesis(
        f"min(s+1,c-s+1) <= lam <= c (lam={lam})",
        min(s + 1, c - s + 1) <= lam <= c,
    )
    hyp_t = Hypothesis(f"t = ceil(s*n/c) = {-(-s * n // c)}", t == -(-s * n // c))
    hyp_div = Hypothesis(f"c | n (n={n}, c={c})", n % c == 0)
    out = [
        BoundEntry(
            quantity,
            Fraction(lam - 1, n) * (-(-n // (c - 1))) * total,
            "upper",
            "explicit cyclic-interval",
            (hyp_n, hyp_lam, hyp_t),
        ),
        BoundEntry(
            quantity,
            Fraction(lam - 1, c) * total,
            "upper",
            "explicit cyclic-interval, divisible",
            (hyp_n, hyp_lam, hyp_t, hyp_div),
        ),
    ]
    if lam >= c - s0 + 1:
        frac, frac_div = Fraction(c - s0, c) - Fraction(1, n), Fraction(c - s0, c)
        hyp_side = Hypothesis(f"lam >= c-s0+1 = {c - s0 + 1}", True)
    else:
        frac, frac_div = Fraction(s0, c) - Fraction(1, n), Fraction(s0, c)
        hyp_side = Hypothesis(f"lam >= s0+1 = {s0 + 1}", lam >= s0 + 1)
    out.append(
        BoundEntry(
            quantity,
            frac * total,
            "lower",
            "explicit pierced-star",
            (hyp_n, hyp_lam, hyp_t, hyp_side),
        )
    )
    out.append(
        BoundEntry(
            quantity,
            frac_div * total,
            "lower",
            "explicit pierced-star, divisible",
            (hyp_n, hyp_lam, hyp_t, hyp_side, hyp_div),
        )
    )
    if lam in (s0 + 1, c - s0 + 1):
        frac_exact = Fraction(s0, c) if lam == s0 + 1 else Fraction(c - s0, c)
        out.append(
            BoundEntry(
                quantity,
                frac_exact * total,
                "exact",
                "divisible exact value",
                (
                    hyp_div,
                    Hypothesis("t = s*n/c exactly", n % c == 0 and t * c == s * n),
                    Hypothesis(f"lam in {{s0+1, c-s0+1}}", True),
                ),
            )
        )
    return out


# ---------------------------------------------------------------------------
# cyclic interval partition


def interval_mask(n: int, t: int, a: int) -> int:
    """The cyclic interval {a, a+1, ..., a+t-1} on points 1..n (wrapping)."""
    mask = 0
    for i in range(t):
        mask |= 1 << ((a - 1 + i) % n)
    return mask


@dataclass(frozen=True)
class CyclicPartitionPlan:
    """Partition of the n cyclic t-intervals into gamma cap-respecting classes."""

    n: int
    t: int
    s1: int
    s2: int
    chi: int
    m: int
    gamma: int
    n0: int
    classes: tuple[tuple[int, ...], ...]  # interval start points, 1-based

    def class_masks(self, i: int) -> list[int]:
        return [interval_mask(self.n, self.t, a) for a in self.classes[i]]


def cyclic_partition_plan(n: int, t: int, s1: int, s2: int) -> CyclicPartitionPlan:
    """Split the cyclic intervals into classes whose point-coverage stays
    within s1 and whose point-miss count stays within s2.

    chi = max(ceil(t/s1), ceil(n-t/s2)); the classes step by gamma or gamma-1
    positions.  When n0 = 0 the stepped tail is empty and each class is a pure
    gamma-progression (the duplicate-collapsing reading of the construction).
    """
    if not (n > t > 1):
        raise ParameterError(f"need n > t > 1, got n={n}, t={t}")
    if s1 < 1 or s2 < 1:
        raise ParameterError("s1 and s2 must be >= 1")
    chi = max(-(-t // s1), -(-(n - t) // s2))
    m = n // chi
    if m < 1:
        raise ParameterError(f"chi={chi} exceeds n={n}")
    gamma = -(-n // m)
    n0 = m * gamma - n

    def norm(a: int) -> int:
        return (a - 1) % n + 1

    classes: list[tuple[int, ...]] = []
    for i in range(1, gamma):
        head_len = m if n0 == 0 else m - n0 + 1
        starts = [norm(i + j * gamma) for j in range(head_len)]
        anchor = i + (m - n0) * gamma
        starts += [norm(anchor + ell * (gamma - 1)) for ell in range(1, n0)]
        classes.append(tuple(starts))
    classes.append(tuple(norm(j * gamma) for j in range(1, m - n0 + 1)))

    plan = CyclicPartitionPlan(n, t, s1, s2, chi, m, gamma, n0, tuple(classes))
    _validate_plan(plan)
    return plan


def _validate_plan(plan: CyclicPartitionPlan) -> None:
    # internal invariants: partition of all n intervals, caps on every class
    n, s1, s2 = plan.n, plan.s1, plan.s2
    all_starts = [a for cls in plan.classes for a in cls]
    assert sorted(all_starts) == list(range(1, n + 1))
    assert len(plan.classes) == plan.gamma
    for idx in range(len(plan.classes)):
        masks = plan.class_masks(idx)
        for p in range(n):
            bit = 1 << p
            cover = sum(1 for mk in masks if mk & bit)
            assert cover <= s1, (idx, p + 1, cover)
            assert len(masks) - cover <= s2, (idx, p + 1, cover)


# ---------------------------------------------------------------------------
# star families


def star_family(n: int, t: int, lam: int, s: int) -> SubsetFamily:
    """All t-subsets meeting a pierce set of size ceil(lam/s)-1.

    Empty for lam <= s.  The result contains no lam repeatable members that
    are pairwise (s+1)-disjoint, by pigeonhole on the pierce set.
    """
    if min(n, t, lam, s) < 1 or t > n:
        raise ParameterError("need 1 <= t <= n and lam, s >= 1")
    if lam <= s:
        return SubsetFamily(n, (), t)
    size_s = -(-lam // s) - 1
    pierce = full_mask(min(size_s, n))
    sets = tuple(mask for mask in enumerate_subsets(n, t) if mask & pierce)
    expected = comb(n, t) - comb(max(n - size_s, 0), t)
    assert len(sets) == expected
    return SubsetFamily(n, sets, t)
