"""Constructive procedures: multiset partitions, Reed-Solomon codes,
packings, designs, induced packings and the multipartite word transform.

Everything here is deterministic for a fixed order/seed, and every
construction re-validates its defining property before returning.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, permutations, product
from math import comb
from pathlib import Path
from typing import Sequence

from . import _kernels
from .core import (
    DisjointnessParams,
    FormatError,
    FrameproofParams,
    GuardError,
    ParameterError,
    SubsetFamily,
    WitnessError,
    enumerate_subsets,
    lambda_of,
    mask_from_points,
    points_from_mask,
)
from .gf import GF
from .matching import MatchingInstance, matching_number_exact
from .verify import Code, FocalWitness, Guards, agreement_mask, find_focal_hypergraph

MAX_CODEWORDS = 1 << 20


# ---------------------------------------------------------------------------
# multiset partition completion


def greedy_multiset_partition(
    a_mask: int, given: Sequence[int], params: FrameproofParams
) -> list[int]:
    """Complete lam given t-subsets of A to an exact s-fold multiset cover.

    The given parts must be a (s+1, c-s+1)-disjoint collection inside A; the
    returned c-lam parts have t-1 points each and together with the given
    ones repeat every point of A exactly s times.  Parts are filled from the
    highest-multiplicity residue layer down, ties broken by point order.
    """
    c, s = params.c, params.s
    k = a_mask.bit_count()
    if k < 1:
        raise ParameterError("focus set A must be nonempty")
    lam, t = lambda_of(c, s, k)
    if len(given) != lam:
        raise WitnessError(f"got {len(given)} given parts, expected lam={lam}")
    counts: dict[int, int] = {p: 0 for p in points_from_mask(a_mask)}
    for i, part in enumerate(given):
        if part & ~a_mask:
            raise WitnessError(f"given part {i} is not a subset of A")
        if part.bit_count() != t:
            raise WitnessError(f"given part {i} has {part.bit_count()} points, expected t={t}")
        for p in points_from_mask(part):
            counts[p] += 1
    lo, hi = max(0, lam - (c - s + 1) + 1), s
    for p, cnt in counts.items():
        if not lo <= cnt <= hi:
            raise WitnessError(
                f"given parts are not ({s + 1},{c - s + 1})-disjoint in A: point {p} in {cnt}"
            )

    residue = {p: s - cnt for p, cnt in counts.items()}
    parts = c - lam
    assert sum(residue.values()) == parts * (t - 1)
    out: list[int] = []
    for _ in range(parts):
        ranked = sorted(
            (p for p, mult in residue.items() if mult > 0),
            key=lambda p: (-residue[p], p),
        )
        if len(ranked) < t - 1:
            raise WitnessError("residue multiset cannot fill a part of size t-1")
        pick = ranked[: t - 1]
        mask = 0
        for p in pick:
            residue[p] -= 1
            mask |= 1 << (p - 1)
        out.append(mask)
    if any(residue.values()):
        raise WitnessError("residue multiset not exhausted by the greedy parts")
    return out


# ---------------------------------------------------------------------------
# Reed-Solomon codes and distance certificates


def rs_code(q: int, n: int, t: int) -> Code:
    """Evaluations of all degree-<t polynomials at the first n field elements.

    Symbols are field elements shifted to 1..q.  The minimum distance is
    computed (pairwise for small codes, by nonzero-weight scan otherwise) and
    checked to equal n-t+1 before returning.
    """
    if t < 1:
        raise ParameterError(f"dimension t={t} must be >= 1")
    if t > n:
        raise ParameterError(f"dimension t={t} exceeds length n={n}")
    if n > q:
        raise ParameterError(f"length n={n} exceeds q={q} (extended codes not built)")
    field = GF(q)
    size = q**t
    if size > MAX_CODEWORDS:
        raise GuardError(f"q^t = {size} codewords exceed the cap {MAX_CODEWORDS}")
    words = []
    for msg in range(size):
        coeffs = []
        m = msg
        for _ in range(t):
            coeffs.append(m % q)
            m //= q
        words.append(tuple(field.eval_poly(coeffs, x) + 1 for x in range(n)))
    code = Code(q, n, tuple(words))

    if size <= 4096:
        dist = _kernels.min_pairwise_distance(code.to_array())
    else:
        dist = n
        for msg in range(1, size):
            coeffs = []
            m = msg
            for _ in range(t):
                coeffs.append(m % q)
                m //= q
            weight = sum(1 for x in range(n) if field.eval_poly(coeffs, x) != 0)
            dist = min(dist, weight)
    if dist != n - t + 1:
        raise AssertionError(f"computed distance {dist} != n-t+1 = {n - t + 1}")
    return code


@dataclass(frozen=True)
class DistanceCertificate:
    """Sufficient-condition certificate: d(C) > floor((c-s)n/c) forces the
    threshold property; anything else is inconclusive, never a refutation."""

    certified: bool
    distance: int | None
    threshold: int

    def to_json(self) -> dict:
        return {
            "certified": self.certified,
            "distance": self.distance,
            "threshold": self.threshold,
        }


def certify_frameproof_by_distance(
    code: Code, params: FrameproofParams
) -> DistanceCertificate:
    if len(code) == 0:
        raise ParameterError("code must be nonempty")
    threshold = (params.c - params.s) * code.n // params.c
    if len(code) == 1:
        return DistanceCertificate(True, None, threshold)  # no pairs: vacuous
    dist = _kernels.min_pairwise_distance(code.to_array())
    return DistanceCertificate(dist > threshold, dist, threshold)


# ---------------------------------------------------------------------------
# packings and designs


@dataclass(frozen=True)
class Packing:
    """k-uniform family with pairwise intersections below t."""

    family: SubsetFamily
    t: int
    is_design: bool

    @property
    def n(self) -> int:
        return self.family.n

    @property
    def k(self) -> int:
        k = self.family.uniform_k
        assert k is not None
        return k

    def validate(self) -> None:
        for a, b in combinations(self.family.sets, 2):
            if (a & b).bit_count() >= self.t:
                raise ParameterError("two blocks share t or more points")
        if self.is_design != _design_flag(self.family, self.t):
            raise ParameterError("design flag does not match the block coverage")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "t": self.t,
            "design": self.is_design,
            "blocks": [list(points_from_mask(m)) for m in self.family.sets],
        }


def _design_flag(family: SubsetFamily, t: int) -> bool:
    n, k = family.n, family.uniform_k or 0
    if comb(n, t) % comb(k, t) or len(family) * comb(k, t) != comb(n, t):
        return False
    covered: set[int] = set()
    for block in family.sets:
        for pts in combinations(points_from_mask(block), t):
            mask = mask_from_points(pts, n)
            if mask in covered:
                return False
            covered.add(mask)
    return len(covered) == comb(n, t)


def greedy_packing(
    n: int, k: int, t: int, order: str = "colex", seed: int | None = None
) -> Packing:
    """Maximal-by-inclusion packing: scan k-subsets, accept when every
    accepted block meets the candidate in fewer than t points."""
    if not n > k > t >= 1:
        raise ParameterError(f"need n > k > t >= 1, got ({n},{k},{t})")
    candidates = enumerate_subsets(n, k)
    if order == "seeded-random":
        if seed is None:
            raise ParameterError("seeded-random order requires a seed")
        random.Random(seed).shuffle(candidates)
    elif order != "colex":
        raise ParameterError(f"unknown order {order!r}")
    accepted: list[int] = []
    for cand in candidates:
        if all((cand & block).bit_count() < t for block in accepted):
            accepted.append(cand)
    family = SubsetFamily(n, tuple(accepted), k)
    return Packing(family, t, _design_flag(family, t))


@dataclass(frozen=True)
class FrameproofCheck:
    """A family together with the verifier's verdict on it (when it ran)."""

    family: SubsetFamily
    checked: bool
    witness: FocalWitness | None


def packing_to_frameproof(
    packing: Packing, params: FrameproofParams, guards: Guards | None = None
) -> FrameproofCheck:
    """A packing of strength t = ceil(s*k/c) is threshold-safe by pigeonhole;
    the returned record carries a full verifier pass when within guards."""
    _, t = lambda_of(params.c, params.s, packing.k)
    if packing.t != t:
        raise ParameterError(
            f"packing strength {packing.t} != ceil(s*k/c) = {t} for (c,s)=({params.c},{params.s})"
        )
    try:
        witness = find_focal_hypergraph(packing.family, params, guards=guards)
        return FrameproofCheck(packing.family, True, witness)
    except GuardError:
        return FrameproofCheck(packing.family, False, None)


def load_design(path: str | Path) -> Packing:
    """Read and fully validate a design file: header "n k t", one block per
    line, every t-subset covered exactly once."""
    lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("design file is empty")
    header = lines[0].split()
    if len(header) != 3 or not all(tok.isdigit() for tok in header):
        raise FormatError(f"header must be 'n k t', got {lines[0]!r}")
    n, k, t = (int(tok) for tok in header)
    if not n > k > t >= 1:
        raise FormatError(f"need n > k > t >= 1 in header, got ({n},{k},{t})")
    if comb(n, t) % comb(k, t):
        raise FormatError(f"C({n},{t}) is not divisible by C({k},{t})")
    blocks = []
    for ln_no, ln in enumerate(lines[1:], start=2):
        toks = ln.split()
        if len(toks) != k or not all(tok.isdigit() for tok in toks):
            raise FormatError(f"line {ln_no}: expected {k} points, got {ln!r}")
        try:
            blocks.append(mask_from_points((int(tok) for tok in toks), n))
        except ParameterError as exc:
            raise FormatError(f"line {ln_no}: {exc}") from exc
    expected = comb(n, t) // comb(k, t)
    if len(blocks) != expected:
        raise FormatError(f"got {len(blocks)} blocks, a design needs {expected}")
    covered: set[int] = set()
    for block in blocks:
        for pts in combinations(points_from_mask(block), t):
            mask = mask_from_points(pts, n)
            if mask in covered:
                raise FormatError(f"t-subset {pts} covered more than once")
            covered.add(mask)
    if len(covered) != comb(n, t):
        missing = next(
            m for m in enumerate_subsets(n, t) if m not in covered
        )
        raise FormatError(f"t-subset {points_from_mask(missing)} not covered")
    try:
        family = SubsetFamily(n, tuple(blocks), k)
    except ParameterError as exc:
        raise FormatError(str(exc)) from exc
    return Packing(family, t, True)


# ---------------------------------------------------------------------------
# induced packings


@dataclass(frozen=True)
class InducedPacking:
    """Edge-disjoint pattern copies with induced vertex-overlap conditions."""

    k: int
    t: int
    pattern: SubsetFamily  # t-uniform on [k]
    copies: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    # each copy: (image of pattern points 1..k, embedded edge masks on [n])

    def vertex_masks(self, n: int) -> list[int]:
        return [mask_from_points(vs, n) for vs, _ in self.copies]

    def validate(self, n: int) -> None:
        """Recheck the packing conditions pairwise from scratch."""
        vmasks = self.vertex_masks(n)
        edge_sets = [set(edges) for _, edges in self.copies]
        for (verts, edges) in self.copies:
            expect = {
                _embed_mask(e, verts) for e in self.pattern.sets
            }
            if set(edges) != expect:
                raise ParameterError("copy edges are not the embedded pattern edges")
        for i, j in combinations(range(len(self.copies)), 2):
            if edge_sets[i] & edge_sets[j]:
                raise ParameterError(f"copies {i} and {j} share an edge")
            inter = vmasks[i] & vmasks[j]
            ic = inter.bit_count()
            if ic > self.t:
                raise ParameterError(f"copies {i} and {j} share {ic} > t vertices")
            if ic == self.t and (inter in edge_sets[i] or inter in edge_sets[j]):
                raise ParameterError(
                    f"copies {i} and {j} share a t-set that is an edge of one of them"
                )


def _embed_mask(pattern_edge: int, verts: tuple[int, ...]) -> int:
    mask = 0
    for p in points_from_mask(pattern_edge):
        mask |= 1 << (verts[p - 1] - 1)
    return mask


def matching_complement_pattern(k: int, c: int, s: int) -> SubsetFamily:
    """The t-subsets of [k] outside an extremal collection-free family."""
    lam, t = lambda_of(c, s, k)
    cert = matching_number_exact(
        MatchingInstance(k, t, DisjointnessParams(lam, s + 1, c - s + 1))
    )
    avoid = set(cert.family.sets)
    edges = tuple(e for e in enumerate_subsets(k, t) if e not in avoid)
    return SubsetFamily(k, edges, t)


def induced_packing_family(
    k: int,
    c: int,
    s: int,
    n: int,
    seed: int | None = None,
    budget: int | None = None,
) -> tuple[InducedPacking, SubsetFamily]:
    """Greedy induced packing of the matching-complement pattern, plus the
    family of copy vertex sets.

    Candidate vertex sets are scanned in colex (seeded shuffle optional) and
    embeddings in identity-first permutation order; a candidate is accepted
    with the first embedding passing all packing conditions against the
    accepted copies.  budget caps the number of vertex sets examined.
    """
    pattern = matching_complement_pattern(k, c, s)
    t = pattern.uniform_k
    assert t is not None
    if not n >= k:
        raise ParameterError(f"need n >= k, got n={n}, k={k}")
    candidates = enumerate_subsets(n, k)
    if seed is not None:
        random.Random(seed).shuffle(candidates)
    copies: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    vmasks: list[int] = []
    edge_sets: list[set[int]] = []
    used_edges: set[int] = set()
    examined = 0
    for vmask in candidates:
        if budget is not None and examined >= budget:
            break
        examined += 1
        overlaps = [vmask & w for w in vmasks]
        if any(o.bit_count() > t for o in overlaps):
            continue
        vpoints = points_from_mask(vmask)
        for perm in permutations(range(k)):
            verts = tuple(vpoints[i] for i in perm)
            edges = {_embed_mask(e, verts) for e in pattern.sets}
            if edges & used_edges:
                continue
            ok = True
            for j, o in enumerate(overlaps):
                if o.bit_count() == t and (o in edges or o in edge_sets[j]):
                    ok = False
                    break
            if ok:
                copies.append((verts, tuple(sorted(edges))))
                vmasks.append(vmask)
                edge_sets.append(edges)
                used_edges |= edges
                break
    packing = InducedPacking(k, t, pattern, tuple(copies))
    packing.validate(n)
    return packing, SubsetFamily(n, tuple(vmasks), k)


# ---------------------------------------------------------------------------
# the multipartite transform


@dataclass(frozen=True)
class MultipartiteView:
    """Words as partial transversals of an n-parts-by-q-symbols ground set.

    Word x maps to {(i, x_i): i in [n]}, encoded on ground points
    (i-1)*q + x_i; restriction to T maps to the corresponding sub-transversal.
    Own subsequences of x correspond exactly to own subsets of the image.
    """

    q: int
    n: int

    def __post_init__(self) -> None:
        if self.n * self.q > 64:
            raise ParameterError(
                f"transform ground set {self.n}*{self.q} exceeds 64 points"
            )

    @property
    def ground(self) -> int:
        return self.n * self.q

    def point(self, i: int, a: int) -> int:
        if not (1 <= i <= self.n and 1 <= a <= self.q):
            raise ParameterError(f"coordinate-symbol pair ({i},{a}) out of range")
        return (i - 1) * self.q + a

    def word_mask(self, word: Sequence[int]) -> int:
        mask = 0
        for i, a in enumerate(word, start=1):
            mask |= 1 << (self.point(i, a) - 1)
        return mask

    def restriction_mask(self, word: Sequence[int], t_mask: int) -> int:
        mask = 0
        for i in points_from_mask(t_mask):
            mask |= 1 << (self.point(i, word[i - 1]) - 1)
        return mask

    def coordinates_mask(self, subset_mask: int) -> int:
        """The set of coordinates a sub-transversal touches."""
        t_mask = 0
        for p in points_from_mask(subset_mask):
            t_mask |= 1 << ((p - 1) // self.q)
        return t_mask

    def inverse(self, mask: int) -> tuple[int, ...]:
        word = []
        for i in range(1, self.n + 1):
            part = ((1 << self.q) - 1) << ((i - 1) * self.q)
            hit = mask & part
            if hit.bit_count() != 1:
                raise ParameterError(f"mask is not a transversal on part {i}")
            word.append(hit.bit_length() - (i - 1) * self.q)
        return tuple(word)


def code_to_multipartite(code: Code) -> tuple[MultipartiteView, SubsetFamily]:
    """The transform view plus the image family of the whole code."""
    view = MultipartiteView(code.q, code.n)
    masks = tuple(view.word_mask(w) for w in code.words)
    return view, SubsetFamily(view.ground, masks, code.n)


def faithful_code_family(
    n: int,
    c: int,
    s: int,
    q: int,
    seed: int | None = None,
    budget: int | None = None,
) -> Code:
    """Greedy faithful induced packing in the complete n-partite host,
    returned directly as a code.

    Two accepted words may agree on at most t coordinates, and an agreement
    set of exactly t coordinates must avoid the pattern; this is precisely
    the faithful induced condition for one-vertex-per-part copies.
    """
    if q < 2:
        raise ParameterError(f"alphabet size q={q} must be >= 2")
    pattern = matching_complement_pattern(n, c, s)
    t = pattern.uniform_k
    assert t is not None
    pattern_edges = set(pattern.sets)
    if q**n > MAX_CODEWORDS:
        raise GuardError(f"q^n = {q**n} candidate words exceed the cap {MAX_CODEWORDS}")
    words = list(product(range(1, q + 1), repeat=n))
    if seed is not None:
        random.Random(seed).shuffle(words)
    accepted: list[tuple[int, ...]] = []
    examined = 0
    for w in words:
        if budget is not None and examined >= budget:
            break
        examined += 1
        ok = True
        for u in accepted:
            im = agreement_mask(w, u)
            ic = im.bit_count()
            if ic > t or (ic == t and im in pattern_edges):
                ok = False
                break
        if ok:
            accepted.append(w)
    return Code(q, n, tuple(accepted))
