"""Constructive procedures behind the growth lemmas.

Witness extraction scans for the shift-growth argmax over a candidate
set, the sparse/dense coset classifier and its Cayley-subgraph
diagnostics cover the coset case analysis, and two subset-growers (a
greedy heuristic and an exact DFS) realize the half-size subset maximum.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .groups import CapacityError, Element, GenerationError, Quotient, Subgroup, quotient
from .setcalc import (
    GroupSet,
    _iter_bits,
    _shift_mask,
    generated_subgroup,
    sumset,
)

EXHAUSTIVE_SUBSET_CAP = 24


@dataclass(frozen=True)
class WitnessReport:
    """Argmax of Delta_S over a candidate set, with its guarantee status."""

    element: Element
    delta: int
    guaranteed: bool
    failed_precondition: str | None = None


@dataclass(frozen=True)
class CosetClass:
    coset: int
    label: str  # sparse | dense | balanced | empty
    intersection: int
    deficiency: int
    ambiguous: bool = False


@dataclass(frozen=True)
class DenseGraph:
    vertices: tuple
    arcs: tuple
    shape: str  # path | cycle | other


@dataclass(frozen=True)
class GrowthStep:
    element: int
    delta: int
    sigma_size: int


@dataclass(frozen=True)
class GrowthTrace:
    steps: tuple
    final_set: GroupSet

    def to_json(self) -> str:
        return json.dumps(
            [
                {"element": s.element, "delta": s.delta, "sigma_size": s.sigma_size}
                for s in self.steps
            ],
            separators=(",", ":"),
        )


def _argmax_delta(C: GroupSet, S: GroupSet):
    best_c, best_d = None, -1
    for c in _iter_bits(C.mask):  # ascending index, so ties keep the lowest
        d = (_shift_mask(S.group, S.mask, c) & ~S.mask).bit_count()
        if d > best_d:
            best_c, best_d = c, d
    return best_c, best_d


def witness_easy(C: GroupSet, S: GroupSet) -> WitnessReport:
    """Best growth element under the small-deficiency hypothesis.

    The ambient group is C's group; when 2*df_S(G) <= |C| the returned
    element c satisfies 2*Delta_S(c) >= df_S(G).
    """
    if C.mask == 0:
        raise ValueError("candidate set must be nonempty")
    if C.group != S.group:
        raise ValueError("C and S must live in the same group")
    df = min(S.card, S.group.order - S.card)
    c, d = _argmax_delta(C, S)
    failed = None
    if 2 * df > C.card:
        failed = f"2*df_S(H) = {2 * df} > |C| = {C.card}"
    return WitnessReport(Element(C.group, c), d, failed is None, failed)


def witness_hard(C: GroupSet, S: GroupSet) -> WitnessReport:
    """Best growth element under the large-deficiency hypothesis.

    Requires <C> to be the whole ambient group; when 2*df_S(G) >= |C|
    the returned element c satisfies 8*Delta_S(c) >= |C|.
    """
    if C.mask == 0:
        raise ValueError("candidate set must be nonempty")
    if C.group != S.group:
        raise ValueError("C and S must live in the same group")
    gen = generated_subgroup(C.group, C)
    if len(gen) != C.group.order:
        raise GenerationError("C does not generate the ambient group")
    df = min(S.card, S.group.order - S.card)
    c, d = _argmax_delta(C, S)
    failed = None
    if 2 * df < C.card:
        failed = f"2*df_S(H) = {2 * df} < |C| = {C.card}"
    return WitnessReport(Element(C.group, c), d, failed is None, failed)


def hard_bound_diagnostic(C: GroupSet, S: GroupSet) -> dict:
    """Replay the r-fold sumset step: D = sum of r copies of C u {0}.

    Reports |D| and whether |D| >= 2*df_S(G) (the inequality the argmax
    guarantee rests on).
    """
    if C.mask == 0:
        raise ValueError("candidate set must be nonempty")
    df = min(S.card, S.group.order - S.card)
    r = (4 * df) // C.card
    cstar = GroupSet(C.group, C.mask | 1)
    D = GroupSet(C.group, 1)
    for _ in range(r):
        D = sumset(D, cstar)
    return {"r": r, "d_size": D.card, "df": df, "holds": D.card >= 2 * df}


def classify_cosets(S: GroupSet, H: Subgroup, u: int, q: Quotient | None = None):
    """Label every H-coset sparse/dense/balanced/empty at thresholds (u+1)/4.

    Sparse: 0 < 4*|Q & S| < u+1.  Dense: 4*|Q \\ S| < u+1.  Overlaps
    (possible only when 2*|H| < u+1) resolve dense-first with the
    ambiguity flagged.
    """
    if u < 0:
        raise ValueError("u must be nonnegative")
    if q is None:
        q = quotient(S.group, H)
    out = []
    for c in range(q.num_cosets):
        qmask = q.coset_mask(c)
        inter = (qmask & S.mask).bit_count()
        diff = (qmask & ~S.mask).bit_count()
        df = min(inter, diff)
        if inter == 0:
            label, amb = "empty", False
        else:
            sparse = 4 * inter < u + 1
            dense = 4 * diff < u + 1
            if dense:
                label, amb = "dense", sparse
            elif sparse:
                label, amb = "sparse", False
            else:
                label, amb = "balanced", False
        out.append(CosetClass(c, label, inter, df, amb))
    return out


def dense_graph(
    b: Element, S: GroupSet, H: Subgroup, u: int, q: Quotient | None = None
) -> DenseGraph:
    """Cayley subgraph on the dense H-cosets with generator b + H."""
    if q is None:
        q = quotient(S.group, H)
    classes = classify_cosets(S, H, u, q)
    W = tuple(cc.coset for cc in classes if cc.label == "dense")
    wset = set(W)
    bcoset = q.coset_of[b.index]
    qg = q.quotient_group
    arcs = tuple(
        (c, qg.add_index(c, bcoset)) for c in W if qg.add_index(c, bcoset) in wset
    )
    return DenseGraph(W, arcs, _graph_shape(W, arcs))


def _graph_shape(W, arcs) -> str:
    if not W:
        return "path"
    out = dict(arcs)
    indeg = {}
    for _, t in arcs:
        indeg[t] = indeg.get(t, 0) + 1
    if len(out) == len(W):
        # every vertex has an out-arc; generator shifts are injective, so
        # this is a disjoint union of directed cycles
        return "cycle"
    starts = [v for v in W if indeg.get(v, 0) == 0]
    ends = [v for v in W if v not in out]
    if len(starts) != 1 or len(ends) != 1:
        return "other"
    seen = 0
    v = starts[0]
    while True:
        seen += 1
        if v not in out:
            break
        v = out[v]
    return "path" if seen == len(W) and v == ends[0] else "other"


def greedy_grow(A: GroupSet, u: int) -> GrowthTrace:
    """Grow B from the empty set, always taking the Delta-maximizing element.

    Ties break to the lowest canonical index; each step records the gain
    and the resulting |Sigma(B)|.
    """
    if u > A.card:
        raise ValueError(f"u = {u} exceeds |A| = {A.card}")
    g = A.group
    chosen_mask = 0
    sigma = 1
    steps = []
    for _ in range(u):
        best_c, best_d = None, -1
        for c in _iter_bits(A.mask & ~chosen_mask):
            d = (_shift_mask(g, sigma, c) & ~sigma).bit_count()
            if d > best_d:
                best_c, best_d = c, d
        chosen_mask |= 1 << best_c
        sigma |= _shift_mask(g, sigma, best_c)
        steps.append(GrowthStep(best_c, best_d, sigma.bit_count()))
    return GrowthTrace(tuple(steps), GroupSet(g, chosen_mask))


def best_half_subset(A: GroupSet, cap: int = EXHAUSTIVE_SUBSET_CAP):
    """Exact max of |Sigma(B)| over half-size subsets B of A.

    |A| must be even (= 2u); ties resolve to the lexicographically least
    B.  DFS in ascending element order with an incremental Sigma bitmap;
    branches are cut when doubling Sigma for every remaining pick cannot
    beat the incumbent.
    """
    if A.card % 2:
        raise ValueError("|A| must be even")
    if A.card > cap:
        raise CapacityError(
            f"|A| = {A.card} exceeds exhaustive cap {cap}; use greedy_grow"
        )
    g = A.group
    u = A.card // 2
    elems = A.members()
    best = {"size": -1, "subset": None}

    def rec(i, picked, sigma, chosen):
        if picked == u:
            size = sigma.bit_count()
            if size > best["size"]:
                best["size"] = size
                best["subset"] = tuple(chosen)
            return
        remaining = len(elems) - i
        need = u - picked
        if remaining < need:
            return
        bound = min(g.order, sigma.bit_count() << need)
        if bound <= best["size"]:
            return
        a = elems[i]
        chosen.append(a)
        rec(i + 1, picked + 1, sigma | _shift_mask(g, sigma, a), chosen)
        chosen.pop()
        rec(i + 1, picked, sigma, chosen)

    rec(0, 0, 1, [])
    subset = GroupSet.from_indices(g, best["subset"])
    return subset, best["size"]
