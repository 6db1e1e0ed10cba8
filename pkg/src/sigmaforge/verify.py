"""Desk-scale verification harnesses for the subset-sum theorems.

Exhaustive modes enumerate every instance below a capacity cap; random
modes draw instances from a seeded RNG so every reported number is
replayable.  Worker counts only partition the (pre-generated) instance
stream; merged statistics are identical for any worker count.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass, field
from itertools import combinations

from .groups import CapacityError, Group
from .setcalc import (
    GroupSet,
    SequenceMS,
    stabilizer,
    subset_sums,
)
from .bounds import (
    corollary_bound,
    kneser_bound,
    main_bound_check,
    sequence_bound_check,
)

EXHAUSTIVE_SUBSET_CAP = 16
KNESER_PAIRS_CAP = 8
OLSON_CAP = 23
VU_ENUM_CAP = 200_000
SEARCH_ENUM_CAP = 10_000_000


@dataclass
class VerificationRun:
    theorem: str
    group: str
    mode: str
    counterexamples: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    seed: int | None = None
    trials: int | None = None
    millis: float | None = None

    @property
    def verdict(self) -> str:
        if self.stats.get("vacuous"):
            return "vacuous"
        return "counterexample" if self.counterexamples else "verified"

    def to_dict(self, with_timing: bool = False) -> dict:
        stats = {k: v for k, v in self.stats.items()}
        if with_timing:
            stats["millis"] = self.millis
        out = {
            "theorem": self.theorem,
            "group": self.group,
            "mode": self.mode,
            "counterexamples": self.counterexamples,
            "stats": stats,
            "verdict": self.verdict,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.trials is not None:
            out["trials"] = self.trials
        return out

    def to_json(self, with_timing: bool = False) -> str:
        # timing is excluded by default so identical runs serialize
        # byte-identically
        return json.dumps(
            self.to_dict(with_timing), sort_keys=True, separators=(",", ":")
        )


@dataclass
class ExtremalRecord:
    group: str
    k: int
    mode: str
    feasible: bool
    best_set: str | None = None
    sigma_size: int | None = None
    stabilizer_size: int | None = None
    ratio_num: int | None = None  # 4 * (|Sigma(A)| - |H|)
    ratio_den: int | None = None  # |A \ H|^2
    seed: int | None = None
    restarts: int | None = None

    def to_dict(self) -> dict:
        out = {
            "group": self.group,
            "k": self.k,
            "mode": self.mode,
            "feasible": self.feasible,
            "best_set": self.best_set,
            "sigma_size": self.sigma_size,
            "stabilizer_size": self.stabilizer_size,
            "ratio_num": self.ratio_num,
            "ratio_den": self.ratio_den,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.restarts is not None:
            out["restarts"] = self.restarts
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def _chunks(items, workers):
    workers = max(1, int(workers))
    n = len(items)
    size = -(-n // workers) if n else 0
    return [items[i : i + size] for i in range(0, n, size)] if size else []


class _MinTracker:
    """Minimum slack with lexicographic witness tie-break; merge-friendly."""

    def __init__(self):
        self.slack = None
        self.key = None
        self.witness = None

    def offer(self, slack, key, witness):
        cand = (slack, key)
        if self.slack is None or cand < (self.slack, self.key):
            self.slack, self.key, self.witness = slack, key, witness

    def merge(self, other):
        if other.slack is not None:
            self.offer(other.slack, other.key, other.witness)


def _run_partitioned(instances, evaluate, workers):
    """Evaluate instances chunk by chunk; merge counterexamples and min slack.

    `evaluate` maps an instance to (ok, slack, key, witness, payload).
    """
    counterexamples = []
    tracker = _MinTracker()
    count = 0
    for chunk in _chunks(instances, workers):
        local = _MinTracker()
        local_bad = []
        for inst in chunk:
            ok, slack, key, witness, payload = evaluate(inst)
            count += 1
            local.offer(slack, key, witness)
            if not ok:
                local_bad.append(payload)
        tracker.merge(local)
        counterexamples.extend(local_bad)
    return counterexamples, tracker, count


def exhaustive_theorem(
    group: Group,
    theorem: str,
    cap: int = EXHAUSTIVE_SUBSET_CAP,
    workers: int = 1,
) -> VerificationRun:
    """Check `main`, `corollary`, or `kneser-pairs` over every instance."""
    t0 = time.perf_counter()
    if theorem in ("main", "corollary"):
        if group.order > cap:
            raise CapacityError(
                f"|G| = {group.order} exceeds subset-enumeration cap {cap}"
            )
        check = main_bound_check if theorem == "main" else corollary_bound
        instances = range(1 << group.order)

        def evaluate(mask):
            A = GroupSet(group, mask)
            rep = check(A)
            slack = rep.lhs - rep.rhs
            witness = A.literal()
            payload = {"set": witness, "report": rep.to_dict()}
            return rep.holds, slack, tuple(A.members()), witness, payload

    elif theorem == "kneser-pairs":
        if group.order > KNESER_PAIRS_CAP:
            raise CapacityError(
                f"|G| = {group.order} exceeds pair-enumeration cap {KNESER_PAIRS_CAP}"
            )
        nonempty = range(1, 1 << group.order)
        instances = [(a, b) for a in nonempty for b in nonempty]

        def evaluate(masks):
            A = GroupSet(group, masks[0])
            B = GroupSet(group, masks[1])
            rep = kneser_bound([A, B])
            slack = rep.lhs - rep.rhs
            witness = f"{A.literal()}|{B.literal()}"
            payload = {"sets": witness, "report": rep.to_dict()}
            key = (tuple(A.members()), tuple(B.members()))
            return rep.holds, slack, key, witness, payload

    else:
        raise ValueError(f"unknown theorem {theorem!r}")

    bad, tracker, count = _run_partitioned(instances, evaluate, workers)
    run = VerificationRun(
        theorem=theorem,
        group=group.spec(),
        mode="exhaustive",
        counterexamples=bad,
        stats={
            "instances": count,
            "min_slack": tracker.slack,
            "witness": tracker.witness,
        },
    )
    run.millis = (time.perf_counter() - t0) * 1000.0
    return run


def random_kneser(
    groups, m_max: int, trials: int, seed: int, workers: int = 1
) -> VerificationRun:
    """Seeded random m-tuples (m <= m_max) of nonempty sets, one group each."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    groups = list(groups)
    rng = random.Random(seed)
    instances = []
    for _ in range(trials):
        g = rng.choice(groups)
        m = rng.randint(1, m_max)
        sets = []
        for _ in range(m):
            size = rng.randint(1, g.order)
            sets.append(GroupSet.from_indices(g, rng.sample(range(g.order), size)))
        instances.append((g, sets))

    def evaluate(inst):
        g, sets = inst
        rep = kneser_bound(sets)
        slack = rep.lhs - rep.rhs
        witness = f"{g.spec()}:" + "|".join(s.literal() for s in sets)
        payload = {"group": g.spec(), "sets": witness, "report": rep.to_dict()}
        return rep.holds, slack, witness, witness, payload

    bad, tracker, count = _run_partitioned(instances, evaluate, workers)
    run = VerificationRun(
        theorem="kneser",
        group=";".join(g.spec() for g in groups),
        mode="random",
        seed=seed,
        trials=trials,
        counterexamples=bad,
        stats={
            "instances": count,
            "min_slack": tracker.slack,
            "witness": tracker.witness,
        },
    )
    return run


def random_sequence_theorem(
    group: Group, n_max: int, trials: int, seed: int, workers: int = 1
) -> VerificationRun:
    """Seeded random sequences of length <= n_max, elements uniform."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    t0 = time.perf_counter()
    rng = random.Random(seed)
    instances = []
    for _ in range(trials):
        length = rng.randint(0, n_max)
        instances.append(tuple(rng.randrange(group.order) for _ in range(length)))

    def evaluate(terms):
        a = SequenceMS.from_terms(group, terms)
        rep = sequence_bound_check(a)
        slack = rep.lhs - rep.rhs
        witness = a.literal()
        payload = {"sequence": witness, "report": rep.to_dict()}
        return rep.holds, slack, witness, witness, payload

    bad, tracker, count = _run_partitioned(instances, evaluate, workers)
    run = VerificationRun(
        theorem="sequence",
        group=group.spec(),
        mode="random",
        seed=seed,
        trials=trials,
        counterexamples=bad,
        stats={
            "instances": count,
            "min_slack": tracker.slack,
            "witness": tracker.witness,
        },
    )
    run.millis = (time.perf_counter() - t0) * 1000.0
    return run


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for d in range(2, math.isqrt(p) + 1):
        if p % d == 0:
            return False
    return True


def olson_threshold(p: int) -> int:
    return math.isqrt(4 * p - 7)


def olson_check(p: int, cap: int = OLSON_CAP, workers: int = 1) -> VerificationRun:
    """All A in Z_p \\ {0} with |A| >= floor(sqrt(4p-7)) must have Sigma = Z_p.

    The size condition is read as a lower bound (the completeness
    direction that is actually checkable).
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > cap:
        raise CapacityError(f"p = {p} exceeds cap {cap}")
    t0 = time.perf_counter()
    group = Group([p])
    t = olson_threshold(p)
    nonzero = range(1, p)
    instances = [A for k in range(t, p) for A in combinations(nonzero, k)]

    def evaluate(idxs):
        A = GroupSet.from_indices(group, idxs)
        sigma = subset_sums(A)
        ok = sigma.mask == group.full_mask
        slack = sigma.card - p
        witness = A.literal()
        payload = {"set": witness, "sigma_size": sigma.card}
        return ok, slack, idxs, witness, payload

    bad, tracker, count = _run_partitioned(instances, evaluate, workers)
    run = VerificationRun(
        theorem="olson",
        group=group.spec(),
        mode="exhaustive",
        counterexamples=bad,
        stats={
            "instances": count,
            "threshold": t,
            "min_slack": tracker.slack,
            "witness": tracker.witness,
        },
    )
    run.millis = (time.perf_counter() - t0) * 1000.0
    return run


def olson_witness(p: int) -> dict:
    """The near-tightness set {-s,...,-1,1,...,s}, s = floor(sqrt(p))."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    group = Group([p])
    s = math.isqrt(p)
    idxs = [i % p for i in range(-s, s + 1) if i != 0]
    A = GroupSet.from_indices(group, idxs)
    sigma = subset_sums(A)
    return {
        "p": p,
        "size": A.card,
        "threshold": olson_threshold(p),
        "sigma_size": sigma.card,
        "missing_half": (p // 2) not in sigma,
    }


def vu_threshold(n: int) -> int:
    """Smallest integer t with t^2 >= 64 n (exact-integer 8*sqrt(n))."""
    s = math.isqrt(64 * n)
    return s if s * s == 64 * n else s + 1


def vu_check(
    n: int,
    sample: int | None = None,
    seed: int | None = None,
    cap: int = VU_ENUM_CAP,
    workers: int = 1,
) -> VerificationRun:
    """Unit subsets of Z_n of size >= ceil(8 sqrt(n)) must have Sigma = Z_n."""
    if n < 2:
        raise ValueError("n must be >= 2")
    t0 = time.perf_counter()
    group = Group([n])
    t = vu_threshold(n)
    units = [a for a in range(1, n) if math.gcd(a, n) == 1]
    phi = len(units)
    if phi < t:
        run = VerificationRun(
            theorem="vu",
            group=group.spec(),
            mode="exhaustive",
            stats={"instances": 0, "threshold": t, "phi": phi, "vacuous": True},
        )
        run.millis = (time.perf_counter() - t0) * 1000.0
        return run

    total = sum(math.comb(phi, k) for k in range(t, phi + 1))
    if total <= cap:
        mode = "exhaustive"
        instances = [A for k in range(t, phi + 1) for A in combinations(units, k)]
    else:
        if sample is None or seed is None:
            raise CapacityError(
                f"{total} qualifying subsets exceed cap {cap}; "
                "pass sample and seed for randomized mode"
            )
        mode = "random"
        rng = random.Random(seed)
        instances = []
        for _ in range(sample):
            k = rng.randint(t, phi)
            instances.append(tuple(sorted(rng.sample(units, k))))

    def evaluate(idxs):
        A = GroupSet.from_indices(group, idxs)
        sigma = subset_sums(A)
        ok = sigma.mask == group.full_mask
        slack = sigma.card - n
        witness = A.literal()
        payload = {"set": witness, "sigma_size": sigma.card}
        return ok, slack, idxs, witness, payload

    bad, tracker, count = _run_partitioned(instances, evaluate, workers)
    run = VerificationRun(
        theorem="vu",
        group=group.spec(),
        mode=mode,
        seed=seed if mode == "random" else None,
        trials=sample if mode == "random" else None,
        counterexamples=bad,
        stats={
            "instances": count,
            "threshold": t,
            "phi": phi,
            "min_slack": tracker.slack,
            "witness": tracker.witness,
        },
    )
    run.millis = (time.perf_counter() - t0) * 1000.0
    return run


def interval_example(n: int) -> dict:
    """Sigma of {-n,...,-1,1,...,n} embedded wrap-free in a large cyclic group.

    The embedding modulus m = 2n(n+1) + 3 exceeds twice the largest
    subset-sum magnitude n(n+1)/2, so integer sums map injectively.
    Reports both the directly computed size and the printed-source
    figure n(n-1)+1 for side-by-side comparison.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    m = 2 * n * (n + 1) + 3
    group = Group([m])
    idxs = [i % m for i in range(-n, n + 1) if i != 0]
    A = GroupSet.from_indices(group, idxs)
    sigma = subset_sums(A)
    H = stabilizer(sigma)
    return {
        "n": n,
        "m": m,
        "set_size": A.card,
        "sigma_size": sigma.card,
        "stabilizer_size": len(H),
        "derived_formula_size": n * (n + 1) + 1,
        "paper_printed_size": n * (n - 1) + 1,
    }


def extremal_search(
    group: Group,
    k: int,
    mode: str = "exhaustive",
    seed: int | None = None,
    restarts: int | None = None,
    cap: int = SEARCH_ENUM_CAP,
) -> ExtremalRecord:
    """Minimize |Sigma(A)| over k-subsets of G \\ {0} with trivial stab(Sigma)."""
    if k < 1 or k > group.order - 1:
        raise ValueError(f"k = {k} out of range")
    nonzero = list(range(1, group.order))

    def score(idxs):
        A = GroupSet.from_indices(group, idxs)
        sigma = subset_sums(A)
        if len(stabilizer(sigma)) != 1:
            return None
        return sigma.card

    best = None  # (size, idxs)
    if mode == "exhaustive":
        if math.comb(len(nonzero), k) > cap:
            raise CapacityError(
                f"C({len(nonzero)}, {k}) exceeds enumeration cap {cap}"
            )
        for idxs in combinations(nonzero, k):
            size = score(idxs)
            if size is not None and (best is None or (size, idxs) < best):
                best = (size, idxs)
        mode_str = "exhaustive"
    elif mode == "hillclimb":
        if seed is None or restarts is None:
            raise ValueError("hillclimb mode requires seed and restarts")
        rng = random.Random(seed)
        for _ in range(restarts):
            current = tuple(sorted(rng.sample(nonzero, k)))
            cur_size = score(current)
            while True:
                improved = None
                for out in current:
                    for inc in nonzero:
                        if inc in current:
                            continue
                        cand = tuple(sorted(set(current) - {out} | {inc}))
                        size = score(cand)
                        if size is None:
                            continue
                        if cur_size is None or (size, cand) < (cur_size, current):
                            if improved is None or (size, cand) < improved:
                                improved = (size, cand)
                if improved is None:
                    break
                cur_size, current = improved
            if cur_size is not None and (best is None or (cur_size, current) < best):
                best = (cur_size, current)
        mode_str = f"hillclimb(seed={seed},restarts={restarts})"
    else:
        raise ValueError(f"unknown search mode {mode!r}")

    if best is None:
        return ExtremalRecord(
            group=group.spec(),
            k=k,
            mode=mode_str,
            feasible=False,
            seed=seed,
            restarts=restarts,
        )
    size, idxs = best
    A = GroupSet.from_indices(group, idxs)
    sigma = subset_sums(A)
    H = stabilizer(sigma)
    outside = (A.mask & ~H.mask).bit_count()
    return ExtremalRecord(
        group=group.spec(),
        k=k,
        mode=mode_str,
        feasible=True,
        best_set=A.literal(),
        sigma_size=sigma.card,
        stabilizer_size=len(H),
        ratio_num=4 * (sigma.card - len(H)),
        ratio_den=outside * outside,
        seed=seed,
        restarts=restarts,
    )
