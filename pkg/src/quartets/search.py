"""Randomized search for small minimal definitive quartet sets.

Whether any definitive set on n leaves can be smaller than the 2n-8
construction is open, so this is an explorer, not a decision procedure.
Each trial draws a random set of the requested size and repairs it
toward definitiveness: cover leaves nobody mentions, and when two
displayers survive, add a quartet that one displays and the other does
not. A trial that lands on a definitive set is then stripped of
redundant quartets (in canonical order, so runs are reproducible) and
re-validated before being reported.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .decide import minimality_report, defines, NOT_DEFINITIVE
from .errors import QuartetError, TooFewLeavesError
from .model import (
    LeafSet,
    PhyloTree,
    Quartet,
    QuartetSet,
    displays,
    integer_leaves,
    normalized_quartet,
)

# bounded local repair; trials that keep ballooning are abandoned
_REPAIR_STEPS = 24
_SEPARATION_TRIES = 8


@dataclass(frozen=True)
class SearchFinding:
    n: int
    quartets: QuartetSet
    size: int
    verdict: str  # always "minimal_definitive"; present for report stability
    seed: int
    trials_used: int


def all_quartets(leaves: LeafSet) -> list[Quartet]:
    """Every normalized quartet on the leaf set, in canonical order."""
    out = []
    for a, b, c, d in combinations(range(leaves.n), 4):
        out.append(normalized_quartet(a, b, c, d))
        out.append(normalized_quartet(a, c, b, d))
        out.append(normalized_quartet(a, d, b, c))
    return sorted(out)


def _random_quartet_over(rng: random.Random, members: list[int]) -> Quartet:
    four = rng.sample(members, 4)
    return normalized_quartet(*four)


def _pick_separator(
    rng: random.Random, n: int, mask: int, avoid_tree: PhyloTree
) -> Quartet | None:
    """A quartet split by `mask`, preferring one the given tree fails to display."""
    inside = [v for v in range(n) if (mask >> v) & 1]
    outside = [v for v in range(n) if not (mask >> v) & 1]
    fallback = None
    for _ in range(_SEPARATION_TRIES):
        a, b = rng.sample(inside, 2)
        c, d = rng.sample(outside, 2)
        q = normalized_quartet(a, b, c, d)
        if fallback is None:
            fallback = q
        if not displays(avoid_tree, q):
            return q
    return fallback


def run_search(
    n: int,
    target_size: int,
    budget: int,
    seed: int,
    *,
    cap: int | None = None,
) -> list[SearchFinding]:
    """Up to `budget` random trials for minimal definitive sets of size >= target_size.

    Deterministic for a fixed (n, target_size, budget, seed). Findings
    are deduplicated and each one has already survived a fresh
    minimality_report before being returned.
    """
    if n < 4:
        raise TooFewLeavesError("search needs at least four leaves")
    if target_size < 1:
        raise QuartetError("target size must be at least 1")
    if budget < 1:
        raise QuartetError("budget must be at least 1")
    rng = random.Random(seed)
    leaves = integer_leaves(n)
    pool = all_quartets(leaves)
    full = leaves.full_mask()
    members = list(range(n))
    findings: list[SearchFinding] = []
    seen: set[frozenset] = set()
    for trial in range(1, budget + 1):
        chosen = set(rng.sample(pool, min(target_size, len(pool))))
        settled = None
        for _ in range(_REPAIR_STEPS):
            qs = QuartetSet(leaves, frozenset(chosen))
            support = qs.support_mask()
            if support != full:
                missing = [v for v in members if not (support >> v) & 1]
                anchor = rng.choice(missing)
                rest = rng.sample([v for v in members if v != anchor], 3)
                chosen.add(_random_quartet_over(rng, [anchor] + rest))
                continue
            verdict = defines(qs, mode="fast", cap=cap)
            if verdict.is_definitive:
                settled = qs
                break
            if verdict.status == NOT_DEFINITIVE and len(verdict.examples) == 2:
                first, second = verdict.examples
                gap = sorted(set(first.split_masks()) - set(second.split_masks()))
                if gap:
                    edge = rng.choice(gap)
                    q = _pick_separator(rng, n, edge, second)
                    if q is not None and q not in chosen:
                        chosen.add(q)
                        continue
            # incompatible, or no useful edge: shake one quartet loose
            drop = rng.choice(sorted(chosen))
            chosen.discard(drop)
            chosen.add(rng.choice(pool))
        if settled is None:
            continue
        report = minimality_report(settled, mode="fast", cap=cap)
        while report.verdict.is_definitive and report.minimal is False:
            extra = next(
                q for q, w in report.entries if w.kind == "redundant"
            )
            settled = settled.without_quartet(extra)
            report = minimality_report(settled, mode="fast", cap=cap)
        if not (report.verdict.is_definitive and report.minimal):
            continue
        if report.size < target_size:
            continue
        if settled.support_mask() != full:
            continue
        key = frozenset(settled.quartets)
        if key in seen:
            continue
        seen.add(key)
        findings.append(
            SearchFinding(n, settled, report.size, "minimal_definitive", seed, trial)
        )
    return findings
