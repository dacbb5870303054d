"""Small definitive quartet sets on caterpillar trees.

For every n >= 5 this module builds a quartet set of size 2n-8 on leaves
1..n that defines a caterpillar, beating the naive n-3 quartets-per-edge
bound by pinning several edges with shared quartets. The family is
defined by a two-step recursion: carry most of the previous level over
unchanged, bump the highest leaf in its last two quartets, then add two
fresh quartets anchoring the new cherry.

Minimality is established constructively: for each quartet q_i a witness
tree is produced that displays everything except q_i yet differs from
the target, so no quartet can be dropped. The witnesses are themselves
built recursively (cherry replacement carries a witness up one level,
one new witness is a leaf-reversed copy of an earlier one, one comes
from contracting the edge left loose). Every witness is checked on the
spot and a WitnessCheckError means the construction is broken, never
that the caller misused it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decide import _undistinguished_masks, defines, minimality_report
from .errors import TooFewLeavesError, WitnessCheckError
from .model import (
    LeafSet,
    PhyloTree,
    Quartet,
    QuartetSet,
    Split,
    cherry_replace,
    contract,
    displays,
    integer_leaves,
    make_quartet,
    reverse,
)

_BASE5 = ((1, 2, 3, 4), (1, 4, 3, 5))
_BASE6 = ((1, 2, 3, 5), (1, 3, 4, 6), (1, 2, 5, 6), (2, 4, 5, 6))


def caterpillar_from_order(order) -> PhyloTree:
    """Caterpillar whose leaves hang off the spine in the given order.

    Accepts labels or ints. The splits are exactly the prefixes of the
    order, sizes 2 through n-2; the two ends of the spine carry cherries.
    """
    labels = [str(x) for x in order]
    leaves = LeafSet.from_labels(labels)
    if leaves.n < 3:
        raise TooFewLeavesError("a caterpillar needs at least three leaves")
    masks = []
    for j in range(2, leaves.n - 1):
        m = 0
        for lab in labels[:j]:
            m |= 1 << leaves.index(lab)
        masks.append(m)
    zero = 1 << 0
    full = leaves.full_mask()
    canon = tuple(sorted((full & ~m) if (m & zero) else m for m in masks))
    return PhyloTree._from_masks(leaves, canon)


def caterpillar(n: int) -> PhyloTree:
    """Caterpillar on leaves 1..n in natural order."""
    if n < 4:
        raise TooFewLeavesError("a caterpillar with an interior edge needs four leaves")
    return caterpillar_from_order(range(1, n + 1))


def _number_sequence(n: int) -> list[tuple[int, int, int, int]]:
    if n == 5:
        return list(_BASE5)
    seq = list(_BASE6)
    for k in range(7, n + 1):
        head = seq[:-2]
        bumped = [
            tuple(k if x == k - 1 else x for x in q) for q in seq[-2:]
        ]
        seq = head + bumped + [(1, k - 4, k - 1, k), (k - 4, k - 2, k - 1, k)]
    return seq


def minimal_definitive_sequence(n: int) -> tuple[Quartet, ...]:
    """The size 2n-8 definitive sequence on leaves 1..n, in recursion order.

    The order matters to the witness chain, which addresses quartets by
    position. Use minimal_definitive_set for the order-free view.
    """
    if n < 5:
        raise TooFewLeavesError("the construction starts at five leaves")
    leaves = integer_leaves(n)
    return tuple(make_quartet(leaves, *q) for q in _number_sequence(n))


def minimal_definitive_set(n: int) -> QuartetSet:
    leaves = integer_leaves(n)
    return QuartetSet(leaves, frozenset(minimal_definitive_sequence(n)))


@dataclass(frozen=True)
class WitnessChain:
    """Non-redundancy witnesses for the level-k sequence, one per quartet."""

    k: int
    entries: tuple[tuple[int, PhyloTree], ...]

    @property
    def witnesses(self) -> dict[int, PhyloTree]:
        return dict(self.entries)

    def witness(self, i: int) -> PhyloTree:
        return dict(self.entries)[i]


def _loose_edge_witness(
    rest: list[Quartet], leaves: LeafSet, tree: PhyloTree
) -> PhyloTree:
    qs = QuartetSet(leaves, frozenset(rest))
    loose = _undistinguished_masks(qs, tree)
    if not loose:
        raise WitnessCheckError(
            "expected an edge pinned only by the removed quartet"
        )
    return contract(tree, Split(min(loose), tree.n))


def _validate_level(
    level: int,
    seq: tuple[Quartet, ...],
    witnesses: dict[int, PhyloTree],
    target: PhyloTree,
) -> None:
    for i, q in enumerate(seq, start=1):
        w = witnesses[i]
        if w.leaves != target.leaves:
            raise WitnessCheckError(f"level {level} witness {i}: wrong leaf set")
        if w == target:
            raise WitnessCheckError(
                f"level {level} witness {i}: coincides with the target tree"
            )
        for other in seq:
            if other != q and not displays(w, other):
                raise WitnessCheckError(
                    f"level {level} witness {i}: fails to display "
                    f"{other.text(target.leaves)}"
                )


def witness_chain(k: int) -> WitnessChain:
    """Witness trees for levels 6 up to k, validated at every level.

    Witness i displays the whole level sequence except its i-th quartet
    and is not the target caterpillar, so removing any quartet breaks
    definitiveness.
    """
    if k < 6:
        raise TooFewLeavesError("the witness chain starts at six leaves")
    seq = minimal_definitive_sequence(6)
    leaves = integer_leaves(6)
    target = caterpillar(6)
    witnesses: dict[int, PhyloTree] = {}
    for i in (1, 2, 4):
        rest = [q for j, q in enumerate(seq, start=1) if j != i]
        witnesses[i] = _loose_edge_witness(rest, leaves, target)
    witnesses[3] = caterpillar_from_order([2, 4, 6, 1, 5, 3])
    _validate_level(6, seq, witnesses, target)
    for level in range(7, k + 1):
        prev = witnesses
        seq = minimal_definitive_sequence(level)
        leaves = integer_leaves(level)
        target = caterpillar(level)
        size = 2 * level - 8
        witnesses = {}
        for i in range(1, size - 1):
            witnesses[i] = cherry_replace(prev[i], level - 1, level)
        witnesses[size - 1] = reverse(witnesses[3])
        rest = list(seq[:-1])
        witnesses[size] = _loose_edge_witness(rest, leaves, target)
        _validate_level(level, seq, witnesses, target)
    return WitnessChain(k, tuple(sorted(witnesses.items())))


@dataclass(frozen=True)
class LevelCheck:
    n: int
    checks: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed in self.checks)


@dataclass(frozen=True)
class ConstructionReport:
    max_n: int
    oracle_max_n: int
    levels: tuple[LevelCheck, ...]

    @property
    def all_ok(self) -> bool:
        return all(level.ok for level in self.levels)


def target_tree(n: int) -> PhyloTree:
    """The tree the level-n sequence defines.

    The five leaf base case defines the caterpillar in the order
    1,2,4,3,5; from six leaves up the target is the natural-order
    caterpillar.
    """
    if n == 5:
        return caterpillar_from_order([1, 2, 4, 3, 5])
    return caterpillar(n)


def verify_construction(
    max_n: int, oracle_max_n: int = 7, *, cap: int | None = None
) -> ConstructionReport:
    """Re-check every claimed property of the construction, level by level.

    Per level: the size is 2n-8, the target displays the set, fast mode
    finds the set definitive with the target as the unique tree, the set
    is minimal, the size meets the n-3 lower bound, the witness chain
    validates (n >= 6), and up to oracle_max_n the exhaustive oracle
    agrees.
    """
    if max_n < 5:
        raise TooFewLeavesError("verification starts at five leaves")
    levels = []
    for n in range(5, max_n + 1):
        qs = minimal_definitive_set(n)
        target = target_tree(n)
        checks: list[tuple[str, bool]] = []
        checks.append(("size", len(qs) == 2 * n - 8))
        checks.append(
            ("displays_target", all(displays(target, q) for q in qs))
        )
        fast = defines(qs, mode="fast")
        checks.append(
            ("fast_defines_target", fast.is_definitive and fast.tree == target)
        )
        report = minimality_report(qs, mode="fast")
        checks.append(("minimal", report.minimal is True))
        checks.append(("lower_bound", len(qs) >= n - 3))
        if n >= 6:
            try:
                witness_chain(n)
                checks.append(("witness_chain", True))
            except WitnessCheckError:
                checks.append(("witness_chain", False))
        if n <= oracle_max_n:
            oracle = defines(qs, mode="oracle", cap=cap)
            checks.append(
                (
                    "oracle_defines_target",
                    oracle.is_definitive
                    and oracle.tree == target
                    and oracle.displayer_count == 1,
                )
            )
        levels.append(LevelCheck(n, tuple(checks)))
    return ConstructionReport(max_n, oracle_max_n, tuple(levels))
