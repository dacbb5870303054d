"""Exhaustive, duplicate-free streams of phylogenetic trees.

Trees on n leaves are generated by inserting leaves in index order,
starting from the 3-leaf star. In "binary" mode the new leaf subdivides
one of the 2k-3 edges of a k-leaf binary tree; "all" mode additionally
attaches the new leaf directly to an interior vertex, which is what
produces the trees with vertices of degree above three. Deleting the
highest leaf inverts any insertion, so each tree is reached exactly once.

Everything runs on canonical split masks (side without leaf index 0).
Inserting leaf k into the edge whose canonical mask is u rewrites an
existing split m to m | 1<<k exactly when u is a subset of m, because the
insertion point lies inside the component on m's side precisely then;
the subdivided edge contributes the two masks u and u | 1<<k, each kept
when nontrivial. Attaching to an interior vertex uses the fact that the
vertices of a tree are the root end (next to leaf 0) plus one vertex per
split m, sitting on the far side of exactly the splits containing m.

Insertion positions are scanned in a fixed order (edge masks ascending,
then the root-end vertex, then per-split vertices by ascending mask), so
the stream order is deterministic and restarting reproduces it.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Literal

from .errors import QuartetError, TooFewLeavesError, TooManyLeavesError
from .model import LeafSet, PhyloTree, integer_leaves

Mode = Literal["binary", "all"]

BINARY_CAP = 12  # 654,729,075 trees, the documented worst case
ALL_CAP = 9  # 660,032 trees

_MODES = ("binary", "all")


def _check_mode(mode: str) -> None:
    if mode not in _MODES:
        raise QuartetError(f"mode must be one of {_MODES}, got {mode!r}")


def _check_size(n: int, mode: str, cap: int | None) -> None:
    if n < 3:
        raise TooFewLeavesError("enumeration needs at least 3 leaves")
    limit = cap if cap is not None else (BINARY_CAP if mode == "binary" else ALL_CAP)
    if n > limit:
        raise TooManyLeavesError(
            f"{n} leaves exceeds the enumeration cap {limit} for mode {mode!r}"
            + ("" if cap is not None else "; pass an explicit cap to override")
        )


def _children(splits: tuple[int, ...], k: int, all_mode: bool) -> list[tuple[int, ...]]:
    """All trees obtained by inserting leaf k, in canonical position order."""
    bitk = 1 << k
    hi = k - 1  # largest nontrivial side size after insertion
    pend0 = (1 << k) - 2  # pendant edge of leaf 0, canonical side is everyone else
    edges = sorted([1 << v for v in range(1, k)] + [pend0] + list(splits))
    out = []
    for u in edges:
        child = []
        for m in splits:
            if m == u:
                continue
            child.append(m | bitk if u & ~m == 0 else m)
        if 2 <= u.bit_count() <= hi:
            child.append(u)
        w = u | bitk
        if 2 <= w.bit_count() <= hi:
            child.append(w)
        child.sort()
        out.append(tuple(child))
    if all_mode:
        out.append(splits)  # attach beside leaf 0's neighbour, nothing moves
        for v in splits:
            out.append(tuple(sorted(m | bitk if v & ~m == 0 else m for m in splits)))
    return out


def _stream_masks(
    n: int,
    mode: Mode,
    level_quartets: dict[int, list[tuple[int, int]]] | None = None,
    last_position: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield split-mask tuples of every tree on leaf indices 0..n-1.

    level_quartets optionally prunes: for each level k it lists pair
    masks (p1, p2) whose four leaves all lie in 0..k; a subtree of the
    search is abandoned as soon as one is not displayed. Insertions never
    change the topology induced on existing leaves, so a quartet's
    displayed-or-not status is frozen the moment its last leaf appears,
    and pruning drops no displayer and admits no extra one.

    last_position restricts the final insertion to one position index,
    which partitions the full stream across position indices.
    """
    all_mode = mode == "all"
    if n == 3:
        if last_position not in (None, 0):
            return
        yield ()
        return
    stack: list[tuple[tuple[int, ...], int]] = [((), 3)]
    while stack:
        splits, k = stack.pop()
        children = _children(splits, k, all_mode)
        if k == n - 1 and last_position is not None:
            children = children[last_position : last_position + 1]
        if level_quartets:
            need = level_quartets.get(k)
            if need:
                kept = []
                for child in children:
                    ok = True
                    for p1, p2 in need:
                        for m in child:
                            x = m & p1
                            y = m & p2
                            if (x == p1 and y == 0) or (y == p2 and x == 0):
                                break
                        else:
                            ok = False
                            break
                    if ok:
                        kept.append(child)
                children = kept
        if k == n - 1:
            yield from children
        else:
            for child in reversed(children):
                stack.append((child, k + 1))


@dataclass(frozen=True)
class TreeStream:
    """Restartable deterministic stream of trees on a leaf set.

    Iterating wraps each tree as a PhyloTree; the same object can be
    iterated repeatedly and always replays the same order.
    """

    leaves: LeafSet
    mode: Mode = "binary"
    cap: int | None = None
    last_position: int | None = None

    def __post_init__(self):
        _check_mode(self.mode)
        _check_size(self.leaves.n, self.mode, self.cap)

    def __iter__(self) -> Iterator[PhyloTree]:
        leaves = self.leaves
        for masks in _stream_masks(leaves.n, self.mode, None, self.last_position):
            yield PhyloTree._from_masks(leaves, masks)


def enumerate_trees(
    leaves: LeafSet | int,
    mode: Mode = "binary",
    *,
    cap: int | None = None,
    last_position: int | None = None,
) -> TreeStream:
    """Stream every phylogenetic tree on the leaf set, each exactly once.

    "binary" yields the trees with all interior vertices of degree 3;
    "all" yields every tree with no degree-2 vertices. An integer n is
    shorthand for leaves labelled "1".."n".
    """
    if isinstance(leaves, int):
        leaves = integer_leaves(leaves)
    return TreeStream(leaves, mode, cap, last_position)


def _count_range(args) -> int:
    n, mode, position = args
    return sum(1 for _ in _stream_masks(n, mode, None, position))


def _position_count(n: int, mode: Mode) -> int:
    """Upper bound on insertion positions at the last level."""
    # a k-leaf tree with s splits has k + s edges and 1 + s vertices
    k = n - 1
    smax = k - 3
    return (k + smax) + (0 if mode == "binary" else 1 + smax)


def count_trees(n: int, mode: Mode = "binary", *, cap: int | None = None, jobs: int = 1) -> int:
    """Count the stream by consuming it.

    The count is measured rather than computed from a formula so it can
    serve as one side of closed-form cross-checks. jobs > 1 splits the
    work by the insertion position of the last leaf and sums the
    partition counts, which cannot change the total.
    """
    _check_mode(mode)
    _check_size(n, mode, cap)
    if jobs <= 1 or n <= 4:
        return sum(1 for _ in _stream_masks(n, mode))
    tasks = [(n, mode, p) for p in range(_position_count(n, mode))]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return sum(pool.map(_count_range, tasks, chunksize=1))


def default_jobs() -> int:
    """Worker count for partitioned scans, from QUARTETS_THREADS (default 1)."""
    raw = os.environ.get("QUARTETS_THREADS", "1")
    try:
        jobs = int(raw)
    except ValueError:
        raise QuartetError(f"QUARTETS_THREADS must be an integer, got {raw!r}") from None
    if jobs < 1:
        raise QuartetError("QUARTETS_THREADS must be at least 1")
    return jobs
