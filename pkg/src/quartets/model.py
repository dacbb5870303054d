"""Core value types: leaf sets, splits, quartets, trees.

An unrooted phylogenetic tree on a leaf set L is represented by the set of
its nontrivial splits (the bipartitions of L induced by interior edges).
That representation is canonical: two trees are equal exactly when their
split sets are equal, and any pairwise compatible set of distinct
nontrivial splits is realised by exactly one tree with no degree-2
vertices.

Splits are stored as machine-word bit sets over dense leaf indices
0..n-1, always holding the side that does NOT contain index 0. For two
such canonical masks, compatibility reduces to "disjoint or nested",
which keeps the hot checks to a couple of integer operations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .errors import (
    DuplicateLeafError,
    IncompatibleSplitsError,
    LabelCollisionError,
    NonBijectiveError,
    NoSuchSplitError,
    QuartetError,
    TooManyLeavesError,
    TrivialSplitError,
    UnknownLeafError,
)

MAX_LEAVES = 64  # splits must fit one machine word

_CHUNKS = re.compile(r"(\d+)")


def natural_key(label: str) -> tuple:
    """Sort key that orders digit runs numerically, so "2" < "10"."""
    parts = []
    for i, chunk in enumerate(_CHUNKS.split(label)):
        if not chunk:
            continue
        parts.append((0, int(chunk)) if i % 2 else (1, chunk))
    # raw label as final tiebreak so "02" and "2" stay distinct
    return (tuple(parts), label)


Label = Union[str, int]


def _as_label(x: Label) -> str:
    return x if isinstance(x, str) else str(x)


@dataclass(frozen=True)
class LeafSet:
    """Ordered set of distinct leaf labels with dense indices 0..n-1.

    Labels are kept sorted under natural_key, so for integer-style labels
    the index order agrees with numeric order and index 0 is the smallest
    label.
    """

    labels: tuple[str, ...]
    _index: dict = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not all(isinstance(l, str) and l for l in self.labels):
            raise QuartetError("leaf labels must be non-empty strings")
        if len(set(self.labels)) != len(self.labels):
            raise DuplicateLeafError("duplicate leaf label")
        if len(self.labels) > MAX_LEAVES:
            raise TooManyLeavesError(
                f"{len(self.labels)} leaves exceeds the {MAX_LEAVES}-leaf cap"
            )
        if list(self.labels) != sorted(self.labels, key=natural_key):
            raise QuartetError("labels must be in canonical order; use from_labels")
        object.__setattr__(self, "_index", {l: i for i, l in enumerate(self.labels)})

    @classmethod
    def from_labels(cls, labels: Iterable[Label]) -> "LeafSet":
        return cls(tuple(sorted((_as_label(l) for l in labels), key=natural_key)))

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: Label) -> int:
        try:
            return self._index[_as_label(label)]
        except KeyError:
            raise UnknownLeafError(f"unknown leaf {label!r}") from None

    def __contains__(self, label) -> bool:
        return _as_label(label) in self._index

    def __len__(self) -> int:
        return len(self.labels)

    def full_mask(self) -> int:
        return (1 << self.n) - 1


def integer_leaves(n: int) -> LeafSet:
    """The leaf set labelled "1".."n"."""
    return LeafSet.from_labels(str(i) for i in range(1, n + 1))


@dataclass(frozen=True)
class Split:
    """A bipartition of a leaf set, stored as the side without index 0.

    mask is the bit set of that side; n is the size of the leaf universe.
    Both sides are nonempty by construction. A split is nontrivial when
    both sides have at least two leaves; only nontrivial splits occur as
    tree edges.
    """

    mask: int
    n: int

    def __post_init__(self):
        if not 0 < self.mask < (1 << self.n):
            raise QuartetError("split mask out of range for its leaf set")
        if self.mask & 1:
            raise QuartetError("split mask must not contain leaf index 0")

    @classmethod
    def from_side(cls, leaves: LeafSet, side: Iterable[Label]) -> "Split":
        """Build a split from the labels of either side."""
        mask = 0
        for x in side:
            bit = 1 << leaves.index(x)
            if mask & bit:
                raise DuplicateLeafError(f"leaf {x!r} repeated in split side")
            mask |= bit
        if mask & 1:
            mask = leaves.full_mask() ^ mask
        if mask == 0:
            raise QuartetError("split side must not be the whole leaf set")
        return cls(mask, leaves.n)

    def is_nontrivial(self) -> bool:
        size = self.mask.bit_count()
        return size >= 2 and self.n - size >= 2

    def side_sizes(self) -> tuple[int, int]:
        size = self.mask.bit_count()
        return (self.n - size, size)

    def sides(self, leaves: LeafSet) -> tuple[tuple[str, ...], tuple[str, ...]]:
        """Label tuples (side containing the smallest leaf, other side)."""
        if leaves.n != self.n:
            raise UnknownLeafError("split does not belong to this leaf set")
        ins, outs = [], []
        for i, label in enumerate(leaves.labels):
            (outs if self.mask >> i & 1 else ins).append(label)
        return tuple(ins), tuple(outs)

    def text(self, leaves: LeafSet) -> str:
        ins, outs = self.sides(leaves)
        return ",".join(ins) + "|" + ",".join(outs)


def compatible(a: Split, b: Split) -> bool:
    """Whether two splits of one leaf set can occur in the same tree.

    Of the four side intersections at least one must be empty. With both
    masks on the no-index-0 side this collapses to disjoint-or-nested.
    """
    if a.n != b.n:
        raise QuartetError("splits over different leaf sets")
    return _masks_compatible(a.mask, b.mask)


def _masks_compatible(x: int, y: int) -> bool:
    return (x & y) == 0 or (x & ~y) == 0 or (y & ~x) == 0


@dataclass(frozen=True, order=True)
class Quartet:
    """Topology ab|cd on four distinct leaves, stored as indices.

    Normal form: a < b, c < d, a < c, so each of the three topologies on a
    4-set has exactly one representation. Indices refer to the leaf set of
    whatever tree or quartet set the quartet is used with.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if len({self.a, self.b, self.c, self.d}) != 4:
            raise DuplicateLeafError("quartet leaves must be distinct")
        if not (self.a < self.b and self.c < self.d and self.a < self.c):
            raise QuartetError("quartet not in normal form")

    def indices(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def pair_masks(self) -> tuple[int, int]:
        return (1 << self.a) | (1 << self.b), (1 << self.c) | (1 << self.d)

    def text(self, leaves: LeafSet) -> str:
        ls = leaves.labels
        return f"{ls[self.a]},{ls[self.b]}|{ls[self.c]},{ls[self.d]}"


def normalized_quartet(a: int, b: int, c: int, d: int) -> Quartet:
    """Normalise index pairs {a,b}|{c,d} into the canonical Quartet."""
    if a > b:
        a, b = b, a
    if c > d:
        c, d = d, c
    if a > c:
        a, b, c, d = c, d, a, b
    return Quartet(a, b, c, d)


def make_quartet(leaves: LeafSet, a: Label, b: Label, c: Label, d: Label) -> Quartet:
    """Quartet ab|cd from leaf labels, normalised."""
    return normalized_quartet(
        leaves.index(a), leaves.index(b), leaves.index(c), leaves.index(d)
    )


@dataclass(frozen=True)
class PhyloTree:
    """Unrooted phylogenetic tree as a leaf set plus its nontrivial splits.

    Equality and hashing are by (leaves, splits). The tree is binary
    exactly when it has n - 3 splits. Construction through
    tree_from_splits validates pairwise compatibility; enumeration code
    uses the trusted _from_masks path because its outputs are compatible
    by construction.
    """

    leaves: LeafSet
    splits: frozenset[Split]
    _masks: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        n = self.leaves.n
        for s in self.splits:
            if s.n != n:
                raise UnknownLeafError("split indexed against a different leaf set")
            if not s.is_nontrivial():
                raise TrivialSplitError(f"trivial split mask {s.mask:#x}")
        object.__setattr__(self, "_masks", tuple(sorted(s.mask for s in self.splits)))

    @classmethod
    def _from_masks(cls, leaves: LeafSet, masks: Iterable[int]) -> "PhyloTree":
        return cls(leaves, frozenset(Split(m, leaves.n) for m in masks))

    @property
    def n(self) -> int:
        return self.leaves.n

    def is_binary(self) -> bool:
        return len(self.splits) == self.n - 3

    def split_masks(self) -> tuple[int, ...]:
        return self._masks

    def has_split(self, s: Split) -> bool:
        return s.n == self.leaves.n and s.mask in set(self._masks)


def tree_from_splits(leaves: LeafSet, splits: Iterable[Split]) -> PhyloTree:
    """Validated tree construction: nontrivial, distinct, pairwise compatible."""
    split_set = frozenset(splits)
    ordered = sorted(split_set, key=lambda s: s.mask)
    for i, s in enumerate(ordered):
        for t in ordered[i + 1 :]:
            if s.n == t.n and not _masks_compatible(s.mask, t.mask):
                raise IncompatibleSplitsError(
                    f"incompatible splits "
                    f"{s.text(leaves)} and {t.text(leaves)}",
                    pair=(s, t),
                )
    return PhyloTree(leaves, split_set)


def _check_quartet_indices(tree: PhyloTree, q: Quartet) -> None:
    # normal form puts the largest index in b or d, never a or c
    top = q.b if q.b > q.d else q.d
    if top >= tree.n:
        raise UnknownLeafError(
            f"quartet index {top} out of range for {tree.n} leaves"
        )


def displays(tree: PhyloTree, q: Quartet) -> bool:
    """Whether some edge of the tree separates {a,b} from {c,d}.

    Equivalent to: the subtree induced on the four leaves has topology
    ab|cd. The star induced topology displays nothing.
    """
    _check_quartet_indices(tree, q)
    p1, p2 = q.pair_masks()
    for m in tree._masks:
        x = m & p1
        y = m & p2
        if (x == p1 and y == 0) or (y == p2 and x == 0):
            return True
    return False


def distinguished_edge(tree: PhyloTree, q: Quartet) -> Split | None:
    """The unique separating split of q in the tree, or None.

    None covers both failure modes: no separating split (q not displayed)
    and more than one (q displayed but pinning down no single edge).
    """
    _check_quartet_indices(tree, q)
    p1, p2 = q.pair_masks()
    found = None
    for m in tree._masks:
        x = m & p1
        y = m & p2
        if (x == p1 and y == 0) or (y == p2 and x == 0):
            if found is not None:
                return None
            found = m
    return None if found is None else Split(found, tree.n)


@dataclass(frozen=True)
class QuartetSet:
    """Deduplicated set of quartets over one ambient leaf set."""

    leaves: LeafSet
    quartets: frozenset[Quartet]

    def __post_init__(self):
        n = self.leaves.n
        for q in self.quartets:
            if max(q.b, q.d) >= n:
                raise UnknownLeafError(
                    f"quartet index {max(q.b, q.d)} out of range for {n} leaves"
                )

    @classmethod
    def from_quartets(cls, leaves: LeafSet, qs: Iterable[Quartet]) -> "QuartetSet":
        return cls(leaves, frozenset(qs))

    @classmethod
    def from_labels(
        cls, leaves: LeafSet, groups: Iterable[tuple[Label, Label, Label, Label]]
    ) -> "QuartetSet":
        return cls(leaves, frozenset(make_quartet(leaves, *g) for g in groups))

    def __len__(self) -> int:
        return len(self.quartets)

    def __iter__(self):
        return iter(self.sorted_quartets())

    def __contains__(self, q: Quartet) -> bool:
        return q in self.quartets

    def sorted_quartets(self) -> list[Quartet]:
        return sorted(self.quartets)

    def support_mask(self) -> int:
        mask = 0
        for q in self.quartets:
            mask |= (1 << q.a) | (1 << q.b) | (1 << q.c) | (1 << q.d)
        return mask

    def support_labels(self) -> tuple[str, ...]:
        mask = self.support_mask()
        return tuple(l for i, l in enumerate(self.leaves.labels) if mask >> i & 1)

    def restrict_to_support(self) -> "QuartetSet":
        """Reindex onto exactly the leaves that occur in some quartet."""
        sub = LeafSet.from_labels(self.support_labels())
        return self.translate(sub)

    def translate(self, other: LeafSet) -> "QuartetSet":
        """Reindex all quartets onto another leaf set by label."""
        if other == self.leaves:
            return self
        ls = self.leaves.labels
        moved = frozenset(
            normalized_quartet(
                other.index(ls[q.a]), other.index(ls[q.b]),
                other.index(ls[q.c]), other.index(ls[q.d]),
            )
            for q in self.quartets
        )
        return QuartetSet(other, moved)

    def with_quartet(self, q: Quartet) -> "QuartetSet":
        return QuartetSet(self.leaves, self.quartets | {q})

    def without_quartet(self, q: Quartet) -> "QuartetSet":
        return QuartetSet(self.leaves, self.quartets - {q})

    def texts(self) -> list[str]:
        return [q.text(self.leaves) for q in self.sorted_quartets()]


# ---- label-level surgery: relabelling, cherry replacement, contraction ---- #


def _side_labels(leaves: LeafSet, mask: int) -> list[str]:
    return [l for i, l in enumerate(leaves.labels) if mask >> i & 1]


def _mask_from_labels(leaves: LeafSet, side: Iterable[str]) -> int:
    mask = 0
    for l in side:
        mask |= 1 << leaves.index(l)
    if mask & 1:
        mask = leaves.full_mask() ^ mask
    return mask


def _normalize_mapping(mapping: Mapping) -> dict[str, str]:
    return {_as_label(k): _as_label(v) for k, v in mapping.items()}


def _map_leafset(leaves: LeafSet, mapping: dict[str, str]) -> LeafSet:
    images = []
    for l in leaves.labels:
        if l not in mapping:
            raise UnknownLeafError(f"relabel map does not cover leaf {l!r}")
        images.append(mapping[l])
    if len(set(images)) != len(images):
        raise NonBijectiveError("relabel map is not injective on these leaves")
    return LeafSet.from_labels(images)


def relabel(x, mapping: Mapping, *, leaves: LeafSet | None = None):
    """Apply a label bijection to a tree, quartet set, or single quartet.

    The map must cover every leaf of x (for a bare Quartet, of the given
    leaf set). Returns the same kind of value; a relabelled Quartet is
    indexed against the image leaf set, which for a self-bijection is the
    original one.
    """
    m = _normalize_mapping(mapping)
    if isinstance(x, PhyloTree):
        new_leaves = _map_leafset(x.leaves, m)
        masks = [
            _mask_from_labels(new_leaves, (m[l] for l in _side_labels(x.leaves, s)))
            for s in x.split_masks()
        ]
        return PhyloTree._from_masks(new_leaves, masks)
    if isinstance(x, QuartetSet):
        new_leaves = _map_leafset(x.leaves, m)
        ls = x.leaves.labels
        return QuartetSet(
            new_leaves,
            frozenset(
                normalized_quartet(
                    new_leaves.index(m[ls[q.a]]), new_leaves.index(m[ls[q.b]]),
                    new_leaves.index(m[ls[q.c]]), new_leaves.index(m[ls[q.d]]),
                )
                for q in x.quartets
            ),
        )
    if isinstance(x, Quartet):
        if leaves is None:
            raise QuartetError("relabelling a bare quartet needs its leaf set")
        ls = leaves.labels
        used = [ls[i] for i in x.indices()]
        for l in used:
            if l not in m:
                raise UnknownLeafError(f"relabel map does not cover leaf {l!r}")
        if len({m[l] for l in used}) != 4:
            raise NonBijectiveError("relabel map is not injective on these leaves")
        full = {l: m.get(l, l) for l in ls}
        new_leaves = _map_leafset(leaves, full)
        return normalized_quartet(*(new_leaves.index(m[l]) for l in used))
    raise QuartetError(f"cannot relabel {type(x).__name__}")


def reverse(x, *, leaves: LeafSet | None = None):
    """Relabel j to n+1-j; needs the leaf set to be exactly 1..n."""
    ls = leaves if leaves is not None else x.leaves
    try:
        values = sorted(int(l) for l in ls.labels)
    except ValueError:
        raise QuartetError("reversal needs integer leaf labels") from None
    n = ls.n
    if values != list(range(1, n + 1)):
        raise QuartetError("reversal needs consecutive labels 1..n")
    mapping = {str(j): str(n + 1 - j) for j in range(1, n + 1)}
    if isinstance(x, Quartet):
        return relabel(x, mapping, leaves=ls)
    return relabel(x, mapping)


def cherry_replace(tree: PhyloTree, x: Label, y: Label) -> PhyloTree:
    """Replace leaf x by a cherry {x, y}, enlarging the leaf set by y.

    Every existing split keeps its shape with y following x; one new
    split {x, y} versus the rest appears. Inverse of removing y again.
    """
    xl, yl = _as_label(x), _as_label(y)
    if xl not in tree.leaves:
        raise UnknownLeafError(f"no leaf {xl!r} in tree")
    if yl in tree.leaves:
        raise LabelCollisionError(f"leaf {yl!r} already present")
    new_leaves = LeafSet.from_labels(tree.leaves.labels + (yl,))
    masks = []
    for s in tree.split_masks():
        side = _side_labels(tree.leaves, s)
        if xl in side:
            side.append(yl)
        masks.append(_mask_from_labels(new_leaves, side))
    if new_leaves.n >= 4:
        masks.append(_mask_from_labels(new_leaves, [xl, yl]))
    return PhyloTree._from_masks(new_leaves, masks)


def remove_leaf(tree: PhyloTree, x: Label) -> PhyloTree:
    """Delete a leaf and recanonicalise, dropping splits that turn trivial."""
    xl = _as_label(x)
    if xl not in tree.leaves:
        raise UnknownLeafError(f"no leaf {xl!r} in tree")
    rest = [l for l in tree.leaves.labels if l != xl]
    new_leaves = LeafSet.from_labels(rest)
    masks = set()
    for s in tree.split_masks():
        side = [l for l in _side_labels(tree.leaves, s) if l != xl]
        if 2 <= len(side) <= new_leaves.n - 2:
            masks.add(_mask_from_labels(new_leaves, side))
    return PhyloTree._from_masks(new_leaves, masks)


def contract(tree: PhyloTree, edge: Split) -> PhyloTree:
    """Remove one interior edge, merging its endpoints."""
    if edge.n != tree.n or edge.mask not in set(tree.split_masks()):
        raise NoSuchSplitError("edge is not an interior edge of this tree")
    return PhyloTree._from_masks(
        tree.leaves, (m for m in tree.split_masks() if m != edge.mask)
    )
