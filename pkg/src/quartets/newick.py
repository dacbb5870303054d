"""Newick text for the unrooted trees this package works with.

Reading takes the usual rooted nesting, ignores branch lengths, rejects
interior labels, and keeps only the leaf clusters; degree-2 vertices
(including a degree-2 root) vanish on their own because equal clusters
collapse into one split. Writing roots the tree at the interior vertex
next to the smallest leaf and orders children by their smallest
descendant, so every tree has exactly one rendering and reading it back
returns the identical value.
"""

from __future__ import annotations

from .errors import ParseError, InteriorLabelError, QuartetError, TooFewLeavesError
from .model import LeafSet, PhyloTree

# structural characters; labels may not contain these or whitespace
_RESERVED = set("():,;|#")

_LENGTH_CHARS = set("0123456789.+-eE")


def parse_newick(text: str) -> PhyloTree:
    """Tree from Newick text.

    Branch lengths are accepted and dropped. Labels on interior vertices
    are an error rather than silently discarded data.
    """
    pos = 0
    end = len(text)
    labels: list[str] = []
    clusters: list[int] = []  # bit masks over label-appearance order

    def skip_ws() -> None:
        nonlocal pos
        while pos < end and text[pos].isspace():
            pos += 1

    def skip_length() -> None:
        nonlocal pos
        skip_ws()
        if pos < end and text[pos] == ":":
            pos += 1
            skip_ws()
            start = pos
            while pos < end and text[pos] in _LENGTH_CHARS:
                pos += 1
            if pos == start:
                raise ParseError("expected a branch length after ':'", position=pos)

    def parse_subtree() -> int:
        nonlocal pos
        skip_ws()
        if pos >= end:
            raise ParseError("unexpected end of input", position=pos)
        if text[pos] == "(":
            pos += 1
            below = parse_subtree()
            skip_ws()
            while pos < end and text[pos] == ",":
                pos += 1
                below |= parse_subtree()
                skip_ws()
            if pos >= end or text[pos] != ")":
                raise ParseError("expected ')' or ','", position=pos)
            pos += 1
            skip_ws()
            if pos < end and text[pos] not in ":,();":
                raise InteriorLabelError(
                    "labels on interior vertices are not supported", position=pos
                )
            skip_length()
            clusters.append(below)
            return below
        start = pos
        while pos < end and not text[pos].isspace() and text[pos] not in _RESERVED:
            pos += 1
        if pos == start:
            raise ParseError("expected a leaf label", position=pos)
        labels.append(text[start:pos])
        skip_length()
        return 1 << (len(labels) - 1)

    root = parse_subtree()
    skip_ws()
    if pos >= end or text[pos] != ";":
        raise ParseError("expected ';'", position=pos)
    pos += 1
    skip_ws()
    if pos != end:
        raise ParseError("trailing text after ';'", position=pos)
    del root
    leaves = LeafSet.from_labels(labels)
    n = leaves.n
    full = leaves.full_mask()
    masks = set()
    for cluster in clusters:
        m = 0
        i = 0
        c = cluster
        while c:
            if c & 1:
                m |= 1 << leaves.index(labels[i])
            c >>= 1
            i += 1
        if not (2 <= m.bit_count() <= n - 2):
            continue
        if m & 1:
            m = full & ~m
        masks.add(m)
    # clusters of a nesting are laminar, so the splits are compatible
    return PhyloTree._from_masks(leaves, tuple(sorted(masks)))


def serialize_newick(tree: PhyloTree) -> str:
    """Canonical Newick for the tree, invertible by parse_newick."""
    leaves = tree.leaves
    n = leaves.n
    if n < 3:
        raise TooFewLeavesError("serialisation needs at least three leaves")
    for label in leaves.labels:
        if any(ch in _RESERVED or ch.isspace() for ch in label):
            raise QuartetError(f"label {label!r} cannot be written in this format")
    masks = sorted(tree.split_masks(), key=lambda m: (m.bit_count(), m))
    parent: dict[int, int] = {}
    for i, m in enumerate(masks):
        for p in masks[i + 1 :]:
            if m != p and m & ~p == 0:
                parent[m] = p
                break
    children: dict[int, list[int]] = {m: [] for m in masks}
    top = []
    for m in masks:
        if m in parent:
            children[parent[m]].append(m)
        else:
            top.append(m)
    leaf_home: dict[int, int] = {}
    for v in range(1, n):
        for m in masks:  # popcount order, so the first hit is the tightest
            if (m >> v) & 1:
                leaf_home[v] = m
                break

    def low_bit(m: int) -> int:
        return (m & -m).bit_length() - 1

    def render(m: int) -> str:
        parts = [(v, leaves.labels[v]) for v in range(1, n) if leaf_home.get(v) == m]
        parts.extend((low_bit(c), render(c)) for c in children[m])
        parts.sort(key=lambda item: item[0])
        return "(" + ",".join(s for _, s in parts) + ")"

    parts = [(0, leaves.labels[0])]
    parts.extend(
        (v, leaves.labels[v]) for v in range(1, n) if v not in leaf_home
    )
    parts.extend((low_bit(m), render(m)) for m in top)
    parts.sort(key=lambda item: item[0])
    return "(" + ",".join(s for _, s in parts) + ");"
