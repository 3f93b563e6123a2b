"""Binary Huffman tree over the vocabulary, with root-to-leaf paths.

Hierarchical softmax replaces per-word output vectors with one vector per
inner unit of a binary Huffman tree built from word counts. A word's
probability is a product of sigmoid left/right decisions along its unique
root-to-leaf path, so each training step touches only O(log V) rows.

Node encoding: leaves are word-ids 0..V-1; inner node i is encoded as V+i.
Inner ids 0..V-2 are assigned in creation (merge) order and index the rows
of the hierarchical-softmax output matrix. The root is always inner id V-2.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidCounts


@dataclass(frozen=True)
class PathSpec:
    """Root-to-leaf path for one word.

    ``nodes`` holds inner-node ids starting at the root; ``directions`` holds
    one bit per node, 1 meaning the path continues to the LEFT child.
    """

    nodes: tuple[int, ...]
    directions: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class HuffmanTree:
    vocab_size: int
    left: tuple[int, ...]   # per inner node: encoded child id
    right: tuple[int, ...]
    root: int               # inner id of the root (V-2)
    leaf_paths: tuple[PathSpec, ...]

    @property
    def inner_count(self) -> int:
        return self.vocab_size - 1

    def is_leaf(self, node: int) -> bool:
        return node < self.vocab_size

    def path(self, word: int) -> PathSpec:
        return self.leaf_paths[word]


def build_tree(counts: Sequence[int]) -> HuffmanTree:
    """Huffman construction: repeatedly merge the two lowest-weight nodes.

    Selection ties are broken by creation order (leaves first, in word order,
    then inner nodes in merge order); of the two merged nodes, the
    earlier-created one becomes the LEFT child. This makes trees fully
    deterministic for identical counts.
    """
    v = len(counts)
    if v < 2:
        raise InvalidCounts(f"need >= 2 words, got {v}")
    if any(c < 1 for c in counts):
        raise InvalidCounts("all counts must be >= 1")

    # Heap entries: (weight, creation_order, encoded_node). Leaves have
    # creation order 0..V-1, inner nodes V, V+1, ...
    heap: list[tuple[int, int, int]] = [
        (int(c), w, w) for w, c in enumerate(counts)
    ]
    heapq.heapify(heap)
    left: list[int] = []
    right: list[int] = []
    next_order = v
    while len(heap) > 1:
        wa, oa, na = heapq.heappop(heap)
        wb, ob, nb = heapq.heappop(heap)
        if oa < ob:
            left.append(na)
            right.append(nb)
        else:
            left.append(nb)
            right.append(na)
        inner = len(left) - 1
        heapq.heappush(heap, (wa + wb, next_order, v + inner))
        next_order += 1

    root = len(left) - 1  # == V - 2

    # Walk down from the root to collect each leaf's path.
    paths: list[PathSpec | None] = [None] * v
    stack: list[tuple[int, tuple[int, ...], tuple[int, ...]]] = [(v + root, (), ())]
    while stack:
        node, nodes, bits = stack.pop()
        if node < v:
            paths[node] = PathSpec(nodes=nodes, directions=bits)
            continue
        inner = node - v
        stack.append((left[inner], nodes + (inner,), bits + (1,)))
        stack.append((right[inner], nodes + (inner,), bits + (0,)))

    return HuffmanTree(
        vocab_size=v,
        left=tuple(left),
        right=tuple(right),
        root=root,
        leaf_paths=tuple(paths),  # type: ignore[arg-type]
    )
