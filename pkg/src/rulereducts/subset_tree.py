"""Binary set-enumeration tree over the non-empty subsets of ``m`` features.

Nodes are identified by their subset's bit mask (bit ``k`` set means
feature ``k`` is present, 0-based).  For a node whose largest feature is
``j`` and ``j`` is not the last feature:

* a singleton ``{j}`` has left child ``{j+1}`` and right child ``{j, j+1}``;
* any larger set ``S`` has left child ``S + {j+1}`` and right child
  ``S - {j} + {j+1}``.

Nodes containing the last feature are leaves.  The root is ``{0}``.
Pre-order over this shape for four features visits::

    1 2 3 4 34 23 234 24 12 123 1234 124 13 134 14

Each node carries a key: 0 is live, 1 is pruned or already reported.
"""

from __future__ import annotations

from typing import Iterator

from .decision_table import FeatureSubset
from .rules import mask_subset, subset_mask

# keys are one byte per mask; 2**24 bytes is the most we allocate
MAX_FEATURES = 24


class SubsetTree:
    def __init__(self, m: int):
        if not 1 <= m <= MAX_FEATURES:
            raise ValueError(f"feature count must be in 1..{MAX_FEATURES}, got {m}")
        self.m = m
        self.keys = bytearray(1 << m)

    def __len__(self) -> int:
        return (1 << self.m) - 1

    def __contains__(self, mask: int) -> bool:
        return 0 < mask < 1 << self.m

    @property
    def root(self) -> int:
        return 1

    def left(self, mask: int) -> int | None:
        j = mask.bit_length() - 1
        if j == self.m - 1:
            return None
        if mask == 1 << j:
            return 1 << (j + 1)
        return mask | 1 << (j + 1)

    def right(self, mask: int) -> int | None:
        j = mask.bit_length() - 1
        if j == self.m - 1:
            return None
        if mask == 1 << j:
            return mask | 1 << (j + 1)
        return (mask & ~(1 << j)) | 1 << (j + 1)

    def preorder_masks(self) -> Iterator[int]:
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            r, l = self.right(node), self.left(node)
            if r is not None:
                stack.append(r)
            if l is not None:
                stack.append(l)

    def key(self, subset: FeatureSubset | int) -> int:
        return self.keys[self._mask(subset)]

    def mark(self, subset: FeatureSubset | int) -> None:
        self.keys[self._mask(subset)] = 1

    def prune_supersets(self, subset: FeatureSubset | int) -> int:
        """Set key 1 on every strict superset of ``subset``.

        Returns how many nodes went from 0 to 1.
        """
        base = self._mask(subset)
        free = ((1 << self.m) - 1) & ~base
        keys = self.keys
        newly = 0
        extra = free
        while extra:
            node = base | extra
            if not keys[node]:
                keys[node] = 1
                newly += 1
            extra = (extra - 1) & free
        return newly

    def reset_keys(self) -> None:
        self.keys[:] = bytes(len(self.keys))

    def pruned_count(self) -> int:
        return sum(self.keys)

    def _mask(self, subset: FeatureSubset | int) -> int:
        mask = subset if isinstance(subset, int) else subset_mask(subset)
        if mask not in self:
            raise KeyError(f"subset {mask_subset(mask) if mask > 0 else ()} is not a node of a {self.m}-feature tree")
        return mask


def build_tree(m: int) -> SubsetTree:
    return SubsetTree(m)


def preorder(tree: SubsetTree) -> list[FeatureSubset]:
    """Every node's subset (0-based feature indices) in pre-order."""
    return [mask_subset(mask) for mask in tree.preorder_masks()]
