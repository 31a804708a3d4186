"""Single growing plane-oriented recursive tree.

The attachment target is sampled with the classic weight-bag trick:
every node appears in a flat list once per unit of attachment weight,
and the parent of each newcomer is a uniform pick from that list.  This
makes insertion O(1) at a cost of two list entries per node.

Two kernels are supported and fixed at construction time:

* ``Kernel.GAP`` -- gap-oriented attachment: a node with outdegree k
  carries k+1 insertion gaps, so node v is chosen with probability
  (outdegree(v)+1)/(2m-1) in an m-node tree.
* ``Kernel.DEGREE`` -- attachment proportional to raw degree,
  probability degree(v)/(2(m-1)) in an m-node tree (m >= 2).  The very
  first insertion (m=1 -> 2) is forced to the root, matching the unique
  two-node tree.
"""

from __future__ import annotations

import enum
from typing import IO

import numpy as np


class Kernel(enum.Enum):
    GAP = "gap"
    DEGREE = "degree"

    @classmethod
    def parse(cls, name: str) -> "Kernel":
        try:
            return cls(name)
        except ValueError:
            raise ValueError(f"unknown kernel {name!r}; expected 'gap' or 'degree'") from None


class Tree:
    """A PORT grown node by node, tracking degrees and index sums.

    Labels are 1-based insertion ranks; the root is label 1.  ``zagreb``
    and ``cubic`` hold the running sums of squared and cubed degrees and
    are updated in O(1) per insertion.
    """

    __slots__ = ("kernel", "n", "degree", "parent", "zagreb", "cubic", "_bag")

    def __init__(self, kernel: Kernel = Kernel.GAP):
        self.kernel = kernel
        self.n = 1
        self.degree = [0, 0]  # index 0 unused
        self.parent = [0, 0]  # root has no parent; stored as 0
        self.zagreb = 0
        self.cubic = 0
        # root carries one gap under GAP; degree-proportional starts empty
        self._bag = [1] if kernel is Kernel.GAP else []

    def insert(self, rng: np.random.Generator) -> int:
        """Insert the next node, returning the chosen parent's label."""
        if self._bag:
            p = self._bag[int(rng.integers(len(self._bag)))]
        else:
            p = 1  # forced first insertion under Kernel.DEGREE
        new = self.n + 1
        d = self.degree[p]
        self.degree[p] = d + 1
        self.degree.append(1)
        self.parent.append(p)
        self.zagreb += 2 * d + 2
        self.cubic += 3 * d * d + 3 * d + 2
        self._bag.append(p)
        self._bag.append(new)
        self.n = new
        return p

    def grow_to(self, n_target: int, rng: np.random.Generator) -> "Tree":
        if n_target < self.n:
            raise ValueError(f"n_target={n_target} below current size {self.n}")
        while self.n < n_target:
            self.insert(rng)
        return self

    def bag_size(self) -> int:
        return len(self._bag)

    def degrees(self) -> list[int]:
        """Degree sequence indexed by label (1..n)."""
        return self.degree[1 : self.n + 1]

    def to_csv(self, stream: IO[str]) -> None:
        """One line per node: label,parent,degree (root's parent is empty)."""
        stream.write("label,parent,degree\n")
        for v in range(1, self.n + 1):
            par = "" if v == 1 else str(self.parent[v])
            stream.write(f"{v},{par},{self.degree[v]}\n")
