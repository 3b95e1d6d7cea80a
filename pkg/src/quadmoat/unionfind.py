from __future__ import annotations

from typing import Sequence


class UnionFind:
    """Disjoint sets over ``range(n)`` that track per-component extrema.

    For every root we keep the member of largest norm (ties to the lower
    index), the member of largest u and the member of largest v.
    """

    def __init__(self, norms: Sequence[int], u: Sequence[int], v: Sequence[int]):
        n = len(norms)
        self.parent = list(range(n))
        self.size = [1] * n
        self.norms = norms
        self.u = u
        self.v = v
        self.far = list(range(n))
        self.right = list(range(n))
        self.top = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        norms, u, v = self.norms, self.u, self.v
        a, b = self.far[rx], self.far[ry]
        if norms[b] > norms[a] or (norms[b] == norms[a] and b < a):
            self.far[rx] = b
        if u[self.right[ry]] > u[self.right[rx]]:
            self.right[rx] = self.right[ry]
        if v[self.top[ry]] > v[self.top[rx]]:
            self.top[rx] = self.top[ry]
        return True

    def component_size(self, x: int) -> int:
        return self.size[self.find(x)]

    def extrema(self, x: int) -> tuple[int, int, int]:
        """(farthest, rightmost, topmost) member indices of x's component."""
        r = self.find(x)
        return self.far[r], self.right[r], self.top[r]
