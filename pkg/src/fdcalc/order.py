"""Canonical total order on element names, and a union-find that keeps the
smallest member of each class as its root."""

from __future__ import annotations

from functools import lru_cache


@lru_cache(maxsize=1 << 20)
def canon(x):
    """Sort key for nested tuples/strings/ints. Tuples compare shortlex."""
    if x is None:
        return (0,)
    if isinstance(x, bool):
        return (1, int(x))
    if isinstance(x, int):
        return (2, x)
    if isinstance(x, str):
        return (3, x)
    if isinstance(x, tuple):
        return (4, len(x), tuple(canon(y) for y in x))
    if isinstance(x, frozenset):
        return (5, len(x), tuple(sorted(canon(y) for y in x)))
    raise TypeError(f"unorderable element {x!r}")


def sort_canon(xs):
    return sorted(xs, key=canon)


class UnionFind:
    def __init__(self, items=()):
        self.parent = {}
        for x in items:
            self.parent.setdefault(x, x)

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if canon(rx) < canon(ry):
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry
        return True

    def classes(self):
        """Return (rep_of, members) with members listed in canonical order."""
        rep_of = {x: self.find(x) for x in self.parent}
        members = {}
        for x in sort_canon(rep_of):
            members.setdefault(rep_of[x], []).append(x)
        return rep_of, members
