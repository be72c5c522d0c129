"""Minimal tree distance decompositions of connected graphs.

A tree distance decomposition rooted at a vertex set S partitions V into
disjoint bags; the bag holding v sits at tree depth d(S, v) and every edge
joins one bag or two tree-adjacent bags.  For each root set there is a
unique decomposition whose subtrees all cover connected subgraphs, and it
has the least width any decomposition with that root set can have.

That minimal decomposition has a direct characterization which the builder
uses: the bags at depth d are the depth-d slices of the connected components
left after deleting every vertex closer than d to S.  Two vertices at the
same depth share a bag exactly when they are connected without going nearer
the root, which is forced anyway whenever they are adjacent (equal-depth
bags are never tree-adjacent, so an edge between them would be uncoverable).

The navigation functions parent_bag / first_child / next_sibling answer
purely local queries from the bag contents alone, without materializing the
decomposition; see their docstrings for the exact neighborhood/reachability
conditions they evaluate.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import DisconnectedGraphError, EmptySetError, RootHasNoParentError
from .graph import (
    Graph,
    connected_components,
    induced_subgraph,
    is_connected,
    neighbors_of_set,
    reachable_avoiding,
    set_distance,
    vertex_set,
)


@dataclass(frozen=True)
class TreeDistanceDecomposition:
    """Rooted tree of disjoint bags; ids are depth-first discovery order."""

    bags: tuple[tuple[int, ...], ...]
    parent: tuple[int, ...]
    depth: tuple[int, ...]
    root: int = 0

    def width(self) -> int:
        return max(len(bag) for bag in self.bags)

    def bag_count(self) -> int:
        return len(self.bags)

    def children(self, i: int) -> tuple[int, ...]:
        return tuple(j for j in range(len(self.bags)) if self.parent[j] == i and j != self.root)

    def vertex_bag(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for i, bag in enumerate(self.bags):
            for v in bag:
                out[v] = i
        return out

    def subtree_bag_ids(self, i: int) -> tuple[int, ...]:
        ids = [i]
        stack = [i]
        while stack:
            a = stack.pop()
            for b in self.children(a):
                ids.append(b)
                stack.append(b)
        return tuple(sorted(ids))


@dataclass(frozen=True)
class DecompositionRecord:
    bag_id: int
    bag_depth: int
    vertices: tuple[int, ...]


def decomposition_records(d: TreeDistanceDecomposition) -> list[DecompositionRecord]:
    return [
        DecompositionRecord(i, d.depth[i], d.bags[i]) for i in range(len(d.bags))
    ]


def _levels(g: Graph, s: tuple[int, ...]) -> list[int]:
    """BFS layer of every vertex from the root set; -1 if unreachable."""
    from collections import deque

    level = [-1] * g.vertex_count
    queue = deque(s)
    for v in s:
        level[v] = 0
    while queue:
        x = queue.popleft()
        for y in g.neighbors(x):
            if level[y] < 0:
                level[y] = level[x] + 1
                queue.append(y)
    return level


def _build(g: Graph, s: tuple[int, ...], cap: int | None) -> TreeDistanceDecomposition | None:
    """Construct the minimal decomposition; None once a bag exceeds cap."""
    if cap is not None and len(s) > cap:
        return None
    level = _levels(g, s)
    max_depth = max(level)

    # Components of the subgraph on {v : level >= d} group the depth-d bags.
    bags: list[tuple[int, ...]] = [s]
    depth: list[int] = [0]
    parent: list[int] = [0]
    bag_of = {v: 0 for v in s}
    for d in range(1, max_depth + 1):
        inside = {v for v in range(g.vertex_count) if level[v] >= d}
        seen: set[int] = set()
        for start in sorted(inside):
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            stack = [start]
            while stack:
                x = stack.pop()
                for y in g.neighbors(x):
                    if y in inside and y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            bag = tuple(sorted(v for v in comp if level[v] == d))
            if cap is not None and len(bag) > cap:
                return None
            # Any neighbor one level up sits in the parent bag.
            up = next(
                y for v in bag for y in g.neighbors(v) if level[y] == d - 1
            )
            bag_id = len(bags)
            bags.append(bag)
            depth.append(d)
            parent.append(bag_of[up])
            for v in bag:
                bag_of[v] = bag_id

    # Renumber in depth-first discovery order, children by least vertex.
    kids: list[list[int]] = [[] for _ in bags]
    for i in range(1, len(bags)):
        kids[parent[i]].append(i)
    for lst in kids:
        lst.sort(key=lambda i: bags[i][0])
    order: list[int] = []
    stack = [0]
    while stack:
        i = stack.pop()
        order.append(i)
        stack.extend(reversed(kids[i]))
    new_id = {old: new for new, old in enumerate(order)}
    return TreeDistanceDecomposition(
        bags=tuple(bags[old] for old in order),
        parent=tuple(new_id[parent[old]] for old in order),
        depth=tuple(depth[old] for old in order),
        root=0,
    )


def build_minimal_tdd(g: Graph, s: Iterable[int]) -> TreeDistanceDecomposition:
    """The unique minimal tree distance decomposition rooted at s."""
    root = vertex_set(g, s)
    if not root:
        raise EmptySetError("root set must be nonempty")
    if not is_connected(g):
        raise DisconnectedGraphError("tree distance decompositions need a connected graph")
    built = _build(g, root, cap=None)
    assert built is not None
    return built


def parent_bag(g: Graph, s: Iterable[int], x: Iterable[int]) -> tuple[int, ...]:
    """Neighbors of x that stay reachable from s once x is deleted.

    For most bags this is the whole parent bag; a parent-bag vertex that
    touches the subtree below x only through other parent vertices is not
    adjacent to x and is not reported.
    """
    root = vertex_set(g, s)
    bag = vertex_set(g, x)
    if bag == root:
        raise RootHasNoParentError("the root bag has no parent")
    return tuple(
        v for v in neighbors_of_set(g, bag) if reachable_avoiding(g, root, v, bag)
    )


def _child_groups(g: Graph, s: tuple[int, ...], x: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Unreachable neighbors of x grouped by their component of g minus x."""
    loose = [
        v for v in neighbors_of_set(g, x) if not reachable_avoiding(g, s, v, x)
    ]
    if not loose:
        return []
    comp_of: dict[int, int] = {}
    for idx, comp in enumerate(connected_components(g, x)):
        for v in comp:
            comp_of[v] = idx
    groups: dict[int, list[int]] = {}
    for v in loose:
        groups.setdefault(comp_of[v], []).append(v)
    return sorted((tuple(sorted(vs)) for vs in groups.values()), key=lambda b: b[0])


def first_child(g: Graph, s: Iterable[int], x: Iterable[int]) -> tuple[int, ...] | None:
    """The child bag holding the least-labeled neighbor of x cut off by x."""
    root = vertex_set(g, s)
    bag = vertex_set(g, x)
    groups = _child_groups(g, root, bag)
    return groups[0] if groups else None


def next_sibling(g: Graph, s: Iterable[int], x: Iterable[int]) -> tuple[int, ...] | None:
    """Among the children of parent_bag(x), the next one by least label."""
    root = vertex_set(g, s)
    bag = vertex_set(g, x)
    if bag == root:
        raise RootHasNoParentError("the root bag has no siblings")
    p = parent_bag(g, root, bag)
    mine = bag[0]
    for group in _child_groups(g, root, tuple(p)):
        if group[0] > mine:
            return group
    return None


def validate_tdd(g: Graph, d: TreeDistanceDecomposition) -> list[str]:
    """Check partition, depth, edge-locality and minimality; [] means valid."""
    problems: list[str] = []
    n_bags = len(d.bags)
    if not (len(d.parent) == len(d.depth) == n_bags):
        return ["structure: bags, parent and depth have different lengths"]
    if not (0 <= d.root < n_bags):
        return [f"structure: root id {d.root} out of range"]
    if d.parent[d.root] != d.root:
        problems.append("structure: root must be its own parent")
    if d.depth[d.root] != 0:
        problems.append("structure: root depth must be 0")
    for i in range(n_bags):
        if not d.bags[i]:
            problems.append(f"structure: bag {i} is empty")
        if i != d.root:
            p = d.parent[i]
            if not (0 <= p < n_bags):
                problems.append(f"structure: bag {i} has invalid parent {p}")
            elif d.depth[i] != d.depth[p] + 1:
                problems.append(
                    f"structure: bag {i} at depth {d.depth[i]} under parent at depth {d.depth[p]}"
                )
    if problems:
        return problems

    seen: dict[int, int] = {}
    for i, bag in enumerate(d.bags):
        for v in bag:
            if v in seen:
                problems.append(f"partition: vertex {v} appears in bags {seen[v]} and {i}")
            seen[v] = i
    for v in range(g.vertex_count):
        if v not in seen:
            problems.append(f"partition: vertex {v} is in no bag")
    if problems:
        return problems

    root_bag = d.bags[d.root]
    for i, bag in enumerate(d.bags):
        for v in bag:
            dist = set_distance(g, root_bag, v)
            if dist != d.depth[i]:
                problems.append(
                    f"depth: vertex {v} in bag {i} at depth {d.depth[i]} but distance is {dist}"
                )

    for u, v in sorted(g.edges):
        bu, bv = seen[u], seen[v]
        if bu == bv:
            continue
        if d.parent[bu] == bv or d.parent[bv] == bu:
            continue
        problems.append(f"edge-locality: edge ({u}, {v}) spans non-adjacent bags {bu} and {bv}")

    for i in range(n_bags):
        union: list[int] = []
        for b in d.subtree_bag_ids(i):
            union.extend(d.bags[b])
        sub, _ = induced_subgraph(g, union)
        if not is_connected(sub):
            problems.append(f"minimality: subtree of bag {i} induces a disconnected subgraph")
    return problems


def tree_distance_width(g: Graph, k_max: int) -> int | None:
    """Least width over all root sets of size <= k_max; None above the bound.

    Root sets larger than k_max cannot help: the root bag alone already
    forces the width past the bound.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("tree distance width needs a connected graph")
    best: int | None = None
    cap = k_max
    for size in range(1, min(k_max, g.vertex_count) + 1):
        if best is not None and size > best:
            break
        for s in combinations(range(g.vertex_count), size):
            built = _build(g, s, cap=cap)
            if built is None:
                continue
            w = built.width()
            if best is None or w < best:
                best = w
                cap = best
    return best
