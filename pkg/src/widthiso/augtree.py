"""Augmented trees: bag nodes alternating with minimum-separating-set nodes.

Each bag node of a minimal tree distance decomposition gets one child node
per distinct set X_a intersect N(X_b) over its child bags b; that set is the
smallest piece of the parent bag cutting b's subtree off from the root.
Child bags producing the same separating set hang under the same node, so
bag levels and separating-set levels strictly alternate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import InvalidDecompositionError
from .graph import Graph, induced_subgraph, neighbors_of_set
from .tdd import TreeDistanceDecomposition, validate_tdd

BAG = "bag"
SEP = "sep"


class AugmentedTree:
    """Immutable alternating tree over a graph and its decomposition.

    Node 0 is the bag node of the decomposition root.  Per node we keep its
    kind, the associated vertices (bag contents or separating set), parent
    and children links, the bag-internal edges for bag nodes, and the number
    of distinct graph vertices associated to the subtree.
    """

    __slots__ = (
        "graph",
        "decomposition",
        "kinds",
        "vertices",
        "parent",
        "children",
        "bag_ids",
        "bag_edges",
        "sizes",
        "_trace_memo",
    )

    def __init__(
        self,
        graph: Graph,
        decomposition: TreeDistanceDecomposition,
        kinds: tuple[str, ...],
        vertices: tuple[tuple[int, ...], ...],
        parent: tuple[int, ...],
        children: tuple[tuple[int, ...], ...],
        bag_ids: tuple[int | None, ...],
        bag_edges: tuple[tuple[tuple[int, int], ...] | None, ...],
        sizes: tuple[int, ...],
    ) -> None:
        self.graph = graph
        self.decomposition = decomposition
        self.kinds = kinds
        self.vertices = vertices
        self.parent = parent
        self.children = children
        self.bag_ids = bag_ids
        self.bag_edges = bag_edges
        self.sizes = sizes
        self._trace_memo: dict = {}

    @property
    def root(self) -> int:
        return 0

    def node_count(self) -> int:
        return len(self.kinds)

    def is_bag(self, node: int) -> bool:
        return self.kinds[node] == BAG

    def handle(self, node: int = 0) -> "SubtreeHandle":
        if not (0 <= node < len(self.kinds)):
            raise ValueError(f"node {node} out of range")
        return SubtreeHandle(self, node)

    def subtree_nodes(self, node: int) -> list[int]:
        out = [node]
        stack = [node]
        while stack:
            a = stack.pop()
            for b in self.children[a]:
                out.append(b)
                stack.append(b)
        return out

    def to_debug_text(self, node: int = 0, fmt: Callable[[int], object] = lambda v: v) -> str:
        tag = "B" if self.is_bag(node) else "S"
        label = f"{tag}({','.join(str(fmt(v)) for v in self.vertices[node])})"
        kids = self.children[node]
        if not kids:
            return label
        return label + "(" + " ".join(self.to_debug_text(b, fmt) for b in kids) + ")"


@dataclass(frozen=True)
class SubtreeHandle:
    tree: AugmentedTree
    node: int


def build_augmented_tree(
    g: Graph, d: TreeDistanceDecomposition, check: bool = True
) -> AugmentedTree:
    """Interleave separating-set nodes into the decomposition tree.

    Separating sets under one bag are deduplicated extensionally and ordered
    by ascending vertex content, as are the child bags under each of them;
    that base order makes serialization reproducible.
    """
    if check:
        problems = validate_tdd(g, d)
        if problems:
            raise InvalidDecompositionError("; ".join(problems))

    kinds: list[str] = []
    vertices: list[tuple[int, ...]] = []
    parent: list[int] = []
    children: list[list[int]] = []
    bag_ids: list[int | None] = []

    def new_node(kind: str, verts: tuple[int, ...], par: int, bag_id: int | None) -> int:
        idx = len(kinds)
        kinds.append(kind)
        vertices.append(verts)
        parent.append(par)
        children.append([])
        bag_ids.append(bag_id)
        if par != idx:
            children[par].append(idx)
        return idx

    def add_bag(bag_id: int, par: int) -> int:
        node = new_node(BAG, d.bags[bag_id], par, bag_id)
        groups: dict[tuple[int, ...], list[int]] = {}
        for child in d.children(bag_id):
            sep = tuple(sorted(set(d.bags[bag_id]) & set(neighbors_of_set(g, d.bags[child]))))
            groups.setdefault(sep, []).append(child)
        for sep in sorted(groups):
            sep_node = new_node(SEP, sep, node, None)
            for child in sorted(groups[sep], key=lambda b: d.bags[b]):
                add_bag(child, sep_node)
        return node

    add_bag(d.root, 0)

    # A subtree's size counts each associated vertex once: separating sets
    # live inside the parent bag, child components are pairwise disjoint.
    sizes = [0] * len(kinds)
    for node in range(len(kinds) - 1, -1, -1):
        if kinds[node] == BAG:
            below = sum(
                sizes[b] for s in children[node] for b in children[s]
            )
            sizes[node] = len(vertices[node]) + below
        else:
            sizes[node] = len(vertices[node]) + sum(sizes[b] for b in children[node])

    bag_edges: list[tuple[tuple[int, int], ...] | None] = []
    for node in range(len(kinds)):
        if kinds[node] == BAG:
            inside = set(vertices[node])
            bag_edges.append(
                tuple(sorted(e for e in g.edges if e[0] in inside and e[1] in inside))
            )
        else:
            bag_edges.append(None)

    return AugmentedTree(
        graph=g,
        decomposition=d,
        kinds=tuple(kinds),
        vertices=tuple(vertices),
        parent=tuple(parent),
        children=tuple(tuple(c) for c in children),
        bag_ids=tuple(bag_ids),
        bag_edges=tuple(bag_edges),
        sizes=tuple(sizes),
    )


def subtree_graph(h: SubtreeHandle) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on every vertex associated to a node of the subtree."""
    tree = h.tree
    verts: set[int] = set()
    for node in tree.subtree_nodes(h.node):
        verts.update(tree.vertices[node])
    return induced_subgraph(tree.graph, verts)


def subtree_size(h: SubtreeHandle) -> int:
    """Number of distinct vertices associated to the subtree's nodes."""
    return h.tree.sizes[h.node]
