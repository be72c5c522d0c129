"""Seeded instance generators: partial k-trees with their natural
decompositions, and random relabelings.  All randomness flows through the
explicit seed, so a bundle is reproducible bit for bit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InvalidParamsError
from .graph import Graph
from .oracle import apply_permutation, identity_permutation
from .treewidth import TreeDecomposition


@dataclass(frozen=True)
class InstanceBundle:
    graph: Graph
    decomposition: TreeDecomposition
    seed: int


def generate_partial_ktree(
    n: int, k: int, edge_keep_ratio: float, seed: int
) -> InstanceBundle:
    """A random k-tree thinned edgewise, with its width-k decomposition.

    The k-tree grows by attaching each new vertex to a random k-clique taken
    from an existing bag; afterwards every edge is kept independently with
    probability edge_keep_ratio.  Removing edges never invalidates the
    recorded decomposition, it only loosens the coverage requirement.
    """
    if not (n > k >= 1):
        raise InvalidParamsError(f"need n > k >= 1, got n={n}, k={k}")
    if not (0.0 <= edge_keep_ratio <= 1.0):
        raise InvalidParamsError(f"edge_keep_ratio {edge_keep_ratio} outside [0, 1]")
    rng = random.Random(seed)
    bags: list[tuple[int, ...]] = [tuple(range(k + 1))]
    tree_edges: list[tuple[int, int]] = []
    edges: set[tuple[int, int]] = {
        (u, v) for u in range(k + 1) for v in range(u + 1, k + 1)
    }
    for v in range(k + 1, n):
        host = rng.randrange(len(bags))
        drop = rng.randrange(k + 1)
        clique = tuple(w for i, w in enumerate(bags[host]) if i != drop)
        bag = tuple(sorted(clique + (v,)))
        tree_edges.append((host, len(bags)))
        bags.append(bag)
        for w in clique:
            edges.add((min(v, w), max(v, w)))
    kept = [e for e in sorted(edges) if rng.random() < edge_keep_ratio]
    graph = Graph(n, kept)
    decomposition = TreeDecomposition(
        bags=tuple(bags), tree_edges=frozenset(tree_edges), root=0
    )
    return InstanceBundle(graph=graph, decomposition=decomposition, seed=seed)


def random_relabel(g: Graph, seed: int) -> tuple[Graph, tuple[int, ...]]:
    """Relabel with a seeded uniform permutation; seed 0 means identity."""
    if seed == 0:
        perm = identity_permutation(g.vertex_count)
    else:
        labels = list(range(g.vertex_count))
        random.Random(seed).shuffle(labels)
        perm = tuple(labels)
    return apply_permutation(g, perm), perm
