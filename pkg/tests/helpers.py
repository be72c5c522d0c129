"""Shared builders for the test suite."""

from __future__ import annotations

import random

from widthiso import Graph, is_connected, tree_distance_width


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def spider_graph(*legs: int) -> Graph:
    """Center 0 with paths of the given lengths hanging off it."""
    edges = []
    nxt = 1
    for leg in legs:
        prev = 0
        for _ in range(leg):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(nxt, edges)


def triangle_with_pendants() -> Graph:
    """Triangle 0-1-2 with pendant edges 1-3 and 2-4.

    The depth-1 bag rooted at 0 is {1, 2}, but vertex 2 is not adjacent to
    the child bag {3}: the graph where the purely neighborhood-based parent
    query underreports the parent bag.
    """
    return Graph(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph(10, outer + inner + spokes)


def random_graph(n: int, edge_probability: float, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < edge_probability
    ]
    return Graph(n, edges)


def random_narrow_graph(rng: random.Random, n: int) -> Graph:
    """A random connected graph of tree distance width at most 2.

    Built layer by layer: bags of size one or two, every vertex wired to at
    least one vertex of the previous bag, optional in-bag edge.  The layer
    structure itself is a width-2 tree distance decomposition, and the
    builder retries until the sample is connected and verified.
    """
    while True:
        root = rng.choice([1, 2])
        prev = list(range(root))
        nxt = root
        edges = set()
        if root == 2 and rng.random() < 0.7:
            edges.add((0, 1))
        while nxt < n:
            width = rng.choice([1, 2])
            bag = list(range(nxt, min(nxt + width, n)))
            nxt += len(bag)
            for v in bag:
                for a in rng.sample(prev, rng.randint(1, len(prev))):
                    edges.add((a, v))
            if len(bag) == 2 and rng.random() < 0.5:
                edges.add((bag[0], bag[1]))
            prev = bag
        g = Graph(n, edges)
        if is_connected(g) and tree_distance_width(g, 2) is not None:
            return g
