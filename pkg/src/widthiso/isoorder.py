"""Isomorphism order on augmented trees, the isomorphism decision for
bounded tree distance width graphs, and canonization.

The order is realized through canonical traces.  The trace of a subtree
rooted at a bag node, under a fixed ordering of that bag, is an integer
sequence listing relative depth, bag size, the bag's edges as position
pairs, the subtree's vertex count, and one block per separating-set child.
A separating-set block carries the set's positions in the bag ordering and
one block per child bag; a child block is the bipartite edges between the
separating set and the child bag as position pairs, followed by the child's
own trace minimized over the child bag's orderings.  Every variable-length
field is length-prefixed, so equal sequences mean equal structure, and
comparing two subtrees is comparing their minimal traces:

  * a difference in the bag edge lists is a first-step difference,
  * then subtree sizes, then child counts,
  * then the ordered child blocks, where separating-set positions come
    first, bipartite edge positions second and the recursive trace last.

Equality of minimal traces holds exactly when the two subgraphs admit an
isomorphism mapping bag onto bag, separating set onto separating set, which
is what makes the minimum over all root sets a canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, NamedTuple, Sequence

from .augtree import AugmentedTree, SubtreeHandle, build_augmented_tree
from .errors import (
    DisconnectedGraphError,
    NoAdmissibleMappingError,
    WidthExceededError,
)
from .graph import Graph, is_connected
from .tdd import TreeDistanceDecomposition, _build


class OrderResult(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class BagOrdering:
    """One arrangement of a bag's vertices; position i holds sequence[i]."""

    bag: tuple[int, ...]
    sequence: tuple[int, ...]

    def __post_init__(self) -> None:
        if tuple(sorted(self.sequence)) != self.bag:
            raise ValueError(f"sequence {self.sequence} is not an arrangement of {self.bag}")


@dataclass(frozen=True)
class ThetaSet:
    """Admissible pairs of bag orderings for a left/right comparison."""

    pairs: tuple[tuple[BagOrdering, BagOrdering], ...]

    def __post_init__(self) -> None:
        for left, right in self.pairs:
            if len(left.sequence) != len(right.sequence):
                raise ValueError("paired orderings must have equal length")

    def __bool__(self) -> bool:
        return bool(self.pairs)

    @staticmethod
    def full(left_bag: Iterable[int], right_bag: Iterable[int]) -> "ThetaSet":
        """Every pairing of arrangements; empty when the bag sizes differ."""
        lb = tuple(sorted(left_bag))
        rb = tuple(sorted(right_bag))
        if len(lb) != len(rb):
            return ThetaSet(())
        pairs = tuple(
            (BagOrdering(lb, ls), BagOrdering(rb, rs))
            for ls in permutations(lb)
            for rs in permutations(rb)
        )
        return ThetaSet(pairs)


def full_theta(left: SubtreeHandle, right: SubtreeHandle) -> ThetaSet:
    return ThetaSet.full(left.tree.vertices[left.node], right.tree.vertices[right.node])


def _orderings(bag: tuple[int, ...]) -> list[tuple[int, ...]]:
    return list(permutations(sorted(bag)))


def _bip_pairs(tree: AugmentedTree, sep_node: int, child_node: int) -> tuple[tuple[int, int], ...]:
    key = ("bip", sep_node, child_node)
    cached = tree._trace_memo.get(key)
    if cached is None:
        inside = set(tree.vertices[child_node])
        cached = tuple(
            sorted(
                (m, w)
                for m in tree.vertices[sep_node]
                for w in tree.graph.neighbors(m)
                if w in inside
            )
        )
        tree._trace_memo[key] = cached
    return cached


def _child_block(
    tree: AugmentedTree,
    sep_node: int,
    child_node: int,
    parent_pos: dict[int, int],
    rel_depth: int,
) -> tuple[int, ...]:
    """Least (bipartite positions, child trace) over the child's orderings."""
    pairs = _bip_pairs(tree, sep_node, child_node)
    best: tuple[int, ...] | None = None
    for phi in _orderings(tree.vertices[child_node]):
        child_pos = {v: i for i, v in enumerate(phi)}
        bip = sorted((parent_pos[m], child_pos[w]) for m, w in pairs)
        head = [len(bip)]
        for a, b in bip:
            head.append(a)
            head.append(b)
        block = tuple(head) + _trace(tree, child_node, phi, rel_depth + 2)
        if best is None or block < best:
            best = block
    assert best is not None
    return best


def _trace(
    tree: AugmentedTree, node: int, sigma: tuple[int, ...], rel_depth: int
) -> tuple[int, ...]:
    key = (node, sigma, rel_depth)
    cached = tree._trace_memo.get(key)
    if cached is not None:
        return cached
    pos = {v: i for i, v in enumerate(sigma)}
    bag_edges = tree.bag_edges[node]
    assert bag_edges is not None
    edge_pos = sorted(
        (pos[u], pos[v]) if pos[u] < pos[v] else (pos[v], pos[u]) for u, v in bag_edges
    )
    out: list[int] = [rel_depth, len(sigma), len(edge_pos)]
    for a, b in edge_pos:
        out.append(a)
        out.append(b)
    seps = tree.children[node]
    out.append(tree.sizes[node])
    out.append(len(seps))
    blocks: list[tuple[int, ...]] = []
    for s in seps:
        head = [len(tree.vertices[s])]
        head.extend(sorted(pos[m] for m in tree.vertices[s]))
        kids = tree.children[s]
        head.append(len(kids))
        child_blocks = sorted(
            _child_block(tree, s, b, pos, rel_depth) for b in kids
        )
        block = tuple(head) + tuple(x for cb in child_blocks for x in cb)
        blocks.append(block)
    blocks.sort()
    for block in blocks:
        out.extend(block)
    result = tuple(out)
    tree._trace_memo[key] = result
    return result


def _min_trace(
    tree: AugmentedTree, node: int, sigmas: Sequence[tuple[int, ...]]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    best_trace: tuple[int, ...] | None = None
    best_sigma: tuple[int, ...] | None = None
    for sigma in sigmas:
        t = _trace(tree, node, sigma, 0)
        if best_trace is None or t < best_trace:
            best_trace, best_sigma = t, sigma
    assert best_trace is not None and best_sigma is not None
    return best_trace, best_sigma


def compare_augmented(
    g_left: Graph,
    left: SubtreeHandle,
    g_right: Graph,
    right: SubtreeHandle,
    theta: ThetaSet,
) -> OrderResult:
    """Order two bag-node subtrees under the admissible ordering pairs.

    Each side is minimized over its own orderings occurring in theta; for the
    unrestricted product this is exactly the least achievable comparison.
    """
    for g, handle in ((g_left, left), (g_right, right)):
        if handle.tree.graph != g:
            raise ValueError("handle does not belong to the given graph")
        if not handle.tree.is_bag(handle.node):
            raise ValueError("comparison starts at bag nodes")
    if not theta:
        raise NoAdmissibleMappingError("no admissible ordering pairs")
    left_bag = left.tree.vertices[left.node]
    right_bag = right.tree.vertices[right.node]
    left_sigmas = []
    right_sigmas = []
    for lo, ro in theta.pairs:
        if lo.bag != left_bag or ro.bag != right_bag:
            raise ValueError("theta orderings must arrange the compared bags")
        left_sigmas.append(lo.sequence)
        right_sigmas.append(ro.sequence)
    t_left, _ = _min_trace(left.tree, left.node, sorted(set(left_sigmas)))
    t_right, _ = _min_trace(right.tree, right.node, sorted(set(right_sigmas)))
    if t_left < t_right:
        return OrderResult.LESS
    if t_left > t_right:
        return OrderResult.GREATER
    return OrderResult.EQUAL


def restrict_theta(
    sep_left: SubtreeHandle,
    child_left: SubtreeHandle,
    sigma_left: BagOrdering,
    sep_right: SubtreeHandle,
    child_right: SubtreeHandle,
    sigma_right: BagOrdering,
) -> ThetaSet:
    """Ordering pairs of two child bags consistent with their parents.

    A pair is admitted when matching positions turns the left bipartite
    graph (separating set against child bag) into the right one, i.e. the
    position-matching map extends the parents' partial isomorphism; the
    separating sets must sit on equal positions to begin with.
    """
    for sep, child, sigma in (
        (sep_left, child_left, sigma_left),
        (sep_right, child_right, sigma_right),
    ):
        tree = sep.tree
        if tree.is_bag(sep.node):
            raise ValueError("sep handles must point at separating-set nodes")
        if child.tree is not tree or child.node not in tree.children[sep.node]:
            raise ValueError("child must hang under the separating-set node")
        if sigma.bag != tree.vertices[tree.parent[sep.node]]:
            raise ValueError("sigma must arrange the owning bag")
    lpos = {v: i for i, v in enumerate(sigma_left.sequence)}
    rpos = {v: i for i, v in enumerate(sigma_right.sequence)}
    lsep = sorted(lpos[m] for m in sep_left.tree.vertices[sep_left.node])
    rsep = sorted(rpos[m] for m in sep_right.tree.vertices[sep_right.node])
    if lsep != rsep:
        return ThetaSet(())
    left_bag = child_left.tree.vertices[child_left.node]
    right_bag = child_right.tree.vertices[child_right.node]
    if len(left_bag) != len(right_bag):
        return ThetaSet(())
    lpairs = _bip_pairs(sep_left.tree, sep_left.node, child_left.node)
    rpairs = _bip_pairs(sep_right.tree, sep_right.node, child_right.node)
    pairs = []
    for phi_l in _orderings(left_bag):
        cl = {v: i for i, v in enumerate(phi_l)}
        enc_l = sorted((lpos[m], cl[w]) for m, w in lpairs)
        for phi_r in _orderings(right_bag):
            cr = {v: i for i, v in enumerate(phi_r)}
            if enc_l == sorted((rpos[m], cr[w]) for m, w in rpairs):
                pairs.append(
                    (BagOrdering(left_bag, phi_l), BagOrdering(right_bag, phi_r))
                )
    return ThetaSet(tuple(pairs))


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Isomorphism-complete byte string; plain byte order is the total order."""

    data: bytes

    @property
    def hex(self) -> str:
        return self.data.hex()

    def __bytes__(self) -> bytes:
        return self.data


def _serialize(trace: tuple[int, ...]) -> bytes:
    out = bytearray()
    for x in trace:
        assert 0 <= x < 1 << 32
        out += x.to_bytes(4, "big")
    return bytes(out)


class _CanonState(NamedTuple):
    trace: tuple[int, ...]
    root_set: tuple[int, ...]
    decomposition: TreeDistanceDecomposition
    tree: AugmentedTree
    sigma: tuple[int, ...]


@lru_cache(maxsize=None)
def _canon_state(g: Graph, k: int) -> _CanonState | None:
    """Least trace over all admissible root sets; None when none fits k."""
    if not is_connected(g):
        raise DisconnectedGraphError("canonization needs a connected graph")
    best: _CanonState | None = None
    for size in range(1, min(k, g.vertex_count) + 1):
        for s in combinations(range(g.vertex_count), size):
            d = _build(g, s, cap=k)
            if d is None:
                continue
            tree = build_augmented_tree(g, d, check=False)
            trace, sigma = _min_trace(tree, 0, _orderings(s))
            if best is None or trace < best.trace:
                best = _CanonState(trace, s, d, tree, sigma)
    return best


def iso_tdw(g: Graph, h: Graph, k: int) -> bool:
    """Isomorphism decision for graphs of tree distance width at most k.

    True iff some pair of root sets yields equal-comparing augmented trees,
    which is exactly equality of the two canonical traces.  If only one
    graph fits the width bound the answer is False; if neither does the
    width bound is reported as exceeded.
    """
    state_g = _canon_state(g, k)
    state_h = _canon_state(h, k)
    if state_g is None and state_h is None:
        raise WidthExceededError(f"neither graph has tree distance width <= {k}")
    if state_g is None or state_h is None:
        return False
    return state_g.trace == state_h.trace


def canon_tdw(g: Graph, k: int) -> CanonicalForm:
    """Canonical form: equal bytes exactly for isomorphic graphs of width <= k."""
    state = _canon_state(g, k)
    if state is None:
        raise WidthExceededError(f"tree distance width exceeds {k}")
    return CanonicalForm(_serialize(state.trace))


def canonical_map(g: Graph, k: int) -> tuple[int, ...]:
    """A relabeling onto canonical positions realizing canon_tdw(g, k).

    Positions follow the depth-first traversal of the winning augmented tree
    under the minimizing orderings; exact ties keep the first minimizer in
    lexicographic ordering order, so the map is deterministic.
    """
    state = _canon_state(g, k)
    if state is None:
        raise WidthExceededError(f"tree distance width exceeds {k}")
    tree = state.tree
    positions: dict[int, int] = {}
    counter = [0]

    def assign(node: int, sigma: tuple[int, ...], rel_depth: int) -> None:
        for v in sigma:
            positions[v] = counter[0]
            counter[0] += 1
        pos = {v: i for i, v in enumerate(sigma)}
        sep_entries = []
        for s in tree.children[node]:
            head = [len(tree.vertices[s])]
            head.extend(sorted(pos[m] for m in tree.vertices[s]))
            kids = tree.children[s]
            head.append(len(kids))
            child_entries = []
            for b in kids:
                best_block: tuple[int, ...] | None = None
                best_phi: tuple[int, ...] | None = None
                pairs = _bip_pairs(tree, s, b)
                for phi in _orderings(tree.vertices[b]):
                    child_pos = {v: i for i, v in enumerate(phi)}
                    bip = sorted((pos[m], child_pos[w]) for m, w in pairs)
                    block_head = [len(bip)]
                    for x, y in bip:
                        block_head.append(x)
                        block_head.append(y)
                    block = tuple(block_head) + _trace(tree, b, phi, rel_depth + 2)
                    if best_block is None or block < best_block:
                        best_block, best_phi = block, phi
                assert best_block is not None and best_phi is not None
                child_entries.append((best_block, b, best_phi))
            child_entries.sort(key=lambda entry: entry[0])
            block = tuple(head) + tuple(
                x for entry in child_entries for x in entry[0]
            )
            sep_entries.append((block, child_entries))
        sep_entries.sort(key=lambda entry: entry[0])
        for _, child_entries in sep_entries:
            for _, b, phi in child_entries:
                assign(b, phi, rel_depth + 2)

    assign(0, state.sigma, 0)
    return tuple(positions[v] for v in range(g.vertex_count))
