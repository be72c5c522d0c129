"""Tree decompositions and the rooted isomorphism algorithms over them:
decomposition-respecting isomorphism with both decompositions given, the
backtracking search when only one side has a decomposition, an exact
bounded-treewidth decomposition routine, and their composition.

The one-decomposition search mirrors a nondeterministic traversal with
exhaustive backtracking: root bags for the second graph are enumerated,
partial vertex maps are extended bag by bag, children of a bag are grouped
into interchangeability classes so symmetric branches are explored once,
and each candidate child bag must separate its claimed interior from the
root side before the search descends.  A mapping is only returned after an
edge-preserving check in both directions.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Callable, Iterable, Sequence

from .errors import (
    InvalidDecompositionError,
    SizeMismatchError,
    WidthExceededError,
)
from .graph import (
    Graph,
    connected_components,
    induced_subgraph,
    vertex_set,
)

# Called with the live frame list after every frame pop when set; the frames
# always cover exactly the root-to-current-bag path.
pop_audit_hook: Callable[[list], None] | None = None


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed by id, tree edges on ids, optional designated root."""

    bags: tuple[tuple[int, ...], ...]
    tree_edges: frozenset[tuple[int, int]]
    root: int | None = None

    def bag_count(self) -> int:
        return len(self.bags)

    def width(self) -> int:
        return max(len(bag) for bag in self.bags) - 1

    def neighbors(self, i: int) -> tuple[int, ...]:
        out = []
        for a, b in self.tree_edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return tuple(sorted(out))

    def rooted(self, root: int) -> tuple[dict[int, int], dict[int, list[int]]]:
        """Parent and children maps when the bag tree hangs from root."""
        parent = {root: root}
        children: dict[int, list[int]] = {i: [] for i in range(len(self.bags))}
        queue = deque([root])
        while queue:
            a = queue.popleft()
            for b in self.neighbors(a):
                if b not in parent:
                    parent[b] = a
                    children[a].append(b)
                    queue.append(b)
        return parent, children


def validate_tree_decomposition(g: Graph, d: TreeDecomposition) -> list[str]:
    """Check bag coverage, edge coverage and per-vertex connectivity."""
    problems: list[str] = []
    n_bags = len(d.bags)
    if n_bags == 0:
        return ["structure: no bags"]
    for i, bag in enumerate(d.bags):
        for v in bag:
            if not (0 <= v < g.vertex_count):
                problems.append(f"structure: bag {i} holds invalid vertex {v}")
    for a, b in d.tree_edges:
        if not (0 <= a < n_bags and 0 <= b < n_bags) or a == b:
            problems.append(f"structure: invalid tree edge ({a}, {b})")
    if d.root is not None and not (0 <= d.root < n_bags):
        problems.append(f"structure: root {d.root} out of range")
    if problems:
        return problems
    if len(d.tree_edges) != n_bags - 1:
        problems.append(
            f"structure: {len(d.tree_edges)} tree edges on {n_bags} bags is not a tree"
        )
    else:
        reach = {0}
        queue = deque([0])
        while queue:
            a = queue.popleft()
            for b in d.neighbors(a):
                if b not in reach:
                    reach.add(b)
                    queue.append(b)
        if len(reach) != n_bags:
            problems.append("structure: bag tree is disconnected")
    if problems:
        return problems

    covered = set()
    for bag in d.bags:
        covered.update(bag)
    for v in range(g.vertex_count):
        if v not in covered:
            problems.append(f"coverage: vertex {v} is in no bag")
    for u, v in sorted(g.edges):
        if not any(u in bag and v in bag for bag in d.bags):
            problems.append(f"edge-coverage: edge ({u}, {v}) is inside no bag")
    for v in range(g.vertex_count):
        holding = [i for i, bag in enumerate(d.bags) if v in bag]
        if not holding:
            continue
        block = set(holding)
        seen = {holding[0]}
        queue = deque([holding[0]])
        while queue:
            a = queue.popleft()
            for b in d.neighbors(a):
                if b in block and b not in seen:
                    seen.add(b)
                    queue.append(b)
        if seen != block:
            problems.append(f"connectivity: bags holding vertex {v} do not form a subtree")
    return problems


class _Rooted:
    """Rooted view of one decomposition with per-subtree vertex sets."""

    def __init__(self, g: Graph, d: TreeDecomposition, root: int) -> None:
        self.g = g
        self.d = d
        self.root = root
        self.bags = d.bags
        self.parent, self.children = d.rooted(root)
        order = [root]
        stack = [root]
        while stack:
            a = stack.pop()
            for b in self.children[a]:
                order.append(b)
                stack.append(b)
        self.subtree_verts: dict[int, frozenset[int]] = {}
        for a in reversed(order):
            verts = set(self.bags[a])
            for b in self.children[a]:
                verts |= self.subtree_verts[b]
            self.subtree_verts[a] = frozenset(verts)

    def lex_key(self, parent_id: int, child_id: int):
        fresh = self.subtree_verts[child_id] - set(self.bags[parent_id])
        if not fresh:
            return (0, self.bags[child_id])
        return (1, (min(fresh),))

    def profile(self, child_id: int) -> tuple:
        """Cheap isomorphism invariant of a rooted subtree."""
        verts = self.subtree_verts[child_id]
        inner_edges = sum(1 for u, v in self.g.edges if u in verts and v in verts)
        shapes = []
        stack = [(child_id, 0)]
        while stack:
            a, dep = stack.pop()
            shapes.append((dep, len(self.bags[a])))
            for b in self.children[a]:
                stack.append((b, dep + 1))
        return (len(verts), inner_edges, tuple(sorted(shapes)))


def lex_subtree_order(
    g: Graph, d: TreeDecomposition, r: int, children: Sequence[int]
) -> list[int]:
    """Children of r sorted by the least subtree vertex outside r's bag.

    A child whose subtree adds no vertex beyond the bag of r sorts first,
    tie-broken by its bag content.
    """
    rooted = _Rooted(g, d, r)
    for c in children:
        if rooted.parent.get(c) != r:
            raise ValueError(f"bag {c} is not a child of bag {r}")
    return sorted(children, key=lambda c: rooted.lex_key(r, c))


def is_valid_child_bag(
    h: Graph,
    parent_bag: Iterable[int],
    child_bag: Iterable[int],
    claimed_component: Iterable[int],
) -> bool:
    """Check a guessed child bag against its claimed subinstance.

    The claim must be the child bag plus exactly the vertices that the bag
    cuts off from the remainder of the parent bag, and nothing may leak out
    of the claim except into the child or parent bag.
    """
    parent = set(vertex_set(h, parent_bag))
    child = set(vertex_set(h, child_bag))
    claimed = set(vertex_set(h, claimed_component))
    rest = parent - child
    if rest:
        seen = set(child)
        queue = deque(v for v in rest if v not in child)
        seen.update(queue)
        while queue:
            x = queue.popleft()
            for y in h.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        cutoff = set(range(h.vertex_count)) - seen
    else:
        cutoff = set()
    if claimed != child | cutoff:
        return False
    allowed = claimed | parent
    for v in claimed - child:
        for w in h.neighbors(v):
            if w not in allowed:
                return False
    return True


def _bag_bijections(
    g: Graph,
    g_bag: Sequence[int],
    h: Graph,
    h_bag: Sequence[int],
    pinned: dict[int, int],
    g_degree: Callable[[int], int],
    h_degree: Callable[[int], int],
):
    """Bijections g_bag -> h_bag extending pinned and preserving bag edges."""
    pinned_img = set(pinned.values())
    fresh_g = [v for v in g_bag if v not in pinned]
    fresh_h = [w for w in h_bag if w not in pinned_img]
    if len(fresh_g) != len(fresh_h) or len(g_bag) != len(h_bag):
        return
    for image in permutations(fresh_h):
        mapping = dict(pinned)
        ok = True
        for v, w in zip(fresh_g, image):
            if g_degree(v) != h_degree(w):
                ok = False
                break
            mapping[v] = w
        if not ok:
            continue
        items = list(mapping.items())
        for i in range(len(items)):
            u, x = items[i]
            for j in range(i + 1, len(items)):
                v, y = items[j]
                if g.has_edge(u, v) != h.has_edge(x, y):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield mapping


class _RespectMatcher:
    """Blockwise tree-aligned matcher between two rooted decompositions."""

    def __init__(self, left: _Rooted, right: _Rooted) -> None:
        self.L = left
        self.R = right
        left_univ = left.subtree_verts[left.root]
        right_univ = right.subtree_verts[right.root]
        self.ldeg = {
            v: sum(1 for w in left.g.neighbors(v) if w in left_univ) for v in left_univ
        }
        self.rdeg = {
            v: sum(1 for w in right.g.neighbors(v) if w in right_univ)
            for v in right_univ
        }
        self.fwd: dict[int, int] = {}
        self.back: dict[int, int] = {}
        self.journal: list[int] = []

    def _apply(self, mapping: dict[int, int]) -> int | None:
        mark = len(self.journal)
        for v, w in mapping.items():
            cur = self.fwd.get(v)
            if cur is not None:
                if cur != w:
                    self._rollback(mark)
                    return None
                continue
            if w in self.back:
                self._rollback(mark)
                return None
            self.fwd[v] = w
            self.back[w] = v
            self.journal.append(v)
        return mark

    def _rollback(self, mark: int) -> None:
        while len(self.journal) > mark:
            v = self.journal.pop()
            w = self.fwd.pop(v)
            del self.back[w]

    def match(self, a: int, b: int, forced: dict[int, int]) -> bool:
        bag_a = self.L.bags[a]
        bag_b = self.R.bags[b]
        if len(bag_a) != len(bag_b):
            return False
        if len(self.L.children[a]) != len(self.R.children[b]):
            return False
        for ext in _bag_bijections(
            self.L.g,
            bag_a,
            self.R.g,
            bag_b,
            forced,
            self.ldeg.__getitem__,
            self.rdeg.__getitem__,
        ):
            mark = self._apply(ext)
            if mark is None:
                continue
            if self._match_children(a, b, list(self.L.children[a]), list(self.R.children[b]), 0, set()):
                return True
            self._rollback(mark)
        return False

    def _match_children(
        self,
        a: int,
        b: int,
        kids_l: list[int],
        kids_r: list[int],
        idx: int,
        used: set[int],
    ) -> bool:
        if idx == len(kids_l):
            return True
        c = kids_l[idx]
        overlap = [v for v in self.L.bags[c] if v in set(self.L.bags[a])]
        forced = {v: self.fwd[v] for v in overlap}
        forced_img = set(forced.values())
        size = len(self.L.subtree_verts[c])
        for j, c2 in enumerate(kids_r):
            if j in used:
                continue
            if len(self.R.subtree_verts[c2]) != size:
                continue
            if set(self.R.bags[c2]) & set(self.R.bags[b]) != forced_img:
                continue
            mark = len(self.journal)
            used.add(j)
            if self.match(c, c2, forced) and self._match_children(
                a, b, kids_l, kids_r, idx + 1, used
            ):
                return True
            used.discard(j)
            self._rollback(mark)
        return False


def iso_respecting_both(
    g: Graph, d_g: TreeDecomposition, h: Graph, d_h: TreeDecomposition
) -> bool:
    """Is there an isomorphism mapping bags of d_g blockwise onto bags of d_h?

    One root is fixed on the g side and every bag of d_h is tried as the
    opposing root; the trees are then matched node against node, extending
    the vertex map bag by bag.
    """
    for graph, dec, name in ((g, d_g, "first"), (h, d_h, "second")):
        problems = validate_tree_decomposition(graph, dec)
        if problems:
            raise InvalidDecompositionError(f"{name} decomposition: " + "; ".join(problems))
    if d_g.bag_count() != d_h.bag_count():
        return False
    root_g = d_g.root if d_g.root is not None else 0
    left = _Rooted(g, d_g, root_g)
    for root_h in range(d_h.bag_count()):
        right = _Rooted(h, d_h, root_h)
        if _RespectMatcher(left, right).match(root_g, root_h, {}):
            return True
    return False


def _respects_pinned(left: _Rooted, top_l: int, top_r: int, pinned: dict[int, int]) -> bool:
    """Same-decomposition sibling test with the parent overlap pinned."""
    matcher = _RespectMatcher(left, left)
    return matcher.match(top_l, top_r, pinned)


_MISS = object()


class _IsoSearch:
    """Backtracking isomorphism search from a rooted decomposition of g into h."""

    def __init__(self, g: Graph, rooted: _Rooted, h: Graph, k: int) -> None:
        self.g = g
        self.h = h
        self.k = k
        self.L = rooted
        self.mapping: dict[int, int] = {}
        self.journal: list[int] = []
        self.frames: list[tuple[int, dict[int, int]]] = []
        self.memo: dict = {}
        self.class_cache: dict[int, list[list[int]]] = {}
        self.pop_audits = 0

    # -- bookkeeping ---------------------------------------------------

    def _assign(self, items: Iterable[tuple[int, int]]) -> int:
        mark = len(self.journal)
        for v, w in items:
            if v not in self.mapping:
                self.mapping[v] = w
                self.journal.append(v)
        return mark

    def _rollback(self, mark: int) -> None:
        while len(self.journal) > mark:
            del self.mapping[self.journal.pop()]

    def _audit_pop(self, popped_bag: int) -> None:
        self.pop_audits += 1
        path = []
        if self.frames:
            a = self.frames[-1][0]
            while True:
                path.append(a)
                if a == self.L.root:
                    break
                a = self.L.parent[a]
        live = {v for _, ext in self.frames for v in ext}
        expected = {v for a in path for v in self.L.bags[a]}
        assert live == expected, "frame stack must cover exactly the root path"
        if pop_audit_hook is not None:
            pop_audit_hook(list(self.frames))

    # -- child classes ---------------------------------------------------

    def _classes(self, a: int) -> list[list[int]]:
        """Children of a, grouped into interchangeability classes.

        Two subtrees fall together when they meet the bag of a in the same
        vertices and an isomorphism between them fixes that overlap
        pointwise; class order follows the first member in subtree order.
        """
        cached = self.class_cache.get(a)
        if cached is not None:
            return cached
        kids = sorted(self.L.children[a], key=lambda c: self.L.lex_key(a, c))
        classes: list[list[int]] = []
        keys: list[tuple] = []
        for c in kids:
            overlap = tuple(v for v in self.L.bags[c] if v in set(self.L.bags[a]))
            key = (overlap, self.L.profile(c))
            placed = False
            for idx, members in enumerate(classes):
                if keys[idx] != key:
                    continue
                pinned = {v: v for v in overlap}
                if _respects_pinned(self.L, members[0], c, pinned):
                    members.append(c)
                    placed = True
                    break
            if not placed:
                classes.append([c])
                keys.append(key)
        self.class_cache[a] = classes
        return classes

    # -- search ----------------------------------------------------------

    def run(self) -> tuple[int, ...] | None:
        root = self.L.root
        bag = self.L.bags[root]
        profile = sorted(self.g.degree(v) for v in bag)
        inner = sum(1 for u, v in self.g.edges if u in set(bag) and v in set(bag))
        n = self.h.vertex_count
        for cand in combinations(range(n), len(bag)):
            if sorted(self.h.degree(w) for w in cand) != profile:
                continue
            cset = set(cand)
            if sum(1 for u, v in self.h.edges if u in cset and v in cset) != inner:
                continue
            for ext in _bag_bijections(
                self.g, bag, self.h, cand, {}, self.g.degree, self.h.degree
            ):
                mark = self._assign(ext.items())
                self.frames.append((root, ext))
                ok = self._match_into(root, frozenset(range(n)))
                self.frames.pop()
                self._audit_pop(root)
                if ok:
                    perm = tuple(self.mapping[v] for v in range(self.g.vertex_count))
                    assert _is_isomorphism(self.g, self.h, perm), "search must return verified maps"
                    return perm
                self._rollback(mark)
        return None

    def _match_into(self, a: int, region: frozenset[int]) -> bool:
        phi = self.frames[-1][1]
        img_bag = set(phi.values())
        available = set(region) - img_bag
        kids: list[tuple[int, int]] = []
        for class_id, members in enumerate(self._classes(a)):
            for c in members:
                kids.append((c, class_id))
        return self._match_kids(a, kids, 0, available, phi, {})

    def _match_kids(
        self,
        a: int,
        kids: list[tuple[int, int]],
        idx: int,
        available: set[int],
        phi: dict[int, int],
        prev_choice: dict[int, tuple],
    ) -> bool:
        if idx == len(kids):
            return not available
        i, class_id = kids[idx]
        bag_a = set(self.L.bags[a])
        bag_i = self.L.bags[i]
        pinned = {v: phi[v] for v in bag_i if v in bag_a}
        pinned_img = set(pinned.values())
        fresh_count = len(bag_i) - len(pinned)
        target_interior = len(self.L.subtree_verts[i]) - len(bag_i)
        g_profile = sorted(self.g.degree(v) for v in bag_i)
        inner = sum(
            1 for u, v in self.g.edges if u in set(bag_i) and v in set(bag_i)
        )
        img_bag_a = set(phi.values())
        for combo in combinations(sorted(available), fresh_count):
            cut = tuple(sorted(pinned_img | set(combo)))
            if sorted(self.h.degree(w) for w in cut) != g_profile:
                continue
            cset = set(cut)
            if sum(1 for u, v in self.h.edges if u in cset and v in cset) != inner:
                continue
            for interior in self._claim_choices(available, img_bag_a, cset, set(combo), target_interior):
                choice = (cut, tuple(sorted(interior)))
                prev = prev_choice.get(class_id)
                if prev is not None and choice < prev:
                    continue
                if self._place_child(i, cut, interior, pinned):
                    rest = available - set(combo) - interior
                    old = prev_choice.get(class_id)
                    prev_choice[class_id] = choice
                    if self._match_kids(a, kids, idx + 1, rest, phi, prev_choice):
                        return True
                    if old is None:
                        del prev_choice[class_id]
                    else:
                        prev_choice[class_id] = old
                    self._unplace_child(i, pinned)
        return False

    def _claim_choices(
        self,
        available: set[int],
        img_bag_a: set[int],
        cut: set[int],
        combo: set[int],
        target: int,
    ):
        """Unions of separated components of the right size, in label order.

        A component counts as separated when, once the candidate bag is
        removed, it cannot reach the rest of the current bag image inside
        the unconsumed region.
        """
        working = (available | img_bag_a) - cut
        seeds = img_bag_a - cut
        reach = set(seeds)
        queue = deque(seeds)
        while queue:
            x = queue.popleft()
            for y in self.h.neighbors(x):
                if y in working and y not in reach:
                    reach.add(y)
                    queue.append(y)
        loose = (available - combo) - reach
        comps: list[frozenset[int]] = []
        seen: set[int] = set()
        for start in sorted(loose):
            if start in seen:
                continue
            comp = {start}
            seen.add(start)
            stack = [start]
            while stack:
                x = stack.pop()
                for y in self.h.neighbors(x):
                    if y in loose and y not in seen:
                        seen.add(y)
                        comp.add(y)
                        stack.append(y)
            comps.append(frozenset(comp))

        sizes = [len(c) for c in comps]
        chosen: list[int] = []

        def pick(pos: int, remaining: int):
            if remaining == 0:
                yield frozenset().union(*(comps[i] for i in chosen)) if chosen else frozenset()
                return
            if pos == len(comps):
                return
            if sum(sizes[pos:]) < remaining:
                return
            if sizes[pos] <= remaining:
                chosen.append(pos)
                yield from pick(pos + 1, remaining - sizes[pos])
                chosen.pop()
            yield from pick(pos + 1, remaining)

        yield from pick(0, target)

    def _place_child(
        self, i: int, cut: tuple[int, ...], interior: frozenset[int], pinned: dict[int, int]
    ) -> bool:
        """Try to map the subtree at i onto cut plus interior; keep on success."""
        key = (i, cut, interior, tuple(sorted(pinned.items())))
        hit = self.memo.get(key, _MISS)
        if hit is None:
            return False
        if hit is not _MISS:
            self._assign(hit.items())
            return True
        found: dict[int, int] | None = None
        region = frozenset(cut) | interior
        for ext in _bag_bijections(
            self.g, self.L.bags[i], self.h, cut, pinned, self.g.degree, self.h.degree
        ):
            mark = self._assign(ext.items())
            self.frames.append((i, ext))
            ok = self._match_into(i, region)
            self.frames.pop()
            self._audit_pop(i)
            if ok:
                found = {
                    v: self.mapping[v]
                    for v in self.L.subtree_verts[i]
                    if v not in pinned
                }
                self._rollback(mark)
                break
            self._rollback(mark)
        self.memo[key] = found
        if found is None:
            return False
        self._assign(found.items())
        return True

    def _unplace_child(self, i: int, pinned: dict[int, int]) -> None:
        # Subtree assignments are always newer than any pending rollback
        # mark, so filtering them out keeps mark positions valid.
        keys = set(self.L.subtree_verts[i]) - set(pinned)
        for v in keys:
            if v in self.mapping:
                del self.mapping[v]
        self.journal[:] = [v for v in self.journal if v not in keys]


def _is_isomorphism(g: Graph, h: Graph, perm: Sequence[int]) -> bool:
    if sorted(perm) != list(range(g.vertex_count)):
        return False
    if g.edge_count != h.edge_count:
        return False
    for u, v in g.edges:
        if not h.has_edge(perm[u], perm[v]):
            return False
    return True


def _restrict_decomposition(
    d: TreeDecomposition, comp: set[int], relabel: dict[int, int]
) -> TreeDecomposition:
    """Restriction of a decomposition to one component, bags relabeled."""
    kept = [i for i, bag in enumerate(d.bags) if any(v in comp for v in bag)]
    kept_set = set(kept)
    new_id = {old: new for new, old in enumerate(kept)}
    bags = tuple(
        tuple(sorted(relabel[v] for v in d.bags[old] if v in comp)) for old in kept
    )
    edges = frozenset(
        (min(new_id[a], new_id[b]), max(new_id[a], new_id[b]))
        for a, b in d.tree_edges
        if a in kept_set and b in kept_set
    )
    anchor = d.root if d.root is not None else 0
    parent, _ = d.rooted(anchor)
    depth = {}
    for node in kept:
        steps = 0
        a = node
        while a != anchor:
            a = parent[a]
            steps += 1
        depth[node] = steps
    top = min(kept, key=lambda i: (depth[i], i))
    return TreeDecomposition(bags=bags, tree_edges=edges, root=new_id[top])


def iso_one_decomp(
    g: Graph, d_g: TreeDecomposition, h: Graph, k: int
) -> tuple[int, ...] | None:
    """Find an isomorphism from g onto h given only g's decomposition.

    Root bags of size |root bag of g| are enumerated on the h side in
    sorted-content order; the map is grown blockwise down the decomposition
    tree with failed subproblems memoized.  Disconnected inputs are matched
    component by component.
    """
    problems = validate_tree_decomposition(g, d_g)
    if problems:
        raise InvalidDecompositionError("; ".join(problems))
    if d_g.width() > k:
        raise InvalidDecompositionError(f"decomposition width {d_g.width()} exceeds {k}")
    if g.vertex_count != h.vertex_count:
        raise SizeMismatchError(
            f"graphs have {g.vertex_count} and {h.vertex_count} vertices"
        )
    if g.edge_count != h.edge_count:
        return None
    if g.degree_sequence() != h.degree_sequence():
        return None

    g_comps = connected_components(g)
    h_comps = connected_components(h)
    if sorted(len(c) for c in g_comps) != sorted(len(c) for c in h_comps):
        return None
    if len(g_comps) == 1:
        root = d_g.root if d_g.root is not None else 0
        rooted = _Rooted(g, d_g, root)
        return _IsoSearch(g, rooted, h, k).run()

    # Componentwise: solve each piece on its induced subgraph, then stitch.
    g_parts = []
    for comp in g_comps:
        sub, relabel = induced_subgraph(g, comp)
        part_d = _restrict_decomposition(d_g, set(comp), relabel)
        back = {new: old for old, new in relabel.items()}
        g_parts.append((sub, part_d, back))
    h_parts = []
    for comp in h_comps:
        sub, relabel = induced_subgraph(h, comp)
        back = {new: old for old, new in relabel.items()}
        h_parts.append((sub, back))

    pair_memo: dict[tuple[int, int], tuple[int, ...] | None] = {}

    def pair_map(gi: int, hj: int) -> tuple[int, ...] | None:
        key = (gi, hj)
        if key not in pair_memo:
            sub_g, part_d, _ = g_parts[gi]
            sub_h, _ = h_parts[hj]
            if sub_g.vertex_count != sub_h.vertex_count or sub_g.edge_count != sub_h.edge_count:
                pair_memo[key] = None
            else:
                rooted = _Rooted(sub_g, part_d, part_d.root if part_d.root is not None else 0)
                pair_memo[key] = _IsoSearch(sub_g, rooted, sub_h, k).run()
        return pair_memo[key]

    used: set[int] = set()
    assignment: list[int] = []

    def assign(gi: int) -> bool:
        if gi == len(g_parts):
            return True
        for hj in range(len(h_parts)):
            if hj in used:
                continue
            if pair_map(gi, hj) is not None:
                used.add(hj)
                assignment.append(hj)
                if assign(gi + 1):
                    return True
                assignment.pop()
                used.discard(hj)
        return False

    if not assign(0):
        return None
    total: dict[int, int] = {}
    for gi, hj in enumerate(assignment):
        sub_map = pair_map(gi, hj)
        assert sub_map is not None
        _, _, g_back = g_parts[gi]
        _, h_back = h_parts[hj]
        for new_v, new_w in enumerate(sub_map):
            total[g_back[new_v]] = h_back[new_w]
    perm = tuple(total[v] for v in range(g.vertex_count))
    assert _is_isomorphism(g, h, perm)
    return perm


def compute_tree_decomposition(g: Graph, k: int) -> TreeDecomposition | None:
    """An exact width-<=k decomposition via elimination orders, or None.

    Vertices are eliminated smallest-label first with failed elimination
    states memoized, so the output is deterministic for a fixed input.
    """
    if k < 0:
        return None
    if g.vertex_count == 0:
        return TreeDecomposition(bags=((),), tree_edges=frozenset(), root=0)
    all_bags: list[tuple[int, ...]] = []
    all_edges: list[tuple[int, int]] = []
    comp_roots: list[int] = []
    for comp in connected_components(g):
        sub, relabel = induced_subgraph(g, comp)
        back = {new: old for old, new in relabel.items()}
        piece = _eliminate(sub, k)
        if piece is None:
            return None
        bags, edges, root = piece
        offset = len(all_bags)
        all_bags.extend(tuple(sorted(back[v] for v in bag)) for bag in bags)
        all_edges.extend((a + offset, b + offset) for a, b in edges)
        comp_roots.append(root + offset)
    for first, second in zip(comp_roots, comp_roots[1:]):
        all_edges.append((min(first, second), max(first, second)))
    return TreeDecomposition(
        bags=tuple(all_bags),
        tree_edges=frozenset(all_edges),
        root=comp_roots[0],
    )


def _eliminate(
    g: Graph, k: int
) -> tuple[list[tuple[int, ...]], list[tuple[int, int]], int] | None:
    """Elimination-order decomposition of a connected graph, or None."""
    n = g.vertex_count
    if n <= k + 1:
        return [tuple(range(n))], [], 0

    def closure_neighbors(eliminated: frozenset[int], v: int) -> set[int]:
        seen = {v}
        out: set[int] = set()
        stack = [v]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if y in seen:
                    continue
                seen.add(y)
                if y in eliminated:
                    stack.append(y)
                else:
                    out.add(y)
        return out

    failed: set[frozenset[int]] = set()

    def search(eliminated: frozenset[int]) -> list[int] | None:
        if n - len(eliminated) <= k + 1:
            return []
        if eliminated in failed:
            return None
        for v in range(n):
            if v in eliminated:
                continue
            if len(closure_neighbors(eliminated, v)) <= k:
                rest = search(eliminated | {v})
                if rest is not None:
                    return [v] + rest
        failed.add(eliminated)
        return None

    order = search(frozenset())
    if order is None:
        return None
    order_pos = {v: i for i, v in enumerate(order)}
    bags: list[tuple[int, ...]] = []
    edges: list[tuple[int, int]] = []
    eliminated: frozenset[int] = frozenset()
    for v in order:
        bags.append(tuple(sorted({v} | closure_neighbors(eliminated, v))))
        eliminated = eliminated | {v}
    final = tuple(sorted(set(range(n)) - set(order)))
    final_id = len(bags)
    bags.append(final)
    for i, v in enumerate(order):
        rest = [u for u in bags[i] if u != v]
        # Closure neighbors are never eliminated before v, so every
        # attachment points at a later bag or the final one.
        target = min((order_pos.get(u, final_id) for u in rest), default=final_id)
        assert target > i
        edges.append((i, target))
    return bags, edges, final_id


def iso_tw(g: Graph, h: Graph, k: int) -> bool:
    """Bounded-treewidth isomorphism: decompose one side, then search.

    If g does not fit width k the roles are swapped; when neither graph has
    a width-k decomposition the bound itself is reported as exceeded.
    """
    if g.vertex_count != h.vertex_count:
        return False
    d_g = compute_tree_decomposition(g, k)
    if d_g is not None:
        return iso_one_decomp(g, d_g, h, k) is not None
    d_h = compute_tree_decomposition(h, k)
    if d_h is None:
        raise WidthExceededError(f"neither graph has treewidth <= {k}")
    return iso_one_decomp(h, d_h, g, k) is not None
