"""Text formats for graphs and decompositions.

Everything external is 1-based.  A graph file is

    c optional comments
    p tw <n> <m>
    e <u> <v>          (m lines, ascending (min,max) pairs when written)

and a tree decomposition file is

    p td <bags> <width+1> <n>
    b <id> <v1> <v2> ...
    t <id1> <id2>
    r <id>             (optional root marker)

Readers tolerate blank lines, comments and reordered e/b/t lines but insist
on consistent counts and label ranges.
"""

from __future__ import annotations

from .errors import FormatError
from .graph import Graph
from .tdd import TreeDistanceDecomposition, decomposition_records
from .treewidth import TreeDecomposition


def write_graph(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        for row in comment.splitlines():
            lines.append(f"c {row}")
    lines.append(f"p tw {g.vertex_count} {g.edge_count}")
    for u, v in sorted(g.edges):
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    n = None
    m = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise FormatError(f"line {lineno}: duplicate p line")
            if len(parts) != 4 or parts[1] != "tw":
                raise FormatError(f"line {lineno}: expected 'p tw <n> <m>'")
            n, m = _ints(parts[2:], lineno)
        elif parts[0] == "e":
            if n is None:
                raise FormatError(f"line {lineno}: e line before p line")
            if len(parts) != 3:
                raise FormatError(f"line {lineno}: expected 'e <u> <v>'")
            u, v = _ints(parts[1:], lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise FormatError(f"line {lineno}: endpoint outside 1..{n}")
            if u == v:
                raise FormatError(f"line {lineno}: self-loop at {u}")
            edges.append((u - 1, v - 1))
        else:
            raise FormatError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None or m is None:
        raise FormatError("missing 'p tw' header")
    if len(edges) != m:
        raise FormatError(f"header promises {m} edges, file has {len(edges)}")
    g = Graph(n, edges)
    if g.edge_count != len(edges):
        raise FormatError("duplicate edges in file")
    return g


def write_tree_decomposition(d: TreeDecomposition, n: int) -> str:
    lines = [f"p td {d.bag_count()} {d.width() + 1} {n}"]
    for i, bag in enumerate(d.bags):
        lines.append(" ".join(["b", str(i + 1)] + [str(v + 1) for v in bag]))
    for a, b in sorted(d.tree_edges):
        lines.append(f"t {a + 1} {b + 1}")
    if d.root is not None:
        lines.append(f"r {d.root + 1}")
    return "\n".join(lines) + "\n"


def parse_tree_decomposition(text: str) -> tuple[TreeDecomposition, int]:
    """Returns the decomposition and the vertex count the header declares."""
    header = None
    bag_lines: dict[int, tuple[int, ...]] = {}
    tree_edges: list[tuple[int, int]] = []
    root = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None:
                raise FormatError(f"line {lineno}: duplicate p line")
            if len(parts) != 5 or parts[1] != "td":
                raise FormatError(f"line {lineno}: expected 'p td <bags> <width+1> <n>'")
            header = _ints(parts[2:], lineno)
        elif parts[0] == "b":
            if header is None:
                raise FormatError(f"line {lineno}: b line before p line")
            nums = _ints(parts[1:], lineno)
            if not nums:
                raise FormatError(f"line {lineno}: bag line without id")
            bag_id, verts = nums[0], nums[1:]
            n_bags, _, n = header
            if not (1 <= bag_id <= n_bags):
                raise FormatError(f"line {lineno}: bag id {bag_id} outside 1..{n_bags}")
            if bag_id in bag_lines:
                raise FormatError(f"line {lineno}: duplicate bag {bag_id}")
            for v in verts:
                if not (1 <= v <= n):
                    raise FormatError(f"line {lineno}: vertex {v} outside 1..{n}")
            bag_lines[bag_id] = tuple(sorted(set(v - 1 for v in verts)))
        elif parts[0] == "t":
            if header is None:
                raise FormatError(f"line {lineno}: t line before p line")
            a, b = _ints(parts[1:], lineno)
            n_bags = header[0]
            if not (1 <= a <= n_bags and 1 <= b <= n_bags):
                raise FormatError(f"line {lineno}: tree edge outside 1..{n_bags}")
            tree_edges.append((min(a, b) - 1, max(a, b) - 1))
        elif parts[0] == "r":
            (root_id,) = _ints(parts[1:], lineno)
            root = root_id - 1
        else:
            raise FormatError(f"line {lineno}: unknown record {parts[0]!r}")
    if header is None:
        raise FormatError("missing 'p td' header")
    n_bags, _, n = header
    for i in range(1, n_bags + 1):
        if i not in bag_lines:
            raise FormatError(f"bag {i} missing")
    if root is not None and not (0 <= root < n_bags):
        raise FormatError(f"root {root + 1} outside 1..{n_bags}")
    d = TreeDecomposition(
        bags=tuple(bag_lines[i] for i in range(1, n_bags + 1)),
        tree_edges=frozenset(tree_edges),
        root=root,
    )
    return d, n


def format_tdd_records(d: TreeDistanceDecomposition) -> str:
    """One line per bag, ascending id: 'b <bag_id> <depth> <v1> <v2> ...'."""
    lines = []
    for rec in decomposition_records(d):
        fields = ["b", str(rec.bag_id + 1), str(rec.bag_depth)]
        fields.extend(str(v + 1) for v in rec.vertices)
        lines.append(" ".join(fields))
    return "\n".join(lines) + "\n"


def _ints(parts: list[str], lineno: int) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in parts)
    except ValueError as exc:
        raise FormatError(f"line {lineno}: expected integers, got {parts}") from exc
