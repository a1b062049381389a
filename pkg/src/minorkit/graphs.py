"""Immutable simple-graph values and the edit operations that form minors.

Graphs are simple (no loops, no parallel edges), undirected, with vertices
labeled 0..n-1.  Adjacency is stored as one bitmask per vertex, which keeps
every neighborhood inside a single machine word up to the order cap of 32.
All operations are pure: they return new Graph values and never mutate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

MAX_ORDER = 32


class GraphError(ValueError):
    """Malformed graph data or an operation applied out of its domain."""


class CapacityError(GraphError):
    """An operation would exceed the order cap (or another hard bound)."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, slots=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 with bitmask adjacency."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_ORDER:
            raise CapacityError(f"order {self.n} outside 0..{MAX_ORDER}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match order")

    # -- queries ---------------------------------------------------------

    @property
    def m(self) -> int:
        """Number of edges."""
        return sum(a.bit_count() for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted((a.bit_count() for a in self.adj), reverse=True))

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and 0 <= u < self.n and 0 <= v < self.n and bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) pairs with u < v, lexicographically sorted."""
        out = []
        for u in range(self.n):
            rest = self.adj[u] >> (u + 1) << (u + 1)
            out.extend((u, w) for w in _bits(rest))
        return out

    def non_edges(self) -> list[tuple[int, int]]:
        full = (1 << self.n) - 1
        out = []
        for u in range(self.n):
            missing = full & ~self.adj[u] & ~(1 << u)
            missing = missing >> (u + 1) << (u + 1)
            out.extend((u, w) for w in _bits(missing))
        return out

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = 1
        frontier = 1
        while frontier:
            grown = seen
            for v in _bits(frontier):
                grown |= self.adj[v]
            frontier = grown & ~seen
            seen = grown
        return seen == (1 << self.n) - 1

    def validate(self) -> "Graph":
        """Full invariant check: symmetry, no loops, ids in range."""
        full = (1 << self.n) - 1
        for v, a in enumerate(self.adj):
            if a & ~full:
                raise GraphError(f"vertex {v} adjacent to out-of-range vertex")
            if a >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            for u in _bits(a):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")
        return self

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Apply a permutation (perm[old] = new) to the vertex labels."""
        new_adj = [0] * self.n
        for v in range(self.n):
            row = 0
            for u in _bits(self.adj[v]):
                row |= 1 << perm[u]
            new_adj[perm[v]] = row
        return Graph(self.n, tuple(new_adj))

    def __str__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# -- constructors ---------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    adj = [0] * n
    for u, v in edges:
        if u == v:
            raise GraphError(f"loop ({u},{v}) not allowed")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) out of range for order {n}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def from_edge_list_text(text: str) -> Graph:
    """Parse the plain edge-list format: first line "n m", then m "u v" lines."""
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln and not ln.startswith("#")]
    if not lines:
        raise GraphError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphError("first line must be 'n m'")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise GraphError(f"expected {m} edge lines, got {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"bad edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    g = from_edges(n, edges)
    if g.m != m:
        raise GraphError("duplicate edges in edge-list input")
    return g


def to_edge_list_text(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# -- edit operations ------------------------------------------------------


def _drop_vertex(g: Graph, v: int) -> Graph:
    """Remove v and shift all higher ids down by one."""
    low = (1 << v) - 1
    rows = []
    for u in range(g.n):
        if u == v:
            continue
        a = g.adj[u] & ~(1 << v)
        rows.append((a & low) | ((a >> (v + 1)) << v))
    return Graph(g.n - 1, tuple(rows))


def delete_vertex(g: Graph, v: int) -> Graph:
    """Remove vertex v and its edges; higher ids shift down to stay contiguous."""
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for order {g.n}")
    return _drop_vertex(g, v)


def delete_edge(g: Graph, e: tuple[int, int]) -> Graph:
    u, v = e
    if not g.has_edge(u, v):
        raise GraphError(f"edge ({u},{v}) not present")
    adj = list(g.adj)
    adj[u] &= ~(1 << v)
    adj[v] &= ~(1 << u)
    return Graph(g.n, tuple(adj))


def add_edge(g: Graph, e: tuple[int, int]) -> Graph:
    u, v = e
    if u == v:
        raise GraphError("loop requested")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise GraphError(f"edge ({u},{v}) out of range")
    if g.has_edge(u, v):
        raise GraphError(f"edge ({u},{v}) already present")
    adj = list(g.adj)
    adj[u] |= 1 << v
    adj[v] |= 1 << u
    return Graph(g.n, tuple(adj))


def contract_edge(g: Graph, e: tuple[int, int]) -> Graph:
    """Merge the endpoints of e into the smaller id; parallels collapse."""
    u, v = e
    if not g.has_edge(u, v):
        raise GraphError(f"edge ({u},{v}) not present")
    a, b = (u, v) if u < v else (v, u)
    merged = (g.adj[a] | g.adj[b]) & ~(1 << a) & ~(1 << b)
    adj = list(g.adj)
    adj[a] = merged
    for w in range(g.n):
        if w != a and merged >> w & 1:
            adj[w] |= 1 << a
        elif w != a:
            adj[w] &= ~(1 << a)
    adj[b] = 0
    for w in range(g.n):
        adj[w] &= ~(1 << b)
    return _drop_vertex(Graph(g.n, tuple(adj)), b)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    if g1.n + g2.n > MAX_ORDER:
        raise CapacityError(f"combined order {g1.n + g2.n} exceeds {MAX_ORDER}")
    rows = list(g1.adj) + [a << g1.n for a in g2.adj]
    return Graph(g1.n + g2.n, tuple(rows))


def one_point_union(g1: Graph, v1: int, g2: Graph, v2: int) -> Graph:
    """Glue g1 and g2 by identifying v1 with v2."""
    if not 0 <= v1 < g1.n:
        raise GraphError(f"vertex {v1} out of range in first graph")
    if not 0 <= v2 < g2.n:
        raise GraphError(f"vertex {v2} out of range in second graph")
    n = g1.n + g2.n - 1
    if n > MAX_ORDER:
        raise CapacityError(f"combined order {n} exceeds {MAX_ORDER}")
    # g2's vertices other than v2 get ids g1.n, g1.n+1, ... in increasing order
    mapping = {}
    nxt = g1.n
    for w in range(g2.n):
        if w == v2:
            mapping[w] = v1
        else:
            mapping[w] = nxt
            nxt += 1
    rows = list(g1.adj) + [0] * (g2.n - 1)
    for w in range(g2.n):
        for x in _bits(g2.adj[w]):
            rows[mapping[w]] |= 1 << mapping[x]
    return Graph(n, tuple(rows))


def vertex_splits(g: Graph, v: int, include_overlaps: bool = True) -> list[Graph]:
    """All ways to split v into an adjacent pair a, b covering v's neighborhood.

    Every neighbor of v is assigned to a only, b only, or both; with
    include_overlaps=False only the two-block partitions (no 'both') are kept.
    Results are deduplicated up to isomorphism and sorted by canonical key.
    Contracting the new edge in any returned graph recovers g.
    """
    from . import canon  # deferred: canon builds on this module

    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for order {g.n}")
    if g.n + 1 > MAX_ORDER:
        raise CapacityError("split would exceed the order cap")
    nbrs = g.neighbors(v)
    b_id = g.n  # new vertex; v keeps its id and plays the role of a
    seen: dict[str, Graph] = {}
    for assign in _covers(len(nbrs), include_overlaps):
        a_mask = 0
        b_mask = 0
        for w, where in zip(nbrs, assign):
            if where != 1:  # 0 = a only, 2 = both
                a_mask |= 1 << w
            if where != 0:  # 1 = b only, 2 = both
                b_mask |= 1 << w
        rows = [a & ~(1 << v) for a in g.adj]
        rows.append(0)
        rows[v] = a_mask | (1 << b_id)
        rows[b_id] = b_mask | (1 << v)
        for w in _bits(a_mask):
            rows[w] |= 1 << v
        for w in _bits(b_mask):
            rows[w] |= 1 << b_id
        split = Graph(g.n + 1, tuple(rows))
        key = canon.canonical_key(split)
        if key not in seen:
            seen[key] = split
    return [seen[k] for k in sorted(seen)]


def _covers(d: int, include_overlaps: bool) -> Iterator[tuple[int, ...]]:
    """Assignments of d neighbors to {a only, b only, both}, a/b swap deduped."""
    choices = (0, 1, 2) if include_overlaps else (0, 1)
    out: set[tuple[int, ...]] = set()
    swap = {0: 1, 1: 0, 2: 2}

    def rec(prefix: tuple[int, ...]) -> None:
        if len(prefix) == d:
            mirrored = tuple(swap[x] for x in prefix)
            out.add(min(prefix, mirrored))
            return
        for c in choices:
            rec(prefix + (c,))

    rec(())
    return iter(sorted(out))
