"""Canonical labeling, isomorphism testing, and exhaustive graph enumeration.

Canonical form: equitable partition refinement plus individualize-and-refine
backtracking, taking the lexicographically least relabeled adjacency rows over
all leaves.  Automorphisms discovered from equal-encoding leaves prune sibling
branches, which keeps highly symmetric graphs (complete, empty) cheap.

Enumeration: canonical augmentation.  Each representative of order n-1 is
extended by one vertex with every admissible neighborhood; a child is kept
only when the new vertex lies in the automorphism orbit of the child's
canonical deletion vertex, so every isomorphism class of order n is emitted
from exactly one parent and partitions by parent are independently mergeable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

from . import graph6
from .graphs import CapacityError, Graph, _bits

MAX_ENUM_ORDER = 10


@dataclass(frozen=True, slots=True)
class CanonicalForm:
    """Total-ordering token: graph6 of the canonically relabeled graph."""

    key: str

    def graph(self) -> Graph:
        return graph6.decode(self.key)


# -- partition refinement ---------------------------------------------------


def _refine(adj: Sequence[int], cells: list[int]) -> list[int]:
    """Coarsest equitable refinement of an ordered partition (cells = bitmasks).

    Fragment order within a split is by ascending neighbor count, so the final
    cell order depends only on the isomorphism type and the incoming order.
    """
    cells = [c for c in cells if c]
    work = list(cells)
    while work:
        splitter = work.pop()
        out = []
        for cell in cells:
            if not cell & (cell - 1):  # singleton
                out.append(cell)
                continue
            buckets: dict[int, int] = {}
            rest = cell
            while rest:
                low = rest & -rest
                rest ^= low
                k = (adj[low.bit_length() - 1] & splitter).bit_count()
                buckets[k] = buckets.get(k, 0) | low
            if len(buckets) == 1:
                out.append(cell)
            else:
                frags = [buckets[k] for k in sorted(buckets)]
                out.extend(frags)
                work.extend(frags)
        cells = out
    return cells


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def same(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)


def _search(
    n: int, adj: Sequence[int], initial_cells: list[int]
) -> tuple[tuple[int, ...], tuple[int, ...], list[tuple[int, ...]]]:
    """Minimize the relabeled adjacency rows over refinement-compatible labelings.

    Returns (best_rows, best_perm, automorphisms) where best_perm[old] = new
    and automorphisms are genuine graph automorphisms discovered at leaves
    (not necessarily the full group).
    """
    auts: list[tuple[int, ...]] = []
    best_rows: Optional[tuple[int, ...]] = None
    best_perm: Optional[tuple[int, ...]] = None
    path: list[int] = []

    def leaf(cells: list[int]) -> None:
        nonlocal best_rows, best_perm
        perm = [0] * n
        for pos, cell in enumerate(cells):
            perm[cell.bit_length() - 1] = pos
        rows = [0] * n
        for v in range(n):
            row = 0
            rest = adj[v]
            while rest:
                low = rest & -rest
                rest ^= low
                row |= 1 << perm[low.bit_length() - 1]
            rows[perm[v]] = row
        enc = tuple(rows)
        if best_rows is None or enc < best_rows:
            best_rows = enc
            best_perm = tuple(perm)
        elif enc == best_rows and tuple(perm) != best_perm:
            inv = [0] * n
            for v, p in enumerate(best_perm):
                inv[p] = v
            auts.append(tuple(inv[perm[v]] for v in range(n)))

    def descend(cells: list[int]) -> None:
        target = -1
        for i, cell in enumerate(cells):
            if cell & (cell - 1):
                target = i
                break
        if target < 0:
            leaf(cells)
            return
        cell = cells[target]
        tried: list[int] = []
        uf: Optional[_UnionFind] = None
        uf_gen_count = -1
        rest = cell
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            if tried:
                if len(auts) != uf_gen_count:
                    uf_gen_count = len(auts)
                    uf = _UnionFind(n)
                    for a in auts:
                        if all(a[x] == x for x in path):
                            for w in range(n):
                                uf.union(w, a[w])
                if uf is not None and any(uf.same(v, u) for u in tried):
                    continue
            tried.append(v)
            path.append(v)
            split = cells[:target] + [low, cell ^ low] + cells[target + 1 :]
            descend(_refine(adj, split))
            path.pop()

    descend(_refine(adj, initial_cells))
    assert best_rows is not None and best_perm is not None
    return best_rows, best_perm, auts


def _search_full(g: Graph):
    if g.n == 0:
        return (), (), []
    return _search(g.n, g.adj, [(1 << g.n) - 1])


def _marked_rows(g: Graph, v: int) -> tuple[int, ...]:
    """Canonical rows of g with vertex v individualized (colored) first."""
    full = (1 << g.n) - 1
    rows, _, _ = _search(g.n, g.adj, [1 << v, full ^ (1 << v)])
    return rows


# -- public surface ----------------------------------------------------------


def canonical_graph(g: Graph) -> Graph:
    rows, _, _ = _search_full(g)
    return Graph(g.n, tuple(rows))


def canonical_key(g: Graph) -> str:
    return graph6.encode(canonical_graph(g))


def canonical_form(g: Graph) -> CanonicalForm:
    return CanonicalForm(canonical_key(g))


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n or g1.m != g2.m:
        return False
    if g1.degree_sequence() != g2.degree_sequence():
        return False
    rows1, _, _ = _search_full(g1)
    rows2, _, _ = _search_full(g2)
    return rows1 == rows2


def automorphism_orbits(g: Graph) -> _UnionFind:
    """Vertex orbits under the automorphisms found during canonization.

    May be finer than the true orbit partition; callers must treat merges as
    certain and separations as unknown.
    """
    _, _, auts = _search_full(g)
    uf = _UnionFind(g.n)
    for a in auts:
        for v in range(g.n):
            uf.union(v, a[v])
    return uf


# -- canonical augmentation enumeration --------------------------------------


def _extend(g: Graph, mask: int) -> Graph:
    x = g.n
    rows = list(g.adj)
    rows.append(mask)
    for v in _bits(mask):
        rows[v] |= 1 << x
    return Graph(g.n + 1, tuple(rows))


def _subset_orbit_reps(n: int, auts: list[tuple[int, ...]]) -> list[int]:
    """One neighborhood mask per orbit under the (partial) automorphism group."""
    total = 1 << n
    if not auts:
        return list(range(total))
    uf = _UnionFind(total)
    for a in auts:
        for mask in range(total):
            image = 0
            rest = mask
            while rest:
                low = rest & -rest
                rest ^= low
                image |= 1 << a[low.bit_length() - 1]
            uf.union(mask, image)
    reps = []
    seen = set()
    for mask in range(total):
        root = uf.find(mask)
        if root not in seen:
            seen.add(root)
            reps.append(mask)
    return reps


def _connected_by(auts: list[tuple[int, ...]], n: int, a: int, b: int) -> bool:
    if not auts:
        return False
    uf = _UnionFind(n)
    for p in auts:
        for v in range(n):
            uf.union(v, p[v])
    return uf.same(a, b)


def _expand_parent(parent: Graph) -> list[tuple[int, str]]:
    """Accepted children of one parent as (size, canonical graph6) pairs."""
    n = parent.n
    _, _, parent_auts = _search_full(parent)
    seen: set[str] = set()
    out: list[tuple[int, str]] = []
    x = n  # id of the added vertex
    for mask in _subset_orbit_reps(n, parent_auts):
        child = _extend(parent, mask)
        rows, perm, auts = _search(child.n, child.adj, [(1 << child.n) - 1])
        w = perm.index(child.n - 1)  # canonical deletion vertex
        ok = w == x
        if not ok and child.adj[x].bit_count() == child.adj[w].bit_count():
            ok = _connected_by(auts, child.n, x, w) or _marked_rows(
                child, x
            ) == _marked_rows(child, w)
        if ok:
            key = graph6.encode(Graph(child.n, rows))
            if key not in seen:
                seen.add(key)
                out.append((child.m, key))
    return out


def _expand_chunk(parent_keys: list[str]) -> list[tuple[int, str]]:
    out: list[tuple[int, str]] = []
    for key in parent_keys:
        out.extend(_expand_parent(graph6.decode(key)))
    return out


# cache of fully unfiltered levels, keyed by order; shared within a process
_LEVEL_CACHE: dict[int, list[tuple[int, str]]] = {1: [(0, graph6.encode(empty := Graph(1, (0,))))]}


def _next_level(
    parents: list[str], workers: int = 1
) -> list[tuple[int, str]]:
    if workers > 1 and len(parents) > 2 * workers:
        import multiprocessing as mp

        chunks = [parents[i::workers] for i in range(workers)]
        with mp.get_context("fork").Pool(workers) as pool:
            parts = pool.map(_expand_chunk, chunks)
        level = [item for part in parts for item in part]
    else:
        level = _expand_chunk(parents)
    level.sort()
    return level


def enumerate_levels(
    max_order: int,
    prune: Optional[Callable[[Graph], bool]] = None,
    workers: int = 1,
) -> Iterator[tuple[int, list[Graph]]]:
    """Yield (order, representatives) for orders 1..max_order.

    Representatives are canonically labeled, sorted by (size, canonical key).
    `prune`, when given, must be hereditary under taking subgraphs: graphs
    failing it are neither emitted nor expanded, which is exactly the
    branch-pruning this enables.
    """
    if max_order > MAX_ENUM_ORDER:
        raise CapacityError(f"enumeration bounded at order {MAX_ENUM_ORDER}")
    if max_order < 1:
        return
    level_keys = [key for _, key in _LEVEL_CACHE[1]]
    level_graphs = [graph6.decode(k) for k in level_keys]
    if prune is not None:
        level_graphs = [g for g in level_graphs if prune(g)]
        level_keys = [graph6.encode(g) for g in level_graphs]
    yield 1, level_graphs
    for order in range(2, max_order + 1):
        if prune is None and order in _LEVEL_CACHE:
            pairs = _LEVEL_CACHE[order]
        else:
            pairs = _next_level(level_keys, workers=workers)
            if prune is None:
                _LEVEL_CACHE[order] = pairs
        level_graphs = [graph6.decode(key) for _, key in pairs]
        if prune is not None:
            level_graphs = [g for g in level_graphs if prune(g)]
        level_keys = [graph6.encode(g) for g in level_graphs]
        yield order, level_graphs


def enumerate_graphs(
    max_order: int,
    prune: Optional[Callable[[Graph], bool]] = None,
    workers: int = 1,
    start: Optional[tuple[int, int]] = None,
) -> Iterator[Graph]:
    """Stream one representative per isomorphism class, orders 1..max_order.

    Deterministic order: (order, size, canonical key).  `start=(order, index)`
    resumes the stream from that checkpoint position.
    """
    for order, graphs in enumerate_levels(max_order, prune=prune, workers=workers):
        if start is not None and order < start[0]:
            continue
        begin = start[1] if start is not None and order == start[0] else 0
        for g in graphs[begin:]:
            yield g


def per_order_counts(max_order: int, workers: int = 1) -> dict[int, int]:
    return {
        order: len(graphs)
        for order, graphs in enumerate_levels(max_order, workers=workers)
    }
