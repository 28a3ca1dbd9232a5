"""Maximum-cardinality matching in general graphs.

``max_matching`` runs the blossom algorithm: grow alternating trees from free
vertices, contract odd cycles via a base array, augment when a free vertex is
reached.  One search per free vertex gives the O(V*E) variant, which is plenty
at the graph sizes this package works with.  A greedy maximal matching seeds
the search and also stands alone as the classical 2-approximation.
``max_matching_brute`` is the oracle: exact maximum by dynamic programming
over vertex bitmasks, limited to 14 vertices.
"""

from __future__ import annotations

from collections import deque

from .graphs import Graph, Matching

__all__ = ["max_matching", "greedy_matching", "max_matching_brute", "BRUTE_MAX_VERTICES"]

BRUTE_MAX_VERTICES = 14


def greedy_matching(g: Graph) -> Matching:
    """Maximal matching by scanning edges in sorted order; at least half optimal."""
    taken = [False] * g.vertex_count
    edges = []
    for i, j in g.sorted_edges():
        if not taken[i] and not taken[j]:
            taken[i] = taken[j] = True
            edges.append((i, j))
    return Matching(frozenset(edges))


def _lca(base: list[int], parent: list[int], match: list[int], a: int, b: int) -> int:
    used = set()
    v = a
    while True:
        v = base[v]
        used.add(v)
        if match[v] == -1:
            break
        v = parent[match[v]]
    v = b
    while base[v] not in used:
        v = parent[match[base[v]]]
    return base[v]


def _mark_path(
    base: list[int],
    parent: list[int],
    match: list[int],
    in_blossom: list[bool],
    v: int,
    ancestor: int,
    child: int,
) -> None:
    while base[v] != ancestor:
        in_blossom[base[v]] = True
        in_blossom[base[match[v]]] = True
        parent[v] = child
        child = match[v]
        v = parent[match[v]]


def _find_augmenting(adj: list[list[int]], match: list[int], root: int) -> int:
    """BFS an alternating tree from ``root``; return a free endpoint or -1."""
    n = len(adj)
    used = [False] * n
    parent = [-1] * n
    base = list(range(n))
    used[root] = True
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and parent[match[to]] != -1):
                # odd cycle: contract the blossom down to the common ancestor
                ancestor = _lca(base, parent, match, v, to)
                in_blossom = [False] * n
                _mark_path(base, parent, match, in_blossom, v, ancestor, to)
                _mark_path(base, parent, match, in_blossom, to, ancestor, v)
                for i in range(n):
                    if in_blossom[base[i]]:
                        base[i] = ancestor
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if match[to] == -1:
                    # free vertex reached: flip the path back to the root
                    while to != -1:
                        prev = parent[to]
                        nxt = match[prev]
                        match[to] = prev
                        match[prev] = to
                        to = nxt
                    return 1
                used[match[to]] = True
                queue.append(match[to])
    return 0


def max_matching(g: Graph) -> Matching:
    """Maximum-cardinality matching via blossom contraction.

    Deterministic: adjacency lists are sorted and free vertices are processed
    in index order, so repeated runs return the same edge set.
    """
    adj = g.adjacency()
    match = [-1] * g.vertex_count
    for i, j in g.sorted_edges():
        if match[i] == -1 and match[j] == -1:
            match[i] = j
            match[j] = i
    for v in range(g.vertex_count):
        if match[v] == -1:
            _find_augmenting(adj, match, v)
    edges = frozenset((v, match[v]) for v in range(g.vertex_count) if match[v] > v)
    return Matching(edges)


def max_matching_brute(g: Graph) -> Matching:
    """Exhaustive maximum matching by bitmask dynamic programming, |V| <= 14."""
    n = g.vertex_count
    if n > BRUTE_MAX_VERTICES:
        raise ValueError(f"brute-force matcher limited to {BRUTE_MAX_VERTICES} vertices, got {n}")
    nbr_mask = [0] * n
    for i, j in g.edges:
        nbr_mask[i] |= 1 << j
        nbr_mask[j] |= 1 << i

    size = [0] * (1 << n)
    choice: list[tuple[int, int] | None] = [None] * (1 << n)
    for mask in range(1, 1 << n):
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        best = size[rest]
        pick = None
        cand = nbr_mask[v] & rest
        while cand:
            u = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            s = 1 + size[rest & ~(1 << u)]
            if s > best:
                best = s
                pick = (v, u)
        size[mask] = best
        choice[mask] = pick

    edges = []
    mask = (1 << n) - 1
    while mask:
        pick = choice[mask]
        if pick is None:
            v = (mask & -mask).bit_length() - 1
            mask &= ~(1 << v)
        else:
            v, u = pick
            edges.append((v, u))
            mask &= ~((1 << v) | (1 << u))
    return Matching(frozenset(edges))
