"""Shared undirected-graph and matching containers plus the edge-list format."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Graph", "Matching", "write_edge_list", "read_edge_list"]


def _normalize_edges(edges, vertex_count: int | None) -> frozenset[tuple[int, int]]:
    out = set()
    for e in edges:
        i, j = int(e[0]), int(e[1])
        if i == j:
            raise ValueError(f"self-loop at vertex {i}")
        if i > j:
            i, j = j, i
        if i < 0 or (vertex_count is not None and j >= vertex_count):
            raise ValueError(f"edge ({i}, {j}) out of range")
        out.add((i, j))
    return frozenset(out)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..vertex_count-1."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.vertex_count < 1:
            raise ValueError("vertex_count must be >= 1")
        object.__setattr__(self, "edges", _normalize_edges(self.edges, self.vertex_count))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for i, j in self.sorted_edges():
            adj[i].append(j)
            adj[j].append(i)
        return adj


@dataclass(frozen=True)
class Matching:
    """A set of pairwise vertex-disjoint edges."""

    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        norm = _normalize_edges(self.edges, None)
        seen: set[int] = set()
        for i, j in norm:
            if i in seen or j in seen:
                raise ValueError(f"matching reuses a vertex in edge ({i}, {j})")
            seen.add(i)
            seen.add(j)
        object.__setattr__(self, "edges", norm)

    def __len__(self) -> int:
        return len(self.edges)

    def vertices(self) -> set[int]:
        return {v for e in self.edges for v in e}

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    @classmethod
    def empty(cls) -> "Matching":
        return cls(frozenset())


def write_edge_list(graph: Graph, path) -> None:
    """Text format: first line "n m", then one "i j" line per edge, 0-based."""
    lines = [f"{graph.vertex_count} {graph.edge_count}"]
    lines.extend(f"{i} {j}" for i, j in graph.sorted_edges())
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_edge_list(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError("edge list must start with 'n m'")
        n, m = int(header[0]), int(header[1])
        edges = []
        for _ in range(m):
            parts = fh.readline().split()
            if len(parts) != 2:
                raise ValueError("malformed edge line")
            edges.append((int(parts[0]), int(parts[1])))
    return Graph(n, frozenset(edges))
