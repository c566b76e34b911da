"""The protocol communication graph and the predicates the theorem needs."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .system import PortRef, QueryError, System


def vertex_key(v):
    if isinstance(v, PortRef):
        return (1, v.component, v.port)
    return (0, v, "")


@dataclass(frozen=True)
class CommGraph:
    """Undirected graph over components and ports.

    ``edges`` holds each edge once as an ordered pair ``(u, v)`` with
    ``vertex_key(u) < vertex_key(v)``, sorted.
    """

    vertices: tuple
    edges: tuple

    def port_edges(self) -> list:
        return [(u, v) for u, v in self.edges if isinstance(u, PortRef) and isinstance(v, PortRef)]

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return {v: sorted(ns, key=vertex_key) for v, ns in adj.items()}

    def neighbors(self, v) -> list:
        return self.adjacency[v]


def _edge(u, v):
    return (u, v) if vertex_key(u) <= vertex_key(v) else (v, u)


def comm_graph(system: System) -> CommGraph:
    vertices = sorted(list(system.components) + list(system.port_refs), key=vertex_key)
    edges = set()
    for p in system.port_refs:
        edges.add(_edge(p.component, p))
    owner = system.owner
    for alpha in system.interactions:
        touched = sorted({owner[a] for a in alpha if a in owner}, key=vertex_key)
        for k, p in enumerate(touched):
            for q in touched[k + 1:]:
                edges.add(_edge(p, q))
    ordered = sorted(edges, key=lambda e: (vertex_key(e[0]), vertex_key(e[1])))
    return CommGraph(tuple(vertices), tuple(ordered))


def port_connectivity(graph: CommGraph, p: PortRef) -> int:
    p = PortRef(*p)
    if p not in graph.vertices:
        raise QueryError(f"unknown port {p}")
    return sum(1 for v in graph.neighbors(p) if isinstance(v, PortRef))


def is_uniquely_connected(graph: CommGraph, p: PortRef) -> bool:
    return port_connectivity(graph, p) < 2


def is_tree_like(graph: CommGraph) -> bool:
    """Connected and acyclic."""
    n = len(graph.vertices)
    if n == 0 or len(graph.edges) != n - 1:
        return False
    parent = {v: v for v in graph.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in graph.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True
