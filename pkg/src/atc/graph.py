"""Undirected attributed graphs: loading, projections, and BFS distances.

External vertex ids (arbitrary non-negative integers) are remapped to dense
internal ids 0..n-1 in first-seen order; attribute labels are interned to
dense attribute ids the same way.  All algorithms work on internal ids.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

UNREACHABLE = float("inf")


class GraphFormatError(ValueError):
    """Malformed edge-list or attribute file."""


class UnknownVertexError(KeyError):
    pass


class UnknownAttributeError(KeyError):
    pass


class Graph:
    """Immutable simple undirected graph with per-vertex attribute sets."""

    def __init__(self, adjacency: list[list[int]], ext_ids: list[int]):
        self.adj = [sorted(ns) for ns in adjacency]
        self.n = len(adjacency)
        self.m = sum(len(ns) for ns in self.adj) // 2
        self.ext_ids = list(ext_ids)
        self.ext_to_int = {e: i for i, e in enumerate(self.ext_ids)}
        # attribute state; empty until attach_attributes
        self.attr_labels: list[str] = []
        self.label_to_id: dict[str, int] = {}
        self.attrs: list[tuple[int, ...]] = [() for _ in range(self.n)]
        self.postings: list[list[int]] = []
        self.dropped_duplicates = 0
        self.dropped_self_loops = 0

    # -- construction ------------------------------------------------------

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]],
                   extra_vertices: Iterable[int] = ()) -> "Graph":
        """Build from external-id edge pairs; dedups and drops self-loops."""
        ext_ids: list[int] = []
        ext_to_int: dict[int, int] = {}

        def intern(x: int) -> int:
            i = ext_to_int.get(x)
            if i is None:
                i = len(ext_ids)
                ext_to_int[x] = i
                ext_ids.append(x)
            return i

        seen: set[tuple[int, int]] = set()
        dup = loops = 0
        pairs: list[tuple[int, int]] = []
        for a, b in edges:
            u, v = intern(a), intern(b)
            if u == v:
                loops += 1
                continue
            key = (u, v) if u < v else (v, u)
            if key in seen:
                dup += 1
                continue
            seen.add(key)
            pairs.append(key)
        for x in extra_vertices:
            intern(x)
        adjacency: list[list[int]] = [[] for _ in range(len(ext_ids))]
        for u, v in pairs:
            adjacency[u].append(v)
            adjacency[v].append(u)
        g = cls(adjacency, ext_ids)
        g.dropped_duplicates = dup
        g.dropped_self_loops = loops
        return g

    def attach_attributes(self, table: dict[int, Iterable[str]]) -> None:
        """Attach attribute labels keyed by external vertex id."""
        label_to_id: dict[str, int] = {}
        labels: list[str] = []
        per_vertex: list[set[int]] = [set() for _ in range(self.n)]
        for ext, toks in table.items():
            if ext not in self.ext_to_int:
                raise UnknownVertexError(ext)
            v = self.ext_to_int[ext]
            for t in toks:
                if not t:
                    raise GraphFormatError(f"empty attribute label for vertex {ext}")
                w = label_to_id.get(t)
                if w is None:
                    w = len(labels)
                    label_to_id[t] = w
                    labels.append(t)
                per_vertex[v].add(w)
        self.attr_labels = labels
        self.label_to_id = label_to_id
        self.attrs = [tuple(sorted(s)) for s in per_vertex]
        self.postings = [[] for _ in labels]
        for v in range(self.n):
            for w in self.attrs[v]:
                self.postings[w].append(v)

    # -- accessors ---------------------------------------------------------

    def neighbors(self, v: int) -> list[int]:
        return self.adj[v]

    def attr_ids(self, v: int) -> tuple[int, ...]:
        return self.attrs[v]

    def attr_id(self, label: str) -> int:
        try:
            return self.label_to_id[label]
        except KeyError:
            raise UnknownAttributeError(label) from None

    def vertices_with(self, w: int) -> list[int]:
        if not (0 <= w < len(self.postings)):
            raise UnknownAttributeError(w)
        return self.postings[w]

    def total_attr_count(self) -> int:
        return sum(len(a) for a in self.attrs)

    def internal(self, ext: int) -> int:
        try:
            return self.ext_to_int[ext]
        except KeyError:
            raise UnknownVertexError(ext) from None

    def edge_iter(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)


def load_edge_list(path: str) -> Graph:
    """Load whitespace-separated "u v" lines; '#' starts a comment line."""
    pairs: list[tuple[int, int]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            toks = line.split()
            if len(toks) != 2:
                raise GraphFormatError(f"{path}:{lineno}: expected two tokens, got {len(toks)}")
            try:
                a, b = int(toks[0]), int(toks[1])
            except ValueError:
                raise GraphFormatError(f"{path}:{lineno}: non-integer vertex id") from None
            if a < 0 or b < 0:
                raise GraphFormatError(f"{path}:{lineno}: negative vertex id")
            pairs.append((a, b))
    if not pairs:
        raise GraphFormatError(f"{path}: no edges found")
    return Graph.from_edges(pairs)


def load_attributes(path: str, g: Graph) -> Graph:
    """Load TAB-separated "v<TAB>label..." lines onto g; repeated lines union."""
    table: dict[int, set[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            toks = line.split("\t")
            try:
                ext = int(toks[0])
            except ValueError:
                raise GraphFormatError(f"{path}:{lineno}: non-integer vertex id") from None
            if ext not in g.ext_to_int:
                raise UnknownVertexError(f"{path}:{lineno}: unknown vertex {ext}")
            for t in toks[1:]:
                if not t:
                    raise GraphFormatError(f"{path}:{lineno}: empty label token")
            table.setdefault(ext, set()).update(toks[1:])
    g.attach_attributes(table)
    return g


@dataclass
class QuerySpec:
    """Query nodes/attributes plus search parameters (internal ids)."""
    query_nodes: frozenset[int]
    query_attrs: frozenset[int] = frozenset()
    k: int = 4
    d: int = 4
    epsilon: Fraction = Fraction(3, 100)
    gamma: Fraction = Fraction(1, 5)
    eta: int = 1000
    k_d_auto: bool = False

    def __post_init__(self):
        if not self.query_nodes:
            raise ValueError("query node set must be non-empty")
        if self.k < 2:
            raise ValueError("k must be >= 2")
        if self.d < 0:
            raise ValueError("d must be >= 0")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be > 0")
        if self.gamma < 0:
            raise ValueError("gamma must be >= 0")
        if self.eta < 1:
            raise ValueError("eta must be >= 1")


class Subgraph:
    """Mutable vertex/edge-induced view over a parent Graph.

    Vertices are the keys of ``adj``; isolated members keep an empty set.
    Single-owner while mutated (peeling); the parent graph is never touched.
    """

    __slots__ = ("parent", "adj", "m")

    def __init__(self, parent: Graph, adj: dict[int, set[int]], m: int):
        self.parent = parent
        self.adj = adj
        self.m = m

    @classmethod
    def induced(cls, parent: Graph, vertices: Iterable[int]) -> "Subgraph":
        vs = set(vertices)
        for v in vs:
            if not (0 <= v < parent.n):
                raise UnknownVertexError(v)
        adj = {v: {u for u in parent.adj[v] if u in vs} for v in vs}
        m = sum(len(s) for s in adj.values()) // 2
        return cls(parent, adj, m)

    @classmethod
    def full(cls, parent: Graph) -> "Subgraph":
        adj = {v: set(parent.adj[v]) for v in range(parent.n)}
        return cls(parent, adj, parent.m)

    @property
    def vertices(self):
        return self.adj.keys()

    def copy(self) -> "Subgraph":
        return Subgraph(self.parent, {v: set(s) for v, s in self.adj.items()}, self.m)

    def has_vertex(self, v: int) -> bool:
        return v in self.adj

    def has_edge(self, u: int, v: int) -> bool:
        return u in self.adj and v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def num_vertices(self) -> int:
        return len(self.adj)

    def num_edges(self) -> int:
        return self.m

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, ns in self.adj.items():
            for v in ns:
                if u < v:
                    yield (u, v)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges())

    def remove_edge(self, u: int, v: int) -> None:
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.m -= 1

    def remove_vertex(self, v: int) -> list[tuple[int, int]]:
        """Delete v and incident edges; returns the removed edges."""
        ns = self.adj.pop(v)
        removed = []
        for u in ns:
            self.adj[u].discard(v)
            removed.append((v, u) if v < u else (u, v))
        self.m -= len(removed)
        return removed


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Subgraph:
    return Subgraph.induced(g, vertices)


def project_on_attribute(g: Graph, w: int) -> Subgraph:
    """Induced subgraph on the vertices carrying attribute w."""
    return Subgraph.induced(g, g.vertices_with(w))


def bfs_distances(adj, source: int) -> dict[int, int]:
    """Hop distances from source; adj maps vertex -> neighbor collection."""
    dist = {source: 0}
    q = deque([source])
    while q:
        v = q.popleft()
        dv = dist[v]
        for u in adj[v]:
            if u not in dist:
                dist[u] = dv + 1
                q.append(u)
    return dist


def query_distance(h: Subgraph, query_nodes: Iterable[int]):
    """Per-vertex max hop distance to the query nodes, plus the graph value.

    Unreachable pairs are encoded as UNREACHABLE.  Returns (dist_map, value).
    """
    qs = list(query_nodes)
    for q in qs:
        if not h.has_vertex(q):
            raise UnknownVertexError(q)
    dist = {v: 0 for v in h.vertices} if qs else {}
    for q in qs:
        d = bfs_distances(h.adj, q)
        for v in h.vertices:
            dv = d.get(v, UNREACHABLE)
            if dv > dist[v]:
                dist[v] = dv
    value = max(dist.values()) if dist else 0
    return dist, value


def graph_query_distance_sets(g: Graph, query_nodes: Iterable[int]):
    """Same as query_distance but over the full parent graph adjacency."""
    qs = list(query_nodes)
    dist = {v: 0 for v in range(g.n)}
    for q in qs:
        d = bfs_distances(g.adj, q)
        for v in range(g.n):
            dv = d.get(v, UNREACHABLE)
            if dv > dist[v]:
                dist[v] = dv
    return dist
