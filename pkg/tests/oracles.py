"""Independent brute-force oracles used to check the library.

Everything here is deliberately naive (full recomputation, exhaustive
enumeration) and shares no code with the package under test beyond the
Graph container.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from atc.graph import Graph, UNREACHABLE


def adj_of(h) -> dict[int, set[int]]:
    """Plain dict-of-sets adjacency from a Graph or Subgraph."""
    if isinstance(h, Graph):
        return {v: set(h.adj[v]) for v in range(h.n)}
    return {v: set(ns) for v, ns in h.adj.items()}


def oracle_supports(adj: dict[int, set[int]]) -> dict[tuple[int, int], int]:
    """Triangle counts per edge by full triple enumeration."""
    sup = {}
    vs = sorted(adj)
    for u in vs:
        for v in adj[u]:
            if u >= v:
                continue
            count = 0
            for w in vs:
                if w != u and w != v and w in adj[u] and w in adj[v]:
                    count += 1
            sup[(u, v)] = count
    return sup


def _prune_at(adj: dict[int, set[int]], k: int) -> set[tuple[int, int]]:
    """Edges surviving repeated removal of edges in < k-2 triangles."""
    adj = {v: set(ns) for v, ns in adj.items()}
    changed = True
    while changed:
        changed = False
        for u in sorted(adj):
            for v in sorted(adj[u]):
                if u < v and len(adj[u] & adj[v]) < k - 2:
                    adj[u].discard(v)
                    adj[v].discard(u)
                    changed = True
    return {(u, v) for u in adj for v in adj[u] if u < v}


def oracle_truss(adj: dict[int, set[int]]) -> dict[tuple[int, int], int]:
    """tau(e) = max k whose pruning fixpoint still contains e."""
    tau = {(u, v): 2 for u in adj for v in adj[u] if u < v}
    k = 3
    while True:
        alive = _prune_at(adj, k)
        if not alive:
            return tau
        for e in alive:
            tau[e] = k
        k += 1


def oracle_all_pairs(adj: dict[int, set[int]]):
    """Floyd-Warshall hop distances; UNREACHABLE for disconnected pairs."""
    vs = sorted(adj)
    dist = {(a, b): (0 if a == b else UNREACHABLE) for a in vs for b in vs}
    for u in vs:
        for v in adj[u]:
            dist[(u, v)] = 1
    for w in vs:
        for a in vs:
            daw = dist[(a, w)]
            if daw == UNREACHABLE:
                continue
            for b in vs:
                alt = daw + dist[(w, b)]
                if alt < dist[(a, b)]:
                    dist[(a, b)] = alt
    return dist


def oracle_query_distance(adj, query_nodes):
    """Per-vertex max distance to the query nodes via Floyd-Warshall."""
    ap = oracle_all_pairs(adj)
    return {v: max(ap[(v, q)] for q in query_nodes) for v in adj}


def oracle_maintain(adj: dict[int, set[int]], query_nodes, k: int, d: int):
    """Naive fixpoint: full support/distance recomputation every round.

    Returns (adjacency, valid, reason) mirroring maintain_kd_truss.
    """
    adj = {v: set(ns) for v, ns in adj.items()}
    qs = sorted(set(query_nodes))
    while True:
        changed = False
        # step (i): peel low-support edges all the way to a fixpoint
        while True:
            weak = [e for e, s in oracle_supports(adj).items() if s < k - 2]
            if not weak:
                break
            for u, v in weak:
                adj[u].discard(v)
                adj[v].discard(u)
            changed = True
        for q in qs:
            if q not in adj:
                return adj, False, "query_node_pruned"
        dist = oracle_query_distance(adj, qs)
        if any(dist[q] > d for q in qs):
            if any(dist[q] == UNREACHABLE for q in qs):
                return adj, False, "query_nodes_disconnected"
            return adj, False, "query_node_pruned"
        far = [v for v, dv in dist.items() if dv > d]
        for v in far:
            for u in adj.pop(v):
                adj[u].discard(v)
            changed = True
        if not changed:
            return adj, True, None


def oracle_is_kd_truss(adj: dict[int, set[int]], query_nodes, k: int, d: int) -> bool:
    if not adj:
        return False
    qs = set(query_nodes)
    if not qs <= set(adj):
        return False
    if any(s < k - 2 for s in oracle_supports(adj).values()):
        return False
    ap = oracle_all_pairs(adj)
    vs = sorted(adj)
    if any(ap[(vs[0], v)] == UNREACHABLE for v in vs):
        return False
    return all(max(ap[(v, q)] for q in qs) <= d for v in vs)


def oracle_score(g: Graph, vertices, query_attrs) -> Fraction:
    vs = set(vertices)
    if not vs:
        return Fraction(0)
    total = 0
    for w in query_attrs:
        c = sum(1 for v in vs if w in g.attrs[v])
        total += c * c
    return Fraction(total, len(vs))


def brute_force_atc_alt(g: Graph, q):
    """Second, independently structured exhaustive optimum.

    Iterates bitmasks over non-query vertices in descending numeric order
    and applies the tie-break by explicit comparison instead of tuple keys.
    Returns (vertex tuple, score) or None.
    """
    qs = sorted(q.query_nodes)
    rest = sorted(v for v in range(g.n) if v not in q.query_nodes)
    best_vs = None
    best_score = None
    base = adj_of(g)
    for mask in range((1 << len(rest)) - 1, -1, -1):
        vs = tuple(sorted(qs + [rest[i] for i in range(len(rest))
                                if mask >> i & 1]))
        keep = set(vs)
        adj = {v: base[v] & keep for v in vs}
        if not oracle_is_kd_truss(adj, qs, q.k, q.d):
            continue
        score = oracle_score(g, vs, q.query_attrs)
        if best_score is None:
            best_vs, best_score = vs, score
            continue
        if score > best_score:
            better = True
        elif score < best_score:
            better = False
        elif len(vs) != len(best_vs):
            better = len(vs) < len(best_vs)
        else:
            better = vs < best_vs
        if better:
            best_vs, best_score = vs, score
    if best_vs is None:
        return None
    return best_vs, best_score


def oracle_steiner_opt(g: Graph, weight, terminals) -> Fraction:
    """Exhaustive optimal Steiner weight: min spanning-tree weight over all
    connected vertex supersets of the terminals (valid since an optimal
    Steiner tree is an MST of its own vertex set)."""
    terminals = sorted(set(terminals))
    rest = [v for v in range(g.n) if v not in terminals]
    best = None
    base = adj_of(g)
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            vs = set(terminals) | set(extra)
            edges = [(u, v) for u in vs for v in base[u] & vs if u < v]
            # Kruskal
            comp = {v: v for v in vs}

            def find(x):
                while comp[x] != x:
                    comp[x] = comp[comp[x]]
                    x = comp[x]
                return x

            total = Fraction(0)
            joined = 0
            for u, v in sorted(edges, key=lambda e: (weight(*e), e)):
                ru, rv = find(u), find(v)
                if ru != rv:
                    comp[ru] = rv
                    total += weight(u, v)
                    joined += 1
            if joined != len(vs) - 1:
                continue  # disconnected superset
            if best is None or total < best:
                best = total
    return best


def result_adj(res) -> dict[int, set[int]]:
    """Adjacency of a SearchResult's community (its own edge set, which may
    be sparser than the induced subgraph after peeling)."""
    adj = {v: set() for v in res.vertices}
    for u, v in res.edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def rand_graph(rng, n, p, n_attrs=0, attr_p=0.4) -> Graph:
    """Random attributed graph on external ids 0..n-1."""
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < p]
    g = Graph.from_edges(edges, extra_vertices=range(n))
    if n_attrs:
        labels = [f"w{i}" for i in range(n_attrs)]
        table = {}
        for v in range(n):
            table[v] = {lab for lab in labels if rng.random() < attr_p}
        g.attach_attributes(table)
    return g
