"""Finite simple undirected graphs with a canonical directed-edge indexing.

Nodes are dense 0-based integers.  Every bond {i, k} is stored twice, as the
directed edges (i, k) and (k, i); the directed-edge index enumerates, for each
node i in ascending order, the edges (i, k) with k ascending.  This fixed
layout is what all operator matrices downstream are built on, so Graph values
are immutable after construction.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np


class GraphParseError(ValueError):
    """Malformed graph input; carries the offending line number when known."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class GenerationError(RuntimeError):
    """Random-graph generation exhausted its retry budget."""


# Rejection sampling for connected random graphs gives up after this many draws.
MAX_RANDOM_RETRIES = 200

# Builders refuse graphs beyond this many nodes (binary trees grow fast).
NODE_CAP = 5_000_000


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    ``adjacency[i]`` is the sorted tuple of neighbours of node i.  Validity
    (no self-loops, symmetry, no duplicates) is checked at construction.
    Disconnected graphs are allowed -- they are a distinct validated state,
    flagged by :attr:`connected` -- but every builder in this module produces
    a connected graph.
    """

    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.adjacency)
        for i, nbrs in enumerate(self.adjacency):
            if any(k < 0 or k >= n for k in nbrs):
                raise ValueError(f"node {i}: neighbour index out of range")
            if i in nbrs:
                raise ValueError(f"node {i}: self-loop")
            if len(set(nbrs)) != len(nbrs):
                raise ValueError(f"node {i}: duplicate neighbour")
            if tuple(sorted(nbrs)) != tuple(nbrs):
                raise ValueError(f"node {i}: neighbours not sorted")
            for k in nbrs:
                if i not in self.adjacency[k]:
                    raise ValueError(f"bond ({i},{k}) missing its reverse")

    @classmethod
    def from_edges(cls, node_count, edges):
        """Build a graph from undirected bonds given as (i, j) pairs."""
        nbrs = [set() for _ in range(node_count)]
        for i, j in edges:
            if not (0 <= i < node_count and 0 <= j < node_count):
                raise ValueError(f"bond ({i},{j}) out of range for {node_count} nodes")
            if i == j:
                raise ValueError(f"self-loop at node {i}")
            if j in nbrs[i]:
                raise ValueError(f"duplicate bond ({i},{j})")
            nbrs[i].add(j)
            nbrs[j].add(i)
        return cls(tuple(tuple(sorted(s)) for s in nbrs))

    @property
    def node_count(self):
        return len(self.adjacency)

    @cached_property
    def degrees(self):
        return np.array([len(nbrs) for nbrs in self.adjacency], dtype=np.int64)

    @cached_property
    def directed_edges(self):
        """Canonical (tail, head) list: node-major, then head ascending."""
        return tuple((i, k) for i, nbrs in enumerate(self.adjacency) for k in nbrs)

    @cached_property
    def edge_index(self):
        return {e: idx for idx, e in enumerate(self.directed_edges)}

    @cached_property
    def edge_tails(self):
        return np.array([i for i, _ in self.directed_edges], dtype=np.int64)

    @cached_property
    def edge_heads(self):
        return np.array([k for _, k in self.directed_edges], dtype=np.int64)

    @property
    def directed_edge_count(self):
        """m = sum of degrees = twice the number of bonds."""
        return len(self.directed_edges)

    @cached_property
    def bonds(self):
        return tuple((i, k) for i, k in self.directed_edges if i < k)

    @cached_property
    def connected(self):
        return component_count(self) <= 1

    def __repr__(self):
        return (f"Graph(nodes={self.node_count}, bonds={len(self.bonds)}, "
                f"connected={self.connected})")


def component_labels(g):
    """Per-node component id, assigned in order of first traversal."""
    labels = np.full(g.node_count, -1, dtype=np.int64)
    current = 0
    for start in range(g.node_count):
        if labels[start] >= 0:
            continue
        queue = deque([start])
        labels[start] = current
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if labels[v] < 0:
                    labels[v] = current
                    queue.append(v)
        current += 1
    return labels


def component_count(g):
    if g.node_count == 0:
        return 0
    return int(component_labels(g).max()) + 1


def build_path(n):
    """Path graph on nodes 0..n-1 with bonds {i, i+1}."""
    if n < 2:
        raise ValueError(f"path graph needs at least 2 nodes, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def build_cycle(n):
    """Cycle 0-1-...-(n-1)-0; all degrees 2."""
    if n < 3:
        raise ValueError(f"cycle graph needs at least 3 nodes, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def build_binary_tree(depth):
    """Rooted binary tree filled to the given depth.

    Node count is 2**(depth+1) - 1 with heap indexing (children of i are
    2i+1 and 2i+2).  The root has degree 2, interior nodes degree 3 and
    leaves degree 1.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    n = 2 ** (depth + 1) - 1
    if n > NODE_CAP:
        raise ValueError(f"depth {depth} exceeds the {NODE_CAP}-node cap")
    edges = []
    for i in range(n):
        for child in (2 * i + 1, 2 * i + 2):
            if child < n:
                edges.append((i, child))
    return Graph.from_edges(n, edges)


def build_random(n, p, seed):
    """Erdos-Renyi draw conditioned on connectedness.

    Deterministic for fixed (n, p, seed): attempt t uses the stream seeded by
    (seed, t), and the first connected draw is returned.  Raises
    GenerationError once MAX_RANDOM_RETRIES attempts were rejected.
    """
    if not 0.0 < p <= 1.0:
        raise ValueError(f"bond probability must be in (0, 1], got {p}")
    if n < 1:
        raise ValueError("need at least one node")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for attempt in range(MAX_RANDOM_RETRIES):
        rng = np.random.default_rng((int(seed), attempt))
        draw = rng.random(len(pairs)) < p
        g = Graph.from_edges(n, [e for e, keep in zip(pairs, draw) if keep])
        if g.connected:
            return g
    raise GenerationError(
        f"no connected graph with n={n}, p={p} in {MAX_RANDOM_RETRIES} attempts")


def bfs_distances(g, source):
    """Hop counts from source; -1 marks unreachable nodes."""
    dist = np.full(g.node_count, -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def combinatorial_distance(g, a, b):
    """Length of a shortest edge sequence between two nodes."""
    _check_node(g, a)
    _check_node(g, b)
    d = bfs_distances(g, a)[b]
    if d < 0:
        raise ValueError(f"no path between nodes {a} and {b}")
    return int(d)


def shortest_path(g, a, b):
    """One minimal path from a to b as a node list (BFS parents)."""
    _check_node(g, a)
    _check_node(g, b)
    parent = {a: None}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            break
        for v in g.adjacency[u]:
            if v not in parent:
                parent[v] = u
                queue.append(v)
    if b not in parent:
        raise ValueError(f"no path between nodes {a} and {b}")
    path = [b]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


def induced_subgraph(g, nodes):
    """Subgraph on the given nodes with every bond of g between them.

    Returns (subgraph, kept) where kept[new_index] = old_index; the node set
    is deduplicated and sorted, so the new indexing is canonical.
    """
    kept = tuple(sorted(set(nodes)))
    if not kept:
        raise ValueError("node set must be nonempty")
    for v in kept:
        _check_node(g, v)
    new_index = {old: new for new, old in enumerate(kept)}
    edges = [(new_index[i], new_index[k])
             for i, k in g.bonds if i in new_index and k in new_index]
    return Graph.from_edges(len(kept), edges), kept


def _check_node(g, v):
    if not 0 <= v < g.node_count:
        raise ValueError(f"node index {v} out of range (n={g.node_count})")


# ---------------------------------------------------------------------------
# File formats.  Edge-list text: one "i j" pair per line, '#' comments,
# 0-based indices, duplicates and reversed repeats rejected.  JSON:
# {"nodes": n, "edges": [[i, j], ...]} with the same validation.
# ---------------------------------------------------------------------------

def parse_graph(data):
    """Parse either format (sniffed: JSON starts with '{')."""
    text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_edgelist(text)


def serialize_graph(g, fmt="edgelist"):
    """Canonical byte serialization; parse_graph(serialize_graph(g)) == g."""
    if fmt == "edgelist":
        lines = [f"# nodes: {g.node_count}"]
        lines += [f"{i} {j}" for i, j in g.bonds]
        return ("\n".join(lines) + "\n").encode("utf-8")
    if fmt == "json":
        doc = {"nodes": g.node_count, "edges": [[i, j] for i, j in g.bonds]}
        return (json.dumps(doc) + "\n").encode("utf-8")
    raise ValueError(f"unknown format {fmt!r} (expected 'edgelist' or 'json')")


def _parse_edgelist(text):
    edges = []
    seen = set()
    declared_nodes = None
    max_index = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            # "# nodes: N" records isolated trailing nodes; other comments ignored
            body = line[1:].strip()
            if body.lower().startswith("nodes:"):
                try:
                    declared_nodes = int(body.split(":", 1)[1])
                except ValueError:
                    raise GraphParseError("malformed node-count comment", lineno)
            continue
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(f"expected two indices, got {line!r}", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"non-integer index in {line!r}", lineno)
        if i < 0 or j < 0:
            raise GraphParseError(f"negative node index in {line!r}", lineno)
        if i == j:
            raise GraphParseError(f"self-loop at node {i}", lineno)
        key = (min(i, j), max(i, j))
        if key in seen:
            raise GraphParseError(f"duplicate or reversed bond ({i},{j})", lineno)
        seen.add(key)
        edges.append((i, j))
        max_index = max(max_index, i, j)
    n = max_index + 1
    if declared_nodes is not None:
        if declared_nodes < n:
            raise GraphParseError(
                f"declared node count {declared_nodes} below max index {max_index}")
        n = declared_nodes
    return Graph.from_edges(n, edges)


def _parse_json(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"invalid JSON: {exc}")
    if not isinstance(doc, dict) or "nodes" not in doc or "edges" not in doc:
        raise GraphParseError('JSON graph needs "nodes" and "edges" keys')
    n = doc["nodes"]
    if not isinstance(n, int) or n < 0:
        raise GraphParseError(f'"nodes" must be a nonnegative integer, got {n!r}')
    seen = set()
    edges = []
    for pos, pair in enumerate(doc["edges"]):
        if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
            raise GraphParseError(f"edge #{pos} is not a pair: {pair!r}")
        i, j = pair
        if not (isinstance(i, int) and isinstance(j, int)):
            raise GraphParseError(f"edge #{pos} has non-integer endpoints")
        if not (0 <= i < n and 0 <= j < n):
            raise GraphParseError(f"edge #{pos} ({i},{j}) out of range")
        if i == j:
            raise GraphParseError(f"edge #{pos}: self-loop at node {i}")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise GraphParseError(f"edge #{pos}: duplicate or reversed bond ({i},{j})")
        seen.add(key)
        edges.append((i, j))
    return Graph.from_edges(n, edges)
