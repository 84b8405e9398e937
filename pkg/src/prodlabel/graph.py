"""Immutable simple-graph representation, parsers, and connectivity helpers."""

from __future__ import annotations

from collections import deque


class GraphFormatError(ValueError):
    """Raised on malformed graph input; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotNiceError(ValueError):
    """Raised when a graph has a two-vertex connected component."""


class Graph:
    """Simple undirected graph with dense 0-based vertex ids and indexed edges.

    Immutable after construction.  ``adj[v]`` is a list of ``(neighbour,
    edge_index)`` pairs sorted by neighbour id, which keeps every
    smallest-neighbour choice in the pipeline deterministic.
    """

    __slots__ = ("n", "edges", "adj", "_edge_index")

    def __init__(self, n: int, edges):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        norm: list[tuple[int, int]] = []
        index: dict[tuple[int, int], int] = {}
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) endpoint out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in index:
                raise ValueError(f"duplicate edge ({e[0]},{e[1]})")
            index[e] = len(norm)
            norm.append(e)
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for eid, (u, v) in enumerate(norm):
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        for lst in adj:
            lst.sort()
        self.n = n
        self.edges = tuple(norm)
        self.adj = adj
        self._edge_index = index

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edge_id(self, u: int, v: int) -> int:
        """Index of edge uv; raises KeyError if absent."""
        return self._edge_index[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edge_index

    def to_edge_list(self) -> str:
        """Serialise in the edge-list format understood by parse_edge_list."""
        lines = [f"n {self.n}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def parse_edge_list(text: str) -> Graph:
    """Parse "u v" lines (0-based ids) into a Graph.

    Blank lines and lines starting with ``#`` are ignored.  An optional
    leading ``n <count>`` header fixes the vertex count; otherwise it is
    one more than the largest id seen.
    """
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    declared: int | None = None
    max_id = -1
    first_content = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "n":
            if not first_content:
                raise GraphFormatError("header must come before edges", lineno)
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise GraphFormatError("malformed header, expected 'n <count>'", lineno)
            declared = int(tokens[1])
            first_content = False
            continue
        first_content = False
        if len(tokens) != 2:
            raise GraphFormatError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(f"malformed token in {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise GraphFormatError("vertex ids must be non-negative", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphFormatError(f"duplicate edge ({key[0]},{key[1]})", lineno)
        seen.add(key)
        edges.append(key)
        max_id = max(max_id, u, v)
    n = declared if declared is not None else max_id + 1
    if declared is not None and max_id >= declared:
        raise GraphFormatError(f"vertex id {max_id} out of range for declared n={declared}")
    return Graph(n, edges)


def parse_dimacs(text: str) -> Graph:
    """Parse DIMACS "p edge n m" format with 1-based "e u v" lines."""
    n = None
    m_declared = 0
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if n is not None:
                raise GraphFormatError("duplicate problem line", lineno)
            if len(tokens) != 4 or tokens[1] != "edge":
                raise GraphFormatError("expected 'p edge <n> <m>'", lineno)
            try:
                n, m_declared = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise GraphFormatError("malformed problem line", lineno) from None
            if n < 0 or m_declared < 0:
                raise GraphFormatError("negative counts in problem line", lineno)
        elif tokens[0] == "e":
            if n is None:
                raise GraphFormatError("edge before problem line", lineno)
            if len(tokens) != 3:
                raise GraphFormatError("expected 'e <u> <v>'", lineno)
            try:
                u, v = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise GraphFormatError("malformed edge line", lineno) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(f"vertex id out of range in {line!r}", lineno)
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}", lineno)
            key = (u - 1, v - 1) if u < v else (v - 1, u - 1)
            if key in seen:
                raise GraphFormatError(f"duplicate edge ({u},{v})", lineno)
            seen.add(key)
            edges.append(key)
        else:
            raise GraphFormatError(f"unrecognised line {line!r}", lineno)
    if n is None:
        raise GraphFormatError("missing problem line")
    if len(edges) != m_declared:
        raise GraphFormatError(f"edge count mismatch: declared {m_declared}, found {len(edges)}")
    return Graph(n, edges)


def detect_format(text: str) -> str:
    """Return "dimacs" if the first content line is a DIMACS c/p line, else "edgelist"."""
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c") or line.startswith("p"):
            return "dimacs"
        return "edgelist"
    return "edgelist"


def parse_graph(text: str, fmt: str = "auto") -> Graph:
    if fmt == "auto":
        fmt = detect_format(text)
    if fmt == "dimacs":
        return parse_dimacs(text)
    if fmt == "edgelist":
        return parse_edge_list(text)
    raise ValueError(f"unknown format {fmt!r}")


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex sets of the connected components, each sorted, ordered by minimum id."""
    seen = [False] * g.n
    comps: list[list[int]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w, _ in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comp.sort()
        comps.append(comp)
    return comps


def is_nice(g: Graph) -> bool:
    """True iff no connected component is a single edge on two vertices."""
    return all(len(c) != 2 for c in connected_components(g))


class ComponentView:
    """Induced subgraph over a vertex subset with local/global index maps."""

    __slots__ = ("parent", "vertices", "graph", "to_local", "edge_ids")

    def __init__(self, parent: Graph, vertices):
        vs = sorted(set(vertices))
        if any(not 0 <= v < parent.n for v in vs):
            raise ValueError("vertex subset out of range")
        to_local = {v: i for i, v in enumerate(vs)}
        local_edges: list[tuple[int, int]] = []
        edge_ids: list[int] = []
        inside = set(vs)
        for eid, (u, v) in enumerate(parent.edges):
            if u in inside and v in inside:
                local_edges.append((to_local[u], to_local[v]))
                edge_ids.append(eid)
        self.parent = parent
        self.vertices = vs
        self.to_local = to_local
        self.graph = Graph(len(vs), local_edges)
        self.edge_ids = edge_ids

    def to_global_vertex(self, local: int) -> int:
        return self.vertices[local]

    def to_global_edge(self, local_eid: int) -> int:
        return self.edge_ids[local_eid]
