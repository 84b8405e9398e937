"""Edge labellings, per-vertex degree profiles, and conflict detection.

Vertex products are never materialised: with labels in {1,2,3} the product of
incident labels is 2**d2 * 3**d3, so the pair (d2, d3) is a faithful and
overflow-free product key.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphFormatError

LABELS = (1, 2, 3)


@dataclass
class Labelling:
    """Total mapping edge index -> label in {1,2,3}."""

    labels: list[int]

    @classmethod
    def all_ones(cls, g: Graph) -> "Labelling":
        return cls([1] * g.m)

    def copy(self) -> "Labelling":
        return Labelling(list(self.labels))

    def __getitem__(self, eid: int) -> int:
        return self.labels[eid]

    def __len__(self) -> int:
        return len(self.labels)

    def validate(self, g: Graph) -> None:
        if len(self.labels) != g.m:
            raise ValueError(f"labelling covers {len(self.labels)} edges, graph has {g.m}")
        for eid, lab in enumerate(self.labels):
            if lab not in LABELS:
                raise ValueError(f"edge {eid} has label {lab} outside {{1,2,3}}")


@dataclass(frozen=True)
class VertexProfile:
    """Counts of incident edges per label; d1 + d2 + d3 equals the degree."""

    d1: int
    d2: int
    d3: int

    @property
    def key(self) -> tuple[int, int]:
        return (self.d2, self.d3)


class VertexKind(enum.Enum):
    MONO1 = 1
    MONO2 = 2
    MONO3 = 3
    BICHROMATIC = 4


@dataclass(frozen=True)
class VertexClass:
    kind: VertexKind
    special: bool


def profile(g: Graph, l: Labelling, v: int) -> VertexProfile:
    """Exact incident-label counts of v."""
    d1 = d2 = d3 = 0
    for _, eid in g.adj[v]:
        lab = l.labels[eid]
        if lab == 1:
            d1 += 1
        elif lab == 2:
            d2 += 1
        else:
            d3 += 1
    return VertexProfile(d1, d2, d3)


def classify(p: VertexProfile) -> VertexClass:
    """Kind of a vertex plus its special flag.

    Special means d3 == 1, d2 >= 2, and d2 + d3 odd (so d2 is even).
    """
    if p.d2 == 0 and p.d3 == 0:
        kind = VertexKind.MONO1
    elif p.d2 > 0 and p.d3 == 0:
        kind = VertexKind.MONO2
    elif p.d3 > 0 and p.d2 == 0:
        kind = VertexKind.MONO3
    else:
        kind = VertexKind.BICHROMATIC
    special = p.d3 == 1 and p.d2 >= 2 and (p.d2 + p.d3) % 2 == 1
    return VertexClass(kind, special)


def degree_counts(g: Graph, l: Labelling) -> tuple[np.ndarray, np.ndarray]:
    """Arrays (d2, d3) over all vertices, recomputed from scratch."""
    d2 = np.zeros(g.n, dtype=np.int64)
    d3 = np.zeros(g.n, dtype=np.int64)
    if g.m:
        ends = np.asarray(g.edges, dtype=np.int64)
        lab = np.asarray(l.labels, dtype=np.int64)
        for target, value in ((d2, 2), (d3, 3)):
            picked = ends[lab == value]
            if picked.size:
                target += np.bincount(picked.ravel(), minlength=g.n)
    return d2, d3


def find_conflicts(g: Graph, l: Labelling) -> list[int]:
    """Edge indices whose endpoints have equal product keys, ascending.

    Empty exactly when the labelling is proper for incident products.
    """
    if g.m == 0:
        return []
    d2, d3 = degree_counts(g, l)
    ends = np.asarray(g.edges, dtype=np.int64)
    u, v = ends[:, 0], ends[:, 1]
    mask = (d2[u] == d2[v]) & (d3[u] == d3[v])
    return np.flatnonzero(mask).tolist()


class ProfileTracker:
    """Mutable (labelling, per-vertex d2/d3) pair with incremental updates.

    The pipeline relabels one edge at a time; updating the two endpoint
    profiles keeps every parity and degree query O(1).
    """

    __slots__ = ("g", "labelling", "d2", "d3")

    def __init__(self, g: Graph, labelling: Labelling | None = None):
        self.g = g
        self.labelling = labelling if labelling is not None else Labelling.all_ones(g)
        self.d2 = [0] * g.n
        self.d3 = [0] * g.n
        for eid, lab in enumerate(self.labelling.labels):
            if lab != 1:
                u, v = g.edges[eid]
                arr = self.d2 if lab == 2 else self.d3
                arr[u] += 1
                arr[v] += 1

    def label(self, eid: int) -> int:
        return self.labelling.labels[eid]

    def set(self, eid: int, lab: int) -> None:
        old = self.labelling.labels[eid]
        if old == lab:
            return
        u, v = self.g.edges[eid]
        if old == 2:
            self.d2[u] -= 1
            self.d2[v] -= 1
        elif old == 3:
            self.d3[u] -= 1
            self.d3[v] -= 1
        if lab == 2:
            self.d2[u] += 1
            self.d2[v] += 1
        elif lab == 3:
            self.d3[u] += 1
            self.d3[v] += 1
        self.labelling.labels[eid] = lab

    def key(self, v: int) -> tuple[int, int]:
        return (self.d2[v], self.d3[v])

    def is_mono1(self, v: int) -> bool:
        return self.d2[v] == 0 and self.d3[v] == 0


def format_labelling(g: Graph, l: Labelling) -> str:
    """One "u v label" line per edge, in edge-index order."""
    return "\n".join(f"{u} {v} {l.labels[eid]}" for eid, (u, v) in enumerate(g.edges)) + ("\n" if g.m else "")


def format_products(g: Graph, l: Labelling) -> str:
    """One "v d2 d3" line per vertex."""
    d2, d3 = degree_counts(g, l)
    return "\n".join(f"{v} {d2[v]} {d3[v]}" for v in range(g.n)) + ("\n" if g.n else "")


def parse_labelling(g: Graph, text: str) -> Labelling:
    """Parse "u v label" lines and check they cover every edge exactly once."""
    labels: list[int | None] = [None] * g.m
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 3:
            raise GraphFormatError(f"expected 'u v label', got {line!r}", lineno)
        try:
            u, v, lab = int(tokens[0]), int(tokens[1]), int(tokens[2])
        except ValueError:
            raise GraphFormatError(f"malformed token in {line!r}", lineno) from None
        if lab not in LABELS:
            raise GraphFormatError(f"label {lab} outside {{1,2,3}}", lineno)
        try:
            eid = g.edge_id(u, v)
        except KeyError:
            raise GraphFormatError(f"({u},{v}) is not an edge of the graph", lineno) from None
        if labels[eid] is not None:
            raise GraphFormatError(f"edge ({u},{v}) labelled twice", lineno)
        labels[eid] = lab
    missing = [eid for eid, lab in enumerate(labels) if lab is None]
    if missing:
        u, v = g.edges[missing[0]]
        raise GraphFormatError(f"edge ({u},{v}) has no label ({len(missing)} missing)")
    return Labelling([lab for lab in labels])  # type: ignore[list-item]
