"""End-to-end labelling pipeline, brute-force oracles, and test generators."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from . import _kernels
from .graph import ComponentView, Graph, NotNiceError, connected_components, is_nice
from .labelling import Labelling, find_conflicts
from .partition import Partition, build_valid_partition
from .repair import run_repair_pass
from .upward import run_upward_pass


@dataclass
class PipelineReport:
    """Outcome of labelling one graph; the verdict is recomputed from the
    labels by the independent conflict scan, never trusted from the pipeline.

    ``partitions`` pairs each multi-vertex component (sorted global vertex
    ids) with the partition of its induced subgraph; the partition indexes
    vertices by their position in that sorted list.
    """

    labelling: Labelling
    partitions: list[tuple[list[int], Partition]]
    swaps: int = 0
    components_fixed: int = 0
    tally: Counter = field(default_factory=Counter)
    conflicts: list[int] = field(default_factory=list)
    trace: list[str] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return not self.conflicts


def label_graph(g: Graph, trace: bool = False) -> PipelineReport:
    """Product-proper 3-labelling of a nice graph, built per component.

    Each connected component with at least two vertices runs through the
    partition builder, the upward pass, and the repair pass; isolated
    vertices need nothing.
    """
    if not is_nice(g):
        raise NotNiceError("graph has a two-vertex component")
    labels = [1] * g.m
    report = PipelineReport(Labelling(labels), [])
    for comp in connected_components(g):
        if len(comp) < 2:
            continue
        view = ComponentView(g, comp)
        sub = view.graph
        partition = build_valid_partition(sub)
        up = run_upward_pass(sub, partition, trace=trace)
        rep = run_repair_pass(sub, up.partition, up.labelling, trace=trace)
        for local_eid, lab in enumerate(rep.labelling.labels):
            labels[view.to_global_edge(local_eid)] = lab
        report.partitions.append((comp, up.partition))
        report.swaps += up.swaps
        report.components_fixed += len(rep.component_vertices)
        report.tally.update(rep.tally)
        if trace:
            prefix = f"component@{comp[0]} "
            report.trace.extend(prefix + line for line in up.trace + rep.trace)
    report.conflicts = find_conflicts(g, report.labelling)
    return report


def brute_force_min_k(g: Graph, k_max: int = 3) -> int | None:
    """Smallest k <= k_max admitting a proper k-labelling, by enumeration.

    Works edge-count-bounded (m <= 16).  An edgeless graph answers 1 by
    convention.  None when even k_max labels do not suffice.
    """
    if g.m == 0:
        return 1
    if g.m > 16:
        raise ValueError(f"oracle supports at most 16 edges, got {g.m}")
    if k_max < 1:
        raise ValueError("k_max must be positive")
    for k in range(1, k_max + 1):
        if _kernels.search_first_proper(g, k) >= 0:
            return k
    return None


def brute_force_labelling(g: Graph, k: int) -> list[int] | None:
    """First proper k-labelling in lexicographic order, or None."""
    if g.m > 16:
        raise ValueError(f"oracle supports at most 16 edges, got {g.m}")
    idx = _kernels.search_first_proper(g, k)
    if idx < 0:
        return None
    return _kernels.decode_labels(idx, g.m, k)


def random_nice_graph(n: int, p: float, seed: int) -> Graph:
    """Seeded Erdos-Renyi draw, patched to contain no two-vertex component.

    Every two-vertex component either gains an edge from its smaller end to
    the lowest-id vertex outside it, or loses its edge when n == 2.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    g = Graph(n, edges)
    lonely = [c for c in connected_components(g) if len(c) == 2]
    if not lonely:
        return g
    if n == 2:
        return Graph(n, [])
    patched = list(edges)
    seen = set(edges)
    for comp in lonely:
        a = comp[0]
        w = min(v for v in range(n) if v not in comp)
        e = (min(a, w), max(a, w))
        if e in seen:
            continue  # an earlier patch already attached this pair
        seen.add(e)
        patched.append(e)
    return Graph(n, patched)
