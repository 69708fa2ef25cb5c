"""Bound quivers with quadratic zero relations and the gentle axioms."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components


class DuplicateId(ValueError):
    """A vertex or arrow id is declared twice."""


class UnknownVertex(ValueError):
    """An arrow references a vertex that was never declared."""


class UnknownArrow(ValueError):
    """A relation or string references an arrow that was never declared."""


class NonComposableRelation(ValueError):
    """A relation `g f` where f does not end where g starts."""


class NotGentle(ValueError):
    """Raised by operations that require a gentle bound quiver."""

    def __init__(self, report):
        self.report = report
        witnesses = "; ".join(f"{tag}: {text}" for tag, text in report.violations)
        super().__init__(f"not gentle ({witnesses})")


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str

    def __str__(self):
        return f"{self.id}: {self.source} -> {self.target}"


@dataclass(frozen=True)
class Relation:
    """The path `second . first` (traverse first, then second) lies in I."""
    second: Arrow
    first: Arrow

    def __str__(self):
        return f"{self.second.id} {self.first.id}"


@dataclass(frozen=True)
class GentleReport:
    is_string_algebra: bool
    is_gentle: bool
    violations: tuple = ()


@dataclass(frozen=True)
class BoundQuiver:
    """
    A finite quiver Q with a set of length-two zero relations I.

    Vertices are plain string ids. Arrows and relations keep declaration
    order so that serialization is reproducible.
    """
    name: str
    vertices: tuple
    arrows: tuple = ()
    relations: tuple = ()

    def __post_init__(self):
        seen = set()
        for vertex in self.vertices:
            if vertex in seen:
                raise DuplicateId(f"duplicate id: {vertex}")
            seen.add(vertex)
        for arrow in self.arrows:
            if arrow.id in seen:
                raise DuplicateId(f"duplicate id: {arrow.id}")
            seen.add(arrow.id)
            for end in (arrow.source, arrow.target):
                if end not in self.vertices:
                    raise UnknownVertex(f"arrow {arrow.id} uses unknown vertex {end}")
        pairs = set()
        for relation in self.relations:
            for arrow in (relation.second, relation.first):
                if arrow not in self.arrows:
                    raise UnknownArrow(f"relation uses unknown arrow {arrow.id}")
            if relation.first.target != relation.second.source:
                raise NonComposableRelation(
                    f"non-composable relation: {relation.second.id} {relation.first.id}"
                )
            key = (relation.second.id, relation.first.id)
            if key in pairs:
                raise DuplicateId(f"duplicate relation: {relation}")
            pairs.add(key)

    @cached_property
    def _arrow_index(self):
        return {arrow.id: arrow for arrow in self.arrows}

    @cached_property
    def _relation_pairs(self):
        return frozenset((r.second.id, r.first.id) for r in self.relations)

    @cached_property
    def _incoming(self):
        table = {v: [] for v in self.vertices}
        for arrow in self.arrows:
            table[arrow.target].append(arrow)
        return {v: tuple(sorted(a, key=lambda x: x.id)) for v, a in table.items()}

    @cached_property
    def _outgoing(self):
        table = {v: [] for v in self.vertices}
        for arrow in self.arrows:
            table[arrow.source].append(arrow)
        return {v: tuple(sorted(a, key=lambda x: x.id)) for v, a in table.items()}

    def arrow(self, arrow_id):
        """Look up an arrow by id."""
        try:
            return self._arrow_index[arrow_id]
        except KeyError:
            raise UnknownArrow(f"unknown arrow: {arrow_id}") from None

    def has_arrow(self, arrow_id):
        return arrow_id in self._arrow_index

    def incoming(self, vertex):
        """Arrows ending at vertex, sorted by id."""
        return self._incoming[vertex]

    def outgoing(self, vertex):
        """Arrows starting at vertex, sorted by id."""
        return self._outgoing[vertex]

    def is_relation(self, second, first):
        """True iff the path `second . first` is one of the generators of I."""
        return (second.id, first.id) in self._relation_pairs

    def composes_nonzero(self, second, first):
        """True iff first then second is a path of length two outside I."""
        return first.target == second.source and not self.is_relation(second, first)


def directed_cycle_nodes(size, edges):
    """
    Nodes of a directed graph that lie on some directed cycle.

    Args:
        size: Number of nodes, labelled 0..size-1
        edges: Iterable of (tail, head) pairs

    Returns:
        Sorted list of node labels lying on a cycle (self-loops included)
    """
    edges = list(edges)
    if size == 0 or not edges:
        return []
    rows = np.array([e[0] for e in edges], dtype=int)
    cols = np.array([e[1] for e in edges], dtype=int)
    graph = csr_matrix((np.ones(len(edges), dtype=int), (rows, cols)), shape=(size, size))
    _, labels = connected_components(graph, directed=True, connection='strong')
    component_sizes = np.bincount(labels, minlength=size)
    on_cycle = {i for i in range(size) if component_sizes[labels[i]] > 1}
    on_cycle.update(t for t, h in edges if t == h)
    return sorted(on_cycle)


def validate_gentle(q):
    """
    Check the string algebra and gentle axioms.

    Args:
        q: BoundQuiver

    Returns:
        GentleReport listing every violation with its axiom tag
    """
    violations = []

    for vertex in q.vertices:
        n_in, n_out = len(q.incoming(vertex)), len(q.outgoing(vertex))
        if n_in > 2:
            violations.append(("S1", f"vertex {vertex} has {n_in} incoming arrows"))
        if n_out > 2:
            violations.append(("S1", f"vertex {vertex} has {n_out} outgoing arrows"))

    for alpha in q.arrows:
        before = q.incoming(alpha.source)
        after = q.outgoing(alpha.target)
        nonzero_before = [b for b in before if not q.is_relation(alpha, b)]
        nonzero_after = [g for g in after if not q.is_relation(g, alpha)]
        zero_before = [b for b in before if q.is_relation(alpha, b)]
        zero_after = [g for g in after if q.is_relation(g, alpha)]
        if len(nonzero_before) > 1:
            names = ", ".join(b.id for b in nonzero_before)
            violations.append(("S2", f"{alpha.id} composes nonzero after {names}"))
        if len(nonzero_after) > 1:
            names = ", ".join(g.id for g in nonzero_after)
            violations.append(("S2", f"{names} compose nonzero after {alpha.id}"))
        if len(zero_before) > 1:
            names = ", ".join(b.id for b in zero_before)
            violations.append(("G2", f"{alpha.id} composes to zero after {names}"))
        if len(zero_after) > 1:
            names = ", ".join(g.id for g in zero_after)
            violations.append(("G2", f"{names} compose to zero after {alpha.id}"))

    # Relation-free directed cycles make kQ/I infinite dimensional
    index = {arrow.id: i for i, arrow in enumerate(q.arrows)}
    edges = [
        (index[f.id], index[g.id])
        for f in q.arrows
        for g in q.outgoing(f.target)
        if not q.is_relation(g, f)
    ]
    cyclic = directed_cycle_nodes(len(q.arrows), edges)
    if cyclic:
        names = " ".join(q.arrows[i].id for i in cyclic)
        violations.append(("ADMISSIBLE", f"relation-free cycle through {names}"))

    tags = {tag for tag, _ in violations}
    is_string = not tags & {"S1", "S2", "ADMISSIBLE"}
    return GentleReport(
        is_string_algebra=is_string,
        is_gentle=not violations,
        violations=tuple(violations),
    )


def require_gentle(q):
    """Raise NotGentle unless q satisfies every axiom."""
    report = validate_gentle(q)
    if not report.is_gentle:
        raise NotGentle(report)
    return report
