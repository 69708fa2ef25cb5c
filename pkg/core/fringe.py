"""Fringed bound quivers: every base vertex padded to two in and two out."""

from dataclasses import dataclass
from functools import lru_cache

from config import FRINGE_IN_ARROW, FRINGE_OUT_ARROW, FRINGE_SINK_VERTEX, FRINGE_SOURCE_VERTEX
from core.bound_quiver import Arrow, BoundQuiver, NotGentle, Relation, require_gentle, validate_gentle


class FringeNameCollision(ValueError):
    """A generated fringe id already exists in the base quiver."""


@dataclass(frozen=True)
class ArrowCensus:
    hat_arrows: int
    expected: int

    @property
    def holds(self):
        return self.hat_arrows == self.expected


class FringedAlgebra:
    """The fringed bound quiver of a gentle bound quiver."""

    def __init__(self, base):
        """
        Build the fringed quiver and ideal.

        Args:
            base: Gentle BoundQuiver

        Raises:
            NotGentle: If base fails validation
            FringeNameCollision: If a derived id clashes with a base id
        """
        require_gentle(base)
        self.base = base

        vertices = list(base.vertices)
        arrows = list(base.arrows)
        fringe_vertices = []
        fringe_arrows = []
        taken = set(base.vertices) | {a.id for a in base.arrows}

        def fresh(name):
            if name in taken:
                raise FringeNameCollision(f"fringe id {name} already used in {base.name}")
            taken.add(name)
            return name

        for v in base.vertices:
            for k in range(1, 3 - len(base.incoming(v))):
                source = fresh(FRINGE_SOURCE_VERTEX.format(v=v, k=k))
                arrow = Arrow(fresh(FRINGE_IN_ARROW.format(v=v, k=k)), source, v)
                fringe_vertices.append(source)
                fringe_arrows.append(arrow)
            for k in range(1, 3 - len(base.outgoing(v))):
                sink = fresh(FRINGE_SINK_VERTEX.format(v=v, k=k))
                arrow = Arrow(fresh(FRINGE_OUT_ARROW.format(v=v, k=k)), v, sink)
                fringe_vertices.append(sink)
                fringe_arrows.append(arrow)

        vertices += fringe_vertices
        arrows += fringe_arrows
        self.fringe_vertices = tuple(fringe_vertices)
        self.fringe_arrows = tuple(fringe_arrows)

        skeleton = BoundQuiver(base.name + "^", tuple(vertices), tuple(arrows), ())
        relations = list(base.relations)
        for v in base.vertices:
            relations += self._fringe_relations(skeleton, v)

        self.hat = BoundQuiver(base.name + "^", tuple(vertices), tuple(arrows), tuple(relations))
        report = validate_gentle(self.hat)
        if not report.is_gentle:
            raise NotGentle(report)

    def _fringe_relations(self, skeleton, v):
        """Relations at v completing the in/out matching forced by the base ideal."""
        ins = skeleton.incoming(v)
        outs = skeleton.outgoing(v)
        base_ids = {a.id for a in self.base.arrows}

        def consistent(matching):
            for i in ins:
                for o in outs:
                    if i.id in base_ids and o.id in base_ids:
                        nonzero = not self.base.is_relation(o, i)
                        if nonzero != ((i, o) in matching):
                            return False
            return True

        candidates = [
            {(ins[0], outs[0]), (ins[1], outs[1])},
            {(ins[0], outs[1]), (ins[1], outs[0])},
        ]
        matching = next(m for m in candidates if consistent(m))
        return [
            Relation(second=o, first=i)
            for i in ins
            for o in outs
            if (i, o) not in matching and not (i.id in base_ids and o.id in base_ids)
        ]

    def is_fringe(self, vertex):
        return vertex in self.fringe_vertices

    def sink_fringe_vertices(self):
        return [v for v in self.fringe_vertices if not self.hat.outgoing(v)]

    def source_fringe_vertices(self):
        return [v for v in self.fringe_vertices if not self.hat.incoming(v)]

    def restricted(self):
        """Delete the fringe again; recovers the base quiver."""
        fringe_ids = {a.id for a in self.fringe_arrows}
        return BoundQuiver(
            self.base.name,
            tuple(v for v in self.hat.vertices if v not in self.fringe_vertices),
            tuple(a for a in self.hat.arrows if a.id not in fringe_ids),
            tuple(
                r for r in self.hat.relations
                if r.first.id not in fringe_ids and r.second.id not in fringe_ids
            ),
        )

    def print_fringe_info(self):
        """Print fringe information."""
        census = arrow_census(self)
        print(f"\n=== Fringed Quiver ===")
        print(f"Base: {self.base.name} ({len(self.base.vertices)} vertices, {len(self.base.arrows)} arrows)")
        print(f"Fringe vertices: {len(self.fringe_vertices)}")
        print(f"Sink fringe vertices: {len(self.sink_fringe_vertices())}")
        print(f"Arrows: {len(self.hat.arrows)}")
        print(f"Relations: {len(self.hat.relations)}")
        mark = "✓" if census.holds else "✗"
        print(f"{mark} Arrow census: {census.hat_arrows} = {census.expected}")
        print("=" * 22 + "\n")


@lru_cache(maxsize=None)
def fringe(q):
    """Fringe a gentle bound quiver (cached per quiver)."""
    return FringedAlgebra(q)


def sink_fringe_vertices(f):
    return f.sink_fringe_vertices()


def arrow_census(f):
    """Compare |arrows of the fringed quiver| with #sink fringe + 2 |base vertices|."""
    return ArrowCensus(
        hat_arrows=len(f.hat.arrows),
        expected=len(f.sink_fringe_vertices()) + 2 * len(f.base.vertices),
    )
