"""
Support tau-tilting combinatorics through non-kissing collections.

Maximal compatible collections of tau-rigid strings and shifted projectives
are enumerated as cliques of a compatibility table; the torsion-class poset
is read off from the kiss direction between exchanged strings.
"""

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order

from config import MC_STEP_MARGIN
from core.ar_translate import LongString, cohook_completion, injective_string
from core.bound_quiver import directed_cycle_nodes
from core.hom_kiss import (
    hom_basis,
    hom_tau_dim,
    kiss_count,
    quotient_factorizations,
    submodule_factorizations,
)
from core.strings import (
    InfiniteType,
    Interval,
    SignedArrow,
    StringWalk,
    detect_bands,
    dimension_vector,
    enumerate_strings,
    extend,
    extensions,
    format_string,
    inverse,
    lazy,
    substring,
)

MC = "mc"


class CensusMismatch(ValueError):
    """The Mc walks do not reproduce the expected long strings."""

    def __init__(self, message, arrow=None):
        self.arrow = arrow
        super().__init__(message)


class BidirectionalKiss(ValueError):
    """Exchanged strings kiss in both directions."""


class ExchangeWithoutKiss(ValueError):
    """Exchanged strings do not kiss at all."""


class KissUniquenessFailure(ValueError):
    """Every tau-rigid string is a brick but some cover carries more than one kiss."""


class CollectionMismatch(ValueError):
    """Module-side and long-string-side collections disagree."""


class McWalkDiverged(ValueError):
    """An Mc walk exceeded its step bound."""


@dataclass(frozen=True)
class ModuleItem:
    walk: StringWalk

    def sort_key(self):
        return (0, self.walk.key())

    def label(self):
        return format_string(self.walk)


@dataclass(frozen=True)
class ShiftedProjective:
    vertex: str

    def sort_key(self):
        return (1, self.vertex)

    def label(self):
        return f"P[{self.vertex}][1]"


@dataclass(frozen=True)
class Collection:
    items: tuple

    def modules(self):
        return [item.walk for item in self.items if isinstance(item, ModuleItem)]

    def shifts(self):
        return [item.vertex for item in self.items if isinstance(item, ShiftedProjective)]

    def label(self):
        return " ".join(item.label() for item in self.items)

    def __len__(self):
        return len(self.items)


def make_collection(items):
    return Collection(tuple(sorted(items, key=lambda item: item.sort_key())))


@dataclass(frozen=True)
class Cover:
    upper: int
    lower: int
    kisses: int


@dataclass
class TorsionPoset:
    """Maximal collections ordered by torsion class, with covers pointing down."""
    nodes: list
    covers: list = field(default_factory=list)

    @cached_property
    def _below(self):
        size = len(self.nodes)
        if not self.covers:
            return [{i} for i in range(size)]
        rows = np.array([c.upper for c in self.covers], dtype=int)
        cols = np.array([c.lower for c in self.covers], dtype=int)
        graph = csr_matrix((np.ones(len(self.covers), dtype=int), (rows, cols)), shape=(size, size))
        return [set(breadth_first_order(graph, i, directed=True, return_predecessors=False))
                for i in range(size)]

    def leq(self, i, j):
        """True iff node i lies below (or at) node j."""
        return i in self._below[j]

    def top(self):
        lowers = {c.lower for c in self.covers}
        return next(i for i in range(len(self.nodes)) if i not in lowers)

    def bottom(self):
        uppers = {c.upper for c in self.covers}
        return next(i for i in range(len(self.nodes)) if i not in uppers)


@dataclass(frozen=True)
class CensusReport:
    produced: dict
    expected: dict
    anchors_ok: bool = True

    @property
    def holds(self):
        return self.produced == self.expected and self.anchors_ok


@dataclass(frozen=True)
class KissUniquenessReport:
    all_bricks: bool
    counts: tuple
    violations: tuple

    @property
    def holds(self):
        return not self.all_bricks or not self.violations


def require_finite(q):
    """Raise InfiniteType with a witness band if q has any."""
    bands = detect_bands(q)
    if bands:
        raise InfiniteType(bands[0])


def is_tau_rigid(q, m):
    return hom_tau_dim(q, m, m) == 0


def is_brick(q, m):
    return len(hom_basis(q, m, m)) == 1


def compatible(q, a, b):
    """Pairwise compatibility of collection items."""
    if isinstance(a, ShiftedProjective) and isinstance(b, ShiftedProjective):
        return True
    if isinstance(a, ShiftedProjective):
        a, b = b, a
    if isinstance(b, ShiftedProjective):
        return b.vertex not in dimension_vector(q, a.walk)
    return hom_tau_dim(q, a.walk, b.walk) == 0 and hom_tau_dim(q, b.walk, a.walk) == 0


def long_string_of(f, item):
    """cohook(M) for a module, I_v for a shifted projective."""
    if isinstance(item, ShiftedProjective):
        return injective_string(f, item.vertex)
    return cohook_completion(f, item.walk)


def source_long_strings(f):
    """
    Strings of the fringed quiver running from a source fringe vertex to
    another, up to inversion.

    These are the cohook completions of base strings together with the
    injective strings I_v at base vertices.
    """
    hat = f.hat
    sources = set(f.source_fringe_vertices())
    found = {}
    stack = [
        extend(lazy(v), letter, at_start=False)
        for v in sources
        for letter in extensions(hat, lazy(v), at_start=False, direct=True)
    ]
    while stack:
        walk = stack.pop()
        if f.is_fringe(walk.target):
            if walk.target in sources:
                found.setdefault(walk.key(), walk)
            continue
        for direct in (True, False):
            for letter in extensions(hat, walk, at_start=False, direct=direct):
                stack.append(extend(walk, letter, at_start=False))
    return [found[key] for key in sorted(found)]


def _maximal_cliques(table):
    """All maximal cliques of a symmetric boolean table (Bron-Kerbosch with pivot)."""
    size = table.shape[0]
    neighbours = [set(np.flatnonzero(table[i])) - {i} for i in range(size)]
    cliques = []

    def expand(current, candidates, excluded):
        if not candidates and not excluded:
            cliques.append(tuple(sorted(current)))
            return
        pivot = max(candidates | excluded, key=lambda u: len(neighbours[u] & candidates))
        for v in sorted(candidates - neighbours[pivot]):
            expand(current | {v}, candidates & neighbours[v], excluded & neighbours[v])
            candidates = candidates - {v}
            excluded = excluded | {v}

    expand(set(), set(range(size)), set())
    return sorted(cliques)


def candidate_items(q):
    """tau-rigid strings followed by the shifted projectives."""
    require_finite(q)
    modules = [ModuleItem(w) for w in enumerate_strings(q, 0) if is_tau_rigid(q, w)]
    return modules + [ShiftedProjective(v) for v in q.vertices]


def maximal_collections(q, f):
    """
    All maximal compatible collections.

    The compatibility table from Hom(-, tau -) and supports is compared with
    the maximal non-kissing families among all source-to-source long strings
    of the fringed quiver; both must give the same collections, each of
    size |Q0|.

    Raises:
        InfiniteType: If q has bands
        CollectionMismatch: If the two characterizations disagree
    """
    items = candidate_items(q)
    size = len(items)
    module_side = np.ones((size, size), dtype=bool)
    for i in range(size):
        for j in range(i + 1, size):
            ok = compatible(q, items[i], items[j])
            module_side[i, j] = module_side[j, i] = ok
    cliques = _maximal_cliques(module_side)

    item_of = {long_string_of(f, item).key(): i for i, item in enumerate(items)}
    universe = [w for w in source_long_strings(f) if kiss_count(w, w) == 0]
    count = len(universe)
    kiss = np.zeros((count, count), dtype=int)
    for i in range(count):
        for j in range(count):
            kiss[i, j] = kiss_count(universe[i], universe[j])
    non_kissing = (kiss == 0) & (kiss.T == 0)

    unmatched = [format_string(w) for w in universe if w.key() not in item_of]
    if unmatched:
        raise CollectionMismatch(f"{q.name}: long strings without a tau-rigid item: {' '.join(unmatched)}")
    families = sorted(
        tuple(sorted(item_of[universe[i].key()] for i in clique))
        for clique in _maximal_cliques(non_kissing)
    )
    if cliques != families:
        raise CollectionMismatch(f"{q.name}: compatible and non-kissing collections differ")
    n = len(q.vertices)
    for clique in cliques:
        if len(clique) != n:
            labels = " ".join(items[i].label() for i in clique)
            raise CollectionMismatch(f"{q.name}: maximal collection of size {len(clique)}: {labels}")

    collections = [make_collection(items[i] for i in clique) for clique in cliques]
    return sorted(collections, key=lambda c: [item.sort_key() for item in c.items])


def fac_contains(q, generators, y):
    """
    True iff Y is a quotient of a sum of copies of the generators.

    Every vertex slot of Y must lie in a submodule of Y that is also a
    quotient of some generator.
    """
    factors = {fac.middle.key() for x in generators for fac in quotient_factorizations(x)}
    covered = set()
    for fac in submodule_factorizations(y):
        if fac.middle.key() in factors:
            covered.update(range(fac.interval.start, fac.interval.end + 1))
    return covered == set(range(y.length + 1))


def torsion_class_strings(q, coll, max_len=0):
    """Strings of the torsion class generated by the modules of coll."""
    if max_len == 0:
        require_finite(q)
    generators = coll.modules()
    return [w for w in enumerate_strings(q, max_len) if fac_contains(q, generators, w)]


def _member(walk, keys):
    return walk.key() in keys


def mc_walk(f, keys, alpha):
    """
    Grow a long string from the arrow alpha steered by membership in S.

    Forward from alpha the next letter is direct iff the part already
    walked after alpha lies in S; backward the next letter is inverse iff
    the part walked before alpha lies in S. Each side stops at a fringe
    vertex.

    Args:
        f: FringedAlgebra
        keys: Set of string keys (StringWalk.key()) of S
        alpha: Arrow of the fringed quiver

    Returns:
        LongString of kind "mc"

    Raises:
        McWalkDiverged: If the step bound is exceeded
    """
    hat = f.hat
    bound = 2 * len(hat.arrows) + MC_STEP_MARGIN
    walk = StringWalk((SignedArrow(alpha, True),), alpha.source)
    after = lazy(alpha.target)
    before = lazy(alpha.source)
    steps = 0

    while not f.is_fringe(walk.target):
        steps += 1
        if steps > bound:
            raise McWalkDiverged(f"Mc walk from {alpha.id} exceeded {bound} steps")
        found = extensions(hat, walk, at_start=False, direct=_member(after, keys))
        if not found:
            raise McWalkDiverged(f"Mc walk from {alpha.id} is stuck at {walk.target}")
        letter = found[0]
        walk = extend(walk, letter, at_start=False)
        after = extend(after, letter, at_start=False)

    while not f.is_fringe(walk.source):
        steps += 1
        if steps > bound:
            raise McWalkDiverged(f"Mc walk from {alpha.id} exceeded {bound} steps")
        found = extensions(hat, walk, at_start=True, direct=not _member(before, keys))
        if not found:
            raise McWalkDiverged(f"Mc walk from {alpha.id} is stuck at {walk.source}")
        letter = found[0]
        walk = extend(walk, letter, at_start=True)
        before = extend(before, letter, at_start=True)

    return LongString(walk, MC, alpha)


def ext_projective_anchor(f, keys, m):
    """
    The arrow of cohook(M) from which the Mc walk recovers cohook(M).

    Among the direct letters of cohook(M) up to the end shoulder, take the
    first one whose stretch up to the end of M lies in S. The first arm
    letter counts too. M is read in the orientation given; the inverse of
    M yields a second anchor.
    """
    completion = cohook_completion(f, m)
    walk = completion.walk
    end = completion.y_interval.end
    for i in range(end + 1):
        letter = walk.letters[i]
        if not letter.direct:
            continue
        if i == end or _member(substring(walk, Interval(i + 1, end)), keys):
            return letter.arrow
    return None


def ext_projective_anchors(f, keys, m):
    """The anchors of M and of its inverse."""
    return ext_projective_anchor(f, keys, m), ext_projective_anchor(f, keys, inverse(m))


def verify_mc_census(q, f, coll, check_anchors=False):
    """
    Run the Mc walk from every arrow of the fringed quiver.

    Expected: cohook(M) twice per module of coll, I_v twice per shifted
    vertex, I_v once per sink fringe vertex, and nothing else.

    Returns:
        CensusReport

    Raises:
        CensusMismatch: With the first arrow producing an unexpected walk
    """
    keys = {w.key() for w in torsion_class_strings(q, coll)}
    expected = Counter()
    for m in coll.modules():
        expected[cohook_completion(f, m).key()] += 2
    for v in coll.shifts():
        expected[injective_string(f, v).key()] += 2
    for v in f.sink_fringe_vertices():
        expected[injective_string(f, v).key()] += 1

    produced = Counter()
    for alpha in f.hat.arrows:
        key = mc_walk(f, keys, alpha).key()
        produced[key] += 1
        if produced[key] > expected[key]:
            raise CensusMismatch(
                f"{q.name}: arrow {alpha.id} gives {format_string(mc_walk(f, keys, alpha).walk)}",
                alpha,
            )

    anchors_ok = True
    if check_anchors:
        for m in coll.modules():
            target = cohook_completion(f, m).key()
            for anchor in ext_projective_anchors(f, keys, m):
                if anchor is None or mc_walk(f, keys, anchor).key() != target:
                    anchors_ok = False

    return CensusReport(dict(produced), dict(expected), anchors_ok)


def exchanged_items(a, b):
    """(item only in a, item only in b) when a and b differ in one item, else None."""
    only_a = set(a.items) - set(b.items)
    only_b = set(b.items) - set(a.items)
    if len(only_a) == 1 and len(only_b) == 1:
        return only_a.pop(), only_b.pop()
    return None


def poset(q, f, collections=None):
    """
    The torsion-class poset on maximal collections.

    Raises:
        BidirectionalKiss: If exchanged strings kiss both ways
        ExchangeWithoutKiss: If exchanged strings do not kiss
    """
    nodes = collections if collections is not None else maximal_collections(q, f)
    covers = []
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            exchange = exchanged_items(nodes[i], nodes[j])
            if exchange is None:
                continue
            c, d = (long_string_of(f, item) for item in exchange)
            forward, backward = kiss_count(c, d), kiss_count(d, c)
            if forward and backward:
                raise BidirectionalKiss(f"{nodes[i].label()} / {nodes[j].label()}")
            if not forward and not backward:
                raise ExchangeWithoutKiss(f"{nodes[i].label()} / {nodes[j].label()}")
            if forward:
                covers.append(Cover(upper=i, lower=j, kisses=forward))
            else:
                covers.append(Cover(upper=j, lower=i, kisses=backward))

    cyclic = directed_cycle_nodes(len(nodes), [(c.upper, c.lower) for c in covers])
    if cyclic:
        raise BidirectionalKiss(f"{q.name}: cover relation has a cycle through {len(cyclic)} nodes")
    return TorsionPoset(nodes, covers)


def kiss_uniqueness_report(q, f, torsion_poset=None, strict=False):
    """
    Kiss counts on cover edges, and whether every tau-rigid string is a brick.

    Raises:
        KissUniquenessFailure: With strict, if the report does not hold
    """
    torsion_poset = torsion_poset or poset(q, f)
    all_bricks = all(is_brick(q, item.walk) for item in candidate_items(q)
                     if isinstance(item, ModuleItem))
    counts = tuple(c.kisses for c in torsion_poset.covers)
    violations = tuple(c for c in torsion_poset.covers if c.kisses != 1)
    report = KissUniquenessReport(all_bricks, counts, violations)
    if strict and not report.holds:
        edges = ", ".join(f"{c.upper} -> {c.lower} ({c.kisses})" for c in violations)
        raise KissUniquenessFailure(f"{q.name}: all tau-rigid strings are bricks but covers {edges}")
    return report
