"""Factorizations, graph-map bases of Hom spaces, and kisses between long strings."""

from dataclasses import dataclass

from core.ar_translate import cohook_completion, tau_interval
from core.fringe import fringe
from core.strings import (
    Interval,
    StringWalk,
    is_quotient_interval,
    is_submodule_interval,
    substring,
)

QUOTIENT = "quotient"
SUBMODULE = "submodule"


class YIsProjective(ValueError):
    """The target of Hom(X, tau Y) is projective, so tau Y is zero."""


@dataclass(frozen=True)
class Factorization:
    """
    C = F.E.D on a directed walk; E is `interval`, D is traversed first.
    """
    owner: StringWalk
    interval: Interval
    kind: str

    @property
    def middle(self):
        return substring(self.owner, self.interval)

    @property
    def d_length(self):
        return self.interval.start

    @property
    def f_length(self):
        return self.owner.length - self.interval.end

    def d_part(self):
        return substring(self.owner, Interval(0, self.interval.start))

    def f_part(self):
        return substring(self.owner, Interval(self.interval.end, self.owner.length))


@dataclass(frozen=True)
class AdmissiblePair:
    """A quotient of C1 and a submodule of C2 with E1 = E2 (flip: E1 = E2 inverse)."""
    quotient: Factorization
    submodule: Factorization
    flip: bool = False

    def key(self):
        return (self.quotient.interval, self.submodule.interval)


@dataclass(frozen=True)
class Kiss:
    """A kiss from one long string to another along a shared middle Z."""
    pair: AdmissiblePair

    @property
    def from_interval(self):
        return self.pair.quotient.interval

    @property
    def to_interval(self):
        return self.pair.submodule.interval

    def flanking_letters(self):
        """The letters around Z: before and after on the source, then on the target."""
        x = self.pair.quotient.owner
        y = self.pair.submodule.owner
        return (
            x.letters[self.from_interval.start - 1],
            x.letters[self.from_interval.end],
            y.letters[self.to_interval.start - 1],
            y.letters[self.to_interval.end],
        )


def _intervals(w):
    return [Interval(i, j) for i in range(w.length + 1) for j in range(i, w.length + 1)]


def quotient_factorizations(c):
    """All quotient factorizations of a directed walk."""
    return [Factorization(c, iv, QUOTIENT) for iv in _intervals(c) if is_quotient_interval(c, iv)]


def submodule_factorizations(c):
    """All submodule factorizations of a directed walk."""
    return [Factorization(c, iv, SUBMODULE) for iv in _intervals(c) if is_submodule_interval(c, iv)]


def _same_middle(e1, e2):
    """None if the words differ, else whether they match only after inversion."""
    if e1.is_lazy or e2.is_lazy:
        if e1.is_lazy and e2.is_lazy and e1.base == e2.base:
            return False
        return None
    if e1.letters == e2.letters:
        return False
    if e1.letters == e2.inverse().letters:
        return True
    return None


def _admissible_pairs(c1, c2, strict):
    pairs = {}
    for quotient in quotient_factorizations(c1):
        if strict and (quotient.d_length == 0 or quotient.f_length == 0):
            continue
        e1 = quotient.middle
        for submodule in submodule_factorizations(c2):
            if strict and (submodule.d_length == 0 or submodule.f_length == 0):
                continue
            flip = _same_middle(e1, submodule.middle)
            if flip is None:
                continue
            pair = AdmissiblePair(quotient, submodule, flip)
            pairs.setdefault(pair.key(), pair)
    return [pairs[k] for k in sorted(pairs, key=lambda k: (k[0].start, k[0].end, k[1].start, k[1].end))]


def hom_basis(q, c1, c2):
    """
    Graph-map basis of Hom(C1, C2).

    Both walks are taken in the orientation given; each admissible pair is
    counted once per pair of occurrences.

    Args:
        q: BoundQuiver both strings live in
        c1: Source StringWalk
        c2: Target StringWalk

    Returns:
        List of AdmissiblePair
    """
    return _admissible_pairs(c1, c2, strict=False)


def kisses(x, y):
    """
    All kisses from long string x to long string y.

    Args:
        x, y: LongString (or StringWalk) over the fringed quiver

    Returns:
        List of Kiss
    """
    x_walk = getattr(x, "walk", x)
    y_walk = getattr(y, "walk", y)
    return [Kiss(pair) for pair in _admissible_pairs(x_walk, y_walk, strict=True)]


def kiss_count(x, y):
    return len(kisses(x, y))


def hom_tau_dim(q, x, y):
    """dim Hom(X, tau Y) counted as kisses between cohook completions."""
    f = fringe(q)
    return kiss_count(cohook_completion(f, x), cohook_completion(f, y))


def kiss_to_graph_map(f, k, x, y):
    """
    Re-anchor a kiss between cohook(x) and cohook(y) as a graph map into tau y.

    Args:
        f: FringedAlgebra
        k: Kiss from cohook_completion(f, x) to cohook_completion(f, y)
        x, y: Base strings, in the orientations that were completed

    Returns:
        AdmissiblePair from x to the base translate of y

    Raises:
        YIsProjective: If y is projective
    """
    x_long = cohook_completion(f, x)
    y_long = cohook_completion(f, y)
    window = tau_interval(f, y_long)
    if window is None:
        raise YIsProjective(f"{y} is projective")

    shift = x_long.y_interval.start
    x_interval = Interval(k.from_interval.start - shift, k.from_interval.end - shift)
    y_interval = Interval(k.to_interval.start - window.start, k.to_interval.end - window.start)
    translate = substring(y_long.walk, window)
    return AdmissiblePair(
        Factorization(x, x_interval, QUOTIENT),
        Factorization(translate, y_interval, SUBMODULE),
        k.pair.flip,
    )
