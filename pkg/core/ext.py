"""Ext^1 between string modules: injective-factoring maps and explicit extensions."""

from dataclasses import dataclass

from core.ar_translate import cohook_completion, injective_string
from core.fringe import fringe
from core.hom_kiss import hom_basis, hom_tau_dim
from core.strings import (
    Interval,
    SignedArrow,
    StringWalk,
    is_quotient_interval,
    is_submodule_interval,
    make_string,
    make_walk,
    substring,
)

CONNECTING = "connecting"
TWO_SIDED = "two-sided"

D_ARM = "D"
I_ARM = "I"


class ExtCountMismatch(ValueError):
    """The combinatorial Ext^1 counts disagree with each other."""


@dataclass(frozen=True)
class ArmLocation:
    arm: str
    interval: Interval


@dataclass(frozen=True)
class ExtensionSeq:
    """0 -> left -> middle -> right -> 0 with string middle terms."""
    left: StringWalk
    right: StringWalk
    middle: tuple
    kind: str
    witness: object


@dataclass(frozen=True)
class Connection:
    """X_o then alpha^- then Y_o is a string."""
    y_walk: StringWalk
    arrow: object
    x_walk: StringWalk


def _other(arrows, arrow):
    return next((a for a in arrows if a != arrow), None)


def inverts_target(f, pair):
    """
    Whether the target walk must be inverted to read E like the source.

    For a lazy E the target is oriented so that the letter of F1 leaving
    the vertex and the letter of D2 entering it compose nonzero in the
    fringed algebra; a missing letter stands for the other arrow of the
    fringed quiver at that vertex with the same direction.

    Returns:
        True or False, or None when a lazy operand leaves it undetermined
    """
    if pair.flip:
        return True
    quotient, submodule = pair.quotient, pair.submodule
    if not quotient.middle.is_lazy:
        return False

    v = quotient.middle.base
    hat = f.hat
    d1, f1 = quotient.d_part(), quotient.f_part()
    d2, f2 = submodule.d_part(), submodule.f_part()
    leaving = d1.letters[-1].arrow if d1.letters else None
    theta = f1.letters[0].arrow if f1.letters else None
    if theta is None and leaving is not None:
        theta = _other(hat.outgoing(v), leaving)
    entering = d2.letters[-1].arrow if d2.letters else None
    back = f2.letters[0].arrow if f2.letters else None
    if entering is None and back is not None:
        entering = _other(hat.incoming(v), back)

    if theta is None or entering is None:
        return None
    return not hat.composes_nonzero(theta, entering)


def aligned_flanks(f, pair):
    """Flanks (D1, F1, D2, F2) of a graph map with both walks reading E alike."""
    d1, f1 = pair.quotient.d_part(), pair.quotient.f_part()
    d2, f2 = pair.submodule.d_part(), pair.submodule.f_part()
    if inverts_target(f, pair):
        return d1, f1, f2.inverse(), d2.inverse()
    return d1, f1, d2, f2


def is_two_sided(f, pair):
    """At least one D and at least one F of positive length, after alignment."""
    d1, f1, d2, f2 = aligned_flanks(f, pair)
    return (d1.length > 0 or d2.length > 0) and (f1.length > 0 or f2.length > 0)


def connections(q, y, x):
    """
    Every way of joining X and Y by an inverse arrow into a string.

    Returns:
        List of Connection, one per (orientation of Y, arrow, orientation of X)
    """
    found = {}
    for y_walk in y.orientations():
        for arrow in q.arrows:
            if arrow.source != y_walk.source:
                continue
            for x_walk in x.orientations():
                if x_walk.target != arrow.target:
                    continue
                letters = x_walk.letters + (SignedArrow(arrow, False),) + y_walk.letters
                try:
                    make_walk(q, letters)
                except ValueError:
                    continue
                key = (y_walk.word_key(), arrow.id, x_walk.word_key())
                found.setdefault(key, Connection(y_walk, arrow, x_walk))
    return [found[k] for k in sorted(found)]


def connectable(q, y, x):
    """Arrows alpha with Y alpha^- X a string, one per configuration."""
    return [c.arrow for c in connections(q, y, x)]


def _trailing_direct(w):
    count = 0
    for letter in reversed(w.letters):
        if not letter.direct:
            break
        count += 1
    return count


def connecting_keys(f, x, y):
    """Hom-basis keys of the maps X -> cohook(Y) that come from connections."""
    completion = cohook_completion(f, y)
    a, b = completion.y_interval.start, completion.y_interval.end
    n = completion.walk.length
    keys = set()
    for c in connections(f.base, y, x):
        e = _trailing_direct(c.x_walk)
        if c.x_walk == x:
            x_interval = Interval(x.length - e, x.length)
        else:
            x_interval = Interval(0, e)
        if y.is_lazy:
            on_d_arm = c.arrow == completion.start_shoulder.arrow
        else:
            on_d_arm = c.y_walk == y
        if on_d_arm:
            c_interval = Interval(a - 1 - e, a - 1)
        else:
            c_interval = Interval(b + 1, b + 1 + e)
        if c_interval.start < 0 or c_interval.end > n:
            continue
        keys.add((x_interval, c_interval))
    return keys


def arm_location(completion, interval):
    """Which arm of a cohook completion contains every slot of interval, if any."""
    a, b = completion.y_interval.start, completion.y_interval.end
    if interval.end <= a - 1:
        return ArmLocation(D_ARM, interval)
    if interval.start >= b + 1:
        return ArmLocation(I_ARM, interval)
    return None


def injective_factoring_basis(f, x, y):
    """
    Graph maps X -> cohook(Y) factoring through an injective.

    These are the basis maps whose middle lies on an arm of cohook(Y) and
    that do not come from a connection.
    """
    completion = cohook_completion(f, y)
    connecting = connecting_keys(f, x, y)
    return [
        pair
        for pair in hom_basis(f.hat, x, completion.walk)
        if arm_location(completion, pair.submodule.interval) is not None
        and pair.key() not in connecting
    ]


def two_sided_maps(f, x, y):
    """Two-sided graph maps in Hom(X, Y) over the base algebra."""
    return [pair for pair in hom_basis(f.base, x, y) if is_two_sided(f, pair)]


def middle_terms(q, f, pair):
    """The two middle strings D2.E.F1 and D1.E.F2 of a two-sided map."""
    d1, f1, d2, f2 = aligned_flanks(f, pair)
    e = pair.quotient.middle
    first = make_string(q, d2.letters + e.letters + f1.letters, e.base)
    second = make_string(q, d1.letters + e.letters + f2.letters, e.base)
    return first, second


def _x_run(x, index, step, direct):
    count = 0
    while 0 <= index < x.length and x.letters[index].direct == direct:
        count += 1
        index += step
    return count


def lift_two_sided(f, pair):
    """
    Send a two-sided map X -> Y to a graph map X -> cohook(Y).

    An empty D2 (or F2) is replaced by the shoulder of cohook(Y) on that
    side, and E grows over the shoulder plus the run of X that follows it.

    Returns:
        Hom-basis key in Hom(X, cohook Y), or None if no lift fits
    """
    x = pair.quotient.owner
    y = pair.submodule.owner
    e1 = pair.quotient.interval
    completion = cohook_completion(f, y)
    walk = completion.walk
    n = walk.length
    a, b = completion.y_interval.start, completion.y_interval.end
    e2 = pair.submodule.interval

    candidates = [
        (False, walk, a, b, Interval(e2.start + a, e2.end + a)),
        (True, walk.inverse(), n - b, n - a, Interval(n - (e2.end + a), n - (e2.start + a))),
    ]
    decided = inverts_target(f, pair)
    if decided is not None:
        candidates = [c for c in candidates if c[0] == decided]

    for inverted, target, start, end, interval in candidates:
        left = right = 0
        if interval.start == start:
            if e1.start == 0 or x.letters[e1.start - 1] != target.letters[start - 1]:
                continue
            left = 1 + _x_run(x, e1.start - 2, -1, direct=True)
        if interval.end == end:
            if e1.end == x.length or x.letters[e1.end] != target.letters[end]:
                continue
            right = 1 + _x_run(x, e1.end + 1, 1, direct=False)

        x_interval = Interval(e1.start - left, e1.end + right)
        c_interval = Interval(interval.start - left, interval.end + right)
        if substring(x, x_interval).letters != substring(target, c_interval).letters:
            continue
        if not is_quotient_interval(x, x_interval) or not is_submodule_interval(target, c_interval):
            continue
        if inverted:
            c_interval = Interval(n - c_interval.end, n - c_interval.start)
        return (x_interval, c_interval)
    return None


def ext_basis(q, y, x):
    """
    Basis of Ext^1(Y, X) as explicit short exact sequences.

    Returns:
        List of ExtensionSeq: connecting sequences first, then two-sided ones
    """
    f = fringe(q)
    sequences = []
    for c in connections(q, y, x):
        letters = c.x_walk.letters + (SignedArrow(c.arrow, False),) + c.y_walk.letters
        middle = make_string(q, letters)
        sequences.append(ExtensionSeq(x, y, (middle,), CONNECTING, c.arrow))
    for pair in two_sided_maps(f, x, y):
        sequences.append(ExtensionSeq(x, y, middle_terms(q, f, pair), TWO_SIDED, pair))
    return sequences


def ext_dim(q, y, x):
    """
    dim Ext^1(Y, X) = dim Hom(X, tau Y) minus the maps factoring through injectives.

    Raises:
        ExtCountMismatch: If the explicit basis disagrees with the count, or
            the injective factoring is not certified
    """
    f = fringe(q)
    total = hom_tau_dim(q, x, y)
    factoring = certify_injective_factoring(f, x, y)
    dim = total - len(factoring.basis)

    sequences = ext_basis(q, y, x)
    if len(sequences) != dim:
        raise ExtCountMismatch(
            f"Ext^1({y}, {x}): {total} - {len(factoring.basis)} = {dim} but {len(sequences)} sequences"
        )
    if not factoring.one_sided:
        raise ExtCountMismatch(f"Ext^1({y}, {x}): a map from an injective string is two-sided")
    if not factoring.certified:
        raise ExtCountMismatch(f"Ext^1({y}, {x}): two-sided maps do not lift injectively")
    return dim


@dataclass(frozen=True)
class InjectiveFactoring:
    """Maps X -> cohook(Y) through injectives, with the facts behind the Ext count."""
    basis: tuple
    one_sided: bool
    lifts: tuple
    reserved: frozenset

    @property
    def certified(self):
        """Injective maps are one-sided and two-sided maps lift injectively off the reserved keys."""
        return (self.one_sided
                and None not in self.lifts
                and len(set(self.lifts)) == len(self.lifts)
                and not self.reserved & set(self.lifts))


def certify_injective_factoring(f, x, y):
    """The injective-factoring basis of Hom(X, cohook Y) and its certificate."""
    basis = tuple(injective_factoring_basis(f, x, y))
    one_sided = injective_maps_one_sided(f, [cohook_completion(f, y).walk])
    reserved = frozenset({pair.key() for pair in basis} | connecting_keys(f, x, y))
    lifts = tuple(lift_two_sided(f, pair) for pair in two_sided_maps(f, x, y))
    return InjectiveFactoring(basis, one_sided, lifts, reserved)


def injective_maps_one_sided(f, targets):
    """True iff no graph map from an injective string of the fringed quiver is two-sided."""
    for v in f.hat.vertices:
        source = injective_string(f, v).walk
        for target in targets:
            for pair in hom_basis(f.hat, source, target):
                if is_two_sided(f, pair):
                    return False
    return True
