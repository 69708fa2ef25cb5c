"""Hook and cohook surgery, the Auslander-Reiten translate and long strings."""

from dataclasses import dataclass

from core.strings import (
    Interval,
    SignedArrow,
    StringWalk,
    extend,
    extensions,
    format_string,
    is_submodule_interval,
    lazy,
    occurrences,
    substring,
)

START = "start"
END = "end"

COHOOK = "cohook"
INJECTIVE = "injective"


@dataclass(frozen=True)
class TauResult:
    """A translate; value None is the zero module."""
    value: StringWalk = None

    @property
    def is_zero(self):
        return self.value is None

    def __str__(self):
        return "0" if self.value is None else format_string(self.value)


@dataclass(frozen=True)
class LongString:
    """
    A string of the fringed quiver running between two fringe vertices.

    For a cohook completion of Y the traversal layout is
    [D-arm, alpha^-, Y, beta, I-arm] with Y occupying `y_interval`; the
    D-arm is direct and the I-arm inverse. Injective strings carry no layout.
    """
    walk: StringWalk
    kind: str
    origin: object
    y_interval: Interval = None

    @property
    def is_injective(self):
        return self.kind == INJECTIVE

    @property
    def start_shoulder(self):
        return self.walk.letters[self.y_interval.start - 1]

    @property
    def end_shoulder(self):
        return self.walk.letters[self.y_interval.end]

    def d_arm_slots(self):
        """Vertex slots of the D-arm (traversed before the start shoulder)."""
        return range(0, self.y_interval.start)

    def i_arm_slots(self):
        """Vertex slots of the I-arm (traversed after the end shoulder)."""
        return range(self.y_interval.end + 1, self.walk.length + 1)

    def key(self):
        return self.walk.key()

    def __str__(self):
        return format_string(self.walk)


def _maximal_run(q, w, at_start, direct):
    while True:
        found = extensions(q, w, at_start=at_start, direct=direct)
        if not found:
            return w
        w = extend(w, found[0], at_start)


def add_cohook(q, w, end):
    """
    Add a cohook at one end of w.

    At the start an inverse letter is traversed into s(w), preceded by the
    maximal direct run; at the end a direct letter leaves e(w), followed by
    the maximal inverse run. A lazy path offers its outgoing arrows, the
    smaller id to the start side.

    Args:
        q: BoundQuiver
        w: StringWalk
        end: START or END

    Returns:
        StringWalk, or None when the first letter cannot be attached
    """
    if w.is_lazy:
        outgoing = q.outgoing(w.base)
        slot = 0 if end == START else 1
        if len(outgoing) <= slot:
            return None
        first = [SignedArrow(outgoing[slot], direct=(end == END))]
    else:
        first = extensions(q, w, at_start=(end == START), direct=(end == END))
        if not first:
            return None

    if end == START:
        return _maximal_run(q, extend(w, first[0], at_start=True), at_start=True, direct=True)
    return _maximal_run(q, extend(w, first[0], at_start=False), at_start=False, direct=False)


def remove_hook(q, w, end):
    """
    Remove a hook at one end of w.

    At the start everything up to and including the first direct letter is
    dropped; at the end everything from the last inverse letter on.

    Returns:
        StringWalk, or None when w has no letter of the needed sign
    """
    if end == START:
        for k, letter in enumerate(w.letters):
            if letter.direct:
                return substring(w, Interval(k + 1, w.length))
        return None
    for m in range(w.length - 1, -1, -1):
        if not w.letters[m].direct:
            return substring(w, Interval(0, m))
    return None


def tau(q, w):
    """
    Auslander-Reiten translate of a string module.

    Cohooks are added wherever possible; hooks are removed at the ends
    where they were not.

    Returns:
        TauResult, zero exactly for projective strings
    """
    with_start = add_cohook(q, w, START)
    end_possible = add_cohook(q, w, END) is not None

    if with_start is not None and end_possible:
        return TauResult(add_cohook(q, with_start, END))
    if with_start is not None:
        return TauResult(remove_hook(q, with_start, END))
    if end_possible:
        return TauResult(remove_hook(q, add_cohook(q, w, END), START))

    trimmed = remove_hook(q, w, START)
    if trimmed is None:
        return TauResult(None)
    return TauResult(remove_hook(q, trimmed, END))


def cohook_completion(f, w):
    """
    Cohooks added to both ends of a base string inside the fringed quiver.

    Args:
        f: FringedAlgebra
        w: StringWalk over the base quiver, in the orientation to complete

    Returns:
        LongString with the position of w recorded
    """
    with_start = add_cohook(f.hat, w, START)
    a = with_start.length - w.length
    walk = add_cohook(f.hat, with_start, END)
    return LongString(walk, COHOOK, w, Interval(a, a + w.length))


def injective_string(f, v):
    """
    The injective string I_v of the fringed quiver.

    The maximal direct path into v through the smaller incoming arrow is
    followed by the inverse of the maximal direct path through the other.
    """
    incoming = f.hat.incoming(v)
    w = lazy(v)
    if incoming:
        w = extend(w, SignedArrow(incoming[0], True), at_start=True)
        w = _maximal_run(f.hat, w, at_start=True, direct=True)
    if len(incoming) > 1:
        w = extend(w, SignedArrow(incoming[1], False), at_start=False)
        w = _maximal_run(f.hat, w, at_start=False, direct=False)
    return LongString(w, INJECTIVE, v)


def projective_string(q, v):
    """
    The projective string P_v: the inverse of the maximal direct path out of
    v through the smaller outgoing arrow, then the path through the other.
    """
    outgoing = q.outgoing(v)
    w = lazy(v)
    if outgoing:
        w = extend(w, SignedArrow(outgoing[0], False), at_start=True)
        w = _maximal_run(q, w, at_start=True, direct=False)
    if len(outgoing) > 1:
        w = extend(w, SignedArrow(outgoing[1], True), at_start=False)
        w = _maximal_run(q, w, at_start=False, direct=True)
    return w


def tau_interval(f, long_string):
    """
    Position of the base translate inside a cohook completion.

    A shoulder on a base arrow means the base quiver also takes that
    cohook, which differs from the fringed one only by the outermost
    fringe letter. A fringe shoulder means a hook is removed on that side.

    Returns:
        Interval of cohook(Y) spelling tau(Y) up to inversion, or None when
        Y is projective
    """
    walk = long_string.walk
    a, b = long_string.y_interval.start, long_string.y_interval.end
    base_ids = {arrow.id for arrow in f.base.arrows}
    start_cohook = long_string.start_shoulder.arrow.id in base_ids
    end_cohook = long_string.end_shoulder.arrow.id in base_ids

    if start_cohook:
        start = 1
    else:
        limit = b + 1 if end_cohook else b
        start = next((k + 1 for k in range(a, limit) if walk.letters[k].direct), None)
        if start is None:
            return None

    if end_cohook:
        end = walk.length - 1
    else:
        lower = a - 1 if start_cohook else a
        end = next((m for m in range(b - 1, lower - 1, -1) if not walk.letters[m].direct), None)
        if end is None:
            return None

    if start > end:
        return None
    return Interval(start, end)


def tau_submodule_check(q, f, w):
    """True iff tau(q, w) sits in cohook(w) as a submodule factorization."""
    translate = tau(q, w)
    if translate.is_zero:
        return True
    completion = cohook_completion(f, w).walk
    return any(
        is_submodule_interval(completion, interval)
        for interval, _ in occurrences(completion, translate.value)
    )
