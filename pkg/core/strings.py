"""
Strings over a bound quiver: signed-arrow words, canonical forms,
enumeration and band detection.

Letters are stored in traversal order: letters[0] is traversed first. The
right-to-left notation of the literature (C = g_n ... g_1) is only used for
display and for the CLI literal syntax. A walk of length n visits the
vertex slots 0..n, slot 0 being its source.
"""

from collections import Counter
from dataclasses import dataclass

from config import INVERSE_MARK, LAZY_PATH_FORMAT
from core.bound_quiver import directed_cycle_nodes


class NotComposable(ValueError):
    """Consecutive letters do not meet at a common vertex."""

    def __init__(self, message, position):
        self.position = position
        super().__init__(f"position {position}: {message}")


class ReducedPairViolation(NotComposable):
    """A letter is immediately followed by its own inverse."""


class RelationViolation(NotComposable):
    """The word or its inverse passes through a relation."""


class StringSyntaxError(ValueError):
    """Malformed string literal."""


class IntervalOutOfBounds(ValueError):
    """Interval does not fit inside its walk."""


class InfiniteType(ValueError):
    """The algebra has bands, so its string set is infinite."""

    def __init__(self, band):
        self.band = band
        super().__init__(f"infinite type: band {format_string(band.word)}")


@dataclass(frozen=True)
class SignedArrow:
    arrow: object
    direct: bool = True

    @property
    def source(self):
        return self.arrow.source if self.direct else self.arrow.target

    @property
    def target(self):
        return self.arrow.target if self.direct else self.arrow.source

    def inverse(self):
        return SignedArrow(self.arrow, not self.direct)

    def sort_key(self):
        return (self.arrow.id, 0 if self.direct else 1)

    def label(self):
        return self.arrow.id if self.direct else self.arrow.id + INVERSE_MARK


@dataclass(frozen=True)
class Interval:
    """Letters [start, end) of a walk; start == end is the vertex slot `start`."""
    start: int
    end: int

    @property
    def length(self):
        return self.end - self.start


@dataclass(frozen=True)
class StringWalk:
    """
    A directed occurrence of a string.

    `base` is the source vertex. It is the only datum of a lazy path.
    Equality is equality of directed words; use `key()` or `canonical()` to
    compare modules.
    """
    letters: tuple
    base: str

    @property
    def length(self):
        return len(self.letters)

    @property
    def is_lazy(self):
        return not self.letters

    @property
    def source(self):
        return self.base

    @property
    def target(self):
        return self.letters[-1].target if self.letters else self.base

    def slot(self, k):
        """Vertex visited at slot k (0 <= k <= length)."""
        return self.base if k == 0 else self.letters[k - 1].target

    def slots(self):
        return [self.slot(k) for k in range(self.length + 1)]

    def inverse(self):
        if not self.letters:
            return self
        letters = tuple(letter.inverse() for letter in reversed(self.letters))
        return StringWalk(letters, letters[0].source)

    def word_key(self):
        return (self.length, tuple(letter.sort_key() for letter in self.letters),
                self.base if not self.letters else "")

    def key(self):
        """Orientation-free identity of the string module."""
        return min(self.word_key(), self.inverse().word_key())

    def canonical(self):
        inverse = self.inverse()
        return self if self.word_key() <= inverse.word_key() else inverse

    def is_canonical(self):
        return self.word_key() <= self.inverse().word_key()

    def orientations(self):
        """The distinct directed words representing this string."""
        inverse = self.inverse()
        return [self] if inverse == self else [self, inverse]

    def is_direct(self):
        return all(letter.direct for letter in self.letters)

    def is_inverse(self):
        return all(not letter.direct for letter in self.letters)

    def arrows(self):
        return {letter.arrow for letter in self.letters}

    def __str__(self):
        return format_string(self)


@dataclass(frozen=True)
class Band:
    word: StringWalk


def lazy(vertex):
    """The lazy path e_v."""
    return StringWalk((), vertex)


def pair_violation(q, first, then):
    """
    Check the letter `then` traversed right after `first`.

    Returns:
        None when the pair is allowed, else the violation class
    """
    if first.target != then.source:
        return NotComposable
    if first.arrow == then.arrow and first.direct != then.direct:
        return ReducedPairViolation
    if first.direct and then.direct and q.is_relation(then.arrow, first.arrow):
        return RelationViolation
    if not first.direct and not then.direct and q.is_relation(first.arrow, then.arrow):
        return RelationViolation
    return None


def valid_pair(q, first, then):
    return pair_violation(q, first, then) is None


def make_walk(q, letters, base=None):
    """
    Validate a directed word without canonicalizing it.

    Args:
        q: BoundQuiver the letters live in
        letters: Letters in traversal order
        base: Vertex of the lazy path when letters is empty

    Returns:
        StringWalk in the given orientation
    """
    letters = tuple(letters)
    for letter in letters:
        if not q.has_arrow(letter.arrow.id):
            raise NotComposable(f"arrow {letter.arrow.id} not in {q.name}", 0)
    for position in range(len(letters) - 1):
        violation = pair_violation(q, letters[position], letters[position + 1])
        if violation is NotComposable:
            raise NotComposable(
                f"{letters[position].label()} then {letters[position + 1].label()} do not compose",
                position,
            )
        if violation is ReducedPairViolation:
            raise ReducedPairViolation(
                f"{letters[position].label()} followed by its inverse", position
            )
        if violation is RelationViolation:
            raise RelationViolation(
                f"{letters[position].label()} then {letters[position + 1].label()} is a relation",
                position,
            )
    if letters:
        base = letters[0].source
    elif base is None or base not in q.vertices:
        raise NotComposable(f"lazy path needs a vertex of {q.name}", 0)
    return StringWalk(letters, base)


def make_string(q, letters, base=None):
    """Validate a word and return its canonical orientation."""
    return make_walk(q, letters, base).canonical()


def inverse(w):
    return w.inverse()


def substring(w, iv):
    """
    The letters of w inside iv, in w's orientation.

    An empty interval gives the lazy path at the matching vertex slot.
    """
    if not 0 <= iv.start <= iv.end <= w.length:
        raise IntervalOutOfBounds(f"interval [{iv.start}, {iv.end}) outside length {w.length}")
    return StringWalk(w.letters[iv.start:iv.end], w.slot(iv.start))


def concatenate(q, *walks):
    """Join directed walks end to start, validating the junctions."""
    letters = []
    base = walks[0].base
    for walk in walks:
        letters.extend(walk.letters)
    return make_walk(q, letters, base)


def dimension_vector(q, w):
    """Number of visits of the walk to each vertex."""
    counts = Counter(w.slots())
    return {v: counts[v] for v in q.vertices if counts[v]}


def candidate_letters(q, vertex, leaving, direct):
    """Letters of the given sign that leave (or enter) vertex."""
    if leaving:
        pool = q.outgoing(vertex) if direct else q.incoming(vertex)
    else:
        pool = q.incoming(vertex) if direct else q.outgoing(vertex)
    return [SignedArrow(arrow, direct) for arrow in pool]


def extensions(q, w, at_start, direct):
    """
    Single letters of the given sign that extend w at one end.

    At the start the new letter is traversed before w, at the end after it.
    A positive-length walk has at most one extension per (end, sign);
    a lazy path may have two.
    """
    if at_start:
        found = candidate_letters(q, w.source, leaving=False, direct=direct)
        if w.letters:
            found = [x for x in found if valid_pair(q, x, w.letters[0])]
    else:
        found = candidate_letters(q, w.target, leaving=True, direct=direct)
        if w.letters:
            found = [x for x in found if valid_pair(q, w.letters[-1], x)]
    return found


def extend(w, letter, at_start):
    if at_start:
        return StringWalk((letter,) + w.letters, letter.source)
    return StringWalk(w.letters + (letter,), w.base)


def all_letters(q):
    letters = []
    for arrow in q.arrows:
        letters.append(SignedArrow(arrow, True))
        letters.append(SignedArrow(arrow, False))
    return letters


def transition_graph(q):
    """Letters of q and the index pairs (x, y) with y allowed after x."""
    letters = all_letters(q)
    edges = [
        (i, j)
        for i, x in enumerate(letters)
        for j, y in enumerate(letters)
        if valid_pair(q, x, y)
    ]
    return letters, edges


def _rotation_key(letters):
    keys = [tuple(x.sort_key() for x in letters[i:] + letters[:i]) for i in range(len(letters))]
    return min(keys)


def detect_bands(q):
    """
    Bands found as elementary circuits of the letter-transition graph.

    Returns:
        List of Band, one per class under rotation and inversion
    """
    letters, edges = transition_graph(q)
    if not directed_cycle_nodes(len(letters), edges):
        return []

    successors = {i: [] for i in range(len(letters))}
    for i, j in edges:
        successors[i].append(j)

    circuits = []
    for start in range(len(letters)):
        stack = [(start, [start])]
        while stack:
            node, path = stack.pop()
            for nxt in successors[node]:
                if nxt == start:
                    circuits.append(path)
                elif nxt > start and nxt not in path:
                    stack.append((nxt, path + [nxt]))

    bands = {}
    for circuit in circuits:
        word = tuple(letters[i] for i in circuit)
        inverse_word = tuple(x.inverse() for x in reversed(word))
        key = min(_rotation_key(list(word)), _rotation_key(list(inverse_word)))
        if key not in bands:
            bands[key] = Band(StringWalk(word, word[0].source))
    return [bands[k] for k in sorted(bands)]


def enumerate_strings(q, max_len):
    """
    All strings of q up to inversion, by breadth-first layers.

    Args:
        q: Gentle BoundQuiver
        max_len: Largest length kept; 0 means run to exhaustion

    Returns:
        Canonical StringWalks sorted by (length, word)

    Raises:
        InfiniteType: If max_len is 0 and q has bands
    """
    if max_len == 0:
        bands = detect_bands(q)
        if bands:
            raise InfiniteType(bands[0])

    found = {}
    layer = [lazy(v) for v in q.vertices]
    length = 0
    while layer:
        for walk in layer:
            found.setdefault(walk.key(), walk.canonical())
        if max_len and length == max_len:
            break
        if length == 0:
            layer = [StringWalk((x,), x.source) for x in all_letters(q)]
        else:
            layer = [
                extend(walk, letter, at_start=False)
                for walk in layer
                for direct in (True, False)
                for letter in extensions(q, walk, at_start=False, direct=direct)
            ]
        length += 1
    return [found[k] for k in sorted(found)]


def parse_string(q, text):
    """
    Read a string literal: letters right to left, `^-` for inverses,
    `e(v)` for a lazy path.

    Returns:
        StringWalk in the written orientation
    """
    text = text.strip()
    if text.startswith("e(") and text.endswith(")"):
        vertex = text[2:-1]
        if vertex not in q.vertices:
            raise StringSyntaxError(f"unknown vertex in lazy path: {vertex}")
        return StringWalk((), vertex)
    tokens = text.split()
    if not tokens:
        raise StringSyntaxError("empty string literal")
    letters = []
    for token in reversed(tokens):
        direct = not token.endswith(INVERSE_MARK)
        arrow_id = token if direct else token[:-len(INVERSE_MARK)]
        if not q.has_arrow(arrow_id):
            raise StringSyntaxError(f"unknown arrow in string literal: {arrow_id}")
        letters.append(SignedArrow(q.arrow(arrow_id), direct))
    return make_walk(q, letters)


def format_string(w):
    """Literal syntax for w, letters written right to left."""
    if w.is_lazy:
        return LAZY_PATH_FORMAT.format(v=w.base)
    return " ".join(letter.label() for letter in reversed(w.letters))


def is_quotient_interval(w, iv):
    """E = w[iv] is a quotient: inverse letter (or nothing) before, direct (or nothing) after."""
    before = iv.start == 0 or not w.letters[iv.start - 1].direct
    after = iv.end == w.length or w.letters[iv.end].direct
    return before and after


def is_submodule_interval(w, iv):
    """E = w[iv] is a submodule: direct letter (or nothing) before, inverse (or nothing) after."""
    before = iv.start == 0 or w.letters[iv.start - 1].direct
    after = iv.end == w.length or not w.letters[iv.end].direct
    return before and after


def occurrences(w, pattern):
    """
    Intervals of w whose letters spell pattern or its inverse.

    Returns:
        List of (Interval, flipped) pairs; a lazy pattern matches each vertex
        slot once, unflipped
    """
    found = []
    n = pattern.length
    if n == 0:
        return [(Interval(k, k), False) for k in range(w.length + 1) if w.slot(k) == pattern.base]
    flipped_letters = pattern.inverse().letters
    for start in range(w.length - n + 1):
        window = w.letters[start:start + n]
        if window == pattern.letters:
            found.append((Interval(start, start + n), False))
        elif window == flipped_letters:
            found.append((Interval(start, start + n), True))
    return found
