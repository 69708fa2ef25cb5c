"""Bound quiver file loading, parsing and serialization."""

import re
from pathlib import Path

from core.bound_quiver import (
    Arrow,
    BoundQuiver,
    DuplicateId,
    NonComposableRelation,
    Relation,
    UnknownArrow,
    UnknownVertex,
    validate_gentle,
)

ID = r"[^\s:#^,]+"
ALGEBRA_LINE = re.compile(rf"^algebra\s+(?P<name>{ID})$")
VERTICES_LINE = re.compile(r"^vertices\s*:(?P<ids>.*)$")
ARROW_LINE = re.compile(
    rf"^arrow\s+(?P<id>{ID})\s*:\s*(?P<source>{ID})\s+->\s+(?P<target>{ID})$"
)
RELATIONS_LINE = re.compile(r"^relations\s*:$")
RELATION_LINE = re.compile(rf"^(?P<second>{ID})\s+(?P<first>{ID})$")
ID_TOKEN = re.compile(rf"^{ID}$")


class QuiverSyntaxError(ValueError):
    """Malformed line in a bound quiver document."""

    def __init__(self, message, line, column=1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


def _strip_comment(raw):
    return raw.split("#", 1)[0].rstrip()


def parse_quiver(text):
    """
    Parse a bound quiver document.

    Args:
        text: Document text in the `algebra / vertices / arrow / relations` format

    Returns:
        BoundQuiver: Vertices and arrows in declaration order

    Raises:
        QuiverSyntaxError: On malformed lines (with line and column)
        UnknownVertex, UnknownArrow, NonComposableRelation, DuplicateId
    """
    name = None
    vertices = []
    arrows = {}
    relations = []
    in_relations = False

    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        column = len(line) - len(line.lstrip()) + 1
        line = line.strip()

        if in_relations:
            match = RELATION_LINE.match(line)
            if not match:
                raise QuiverSyntaxError(f"expected a relation `g f`, got {line!r}", number, column)
            second, first = match.group("second"), match.group("first")
            for arrow_id in (second, first):
                if arrow_id not in arrows:
                    raise UnknownArrow(f"line {number}: unknown arrow {arrow_id} in relation")
            g, f = arrows[second], arrows[first]
            if f.target != g.source:
                raise NonComposableRelation(
                    f"line {number}: non-composable relation {second} {first}"
                )
            relations.append(Relation(second=g, first=f))
            continue

        if (match := ALGEBRA_LINE.match(line)):
            if name is not None:
                raise QuiverSyntaxError("second `algebra` line", number, column)
            name = match.group("name")
        elif (match := VERTICES_LINE.match(line)):
            for token in match.group("ids").split():
                if not ID_TOKEN.match(token):
                    raise QuiverSyntaxError(f"bad vertex id {token!r}", number, column)
                if token in vertices:
                    raise DuplicateId(f"line {number}: duplicate id {token}")
                vertices.append(token)
        elif (match := ARROW_LINE.match(line)):
            arrow_id = match.group("id")
            if arrow_id in arrows or arrow_id in vertices:
                raise DuplicateId(f"line {number}: duplicate id {arrow_id}")
            for end in (match.group("source"), match.group("target")):
                if end not in vertices:
                    raise UnknownVertex(f"line {number}: unknown vertex {end} in arrow {arrow_id}")
            arrows[arrow_id] = Arrow(arrow_id, match.group("source"), match.group("target"))
        elif RELATIONS_LINE.match(line):
            in_relations = True
        else:
            raise QuiverSyntaxError(f"unrecognised line {line!r}", number, column)

    if name is None:
        raise QuiverSyntaxError("missing `algebra <name>` line", 1)

    return BoundQuiver(
        name=name,
        vertices=tuple(vertices),
        arrows=tuple(arrows.values()),
        relations=tuple(relations),
    )


def serialize_quiver(q):
    """Render q in the document format accepted by parse_quiver."""
    lines = [f"algebra {q.name}", "vertices: " + " ".join(q.vertices)]
    lines += [f"arrow {a.id}: {a.source} -> {a.target}" for a in q.arrows]
    lines.append("relations:")
    lines += [f"{r.second.id} {r.first.id}" for r in q.relations]
    return "\n".join(lines) + "\n"


def load_quiver(file_path, verbose=True):
    """
    Load a bound quiver from a `.quiver` file.

    Args:
        file_path: Path to the quiver file
        verbose: Print loading progress

    Returns:
        BoundQuiver: Parsed quiver

    Raises:
        ValueError: If the file doesn't exist or cannot be parsed
    """
    path = Path(file_path)

    if not path.exists():
        raise ValueError(f"File not found: {file_path}")

    if verbose:
        print(f"Loading quiver from: {path.name}")

    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ValueError(f"Failed to load quiver: {e}")

    q = parse_quiver(text)

    if verbose:
        print(f"  - Loaded: {len(q.vertices)} vertices, {len(q.arrows)} arrows, "
              f"{len(q.relations)} relations")
    return q


def get_quiver_info(q):
    """Get summary information about a bound quiver."""
    report = validate_gentle(q)
    return {
        'name': q.name,
        'vertices': len(q.vertices),
        'arrows': len(q.arrows),
        'relations': len(q.relations),
        'sources': [v for v in q.vertices if not q.incoming(v)],
        'sinks': [v for v in q.vertices if not q.outgoing(v)],
        'gentle': report.is_gentle,
        'violations': list(report.violations),
    }


def print_quiver_info(q):
    """Print detailed bound quiver information."""
    info = get_quiver_info(q)

    print("\n=== Quiver Information ===")
    print(f"Algebra: {info['name']}")
    print(f"Vertices: {info['vertices']}")
    print(f"Arrows: {info['arrows']}")
    print(f"Relations: {info['relations']}")
    print(f"Sources: {' '.join(info['sources']) or '-'}")
    print(f"Sinks: {' '.join(info['sinks']) or '-'}")
    print(f"Gentle: {'yes' if info['gentle'] else 'no'}")
    for tag, text in info['violations']:
        print(f"  ✗ {tag}: {text}")
    print("=" * 26 + "\n")
