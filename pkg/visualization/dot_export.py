"""DOT rendering of the torsion-class poset."""

from pathlib import Path

from config import DOT_EDGE_COLOR_DEFAULT, DOT_EDGE_COLORS, DOT_GRAPH_NAME, DOT_NODE_STYLE


def _quote(text):
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _attributes(pairs):
    return ", ".join(f"{key}={_quote(str(value))}" for key, value in pairs.items())


def poset_to_dot(torsion_poset, name=DOT_GRAPH_NAME):
    """
    Render the cover relation as a DOT digraph.

    Nodes are labelled by their collections; edges point from the larger
    torsion class to the smaller one and carry the kiss count of the
    exchanged pair.

    Args:
        torsion_poset: TorsionPoset
        name: Graph name

    Returns:
        str: DOT source ending in a newline
    """
    lines = [f"digraph {name} {{", f"  node [{_attributes(DOT_NODE_STYLE)}];"]
    for i, node in enumerate(torsion_poset.nodes):
        lines.append(f"  n{i} [label={_quote(node.label())}];")
    for cover in sorted(torsion_poset.covers, key=lambda c: (c.upper, c.lower)):
        color = DOT_EDGE_COLORS.get(cover.kisses, DOT_EDGE_COLOR_DEFAULT)
        attrs = _attributes({'label': cover.kisses, 'color': color})
        lines.append(f"  n{cover.upper} -> n{cover.lower} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot(torsion_poset, output_path):
    """
    Write the poset as a DOT file.

    Raises:
        ValueError: If the file cannot be written
    """
    path = Path(output_path)
    try:
        path.write_text(poset_to_dot(torsion_poset), encoding="utf-8")
    except OSError as e:
        raise ValueError(f"Failed to write DOT file: {e}")
    return path
