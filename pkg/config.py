"""Configuration constants for the gentle algebra toolkit."""

# Output envelope
SCHEMA_VERSION = "gentle-kiss/1"

# Fringe naming (v = base vertex id, k = slot number 1 or 2)
FRINGE_SOURCE_VERTEX = "{v}.in{k}"   # fringe source feeding v
FRINGE_SINK_VERTEX = "{v}.out{k}"    # fringe sink fed by v
FRINGE_IN_ARROW = "{v}.fi{k}"        # arrow fringe source -> v
FRINGE_OUT_ARROW = "{v}.fo{k}"       # arrow v -> fringe sink

# String literal syntax
INVERSE_MARK = "^-"
LAZY_PATH_FORMAT = "e({v})"

# Enumeration limits
DEFAULT_MAX_LEN = 4     # letters, used when bands make the string set infinite
ORACLE_MAX_LEN = 3      # letters, default for oracle-check
MC_STEP_MARGIN = 8      # extra steps allowed beyond 2 * |arrows of the fringed quiver|

# Corpus location
CORPUS_DIR = "corpus"

# DOT rendering
DOT_GRAPH_NAME = "torsion_poset"
DOT_NODE_STYLE = {
    'shape': 'box',
    'fontname': 'Helvetica',
    'fontsize': '10',
}

# Cover edge colours keyed by kiss count
DOT_EDGE_COLORS = {
    1: 'black',
    2: 'red',
}
DOT_EDGE_COLOR_DEFAULT = 'purple'
