"""Plain-text and JSON rendering of command results."""

import json
import sys

from config import SCHEMA_VERSION
from core.strings import format_string


class Report:
    """One command's result, renderable as plain lines or a JSON envelope."""

    def __init__(self, command, payload=None):
        """
        Initialize an empty report.

        Args:
            command: Subcommand name, copied into the JSON envelope
            payload: Initial JSON fields (optional)
        """
        self.command = command
        self.payload = dict(payload or {})
        self.lines = []

    def line(self, text=""):
        self.lines.append(text)
        return self

    def field(self, key, value):
        self.payload[key] = value
        return self

    def envelope(self):
        return {'schema': SCHEMA_VERSION, 'command': self.command, **self.payload}

    def render(self, as_json=False):
        if as_json:
            return json.dumps(self.envelope(), indent=2, ensure_ascii=False) + "\n"
        return "".join(text + "\n" for text in self.lines)

    def emit(self, as_json=False, stream=None):
        (stream or sys.stdout).write(self.render(as_json))


def interval_json(iv):
    return [iv.start, iv.end]


def kiss_json(k):
    before_x, after_x, before_y, after_y = k.flanking_letters()
    return {
        'from': interval_json(k.from_interval),
        'to': interval_json(k.to_interval),
        'middle': format_string(k.pair.quotient.middle),
        'flanks': [before_x.label(), after_x.label(), before_y.label(), after_y.label()],
    }


def kiss_line(k):
    """`[i,j) -> [k,l) Z=<middle> flanks a b | c d`."""
    data = kiss_json(k)
    (i, j), (s, t) = data['from'], data['to']
    flanks = data['flanks']
    return (f"[{i},{j}) -> [{s},{t}) Z={data['middle']} "
            f"flanks {flanks[0]} {flanks[1]} | {flanks[2]} {flanks[3]}")


def sequence_line(seq):
    """`0 -> X -> M1 (+) M2 -> Y -> 0` with string literals."""
    middle = " (+) ".join(format_string(m) for m in seq.middle)
    return f"0 -> {format_string(seq.left)} -> {middle} -> {format_string(seq.right)} -> 0"


def sequence_json(seq):
    return {
        'kind': seq.kind,
        'left': format_string(seq.left),
        'middle': [format_string(m) for m in seq.middle],
        'right': format_string(seq.right),
    }


def oracle_table(rows):
    """Fixed-width pass/fail table of cross-check rows."""
    lines = [f"{'check':<6} {'pairs':>6} {'fail':>5}  result"]
    for row in rows:
        mark = "✓" if row.passed else "✗"
        lines.append(f"{row.name:<6} {row.checked:>6} {len(row.failures):>5}  {mark}")
    return lines
