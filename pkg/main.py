#!/usr/bin/env python3
"""
gentle: combinatorics of gentle algebras
Strings, Auslander-Reiten translates, kisses, Ext and support tau-tilting posets
"""

import argparse
import sys
from pathlib import Path

from config import DEFAULT_MAX_LEN, ORACLE_MAX_LEN
from core.ar_translate import cohook_completion, tau
from core.bound_quiver import require_gentle, validate_gentle
from core.ext import ext_basis, ext_dim
from core.fringe import arrow_census, fringe
from core.hom_kiss import hom_basis, hom_tau_dim, kisses
from core.oracle import cross_check
from core.quiver_loader import load_quiver, print_quiver_info, serialize_quiver
from core.strings import detect_bands, enumerate_strings, format_string, parse_string
from core.tau_tilting import (
    kiss_uniqueness_report,
    maximal_collections,
    mc_walk,
    poset,
    torsion_class_strings,
    verify_mc_census,
)
from visualization.dot_export import poset_to_dot, write_dot
from visualization.report import (
    Report,
    kiss_json,
    kiss_line,
    oracle_table,
    sequence_json,
    sequence_line,
)


def build_parser():
    """Build the argument parser with one subparser per command."""
    parser = argparse.ArgumentParser(
        prog="gentle",
        description="Combinatorics of gentle algebras from bound quiver files",
    )
    parser.add_argument("--json", action="store_true", help="print a JSON envelope instead of text")
    parser.add_argument("--quiet", action="store_true", help="suppress progress messages")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("validate", help="check the gentle axioms")
    p.add_argument("file")

    p = sub.add_parser("strings", help="list strings up to inversion")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, default=None,
                   help=f"longest strings listed (default: all, or {DEFAULT_MAX_LEN} with bands)")
    p.add_argument("--bands", action="store_true", help="also list primitive bands")

    p = sub.add_parser("fringe", help="write the fringed bound quiver")
    p.add_argument("file")
    p.add_argument("-o", "--output", default=None, help="output file (default: stdout)")

    p = sub.add_parser("tau", help="Auslander-Reiten translate of a string")
    p.add_argument("file")
    p.add_argument("--string", required=True, dest="string_literal")
    p.add_argument("--fringed", action="store_true", help="translate inside the fringed algebra")

    p = sub.add_parser("kiss", help="kisses from cohook(X) to cohook(Y)")
    p.add_argument("file")
    p.add_argument("x")
    p.add_argument("y")

    p = sub.add_parser("homdim", help="dim Hom(X, Y), or dim Hom(X, tau Y) with --tau")
    p.add_argument("file")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--tau", action="store_true")

    p = sub.add_parser("ext", help="basis of Ext^1(Y, X)")
    p.add_argument("file")
    p.add_argument("y")
    p.add_argument("x")

    p = sub.add_parser("sttilt", help="list maximal non-kissing collections")
    p.add_argument("file")

    p = sub.add_parser("poset", help="torsion-class poset of the maximal collections")
    p.add_argument("file")
    p.add_argument("--dot", default=None, metavar="OUT", help="write a DOT digraph ('-' for stdout)")

    p = sub.add_parser("mc", help="run one Mc walk")
    p.add_argument("file")
    p.add_argument("--torsion-of", type=int, required=True, metavar="INDEX",
                   help="index of the collection in `sttilt` order")
    p.add_argument("--arrow", required=True, metavar="ID", help="arrow of the fringed quiver")

    p = sub.add_parser("census", help="check the Mc walk census")
    p.add_argument("file")
    p.add_argument("--all", action="store_true",
                   help="every maximal collection, with the Ext-projective anchor check")

    p = sub.add_parser("oracle-check", help="cross-check counts against linear algebra")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, default=ORACLE_MAX_LEN)
    p.add_argument("--jobs", type=int, default=1, help="worker processes for pairwise checks")

    return parser


def load_gentle(path, verbose):
    q = load_quiver(path, verbose=verbose)
    require_gentle(q)
    return q


# Commands

def cmd_validate(args, verbose):
    q = load_quiver(args.file, verbose=verbose)
    if verbose:
        print_quiver_info(q)
    report = validate_gentle(q)
    out = Report("validate", {
        'algebra': q.name,
        'gentle': report.is_gentle,
        'string_algebra': report.is_string_algebra,
        'violations': [{'axiom': tag, 'detail': text} for tag, text in report.violations],
    })
    out.line(f"gentle: {'yes' if report.is_gentle else 'no'}")
    for tag, text in report.violations:
        out.line(f"  {tag}: {text}")
    return out, (0 if report.is_gentle else 1)


def cmd_strings(args, verbose):
    q = load_gentle(args.file, verbose)
    bands = detect_bands(q)
    max_len = args.max_len
    if max_len is None:
        max_len = DEFAULT_MAX_LEN if bands else 0
        if bands and verbose:
            print(f"  - Bands present, listing strings up to length {max_len}")
    strings = enumerate_strings(q, max_len)

    out = Report("strings", {
        'algebra': q.name,
        'max_len': max_len,
        'finite': not bands,
        'strings': [format_string(w) for w in strings],
    })
    for w in strings:
        out.line(format_string(w))
    out.line(f"strings: {len(strings)}")
    if args.bands:
        out.field('bands', [format_string(b.word) for b in bands])
        for b in bands:
            out.line(f"band: {format_string(b.word)}")
        out.line(f"bands: {len(bands)}")
    return out, 0


def cmd_fringe(args, verbose):
    q = load_gentle(args.file, verbose)
    f = fringe(q)
    if verbose:
        f.print_fringe_info()
    text = serialize_quiver(f.hat)
    census = arrow_census(f)
    out = Report("fringe", {
        'algebra': f.hat.name,
        'fringe_vertices': list(f.fringe_vertices),
        'sink_fringe_vertices': f.sink_fringe_vertices(),
        'arrows': len(f.hat.arrows),
        'relations': len(f.hat.relations),
        'arrow_census': census.holds,
    })
    if args.output:
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as e:
            raise ValueError(f"Failed to write fringed quiver: {e}")
        out.field('output', args.output)
        out.line(f"✓ Wrote {args.output}")
    else:
        out.field('quiver', text)
        out.lines.extend(text.rstrip("\n").split("\n"))
    return out, 0


def cmd_tau(args, verbose):
    q = load_gentle(args.file, verbose)
    w = parse_string(q, args.string_literal)
    if args.fringed:
        result = format_string(cohook_completion(fringe(q), w).walk)
    else:
        result = str(tau(q, w))
    out = Report("tau", {
        'string': format_string(w),
        'fringed': args.fringed,
        'tau': result,
    })
    out.line(result)
    return out, 0


def cmd_kiss(args, verbose):
    q = load_gentle(args.file, verbose)
    f = fringe(q)
    x, y = parse_string(q, args.x), parse_string(q, args.y)
    source, target = cohook_completion(f, x), cohook_completion(f, y)
    found = kisses(source, target)
    out = Report("kiss", {
        'from': format_string(source.walk),
        'to': format_string(target.walk),
        'kisses': [kiss_json(k) for k in found],
        'count': len(found),
    })
    out.line(f"cohook(X) = {format_string(source.walk)}")
    out.line(f"cohook(Y) = {format_string(target.walk)}")
    for k in found:
        out.line(kiss_line(k))
    out.line(f"kisses: {len(found)}")
    return out, 0


def cmd_homdim(args, verbose):
    q = load_gentle(args.file, verbose)
    x, y = parse_string(q, args.x), parse_string(q, args.y)
    dim = hom_tau_dim(q, x, y) if args.tau else len(hom_basis(q, x, y))
    out = Report("homdim", {
        'x': format_string(x),
        'y': format_string(y),
        'tau': args.tau,
        'dim': dim,
    })
    out.line(str(dim))
    return out, 0


def cmd_ext(args, verbose):
    q = load_gentle(args.file, verbose)
    y, x = parse_string(q, args.y), parse_string(q, args.x)
    dim = ext_dim(q, y, x)
    sequences = ext_basis(q, y, x)
    out = Report("ext", {
        'y': format_string(y),
        'x': format_string(x),
        'dim': dim,
        'sequences': [sequence_json(s) for s in sequences],
    })
    out.line(f"dim Ext^1(Y, X) = {dim}")
    for s in sequences:
        out.line(sequence_line(s))
    return out, 0


def cmd_sttilt(args, verbose):
    q = load_gentle(args.file, verbose)
    collections = maximal_collections(q, fringe(q))
    out = Report("sttilt", {
        'algebra': q.name,
        'collections': [[item.label() for item in c.items] for c in collections],
    })
    for i, c in enumerate(collections):
        out.line(f"{i}: {c.label()}")
    out.line(f"collections: {len(collections)}")
    return out, 0


def cmd_poset(args, verbose):
    q = load_gentle(args.file, verbose)
    f = fringe(q)
    torsion_poset = poset(q, f)
    uniqueness = kiss_uniqueness_report(q, f, torsion_poset, strict=True)
    covers = sorted(torsion_poset.covers, key=lambda c: (c.upper, c.lower))
    out = Report("poset", {
        'nodes': [node.label() for node in torsion_poset.nodes],
        'covers': [{'upper': c.upper, 'lower': c.lower, 'kisses': c.kisses} for c in covers],
        'top': torsion_poset.top(),
        'bottom': torsion_poset.bottom(),
        'all_bricks': uniqueness.all_bricks,
    })

    if args.dot == "-":
        text = poset_to_dot(torsion_poset)
        return out.field('dot', text).line(text.rstrip("\n")), 0
    if args.dot:
        write_dot(torsion_poset, args.dot)
        out.field('dot', args.dot)
        if verbose:
            print(f"✓ Wrote {args.dot}")

    for i, node in enumerate(torsion_poset.nodes):
        out.line(f"{i}: {node.label()}")
    for c in covers:
        out.line(f"{c.upper} -> {c.lower} kisses {c.kisses}")
    out.line(f"top: {torsion_poset.top()}  bottom: {torsion_poset.bottom()}")
    return out, 0


def cmd_mc(args, verbose):
    q = load_gentle(args.file, verbose)
    f = fringe(q)
    collections = maximal_collections(q, f)
    if not 0 <= args.torsion_of < len(collections):
        raise ValueError(f"collection index {args.torsion_of} out of range 0..{len(collections) - 1}")
    if not f.hat.has_arrow(args.arrow):
        raise ValueError(f"unknown arrow of the fringed quiver: {args.arrow}")
    coll = collections[args.torsion_of]
    keys = {w.key() for w in torsion_class_strings(q, coll)}
    walk = mc_walk(f, keys, f.hat.arrow(args.arrow)).walk
    out = Report("mc", {
        'collection': coll.label(),
        'arrow': args.arrow,
        'walk': format_string(walk),
    })
    out.line(format_string(walk))
    return out, 0


def cmd_census(args, verbose):
    q = load_gentle(args.file, verbose)
    f = fringe(q)
    collections = maximal_collections(q, f)
    torsion_poset = poset(q, f, collections)
    if args.all:
        selected = collections
    else:
        selected = [collections[torsion_poset.top()]]

    out = Report("census", {'algebra': q.name})
    results = []
    failed = 0
    for coll in selected:
        report = verify_mc_census(q, f, coll, check_anchors=args.all)
        mark = "✓" if report.holds else "✗"
        failed += not report.holds
        walks = sum(report.produced.values())
        line = f"{mark} {coll.label()}: {walks} walks"
        if args.all:
            line += f", anchors {'ok' if report.anchors_ok else 'failed'}"
        out.line(line)
        results.append({
            'collection': coll.label(),
            'walks': walks,
            'holds': report.holds,
            'anchors_ok': report.anchors_ok,
        })
    uniqueness = kiss_uniqueness_report(q, f, torsion_poset)
    out.line(f"{'✓' if uniqueness.holds else '✗'} kiss uniqueness on {len(uniqueness.counts)} covers")
    out.field('kiss_uniqueness', uniqueness.holds)
    out.field('results', results)
    out.line(f"census: {len(selected) - failed}/{len(selected)} passed")
    return out, (1 if failed or not uniqueness.holds else 0)


def cmd_oracle_check(args, verbose):
    q = load_gentle(args.file, verbose)
    fac_collections = ()
    if not detect_bands(q):
        fac_collections = maximal_collections(q, fringe(q))
    if verbose:
        print(f"Cross-checking strings up to length {args.max_len} ({args.jobs} job(s))...")
    rows = cross_check(q, args.max_len, jobs=args.jobs, fac_collections=fac_collections)
    out = Report("oracle-check", {
        'algebra': q.name,
        'max_len': args.max_len,
        'rows': [
            {'check': r.name, 'checked': r.checked, 'failures': r.failures, 'passed': r.passed}
            for r in rows
        ],
    })
    out.lines.extend(oracle_table(rows))
    for r in rows:
        for failure in r.failures:
            out.line(f"  ✗ {r.name}: {failure}")
    return out, (0 if all(r.passed for r in rows) else 1)


HANDLERS = {
    'validate': cmd_validate,
    'strings': cmd_strings,
    'fringe': cmd_fringe,
    'tau': cmd_tau,
    'kiss': cmd_kiss,
    'homdim': cmd_homdim,
    'ext': cmd_ext,
    'sttilt': cmd_sttilt,
    'poset': cmd_poset,
    'mc': cmd_mc,
    'census': cmd_census,
    'oracle-check': cmd_oracle_check,
}


def main(argv=None):
    """
    Run one gentle command.

    Args:
        argv: Argument list without the program name (default: sys.argv[1:])

    Returns:
        int: 0 on success, 1 on a domain error or failed check, 2 on usage error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    verbose = not (args.quiet or args.json)
    try:
        out, code = HANDLERS[args.command](args, verbose)
    except ValueError as e:
        print(f"gentle: error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1

    out.emit(as_json=args.json)
    return code


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n\nOperation cancelled by user.")
        sys.exit(0)
    except Exception as e:
        print(f"\n\nUnexpected error: {e}")
        import traceback
        traceback.print_exc()
        sys.exit(1)
