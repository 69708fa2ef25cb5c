#!/usr/bin/env python3
"""
Quick demo of the gentle algebra toolkit on the path algebra of A2.
Walks through strings, translates, kisses, Ext and the tau-tilting poset
without user interaction.
"""

from pathlib import Path

from config import CORPUS_DIR
from core.ar_translate import cohook_completion, tau
from core.bound_quiver import require_gentle
from core.ext import ext_basis
from core.fringe import fringe
from core.hom_kiss import hom_tau_dim, kisses
from core.quiver_loader import load_quiver, print_quiver_info
from core.strings import enumerate_strings, format_string
from core.tau_tilting import poset, verify_mc_census
from visualization.dot_export import write_dot
from visualization.report import kiss_line, sequence_line


def demo(name="a2"):
    """Run a quick demonstration on one corpus quiver."""
    print("\n" + "=" * 60)
    print("  Gentle Algebra Toolkit - DEMO")
    print("=" * 60 + "\n")

    # Step 1: Load quiver
    quiver_path = Path(CORPUS_DIR) / f"{name}.quiver"
    print(f"Step 1: Loading {quiver_path}...")
    q = load_quiver(quiver_path)
    require_gentle(q)
    print_quiver_info(q)

    # Step 2: Strings and translates
    print("Step 2: Strings and their translates...")
    strings = enumerate_strings(q, 0)
    for w in strings:
        print(f"  tau({format_string(w)}) = {tau(q, w)}")

    # Step 3: Fringe
    print("\nStep 3: Fringing the quiver...")
    f = fringe(q)
    f.print_fringe_info()
    for w in strings:
        print(f"  cohook({format_string(w)}) = {format_string(cohook_completion(f, w).walk)}")

    # Step 4: Kisses against Hom(X, tau Y)
    print("\nStep 4: Counting kisses...")
    for x in strings:
        for y in strings:
            found = kisses(cohook_completion(f, x), cohook_completion(f, y))
            if not found:
                continue
            mark = "✓" if len(found) == hom_tau_dim(q, x, y) else "✗"
            print(f"  {mark} {format_string(x)} -> {format_string(y)}: {len(found)} kiss(es)")
            for k in found:
                print(f"      {kiss_line(k)}")

    # Step 5: Extensions
    print("\nStep 5: Non-split extensions...")
    for y in strings:
        for x in strings:
            for seq in ext_basis(q, y, x):
                print(f"  {sequence_line(seq)}")

    # Step 6: Poset and census
    print("\nStep 6: Building the torsion-class poset...")
    torsion_poset = poset(q, f)
    for i, node in enumerate(torsion_poset.nodes):
        report = verify_mc_census(q, f, node, check_anchors=True)
        mark = "✓" if report.holds else "✗"
        print(f"  {mark} {i}: {node.label()} ({sum(report.produced.values())} walks)")
    print(f"  Covers: {len(torsion_poset.covers)}")

    # Step 7: Export
    print("\nStep 7: Exporting DOT...")
    output_path = f"{name}_poset.dot"
    write_dot(torsion_poset, output_path)
    print(f"\n✓ Exported: {output_path}")

    print("\n" + "=" * 60)
    print("  Demo Complete!")
    print("=" * 60 + "\n")

    print("To run a single command, use: python main.py --help")


if __name__ == "__main__":
    try:
        demo()
    except KeyboardInterrupt:
        print("\n\nDemo cancelled.")
    except Exception as e:
        print(f"\n\nError: {e}")
        import traceback
        traceback.print_exc()
