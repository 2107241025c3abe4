"""Run a scenario file and read its audits like the CLI would.

Loads demos/data/v_scenario.json, runs it, and prints the order matrix
with one cell per ordered pair: does the derived sequence at the row
eventually sit inside the one at the column, and which route certified
the answer?  Then the coverage table for the registered bit patterns.

    python3 demos/embedding_matrix.py
"""

import os

from blockforcing import load_scenario, run_scenario


VERDICT_MARK = {
    "subset-certified": "<=",
    "non-subset-certified": "#",
    "undetermined": "?",
}


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    sc = load_scenario(os.path.join(here, "data", "v_scenario.json"))
    print(f"poset on {sorted(sc.poset.elements)}, cofinal {sorted(sc.cofinal)}, seed {sc.seed}")

    run, iso, cov = run_scenario(sc)
    elements = sorted(sc.poset.elements)

    print(f"\nchain length {len(run.chain)}; order matrix "
          f"({VERDICT_MARK['subset-certified']} inside, {VERDICT_MARK['non-subset-certified']} separated):")
    header = "      " + "".join(f"{b:>6}" for b in elements)
    print(header)
    for a in elements:
        row = [f"{VERDICT_MARK[iso.cells[a][b]['verdict']]:>6}" for b in elements]
        print(f"{a:>6}" + "".join(row))
    print(f"matrix matches the input order: {iso.ok}")

    print("\nroutes taken, one ordered pair each:")
    for a in elements:
        for b in elements:
            if a == b:
                continue
            cell = iso.cells[a][b]
            print(f"  {a} vs {b}: {cell['verdict']} via {cell['evidence']['route']}")

    print("\ncoverage of registered patterns at maximal coordinates:")
    for e in cov.entries:
        status = "clean" if not e.misses else f"misses {list(e.misses)}"
        print(f"  {e.real:>16} at {e.element} (rank {e.rank}), "
              f"blocks from {e.block_threshold}: {status}")
    print(f"coverage audit: {cov.ok}")

    print("\nderived data underneath:")
    for b in elements:
        t = run.derived.dominating[b]
        print(f"  t_{b} has {len(t)} values up to {t.last}")
    for rank, bits in sorted(run.derived.cohen.items()):
        print(f"  {len(bits)} bits at rank {rank}")


if __name__ == "__main__":
    main()
