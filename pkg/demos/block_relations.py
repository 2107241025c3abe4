"""A walking tour of the finite block comparisons.

Two increasing sequences chop the naturals into blocks.  This script
shows when one chopping refines another, why refinement and pointwise
growth are genuinely different orders, and how a single word can be
caught inside one block-disagreement set while escaping another.

Run it directly:

    python3 demos/block_relations.py
"""

from blockforcing import (
    BitSeq,
    IncSeq,
    Window,
    e_member,
    non_subset_witness,
    refines_at,
    remark_counterexamples,
    star_dominates_at,
    tiny_subset_check,
)


def section(title):
    print()
    print(title)
    print("-" * len(title))


def main():
    section("Refinement: every coarse block swallows a whole fine block")
    fine = IncSeq((0, 2, 4, 6, 8))
    coarse = IncSeq((0, 4, 8))
    w = Window(0, 8)
    print(f"fine   = {tuple(fine)}")
    print(f"coarse = {tuple(coarse)}")
    print(f"violations of refinement in {w}: {sorted(refines_at(fine, coarse, w))}")

    skewed = IncSeq((0, 1, 8))
    print(f"\nskewed = {tuple(skewed)}")
    print(
        "its unit block [0, 1) cannot hold a whole fine block:",
        sorted(refines_at(fine, skewed, w)),
    )

    section("Growing pointwise is not refining, and vice versa")
    pointwise_only, refining_only = remark_counterexamples(64)
    f1, g1 = pointwise_only
    print(f"{tuple(f1)} stays at or below {tuple(g1)} index by index,")
    print(f"  exceedances: {sorted(star_dominates_at(f1, g1, Window(0, len(f1))))}")
    print(f"  yet refinement fails at {sorted(refines_at(f1, g1, Window(0, g1.last)))}")
    f2, g2 = refining_only
    print(f"{tuple(f2)} refines {tuple(g2)} cleanly,")
    print(f"  violations: {sorted(refines_at(f2, g2, Window(0, g2.last)))}")
    print(f"  yet it pokes above at index {sorted(star_dominates_at(f2, g2, Window(0, len(f2))))}")

    section("Disagreement sets transfer along refinement")
    x = BitSeq((0,) * 8)
    leaks = tiny_subset_check(x, fine, coarse, w)
    print("words disagreeing with x inside every fine block but not every")
    print(f"coarse block (exhaustive over 2^8): {[z.to01() for z in leaks] or 'none'}")
    leaks = tiny_subset_check(x, fine, skewed, w)
    shown = [z.to01() for z in leaks[:4]]
    print(f"against the skewed chopping instead: {len(leaks)} leaks, e.g. {shown}")

    section("Witnessing a failed transfer explicitly")
    f = IncSeq(range(0, 18, 2))
    g = IncSeq(range(17))
    x = y = BitSeq((0,) * 17)
    w = Window(0, 16)
    z = non_subset_witness(x, y, f, g, w)
    print(f"f = {tuple(f)}")
    print("g = unit blocks 0..16")
    print(f"witness z = {z.to01()}")
    print(f"z disagrees with x in every f-block: {e_member(z, x, f, 0, w)}")
    agreeing = [n for n, (lo, hi) in enumerate(g.blocks()) if all(z[j] == y[j] for j in range(lo, hi))]
    print(f"z copies y on whole g-blocks {agreeing[:4]}... (that is what keeps it out of g's set)")

    print()
    print("The copied blocks were thinned to a non-adjacent selection.")
    print("Copy two adjacent unit blocks instead and the construction collapses:")
    z_bad = [1 - x[j] for j in range(16)]
    for n in (0, 1):
        for j in range(g[n], g[n + 1]):
            z_bad[j] = y[j]
    print(f"adjacent copy  = {''.join(map(str, z_bad))}")
    print(f"still in f's disagreement set? {e_member(z_bad, x, f, 0, w)}")


if __name__ == "__main__":
    main()
