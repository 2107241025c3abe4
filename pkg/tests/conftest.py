"""Shared test helpers: seeded poset generation and chain auditing."""

import random

from blockforcing import Poset, leq_check, restrict


def random_poset(seed, max_elements=6, edge_chance=0.4):
    """A small random poset, acyclic by construction (edges follow index order)."""
    rng = random.Random(seed)
    n = rng.randint(1, max_elements)
    names = [f"e{i}" for i in range(n)]
    relations = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_chance:
                relations.append((names[i], names[j]))
    return Poset(names, relations)


def assert_chain_sound(run, jumps=(2, 7)):
    """Audit a finished run's chain from outside the engine.

    Adjacent links must satisfy the full four-clause order; restricting
    both sides at any coordinate must preserve it; and non-adjacent
    samples spot-check that the verified links compose.
    """
    rp = run.rp
    certs = run.certificates
    chain = run.chain

    cache = {}
    for q, p in zip(chain, chain[1:]):
        report = leq_check(p, q, rp, certs, cache=cache)
        assert report.ok, f"adjacent link failed: {report.violations}"

    for b in sorted(rp.poset.elements):
        bcache = {}
        for q, p in zip(chain, chain[1:]):
            report = leq_check(restrict(p, b, rp), restrict(q, b, rp), rp, certs, cache=bcache)
            assert report.ok, f"restriction at {b!r} broke a link: {report.violations}"

    n = len(chain)
    for jump in jumps:
        if n <= jump:
            continue
        step = max(1, (n - jump) // 3)
        for i in range(0, n - jump, step):
            report = leq_check(chain[i + jump], chain[i], rp, certs)
            assert report.ok, f"links {i + jump} <= {i} failed: {report.violations}"
