"""Names, certificates, and the four-clause extension order."""

import pytest

from blockforcing import (
    BitSeq,
    CannotAdvance,
    Condition,
    CoordinateName,
    CoordPart,
    DiagonalName,
    EMPTY_CONDITION,
    GroundName,
    GroundReal,
    IncSeq,
    MergeName,
    Poset,
    RefinementCertificate,
    Window,
    compute_ranks,
    condition_of,
    condition_to_json,
    coordinate_elements,
    descriptor,
    diagonal_ranks,
    leq_check,
    refines_at,
    resolve_name,
    restrict,
    start_condition,
    validate,
    workspace_of,
)
from blockforcing.poset import TOP


V_RP = compute_ranks(Poset(["a", "b", "c"], [("a", "c"), ("b", "c")]))
POINT_RP = compute_ranks(Poset(["b"]))
ZEROS = GroundReal("zeros")


def _plain(support, cohen01, tvals, names=None):
    """Assemble a condition from terse literals."""
    names = names or {}
    return Condition(
        support=frozenset(support),
        cohen={r: BitSeq.from01(s) for r, s in cohen01.items()},
        coords={
            b: CoordPart(IncSeq(tvals[b]), names.get(b, GroundName(0, 1)))
            for b in support
        },
    )


# -- names --


def test_name_constructors_validate():
    with pytest.raises(ValueError):
        GroundName(-1)
    with pytest.raises(ValueError):
        GroundName(0, 0)
    with pytest.raises(ValueError):
        DiagonalName(ZEROS, -1)


def test_descriptor_tags():
    nm = MergeName(GroundName(2, 3), CoordinateName("a"))
    assert descriptor(nm) == {
        "kind": "merge",
        "left": {"kind": "ground", "start": 2, "step": 3},
        "right": {"kind": "coordinate", "element": "a"},
    }
    assert descriptor(DiagonalName(GroundReal("ones", 7), 1)) == {
        "kind": "diagonal",
        "pattern": "ones",
        "seed": 7,
        "rank": 1,
    }
    assert descriptor(object())["kind"] == "custom"


def test_name_introspection():
    nm = MergeName(DiagonalName(ZEROS, 2), MergeName(CoordinateName("a"), CoordinateName("b")))
    assert diagonal_ranks(nm) == {2}
    assert coordinate_elements(nm) == {"a", "b"}
    assert diagonal_ranks(GroundName(0)) == set()
    assert coordinate_elements(GroundName(0)) == set()


# -- certificates --


def test_certificates():
    old = GroundName(0, 1)
    RefinementCertificate(old, old, "identical")
    RefinementCertificate(old, MergeName(old, GroundName(0, 2)), "merge-coarsening")
    with pytest.raises(ValueError):
        RefinementCertificate(old, GroundName(0, 2), "identical")
    with pytest.raises(ValueError):
        # the old name must ride along as the left child
        RefinementCertificate(old, MergeName(GroundName(0, 2), old), "merge-coarsening")
    with pytest.raises(ValueError):
        RefinementCertificate(old, old, "by-decree")


# -- restrict / validate --


def test_restrict_cuts_to_the_lower_cone():
    p = _plain({"a", "b", "c"}, {0: "01", 1: "1"}, {"a": (1,), "b": (2,), "c": (3,)})
    below_c = restrict(p, "c", V_RP)
    assert below_c.support == {"a", "b"}
    assert set(below_c.cohen) == {0}
    assert set(below_c.coords) == {"a", "b"}
    assert restrict(p, "a", V_RP) == EMPTY_CONDITION
    assert restrict(p, TOP, V_RP) == p


def test_validate_accepts_and_rejects():
    p = _plain({"a", "b"}, {0: "0"}, {"a": (1,), "b": (2,)})
    assert validate(p, V_RP, "c")
    assert validate(p, V_RP, TOP)

    stray = validate(_plain({"c"}, {1: ""}, {"c": ()}), V_RP, "c")
    assert not stray and "outside the ambient cone" in stray.problems[0]

    missing_coord = Condition(frozenset({"a"}), {0: BitSeq(())}, {})
    report = validate(missing_coord, V_RP, TOP)
    assert any("keyed exactly by the support" in m for m in report.problems)

    wrong_cohen = _plain({"a"}, {1: ""}, {"a": ()})
    assert not validate(wrong_cohen, V_RP, TOP)

    # raw tuples stand in for sequences so the shape check itself is exercised
    bad_t = Condition(
        frozenset({"a"}),
        {0: BitSeq(())},
        {"a": CoordPart((3, 2), GroundName(0, 1))},
    )
    report = validate(bad_t, V_RP, TOP)
    assert any("strictly increasing" in m for m in report.problems)


def test_restriction_of_valid_stays_valid():
    p = _plain({"a", "b", "c"}, {0: "01", 1: "1"}, {"a": (1,), "b": (2,), "c": (3,)})
    assert validate(p, V_RP, TOP)
    for b in ("a", "b", "c", TOP):
        assert validate(restrict(p, b, V_RP), V_RP, b)


# -- the extension order, clause by clause --


def test_leq_reflexive_and_empty():
    p = _plain({"a", "b"}, {0: "10"}, {"a": (1, 4), "b": (2,)})
    assert leq_check(p, p, V_RP)
    assert leq_check(p, EMPTY_CONDITION, V_RP)
    report = leq_check(EMPTY_CONDITION, p, V_RP)
    assert not report
    assert {v.clause for v in report.violations} == {"1", "2"}


def test_clause_1_dropped_support():
    q = _plain({"a"}, {0: ""}, {"a": ()})
    p = _plain({"b"}, {0: ""}, {"b": ()})
    report = leq_check(p, q, V_RP)
    assert [v.clause for v in report.violations] == ["1"]
    assert report.violations[0].subject == ("a",)


def test_clause_2_cohen_prefix():
    q = _plain({"a"}, {0: "01"}, {"a": ()})
    good = _plain({"a"}, {0: "010"}, {"a": ()})
    bad = _plain({"a"}, {0: "00"}, {"a": ()})
    assert leq_check(good, q, V_RP)
    report = leq_check(bad, q, V_RP)
    assert [(v.clause, v.subject) for v in report.violations] == [("2", 0)]


def test_clause_3_t_prefix():
    q = _plain({"b"}, {0: ""}, {"b": (1, 2)})
    p = _plain({"b"}, {0: ""}, {"b": (1,)})
    report = leq_check(p, q, POINT_RP)
    assert [(v.clause, v.subject) for v in report.violations] == [("3", "b")]


def test_clause_3a_uncertified_name_change():
    old = GroundName(0, 1)
    new = MergeName(old, GroundName(0, 2))
    q = _plain({"b"}, {0: ""}, {"b": (1,)}, {"b": old})
    p = _plain({"b"}, {0: ""}, {"b": (1,)}, {"b": new})
    report = leq_check(p, q, POINT_RP)
    assert [(v.clause, v.subject) for v in report.violations] == [("3a", "b")]
    cert = RefinementCertificate(old, new, "merge-coarsening")
    assert leq_check(p, q, POINT_RP, frozenset({cert}))


def test_clause_3a_certificates_chain():
    g1 = GroundName(0, 1)
    m1 = MergeName(g1, GroundName(0, 2))
    m2 = MergeName(m1, GroundName(0, 3))
    q = _plain({"b"}, {0: ""}, {"b": (1,)}, {"b": g1})
    p = _plain({"b"}, {0: ""}, {"b": (1,)}, {"b": m2})
    c1 = RefinementCertificate(g1, m1, "merge-coarsening")
    c2 = RefinementCertificate(m1, m2, "merge-coarsening")
    assert leq_check(p, q, POINT_RP, frozenset({c1, c2}))
    report = leq_check(p, q, POINT_RP, frozenset({c2}))
    assert [v.clause for v in report.violations] == ["3a"]


def test_clause_3b_forced_block_in_new_gaps():
    # The gap below the first value carries no obligation; gaps between
    # values must hold a whole determined block of the old name.
    q = _plain({"b"}, {0: ""}, {"b": ()}, {"b": GroundName(0, 100)})
    p = _plain({"b"}, {0: ""}, {"b": (5, 8)}, {"b": GroundName(0, 100)})
    report = leq_check(p, q, POINT_RP)
    assert [(v.clause, v.subject) for v in report.violations] == [("3b", "b")]
    assert "index 1" in report.violations[0].detail

    q_fine = _plain({"b"}, {0: ""}, {"b": ()}, {"b": GroundName(0, 1)})
    p_fine = _plain({"b"}, {0: ""}, {"b": (5, 8)}, {"b": GroundName(0, 1)})
    assert leq_check(p_fine, q_fine, POINT_RP)


def test_clause_3b_reads_the_cohen_prefix():
    # A diagonal name is decided by the bits riding along at its rank:
    # "0111" against all-zeros pins the disagreement blocks (1,2), (2,3).
    nm = DiagonalName(ZEROS, 0)
    q = _plain({"b"}, {0: "0111"}, {"b": ()}, {"b": nm})
    decided = _plain({"b"}, {0: "0111"}, {"b": (2, 3)}, {"b": nm})
    assert leq_check(decided, q, POINT_RP)
    undecided = _plain({"b"}, {0: "0111"}, {"b": (3, 9)}, {"b": nm})
    report = leq_check(undecided, q, POINT_RP)
    assert [(v.clause, v.subject) for v in report.violations] == [("3b", "b")]


def test_clause_4_same_rank_nesting():
    chain_rp = compute_ranks(Poset(["a", "b"], [("a", "b")]), {"b"})
    assert chain_rp.ranks == {"a": 0, "b": 0}
    q = _plain({"a", "b"}, {0: ""}, {"a": (0,), "b": (1,)})
    bad = _plain({"a", "b"}, {0: ""}, {"a": (0,), "b": (1, 5)})
    report = leq_check(bad, q, chain_rp)
    assert [(v.clause, v.subject) for v in report.violations] == [("4", ("a", "b"))]
    assert "index 1" in report.violations[0].detail

    good = _plain({"a", "b"}, {0: ""}, {"a": (0, 2, 4), "b": (1, 5)})
    assert leq_check(good, q, chain_rp)


def test_leq_ignores_unrelated_growth():
    # New coordinates and new ranks on the stronger side carry no clauses.
    q = _plain({"a"}, {0: "1"}, {"a": (1,)})
    p = _plain({"a", "b", "c"}, {0: "10", 1: "0"}, {"a": (1, 2), "b": (3,), "c": (4,)})
    assert leq_check(p, q, V_RP)


# -- resolving names into prefixes --


def test_resolve_ground_is_pure():
    cond, cohen, prefix = resolve_name(GroundName(0, 1), EMPTY_CONDITION, BitSeq(()), 5, POINT_RP)
    assert tuple(prefix) == (0, 1, 2, 3, 4)
    assert cond == EMPTY_CONDITION
    assert cohen == BitSeq(())


def test_resolve_diagonal_flips_the_pattern():
    cond, cohen, prefix = resolve_name(DiagonalName(ZEROS, 0), EMPTY_CONDITION, BitSeq(()), 3, POINT_RP)
    assert tuple(prefix) == (0, 1, 2)
    assert cohen.to01() == "111"
    assert cond == EMPTY_CONDITION


def test_resolve_merge_covers_both_children():
    left, right = GroundName(0, 2), GroundName(0, 3)
    _, _, prefix = resolve_name(MergeName(left, right), EMPTY_CONDITION, BitSeq(()), 3, POINT_RP)
    assert tuple(prefix) == (0, 3, 6)
    w = Window(0, prefix.last)
    assert refines_at(IncSeq((0, 2, 4, 6)), prefix, w) == set()
    assert refines_at(IncSeq((0, 3, 6)), prefix, w) == set()


def test_resolve_coordinate_ladders_the_condition():
    rp = compute_ranks(Poset(["a"]))
    below = start_condition(rp)
    cond, _, prefix = resolve_name(CoordinateName("a"), below, BitSeq(()), 3, rp)
    assert tuple(prefix) == (1, 2, 3)
    assert tuple(cond.coords["a"].t) == (1, 2, 3)


def test_resolve_prefix_stability():
    for nm in (GroundName(2, 3), MergeName(GroundName(0, 2), GroundName(1, 4)),
               DiagonalName(GroundReal("periodic:01"), 0)):
        _, _, short = resolve_name(nm, EMPTY_CONDITION, BitSeq(()), 4, POINT_RP)
        _, _, long = resolve_name(nm, EMPTY_CONDITION, BitSeq(()), 9, POINT_RP)
        assert tuple(long)[: len(tuple(short))] == tuple(short)


def test_resolve_rejects_mixed_rank_tags():
    nm = MergeName(DiagonalName(ZEROS, 0), DiagonalName(ZEROS, 1))
    with pytest.raises(ValueError):
        resolve_name(nm, EMPTY_CONDITION, BitSeq(()), 3, POINT_RP)


def test_self_referential_name_is_rejected():
    class Loop:
        def next_block(self, ws, lo):
            return ws.next_block(self, lo)

    ws = workspace_of(EMPTY_CONDITION, POINT_RP)
    with pytest.raises(CannotAdvance):
        ws.next_block(Loop(), 0)


# -- serialization --


def test_workspace_round_trip():
    q = start_condition(V_RP)
    assert condition_of(workspace_of(q, V_RP), V_RP) == q


def test_condition_to_json_shape():
    p = _plain({"a", "b"}, {0: "01"}, {"a": (1, 3), "b": (2,)})
    obj = condition_to_json(p)
    assert obj == {
        "support": ["a", "b"],
        "cohen": {"0": "01"},
        "coords": {
            "a": {"t": [1, 3], "name": {"kind": "ground", "start": 0, "step": 1}},
            "b": {"t": [2], "name": {"kind": "ground", "start": 0, "step": 1}},
        },
    }
