"""Dense-goal scheduling: grow a verified descending chain of conditions.

Genericity is replaced by an explicit goal list.  Each goal names one
dense set from the construction: a t-sequence reaching a length, a Cohen
prefix disagreeing with a registered pattern, a coordinate's name
absorbing a domination target, or a recorded gap separating an
incomparable pair.  Goals are served in order under a step budget, and
every emitted link is checked against the extension order before it
joins the chain, so a run that finishes is sound by construction.
"""

from dataclasses import dataclass

from .blocks import BitSeq, IncSeq
from .conditions import (
    Condition,
    CoordPart,
    RefinementCertificate,
    condition_of,
    leq_check,
    workspace_of,
)
from .errors import BlockForcingError, NotIncomparable, ResolutionExhausted
from .names import (
    GroundName,
    MergeName,
    coordinate_elements,
    descriptor,
    diagonal_ranks,
)
from .poset import restricted_linear_order


@dataclass(frozen=True)
class LengthGoal:
    """t at elem reaches n values."""

    elem: str
    n: int


@dataclass(frozen=True)
class CohenDisagreeGoal:
    """The Cohen prefix at rank gains a disagreement with real past beyond."""

    rank: int
    real: object
    beyond: int


@dataclass(frozen=True)
class DominateGoal:
    """The name at elem absorbs target, so new t-gaps carry target blocks."""

    elem: str
    target: object


@dataclass(frozen=True)
class IncomparableGoal:
    """t at b gains a recorded gap past beyond that t at a never enters."""

    a: str
    b: str
    beyond: int


@dataclass(frozen=True)
class LedgerEntry:
    goal_index: int
    met_at: int
    info: dict


@dataclass(frozen=True)
class DerivedReals:
    cohen: dict
    dominating: dict


@dataclass(frozen=True)
class GenericRun:
    rp: object
    chain: tuple
    certificates: frozenset
    goals: tuple
    ledger: tuple
    seed: int
    derived: DerivedReals


def goal_descriptor(goal):
    if isinstance(goal, LengthGoal):
        return {"kind": "length", "elem": goal.elem, "n": goal.n}
    if isinstance(goal, CohenDisagreeGoal):
        return {
            "kind": "cohen-disagree",
            "rank": goal.rank,
            "real": goal.real.spec,
            "beyond": goal.beyond,
        }
    if isinstance(goal, DominateGoal):
        return {"kind": "dominate", "elem": goal.elem, "target": descriptor(goal.target)}
    if isinstance(goal, IncomparableGoal):
        return {"kind": "incomparable", "a": goal.a, "b": goal.b, "beyond": goal.beyond}
    raise ValueError(f"unknown goal {goal!r}")


def start_condition(rp):
    """Everything installed up front: full support, empty data, unit names."""
    elements = sorted(rp.poset.elements)
    ranks = sorted({rp.ranks[x] for x in elements})
    return Condition(
        support=frozenset(elements),
        cohen={r: BitSeq() for r in ranks},
        coords={b: CoordPart(IncSeq(), GroundName(0, 1)) for b in elements},
    )


def _rank_slices(ws):
    slices = {}
    for y in sorted(ws.support):
        slices.setdefault(ws.rp.ranks[y], []).append(y)
    return slices


def _ladder(ws, coords):
    # Lower ranks first, mirroring the inductive structure: a name at the
    # target rank may read (and further extend) what lower cascades wrote.
    coords = set(coords)
    target_ranks = {ws.rp.ranks[c] for c in coords}
    if len(target_ranks) != 1:
        raise ValueError(f"ladder coordinates must share one rank, got {sorted(coords)}")
    target_rank = next(iter(target_ranks))
    slices = _rank_slices(ws)
    for rank in sorted(slices):
        if rank < target_rank:
            ws.cascade(slices[rank])
    ws.cascade(coords)


def _full_ladder(ws):
    slices = _rank_slices(ws)
    for rank in sorted(slices):
        ws.cascade(slices[rank])


def ladder_extend(q, coords, rp):
    """One cascade pass over coords, preceded by every lower rank slice."""
    ws = workspace_of(q, rp, extend=True)
    _ladder(ws, coords)
    p = condition_of(ws, rp)
    report = leq_check(p, q, rp)
    if not report:
        raise BlockForcingError(f"ladder produced a bad link: {report.violations}")
    return p


def _separate(ws, a, b, floor_n):
    """Record a gap in t_b that t_a can never meet again.

    Phase one grows t_b (through its same-rank cone) far enough to expose
    gap number max(floor_n, current length) while leaving t_a untouched;
    a cannot sit in that cone, or it would be below b.  Phase two runs
    the cascade over a's cone only as far as a itself, floored past the
    gap's right end, so t_a gains exactly one value there and every later
    value anywhere is larger still.  The gap stays clean forever.
    """
    poset = ws.rp.poset
    ws.ensure_coordinate(a)
    ws.ensure_coordinate(b)
    if poset.leq(a, b):
        raise NotIncomparable(f"{a!r} <= {b!r}, nothing to separate")
    gap_index = max(floor_n, len(ws.t[b]))
    group_b = ws.same_rank_group(b)
    while len(ws.t[b]) < gap_index + 2:
        ws.cascade(group_b)
    gap = (ws.t[b][gap_index], ws.t[b][gap_index + 1])

    order = restricted_linear_order(poset, ws.same_rank_group(a))
    up_to_a = set(order[: order.index(a) + 1])
    ws.cascade(up_to_a, floor=gap[1] + 1)
    return gap_index, gap


def incomparability_extend(q, a, b, floor_n, rp):
    ws = workspace_of(q, rp, extend=True)
    _separate(ws, a, b, floor_n)
    p = condition_of(ws, rp)
    report = leq_check(p, q, rp)
    if not report:
        raise BlockForcingError(f"separation produced a bad link: {report.violations}")
    return p


def make_dominating_name(current, target):
    merged = MergeName(current, target)
    return merged, RefinementCertificate(current, merged, "merge-coarsening")


def _validate_goals(rp, goals):
    used_ranks = set(rp.ranks.values())
    for goal in goals:
        if isinstance(goal, LengthGoal):
            rp.rank_of(goal.elem)
            if goal.n < 0:
                raise ValueError(f"negative length target in {goal!r}")
        elif isinstance(goal, CohenDisagreeGoal):
            if goal.rank not in used_ranks:
                raise ValueError(f"rank {goal.rank} is not used by any element")
            if goal.beyond < 0:
                raise ValueError(f"negative position bound in {goal!r}")
        elif isinstance(goal, DominateGoal):
            rank = rp.rank_of(goal.elem)
            stray = diagonal_ranks(goal.target) - {rank}
            if stray:
                raise ValueError(
                    f"domination target for {goal.elem!r} carries foreign rank tags {sorted(stray)}"
                )
            for child in coordinate_elements(goal.target):
                if not rp.ll(child, goal.elem):
                    raise ValueError(
                        f"coordinate {child!r} in a domination target must sit strictly "
                        f"below {goal.elem!r} in both order and rank"
                    )
        elif isinstance(goal, IncomparableGoal):
            rp.rank_of(goal.a)
            rp.rank_of(goal.b)
            if goal.beyond < 0:
                raise ValueError(f"negative gap index bound in {goal!r}")
            if rp.poset.leq(goal.a, goal.b):
                raise NotIncomparable(f"{goal.a!r} <= {goal.b!r} in goal {goal!r}")
        else:
            raise ValueError(f"unknown goal {goal!r}")


def build_generic(rp, goals, resolution, seed=0):
    """Serve every goal within the step budget, verifying each link.

    Raises ResolutionExhausted (listing unmet goal indices) when the
    budget runs out first.  Fully deterministic; the seed is only
    recorded, so reports can tie derived data back to the scenario that
    named it.
    """
    goals = tuple(goals)
    _validate_goals(rp, goals)
    if resolution < 1:
        raise ValueError(f"step budget must be at least 1, got {resolution}")

    chain = [start_condition(rp)]
    ws = workspace_of(chain[0], rp, extend=True)
    certs = set()
    ledger = []
    met = [False] * len(goals)
    check_cache = {}
    steps = 0

    while True:
        for i, goal in enumerate(goals):
            # Length goals can come for free when other steps grew the
            # sequence already; record them without spending the budget.
            if not met[i] and isinstance(goal, LengthGoal) and len(ws.t[goal.elem]) >= goal.n:
                met[i] = True
                ledger.append(LedgerEntry(i, len(chain) - 1, {"length": len(ws.t[goal.elem])}))
        pending = [i for i, done in enumerate(met) if not done]
        if not pending:
            break
        if steps >= resolution:
            raise ResolutionExhausted(
                f"budget of {resolution} steps spent with {len(pending)} goals unmet",
                unmet=tuple(pending),
            )
        steps += 1
        i = pending[0]
        goal = goals[i]

        if isinstance(goal, LengthGoal):
            _full_ladder(ws)
            done = len(ws.t[goal.elem]) >= goal.n
            info = {"length": len(ws.t[goal.elem])}
        elif isinstance(goal, CohenDisagreeGoal):
            bits = ws.cohen[goal.rank]
            position = max(goal.beyond, len(bits))
            bits.extend(1 - goal.real.bit(j) for j in range(len(bits), position + 1))
            done = True
            info = {"position": position, "bit": bits[position]}
        elif isinstance(goal, DominateGoal):
            current = ws.names[goal.elem]
            merged, cert = make_dominating_name(current, goal.target)
            ws.names[goal.elem] = merged
            certs.add(cert)
            swap_length = len(ws.t[goal.elem])
            rank = rp.ranks[goal.elem]
            _ladder(ws, {y for y in ws.support if rp.ranks[y] == rank})
            done = True
            info = {
                "swap_length": swap_length,
                "block_threshold": max(0, swap_length - 1),
            }
        else:
            gap_index, gap = _separate(ws, goal.a, goal.b, goal.beyond)
            done = True
            info = {"index": gap_index, "block": list(gap)}

        p = condition_of(ws, rp)
        report = leq_check(p, chain[-1], rp, frozenset(certs), cache=check_cache)
        if not report:
            raise BlockForcingError(
                f"engine emitted an invalid link for goal {i}: {report.violations}"
            )
        chain.append(p)
        if done:
            met[i] = True
            ledger.append(LedgerEntry(i, len(chain) - 1, info))

    return GenericRun(
        rp=rp,
        chain=tuple(chain),
        certificates=frozenset(certs),
        goals=goals,
        ledger=tuple(ledger),
        seed=seed,
        derived=extract_reals_from(chain[-1]),
    )


def extract_reals_from(cond):
    return DerivedReals(
        cohen={r: cond.cohen[r] for r in sorted(cond.cohen)},
        dominating={b: cond.coords[b].t for b in sorted(cond.coords)},
    )


def extract_reals(run):
    """The union along the chain; with append-only links that is its last element."""
    return extract_reals_from(run.chain[-1])
