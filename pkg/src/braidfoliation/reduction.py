"""Reduction pipelines built from the moves.

``reduce_unlink`` takes a tiled union of discs to the trivial braid using
changes of foliation, exchange moves and destabilizations only.
``make_special_markov`` stabilizes every negative vertex away, and
``reduce_unknot_markov`` follows that with destabilizations down to one
radially foliated disc.

Site choice is deterministic: among eligible vertices the one with the smallest
(valence, id) goes first, and a refused site falls through to the next one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from braidfoliation.moves import (
    MoveError,
    MoveRecord,
    cf_collapse_ab,
    change_of_foliation,
    destabilize_a,
    exchange_ab,
    exchange_bb,
    stabilize_ab,
    VARIANTS,
)
from braidfoliation.tiling import (
    Tiling,
    derive_adjacency,
    euler_and_classification,
    id_key,
    sign_blocks,
    validate,
    vertex_star,
)

REDUCING_KINDS = ("exchange_ab", "exchange_bb", "destabilize_a")


class ReductionError(Exception):
    """A pipeline cannot run on this input, or got stuck part way."""

    def __init__(self, message: str, tiling: Tiling | None = None, steps: tuple[MoveRecord, ...] = ()):
        super().__init__(message)
        self.tiling = tiling
        self.steps = steps


@dataclass(frozen=True)
class State:
    """Summary of a tiling plus its Euler characteristics."""

    V: int
    t: int
    n: int
    chi: tuple[int | None, ...]

    @classmethod
    def of(cls, t: Tiling) -> "State":
        s = t.summary()
        chis = tuple(sorted((c.chi for c in euler_and_classification(t).components), key=lambda x: (x is None, x)))
        return cls(s.V, s.t, s.n, chis)

    def line(self) -> str:
        return f"V={self.V} t={self.t} n={self.n} chi={','.join(str(c) for c in self.chi) or '-'}"


@dataclass(frozen=True)
class Transcript:
    initial: State
    steps: tuple[MoveRecord, ...]
    final: State

    def count(self, kind: str) -> int:
        return sum(1 for r in self.steps if r.kind == kind)

    def kinds(self) -> list[str]:
        return [r.kind for r in self.steps]

    def chains(self) -> bool:
        """True when the deltas of the steps lead from the initial summary to the final one."""
        V, t, n = self.initial.V, self.initial.t, self.initial.n
        for r in self.steps:
            if r.kind in REDUCING_KINDS and r.delta_V >= 0:
                return False
            V, t, n = V + r.delta_V, t + r.delta_t, n + r.delta_n
        return (V, t, n) == (self.final.V, self.final.t, self.final.n)

    def lines(self) -> list[str]:
        return (
            [f"initial {self.initial.line()}"]
            + [r.line() for r in self.steps]
            + [f"final {self.final.line()} steps={len(self.steps)}"]
        )

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"


def _order(t: Tiling, vs) -> list[str]:
    return sorted(vs, key=lambda v: (t.valence(v), id_key(v)))


def _live(t: Tiling) -> list[str]:
    return [v.id for v in t.vertices if t.corners_at[v.id]]


# single-vertex subroutines ---------------------------------------------------


def lower_valence(t: Tiling, v: str) -> tuple[Tiling, MoveRecord] | None:
    """One change of foliation that merges two like-sign tiles meeting ``v``
    along a b-edge, so the valence of ``v`` drops by one."""
    star = vertex_star(t, v)
    k = star.valence
    edges = derive_adjacency(t).b_edges
    for i in range(k):
        a, b = star.cyclic_tiles[i], star.cyclic_tiles[(i + 1) % k]
        if star.type_cycle[i] != "b" or a == b or star.sign_cycle[i] is not star.sign_cycle[(i + 1) % k]:
            continue
        for e in edges:
            if v in e.vertices and {x for x, _ in e.sides} == {a, b}:
                for variant in VARIANTS:
                    try:
                        out, rec = change_of_foliation(t, a, b, e.vertices, variant)
                    except MoveError:
                        continue
                    if out.corners_at.get(v) and out.valence(v) == k - 1:
                        return out, rec
    return None


def eliminate_interior_pm(t: Tiling, v: str) -> tuple[Tiling, list[MoveRecord]]:
    """Remove an interior vertex whose signs form one + block and one - block.

    Like-sign neighbours are merged by changes of foliation until the star is
    a (b,b) pocket of opposite signs, which an exchange move folds away.
    """
    star = vertex_star(t, v)
    if not star.interior:
        raise MoveError(f"{v} is not interior")
    if sign_blocks(star.sign_cycle) != 2:
        raise MoveError(f"{v}: signs {star.sign_string()} are not one + block and one - block")
    steps: list[MoveRecord] = []
    while t.valence(v) > 2:
        found = lower_valence(t, v)
        if found is None:
            raise MoveError(f"{v}: no change of foliation lowers valence {t.valence(v)}")
        t, rec = found
        steps.append(rec)
    t, rec = exchange_bb(t, v)
    return t, steps + [rec]


def eliminate_ab_vertex(t: Tiling, v: str) -> tuple[Tiling, list[MoveRecord]]:
    """Remove a vertex whose star has exactly one a-side.

    After lowering the valence to two, equal signs lead to a collapse to type
    (a) and a destabilization; opposite signs to an exchange move.
    """
    star = vertex_star(t, v)
    if star.type_cycle.count("a") != 1:
        raise MoveError(f"{v}: type {star.type_string()} does not have exactly one a")
    steps: list[MoveRecord] = []
    while t.valence(v) > 2:
        found = lower_valence(t, v)
        if found is None:
            raise MoveError(f"{v}: no change of foliation lowers valence {t.valence(v)}")
        t, rec = found
        steps.append(rec)
    star = vertex_star(t, v)
    if star.valence == 2:
        if star.sign_cycle[0] is star.sign_cycle[1]:
            t, rec = cf_collapse_ab(t, v)
            steps.append(rec)
        else:
            t, rec = exchange_ab(t, v)
            return t, steps + [rec]
    t, rec = destabilize_a(t, v)
    return t, steps + [rec]


# pipeline pieces -------------------------------------------------------------


def _is_pocket(t: Tiling, v: str) -> bool:
    s = vertex_star(t, v)
    return s.valence == 2 and s.type_cycle == ("b", "b") and s.sign_cycle[0] is not s.sign_cycle[1]


def _is_ab_exchange(t: Tiling, v: str) -> bool:
    s = vertex_star(t, v)
    return s.valence == 2 and sorted(s.type_cycle) == ["a", "b"] and s.sign_cycle[0] is not s.sign_cycle[1]


def _is_two_block(t: Tiling, v: str) -> bool:
    s = vertex_star(t, v)
    return s.interior and s.valence > 2 and sign_blocks(s.sign_cycle) == 2


def _has_one_a(t: Tiling, v: str) -> bool:
    s = vertex_star(t, v)
    return s.valence >= 2 and s.type_cycle.count("a") == 1


def _is_end(t: Tiling, v: str) -> bool:
    s = vertex_star(t, v)
    return s.valence == 1 and s.type_cycle == ("a",)


def _first_success(t: Tiling, eligible: Callable, action: Callable):
    errors = []
    for v in _order(t, [v for v in _live(t) if eligible(t, v)]):
        try:
            out, steps = action(t, v)
        except MoveError as exc:
            errors.append(str(exc))
            continue
        return out, steps
    return None


def _single(move):
    def run(t, v):
        out, rec = move(t, v)
        return out, [rec]

    return run


def destabilize_batch(t: Tiling) -> tuple[Tiling, list[MoveRecord]]:
    """Destabilize at every type (a) end present now, in (valence, id) order."""
    steps = []
    for v in _order(t, [v for v in _live(t) if _is_end(t, v)]):
        if v in t.vertex and t.corners_at[v] and _is_end(t, v):
            t, rec = destabilize_a(t, v)
            steps.append(rec)
    return t, steps


_PHASES = (
    (_is_pocket, _single(exchange_bb)),
    (_is_ab_exchange, _single(exchange_ab)),
    (_is_two_block, eliminate_interior_pm),
    (_has_one_a, eliminate_ab_vertex),
)


def _require_discs(t: Tiling, what: str, single: bool = False) -> None:
    report = validate(t)
    if not report.ok:
        raise ReductionError(f"{what}: input does not validate: {'; '.join(report.failures)}", t)
    comps = euler_and_classification(t).components
    if not all(c.is_disc for c in comps):
        raise ReductionError(f"{what}: every component must be a disc", t)
    if single and len(comps) != 1:
        raise ReductionError(f"{what}: need a single disc, got {len(comps)} components", t)


def reduce_unlink(t: Tiling) -> Transcript:
    """Reduce a tiled union of r discs to r trivial discs on r strands.

    Every round ends with an exchange move or a destabilization, so V drops
    each round and the loop terminates.  If no phase applies while tiles
    remain, :class:`ReductionError` carries the stuck tiling.
    """
    _require_discs(t, "reduce_unlink")
    initial = State.of(t)
    steps: list[MoveRecord] = []
    while t.tiles:
        done = None
        for eligible, action in _PHASES:
            done = _first_success(t, eligible, action)
            if done is not None:
                break
        if done is None:
            out, batch = destabilize_batch(t)
            done = (out, batch) if batch else None
        if done is None:
            raise ReductionError(
                f"reduce_unlink: stuck with V={t.vertex_count} t={t.tile_count}", t, tuple(steps)
            )
        t, new = done
        steps.extend(new)
    if t.braid_index != t.trivial_discs:
        raise ReductionError("reduce_unlink: ended with braid index != number of discs", t, tuple(steps))
    return Transcript(initial, tuple(steps), State.of(t))


def make_special_markov(t: Tiling) -> tuple[Tiling, Transcript]:
    """Stabilize along ab tiles until only aa tiles remain."""
    report = validate(t)
    if not report.ok:
        raise ReductionError(f"make_special_markov: input does not validate: {'; '.join(report.failures)}", t)
    if any(c.closed for c in euler_and_classification(t).components):
        raise ReductionError("make_special_markov: closed component present; need a spanning surface", t)
    initial = State.of(t)
    steps = []
    while True:
        ab = sorted((x.id for x in t.tiles if x.kind == "ab"), key=id_key)
        if not ab:
            break
        t, rec = stabilize_ab(t, ab[0])
        steps.append(rec)
    if any(x.kind != "aa" for x in t.tiles):
        raise ReductionError("make_special_markov: bb tiles remain without ab tiles", t, tuple(steps))
    return t, Transcript(initial, tuple(steps), State.of(t))


def reduce_unknot_markov(t: Tiling) -> Transcript:
    """Stabilize to an aa-tiled disc, then destabilize down to n = 1."""
    _require_discs(t, "reduce_unknot_markov", single=True)
    initial = State.of(t)
    t, first = make_special_markov(t)
    steps = list(first.steps)
    while t.tiles:
        t, batch = destabilize_batch(t)
        if not batch:
            raise ReductionError("reduce_unknot_markov: aa-tiled disc with no type (a) end", t, tuple(steps))
        steps.extend(batch)
    return Transcript(initial, tuple(steps), State.of(t))


PIPELINES = {
    "unlink": reduce_unlink,
    "unknot-markov": reduce_unknot_markov,
    "special-markov": lambda t: make_special_markov(t)[1],
}
