"""Moves on tilings: changes of foliation, stabilization, destabilization and
exchange moves, as pure rewrites ``Tiling -> (Tiling, MoveRecord)``.

Every move rebuilds the affected tiles, compacts all ranks, and checks that the
result still glues to a surface; a site that would not is refused with
:class:`MoveError`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from braidfoliation.tiling import (
    MINUS,
    PLUS,
    AxisVertex,
    BoundaryPoint,
    Corner,
    Side,
    Sign,
    Tile,
    Tiling,
    TilingError,
    _earlier_later,
    derive_adjacency,
    id_key,
    renumber,
    tile_from_corners,
    vertex_star,
)

MOVE_KINDS = (
    "change_of_foliation",
    "cf_collapse_ab",
    "stabilize_ab",
    "destabilize_a",
    "exchange_ab",
    "exchange_bb",
)

# kind -> (delta_V, delta_t, delta_n)
DELTAS = {
    "change_of_foliation": (0, 0, 0),
    "cf_collapse_ab": (0, 0, 0),
    "stabilize_ab": (-1, -1, 1),
    "destabilize_a": (-1, -1, -1),
    "exchange_ab": (-2, -2, 0),
    "exchange_bb": (-2, -2, 0),
}

VARIANTS = ("first", "rotated")


class MoveError(ValueError):
    """The move does not apply at the requested site."""


@dataclass(frozen=True)
class MoveRecord:
    kind: str
    site: tuple[str, ...]
    delta_V: int
    delta_t: int
    delta_n: int
    delta_e: int = 0  # change of the exponent sum t+ - t-

    def line(self) -> str:
        return f"{self.kind} {','.join(self.site)} {self.delta_V} {self.delta_t} {self.delta_n}"


def _record(kind: str, site: Sequence[str], before: Tiling, after: Tiling) -> MoveRecord:
    rec = MoveRecord(
        kind,
        tuple(site),
        after.vertex_count - before.vertex_count,
        after.tile_count - before.tile_count,
        after.braid_index - before.braid_index,
        after.exponent_sum - before.exponent_sum,
    )
    if (rec.delta_V, rec.delta_t, rec.delta_n) != DELTAS[kind]:
        raise MoveError(f"{kind} at {site}: deltas {rec.delta_V, rec.delta_t, rec.delta_n} != {DELTAS[kind]}")
    return rec


def _fresh(base: str, taken: set[str]) -> str:
    name, k = base, 1
    while name in taken:
        k += 1
        name = f"{base}#{k}"
    taken.add(name)
    return name


class _Draft:
    """Mutable working copy used while a move rebuilds part of a tiling."""

    def __init__(self, t: Tiling):
        self.n = t.braid_index
        self.trivial = t.trivial_discs
        self.vertices: dict[str, AxisVertex] = dict(t.vertex)
        self.tiles: dict[str, Tile] = dict(t.tile)
        self.links: dict[int, list[str]] = {c: list(cyc) for c, cyc in t.link_cycles.items()}
        self.names = set(self.vertices) | set(self.tiles) | set(t.point)

    def _locate(self, p: str) -> tuple[list[str], int]:
        for cyc in self.links.values():
            if p in cyc:
                return cyc, cyc.index(p)
        raise KeyError(p)

    def remove_point(self, p: str) -> None:
        cyc, i = self._locate(p)
        del cyc[i]

    def replace_point(self, p: str, new: Sequence[str]) -> None:
        cyc, i = self._locate(p)
        cyc[i : i + 1] = list(new)

    def insert_after(self, p: str, q: str) -> None:
        cyc, i = self._locate(p)
        cyc.insert(i + 1, q)

    def fresh(self, base: str) -> str:
        return _fresh(base, self.names)

    def finish(self) -> Tiling:
        points = [
            BoundaryPoint(p, c, r) for c, cyc in self.links.items() if cyc for r, p in enumerate(cyc)
        ]
        try:
            out = renumber(self.n, self.vertices.values(), points, self.tiles.values(), self.trivial)
            derive_adjacency(out)
        except TilingError as exc:
            raise MoveError(f"result is not a tiled surface: {exc}") from exc
        return out


def _tile(t: Tiling, tid: str) -> Tile:
    try:
        return t.tile[tid]
    except KeyError:
        raise MoveError(f"unknown tile {tid!r}") from None


def _star(t: Tiling, v: str):
    try:
        return vertex_star(t, v)
    except TilingError as exc:
        raise MoveError(str(exc)) from None


def _replace_corner(tile: Tile, old: Corner, new: Corner) -> Tile:
    corners = [new if c == old else c for c in tile.corners]
    return tile_from_corners(tile.id, tile.sign, tile.theta_rank, corners)


# destabilization -------------------------------------------------------------


def destabilize_a(t: Tiling, v: str) -> tuple[Tiling, MoveRecord]:
    """Remove a valence-one vertex of type (a) together with its aa tile."""
    star = _star(t, v)
    if star.valence != 1:
        raise MoveError(f"destabilize_a at {v}: valence {star.valence} != 1")
    if star.type_cycle != ("a",):
        raise MoveError(f"destabilize_a at {v}: vertex has type {star.type_string()}, not (a)")
    tile = t.tile[star.cyclic_tiles[0]]
    d = _Draft(t)
    del d.tiles[tile.id]
    del d.vertices[v]
    for p in tile.endpoints:
        d.remove_point(p)
    d.n -= 1
    (other,) = [w for w in tile.vertices if w != v]
    if len(t.corners_at[other]) == 1:
        del d.vertices[other]
        d.trivial += 1
    out = d.finish()
    return out, _record("destabilize_a", (v,), t, out)


# stabilization ----------------------------------------------------------------


def _open_negative_vertex(d: _Draft, t: Tiling, removed: Tile) -> list[str]:
    """Delete ``removed`` and its negative vertex u; every other tile at u gets a
    new link point in place of u.  Returns the new points in link order."""
    u = removed.vertices[1]
    cs = [tid for tid, _ in t.corners_at[u]]
    j = cs.index(removed.id)
    others = cs[j + 1 :] + cs[:j]
    new_points = []
    for tid in others:
        if tid not in d.tiles:
            continue
        q = d.fresh(f"{u}/{tid}")
        d.tiles[tid] = _replace_corner(d.tiles[tid], ("v", u), ("p", q))
        new_points.append(q)
    del d.tiles[removed.id]
    del d.vertices[u]
    d.replace_point(removed.endpoints[0], new_points)
    return new_points


def stabilize_ab(t: Tiling, tile_id: str) -> tuple[Tiling, MoveRecord]:
    """Push an ab tile across the link, deleting it and its negative vertex."""
    tile = _tile(t, tile_id)
    if tile.kind != "ab":
        raise MoveError(f"stabilize_ab at {tile_id}: tile kind {tile.kind} is not ab")
    d = _Draft(t)
    _open_negative_vertex(d, t, tile)
    d.n += 1
    out = d.finish()
    return out, _record("stabilize_ab", (tile_id,), t, out)


# exchange moves ---------------------------------------------------------------


def exchange_ab(t: Tiling, v: str) -> tuple[Tiling, MoveRecord]:
    """Exchange move at a valence-two vertex of type (a,b) with opposite signs."""
    star = _star(t, v)
    if star.valence != 2 or sorted(star.type_cycle) != ["a", "b"]:
        raise MoveError(f"exchange_ab at {v}: star is valence {star.valence} type {star.type_string()}, need (a,b)")
    if star.sign_cycle[0] is star.sign_cycle[1]:
        raise MoveError(f"exchange_ab at {v}: signs {star.sign_string()} agree (use cf_collapse_ab)")
    t1, t2 = (t.tile[x] for x in star.cyclic_tiles)
    if t1.kind != "ab" or t2.kind != "ab" or t1.vertices[1] != t2.vertices[1]:
        raise MoveError(f"exchange_ab at {v}: tiles {t1.id}, {t2.id} are not two ab tiles on one b-edge")
    first = min(t1, t2, key=lambda x: id_key(x.id))
    d = _Draft(t)
    _open_negative_vertex(d, t, first)
    d.n += 1
    mid = d.finish()
    try:
        out, _ = destabilize_a(mid, v)
    except MoveError as exc:
        raise MoveError(f"exchange_ab at {v}: {exc}") from None
    return out, _record("exchange_ab", (v,), t, out)


def _axis_adjacent(t: Tiling, a: str, b: str) -> bool:
    n = len(t.vertices)
    ra, rb = t.vertex[a].axis_rank, t.vertex[b].axis_rank
    return (ra - rb) % n in (1, n - 1)


def _one_sign(t: Tiling, u: str) -> bool:
    if not t.corners_at.get(u):
        return False
    star = vertex_star(t, u)
    return star.interior and len(set(star.sign_cycle)) < 2


def exchange_bb(t: Tiling, v: str, drop: str | None = None) -> tuple[Tiling, MoveRecord]:
    """Exchange move at an interior valence-two vertex with opposite signs.

    The two tiles at ``v`` form a pocket bounded by the two neighbours w1, w2 of
    ``v``.  The pocket is folded away: ``v``, both tiles and one neighbour
    (``drop``, which must sit next to ``v`` on the axis) disappear, and every
    other tile at the dropped neighbour is re-attached to the surviving one.
    """
    star = _star(t, v)
    if star.valence != 2 or star.type_cycle != ("b", "b"):
        raise MoveError(f"exchange_bb at {v}: star is valence {star.valence} type {star.type_string()}, need (b,b)")
    if star.sign_cycle[0] is star.sign_cycle[1]:
        raise MoveError(f"exchange_bb at {v}: signs {star.sign_string()} agree")
    t1, t2 = (t.tile[x] for x in star.cyclic_tiles)
    i = t1.corners.index(("v", v))
    nbrs = sorted({t1.corners[(i - 1) % 4][1], t1.corners[(i + 1) % 4][1]}, key=id_key)
    if len(nbrs) != 2 or any(("v", w) not in t2.corners for w in nbrs):
        raise MoveError(f"exchange_bb at {v}: tiles {t1.id}, {t2.id} do not bound a pocket")
    if drop is not None:
        if drop not in nbrs:
            raise MoveError(f"exchange_bb at {v}: {drop} is not a neighbour of {v}")
        candidates = [drop]
    else:
        candidates = sorted(nbrs, key=lambda w: (t.valence(w), id_key(w)))
    clean = [w for w in candidates if _axis_adjacent(t, v, w)]
    if not clean:
        raise MoveError(
            f"exchange_bb at {v}: pocket not clean, no neighbour of {v} among {candidates} is next to it on the axis"
        )
    errors = []
    for wd in clean:
        (wk,) = [w for w in nbrs if w != wd]
        d = _Draft(t)
        for x in (t1, t2):
            del d.tiles[x.id]
            for p in x.endpoints:
                d.remove_point(p)
        del d.vertices[v]
        del d.vertices[wd]
        for tid, _ in t.corners_at[wd]:
            if tid in d.tiles:
                d.tiles[tid] = _replace_corner(d.tiles[tid], ("v", wd), ("v", wk))
        try:
            bad = [x.id for x in d.tiles.values() if len(set(x.vertices)) != len(x.vertices)]
            if bad:
                raise MoveError(f"folding {wd} onto {wk} repeats a vertex in {bad}")
            out = d.finish()
            flat = [u for u in {c[1] for x in (t1, t2) for c in x.corners if c[0] == "v"} - {v, wd} if _one_sign(out, u)]
            if flat:
                raise MoveError(f"folding {wd} onto {wk} leaves interior vertex {flat[0]} with one sign")
        except MoveError as exc:
            errors.append(str(exc))
            continue
        return out, _record("exchange_bb", (v, wd), t, out)
    raise MoveError(f"exchange_bb at {v}: " + "; ".join(errors))


# change of foliation -------------------------------------------------------------


def _side_signature(t: Tiling, side: Side, hexagon: set[str], alias: dict[str, str]):
    tile = t.tile[side[0]]
    a, b = tile.side_corners(side[1])
    a = (a[0], alias.get(a[1], a[1]))
    b = (b[0], alias.get(b[1], b[1]))
    return ("HEX" if tile.id in hexagon else tile.id, a, b)


def _gluing(t: Tiling, hexagon: set[str], alias: dict[str, str]) -> set:
    partner = derive_adjacency(t).partner
    return {
        (_side_signature(t, s, hexagon, alias), _side_signature(t, p, hexagon, alias))
        for s, p in partner.items()
    }


def _cf_frame(t: Tiling, t1: str, t2: str, gamma: Sequence[str]):
    a, b = _tile(t, t1), _tile(t, t2)
    if a.id == b.id:
        raise MoveError("change_of_foliation needs two distinct tiles")
    if not a.spanning or not b.spanning:
        raise MoveError("change_of_foliation on bc/cc tiles is not supported")
    if a.sign is not b.sign:
        raise MoveError(f"change_of_foliation: tiles {a.id}, {b.id} have opposite signs")
    if len(gamma) != 2 or gamma[0] not in t.vertex or gamma[1] not in t.vertex:
        raise MoveError(f"change_of_foliation: bad b-edge {tuple(gamma)}")
    v, w = gamma
    if t.vertex[v].parity is MINUS:
        v, w = w, v
    if t.vertex[v].parity is not PLUS or t.vertex[w].parity is not MINUS:
        raise MoveError(f"change_of_foliation: {tuple(gamma)} does not join opposite parities")
    partner = derive_adjacency(t).partner

    def side_of(x: Tile, p: str, q: str) -> int | None:
        for i in range(4):
            if x.side_corners(i) == (("v", p), ("v", q)):
                return i
        return None

    # F runs w -> v counterclockwise, S runs v -> w.
    for f, s in ((a, b), (b, a)):
        i, j = side_of(f, w, v), side_of(s, v, w)
        if i is not None and j is not None and partner.get((f.id, i)) == (s.id, j):
            return f, s, i, j, v, w
    raise MoveError(f"change_of_foliation: tiles {a.id}, {b.id} are not glued along b-edge {v}-{w}")


def change_of_foliation(
    t: Tiling, t1: str, t2: str, gamma: Sequence[str], variant: str = "first"
) -> tuple[Tiling, MoveRecord]:
    """Retile two same-sign tiles glued along the b-edge ``gamma``.

    The union of the two tiles is a hexagon (v, x2, y2, w, y1, x1); the move
    replaces the diagonal v-w by x2-y1 (``first``) or y2-x1 (``rotated``).
    """
    if variant not in VARIANTS:
        raise MoveError(f"unknown variant {variant!r}; use one of {VARIANTS}")
    f, s, i, j, v, w = _cf_frame(t, t1, t2, gamma)
    fc = f.corners
    sc = s.corners
    # F ccw from w: w, v, x2, y2 ; S ccw from v: v, w, y1, x1
    x2, y2 = fc[(i + 2) % 4], fc[(i + 3) % 4]
    y1, x1 = sc[(j + 2) % 4], sc[(j + 3) % 4]
    V, W = ("v", v), ("v", w)
    if variant == "first":
        split, first_tile, second_tile = x2, [y1, x1, V, x2], [y2, W, y1, x2]
    else:
        split, first_tile, second_tile = x1, [V, x2, y2, x1], [y2, W, y1, x1]
    for corners in (first_tile, second_tile):
        vs = [c for c in corners if c[0] == "v"]
        if len(set(vs)) != len(vs):
            raise MoveError(f"change_of_foliation at {v}-{w} ({variant}): new tile would repeat a vertex")

    hexagon = {f.id, s.id}
    diagonal = {split, y1} if variant == "first" else {split, y2}
    glued = _gluing(t, hexagon, {})
    outer_before = {pair for pair in glued if pair[0][0] != "HEX" or pair[1][0] != "HEX"}
    inner_before = {pair for pair in glued - outer_before if {pair[0][1], pair[0][2]} != {V, W}}
    errors = []
    for point_choice in (0, 1):
        if point_choice and split[0] != "p":
            break
        d = _Draft(t)
        del d.tiles[f.id]
        del d.tiles[s.id]
        ca, cb = list(first_tile), list(second_tile)
        alias = {}
        if split[0] == "p":
            q = d.fresh(split[1] + "'")
            d.insert_after(split[1], q)
            alias[q] = split[1]
            target = cb if point_choice == 0 else ca
            target[target.index(split)] = ("p", q)
        # the tile through v keeps the id of S, the one through w that of F
        new = [
            tile_from_corners(s.id, f.sign, 0, _start_positive(ca, t)),
            tile_from_corners(f.id, f.sign, 0, _start_positive(cb, t)),
        ]
        link_next = {}
        for cyc in d.links.values():
            for k, p in enumerate(cyc):
                link_next[p] = cyc[(k + 1) % len(cyc)]
        order = _solve_theta(t, f, s, new, link_next, alias, diagonal)
        if order is None:
            errors.append(f"point choice {point_choice}: no theta order realizes the new gluing")
            continue
        for x in new:
            d.tiles[x.id] = x
        for r, tid in enumerate(order):
            x = d.tiles[tid]
            d.tiles[tid] = Tile(x.id, x.kind, x.sign, r, x.vertices, x.endpoints)
        try:
            out = d.finish()
        except MoveError as exc:
            errors.append(str(exc))
            continue
        after = _gluing(out, hexagon, alias)
        inner = {pair for pair in after if pair[0][0] == "HEX" and pair[1][0] == "HEX"}
        if after - inner == outer_before and _inner_ok(inner, inner_before, diagonal):
            return out, _record("change_of_foliation", (f.id, s.id, v, w, variant), t, out)
        errors.append(f"point choice {point_choice}: gluing changed outside the two tiles")
    raise MoveError(f"change_of_foliation at {v}-{w} ({variant}): " + "; ".join(errors))


def _inner_ok(inner: set, before: set, diagonal: set) -> bool:
    """Pairs inside the hexagon: the new diagonal, plus whatever else was there."""
    return {pr for pr in inner if {pr[0][1], pr[0][2]} != diagonal} == before


def _local_pairs(corners, tiles, link_next, hexagon, alias):
    """Side pairs produced at one vertex by a cyclic list of (tile id, corner)."""
    pairs = set()

    def sig(tid, i):
        x = tiles[tid]
        a, b = x.side_corners(i)
        a = (a[0], alias.get(a[1], a[1]))
        b = (b[0], alias.get(b[1], b[1]))
        return ("HEX" if tid in hexagon else tid, a, b)

    for k, (tid, i) in enumerate(corners):
        ntid, ni = corners[(k + 1) % len(corners)]
        s1 = _earlier_later(tiles[tid], i)[1]
        s2 = _earlier_later(tiles[ntid], ni)[0]
        x1, x2 = tiles[s1[0]], tiles[s2[0]]
        kind = x1.side_kind(s1[1])
        if kind != x2.side_kind(s2[1]):
            return None
        c1, c2 = x1.side_corners(s1[1]), x2.side_corners(s2[1])
        if kind == "b":
            if set(c1) != set(c2):
                return None
        else:
            p = next(c[1] for c in c1 if c[0] == "p")
            q = next(c[1] for c in c2 if c[0] == "p")
            if link_next.get(p) != q:
                return None
        a, b = sig(*s1), sig(*s2)
        pairs.add((a, b))
        pairs.add((b, a))
    return pairs


def _solve_theta(t, f, s, new, link_next, alias, diagonal, budget=50000):
    """A cyclic order of all tiles realizing the gluing wanted after the move.

    The order wanted at each vertex of the hexagon is found by trying every
    way to insert the new corners among the old ones; the global order is
    then found by inserting tiles one at a time (old theta order, keeping the
    old relative order when possible) and backtracking on conflicts.
    """
    hexagon = {f.id, s.id}
    gamma = {c for c in f.corners if c in s.corners and c[0] == "v"}
    old_tiles = dict(t.tile)
    tiles = {x.id: x for x in t.tiles if x.id not in hexagon}
    tiles.update({x.id: x for x in new})
    old_next = t.link_next
    wanted: dict[str, list[list[str]]] = {}
    touched = set(f.vertices) | set(s.vertices) | {u for x in new for u in x.vertices}
    for u in touched:
        old = list(t.corners_at[u])
        old_pairs = _local_pairs(old, old_tiles, old_next, hexagon, {})
        keep = {pr for pr in old_pairs if pr[0][0] != "HEX" or pr[1][0] != "HEX"}
        inner_keep = {pr for pr in old_pairs - keep if {pr[0][1], pr[0][2]} != gamma}
        base = [c for c in old if c[0] not in hexagon]
        fresh = [(x.id, i) for x in new for i, c in enumerate(x.corners) if c == ("v", u)]
        options = []
        for cyc in _insertions(base, fresh):
            got = _local_pairs(cyc, tiles, link_next, hexagon, alias)
            if got is None:
                continue
            inner = {pr for pr in got if pr[0][0] == "HEX" and pr[1][0] == "HEX"}
            if got - inner == keep and _inner_ok(inner, inner_keep, diagonal):
                options.append([tid for tid, _ in cyc])
        if not options:
            return None
        wanted[u] = options
    for u in t.corners_at:
        if u not in touched:
            wanted[u] = [[tid for tid, _ in t.corners_at[u]]]
    at: dict[str, list[str]] = {}
    for u, opts in wanted.items():
        for tid in opts[0]:
            at.setdefault(tid, []).append(u)

    slot = {x.id: x.theta_rank for x in t.tiles}
    slot[new[0].id] = s.theta_rank
    slot[new[1].id] = f.theta_rank
    items = _placement_order(tiles, wanted, [x.id for x in new], slot)
    counter = [0]

    def fits(seq, u):
        members = set(wanted[u][0])
        seen = [x for x in seq if x in members]
        for opt in wanted[u]:
            sub = [x for x in opt if x in set(seen)]
            if not seen or _is_rotation(seen, sub):
                return True
        return False

    def dfs(seq, k):
        if k == len(items):
            return seq
        x = items[k]
        for pos in range(len(seq), 0, -1) if seq else [0]:
            counter[0] += 1
            if counter[0] > budget:
                return None
            cand = seq[:pos] + [x] + seq[pos:]
            if all(fits(cand, u) for u in at.get(x, ())):
                found = dfs(cand, k + 1)
                if found is not None:
                    return found
        return None

    return dfs([], 0)


def _placement_order(tiles, wanted, start, slot) -> list[str]:
    """Tiles in breadth-first order over shared vertices, so each placement is constrained."""
    verts: dict[str, list[str]] = {}
    for u, opts in wanted.items():
        for tid in opts[0]:
            verts.setdefault(tid, []).append(u)
    order = list(start)
    seen = set(order)
    k = 0
    rest = sorted((tid for tid in tiles if tid not in seen), key=lambda tid: (slot[tid], tid))
    while len(order) < len(tiles):
        if k == len(order):
            tid = next(x for x in rest if x not in seen)
            order.append(tid)
            seen.add(tid)
        for u in verts.get(order[k], ()):
            for tid in sorted(wanted[u][0], key=lambda x: (slot[x], x)):
                if tid not in seen:
                    order.append(tid)
                    seen.add(tid)
        k += 1
    return order


def _is_rotation(a: list, b: list) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    try:
        k = b.index(a[0])
    except ValueError:
        return False
    return b[k:] + b[:k] == a


def _insertions(base: list, fresh: list) -> Iterator[list]:
    """Every cyclic list made by inserting ``fresh`` items (any order) into ``base``."""
    if not fresh:
        yield list(base)
        return
    seen = set()
    for perm in itertools.permutations(fresh):
        for cyc in _insert_seq(list(base), list(perm)):
            key = _cyclic_key(cyc)
            if key not in seen:
                seen.add(key)
                yield cyc


def _insert_seq(base, items):
    if not items:
        yield base
        return
    head, rest = items[0], items[1:]
    for pos in range(max(len(base), 1)):
        yield from _insert_seq(base[: pos + 1] + [head] + base[pos + 1 :] if base else [head], rest)


def _cyclic_key(cyc):
    reps = [tuple(cyc[k:] + cyc[:k]) for k in range(len(cyc))]
    return min(reps) if reps else ()


def _start_positive(corners: list[Corner], t: Tiling) -> list[Corner]:
    for k in range(4):
        c = corners[k]
        if c[0] == "v" and t.vertex[c[1]].parity is PLUS:
            return corners[k:] + corners[:k]
    raise MoveError(f"no positive vertex among corners {corners}")


def cf_collapse_ab(t: Tiling, v: str) -> tuple[Tiling, MoveRecord]:
    """Change of foliation turning a type (a,b) vertex with equal signs into type (a)."""
    star = _star(t, v)
    if star.valence != 2 or sorted(star.type_cycle) != ["a", "b"]:
        raise MoveError(f"cf_collapse_ab at {v}: star is valence {star.valence} type {star.type_string()}, need (a,b)")
    if star.sign_cycle[0] is not star.sign_cycle[1]:
        raise MoveError(f"cf_collapse_ab at {v}: signs {star.sign_string()} differ (use exchange_ab)")
    a, b = star.cyclic_tiles
    ta = t.tile[a]
    w = next(ta.corners[(k + d) % 4][1] for k in range(4) if ta.corners[k] == ("v", v) for d in (1, 3)
             if ta.side_kind(k if d == 1 else k - 1) == "b")
    errors = []
    for variant in VARIANTS:
        try:
            out, _ = change_of_foliation(t, a, b, (v, w), variant)
        except MoveError as exc:
            errors.append(str(exc))
            continue
        if vertex_star(out, v).type_cycle == ("a",):
            return out, _record("cf_collapse_ab", (v,), t, out)
    raise MoveError(f"cf_collapse_ab at {v}: " + "; ".join(errors or ["no variant leaves type (a)"]))


# site enumeration -----------------------------------------------------------------


def cf_sites(t: Tiling) -> list[tuple[str, str, tuple[str, str]]]:
    """All (tile, tile, b-edge) triples where a change of foliation is admissible
    by sign and adjacency."""
    out = []
    for e in derive_adjacency(t).b_edges:
        (a, _), (b, _) = e.sides
        if a != b and t.tile[a].sign is t.tile[b].sign:
            out.append((a, b, e.vertices))
    return out


def candidate_sites(t: Tiling) -> list[tuple[str, tuple]]:
    """(kind, args) pairs whose local preconditions hold; the move may still refuse."""
    out: list[tuple[str, tuple]] = []
    for a, b, gamma in cf_sites(t):
        for variant in VARIANTS:
            out.append(("change_of_foliation", (a, b, gamma, variant)))
    for x in t.tiles:
        if x.kind == "ab":
            out.append(("stabilize_ab", (x.id,)))
    for v in t.vertices:
        star = vertex_star(t, v.id)
        if star.valence == 1 and star.type_cycle == ("a",):
            out.append(("destabilize_a", (v.id,)))
        elif star.valence == 2 and sorted(star.type_cycle) == ["a", "b"]:
            kind = "cf_collapse_ab" if star.sign_cycle[0] is star.sign_cycle[1] else "exchange_ab"
            out.append((kind, (v.id,)))
        elif star.valence == 2 and star.type_cycle == ("b", "b") and star.sign_cycle[0] is not star.sign_cycle[1]:
            out.append(("exchange_bb", (v.id,)))
    return out


def apply_move(t: Tiling, kind: str, *args) -> tuple[Tiling, MoveRecord]:
    if kind not in MOVE_KINDS:
        raise MoveError(f"unknown move kind {kind!r}")
    return globals()[kind](t, *args)


def replay(t: Tiling, record: MoveRecord) -> tuple[Tiling, MoveRecord]:
    """Apply the move described by ``record`` again (its site holds all arguments)."""
    site = record.site
    if record.kind == "change_of_foliation":
        return change_of_foliation(t, site[0], site[1], site[2:4], site[4])
    if record.kind == "exchange_bb":
        return exchange_bb(t, site[0], site[1])
    return apply_move(t, record.kind, *site)
