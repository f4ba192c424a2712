"""Seeded random tilings, grown from trivial discs by inverse moves.

Each growth step is the inverse of one of the moves in
:mod:`braidfoliation.moves`.  A candidate is kept only when the corresponding
forward move takes it back to the tiling it was grown from (up to renaming) and
the candidate passes :func:`validate`, so every tiling produced here is a
valid disc tiling of an unlink representative by construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from braidfoliation import moves
from braidfoliation.tiling import (
    MINUS,
    PLUS,
    AxisVertex,
    BoundaryPoint,
    Sign,
    Tile,
    Tiling,
    TilingError,
    canonical_form,
    make_tiling,
    renumber,
    tile_from_corners,
    validate,
    vertex_star,
)


def trivial_discs(r: int) -> Tiling:
    """The standard r-component unlink: r radially foliated discs, braid index r."""
    return make_tiling(r, (), (), (), r)


class _Names:
    def __init__(self, t: Tiling, prefix: str):
        self.taken = set(t.vertex) | set(t.tile) | set(t.point)
        self.prefix = prefix
        self.k = 0

    def __call__(self, kind: str) -> str:
        while True:
            self.k += 1
            name = f"{kind}{self.prefix}{self.k}"
            if name not in self.taken:
                self.taken.add(name)
                return name


def _parts(t: Tiling):
    vertices = {v.id: AxisVertex(v.id, Fraction(v.axis_rank), v.parity) for v in t.vertices}
    tiles = {x.id: Tile(x.id, x.kind, x.sign, Fraction(x.theta_rank), x.vertices, x.endpoints) for x in t.tiles}
    links = {c: list(cyc) for c, cyc in t.link_cycles.items()}
    return vertices, tiles, links


def _assemble(n, vertices, tiles, links, trivial) -> Tiling | None:
    points = [BoundaryPoint(p, c, r) for c, cyc in links.items() for r, p in enumerate(cyc)]
    try:
        return renumber(n, vertices.values(), points, tiles.values(), trivial)
    except TilingError:
        return None


def _theta_slots(t: Tiling) -> list[Fraction]:
    return [Fraction(k) - Fraction(1, 2) for k in range(t.tile_count + 1)]


def _between(t: Tiling, lo_tile: str, hi_tile: str, offset: Fraction = Fraction(0)) -> list[Fraction]:
    """Theta slots cyclically after ``lo_tile`` and before ``hi_tile``."""
    lo, hi = t.tile[lo_tile].theta_rank, t.tile[hi_tile].theta_rank
    slots = [s + offset for s in _theta_slots(t)]
    if lo < hi:
        return [s for s in slots if lo < s < hi]
    if lo == hi:
        return slots
    return [s for s in slots if s > lo or s < hi]


def _gap_slots(t: Tiling, w: str, gap: int, offset: Fraction = Fraction(0)) -> list[Fraction]:
    cs = t.corners_at[w]
    return _between(t, cs[gap][0], cs[(gap + 1) % len(cs)][0], offset)


def _axis_slots(t: Tiling) -> list[Fraction]:
    return [Fraction(k) - Fraction(1, 2) for k in range(len(t.vertices) + 1)]


def _accept(cand: Tiling | None, target: Tiling, forward) -> bool:
    if cand is None:
        return False
    try:
        back, _ = forward(cand)
    except (moves.MoveError, TilingError):
        return False
    return canonical_form(back) == canonical_form(target) and validate(cand).ok


# growth steps ----------------------------------------------------------------


def grow_from_trivial_disc(t: Tiling, sign: Sign, names: _Names) -> Tiling | None:
    """Replace a trivial disc by a disc with one aa tile (inverse destabilization)."""
    if t.trivial_discs == 0:
        return None
    vertices, tiles, links = _parts(t)
    y, z = names("v"), names("v")
    p1, p2 = names("p"), names("p")
    top = max((v.axis_rank for v in vertices.values()), default=Fraction(0))
    vertices[y] = AxisVertex(y, top + 1, PLUS)
    vertices[z] = AxisVertex(z, top + 2, PLUS)
    tiles[names("T")] = Tile("", "aa", sign, Fraction(-1), (), ())  # placeholder replaced below
    tid = next(k for k, x in tiles.items() if x.id == "")
    tiles[tid] = Tile(tid, "aa", sign, Fraction(-1), (y, z), (p1, p2))
    links[max(links, default=-1) + 1] = [p1, p2]
    return _assemble(t.braid_index + 1, vertices, tiles, links, t.trivial_discs - 1)


def grow_aa(t: Tiling, y: str, gap: int, sign: Sign, rng: random.Random, names: _Names) -> Tiling | None:
    """Attach a new aa tile at the a-edge ``gap`` of the star of ``y``."""
    star = vertex_star(t, y)
    if star.type_cycle[gap] != "a":
        return None
    before = t.tile[star.cyclic_tiles[gap]]
    after = t.tile[star.cyclic_tiles[(gap + 1) % star.valence]]
    lo, hi = before.theta_rank, after.theta_rank
    vertices, tiles, links = _parts(t)
    cyc = links[t.point[_later_point(t, y, gap)].component]
    x = _later_point(t, y, gap)
    z, p1, p2, tid = names("v"), names("p"), names("p"), names("T")
    i = cyc.index(x)
    cyc[i + 1 : i + 1] = [p1, p2]
    vertices[z] = AxisVertex(z, rng.choice(_axis_slots(t)), PLUS)
    if hi > lo:
        theta = (Fraction(lo) + Fraction(hi)) / 2
    else:
        theta = rng.choice([Fraction(lo) + Fraction(1, 2), Fraction(hi) - Fraction(1, 2)])
    tiles[tid] = Tile(tid, "aa", sign, theta, (y, z), (p1, p2))
    cand = _assemble(t.braid_index + 1, vertices, tiles, links, t.trivial_discs)
    return cand if _accept(cand, t, lambda c: moves.destabilize_a(c, z)) else None


def _later_point(t: Tiling, y: str, gap: int) -> str:
    """Link point on the later side of corner ``gap`` in the star of ``y``."""
    tid, i = t.corners_at[y][gap]
    corner = t.tile[tid].corners[(i - 1) % 4] if i % 2 == 0 else t.tile[tid].corners[(i + 1) % 4]
    return corner[1]


def unfold(
    t: Tiling, wk: str, g1: int, g2: int, sign: Sign, rng: random.Random, names: _Names, tries: int = 40
) -> Tiling | None:
    """Inverse of the fold performed by ``exchange_bb``.

    The corners of ``wk`` strictly after gap ``g1`` up to gap ``g2`` move to a
    new vertex wd, and a pocket of two opposite-sign tiles around a new vertex v
    is inserted along the two gaps.
    """
    star = vertex_star(t, wk)
    m = star.valence
    parity = t.vertex[wk].parity
    block = []
    j = g1
    while j != g2:
        j = (j + 1) % m
        block.append(star.cyclic_tiles[j])
    ends = []
    for g in (g1, g2):
        if star.type_cycle[g] == "a":
            ends.append(("p", _later_point(t, wk, g)))
        else:
            tid, i = t.corners_at[wk][g]
            c = t.tile[tid].corners
            ends.append(c[(i - 1) % 4] if i % 2 == 0 else c[(i + 1) % 4])
    if g1 == g2:
        slots = _gap_slots(t, wk, g1)
        pairs = [(s + Fraction(1, 4), s) for s in slots] + [(s, s + Fraction(1, 4)) for s in slots]
    else:
        pairs = [(a, b) for a in _gap_slots(t, wk, g1) for b in _gap_slots(t, wk, g2)]
    rng.shuffle(pairs)
    orient = rng.random() < 0.5
    for thetas in pairs[:tries]:
        vertices, tiles, links = _parts(t)
        v, wd = names("v"), names("v")
        slot = rng.choice(_axis_slots(t))
        first, second = (v, wd) if rng.random() < 0.5 else (wd, v)
        vertices[first] = AxisVertex(first, slot + Fraction(1, 3), -parity if first == v else parity)
        vertices[second] = AxisVertex(second, slot + Fraction(2, 3), -parity if second == v else parity)
        for tid in block:
            x = tiles[tid]
            corners = [("v", wd) if c == ("v", wk) else c for c in x.corners]
            tiles[tid] = tile_from_corners(x.id, x.sign, x.theta_rank, corners)
        xs = []
        for kind, ident in ends:
            if kind == "p":
                q = names("p")
                cyc = links[t.point[ident].component]
                cyc.insert(cyc.index(ident) + 1, q)
                xs.append(("p", q))
            else:
                xs.append((kind, ident))
        c1 = [("v", v), ("v", wk), xs[0], ("v", wd)] if orient else [("v", v), ("v", wd), xs[0], ("v", wk)]
        c2 = [("v", v), ("v", wd), xs[1], ("v", wk)] if orient else [("v", v), ("v", wk), xs[1], ("v", wd)]
        ids = names("T"), names("T")
        try:
            for tid, corners, s, th in zip(ids, (c1, c2), (sign, -sign), thetas):
                corners = _rotate_positive(corners, vertices)
                tiles[tid] = tile_from_corners(tid, s, th, corners)
        except TilingError:
            return None
        cand = _assemble(t.braid_index, vertices, tiles, links, t.trivial_discs)
        if _accept(cand, t, lambda c: moves.exchange_bb(c, v, drop=wd)):
            return cand
    return None


def insert_pocket(
    t: Tiling, y: str, gap: int, sign: Sign, bottom: str, tip: str, tiles: tuple[str, str], points: tuple[str, str]
) -> Tiling:
    """Push a finger of surface across the axis at the a-edge ``gap`` of ``y``.

    Adds two ab tiles of opposite sign meeting along the b-edges y-bottom and
    bottom-tip; ``bottom`` is a negative vertex of type (b,b) and the pocket
    is clean (bottom and tip sit next to each other, just above ``y``).
    """
    star = vertex_star(t, y)
    if t.vertex[y].parity is not PLUS or star.type_cycle[gap] != "a":
        raise TilingError(f"no a-edge at gap {gap} of vertex {y}")
    vertices, tile_map, links = _parts(t)
    x = _later_point(t, y, gap)
    cyc = links[t.point[x].component]
    l1, l2 = points
    cyc[cyc.index(x) + 1 : cyc.index(x) + 1] = [l2, l1]
    rank = vertices[y].axis_rank
    vertices[bottom] = AxisVertex(bottom, rank + Fraction(1, 3), MINUS)
    vertices[tip] = AxisVertex(tip, rank + Fraction(2, 3), PLUS)
    theta = [s for s in _gap_slots(t, y, gap)][0]
    t1, t2 = tiles
    tile_map[t1] = tile_from_corners(t1, sign, theta + Fraction(1, 4), [("v", y), ("v", bottom), ("v", tip), ("p", l1)])
    tile_map[t2] = tile_from_corners(t2, -sign, theta, [("v", tip), ("v", bottom), ("v", y), ("p", l2)])
    out = _assemble(t.braid_index, vertices, tile_map, links, t.trivial_discs)
    if not _accept(out, t, lambda c: moves.exchange_bb(c, bottom, drop=tip)):
        raise TilingError(f"pocket at {y} gap {gap} does not fold back")
    return out


def _rotate_positive(corners, vertices):
    for k in range(4):
        c = corners[k]
        if c[0] == "v" and vertices[c[1]].parity is PLUS:
            return corners[k:] + corners[:k]
    raise TilingError("no positive corner")


def unstabilize(
    t: Tiling, comp: int, start: int, k: int, sign: Sign, rng: random.Random, names: _Names, tries: int = 40
) -> Tiling | None:
    """Inverse of ``stabilize_ab``: close k consecutive link points into a new
    negative vertex and add an ab tile, lowering the braid index by one."""
    if t.braid_index < 2:
        return None
    cyc = list(t.link_cycles[comp])
    if not 1 <= k < len(cyc):
        return None
    run = [cyc[(start + i) % len(cyc)] for i in range(k)]
    owners = [t.point_corner[p] for p in run]
    if len({tid for tid, _ in owners}) != k:
        return None
    t_first, j_first = owners[0]
    t_last, j_last = owners[-1]
    y2 = t.tile[t_first].corners[(j_first - 1) % 4]
    y0 = t.tile[t_last].corners[(j_last + 1) % 4]
    if y0 == y2:
        return None
    slots = _between(t, t_last, t_first)
    rng.shuffle(slots)
    axis = rng.choice(_axis_slots(t))
    for theta in slots[:tries]:
        vertices, tiles, links = _parts(t)
        u, p, tid = names("v"), names("p"), names("T")
        vertices[u] = AxisVertex(u, axis, MINUS)
        for q, (owner, _) in zip(run, owners):
            x = tiles[owner]
            corners = [("v", u) if c == ("p", q) else c for c in x.corners]
            tiles[owner] = tile_from_corners(x.id, x.sign, x.theta_rank, corners)
        new = links[comp]
        i = new.index(run[0])
        if i + k <= len(new):
            new[i : i + k] = [p]
        else:
            rest = [q for q in new if q not in run]
            new[:] = rest + [p]
        try:
            tiles[tid] = tile_from_corners(tid, sign, theta, [y0, ("v", u), y2, ("p", p)])
        except TilingError:
            return None
        cand = _assemble(t.braid_index - 1, vertices, tiles, links, t.trivial_discs)
        if _accept(cand, t, lambda c: moves.stabilize_ab(c, tid)):
            return cand
    return None


# random driver ------------------------------------------------------------------


@dataclass(frozen=True)
class GrowthStep:
    kind: str
    tiling: Tiling


def grow(t: Tiling, rng: random.Random, names: _Names, unstabilizing: bool = False) -> GrowthStep | None:
    """One random growth step, or None if the attempt failed.

    Unstabilization creates a negative vertex out of link points.  It passes
    every local check but need not be realizable: the destabilization it
    inverts only exists when the braid really is stabilized there.  So it is
    off unless asked for, and tilings grown with it may not reduce.
    """
    sign = rng.choice((PLUS, MINUS))
    choice = rng.random()
    if t.trivial_discs and (not t.tiles or choice < 0.15):
        out = grow_from_trivial_disc(t, sign, names)
        return GrowthStep("grow_disc", out) if out else None
    if not t.vertices:
        return None
    if choice < 0.45:
        pos = [v.id for v in t.vertices if v.parity is PLUS]
        y = rng.choice(pos)
        star = vertex_star(t, y)
        gaps = [g for g, k in enumerate(star.type_cycle) if k == "a"]
        if not gaps:
            return None
        out = grow_aa(t, y, rng.choice(gaps), sign, rng, names)
        return GrowthStep("grow_aa", out) if out else None
    if choice < 0.8:
        wk = rng.choice([v.id for v in t.vertices])
        m = t.valence(wk)
        g1 = rng.randrange(m)
        g2 = g1 if rng.random() < 0.5 else rng.randrange(m)
        out = unfold(t, wk, g1, g2, sign, rng, names, tries=8)
        return GrowthStep("unfold", out) if out else None
    if not unstabilizing or not t.link_cycles:
        return None
    comp = rng.choice(list(t.link_cycles))
    size = len(t.link_cycles[comp])
    if size < 2:
        return None
    out = unstabilize(t, comp, rng.randrange(size), rng.randint(1, min(3, size - 1)), sign, rng, names, tries=8)
    return GrowthStep("unstabilize", out) if out else None


def random_disc_tiling(
    seed: int, max_vertices: int = 20, steps: int = 12, discs: int = 1, unstabilizing: bool = False
) -> Tiling:
    """A valid tiling of ``discs`` discs with at most ``max_vertices`` vertices."""
    rng = random.Random(seed)
    names = _Names(trivial_discs(discs), f"_{seed}_")
    t = trivial_discs(discs)
    attempts = 0
    done = 0
    while done < steps and attempts < steps * 20:
        attempts += 1
        step = grow(t, rng, names, unstabilizing)
        if step is None or step.tiling.vertex_count > max_vertices:
            continue
        t = step.tiling
        done += 1
    return t


def corpus(
    count: int, seed: int = 0, max_vertices: int = 20, steps: int = 12, unstabilizing: bool = False
) -> list[Tiling]:
    """``count`` tilings; every fifth one has two or three discs."""
    return [
        random_disc_tiling(seed * 100003 + k, max_vertices, steps, 1 + k % 3 if k % 5 == 0 else 1, unstabilizing)
        for k in range(count)
    ]
