"""Tilings of braid-foliated spanning surfaces.

A tiling is stored as the finite data that determines the embedding: the tiles
with their signs, vertices and link endpoints, the cyclic order of the
singularities in the fibration, the order of the vertices on the braid axis and
the order of the singular-leaf endpoints on the link.  Everything else (side
gluings, vertex stars, Euler characteristic) is derived on demand.

Each aa/ab/bb tile is a quadrilateral whose corners, read counterclockwise from
the positive side of the surface, alternate between a positive vertex and a
"negative" corner (a negative vertex, or a segment of the link)::

    aa: (+v0, p0, +v1, p1)
    ab: (+v0, -v1, +v2, p0)
    bb: (+v0, -v1, +v2, -v3)

Around a positive vertex the fibration angle increases counterclockwise, around
a negative one clockwise; two tiles consecutive in that angle order around a
vertex are glued along the side between them.
"""

from __future__ import annotations

import enum
import re
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence


class Sign(enum.Enum):
    PLUS = "+"
    MINUS = "-"

    def __neg__(self) -> "Sign":
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS

    def __int__(self) -> int:
        return 1 if self is Sign.PLUS else -1

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, value) -> "Sign":
        if isinstance(value, Sign):
            return value
        if value in ("+", "plus", 1, "+1"):
            return cls.PLUS
        if value in ("-", "minus", -1, "-1"):
            return cls.MINUS
        raise ValueError(f"not a sign: {value!r}")


Parity = Sign
PLUS, MINUS = Sign.PLUS, Sign.MINUS

KINDS = ("aa", "ab", "bb", "bc", "cc")
SPANNING_KINDS = ("aa", "ab", "bb")

# kind -> (number of vertices, number of link endpoints, vertex parities)
TILE_SHAPES: dict[str, tuple[int, int, tuple[Sign, ...]]] = {
    "aa": (2, 2, (PLUS, PLUS)),
    "ab": (3, 1, (PLUS, MINUS, PLUS)),
    "bb": (4, 0, (PLUS, MINUS, PLUS, MINUS)),
    "bc": (2, 0, (PLUS, MINUS)),
    "cc": (0, 0, ()),
}

Corner = tuple[str, str]  # ("v", vertex id) or ("p", boundary point id)
Side = tuple[str, int]  # (tile id, i): the side from corner i to corner i+1


class TilingError(ValueError):
    """Malformed tiling data."""


class NonSurfaceError(TilingError):
    """The tile sides do not glue up to a surface."""


@lru_cache(maxsize=None)
def id_key(ident: str):
    """Natural sort key, so that "v10" sorts after "v9"."""
    return tuple(int(tok) if tok.isdigit() else tok for tok in re.split(r"(\d+)", ident))


@dataclass(frozen=True)
class AxisVertex:
    id: str
    axis_rank: int
    parity: Sign


@dataclass(frozen=True)
class BoundaryPoint:
    id: str
    component: int
    link_rank: int


@dataclass(frozen=True)
class Tile:
    id: str
    kind: str
    sign: Sign
    theta_rank: int
    vertices: tuple[str, ...]
    endpoints: tuple[str, ...] = ()

    @property
    def spanning(self) -> bool:
        return self.kind in SPANNING_KINDS

    @property
    def corners(self) -> tuple[Corner, ...]:
        v, p = self.vertices, self.endpoints
        if self.kind == "aa":
            return (("v", v[0]), ("p", p[0]), ("v", v[1]), ("p", p[1]))
        if self.kind == "ab":
            return (("v", v[0]), ("v", v[1]), ("v", v[2]), ("p", p[0]))
        if self.kind == "bb":
            return tuple(("v", x) for x in v)
        return ()

    def side_kind(self, i: int) -> str:
        c = self.corners
        return "b" if c[i % 4][0] == "v" and c[(i + 1) % 4][0] == "v" else "a"

    def side_corners(self, i: int) -> tuple[Corner, Corner]:
        c = self.corners
        return c[i % 4], c[(i + 1) % 4]

    def positive_vertices(self) -> tuple[str, ...]:
        if self.kind == "aa":
            return self.vertices
        if self.kind in ("ab", "bb"):
            return (self.vertices[0], self.vertices[2])
        return ()

    def negative_vertices(self) -> tuple[str, ...]:
        if self.kind == "ab":
            return (self.vertices[1],)
        if self.kind == "bb":
            return (self.vertices[1], self.vertices[3])
        return ()


def tile_from_corners(
    tile_id: str, sign: Sign, theta_rank: int, corners: Sequence[Corner]
) -> Tile:
    """Build a spanning tile from four counterclockwise corners.

    ``corners[0]`` must be a positive vertex.  The kind is read off from the
    number of link segments among the corners.
    """
    corners = list(corners)
    if len(corners) != 4 or corners[0][0] != "v" or corners[2][0] != "v":
        raise TilingError(f"tile {tile_id}: corners {corners} fit no tile kind")
    links = [i for i, c in enumerate(corners) if c[0] == "p"]
    if links == [1]:
        corners = corners[2:] + corners[:2]
        links = [3]
    kind = {(): "bb", (3,): "ab", (1, 3): "aa"}.get(tuple(links))
    if kind is None:
        raise TilingError(f"tile {tile_id}: corners {corners} fit no tile kind")
    vs = tuple(c[1] for c in corners if c[0] == "v")
    ps = tuple(c[1] for c in corners if c[0] == "p")
    return Tile(tile_id, kind, sign, theta_rank, vs, ps)


def _earlier_later(tile: Tile, i: int) -> tuple[Side, Side]:
    """Sides of ``tile`` at corner ``i`` as (earlier, later) in the theta order."""
    if i % 2 == 0:
        return (tile.id, i), (tile.id, (i - 1) % 4)
    return (tile.id, (i - 1) % 4), (tile.id, i)


@dataclass(frozen=True)
class Tiling:
    braid_index: int
    vertices: tuple[AxisVertex, ...]
    boundary_points: tuple[BoundaryPoint, ...]
    tiles: tuple[Tile, ...]
    trivial_discs: int = 0

    # lookups -------------------------------------------------------------

    @cached_property
    def vertex(self) -> dict[str, AxisVertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def point(self) -> dict[str, BoundaryPoint]:
        return {p.id: p for p in self.boundary_points}

    @cached_property
    def tile(self) -> dict[str, Tile]:
        return {t.id: t for t in self.tiles}

    @cached_property
    def corners_at(self) -> dict[str, tuple[tuple[str, int], ...]]:
        """vertex id -> its tile corners sorted by theta rank."""
        acc: dict[str, list[tuple[int, str, int]]] = defaultdict(list)
        for t in self.tiles:
            for i, (kind, ident) in enumerate(t.corners):
                if kind == "v":
                    acc[ident].append((t.theta_rank, t.id, i))
        return {
            v.id: tuple((tid, i) for _, tid, i in sorted(acc.get(v.id, ())))
            for v in self.vertices
        }

    @cached_property
    def point_corner(self) -> dict[str, tuple[str, int]]:
        out = {}
        for t in self.tiles:
            for i, (kind, ident) in enumerate(t.corners):
                if kind == "p":
                    out[ident] = (t.id, i)
        return out

    @cached_property
    def link_cycles(self) -> dict[int, tuple[str, ...]]:
        acc: dict[int, list[BoundaryPoint]] = defaultdict(list)
        for p in self.boundary_points:
            acc[p.component].append(p)
        return {c: tuple(p.id for p in sorted(ps, key=lambda p: p.link_rank)) for c, ps in sorted(acc.items())}

    @cached_property
    def link_next(self) -> dict[str, str]:
        nxt = {}
        for cyc in self.link_cycles.values():
            for j, p in enumerate(cyc):
                nxt[p] = cyc[(j + 1) % len(cyc)]
        return nxt

    @cached_property
    def link_prev(self) -> dict[str, str]:
        return {q: p for p, q in self.link_next.items()}

    # counts --------------------------------------------------------------

    @property
    def vertex_count(self) -> int:
        """Points of the axis on the surface, one per trivial disc included."""
        return len(self.vertices) + self.trivial_discs

    @property
    def tile_count(self) -> int:
        return len(self.tiles)

    def count_parity(self, parity: Sign) -> int:
        return sum(1 for v in self.vertices if v.parity is parity)

    @property
    def link_component_count(self) -> int:
        return len(self.link_cycles) + self.trivial_discs

    @property
    def exponent_sum(self) -> int:
        """Signed count of singularities; equals the exponent sum of the braid."""
        return sum(int(t.sign) for t in self.tiles)

    def valence(self, v: str) -> int:
        return len(self.corners_at[v])

    def is_interior(self, v: str) -> bool:
        return all(k == "b" for k in vertex_star(self, v).type_cycle)

    def summary(self) -> "Summary":
        return Summary(self.vertex_count, self.tile_count, self.braid_index)


@dataclass(frozen=True)
class Summary:
    V: int
    t: int
    n: int


# construction ---------------------------------------------------------------


def make_tiling(
    braid_index: int,
    vertices: Iterable[AxisVertex],
    boundary_points: Iterable[BoundaryPoint],
    tiles: Iterable[Tile],
    trivial_discs: int = 0,
) -> Tiling:
    """Assemble a tiling, checking references, uniqueness and tile shapes."""
    vertices = tuple(sorted(vertices, key=lambda v: id_key(v.id)))
    boundary_points = tuple(sorted(boundary_points, key=lambda p: id_key(p.id)))
    tiles = tuple(sorted(tiles, key=lambda t: id_key(t.id)))

    if braid_index < 1:
        raise TilingError(f"braid index must be positive, got {braid_index}")
    if trivial_discs < 0:
        raise TilingError("trivial_discs must be non-negative")
    for label, items in (("vertex", vertices), ("boundary point", boundary_points), ("tile", tiles)):
        seen = set()
        for item in items:
            if item.id in seen:
                raise TilingError(f"duplicate {label} id {item.id!r}")
            seen.add(item.id)

    _check_ranks("axis_rank", [(v.id, v.axis_rank) for v in vertices])
    _check_ranks("theta_rank", [(t.id, t.theta_rank) for t in tiles])
    by_comp: dict[int, list[tuple[str, int]]] = defaultdict(list)
    for p in boundary_points:
        if p.component < 0:
            raise TilingError(f"boundary point {p.id}: negative component")
        by_comp[p.component].append((p.id, p.link_rank))
    for comp, ranks in by_comp.items():
        _check_ranks(f"link_rank on component {comp}", ranks)

    vids = {v.id for v in vertices}
    pids = {p.id for p in boundary_points}
    used_points: dict[str, str] = {}
    for t in tiles:
        if t.kind not in TILE_SHAPES:
            raise TilingError(f"tile {t.id}: unknown kind {t.kind!r}")
        nv, np_, _ = TILE_SHAPES[t.kind]
        if len(t.vertices) != nv or len(t.endpoints) != np_:
            raise TilingError(
                f"tile {t.id}: kind {t.kind} needs {nv} vertices and {np_} endpoints, "
                f"got {len(t.vertices)} and {len(t.endpoints)}"
            )
        if len(set(t.vertices)) != len(t.vertices):
            raise TilingError(f"tile {t.id}: repeated vertex in {t.vertices}")
        for v in t.vertices:
            if v not in vids:
                raise TilingError(f"tile {t.id}: dangling vertex reference {v!r}")
        for p in t.endpoints:
            if p not in pids:
                raise TilingError(f"tile {t.id}: dangling boundary point reference {p!r}")
            if p in used_points:
                raise TilingError(f"boundary point {p!r} used by tiles {used_points[p]} and {t.id}")
            used_points[p] = t.id
    unused = pids - set(used_points)
    if unused:
        raise TilingError(f"boundary points not on any tile: {sorted(unused, key=id_key)}")
    return Tiling(braid_index, vertices, boundary_points, tiles, trivial_discs)


def _check_ranks(label: str, pairs: list[tuple[str, int]]) -> None:
    owner: dict[int, str] = {}
    for ident, rank in pairs:
        if rank in owner:
            raise TilingError(f"duplicate {label} {rank}: {owner[rank]} and {ident}")
        owner[rank] = ident
    if set(owner) != set(range(len(pairs))):
        raise TilingError(f"{label} values must be 0..{len(pairs) - 1}, got {sorted(owner)}")


def build_tiling(raw: Mapping) -> Tiling:
    """Build a tiling from document-shaped data (see :mod:`braidfoliation.document`)."""
    try:
        vertices = [AxisVertex(str(v["id"]), int(v["axis_rank"]), Sign.parse(v["parity"])) for v in raw.get("vertices", ())]
        points = [
            BoundaryPoint(str(p["id"]), int(p["component"]), int(p["link_rank"]))
            for p in raw.get("boundary_points", ())
        ]
        tiles = [
            Tile(
                str(t["id"]),
                str(t["kind"]),
                Sign.parse(t["sign"]),
                int(t["theta_rank"]),
                tuple(str(x) for x in t.get("vertices", ())),
                tuple(str(x) for x in t.get("endpoints", ())),
            )
            for t in raw.get("tiles", ())
        ]
        braid_index = int(raw["braid_index"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, TilingError):
            raise
        raise TilingError(f"malformed tiling data: {exc}") from exc
    return make_tiling(braid_index, vertices, points, tiles, int(raw.get("trivial_discs", 0)))


def renumber(
    braid_index: int,
    vertices: Iterable[AxisVertex],
    boundary_points: Iterable[BoundaryPoint],
    tiles: Iterable[Tile],
    trivial_discs: int,
) -> Tiling:
    """Compact all ranks to 0..k-1 (keeping their order) and build the tiling.

    Ranks may be any sortable numbers (fractions are handy for insertions).
    Link components are renumbered by order of first appearance.
    """
    vertices = sorted(vertices, key=lambda v: v.axis_rank)
    vertices = [AxisVertex(v.id, r, v.parity) for r, v in enumerate(vertices)]
    tiles = sorted(tiles, key=lambda t: t.theta_rank)
    tiles = [Tile(t.id, t.kind, t.sign, r, t.vertices, t.endpoints) for r, t in enumerate(tiles)]
    by_comp: dict = defaultdict(list)
    for p in boundary_points:
        by_comp[p.component].append(p)
    points = []
    for new_c, c in enumerate(sorted(by_comp)):
        for r, p in enumerate(sorted(by_comp[c], key=lambda p: p.link_rank)):
            points.append(BoundaryPoint(p.id, new_c, r))
    return make_tiling(braid_index, vertices, points, tiles, trivial_discs)


# adjacency ------------------------------------------------------------------


@dataclass(frozen=True)
class Edge:
    """A glued pair of tile sides.

    b-edges record their two axis vertices (positive one first); a-edges record
    their axis vertex and the consecutive link points (p, q) on either side of
    the edge's endpoint on the link.
    """

    kind: str
    sides: tuple[Side, Side]
    vertices: tuple[str, ...]
    link: tuple[str, str] | None = None


@dataclass(frozen=True)
class EdgeSet:
    edges: tuple[Edge, ...]
    partner: Mapping[Side, Side] = field(repr=False)

    @property
    def b_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.kind == "b")

    @property
    def a_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.kind == "a")


def _side_vertices(t: Tiling, side: Side) -> frozenset[str]:
    a, b = t.tile[side[0]].side_corners(side[1])
    return frozenset(c[1] for c in (a, b) if c[0] == "v")


def _side_point(t: Tiling, side: Side) -> str:
    a, b = t.tile[side[0]].side_corners(side[1])
    return a[1] if a[0] == "p" else b[1]


def derive_adjacency(t: Tiling) -> EdgeSet:
    """Glue tile sides by the theta order of the tiles around every vertex."""
    cached = t.__dict__.get("_edge_set")
    if cached is not None:
        return cached
    partner: dict[Side, Side] = {}
    edges: list[Edge] = []
    for v in t.vertices:
        cs = t.corners_at[v.id]
        if not cs:
            raise TilingError(f"vertex {v.id} lies on no tile")
        for j, (tid, i) in enumerate(cs):
            ntid, ni = cs[(j + 1) % len(cs)]
            s = _earlier_later(t.tile[tid], i)[1]
            s2 = _earlier_later(t.tile[ntid], ni)[0]
            k1, k2 = t.tile[s[0]].side_kind(s[1]), t.tile[s2[0]].side_kind(s2[1])
            if k1 != k2:
                raise NonSurfaceError(f"at vertex {v.id}: {k1}-side {s} meets {k2}-side {s2}")
            if k1 == "b":
                if _side_vertices(t, s) != _side_vertices(t, s2):
                    raise NonSurfaceError(
                        f"at vertex {v.id}: b-sides {s} and {s2} join different vertex pairs"
                    )
                for x, y in ((s, s2), (s2, s)):
                    if partner.setdefault(x, y) != y:
                        raise NonSurfaceError(
                            f"b-side {x} glued to {partner[x]} at one end and {y} at the other"
                        )
                if v.parity is PLUS:
                    w = next(iter(_side_vertices(t, s) - {v.id}))
                    edges.append(Edge("b", (s, s2), (v.id, w)))
            else:
                p, q = _side_point(t, s), _side_point(t, s2)
                if t.link_next.get(p) != q:
                    raise NonSurfaceError(
                        f"a-edge at vertex {v.id}: link points {p} and {q} are not consecutive on L"
                    )
                partner[s] = s2
                partner[s2] = s
                edges.append(Edge("a", (s, s2), (v.id,), (p, q)))
    for tile in t.tiles:
        if tile.spanning:
            for i in range(4):
                if (tile.id, i) not in partner:
                    raise NonSurfaceError(f"side {(tile.id, i)} is unpaired")
    out = EdgeSet(tuple(edges), partner)
    t.__dict__["_edge_set"] = out
    return out


# stars ----------------------------------------------------------------------


@dataclass(frozen=True)
class Star:
    center: str
    cyclic_tiles: tuple[str, ...]
    type_cycle: tuple[str, ...]
    sign_cycle: tuple[Sign, ...]

    @property
    def valence(self) -> int:
        return len(self.cyclic_tiles)

    @property
    def interior(self) -> bool:
        return "a" not in self.type_cycle

    def type_string(self) -> str:
        return "(" + ",".join(self.type_cycle) + ")"

    def sign_string(self) -> str:
        return "(" + ",".join(str(s) for s in self.sign_cycle) + ")"


def vertex_star(t: Tiling, v: str) -> Star:
    """Tiles around ``v`` in fibration order, with the kinds of the sides between them."""
    if v not in t.vertex:
        raise TilingError(f"unknown vertex {v!r}")
    cs = t.corners_at[v]
    if not cs:
        raise TilingError(f"vertex {v} lies on no tile")
    kinds = []
    for tid, i in cs:
        later = _earlier_later(t.tile[tid], i)[1]
        kinds.append(t.tile[tid].side_kind(later[1]))
    return Star(
        v,
        tuple(tid for tid, _ in cs),
        tuple(kinds),
        tuple(t.tile[tid].sign for tid, _ in cs),
    )


def sign_blocks(signs: Sequence[Sign]) -> int:
    """Number of maximal constant runs in a cyclic sign word (0 if constant)."""
    n = len(signs)
    return sum(1 for j in range(n) if signs[j] is not signs[(j + 1) % n])


# classification -------------------------------------------------------------


@dataclass(frozen=True)
class SurfaceComponent:
    tiles: tuple[str, ...]
    vertices: tuple[str, ...]
    chi: int | None
    boundary_components: int
    trivial: bool = False

    @property
    def closed(self) -> bool:
        return self.boundary_components == 0

    @property
    def is_disc(self) -> bool:
        return self.chi == 1 and self.boundary_components == 1


@dataclass(frozen=True)
class Classification:
    components: tuple[SurfaceComponent, ...]

    @property
    def component_count(self) -> int:
        return len(self.components)

    @property
    def boundary_component_count(self) -> int:
        return sum(c.boundary_components for c in self.components)

    @property
    def chis(self) -> tuple[int | None, ...]:
        return tuple(c.chi for c in self.components)

    def all_discs(self) -> bool:
        return all(c.is_disc for c in self.components)

    def signature(self) -> tuple:
        """Sorted (chi, boundary count) pairs; what moves must preserve."""
        return tuple(sorted(((c.chi if c.chi is not None else 99), c.boundary_components) for c in self.components))


def euler_and_classification(t: Tiling) -> Classification:
    """Connected components with Euler characteristic and boundary count.

    The complex has the axis vertices plus one node per a-edge end on the link,
    b-edges, a-edges, link arcs and tiles, so chi = V - E_b - P + t where P is
    the number of singular-leaf endpoints on the link.  Each trivial disc adds
    a separate component with chi = 1.
    """
    edges = derive_adjacency(t)
    parent = {tile.id: tile.id for tile in t.tiles}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb, key=id_key)] = min(ra, rb, key=id_key)

    for v in t.vertices:
        cs = t.corners_at[v.id]
        for tid, _ in cs[1:]:
            union(cs[0][0], tid)
    for e in edges.edges:
        union(e.sides[0][0], e.sides[1][0])

    groups: dict[str, list[str]] = defaultdict(list)
    for tile in t.tiles:
        groups[find(tile.id)].append(tile.id)

    comps = []
    b_by_root: dict[str, int] = defaultdict(int)
    for e in edges.b_edges:
        b_by_root[find(e.sides[0][0])] += 1
    for root, tids in sorted(groups.items(), key=lambda kv: id_key(kv[0])):
        tiles = [t.tile[x] for x in tids]
        verts = sorted({v for x in tiles for v in x.vertices}, key=id_key)
        points = [p for x in tiles for p in x.endpoints]
        link_comps = {t.point[p].component for p in points}
        if any(not x.spanning for x in tiles):
            chi = None
        else:
            chi = len(verts) - b_by_root[root] - len(points) + len(tiles)
        comps.append(SurfaceComponent(tuple(sorted(tids, key=id_key)), tuple(verts), chi, len(link_comps)))
    comps.extend(SurfaceComponent((), (), 1, 1, trivial=True) for _ in range(t.trivial_discs))
    return Classification(tuple(comps))


# validation -----------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def lines(self) -> list[str]:
        return [f"{'PASS' if c.passed else 'FAIL'} {c.name}" + (f": {c.detail}" if c.detail else "") for c in self.checks]


def parse_expectation(text: str | None) -> int | None:
    """``"discs=r"`` -> r."""
    if text is None:
        return None
    m = re.fullmatch(r"\s*discs\s*=\s*(\d+)\s*", text)
    if not m:
        raise ValueError(f"unsupported expectation {text!r}; use discs=r")
    return int(m.group(1))


def validate(t: Tiling, expect: str | int | None = None) -> ValidationReport:
    """Check the necessary realizability conditions; failures are entries, not exceptions."""
    from braidfoliation import graphs  # graphs depends on this module

    discs = parse_expectation(expect) if isinstance(expect, str) else expect
    checks: list[CheckResult] = []

    bad_shape = []
    for tile in t.tiles:
        _, _, pattern = TILE_SHAPES[tile.kind]
        got = tuple(t.vertex[v].parity for v in tile.vertices)
        if got != pattern:
            bad_shape.append(f"{tile.id}:{''.join(map(str, got))}")
    checks.append(CheckResult("tile_parity", not bad_shape, ", ".join(bad_shape)))

    try:
        edges = derive_adjacency(t)
    except TilingError as exc:
        checks.append(CheckResult("side_pairing", False, str(exc)))
        for name in ("b_edge_parity", "interior_star_signs", "graph_facts", "classification", "link_components"):
            checks.append(CheckResult(name, False, "skipped: no surface"))
        checks.append(_braid_index_check(t, None))
        return ValidationReport(tuple(checks))
    checks.append(CheckResult("side_pairing", True))

    bad_b = [
        f"{e.vertices[0]}-{e.vertices[1]}"
        for e in edges.b_edges
        if t.vertex[e.vertices[0]].parity is t.vertex[e.vertices[1]].parity
    ]
    checks.append(CheckResult("b_edge_parity", not bad_b, ", ".join(bad_b)))

    bad_star = []
    for v in t.vertices:
        star = vertex_star(t, v.id)
        if star.interior and len(set(star.sign_cycle)) < 2:
            bad_star.append(v.id)
    checks.append(CheckResult("interior_star_signs", not bad_star, ", ".join(bad_star)))

    report = graphs.graph_report(t)
    facts = report.structural_checks()
    bad_facts = [k for k, ok in facts.items() if not ok]
    checks.append(CheckResult("graph_facts", not bad_facts, ", ".join(bad_facts)))

    cls = euler_and_classification(t)
    detail = ", ".join(f"chi={c.chi} b={c.boundary_components}" for c in cls.components)
    if discs is None:
        checks.append(CheckResult("classification", True, detail))
    else:
        ok = cls.component_count == discs and cls.all_discs()
        checks.append(CheckResult("classification", ok, f"expected {discs} disc(s); got {detail}"))

    owner: dict[int, set[int]] = defaultdict(set)
    for k, comp in enumerate(cls.components):
        for tid in comp.tiles:
            for p in t.tile[tid].endpoints:
                owner[t.point[p].component].add(k)
    split = [str(c) for c, ks in owner.items() if len(ks) > 1]
    checks.append(CheckResult("link_components", not split, ", ".join(split)))

    checks.append(_braid_index_check(t, cls))
    if any(not x.spanning for x in t.tiles):
        checks.append(CheckResult("closed_surface_tiles", True, "bc/cc tiles present; their gluing is not checked"))
    return ValidationReport(tuple(checks))


def _braid_index_check(t: Tiling, cls: Classification | None) -> CheckResult:
    linking = t.count_parity(PLUS) - t.count_parity(MINUS) + t.trivial_discs
    problems = []
    if t.braid_index < t.link_component_count:
        problems.append(f"n={t.braid_index} < {t.link_component_count} link components")
    spanning = cls is not None and any(not c.closed for c in cls.components)
    if spanning and all(c.chi is not None for c in cls.components) and linking != t.braid_index:
        problems.append(f"n={t.braid_index} but V+ - V- + trivial discs = {linking}")
    return CheckResult("braid_index", not problems, "; ".join(problems))


def _tile_label(x: Tile) -> tuple[tuple, int]:
    """Kind, sign and corners with points blanked, from whichever positive corner
    gives the smaller tuple; also returns that starting corner."""
    cs = x.corners
    best = None
    for r in range(0, len(cs), 2):
        rot = cs[r:] + cs[:r]
        if rot[0][0] != "v":
            continue
        key = (x.kind, str(x.sign), tuple(c[1] if c[0] == "v" else "p" for c in rot))
        if best is None or key < best[0]:
            best = (key, r)
    return best


def canonical_form(t: Tiling) -> tuple:
    """A key equal for tilings that differ only by tile/point names and a
    cyclic shift of the theta ranks.  Vertex ids and axis order are kept."""
    labels = {x.id: _tile_label(x) for x in t.tiles}
    best = None
    order = sorted(t.tiles, key=lambda x: x.theta_rank)
    for shift in range(max(len(order), 1)):
        seq = order[shift:] + order[:shift]
        pos = {x.id: k for k, x in enumerate(seq)}
        tiles = tuple(labels[x.id][0] for x in seq)
        cycles = []
        for cyc in t.link_cycles.values():
            marks = []
            for p in cyc:
                tid, i = t.point_corner[p]
                marks.append((pos[tid], (i - labels[tid][1]) % 4))
            cycles.append(_min_rotation(marks))
        key = (tiles, tuple(sorted(cycles)))
        if best is None or key < best:
            best = key
    verts = tuple((v.id, str(v.parity)) for v in sorted(t.vertices, key=lambda v: v.axis_rank))
    return (t.braid_index, t.trivial_discs, verts, best)


def _min_rotation(seq: list) -> tuple:
    return min((tuple(seq[i:] + seq[:i]) for i in range(len(seq))), default=())


def foliation_key(t: Tiling) -> tuple:
    """A key for the foliated surface itself: tiles, the cyclic order of tiles
    around every vertex and the order of link points, but not the global theta
    order (singular leaves on disjoint tiles may pass each other).

    Tiles are named by kind, sign and corners, with link points blanked out.  If
    two tiles get the same name the strict :func:`canonical_form` is used.
    """
    rot = {x.id: _tile_label(x) for x in t.tiles}
    label = {tid: lab for tid, (lab, _) in rot.items()}
    if len(set(label.values())) < len(label):
        return ("strict", canonical_form(t))
    stars = tuple(
        (v.id, _min_rotation([label[tid] for tid, _ in t.corners_at[v.id]])) for v in t.vertices
    )
    cycles = []
    for cyc in t.link_cycles.values():
        marks = []
        for p in cyc:
            tid, i = t.point_corner[p]
            marks.append((label[tid], (i - rot[tid][1]) % 4))
        cycles.append(_min_rotation(marks))
    verts = tuple((v.id, str(v.parity)) for v in sorted(t.vertices, key=lambda v: v.axis_rank))
    return ("foliation", t.braid_index, t.trivial_discs, verts, tuple(sorted(label.values())), tuple(sorted(stars)), tuple(sorted(cycles)))
