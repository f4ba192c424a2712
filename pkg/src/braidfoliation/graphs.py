"""The four singular-leaf graphs G(eps, delta) of a tiling.

G(+, d) joins the two positive vertices of every tile of sign d.  G(-, d) joins
the two negative vertices of a bb tile, the negative vertex of an ab tile to the
link, and the link to itself across an aa tile, again for tiles of sign d.  A
place where an edge meets the link is a :class:`BoundaryAttachment`.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Union

from braidfoliation.tiling import (
    MINUS,
    PLUS,
    Sign,
    Tiling,
    euler_and_classification,
    id_key,
    vertex_star,
)


@dataclass(frozen=True)
class BoundaryAttachment:
    """The end on the link of a singular-leaf subarc inside ``tile``."""

    tile: str
    point: str

    def label(self) -> str:
        return f"dF:{self.tile}:{self.point}"


Node = Union[str, BoundaryAttachment]


def node_key(node: Node):
    if isinstance(node, BoundaryAttachment):
        return (1, id_key(node.tile), id_key(node.point))
    return (0, id_key(node), ())


def node_label(node: Node) -> str:
    return node.label() if isinstance(node, BoundaryAttachment) else node


@dataclass(frozen=True)
class GraphEdge:
    tile: str
    ends: tuple[Node, Node]


@dataclass(frozen=True)
class LeafGraph:
    eps: Sign
    delta: Sign
    nodes: tuple[Node, ...]
    edges: tuple[GraphEdge, ...]

    @property
    def name(self) -> str:
        return f"G({self.eps},{self.delta})"

    def degree(self) -> dict[Node, int]:
        deg = {n: 0 for n in self.nodes}
        for e in self.edges:
            for n in e.ends:
                deg[n] += 1
        return deg

    def components(self) -> list[tuple[tuple[Node, ...], int]]:
        """Connected components as (sorted nodes, edge count)."""
        return _components(self.nodes, self.edges)

    def to_dot(self) -> str:
        name = "G_" + ("p" if self.eps is PLUS else "m") + ("p" if self.delta is PLUS else "m")
        lines = [f"graph {name} {{"]
        for n in self.nodes:
            lines.append(f'  "{node_label(n)}";')
        for e in self.edges:
            a, b = e.ends
            lines.append(f'  "{node_label(a)}" -- "{node_label(b)}" [label="{e.tile}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _components(nodes, edges) -> list[tuple[tuple[Node, ...], int]]:
    parent = {n: n for n in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        a, b = find(e.ends[0]), find(e.ends[1])
        if a != b:
            parent[a] = b
    members: dict[Node, list[Node]] = defaultdict(list)
    for n in nodes:
        members[find(n)].append(n)
    edge_count: dict[Node, int] = defaultdict(int)
    for e in edges:
        edge_count[find(e.ends[0])] += 1
    out = [(tuple(sorted(ms, key=node_key)), edge_count[root]) for root, ms in members.items()]
    return sorted(out, key=lambda c: node_key(c[0][0]))


def build_graph(t: Tiling, eps: Sign, delta: Sign) -> LeafGraph:
    edges: list[GraphEdge] = []
    for tile in t.tiles:
        if not tile.spanning or tile.sign is not delta:
            continue
        if eps is PLUS:
            a, b = tile.positive_vertices()
        elif tile.kind == "bb":
            a, b = tile.negative_vertices()
        elif tile.kind == "ab":
            a, b = tile.vertices[1], BoundaryAttachment(tile.id, tile.endpoints[0])
        else:
            a, b = (BoundaryAttachment(tile.id, p) for p in tile.endpoints)
        edges.append(GraphEdge(tile.id, (a, b)))
    nodes: set[Node] = {v.id for v in t.vertices if v.parity is eps}
    for e in edges:
        nodes.update(e.ends)
    return LeafGraph(eps, delta, tuple(sorted(nodes, key=node_key)), tuple(edges))


def all_graphs(t: Tiling) -> dict[tuple[Sign, Sign], LeafGraph]:
    return {(e, d): build_graph(t, e, d) for e in (PLUS, MINUS) for d in (PLUS, MINUS)}


@dataclass(frozen=True)
class GraphFacts:
    name: str
    components: tuple[tuple[str, ...], ...]
    trees: tuple[bool, ...]
    isolated_interior: tuple[str, ...]
    endpoint_interior: tuple[str, ...]
    loops: int | str
    boundary_loops: int | str | None  # only for eps = minus


@dataclass(frozen=True)
class GraphReport:
    graphs: dict
    facts: tuple[GraphFacts, ...]
    mixed_loops: dict  # eps -> int | "unknown"
    mixed_boundary_loops: int | str
    disjoint_opposite: bool
    singular_point_coverage: bool
    vertex_coverage: bool
    no_isolated_interior: bool

    def structural_checks(self) -> dict[str, bool]:
        return {
            "disjoint_opposite": self.disjoint_opposite,
            "singular_point_coverage": self.singular_point_coverage,
            "vertex_coverage": self.vertex_coverage,
            "no_isolated_interior": self.no_isolated_interior,
        }

    def fact(self, eps: Sign, delta: Sign) -> GraphFacts:
        name = f"G({eps},{delta})"
        return next(f for f in self.facts if f.name == name)

    def lines(self) -> list[str]:
        out = []
        for f in self.facts:
            out.append(
                f"{f.name}: components={len(f.components)} trees={sum(f.trees)} "
                f"isolated_interior={list(f.isolated_interior)} endpoint_interior={list(f.endpoint_interior)} "
                f"loops={f.loops}" + (f" boundary_loops={f.boundary_loops}" if f.boundary_loops is not None else "")
            )
        for eps, n in self.mixed_loops.items():
            out.append(f"mixed G({eps},+)uG({eps},-): loops={n}")
        out.append(f"mixed G(-,+)uG(-,-) with L: loops={self.mixed_boundary_loops}")
        for k, ok in self.structural_checks().items():
            out.append(f"{k}: {'true' if ok else 'false'}")
        return out


class _Counter:
    """Sums a per-surface-component quantity, decided only on discs and spheres."""

    def __init__(self, t: Tiling):
        cls = euler_and_classification(t)
        self.surface_of: dict[Node, int] = {}
        self.planar: dict[int, bool] = {}
        for k, comp in enumerate(cls.components):
            self.planar[k] = comp.is_disc or (comp.chi == 2 and comp.closed)
            for tid in comp.tiles:
                tile = t.tile[tid]
                self.surface_of[tid] = k
                for v in tile.vertices:
                    self.surface_of[v] = k

    def component_of(self, node: Node) -> int:
        if isinstance(node, BoundaryAttachment):
            return self.surface_of[node.tile]
        return self.surface_of[node]

    def total(self, per_component: dict[int, int]) -> int | str:
        total = 0
        for k, n in per_component.items():
            if n <= 0:
                continue
            if not self.planar[k]:
                return "unknown"
            total += n
        return total


def _cycle_rank(counter: _Counter, nodes, edges) -> dict[int, int]:
    rank: dict[int, int] = defaultdict(int)
    for members, m in _components(nodes, edges):
        rank[counter.component_of(members[0])] += m - len(members) + 1
    return rank


def _attachment_excess(counter: _Counter, nodes, edges) -> dict[int, int]:
    """Pairs of link attachments joined by an edge path, per surface component."""
    excess: dict[int, int] = defaultdict(int)
    for members, _ in _components(nodes, edges):
        k = sum(1 for n in members if isinstance(n, BoundaryAttachment))
        if k > 1:
            excess[counter.component_of(members[0])] += k - 1
    return excess


def _minus(a: dict[int, int], *bs: dict[int, int]) -> dict[int, int]:
    out = dict(a)
    for b in bs:
        for k, n in b.items():
            out[k] = out.get(k, 0) - n
    return out


def graph_report(t: Tiling) -> GraphReport:
    graphs = all_graphs(t)
    counter = _Counter(t)
    interior = {v.id for v in t.vertices if vertex_star(t, v.id).interior}

    facts = []
    for (eps, delta), g in graphs.items():
        comps = g.components()
        deg = g.degree()
        loops = counter.total(_cycle_rank(counter, g.nodes, g.edges))
        bl = None
        if eps is MINUS:
            bl = counter.total(_attachment_excess(counter, g.nodes, g.edges))
        facts.append(
            GraphFacts(
                g.name,
                tuple(tuple(node_label(n) for n in ms) for ms, _ in comps),
                tuple(m == len(ms) - 1 for ms, m in comps),
                tuple(n for n in g.nodes if n in interior and deg[n] == 0),
                tuple(n for n in g.nodes if n in interior and deg[n] == 1),
                loops,
                bl,
            )
        )

    mixed = {}
    for eps in (PLUS, MINUS):
        gp, gm = graphs[(eps, PLUS)], graphs[(eps, MINUS)]
        nodes = tuple(set(gp.nodes) | set(gm.nodes))
        union = _cycle_rank(counter, nodes, gp.edges + gm.edges)
        mixed[eps] = counter.total(
            _minus(union, _cycle_rank(counter, gp.nodes, gp.edges), _cycle_rank(counter, gm.nodes, gm.edges))
        )
    gp, gm = graphs[(MINUS, PLUS)], graphs[(MINUS, MINUS)]
    nodes = tuple(set(gp.nodes) | set(gm.nodes))
    mixed_boundary = counter.total(
        _minus(
            _attachment_excess(counter, nodes, gp.edges + gm.edges),
            _attachment_excess(counter, gp.nodes, gp.edges),
            _attachment_excess(counter, gm.nodes, gm.edges),
        )
    )

    disjoint = True
    for eps in (PLUS, MINUS):
        for delta in (PLUS, MINUS):
            g, h = graphs[(eps, delta)], graphs[(-eps, -delta)]
            if set(g.nodes) & set(h.nodes) or {e.tile for e in g.edges} & {e.tile for e in h.edges}:
                disjoint = False

    coverage = True
    for tile in t.tiles:
        if not tile.spanning:
            continue
        for pair in (((PLUS, PLUS), (MINUS, MINUS)), ((PLUS, MINUS), (MINUS, PLUS))):
            hits = sum(1 for key in pair for e in graphs[key].edges if e.tile == tile.id)
            if hits != 1:
                coverage = False

    vertex_cov = True
    for v in t.vertices:
        for pair in (((PLUS, PLUS), (MINUS, MINUS)), ((PLUS, MINUS), (MINUS, PLUS))):
            if not any(v.id in graphs[key].nodes for key in pair):
                vertex_cov = False

    no_isolated = not any(f.isolated_interior for f in facts)
    return GraphReport(graphs, tuple(facts), mixed, mixed_boundary, disjoint, coverage, vertex_cov, no_isolated)


def graphs_to_dot(t: Tiling) -> str:
    return "".join(g.to_dot() for g in all_graphs(t).values())
