"""Undirected graph model of square, hexagonal and triangular TBU meshes.

A mesh is a patch of lattice cells. Every lattice edge bounding at least one
real cell carries a TBU. A TBU has four ports, indexed ``end * 2 + side``:
``end`` 0/1 picks the segment endpoint (lexicographically smaller vertex
first), ``side`` 0/1 picks the adjacent cell (smaller cell id first).

Ports facing the same real cell at the same lattice vertex are identified as
one non-floating node. Ports facing a notional outer cell are floating nodes,
one per port; this keeps the outer ports of concave boundary vertices on
hexagonal meshes separate, which is what the closed-form counts require.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import InvalidSpec, UnknownTbu

Cell = tuple[int, int]
Vertex = tuple[int, int]


class Family(str, Enum):
    SQUARE = "square"
    HEX = "hex"
    TRI = "tri"


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    TOP = "top"
    BOTTOM = "bottom"

    @property
    def axis(self) -> str:
        return "lr" if self in (Side.LEFT, Side.RIGHT) else "tb"


class TbuClass(str, Enum):
    PERIPHERAL = "peripheral"
    NON_PERIPHERAL = "non_peripheral"


_FAMILY_ALIASES = {
    "square": Family.SQUARE,
    "sq": Family.SQUARE,
    "hex": Family.HEX,
    "hexagonal": Family.HEX,
    "tri": Family.TRI,
    "triangular": Family.TRI,
}


@dataclass(frozen=True)
class MeshSpec:
    """Topology family plus ``rows`` (N) by ``cols`` (M) cell dimensions."""

    family: Family
    rows: int
    cols: int

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "family", Family(self.family))
        except ValueError as exc:
            raise InvalidSpec(f"unknown mesh family {self.family!r}") from exc
        for name in ("rows", "cols"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise InvalidSpec(f"{name} must be a positive integer, got {value!r}")
        if self.family is Family.TRI and self.cols % 2:
            raise InvalidSpec("triangular parallelogram meshes need an even column count")

    @classmethod
    def parse(cls, text: str) -> MeshSpec:
        """Parse ``family:NxM`` (e.g. ``square:2x3``)."""
        try:
            fam, dims = text.strip().lower().split(":")
            n, m = dims.split("x")
            family = _FAMILY_ALIASES[fam]
            return cls(family, int(n), int(m))
        except (KeyError, ValueError) as exc:
            if isinstance(exc, InvalidSpec):
                raise
            raise InvalidSpec(f"cannot parse mesh spec {text!r}; expected e.g. square:2x3") from exc

    @property
    def N(self) -> int:
        return self.rows

    @property
    def M(self) -> int:
        return self.cols

    def __str__(self) -> str:
        return f"{self.family.value}:{self.rows}x{self.cols}"


def _fmt_cell(cell: Cell) -> str:
    return f"{cell[0]},{cell[1]}"


@dataclass(frozen=True, order=True)
class TbuId:
    """TBU between two lattice-adjacent cells; one of them may be notional."""

    cell_a: Cell
    cell_b: Cell

    def __post_init__(self) -> None:
        a, b = tuple(self.cell_a), tuple(self.cell_b)
        if b < a:
            a, b = b, a
        object.__setattr__(self, "cell_a", a)
        object.__setattr__(self, "cell_b", b)

    @classmethod
    def of(cls, a: Cell, b: Cell) -> TbuId:
        return cls(tuple(a), tuple(b))

    @classmethod
    def parse(cls, text: str) -> TbuId:
        """Accept ``10-11`` (single-digit indices) or ``1,0-1,1``."""
        left, right = text.strip().removeprefix("TBU_").strip("{}").split("-")

        def cell(part: str) -> Cell:
            if "," in part:
                i, j = part.split(",")
                return int(i), int(j)
            if len(part) != 2:
                raise InvalidSpec(f"ambiguous TBU cell {part!r}; use the i,j form")
            return int(part[0]), int(part[1])

        return cls(cell(left), cell(right))

    def __str__(self) -> str:
        return f"{_fmt_cell(self.cell_a)}-{_fmt_cell(self.cell_b)}"


@dataclass(frozen=True, order=True)
class NodeId:
    """A lattice vertex plus the wedge (quadrant or 15-degree sector) a port faces."""

    vertex: Vertex
    wedge: str

    def __str__(self) -> str:
        return f"{self.vertex[0]},{self.vertex[1]}:{self.wedge}"

    @classmethod
    def parse(cls, text: str) -> NodeId:
        vert, wedge = text.strip().split(":")
        r, c = vert.split(",")
        return cls((int(r), int(c)), wedge)


# --- lattice geometry -------------------------------------------------------

_SQ3 = math.sqrt(3.0)
_HEX_OFFSETS = ((1, 1), (0, 2), (-1, 1), (-1, -1), (0, -2), (1, -1))


def _cell_polygon(family: Family, i: int, j: int) -> list[Vertex]:
    if family is Family.SQUARE:
        return [(i - 1, j - 1), (i - 1, j), (i, j), (i, j - 1)]
    if family is Family.HEX:
        cx, cy = 2 * j + i, -3 * i
        return [(cx + dx, cy + dy) for dx, dy in _HEX_OFFSETS]
    c, b = (j - 1) // 2, i - 1
    if j % 2:
        return [(c, b), (c + 1, b), (c, b + 1)]
    return [(c + 1, b), (c + 1, b + 1), (c, b + 1)]


def vertex_xy(family: Family, v: Vertex) -> tuple[float, float]:
    """Cartesian position of a lattice vertex (y grows upward, row 1 on top)."""
    if family is Family.SQUARE:
        return float(v[1]), -float(v[0])
    if family is Family.HEX:
        return v[0] * _SQ3 / 2.0, v[1] / 2.0
    return v[0] + v[1] / 2.0, -v[1] * _SQ3 / 2.0


def _centroid(family: Family, cell: Cell) -> tuple[float, float]:
    pts = [vertex_xy(family, v) for v in _cell_polygon(family, *cell)]
    return sum(p[0] for p in pts) / len(pts), sum(p[1] for p in pts) / len(pts)


def _angle(dx: float, dy: float) -> float:
    return math.degrees(math.atan2(dy, dx)) % 360.0


def _wedge_label(family: Family, angle: float) -> str:
    if family is Family.SQUARE:
        return ("NE", "NW", "SW", "SE")[int(angle // 90) % 4]
    return f"{(15 * round(angle / 15)) % 360:03d}"


# --- graph ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MeshGraph:
    """Immutable graph of one mesh.

    ``port_nodes[t][p]`` is the node index of port ``p`` of TBU ``t``;
    ``node_ports[n]`` lists the ``(t, p)`` ports identified into node ``n``.
    """

    spec: MeshSpec
    tbus: tuple[TbuId, ...]
    segments: tuple[tuple[Vertex, Vertex], ...]
    orientation: tuple[str, ...]
    nodes: tuple[NodeId, ...]
    port_nodes: tuple[tuple[int, int, int, int], ...]
    node_ports: tuple[tuple[tuple[int, int], ...], ...]
    floating: tuple[bool, ...]
    sides: dict[int, Side]
    boundary_index: dict[int, int]
    tbu_index: dict[TbuId, int]
    node_index: dict[NodeId, int]
    real_cells: frozenset[Cell]

    @property
    def n_tbu(self) -> int:
        return len(self.tbus)

    @property
    def n_floating(self) -> int:
        return sum(self.floating)

    @property
    def n_non_floating(self) -> int:
        return len(self.nodes) - self.n_floating

    @property
    def n_paths(self) -> int:
        return self.n_floating // 2

    def degree(self, node: int) -> int:
        return len(self.node_ports[node])

    def floating_nodes(self) -> list[int]:
        return [n for n, f in enumerate(self.floating) if f]

    def index_of(self, tbu: TbuId) -> int:
        try:
            return self.tbu_index[tbu]
        except KeyError:
            raise UnknownTbu(f"{tbu} is not a TBU of {self.spec}") from None

    def is_peripheral(self, t: int) -> bool:
        return any(self.floating[n] for n in self.port_nodes[t])

    def peripheral_tbus(self) -> list[int]:
        return [t for t in range(self.n_tbu) if self.is_peripheral(t)]

    def cells_of(self, t: int) -> tuple[Cell, Cell]:
        tbu = self.tbus[t]
        return tbu.cell_a, tbu.cell_b


def classify_tbu(mesh: MeshGraph, tbu: TbuId) -> TbuClass:
    """Peripheral iff any of the TBU's four port nodes is floating."""
    t = mesh.index_of(tbu)
    return TbuClass.PERIPHERAL if mesh.is_peripheral(t) else TbuClass.NON_PERIPHERAL


def _square_side(seg: tuple[Vertex, Vertex], spec: MeshSpec) -> Side:
    (r0, c0), (r1, c1) = seg
    if c0 == c1:
        return Side.LEFT if c0 == 0 else Side.RIGHT
    return Side.TOP if r0 == 0 else Side.BOTTOM


@lru_cache(maxsize=None)
def build_mesh(spec: MeshSpec) -> MeshGraph:
    """Build the graph of ``spec``; cached because meshes are immutable."""
    fam, n_rows, n_cols = spec.family, spec.rows, spec.cols
    real = frozenset((i, j) for i in range(1, n_rows + 1) for j in range(1, n_cols + 1))

    # Padding by one ring of notional cells names every peripheral TBU.
    edge_cells: dict[tuple[Vertex, Vertex], list[Cell]] = {}
    for i in range(n_rows + 2):
        for j in range(n_cols + 2):
            poly = _cell_polygon(fam, i, j)
            for k, u in enumerate(poly):
                v = poly[(k + 1) % len(poly)]
                edge_cells.setdefault((min(u, v), max(u, v)), []).append((i, j))

    found: dict[tuple[Vertex, Vertex], TbuId] = {}
    for cell in real:
        poly = _cell_polygon(fam, *cell)
        for k, u in enumerate(poly):
            v = poly[(k + 1) % len(poly)]
            seg = (min(u, v), max(u, v))
            cells = edge_cells[seg]
            if len(cells) != 2:
                raise AssertionError(f"lattice edge {seg} borders {len(cells)} cells")
            found[seg] = TbuId.of(*cells)

    def order_key(seg: tuple[Vertex, Vertex]) -> tuple[float, float]:
        (x0, y0), (x1, y1) = vertex_xy(fam, seg[0]), vertex_xy(fam, seg[1])
        return round(-(y0 + y1) / 2, 6), round((x0 + x1) / 2, 6)

    segments = tuple(sorted(found, key=order_key))
    tbus = tuple(found[s] for s in segments)

    orientation = []
    for u, v in segments:
        if fam is Family.SQUARE:
            orientation.append("H" if u[0] == v[0] else "V")
        else:
            (x0, y0), (x1, y1) = vertex_xy(fam, u), vertex_xy(fam, v)
            orientation.append(f"{round(_angle(x1 - x0, y1 - y0)) % 180:03d}")

    nodes: list[NodeId] = []
    node_index: dict[NodeId, int] = {}
    corner_key: dict[tuple[Vertex, Cell], int] = {}
    port_nodes: list[tuple[int, int, int, int]] = []
    node_ports: list[list[tuple[int, int]]] = []
    floating: list[bool] = []

    def new_node(nid: NodeId, is_floating: bool) -> int:
        if nid in node_index:
            raise AssertionError(f"duplicate node id {nid}")
        node_index[nid] = len(nodes)
        nodes.append(nid)
        node_ports.append([])
        floating.append(is_floating)
        return len(nodes) - 1

    for t, (seg, tbu) in enumerate(zip(segments, tbus)):
        row = []
        for end in (0, 1):
            vert, other = seg[end], seg[1 - end]
            vx, vy = vertex_xy(fam, vert)
            for side, cell in enumerate((tbu.cell_a, tbu.cell_b)):
                if cell in real:
                    key = (vert, cell)
                    if key not in corner_key:
                        cx, cy = _centroid(fam, cell)
                        nid = NodeId(vert, _wedge_label(fam, _angle(cx - vx, cy - vy)))
                        corner_key[key] = new_node(nid, False)
                    node = corner_key[key]
                else:
                    ox, oy = vertex_xy(fam, other)
                    cx, cy = _centroid(fam, cell)
                    dx, dy = ox - vx, oy - vy
                    turn = 15.0 if dx * (cy - vy) - dy * (cx - vx) > 0 else -15.0
                    nid = NodeId(vert, _wedge_label(fam, _angle(dx, dy) + turn))
                    node = new_node(nid, True)
                node_ports[node].append((t, end * 2 + side))
                row.append(node)
        port_nodes.append(tuple(row))

    sides: dict[int, Side] = {}
    if fam is Family.SQUARE:
        for t, seg in enumerate(segments):
            for node in port_nodes[t]:
                if floating[node]:
                    sides[node] = _square_side(seg, spec)

    boundary_index = _walk_boundary(fam, segments, port_nodes, floating)

    return MeshGraph(
        spec=spec,
        tbus=tbus,
        segments=segments,
        orientation=tuple(orientation),
        nodes=tuple(nodes),
        port_nodes=tuple(port_nodes),
        node_ports=tuple(tuple(p) for p in node_ports),
        floating=tuple(floating),
        sides=sides,
        boundary_index=boundary_index,
        tbu_index={tbu: t for t, tbu in enumerate(tbus)},
        node_index=node_index,
        real_cells=real,
    )


def _walk_boundary(fam, segments, port_nodes, floating) -> dict[int, int]:
    """Number floating nodes clockwise around the outline, starting top-left."""
    at_vertex: dict[Vertex, list[int]] = {}
    boundary = [t for t in range(len(segments)) if any(floating[n] for n in port_nodes[t])]
    for t in boundary:
        for v in segments[t]:
            at_vertex.setdefault(v, []).append(t)

    start = boundary[0]
    u, v = segments[start]
    if vertex_xy(fam, v)[0] < vertex_xy(fam, u)[0]:
        u, v = v, u
    order: dict[int, int] = {}
    t, here = start, u
    while True:
        a, b = segments[t]
        end_here = 0 if a == here else 1
        for end in (end_here, 1 - end_here):
            for node in port_nodes[t][end * 2:end * 2 + 2]:
                if floating[node] and node not in order:
                    order[node] = len(order)
        there = b if a == here else a
        nxt = [s for s in at_vertex[there] if s != t]
        t, here = nxt[0], there
        if t == start:
            break
    return order
