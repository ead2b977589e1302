"""Synthesize configurations that route a path of a requested length.

All constructions share one mechanism. With every TBU in bar state each
real cell is an idle loop. Crossing the TBU shared by two cells splices
their loops, so crossing the edges of a spanning tree over ``k`` cells gives
a single loop through all ``k`` perimeters. Crossing one peripheral TBU on
that loop opens it into a path one longer than the loop; crossing two splits
it into two paths whose lengths are the two arcs between them, plus two.

Square meshes use fixed recipes keyed on ``x mod 4`` over a row-by-row
zigzag of cells. Hexagonal and triangular meshes choose the opening pair by
walking the spliced loop.
"""
from __future__ import annotations

from dataclasses import dataclass

from .config import Configuration, all_bar, from_cross_set
from .errors import NotRealizable, OutOfRange, UnsupportedFamily
from .mesh import Cell, Family, MeshGraph, MeshSpec, NodeId, TbuId, build_mesh
from .theory import single_path_realizable
from .tracer import trace


@dataclass(frozen=True)
class Construction:
    config: Configuration
    start: NodeId
    end: NodeId
    length: int
    recipe: str
    crossed: tuple[TbuId, ...]


def _mesh(mesh: MeshGraph | MeshSpec) -> MeshGraph:
    return mesh if isinstance(mesh, MeshGraph) else build_mesh(mesh)


def zigzag_cells(n_rows: int, n_cols: int, k: int | None = None) -> list[Cell]:
    """(1,1)..(1,M), (2,M)..(2,1), (3,1).. truncated to ``k`` cells."""
    out = []
    for i in range(1, n_rows + 1):
        cols = range(1, n_cols + 1) if i % 2 else range(n_cols, 0, -1)
        out.extend((i, j) for j in cols)
    return out if k is None else out[:k]


def _tri_order(n_rows: int, n_cols: int) -> list[Cell]:
    # odd rows left to right; even rows enter at M-1, take M, then sweep left
    out = []
    for i in range(1, n_rows + 1):
        if i % 2:
            out.extend((i, j) for j in range(1, n_cols + 1))
        else:
            out.extend([(i, n_cols - 1), (i, n_cols)] + [(i, j) for j in range(n_cols - 2, 0, -1)])
    return out


def cell_order(spec: MeshSpec) -> list[Cell]:
    if spec.family is Family.TRI:
        return _tri_order(spec.rows, spec.cols)
    return zigzag_cells(spec.rows, spec.cols)


def _shared_tbu(mesh: MeshGraph, a: Cell, b: Cell) -> TbuId | None:
    tbu = TbuId.of(a, b)
    return tbu if tbu in mesh.tbu_index else None


def splice_tbus(mesh: MeshGraph, cells: list[Cell]) -> list[TbuId]:
    """Spanning-tree splices: each cell joins the latest earlier cell it touches."""
    out = []
    for pos, cell in enumerate(cells[1:], start=1):
        for prev in reversed(cells[:pos]):
            tbu = _shared_tbu(mesh, prev, cell)
            if tbu is not None:
                out.append(tbu)
                break
        else:
            raise AssertionError(f"cell {cell} does not touch any earlier cell")
    return out


def _finish(mesh: MeshGraph, crossed: list[TbuId], x: int, recipe: str, anchor: TbuId | None) -> Construction:
    config = from_cross_set(mesh, crossed)
    paths = [p for p in trace(mesh, config).paths if p.length == x]
    if anchor is not None:
        t = mesh.index_of(anchor)
        touching = [p for p in paths if t in (p.tbus[0], p.tbus[-1])]
        paths = touching or paths
    if not paths:
        raise AssertionError(f"recipe {recipe} did not produce a length-{x} path on {mesh.spec}")
    p = paths[0]
    return Construction(config, p.start, p.end, x, recipe, tuple(sorted(crossed)))


# --- square recipes ---------------------------------------------------------


def _transpose(tbus: list[TbuId]) -> list[TbuId]:
    return [TbuId.of(t.cell_a[::-1], t.cell_b[::-1]) for t in tbus]


def _square_recipe(n: int, m: int, x: int) -> tuple[str, list[TbuId], TbuId] | None:
    """Named cross set for length ``x`` on an n x m mesh, or None if no recipe applies."""
    left = TbuId.of((1, 0), (1, 1))
    top = TbuId.of((0, 1), (1, 1))

    def spliced(k: int) -> list[TbuId]:
        cells = zigzag_cells(n, m, k)
        return [TbuId.of(a, b) for a, b in zip(cells, cells[1:])]

    r = x % 4
    if x == 1:
        return "bar-periphery", [], left
    if r == 1:
        k = (x - 1) // 4
        return "opened-loop", spliced(k) + [left], left
    if r == 0:
        k = x // 4
        return "corner-split", spliced(k) + [left, top], left
    if r == 2:
        if x == 2:
            return "corner-split", [left, top], left
        if m < 2:
            return None
        k = (x + 2) // 4
        return "offset-corner-split", spliced(k) + [left, TbuId.of((0, 2), (1, 2))], left
    if m % 2 and 2 * m + 1 <= x <= 4 * n * m + 1 - 2 * m:
        k = m + (x - 2 * m - 1) // 4
        return "row-crossing", spliced(k) + [left, TbuId.of((1, m), (1, m + 1))], left
    return None


def construct_single_path(mesh: MeshGraph | MeshSpec, x: int) -> Construction:
    """A configuration containing a path of length exactly ``x``, checked by tracing it."""
    g = _mesh(mesh)
    verdict = single_path_realizable(g.spec, x)
    if not verdict.realizable:
        raise NotRealizable(f"length {x} is not realizable on {g.spec}: {verdict.reason}")
    if g.spec.family is Family.SQUARE:
        return _construct_square(g, x)
    return _construct_by_loop(g, x)


def _construct_square(g: MeshGraph, x: int) -> Construction:
    n, m = g.spec.rows, g.spec.cols
    if n >= 2 and x == 4 * n * m + 1 - 2 * m and x != 4 * n * m + 1:
        return construct_modified_snake(g, "opposite")
    plan = _square_recipe(n, m, x)
    transposed = False
    if plan is None:
        plan = _square_recipe(m, n, x)
        transposed = True
    if plan is None:
        raise AssertionError(f"no square recipe for x={x} on {g.spec}")
    recipe, crossed, anchor = plan
    if transposed:
        crossed, anchor, recipe = _transpose(crossed), _transpose([anchor])[0], recipe + "-transposed"
    return _finish(g, crossed, x, recipe, anchor)


def snake_tbus(n: int, m: int) -> list[TbuId]:
    """Cross set of the longest single path: the entry TBU at the top-left,
    every interior vertical TBU, and one row-to-row link per row boundary,
    alternating between the last and the first column."""
    out = [TbuId.of((1, 0), (1, 1))]
    out += [TbuId.of((i, j), (i, j + 1)) for i in range(1, n + 1) for j in range(1, m)]
    for i in range(1, n):
        j = m if i % 2 else 1
        out.append(TbuId.of((i, j), (i + 1, j)))
    return out


def construct_max_snake(mesh: MeshGraph | MeshSpec) -> Construction:
    g = _mesh(mesh)
    if g.spec.family is not Family.SQUARE:
        raise UnsupportedFamily("the snake recipe is defined for square meshes")
    n, m = g.spec.rows, g.spec.cols
    return _finish(g, snake_tbus(n, m), 4 * n * m + 1, "snake", TbuId.of((1, 0), (1, 1)))


def construct_modified_snake(mesh: MeshGraph | MeshSpec, variant: str) -> Construction:
    """Snake plus one more crossed peripheral TBU.

    ``adjacent`` crosses the top TBU of cell (1,1), giving an adjacent-side
    path of length 4NM. ``opposite`` crosses the right TBU of cell (2,M),
    giving an opposite-side path of length 4NM + 1 - 2M (needs N >= 2).
    """
    g = _mesh(mesh)
    if g.spec.family is not Family.SQUARE:
        raise UnsupportedFamily("the snake recipe is defined for square meshes")
    n, m = g.spec.rows, g.spec.cols
    if variant == "adjacent":
        extra, x = TbuId.of((0, 1), (1, 1)), 4 * n * m
    elif variant == "opposite":
        if n < 2:
            raise OutOfRange("the opposite-side snake needs at least two rows")
        extra, x = TbuId.of((2, m), (2, m + 1)), 4 * n * m + 1 - 2 * m
    else:
        raise ValueError(f"unknown snake variant {variant!r}")
    return _finish(g, snake_tbus(n, m) + [extra], x, f"snake-{variant}", TbuId.of((1, 0), (1, 1)))


def construct_extremal(mesh: MeshGraph | MeshSpec, k0: int) -> Configuration:
    """One path of length ``step*k0 + 1``, every other path of length 1."""
    g = _mesh(mesh)
    cells = cell_order(g.spec)
    if not 0 <= k0 <= len(cells):
        raise OutOfRange(f"k0 must lie in [0, {len(cells)}], got {k0}")
    if k0 == 0:
        return all_bar(g)
    chosen = cells[:k0]
    crossed = splice_tbus(g, chosen)
    if g.spec.family is Family.SQUARE:
        opener = TbuId.of((1, 0), (1, 1))
    else:
        opener = _peripheral_of(g, chosen[0])[0]
    return from_cross_set(g, crossed + [opener])


# --- loop walking for hexagonal / triangular meshes -------------------------


def _peripheral_of(g: MeshGraph, cell: Cell) -> list[TbuId]:
    out = []
    for t, tbu in enumerate(g.tbus):
        if cell in (tbu.cell_a, tbu.cell_b) and g.is_peripheral(t):
            out.append(tbu)
    return out


def _construct_by_loop(g: MeshGraph, x: int) -> Construction:
    if x == 1:
        anchor = g.tbus[g.peripheral_tbus()[0]]
        return _finish(g, [], 1, "bar-periphery", anchor)
    per_cell = {Family.HEX: 6, Family.TRI: 3}[g.spec.family]
    order = cell_order(g.spec)
    k_min = max(1, -(-(x - 1) // per_cell))
    for k in range(k_min, len(order) + 1):
        cells = order[:k]
        spliced = splice_tbus(g, cells)
        cross = [False] * g.n_tbu
        for tbu in spliced:
            cross[g.index_of(tbu)] = True
        loop = _loop_through(g, cross, cells[0])
        size = len(loop)
        periph = [pos for pos, t in enumerate(loop) if g.is_peripheral(t)]
        if x == size + 1:
            return _finish(g, spliced + [g.tbus[loop[periph[0]]]], x, "opened-loop", g.tbus[loop[periph[0]]])
        for i, a in enumerate(periph):
            for b in periph[i + 1:]:
                gap = b - a - 1
                if x in (gap + 2, size - 2 - gap + 2):
                    ta, tb = g.tbus[loop[a]], g.tbus[loop[b]]
                    return _finish(g, spliced + [ta, tb], x, "split-loop", ta)
    return _construct_by_search(g, x)


def _construct_by_search(g: MeshGraph, x: int) -> Construction:
    """Exhaustive fallback when no spliced loop opens to length ``x``."""
    from .config import DEFAULT_CAP, from_bits
    from .oracle import oracle_realizable_lengths

    if g.n_tbu > DEFAULT_CAP:
        raise UnsupportedFamily(
            f"no loop construction for x={x} on {g.spec} and the mesh is too large to search exhaustively"
        )
    witnesses = oracle_realizable_lengths(g).witnesses
    if x not in witnesses:
        raise NotRealizable(f"exhaustive search finds no configuration with a length-{x} path on {g.spec}")
    config = from_bits(g, witnesses[x])
    p = next(p for p in trace(g, config).paths if p.length == x)
    return Construction(config, p.start, p.end, x, "exhaustive-search", tuple(config.cross_tbus()))


def _loop_through(g: MeshGraph, cross: list[bool], cell: Cell) -> list[int]:
    """TBU sequence of the idle loop running inside ``cell``."""
    for loop in trace(g, cross).loops:
        tbus = list(loop.tbus)
        for t in tbus:
            if cell in g.cells_of(t) and g.is_peripheral(t):
                return tbus
    raise AssertionError(f"no loop passes through {cell}")
