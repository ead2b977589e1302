"""Trace the optical paths and idle loops of a bar/cross configuration.

Every non-floating node has degree two, so tracing is a plain walk: enter a
TBU through a port, leave through the port its state selects, step through
the node to the only other port, repeat until a floating node. Bar keeps the
arm (port ``p -> p ^ 2``), cross swaps it (``p -> p ^ 3``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .config import Configuration
from .errors import MalformedSum, UnsupportedFamily
from .mesh import Family, MeshGraph, NodeId, Side, build_mesh
from .theory import PathType, classify_sides, path_sum_spectrum


@dataclass(frozen=True)
class TracedPath:
    """An undirected path, stored with its smaller endpoint first."""

    nodes: tuple[NodeId, ...]
    tbus: tuple[int, ...]
    bar_traversals: int
    start_side: Side | None
    end_side: Side | None

    @property
    def length(self) -> int:
        return len(self.tbus)

    @property
    def start(self) -> NodeId:
        return self.nodes[0]

    @property
    def end(self) -> NodeId:
        return self.nodes[-1]


@dataclass(frozen=True)
class ClosedLoop:
    nodes: tuple[NodeId, ...]
    tbus: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.tbus)


@dataclass(frozen=True)
class PathStats:
    lengths: tuple[int, ...]
    total: int
    k0: int
    mean: Fraction
    variance: Fraction
    longest: int


@dataclass(frozen=True)
class Trace:
    paths: tuple[TracedPath, ...]
    loops: tuple[ClosedLoop, ...]


def _arm(p: int, cross: bool) -> int:
    # arm id = side of the arm's end-0 port
    return (p & 1) ^ ((p >> 1) & cross)


def walk_paths(mesh: MeshGraph, cross: Sequence[bool]) -> list[tuple[list[int], list[int], list[int]]]:
    """Raw ``(node indices, TBU indices, arm ids)`` per path, each path reported once."""
    port_nodes, node_ports, floating = mesh.port_nodes, mesh.node_ports, mesh.floating
    seen = [False] * len(floating)
    out = []
    for start, is_floating in enumerate(floating):
        if not is_floating or seen[start]:
            continue
        t, p = node_ports[start][0]
        nodes, tbus, arms = [start], [], []
        while True:
            c = cross[t]
            q = p ^ 3 if c else p ^ 2
            tbus.append(t)
            arms.append((p & 1) ^ ((p >> 1) & c))
            n = port_nodes[t][q]
            nodes.append(n)
            if floating[n]:
                break
            a, b = node_ports[n]
            t, p = b if a[0] == t and a[1] == q else a
        seen[start] = seen[nodes[-1]] = True
        out.append((nodes, tbus, arms))
    return out


def path_summaries(mesh: MeshGraph, cross: Sequence[bool]) -> list[tuple[int, int, int]]:
    """``(start, end, length)`` per path; the lean form used by exhaustive sweeps."""
    port_nodes, node_ports, floating = mesh.port_nodes, mesh.node_ports, mesh.floating
    seen = [False] * len(floating)
    out = []
    for start, is_floating in enumerate(floating):
        if not is_floating or seen[start]:
            continue
        t, p = node_ports[start][0]
        length = 0
        while True:
            q = p ^ 3 if cross[t] else p ^ 2
            length += 1
            n = port_nodes[t][q]
            if floating[n]:
                break
            a, b = node_ports[n]
            t, p = b if a[0] == t and a[1] == q else a
        seen[start] = seen[n] = True
        out.append((start, n, length))
    return out


def walk_loops(mesh: MeshGraph, cross: Sequence[bool], used: set[tuple[int, int]]) -> list[tuple[list[int], list[int]]]:
    """Raw loops over the arms not in ``used`` (a set of ``(tbu, arm)``)."""
    port_nodes, node_ports = mesh.port_nodes, mesh.node_ports
    visited = set(used)
    out = []
    for t0 in range(mesh.n_tbu):
        for arm0 in (0, 1):
            if (t0, arm0) in visited:
                continue
            t, p = t0, arm0
            nodes, tbus = [port_nodes[t][p]], []
            while True:
                visited.add((t, _arm(p, cross[t])))
                q = p ^ 3 if cross[t] else p ^ 2
                tbus.append(t)
                n = port_nodes[t][q]
                a, b = node_ports[n]
                t, p = b if a[0] == t and a[1] == q else a
                if t == t0 and p == arm0:
                    break
                nodes.append(n)
            out.append((nodes, tbus))
    return out


def _cross_of(config: Configuration | Sequence[bool]) -> Sequence[bool]:
    return config.cross if isinstance(config, Configuration) else config


def trace(mesh: MeshGraph, config: Configuration | Sequence[bool]) -> Trace:
    cross = _cross_of(config)
    nodes = mesh.nodes
    paths, used = [], set()
    for node_idx, tbus, arms in walk_paths(mesh, cross):
        used.update(zip(tbus, arms))
        ids = [nodes[n] for n in node_idx]
        if ids[-1] < ids[0]:
            ids.reverse()
            node_idx = node_idx[::-1]
            tbus = tbus[::-1]
        bars = sum(1 for t in tbus if not cross[t])
        paths.append(
            TracedPath(
                tuple(ids),
                tuple(tbus),
                bars,
                mesh.sides.get(node_idx[0]),
                mesh.sides.get(node_idx[-1]),
            )
        )
    paths.sort(key=lambda p: (p.start, p.end))
    loops = [ClosedLoop(tuple(nodes[n] for n in ln), tuple(lt)) for ln, lt in walk_loops(mesh, cross, used)]
    return Trace(tuple(paths), tuple(loops))


def trace_all_paths(mesh: MeshGraph, config: Configuration | Sequence[bool]) -> list[TracedPath]:
    return list(trace(mesh, config).paths)


def closed_loops(mesh: MeshGraph, config: Configuration | Sequence[bool]) -> list[ClosedLoop]:
    return list(trace(mesh, config).loops)


def classify_path(path: TracedPath, mesh: MeshGraph | None = None) -> PathType:
    """Same / adjacent / opposite sides; square meshes only."""
    if mesh is not None and mesh.spec.family is not Family.SQUARE:
        raise UnsupportedFamily("path types need side labels, which only square meshes have")
    if path.start_side is None or path.end_side is None:
        raise UnsupportedFamily("path has no side labels (not a square mesh)")
    return classify_sides(path.start_side, path.end_side)


def path_stats(paths: Sequence[TracedPath] | Sequence[int], mesh: MeshGraph) -> PathStats:
    """Sum decomposition, mean, population variance and maximum of the path lengths."""
    lengths = tuple(p if isinstance(p, int) else p.length for p in paths)
    spectrum = path_sum_spectrum(mesh.spec)
    total = sum(lengths)
    k0 = spectrum.k_of(total)
    if k0 is None or len(lengths) != spectrum.base:
        raise MalformedSum(
            f"{len(lengths)} paths summing to {total} do not fit "
            f"{spectrum.base} + {spectrum.step}k with 0 ≤ k ≤ {spectrum.kmax}"
        )
    mean = Fraction(total, len(lengths))
    variance = sum((Fraction(l) - mean) ** 2 for l in lengths) / len(lengths)
    return PathStats(lengths, total, k0, mean, variance, max(lengths))


def trace_config(config: Configuration) -> Trace:
    return trace(build_mesh(config.spec), config)
