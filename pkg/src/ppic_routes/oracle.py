"""Exhaustive ground truth for small meshes.

Sweeps split the configuration index range into contiguous chunks. Each
chunk returns a partial result and partials merge associatively, keeping
the smallest witness index, so the answer does not depend on the worker
count or the chunking.
"""
from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .config import DEFAULT_CAP, check_cap, cross_flags, split_range
from .mesh import Family, MeshGraph, MeshSpec, build_mesh
from .theory import (
    classify_sides,
    max_path_length,
    multi_path_upper_bound,
    path_count,
    path_sum_spectrum,
    stats_bounds,
    type_constraints,
)
from .tracer import walk_loops, walk_paths

log = logging.getLogger(__name__)

_MAX_COUNTEREXAMPLES = 20


def _bits(index: int, n: int) -> str:
    return format(index, f"0{n}b") if n else ""


# --- per-chunk workers (top level so they pickle) ---------------------------


def _lengths_chunk(spec: MeshSpec, lo: int, hi: int) -> dict[int, int]:
    from .tracer import path_summaries

    g = build_mesh(spec)
    n = g.n_tbu
    first: dict[int, int] = {}
    for index in range(lo, hi):
        for _, _, length in path_summaries(g, cross_flags(index, n)):
            if length not in first:
                first[length] = index
    return first


def _maxy_chunk(spec: MeshSpec, lo: int, hi: int) -> dict[int, tuple[int, int]]:
    from .tracer import path_summaries

    g = build_mesh(spec)
    n = g.n_tbu
    best: dict[int, tuple[int, int]] = {}
    for index in range(lo, hi):
        counts = Counter(length for _, _, length in path_summaries(g, cross_flags(index, n)))
        for length, y in counts.items():
            cur = best.get(length)
            if cur is None or y > cur[0]:
                best[length] = (y, index)
    return best


@dataclass
class _SuitePartial:
    configs: int = 0
    failures: dict[str, list[str]] = field(default_factory=dict)
    sums: set[int] = field(default_factory=set)

    def fail(self, check: str, detail: str) -> None:
        bucket = self.failures.setdefault(check, [])
        if len(bucket) < _MAX_COUNTEREXAMPLES:
            bucket.append(detail)


def _suite_chunk(spec: MeshSpec, lo: int, hi: int) -> _SuitePartial:
    g = build_mesh(spec)
    n = g.n_tbu
    square = spec.family is Family.SQUARE
    n_paths = path_count(spec)
    spectrum = path_sum_spectrum(spec)
    floating_total = g.n_floating
    orient = g.orientation
    allowed = {}
    if square:
        for a in set(g.sides.values()):
            for b in set(g.sides.values()):
                allowed[a, b] = type_constraints(classify_sides(a, b), a, spec.rows, spec.cols)
    bounds = [stats_bounds(spec, k) for k in range(spectrum.kmax + 1)]
    part = _SuitePartial()

    for index in range(lo, hi):
        cross = cross_flags(index, n)
        tag = _bits(index, n)
        paths = walk_paths(g, cross)
        part.configs += 1
        lengths = [len(tbus) for _, tbus, _ in paths]
        total = sum(lengths)
        part.sums.add(total)

        if len(paths) != n_paths:
            part.fail("path_count", f"{tag}: {len(paths)} paths")
        endpoints = [nodes[0] for nodes, _, _ in paths] + [nodes[-1] for nodes, _, _ in paths]
        if len(set(endpoints)) != floating_total:
            part.fail("endpoints", f"{tag}: floating nodes not covered exactly once")

        used = set()
        for nodes, tbus, arms in paths:
            used.update(zip(tbus, arms))
            if square:
                start, end = g.sides[nodes[0]], g.sides[nodes[-1]]
                if not allowed[start, end].admits(len(tbus)):
                    kind = classify_sides(start, end).value
                    part.fail("path_type", f"{tag}: type {kind} {start.value}->{end.value} length {len(tbus)}")
                if any(orient[a] == orient[b] for a, b in zip(tbus, tbus[1:])):
                    part.fail("alternation", f"{tag}: consecutive TBUs share an orientation")

        loops = walk_loops(g, cross, used)
        loop_total = sum(len(tbus) for _, tbus in loops)
        if total + loop_total != 2 * n:
            part.fail("edge_cover", f"{tag}: paths {total} + loops {loop_total} != {2 * n}")
        if square:
            for _, tbus in loops:
                if len(tbus) % 4:
                    part.fail("loop_length", f"{tag}: loop of length {len(tbus)}")

        k0 = spectrum.k_of(total)
        if k0 is None:
            part.fail("sum_format", f"{tag}: path sum {total}")
            continue
        b = bounds[k0]
        if max(lengths) > b.max_length:
            part.fail("max_length", f"{tag}: longest {max(lengths)} > {b.max_length}")
        # n*sum(l^2) - S^2 <= n^2 * bound, integers only
        lhs = n_paths * sum(l * l for l in lengths) - total * total
        if lhs > b.variance_bound * n_paths * n_paths:
            part.fail("variance", f"{tag}: variance {lhs}/{n_paths ** 2} above bound {b.variance_bound}")
        if b.mean * n_paths != total:
            part.fail("mean", f"{tag}: mean mismatch")
    return part


# --- driver -----------------------------------------------------------------


def _run(worker, spec: MeshSpec, total: int, jobs: int) -> list:
    if jobs <= 1:
        return [worker(spec, 0, total)]
    ranges = split_range(total, jobs * 4)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(worker, spec, r.start, r.stop) for r in ranges]
        return [f.result() for f in futures]


def _prepare(mesh: MeshGraph | MeshSpec, cap: int, allow_large: bool) -> MeshGraph:
    g = mesh if isinstance(mesh, MeshGraph) else build_mesh(mesh)
    check_cap(g, cap, allow_large)
    return g


@dataclass(frozen=True)
class LengthsResult:
    spec: MeshSpec
    witnesses: dict[int, str]

    @property
    def lengths(self) -> list[int]:
        return sorted(self.witnesses)


@dataclass(frozen=True)
class MaxYResult:
    spec: MeshSpec
    x: int
    y_true: int
    witness: str | None
    y_bound: int


@dataclass(frozen=True)
class SuiteReport:
    spec: MeshSpec
    configs: int
    checks: tuple[str, ...]
    counterexamples: dict[str, list[str]]
    observed_sums: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not any(self.counterexamples.values())


def oracle_realizable_lengths(
    mesh: MeshGraph | MeshSpec, jobs: int = 1, cap: int = DEFAULT_CAP, allow_large: bool = False
) -> LengthsResult:
    """Every path length some configuration realizes, with the first witness bitstring."""
    g = _prepare(mesh, cap, allow_large)
    merged: dict[int, int] = {}
    for part in _run(_lengths_chunk, g.spec, 1 << g.n_tbu, jobs):
        for length, index in part.items():
            if length not in merged or index < merged[length]:
                merged[length] = index
    return LengthsResult(g.spec, {l: _bits(i, g.n_tbu) for l, i in sorted(merged.items())})


def oracle_max_simultaneous_all(
    mesh: MeshGraph | MeshSpec, jobs: int = 1, cap: int = DEFAULT_CAP, allow_large: bool = False
) -> dict[int, MaxYResult]:
    """Largest count of equal-length paths in one configuration, for every length 1..max."""
    g = _prepare(mesh, cap, allow_large)
    merged: dict[int, tuple[int, int]] = {}
    for part in _run(_maxy_chunk, g.spec, 1 << g.n_tbu, jobs):
        for length, (y, index) in part.items():
            cur = merged.get(length)
            if cur is None or y > cur[0] or (y == cur[0] and index < cur[1]):
                merged[length] = (y, index)
    out = {}
    for x in range(1, max_path_length(g.spec) + 1):
        y, index = merged.get(x, (0, None))
        witness = None if index is None else _bits(index, g.n_tbu)
        out[x] = MaxYResult(g.spec, x, y, witness, multi_path_upper_bound(g.spec, x).y_max)
    return out


def oracle_max_simultaneous(
    mesh: MeshGraph | MeshSpec, x: int, jobs: int = 1, cap: int = DEFAULT_CAP, allow_large: bool = False
) -> MaxYResult:
    results = oracle_max_simultaneous_all(mesh, jobs, cap, allow_large)
    if x in results:
        return results[x]
    g = mesh if isinstance(mesh, MeshGraph) else build_mesh(mesh)
    return MaxYResult(g.spec, x, 0, None, multi_path_upper_bound(g.spec, x).y_max)


SUITE_CHECKS = (
    "path_count",
    "endpoints",
    "path_type",
    "alternation",
    "edge_cover",
    "loop_length",
    "sum_format",
    "max_length",
    "variance",
    "mean",
)


def verify_theorem_suite(
    mesh: MeshGraph | MeshSpec, jobs: int = 1, cap: int = DEFAULT_CAP, allow_large: bool = False
) -> SuiteReport:
    """Check every per-configuration invariant over the whole configuration space.

    Path-type and loop checks need side labels and only run on square meshes.
    """
    g = _prepare(mesh, cap, allow_large)
    total = _SuitePartial()
    for part in _run(_suite_chunk, g.spec, 1 << g.n_tbu, jobs):
        total.configs += part.configs
        total.sums |= part.sums
        for check, items in part.failures.items():
            bucket = total.failures.setdefault(check, [])
            bucket.extend(items[: _MAX_COUNTEREXAMPLES - len(bucket)])
    checks = SUITE_CHECKS if g.spec.family is Family.SQUARE else tuple(
        c for c in SUITE_CHECKS if c not in ("path_type", "alternation", "loop_length")
    )
    log.info("theorem suite on %s: %d configurations", g.spec, total.configs)
    return SuiteReport(g.spec, total.configs, checks, total.failures, tuple(sorted(total.sums)))
