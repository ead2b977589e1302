"""Necessary-condition screening of a wanted multiset of path lengths.

Given lengths ``lam`` to route simultaneously on an N x M square mesh, every
closed-form bound gives a cheap way to rule sizes out. Passing all of them
does not prove a configuration exists; the report says so.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .errors import EmptyFrontier, InvalidSpec, NoSizeWithinCap
from .mesh import Family, MeshSpec
from .theory import max_path_length, path_count, single_path_realizable

DEFAULT_SIZE_CAP = 64


class Verdict(str, Enum):
    FAILS_NECESSARY = "FailsNecessary"
    PASSES_NECESSARY = "PassesNecessary"


@dataclass(frozen=True)
class Violation:
    name: str
    basis: str
    detail: str


@dataclass(frozen=True)
class FeasibilityReport:
    rows: int
    cols: int
    lengths: tuple[int, ...]
    verdict: Verdict
    violations: tuple[Violation, ...]
    notes: tuple[str, ...] = field(default=())

    @property
    def passes(self) -> bool:
        return self.verdict is Verdict.PASSES_NECESSARY

    def violated(self) -> list[str]:
        return [v.name for v in self.violations]


@dataclass(frozen=True)
class SquareSize:
    size: int
    report: FeasibilityReport
    binding: tuple[Violation, ...]


def _lengths(lam: Sequence[int]) -> tuple[int, ...]:
    out = tuple(int(x) for x in lam)
    if not out:
        raise InvalidSpec("the length multiset must not be empty")
    if any(x < 1 for x in out):
        raise InvalidSpec(f"path lengths must be positive, got {sorted(out)}")
    return out


def check_feasibility(n_rows: int, n_cols: int, lam: Sequence[int]) -> FeasibilityReport:
    """Evaluate every implemented necessary condition and list all violations."""
    lam = _lengths(lam)
    spec = MeshSpec(Family.SQUARE, n_rows, n_cols)
    n, m = n_rows, n_cols
    top = max_path_length(spec)
    paths = path_count(spec)
    capacity = paths + 4 * n * m
    total = sum(lam)
    counts = Counter(lam)
    bad: list[Violation] = []
    notes: list[str] = []

    longest = max(lam)
    if longest > top:
        bad.append(Violation("max_length", "longest single path is 4NM+1",
                             f"{longest} > 4NM+1 = {top}"))
    if total > capacity:
        bad.append(Violation("path_sum", "path lengths sum to at most 2N+2M+4NM",
                             f"sum {total} > {capacity}"))
    if len(lam) > paths:
        bad.append(Violation("path_count", "a mesh carries 2N+2M undirected paths",
                             f"{len(lam)} lengths > {paths} paths"))
    for x in sorted(counts):
        if x <= top and not single_path_realizable(spec, x).realizable:
            reason = single_path_realizable(spec, x).reason
            bad.append(Violation("single_path_residue", "single-path realizable set", f"x={x}: {reason}"))
    for x in sorted(counts):
        if x > 1 and x <= top:
            cap = (top - 1) // (x - 1)
            if counts[x] > cap:
                bad.append(Violation("multi_path_floor", "equal-length paths share 4NM non-floating nodes",
                                     f"{counts[x]} paths of length {x} > floor(4NM/(x-1)) = {cap}"))
    for x in sorted(k for k in counts if k % 2 == 0):
        if min(n, m) >= 2 * x:
            if counts[x] > 4:
                bad.append(Violation("even_length_corner", "at most four equal even-length paths",
                                     f"{counts[x]} paths of even length {x} > 4"))
        elif counts[x] > 4:
            notes.append(f"even-length cap skipped for x={x}: needs min(N,M) >= {2 * x}")
    if len(lam) == paths:
        rem = (total - paths) % 4
        if rem or not 0 <= (total - paths) // 4 <= n * m:
            mean = total / len(lam)
            bad.append(Violation("mean_format", "with all 2N+2M paths the mean is 1+2k/(N+M)",
                                 f"mean {mean:g} is not 1+2k/{n + m} for integer 0 <= k <= {n * m}"))

    factor = math.gcd(*lam)
    if factor > 1:
        scaled = [x // factor for x in lam]
        notes.append(
            f"all lengths share factor {factor}: the response equals that of {scaled} with "
            f"TBU length x{factor} and loss ^{factor}, but routing {scaled} is a different synthesis problem"
        )
    verdict = Verdict.FAILS_NECESSARY if bad else Verdict.PASSES_NECESSARY
    return FeasibilityReport(n, m, lam, verdict, tuple(bad), tuple(notes))


def minimal_square_size(lam: Sequence[int], cap: int = DEFAULT_SIZE_CAP) -> SquareSize:
    """Smallest x with x-by-x passing, and what rules out x-1."""
    lam = _lengths(lam)
    for x in range(1, cap + 1):
        report = check_feasibility(x, x, lam)
        if report.passes:
            binding = () if x == 1 else check_feasibility(x - 1, x - 1, lam).violations
            return SquareSize(x, report, binding)
    raise NoSizeWithinCap(f"no square mesh up to {cap}x{cap} passes the necessary conditions for {list(lam)}")


def minimal_sizes(lam: Sequence[int], n_max: int = DEFAULT_SIZE_CAP, m_max: int = DEFAULT_SIZE_CAP) -> list[tuple[int, int]]:
    """Pareto-minimal (N, M) pairs that pass, ordered by N."""
    lam = _lengths(lam)
    if n_max < 1 or m_max < 1:
        raise InvalidSpec("size caps must be at least 1")
    frontier = []
    best = m_max + 1
    for n in range(1, n_max + 1):
        for m in range(1, min(best, m_max + 1)):
            if check_feasibility(n, m, lam).passes:
                frontier.append((n, m))
                best = m
                break
    if not frontier:
        raise EmptyFrontier(f"no mesh up to {n_max}x{m_max} passes the necessary conditions for {list(lam)}")
    return frontier
