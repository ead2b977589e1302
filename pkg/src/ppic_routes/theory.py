"""Closed-form realizability predicates and bounds.

No graph is built here. Everything is exact integer or ``Fraction``
arithmetic so equality checks against traced data never depend on rounding.

Square meshes are the only family with residue structure: lengths that are
3 mod 4 need an odd dimension and sit in a window set by that dimension.
Hexagonal and triangular meshes realize every length up to their maximum.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import OutOfRange, UnsupportedFamily
from .mesh import Family, MeshSpec, Side


class PathType(str, Enum):
    SAME = "S"
    ADJACENT = "A"
    OPPOSITE = "O"


@dataclass(frozen=True)
class LengthWindow:
    """Integers in ``[lo, hi]`` whose residue mod 4 is in ``residues``."""

    name: str
    residues: frozenset[int]
    lo: int
    hi: int

    def __contains__(self, x: int) -> bool:
        return self.lo <= x <= self.hi and x % 4 in self.residues

    def members(self) -> list[int]:
        return [x for x in range(max(self.lo, 1), self.hi + 1) if x % 4 in self.residues]

    def describe(self) -> str:
        res = ",".join(str(r) for r in sorted(self.residues))
        return f"{{x ≡ {res} (mod 4), {self.lo} ≤ x ≤ {self.hi}}}"


@dataclass(frozen=True)
class RealizabilitySets:
    """The three windows a square mesh draws single-path lengths from.

    ``core`` covers residues 0, 1, 2. ``odd_cols`` holds the residue-3
    lengths of left-to-right paths and only applies when M is odd;
    ``odd_rows`` is the top-to-bottom analogue for odd N.
    """

    core: LengthWindow
    odd_cols: LengthWindow
    odd_rows: LengthWindow
    cols_active: bool
    rows_active: bool

    def active(self) -> list[LengthWindow]:
        out = [self.core]
        if self.cols_active:
            out.append(self.odd_cols)
        if self.rows_active:
            out.append(self.odd_rows)
        return out


@dataclass(frozen=True)
class Realizability:
    x: int
    realizable: bool
    window: str | None
    reason: str


@dataclass(frozen=True)
class TypeConstraint:
    residues: frozenset[int]
    min_length: int
    max_length: int

    def admits(self, length: int) -> bool:
        return self.min_length <= length <= self.max_length and length % 4 in self.residues


@dataclass(frozen=True)
class SumSpectrum:
    """Path sums are ``base + step * k`` for ``0 <= k <= kmax``."""

    base: int
    step: int
    kmax: int

    def values(self) -> list[int]:
        return [self.base + self.step * k for k in range(self.kmax + 1)]

    def k_of(self, total: int) -> int | None:
        k, rem = divmod(total - self.base, self.step)
        return k if rem == 0 and 0 <= k <= self.kmax else None


@dataclass(frozen=True)
class StatsBounds:
    mean: Fraction
    max_length: int
    variance_bound: Fraction


@dataclass(frozen=True)
class MultiPathBound:
    """Upper bound on how many paths of one length fit simultaneously.

    ``None`` stands for an inactive (infinite) component. ``blocked`` is set
    when a residue-3 length is not realizable at all, which forces zero.
    ``even_cap_unproven`` flags even lengths on meshes with a side shorter
    than ``2x``. The cap of four is only argued for when both sides are at
    least ``2x``; exhaustive search on 3x3 finds five paths of length 8.
    """

    x: int
    floor_component: int | None
    count_component: int
    even_cap: int | None
    residue_block: int | None
    y_max: int
    active: tuple[str, ...]
    blocked: bool
    even_cap_unproven: bool

    def components(self) -> dict[str, int | None]:
        return {
            "floor_component": self.floor_component,
            "count_component": self.count_component,
            "C1": self.even_cap,
            "C2": self.residue_block,
        }


def max_path_length(spec: MeshSpec) -> int:
    n, m = spec.rows, spec.cols
    per_cell = {Family.SQUARE: 4, Family.HEX: 6, Family.TRI: 3}[spec.family]
    return per_cell * n * m + 1


def path_count(spec: MeshSpec) -> int:
    n, m = spec.rows, spec.cols
    if spec.family is Family.SQUARE:
        return 2 * n + 2 * m
    if spec.family is Family.HEX:
        return 4 * n + 4 * m - 2
    return 2 * n + m


def tbu_count(spec: MeshSpec) -> int:
    n, m = spec.rows, spec.cols
    if spec.family is Family.SQUARE:
        return n * (m + 1) + m * (n + 1)
    if spec.family is Family.HEX:
        return (4 * n + 4 * m - 2) + (3 * n * m - 2 * n - 2 * m + 1)
    return (2 * n + m) + ((3 * n - 1) * m // 2 - n)


def node_counts(spec: MeshSpec) -> tuple[int, int]:
    """(floating, non-floating) node counts."""
    n, m = spec.rows, spec.cols
    if spec.family is Family.SQUARE:
        return 4 * n + 4 * m, 4 * n * m
    if spec.family is Family.HEX:
        return 8 * n + 8 * m - 4, 6 * n * m
    return 4 * n + 2 * m, 3 * n * m


def realizability_sets(spec: MeshSpec) -> RealizabilitySets:
    _require_square(spec)
    n, m = spec.rows, spec.cols
    top = 4 * n * m + 1
    return RealizabilitySets(
        core=LengthWindow("core", frozenset({0, 1, 2}), 1, top),
        odd_cols=LengthWindow("odd_cols", frozenset({3}), 2 * m + 1, top - 2 * m),
        odd_rows=LengthWindow("odd_rows", frozenset({3}), 2 * n + 1, top - 2 * n),
        cols_active=m % 2 == 1,
        rows_active=n % 2 == 1,
    )


def single_path_realizable(spec: MeshSpec, x: int) -> Realizability:
    """Whether some configuration routes a single path of length ``x``."""
    top = max_path_length(spec)
    if x < 1:
        return Realizability(x, False, None, "path lengths start at 1")
    if x > top:
        return Realizability(x, False, None, f"x > maximum path length {top}")
    if spec.family is not Family.SQUARE:
        return Realizability(x, True, "range", f"1 ≤ x ≤ {top}")

    sets = realizability_sets(spec)
    for window in sets.active():
        if x in window:
            return Realizability(x, True, window.name, f"x in {window.name} {window.describe()}")
    n, m = spec.rows, spec.cols
    if n % 2 == 0 and m % 2 == 0:
        reason = "x ≡ 3 (mod 4) and both N and M are even"
    else:
        parts = [
            f"{w.name} {w.describe()}" for w in (sets.odd_cols, sets.odd_rows)
            if (w is sets.odd_cols and sets.cols_active) or (w is sets.odd_rows and sets.rows_active)
        ]
        reason = "x ≡ 3 (mod 4) and x not in " + " or ".join(parts)
    return Realizability(x, False, None, reason)


def realizable_lengths(spec: MeshSpec) -> list[int]:
    return [x for x in range(1, max_path_length(spec) + 1) if single_path_realizable(spec, x).realizable]


def type_constraints(kind: PathType, start_side: Side, n_rows: int, n_cols: int) -> TypeConstraint:
    """Residues and length range for a square-mesh path of ``kind`` starting on ``start_side``."""
    kind, start_side = PathType(kind), Side(start_side)
    area = 4 * n_rows * n_cols
    if kind is PathType.SAME:
        return TypeConstraint(frozenset({1}), 1, area + 1)
    if kind is PathType.ADJACENT:
        return TypeConstraint(frozenset({0, 2}), 2, area)
    span = n_cols if start_side.axis == "lr" else n_rows
    residue = 3 if span % 2 else 1
    return TypeConstraint(frozenset({residue}), 2 * span + 1, area - 2 * span + 1)


def classify_sides(start: Side, end: Side) -> PathType:
    if start is end:
        return PathType.SAME
    if start.axis == end.axis:
        return PathType.OPPOSITE
    return PathType.ADJACENT


def path_sum_spectrum(spec: MeshSpec) -> SumSpectrum:
    n, m = spec.rows, spec.cols
    step = {Family.SQUARE: 4, Family.HEX: 6, Family.TRI: 3}[spec.family]
    return SumSpectrum(path_count(spec), step, n * m)


def stats_bounds(spec: MeshSpec, k0: int) -> StatsBounds:
    """Mean, longest path and variance bound once ``k0`` cells are consumed.

    The variance bound is ``(mean - 1) * (longest - mean)``, the largest
    variance any multiset in ``[1, longest]`` with that mean can have.
    """
    spectrum = path_sum_spectrum(spec)
    if not 0 <= k0 <= spectrum.kmax:
        raise OutOfRange(f"k0 must lie in [0, {spectrum.kmax}], got {k0}")
    paths = spectrum.base
    mean = 1 + Fraction(spectrum.step * k0, paths)
    longest = spectrum.step * k0 + 1
    return StatsBounds(mean, longest, (mean - 1) * (longest - mean))


def multi_path_upper_bound(spec: MeshSpec, x: int) -> MultiPathBound:
    """Bound on the number of simultaneous paths that all have length ``x``."""
    if x < 1:
        raise OutOfRange(f"x must be at least 1, got {x}")
    n, m = spec.rows, spec.cols
    cells_area = max_path_length(spec) - 1
    floor_c = None if x == 1 else cells_area // (x - 1)
    count_c = path_count(spec)

    even_cap = residue_block = None
    blocked = unproven = False
    if spec.family is Family.SQUARE:
        if x % 2 == 0:
            even_cap = 4
            unproven = min(n, m) < 2 * x
        if x % 4 == 3 and not single_path_realizable(spec, x).realizable:
            residue_block = 0
            blocked = True

    comps = {"floor_component": floor_c, "count_component": count_c, "C1": even_cap, "C2": residue_block}
    finite = {k: v for k, v in comps.items() if v is not None}
    y_max = min(finite.values())
    active = tuple(k for k, v in finite.items() if v == y_max)
    return MultiPathBound(x, floor_c, count_c, even_cap, residue_block, y_max, active, blocked, unproven)


def _require_square(spec: MeshSpec) -> None:
    if spec.family is not Family.SQUARE:
        raise UnsupportedFamily(f"only defined for square meshes, got {spec.family.value}")
