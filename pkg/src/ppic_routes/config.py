"""Bar/cross state assignments and their enumeration.

Bitstrings are MSB-first in canonical TBU order (row bands top to bottom,
horizontal TBUs before vertical ones, left to right): character ``t`` is the
state of TBU ``t``, ``'0'`` = bar, ``'1'`` = cross. The integer index of a
configuration is that bitstring read as a binary number, so enumeration in
index order is also lexicographic bitstring order.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .errors import LengthMismatch, TooLarge
from .mesh import MeshGraph, MeshSpec, TbuId, build_mesh

DEFAULT_CAP = 24


class TbuState(str, Enum):
    BAR = "bar"
    CROSS = "cross"


@dataclass(frozen=True)
class Configuration:
    spec: MeshSpec
    cross: tuple[bool, ...]

    @property
    def mesh(self) -> MeshGraph:
        return build_mesh(self.spec)

    def __len__(self) -> int:
        return len(self.cross)

    def state(self, tbu: TbuId | int) -> TbuState:
        t = tbu if isinstance(tbu, int) else self.mesh.index_of(tbu)
        return TbuState.CROSS if self.cross[t] else TbuState.BAR

    def to_bits(self) -> str:
        return "".join("1" if c else "0" for c in self.cross)

    @property
    def index(self) -> int:
        return int(self.to_bits(), 2) if self.cross else 0

    def cross_tbus(self) -> list[TbuId]:
        tbus = self.mesh.tbus
        return [tbus[t] for t, c in enumerate(self.cross) if c]

    def with_states(self, changes: dict[TbuId, TbuState]) -> Configuration:
        cross = list(self.cross)
        for tbu, state in changes.items():
            cross[self.mesh.index_of(tbu)] = TbuState(state) is TbuState.CROSS
        return Configuration(self.spec, tuple(cross))

    def __str__(self) -> str:
        return self.to_bits()


def _as_mesh(mesh: MeshGraph | MeshSpec) -> MeshGraph:
    return mesh if isinstance(mesh, MeshGraph) else build_mesh(mesh)


def uniform(mesh: MeshGraph | MeshSpec, state: TbuState) -> Configuration:
    g = _as_mesh(mesh)
    return Configuration(g.spec, (TbuState(state) is TbuState.CROSS,) * g.n_tbu)


def all_bar(mesh: MeshGraph | MeshSpec) -> Configuration:
    return uniform(mesh, TbuState.BAR)


def all_cross(mesh: MeshGraph | MeshSpec) -> Configuration:
    return uniform(mesh, TbuState.CROSS)


def from_cross_set(mesh: MeshGraph | MeshSpec, crossed: Iterable[TbuId]) -> Configuration:
    """Everything bar except the named TBUs."""
    g = _as_mesh(mesh)
    cross = [False] * g.n_tbu
    for tbu in crossed:
        cross[g.index_of(tbu)] = True
    return Configuration(g.spec, tuple(cross))


def from_bits(mesh: MeshGraph | MeshSpec, bits: str) -> Configuration:
    g = _as_mesh(mesh)
    bits = bits.strip()
    if len(bits) != g.n_tbu:
        raise LengthMismatch(f"{g.spec} has {g.n_tbu} TBUs, got a {len(bits)}-bit string")
    if set(bits) - {"0", "1"}:
        raise LengthMismatch(f"bitstring may only contain 0 and 1: {bits!r}")
    return Configuration(g.spec, tuple(b == "1" for b in bits))


def to_bits(config: Configuration) -> str:
    return config.to_bits()


def cross_flags(index: int, n_tbu: int) -> tuple[bool, ...]:
    """Per-TBU cross flags of configuration ``index`` (MSB = TBU 0)."""
    return tuple(bool((index >> (n_tbu - 1 - t)) & 1) for t in range(n_tbu))


def from_index(mesh: MeshGraph | MeshSpec, index: int) -> Configuration:
    g = _as_mesh(mesh)
    if not 0 <= index < 1 << g.n_tbu:
        raise LengthMismatch(f"index {index} out of range for {g.n_tbu} TBUs")
    return Configuration(g.spec, cross_flags(index, g.n_tbu))


def check_cap(mesh: MeshGraph, cap: int = DEFAULT_CAP, allow_large: bool = False) -> None:
    if mesh.n_tbu > cap and not allow_large:
        raise TooLarge(
            f"{mesh.spec} has {mesh.n_tbu} TBUs (2^{mesh.n_tbu} configurations); "
            f"cap is {cap} bits, pass allow_large to override"
        )


def split_range(total: int, parts: int) -> list[range]:
    """Split ``range(total)`` into ``parts`` contiguous, disjoint, near-equal ranges."""
    parts = max(1, min(parts, total)) if total else 1
    step, extra = divmod(total, parts)
    out, lo = [], 0
    for k in range(parts):
        hi = lo + step + (1 if k < extra else 0)
        out.append(range(lo, hi))
        lo = hi
    return out


def enumerate_configurations(
    mesh: MeshGraph | MeshSpec,
    indices: range | None = None,
    cap: int = DEFAULT_CAP,
    allow_large: bool = False,
) -> Iterator[Configuration]:
    """Yield configurations in index order, optionally restricted to a sub-range."""
    g = _as_mesh(mesh)
    check_cap(g, cap, allow_large)
    n = g.n_tbu
    for index in indices if indices is not None else range(1 << n):
        yield Configuration(g.spec, cross_flags(index, n))
