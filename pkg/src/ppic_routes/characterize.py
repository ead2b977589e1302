"""Port measurements and the inverse estimators for TBU loss and length.

With every TBU crossed, each path collects ``alpha * exp(-j w n_eff L / c)``
once per traversal, and the traversals of all paths add up to the path sum.
Pooling the logs of all measured ratios therefore gives the geometric mean
loss, and pooling their phases gives the arithmetic mean length, up to the
usual ``2 pi`` ambiguity. Individual per-TBU values are not identifiable.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import sympy

from .config import Configuration, all_cross
from .errors import EmptyMeasurements, InconsistentK, NoCandidateInWindow, NoInteriorTbu, OutOfRange
from .mesh import MeshGraph, MeshSpec, build_mesh
from .response import SPEED_OF_LIGHT, bar_parity
from .theory import path_sum_spectrum
from .tracer import trace


@dataclass(frozen=True)
class ProcessVariation:
    """Per-TBU loss factors and lengths (meters), in canonical TBU order."""

    alpha: tuple[float, ...]
    length: tuple[float, ...]
    noise: float = 0.0

    def __post_init__(self):
        if len(self.alpha) != len(self.length):
            raise OutOfRange("alpha and length maps must cover the same TBUs")
        if any(not 0 < a <= 1 for a in self.alpha):
            raise OutOfRange("every alpha must lie in (0, 1]")
        if any(not l > 0 for l in self.length):
            raise OutOfRange("every TBU length must be positive")
        if self.noise < 0:
            raise OutOfRange("noise level must be non-negative")

    @classmethod
    def uniform(cls, mesh: MeshGraph, alpha: float, length: float, noise: float = 0.0) -> ProcessVariation:
        return cls((alpha,) * mesh.n_tbu, (length,) * mesh.n_tbu, noise)

    @classmethod
    def random(
        cls,
        mesh: MeshGraph,
        rng: np.random.Generator,
        alpha_range: tuple[float, float] = (0.98, 1.0),
        length_range: tuple[float, float] = (99e-6, 101e-6),
        noise: float = 0.0,
    ) -> ProcessVariation:
        alpha = rng.uniform(*alpha_range, mesh.n_tbu)
        length = rng.uniform(*length_range, mesh.n_tbu)
        return cls(tuple(float(a) for a in alpha), tuple(float(l) for l in length), noise)


@dataclass(frozen=True)
class Measurement:
    """Complex output/input ratio of one undirected path."""

    start: str
    end: str
    r: complex
    length: int | None = None
    q: int | None = None


@dataclass(frozen=True)
class MeasurementSet:
    measurements: tuple[Measurement, ...]
    spec: MeshSpec | None = None
    config: str | None = None

    def __len__(self) -> int:
        return len(self.measurements)

    @property
    def ratios(self) -> np.ndarray:
        return np.array([m.r for m in self.measurements], dtype=complex)


@dataclass(frozen=True)
class AmbiguityDemo:
    """Two loss maps that no measurement of ``config`` can tell apart."""

    config: Configuration
    b: float
    alpha_a: tuple[float, ...]
    alpha_b: tuple[float, ...]
    exponents: tuple[int, ...]
    max_deviation: float
    measurements_a: MeasurementSet = field(repr=False)
    measurements_b: MeasurementSet = field(repr=False)


def _mesh(mesh: MeshGraph | MeshSpec) -> MeshGraph:
    return mesh if isinstance(mesh, MeshGraph) else build_mesh(mesh)


def simulate_measurements(
    mesh: MeshGraph | MeshSpec,
    config: Configuration,
    variation: ProcessVariation,
    n_eff: float,
    omega: float,
    rng: np.random.Generator | None = None,
    c: float = SPEED_OF_LIGHT,
) -> MeasurementSet:
    """Ratio per traced path, composed TBU by TBU, with optional multiplicative noise."""
    g = _mesh(mesh)
    if len(variation.alpha) != g.n_tbu:
        raise OutOfRange(f"variation covers {len(variation.alpha)} TBUs, mesh has {g.n_tbu}")
    if variation.noise and rng is None:
        rng = np.random.default_rng(0)
    unit = [a * np.exp(-1j * omega * n_eff * l / c) for a, l in zip(variation.alpha, variation.length)]
    out = []
    for path in trace(g, config).paths:
        q = bar_parity(path, config)
        r = complex((-1) ** q * np.prod([unit[t] for t in path.tbus]))
        if variation.noise:
            r *= 1 + variation.noise * complex(rng.standard_normal(), rng.standard_normal())
        out.append(Measurement(str(path.start), str(path.end), r, path.length, q))
    return MeasurementSet(tuple(out), g.spec, config.to_bits())


def _denominator(ms: MeasurementSet, g: MeshGraph, k0: int) -> int:
    """Path sum for ``k0``, checked against every length source available."""
    if not len(ms):
        raise EmptyMeasurements("no measurements given")
    spectrum = path_sum_spectrum(g.spec)
    if not 0 <= k0 <= spectrum.kmax:
        raise InconsistentK(f"k0 must lie in [0, {spectrum.kmax}], got {k0}")
    expected = spectrum.base + spectrum.step * k0
    if len(ms) != spectrum.base:
        raise InconsistentK(f"{len(ms)} measurements, but the mesh has {spectrum.base} paths")
    if ms.config is not None:
        traced = sum(p.length for p in trace(g, [b == "1" for b in ms.config]).paths)
        if traced != expected:
            raise InconsistentK(f"configuration has path sum {traced}, k0={k0} implies {expected}")
    lengths = [m.length for m in ms.measurements]
    if all(l is not None for l in lengths) and sum(lengths) != expected:
        raise InconsistentK(f"measured paths sum to {sum(lengths)}, k0={k0} implies {expected}")
    return expected


def estimate_alpha(ms: MeasurementSet, mesh: MeshGraph | MeshSpec, k0: int) -> float:
    """Geometric-mean loss factor from the pooled magnitudes."""
    g = _mesh(mesh)
    total = _denominator(ms, g, k0)
    return math.exp(float(np.sum(np.log(np.abs(ms.ratios)))) / total)


def length_period(mesh: MeshGraph | MeshSpec, n_eff: float, omega: float, k0: int, c: float = SPEED_OF_LIGHT) -> float:
    """Spacing between consecutive length candidates."""
    spectrum = path_sum_spectrum(_mesh(mesh).spec)
    total = spectrum.base + spectrum.step * k0
    return 2 * math.pi * c / (total * omega * n_eff)


def estimate_length(
    ms: MeasurementSet,
    mesh: MeshGraph | MeshSpec,
    n_eff: float,
    omega: float,
    k0: int,
    window: tuple[float, float],
    c: float = SPEED_OF_LIGHT,
) -> list[float]:
    """Every mean-length candidate in ``window`` consistent with the pooled phase.

    Each candidate differs by a whole number of ``2 pi`` in the phase sum.
    The bar sign is removed when a measurement records its parity.
    """
    g = _mesh(mesh)
    total = _denominator(ms, g, k0)
    phase_sum = 0.0
    for m in ms.measurements:
        phase_sum += math.atan2(m.r.imag, m.r.real)
        if m.q:
            phase_sum += math.pi
    scale = c / (total * omega * n_eff)
    lo, hi = window
    d_lo = math.ceil((lo / scale + phase_sum) / (2 * math.pi))
    d_hi = math.floor((hi / scale + phase_sum) / (2 * math.pi))
    out = [(-phase_sum + 2 * d * math.pi) * scale for d in range(d_lo, d_hi + 1)]
    out = [x for x in out if lo <= x <= hi]
    if not out:
        raise NoCandidateInWindow(f"no length candidate in [{lo}, {hi}]")
    return out


def traversal_weighted_means(mesh: MeshGraph | MeshSpec, config: Configuration, variation: ProcessVariation) -> tuple[float, float]:
    """(geometric mean alpha, arithmetic mean L) over all path traversals."""
    g = _mesh(mesh)
    tbus = [t for p in trace(g, config).paths for t in p.tbus]
    log_alpha = sum(math.log(variation.alpha[t]) for t in tbus) / len(tbus)
    mean_length = sum(variation.length[t] for t in tbus) / len(tbus)
    return math.exp(log_alpha), mean_length


def _null_exponents(matrix: list[list[int]]) -> tuple[int, ...] | None:
    basis = sympy.Matrix(matrix).nullspace()
    if not basis:
        return None
    v = basis[0]
    scale = sympy.ilcm(*[sympy.fraction(x)[1] for x in v])
    ints = [int(x * scale) for x in v]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints)


def demonstrate_alpha_ambiguity(
    mesh: MeshGraph | MeshSpec,
    b: float = 1.01,
    base_alpha: float = 0.99,
    length: float = 100e-6,
    n_eff: float = 2.35,
    wavelength: float = 1550e-9,
) -> AmbiguityDemo:
    """Rescale interior TBU losses by ``b`` and ``1/b`` so every all-cross measurement is unchanged.

    The exponents come from an integer null vector of the path-by-TBU
    traversal matrix restricted to non-peripheral TBUs.
    """
    g = _mesh(mesh)
    interior = [t for t in range(g.n_tbu) if not g.is_peripheral(t)]
    if not interior:
        raise NoInteriorTbu(f"{g.spec} has no non-peripheral TBU")
    config = all_cross(g)
    paths = trace(g, config).paths
    matrix = [[p.tbus.count(t) for t in interior] for p in paths]
    sub = _null_exponents(matrix)
    exponents = [0] * g.n_tbu
    if sub is not None:
        for t, e in zip(interior, sub):
            exponents[t] = e
    else:
        full = _null_exponents([[p.tbus.count(t) for t in range(g.n_tbu)] for p in paths])
        if full is None:
            raise NoInteriorTbu(f"all-cross measurements on {g.spec} determine every TBU loss")
        exponents = list(full)
    alpha_a = tuple(base_alpha for _ in range(g.n_tbu))
    alpha_b = tuple(a * b**e for a, e in zip(alpha_a, exponents))
    lengths = (length,) * g.n_tbu
    omega = 2 * math.pi * SPEED_OF_LIGHT / wavelength
    ms_a = simulate_measurements(g, config, ProcessVariation(alpha_a, lengths), n_eff, omega)
    ms_b = simulate_measurements(g, config, ProcessVariation(alpha_b, lengths), n_eff, omega)
    deviation = float(np.max(np.abs(ms_a.ratios - ms_b.ratios)))
    return AmbiguityDemo(config, b, alpha_a, alpha_b, tuple(exponents), deviation, ms_a, ms_b)


# --- import / export --------------------------------------------------------

CSV_COLUMNS = ("start", "end", "re", "im", "length", "q")


def measurements_to_csv(ms: MeasurementSet) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for m in ms.measurements:
        writer.writerow([m.start, m.end, repr(m.r.real), repr(m.r.imag),
                         "" if m.length is None else m.length, "" if m.q is None else m.q])
    return buf.getvalue()


def measurements_to_json(ms: MeasurementSet) -> dict:
    return {
        "mesh": None if ms.spec is None else str(ms.spec),
        "config": ms.config,
        "measurements": [
            {"start": m.start, "end": m.end, "re": m.r.real, "im": m.r.imag, "length": m.length, "q": m.q}
            for m in ms.measurements
        ],
    }


def _opt_int(value) -> int | None:
    return None if value in (None, "") else int(value)


def _row(d: dict) -> Measurement:
    return Measurement(str(d["start"]), str(d["end"]), complex(float(d["re"]), float(d["im"])),
                       _opt_int(d.get("length")), _opt_int(d.get("q")))


def load_measurements(path: str | Path, spec: MeshSpec | None = None, config: str | None = None) -> MeasurementSet:
    """Read a CSV (columns start,end,re,im[,length,q]) or a JSON measurement file."""
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        data = json.loads(text)
        rows = tuple(_row(d) for d in data["measurements"])
        spec = spec or (MeshSpec.parse(data["mesh"]) if data.get("mesh") else None)
        return MeasurementSet(rows, spec, config or data.get("config"))
    rows = tuple(_row(d) for d in csv.DictReader(io.StringIO(text)))
    return MeasurementSet(rows, spec, config)
