"""Declarative distribution specs and deterministic sampling of matching instances.

An instance is a pair of point clouds (X, Y) in R^d linked by a hidden uniform
permutation: ``Y[i] = X[pistar[i]] + sigma * Zt[i]`` where the rows of X follow
a position law and the unscaled directions Zt follow a noise law.  Everything
is a pure function of (spec, seed), so instances can be regenerated bit-exactly
and trials can be distributed without coordination.
"""

from __future__ import annotations

import json
import math
import struct
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "NormKind",
    "PositionFamily",
    "PositionSpec",
    "NoiseFamily",
    "NoiseBase",
    "NoiseSpec",
    "Permutation",
    "Instance",
    "derive_seed",
    "rng_from_seed",
    "sample_positions",
    "sample_noise_direction",
    "sample_instance",
    "evaluate_density",
    "instance_to_json",
    "instance_from_json",
    "write_instance_binary",
    "read_instance_binary",
]

_MASK64 = (1 << 64) - 1
_GAMMA64 = 0x9E3779B97F4A7C15


def _avalanche64(z: int) -> int:
    # splitmix64 finalizer
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, *indices: int) -> int:
    """Derive an independent 64-bit stream seed from a master seed.

    Each index level folds into the state through a splitmix-style avalanche,
    so (master, i) and (master, j) give unrelated streams for i != j and
    nested derivations like (master, grid_index, trial_index) stay distinct.
    """
    state = master & _MASK64
    for k in indices:
        if k < 0:
            raise ValueError("seed indices must be nonnegative")
        state = _avalanche64((state + _GAMMA64 * ((k & _MASK64) + 1)) & _MASK64)
    return state


def rng_from_seed(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed & _MASK64))


class NormKind(str, Enum):
    """Vector norm selector used by the geometric graph constructions."""

    L1 = "l1"
    L2 = "l2"
    LINF = "linf"

    def of(self, diffs: np.ndarray) -> np.ndarray:
        """Norms of the rows of ``diffs`` (a 1-d vector is a single row)."""
        d = np.atleast_2d(diffs)
        if self is NormKind.L1:
            out = np.abs(d).sum(axis=1)
        elif self is NormKind.L2:
            out = np.sqrt((d * d).sum(axis=1))
        else:
            out = np.abs(d).max(axis=1)
        return out if diffs.ndim > 1 else out[0]


class PositionFamily(str, Enum):
    ISOTROPIC_GAUSSIAN = "gaussian"
    DIAGONAL_GAUSSIAN = "diagonal-gaussian"
    UNIFORM_CUBE = "uniform-cube"
    STANDARD_LAPLACE = "laplace"


@dataclass(frozen=True)
class PositionSpec:
    """Position law for the initial points X_1..X_n.

    All supported families have a density, exposed by :func:`evaluate_density`.
    ``variances`` is the diagonal of the covariance for the diagonal-Gaussian
    family; ``half_width`` is the cube half-width for the uniform family.
    """

    family: PositionFamily
    dimension: int
    variances: tuple[float, ...] | None = None
    half_width: float | None = None

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if self.family is PositionFamily.DIAGONAL_GAUSSIAN:
            if self.variances is None or len(self.variances) != self.dimension:
                raise ValueError("diagonal-gaussian needs one variance per coordinate")
            if any(v <= 0 for v in self.variances):
                raise ValueError("variances must be strictly positive")
        elif self.variances is not None:
            raise ValueError("variances only apply to the diagonal-gaussian family")
        if self.family is PositionFamily.UNIFORM_CUBE:
            if self.half_width is None or self.half_width <= 0:
                raise ValueError("uniform-cube needs half_width > 0")
        elif self.half_width is not None:
            raise ValueError("half_width only applies to the uniform-cube family")

    @classmethod
    def gaussian(cls, dimension: int) -> "PositionSpec":
        return cls(PositionFamily.ISOTROPIC_GAUSSIAN, dimension)

    @classmethod
    def diagonal_gaussian(cls, variances) -> "PositionSpec":
        variances = tuple(float(v) for v in variances)
        return cls(PositionFamily.DIAGONAL_GAUSSIAN, len(variances), variances=variances)

    @classmethod
    def uniform_cube(cls, dimension: int, half_width: float = 1.0) -> "PositionSpec":
        return cls(PositionFamily.UNIFORM_CUBE, dimension, half_width=float(half_width))

    @classmethod
    def laplace(cls, dimension: int) -> "PositionSpec":
        return cls(PositionFamily.STANDARD_LAPLACE, dimension)

    def label(self) -> str:
        if self.family is PositionFamily.DIAGONAL_GAUSSIAN:
            return "diagonal-gaussian"
        if self.family is PositionFamily.UNIFORM_CUBE:
            return f"uniform-cube({self.half_width:g})"
        return self.family.value

    def to_dict(self) -> dict:
        out: dict = {"family": self.family.value, "dimension": self.dimension}
        if self.variances is not None:
            out["variances"] = list(self.variances)
        if self.half_width is not None:
            out["half_width"] = self.half_width
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "PositionSpec":
        return cls(
            PositionFamily(data["family"]),
            int(data["dimension"]),
            variances=tuple(data["variances"]) if "variances" in data else None,
            half_width=data.get("half_width"),
        )


class NoiseFamily(str, Enum):
    ISOTROPIC_GAUSSIAN = "gaussian"
    SPHERE_UNIFORM = "sphere"
    UNIFORM_CUBE = "uniform"
    RADEMACHER = "rademacher"
    DIAGONAL_SUBGAUSSIAN = "diagonal"


class NoiseBase(str, Enum):
    """Coordinate law for the diagonal sub-Gaussian family, unit variance each."""

    GAUSSIAN = "gaussian"
    RADEMACHER = "rademacher"
    UNIFORM = "uniform"


#: Cube half-width giving unit per-coordinate variance: Var(U[-h, h]) = h^2 / 3.
UNIT_VARIANCE_HALF_WIDTH = math.sqrt(3.0)


@dataclass(frozen=True)
class NoiseSpec:
    """Noise law: direction Zt drawn from the family, then scaled by ``sigma``.

    Unit-variance convention: each coordinate of the unscaled direction has
    variance 1 for the Gaussian, uniform-cube (half-width sqrt(3)) and
    Rademacher families.  The sphere family is the documented exception with
    per-coordinate variance 1/d (the direction has Euclidean norm exactly 1).
    The diagonal family draws unit-variance base coordinates and rescales them
    by per-coordinate standard deviations; zero variances are accepted there so
    degenerate noiseless coordinates can be modelled in recovery sweeps.
    """

    family: NoiseFamily
    dimension: int
    sigma: float
    variances: tuple[float, ...] | None = None
    base: NoiseBase = NoiseBase.GAUSSIAN

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if self.sigma < 0:
            raise ValueError("sigma must be >= 0")
        if self.family is NoiseFamily.DIAGONAL_SUBGAUSSIAN:
            if self.variances is None or len(self.variances) != self.dimension:
                raise ValueError("diagonal noise needs one variance per coordinate")
            if any(v < 0 for v in self.variances):
                raise ValueError("variances must be nonnegative")
        elif self.variances is not None:
            raise ValueError("variances only apply to the diagonal family")

    @classmethod
    def gaussian(cls, dimension: int, sigma: float) -> "NoiseSpec":
        return cls(NoiseFamily.ISOTROPIC_GAUSSIAN, dimension, float(sigma))

    @classmethod
    def sphere(cls, dimension: int, sigma: float) -> "NoiseSpec":
        return cls(NoiseFamily.SPHERE_UNIFORM, dimension, float(sigma))

    @classmethod
    def uniform(cls, dimension: int, sigma: float) -> "NoiseSpec":
        return cls(NoiseFamily.UNIFORM_CUBE, dimension, float(sigma))

    @classmethod
    def rademacher(cls, dimension: int, sigma: float) -> "NoiseSpec":
        return cls(NoiseFamily.RADEMACHER, dimension, float(sigma))

    @classmethod
    def diagonal_subgaussian(
        cls, variances, base: NoiseBase = NoiseBase.GAUSSIAN, sigma: float = 1.0
    ) -> "NoiseSpec":
        variances = tuple(float(v) for v in variances)
        return cls(
            NoiseFamily.DIAGONAL_SUBGAUSSIAN,
            len(variances),
            float(sigma),
            variances=variances,
            base=base,
        )

    def label(self) -> str:
        if self.family is NoiseFamily.DIAGONAL_SUBGAUSSIAN:
            return f"diagonal({self.base.value})"
        return self.family.value

    def with_sigma(self, sigma: float) -> "NoiseSpec":
        return NoiseSpec(self.family, self.dimension, float(sigma), self.variances, self.base)

    def to_dict(self) -> dict:
        out: dict = {
            "family": self.family.value,
            "dimension": self.dimension,
            "sigma": self.sigma,
        }
        if self.variances is not None:
            out["variances"] = list(self.variances)
            out["base"] = self.base.value
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "NoiseSpec":
        return cls(
            NoiseFamily(data["family"]),
            int(data["dimension"]),
            float(data["sigma"]),
            variances=tuple(data["variances"]) if "variances" in data else None,
            base=NoiseBase(data.get("base", "gaussian")),
        )


@dataclass(frozen=True, eq=False)
class Permutation:
    """A bijection on {0, ..., n-1} in one-line notation.

    Stored 0-based; :meth:`one_based` gives the human-facing form.
    """

    mapping: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.mapping, dtype=np.int64)
        n = arr.shape[0]
        if arr.ndim != 1 or n == 0:
            raise ValueError("permutation must be a nonempty 1-d array")
        if not np.array_equal(np.sort(arr), np.arange(n)):
            raise ValueError("mapping is not a bijection on 0..n-1")
        arr.flags.writeable = False
        object.__setattr__(self, "mapping", arr)

    @property
    def n(self) -> int:
        return int(self.mapping.shape[0])

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n, dtype=np.int64))

    @classmethod
    def from_one_based(cls, values) -> "Permutation":
        return cls(np.asarray(values, dtype=np.int64) - 1)

    def one_based(self) -> np.ndarray:
        return self.mapping + 1

    def __call__(self, j: int) -> int:
        return int(self.mapping[j])

    def inverse(self) -> "Permutation":
        inv = np.empty(self.n, dtype=np.int64)
        inv[self.mapping] = np.arange(self.n, dtype=np.int64)
        return Permutation(inv)

    def compose(self, other: "Permutation") -> "Permutation":
        """Return self after other: j -> self(other(j))."""
        if other.n != self.n:
            raise ValueError("size mismatch")
        return Permutation(self.mapping[other.mapping])

    def cycles(self, nontrivial_only: bool = True) -> list[tuple[int, ...]]:
        """Cycle decomposition; each cycle starts at its smallest element."""
        seen = np.zeros(self.n, dtype=bool)
        out: list[tuple[int, ...]] = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = int(self.mapping[start])
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = int(self.mapping[j])
            if len(cyc) > 1 or not nontrivial_only:
                out.append(tuple(cyc))
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and np.array_equal(self.mapping, other.mapping)

    def __hash__(self) -> int:
        return hash(self.mapping.tobytes())


@dataclass(frozen=True, eq=False)
class Instance:
    """One sampled problem: positions X, observations Y, hidden truth pistar."""

    n: int
    d: int
    x: np.ndarray
    y: np.ndarray
    pistar: Permutation
    position_spec: PositionSpec
    noise_spec: NoiseSpec
    seed: int

    def noise_rows(self) -> np.ndarray:
        """Recover the realized noise: row i is Y[i] - X[pistar[i]]."""
        return self.y - self.x[self.pistar.mapping]


def sample_positions(spec: PositionSpec, count: int, seed: int) -> np.ndarray:
    """Draw ``count`` i.i.d. rows from the position law. Deterministic in seed."""
    rng = rng_from_seed(seed)
    d = spec.dimension
    if spec.family is PositionFamily.ISOTROPIC_GAUSSIAN:
        return rng.standard_normal((count, d))
    if spec.family is PositionFamily.DIAGONAL_GAUSSIAN:
        scale = np.sqrt(np.asarray(spec.variances, dtype=float))
        return rng.standard_normal((count, d)) * scale
    if spec.family is PositionFamily.UNIFORM_CUBE:
        h = spec.half_width
        return rng.uniform(-h, h, size=(count, d))
    return rng.laplace(0.0, 1.0, size=(count, d))


def _sample_base(rng: np.random.Generator, base: NoiseBase, count: int, d: int) -> np.ndarray:
    if base is NoiseBase.GAUSSIAN:
        return rng.standard_normal((count, d))
    if base is NoiseBase.RADEMACHER:
        return rng.integers(0, 2, size=(count, d)).astype(np.float64) * 2.0 - 1.0
    h = UNIT_VARIANCE_HALF_WIDTH
    return rng.uniform(-h, h, size=(count, d))


def sample_noise_direction(spec: NoiseSpec, count: int, seed: int) -> np.ndarray:
    """Draw ``count`` i.i.d. unscaled directions Zt (sigma is not applied)."""
    if count < 0:
        raise ValueError("count must be >= 0")
    rng = rng_from_seed(seed)
    d = spec.dimension
    if spec.family is NoiseFamily.ISOTROPIC_GAUSSIAN:
        return rng.standard_normal((count, d))
    if spec.family is NoiseFamily.SPHERE_UNIFORM:
        g = rng.standard_normal((count, d))
        norms = np.linalg.norm(g, axis=1)
        # a zero draw has probability zero but would poison the normalization
        while np.any(norms < 1e-12):
            bad = norms < 1e-12
            g[bad] = rng.standard_normal((int(bad.sum()), d))
            norms = np.linalg.norm(g, axis=1)
        return g / norms[:, None]
    if spec.family is NoiseFamily.UNIFORM_CUBE:
        h = UNIT_VARIANCE_HALF_WIDTH
        return rng.uniform(-h, h, size=(count, d))
    if spec.family is NoiseFamily.RADEMACHER:
        return rng.integers(0, 2, size=(count, d)).astype(np.float64) * 2.0 - 1.0
    scale = np.sqrt(np.asarray(spec.variances, dtype=float))
    return _sample_base(rng, spec.base, count, d) * scale


def sample_instance(
    position_spec: PositionSpec, noise_spec: NoiseSpec, n: int, seed: int
) -> Instance:
    """Sample a full instance: X i.i.d. positions, pistar uniform, Y permuted + noise.

    The three ingredients use sub-streams derived from ``seed`` so that the
    draw is deterministic and components can be regenerated independently.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if position_spec.dimension != noise_spec.dimension:
        raise ValueError(
            f"dimension mismatch: positions d={position_spec.dimension}, "
            f"noise d={noise_spec.dimension}"
        )
    x = sample_positions(position_spec, n, derive_seed(seed, 0))
    zt = sample_noise_direction(noise_spec, n, derive_seed(seed, 1))
    rng = rng_from_seed(derive_seed(seed, 2))
    pistar = Permutation(rng.permutation(n).astype(np.int64))
    y = x[pistar.mapping] + noise_spec.sigma * zt
    x.flags.writeable = False
    y.flags.writeable = False
    return Instance(
        n=n,
        d=position_spec.dimension,
        x=x,
        y=y,
        pistar=pistar,
        position_spec=position_spec,
        noise_spec=noise_spec,
        seed=seed,
    )


def evaluate_density(spec: PositionSpec, x) -> float:
    """Density of the position law at point x (every supported family has one)."""
    v = np.asarray(x, dtype=float).reshape(-1)
    if v.shape[0] != spec.dimension:
        raise ValueError("point dimension does not match the spec")
    d = spec.dimension
    if spec.family is PositionFamily.ISOTROPIC_GAUSSIAN:
        return float((2.0 * math.pi) ** (-d / 2.0) * math.exp(-0.5 * float(v @ v)))
    if spec.family is PositionFamily.DIAGONAL_GAUSSIAN:
        var = np.asarray(spec.variances, dtype=float)
        quad = float(np.sum(v * v / var))
        norm = (2.0 * math.pi) ** (-d / 2.0) / math.sqrt(float(np.prod(var)))
        return float(norm * math.exp(-0.5 * quad))
    if spec.family is PositionFamily.UNIFORM_CUBE:
        h = spec.half_width
        return float((2.0 * h) ** (-d)) if np.all(np.abs(v) <= h) else 0.0
    return float(2.0 ** (-d) * math.exp(-float(np.abs(v).sum())))


def density_at_rows(spec: PositionSpec, points: np.ndarray) -> np.ndarray:
    """Vectorized :func:`evaluate_density` over the rows of ``points``."""
    pts = np.asarray(points, dtype=float)
    d = spec.dimension
    if spec.family is PositionFamily.ISOTROPIC_GAUSSIAN:
        return (2.0 * math.pi) ** (-d / 2.0) * np.exp(-0.5 * (pts * pts).sum(axis=1))
    if spec.family is PositionFamily.DIAGONAL_GAUSSIAN:
        var = np.asarray(spec.variances, dtype=float)
        norm = (2.0 * math.pi) ** (-d / 2.0) / math.sqrt(float(np.prod(var)))
        return norm * np.exp(-0.5 * (pts * pts / var).sum(axis=1))
    if spec.family is PositionFamily.UNIFORM_CUBE:
        h = spec.half_width
        inside = np.all(np.abs(pts) <= h, axis=1)
        return inside * (2.0 * h) ** (-d)
    return 2.0 ** (-d) * np.exp(-np.abs(pts).sum(axis=1))


# -- serialization ------------------------------------------------------------

_BINARY_MAGIC = b"PMLB"


def instance_to_json(instance: Instance) -> str:
    """Compact JSON carrying specs and seed only; matrices are regenerated."""
    doc = {
        "format": "pmlab-instance",
        "n": instance.n,
        "position": instance.position_spec.to_dict(),
        "noise": instance.noise_spec.to_dict(),
        "seed": instance.seed,
    }
    return json.dumps(doc, sort_keys=True)


def instance_from_json(text: str) -> Instance:
    doc = json.loads(text)
    if doc.get("format") != "pmlab-instance":
        raise ValueError("not a pmlab instance document")
    return sample_instance(
        PositionSpec.from_dict(doc["position"]),
        NoiseSpec.from_dict(doc["noise"]),
        int(doc["n"]),
        int(doc["seed"]),
    )


def write_instance_binary(instance: Instance, path) -> None:
    """Flat little-endian dump: magic, n and d as u64, X then Y rows as f64,
    then pistar as u64.  Row-major, one row per point."""
    with open(path, "wb") as fh:
        fh.write(_BINARY_MAGIC)
        fh.write(struct.pack("<QQ", instance.n, instance.d))
        fh.write(np.ascontiguousarray(instance.x, dtype="<f8").tobytes())
        fh.write(np.ascontiguousarray(instance.y, dtype="<f8").tobytes())
        fh.write(instance.pistar.mapping.astype("<u8").tobytes())


def read_instance_binary(path) -> tuple[np.ndarray, np.ndarray, Permutation]:
    """Read back (X, Y, pistar) from the flat binary format."""
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _BINARY_MAGIC:
            raise ValueError("bad magic; not a pmlab binary instance")
        n, d = struct.unpack("<QQ", fh.read(16))
        x = np.frombuffer(fh.read(8 * n * d), dtype="<f8").reshape(n, d).copy()
        y = np.frombuffer(fh.read(8 * n * d), dtype="<f8").reshape(n, d).copy()
        perm = np.frombuffer(fh.read(8 * n), dtype="<u8").astype(np.int64)
    return x, y, Permutation(perm)
