"""Exact simulation of the [0,1]-valued mixing variable.

The sampler draws d-1 iid uniforms, appends 1 as the top order statistic,
and walks a Bernoulli counting chain: B_1 = 1 and, given the running count
N_{j-1}, the j-th step succeeds with probability theta * N_{j-1} / (j-1).
The chain's final count selects which order statistic to return, and the
returned value has exactly the level-d beta-mixture law; truncating the
chain at step k yields the level-k law instead.  The atom at 1 is produced
exactly whenever the count reaches d.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .common import ParameterError, validate_count, validate_dimension, validate_power
from .rng import RngStream, run_chunked

__all__ = ["VpSample", "VpBatch", "sample_vp", "sample_vp_level", "sample_vp_batch"]


@dataclass(frozen=True)
class VpSample:
    """One draw of the mixing variable; ``is_atom`` iff the chain hit level d."""

    value: float
    is_atom: bool

    def __post_init__(self):
        if self.is_atom and self.value != 1.0:
            raise ValueError("atomic draws must carry the exact value 1.0")


@dataclass(frozen=True)
class VpBatch:
    """A batch of mixing-variable draws stored columnwise."""

    values: np.ndarray
    is_atom: np.ndarray

    def __len__(self) -> int:
        return self.values.shape[0]

    def __iter__(self):
        for v, a in zip(self.values, self.is_atom):
            yield VpSample(float(v), bool(a))

    @property
    def atom_frequency(self) -> float:
        return float(self.is_atom.mean())


def _uniform_open(gen: np.random.Generator, shape) -> np.ndarray:
    """Uniforms on (0, 1): numpy draws on [0, 1); redraw the measure-zero zeros."""
    u = gen.random(shape)
    while True:
        zeros = u == 0.0
        if not zeros.any():
            return u
        u[zeros] = gen.random(int(zeros.sum()))


def _chain_counts(theta: float, size: int, level: int, gen: np.random.Generator) -> np.ndarray:
    """Run the Bernoulli counting chain to step ``level`` for ``size`` samples."""
    counts = np.ones(size, dtype=np.int64)
    for j in range(2, level + 1):
        prob = theta * counts / (j - 1)
        # chain validity: counts <= j-1, so 0 <= prob <= theta <= 1
        if prob.max(initial=0.0) > 1.0:
            raise AssertionError("counting-chain probability left [0, 1]")
        counts += gen.random(size) < prob
    return counts


def _vp_values(d: int, theta: float, size: int, gen: np.random.Generator,
               level: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized core: returns (values, is_atom) for ``size`` draws."""
    level = d if level is None else level
    w = _uniform_open(gen, (size, d - 1))
    w.sort(axis=1)
    counts = _chain_counts(theta, size, level, gen)
    is_atom = counts == d
    idx = np.minimum(counts, d - 1) - 1
    values = np.where(is_atom, 1.0, w[np.arange(size), idx])
    return values, is_atom


def sample_vp(d: int, p: float, rng: RngStream) -> VpSample:
    """Draw one mixing variable for dimension ``d`` and exponent ``p``.

    The output is 1.0 exactly with probability p**-(d-1) and otherwise
    follows the continuous part of the level-d beta mixture.
    """
    d = validate_dimension(d)
    theta = validate_power(p)
    values, is_atom = _vp_values(d, theta, 1, rng.generator)
    return VpSample(float(values[0]), bool(is_atom[0]))


def sample_vp_level(d: int, p: float, k: int, rng: RngStream) -> float:
    """Draw from the level-``k`` truncation of the chain (law F at level k)."""
    d = validate_dimension(d)
    theta = validate_power(p)
    if isinstance(k, bool) or int(k) != k or not 1 <= int(k) <= d:
        raise ParameterError(f"level k must be an integer in [1, {d}], got {k!r}")
    values, _ = _vp_values(d, theta, 1, rng.generator, level=int(k))
    return float(values[0])


def sample_vp_batch(d: int, p: float, n: int, rng: RngStream, threads: int = 1) -> VpBatch:
    """Draw ``n`` independent mixing variables.

    The batch is split into fixed-size chunks, one derived child stream per
    chunk, so the output is bit-identical for any ``threads`` value and
    reproducible from ``(seed, stream)`` alone.
    """
    d = validate_dimension(d)
    theta = validate_power(p)
    n = validate_count(n)

    def worker(size: int, stream: RngStream):
        return _vp_values(d, theta, size, stream.generator)

    values, is_atom = run_chunked(n, rng, worker, threads=threads)
    return VpBatch(values=values, is_atom=is_atom)
