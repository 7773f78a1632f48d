"""Brownian-motion realisation of the complex integrals.

Two independent Brownian motions ``B1``, ``B2`` drive everything.  The
single complex basis element is ``e_1 = e1 + i e2`` with step functions
``e1 = 1_[0,1)`` and ``e2 = 1_[1,2)``, so ``U(1) = (e1, -e2)/sqrt2`` and
``V(1) = (e2, e1)/sqrt2`` as elements of H+H.

Iterated Ito integrals are left-point Euler sums over strictly increasing
step indices, accumulated in ascending time order.  Arrays may carry leading
batch dimensions; time is always the last axis.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .chaos import ComplexChaos, CoordinateSample, eval_complex
from .convert import _distinct_perms
from .tensor_core import ComplexKernel, DomainError, RealKernel, _mfact

__all__ = [
    "PathSample", "StepBasis", "simulate_path", "simulate_paths", "coarsen",
    "coordinates_from_path", "coordinate_arrays", "iterated_integral",
    "iterated_real", "verify_I11", "i11_lhs", "i11_rhs", "moment_estimates",
    "convergence_table", "run_report", "BLOCK",
]

log = logging.getLogger(__name__)

BLOCK = 4096  # paths per RNG stream


def _n_steps(total: float, dt: float) -> int:
    n = int(round(total / dt))
    if n <= 0 or abs(n * dt - total) > 1e-9 * max(1.0, total):
        raise DomainError(f"{total} is not an integer multiple of dt={dt}")
    return n


@dataclass(frozen=True)
class PathSample:
    """Increments of (B1, B2) on a uniform grid; arrays shaped (..., n_steps)."""

    dt: float
    horizon: float
    dB1: np.ndarray
    dB2: np.ndarray
    seed: int | None = None

    def __post_init__(self):
        n = _n_steps(self.horizon, self.dt)
        if self.dB1.shape != self.dB2.shape or self.dB1.shape[-1] != n:
            raise DomainError(f"increment arrays must end in {n} steps")

    @property
    def n_steps(self) -> int:
        return self.dB1.shape[-1]

    def driver(self, which: int) -> np.ndarray:
        if which == 1:
            return self.dB1
        if which == 2:
            return self.dB2
        raise DomainError(f"driver must be 1 or 2, got {which}")


@dataclass(frozen=True)
class StepBasis:
    """Indicators e1 = 1_[0,1) and e2 = 1_[1,2) sampled at left grid points."""

    def values(self, which: int, dt: float, n_steps: int) -> np.ndarray:
        if which not in (1, 2):
            raise DomainError(f"basis factor must be 1 or 2, got {which}")
        unit = _n_steps(1.0, dt)
        if n_steps < 2 * unit:
            raise DomainError("horizon must be at least 2")
        out = np.zeros(n_steps)
        out[(which - 1) * unit: which * unit] = 1.0
        return out


STEP_BASIS = StepBasis()


def simulate_path(seed: int, dt: float, horizon: float = 2.0) -> PathSample:
    """One seeded path (the first path of :func:`simulate_paths`)."""
    p = simulate_paths(1, dt, horizon, seed)
    return PathSample(dt, horizon, p.dB1[0], p.dB2[0], seed)


def simulate_paths(n_paths: int, dt: float, horizon: float = 2.0, seed: int = 0,
                   start: int = 0) -> PathSample:
    """Paths ``start .. start+n_paths-1`` of the seeded family.

    Each block of ``BLOCK`` paths has its own spawned stream, so any path is
    the same no matter how many are requested or in what chunks.
    """
    n = _n_steps(horizon, dt)
    sd = math.sqrt(dt)
    first_block, last_block = start // BLOCK, (start + n_paths - 1) // BLOCK
    children = np.random.SeedSequence(seed).spawn(last_block + 1)
    parts1, parts2 = [], []
    for b in range(first_block, last_block + 1):
        rng = np.random.Generator(np.random.PCG64(children[b]))
        z = rng.standard_normal((BLOCK, 2, n))
        lo = max(start - b * BLOCK, 0)
        hi = min(start + n_paths - b * BLOCK, BLOCK)
        parts1.append(z[lo:hi, 0] * sd)
        parts2.append(z[lo:hi, 1] * sd)
    return PathSample(dt, horizon, np.concatenate(parts1), np.concatenate(parts2), seed)


def coarsen(p: PathSample, factor: int) -> PathSample:
    """The same paths on a grid ``factor`` times coarser."""
    shape = p.dB1.shape[:-1] + (p.n_steps // factor, factor)
    if p.n_steps % factor:
        raise DomainError("step count not divisible by factor")
    return PathSample(p.dt * factor, p.horizon,
                      p.dB1.reshape(shape).sum(-1), p.dB2.reshape(shape).sum(-1), p.seed)


def _integral(p: PathSample, factor: int, driver: int) -> np.ndarray:
    e = STEP_BASIS.values(factor, p.dt, p.n_steps)
    return (e * p.driver(driver)).sum(-1)


def coordinate_arrays(p: PathSample) -> Tuple[np.ndarray, np.ndarray]:
    """``x1 = (X(e1) - Y(e2))/sqrt2`` and ``y1 = (X(e2) + Y(e1))/sqrt2`` with X, Y the B1, B2 integrals."""
    if p.horizon < 2:
        raise DomainError("horizon must be at least 2")
    r2 = math.sqrt(2.0)
    x = (_integral(p, 1, 1) - _integral(p, 2, 2)) / r2
    y = (_integral(p, 2, 1) + _integral(p, 1, 2)) / r2
    return x, y


def coordinates_from_path(p: PathSample) -> CoordinateSample:
    """Coordinates of a single path as a float sample for index 1."""
    x, y = coordinate_arrays(p)
    if np.ndim(x):
        raise DomainError("expected a single path")
    return CoordinateSample({1: (float(x), float(y))})


def _iterated(factors: Sequence[np.ndarray]) -> np.ndarray:
    """sum over i1 < ... < in of prod factors[l][i_l]."""
    acc = factors[0]
    for f in factors[1:]:
        before = np.cumsum(acc, axis=-1) - acc  # strictly earlier steps
        acc = f * before
    return acc.sum(-1)


def iterated_integral(p: PathSample, spec: Sequence[Tuple[int, int]]) -> np.ndarray:
    """Euler value of the nested integral of ``prod e^{f_l}(t_l) dB_{d_l}(t_l)`` over t_1 < ... < t_n.

    ``spec`` lists ``(factor, driver)`` pairs, innermost (earliest) first.
    """
    if not spec:
        raise DomainError("spec must be nonempty")
    factors = [STEP_BASIS.values(f, p.dt, p.n_steps) * p.driver(d) for f, d in spec]
    return _iterated(factors)


# Components of U(1), V(1) along (B1, B2), with the 1/sqrt2 removed:
# list of (basis factor, sign) per driver.
_COMPONENTS = {"U": {1: (1, 1), 2: (2, -1)}, "V": {1: (2, 1), 2: (1, 1)}}


def iterated_real(p: PathSample, kernel: RealKernel) -> np.ndarray:
    """I_n(kernel) for index-1 kernels as a sum of Euler iterated integrals.

    ``I_n(symm(w_1 ... w_n)) = sum over distinct orderings and drivers of
    m! * prod(components) * iterated integral``, each label contributing
    1/sqrt2 times its component along the chosen driver.
    """
    total = 0
    for mono, c in kernel.terms.items():
        if any(lab.index != 1 for lab, _ in mono):
            raise DomainError("path realisation covers index 1 only")
        word = [lab for lab, m in mono for _ in range(m)]
        n = len(word)
        weight = _mfact(mono) / math.sqrt(2.0) ** n
        part = 0
        for perm in _distinct_perms(word):
            for drivers in product((1, 2), repeat=n):
                sign = 1
                spec = []
                for lab, d in zip(perm, drivers):
                    f, s = _COMPONENTS[lab.kind][d]
                    sign *= s
                    spec.append((f, d))
                part = part + sign * iterated_integral(p, spec)
        total = total + complex(c) * weight * part
    return total


# The eight signed terms of I_{1,1}(e_1 (x) conj e_1).
I11_TERMS = (
    (+1, [(1, 1), (1, 1)]),
    (+1, [(2, 2), (2, 2)]),
    (-1, [(1, 1), (2, 2)]),
    (-1, [(2, 2), (1, 1)]),
    (+1, [(1, 2), (1, 2)]),
    (+1, [(2, 1), (2, 1)]),
    (+1, [(1, 2), (2, 1)]),
    (+1, [(2, 1), (1, 2)]),
)


def i11_lhs(p: PathSample) -> np.ndarray:
    """Sum of the eight signed Euler iterated integrals."""
    return sum(s * iterated_integral(p, spec) for s, spec in I11_TERMS)


def i11_rhs(p: PathSample) -> np.ndarray:
    """|x1 + i y1|^2 - 2 at the path coordinates (vectorised)."""
    x, y = coordinate_arrays(p)
    return x * x + y * y - 2.0


def verify_I11(p: PathSample) -> Tuple[complex, complex]:
    """(lhs, rhs) for one path: iterated-integral value and J_{1,1} at the coordinates."""
    if p.horizon < 2:
        raise DomainError("horizon must be at least 2")
    lhs = complex(i11_lhs(p))
    f = ComplexChaos.of(ComplexKernel.elementary([1], [1]))
    rhs = complex(eval_complex(f, coordinates_from_path(p)))
    return lhs, rhs


# ---------------------------------------------------------------------------
# reports

def _mean_se(chunks: List[np.ndarray], n: int) -> Tuple[float, float]:
    mean = math.fsum(float(np.sum(c)) for c in chunks) / n
    # second pass for the variance keeps the summation order fixed
    ss = math.fsum(float(np.sum((c - mean) ** 2)) for c in chunks)
    return mean, math.sqrt(ss / (n - 1) / n)


def moment_estimates(n_paths: int, dt: float, seed: int, horizon: float = 2.0,
                     chunk: int = 8 * BLOCK) -> Dict[str, Tuple[float, float]]:
    """Means and standard errors of I_11 and |I_11|^2 by both routes."""
    vals: Dict[str, List[np.ndarray]] = {"lhs": [], "lhs_sq": [], "rhs": [], "rhs_sq": []}
    for start in range(0, n_paths, chunk):
        m = min(chunk, n_paths - start)
        p = simulate_paths(m, dt, horizon, seed, start=start)
        lhs, rhs = i11_lhs(p), i11_rhs(p)
        vals["lhs"].append(lhs)
        vals["lhs_sq"].append(lhs * lhs)
        vals["rhs"].append(rhs)
        vals["rhs_sq"].append(rhs * rhs)
    return {k: _mean_se(v, n_paths) for k, v in vals.items()}


def convergence_table(n_paths: int, seed: int, fine_dt: float = 2.5e-3, factor: int = 4,
                      horizon: float = 2.0) -> List[Dict[str, float]]:
    """Median |lhs - rhs| on matched paths at ``fine_dt * factor`` and ``fine_dt``."""
    fine = simulate_paths(n_paths, fine_dt, horizon, seed)
    rows = []
    for p in (coarsen(fine, factor), fine):
        diff = np.abs(i11_lhs(p) - i11_rhs(p))
        rows.append({"dt": p.dt, "median_abs_diff": float(np.median(diff))})
    return rows


def run_report(dt: float = 1e-2, horizon: float = 2.0, paths: int = 200_000, seed: int = 0,
               conv_paths: int = 1000) -> Dict:
    """JSON-ready simulation report."""
    log.info("simulating %d paths at dt=%g", paths, dt)
    est = moment_estimates(paths, dt, seed, horizon)
    table = convergence_table(conv_paths, seed, horizon=horizon)
    return {
        "estimates": {
            "mean_I11": est["lhs"][0], "mean_I11_sq": est["lhs_sq"][0],
            "mean_J11_at_coordinates": est["rhs"][0], "mean_J11_sq_at_coordinates": est["rhs_sq"][0],
        },
        "standard_errors": {
            "mean_I11": est["lhs"][1], "mean_I11_sq": est["lhs_sq"][1],
            "mean_J11_at_coordinates": est["rhs"][1], "mean_J11_sq_at_coordinates": est["rhs_sq"][1],
        },
        "targets": {"mean_I11": 0.0, "mean_I11_sq": 4.0},
        "convergence_table": table,
        "params": {"dt": dt, "horizon": horizon, "paths": paths, "seed": seed},
    }
