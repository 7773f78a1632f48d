"""Seeded random kernels and rational coordinate samples for property checks."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable

from .chaos import ComplexChaos, CoordinateSample, RealChaos
from .scalar import Scalar
from .tensor_core import ComplexKernel, RealKernel, U, V, monomial

__all__ = [
    "random_scalar", "random_real_kernel", "random_complex_kernel",
    "random_real_chaos", "random_complex_chaos", "random_sample", "random_float_sample",
]


def random_scalar(rng: random.Random, max_den: int = 8, bound: int = 4) -> Scalar:
    def part():
        den = rng.randint(1, max_den)
        return Fraction(rng.randint(-bound * den, bound * den), den)
    return Scalar(part(), part())


def random_real_kernel(rng: random.Random, degree: int, max_index: int = 3,
                       n_terms: int = 3) -> RealKernel:
    labels = [lab for k in range(1, max_index + 1) for lab in (U(k), V(k))]
    terms = {}
    for _ in range(n_terms):
        mono = monomial([rng.choice(labels) for _ in range(degree)])
        terms[mono] = random_scalar(rng)
    return RealKernel(degree, terms)


def random_complex_kernel(rng: random.Random, p: int, q: int, max_index: int = 3,
                          n_terms: int = 3) -> ComplexKernel:
    terms = {}
    for _ in range(n_terms):
        holo = tuple(sorted(rng.randint(1, max_index) for _ in range(p)))
        anti = tuple(sorted(rng.randint(1, max_index) for _ in range(q)))
        terms[(holo, anti)] = random_scalar(rng)
    return ComplexKernel((p, q), terms)


def random_real_chaos(rng: random.Random, max_degree: int = 3, max_index: int = 3) -> RealChaos:
    return RealChaos([random_real_kernel(rng, n, max_index, rng.randint(1, 3))
                      for n in range(max_degree + 1) if rng.random() < 0.7])


def random_complex_chaos(rng: random.Random, max_degree: int = 3, max_index: int = 3) -> ComplexChaos:
    out = []
    for p in range(max_degree + 1):
        for q in range(max_degree + 1 - p):
            if rng.random() < 0.4:
                out.append(random_complex_kernel(rng, p, q, max_index, rng.randint(1, 3)))
    return ComplexChaos(out)


def random_sample(rng: random.Random, indices: Iterable[int], max_den: int = 64,
                  bound: int = 3) -> CoordinateSample:
    """Rational coordinates with denominators at most ``max_den``."""
    def coord():
        den = rng.randint(1, max_den)
        return Fraction(rng.randint(-bound * den, bound * den), den)
    return CoordinateSample({k: (coord(), coord()) for k in indices})


def random_float_sample(rng: random.Random, indices: Iterable[int]) -> CoordinateSample:
    return CoordinateSample({k: (rng.gauss(0, 1), rng.gauss(0, 1)) for k in indices})
