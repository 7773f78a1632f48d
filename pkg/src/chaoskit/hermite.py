"""Real Hermite polynomials H_n and complex Hermite polynomials J_{p,q}.

H_n are the probabilists' polynomials (generating function exp(tx - t^2/2)).
J_{p,q}(z) has generating function exp(l*conj(z) + conj(l)*z - 2|l|^2) and is
evaluated through its finite expansion in products H_j(x) H_{p+q-j}(y).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import List, Tuple

import numpy as np

from .scalar import Scalar, as_scalar, ipow

__all__ = [
    "hermite", "hermite_values", "complex_hermite", "real_pair_to_J_coeffs",
    "complex_to_real_coeffs", "hermite_np",
]


def _unit(x: Scalar) -> Scalar:
    return x * 0 + 1


def hermite_values(n: int, x) -> List[Scalar]:
    """[H_0(x), ..., H_n(x)] by the three-term recurrence."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    x = as_scalar(x)
    out = [_unit(x)]
    if n >= 1:
        out.append(x)
    for k in range(1, n):
        out.append(x * out[k] - out[k - 1] * k)
    return out


def hermite(n: int, x) -> Scalar:
    """H_n(x)."""
    return hermite_values(n, x)[n]


def hermite_np(n: int, x: np.ndarray) -> np.ndarray:
    """Vectorised float H_n over an array."""
    x = np.asarray(x, dtype=float)
    h0, h1 = np.ones_like(x), x
    if n == 0:
        return h0
    for k in range(1, n):
        h0, h1 = h1, x * h1 - k * h0
    return h1


@lru_cache(maxsize=None)
def complex_to_real_coeffs(p: int, q: int) -> Tuple[Scalar, ...]:
    """Coefficients a_j with J_{p,q}(x+iy) = sum_j a_j H_j(x) H_{p+q-j}(y).

    a_j = i^{p+q-j} sum_{r+s=j} C(p,r) C(q,s) (-1)^{q-s}.
    """
    n = p + q
    out = []
    for j in range(n + 1):
        total = 0
        for r in range(max(0, j - q), min(p, j) + 1):
            s = j - r
            total += comb(p, r) * comb(q, s) * (-1) ** (q - s)
        out.append(ipow(n - j) * total)
    return tuple(out)


def complex_hermite(p: int, q: int, z) -> Scalar:
    """J_{p,q}(z)."""
    if p < 0 or q < 0:
        raise ValueError("degrees must be nonnegative")
    z = as_scalar(z)
    n = p + q
    hx = hermite_values(n, z.real())
    hy = hermite_values(n, z.imag())
    total = hx[0] * 0
    for j, a in enumerate(complex_to_real_coeffs(p, q)):
        if not a.is_zero():
            total = total + _cast(a, z) * hx[j] * hy[n - j]
    return total


def _cast(c: Scalar, like: Scalar) -> Scalar:
    return c if like.exact else c.to_float()


@lru_cache(maxsize=None)
def real_pair_to_J_coeffs(m: int, n: int) -> Tuple[Tuple[int, Scalar], ...]:
    """Pairs (j, c_j) with H_m(x) H_n(y) = sum_j c_j J_{j, m+n-j}(x+iy).

    c_j = i^n / 2^{m+n} * sum_{r+s=j} C(m,r) C(n,s) (-1)^s.
    """
    if m < 0 or n < 0:
        raise ValueError("degrees must be nonnegative")
    out = []
    for j in range(m + n + 1):
        total = 0
        for r in range(max(0, j - n), min(m, j) + 1):
            s = j - r
            total += comb(m, r) * comb(n, s) * (-1) ** s
        out.append((j, ipow(n).scale(Fraction(total, 2 ** (m + n)))))
    return tuple(out)
