"""Finite chaos expansions: evaluation, products, derivatives, kernel extraction.

A :class:`RealChaos` is ``sum_n I_n(f_n)`` with complex-coefficient kernels
(so it represents ``I_n(g1) + i I_n(g2)``).  A :class:`ComplexChaos` is
``sum_{p,q} I_{p,q}(f_{p,q})``.  Both are evaluated at a
:class:`CoordinateSample`, which assigns ``(x_k, y_k)`` to each index ``k``;
under the Gaussian model ``x_k = W(U(k))``, ``y_k = W(V(k))`` and
``Z(e_k) = x_k + i y_k``.

Derivatives are directional.  ``derivative_real`` along ``U(k)``/``V(k)`` is
the partial derivative in ``x_k``/``y_k``.  ``derivative_complex`` along
``('holo', k)`` is the Wirtinger derivative in ``z_k`` and along
``('anti', k)`` the one in ``conj(z_k)``; hence

    D_{U(k)} = D_holo,k + D_anti,k,    D_{V(k)} = i (D_holo,k - D_anti,k).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, Mapping, Tuple

import numpy as np

from .hermite import complex_hermite, complex_to_real_coeffs, hermite_np, hermite_values
from .scalar import ModeError, Scalar, as_scalar
from .tensor_core import (
    ComplexKernel, DomainError, Label, RealKernel,
    contract_complex, contract_real, conjugate, _mfact,
)

__all__ = [
    "RealChaos", "ComplexChaos", "CoordinateSample",
    "eval_real", "eval_complex", "eval_real_np", "eval_complex_np",
    "multiply_real", "multiply_complex", "derivative_real", "derivative_complex",
    "stroock_real", "stroock_complex", "expectation",
]


class CoordinateSample:
    """Values ``(x_k, y_k)`` for finitely many indices ``k``."""

    __slots__ = ("values",)

    def __init__(self, values: Mapping[int, Tuple[object, object]]):
        vals = {}
        for k, (x, y) in values.items():
            x, y = as_scalar(x), as_scalar(y)
            if not (x.im == 0 and y.im == 0):
                raise DomainError("coordinates must be real")
            vals[int(k)] = (x, y)
        if len({x.exact for xy in vals.values() for x in xy}) > 1:
            raise ModeError("sample mixes exact and float coordinates")
        self.values = vals

    @property
    def exact(self) -> bool:
        return all(x.exact for xy in self.values.values() for x in xy)

    def z(self, k: int) -> Scalar:
        x, y = self._get(k)
        return x + y * Scalar(0, 1 if self.exact else 1.0)

    def _get(self, k):
        try:
            return self.values[k]
        except KeyError:
            raise DomainError(f"sample has no coordinate for index {k}") from None

    def __repr__(self):
        return f"CoordinateSample({self.values})"


def _coef_for(c: Scalar, exact_sample: bool) -> Scalar:
    if exact_sample:
        if not c.exact:
            raise ModeError("float kernel evaluated at an exact sample")
        return c
    return c.to_float()


def _zero_like(exact: bool) -> Scalar:
    return Scalar(0, 0) if exact else Scalar(0.0, 0.0)


class RealChaos:
    """``sum_n I_n(f_n)``; slots keyed by degree."""

    __slots__ = ("slots",)

    def __init__(self, kernels: Iterable[RealKernel] | Mapping[int, RealKernel] = ()):
        slots: Dict[int, RealKernel] = {}
        items = kernels.items() if isinstance(kernels, Mapping) else ((k.degree, k) for k in kernels)
        for n, k in items:
            if k.degree != n:
                raise DomainError(f"slot {n} holds a degree-{k.degree} kernel")
            slots[n] = slots[n] + k if n in slots else k
        self.slots = {n: k for n, k in sorted(slots.items()) if not k.is_zero()}

    @classmethod
    def of(cls, kernel: RealKernel) -> "RealChaos":
        return cls([kernel])

    @classmethod
    def constant(cls, c) -> "RealChaos":
        return cls([RealKernel.constant(c)])

    def kernel(self, n: int) -> RealKernel:
        return self.slots.get(n, RealKernel.zero(n))

    def __add__(self, other):
        if not isinstance(other, RealChaos):
            return NotImplemented
        return RealChaos(list(self.slots.values()) + list(other.slots.values()))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RealChaos([-k for k in self.slots.values()])

    def __mul__(self, s):
        if isinstance(s, RealChaos):
            return multiply_real(self, s)
        return RealChaos([k * s for k in self.slots.values()])

    def __rmul__(self, s):
        return RealChaos([k * s for k in self.slots.values()])

    def conj(self) -> "RealChaos":
        return RealChaos([k.conj() for k in self.slots.values()])

    def is_zero(self) -> bool:
        return not self.slots

    def __eq__(self, other):
        return isinstance(other, RealChaos) and self.slots == other.slots

    def __repr__(self):
        return f"RealChaos({list(self.slots.values())})"


class ComplexChaos:
    """``sum_{p,q} I_{p,q}(f_{p,q})``; slots keyed by bidegree."""

    __slots__ = ("slots",)

    def __init__(self, kernels: Iterable[ComplexKernel] | Mapping = ()):
        slots: Dict[Tuple[int, int], ComplexKernel] = {}
        items = kernels.items() if isinstance(kernels, Mapping) else ((k.bidegree, k) for k in kernels)
        for pq, k in items:
            pq = tuple(pq)
            if k.bidegree != pq:
                raise DomainError(f"slot {pq} holds a bidegree-{k.bidegree} kernel")
            slots[pq] = slots[pq] + k if pq in slots else k
        self.slots = {pq: k for pq, k in sorted(slots.items()) if not k.is_zero()}

    @classmethod
    def of(cls, kernel: ComplexKernel) -> "ComplexChaos":
        return cls([kernel])

    @classmethod
    def constant(cls, c) -> "ComplexChaos":
        return cls([ComplexKernel((0, 0), {((), ()): c})])

    def kernel(self, p: int, q: int) -> ComplexKernel:
        return self.slots.get((p, q), ComplexKernel.zero(p, q))

    def __add__(self, other):
        if not isinstance(other, ComplexChaos):
            return NotImplemented
        return ComplexChaos(list(self.slots.values()) + list(other.slots.values()))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ComplexChaos([-k for k in self.slots.values()])

    def __mul__(self, s):
        if isinstance(s, ComplexChaos):
            return multiply_complex(self, s)
        return ComplexChaos([k * s for k in self.slots.values()])

    def __rmul__(self, s):
        return ComplexChaos([k * s for k in self.slots.values()])

    def conj(self) -> "ComplexChaos":
        """Complex conjugate of the random variable."""
        return ComplexChaos([conjugate(k) for k in self.slots.values()])

    def is_zero(self) -> bool:
        return not self.slots

    def __eq__(self, other):
        return isinstance(other, ComplexChaos) and self.slots == other.slots

    def __repr__(self):
        return f"ComplexChaos({list(self.slots.values())})"


# ---------------------------------------------------------------------------
# evaluation

def eval_real(c: RealChaos, s: CoordinateSample) -> Scalar:
    """Value of ``c`` at ``s``: each monomial maps to prod H_{m_U(k)}(x_k) H_{m_V(k)}(y_k)."""
    exact = s.exact
    need: Dict[Label, int] = {}
    for k in c.slots.values():
        for mono in k.terms:
            for lab, m in mono:
                need[lab] = max(need.get(lab, 0), m)
    table = {}
    for lab, m in need.items():
        x, y = s._get(lab.index)
        table[lab] = hermite_values(m, x if lab.kind == "U" else y)
    total = _zero_like(exact)
    for k in c.slots.values():
        for mono, coef in k.terms.items():
            term = _coef_for(coef, exact)
            for lab, m in mono:
                term = term * table[lab][m]
            total = total + term
    return total


def eval_complex(c: ComplexChaos, s: CoordinateSample) -> Scalar:
    """Value of ``c`` at ``s``: elementary terms map to prod_k J_{p_k,q_k}(x_k + i y_k)."""
    exact = s.exact
    cache: Dict[Tuple[int, int, int], Scalar] = {}
    total = _zero_like(exact)
    for k in c.slots.values():
        for (holo, anti), coef in k.terms.items():
            term = _coef_for(coef, exact)
            counts: Dict[int, list] = {}
            for idx in holo:
                counts.setdefault(idx, [0, 0])[0] += 1
            for idx in anti:
                counts.setdefault(idx, [0, 0])[1] += 1
            for idx, (p, q) in counts.items():
                key = (idx, p, q)
                if key not in cache:
                    cache[key] = complex_hermite(p, q, s.z(idx))
                term = term * cache[key]
            total = total + term
    return total


def eval_real_np(c: RealChaos, xs: Mapping[int, np.ndarray], ys: Mapping[int, np.ndarray]) -> np.ndarray:
    """Float evaluation over arrays of coordinates (one entry per sample)."""
    ones = _ones(xs)
    out = None
    for k in c.slots.values():
        for mono, coef in k.terms.items():
            term = complex(coef) * ones
            for lab, m in mono:
                arr = xs[lab.index] if lab.kind == "U" else ys[lab.index]
                term = term * hermite_np(m, arr)
            out = term + (0 if out is None else out)
    return ones * 0 if out is None else out


def eval_complex_np(c: ComplexChaos, xs, ys) -> np.ndarray:
    """Float evaluation of a complex chaos over coordinate arrays."""
    def j_np(p, q, x, y):
        n = p + q
        acc = 0
        for j, a in enumerate(complex_to_real_coeffs(p, q)):
            if not a.is_zero():
                acc = acc + complex(a) * hermite_np(j, x) * hermite_np(n - j, y)
        return acc

    ones = _ones(xs)
    out = None
    for k in c.slots.values():
        for (holo, anti), coef in k.terms.items():
            term = complex(coef) * ones
            for idx in sorted(set(holo + anti)):
                term = term * j_np(holo.count(idx), anti.count(idx), xs[idx], ys[idx])
            out = term + (0 if out is None else out)
    return ones * 0 if out is None else out


def _ones(xs) -> np.ndarray:
    first = next(iter(xs.values()), None)
    shape = np.shape(first) if first is not None else ()
    return np.ones(shape, dtype=complex)


# ---------------------------------------------------------------------------
# products

def multiply_real(a: RealChaos, b: RealChaos) -> RealChaos:
    """Chaos expansion of the pointwise product (real product formula)."""
    out = []
    for p, f in a.slots.items():
        for q, g in b.slots.items():
            for r in range(min(p, q) + 1):
                w = factorial(r) * comb(p, r) * comb(q, r)
                out.append(contract_real(f, g, r) * w)
    return RealChaos(out)


def multiply_complex(a: ComplexChaos, b: ComplexChaos) -> ComplexChaos:
    """Chaos expansion of the pointwise product (complex product formula)."""
    out = []
    for (pa, pb), f in a.slots.items():
        for (pc, pd), g in b.slots.items():
            for i in range(min(pa, pd) + 1):
                for j in range(min(pb, pc) + 1):
                    w = comb(pa, i) * comb(pd, i) * comb(pb, j) * comb(pc, j) * factorial(i) * factorial(j)
                    out.append(contract_complex(f, g, i, j) * w)
    return ComplexChaos(out)


# ---------------------------------------------------------------------------
# derivatives

def _drop_real_kernel(k: RealKernel, b: Label) -> RealKernel:
    acc = {}
    for mono, c in k.terms.items():
        for pos, (lab, m) in enumerate(mono):
            if lab == b:
                rest = mono[:pos] + (((lab, m - 1),) if m > 1 else ()) + mono[pos + 1:]
                acc[rest] = c * m
                break
    return RealKernel._raw(k.degree - 1, acc)


def derivative_real(c: RealChaos, b: Label) -> RealChaos:
    """Malliavin derivative of ``c`` in the direction of basis element ``b``."""
    return RealChaos([_drop_real_kernel(k, b) for n, k in c.slots.items() if n > 0])


def _drop_one(t: Tuple[int, ...], k: int) -> Tuple[int, ...]:
    pos = t.index(k)
    return t[:pos] + t[pos + 1:]


def _drop_complex_kernel(f: ComplexKernel, which: str, k: int) -> ComplexKernel:
    p, q = f.bidegree
    acc = {}
    for (holo, anti), c in f.terms.items():
        if which == "holo":
            m = holo.count(k)
            if m:
                acc[(_drop_one(holo, k), anti)] = c * m
        else:
            m = anti.count(k)
            if m:
                acc[(holo, _drop_one(anti, k))] = c * m
    return ComplexKernel._raw((p - 1, q) if which == "holo" else (p, q - 1), acc)


def derivative_complex(c: ComplexChaos, which: str, k: int) -> ComplexChaos:
    """Holomorphic (``'holo'``) or antiholomorphic (``'anti'``) derivative along ``e_k``."""
    if which not in ("holo", "anti"):
        raise DomainError(f"direction must be 'holo' or 'anti', got {which!r}")
    side = 0 if which == "holo" else 1
    return ComplexChaos([_drop_complex_kernel(f, which, k)
                         for pq, f in c.slots.items() if pq[side] > 0])


def expectation(c) -> Scalar:
    """E[c], the degree-zero coefficient."""
    if isinstance(c, RealChaos):
        k = c.slots.get(0)
        return k.terms[()] if k is not None else Scalar(0, 0)
    k = c.slots.get((0, 0))
    return k.terms[((), ())] if k is not None else Scalar(0, 0)


# ---------------------------------------------------------------------------
# Stroock extraction

def stroock_real(c: RealChaos, n: int) -> RealKernel:
    """Degree-``n`` kernel recovered as E[D^n c] / n!.

    Coefficient of monomial ``m`` is E[D^m c] / m!, where ``D^m`` applies the
    directional derivative once per slot of ``m``.  Slots that cannot reach
    degree zero after the remaining derivatives are dropped early.
    """
    if n < 0:
        raise DomainError("degree must be nonnegative")
    labels = sorted({lab for k in c.slots.values() for mono in k.terms for lab, _ in mono})
    out = {}

    def keep(ch, left):
        return RealChaos([k for d, k in ch.slots.items() if d == left])

    def walk(ch, start, path, left):
        if ch.is_zero():
            return
        if left == 0:
            val = expectation(ch)
            mono = tuple(sorted(_count(path).items()))
            out[mono] = val.scale(Fraction(1, _mfact(mono)))
            return
        for pos in range(start, len(labels)):
            lab = labels[pos]
            walk(keep(derivative_real(ch, lab), left - 1), pos, path + [lab], left - 1)

    walk(keep(c, n), 0, [], n)
    return RealKernel._raw(n, out)


def stroock_complex(c: ComplexChaos, p: int, q: int) -> ComplexKernel:
    """Bidegree-``(p, q)`` kernel recovered as E[D^p Dbar^q c] / (p! q!)."""
    if p < 0 or q < 0:
        raise DomainError("bidegree must be nonnegative")
    idx = sorted({i for f in c.slots.values() for h, a in f.terms for i in h + a})
    out = {}

    def keep(ch, bd):
        return ComplexChaos([f for pq, f in ch.slots.items() if pq == bd])

    def walk(ch, start, holo, anti, hl, al):
        if ch.is_zero():
            return
        if hl == 0 and al == 0:
            key = (tuple(holo), tuple(anti))
            w = Fraction(1, _mfact(_count(holo).items()) * _mfact(_count(anti).items()))
            out[key] = expectation(ch).scale(w)
            return
        if hl:
            for pos in range(start, len(idx)):
                nxt = keep(derivative_complex(ch, "holo", idx[pos]), (hl - 1, al))
                restart = pos if hl > 1 else 0
                walk(nxt, restart, holo + [idx[pos]], anti, hl - 1, al)
        else:
            for pos in range(start, len(idx)):
                nxt = keep(derivative_complex(ch, "anti", idx[pos]), (0, al - 1))
                walk(nxt, pos, holo, anti + [idx[pos]], 0, al - 1)

    walk(keep(c, (p, q)), 0, [], [], p, q)
    return ComplexKernel._raw((p, q), out)


def _count(seq):
    out: Dict = {}
    for s in seq:
        out[s] = out.get(s, 0) + 1
    return out
