"""Sparse symmetric kernels over the canonical truncated bases.

Real kernels live in the symmetric powers of H+H and are expanded over the
orthonormal labels ``U(k)``, ``V(k)``.  A term ``{U(1): 2, V(3): 1}`` with
coefficient ``c`` stands for ``c * symm(U1 (x) U1 (x) V3)`` where ``symm`` is
the averaging projection over slot permutations.  With this convention

    I_n(symm(monomial m)) = prod_k H_{m_k}(coordinate_k),

so evaluation never needs normalising constants.

Complex kernels are expanded over ``symm(e_k...) (x) symm(conj e_j...)``,
with ``<e_k, e_l> = 2 delta_kl``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Dict, Iterable, Iterator, Mapping, NamedTuple, Tuple

from .scalar import ModeError, Scalar, as_scalar

__all__ = [
    "Label", "U", "V", "Monomial", "monomial", "mono_degree",
    "RealKernel", "ComplexKernel", "ComplexIndex",
    "symm_product", "contract_real", "contract_complex", "inner_product",
    "conjugate", "DomainError",
]


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class Label(NamedTuple):
    """Orthonormal basis label ``U(k)`` or ``V(k)`` of H+H.

    Tuple order is ``(index, kind)``, which gives the canonical ordering
    U(1) < V(1) < U(2) < ...
    """

    index: int
    kind: str

    def __repr__(self):
        return f"{self.kind}({self.index})"


def U(k: int) -> Label:
    return Label(k, "U")


def V(k: int) -> Label:
    return Label(k, "V")


# A multiset of labels: sorted tuple of (label, multiplicity>0) pairs.
Monomial = Tuple[Tuple[Label, int], ...]
# A complex index: (sorted holomorphic indices, sorted antiholomorphic indices).
ComplexIndex = Tuple[Tuple[int, ...], Tuple[int, ...]]


def monomial(spec=None) -> Monomial:
    """Build a canonical monomial from a mapping or an iterable of labels."""
    if spec is None:
        return ()
    counts: Counter = Counter()
    if isinstance(spec, Mapping):
        for lab, m in spec.items():
            if m < 0:
                raise DomainError("negative multiplicity")
            counts[lab] += m
    else:
        for lab in spec:
            counts[lab] += 1
    for lab in counts:
        if not isinstance(lab, Label) or lab.kind not in ("U", "V") or lab.index < 1:
            raise DomainError(f"bad basis label {lab!r}")
    return tuple(sorted((lab, m) for lab, m in counts.items() if m))


def mono_degree(m) -> int:
    return sum(c for _, c in m)


def _mfact(m) -> int:
    out = 1
    for _, c in m:
        out *= factorial(c)
    return out


def _madd(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for k, c in b:
        d[k] = d.get(k, 0) + c
    return tuple(sorted(d.items()))


def _msub(a, r):
    if not r:
        return a
    d = dict(a)
    for k, c in r:
        left = d[k] - c
        if left:
            d[k] = left
        else:
            del d[k]
    return tuple(sorted(d.items()))


def _mmin(a, b):
    db = dict(b)
    return tuple((k, min(c, db[k])) for k, c in a if k in db)


def _submultisets(m, r: int) -> Iterator[tuple]:
    """All sub-multisets of ``m`` with total size ``r``."""
    items = list(m)

    def rec(pos, left):
        if left == 0:
            yield ()
            return
        if pos == len(items):
            return
        key, cap = items[pos]
        for take in range(min(cap, left), -1, -1):
            for rest in rec(pos + 1, left - take):
                yield (((key, take),) + rest) if take else rest

    yield from rec(0, r)


def _slot_weight(a, deg: int, r_sub, r: int) -> Fraction:
    # <symm(a), word of content r_sub> over r slots = this weight * symm(a - r_sub)
    return Fraction(_mfact(a) * factorial(deg - r),
                    factorial(deg) * _mfact(_msub(a, r_sub)))


def _counts(seq: Iterable[int]):
    return tuple(sorted(Counter(seq).items()))


def _expand(counts) -> Tuple[int, ...]:
    out = []
    for k, c in counts:
        out.extend([k] * c)
    return tuple(out)


def _accumulate(acc: Dict, key, value):
    prev = acc.get(key)
    acc[key] = value if prev is None else prev + value


def _clean(acc: Dict) -> Dict:
    return {k: v for k, v in acc.items() if not v.is_zero()}


def _check_mode(terms: Mapping) -> None:
    modes = {v.exact for v in terms.values()}
    if len(modes) > 1:
        raise ModeError("kernel mixes exact and float coefficients")


@dataclass(frozen=True, eq=True)
class RealKernel:
    """Degree-``n`` element of the symmetric power of H+H, sparse in U/V labels.

    Coefficients are Scalars, so a single kernel represents ``g1 + i g2``.
    """

    degree: int
    terms: Dict[Monomial, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        if self.degree < 0:
            raise DomainError("degree must be nonnegative")
        clean = {}
        for mono, c in self.terms.items():
            mono = tuple(mono)
            if mono_degree(mono) != self.degree:
                raise DomainError(
                    f"monomial {mono} has degree {mono_degree(mono)}, expected {self.degree}")
            c = as_scalar(c)
            if not c.is_zero():
                _accumulate(clean, mono, c)
        clean = _clean(clean)
        _check_mode(clean)
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def _raw(cls, degree: int, terms: Dict) -> "RealKernel":
        k = object.__new__(cls)
        object.__setattr__(k, "degree", degree)
        object.__setattr__(k, "terms", dict(sorted(_clean(terms).items())))
        return k

    @classmethod
    def mono(cls, spec, coef=1) -> "RealKernel":
        m = monomial(spec)
        return cls(mono_degree(m), {m: coef})

    @classmethod
    def constant(cls, c) -> "RealKernel":
        return cls(0, {(): c})

    @classmethod
    def zero(cls, degree: int) -> "RealKernel":
        return cls(degree, {})

    # -- linear structure ---------------------------------------------------
    def _same_degree(self, other):
        if not isinstance(other, RealKernel):
            return False
        if other.degree != self.degree:
            raise DomainError(f"degree mismatch: {self.degree} vs {other.degree}")
        return True

    def __add__(self, other):
        if not self._same_degree(other):
            return NotImplemented
        acc = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(acc, m, c)
        return RealKernel._raw(self.degree, acc)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RealKernel._raw(self.degree, {m: -c for m, c in self.terms.items()})

    def __mul__(self, s):
        if isinstance(s, RealKernel):
            return NotImplemented
        if type(s) is int or type(s) is Fraction:
            return RealKernel._raw(self.degree, {m: c.scale(s) for m, c in self.terms.items()})
        return RealKernel._raw(self.degree, {m: c * s for m, c in self.terms.items()})

    __rmul__ = __mul__

    def conj(self) -> "RealKernel":
        return RealKernel._raw(self.degree, {m: c.conjugate() for m, c in self.terms.items()})

    def real_part(self) -> "RealKernel":
        return RealKernel._raw(self.degree, {m: c.real() for m, c in self.terms.items()})

    def imag_part(self) -> "RealKernel":
        return RealKernel._raw(self.degree, {m: c.imag() for m, c in self.terms.items()})

    def to_float(self) -> "RealKernel":
        return RealKernel._raw(self.degree, {m: c.to_float() for m, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def labels(self):
        return sorted({lab for m in self.terms for lab, _ in m})

    def indices(self):
        return sorted({lab.index for lab in self.labels()})

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        body = " + ".join(f"{c}*{dict(m)}" for m, c in self.terms.items()) or "0"
        return f"RealKernel[{self.degree}]({body})"


@dataclass(frozen=True, eq=True)
class ComplexKernel:
    """Bidegree-``(p, q)`` kernel over ``symm(e_holo) (x) symm(conj e_anti)``."""

    bidegree: Tuple[int, int]
    terms: Dict[ComplexIndex, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        p, q = self.bidegree
        if p < 0 or q < 0:
            raise DomainError("bidegree must be nonnegative")
        clean = {}
        for (holo, anti), c in self.terms.items():
            holo, anti = tuple(sorted(holo)), tuple(sorted(anti))
            if len(holo) != p or len(anti) != q:
                raise DomainError(
                    f"index {holo};{anti} has bidegree {(len(holo), len(anti))}, expected {(p, q)}")
            if any(k < 1 for k in holo + anti):
                raise DomainError("basis indices must be positive")
            c = as_scalar(c)
            if not c.is_zero():
                _accumulate(clean, (holo, anti), c)
        clean = _clean(clean)
        _check_mode(clean)
        object.__setattr__(self, "bidegree", (p, q))
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def _raw(cls, bidegree, terms: Dict) -> "ComplexKernel":
        k = object.__new__(cls)
        object.__setattr__(k, "bidegree", tuple(bidegree))
        object.__setattr__(k, "terms", dict(sorted(_clean(terms).items())))
        return k

    @classmethod
    def elementary(cls, holo: Iterable[int], anti: Iterable[int], coef=1) -> "ComplexKernel":
        holo, anti = tuple(sorted(holo)), tuple(sorted(anti))
        return cls((len(holo), len(anti)), {(holo, anti): coef})

    @classmethod
    def zero(cls, p: int, q: int) -> "ComplexKernel":
        return cls((p, q), {})

    def _same_bidegree(self, other):
        if not isinstance(other, ComplexKernel):
            return False
        if other.bidegree != self.bidegree:
            raise DomainError(f"bidegree mismatch: {self.bidegree} vs {other.bidegree}")
        return True

    def __add__(self, other):
        if not self._same_bidegree(other):
            return NotImplemented
        acc = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(acc, m, c)
        return ComplexKernel._raw(self.bidegree, acc)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ComplexKernel._raw(self.bidegree, {m: -c for m, c in self.terms.items()})

    def __mul__(self, s):
        if isinstance(s, ComplexKernel):
            return NotImplemented
        if type(s) is int or type(s) is Fraction:
            return ComplexKernel._raw(self.bidegree, {m: c.scale(s) for m, c in self.terms.items()})
        return ComplexKernel._raw(self.bidegree, {m: c * s for m, c in self.terms.items()})

    __rmul__ = __mul__

    def to_float(self) -> "ComplexKernel":
        return ComplexKernel._raw(self.bidegree, {m: c.to_float() for m, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def indices(self):
        return sorted({k for h, a in self.terms for k in h + a})

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        body = " + ".join(f"{c}*e{list(h)}|ebar{list(a)}" for (h, a), c in self.terms.items()) or "0"
        return f"ComplexKernel{self.bidegree}({body})"


# ---------------------------------------------------------------------------
# real kernel algebra

def symm_product(f: RealKernel, g: RealKernel) -> RealKernel:
    """Symmetrised tensor product ``f (x)~ g``.

    ``symm(symm(a) (x) symm(b)) = symm(a (x) b)``, so coefficients simply
    multiply and monomials add.
    """
    acc: Dict = {}
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            _accumulate(acc, _madd(a, b), ca * cb)
    return RealKernel._raw(f.degree + g.degree, acc)


def contract_real(f: RealKernel, g: RealKernel, r: int) -> RealKernel:
    """Symmetrised ``r``-th contraction ``f (x)~_r g`` (bilinear, no conjugation)."""
    p, q = f.degree, g.degree
    if not 0 <= r <= min(p, q):
        raise DomainError(f"contraction order {r} outside [0, {min(p, q)}]")
    if r == 0:
        return symm_product(f, g)
    acc: Dict = {}
    r_fact = factorial(r)
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            common = _mmin(a, b)
            if mono_degree(common) < r:
                continue
            cab = ca * cb
            for sub in _submultisets(common, r):
                w = (Fraction(r_fact, _mfact(sub))
                     * _slot_weight(a, p, sub, r) * _slot_weight(b, q, sub, r))
                _accumulate(acc, _madd(_msub(a, sub), _msub(b, sub)), cab.scale(w))
    return RealKernel._raw(p + q - 2 * r, acc)


def inner_product(f: RealKernel, g: RealKernel) -> Scalar:
    """``<f, g>`` in the tensor power of H+H, conjugate-linear in ``g``.

    ``<symm(m), symm(m)> = m!/n!`` and distinct monomials are orthogonal.
    """
    if f.degree != g.degree:
        raise DomainError(f"degree mismatch: {f.degree} vs {g.degree}")
    n_fact = factorial(f.degree)
    total = None
    for m, c in f.terms.items():
        d = g.terms.get(m)
        if d is None:
            continue
        term = (c * d.conjugate()).scale(Fraction(_mfact(m), n_fact))
        total = term if total is None else total + term
    if total is None:
        exact = all(c.exact for c in list(f.terms.values()) + list(g.terms.values()))
        return Scalar(0, 0) if exact else Scalar(0.0, 0.0)
    return total


# ---------------------------------------------------------------------------
# complex kernel algebra

def conjugate(f: ComplexKernel) -> ComplexKernel:
    """Swap holomorphic/antiholomorphic slots and conjugate coefficients."""
    p, q = f.bidegree
    return ComplexKernel._raw((q, p), {(a, h): c.conjugate() for (h, a), c in f.terms.items()})


def contract_complex(f: ComplexKernel, g: ComplexKernel, i: int, j: int) -> ComplexKernel:
    """Symmetrised ``(i, j)``-th contraction of complex kernels.

    ``i`` holomorphic slots of ``f`` pair with antiholomorphic slots of ``g``
    and ``j`` antiholomorphic slots of ``f`` pair with holomorphic slots of
    ``g``; every pairing contributes ``<e_k, e_l> = 2 delta_kl``.
    """
    a, b = f.bidegree
    c, d = g.bidegree
    if not (0 <= i <= min(a, d) and 0 <= j <= min(b, c)):
        raise DomainError(f"contraction ({i},{j}) invalid for bidegrees {f.bidegree}, {g.bidegree}")
    acc: Dict = {}
    pair_w = Fraction(2 ** (i + j) * factorial(i) * factorial(j))
    for (h1, a1), cf in f.terms.items():
        H1, A1 = _counts(h1), _counts(a1)
        for (h2, a2), cg in g.terms.items():
            H2, A2 = _counts(h2), _counts(a2)
            ri = _mmin(H1, A2)
            sj = _mmin(A1, H2)
            if mono_degree(ri) < i or mono_degree(sj) < j:
                continue
            cfg = cf * cg
            for R in _submultisets(ri, i):
                wr = (_slot_weight(H1, a, R, i) * _slot_weight(A2, d, R, i)) / _mfact(R)
                for S in _submultisets(sj, j):
                    w = pair_w * wr * _slot_weight(A1, b, S, j) * _slot_weight(H2, c, S, j) / _mfact(S)
                    holo = _expand(_madd(_msub(H1, R), _msub(H2, S)))
                    anti = _expand(_madd(_msub(A1, S), _msub(A2, R)))
                    _accumulate(acc, (holo, anti), cfg.scale(w))
    return ComplexKernel._raw((a + c - i - j, b + d - i - j), acc)


def complex_tensor(f: ComplexKernel, g: ComplexKernel) -> ComplexKernel:
    return contract_complex(f, g, 0, 0)


def all_monomials(labels, degree: int) -> Iterator[Monomial]:
    """Every monomial of the given degree over ``labels``."""
    labels = sorted(labels)
    for combo in product(range(degree + 1), repeat=len(labels)):
        if sum(combo) == degree:
            yield tuple((lab, m) for lab, m in zip(labels, combo) if m)
