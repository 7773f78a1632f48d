"""Conversion between complex multiple integrals and pairs of real ones.

Forward: a complex kernel ``f`` of bidegree ``(p, q)`` maps to a real kernel
``w = u + i v`` of degree ``p + q`` with ``I_{p,q}(f) = I(u) + i I(v)``.
Three independent routes are provided (product recursion, closed-form
coefficient sums, derivative extraction).  Inverse: a real kernel ``g`` of
degree ``p`` maps to complex kernels ``g_{l,p-l}`` with
``I_p(Re g) + i I_p(Im g) = sum_l I_{l,p-l}(g_{l,p-l})``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial, sqrt
from typing import Dict, List, Optional, Sequence, Tuple

from .chaos import ComplexChaos, RealChaos, derivative_complex, expectation
from .hermite import complex_to_real_coeffs, real_pair_to_J_coeffs
from .scalar import I, Scalar, ipow
from .tensor_core import (
    ComplexKernel, DomainError, Label, RealKernel, U, V, _mfact, symm_product,
)

__all__ = [
    "coeff_a", "coeff_a_tilde", "forward_recursive", "forward_closed_form",
    "forward_stroock", "forward", "inverse", "VkVector", "vk_vector",
    "single_chaos_condition", "density_check", "density_verdict",
    "complex_to_real_chaos", "real_to_complex_chaos",
    "vk_prefactor", "real_components", "vk_route", "complex_kernel_dense", "split_uv",
]


def _like(a: Scalar, c: Scalar) -> Scalar:
    """Cast exact constant ``a`` to the mode of ``c``."""
    return a if c.exact else a.to_float()


def coeff_a(pk: int, qk: int, j: int) -> Scalar:
    """a_{k,j}: weight of H_j(x) H_{pk+qk-j}(y) in J_{pk,qk}(x+iy)."""
    if j < 0 or j > pk + qk:
        return Scalar(0, 0)
    return complex_to_real_coeffs(pk, qk)[j]


def coeff_a_tilde(mk: int, nk: int, j: int) -> Scalar:
    """a~_{k,j}: weight of J_{j, mk+nk-j} in H_mk(x) H_nk(y)."""
    if j < 0 or j > mk + nk:
        return Scalar(0, 0)
    return real_pair_to_J_coeffs(mk, nk)[j][1]


# ---------------------------------------------------------------------------
# forward routes

def _w10(k: int) -> RealKernel:
    return RealKernel(1, {((U(k), 1),): 1, ((V(k), 1),): I})


def _w01(k: int) -> RealKernel:
    return RealKernel(1, {((U(k), 1),): 1, ((V(k), 1),): -I})


@lru_cache(maxsize=4096)
def _w(holo: Tuple[int, ...], anti: Tuple[int, ...]) -> RealKernel:
    if not holo and not anti:
        return RealKernel.constant(1)
    if anti:
        return symm_product(_w(holo, anti[:-1]), _w01(anti[-1]))
    return symm_product(_w(holo[:-1], anti), _w10(holo[-1]))


def forward_recursive(holo: Sequence[int], anti: Sequence[int]) -> RealKernel:
    """``w_{p,q}(k; j) = u + i v`` for the elementary kernel ``e_k... (x) conj(e_j)...``.

    Built by symmetrised products of ``U(k) + iV(k)`` (holomorphic slots) and
    ``U(j) - iV(j)`` (antiholomorphic slots).  Both lists empty gives 1.
    """
    holo, anti = tuple(sorted(holo)), tuple(sorted(anti))
    if any(k < 1 for k in holo + anti):
        raise DomainError("indices must be positive")
    return _w(holo, anti)


def _per_index(holo, anti) -> Dict[int, Tuple[int, int]]:
    out: Dict[int, List[int]] = {}
    for k in holo:
        out.setdefault(k, [0, 0])[0] += 1
    for k in anti:
        out.setdefault(k, [0, 0])[1] += 1
    return {k: (p, q) for k, (p, q) in sorted(out.items())}


def forward_closed_form(kernel: ComplexKernel) -> RealKernel:
    """Forward conversion through the a_{k,j} coefficient sums."""
    p, q = kernel.bidegree
    acc: Dict = {}
    for (holo, anti), c in kernel.terms.items():
        factors = []
        for k, (pk, qk) in _per_index(holo, anti).items():
            opts = []
            for j, a in enumerate(complex_to_real_coeffs(pk, qk)):
                if a.is_zero():
                    continue
                mono = []
                if j:
                    mono.append((U(k), j))
                if pk + qk - j:
                    mono.append((V(k), pk + qk - j))
                opts.append((tuple(mono), a))
            factors.append(opts)
        for combo in product(*factors):
            coef = c
            mono: tuple = ()
            for part, a in combo:
                coef = coef * _like(a, c)
                mono += part
            mono = tuple(sorted(mono))
            acc[mono] = acc[mono] + coef if mono in acc else coef
    return RealKernel._raw(p + q, acc)


forward = forward_closed_form


def _real_direction(ch: ComplexChaos, lab: Label, i_unit: Scalar) -> ComplexChaos:
    hol = derivative_complex(ch, "holo", lab.index)
    ant = derivative_complex(ch, "anti", lab.index)
    if lab.kind == "U":
        return hol + ant
    return (hol - ant) * i_unit


def forward_stroock(kernel: ComplexKernel) -> RealKernel:
    """Forward conversion by derivative extraction.

    The coefficient of monomial ``m`` is ``E[D^m F] / m!`` with ``F`` the
    complex integral of ``kernel`` and ``D_U(k) = D_holo + D_anti``,
    ``D_V(k) = i (D_holo - D_anti)`` along ``e_k``.
    """
    p, q = kernel.bidegree
    n = p + q
    exact = all(c.exact for c in kernel.terms.values())
    i_unit = I if exact else I.to_float()
    labels = sorted(lab for k in kernel.indices() for lab in (U(k), V(k)))
    acc: Dict = {}

    def walk(ch, start, path, left):
        if ch.is_zero():
            return
        if left == 0:
            mono = tuple(sorted(_count(path).items()))
            acc[mono] = expectation(ch).scale(Fraction(1, _mfact(mono)))
            return
        for pos in range(start, len(labels)):
            walk(_real_direction(ch, labels[pos], i_unit), pos, path + [labels[pos]], left - 1)

    walk(ComplexChaos.of(kernel), 0, [], n)
    return RealKernel._raw(n, acc)


def _count(seq) -> Dict:
    out: Dict = {}
    for s in seq:
        out[s] = out.get(s, 0) + 1
    return out


def split_uv(w: RealKernel) -> Tuple[RealKernel, RealKernel]:
    """Split ``w = u + i v`` into real-coefficient kernels ``(u, v)``."""
    return w.real_part(), w.imag_part()


# ---------------------------------------------------------------------------
# inverse

def inverse(g: RealKernel) -> List[ComplexKernel]:
    """Complex kernels ``[g_{0,p}, g_{1,p-1}, ..., g_{p,0}]`` (entry ``l`` has bidegree ``(l, p-l)``)."""
    p = g.degree
    acc: List[Dict] = [dict() for _ in range(p + 1)]
    for mono, c in g.terms.items():
        per: Dict[int, List[int]] = {}
        for lab, m in mono:
            per.setdefault(lab.index, [0, 0])[0 if lab.kind == "U" else 1] += m
        factors = []
        for k, (mk, nk) in sorted(per.items()):
            opts = []
            for j, a in real_pair_to_J_coeffs(mk, nk):
                if not a.is_zero():
                    opts.append((j, (k,) * j, (k,) * (mk + nk - j), a))
            factors.append(opts)
        for combo in product(*factors):
            coef = c
            holo: tuple = ()
            anti: tuple = ()
            l = 0
            for j, h, a_, a in combo:
                coef = coef * _like(a, c)
                holo += h
                anti += a_
                l += j
            key = (tuple(sorted(holo)), tuple(sorted(anti)))
            slot = acc[l]
            slot[key] = slot[key] + coef if key in slot else coef
    return [ComplexKernel._raw((l, p - l), acc[l]) for l in range(p + 1)]


def single_chaos_condition(g: RealKernel) -> Optional[int]:
    """``k`` when exactly one inverse slot ``(k, p-k)`` is nonzero, else None."""
    nonzero = [l for l, f in enumerate(inverse(g)) if not f.is_zero()]
    return nonzero[0] if len(nonzero) == 1 else None


# ---------------------------------------------------------------------------
# density criterion

def density_verdict(holo: Sequence[int], anti: Sequence[int]) -> Tuple[bool, str]:
    """Density verdict for the elementary integral plus the deciding condition.

    Inputs are sorted internally.
    """
    holo, anti = sorted(holo), sorted(anti)
    if not holo and not anti:
        raise DomainError("density check needs p + q >= 1")
    if any(k < 1 for k in holo + anti):
        raise DomainError("indices must be positive")
    if len(holo) != len(anti):
        return True, f"p != q ({len(holo)} vs {len(anti)})"
    for pos, (k, j) in enumerate(zip(holo, anti), start=1):
        if k != j:
            return True, f"p = q and position {pos} differs ({k} vs {j})"
    return False, "p = q and the sorted index lists coincide"


def density_check(holo: Sequence[int], anti: Sequence[int]) -> bool:
    """True iff the elementary complex integral has a density (p != q or lists differ)."""
    return density_verdict(holo, anti)[0]


# ---------------------------------------------------------------------------
# chaos-level helpers

def complex_to_real_chaos(c: ComplexChaos) -> RealChaos:
    return RealChaos([forward_closed_form(f) for f in c.slots.values()])


def real_to_complex_chaos(c: RealChaos) -> ComplexChaos:
    return ComplexChaos([f for g in c.slots.values() for f in inverse(g)])


# ---------------------------------------------------------------------------
# binary V_k vectors and the component route

@dataclass(frozen=True)
class VkVector:
    p: int
    k: int
    entries: Tuple[Scalar, ...]


def vk_vector(p: int, k: int) -> VkVector:
    """Weights ``V_{kj} = (-i)^{b} i^{c}`` for ``j = 1..2^p``.

    ``j - 1`` is read little-endian in binary; ``b`` counts ones among the
    first ``k`` digits and ``c`` among the remaining ``p - k``.
    """
    if p < 0 or not 0 <= k <= p:
        raise DomainError(f"need 0 <= k <= p, got k={k}, p={p}")
    entries = []
    low = (1 << k) - 1
    for jm1 in range(1 << p):
        b = bin(jm1 & low).count("1")
        c = bin(jm1 >> k).count("1")
        entries.append(ipow(c - b))
    return VkVector(p, k, tuple(entries))


def vk_prefactor(p: int, k: int, exact: bool = True):
    """``2^{-p/2} C(p, k)``; exact only for even ``p``."""
    if exact:
        if p % 2:
            raise DomainError("2^(-p/2) is irrational for odd p; use float mode")
        return Fraction(comb(p, k), 2 ** (p // 2))
    return comb(p, k) / sqrt(2.0) ** p


# Dense tensors over the real family e1_k, e2_k: dict keyed by a tuple of
# (index, 1|2) per slot.

def real_components(g: RealKernel) -> List[Dict]:
    """The 2^p components of ``g`` in H^(x)p, scaled by 2^{p/2}.

    ``U(k) = (e1_k, -e2_k)/sqrt2`` and ``V(k) = (e2_k, e1_k)/sqrt2``; component
    ``j`` picks summand ``a_l + 1`` in slot ``l`` where ``j - 1 = sum a_l 2^(l-1)``.
    """
    p = g.degree
    comps: List[Dict] = [dict() for _ in range(1 << p)]
    # summand 0 / 1 images of each label, sqrt2 removed
    image = {"U": (((1, 1),), ((2, -1),)), "V": (((2, 1),), ((1, 1),))}
    for mono, c in g.terms.items():
        word = [lab for lab, m in mono for _ in range(m)]
        w = Fraction(_mfact(mono), factorial(p))
        for perm in _distinct_perms(word):
            for jm1 in range(1 << p):
                key = []
                sign = 1
                for l, lab in enumerate(perm):
                    (which, s), = image[lab.kind][(jm1 >> l) & 1]
                    key.append((lab.index, which))
                    sign *= s
                key = tuple(key)
                val = c.scale(w * sign)
                comps[jm1][key] = comps[jm1][key] + val if key in comps[jm1] else val
    return comps


def vk_route(g: RealKernel) -> List[Dict]:
    """Dense ``g_{k,p-k}`` (first ``k`` slots holomorphic) from the V_k sums."""
    p = g.degree
    exact = all(c.exact for c in g.terms.values())
    comps = real_components(g)
    out = []
    for k in range(p + 1):
        pre = Fraction(comb(p, k), 2 ** p) if exact else comb(p, k) / 2.0 ** p
        vk = vk_vector(p, k).entries
        acc: Dict = {}
        for j, comp in enumerate(comps):
            for key, val in comp.items():
                t = (val * (vk[j] if exact else vk[j].to_float())).scale(pre)
                acc[key] = acc[key] + t if key in acc else t
        out.append({key: v for key, v in acc.items() if not v.is_zero()})
    return out


def complex_kernel_dense(f: ComplexKernel) -> Dict:
    """Dense expansion of ``f`` with ``e_k = e1_k + i e2_k``, ``conj(e_k) = e1_k - i e2_k``.

    Holomorphic factors occupy the first ``p`` slots.
    """
    p, q = f.bidegree
    acc: Dict = {}
    for (holo, anti), c in f.terms.items():
        wh = Fraction(_mfact(_count(holo).items()), factorial(p))
        wa = Fraction(_mfact(_count(anti).items()), factorial(q))
        for ph in _distinct_perms(list(holo)):
            for pa in _distinct_perms(list(anti)):
                for picks in product((1, 2), repeat=p + q):
                    val = c.scale(wh * wa)
                    for slot, which in enumerate(picks):
                        if which == 2:
                            unit = I if slot < p else -I
                            val = val * (unit if c.exact else unit.to_float())
                    key = tuple((idx, which) for idx, which in zip(ph + pa, picks))
                    acc[key] = acc[key] + val if key in acc else val
    return {k: v for k, v in acc.items() if not v.is_zero()}


def _distinct_perms(word: list):
    """Distinct orderings of a multiset."""
    word = sorted(word)
    n = len(word)
    if n == 0:
        yield ()
        return
    used = [False] * n
    cur: list = []

    def rec():
        if len(cur) == n:
            yield tuple(cur)
            return
        prev = None
        for i in range(n):
            if used[i] or (prev is not None and word[i] == prev):
                continue
            prev = word[i]
            used[i] = True
            cur.append(word[i])
            yield from rec()
            cur.pop()
            used[i] = False

    yield from rec()
