"""Two-region kernels for the Ornstein-Uhlenbeck example.

A :class:`RegionKernel2` is ``(lower, upper)``: the coefficient on
``{0 <= s <= t <= T}`` and on ``{0 <= t <= s <= T}``.  A common factor
``exp(-gamma |t - s|) / sqrt(T)`` is implicit and never expanded, so only the
region coefficients take part in the algebra.

The OU functional is ``F = I_{1,1}(psi)`` with ``psi = (1, 0)``.  Its
iterated derivatives are ``D Dbar F = psi``, ``Dbar D F = psi^T`` and
``D D F = Dbar Dbar F = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import List, Tuple

from .convert import vk_prefactor, vk_vector
from .scalar import I, Scalar, as_scalar

__all__ = ["RegionKernel2", "ComponentVector", "transpose", "PSI", "ou_forward", "apply_vk"]


@dataclass(frozen=True)
class RegionKernel2:
    lower: Scalar
    upper: Scalar

    def __post_init__(self):
        object.__setattr__(self, "lower", as_scalar(self.lower))
        object.__setattr__(self, "upper", as_scalar(self.upper))

    def __add__(self, other: "RegionKernel2") -> "RegionKernel2":
        return RegionKernel2(self.lower + other.lower, self.upper + other.upper)

    def __sub__(self, other: "RegionKernel2") -> "RegionKernel2":
        return RegionKernel2(self.lower - other.lower, self.upper - other.upper)

    def __neg__(self):
        return RegionKernel2(-self.lower, -self.upper)

    def __mul__(self, c) -> "RegionKernel2":
        return RegionKernel2(self.lower * c, self.upper * c)

    __rmul__ = __mul__

    def to_float(self) -> "RegionKernel2":
        return RegionKernel2(self.lower.to_float(), self.upper.to_float())

    def is_zero(self) -> bool:
        return self.lower.is_zero() and self.upper.is_zero()

    def __repr__(self):
        return f"RegionKernel2({self.lower}, {self.upper})"


ZERO2 = RegionKernel2(0, 0)
PSI = RegionKernel2(1, 0)


def transpose(f: RegionKernel2) -> RegionKernel2:
    """Swap the arguments, which exchanges the two regions."""
    return RegionKernel2(f.upper, f.lower)


@dataclass(frozen=True)
class ComponentVector:
    """The ``2^p`` components ``g_{1j} + i g_{2j}`` of a kernel."""

    p: int
    entries: Tuple[RegionKernel2, ...]

    def __post_init__(self):
        if len(self.entries) != 1 << self.p:
            raise ValueError(f"need {1 << self.p} entries for p={self.p}, got {len(self.entries)}")

    def __add__(self, other):
        return ComponentVector(self.p, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __mul__(self, c):
        return ComponentVector(self.p, tuple(a * c for a in self.entries))

    __rmul__ = __mul__


# Second derivatives of F along (holo|anti, holo|anti), in slot order.
def _second_derivative(first: str, second: str) -> RegionKernel2:
    if first == second:
        return ZERO2
    return PSI if (first, second) == ("holo", "anti") else transpose(PSI)


def ou_forward() -> ComponentVector:
    """Components of ``u_T + i v_T`` for ``F = I_{1,1}(psi)``.

    Component ``j`` pairs slot-wise operators ``A1 = D + Dbar`` (first summand)
    or ``A2 = i (D - Dbar)`` (second summand), applied with overall factor 1/4.
    """
    # each operator as a list of (weight, direction)
    ops = {0: [(Scalar(1), "holo"), (Scalar(1), "anti")],
           1: [(I, "holo"), (-I, "anti")]}
    entries = []
    for jm1 in range(4):
        a1, a2 = jm1 & 1, (jm1 >> 1) & 1
        acc = ZERO2
        for (w1, d1), (w2, d2) in product(ops[a1], ops[a2]):
            acc = acc + _second_derivative(d1, d2) * (w1 * w2)
        entries.append(acc * Fraction(1, 4))
    return ComponentVector(2, tuple(entries))


def apply_vk(v: ComponentVector, exact: bool = True) -> List[Tuple[int, RegionKernel2]]:
    """``[(k, g_{k,p-k})]`` with ``g_{k,p-k} = 2^{-p/2} C(p,k) sum_j V_kj entry_j``."""
    out = []
    for k in range(v.p + 1):
        pre = vk_prefactor(v.p, k, exact)
        weights = vk_vector(v.p, k).entries
        acc = ZERO2 if exact else ZERO2.to_float()
        for w, e in zip(weights, v.entries):
            if exact:
                acc = acc + e * w
            else:
                acc = acc + e.to_float() * w.to_float()
        out.append((k, RegionKernel2(acc.lower.scale(pre), acc.upper.scale(pre))))
    return out
