"""JSON encoding of kernels and chaos values.

Rationals are written as ``"num/den"`` strings so exact values survive a
round trip; float-mode kernels use JSON numbers.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .scalar import Scalar
from .tensor_core import ComplexKernel, DomainError, Label, RealKernel, mono_degree

__all__ = [
    "ParseError", "scalar_to_json", "scalar_from_json",
    "kernel_to_json", "kernel_from_json", "loads_kernel", "dumps",
    "chaos_to_json", "chaos_from_json",
]


class ParseError(ValueError):
    """Malformed kernel document."""


def _num_to_json(x):
    if type(x) is float:
        return x
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _num_from_json(x, exact: bool):
    if isinstance(x, bool):
        raise ParseError(f"bad number {x!r}")
    if exact:
        if isinstance(x, float):
            raise ParseError("exact mode expects rational strings, got a float")
        try:
            return Fraction(x)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {x!r}") from exc
    if isinstance(x, (int, float)):
        return float(x)
    try:
        return float(Fraction(x))
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"bad number {x!r}") from exc


def scalar_to_json(c: Scalar) -> dict:
    return {"re": _num_to_json(c.re), "im": _num_to_json(c.im)}


def scalar_from_json(obj, exact: bool = True) -> Scalar:
    if isinstance(obj, dict):
        re = _num_from_json(obj.get("re", 0), exact)
        im = _num_from_json(obj.get("im", 0), exact)
    else:
        re, im = _num_from_json(obj, exact), _num_from_json(0, exact)
    return Scalar(re, im)


def _mode_of(terms) -> str:
    return "float" if any(not c.exact for c in terms.values()) else "exact"


def kernel_to_json(k) -> dict:
    if isinstance(k, RealKernel):
        terms = []
        for mono, c in k.terms.items():
            spec = {}
            for lab, m in mono:
                spec.setdefault(lab.kind, {})[str(lab.index)] = m
            terms.append({"monomial": spec, "coef": scalar_to_json(c)})
        return {"space": "real", "degree": k.degree, "mode": _mode_of(k.terms), "terms": terms}
    if isinstance(k, ComplexKernel):
        terms = [{"monomial": {"holo": list(h), "anti": list(a)}, "coef": scalar_to_json(c)}
                 for (h, a), c in k.terms.items()]
        return {"space": "complex", "bidegree": list(k.bidegree),
                "mode": _mode_of(k.terms), "terms": terms}
    raise TypeError(f"not a kernel: {type(k).__name__}")


def _int(x, what):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(f"{what} must be an integer, got {x!r}")
    try:
        return int(x)
    except ValueError as exc:
        raise ParseError(f"{what} must be an integer, got {x!r}") from exc


def kernel_from_json(obj):
    """Decode a kernel document.  Raises ParseError or DomainError."""
    if not isinstance(obj, dict):
        raise ParseError("kernel document must be a JSON object")
    space = obj.get("space")
    mode = obj.get("mode", "exact")
    if mode not in ("exact", "float"):
        raise ParseError(f"unknown mode {mode!r}")
    exact = mode == "exact"
    raw_terms = obj.get("terms", [])
    if not isinstance(raw_terms, list):
        raise ParseError("'terms' must be a list")
    if space == "real":
        if "degree" not in obj:
            raise ParseError("real kernel needs 'degree'")
        degree = _int(obj["degree"], "degree")
        terms = {}
        for t in raw_terms:
            spec = t.get("monomial", {}) if isinstance(t, dict) else None
            if not isinstance(spec, dict):
                raise ParseError("each term needs a 'monomial' object")
            pairs = []
            for kind, inner in spec.items():
                if kind not in ("U", "V") or not isinstance(inner, dict):
                    raise ParseError(f"bad monomial key {kind!r}")
                for idx, m in inner.items():
                    idx, m = _int(idx, "label index"), _int(m, "multiplicity")
                    if idx < 1 or m < 0:
                        raise DomainError(f"bad label {kind}({idx}) with multiplicity {m}")
                    if m:
                        pairs.append((Label(idx, kind), m))
            mono = tuple(sorted(pairs))
            if mono_degree(mono) != degree:
                raise DomainError(
                    f"degree invariant violated: monomial of degree {mono_degree(mono)} in a degree-{degree} kernel")
            c = scalar_from_json(t.get("coef", 1), exact)
            terms[mono] = terms[mono] + c if mono in terms else c
        return RealKernel(degree, terms)
    if space == "complex":
        bd = obj.get("bidegree")
        if not isinstance(bd, list) or len(bd) != 2:
            raise ParseError("complex kernel needs 'bidegree': [p, q]")
        p, q = _int(bd[0], "bidegree"), _int(bd[1], "bidegree")
        terms = {}
        for t in raw_terms:
            spec = t.get("monomial", {}) if isinstance(t, dict) else None
            if not isinstance(spec, dict):
                raise ParseError("each term needs a 'monomial' object")
            holo = tuple(sorted(_int(x, "index") for x in spec.get("holo", [])))
            anti = tuple(sorted(_int(x, "index") for x in spec.get("anti", [])))
            if (len(holo), len(anti)) != (p, q):
                raise DomainError(
                    f"bidegree invariant violated: term of bidegree {(len(holo), len(anti))} in a {(p, q)} kernel")
            c = scalar_from_json(t.get("coef", 1), exact)
            key = (holo, anti)
            terms[key] = terms[key] + c if key in terms else c
        return ComplexKernel((p, q), terms)
    raise ParseError(f"unknown space {space!r}")


def loads_kernel(text: str):
    return kernel_from_json(json.loads(text))


def dumps(obj) -> str:
    return json.dumps(obj, indent=2)


def chaos_to_json(c) -> list:
    """``[[degree or [p, q], kernel], ...]``."""
    from .chaos import RealChaos
    if isinstance(c, RealChaos):
        return [[n, kernel_to_json(k)] for n, k in c.slots.items()]
    return [[list(pq), kernel_to_json(k)] for pq, k in c.slots.items()]


def chaos_from_json(obj):
    from .chaos import ComplexChaos, RealChaos
    if not isinstance(obj, list):
        raise ParseError("chaos document must be a JSON array of [degree, kernel] pairs")
    kernels = []
    for item in obj:
        if not isinstance(item, list) or len(item) != 2:
            raise ParseError("chaos entries must be [degree, kernel] pairs")
        key, doc = item
        k = kernel_from_json(doc)
        expected = k.degree if isinstance(k, RealKernel) else list(k.bidegree)
        if key != expected:
            raise DomainError(f"slot key {key} does not match kernel {expected}")
        kernels.append(k)
    if not kernels:
        return RealChaos()
    if all(isinstance(k, RealKernel) for k in kernels):
        return RealChaos(kernels)
    if all(isinstance(k, ComplexKernel) for k in kernels):
        return ComplexChaos(kernels)
    raise ParseError("chaos mixes real and complex kernels")
