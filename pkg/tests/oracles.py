"""Independent reference implementations used by the tests.

Nothing here reuses the package's combinatorial weights: tensors are expanded
densely and symmetrised by averaging over every permutation, Hermite values
come from generating-function series, and Gaussian expectations come from
moment substitution.
"""

from fractions import Fraction
from itertools import permutations, product
from math import factorial

import sympy as sp

from chaoskit.scalar import Scalar
from chaoskit.tensor_core import ComplexKernel, RealKernel


# ---------------------------------------------------------------------------
# dense real tensors over orthonormal labels: dict word(tuple of labels) -> Scalar

def _add(d, k, v):
    d[k] = d[k] + v if k in d else v


def _symmetrise(dense, n):
    out = {}
    perms = list(permutations(range(n)))
    w = Fraction(1, len(perms))
    for word, c in dense.items():
        for s in perms:
            _add(out, tuple(word[i] for i in s), c * w)
    return {k: v for k, v in out.items() if not v.is_zero()}


def real_dense(k: RealKernel):
    """symm of each monomial word, by brute-force averaging."""
    raw = {}
    for mono, c in k.terms.items():
        word = tuple(lab for lab, m in mono for _ in range(m))
        _add(raw, word, c)
    return _symmetrise(raw, k.degree)


def dense_to_real(dense, n) -> RealKernel:
    """Read monomial coefficients back off a symmetric dense tensor."""
    terms = {}
    for word, c in dense.items():
        mono = tuple(sorted((lab, word.count(lab)) for lab in set(word)))
        mult = 1
        for _, m in mono:
            mult *= factorial(m)
        terms[mono] = c * Fraction(factorial(n), mult)
    return RealKernel(n, terms)


def dense_symm_product(f: RealKernel, g: RealKernel) -> RealKernel:
    df, dg = real_dense(f), real_dense(g)
    raw = {}
    for a, ca in df.items():
        for b, cb in dg.items():
            _add(raw, a + b, ca * cb)
    n = f.degree + g.degree
    return dense_to_real(_symmetrise(raw, n), n)


def dense_contract_real(f: RealKernel, g: RealKernel, r: int) -> RealKernel:
    """Pair the last r slots of f with the first r slots of g, then symmetrise."""
    df, dg = real_dense(f), real_dense(g)
    p, q = f.degree, g.degree
    raw = {}
    for a, ca in df.items():
        for b, cb in dg.items():
            if a[p - r:] == b[:r]:
                _add(raw, a[:p - r] + b[r:], ca * cb)
    n = p + q - 2 * r
    return dense_to_real(_symmetrise(raw, n), n)


def dense_inner(f: RealKernel, g: RealKernel):
    df, dg = real_dense(f), real_dense(g)
    total = Scalar(0, 0)
    for w, c in df.items():
        if w in dg:
            total = total + c * dg[w].conjugate()
    return total


# ---------------------------------------------------------------------------
# dense complex tensors over the real family e1_k, e2_k
# (e_k = e1_k + i e2_k, conj e_k = e1_k - i e2_k); keys are (holo_word, anti_word)

def _complex_word(indices, sign):
    """Expansion of e_{k1} (x) ... as dict word -> Scalar, sign=+1 for e, -1 for conj e."""
    out = {(): Scalar(1, 0)}
    for k in indices:
        nxt = {}
        for w, c in out.items():
            _add(nxt, w + ((k, 1),), c)
            _add(nxt, w + ((k, 2),), c * Scalar(0, sign))
        out = nxt
    return out


def complex_dense(f: ComplexKernel):
    p, q = f.bidegree
    out = {}
    for (holo, anti), c in f.terms.items():
        hp = list(permutations(holo))
        ap = list(permutations(anti))
        w = Fraction(1, len(hp) * len(ap))
        for h in hp:
            for a in ap:
                eh = _complex_word(h, 1)
                ea = _complex_word(a, -1)
                for wh, ch in eh.items():
                    for wa, ca in ea.items():
                        _add(out, (wh, wa), c * ch * ca * w)
    return {k: v for k, v in out.items() if not v.is_zero()}


def _symmetrise_groups(dense):
    out = {}
    for (h, a), c in dense.items():
        hp = list(permutations(range(len(h))))
        ap = list(permutations(range(len(a))))
        w = Fraction(1, len(hp) * len(ap))
        for s in hp:
            for t in ap:
                _add(out, (tuple(h[i] for i in s), tuple(a[i] for i in t)), c * w)
    return {k: v for k, v in out.items() if not v.is_zero()}


def dense_contract_complex(f: ComplexKernel, g: ComplexKernel, i: int, j: int):
    """Dense (i, j) contraction: f's first i holo slots against g's first i anti
    slots, f's first j anti slots against g's first j holo slots, real bilinear
    pairing of the e1/e2 family."""
    df, dg = complex_dense(f), complex_dense(g)
    raw = {}
    for (h1, a1), c1 in df.items():
        for (h2, a2), c2 in dg.items():
            if h1[:i] == a2[:i] and a1[:j] == h2[:j]:
                _add(raw, (h1[i:] + h2[j:], a1[j:] + a2[i:]), c1 * c2)
    return _symmetrise_groups(raw)


# ---------------------------------------------------------------------------
# generating functions

_t, _x = sp.symbols("t x")
_a, _b, _z, _zb = sp.symbols("a b z zb")


def hermite_series(n: int):
    """H_n as a sympy polynomial in x from exp(t x - t^2/2)."""
    ser = sp.series(sp.exp(_t * _x - _t ** 2 / 2), _t, 0, n + 1).removeO()
    return sp.expand(ser.coeff(_t, n) * factorial(n))


_J_CACHE = {}


def complex_hermite_series(p: int, q: int):
    """J_{p,q} as a polynomial in independent symbols z, zb.

    Coefficient of a^p b^q (times p! q!) in exp(a z + b zb - 2 a b), the
    generating function with a = conj(lambda), b = lambda.
    """
    if (p, q) not in _J_CACHE:
        n = p + q
        expr = 0
        # truncated exponential series in the total degree of (a, b)
        inner = _a * _z + _b * _zb - 2 * _a * _b
        for m in range(n + 1):
            expr += inner ** m / factorial(m)
        poly = sp.Poly(sp.expand(expr), _a, _b)
        coef = poly.coeff_monomial(_a ** p * _b ** q)
        _J_CACHE[(p, q)] = sp.expand(coef * factorial(p) * factorial(q))
    return _J_CACHE[(p, q)]


def eval_complex_hermite_series(p: int, q: int, re, im) -> Scalar:
    expr = complex_hermite_series(p, q)
    zval = sp.Rational(re) + sp.I * sp.Rational(im)
    val = sp.expand(expr.subs({_z: zval, _zb: sp.conjugate(zval)}))
    r, i = val.as_real_imag()
    return Scalar(Fraction(int(sp.numer(r)), int(sp.denom(r))), Fraction(int(sp.numer(i)), int(sp.denom(i))))


# ---------------------------------------------------------------------------
# Gaussian expectations by moment substitution

def gaussian_moment(k: int) -> int:
    """E[X^k] for a standard normal X."""
    if k % 2:
        return 0
    out = 1
    for j in range(1, k, 2):
        out *= j
    return out


def real_chaos_polynomial(kernel: RealKernel):
    """I_n(kernel) as a sympy polynomial in x_k, y_k using the series Hermite."""
    expr = 0
    for mono, c in kernel.terms.items():
        term = sp.Rational(c.re) + sp.I * sp.Rational(c.im)
        for lab, m in mono:
            var = sp.Symbol(("x" if lab.kind == "U" else "y") + str(lab.index))
            term *= hermite_series(m).subs(_x, var)
        expr += term
    return sp.expand(expr)


def gaussian_expectation(expr):
    """E[expr] with all free symbols i.i.d. standard normal."""
    expr = sp.expand(expr)
    syms = sorted(expr.free_symbols, key=str)
    if not syms:
        return expr
    poly = sp.Poly(expr, *syms)
    total = 0
    for powers, c in poly.terms():
        w = 1
        for k in powers:
            w *= gaussian_moment(k)
        total += c * w
    return sp.nsimplify(total)


def all_multisets(items, size):
    """Sorted tuples of length ``size`` drawn with repetition."""
    return sorted({tuple(sorted(t)) for t in product(items, repeat=size)})
