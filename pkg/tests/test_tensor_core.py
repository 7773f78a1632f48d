import random
from fractions import Fraction
from itertools import product

import pytest

from chaoskit.randgen import random_complex_kernel, random_real_kernel
from chaoskit.scalar import I, ModeError, Scalar
from chaoskit.tensor_core import (
    ComplexKernel, DomainError, RealKernel, U, V, conjugate, contract_complex, contract_real,
    inner_product, monomial, symm_product,
)

import oracles

u1 = RealKernel.mono({U(1): 1})
v1 = RealKernel.mono({V(1): 1})


def e(holo, anti, c=1):
    return ComplexKernel.elementary(holo, anti, c)


# -- construction ---------------------------------------------------------

def test_zero_coefficients_not_stored():
    k = RealKernel(1, {monomial({U(1): 1}): 0, monomial({V(1): 1}): 2})
    assert list(k.terms) == [monomial({V(1): 1})]


def test_degree_mismatch_rejected():
    with pytest.raises(DomainError):
        RealKernel(2, {monomial({U(1): 1}): 1})
    with pytest.raises(DomainError):
        ComplexKernel((1, 1), {((1,), ()): 1})


def test_canonical_label_order():
    assert sorted([V(2), U(2), V(1), U(1)]) == [U(1), V(1), U(2), V(2)]


def test_mixed_mode_kernel_rejected():
    with pytest.raises(ModeError):
        RealKernel(1, {monomial({U(1): 1}): 1, monomial({V(1): 1}): 0.5})


# -- symm_product -----------------------------------------------------------

def test_symm_product_examples():
    assert symm_product(u1, v1) == RealKernel.mono({U(1): 1, V(1): 1})
    assert symm_product(u1, u1) == RealKernel.mono({U(1): 2})
    half = Fraction(1, 2)
    got = symm_product(u1 * half + v1 * half, u1)
    assert got == RealKernel(2, {monomial({U(1): 2}): half, monomial({U(1): 1, V(1): 1}): half})


def test_symm_product_matches_dense_oracle():
    rng = random.Random(1)
    for _ in range(30):
        f = random_real_kernel(rng, rng.randint(0, 2), 2)
        g = random_real_kernel(rng, rng.randint(0, 2), 2)
        assert symm_product(f, g) == oracles.dense_symm_product(f, g)
        assert symm_product(f, g) == symm_product(g, f)


# -- contract_real ------------------------------------------------------------

def test_contract_real_examples():
    assert contract_real(u1, u1, 1) == RealKernel.constant(1)
    assert contract_real(RealKernel.mono({U(1): 1, V(1): 1}), u1, 1) == v1 * Fraction(1, 2)
    for j, k in product((1, 2), repeat=2):
        w01 = RealKernel.mono({U(j): 1}) - RealKernel.mono({V(j): 1}) * I
        w10 = RealKernel.mono({U(k): 1}) + RealKernel.mono({V(k): 1}) * I
        assert contract_real(w01, w10, 1) == RealKernel.constant(2 if j == k else 0)


def test_contract_real_r0_is_symm_product():
    f = RealKernel.mono({U(1): 1, V(2): 1})
    assert contract_real(f, u1, 0) == symm_product(f, u1)


def test_contract_real_range():
    with pytest.raises(DomainError):
        contract_real(u1, u1, 2)
    with pytest.raises(DomainError):
        contract_real(u1, u1, -1)


def test_contract_real_matches_dense_oracle():
    # degrees <= 3 over the three labels U(1), V(1), U(2)
    rng = random.Random(2)
    for _ in range(60):
        f = random_real_kernel(rng, rng.randint(0, 3), 1, 3)
        g = random_real_kernel(rng, rng.randint(0, 3), 1, 3)
        if rng.random() < 0.5:
            f = f + RealKernel.mono({U(2): f.degree}) if f.degree else f
        for r in range(min(f.degree, g.degree) + 1):
            got = contract_real(f, g, r)
            assert got == oracles.dense_contract_real(f, g, r)
            assert got == contract_real(g, f, r)


# -- inner product --------------------------------------------------------------

def test_inner_product_examples():
    a = RealKernel.mono({U(1): 2})
    b = RealKernel.mono({U(1): 1, V(1): 1})
    assert inner_product(a, a) == 1
    assert inner_product(b, b) == Fraction(1, 2)
    assert inner_product(a, RealKernel.mono({V(1): 2})) == 0
    with pytest.raises(DomainError):
        inner_product(a, u1)


def test_inner_product_matches_dense_oracle_and_is_sesquilinear():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(0, 3)
        f, g = random_real_kernel(rng, n, 2), random_real_kernel(rng, n, 2)
        assert inner_product(f, g) == oracles.dense_inner(f, g)
        assert inner_product(f, g) == inner_product(g, f).conjugate()
        assert inner_product(f * I, g) == inner_product(f, g) * I
        assert inner_product(f, g * I) == inner_product(f, g) * -I
        nf = inner_product(f, f)
        assert nf.im == 0 and nf.re >= 0


# -- complex kernels ----------------------------------------------------------------

def test_contract_complex_examples():
    assert contract_complex(e([1], []), e([], [1]), 1, 0) == ComplexKernel((0, 0), {((), ()): 2})
    assert contract_complex(e([1], []), e([], [2]), 1, 0).is_zero()
    assert contract_complex(e([1], [1]), e([1], [1]), 1, 1) == ComplexKernel((0, 0), {((), ()): 4})


def test_contract_complex_zero_is_tensor_product():
    got = contract_complex(e([1], [2]), e([3], []), 0, 0)
    assert got == e([1, 3], [2])


def test_contract_complex_range():
    with pytest.raises(DomainError):
        contract_complex(e([1], []), e([1], []), 1, 0)


def test_contract_complex_matches_dense_oracle():
    rng = random.Random(4)
    for _ in range(40):
        f = random_complex_kernel(rng, rng.randint(0, 2), rng.randint(0, 2), 2, 2)
        g = random_complex_kernel(rng, rng.randint(0, 2), rng.randint(0, 2), 2, 2)
        a, b = f.bidegree
        c, d = g.bidegree
        for i in range(min(a, d) + 1):
            for j in range(min(b, c) + 1):
                got = contract_complex(f, g, i, j)
                assert oracles.complex_dense(got) == oracles.dense_contract_complex(f, g, i, j)


def test_conjugate_examples():
    assert conjugate(e([1], [2], I)) == e([2], [1], -I)
    assert conjugate(e([1], [1])) == e([1], [1])
    rng = random.Random(5)
    for _ in range(20):
        f = random_complex_kernel(rng, rng.randint(0, 3), rng.randint(0, 3))
        assert conjugate(conjugate(f)) == f


def test_full_contraction_with_conjugate_is_nonnegative():
    rng = random.Random(6)
    for _ in range(30):
        p, q = rng.randint(0, 3), rng.randint(0, 3)
        f = random_complex_kernel(rng, p, q)
        val = contract_complex(f, conjugate(f), p, q)
        c = val.terms.get(((), ()), Scalar(0, 0))
        assert c.im == 0 and c.re >= 0
        # conjugation is isometric
        assert contract_complex(conjugate(f), f, q, p) == val


def test_float_mode_kernels():
    f = RealKernel(1, {monomial({U(1): 1}): 0.5, monomial({V(1): 1}): Scalar(0.0, 1.0)})
    got = contract_real(f, f, 1)
    assert got.terms[()] == Scalar(0.25 - 1.0, 0.0)
