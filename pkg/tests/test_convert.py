import random
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

import pytest

from chaoskit.chaos import ComplexChaos, RealChaos, eval_complex, eval_real
from chaoskit.convert import (
    coeff_a, coeff_a_tilde, complex_kernel_dense, complex_to_real_chaos, density_check,
    density_verdict, forward_closed_form, forward_recursive, forward_stroock, inverse,
    real_to_complex_chaos, single_chaos_condition, split_uv, vk_prefactor, vk_route, vk_vector,
)
from chaoskit.randgen import random_complex_chaos, random_complex_kernel, random_real_kernel, random_sample
from chaoskit.scalar import I, Scalar, ipow
from chaoskit.tensor_core import (
    ComplexKernel, DomainError, RealKernel, U, V, conjugate, contract_real, symm_product,
)

half = Fraction(1, 2)


def e(holo, anti, c=1):
    return ComplexKernel.elementary(holo, anti, c)


def mono(spec, c=1):
    return RealKernel.mono(spec, c)


def w10(k):
    return mono({U(k): 1}) + mono({V(k): 1}) * I


def w01(k):
    return mono({U(k): 1}) - mono({V(k): 1}) * I


# -- coefficients -----------------------------------------------------------------

def test_coeff_a_small_values():
    # (x + iy)^2 in H-products: H2(x) - H2(y) + 2i H1 H1
    assert [coeff_a(2, 0, j) for j in range(3)] == [-1, 2 * I, 1]
    assert [coeff_a(1, 1, j) for j in range(3)] == [1, 0, 1]
    assert coeff_a(1, 0, 3) == 0


def test_coeff_a_tilde_small_values():
    assert [coeff_a_tilde(1, 0, j) for j in range(2)] == [half, half]
    assert [coeff_a_tilde(0, 1, j) for j in range(2)] == [I * half, -I * half]
    assert coeff_a_tilde(1, 1, 5) == 0


# -- forward routes ------------------------------------------------------------------

def test_forward_recursive_examples():
    assert forward_recursive([3], []) == w10(3)
    assert forward_recursive([], [2]) == w01(2)
    assert forward_recursive([1], [1]) == mono({U(1): 2}) + mono({V(1): 2})
    assert forward_recursive([], []) == RealKernel.constant(1)


def test_forward_closed_form_examples():
    assert forward_closed_form(e([1], [])) == forward_recursive([1], [])
    want = mono({U(1): 2}) - mono({V(1): 2}) + mono({U(1): 1, V(1): 1}, 2 * I)
    assert forward_closed_form(e([1, 1], [])) == want
    assert forward_closed_form(e([1, 2], [])) == symm_product(w10(1), w10(2))


def test_forward_stroock_examples():
    assert forward_stroock(e([1], [])) == w10(1)
    assert forward_stroock(e([1], [1])) == mono({U(1): 2}) + mono({V(1): 2})
    rng = random.Random(40)
    for _ in range(5):
        f = random_complex_kernel(rng, 2, 1)
        assert forward_stroock(f) == forward_closed_form(f)


def test_routes_agree_small():
    for p in range(3):
        for q in range(3 - p):
            for holo in combinations_with_replacement((1, 2), p):
                for anti in combinations_with_replacement((1, 2), q):
                    f = e(holo, anti)
                    r = forward_recursive(holo, anti)
                    assert forward_closed_form(f) == r
                    assert forward_stroock(f) == r


def test_forward_is_linear():
    rng = random.Random(41)
    f, g = random_complex_kernel(rng, 2, 1), random_complex_kernel(rng, 2, 1)
    c = Scalar(Fraction(2, 3), -1)
    assert forward_closed_form(f + g * c) == forward_closed_form(f) + forward_closed_form(g) * c


def test_pathwise_identity():
    rng = random.Random(42)
    for _ in range(20):
        f = random_complex_kernel(rng, rng.randint(0, 3), rng.randint(0, 3), 4)
        g = forward_closed_form(f)
        for _ in range(5):
            s = random_sample(rng, range(1, 5))
            assert eval_complex(ComplexChaos.of(f), s) == eval_real(RealChaos.of(g), s)


def test_conjugate_symmetry():
    rng = random.Random(43)
    for _ in range(20):
        f = random_complex_kernel(rng, rng.randint(0, 3), rng.randint(0, 3))
        assert forward_closed_form(conjugate(f)) == forward_closed_form(f).conj()


def test_vanishing_imaginary_part():
    for p in range(1, 4):
        for idx in combinations_with_replacement((1, 2, 3), p):
            u, v = split_uv(forward_recursive(idx, idx))
            assert v.is_zero() and not u.is_zero()


def test_closed_form_expansion_property():
    # all indices equal to 1, q >= 1:
    # w = sum_{j,l} C(p,j) C(q-1,l) i^(j+l) (-1)^l symm(U^(p+q-j-l-1) V^(j+l) (U - iV))
    for p in range(4):
        for q in range(1, 5 - p):
            total = RealKernel.zero(p + q)
            for j in range(p + 1):
                for l in range(q):
                    n_u, n_v = p + q - j - l - 1, j + l
                    base = RealKernel.mono({U(1): n_u, V(1): n_v}) if n_u + n_v else RealKernel.constant(1)
                    term = symm_product(base, w01(1)) * (ipow(j + l) * (comb(p, j) * comb(q - 1, l) * (-1) ** l))
                    total = total + term
            assert total == forward_recursive([1] * p, [1] * q)


@pytest.mark.parametrize("p,q", [(p, q) for p in range(4) for q in range(5 - p) if p + q <= 4])
def test_B_identity(p, q):
    # (p+q) w_{p,q}(k,j) contracted once with w_{1,0}(k') is sum_r 2 delta(j_r,k') w_{p,q-1}(k, j without j_r)
    for holo in combinations_with_replacement((1, 2), p):
        for anti in combinations_with_replacement((1, 2), q):
            w = forward_recursive(holo, anti)
            for kp in (1, 2):
                if p + q == 0:
                    continue
                lhs = contract_real(w, w10(kp), 1) * (p + q)
                rhs = RealKernel.zero(p + q - 1)
                for r, j in enumerate(anti):
                    if j == kp:
                        rhs = rhs + forward_recursive(holo, anti[:r] + anti[r + 1:]) * 2
                assert lhs == rhs
                # mirrored form against w_{0,1}
                lhs = contract_real(w, w01(kp), 1) * (p + q)
                rhs = RealKernel.zero(p + q - 1)
                for r, k in enumerate(holo):
                    if k == kp:
                        rhs = rhs + forward_recursive(holo[:r] + holo[r + 1:], anti) * 2
                assert lhs == rhs


# -- inverse ---------------------------------------------------------------------------

def test_inverse_examples():
    got = inverse(mono({U(1): 1}))
    assert got == [e([], [1], half), e([1], [], half)]
    got = inverse(mono({U(1): 2}) + mono({V(1): 2}))
    assert got[0].is_zero() and got[2].is_zero() and got[1] == e([1], [1])


def test_roundtrip_forward_then_inverse():
    rng = random.Random(44)
    for _ in range(20):
        p, q = rng.randint(0, 3), rng.randint(0, 2)
        f = random_complex_kernel(rng, p, q)
        slots = inverse(forward_closed_form(f))
        assert [l for l, s in enumerate(slots) if not s.is_zero()] == ([p] if not f.is_zero() else [])
        assert slots[p] == f


def test_roundtrip_inverse_then_forward():
    rng = random.Random(45)
    for _ in range(20):
        g = random_real_kernel(rng, rng.randint(0, 4))
        back = RealKernel.zero(g.degree)
        for f in inverse(g):
            back = back + forward_closed_form(f)
        assert back == g


def test_chaos_level_roundtrip():
    rng = random.Random(46)
    for _ in range(5):
        c = random_complex_chaos(rng)
        assert real_to_complex_chaos(complex_to_real_chaos(c)) == c


def test_single_chaos_condition():
    assert single_chaos_condition(forward_recursive([1], [1])) == 1
    assert single_chaos_condition(mono({U(1): 1})) is None
    assert single_chaos_condition(RealKernel.zero(2)) is None
    assert single_chaos_condition(forward_recursive([1, 2], [])) == 2


# -- density --------------------------------------------------------------------------

def test_density_examples():
    assert density_check([1], [1]) is False
    assert density_check([1], [2]) is True
    assert density_check([1, 2], [1]) is True
    assert density_check([2, 1], [1, 2]) is False
    ok, why = density_verdict([1, 3], [1, 2])
    assert ok and "position 2" in why
    with pytest.raises(DomainError):
        density_check([], [])


# -- V_k machinery ---------------------------------------------------------------------

def test_vk_vectors():
    assert vk_vector(2, 0).entries == (1, I, I, -1)
    assert vk_vector(2, 1).entries == (1, -I, I, 1)
    assert vk_vector(2, 2).entries == (1, -I, -I, -1)
    assert vk_vector(1, 0).entries == (1, I)
    assert vk_vector(1, 1).entries == (1, -I)
    assert vk_vector(0, 0).entries == (1,)
    with pytest.raises(DomainError):
        vk_vector(2, 3)


def test_vk_unit_modulus():
    for p in range(5):
        for k in range(p + 1):
            assert all(v.abs2() == 1 for v in vk_vector(p, k).entries)


def test_vk_prefactor():
    assert vk_prefactor(2, 1) == 1
    assert vk_prefactor(4, 2) == Fraction(6, 4)
    with pytest.raises(DomainError):
        vk_prefactor(3, 1)
    assert vk_prefactor(3, 1, exact=False) == pytest.approx(3 / 8 ** 0.5)


def test_vk_route_agrees_with_inverse():
    rng = random.Random(47)
    for _ in range(10):
        g = random_real_kernel(rng, rng.randint(0, 3), 2)
        via_vk = vk_route(g)
        for k, f in enumerate(inverse(g)):
            assert via_vk[k] == complex_kernel_dense(f)
