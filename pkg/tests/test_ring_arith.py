from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from icosa.ring_arith import (
    CycloQuadElem,
    FiniteField,
    NotIntegralError,
    QuadElem,
    is_prime,
    kronecker,
    legendre,
    legendre_5,
    primes_up_to,
    reduce_mod_special_ideal,
    split_prime,
    sqrt_mod_prime,
)

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=12)
quads = st.builds(QuadElem, fracs, fracs)
cyclos = st.builds(CycloQuadElem, fracs, fracs, fracs, fracs)


@given(quads, quads, quads)
def test_quad_field_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x
    if x:
        assert x * x.inverse() == QuadElem(1)


@given(quads, quads)
def test_norm_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()


@given(cyclos, cyclos, cyclos)
def test_cyclo_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    if x:
        assert x / x == CycloQuadElem(1)


def test_sqrt5_and_i():
    r5 = QuadElem.sqrt5()
    assert r5 * r5 == QuadElem(5)
    i = CycloQuadElem.i()
    assert i * i == CycloQuadElem(-1)
    g = QuadElem.golden()  # (-1 + sqrt5)/2
    assert g * g + g == QuadElem(1)


def test_integrality():
    assert QuadElem(Fraction(1, 2), Fraction(1, 2)).is_integral()
    assert not QuadElem(Fraction(1, 2), 0).is_integral()
    assert not QuadElem(0, Fraction(1, 3)).is_integral()


def test_json_round_trip():
    x = CycloQuadElem(Fraction(3, 7), -2, 0, Fraction(1, 5))
    assert CycloQuadElem.from_json(x.to_json()) == x
    y = QuadElem(-23125, -4875)
    assert QuadElem.from_json(y.to_json()) == y


def test_special_ideal_reduction():
    assert reduce_mod_special_ideal(CycloQuadElem.i()) == 2
    assert reduce_mod_special_ideal(QuadElem.sqrt5()) == 0
    assert reduce_mod_special_ideal(CycloQuadElem(Fraction(1, 2))) == 3
    with pytest.raises(NotIntegralError):
        reduce_mod_special_ideal(CycloQuadElem(Fraction(1, 5)))


@given(cyclos, cyclos)
def test_special_ideal_is_homomorphism(x, y):
    try:
        rx, ry = reduce_mod_special_ideal(x), reduce_mod_special_ideal(y)
    except NotIntegralError:
        return
    assert reduce_mod_special_ideal(x * y) == rx * ry % 5
    assert reduce_mod_special_ideal(x + y) == (rx + ry) % 5


def test_primes_against_sympy():
    assert primes_up_to(5000) == list(sympy.primerange(2, 5001))
    assert all(is_prime(n) == sympy.isprime(n) for n in range(-3, 3000))


@given(st.integers(-200, 200), st.sampled_from(list(sympy.primerange(3, 200))))
def test_legendre_against_sympy(a, p):
    expected = 0 if a % p == 0 else sympy.legendre_symbol(a % p, p)
    assert legendre(a, p) == expected


@given(st.integers(-50, 50), st.integers(1, 400))
def test_kronecker_against_sympy(a, n):
    assert kronecker(a, n) == sympy.kronecker_symbol(a, n)


def test_legendre_5_values():
    assert [legendre_5(n) for n in range(10)] == [0, 1, -1, -1, 1, 0, 1, -1, -1, 1]


@pytest.mark.parametrize("p", [11, 19, 29, 31, 41, 59, 61, 71, 1009])
def test_sqrt_mod_prime(p):
    r = sqrt_mod_prime(5, p)
    assert r * r % p == 5 and r <= p - r


@pytest.mark.parametrize("p", [2, 3, 7, 13, 17])
def test_quadratic_extension_field(p):
    F = FiniteField(p, 2)
    elems = list(F.elements())
    assert len(elems) == p * p
    nonzero = [x for x in elems if x]
    assert all(x * x.inverse() == F.one for x in nonzero)
    # multiplicative group is cyclic of order p^2 - 1
    assert all(x ** (p * p - 1) == F.one for x in nonzero)
    assert all(x.frobenius() == x**p for x in elems)
    if p != 2:
        assert F.sqrt5() * F.sqrt5() == F(5)


@pytest.mark.parametrize("p", list(sympy.primerange(2, 400)))
def test_split_prime_types(p):
    ideals = split_prime(p)
    if p == 5:
        assert len(ideals) == 1 and ideals[0].ramified
    elif p % 5 in (1, 4):
        assert [P.norm for P in ideals] == [p, p]
        assert ideals[0].sqrt5_image != ideals[1].sqrt5_image
        assert ideals[0].conjugate() == ideals[1]
    else:
        assert [P.norm for P in ideals] == [p * p]


def test_split_ideals_differ():
    P, Q = split_prime(11)
    assert P != Q and P.label == "11:4" and Q.label == "11:7"


def test_reduce_at_two():
    (P,) = split_prime(2)
    phi = QuadElem(Fraction(1, 2), Fraction(1, 2))
    t = P.reduce(phi)
    assert t * t == t + P.residue_field.one
    with pytest.raises(NotIntegralError):
        P.reduce(QuadElem(Fraction(1, 2)))
