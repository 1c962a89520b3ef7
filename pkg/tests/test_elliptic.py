import pytest
from hypothesis import given, settings, strategies as st

from icosa.elliptic import (
    E0,
    BadReductionError,
    CurveFF,
    CurveQ5,
    FieldTooLargeError,
    SingularCurveError,
    count_points,
    count_points_by_y,
    discriminant,
    hasse_window,
    j_invariant,
    reduce_curve,
)
from icosa.icosahedral import ideals_for
from icosa.ring_arith import FiniteField, QuadElem, split_prime


def brute_force(Ebar):
    F = Ebar.field
    elems = list(F.elements())
    return 1 + sum(1 for x in elems for y in elems if y * y == ((x + Ebar.a2) * x + Ebar.a4) * x + Ebar.a6)


def test_j_invariant_exact():
    assert j_invariant(E0) == QuadElem(86048, -38496)


def test_discriminant_supported_on_bad_primes():
    d = discriminant(E0)
    assert d == QuadElem(2400, -1120)
    assert d.norm() == -(2**12) * 5**3


def test_conjugate_curve():
    assert j_invariant(E0.conjugate()) == j_invariant(E0).conjugate()


def test_singular_rejected():
    with pytest.raises(SingularCurveError):
        CurveQ5(0, 0, 0)


@pytest.mark.parametrize("P", ideals_for(200), ids=lambda P: P.label)
def test_counts_against_brute_force(P):
    Ebar = reduce_curve(E0, P)
    n = count_points(Ebar)
    assert n == count_points_by_y(Ebar) == brute_force(Ebar)
    lo, hi = hasse_window(P.norm)
    assert lo <= n <= hi


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([3, 7, 11, 13, 17, 19]), st.integers(0, 10**6), st.booleans())
def test_random_curves_two_oracles(p, seed, quadratic):
    F = FiniteField(p, 2 if quadratic else 1)
    coeffs = [F.from_index((seed * (k + 7) * 7919) % F.q) for k in range(3)]
    Ebar = CurveFF(*coeffs)
    if Ebar.singular:
        return
    assert count_points(Ebar) == count_points_by_y(Ebar)


def test_bad_reduction():
    with pytest.raises(BadReductionError):
        reduce_curve(E0, split_prime(5)[0], (2, 5))
    with pytest.raises(BadReductionError):
        reduce_curve(E0, split_prime(2)[0])


def test_cap_enforced():
    (P,) = split_prime(1013)  # inert, field of size 1013^2 > 10^6
    with pytest.raises(FieldTooLargeError):
        count_points(reduce_curve(E0, P), cap=10**6)
    (Q,) = split_prime(17)
    with pytest.raises(FieldTooLargeError):
        count_points(reduce_curve(E0, Q), cap=100)


def test_point_count_regression():
    got = {P.label: count_points(reduce_curve(E0, P)) for P in ideals_for(60)}
    assert got == REGRESSION


# frozen after cross-checking against the brute-force count above
REGRESSION = {
    "3:3": 8, "7:7": 44, "11:4": 12, "11:7": 12, "19:9": 24, "19:10": 24, "29:11": 26, "29:18": 34,
    "31:6": 36, "31:25": 28, "41:13": 42, "41:28": 42, "59:8": 56, "59:51": 56,
}
