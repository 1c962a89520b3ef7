"""Curves y^2 = x^3 + a2 x^2 + a4 x + a6 over Q(sqrt5) and their reductions."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import kernels
from .ring_arith import FFElem, FiniteField, NotIntegralError, PrimeIdeal, QuadElem

__all__ = [
    "CurveQ5",
    "CurveFF",
    "E0",
    "SingularCurveError",
    "BadReductionError",
    "FieldTooLargeError",
    "j_invariant",
    "discriminant",
    "reduce_curve",
    "count_points",
    "count_points_by_y",
    "HARD_CAP",
    "DEFAULT_CAP",
]

HARD_CAP = 10**6
DEFAULT_CAP = 10**5


class SingularCurveError(ValueError):
    pass


class BadReductionError(ValueError):
    pass


class FieldTooLargeError(RuntimeError):
    pass


@dataclass(frozen=True)
class CurveQ5:
    a2: QuadElem
    a4: QuadElem
    a6: QuadElem

    def __post_init__(self):
        for name in ("a2", "a4", "a6"):
            object.__setattr__(self, name, QuadElem.coerce(getattr(self, name)))
        if not discriminant(self):
            raise SingularCurveError(f"singular curve {self}")

    def conjugate(self) -> "CurveQ5":
        return CurveQ5(self.a2.conjugate(), self.a4.conjugate(), self.a6.conjugate())

    def __str__(self):
        return f"y^2 = x^3 + ({self.a2})x^2 + ({self.a4})x + ({self.a6})"


@dataclass(frozen=True)
class CurveFF:
    a2: FFElem
    a4: FFElem
    a6: FFElem

    @property
    def field(self) -> FiniteField:
        return self.a2.field

    @property
    def discriminant(self) -> FFElem:
        return _disc(self.a2, self.a4, self.a6)

    @property
    def singular(self) -> bool:
        return not self.discriminant


def _invariants(a2, a4, a6):
    b2, b4, b6 = 4 * a2, 2 * a4, 4 * a6
    b8 = 4 * a2 * a6 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    delta = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return c4, delta


def _disc(a2, a4, a6):
    return _invariants(a2, a4, a6)[1]


def discriminant(E: CurveQ5) -> QuadElem:
    return _disc(QuadElem.coerce(E.a2), QuadElem.coerce(E.a4), QuadElem.coerce(E.a6))


def j_invariant(E: CurveQ5) -> QuadElem:
    c4, delta = _invariants(E.a2, E.a4, E.a6)
    if not delta:
        raise SingularCurveError("j-invariant of a singular curve")
    return c4 * c4 * c4 / delta


#: The curve y^2 = x^3 + (5 - sqrt5) x^2 + sqrt5 x.
E0 = CurveQ5(QuadElem(5, -1), QuadElem(0, 1), QuadElem(0))
#: Rational primes under the bad set {2, (sqrt5)} of E0.
E0_BAD_PRIMES = (2, 5)


def reduce_curve(E: CurveQ5, P: PrimeIdeal, bad_primes: tuple[int, ...] | None = None) -> CurveFF:
    """Coefficient-wise reduction of ``E`` modulo ``P``.

    Raises :class:`BadReductionError` if the reduction is singular or ``P`` lies over ``bad_primes``.
    """
    if bad_primes is not None and P.p in bad_primes:
        raise BadReductionError(f"{P.label} lies over the bad set {bad_primes}")
    try:
        red = CurveFF(P.reduce(E.a2), P.reduce(E.a4), P.reduce(E.a6))
    except NotIntegralError as exc:
        raise BadReductionError(f"curve is not integral at {P.label}: {exc}") from None
    if red.singular or P.p == 2:
        # the model is never smooth in characteristic 2
        raise BadReductionError(f"bad reduction at the prime above {P.p}")
    return red


def count_points(Ebar: CurveFF, cap: int = DEFAULT_CAP) -> int:
    """#E(F_q) by exhaustive enumeration over x with a square-count table."""
    F = Ebar.field
    if F.q > min(cap, HARD_CAP):
        raise FieldTooLargeError(
            f"field size {F.q} exceeds the enumeration cap {min(cap, HARD_CAP)}; raise --cap (hard limit {HARD_CAP})"
        )
    if F.p == 2:
        raise BadReductionError("characteristic-2 reductions are not supported")
    if F.f == 1:
        return kernels.count_points_fp(Ebar.a2.c0, Ebar.a4.c0, Ebar.a6.c0, F.p)
    return kernels.count_points_fp2(
        Ebar.a2.c0, Ebar.a2.c1, Ebar.a4.c0, Ebar.a4.c1, Ebar.a6.c0, Ebar.a6.c1, F.p, F.d0, F.d1
    )


def count_points_by_y(Ebar: CurveFF, cap: int = DEFAULT_CAP) -> int:
    """Independent count: for every y, count roots x of the cubic x^3 + a2 x^2 + a4 x + a6 - y^2.

    Roots are found by tabulating the cubic's values once; O(q) memory.
    """
    F = Ebar.field
    if F.q > min(cap, HARD_CAP):
        raise FieldTooLargeError(f"field size {F.q} exceeds the cap")
    value_count: dict[FFElem, int] = {}
    for x in F.elements():
        v = ((x + Ebar.a2) * x + Ebar.a4) * x + Ebar.a6
        value_count[v] = value_count.get(v, 0) + 1
    total = 1
    for y in F.elements():
        total += value_count.get(y * y, 0)
    return total


def hasse_window(q: int) -> tuple[float, float]:
    r = 2 * math.sqrt(q)
    return q + 1 - r, q + 1 + r
