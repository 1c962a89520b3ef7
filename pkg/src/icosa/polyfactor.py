"""Univariate polynomials over F_p and F_{p^2} and distinct-degree factor patterns."""

from __future__ import annotations

from typing import Iterable, Sequence

from .ring_arith import FFElem, FiniteField

__all__ = ["FFPoly", "is_squarefree", "degree_pattern", "NotSquarefreeError"]


class NotSquarefreeError(ValueError):
    pass


class FFPoly:
    """Polynomial with coefficients in one :class:`FiniteField`, stored low degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Iterable = ()):
        cs = [field(c) if not isinstance(c, FFElem) else c for c in coeffs]
        for c in cs:
            if c.field != field:
                raise ValueError("coefficients from different fields")
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs: tuple[FFElem, ...] = tuple(cs)

    @classmethod
    def x(cls, field: FiniteField) -> "FFPoly":
        return cls(field, [field.zero, field.one])

    @classmethod
    def constant(cls, field: FiniteField, c) -> "FFPoly":
        return cls(field, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> FFElem:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, FFPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return f"FFPoly(0 over {self.field})"
        terms = []
        for k, c in reversed(list(enumerate(self.coeffs))):
            if not c:
                continue
            coef = f"{c.c0}" if self.field.f == 1 else f"({c.c0}+{c.c1}t)"
            terms.append(coef if k == 0 else f"{coef}*x^{k}")
        return f"FFPoly({' + '.join(terms)} over {self.field})"

    def __call__(self, x) -> FFElem:
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _check(self, other: "FFPoly") -> None:
        if other.field != self.field:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: "FFPoly") -> "FFPoly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        zero = self.field.zero
        return FFPoly(self.field, [(a[k] if k < len(a) else zero) + (b[k] if k < len(b) else zero) for k in range(n)])

    def __neg__(self) -> "FFPoly":
        return FFPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: "FFPoly") -> "FFPoly":
        return self + (-other)

    def __mul__(self, other) -> "FFPoly":
        if isinstance(other, (FFElem, int)):
            return FFPoly(self.field, [c * other for c in self.coeffs])
        self._check(other)
        if not self or not other:
            return FFPoly(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return FFPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "FFPoly":
        result, base = FFPoly.constant(self.field, self.field.one), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "FFPoly") -> tuple["FFPoly", "FFPoly"]:
        self._check(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        inv_lc = other.lc.inverse()
        quot = [self.field.zero] * max(len(rem) - d, 0)
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k] * inv_lc
            if not c:
                continue
            quot[k - d] = c
            for j, b in enumerate(other.coeffs):
                rem[k - d + j] = rem[k - d + j] - c * b
        return FFPoly(self.field, quot), FFPoly(self.field, rem[:d])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "FFPoly":
        if not self:
            return self
        return self * self.lc.inverse()

    def derivative(self) -> "FFPoly":
        return FFPoly(self.field, [c * k for k, c in enumerate(self.coeffs)][1:])

    def gcd(self, other: "FFPoly") -> "FFPoly":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def powmod(self, e: int, modulus: "FFPoly") -> "FFPoly":
        """``self**e mod modulus`` by square-and-multiply."""
        result = FFPoly.constant(self.field, self.field.one) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result


def poly_from_ints(field: FiniteField, coeffs: Sequence) -> FFPoly:
    """Build a polynomial from coefficients given highest degree first."""
    return FFPoly(field, [field(c) for c in reversed(list(coeffs))])


def is_squarefree(f: FFPoly) -> bool:
    if not f:
        raise ValueError("zero polynomial has no squarefree decomposition")
    if f.degree <= 0:
        return True
    return f.gcd(f.derivative()).degree == 0


def degree_pattern(f: FFPoly) -> tuple[int, ...]:
    """Sorted degrees of the irreducible factors of a squarefree polynomial.

    Distinct-degree splitting: peel ``gcd(f, x^(q^d) - x)`` for d = 1, 2, ...
    """
    if not is_squarefree(f):
        raise NotSquarefreeError("degree_pattern needs a squarefree polynomial")
    F = f.field
    q = F.q
    rest = f.monic()
    x = FFPoly.x(F)
    xq = x % rest if rest.degree > 0 else x
    pattern: list[int] = []
    d = 0
    while rest.degree > 0:
        d += 1
        if 2 * d > rest.degree:
            pattern.append(rest.degree)
            break
        xq = xq.powmod(q, rest)
        g = rest.gcd(xq - x)
        if g.degree > 0:
            pattern.extend([d] * (g.degree // d))
            rest = rest // g
            xq = xq % rest if rest.degree > 0 else xq
    return tuple(sorted(pattern))
