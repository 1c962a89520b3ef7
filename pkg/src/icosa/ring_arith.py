"""Exact arithmetic in Q(sqrt5), Q(i, sqrt5), F_p and F_{p^2}.

Elements of Q(sqrt5) are ``QuadElem(a, b)`` meaning ``a + b*sqrt5``; elements
of the biquadratic field Q(i, sqrt5) are ``CycloQuadElem(c0, c1, c2, c3)`` on the
basis ``(1, i, sqrt5, i*sqrt5)``.  Coordinates are :class:`fractions.Fraction`.

Residue fields of primes of Z[(1+sqrt5)/2] are :class:`FiniteField` instances
of degree 1 or 2, and :func:`split_prime` returns the :class:`PrimeIdeal` list
above a rational prime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "QuadElem",
    "CycloQuadElem",
    "FiniteField",
    "FFElem",
    "PrimeIdeal",
    "conjugate",
    "norm",
    "split_prime",
    "reduce_mod_special_ideal",
    "legendre",
    "legendre_5",
    "kronecker",
    "is_prime",
    "primes_up_to",
    "NotIntegralError",
]


class NotIntegralError(ValueError):
    """An element has a denominator that is not invertible where it is reduced."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# Q(sqrt5)


class QuadElem:
    """Element ``a + b*sqrt5`` of Q(sqrt5) with exact rational coordinates."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))

    def __setattr__(self, name, value):
        raise AttributeError("QuadElem is immutable")

    @classmethod
    def coerce(cls, x) -> "QuadElem":
        if isinstance(x, QuadElem):
            return x
        if isinstance(x, (int, Rational, str)):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to QuadElem")

    @classmethod
    def sqrt5(cls) -> "QuadElem":
        return cls(0, 1)

    @classmethod
    def golden(cls) -> "QuadElem":
        """The fundamental unit ``(-1 + sqrt5)/2``."""
        return cls(Fraction(-1, 2), Fraction(1, 2))

    def __repr__(self):
        return f"QuadElem({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        sign = "-" if self.b < 0 else "+"
        return f"{self.a} {sign} {abs(self.b)}*sqrt5"

    def __eq__(self, other):
        try:
            other = QuadElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((QuadElem, self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __neg__(self):
        return QuadElem(-self.a, -self.b)

    def __add__(self, other):
        try:
            other = QuadElem.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadElem(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = QuadElem.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadElem(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return QuadElem.coerce(other) - self

    def __mul__(self, other):
        try:
            other = QuadElem.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.a, self.b, other.a, other.b
        return QuadElem(a * c + 5 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt5)")
        return QuadElem(self.a / n, -self.b / n)

    def __truediv__(self, other):
        try:
            other = QuadElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QuadElem.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result, base = QuadElem(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "QuadElem":
        return QuadElem(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 5 * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integral(self) -> bool:
        """Membership in Z[(1+sqrt5)/2]: ``2b`` and ``a - b`` are integers."""
        return (2 * self.b).denominator == 1 and (self.a - self.b).denominator == 1

    def denominator(self) -> int:
        return math.lcm(self.a.denominator, self.b.denominator)

    def embed(self, sign: int = 1) -> float:
        """Real value under ``sqrt5 -> sign*sqrt(5)``."""
        return float(self.a) + sign * float(self.b) * math.sqrt(5)

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b)}

    @classmethod
    def from_json(cls, obj: dict) -> "QuadElem":
        return cls(Fraction(obj["a"]), Fraction(obj["b"]))


def conjugate(x: QuadElem) -> QuadElem:
    """Galois conjugation ``sqrt5 -> -sqrt5``."""
    return QuadElem.coerce(x).conjugate()


def norm(x: QuadElem) -> Fraction:
    return QuadElem.coerce(x).norm()


# ---------------------------------------------------------------------------
# Q(i, sqrt5)


class CycloQuadElem:
    """Element ``c0 + c1*i + c2*sqrt5 + c3*i*sqrt5`` of Q(i, sqrt5)."""

    __slots__ = ("c",)

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        object.__setattr__(self, "c", (_frac(c0), _frac(c1), _frac(c2), _frac(c3)))

    def __setattr__(self, name, value):
        raise AttributeError("CycloQuadElem is immutable")

    @classmethod
    def coerce(cls, x) -> "CycloQuadElem":
        if isinstance(x, CycloQuadElem):
            return x
        if isinstance(x, QuadElem):
            return cls(x.a, 0, x.b, 0)
        if isinstance(x, (int, Rational, str)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycloQuadElem")

    @classmethod
    def i(cls) -> "CycloQuadElem":
        return cls(0, 1)

    @classmethod
    def from_parts(cls, real: QuadElem, imag: QuadElem) -> "CycloQuadElem":
        """``real + i*imag`` with both parts in Q(sqrt5)."""
        real, imag = QuadElem.coerce(real), QuadElem.coerce(imag)
        return cls(real.a, imag.a, real.b, imag.b)

    @property
    def real_part(self) -> QuadElem:
        return QuadElem(self.c[0], self.c[2])

    @property
    def imag_part(self) -> QuadElem:
        return QuadElem(self.c[1], self.c[3])

    def __repr__(self):
        return "CycloQuadElem({}, {}, {}, {})".format(*self.c)

    def __str__(self):
        names = ("", "i", "sqrt5", "i*sqrt5")
        terms = []
        for coeff, name in zip(self.c, names):
            if coeff == 0:
                continue
            if not name:
                terms.append(str(coeff))
            elif coeff == 1:
                terms.append(name)
            elif coeff == -1:
                terms.append("-" + name)
            else:
                terms.append(f"{coeff}*{name}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __eq__(self, other):
        try:
            other = CycloQuadElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        if self.c[1] == 0 and self.c[3] == 0:
            return hash(QuadElem(self.c[0], self.c[2]))
        return hash((CycloQuadElem, self.c))

    def __bool__(self):
        return any(self.c)

    def __neg__(self):
        return CycloQuadElem(*(-x for x in self.c))

    def __add__(self, other):
        try:
            other = CycloQuadElem.coerce(other)
        except TypeError:
            return NotImplemented
        return _cyclo(tuple(x + y for x, y in zip(self.c, other.c)))

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = CycloQuadElem.coerce(other)
        except TypeError:
            return NotImplemented
        return CycloQuadElem(*(x - y for x, y in zip(self.c, other.c)))

    def __rsub__(self, other):
        return CycloQuadElem.coerce(other) - self

    def __mul__(self, other):
        try:
            other = CycloQuadElem.coerce(other)
        except TypeError:
            return NotImplemented
        a0, a1, a2, a3 = self.c
        b0, b1, b2, b3 = other.c
        # i^2 = -1, sqrt5^2 = 5, (i sqrt5)^2 = -5
        return _cyclo((
            a0 * b0 - a1 * b1 + 5 * (a2 * b2 - a3 * b3),
            a0 * b1 + a1 * b0 + 5 * (a2 * b3 + a3 * b2),
            a0 * b2 + a2 * b0 - a1 * b3 - a3 * b1,
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        ))

    __rmul__ = __mul__

    def complex_conjugate(self) -> "CycloQuadElem":
        """The automorphism ``i -> -i``."""
        a, b, c, d = self.c
        return CycloQuadElem(a, -b, c, -d)

    def sqrt5_conjugate(self) -> "CycloQuadElem":
        """The automorphism ``sqrt5 -> -sqrt5``."""
        a, b, c, d = self.c
        return CycloQuadElem(a, b, -c, -d)

    def relative_norm(self) -> QuadElem:
        """Norm down to Q(sqrt5): ``x * complex_conjugate(x)``."""
        r, s = self.real_part, self.imag_part
        return r * r + s * s

    def inverse(self) -> "CycloQuadElem":
        n = self.relative_norm()
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(i, sqrt5)")
        inv = n.inverse()
        return self.complex_conjugate() * CycloQuadElem.coerce(inv)

    def __truediv__(self, other):
        try:
            other = CycloQuadElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result, base = CycloQuadElem(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def denominator(self) -> int:
        return math.lcm(*(x.denominator for x in self.c))

    def embed(self, sqrt5_sign: int = 1, i_sign: int = 1) -> complex:
        """Complex value under ``sqrt5 -> ±sqrt(5)`` and ``i -> ±1j``."""
        r = self.real_part.embed(sqrt5_sign)
        s = self.imag_part.embed(sqrt5_sign)
        return complex(r, i_sign * s)

    def to_json(self) -> dict:
        return {f"c{k}": str(x) for k, x in enumerate(self.c)}

    @classmethod
    def from_json(cls, obj) -> "CycloQuadElem":
        if isinstance(obj, dict):
            if "a" in obj:
                return cls.coerce(QuadElem.from_json(obj))
            return cls(*(Fraction(obj.get(f"c{k}", "0")) for k in range(4)))
        if isinstance(obj, (list, tuple)):
            return cls(*(Fraction(x) for x in obj))
        return cls(Fraction(obj))


def _cyclo(c: tuple) -> CycloQuadElem:
    # trusted constructor: coordinates are already Fractions or ints
    out = object.__new__(CycloQuadElem)
    object.__setattr__(out, "c", tuple(x if isinstance(x, Fraction) else Fraction(x) for x in c))
    return out


def reduce_mod_special_ideal(x) -> int:
    """Image of ``x`` in Z/5 under the ideal (2 - i, sqrt5): ``i -> 2``, ``sqrt5 -> 0``.

    Raises :class:`NotIntegralError` if a coordinate has a denominator divisible by 5.
    """
    x = CycloQuadElem.coerce(x)
    c0, c1 = x.c[0], x.c[1]
    for k, coeff in enumerate(x.c):
        if coeff.denominator % 5 == 0:
            raise NotIntegralError(f"coordinate c{k} = {coeff} is not 5-integral")
    return (_mod_frac(c0, 5) + 2 * _mod_frac(c1, 5)) % 5


def _mod_frac(x: Fraction, p: int) -> int:
    den = x.denominator % p
    if den == 0:
        raise NotIntegralError(f"{x} has denominator divisible by {p}")
    return x.numerator * pow(den, -1, p) % p


# ---------------------------------------------------------------------------
# rational primes and symbols


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for k in range(2, math.isqrt(n) + 1):
        if sieve[k]:
            sieve[k * k :: k] = bytearray(len(range(k * k, n + 1, k)))
    return [k for k, flag in enumerate(sieve) if flag]


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def legendre_5(n: int) -> int:
    """The character (5/n): +1 if n = 1, 4 mod 5, -1 if n = 2, 3, 0 if 5 | n."""
    return (0, 1, -1, -1, 1)[n % 5]


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 1."""
    if n <= 0:
        raise ValueError("kronecker symbol needs n >= 1")
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n), n odd
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod_prime(a: int, p: int) -> int:
    """Smallest non-negative square root of ``a`` modulo the prime ``p`` (Tonelli-Shanks)."""
    a %= p
    if a == 0 or p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError(f"{a} is not a square mod {p}")
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        k, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            k += 1
        b = pow(c, 1 << (m - k - 1), p)
        m, c, t, r = k, b * b % p, t * b * b % p, r * b % p
    return min(r, p - r)


# ---------------------------------------------------------------------------
# finite fields of degree 1 and 2


class FiniteField:
    """F_p (degree 1) or F_p[t]/(t^2 - d1*t - d0) (degree 2).

    For odd p the quadratic extension uses ``t^2 = 5`` when 5 is a non-residue,
    otherwise the smallest positive non-residue.  F_4 uses ``t^2 = t + 1``.
    """

    __slots__ = ("p", "f", "d0", "d1", "q")

    def __init__(self, p: int, f: int = 1, d0: int | None = None, d1: int = 0):
        if f not in (1, 2):
            raise ValueError("only degrees 1 and 2 are supported")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "f", f)
        if f == 2 and d0 is None:
            if p == 2:
                d0, d1 = 1, 1
            elif legendre(5, p) == -1:
                d0 = 5
            else:
                d0 = next(r for r in range(2, p) if legendre(r, p) == -1)
        object.__setattr__(self, "d0", (d0 or 0) % p)
        object.__setattr__(self, "d1", d1 % p)
        object.__setattr__(self, "q", p**f)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteField is immutable")

    def __eq__(self, other):
        if not isinstance(other, FiniteField):
            return NotImplemented
        return (self.p, self.f, self.d0, self.d1) == (other.p, other.f, other.d0, other.d1)

    def __hash__(self):
        return hash((self.p, self.f, self.d0, self.d1))

    def __repr__(self):
        if self.f == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^2, t^2={self.d1}t+{self.d0})"

    def __call__(self, c0=0, c1=0) -> "FFElem":
        if isinstance(c0, FFElem):
            if c0.field != self:
                raise ValueError("element belongs to a different field")
            return c0
        if isinstance(c0, Fraction):
            c0 = _mod_frac(c0, self.p)
        if isinstance(c1, Fraction):
            c1 = _mod_frac(c1, self.p)
        if self.f == 1 and c1 % self.p:
            raise ValueError("degree-1 field has no t coordinate")
        return FFElem(self, c0 % self.p, c1 % self.p)

    @property
    def zero(self) -> "FFElem":
        return FFElem(self, 0, 0)

    @property
    def one(self) -> "FFElem":
        return FFElem(self, 1, 0)

    @property
    def gen(self) -> "FFElem":
        if self.f == 1:
            raise ValueError("degree-1 field has no generator t")
        return FFElem(self, 0, 1)

    def elements(self):
        p = self.p
        if self.f == 1:
            for a in range(p):
                yield FFElem(self, a, 0)
        else:
            for b in range(p):
                for a in range(p):
                    yield FFElem(self, a, b)

    def from_index(self, k: int) -> "FFElem":
        return FFElem(self, k % self.p, k // self.p)

    def sqrt5(self) -> "FFElem":
        """A square root of 5 in this field (the smaller one for degree 1)."""
        p = self.p
        if self.f == 1:
            return FFElem(self, sqrt_mod_prime(5, p), 0)
        if p == 2:
            return self.one
        if self.d1 == 0 and self.d0 == 5:
            return self.gen
        if legendre(5, p) >= 0:
            return FFElem(self, sqrt_mod_prime(5, p), 0)
        # 5 = d0 * u^2 for some u in F_p, so sqrt5 = u * t
        u = sqrt_mod_prime(5 * pow(self.d0, -1, p), p)
        return FFElem(self, 0, u)


@lru_cache(maxsize=None)
def _cached_field(p: int, f: int) -> FiniteField:
    return FiniteField(p, f)


class FFElem:
    """Element ``c0 + c1*t`` of a :class:`FiniteField`."""

    __slots__ = ("field", "c0", "c1")

    def __init__(self, field: FiniteField, c0: int, c1: int = 0):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "c0", c0)
        object.__setattr__(self, "c1", c1)

    def __setattr__(self, name, value):
        raise AttributeError("FFElem is immutable")

    def _coerce(self, other) -> "FFElem":
        if isinstance(other, FFElem):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return FFElem(self.field, other % self.field.p, 0)
        if isinstance(other, Fraction):
            return FFElem(self.field, _mod_frac(other, self.field.p), 0)
        raise TypeError(f"cannot coerce {type(other).__name__} into {self.field}")

    def __repr__(self):
        if self.field.f == 1:
            return f"{self.c0} mod {self.field.p}"
        return f"({self.c0} + {self.c1}t) in {self.field}"

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.c0 == other.c0 and self.c1 == other.c1

    def __hash__(self):
        return hash((self.field, self.c0, self.c1))

    def __bool__(self):
        return bool(self.c0 or self.c1)

    def __int__(self):
        if self.c1:
            raise ValueError("element is not in the prime field")
        return self.c0

    def index(self) -> int:
        return self.c0 + self.field.p * self.c1

    def __neg__(self):
        p = self.field.p
        return FFElem(self.field, -self.c0 % p, -self.c1 % p)

    def __add__(self, other):
        other = self._coerce(other)
        p = self.field.p
        return FFElem(self.field, (self.c0 + other.c0) % p, (self.c1 + other.c1) % p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        p = self.field.p
        return FFElem(self.field, (self.c0 - other.c0) % p, (self.c1 - other.c1) % p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        F = self.field
        p = F.p
        a, b, c, d = self.c0, self.c1, other.c0, other.c1
        bd = b * d
        return FFElem(F, (a * c + bd * F.d0) % p, (a * d + b * c + bd * F.d1) % p)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def norm(self) -> int:
        """Norm to F_p."""
        F = self.field
        if F.f == 1:
            return self.c0
        # N(a + b t) = a^2 + a b d1 - b^2 d0 for t^2 = d1 t + d0
        a, b = self.c0, self.c1
        return (a * a + a * b * F.d1 - b * b * F.d0) % F.p

    def frobenius(self) -> "FFElem":
        F = self.field
        if F.f == 1:
            return self
        # the other root of t^2 - d1 t - d0 is d1 - t
        p = F.p
        return FFElem(F, (self.c0 + self.c1 * F.d1) % p, -self.c1 % p)

    def inverse(self) -> "FFElem":
        if not self:
            raise ZeroDivisionError(f"inverse of zero in {self.field}")
        F = self.field
        if F.f == 1:
            return FFElem(F, pow(self.c0, -1, F.p), 0)
        n_inv = pow(self.norm(), -1, F.p)
        conj = self.frobenius()
        return FFElem(F, conj.c0 * n_inv % F.p, conj.c1 * n_inv % F.p)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def is_square(self) -> bool:
        if not self:
            return True
        F = self.field
        if F.p == 2:
            return True
        return legendre(self.norm(), F.p) == 1 if F.f == 2 else legendre(self.c0, F.p) == 1


# ---------------------------------------------------------------------------
# primes of Z[(1+sqrt5)/2]


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime of Q(sqrt5) above ``p``, described by its residue field and the image of sqrt5."""

    p: int
    f: int
    norm: int
    sqrt5_image: FFElem
    ramified: bool = False

    @property
    def residue_field(self) -> FiniteField:
        return self.sqrt5_image.field

    @property
    def label(self) -> str:
        """Stable text label ``p:r`` where r is the sqrt5 image index."""
        return f"{self.p}:{self.sqrt5_image.index()}"

    def sort_key(self) -> tuple:
        return (self.p, self.sqrt5_image.index())

    def reduce(self, x) -> FFElem:
        """Reduce an element of Q(sqrt5) into the residue field."""
        x = QuadElem.coerce(x)
        F = self.residue_field
        if self.p == 2:
            # F_4 = F_2[t]/(t^2 + t + 1) with t the image of (1 + sqrt5)/2
            u, v = x.a - x.b, 2 * x.b
            if u.denominator % 2 == 0 or v.denominator % 2 == 0:
                raise NotIntegralError(f"{x} is not integral at the prime above 2")
            return F(u, v)
        try:
            return F(x.a) + F(x.b) * self.sqrt5_image
        except NotIntegralError:
            raise NotIntegralError(f"{x} is not integral at the prime above {self.p}") from None

    def is_integral_at(self, x) -> bool:
        try:
            self.reduce(x)
        except NotIntegralError:
            return False
        return True

    def conjugate(self) -> "PrimeIdeal":
        """The Galois-conjugate ideal (equal to self unless p splits)."""
        if self.f == 2 or self.ramified:
            return self
        return next(P for P in split_prime(self.p) if P.sqrt5_image != self.sqrt5_image)


def split_prime(p: int) -> list[PrimeIdeal]:
    """Primes of Z[(1+sqrt5)/2] above the rational prime ``p``.

    Split primes come back ordered by the integer value of their sqrt5 image.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not a rational prime")
    return list(_split_prime_cached(p))


@lru_cache(maxsize=4096)
def _split_prime_cached(p: int) -> tuple[PrimeIdeal, ...]:
    if p == 5:
        F = _cached_field(5, 1)
        return (PrimeIdeal(5, 1, 5, F.zero, True),)
    if p % 5 in (1, 4):
        F = _cached_field(p, 1)
        r = sqrt_mod_prime(5, p)
        roots = sorted({r, p - r})
        return tuple(PrimeIdeal(p, 1, p, F(s)) for s in roots)
    F = _cached_field(p, 2)
    s5 = F.sqrt5()
    return (PrimeIdeal(p, 2, p * p, s5),)


def prime_ideals_up_to(max_norm: int, exclude: tuple[int, ...] = ()) -> list[PrimeIdeal]:
    """All prime ideals with norm at most ``max_norm``, sorted by (p, sqrt5 image)."""
    out = []
    for p in primes_up_to(max_norm):
        if p in exclude:
            continue
        for P in split_prime(p):
            if P.norm <= max_norm:
                out.append(P)
    return out
