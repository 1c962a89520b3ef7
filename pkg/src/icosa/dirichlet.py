"""Dirichlet characters, partial L-series, theta series and 5-adic Eisenstein coefficients."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

from . import kernels
from .polyfactor import FFPoly, degree_pattern, is_squarefree
from .ring_arith import CycloQuadElem, FiniteField, is_prime, legendre_5, primes_up_to

__all__ = [
    "DirichletChar",
    "char_eval",
    "l_partial_sum",
    "euler_partial_product",
    "zeta_tail_bound",
    "theta_sum_identity_residual",
    "theta_cutoff",
    "theta_eval",
    "theta_functional_ratio",
    "quadratic_frobenius",
    "factor_golden_quadratic",
    "bernoulli_number",
    "bernoulli_polynomial",
    "gen_bernoulli",
    "l_value_negative",
    "teichmuller_lift",
    "sqrt_minus_one",
    "EisensteinSeries",
    "eisenstein_coeffs",
    "PrecisionError",
]


class PrecisionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class DirichletChar:
    """A character mod ``modulus`` given by its values on units; 0 off units.

    Values are exact elements of Q(i) stored as :class:`CycloQuadElem`.
    """

    modulus: int
    table: tuple[CycloQuadElem, ...]
    name: str = ""

    @classmethod
    def from_function(cls, modulus: int, fn: Callable[[int], object], name: str = "") -> "DirichletChar":
        table = []
        for a in range(modulus):
            table.append(CycloQuadElem.coerce(fn(a)) if math.gcd(a, modulus) == 1 else CycloQuadElem(0))
        chi = cls(modulus, tuple(table), name)
        chi.check()
        return chi

    @classmethod
    def trivial(cls, modulus: int = 1) -> "DirichletChar":
        return cls.from_function(modulus, lambda a: 1, f"trivial mod {modulus}")

    @classmethod
    def legendre5(cls) -> "DirichletChar":
        """The quadratic character (5/.) = (./5)."""
        return cls.from_function(5, legendre_5, "(5/.)")

    @classmethod
    def teichmuller5(cls, power: int = 1) -> "DirichletChar":
        """omega^power, omega the order-4 character mod 5 with omega(2) = i."""
        powers = {1: 0, 2: 1, 4: 2, 3: 3}  # 2^k mod 5
        i_pows = [CycloQuadElem(1), CycloQuadElem.i(), CycloQuadElem(-1), -CycloQuadElem.i()]
        return cls.from_function(5, lambda a: i_pows[(powers[a % 5] * power) % 4], f"omega^{power} mod 5")

    def __call__(self, n: int) -> CycloQuadElem:
        return self.table[n % self.modulus]

    def check(self) -> None:
        N = self.modulus
        if self(1) != CycloQuadElem(1):
            raise ValueError("character must send 1 to 1")
        for a in range(N):
            for b in range(N):
                if self(a * b) != self(a) * self(b):
                    raise ValueError(f"table is not multiplicative at ({a}, {b})")

    def parity(self) -> int:
        """chi(-1) as +1 or -1."""
        v = self(-1)
        return 1 if v == CycloQuadElem(1) else -1

    def conjugate(self) -> "DirichletChar":
        return DirichletChar(self.modulus, tuple(v.complex_conjugate() for v in self.table), f"conj({self.name})")

    def is_trivial(self) -> bool:
        return all(v == CycloQuadElem(1) for a, v in enumerate(self.table) if math.gcd(a, self.modulus) == 1)

    def is_primitive(self) -> bool:
        N = self.modulus
        for d in range(1, N):
            if N % d:
                continue
            # chi factors through (Z/d)^x iff it is trivial on units = 1 mod d
            if all(self(a) == CycloQuadElem(1) for a in range(1, N, d) if math.gcd(a, N) == 1):
                return False
        return True

    def complex_values(self, sqrt5_sign: int = 1) -> list[complex]:
        return [v.embed(sqrt5_sign) for v in self.table]


def char_eval(chi: DirichletChar, n: int) -> CycloQuadElem:
    return chi(n)


# ---------------------------------------------------------------------------
# partial L-series


def l_partial_sum(chi: DirichletChar, s: complex, n_max: int) -> complex:
    """``sum_{n <= n_max} chi(n) n^-s`` in double precision (compiled kernel when available)."""
    s = complex(s)
    return complex(kernels.dirichlet_partial_sum(chi.complex_values(), s.real, s.imag, int(n_max)))


def euler_partial_product(chi: DirichletChar, s: complex, p_max: int) -> complex:
    """``prod_{p <= p_max} (1 - chi(p) p^-s)^-1``."""
    s = complex(s)
    vals = chi.complex_values()
    log_total = 0j
    for p in primes_up_to(int(p_max)):
        v = vals[p % chi.modulus]
        if v:
            log_total -= cmath.log(1 - v * cmath.exp(-s * math.log(p)))
    return cmath.exp(log_total)


def zeta_tail_bound(sigma: float, n_max: int) -> float:
    """Upper bound for ``sum_{n > n_max} n^-sigma`` (sigma > 1)."""
    return n_max ** (1 - sigma) / (sigma - 1)


# ---------------------------------------------------------------------------
# theta series


def theta_sum_identity_residual(y: float, tail_tol: float = 1e-12) -> float:
    """|sum (5/n) e^{-ny} - (e^{3y} - e^y) / (1 + e^y + ... + e^{4y})|.

    The right side is rewritten with e^{-y} so it stays finite for large y.
    """
    if not y > 0:
        raise ValueError("y must be positive")
    # tail after n_cut is below sum_{n > n_cut} e^{-ny} = e^{-(n_cut+1) y} / (1 - e^{-y})
    n_cut = 1
    while math.exp(-(n_cut + 1) * y) / -math.expm1(-y) >= tail_tol:
        n_cut += 1
    lhs = math.fsum(legendre_5(n) * math.exp(-n * y) for n in range(1, n_cut + 1))
    u = math.exp(-y)
    rhs = (u - u**3) / (1 + u + u**2 + u**3 + u**4)
    return abs(lhs - rhs)


def theta_cutoff(tau: complex) -> int:
    """Smallest n with pi n^2 Im(tau) > 40."""
    y = complex(tau).imag
    return math.isqrt(int(40 / (math.pi * y))) + 1 if y < 40 / math.pi else 1


def theta_eval(chi: DirichletChar, tau: complex, n_cut: int | None = None) -> complex:
    """``sum_{n >= 1} chi(n) n^eps exp(pi i n^2 tau)``, eps = 0 for even chi and 1 for odd."""
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    if n_cut is None:
        n_cut = theta_cutoff(tau)
    eps = 0 if chi.parity() == 1 else 1
    vals = chi.complex_values()
    total = 0j
    for n in range(1, n_cut + 1):
        v = vals[n % chi.modulus]
        if v:
            total += v * n**eps * cmath.exp(1j * math.pi * n * n * tau)
    return total


def theta_functional_ratio(chi: DirichletChar, tau: complex) -> complex:
    """``theta_conj(chi)(-1/(N^2 tau)) / (N^(eps+1/2) (tau/i)^(eps+1/2) theta_chi(tau))``.

    Constant in tau, with unit modulus, for primitive chi.
    """
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    if not chi.is_primitive():
        raise ValueError("functional equation needs a primitive character")
    N = chi.modulus
    eps = 0 if chi.parity() == 1 else 1
    denom_theta = theta_eval(chi, tau)
    if abs(denom_theta) < 1e-300:
        raise ZeroDivisionError("theta vanishes numerically at tau")
    lhs = theta_eval(chi.conjugate(), -1 / (N * N * tau))
    return lhs / (N ** (eps + 0.5) * (tau / 1j) ** (eps + 0.5) * denom_theta)


# ---------------------------------------------------------------------------
# x^2 + x - 1 modulo p


def quadratic_frobenius(p: int) -> str:
    """Factor type of x^2 + x - 1 mod p: ``"split"``, ``"inert"`` or ``"ramified"``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    F = FiniteField(p)
    f = FFPoly(F, [-1, 1, 1])
    if not is_squarefree(f):
        return "ramified"
    return "split" if degree_pattern(f) == (1, 1) else "inert"


FROBENIUS_SIGN = {"split": 1, "inert": -1, "ramified": 0}


def factor_golden_quadratic(p: int) -> list[tuple[int, ...]]:
    """Monic factors of x^2 + x - 1 mod p as coefficient tuples (highest first), with multiplicity."""
    roots = [r for r in range(p) if (r * r + r - 1) % p == 0]
    if not roots:
        return [(1, 1, -1 % p)]
    if len(roots) == 1:
        return [(1, -roots[0] % p)] * 2
    return sorted((1, -r % p) for r in roots)


# ---------------------------------------------------------------------------
# Bernoulli numbers


@lru_cache(maxsize=None)
def bernoulli_number(k: int) -> Fraction:
    """B_k with B_1 = -1/2, from sum_{j<=k} C(k+1, j) B_j = 0."""
    if k == 0:
        return Fraction(1)
    acc = Fraction(0)
    for j in range(k):
        acc += math.comb(k + 1, j) * bernoulli_number(j)
    return -acc / (k + 1)


def bernoulli_polynomial(k: int, x: Fraction) -> Fraction:
    x = Fraction(x)
    return sum((math.comb(k, j) * bernoulli_number(j) * x ** (k - j) for j in range(k + 1)), Fraction(0))


def gen_bernoulli(k: int, chi: DirichletChar) -> CycloQuadElem:
    """B_{k,chi} = N^(k-1) sum_{a=1}^{N} chi(a) B_k(a/N), exact."""
    if k < 1:
        raise ValueError("k must be positive")
    N = chi.modulus
    total = CycloQuadElem(0)
    for a in range(1, N + 1):
        v = chi(a)
        if v:
            total = total + v * CycloQuadElem(bernoulli_polynomial(k, Fraction(a, N)))
    return total * CycloQuadElem(Fraction(N) ** (k - 1))


def l_value_negative(chi: DirichletChar, k: int) -> CycloQuadElem:
    """L(chi, 1 - k) = -B_{k,chi} / k."""
    return gen_bernoulli(k, chi) * CycloQuadElem(Fraction(-1, k))


# ---------------------------------------------------------------------------
# 5-adic Eisenstein series


def _hensel_root(poly: Callable[[int], int], dpoly: Callable[[int], int], x0: int, p: int, prec: int) -> int:
    x, mod = x0 % p, p
    while mod < p**prec:
        mod = min(mod * mod, p**prec)
        x = (x - poly(x) * pow(dpoly(x), -1, mod)) % mod
    return x


def teichmuller_lift(d: int, ell: int = 5, prec: int = 3) -> int:
    """The (ell-1)-th root of unity in Z/ell^prec congruent to d mod ell (0 if ell | d)."""
    if d % ell == 0:
        return 0
    e = ell - 1
    return _hensel_root(lambda x: pow(x, e) - 1, lambda x: e * pow(x, e - 1), d, ell, prec)


def sqrt_minus_one(residue: int = 2, ell: int = 5, prec: int = 3) -> int:
    """Square root of -1 in Z/ell^prec congruent to ``residue`` mod ell."""
    if (residue * residue + 1) % ell:
        raise ValueError(f"{residue} is not a square root of -1 mod {ell}")
    return _hensel_root(lambda x: x * x + 1, lambda x: 2 * x, residue, ell, prec)


def _padic(x: CycloQuadElem, i_residue: int, ell: int, prec: int) -> tuple[int, int]:
    """(valuation, unit mod ell^prec) of an element of Q(i) under i -> sqrt(-1) = i_residue mod ell."""
    if x.c[2] or x.c[3]:
        raise ValueError("expected an element of Q(i)")
    if not x:
        raise PrecisionError("zero has no valuation")
    den = math.lcm(x.c[0].denominator, x.c[1].denominator)
    A, B = int(x.c[0] * den), int(x.c[1] * den)
    v_den = 0
    while den % ell == 0:
        den //= ell
        v_den += 1
    # any multiple of (i - i_residue)^n divides the norm A^2 + B^2, so this precision is enough
    work = prec + math.ceil(math.log(A * A + B * B + 1, ell)) + 2
    mod = ell**work
    z = (A + B * sqrt_minus_one(i_residue, ell, work)) % mod
    v = 0
    while z % ell == 0:
        z //= ell
        v += 1
    unit = z * pow(den, -1, ell**prec) % ell**prec
    return v - v_den, unit


@dataclass(frozen=True)
class EisensteinSeries:
    ell: int
    weight: int
    w: int
    precision: int
    i_residue: int
    coeffs: tuple[int, ...]

    @property
    def modulus(self) -> int:
        return self.ell**self.precision

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1

    def reduce(self, modulus: int) -> tuple[int, ...]:
        return tuple(c % modulus for c in self.coeffs)


def eisenstein_coeffs(
    w: int = 3, ell: int = 5, k: int = 3, M: int = 3, n_max: int = 200, i_residue: int = 2
) -> EisensteinSeries:
    """a_n = 2 sum_{d | n} eps(d)^-w d^(k-1) / L(eps^-w, 1 - k) in Z/ell^M, a_0 = 1.

    ``eps`` is the order-4 character mod 5 with values in Q(i), pushed into Z/5^M
    by sending i to the square root of -1 congruent to ``i_residue``.
    """
    if ell != 5:
        raise ValueError("only ell = 5 is supported")
    chi = DirichletChar.teichmuller5(-w)
    L = l_value_negative(chi, k)
    if not L:
        raise PrecisionError(f"L(eps^-{w}, {1 - k}) vanishes (parity of w and k differ)")
    v, unit = _padic(L, i_residue, ell, M)
    if v > 0:
        raise PrecisionError(f"L-value is divisible by {ell}^{v}; coefficients are not {ell}-integral")
    mod = ell**M
    scale = 2 * ell ** (-v) * pow(unit, -1, mod) % mod
    i_val = sqrt_minus_one(i_residue, ell, M)
    char_mod = [0] * ell
    for a in range(1, ell):
        val = chi(a)
        char_mod[a] = (int(val.c[0]) + int(val.c[1]) * i_val) % mod
    coeffs = [1]
    for n in range(1, n_max + 1):
        total = 0
        for d in _divisors(n):
            if d % ell:
                total += char_mod[d % ell] * pow(d, k - 1, mod)
        coeffs.append(total * scale % mod)
    return EisensteinSeries(ell, k, w, M, i_residue, tuple(coeffs))


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]
