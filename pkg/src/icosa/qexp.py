"""Truncated q-expansions over Q(i, sqrt5) or Z/5^M, with the Maass-form checks."""

from __future__ import annotations

import cmath
import json
import math
from fractions import Fraction
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .ring_arith import CycloQuadElem, NotIntegralError, reduce_mod_special_ideal

__all__ = [
    "EXACT",
    "QExpansion",
    "RingMismatchError",
    "mod_ring",
    "multiply",
    "reduce_series_mod_ideal",
    "is_cuspidal",
    "maass_eval",
    "laplacian_residual",
    "CongruenceRow",
    "congruence_chain",
]

EXACT = "Q(i,sqrt5)"


def mod_ring(ell: int = 5, M: int = 1) -> str:
    return f"Z/{ell}^{M}"


def _modulus(ring: str) -> int | None:
    if ring == EXACT:
        return None
    base, exp = ring[2:].split("^")
    return int(base) ** int(exp)


class RingMismatchError(TypeError):
    pass


@dataclass(frozen=True)
class QExpansion:
    """``sum_{n <= n_max} a(n) q^n``; ``weight`` is carried along but never enforced."""

    ring: str
    coeffs: tuple
    weight: int = 0

    def __post_init__(self):
        mod = _modulus(self.ring)
        if mod is None:
            cs = tuple(CycloQuadElem.coerce(c) for c in self.coeffs)
        else:
            cs = tuple(int(c) % mod for c in self.coeffs)
        if not cs:
            raise ValueError("a q-expansion needs at least the constant term")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def zero(cls, ring: str, n_max: int, weight: int = 0) -> "QExpansion":
        return cls(ring, (0,) * (n_max + 1), weight)

    @classmethod
    def one(cls, ring: str, n_max: int, weight: int = 0) -> "QExpansion":
        return cls(ring, (1,) + (0,) * n_max, weight)

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1

    @property
    def modulus(self) -> int | None:
        return _modulus(self.ring)

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def _check(self, other: "QExpansion") -> None:
        if not isinstance(other, QExpansion):
            raise TypeError("expected a QExpansion")
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def truncate(self, n_max: int) -> "QExpansion":
        return QExpansion(self.ring, self.coeffs[: n_max + 1], self.weight)

    def __add__(self, other: "QExpansion") -> "QExpansion":
        self._check(other)
        n = min(self.n_max, other.n_max)
        return QExpansion(self.ring, tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)), self.weight)

    def __neg__(self) -> "QExpansion":
        return QExpansion(self.ring, tuple(-a for a in self.coeffs), self.weight)

    def __sub__(self, other: "QExpansion") -> "QExpansion":
        return self + (-other)

    def __mul__(self, other: "QExpansion") -> "QExpansion":
        return multiply(self, other)

    def scale(self, c) -> "QExpansion":
        if self.modulus is None:
            c = CycloQuadElem.coerce(c)
        return QExpansion(self.ring, tuple(c * a for a in self.coeffs), self.weight)

    def to_json(self) -> str:
        """JSON array of exact coordinate strings (or residues)."""
        if self.modulus is None:
            payload = [[str(x) for x in c.c] for c in self.coeffs]
        else:
            payload = [str(c) for c in self.coeffs]
        return json.dumps({"ring": self.ring, "weight": self.weight, "coeffs": payload})

    @classmethod
    def from_json(cls, text: str) -> "QExpansion":
        raw = json.loads(text)
        ring = raw["ring"]
        if _modulus(ring) is None:
            coeffs = tuple(CycloQuadElem.from_json(c) for c in raw["coeffs"])
        else:
            coeffs = tuple(int(c) for c in raw["coeffs"])
        return cls(ring, coeffs, int(raw.get("weight", 0)))


def multiply(f: QExpansion, g: QExpansion) -> QExpansion:
    """Cauchy product truncated at the smaller n_max; weights add."""
    f._check(g)
    n = min(f.n_max, g.n_max)
    if f.modulus is not None:
        a, b, mod = f.coeffs, g.coeffs, f.modulus
        out = [sum(a[i] * b[k - i] for i in range(k + 1) if a[i]) % mod for k in range(n + 1)]
        return QExpansion(f.ring, tuple(out), f.weight + g.weight)
    # exact case: clear denominators and multiply integer coordinates
    (a, da), (b, db) = _integer_rows(f.coeffs[: n + 1]), _integer_rows(g.coeffs[: n + 1])
    out = []
    for k in range(n + 1):
        c0 = c1 = c2 = c3 = 0
        for i in range(k + 1):
            x, y = a[i], b[k - i]
            if x is None or y is None:
                continue
            a0, a1, a2, a3 = x
            b0, b1, b2, b3 = y
            c0 += a0 * b0 - a1 * b1 + 5 * (a2 * b2 - a3 * b3)
            c1 += a0 * b1 + a1 * b0 + 5 * (a2 * b3 + a3 * b2)
            c2 += a0 * b2 + a2 * b0 - a1 * b3 - a3 * b1
            c3 += a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1
        d = da * db
        out.append(CycloQuadElem(Fraction(c0, d), Fraction(c1, d), Fraction(c2, d), Fraction(c3, d)))
    return QExpansion(f.ring, tuple(out), f.weight + g.weight)


def _integer_rows(coeffs) -> tuple[list, int]:
    den = math.lcm(*(c.denominator() for c in coeffs)) if coeffs else 1
    rows = [tuple(int(x * den) for x in c.c) if c else None for c in coeffs]
    return rows, den


def reduce_series_mod_ideal(f: QExpansion) -> QExpansion:
    """Coefficient-wise image in Z/5 under (2 - i, sqrt5).

    Series already over Z/5^M are reduced mod 5.
    """
    if f.modulus is not None:
        if f.modulus % 5:
            raise RingMismatchError(f"cannot reduce {f.ring} modulo 5")
        return QExpansion(mod_ring(5, 1), f.coeffs, f.weight)
    out = []
    for n, c in enumerate(f.coeffs):
        try:
            out.append(reduce_mod_special_ideal(c))
        except NotIntegralError as exc:
            raise NotIntegralError(f"coefficient a({n}) = {c} is not 5-integral: {exc}") from None
    return QExpansion(mod_ring(5, 1), tuple(out), f.weight)


def is_cuspidal(f: QExpansion) -> bool:
    return not f.coeffs[0]


def _complex_coeffs(f: QExpansion, sqrt5_sign: int) -> list[complex]:
    if f.modulus is not None:
        raise RingMismatchError("numeric evaluation needs exact coefficients")
    return [c.embed(sqrt5_sign) for c in f.coeffs]


def maass_eval(f: QExpansion, k: int, tau: complex, n_cut: int | None = None, sqrt5_sign: int = 1) -> complex:
    """``sum_{n <= n_cut} a(n) y^(k/2) exp(2 pi i n tau)``."""
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    cs = _complex_coeffs(f, sqrt5_sign)
    n_cut = f.n_max if n_cut is None else min(n_cut, f.n_max)
    q = cmath.exp(2j * math.pi * tau)
    total, qn = 0j, 1 + 0j
    for n in range(n_cut + 1):
        if cs[n]:
            total += cs[n] * qn
        qn *= q
    return total * tau.imag ** (k / 2)


def laplacian_residual(f: QExpansion, k: int, tau: complex, h: float = 1e-3, n_cut: int | None = None) -> float:
    """``|(-y^2 (d_xx + d_yy) + i k y d_x) F - (k/2)(1 - k/2) F|`` by central differences of step h."""
    tau = complex(tau)
    if tau.imag <= 10 * h:
        raise ValueError("step h is too large for Im(tau)")
    x, y = tau.real, tau.imag

    def F(dx: float, dy: float) -> complex:
        return maass_eval(f, k, complex(x + dx, y + dy), n_cut)

    f0 = F(0, 0)
    fxp, fxm, fyp, fym = F(h, 0), F(-h, 0), F(0, h), F(0, -h)
    dxx = (fxp - 2 * f0 + fxm) / h**2
    dyy = (fyp - 2 * f0 + fym) / h**2
    dx = (fxp - fxm) / (2 * h)
    lap = -(y**2) * (dxx + dyy) + 1j * k * y * dx
    return abs(lap - (k / 2) * (1 - k / 2) * f0)


@dataclass(frozen=True)
class CongruenceRow:
    n: int
    rho: int
    f0: int
    f1: int

    @property
    def ok(self) -> bool:
        return self.rho == self.f0 == self.f1

    def to_record(self) -> dict:
        return {"n": self.n, "rho": self.rho, "f0": self.f0, "f1": self.f1, "status": "pass" if self.ok else "fail"}


def congruence_chain(
    rho: Sequence | QExpansion, f0: Sequence | QExpansion, eisenstein: Sequence[int] | QExpansion, M: int = 3
) -> list[CongruenceRow]:
    """Compare rho, f0 and f0 * E modulo (2 - i, sqrt5) index by index.

    ``rho`` and ``f0`` are exact coefficient lists; ``eisenstein`` lives in Z/5^M.
    """
    as_series = lambda s, ring, w: s if isinstance(s, QExpansion) else QExpansion(ring, tuple(s), w)
    r = reduce_series_mod_ideal(as_series(rho, EXACT, 1))
    g = reduce_series_mod_ideal(as_series(f0, EXACT, 2))
    e = reduce_series_mod_ideal(as_series(eisenstein, mod_ring(5, M), 3))
    f1 = multiply(g, e)
    n = min(r.n_max, f1.n_max)
    return [CongruenceRow(k, r[k], g[k], f1[k]) for k in range(1, n + 1)]
