"""Traces of Frobenius for the icosahedral representation attached to a curve over Q(sqrt5).

Pipeline per prime ideal P outside the bad set:

1. reduce the quintic resolvent ``(x+3)^3 (x^2 + 11x + 64) - j(E)`` mod P and read
   its factor-degree pattern;
2. the pattern gives ``a(P)^2 / omega(NP)`` from a four-entry table;
3. the sign of the square root is fixed by ``a(P) = NP + 1 - #E(F_P)`` in the
   residue field Z/5 of the ideal (2 - i, sqrt5) of Q(i, sqrt5).
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from pathlib import Path
from typing import Iterable, Mapping

from .elliptic import DEFAULT_CAP, E0, E0_BAD_PRIMES, CurveQ5, count_points, j_invariant, reduce_curve
from .polyfactor import FFPoly, degree_pattern, is_squarefree
from .ring_arith import (
    CycloQuadElem,
    PrimeIdeal,
    QuadElem,
    kronecker,
    legendre_5,
    primes_up_to,
    reduce_mod_special_ideal,
    split_prime,
)

__all__ = [
    "A5_PATTERNS",
    "TRACE_TABLE",
    "IntegrityError",
    "NonIcosahedralPatternError",
    "DegenerateResolventError",
    "TraceResult",
    "EulerFactor",
    "LSeriesCoeffs",
    "nebentype",
    "resolvent",
    "trace_squared_from_pattern",
    "resolve_trace",
    "resolve_traces",
    "euler_factor",
    "dirichlet_coeffs",
    "verify_qcurve_relation",
    "verify_twist_conditions",
    "load_chi_table",
    "ideals_for",
    "verify_qcurve",
    "assemble_coefficients",
    "point_count_factor",
    "twist_factor",
    "QCurveCheck",
    "twist_character_table",
    "dump_chi_table",
]


class IntegrityError(RuntimeError):
    """The pattern table, point count and ideal reduction disagree."""


class NonIcosahedralPatternError(IntegrityError):
    pass


class DegenerateResolventError(IntegrityError):
    """The resolvent has a repeated factor modulo a prime outside the bad set."""


_GOLDEN_PLUS = QuadElem(Fraction(-1, 2), Fraction(1, 2))
_GOLDEN_MINUS = QuadElem(Fraction(-1, 2), Fraction(-1, 2))

#: Factor-degree patterns of the conjugacy classes of A5 acting on five letters.
A5_PATTERNS: dict[tuple[int, ...], str] = {
    (1, 1, 1, 1, 1): "linear",
    (1, 2, 2): "quadratics",
    (1, 1, 3): "cubic",
    (5,): "quintic",
}

#: a(P)^2 / omega(NP) for each pattern, with the roots a(P) / sqrt(omega(NP)).
TRACE_TABLE: dict[str, tuple[tuple[QuadElem, tuple[QuadElem, ...]], ...]] = {
    "linear": ((QuadElem(4), (QuadElem(2), QuadElem(-2))),),
    "quadratics": ((QuadElem(0), (QuadElem(0),)),),
    "cubic": ((QuadElem(1), (QuadElem(1), QuadElem(-1))),),
    "quintic": (
        (_GOLDEN_PLUS * _GOLDEN_PLUS, (_GOLDEN_PLUS, -_GOLDEN_PLUS)),
        (_GOLDEN_MINUS * _GOLDEN_MINUS, (_GOLDEN_MINUS, -_GOLDEN_MINUS)),
    ),
}


def nebentype(P: PrimeIdeal, convention: str = "teichmuller") -> int:
    """omega_5(NP) for a prime ideal not above 5.

    ``"teichmuller"`` evaluates the order-4 character mod 5 at NP, i.e. the sign
    with omega = NP mod 5.  ``"legendre"`` is (5/p); the two differ exactly for
    split p = 4 mod 5.
    """
    if P.ramified or P.p == 5:
        raise ValueError("nebentype is undefined at the ramified prime (sqrt5)")
    if convention == "teichmuller":
        return 1 if P.norm % 5 == 1 else -1
    if convention == "legendre":
        return legendre_5(P.p)
    raise ValueError(f"unknown nebentype convention {convention!r}")


def resolvent(E: CurveQ5, P: PrimeIdeal, bad_primes: Iterable[int] = E0_BAD_PRIMES) -> FFPoly:
    """``(x+3)^3 (x^2 + 11x + 64) - j(E)`` reduced modulo ``P``."""
    if P.p in tuple(bad_primes):
        raise ValueError(f"{P.label} lies in the excluded set")
    F = P.residue_field
    jbar = P.reduce(j_invariant(E))
    cubed = FFPoly(F, [3, 1]) ** 3
    return cubed * FFPoly(F, [64, 11, 1]) - FFPoly.constant(F, jbar)


def trace_squared_from_pattern(pattern: Iterable[int], omega: int) -> tuple[CycloQuadElem, ...]:
    """Table values ``a^2`` (times omega) for a factor-degree pattern."""
    key = tuple(sorted(pattern))
    if key not in A5_PATTERNS:
        raise NonIcosahedralPatternError(f"non-icosahedral pattern {key}")
    return tuple(CycloQuadElem.coerce(v * omega) for v, _ in TRACE_TABLE[A5_PATTERNS[key]])


def _roots_for(name: str, omega: int) -> list[tuple[CycloQuadElem, CycloQuadElem]]:
    # (a^2, a) pairs; omega = -1 puts the roots on the imaginary axis
    unit = CycloQuadElem(1) if omega == 1 else CycloQuadElem.i()
    out = []
    for v, roots in TRACE_TABLE[name]:
        sq = CycloQuadElem.coerce(v * omega)
        for r in roots:
            out.append((sq, CycloQuadElem.coerce(r) * unit))
    return out


def _golden_key(c: CycloQuadElem) -> Fraction:
    # sqrt5 coefficient of the real or imaginary part, whichever carries it
    return c.c[2] if c.c[2] else c.c[3]


@dataclass(frozen=True)
class TraceResult:
    ideal: PrimeIdeal
    omega: int
    point_count: int
    pattern: tuple[int, ...] | None
    a_squared: tuple[CycloQuadElem, ...]
    candidates: tuple[CycloQuadElem, ...]
    chosen: CycloQuadElem | None
    golden_ambiguous: bool
    degenerate: bool = False

    @property
    def point_trace(self) -> int:
        """NP + 1 - #E(F_P)."""
        return self.ideal.norm + 1 - self.point_count

    def to_record(self) -> dict:
        P = self.ideal
        return {
            "p": P.p,
            "f": P.f,
            "norm": P.norm,
            "sqrt5_image": P.sqrt5_image.index(),
            "pattern": list(self.pattern) if self.pattern is not None else None,
            "omega": self.omega,
            "a_squared": [v.to_json() for v in self.a_squared],
            "candidates": [c.to_json() for c in self.candidates],
            "chosen": self.chosen.to_json() if self.chosen is not None else None,
            "golden_ambiguous": self.golden_ambiguous,
            "degenerate_resolvent": self.degenerate,
            "point_count": self.point_count,
        }


def resolve_trace(
    E: CurveQ5,
    P: PrimeIdeal,
    *,
    bad_primes: Iterable[int] = E0_BAD_PRIMES,
    cap: int = DEFAULT_CAP,
    strict: bool = True,
    convention: str = "teichmuller",
) -> TraceResult:
    """Trace of Frobenius at ``P`` from the pattern table, sign fixed by point counting.

    With ``strict=False`` a non-squarefree resolvent is tolerated: the table rows
    are then filtered by the point-count congruence alone and the result is
    flagged ``degenerate``.
    """
    bad_primes = tuple(bad_primes)
    if P.p in bad_primes:
        raise ValueError(f"{P.label} lies in the excluded set {bad_primes}")
    omega = nebentype(P, convention)
    Ebar = reduce_curve(E, P, bad_primes)
    count = count_points(Ebar, cap)
    t = (P.norm + 1 - count) % 5

    f = resolvent(E, P, bad_primes)
    degenerate = not is_squarefree(f)
    if degenerate:
        if strict:
            raise DegenerateResolventError(f"resolvent is not squarefree modulo the prime {P.label}")
        pattern = None
        rows = [r for name in TRACE_TABLE for r in _roots_for(name, omega)]
        rows = [(sq, c) for sq, c in rows if reduce_mod_special_ideal(sq) == t * t % 5]
    else:
        pattern = degree_pattern(f)
        if pattern not in A5_PATTERNS:
            raise NonIcosahedralPatternError(f"pattern {pattern} at {P.label} is not an A5 cycle type")
        rows = _roots_for(A5_PATTERNS[pattern], omega)

    a_squared = tuple(dict.fromkeys(sq for sq, _ in rows))
    candidates = tuple(dict.fromkeys(c for _, c in rows if reduce_mod_special_ideal(c) == t))
    if not candidates:
        raise IntegrityError(
            f"no trace candidate at {P.label} is congruent to NP + 1 - #E = {P.norm + 1 - count} "
            f"(pattern {pattern}, omega {omega})"
        )
    golden = pattern == (5,)
    if len(candidates) == 1:
        chosen = candidates[0]
    elif golden:
        chosen = max(candidates, key=_golden_key)
    else:
        chosen = None
    return TraceResult(P, omega, count, pattern, a_squared, candidates, chosen, golden, degenerate)


def _thread_count(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    return max(1, int(os.environ.get("ICOSA_THREADS", "1")))


def resolve_traces(
    E: CurveQ5,
    ideals: Iterable[PrimeIdeal],
    *,
    workers: int | None = None,
    **kwargs,
) -> list[TraceResult]:
    """:func:`resolve_trace` over many ideals; output sorted by (p, sqrt5 image)."""
    ideals = sorted(ideals, key=PrimeIdeal.sort_key)
    n = _thread_count(workers)
    if n == 1:
        return [resolve_trace(E, P, **kwargs) for P in ideals]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(lambda P: resolve_trace(E, P, **kwargs), ideals))


def ideals_for(max_norm: int, bad_primes: Iterable[int] = E0_BAD_PRIMES) -> list[PrimeIdeal]:
    bad = tuple(bad_primes)
    out = []
    for p in primes_up_to(max_norm):
        if p in bad:
            continue
        out.extend(P for P in split_prime(p) if P.norm <= max_norm)
    return out


# ---------------------------------------------------------------------------
# Euler factors and Dirichlet coefficients


@dataclass(frozen=True)
class EulerFactor:
    """``1 - a X + c X^2`` with ``X = NP^(-s)``; ``c`` is omega(NP), or chi^2 omega when twisted."""

    ideal: PrimeIdeal
    a: CycloQuadElem
    omega: CycloQuadElem
    norm: int

    def series(self, r_max: int) -> list[CycloQuadElem]:
        """Coefficients of ``X^0 .. X^r_max`` in the inverse of the factor."""
        out = [CycloQuadElem(1), self.a]
        while len(out) <= r_max:
            out.append(self.a * out[-1] - self.omega * out[-2])
        return out[: r_max + 1]

    def to_record(self) -> dict:
        return {
            "p": self.ideal.p,
            "norm": self.norm,
            "sqrt5_image": self.ideal.sqrt5_image.index(),
            "a": self.a.to_json(),
            "constant": self.omega.to_json(),
        }


def euler_factor(E: CurveQ5, P: PrimeIdeal, *, trace: TraceResult | None = None, **kwargs) -> EulerFactor:
    tr = trace if trace is not None else resolve_trace(E, P, **kwargs)
    if tr.chosen is None:
        raise IntegrityError(f"trace at {P.label} is not determined")
    return EulerFactor(P, tr.chosen, CycloQuadElem(tr.omega), P.norm)


def point_count_factor(tr: TraceResult) -> EulerFactor:
    """Local factor of the curve itself: ``1 - (NP + 1 - #E) X + NP X^2``."""
    P = tr.ideal
    return EulerFactor(P, CycloQuadElem(tr.point_trace), CycloQuadElem(P.norm), P.norm)


def twist_factor(factor: EulerFactor, chi_value: CycloQuadElem) -> EulerFactor:
    chi_value = CycloQuadElem.coerce(chi_value)
    return EulerFactor(factor.ideal, chi_value * factor.a, chi_value * chi_value * factor.omega, factor.norm)


@dataclass(frozen=True)
class LSeriesCoeffs:
    """Dirichlet coefficients ``sum_{N(I) = n} a(I)`` of a product of Euler factors over ideals."""

    n_max: int
    coeffs: tuple[CycloQuadElem, ...]
    excluded: tuple[int, ...] = field(default=E0_BAD_PRIMES)

    def __getitem__(self, n: int) -> CycloQuadElem:
        if not 1 <= n <= self.n_max:
            raise IndexError(n)
        return self.coeffs[n]

    def as_list(self) -> list[CycloQuadElem]:
        """Coefficients ``a(0) .. a(n_max)`` with ``a(0) = 0``."""
        return list(self.coeffs)


def assemble_coefficients(
    factors: Mapping[int, list[EulerFactor]], n_max: int, excluded: Iterable[int] = E0_BAD_PRIMES
) -> LSeriesCoeffs:
    """Expand ``prod_P (1 - a_P X_P + c_P X_P^2)^(-1)`` into a Dirichlet series in ``n``."""
    excluded = tuple(excluded)
    zero, one = CycloQuadElem(0), CycloQuadElem(1)
    prime_power: dict[int, list[CycloQuadElem]] = {}
    for p in primes_up_to(n_max):
        kmax = 0
        while p ** (kmax + 1) <= n_max:
            kmax += 1
        local = [one] + [zero] * kmax
        if p not in excluded:
            if p not in factors:
                raise KeyError(f"missing Euler factors above {p}")
            for fac in factors[p]:
                step = 1 if fac.norm == p else 2
                ser = fac.series(kmax // step)
                expanded = [zero] * (kmax + 1)
                for r, c in enumerate(ser):
                    expanded[r * step] = c
                local = [
                    sum((local[i] * expanded[k - i] for i in range(k + 1)), zero) for k in range(kmax + 1)
                ]
        prime_power[p] = local

    coeffs = [zero] * (n_max + 1)
    coeffs[1] = one
    smallest = _smallest_prime_factors(n_max)
    for n in range(2, n_max + 1):
        p = smallest[n]
        m, k = n, 0
        while m % p == 0:
            m //= p
            k += 1
        coeffs[n] = prime_power[p][k] * coeffs[m]
    return LSeriesCoeffs(n_max, tuple(coeffs), excluded)


def _smallest_prime_factors(n: int) -> list[int]:
    spf = list(range(n + 1))
    for k in range(2, isqrt(n) + 1):
        if spf[k] == k:
            for m in range(k * k, n + 1, k):
                if spf[m] == m:
                    spf[m] = k
    return spf


def dirichlet_coeffs(
    E: CurveQ5 = E0,
    n_max: int = 200,
    bad_primes: Iterable[int] = E0_BAD_PRIMES,
    *,
    chi: Mapping[str, CycloQuadElem] | None = None,
    source: str = "table",
    traces: Iterable[TraceResult] | None = None,
    cap: int = DEFAULT_CAP,
) -> LSeriesCoeffs:
    """Dirichlet coefficients of the icosahedral L-series (``source="table"``) or of the
    curve itself (``source="points"``), optionally twisted by ``chi`` (keyed by ideal label).

    Ideals whose resolvent degenerates are resolved by the congruence alone.
    """
    bad = tuple(bad_primes)
    if n_max < 1 or n_max > 10**5:
        raise ValueError("n_max must lie in [1, 100000]")
    if traces is None:
        traces = resolve_traces(E, ideals_for(n_max, bad), bad_primes=bad, cap=cap, strict=False)
    by_prime: dict[int, list[EulerFactor]] = {}
    for tr in traces:
        if tr.ideal.norm > n_max:
            continue
        if source == "table":
            fac = euler_factor(E, tr.ideal, trace=tr)
        elif source == "points":
            fac = point_count_factor(tr)
        else:
            raise ValueError(f"unknown coefficient source {source!r}")
        if chi is not None:
            if tr.ideal.label not in chi:
                raise KeyError(f"twist character undefined at {tr.ideal.label}")
            fac = twist_factor(fac, chi[tr.ideal.label])
        by_prime.setdefault(tr.ideal.p, []).append(fac)
    for p in primes_up_to(n_max):
        if p not in bad and p not in by_prime:
            by_prime[p] = []  # inert primes with p^2 > n_max contribute nothing below n_max
    return assemble_coefficients(by_prime, n_max, bad)


# ---------------------------------------------------------------------------
# q-curve relation and twist conditions


@dataclass(frozen=True)
class QCurveCheck:
    p: int
    sign: int
    status: str  # "pass", "fail" or "trivial"
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "fail"


def verify_qcurve_relation(tr: TraceResult, tr_sigma: TraceResult) -> QCurveCheck:
    """Check ``a(sigma P) = (-2 / NP) a(P)`` for the two ideals above a split prime.

    Golden-ambiguous traces are compared as candidate sets.
    """
    P, Q = tr.ideal, tr_sigma.ideal
    if P.p != Q.p:
        raise ValueError("ideals lie over different primes")
    if P.f == 2 or P == Q:
        return QCurveCheck(P.p, 1, "trivial", "inert prime: sigma P = P")
    sign = kronecker(-2, P.norm)
    if tr.golden_ambiguous or tr_sigma.golden_ambiguous:
        lhs = set(tr_sigma.candidates)
        rhs = {c * sign for c in tr.candidates}
        ok = lhs == rhs
    else:
        ok = tr.chosen is not None and tr_sigma.chosen == tr.chosen * sign
    detail = f"a(P)={tr.chosen}, a(sigma P)={tr_sigma.chosen}, (-2/{P.norm})={sign}"
    return QCurveCheck(P.p, sign, "pass" if ok else "fail", detail)


def verify_qcurve(E: CurveQ5 = E0, max_p: int = 2000, **kwargs) -> list[QCurveCheck]:
    """Run :func:`verify_qcurve_relation` for every prime up to ``max_p`` outside the bad set."""
    bad = tuple(kwargs.pop("bad_primes", E0_BAD_PRIMES))
    out = []
    for p in primes_up_to(max_p):
        if p in bad:
            continue
        ideals = split_prime(p)
        if len(ideals) == 1:
            out.append(QCurveCheck(p, 1, "trivial", "inert prime: sigma P = P"))
            continue
        traces = [resolve_trace(E, P, bad_primes=bad, strict=False, **kwargs) for P in ideals]
        out.append(verify_qcurve_relation(traces[0], traces[1]))
    return out


def twist_character_table(max_norm: int, bad_primes: Iterable[int] = E0_BAD_PRIMES) -> dict[str, CycloQuadElem]:
    """A twist character on the good ideals of norm <= ``max_norm``.

    Values are fixed one prime at a time so that ``chi(P)^2 omega(NP) = (-1/NP)`` and
    ``chi(sigma P) = (-2/p) chi(P)``: the first ideal above a split p gets the
    root of ``(-1/p) omega(p)`` among {1, i}, the second one the (-2/p) multiple;
    inert primes get i. Deterministic, but not derived from a ray class group.
    """
    one, i = CycloQuadElem(1), CycloQuadElem.i()
    table: dict[str, CycloQuadElem] = {}
    for P in ideals_for(max_norm, bad_primes):
        if P.f == 2:
            table[P.label] = i
            continue
        first, second = split_prime(P.p)
        base = one if kronecker(-1, P.p) * nebentype(P) == 1 else i
        table[first.label] = base
        table[second.label] = base * kronecker(-2, P.p)
    return dict(sorted(table.items(), key=lambda kv: tuple(int(x) for x in kv[0].split(":"))))


def dump_chi_table(chi: Mapping[str, CycloQuadElem]) -> str:
    values = {k: v.to_json() for k, v in chi.items()}
    return json.dumps({"values": values}, indent=1) + "\n"


def load_chi_table(path: str | os.PathLike) -> dict[str, CycloQuadElem]:
    """Read a twist character: JSON object mapping ideal labels ``"p:r"`` to coordinates."""
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    values = raw.get("values", raw) if isinstance(raw, dict) else raw
    return {str(k): CycloQuadElem.from_json(v) for k, v in values.items()}


def verify_twist_conditions(
    chi: Mapping[str, CycloQuadElem],
    traces: Iterable[TraceResult],
) -> dict:
    """Per-ideal check of the twist conditions.

    * invariance: ``chi(sigma P) a(sigma P) = chi(P) a(P)`` (as sets for golden-ambiguous traces);
    * square: ``chi(P)^2 omega(NP) = (-1 / NP)``.
    """
    traces = sorted(traces, key=lambda t: t.ideal.sort_key())
    by_p: dict[int, list[TraceResult]] = {}
    for tr in traces:
        by_p.setdefault(tr.ideal.p, []).append(tr)
    entries = []
    for tr in traces:
        P = tr.ideal
        entry = {"ideal": P.label, "norm": P.norm}
        if P.label not in chi:
            entry.update(status="missing")
            entries.append(entry)
            continue
        c = chi[P.label]
        eps = kronecker(-1, P.norm)
        entry["square"] = c * c * tr.omega == CycloQuadElem(eps)
        partner = [t for t in by_p[P.p] if t.ideal != P]
        if not partner:
            entry["invariance"] = True
        elif partner[0].ideal.label not in chi:
            entry["invariance"] = None
        else:
            other = partner[0]
            c2 = chi[other.ideal.label]
            if tr.golden_ambiguous or other.golden_ambiguous:
                entry["invariance"] = {c * a for a in tr.candidates} == {c2 * a for a in other.candidates}
            else:
                entry["invariance"] = tr.chosen is not None and c * tr.chosen == c2 * other.chosen
        ok = entry["square"] and entry["invariance"] is not False
        entry["status"] = "pass" if ok else "fail"
        entries.append(entry)
    failed = [e["ideal"] for e in entries if e["status"] != "pass"]
    return {"entries": entries, "failed": failed, "ok": not failed}
