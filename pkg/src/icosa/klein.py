"""Klein's correspondence between principal quintics x^5 + A x^2 + B x + C and triples (j, m, n)."""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from .ring_arith import QuadElem

__all__ = [
    "KleinSingularityError",
    "SolverError",
    "DegreeDropError",
    "PrincipalQuintic",
    "MoebiusMap",
    "E0_QUINTIC",
    "E0_MOEBIUS",
    "PRINCIPAL_QUINTIC",
    "klein_forward",
    "moebius_transform",
    "KleinSolution",
    "klein_solve",
    "klein_residual",
    "embed_coefficients",
    "recognize_quadratic",
    "SOLVER_PREC",
]

SOLVER_PREC = 256


class KleinSingularityError(ZeroDivisionError):
    pass


class DegreeDropError(ArithmeticError):
    pass


class SolverError(RuntimeError):
    def __init__(self, message: str, starts: int = 0, best_residual=None):
        super().__init__(message)
        self.starts = starts
        self.best_residual = best_residual


@dataclass(frozen=True)
class PrincipalQuintic:
    A: QuadElem
    B: QuadElem
    C: QuadElem

    def __post_init__(self):
        for name in ("A", "B", "C"):
            object.__setattr__(self, name, QuadElem.coerce(getattr(self, name)))

    def coefficients(self) -> tuple[QuadElem, ...]:
        """Highest degree first."""
        z = QuadElem(0)
        return (QuadElem(1), z, z, self.A, self.B, self.C)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence) -> "PrincipalQuintic":
        cs = [QuadElem.coerce(c) for c in coeffs]
        if len(cs) != 6 or cs[0] != QuadElem(1) or cs[1] or cs[2]:
            raise ValueError("not of the form x^5 + A x^2 + B x + C")
        return cls(cs[3], cs[4], cs[5])


@dataclass(frozen=True)
class MoebiusMap:
    """x -> (alpha x + beta) / (gamma x + delta)."""

    alpha: QuadElem
    beta: QuadElem
    gamma: QuadElem
    delta: QuadElem

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            object.__setattr__(self, name, QuadElem.coerce(getattr(self, name)))
        if not self.determinant:
            raise ValueError("Moebius map has zero determinant")

    @property
    def determinant(self) -> QuadElem:
        return self.alpha * self.delta - self.beta * self.gamma

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1, 0, 0, 1)

    def compose(self, other: "MoebiusMap") -> "MoebiusMap":
        """``self o other``: x -> self(other(x))."""
        a, b, c, d = self.alpha, self.beta, self.gamma, self.delta
        e, f, g, h = other.alpha, other.beta, other.gamma, other.delta
        return MoebiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.delta, -self.beta, -self.gamma, self.alpha)

    def __call__(self, x):
        return (self.alpha * x + self.beta) / (self.gamma * x + self.delta)


# quintic cutting out the icosahedral field of E0, and the map taking it to principal form
E0_QUINTIC = (1, 0, 10, -10, 35, -18)
E0_MOEBIUS = MoebiusMap(QuadElem(1, 1), QuadElem(10, -30), QuadElem(2), QuadElem(35, 5))
PRINCIPAL_QUINTIC = PrincipalQuintic(
    QuadElem(-125 * 185, -125 * 39), QuadElem(-6875 * 56, -6875 * 19), QuadElem(-625 * 10691, -625 * 2225)
)


def klein_forward(j, m, n):
    """(A, B, C) of Klein's system; exact for exact inputs (QuadElem, Fraction, int)."""
    if isinstance(j, int):
        j = Fraction(j)
    if not j or not (1728 - j):
        raise KleinSingularityError("j must avoid 0 and 1728")
    D = 1728 - j
    A = -20 / j * (2 * m**3 + 3 * m**2 * n + 432 * (6 * m * n**2 + n**3) / D)
    B = -5 / j * (m**4 - 864 * (3 * m**2 * n**2 + 2 * m * n**3) / D + 559872 * n**4 / D**2)
    C = -1 / j * (m**5 - 1440 * m**3 * n**2 / D + 62208 * (15 * m * n**4 + 4 * n**5) / D**2)
    return A, B, C


def _forward_arrays(j, m, n):
    # same system with products only; numpy powers are slow
    D = 1728.0 - j
    m2, n2 = m * m, n * n
    m3, n3 = m2 * m, n2 * n
    A = -20.0 / j * (2 * m3 + 3 * m2 * n + 432 * (6 * m * n2 + n3) / D)
    B = -5.0 / j * (m2 * m2 - 864 * (3 * m2 * n2 + 2 * m * n3) / D + 559872 * n2 * n2 / (D * D))
    C = -1.0 / j * (m3 * m2 - 1440 * m3 * n2 / D + 62208 * (15 * m * n2 * n2 + 4 * n3 * n2) / (D * D))
    return A, B, C


# ---------------------------------------------------------------------------
# Moebius substitution


def _pmul(a: list, b: list) -> list:
    out = [QuadElem(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for k, y in enumerate(b):
            out[i + k] = out[i + k] + x * y
    return out


def moebius_transform(poly: Sequence, mu: MoebiusMap) -> tuple[QuadElem, ...]:
    """Monic numerator of ``(gamma x + delta)^5 q(mu(x))``; coefficients highest degree first.

    Its roots are the mu-preimages of the roots of ``q``.
    """
    cs = [QuadElem.coerce(c) for c in poly]
    deg = len(cs) - 1
    if deg < 1 or not cs[0]:
        raise ValueError("polynomial needs a nonzero leading coefficient")
    num = [mu.beta, mu.alpha]  # low degree first
    den = [mu.delta, mu.gamma]
    total = [QuadElem(0)] * (deg + 1)
    for k, c in enumerate(reversed(cs)):
        if not c:
            continue
        term = [c]
        for _ in range(k):
            term = _pmul(term, num)
        for _ in range(deg - k):
            term = _pmul(term, den)
        for i, t in enumerate(term):
            total[i] = total[i] + t
    lead = total[deg]
    if not lead:
        raise DegreeDropError(f"leading coefficient vanishes (alpha/gamma = {mu.alpha / mu.gamma} is a root)")
    return tuple(c / lead for c in reversed(total))


# ---------------------------------------------------------------------------
# numeric solving


def embed_coefficients(q: PrincipalQuintic, sign: int) -> tuple[mpmath.mpf, mpmath.mpf, mpmath.mpf]:
    r5 = mpmath.sqrt(5) * sign
    return tuple(mpmath.mpf(x.a.numerator) / x.a.denominator + r5 * mpmath.mpf(x.b.numerator) / x.b.denominator
                 for x in (q.A, q.B, q.C))


def klein_residual(target, j, m, n) -> mpmath.mpf:
    """Largest relative deviation of klein_forward(j, m, n) from ``target``."""
    got = klein_forward(j, m, n)
    scales = [abs(t) if t else abs(target[0]) ** (mpmath.mpf(k) / 3) for k, t in zip((3, 4, 5), target)]
    return max(abs(g - t) / s for g, t, s in zip(got, target, scales))


@dataclass(frozen=True)
class KleinSolution:
    embedding: int
    j: mpmath.mpf
    m: mpmath.mpf
    n: mpmath.mpf
    residual: mpmath.mpf
    start: tuple = field(default=(), compare=False)

    def to_record(self, digits: int = 17) -> dict:
        err = mpmath.mpf(self.residual)
        fmt = lambda x: mpmath.nstr(x, digits, min_fixed=-1, max_fixed=-1, strip_zeros=False)
        return {
            "embedding": "+" if self.embedding > 0 else "-",
            "j": fmt(self.j),
            "m": fmt(self.m),
            "n": fmt(self.n),
            "residual": mpmath.nstr(err, 3),
            "j_err": mpmath.nstr(abs(self.j) * err, 3),
        }


def _newton(target, x0, *, max_iter: int = 60, tol=None):
    """Damped Newton on relative residuals in (j, m, n) at the working mpmath precision."""
    eps = mpmath.mpf(2) ** (-mpmath.mp.prec)
    tol = tol if tol is not None else eps * 2**24
    scales = [abs(t) if t else abs(target[0]) ** (mpmath.mpf(k) / 3) for k, t in zip((3, 4, 5), target)]

    def F(x):
        try:
            got = klein_forward(*x)
        except ZeroDivisionError:
            return None
        return [(g - t) / s for g, t, s in zip(got, target, scales)]

    x = [mpmath.mpf(v) for v in x0]
    fx = F(x)
    if fx is None:
        return x, mpmath.inf
    norm = max(abs(v) for v in fx)
    h_rel = mpmath.sqrt(eps)
    for _ in range(max_iter):
        if norm < tol:
            break
        J = mpmath.matrix(3, 3)
        for c in range(3):
            h = (abs(x[c]) + 1) * h_rel
            xp = list(x)
            xp[c] += h
            fp = F(xp)
            if fp is None:
                return x, norm
            for r in range(3):
                J[r, c] = (fp[r] - fx[r]) / h
        try:
            step = mpmath.lu_solve(J, mpmath.matrix(fx))
        except ZeroDivisionError:
            return x, norm
        lam = mpmath.mpf(1)
        for _ in range(30):
            cand = [x[k] - lam * step[k] for k in range(3)]
            fc = F(cand)
            if fc is not None:
                nc = max(abs(v) for v in fc)
                if nc < norm:
                    x, fx, norm = cand, fc, nc
                    break
            lam /= 2
        else:
            break
    return x, norm


def _screen(target, starts: np.ndarray, iters: int = 80) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised damped Newton in double precision over all starts at once."""
    t = np.array([float(v) for v in target])
    scale = np.where(t != 0, np.abs(t), abs(t[0]) ** (np.array([3, 4, 5]) / 3))
    x = starts.astype(float).copy()

    def F(x):
        with np.errstate(all="ignore"):
            r = (np.stack(_forward_arrays(x[:, 0], x[:, 1], x[:, 2]), axis=1) - t) / scale
        r[~np.isfinite(r).all(axis=1)] = np.inf
        return r

    norm = np.abs(F(x)).max(axis=1)
    live = np.flatnonzero(np.isfinite(norm))
    for _ in range(iters):
        live = live[norm[live] > 1e-13]
        if not len(live):
            break
        xl = x[live]
        fl = F(xl)
        J = np.empty((len(live), 3, 3))
        for c in range(3):
            h = (np.abs(xl[:, c]) + 1) * 1.5e-8
            xp = xl.copy()
            xp[:, c] += h
            with np.errstate(all="ignore"):
                J[:, :, c] = (F(xp) - fl) / h[:, None]
        with np.errstate(all="ignore"):
            ok = np.isfinite(J).all(axis=(1, 2))
            ok[ok] &= np.abs(np.linalg.det(J[ok])) > 0
        live, xl, J, fl = live[ok], xl[ok], J[ok], fl[ok]
        step = np.linalg.solve(J, fl[:, :, None])[:, :, 0]
        # backtracking; starts that never improve drop out
        idx = np.arange(len(live))
        keep = np.zeros(len(live), dtype=bool)
        lam = 1.0
        for _ in range(30):
            if not len(idx):
                break
            cand = xl[idx] - lam * step[idx]
            nc = np.abs(F(cand)).max(axis=1)
            acc = nc < norm[live[idx]]
            x[live[idx[acc]]], norm[live[idx[acc]]] = cand[acc], nc[acc]
            keep[idx[acc]] = True
            idx = idx[~acc]
            lam /= 2
        live = live[keep]
    return x, norm


def _starts(target, grid: int) -> np.ndarray:
    """Log-spaced j of both signs, m scaled by |A|^(1/3), a few n/m ratios."""
    scale = abs(float(target[0])) ** (1 / 3)
    mags = np.logspace(-1, 10, grid)
    js = np.concatenate([mags, -mags])
    ms = scale * np.array([1.0, -1.0, 0.1, -0.1, 10.0, -10.0])
    ratios = np.array([0.0, 0.01, -0.01, 0.1, -0.1, 1.0, -1.0])
    J, M, R = (a.ravel() for a in np.meshgrid(js, ms, ratios, indexing="ij"))
    keep = np.abs(1728 - J) >= 1
    return np.stack([J, M, R * M * np.abs(1728 - J) / 1728], axis=1)[keep]


def klein_solve(
    A, B, C, embeddings: Sequence[int] = (1, -1), *, grid: int = 45, tol: float = 1e-20, workers: int = 1
) -> list[KleinSolution]:
    """All numeric (j, m, n) found by multi-start damped Newton.

    A, B, C are exact elements of Q(sqrt5), solved separately under each real
    embedding.  Starts are screened together in double precision; distinct
    candidates below 1e-8 are polished at 256 bits.  Raises :class:`SolverError`
    when no start converges under some embedding.
    """
    q = PrincipalQuintic(A, B, C)
    if not q.A:
        raise ValueError("A = 0 is degenerate for Klein's system")
    out: list[KleinSolution] = []
    with mpmath.workprec(SOLVER_PREC):
        tol_mp = mpmath.mpf(tol)
        for sign in embeddings:
            target = embed_coefficients(q, sign)
            starts = _starts(target, grid)
            xs, res = _screen(target, starts)
            best = mpmath.mpf(float(res.min())) if len(res) else mpmath.inf
            cands = []
            for k in np.argsort(res, kind="stable"):
                if res[k] > 1e-8:
                    break
                if not any(_same(xs[k], c, 1e-6) for c, _ in cands):
                    cands.append((xs[k], starts[k]))

            def polish(item):
                x, s = item
                return _newton(target, [float(v) for v in x]) + (tuple(float(v) for v in s),)

            if workers > 1:
                with ThreadPoolExecutor(workers) as pool:
                    polished = list(pool.map(polish, cands))
            else:
                polished = [polish(c) for c in cands]
            found: list[KleinSolution] = []
            for xp, rp, s in polished:
                best = min(best, rp)
                if rp < tol_mp and not any(_same(xp, (f.j, f.m, f.n)) for f in found):
                    found.append(KleinSolution(sign, xp[0], xp[1], xp[2], rp, s))
            if not found:
                raise SolverError(
                    f"no convergent start under the {'+' if sign > 0 else '-'} embedding "
                    f"({len(starts)} starts, best relative residual {mpmath.nstr(best, 5)})",
                    starts=len(starts),
                    best_residual=best,
                )
            out.extend(sorted(found, key=lambda f: (f.j, f.m, f.n)))
    return out


def _same(x, y, rel=1e-15) -> bool:
    return all(abs(a - b) <= rel * (abs(a) + abs(b) + 1) for a, b in zip(x, y))


def recognize_quadratic(x, sqrt5_sign: int = 1, tol: float = 1e-25, maxcoeff: int = 10**9) -> QuadElem | None:
    """Find a + b sqrt5 (rational a, b) equal to ``x`` via an integer relation on (x, 1, sqrt5).

    ``maxcoeff`` must stay well below ``tol**-0.5``: a generic real has relations
    of height H accurate to about H**-2, so looser bounds accept noise.
    """
    with mpmath.workprec(SOLVER_PREC):
        basis = [mpmath.mpf(x), mpmath.mpf(1), sqrt5_sign * mpmath.sqrt(5)]
        rel = mpmath.pslq(basis, tol=mpmath.mpf(tol), maxcoeff=maxcoeff, maxsteps=10**5)
        if rel is None or rel[0] == 0:
            return None
        c0, c1, c2 = rel
        cand = QuadElem(Fraction(-c1, c0), Fraction(-c2, c0))
        if abs(mpmath.mpf(cand.a.numerator) / cand.a.denominator
               + sqrt5_sign * mpmath.sqrt(5) * mpmath.mpf(cand.b.numerator) / cand.b.denominator - x) > tol * max(1, abs(x)):
            return None
        return cand
