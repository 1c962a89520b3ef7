"""Acceptance suite: twelve end-to-end criteria at their stated tolerances and time budgets.

Each criterion prints one ``[PASS]``/``[FAIL]`` line.  Run standalone with
``python tests/test_acceptance.py`` or through pytest (``pytest tests/test_acceptance.py -s``).
"""

from __future__ import annotations

import math
import random
import subprocess
import sys
import time
from fractions import Fraction

import mpmath
import pytest

from icosa import dirichlet as dch
from icosa import icosahedral, klein, qexp
from icosa.cli import DEFAULT_CHI
from icosa.elliptic import E0, j_invariant
from icosa.polyfactor import degree_pattern, is_squarefree
from icosa.ring_arith import QuadElem, legendre_5, primes_up_to, reduce_mod_special_ideal

J_E0 = QuadElem(86048, -38496)


def _quad_mp(x: QuadElem, sign: int):
    r = mpmath.mpf(x.a.numerator) / x.a.denominator
    return r + sign * mpmath.sqrt(5) * mpmath.mpf(x.b.numerator) / x.b.denominator


# ---------------------------------------------------------------------------
# criteria; each returns (ok, detail)


def c01_j_invariant():
    j = j_invariant(E0)
    return j == J_E0, f"j(E0) = {j}"


def c02_principal_quintic():
    got = klein.moebius_transform(klein.E0_QUINTIC, klein.E0_MOEBIUS)
    want = klein.PRINCIPAL_QUINTIC.coefficients()
    return got == want, "monic image " + ("matches" if got == want else f"differs: {got}")


def c03_factor_table():
    table = {2: [(1, 1, 1)], 3: [(1, 1, 2)], 5: [(1, 3), (1, 3)], 7: [(1, 1, 6)], 11: [(1, 4), (1, 8)]}
    got = {p: dch.factor_golden_quadratic(p) for p in table}
    bad = [p for p in primes_up_to(10**4 - 1) if dch.FROBENIUS_SIGN[dch.quadratic_frobenius(p)] != legendre_5(p)]
    return got == table and not bad, f"table {'ok' if got == table else got}; {len(bad)} mismatches with (5/p) below 10^4"


def c04_theta_identity():
    ys = [0.1 * 200 ** (k / 19) for k in range(20)]
    worst = max(dch.theta_sum_identity_residual(y) for y in ys)
    return worst < 1e-9, f"max residual {worst:.3e} over 20 points"


def c05_theta_functional_equation():
    chi = dch.DirichletChar.legendre5()
    taus = [1j, 0.5 + 1j, 0.3 + 0.7j, -0.4 + 1.3j, 0.1 + 0.25j]
    ratios = [dch.theta_functional_ratio(chi, t) for t in taus]
    spread = max(abs(r - ratios[0]) for r in ratios)
    unit = max(abs(abs(r) - 1) for r in ratios)
    return spread < 1e-6 and unit < 1e-6, f"spread {spread:.2e}, ||ratio| - 1| {unit:.2e}"


def c06_l_series():
    chi = dch.DirichletChar.legendre5()
    diff = abs(dch.l_partial_sum(chi, 2, 10**6) - dch.euler_partial_product(chi, 2, 10**4))
    triv = dch.DirichletChar.trivial()
    z_sum = abs(dch.l_partial_sum(triv, 2, 10**6) - math.pi**2 / 6)
    z_prod = abs(dch.euler_partial_product(triv, 2, 10**4) - math.pi**2 / 6)
    ok = diff < 1e-4 and z_sum < 1e-3 and z_prod < 1e-3
    return ok, f"(5/.) sum vs product {diff:.2e}; zeta(2) errors {z_sum:.2e} (sum), {z_prod:.2e} (product)"


def c07_icosahedral_integrity():
    traces = icosahedral.resolve_traces(E0, icosahedral.ideals_for(10**4), strict=False, workers=1)
    failures = []
    for t in traces:
        P = t.ideal
        why = []
        if not is_squarefree(icosahedral.resolvent(E0, P)):
            why.append("resolvent not squarefree")
        elif degree_pattern(icosahedral.resolvent(E0, P)) not in icosahedral.A5_PATTERNS:
            why.append("pattern outside A5")
        if t.chosen is None:
            why.append("no chosen trace")
        else:
            if t.chosen * t.chosen not in t.a_squared:
                why.append("chosen^2 not a table value")
            if any(abs(t.chosen.embed(s5, si)) > 2 + 1e-12 for s5 in (1, -1) for si in (1, -1)):
                why.append("|chosen| > 2")
        if any(reduce_mod_special_ideal(sq) != t.point_trace**2 % 5 for sq in t.a_squared):
            why.append("point-count congruence")
        if why:
            failures.append(f"{P.label}: {', '.join(why)}")
    detail = f"{len(traces)} ideals, {len(failures)} failures"
    if failures:
        detail += " (" + "; ".join(failures[:4]) + ")"
    return not failures, detail


def c08_qcurve():
    checks = icosahedral.verify_qcurve(E0, 2000)
    bad = [c.p for c in checks if not c.ok]
    return not bad, f"{len(checks)} primes, failures at {bad}" if bad else f"{len(checks)} primes, no failures"


def c09_eisenstein():
    E = dch.eisenstein_coeffs(w=3, k=3, M=3, n_max=200, i_residue=2)
    conj = dch.eisenstein_coeffs(w=-3, k=3, M=3, n_max=200, i_residue=3)
    ok = E.coeffs[0] == 1 and all(a % 5 == 0 for a in E.coeffs[1:])
    same = [a % 5 for a in E.coeffs] == [a % 5 for a in conj.coeffs]
    return ok and same, (f"a_0 = {E.coeffs[0]}, a_n = 0 mod 5 for 1..200: {ok}; "
                         f"conjugate embedding agrees mod 5: {same}")


def c10_congruence_chain():
    n_max = 200
    chi = icosahedral.load_chi_table(DEFAULT_CHI)
    traces = icosahedral.resolve_traces(E0, icosahedral.ideals_for(n_max), strict=False)
    rho = icosahedral.dirichlet_coeffs(E0, n_max, chi=chi, source="table", traces=traces)
    f0 = icosahedral.dirichlet_coeffs(E0, n_max, chi=chi, source="points", traces=traces)
    E = dch.eisenstein_coeffs(M=3, n_max=n_max)
    rows = qexp.congruence_chain(rho.as_list(), f0.as_list(), E.coeffs, 3)
    bad = [r.n for r in rows if not r.ok]
    return not bad and len(rows) == n_max, f"{len(rows)} indices, mismatches at {bad[:10]}"


def _quad_seed(rng):
    j = QuadElem(Fraction(rng.randint(-4000, 4000), rng.randint(1, 7)), rng.randint(-300, 300))
    m = QuadElem(Fraction(rng.choice([-1, 1]) * rng.randint(1, 60), rng.randint(1, 5)), rng.randint(-5, 5))
    n = QuadElem(Fraction(rng.randint(-60, 60), rng.randint(1, 5)), rng.randint(-5, 5))
    return j, m, n


def c11_klein():
    rng = random.Random(20240611)
    tiny = mpmath.mpf(10) ** -20
    misses = 0
    seeds = 0
    while seeds < 20:
        j, m, n = _quad_seed(rng)
        if not j or j == 1728 or not m:
            continue
        A, B, C = (QuadElem.coerce(x) for x in klein.klein_forward(j, m, n))
        if not A:
            continue
        seeds += 1
        sols = klein.klein_solve(A, B, C)
        with mpmath.workprec(klein.SOLVER_PREC):
            for sign in (1, -1):
                jj = _quad_mp(j, sign)
                hit = [s for s in sols if s.embedding == sign and abs(s.j - jj) <= 1e-15 * abs(jj)]
                if not hit or any(s.residual >= tiny for s in hit):
                    misses += 1
    parts = [f"round trip {40 - misses}/40 seed-embeddings recovered"]
    q = klein.PRINCIPAL_QUINTIC
    sols = klein.klein_solve(q.A, q.B, q.C)
    with mpmath.workprec(klein.SOLVER_PREC):
        targets = {s: _quad_mp(J_E0, s) for s in (1, -1)}
        best = {}
        for s in (1, -1):
            js = [x.j for x in sols if x.embedding == s]
            best[s] = min(js, key=lambda v: abs(v - targets[s])) if js else None
        rel = {s: (abs(best[s] - targets[s]) / abs(targets[s]) if best[s] is not None else mpmath.inf) for s in best}
        e0_ok = all(r <= 1e-15 for r in rel.values())
        js_p = [x.j for x in sols if x.embedding == 1]
        js_m = [x.j for x in sols if x.embedding == -1]
        conj_ok = any(
            abs(a + b - 2 * 86048) <= 1e-10 * 2 * 86048
            and abs(a * b - (86048**2 - 5 * 38496**2)) <= 1e-10 * abs(86048**2 - 5 * 38496**2)
            for a in js_p for b in js_m
        )
    parts.append(
        f"E0 principal quintic: {len(js_p)}+{len(js_m)} solutions, nearest j relative error "
        f"{mpmath.nstr(rel[1], 3)} (+) / {mpmath.nstr(rel[-1], 3)} (-); conjugate pair: {conj_ok}"
    )
    return misses == 0 and e0_ok and conj_ok, "; ".join(parts)


def c12_determinism():
    argv = [sys.executable, "-m", "icosa.cli", "ico", "traces", "--max-norm", "500"]
    a = subprocess.run(argv, capture_output=True)
    b = subprocess.run(argv, capture_output=True)
    ok = a.returncode == b.returncode == 0 and a.stdout == b.stdout and bool(a.stdout)
    return ok, f"{len(a.stdout)} bytes, identical: {a.stdout == b.stdout}"


CRITERIA = [
    (1, "j-invariant of E0", c01_j_invariant, 0.001),
    (2, "Moebius reproduction of the principal quintic", c02_principal_quintic, 1),
    (3, "x^2 + x - 1 factor table and Artin reciprocity", c03_factor_table, 5),
    (4, "theta sum identity", c04_theta_identity, 1),
    (5, "theta functional equation for (5/.)", c05_theta_functional_equation, 5),
    (6, "L-series sum vs Euler product", c06_l_series, 30),
    (7, "icosahedral engine integrity to norm 10^4", c07_icosahedral_integrity, 300),
    (8, "Q-curve relation to 2000", c08_qcurve, 120),
    (9, "Eisenstein congruence mod 5", c09_eisenstein, 1),
    (10, "congruence chain rho = f0 = f0*E mod (2 - i, sqrt5)", c10_congruence_chain, 60),
    (11, "Klein round trip and the E0 principal quintic", c11_klein, 120),
    (12, "determinism of ico traces", c12_determinism, None),
]


def run_criterion(number, title, fn, budget):
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure, reported like one
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - t0
    slow = budget is not None and elapsed > budget
    if slow:
        detail += f"; over the {budget} s budget"
    status = "PASS" if ok and not slow else "FAIL"
    line = f"[{status}] criterion {number:2d}: {title} ({elapsed:.2f} s) {detail}"
    return status == "PASS", line


@pytest.mark.acceptance
@pytest.mark.parametrize("number,title,fn,budget", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(number, title, fn, budget, capsys):
    ok, line = run_criterion(number, title, fn, budget)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
