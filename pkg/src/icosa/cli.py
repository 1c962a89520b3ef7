"""Command-line entry point ``icosa``.

Exit codes: 0 success, 1 domain error (a JSON ``{"error": ...}`` record is printed),
2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from . import dirichlet as dch
from . import elliptic, icosahedral, klein, qexp
from .ring_arith import CycloQuadElem, NotIntegralError, PrimeIdeal, QuadElem, split_prime

__all__ = ["main", "Config", "load_config", "format_value", "DomainError"]

DEFAULT_CHI = Path(__file__).parent / "data" / "chi_e0.json"


class DomainError(Exception):
    pass


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    cap: int = elliptic.DEFAULT_CAP
    n_max: int = 200
    precision: int = 3
    chi: str | None = None
    format: str = "json"
    convention: str = "teichmuller"

    def validate(self) -> "Config":
        if not 1 <= self.cap <= elliptic.HARD_CAP:
            raise UsageError(f"cap must lie in [1, {elliptic.HARD_CAP}]")
        if self.format not in ("json", "csv"):
            raise UsageError("format must be json or csv")
        if self.precision < 1:
            raise UsageError("precision must be positive")
        if self.n_max < 1:
            raise UsageError("n_max must be positive")
        if self.convention not in ("teichmuller", "legendre"):
            raise UsageError("convention must be teichmuller or legendre")
        return self


def load_config(path: str | None) -> Config:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    if path is None:
        return Config()
    types = {f.name: f.type for f in fields(Config)}
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in types:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = int(value) if key in ("cap", "n_max", "precision") else value
    return Config(**values)


# ---------------------------------------------------------------------------
# output


def format_value(x) -> str:
    """Deterministic JSON text; floats carry 17 significant digits."""
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            return json.dumps(str(x))
        return format(x, ".17g")
    if isinstance(x, complex):
        return format_value({"re": x.real, "im": x.imag})
    if isinstance(x, (QuadElem, CycloQuadElem)):
        return format_value(x.to_json())
    if isinstance(x, Fraction):
        return json.dumps(str(x))
    if isinstance(x, str):
        return json.dumps(x)
    if isinstance(x, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{format_value(v)}" for k, v in x.items()) + "}"
    if isinstance(x, (list, tuple)):
        return "[" + ",".join(format_value(v) for v in x) + "]"
    return json.dumps(str(x))


def _csv_cell(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, float):
        return format(v, ".17g")
    return format_value(v)


def emit(records: Iterable[dict], fmt: str, out=None) -> None:
    out = out or sys.stdout
    records = list(records)
    if fmt == "json":
        for r in records:
            out.write(format_value(r) + "\n")
        return
    if not records:
        return
    header: list[str] = []
    for r in records:
        header += [k for k in r if k not in header]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in records:
        w.writerow([_csv_cell(r.get(k, "")) for k in header])
    out.write(buf.getvalue())


# ---------------------------------------------------------------------------
# input parsing


def parse_quad(text: str) -> QuadElem:
    """``a,b`` (rationals) meaning a + b sqrt5; a single rational is also accepted."""
    parts = [p.strip() for p in text.split(",")]
    try:
        if len(parts) == 1:
            return QuadElem(Fraction(parts[0]))
        if len(parts) == 2:
            return QuadElem(Fraction(parts[0]), Fraction(parts[1]))
    except (ValueError, ZeroDivisionError):
        pass
    raise UsageError(f"cannot read {text!r} as a,b coordinates of a + b*sqrt5")


def parse_ideal(text: str) -> PrimeIdeal:
    try:
        p_str, _, r_str = text.partition(":")
        p = int(p_str)
        ideals = split_prime(p)
    except ValueError as exc:
        raise UsageError(f"bad ideal label {text!r}: {exc}") from None
    if not r_str and len(ideals) == 1:
        return ideals[0]
    for P in ideals:
        if P.label == text:
            return P
    raise UsageError(f"no prime ideal labelled {text!r}; choose from {[P.label for P in ideals]}")


def parse_char(text: str) -> dch.DirichletChar:
    if text == "trivial":
        return dch.DirichletChar.trivial()
    if text in ("legendre5", "(5/.)"):
        return dch.DirichletChar.legendre5()
    if text.startswith("omega"):
        power = int(text[5:].lstrip("^") or 1)
        return dch.DirichletChar.teichmuller5(power)
    raise UsageError(f"unknown character {text!r}; use trivial, legendre5 or omega^k")


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot read {text!r} as a complex number") from None


def _chi_table(cfg: Config, path: str | None):
    return icosahedral.load_chi_table(path or cfg.chi or DEFAULT_CHI)


# ---------------------------------------------------------------------------
# commands


def cmd_dirichlet_eval(args, cfg):
    chi = parse_char(args.char)
    s = parse_complex(args.s)
    total = dch.l_partial_sum(chi, s, args.n_max)
    prod = dch.euler_partial_product(chi, s, args.p_max)
    tail = dch.zeta_tail_bound(s.real, args.n_max) if s.real > 1 else float("inf")
    return [{
        "char": chi.name, "s": s, "n_max": args.n_max, "p_max": args.p_max,
        "partial_sum": total, "euler_product": prod, "difference": abs(total - prod), "tol": tail,
    }]


def cmd_theta_check(args, cfg):
    recs = []
    for k in range(args.points):
        y = 0.1 * (200 ** (k / max(args.points - 1, 1)))
        recs.append({"check": "sum_identity", "y": y, "residual": dch.theta_sum_identity_residual(y), "tol": 1e-9})
    chi = parse_char(args.char)
    taus = [parse_complex(t) for t in args.tau] if args.tau else [1j, 0.5 + 1j, 0.3 + 0.7j, -0.4 + 1.3j, 0.1 + 0.25j]
    ratios = [dch.theta_functional_ratio(chi, t) for t in taus]
    for t, r in zip(taus, ratios):
        recs.append({"check": "functional_ratio", "char": chi.name, "tau": t, "ratio": r,
                     "abs_minus_1": abs(abs(r) - 1), "spread": abs(r - ratios[0]), "tol": 1e-6})
    return recs


def cmd_eisenstein_dump(args, cfg):
    E = dch.eisenstein_coeffs(w=args.w, k=args.k, M=args.precision or cfg.precision,
                              n_max=args.n_max or cfg.n_max, i_residue=args.i_residue)
    return [{"n": n, "a_n": a, "modulus": E.modulus, "mod5": a % 5} for n, a in enumerate(E.coeffs)]


def cmd_curve_reduce(args, cfg):
    P = parse_ideal(args.ideal)
    Ebar = elliptic.reduce_curve(elliptic.E0, P, elliptic.E0_BAD_PRIMES)
    rec = {"ideal": P.label, "field": f"F_{P.norm}"}
    for name in ("a2", "a4", "a6"):
        v = getattr(Ebar, name)
        rec[name] = [v.c0, v.c1]
    rec["discriminant"] = [Ebar.discriminant.c0, Ebar.discriminant.c1]
    return [rec]


def cmd_curve_count(args, cfg):
    cap = args.cap or cfg.cap
    if args.ideal:
        ideals = [parse_ideal(args.ideal)]
    else:
        ideals = icosahedral.ideals_for(args.max_norm)
    recs = []
    for P in ideals:
        Ebar = elliptic.reduce_curve(elliptic.E0, P, elliptic.E0_BAD_PRIMES)
        n = elliptic.count_points(Ebar, cap)
        recs.append({"ideal": P.label, "p": P.p, "norm": P.norm, "count": n, "trace": P.norm + 1 - n})
    return recs


def cmd_curve_j(args, cfg):
    return [{"j": elliptic.j_invariant(elliptic.E0), "discriminant": elliptic.discriminant(elliptic.E0)}]


def _traces(args, cfg, max_norm):
    return icosahedral.resolve_traces(
        elliptic.E0, icosahedral.ideals_for(max_norm), cap=args.cap or cfg.cap,
        strict=getattr(args, "strict", False), convention=args.convention or cfg.convention,
    )


def cmd_ico_traces(args, cfg):
    return [t.to_record() for t in _traces(args, cfg, args.max_norm)]


def cmd_ico_coeffs(args, cfg):
    n_max = args.n_max or cfg.n_max
    chi = _chi_table(cfg, args.chi) if args.twist else None
    traces = _traces(args, cfg, n_max)
    L = icosahedral.dirichlet_coeffs(elliptic.E0, n_max, chi=chi, source=args.source, traces=traces)
    return [{"n": n, "a": L[n]} for n in range(1, n_max + 1)]


def cmd_ico_verify_qcurve(args, cfg):
    checks = icosahedral.verify_qcurve(elliptic.E0, args.max_p, cap=args.cap or cfg.cap,
                                       convention=args.convention or cfg.convention)
    recs = [{"p": c.p, "sign": c.sign, "status": c.status, "detail": c.detail} for c in checks]
    return recs, all(c.ok for c in checks)


def cmd_ico_verify_twist(args, cfg):
    chi = _chi_table(cfg, args.chi)
    report = icosahedral.verify_twist_conditions(chi, _traces(args, cfg, args.max_norm))
    return report["entries"], report["ok"]


def cmd_qexp_congruence(args, cfg):
    n_max = args.n_max or cfg.n_max
    chi = _chi_table(cfg, args.chi)
    traces = _traces(args, cfg, n_max)
    rho = icosahedral.dirichlet_coeffs(elliptic.E0, n_max, chi=chi, source="table", traces=traces)
    f0 = icosahedral.dirichlet_coeffs(elliptic.E0, n_max, chi=chi, source="points", traces=traces)
    M = args.precision or cfg.precision
    E = dch.eisenstein_coeffs(M=M, n_max=n_max)
    rows = qexp.congruence_chain(rho.as_list(), f0.as_list(), E.coeffs, M)
    return [r.to_record() for r in rows], all(r.ok for r in rows)


def cmd_klein_solve(args, cfg):
    A, B, C = (parse_quad(x) for x in (args.A, args.B, args.C))
    emb = {"+": (1,), "-": (-1,), "both": (1, -1)}[args.embedding]
    sols = klein.klein_solve(A, B, C, emb, grid=args.grid)
    return [s.to_record() for s in sols]


def cmd_klein_transform(args, cfg):
    poly = [parse_quad(c) for c in args.poly.split(";")]
    m = [parse_quad(c) for c in args.map.split(";")]
    if len(m) != 4:
        raise UsageError("--map needs four ';'-separated entries alpha;beta;gamma;delta")
    out = klein.moebius_transform(poly, klein.MoebiusMap(*m))
    return [{"degree": len(out) - 1 - k, "coeff": c} for k, c in enumerate(out)]


def selftest_checks() -> list[tuple[str, bool, str]]:
    checks = []
    j = elliptic.j_invariant(elliptic.E0)
    checks.append(("j(E0) = 86048 - 38496*sqrt5", j == QuadElem(86048, -38496), str(j)))
    table = {2: [(1, 1, 1)], 3: [(1, 1, 2)], 5: [(1, 3), (1, 3)], 7: [(1, 1, 6)], 11: [(1, 4), (1, 8)]}
    got = {p: dch.factor_golden_quadratic(p) for p in table}
    checks.append(("x^2 + x - 1 factor table at 2, 3, 5, 7, 11", got == table, str(got)))
    worst = max(dch.theta_sum_identity_residual(0.1 * 200 ** (k / 19)) for k in range(20))
    checks.append(("theta sum identity on [0.1, 20]", worst < 1e-9, f"max residual {worst:.3e}"))
    principal = klein.moebius_transform(klein.E0_QUINTIC, klein.E0_MOEBIUS)
    checks.append(("Moebius image is the principal quintic",
                   principal == klein.PRINCIPAL_QUINTIC.coefficients(), ""))
    return checks


def cmd_selftest(args, cfg):
    checks = selftest_checks()
    recs = [{"check": name, "status": "pass" if ok else "fail", "detail": detail} for name, ok, detail in checks]
    return recs, all(ok for _, ok, _ in checks)


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\nhint: run '{self.prog} --help' for the list of options\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="icosa", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="key = value file (cap, n_max, precision, chi, format, convention)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def group(name, help):
        g = sub.add_parser(name, help=help)
        return g.add_subparsers(dest="action", required=True, parser_class=_Parser)

    def common(sp, *, traces=False):
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="format", action="store_const", const="json")
        fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
        if traces:
            sp.add_argument("--cap", type=int, help="largest residue field enumerated")
            sp.add_argument("--convention", choices=("teichmuller", "legendre"))
        return sp

    d = group("dirichlet", "Dirichlet L-series partial sums")
    e = common(d.add_parser("eval", help="partial sum and Euler product"))
    e.add_argument("--char", default="legendre5")
    e.add_argument("--s", default="2")
    e.add_argument("--n-max", type=int, default=10**6)
    e.add_argument("--p-max", type=int, default=10**4)
    e.set_defaults(func=cmd_dirichlet_eval)

    t = group("theta", "theta series checks")
    e = common(t.add_parser("check", help="sum identity and functional-equation ratio"))
    e.add_argument("--char", default="legendre5")
    e.add_argument("--tau", action="append", help="sample point, e.g. 0.5+1i (repeatable)")
    e.add_argument("--points", type=int, default=20)
    e.set_defaults(func=cmd_theta_check)

    g = group("eisenstein", "5-adic Eisenstein series")
    e = common(g.add_parser("dump", help="coefficients a_n in Z/5^M"))
    e.add_argument("--n-max", type=int)
    e.add_argument("--precision", type=int)
    e.add_argument("--w", type=int, default=3)
    e.add_argument("--k", type=int, default=3)
    e.add_argument("--i-residue", type=int, default=2, choices=(2, 3))
    e.set_defaults(func=cmd_eisenstein_dump)

    c = group("curve", "the curve E0 and its reductions")
    e = common(c.add_parser("reduce", help="reduced coefficients at an ideal"))
    e.add_argument("--ideal", required=True, help="label p:r, r the image of sqrt5")
    e.set_defaults(func=cmd_curve_reduce)
    e = common(c.add_parser("count", help="#E(F_P)"), traces=True)
    sel = e.add_mutually_exclusive_group(required=True)
    sel.add_argument("--ideal")
    sel.add_argument("--max-norm", type=int)
    e.set_defaults(func=cmd_curve_count)
    e = common(c.add_parser("j", help="j-invariant and discriminant"))
    e.set_defaults(func=cmd_curve_j)

    i = group("ico", "icosahedral traces and L-series")
    e = common(i.add_parser("traces", help="trace records sorted by (p, sqrt5 image)"), traces=True)
    e.add_argument("--max-norm", type=int, required=True)
    e.add_argument("--strict", action="store_true", help="fail on a non-squarefree resolvent")
    e.set_defaults(func=cmd_ico_traces)
    e = common(i.add_parser("coeffs", help="Dirichlet coefficients"), traces=True)
    e.add_argument("--n-max", type=int)
    e.add_argument("--source", choices=("table", "points"), default="table")
    e.add_argument("--twist", action="store_true")
    e.add_argument("--chi")
    e.set_defaults(func=cmd_ico_coeffs)
    e = common(i.add_parser("verify-qcurve", help="a(sigma P) = (-2/p) a(P)"), traces=True)
    e.add_argument("--max-p", type=int, default=2000)
    e.set_defaults(func=cmd_ico_verify_qcurve)
    e = common(i.add_parser("verify-twist", help="twist conditions of a chi table"), traces=True)
    e.add_argument("--chi")
    e.add_argument("--max-norm", type=int, default=2000)
    e.set_defaults(func=cmd_ico_verify_twist)

    q = group("qexp", "q-expansion congruences")
    e = common(q.add_parser("congruence", help="rho = f0 = f0*E mod (2-i, sqrt5)"), traces=True)
    e.add_argument("--n-max", type=int)
    e.add_argument("--chi")
    e.add_argument("--precision", type=int)
    e.set_defaults(func=cmd_qexp_congruence)

    k = group("klein", "Klein's quintic correspondence")
    e = common(k.add_parser("solve", help="numeric (j, m, n) from (A, B, C); use --A=a,b for negatives"))
    for name in ("A", "B", "C"):
        e.add_argument(f"--{name}", required=True, help="a,b meaning a + b*sqrt5")
    e.add_argument("--embedding", choices=("+", "-", "both"), default="both")
    e.add_argument("--grid", type=int, default=45)
    e.set_defaults(func=cmd_klein_solve)
    e = common(k.add_parser("transform", help="Moebius substitution on a quintic"))
    e.add_argument("--poly", required=True, help="';'-separated coefficients, highest degree first")
    e.add_argument("--map", required=True, help="alpha;beta;gamma;delta")
    e.set_defaults(func=cmd_klein_transform)

    s = common(sub.add_parser("selftest", help="built-in checks: j(E0), factor table, theta identity, Moebius image"))
    s.set_defaults(func=cmd_selftest, action=None)
    return p


DOMAIN_ERRORS = (
    ValueError,
    ArithmeticError,
    KeyError,
    icosahedral.IntegrityError,
    klein.SolverError,
    elliptic.FieldTooLargeError,
    NotIntegralError,
    OSError,
)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.format:
            cfg = replace(cfg, format=args.format)
        # command-line values override the config file and go through the same checks
        overrides = {k: getattr(args, k) for k in ("cap", "precision", "chi", "convention")
                     if getattr(args, k, None) is not None}
        cfg = replace(cfg, **overrides)
        cfg.validate()
        result = args.func(args, cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"icosa: error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        sys.stdout.write(format_value({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1
    ok = True
    if isinstance(result, tuple):
        result, ok = result
    emit(result, cfg.format)
    sys.stdout.flush()
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
