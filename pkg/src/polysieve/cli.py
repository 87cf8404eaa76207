"""Command-line interface: one subcommand per subsystem, JSON output.

Exact rationals are rendered as "p/q" strings (plain integers when the
denominator is 1) so downstream tooling never sees truncated floats.
Exit codes: 0 success, 2 domain errors (hypothesis violations, bad flags),
1 internal failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import beta as beta_mod
from . import eisenstein, experiments, localdensity, polygonal, sieve, spinor
from .polygonal import DivisorTriple, PolygonalFamily, target_invariants


def frac_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _parse_triple(text: str, a: int = 0) -> DivisorTriple:
    parts = [int(t) for t in text.split(",")]
    if len(parts) != 3:
        raise ValueError("expected three comma-separated divisors")
    return DivisorTriple(parts[0], parts[1], parts[2], a)


def _emit(payload: dict, args) -> None:
    print(json.dumps(payload, sort_keys=True))


def _cmd_local_density(args) -> int:
    fam = PolygonalFamily(args.m)
    tgt = target_invariants(fam, args.n)
    d = _parse_triple(args.d, args.two_adic_a)
    q = localdensity.LocalDensityQuery(fam, tgt, d, args.p)
    closed = localdensity.local_density(q)
    oracle = localdensity.local_density_oracle(q, args.oracle_t)
    _emit(
        {
            "closed_form": frac_str(closed),
            "oracle": frac_str(oracle),
            "agree": closed == oracle,
            "h": tgt.h,
            "decimal": float(closed),
        },
        args,
    )
    return 0


def _cmd_eisenstein(args) -> int:
    fam = PolygonalFamily(args.m)
    d = _parse_triple(args.d, args.two_adic_a)
    coeff = eisenstein.r_gen(fam, args.n, d)
    tgt = target_invariants(fam, args.n)
    lv = eisenstein.l_value(tgt)
    _emit(
        {
            "value": frac_str(coeff.value),
            "numeric": coeff.numeric,
            "h": coeff.h,
            "l_value": {"coefficient": frac_str(lv.coefficient), "radicand": lv.radicand},
            "level": dict(zip(("N", "M"), eisenstein.level_invariants(fam, d))),
        },
        args,
    )
    return 0


def _cmd_beta(args) -> int:
    fam = PolygonalFamily(args.m)
    tgt = target_invariants(fam, args.n)
    c = tuple(int(t) for t in args.c.split(","))
    if len(c) != 3:
        raise ValueError("expected three comma-separated exponents")
    val = beta_mod.beta_p(beta_mod.BetaQuery(fam, tgt, args.p, c))
    _emit({"beta": frac_str(val), "decimal": float(val), "h": tgt.h}, args)
    return 0


def _cmd_aggregates(args) -> int:
    fam = PolygonalFamily(args.m)
    tgt = target_invariants(fam, args.n)
    agg = beta_mod.aggregates(fam, tgt, args.a, args.z0)
    _emit(
        {
            "W": frac_str(agg.W),
            "S_ET": frac_str(agg.S_ET),
            "H": {
                "radicands": [frac_str(r) for r in agg.H.radicands],
                "decimal": float(agg.H),
            },
            "s_a": frac_str(beta_mod.s_a(args.a)),
            "prime_universe": list(agg.prime_universe),
        },
        args,
    )
    return 0


def _cmd_spinor(args) -> int:
    fam = PolygonalFamily(args.m)
    d = _parse_triple(args.d, args.two_adic_a)
    group = spinor.spinor_norm_group(args.p, fam, d)
    _emit({"group": group.kind.value, "case": group.case}, args)
    return 0


def _cmd_sieve_weights(args) -> int:
    system = sieve.RosserWeightSystem(
        Fraction(args.D), Fraction(args.beta), two_adic_a=args.two_adic_a
    )
    rows = []
    for text in args.d.split(","):
        d = int(text)
        rows.append(
            {
                "d": d,
                "lambda_plus": sieve.lambda_plus(system, d),
                "lambda_minus": sieve.lambda_minus(system, d),
                "Lambda_minus": sieve.Lambda_minus(system, d),
            }
        )
    _emit({"D": frac_str(system.D), "beta": frac_str(system.beta_R), "weights": rows}, args)
    return 0


def _cmd_sieve_check(args) -> int:
    from .arith import primes_upto

    rows = []
    universe = primes_upto(args.pmax)
    ds = [Fraction(t) for t in args.D.split(",")]
    betas = [Fraction(t) for t in args.beta.split(",")]
    for D in ds:
        for b in betas:
            system = sieve.RosserWeightSystem(D, b)
            ok = True
            for mask in range(1 << len([p for p in universe if p != 2])):
                c = 1
                odd = [p for p in universe if p != 2]
                for i, p in enumerate(odd):
                    if mask >> i & 1:
                        c *= p
                if not sieve.fundamental_inequality_check(system, c):
                    ok = False
                    break
            rows.append({"D": frac_str(D), "beta": frac_str(b), "fundamental": ok})
    _emit({"pmax": args.pmax, "results": rows, "all_pass": all(r["fundamental"] for r in rows)}, args)
    return 0 if all(r["fundamental"] for r in rows) else 1


def _cmd_scan(args) -> int:
    mode = "zero_one_prime" if args.mode == "zero-one-prime" else "omega_budget"
    config = experiments.ScanConfig(
        m=args.m,
        limit=args.limit,
        max_omega=args.max_omega,
        allow_zero=args.allow_zero,
        nonneg=args.nonneg,
        mode=mode,
    )
    report = experiments.eureka_scan(config, exception_cap=args.cap)
    payload = experiments.report_emit(report, "json", include_runtime=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(experiments.report_emit(report, args.format))
    print(payload)
    return 0


def _cmd_scan_membership(args) -> int:
    fam = PolygonalFamily(args.m)
    frac = experiments.density_one_census(fam, args.limit)
    _emit({"fraction": frac_str(frac), "decimal": float(frac), "limit": args.limit}, args)
    return 0


def _cmd_audit_constants(args) -> int:
    checks = experiments.constants_audit()
    _emit(
        {
            "checks": [
                {"name": c.name, "statement": c.statement, "pass": c.passed}
                for c in checks
            ],
            "all_pass": all(c.passed for c in checks),
        },
        args,
    )
    return 0 if all(c.passed for c in checks) else 1


def _cmd_represent(args) -> int:
    fam = PolygonalFamily(args.m)
    d = _parse_triple(args.d, args.two_adic_a)
    reps = polygonal.enumerate_representations(fam, args.n, d)
    shown = reps if args.cap is None else reps[: args.cap]
    _emit(
        {
            "count": len(reps),
            "triples": [[r.x1, r.x2, r.x3] for r in shown],
            "capped": args.cap is not None and len(reps) > args.cap,
        },
        args,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polysieve")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("local-density", help="closed form and oracle at one prime")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", default="1,1,1")
    p.add_argument("--two-adic-a", type=int, default=0, dest="two_adic_a")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--oracle-t", type=int, default=None, dest="oracle_t")
    p.set_defaults(func=_cmd_local_density)

    p = sub.add_parser("eisenstein", help="genus coefficient via the Siegel product")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", default="1,1,1")
    p.add_argument("--two-adic-a", type=int, default=0, dest="two_adic_a")
    p.set_defaults(func=_cmd_eisenstein)

    p = sub.add_parser("beta", help="beta factor at one odd prime")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--c", required=True)
    p.set_defaults(func=_cmd_beta)

    p = sub.add_parser("aggregates", help="W, S_ET and H for a target")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--z0", type=int, required=True)
    p.set_defaults(func=_cmd_aggregates)

    p = sub.add_parser("spinor", help="local spinor norm group")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", default="1,1,1")
    p.add_argument("--two-adic-a", type=int, default=0, dest="two_adic_a")
    p.set_defaults(func=_cmd_spinor)

    p = sub.add_parser("sieve", help="Rosser weights and inequality checks")
    ssub = p.add_subparsers(dest="sieve_command", required=True)
    pw = ssub.add_parser("weights")
    pw.add_argument("--D", required=True)
    pw.add_argument("--beta", required=True)
    pw.add_argument("--d", required=True, help="comma-separated d values")
    pw.add_argument("--two-adic-a", type=int, default=None, dest="two_adic_a")
    pw.set_defaults(func=_cmd_sieve_weights)
    pc = ssub.add_parser("check")
    pc.add_argument("--pmax", type=int, default=30)
    pc.add_argument("--D", default="10,100,1000")
    pc.add_argument("--beta", default="1,2")
    pc.set_defaults(func=_cmd_sieve_check)

    p = sub.add_parser("scan", help="representability scans")
    ssub = p.add_subparsers(dest="scan_command", required=True)
    for name in ("eureka", "density"):
        ps = ssub.add_parser(name)
        ps.add_argument("--m", type=int, required=True)
        ps.add_argument("--limit", type=int, required=True)
        ps.add_argument("--max-omega", type=int, default=2, dest="max_omega")
        ps.add_argument("--nonneg", action="store_true")
        ps.add_argument("--allow-zero", action="store_true", default=True, dest="allow_zero")
        ps.add_argument("--no-zero", action="store_false", dest="allow_zero")
        ps.add_argument("--mode", choices=("omega-budget", "zero-one-prime"),
                        default="omega-budget")
        ps.add_argument("--cap", type=int, default=1000)
        ps.add_argument("--out", default=None)
        ps.add_argument("--format", choices=("json", "csv"), default="csv")
        ps.set_defaults(func=_cmd_scan)
    pm = ssub.add_parser("membership")
    pm.add_argument("--m", type=int, required=True)
    pm.add_argument("--limit", type=int, required=True)
    pm.set_defaults(func=_cmd_scan_membership)

    p = sub.add_parser("audit", help="exact constant audits")
    asub = p.add_subparsers(dest="audit_command", required=True)
    pa = asub.add_parser("constants")
    pa.set_defaults(func=_cmd_audit_constants)

    p = sub.add_parser("represent", help="enumerate representations of n")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", default="1,1,1")
    p.add_argument("--two-adic-a", type=int, default=0, dest="two_adic_a")
    p.add_argument("--cap", type=int, default=50)
    p.set_defaults(func=_cmd_represent)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, AssertionError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    except Exception as exc:  # internal failure
        print(json.dumps({"error": f"internal: {exc!r}"}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
