"""Command-line front end: tables, verification suites, reports.

Subcommands: poly, verify {pieri,qdiff,commute,nonneg,limits,balance},
ortho, scatter, evolve.  Configuration comes from flags, optionally
seeded by a key=value config file (flags win).  Exit codes: 0 success,
1 verification failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from fractions import Fraction

from .combinatorics import (
    eval_E_l,
    eval_E_l_via_Eln,
    partitions_max_weight,
    total_order_key,
)
from .dualop import apply_Hhat_l, matrix_in_monomial_basis
from .errors import DegeneracyError, ParamDomainError, RSMorseError
from .latticeop import (
    LatticeFunction,
    commutator_on_delta,
    morse_vanishing_limit_check,
    ruijsenaars_limit_check,
    symmetrization_identity_sides,
)
from .polynomials import PolynomialFamily, pieri_residual
from .qcore import params_from_hat, parse_rational
from .scattering import S_hat, s_one, s_pair, sqrt_branch_s, sqrt_branch_s0
from .spectral import QuadSpec, detailed_balance_residual, evolve, gram_report

DEFAULTS = {
    "n": "2",
    "q": "1/4",
    "t": "1/3",
    "that0": "1/2",
    "that1": "-1/3",
    "that2": "1/5",
    "max_weight": "3",
    "tol": "1e-10",
    "quad_nodes": "",
    "seed": "1",
    "out": "",
    "format": "json",
}


def _read_config_file(path):
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParamDomainError(f"config line is not key=value: {raw.strip()!r}")
            key, val = line.split("=", 1)
            out[key.strip().replace("-", "_")] = val.strip()
    return out


class RunConfig:
    """Validated run configuration; all randomness flows from seed."""

    def __init__(self, args):
        file_vals = _read_config_file(args.config) if args.config else {}

        def pick(name):
            flag = getattr(args, name, None)
            if flag is not None:
                return str(flag)
            if name in file_vals:
                return file_vals[name]
            return DEFAULTS[name]

        self.n = int(pick("n"))
        if self.n < 1:
            raise ParamDomainError(f"n must be >= 1, got {self.n}")
        self.params = params_from_hat(
            parse_rational(pick("q")),
            parse_rational(pick("t")),
            (
                parse_rational(pick("that0")),
                parse_rational(pick("that1")),
                parse_rational(pick("that2")),
            ),
        )
        self.max_weight = int(pick("max_weight"))
        if self.max_weight < 0:
            raise ParamDomainError(f"max-weight must be >= 0, got {self.max_weight}")
        self.tol = float(pick("tol"))
        raw_nodes = pick("quad_nodes")
        self.quad_nodes = int(raw_nodes) if raw_nodes else None
        self.seed = int(pick("seed"))
        self.out = pick("out") or None
        self.format = pick("format")
        if self.format not in ("json", "csv"):
            raise ParamDomainError(f"format must be json or csv, got {self.format}")
        self.force = bool(getattr(args, "force", False))
        self.time = float(getattr(args, "time", None) or 1.0)

    def describe(self):
        return {
            "n": self.n,
            "params": self.params.as_dict(),
            "max_weight": self.max_weight,
            "tol": self.tol,
            "seed": self.seed,
        }


def _emit(payload, config, csv_rows=None, csv_header=None):
    """Write the report; CSV only for row-shaped payloads."""
    if config.format == "csv" and csv_rows is not None:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(csv_header)
        for row in csv_rows:
            writer.writerow(row)
        text = buf.getvalue()
    else:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _labels(config):
    return sorted(partitions_max_weight(config.n, config.max_weight), key=total_order_key)


def _rational_points(n, count, seed):
    rng = random.Random(seed)
    primes = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)
    pts = []
    while len(pts) < count:
        coords = []
        for _ in range(n):
            a, b = rng.sample(primes, 2)
            coords.append(Fraction(a, b))
        if len(set(coords)) == n:
            pts.append(tuple(coords))
    return pts


def cmd_poly(config):
    family = PolynomialFamily(params=config.params, seed=config.seed)
    tables = []
    for lam in _labels(config):
        poly = family.P(lam)
        tables.append({"lambda": list(lam), "coeffs": poly.to_json()})
    payload = {
        "config": config.describe(),
        "count": len(tables),
        "tables": tables,
    }
    rows = []
    for tab in tables:
        for entry in tab["coeffs"]:
            rows.append((tab["lambda"], entry["mu"], entry["value"]))
    _emit(payload, config, csv_rows=rows, csv_header=("lambda", "mu", "value"))
    return 0


def _case(name, ok, detail=""):
    return {"case": name, "pass": bool(ok), "detail": detail}


def _suite_pieri(config):
    family = PolynomialFamily(params=config.params, seed=config.seed)
    points = _rational_points(config.n, 3, config.seed + 17)
    cases = []
    for lam in _labels(config):
        for l in range(1, config.n + 1):
            for z in points:
                r = pieri_residual(l, lam, z, family)
                cases.append(
                    _case(f"pieri l={l} lam={lam} z={tuple(map(str, z))}", r == 0, f"residual={r}")
                )
    return cases


def _suite_qdiff(config):
    family = PolynomialFamily(params=config.params, seed=config.seed)
    cases = []
    for lam in _labels(config):
        poly = family.P(lam)
        for l in range(1, config.n + 1):
            lhs = apply_Hhat_l(l, poly, config.params, seed=config.seed)
            rhs = poly.scaled(eval_E_l(lam, l, config.params))
            diff = lhs.minus(rhs)
            cases.append(
                _case(
                    f"qdiff l={l} lam={lam}",
                    diff.is_zero(),
                    "exact zero" if diff.is_zero() else f"nonzero on {diff.support()}",
                )
            )
    return cases


def _suite_commute(config):
    cases = []
    for lam0 in _labels(config):
        for l in range(1, config.n + 1):
            for m in range(l, config.n + 1):
                comm = commutator_on_delta(l, m, lam0, config.params)
                cases.append(
                    _case(
                        f"lattice [H_{l},H_{m}] at {lam0}",
                        comm.is_zero(),
                        "exact zero" if comm.is_zero() else f"support {comm.support()}",
                    )
                )
    root = (config.max_weight,) + (0,) * (config.n - 1)
    mats = {
        l: matrix_in_monomial_basis(l, root, config.params, seed=config.seed).dense()
        for l in range(1, config.n + 1)
    }
    size = len(mats[1])

    def matmul(A, B):
        return [
            [sum(A[i][k] * B[k][j] for k in range(size)) for j in range(size)]
            for i in range(size)
        ]

    for l in range(1, config.n + 1):
        for m in range(l + 1, config.n + 1):
            lhs = matmul(mats[l], mats[m])
            rhs = matmul(mats[m], mats[l])
            ok = lhs == rhs
            cases.append(_case(f"dual [Hhat_{l},Hhat_{m}] on ideal({root})", ok))
    return cases


def _suite_nonneg(config):
    cases = []
    bad = []
    for lam in _labels(config):
        for l in range(1, config.n + 1):
            val = eval_E_l(lam, l, config.params)
            if val < 0:
                bad.append((lam, l, val))
            if eval_E_l_via_Eln(lam, l, config.params) != val:
                bad.append((lam, l, "route mismatch"))
    cases.append(
        _case(
            f"E_(lam,l) >= 0 and two-route agreement, n={config.n}, |lam|<={config.max_weight}",
            not bad,
            "" if not bad else f"violations: {bad[:5]}",
        )
    )
    return cases


def _suite_limits(config):
    cases = []
    rng = random.Random(config.seed + 5)
    t = config.params.t
    ok = True
    for _ in range(50):
        z = tuple(Fraction(rng.randint(1, 40), rng.randint(1, 40)) for _ in range(config.n))
        if len(set(z)) < config.n or any(v == 0 for v in z):
            continue
        lhs, rhs = symmetrization_identity_sides(t, z)
        if lhs != rhs:
            ok = False
    cases.append(_case("symmetrization identity at random rational points", ok))
    reduced = params_from_hat(
        config.params.q,
        config.params.t,
        (config.params.that0, config.params.that1, Fraction(0)),
        validate=False,
    )
    rep = morse_vanishing_limit_check(reduced, config.n, min(config.max_weight, 3))
    cases.append(
        _case(
            "vanishing Morse coupling reduces the lattice coefficients",
            rep.ok,
            f"checked {rep.checked} entries, mismatches {len(rep.mismatches)}",
        )
    )
    rl = ruijsenaars_limit_check(config.n, config.params)
    ratios_ok = all(abs(r - 100.0) <= 10.0 for r in rl["error_ratios"])
    cases.append(
        _case(
            "pair-potential limit is linear in the coupling",
            ratios_ok,
            f"error ratios {rl['error_ratios']}",
        )
    )
    return cases


def _suite_balance(config):
    cases = []
    for lam in _labels(config):
        for j in range(1, config.n + 1):
            up = list(lam)
            up[j - 1] += 1
            if not (j == 1 or up[j - 2] >= up[j - 1]):
                continue
            r = detailed_balance_residual(lam, j, config.params)
            cases.append(_case(f"balance lam={lam} j={j}", r == 0, f"residual={r}"))
    return cases


_SUITES = {
    "pieri": _suite_pieri,
    "qdiff": _suite_qdiff,
    "commute": _suite_commute,
    "nonneg": _suite_nonneg,
    "limits": _suite_limits,
    "balance": _suite_balance,
}


def cmd_verify(config, suite):
    cases = _SUITES[suite](config)
    failed = sum(1 for c in cases if not c["pass"])
    payload = {
        "config": config.describe(),
        "suite": suite,
        "cases": cases,
        "passed": len(cases) - failed,
        "failed": failed,
        "ok": failed == 0,
    }
    rows = [(c["case"], c["pass"], c["detail"]) for c in cases]
    _emit(payload, config, csv_rows=rows, csv_header=("case", "pass", "detail"))
    return 0 if failed == 0 else 1


def cmd_ortho(config):
    if config.n > 2 and not config.force:
        raise ParamDomainError(
            f"orthogonality quadrature at n={config.n} is expensive; pass --force to allow"
        )
    nodes = config.quad_nodes or (200 if config.n == 1 else 120)
    quad = QuadSpec(nodes=nodes, tol=min(config.tol, 1e-12))
    family = PolynomialFamily(params=config.params, seed=config.seed)
    rows = gram_report(_labels(config), family, quad)
    for row in rows:
        row["warn"] = row["rel_err"] > config.tol
    payload = {"config": config.describe(), "nodes": nodes, "rows": rows}
    csv_rows = [
        (r["lambda"], r["mu"], r["value"], r["target"], r["abs_err"], r["rel_err"], r["warn"])
        for r in rows
    ]
    _emit(
        payload,
        config,
        csv_rows=csv_rows,
        csv_header=("lambda", "mu", "value", "target", "abs_err", "rel_err", "warn"),
    )
    return 0


def cmd_scatter(config):
    rng = random.Random(config.seed)
    rows = []
    for _ in range(100):
        xi = sorted((rng.uniform(1e-3, math.pi - 1e-3) for _ in range(config.n)), reverse=True)
        val = S_hat(xi, config.params, config.tol)
        b2 = sqrt_branch_s(xi[0], config.params, config.tol) ** 2 - s_pair(
            xi[0], config.params, config.tol
        )
        b02 = sqrt_branch_s0(xi[0], config.params, config.tol) ** 2 - s_one(
            xi[0], config.params, config.tol
        )
        rows.append(
            {
                "xi": list(xi),
                "re": val.real,
                "im": val.imag,
                "arg": math.atan2(val.imag, val.real),
                "abs_dev": abs(abs(val) - 1.0),
                "branch_dev": max(abs(b2), abs(b02)),
            }
        )
    payload = {"config": config.describe(), "rows": rows}
    csv_rows = [
        (r["xi"], r["re"], r["im"], r["arg"], r["abs_dev"], r["branch_dev"]) for r in rows
    ]
    _emit(
        payload,
        config,
        csv_rows=csv_rows,
        csv_header=("xi", "re", "im", "arg", "abs_dev", "branch_dev"),
    )
    return 0


def cmd_evolve(config):
    initial = LatticeFunction.delta((0,) * config.n)
    times = [0.0, config.time / 2.0, config.time]
    series = []
    for tv in times:
        state = evolve(initial, tv, config.max_weight, config.params, n=config.n)
        norm = math.sqrt(sum(abs(v) ** 2 for v in state.values()))
        series.append(
            {
                "time": tv,
                "norm": norm,
                "state": {
                    ",".join(map(str, lam)): [v.real, v.imag] for lam, v in sorted(state.items())
                },
            }
        )
    payload = {"config": config.describe(), "series": series}
    _emit(payload, config)
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--q")
    common.add_argument("--t")
    common.add_argument("--that0")
    common.add_argument("--that1")
    common.add_argument("--that2")
    common.add_argument("--max-weight", dest="max_weight", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--quad-nodes", dest="quad_nodes", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--out")
    common.add_argument("--format", choices=("json", "csv"))
    common.add_argument("--config", help="key=value config file; flags override")

    parser = argparse.ArgumentParser(prog="rsmorse", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("poly", parents=[common], help="tabulate eigenpolynomial coefficients")
    pv = sub.add_parser("verify", parents=[common], help="run a verification suite")
    pv.add_argument("suite", choices=sorted(_SUITES))
    po = sub.add_parser("ortho", parents=[common], help="quadrature orthogonality report")
    po.add_argument("--force", action="store_true", help="allow n > 2 quadrature")
    sub.add_parser("scatter", parents=[common], help="scattering phase table")
    pe = sub.add_parser("evolve", parents=[common], help="truncated unitary dynamics")
    pe.add_argument("--time", type=float, help="final evolution time (default 1.0)")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(args)
    except (ParamDomainError, ValueError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.command == "poly":
            return cmd_poly(config)
        if args.command == "verify":
            return cmd_verify(config, args.suite)
        if args.command == "ortho":
            return cmd_ortho(config)
        if args.command == "scatter":
            return cmd_scatter(config)
        if args.command == "evolve":
            return cmd_evolve(config)
    except ParamDomainError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except DegeneracyError as exc:
        print(f"degeneracy: {exc}", file=sys.stderr)
        return 1
    except RSMorseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    raise AssertionError("unreachable")


def entry():
    sys.exit(main())
