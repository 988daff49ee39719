"""
Command-line front end.

Exit status: 0 when every check passed, 1 when a check found a genuine
mathematical failure (non-integrality, a failed congruence, a reference-table
mismatch), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from sympy import primerange

from . import classify, dwork, hypergeom, modular
from .cache import cached_series
from .errors import MirrorLabError
from .hypergeom import HGParams
from .series import Series, format_rational, revert, rescale, to_rational

CHECKS = ("condition", "q-integrality", "fast-congruence", "dieudonne")


class UsageError(Exception):
    pass


# -- argument types -------------------------------------------------------

def _params(text: str) -> HGParams:
    try:
        return HGParams(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational(text: str):
    try:
        return to_rational(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _prime(text: str) -> int:
    import gmpy2

    v = _positive(text)
    if not gmpy2.is_prime(v):
        raise argparse.ArgumentTypeError(f"{v} is not prime")
    return v


def _checks(text: str) -> tuple:
    items = tuple(s.strip() for s in text.split(",") if s.strip())
    bad = [s for s in items if s not in CHECKS]
    if bad or not items:
        raise argparse.ArgumentTypeError(f"checks must be among {', '.join(CHECKS)}")
    return items


# -- output ----------------------------------------------------------------

def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return " ".join(_cell(x) for x in v)
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


class Emitter:
    """Writes records as JSON (lines), CSV or plain ``key=value`` text."""

    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out or sys.stdout
        self._csv = None

    def record(self, rec: dict) -> None:
        if self.fmt == "json":
            self.out.write(json.dumps(rec, sort_keys=True) + "\n")
        elif self.fmt == "csv":
            if self._csv is None:
                self._csv = csv.writer(self.out, lineterminator="\n")
                self._csv.writerow(sorted(rec))
            self._csv.writerow([_cell(rec[k]) for k in sorted(rec)])
        else:
            self.out.write(" ".join(f"{k}={_cell(rec[k])}" for k in sorted(rec)) + "\n")
        self.out.flush()


# -- sweeps ----------------------------------------------------------------

@dataclass
class SweepJob:
    """A grid of (parameters, prime) cells."""

    params: list
    pmax: int
    order: int
    checks: tuple = CHECKS
    pmin: int = 2

    def __post_init__(self):
        if self.pmax < 1 or self.order < 1:
            raise ValueError("pmax and order must be positive")
        self.params = [hypergeom.as_params(a) for a in self.params]

    def cells(self) -> list:
        return [(a, p) for a in self.params
                for p in primerange(self.pmin, self.pmax + 1) if a.is_good(p)]


def _mirror(a: HGParams, order: int) -> Series:
    return cached_series("q", a, order, lambda: hypergeom.mirror_q(a, order))


def run_cell(a: HGParams, p: int, order: int, checks=CHECKS) -> dict:
    rec = {"params": str(a), "prime": p}
    if "condition" in checks:
        rec["condition"] = dwork.condition_check(a, p)
    if "q-integrality" in checks or "dieudonne" in checks:
        q = _mirror(a, order)
    if "q-integrality" in checks:
        fail = dwork.series_p_integral(q, p)
        rec["q_integral_to"] = q.order if fail is None else fail
    if "fast-congruence" in checks:
        rec["fast_congruence_failure"] = dwork.fast_congruence(a, p, order)
    if "dieudonne" in checks:
        qz = Series(q.coeffs[1:])
        rec["dieudonne_failure"] = dwork.dieudonne_test(qz, p) if qz.order >= p else None
    return rec


def _run_cell_star(args):
    return run_cell(*args)


def cell_failed(rec: dict, order: int) -> bool:
    return (rec.get("condition") is False
            or rec.get("q_integral_to", order + 1) <= order
            or rec.get("fast_congruence_failure") is not None
            or rec.get("dieudonne_failure") is not None)


def run_sweep(job: SweepJob, jobs: int = 1):
    """Yield one result dict per cell, ordered by (parameters, prime)."""
    tasks = [(a, p, job.order, job.checks) for a, p in job.cells()]
    if jobs <= 1:
        for t in tasks:
            yield run_cell(*t)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_run_cell_star, tasks)


# -- sub-commands ----------------------------------------------------------

def cmd_series(args, em: Emitter) -> int:
    a, M = args.a, args.order
    N = modular.n_constant(a) if args.N == "auto" else int(args.N)
    kinds = args.kind or ["F", "G", "ratio", "q", "zq"]
    compute = {
        "F": lambda: hypergeom.series_F(a, M),
        "G": lambda: hypergeom.series_G(a, M),
        "ratio": lambda: hypergeom.ratio_GF(a, M),
        "q": lambda: _mirror(a, M),
    }
    rec = {"params": str(a), "order": M, "N": N}
    for kind in kinds:
        if kind == "zq":
            s = revert(rescale(_mirror(a, M), N) / N)
        else:
            s = cached_series(kind, a, M, compute[kind])
            if N != 1:
                s = rescale(s, N) / N if kind == "q" else rescale(s, N)
        rec[kind] = [format_rational(c) for c in s]
    em.record(rec)
    return 0


def cmd_dwork_check(args, em: Emitter) -> int:
    rep = dwork.integrality_report(args.a, args.p, args.order)
    em.record(rep.to_dict())
    failed = (not rep.condition_holds or not rep.q_integral
              or rep.fast_congruence_first_failure is not None)
    return 1 if failed else 0


def cmd_sweep(args, em: Emitter) -> int:
    job = SweepJob(args.a, args.pmax, args.order, args.checks, args.pmin)
    status = 0
    for rec in run_sweep(job, args.jobs):
        em.record(rec)
        if cell_failed(rec, job.order):
            status = 1
    return status


def cmd_classify(args, em: Emitter) -> int:
    if args.n == 2:
        print(f"# denominator bound: {args.bound}", file=sys.stderr)
        entries = classify.n2_entries(args.bound)
    else:
        entries = classify.enumerate_candidates(args.n)
    for e in entries:
        em.record(e.to_dict())
    return 0


def cmd_genfun(args, em: Emitter) -> int:
    coeffs = classify.genfun_coeffs(args.terms)
    if em.fmt == "json":
        em.record({"terms": args.terms, "coefficients": coeffs})
    else:
        em.out.write(",".join(str(c) for c in coeffs) + "\n")
    return 0


def _row_text(row) -> str:
    return "(" + ", ".join(format_rational(x) for x in row) + ")"


def cmd_table1(args, em: Emitter) -> int:
    n = args.n if args.n is not None else args.n_opt
    if n not in (2, 4, 6):
        raise UsageError("table1 takes n in {2, 4, 6}")
    if n == 2:
        print(f"# denominator bound: {args.bound}", file=sys.stderr)
        rows = [e.representatives for e in classify.n2_entries(args.bound)]
    else:
        rows = [e.representatives for e in classify.enumerate_candidates(n)]
    missing, extra = classify.table1_diff(n, args.bound)
    match = not missing and not extra
    if em.fmt == "json":
        em.record({
            "n": n,
            "rows": [[format_rational(x) for x in r] for r in rows],
            "missing": [[format_rational(x) for x in r] for r in missing],
            "extra": [[format_rational(x) for x in r] for r in extra],
            "match": match,
        })
    elif em.fmt == "csv":
        w = csv.writer(em.out, lineterminator="\n")
        w.writerow([f"a{i + 1}" for i in range(len(rows[0]))])
        for r in rows:
            w.writerow([format_rational(x) for x in r])
    else:
        for r in rows:
            em.out.write(_row_text(r) + "\n")
    for r in missing:
        print("- " + _row_text(r), file=sys.stderr)
    for r in extra:
        print("+ " + _row_text(r), file=sys.stderr)
    return 0 if match else 1


def cmd_nconst(args, em: Emitter) -> int:
    N = modular.n_constant(args.a)
    probe = modular.minimality_probe(args.a, N, args.order)
    F_ok = modular.is_integral_series(rescale(hypergeom.series_F(args.a, args.order), N)) is None
    em.record({
        "params": str(args.a),
        "N": N,
        "F_integral_to": args.order if F_ok else None,
        "minimality": {str(k): v for k, v in probe.items()},
    })
    return 0 if F_ok else 1


def cmd_yukawa(args, em: Emitter) -> int:
    if args.config:
        with open(args.config) as fh:
            cfg = json.load(fh)
    else:
        cfg = {"params": str(args.a or modular.QUINTIC)}
    if args.n0 is not None:
        cfg["n0"] = args.n0
    if args.N is not None:
        cfg["N"] = args.N
    case = modular.CYCase.from_config(cfg)
    dmax = args.dmax if args.dmax is not None else args.order - 1
    if dmax >= args.order:
        raise UsageError("--dmax must be below --order")
    rec = modular.case_report(case, args.order, dmax, args.iorder)
    em.record(rec)
    return 0 if rec["integrality"]["ok"] else 1


def cmd_congruence(args, em: Emitter) -> int:
    a, p, M = args.a, args.p, args.order
    fast = dwork.fast_congruence(a, p, M)
    theorem = dwork.dwork_theorem_check(a, p, M) if M >= p else None
    em.record({
        "params": str(a),
        "prime": p,
        "order": M,
        "image": str(dwork.dwork_image(a, p)),
        "fast_congruence_failure": fast,
        "theorem_failure": theorem,
        "equality": dwork.congruence_is_equality(a, p, M),
    })
    return 0 if fast is None and theorem is None else 1


def cmd_euler(args, em: Emitter) -> int:
    if len(args.a) != 2:
        raise UsageError("euler takes exactly two parameters")
    a1, b1 = args.a.a[1], args.a.a[0]
    holds = hypergeom.euler_identity_check(a1, b1, args.order)
    em.record({"a": format_rational(a1), "b": format_rational(b1),
               "order": args.order, "holds": holds})
    return 0 if holds else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "plain"), default="json")
    common.add_argument("--jobs", type=_positive, default=1)

    parser = argparse.ArgumentParser(
        prog="mirrorlab",
        description="Hypergeometric mirror maps, Dwork congruences and their integrality.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("series", parents=[common], help="coefficients of F, G, G/F, q, z(q)")
    p.add_argument("--a", type=_params, required=True)
    p.add_argument("--order", type=_positive, default=10)
    p.add_argument("--kind", action="append", choices=("F", "G", "ratio", "q", "zq"))
    p.add_argument("--N", default="1", help="rescaling constant or 'auto'")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("dwork-check", parents=[common], help="integrality report at one prime")
    p.add_argument("--a", type=_params, required=True)
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--order", type=_positive, default=60)
    p.set_defaults(func=cmd_dwork_check)

    p = sub.add_parser("sweep", parents=[common], help="integrality checks over good primes")
    p.add_argument("--a", type=_params, action="append", required=True)
    p.add_argument("--pmax", type=_positive, required=True)
    p.add_argument("--pmin", type=_positive, default=2)
    p.add_argument("--order", type=_positive, default=60)
    p.add_argument("--checks", type=_checks, default=CHECKS)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("classify", parents=[common], help="enumerate candidate tuples")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--bound", type=_positive, default=60, help="denominator bound (n = 2)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("genfun", parents=[common], help="counting generating function")
    p.add_argument("--terms", type=_positive, default=7)
    p.set_defaults(func=cmd_genfun)

    p = sub.add_parser("table1", parents=[common], help="reproduce a reference-table block and diff")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--n", dest="n_opt", type=int)
    p.add_argument("--bound", type=_positive, default=60)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("nconst", parents=[common], help="rescaling constant N")
    p.add_argument("--a", type=_params, required=True)
    p.add_argument("--order", type=_positive, default=30)
    p.set_defaults(func=cmd_nconst)

    p = sub.add_parser("yukawa", parents=[common], help="Yukawa coupling and instanton numbers")
    p.add_argument("--a", type=_params)
    p.add_argument("--config", help="case config JSON file")
    p.add_argument("--n0", type=_positive)
    p.add_argument("--N")
    p.add_argument("--order", type=_positive, default=12)
    p.add_argument("--dmax", type=_positive)
    p.add_argument("--iorder", type=_positive, default=6, help="q-order of the integrality suite")
    p.set_defaults(func=cmd_yukawa)

    p = sub.add_parser("congruence", parents=[common], help="Dwork congruences at one prime")
    p.add_argument("--a", type=_params, required=True)
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--order", type=_positive, default=30)
    p.set_defaults(func=cmd_congruence)

    p = sub.add_parser("euler", parents=[common], help="Euler identity for 2F1")
    p.add_argument("--a", type=_params, required=True, help="two parameters a,b")
    p.add_argument("--order", type=_positive, default=20)
    p.set_defaults(func=cmd_euler)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "p", None) is not None and hasattr(args, "a") and isinstance(args.a, HGParams):
        if not args.a.is_good(args.p):
            print(f"mirrorlab: error: {args.p} divides a parameter denominator", file=sys.stderr)
            return 2
    try:
        return args.func(args, Emitter(args.format))
    except (UsageError, MirrorLabError, ValueError) as exc:
        print(f"mirrorlab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
