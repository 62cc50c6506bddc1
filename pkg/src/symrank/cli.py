"""Command-line interface.

Exit codes: 0 success; 2 hypothesis violation or malformed input;
3 inadmissible (border rank, rank) pair; 4 construction failed verification;
5 a certificate or self-test check failed; 6 certificate schema mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .binary import BinForm, rank_binary
from .certify import SCHEMA, CertificateError, SchemaError, certify, verify_certificate
from .exact import as_rational
from .geom import ProjPoint
from .scheme import Scheme, h01
from .strata import (
    ConstructionError,
    HypothesisError,
    InadmissibleError,
    Witness,
    admissible,
    check_hypotheses,
    witness,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INADMISSIBLE = 3
EXIT_CONSTRUCTION = 4
EXIT_CHECK = 5
EXIT_SCHEMA = 6

BINFORM_HELP = """\
Coefficient convention: a_0 ... a_e stand for
    f = sum_i C(e, i) * a_i * x^(e-i) * y^i,
so (x + t*y)^e is (1, t, t^2, ..., t^e) and x^3*y is (0, 1, 0, 0, 0) up to
scale. Rationals may be written p/q.
"""


class UsageError(Exception):
    pass


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {path}: {exc}") from exc


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# -- admissible ---------------------------------------------------------------------


def _build_row(args: tuple) -> dict:
    m, s, d, r, seed, out_dir, budget = args
    row = {"m": m, "d": d, "s": s, "r": r, "band": admissible(m, s, d, r).tag, "witness": None}
    if row["band"] == "inadmissible":
        row["status"] = "inadmissible"
        return row
    try:
        W = witness(m, s, d, r, seed)
        certify(W, budget, seed)
    except (ConstructionError, CertificateError) as exc:
        row["status"] = f"failed ({exc})"
        return row
    if out_dir is not None:
        path = Path(out_dir) / f"witness_m{m}_s{s}_d{d}_r{r}.json"
        path.write_text(dump_json(W.to_json()))
        row["witness"] = str(path)
    row["status"] = "constructed+certified"
    return row


def cmd_admissible(args) -> int:
    m, s, d = args.m, args.s, args.d
    check_hypotheses(m, s, d)
    rs = range(s, 2 * d + s - 6)
    if args.build:
        if args.out_dir:
            Path(args.out_dir).mkdir(parents=True, exist_ok=True)
        jobs = [(m, s, d, r, args.seed, args.out_dir, args.budget) for r in rs]
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as ex:
                rows = list(ex.map(_build_row, jobs))
        else:
            rows = [_build_row(j) for j in jobs]
    else:
        rows = []
        for r in rs:
            band = admissible(m, s, d, r)
            rows.append({"m": m, "d": d, "s": s, "r": r, "band": band.tag, "params": band.params})
    if args.json:
        sys.stdout.write(dump_json(rows))
    else:
        for row in rows:
            extra = row.get("status") or " ".join(f"{k}={v}" for k, v in row.get("params", {}).items())
            print(f"{row['r']:4d}  {row['band']:<13} {extra}")
        ranks = [row["r"] for row in rows if row["band"] != "inadmissible"]
        print("admissible: {" + ", ".join(map(str, ranks)) + "}")
    if any(str(row.get("status", "")).startswith("failed") for row in rows):
        return EXIT_CONSTRUCTION
    return EXIT_OK


# -- witness / certify / verify -----------------------------------------------------------


def cmd_witness(args) -> int:
    W = witness(args.m, args.s, args.d, args.r, args.seed)
    _write(dump_json(W.to_json()), args.out)
    print(
        f"witness m={W.m} s={W.s} d={W.d} r={W.r} band={W.band} deg(A)={W.A.degree} |B|={len(W.B)}",
        file=sys.stderr if args.out in (None, "-") else sys.stdout,
    )
    return EXIT_OK


def cmd_certify(args) -> int:
    obj = _read_json(args.witness)
    try:
        W = Witness.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed witness: {exc}") from exc
    cert = certify(W, args.budget, args.seed)
    _write(dump_json(cert), args.out)
    print(f"certified br={W.s} sr={W.r} ({cert['sr_lower']['conclusion']})", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    obj = _read_json(args.certificate)
    verify_certificate(obj)
    print("OK")
    return EXIT_OK


# -- rank-binary / h1 ------------------------------------------------------------------


def cmd_rank_binary(args) -> int:
    try:
        coeffs = [as_rational(c) for c in args.coefficients]
        f = BinForm(tuple(coeffs))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad coefficients: {exc}") from exc
    if args.e is not None and args.e != f.e:
        raise UsageError(f"expected {args.e + 1} coefficients for degree {args.e}, got {len(coeffs)}")
    sys.stdout.write(dump_json(rank_binary(f).to_json()))
    return EXIT_OK


def parse_scheme(obj, m: int | None = None) -> Scheme:
    """Scheme JSON, or a bare list of points (reduced scheme)."""
    if isinstance(obj, list) and (not obj or isinstance(obj[0], list)):
        pts = [ProjPoint(tuple(as_rational(x) for x in p)) for p in obj]
        if not pts:
            return Scheme(m if m is not None else 2, ())
        return Scheme.from_points(pts)
    return Scheme.from_json(obj, m)


def cmd_h1(args) -> int:
    obj = _read_json(args.scheme)
    try:
        Z = parse_scheme(obj, args.m)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed scheme: {exc}") from exc
    if args.d < 0:
        raise UsageError("d must be non-negative")
    sys.stdout.write(dump_json(h01(Z, args.d).to_json()))
    return EXIT_OK


def cmd_selftest(args) -> int:
    from . import selftest

    only = None
    if args.only:
        only = {int(x) for x in args.only.split(",")}
    results = selftest.run(only=only, seed=args.seed, echo=print)
    failed = [r.id for r in results if not r.passed]
    if failed:
        print("FAILED criteria: " + ", ".join(map(str, failed)))
        return EXIT_CHECK
    print(f"all {len(results)} criteria passed")
    return EXIT_OK


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="symrank",
        description="Border rank / symmetric rank pairs of Veronese points: tables, witnesses, certificates.",
        epilog=__doc__ + "\n" + BINFORM_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("admissible", help="table of admissible ranks r for border rank s")
    a.add_argument("-m", type=int, required=True)
    a.add_argument("-s", type=int, required=True)
    a.add_argument("-d", type=int, required=True)
    a.add_argument("--build", action="store_true", help="construct and certify a witness for each admissible r")
    a.add_argument("--jobs", type=int, default=1)
    a.add_argument("--out-dir", default=None, help="write witness files here (with --build)")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--budget", type=int, default=200, help="falsification budget per certificate")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_admissible)

    w = sub.add_parser("witness", help="construct a point with border rank s and rank r")
    for flag in ("-m", "-s", "-d", "-r"):
        w.add_argument(flag, type=int, required=True)
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--out", default=None)
    w.set_defaults(func=cmd_witness)

    c = sub.add_parser("certify", help=f"certify a witness file (schema {SCHEMA})")
    c.add_argument("witness")
    c.add_argument("--out", default=None)
    c.add_argument("--budget", type=int, default=1000, help="falsification budget")
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_certify)

    v = sub.add_parser("verify", help="re-run every check of a certificate")
    v.add_argument("certificate")
    v.set_defaults(func=cmd_verify)

    rb = sub.add_parser(
        "rank-binary",
        help="rank and border rank of a binary form",
        description=BINFORM_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    rb.add_argument("coefficients", nargs="+")
    rb.add_argument("-e", type=int, default=None, help="degree (checked against the coefficient count)")
    rb.set_defaults(func=cmd_rank_binary)

    h = sub.add_parser("h1", help="h0 and h1 of I_Z(d) for a scheme JSON file (or - for stdin)")
    h.add_argument("scheme")
    h.add_argument("-d", type=int, required=True)
    h.add_argument("-m", type=int, default=None, help="ambient dimension for an empty scheme")
    h.set_defaults(func=cmd_h1)

    st = sub.add_parser("selftest", help="run the acceptance suite")
    st.add_argument("--only", default=None, help="comma-separated criterion ids")
    st.add_argument("--seed", type=int, default=0)
    st.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (HypothesisError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InadmissibleError as exc:
        print(f"inadmissible: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except ConstructionError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    except SchemaError as exc:
        print(f"schema mismatch: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except CertificateError as exc:
        print(f"FAIL {exc.item}: {exc.message}", file=sys.stderr)
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
