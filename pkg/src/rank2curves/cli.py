"""Command-line front end.

Exit codes: 0 on success, 2 on bad arguments or violated hypotheses, 1 when a
certificate check fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import descent2, descent3
from .arith import is_prime
from .family import (
    CertificateError,
    HypothesisError,
    RankCertificate,
    certify,
    search_certificates,
    verify_certificate,
)
from .localsolve import (
    QuarticSpace,
    TernaryCubic,
    quartic_solvable_padic,
    quartic_solvable_real,
    ternary_cubic_solvable,
)
from .rootnum import local_root_numbers_Am, root_number_Am, root_number_Em

EXIT_OK, EXIT_INVARIANT, EXIT_USAGE = 0, 1, 2


def emit_certificate(cert: RankCertificate) -> str:
    """Canonical JSON: sorted keys, no whitespace, big integers as strings."""
    return json.dumps(cert.to_json_obj(), sort_keys=True, separators=(",", ":"))


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".jsonl")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cmd_search(args, out) -> int:
    if args.workers < 1:
        raise HypothesisError("--workers must be >= 1")
    certs = search_certificates(args.torsion, args.max_n, args.min_n, args.workers)
    text = "".join(emit_certificate(c) + "\n" for c in certs)
    if args.emit:
        _write_atomic(args.emit, text)
        print(f"{len(certs)} certificates written to {args.emit}", file=sys.stderr)
    else:
        out.write(text)
    return EXIT_OK


def _cmd_certify(args, out) -> int:
    index = args.b if args.torsion == 2 else args.a
    if index is None:
        raise HypothesisError("--torsion 2 needs --b; --torsion 3 needs --a")
    out.write(emit_certificate(certify(args.torsion, index, args.p, args.q)) + "\n")
    return EXIT_OK


def _cmd_descent2(args, out) -> int:
    m = args.m
    places = ["inf"] + [str(p) for p in descent2.bad_places(m)]
    result = {}
    for side in (descent2.PHI, descent2.PHI_DUAL):
        table = descent2.local_table(m, side, args.workers)
        members = [d for d, locs in table.items() if all(locs.values())]
        group = descent2.SelmerGroup2(side, m, tuple(members))
        result[side] = {"table": table, "members": members, "dim": group.dim}
    if args.json:
        obj = {
            side: {
                "table": {str(d): row for d, row in r["table"].items()},
                "members": [str(d) for d in r["members"]],
                "dim": r["dim"],
            }
            for side, r in result.items()
        }
        obj["rank_upper"] = result[descent2.PHI]["dim"] + result[descent2.PHI_DUAL]["dim"] - 2
        out.write(_dump(obj) + "\n")
        return EXIT_OK
    for side, r in result.items():
        out.write(f"{side}  (m = {m})\n")
        out.write("d".rjust(10) + "".join(pl.rjust(8) for pl in places) + "   Sel\n")
        for d, row in r["table"].items():
            cells = "".join(("yes" if row[pl] else "no").rjust(8) for pl in places)
            out.write(f"{d:>10}{cells}   {'*' if d in r['members'] else ''}\n")
        out.write(f"dim = {r['dim']}\n\n")
    upper = result[descent2.PHI]["dim"] + result[descent2.PHI_DUAL]["dim"] - 2
    out.write(f"rank upper bound: {upper}\n")
    return EXIT_OK


def _cmd_descent3(args, out) -> int:
    bound = descent3.alpha_upper(args.p, args.q)
    obj = {
        "p": str(args.p),
        "q": str(args.q),
        "alpha_families": {label: ok for label, ok in bound.family_solvable},
        "im_alpha_upper": [str(c.value) for c in sorted(bound.upper, key=lambda c: c.value)],
        "im_alpha_order_max": bound.upper_order,
        "congruence_exclusions": sorted(descent3.congruence_exclusions(args.p, args.q)),
    }
    try:
        cands = descent3.alpha_prime_candidates(args.p, args.q)
        obj["alpha_prime_candidates"] = [
            {"ij": list(ij), "v": str(v), "passes_Q2": ok} for ij, v, ok in cands
        ]
        obj["im_alpha_prime_order_max"] = descent3.alpha_prime_upper(args.p, args.q)
        obj["rank_upper"] = descent3.rank_interval_3(args.p, args.q, False, bound)[1]
    except descent3.OutsideProvenScope as exc:
        obj["alpha_prime"] = f"not bounded: {exc}"
    out.write(_dump(obj) + "\n")
    return EXIT_OK


def _cmd_rootnumber(args, out) -> int:
    if args.family == "E":
        out.write(_dump({"family": "E", "m": str(args.m), "root_number": root_number_Em(args.m)}) + "\n")
    else:
        local = {str(k): v for k, v in local_root_numbers_Am(args.m).items()}
        obj = {"family": "A", "m": str(args.m), "root_number": root_number_Am(args.m), "local": local}
        out.write(_dump(obj) + "\n")
    return EXIT_OK


def _cmd_localsolve(args, out) -> int:
    if args.kind == "quartic":
        space = QuarticSpace(args.d, args.B)
        if args.p == "inf":
            ans = quartic_solvable_real(space)
        else:
            ans = quartic_solvable_padic(space, _prime(args.p), args.method)
    else:
        space = TernaryCubic(*args.u)
        if args.p == "inf":
            ans = True  # odd degree: always real points
        else:
            ans = ternary_cubic_solvable(space, _prime(args.p), args.method)
    out.write(("solvable" if ans else "not solvable") + "\n")
    return EXIT_OK


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise HypothesisError(f"place must be a prime or 'inf', got {text!r}") from None
    if not is_prime(p):
        raise HypothesisError(f"{p} is not prime")
    return p


def _cmd_verify(args, out) -> int:
    fh = open(args.file, encoding="utf-8") if args.file else sys.stdin
    failures = 0
    try:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise HypothesisError(f"line {lineno}: not JSON ({exc.msg})") from None
            try:
                cert = verify_certificate(obj)
            except CertificateError as exc:
                failures += 1
                out.write(f"line {lineno}: FAIL {exc}\n")
                continue
            if emit_certificate(cert) != line.strip():
                failures += 1
                out.write(f"line {lineno}: FAIL not in canonical form\n")
                continue
            out.write(f"line {lineno}: ok {cert.family} index={cert.search_index} m={cert.m}\n")
    finally:
        if fh is not sys.stdin:
            fh.close()
    return EXIT_INVARIANT if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rank2curves", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("search", help="search prime pairs and certify every hit")
    s.add_argument("--torsion", type=int, choices=(2, 3), required=True)
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--min-n", type=int, default=1)
    s.add_argument("--emit", metavar="PATH", help="write JSON-Lines here instead of stdout")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=_cmd_search)

    c = sub.add_parser("certify", help="certify one instance")
    c.add_argument("--torsion", type=int, choices=(2, 3), required=True)
    c.add_argument("--a", type=int, help="index for torsion 3")
    c.add_argument("--b", type=int, help="index for torsion 2")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--q", type=int, required=True)
    c.set_defaults(func=_cmd_certify)

    d2 = sub.add_parser("descent2", help="2-isogeny Selmer tables for y^2 = x^3 + m x")
    d2.add_argument("--m", type=int, required=True)
    d2.add_argument("--json", action="store_true")
    d2.add_argument("--workers", type=int, default=1)
    d2.set_defaults(func=_cmd_descent2)

    d3 = sub.add_parser("descent3", help="3-isogeny image bounds for y^2 = x^3 + (pq)^2")
    d3.add_argument("--p", type=int, required=True)
    d3.add_argument("--q", type=int, required=True)
    d3.set_defaults(func=_cmd_descent3)

    r = sub.add_parser("rootnumber", help="global root number of E_m or A_m")
    r.add_argument("--family", choices=("E", "A"), required=True)
    r.add_argument("--m", type=int, required=True)
    r.set_defaults(func=_cmd_rootnumber)

    ls = sub.add_parser("localsolve", help="local solvability of one homogeneous space")
    kinds = ls.add_subparsers(dest="kind", required=True)
    lq = kinds.add_parser("quartic", help="d w^2 = d^2 + B z^4")
    lq.add_argument("--d", type=int, required=True)
    lq.add_argument("--B", type=int, required=True)
    lq.add_argument("--p", required=True, help="prime or 'inf'")
    lq.add_argument("--method", choices=("generic", "auto"), default="generic")
    lc = kinds.add_parser("cubic", help="u1 X^3 + u2 Y^3 + u3 Z^3 = 0")
    lc.add_argument("u", type=int, nargs=3, metavar="U")
    lc.add_argument("--p", required=True, help="prime or 'inf'")
    lc.add_argument("--method", choices=("generic", "auto"), default="auto")
    ls.set_defaults(func=_cmd_localsolve)

    v = sub.add_parser("verify", help="re-check JSON-Lines certificates")
    src = v.add_mutually_exclusive_group()
    src.add_argument("--stdin", action="store_true", help="read from stdin (default)")
    src.add_argument("--file", metavar="PATH")
    v.set_defaults(func=_cmd_verify)
    return parser


def run(argv=None, out=None) -> int:
    """Parse argv, run the subcommand and return the exit code."""
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args, out)
    except CertificateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (HypothesisError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> None:
    sys.exit(run(argv))
