"""Command-line interface: prove, verify, search, check-weights.

Exit codes are a stable contract: 0 success, 1 mathematical failure,
2 input error.
"""

import argparse
import json
import os
import sys

from . import certio
from .canonical import phi_prime_power
from .ring import UsageError

EXIT_OK = 0
EXIT_MATH = 1
EXIT_INPUT = 2


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="heckecert",
        description="Certificates for Hecke eigenvalue congruences of level-1 "
                    "modular forms, and eigenform enumerations over Z/4 and Z/9.")
    sub = ap.add_subparsers(dest="command", required=True)

    prove = sub.add_parser("prove", help="discover and emit congruence certificates")
    prove.add_argument("--table", help="JSON file with ell, p, m, targets")
    prove.add_argument("--ell", type=int, help="Hecke index (prime, != p)")
    prove.add_argument("--p", type=int, help="congruence prime")
    prove.add_argument("--m", type=int, help="prime-power exponent")
    prove.add_argument("--targets",
                       help="inline targets as w0=c pairs, e.g. '0=8,2=2,4=5'")
    prove.add_argument("--out", default=".", help="output directory")
    prove.add_argument("--threads", type=int, default=None)
    prove.add_argument("--budget-group", type=int, default=None,
                       help="group closure element cap")
    prove.add_argument("--budget-reps", type=int, default=None,
                       help="maximum representatives per class pair")
    prove.add_argument("--batch", type=int, default=None,
                       help="relation classes added between solve attempts")

    verify = sub.add_parser("verify", help="independently verify a certificate file")
    verify.add_argument("--cert", required=True, help="certificate JSON file")
    verify.add_argument("--checks", type=int, default=5,
                        help="direct checks per certificate")

    search = sub.add_parser("search", help="enumerate eigenforms over Z/4 or Z/9")
    search.add_argument("--modulus", type=int, required=True, choices=(4, 9))
    search.add_argument("--out", default=".", help="output directory")
    search.add_argument("--format", default="csv", choices=("csv", "md", "json"),
                        help="primary report format (csv also writes md)")

    weights = sub.add_parser("check-weights",
                             help="per-weight congruence checks via Newton polygons")
    weights.add_argument("--kmin", type=int, default=12)
    weights.add_argument("--kmax", type=int, default=46)
    weights.add_argument("--check", default="all",
                         choices=("a3a5mod128", "a7mod9", "kolberg", "all"))
    return ap


def _load_table(args):
    from .prover import CongruenceTable

    if args.table:
        with open(args.table) as fh:
            doc = json.load(fh)
        try:
            targets = {int(k): int(v) for k, v in doc["targets"].items()}
            return CongruenceTable(int(doc["ell"]), int(doc["p"]),
                                   int(doc["m"]), targets)
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad table file: {exc}")
    if args.ell is None or args.p is None or args.m is None:
        raise UsageError("provide --table or all of --ell/--p/--m")
    if args.targets:
        targets = {}
        for part in args.targets.split(","):
            w0, _, c = part.partition("=")
            targets[int(w0)] = int(c)
    else:
        raise UsageError("provide --targets for an inline table")
    return CongruenceTable(args.ell, args.p, args.m, targets)


def cmd_prove(args):
    from . import prover

    try:
        table = _load_table(args)
    except (UsageError, OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    group_cap = args.budget_group or prover.DEFAULT_GROUP_CAP
    batch = args.batch or prover.DEFAULT_BATCH
    max_instances = args.budget_reps or prover.DEFAULT_MAX_INSTANCES
    print(f"prove: ell={table.ell} p={table.p} m={table.m} "
          f"targets={dict(sorted(table.targets.items()))}")
    print(f"budgets: group_cap={group_cap} batch={batch} "
          f"max_instances={max_instances} threads={args.threads or 'auto'}")
    report = prover.prove_table(table, group_cap=group_cap, batch=batch,
                                max_instances=max_instances,
                                threads=args.threads)
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out,
                        f"cert_ell{table.ell}_p{table.p}_m{table.m}.json")
    certio.write_file(report.to_file(), path)
    print(f"group: {report.group_size} elements "
          f"({'complete' if report.group_complete else 'truncated'})")
    print(f"certificates: {len(report.certificates)}, "
          f"failures: {len(report.failures)}")
    for f in report.failures:
        print(f"  FAILED class (i0={f['i0']}, w0={f['w0']}): {f['reason']}")
    print(f"wrote {path}")
    return EXIT_OK if report.ok else EXIT_MATH


def cmd_verify(args):
    from .verifier import verify_file

    try:
        cf = certio.read_file(args.cert)
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except certio.MalformedCertificate as exc:
        print(f"malformed certificate: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = verify_file(cf, direct_checks=args.checks)
    print(f"verified {report.checked} certificates "
          f"(ell={cf.ell}, p={cf.p}, m={cf.m})")
    for prob in report.problems:
        print(f"  FAILED {prob}")
    print("result:", "PASS" if report.ok else "FAIL")
    return EXIT_OK if report.ok else EXIT_MATH


def _write_csv(path, header, rows):
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(str(x) for x in row) + "\n")


def _write_md_table(fh, header, rows):
    fh.write("| " + " | ".join(header) + " |\n")
    fh.write("|" + "|".join("---" for _ in header) + "|\n")
    for row in rows:
        fh.write("| " + " | ".join(str(x) for x in row) + " |\n")


def cmd_search(args):
    from . import dcweak

    os.makedirs(args.out, exist_ok=True)
    primes = dcweak.PRIMES_TO_43
    a_cols = [f"a{p}" for p in primes]
    try:
        if args.modulus == 4:
            rows = dcweak.mod4_table_rows()
            header = a_cols + ["lambda", "twist", "weak", "form"]
            data = [[r["a"][p] for p in primes]
                    + [r["lambda"], r["twist"], r["weak"], r["form"]]
                    for r in rows]
            expected = 16
            stem = "dcweak_mod4"
        else:
            rows = dcweak.mod9_table_rows()
            header = a_cols + ["lambda", "i", "weight", "form"]
            data = [[r["a"][p] for p in primes]
                    + [r["lambda"], r["i"], r["weight"], r["form"]]
                    for r in rows]
            expected = 81
            stem = "dcweak_mod9"
    except AssertionError as exc:
        print(f"enumeration failed: {exc}", file=sys.stderr)
        return EXIT_MATH

    csv_path = os.path.join(args.out, stem + ".csv")
    _write_csv(csv_path, header, data)
    md_path = os.path.join(args.out, stem + ".md")
    with open(md_path, "w") as fh:
        fh.write(f"# Eigenforms with coefficients in Z/{args.modulus}\n\n")
        fh.write(f"{len(rows)} classes; coefficients a_p mod {args.modulus} "
                 "for primes p <= 43.\n\n")
        if args.modulus == 9:
            fh.write("## Reduction classes of integral eigenforms\n\n")
            strong = dcweak.strong_class_rows_mod9()
            srows = []
            for r in strong:
                if r["a"] is None:
                    srows.append([r["weight"]] + ["?"] * len(primes) + [r["method"]])
                else:
                    srows.append([r["weight"]] + [r["a"][p] for p in primes]
                                 + [r["method"]])
            _write_md_table(fh, ["weight"] + a_cols + ["method"], srows)
            fh.write("\n## All enumerated classes\n\n")
        _write_md_table(fh, header, data)
    if args.format == "json":
        json_path = os.path.join(args.out, stem + ".json")
        with open(json_path, "w") as fh:
            json.dump([{**r, "a": {str(k): v for k, v in r["a"].items()}}
                       for r in rows], fh, indent=2)
            fh.write("\n")
    print(f"{len(rows)} classes written to {csv_path} and {md_path}")
    if len(rows) != expected:
        return EXIT_MATH
    return EXIT_OK


def cmd_check_weights(args):
    from .dcweak import kolberg_check
    from .symbols import build_space, eigenvalue_congruence

    if args.kmin % 2 or args.kmax % 2:
        print("weights must be even", file=sys.stderr)
        return EXIT_INPUT
    all_ok = True
    c7 = {0: 5, 2: 8, 4: 2}
    print(f"{'k':>4}  {'a3 mod 128':>10}  {'a5 mod 128':>10}  "
          f"{'a7 mod 9':>8}  {'kolberg':>7}")
    for k in range(args.kmin, args.kmax + 2, 2):
        if k == 14 or k < 12:
            continue
        sp = build_space(k - 2)
        if sp.rank_splus == 0:
            continue
        results = {}
        if args.check in ("a3a5mod128", "all"):
            results["a3"] = eigenvalue_congruence(sp, 3, 1 + 3 ** (k - 1), 2, 7)
            results["a5"] = eigenvalue_congruence(sp, 5, 1 + 5 ** (k - 1), 2, 7)
        if args.check in ("a7mod9", "all"):
            results["a7"] = eigenvalue_congruence(sp, 7, c7[k % 6], 3, 2)
        if args.check in ("kolberg", "all") and 12 <= k <= 46:
            results["kolberg"] = kolberg_check(k)
        row_ok = all(results.values())
        all_ok = all_ok and row_ok

        def cell(key):
            if key not in results:
                return "-"
            return "pass" if results[key] else "FAIL"

        print(f"{k:>4}  {cell('a3'):>10}  {cell('a5'):>10}  "
              f"{cell('a7'):>8}  {cell('kolberg'):>7}")
    print("result:", "ALL PASS" if all_ok else "FAILURES PRESENT")
    return EXIT_OK if all_ok else EXIT_MATH


def main(argv=None):
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, which matches the input-error code
        return EXIT_INPUT if exc.code else EXIT_OK
    handlers = {
        "prove": cmd_prove,
        "verify": cmd_verify,
        "search": cmd_search,
        "check-weights": cmd_check_weights,
    }
    try:
        return handlers[args.command](args)
    except UsageError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
