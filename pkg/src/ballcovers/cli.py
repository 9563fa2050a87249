"""Command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 a cap or
scan budget was exceeded.  Data goes to stdout (or ``--out``), diagnostics to
stderr.  Output depends on argv alone, so reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from itertools import product

from . import covers, eisenstein, oracle
from .covers import CURVES, CoverSpec
from .eisenstein import CurveLabel
from .cyclic import subgroup_closure
from .errors import BudgetExceeded, CapExceeded, DisjointnessViolation, VerificationFailure

SCHEMA_VERSION = "1"
TSV_COLUMNS = ("j", "c_T0", "c_Tinf", "c_T1", "c_Tzeta", "total", "c1bar_sq", "c2bar")

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

# residue scans over [0, m)^4 stay cheap only for m <= 27
KERNEL_SCAN_BUDGET = oracle.ScanBudget(max_modulus=27, max_rank=4)


class Limits:
    def __init__(self, max_n: int | None):
        self.single = covers.MAX_N if max_n is None else max_n
        self.scan = covers.SCAN_MAX_N if max_n is None else max_n
        self.cusp_budget = oracle.ScanBudget(max_modulus=3**self.scan)


class Checks:
    """Named pass/fail results collected while a command runs."""

    def __init__(self):
        self.results: list[tuple[str, bool, str]] = []

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.results.append((name, bool(ok), detail))
        return ok

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.results)

    def failures(self):
        return [r for r in self.results if not r[1]]


def _per_curve(report) -> dict[str, int]:
    return {c.value: report.per_curve[c] for c in CURVES}


def _components(boundary) -> list[dict]:
    return [
        {
            "curve": c.curve.value,
            "coset_rep": c.coset_rep,
            "points_on_component": c.points_on_component,
            "self_intersection": c.self_intersection,
        }
        for c in boundary.components
    ]


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _tsv(rows) -> str:
    lines = ["\t".join(TSV_COLUMNS)]
    lines += ["\t".join(str(row[k]) for k in TSV_COLUMNS) for row in rows]
    return "\n".join(lines) + "\n"


def _spec(args) -> CoverSpec:
    if args.j is None:
        raise ValueError("--j is required")
    return CoverSpec(args.n, args.j)


def _cusp_checks(spec, limits, checks, use_oracle):
    report = covers.cusp_report(spec, max_n=limits.single)
    formula = covers.cusp_count_formula(spec)
    checks.add(f"cusps n={spec.n} j={spec.j}", report.total == formula,
               f"structural {report.total}, formula {formula}")
    checks.add(f"connected n={spec.n} j={spec.j}", report.connected)
    oracle_total = None
    if use_oracle:
        o = oracle.cusp_count_oracle(spec, limits.cusp_budget)
        oracle_total = o.total
        checks.add(f"oracle cusps n={spec.n} j={spec.j}",
                   o.per_curve == report.per_curve and o.connected == report.connected,
                   f"oracle {o.counts()}, structural {report.counts()}")
    return report, formula, oracle_total


def _scan_row(spec, limits, checks, use_oracle) -> dict:
    report, _, _ = _cusp_checks(spec, limits, checks, use_oracle)
    chern = covers.log_chern(spec, max_n=limits.single)
    checks.add(f"bmy n={spec.n} j={spec.j}", chern.bmy_equal,
               f"c1bar^2 = {chern.c1bar_sq}, c2bar = {chern.c2bar}")
    row = {"j": spec.j}
    row.update({f"c_{c.value}": report.per_curve[c] for c in CURVES})
    row.update(total=report.total, c1bar_sq=chern.c1bar_sq, c2bar=chern.c2bar)
    return row


def cmd_cusps(args, limits, checks) -> str:
    spec = _spec(args)
    if args.format == "tsv":
        return _tsv([_scan_row(spec, limits, checks, args.oracle)])
    report, formula, oracle_total = _cusp_checks(spec, limits, checks, args.oracle)
    out = {
        "schema_version": SCHEMA_VERSION,
        "n": spec.n,
        "j": spec.j,
        "degree": report.degree,
        "per_curve": _per_curve(report),
        "total": report.total,
        "formula_total": formula,
        "connected": report.connected,
    }
    if oracle_total is not None:
        out["oracle_total"] = oracle_total
    return _dump_json(out)


def cmd_scan(args, limits, checks) -> str:
    covers.check_cap(args.n, limits.scan)
    rows = [_scan_row(CoverSpec(args.n, j), limits, checks, args.oracle) for j in range(3**args.n)]
    if args.format == "json":
        return _dump_json({"schema_version": SCHEMA_VERSION, "n": args.n, "rows": rows})
    return _tsv(rows)


def cmd_chern(args, limits, checks) -> str:
    spec = _spec(args)
    chern = covers.log_chern(spec, max_n=limits.single)
    boundary = covers.boundary_report(spec, max_n=limits.single)
    checks.add("bmy", chern.bmy_equal, f"{chern.c1bar_sq} vs 3 * {chern.c2bar}")
    checks.add("boundary sum", boundary.self_intersection_sum == -4 * spec.degree,
               str(boundary.self_intersection_sum))
    if args.oracle:
        o = oracle.cover_chern_oracle(spec, limits.cusp_budget)
        checks.add("oracle chern", o == chern, f"oracle {o}")
    return _dump_json({
        "schema_version": SCHEMA_VERSION,
        "n": spec.n,
        "j": spec.j,
        "c1bar_sq": chern.c1bar_sq,
        "c2bar": chern.c2bar,
        "bmy_equal": chern.bmy_equal,
        "boundary": {
            "components": _components(boundary),
            "self_intersection_sum": boundary.self_intersection_sum,
            "disjoint": boundary.disjoint,
        },
    })


def cmd_base(args, limits, checks) -> str:
    spec = CoverSpec(0, 0)
    chern = covers.log_chern(spec)
    boundary = covers.boundary_report(spec)
    reference = oracle.base_chern_oracle()
    checks.add("base bmy", chern.bmy_equal)
    checks.add("base oracle agreement", chern == reference, f"oracle {reference}")
    checks.add("base boundary curves", len(boundary.components) == 4)
    return _dump_json({
        "schema_version": SCHEMA_VERSION,
        "boundary_curves": [
            {"curve": c.curve.value, "self_intersection": c.self_intersection}
            for c in boundary.components
        ],
        "boundary_curve_count": len(boundary.components),
        "c1bar_sq": chern.c1bar_sq,
        "c2bar": chern.c2bar,
        "bmy_equal": chern.bmy_equal,
        "oracle": {"c1bar_sq": reference.c1bar_sq, "c2bar": reference.c2bar},
    })


def build_certificate(n: int, limits: Limits, checks: Checks) -> dict:
    family = covers.family_search(n, max_n=limits.scan)
    members = []
    three_way = shear = bmy = True
    for member in family.members:
        spec = member.cusps.spec
        formula = covers.cusp_count_formula(spec)
        brute = oracle.cusp_count_oracle(spec, limits.cusp_budget)
        three_way &= member.cusps.total == formula == brute.total
        three_way &= brute.per_curve == member.cusps.per_curve
        # every member's compactification is carried onto the j = 0 one
        shear &= covers.verify_shear(spec, spec.j, max_n=limits.single)
        bmy &= member.chern.bmy_equal
        boundary = covers.boundary_report(spec, max_n=limits.single)
        members.append({
            "j": member.j,
            "per_curve": _per_curve(member.cusps),
            "total": member.cusps.total,
            "boundary_components": _components(boundary),
            "c1bar_sq": member.chern.c1bar_sq,
            "c2bar": member.chern.c2bar,
            "bmy_equal": member.chern.bmy_equal,
        })
    cert = {
        "schema_version": SCHEMA_VERSION,
        "surface": {"n": n, "blowup_point_count": family.blowup_points},
        "members": members,
        "checks": {
            "three_way_cusp_agreement": three_way,
            "shear_verified": shear,
            "bmy_all_equal": bmy,
            "pairwise_distinct": family.pairwise_distinct,
        },
    }
    for name, ok in cert["checks"].items():
        checks.add(name, ok)
    return cert


def cmd_family(args, limits, checks) -> str:
    return _dump_json(build_certificate(args.n, limits, checks))


def _j_range(args):
    if args.j is not None and not args.all:
        return [args.j]
    return range(3**args.n)


def verify_shear(args, limits, checks):
    pairs = failed = 0
    rs = None if args.r is None or args.all else [args.r]
    for j in _j_range(args):
        spec = CoverSpec(args.n, j)
        for r in rs or range(3**args.n):
            pairs += 1
            det = covers.shear_matrix(r).det()
            if det != 1 or not covers.verify_shear(spec, r, max_n=limits.single):
                failed += 1
                checks.add(f"shear n={args.n} j={j} r={r}", False,
                           f"det {det}; image is not K_{{{args.n},{covers.shear_target(spec, r)}}}")
        if args.oracle:
            scanned = oracle.kernel_by_residue_scan(spec.images, spec.degree, KERNEL_SCAN_BUDGET)
            checks.add(f"oracle kernel n={args.n} j={j}",
                       scanned == covers.kernel_of_sigma(spec, max_n=limits.single))
    checks.add(f"shear n={args.n}", not failed, f"{pairs} (j, r) pairs, {failed} failed")


def verify_bmy(args, limits, checks):
    for j in _j_range(args):
        spec = CoverSpec(args.n, j)
        chern = covers.log_chern(spec, max_n=limits.single)
        checks.add(f"bmy n={args.n} j={j}", chern.bmy_equal,
                   f"c1bar^2 = {chern.c1bar_sq}, c2bar = {chern.c2bar}")
        boundary = covers.boundary_report(spec, max_n=limits.single)
        checks.add(f"boundary n={args.n} j={j}",
                   boundary.self_intersection_sum == -4 * spec.degree and boundary.disjoint,
                   f"self-intersection sum {boundary.self_intersection_sum}")
        if args.oracle:
            checks.add(f"oracle chern n={args.n} j={j}",
                       oracle.cover_chern_oracle(spec, limits.cusp_budget) == chern)


def verify_ideal(args, limits, checks):
    for k in range(args.n + 1):
        report = eisenstein.ideal_kernel_report(k, max_n=limits.single)
        detail = f"indices {report['ideal_index']} / {report['kernel_index']}"
        if not report["equal"]:
            detail += f"; kernel vector {report['witness']} is not in (1-rho)^{k}"
        checks.add(f"ideal n={k}", report["equal"], detail)


def verify_subgroups(args, limits, checks):
    for label in CURVES:
        same, diff = eisenstein.compare_generators(label)
        checks.add(f"curve subgroup {label.value}", same,
                   "generators identical" if not diff else f"generator diff {diff}")
    specs = failed = 0
    for k in range(args.n + 1):
        for j in range(3**k):
            spec = CoverSpec(k, j)
            specs += 1
            parts = oracle.lift_partitions(spec, limits.cusp_budget)
            for label in CURVES:
                image = set(covers.curve_image(spec, label).elements())
                if image != next(p for p in parts[label] if 0 in p):
                    failed += 1
                    checks.add(f"image n={k} j={j} {label.value}", False)
    checks.add("curve images vs enumeration", not failed, f"{specs} covers")
    cases = failed = 0
    for m in range(1, 28):
        for gens in product(range(m), repeat=2):
            cases += 1
            if set(subgroup_closure(m, gens).elements()) != oracle.closure_by_enumeration(m, gens):
                failed += 1
                checks.add(f"closure m={m} gens={gens}", False)
    checks.add("cyclic closure vs enumeration", not failed, f"{cases} generator pairs")


def verify_all(args, limits, checks):
    covers.check_cap(args.n, limits.scan)
    for k in range(args.n + 1):
        m = 3**k
        for j in range(m):
            spec = CoverSpec(k, j)
            tag = f"n={k} j={j}"
            report = covers.cusp_report(spec, max_n=limits.single)
            brute = oracle.cusp_count_oracle(spec, limits.cusp_budget)
            formula = covers.cusp_count_formula(spec)
            checks.add(f"three-way {tag}", report.total == formula == brute.total
                       and report.per_curve == brute.per_curve)
            if k:
                decomposed = 1 + math.gcd(j, m) + math.gcd(j + 1, m) + (3 if j % 3 == 1 else 1)
                checks.add(f"decomposed formula {tag}", decomposed == formula)
                checks.add(f"Tzeta index {tag}",
                           covers.curve_image(spec, CurveLabel.TZETA).index in (1, 3))
            checks.add(f"connected {tag}", report.connected and brute.connected)
            checks.add(f"kernel index {tag}",
                       covers.kernel_of_sigma(spec, max_n=limits.single).index == m)
            checks.add(f"bmy {tag}", covers.log_chern(spec, max_n=limits.single).bmy_equal)
            boundary = covers.boundary_report(spec, max_n=limits.single)
            parts = oracle.lift_partitions(spec, limits.cusp_budget)
            sizes = sorted(len(p) for c in CURVES for p in parts[c])
            checks.add(f"boundary {tag}",
                       len(boundary.components) == report.total
                       and boundary.self_intersection_sum == -4 * m
                       and sorted(c.points_on_component for c in boundary.components) == sizes)
            bad = [r for r in range(m) if not covers.verify_shear(spec, r, max_n=limits.single)]
            checks.add(f"shear {tag}", not bad, f"{m} shears" + (f", failed r={bad}" if bad else ""))
    verify_subgroups(args, limits, checks)


VERIFIERS = {
    "shear": verify_shear,
    "bmy": verify_bmy,
    "ideal": verify_ideal,
    "subgroups": verify_subgroups,
    "all": verify_all,
}


def cmd_verify(args, limits, checks) -> str:
    VERIFIERS[args.what](args, limits, checks)
    if args.format == "json":
        return _dump_json({
            "schema_version": SCHEMA_VERSION,
            "check": args.what,
            "n": args.n,
            "passed": checks.ok,
            "results": [{"name": n, "ok": ok, "detail": d} for n, ok, d in checks.results],
        })
    lines = [f"{'PASS' if ok else 'FAIL'}\t{name}\t{detail}".rstrip("\t") for name, ok, detail in checks.results]
    lines.append(f"{'PASS' if checks.ok else 'FAIL'}\tverify {args.what} --n {args.n}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--max-n", type=int, default=None, help="override the cap on n")
    common.add_argument("--oracle", action="store_true", help="cross-check against brute force")

    parser = argparse.ArgumentParser(
        prog="ballcovers",
        description="Cusp counts, shear isomorphisms and log Chern numbers of "
                    "degree-3^n covers of Hirzebruch's ball quotient.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help, *, n=True, j=False, fmt=None):
        p = sub.add_parser(name, help=help, parents=[common])
        if n:
            p.add_argument("--n", type=int, required=True)
        if j:
            p.add_argument("--j", type=int)
        if fmt:
            p.add_argument("--format", choices=("json", "tsv"), default=fmt)
        return p

    add("cusps", "cusp counts of one cover", j=True, fmt="json")
    add("scan", "cusp counts and Chern numbers for every j", fmt="tsv")
    add("family", "certificate of covers with a shared compactification")
    add("chern", "log Chern numbers and boundary of one cover", j=True)
    add("base", "the degree-1 base example", n=False)
    p = add("verify", "run invariant checks", j=True, fmt=None)
    p.add_argument("what", choices=tuple(VERIFIERS))
    p.add_argument("--r", type=int)
    p.add_argument("--all", action="store_true", help="sweep every j (and r)")
    p.add_argument("--format", choices=("json", "text"), default="text")
    return parser


COMMANDS = {
    "cusps": cmd_cusps,
    "scan": cmd_scan,
    "family": cmd_family,
    "chern": cmd_chern,
    "base": cmd_base,
    "verify": cmd_verify,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    limits = Limits(args.max_n)
    checks = Checks()
    try:
        text = COMMANDS[args.command](args, limits, checks)
    except (CapExceeded, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (VerificationFailure, DisjointnessViolation) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for name, _, detail in checks.failures():
        print(f"check failed: {name} {detail}".rstrip(), file=sys.stderr)
    return EXIT_OK if checks.ok else EXIT_FAILED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
