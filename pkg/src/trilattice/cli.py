"""Command-line front end.

One subcommand per verification task, reporting on stdout (or --output)
in JSON, CSV, or text. JSON documents have the fixed shape

    {tool_version, config, results, violations, elapsed_ms}

and are rendered canonically (sorted keys, no whitespace), so a given
config produces byte-identical output across runs and worker counts. To
keep that true, config records only inputs that determine the result;
execution knobs (workers, output path, --quiet, --timing) stay out of
it, and elapsed_ms is null unless --timing opts into real timing.

Exit codes: 0 all checks passed, 1 at least one violation was found (the
run itself succeeded; the mathematics surprised us), 2 usage or
capability error with a one-line diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__, arith, chebyshev, jacobsthal, lattice
from .errors import CapabilityError

WORKERS_ENV = "TRILATTICE_WORKERS"
SIEVE_ENV = "TRILATTICE_SIEVE_LIMIT"


def _note(ns, msg: str) -> None:
    if not ns.quiet:
        print(msg, file=sys.stderr)


def _family_values(triple) -> list:
    return sorted(f.value for f in lattice.classify_families(triple))


def _pair_families(n: int, s: int, t: int) -> list:
    return _family_values(lattice.Triple(n, s, t))


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (config, results, violations, csv_rows)
# ---------------------------------------------------------------------------

def _run_verify(ns):
    workers = ns.workers or int(os.environ.get(WORKERS_ENV, "1"))
    _note(ns, f"verify: n in [{ns.range_from}, {ns.range_to}], "
              f"engine={'orbit' if ns.orbits else 'direct'}, workers={workers}")
    report = lattice.verify_range(ns.range_from, ns.range_to,
                                  use_orbits=ns.orbits, workers=workers)
    config = {"subcommand": "verify", "from": ns.range_from,
              "to": ns.range_to, "orbits": ns.orbits}
    violations = []
    for tr, cert in report.violations:
        violations.append({
            "kind": "unclassified_triple", "n": tr.n, "s": tr.s, "t": tr.t,
            "holds": cert.holds, "witness": cert.witness,
            "min_sum": cert.min_sum, "max_sum": cert.max_sum,
            "families": _family_values(tr),
        })
    results = {
        "counts": [[n, int(c)] for n, c in sorted(report.counts.items())],
        "total_satisfying": int(report.total_satisfying),
        "small_n_unclassified": [
            {"n": tr.n, "s": tr.s, "t": tr.t}
            for tr in report.small_n_exceptions
        ],
        "violation_count": len(violations),
    }
    _note(ns, f"verify: {report.total_satisfying} satisfying triples, "
              f"{len(violations)} violations")

    csv_rows = []
    for n in sorted(report.satisfying):
        for s, t in report.satisfying[n].tolist():
            fams = _pair_families(n, int(s), int(t))
            csv_rows.append((n, int(s), int(t), "true", "",
                             ";".join(fams)))
    return config, results, violations, csv_rows


def _run_check_triple(ns):
    mode = "full_scan" if ns.full_scan else "early_exit"
    triple = lattice.Triple(ns.n, ns.s, ns.t)
    rep = lattice.check_condition(triple, mode)
    config = {"subcommand": "check-triple", "n": ns.n, "s": ns.s,
              "t": ns.t, "mode": mode}
    results = {"holds": rep.holds, "witness": rep.witness,
               "min_sum": rep.min_sum, "max_sum": rep.max_sum,
               "families": _family_values(triple)}
    return config, results, [], None


def _run_enumerate(ns):
    triples = lattice.enumerate_satisfying(ns.n)
    config = {"subcommand": "enumerate", "n": ns.n}
    rows = []
    violations = []
    csv_rows = []
    for tr in triples:
        fams = _family_values(tr)
        rows.append({"s": tr.s, "t": tr.t, "families": fams})
        csv_rows.append((tr.n, tr.s, tr.t, "true", "", ";".join(fams)))
        if ns.n > lattice.SMALL_N_BOUND and not fams:
            cert = lattice.check_condition(tr, "full_scan")
            violations.append({
                "kind": "unclassified_triple", "n": tr.n, "s": tr.s,
                "t": tr.t, "holds": cert.holds, "witness": cert.witness,
                "min_sum": cert.min_sum, "max_sum": cert.max_sum,
                "families": fams,
            })
    results = {"count": len(rows), "triples": rows,
               "violation_count": len(violations)}
    return config, results, violations, csv_rows


def _run_jacobsthal_g(ns):
    res = jacobsthal.jacobsthal_g(ns.n)
    config = {"subcommand": "jacobsthal-g", "n": ns.n}
    results = {"g": res.g, "pair": list(res.attaining_pair)}
    return config, results, [], None


def _run_primorial(ns):
    res = jacobsthal.primorial_g(ns.k)
    config = {"subcommand": "jacobsthal-primorial", "k": ns.k}
    results = {"primorial": res.n, "g": res.g,
               "pair": list(res.attaining_pair)}
    return config, results, [], None


def _run_omega_check(ns):
    _note(ns, f"omega-check: k={ns.k}, n <= {ns.limit}")
    bound = jacobsthal.primorial_g(ns.k).g
    bad = jacobsthal.check_g_omega_monotone(ns.k, ns.limit)
    violations = [{"kind": "gap_monotone", "k": ns.k, "n": n,
                   "g": jacobsthal.jacobsthal_g(n).g, "bound": bound}
                  for n in bad]
    config = {"subcommand": "jacobsthal-omega-check", "k": ns.k,
              "limit": ns.limit}
    results = {"bound": bound, "violation_count": len(violations)}
    return config, results, violations, None


def _run_f(ns):
    config = {"subcommand": "f", "n": ns.n}
    results = {"f": jacobsthal.f_least(ns.n)}
    return config, results, [], None


def _run_f_bounds(ns):
    _note(ns, f"f-bounds: n <= {ns.limit}")
    found = jacobsthal.check_f_bounds(ns.limit)
    violations = []
    for rec in found:
        if rec["check"] == "product":
            violations.append({"kind": "f_product", "n": rec["n"],
                               "f": rec["f"], "p1": rec["p1"],
                               "p2": rec["p2"], "lhs": rec["lhs"],
                               "rhs": rec["rhs"]})
        else:
            violations.append({"kind": "f_seventeen", "n": rec["n"],
                               "f": rec["f"]})
    config = {"subcommand": "f-bounds", "limit": ns.limit}
    results = {
        "product_violations": sum(v["kind"] == "f_product" for v in violations),
        "seventeen_violations": sum(v["kind"] == "f_seventeen" for v in violations),
    }
    return config, results, violations, None


def _theta_table(ns, x_max: int) -> arith.PrimeTable:
    limit = ns.sieve_limit or int(os.environ.get(SIEVE_ENV, "0")) or x_max
    if limit < x_max:
        raise ValueError(
            f"sieve limit {limit} is below the sweep bound {x_max}")
    return arith.sieve(max(limit, 2))


def _sweep_violation_records(q, a, sweep):
    out = []
    for rec in sweep.lower_violations:
        out.append({"kind": "theta_lower", "q": q, "a": a, **rec})
    for rec in sweep.envelope_violations:
        out.append({"kind": "theta_envelope", "q": q, "a": a, **rec})
    return out


def _margin_dicts(events) -> list:
    return [{"kind": ev.kind, "q": ev.q, "a": ev.a, "x": ev.x,
             "holds": ev.holds, "lhs_high": ev.lhs_high,
             "rhs_high": ev.rhs_high} for ev in events]


def _run_theta(ns):
    table = _theta_table(ns, ns.x_max)
    config = {"subcommand": "theta", "q": ns.q, "x_max": ns.x_max,
              "envelope": ns.envelope}
    classes = []
    violations = []
    for a in chebyshev.unit_residues(ns.q):
        _note(ns, f"theta: class {a} mod {ns.q}, x <= {ns.x_max}")
        sweep = chebyshev.sweep_progressions(ns.q, a, ns.x_max, table,
                                             envelope=ns.envelope)
        violations.extend(_sweep_violation_records(ns.q, a, sweep))
        classes.append({
            "a": a,
            "minimal_valid_x": sweep.minimal_valid_x,
            "lower_violation_count": len(sweep.lower_violations),
            "envelope_violation_count": len(sweep.envelope_violations),
            "margin_events": _margin_dicts(sweep.margin_events),
        })
    results = {"classes": classes, "violation_count": len(violations)}
    return config, results, violations, None


def _run_lemmas(ns):
    limit = ns.limit
    if limit > 10**6:
        raise CapabilityError(f"suite limit capped at 10^6, got {limit}")
    config = {"subcommand": "lemmas", "limit": limit}
    checks = []
    violations = []

    _note(ns, f"suite: theta sweeps, q <= {chebyshev.MAX_MODULUS}, "
              f"x <= {limit}")
    table = _theta_table(ns, limit)
    worst_min_x = 0
    margin_total = 0
    lower_total = env_total = 0
    for q in range(1, chebyshev.MAX_MODULUS + 1):
        for a in chebyshev.unit_residues(q):
            sweep = chebyshev.sweep_progressions(q, a, limit, table,
                                                 envelope=True)
            violations.extend(_sweep_violation_records(q, a, sweep))
            worst_min_x = max(worst_min_x, sweep.minimal_valid_x)
            margin_total += len(sweep.margin_events)
            lower_total += len(sweep.lower_violations)
            env_total += len(sweep.envelope_violations)
    checks.append({"name": "theta_lower", "violations": lower_total,
                   "worst_minimal_valid_x": worst_min_x})
    checks.append({"name": "theta_envelope", "violations": env_total,
                   "margin_events": margin_total})

    _note(ns, f"suite: gap linear bound, n <= {limit}")
    bad_linear = jacobsthal.check_g_linear_bound(limit)
    for n in bad_linear:
        g = jacobsthal.jacobsthal_g(n).g
        violations.append({"kind": "gap_linear", "n": n, "g": g,
                           "lhs": 5 * g, "rhs": 2 * n})
    checks.append({"name": "gap_linear", "violations": len(bad_linear)})

    _note(ns, f"suite: f bounds, n <= {limit}")
    found = jacobsthal.check_f_bounds(limit)
    for rec in found:
        if rec["check"] == "product":
            violations.append({"kind": "f_product", "n": rec["n"],
                               "f": rec["f"], "p1": rec["p1"],
                               "p2": rec["p2"], "lhs": rec["lhs"],
                               "rhs": rec["rhs"]})
        else:
            violations.append({"kind": "f_seventeen", "n": rec["n"],
                               "f": rec["f"]})
    checks.append({"name": "f_product",
                   "violations": sum(r["check"] == "product" for r in found)})
    checks.append({"name": "f_seventeen",
                   "violations": sum(r["check"] == "seventeen" for r in found)})

    _note(ns, "suite: primorial gaps and omega monotonicity")
    primorials = []
    for k in range(1, jacobsthal.PRIMORIAL_MAX_K + 1):
        res = jacobsthal.primorial_g(k)
        primorials.append([k, res.n, res.g])
    checks.append({"name": "primorial_gaps", "values": primorials})
    mono_total = 0
    for k in range(1, jacobsthal.PRIMORIAL_MAX_K + 1):
        bound = primorials[k - 1][2]
        bad = jacobsthal.check_g_omega_monotone(k, limit)
        mono_total += len(bad)
        for n in bad:
            violations.append({"kind": "gap_monotone", "k": k, "n": n,
                               "g": jacobsthal.jacobsthal_g(n).g,
                               "bound": bound})
    checks.append({"name": "gap_omega_monotone", "violations": mono_total})

    results = {"checks": checks, "violation_count": len(violations)}
    return config, results, violations, None


def _run_report(ns):
    config = {"subcommand": "report", "inputs": list(ns.files)}
    summaries = []
    violations = []
    for path in ns.files:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        for key in ("tool_version", "config", "results", "violations"):
            if key not in doc:
                raise ValueError(f"{path}: not a recognized result document")
        summaries.append({
            "path": path,
            "subcommand": doc["config"].get("subcommand"),
            "violation_count": len(doc["violations"]),
        })
        violations.extend(doc["violations"])
    results = {"runs": summaries, "total_violations": len(violations)}
    return config, results, violations, None


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _render_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _render_csv(csv_rows) -> str:
    lines = ["n,s,t,holds,witness,families"]
    for n, s, t, holds, witness, fams in csv_rows:
        lines.append(f"{n},{s},{t},{holds},{witness},{fams}")
    return "\n".join(lines) + "\n"


def _render_text(doc) -> str:
    lines = [f"trilattice {doc['tool_version']}"]
    for key, value in sorted(doc["config"].items()):
        lines.append(f"  {key}: {value}")
    lines.append("results:")
    lines.append("  " + json.dumps(doc["results"], sort_keys=True))
    lines.append(f"violations: {len(doc['violations'])}")
    for v in doc["violations"][:50]:
        lines.append("  " + json.dumps(v, sort_keys=True))
    if len(doc["violations"]) > 50:
        lines.append(f"  ... {len(doc['violations']) - 50} more")
    return "\n".join(lines) + "\n"


def _emit(ns, text: str) -> None:
    if ns.output:
        with open(ns.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trilattice",
        description="Exact verification of residue-sum triple conditions, "
                    "coprime gap bounds, and prime class-sum inequalities.")
    parser.add_argument("--version", action="version",
                        version=f"trilattice {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"),
                        default="json")
    common.add_argument("--output", metavar="PATH")
    common.add_argument("--quiet", action="store_true",
                        help="suppress progress lines on stderr")
    common.add_argument("--timing", action="store_true",
                        help="report real elapsed_ms (breaks byte identity)")
    common.add_argument("--sieve-limit", type=int, metavar="N",
                        help="prime table size override")

    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("verify", parents=[common],
                       help="scan a range of n for unclassified triples")
    p.add_argument("--from", dest="range_from", type=int, required=True)
    p.add_argument("--to", dest="range_to", type=int, required=True)
    p.add_argument("--orbits", action="store_true",
                   help="test one representative per unit orbit")
    p.add_argument("--workers", type=int, default=0)
    p.set_defaults(handler=_run_verify)

    p = sub.add_parser("check-triple", parents=[common],
                       help="evaluate the condition on a single triple")
    p.add_argument("n", type=int)
    p.add_argument("s", type=int)
    p.add_argument("t", type=int)
    p.add_argument("--full-scan", action="store_true",
                   help="visit every unit instead of stopping at a witness")
    p.set_defaults(handler=_run_check_triple)

    p = sub.add_parser("enumerate", parents=[common],
                       help="list all satisfying triples for one n")
    p.add_argument("n", type=int)
    p.set_defaults(handler=_run_enumerate)

    p = sub.add_parser("jacobsthal", parents=[common],
                       help="maximal gaps between coprime integers")
    jsub = p.add_subparsers(dest="jacobsthal_op", required=True)
    pg = jsub.add_parser("g", parents=[common])
    pg.add_argument("n", type=int)
    pg.set_defaults(handler=_run_jacobsthal_g)
    pp = jsub.add_parser("primorial", parents=[common])
    pp.add_argument("k", type=int)
    pp.set_defaults(handler=_run_primorial)
    po = jsub.add_parser("omega-check", parents=[common])
    po.add_argument("k", type=int)
    po.add_argument("--limit", type=int, required=True)
    po.set_defaults(handler=_run_omega_check)

    p = sub.add_parser("f", parents=[common],
                       help="least a with a(a+2) coprime to n")
    p.add_argument("n", type=int)
    p.set_defaults(handler=_run_f)

    p = sub.add_parser("f-bounds", parents=[common],
                       help="product and seventeen bounds on f over a range")
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(handler=_run_f_bounds)

    p = sub.add_parser("theta", parents=[common],
                       help="prime log-sum inequalities over residue classes")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--x-max", dest="x_max", type=int, required=True)
    p.add_argument("--envelope", action="store_true")
    p.set_defaults(handler=_run_theta)

    p = sub.add_parser("lemmas", parents=[common],
                       help="run the whole bound suite at one limit")
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(handler=_run_lemmas)

    p = sub.add_parser("report", parents=[common],
                       help="merge previously saved JSON results")
    p.add_argument("files", nargs="+", metavar="FILE")
    p.set_defaults(handler=_run_report)

    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        config, results, violations, csv_rows = ns.handler(ns)
    except (CapabilityError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"trilattice: error: {exc}", file=sys.stderr)
        return 2
    elapsed_ms = int((time.perf_counter() - started) * 1000)
    doc = {
        "tool_version": __version__,
        "config": config,
        "results": results,
        "violations": violations,
        "elapsed_ms": elapsed_ms if ns.timing else None,
    }
    try:
        if ns.format == "csv":
            if csv_rows is None:
                print("trilattice: error: --format csv is only available for "
                      "verify and enumerate", file=sys.stderr)
                return 2
            _emit(ns, _render_csv(csv_rows))
        elif ns.format == "text":
            _emit(ns, _render_text(doc))
        else:
            _emit(ns, _render_json(doc))
    except BrokenPipeError:
        # downstream closed the pipe (head, grep -q, ...); not our failure
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return 1 if violations else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
