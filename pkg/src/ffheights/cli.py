"""Command-line interface: ``ffheights COMMAND PROBLEM_FILE [flags]``.

Exit status is 0 on success, 1 for bad input (syntax, shape, not a
morphism, unreadable file) and 2 for internal failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .arith import fmt_rational
from .errors import FFHeightError
from .height import PositiveCertified, Preperiodic, classify, decimal_string, hhat_interval, Orbit
from .isotrivial import fixed_point_data, isotriviality_verdict, multiplier_invariants
from .problem import ProblemFile, parse_problem
from .scan import PointEnumSpec, scan

COMMANDS = ("height", "hhat", "classify", "orbit", "gap-scan", "isotrivial")
DEFAULTS = {"iters": 10, "budget": 20, "max_deg": 1, "coeff_bound": 1, "threads": 1}


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ffheights", description="Canonical heights of endomorphisms of P^k over Q(t).")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("problem", help="problem file, or - for standard input")
    p.add_argument("--point", action="append", help="restrict to these named points (repeatable)")
    p.add_argument("--iters", type=int, help="iterate count n for hhat and orbit")
    p.add_argument("--budget", type=int, help="iteration budget for classify and gap-scan")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--decimal", type=int, metavar="N", help="add N-digit approximate decimals")
    p.add_argument("--max-deg", type=int, dest="max_deg")
    p.add_argument("--coeff-bound", type=int, dest="coeff_bound")
    p.add_argument("--threads", type=int)
    return p


def _setting(args, problem: ProblemFile, key: str) -> int:
    val = getattr(args, key)
    if val is None:
        val = problem.options.get(key, DEFAULTS[key])
    if val < 0:
        raise InputError(f"--{key.replace('_', '-')} must be nonnegative")
    return val


def _points(args, problem: ProblemFile):
    if not args.point:
        return list(problem.points)
    known = dict(problem.points)
    missing = [n for n in args.point if n not in known]
    if missing:
        raise InputError(f"unknown point(s): {', '.join(missing)}")
    return [(n, known[n]) for n in args.point]


def _map_json(problem: ProblemFile) -> dict:
    f = problem.map
    cert = f.morphism_certificate
    return {
        "k": f.k,
        "d": f.d,
        "forms": f.to_strings(),
        "coeff_height": f.coeff_height,
        "defect_bound": f.defect_bound,
        "certificate": {"t0": fmt_rational(cert.t0), "resultant": fmt_rational(cert.value)},
    }


def _approx(q, digits: Optional[int]) -> str:
    return "" if digits is None else f" (~{decimal_string(q, digits)})"


def run(args, problem: ProblemFile) -> tuple[dict, list[str]]:
    """Compute the command; returns the JSON document and the text lines."""
    f = problem.map
    doc: dict = {"command": args.command, "map": _map_json(problem)}
    lines = [f"map {f}  (k={f.k}, d={f.d}, C={f.defect_bound})"]
    dec = args.decimal
    cmd = args.command

    if cmd == "height":
        rows = []
        for name, p in _points(args, problem):
            rows.append({"name": name, "point": p.to_strings(), "height": p.height})
            lines.append(f"{name} {p}  h = {p.height}")
        doc["points"] = rows
    elif cmd == "hhat":
        n = _setting(args, problem, "iters")
        rows = []
        for name, p in _points(args, problem):
            iv = hhat_interval(f, p, n)
            rows.append({"name": name, "point": p.to_strings(), "interval": iv.to_json(dec)})
            approx = "" if dec is None else f" ~ [{decimal_string(iv.lo, dec)}, {decimal_string(iv.hi, dec)}]"
            lines.append(f"{name} {p}  hhat in {iv}{approx}  (n={n})")
        doc["iters"] = n
        doc["points"] = rows
    elif cmd == "classify":
        budget = max(1, _setting(args, problem, "budget"))
        rows = []
        for name, p in _points(args, problem):
            v = classify(f, p, budget)
            rows.append({"name": name, "point": p.to_strings(), **v.to_json(dec)})
            lines.append(f"{name} {p}  {_verdict_text(v, dec)}")
        doc["budget"] = budget
        doc["points"] = rows
    elif cmd == "orbit":
        n = _setting(args, problem, "iters")
        rows = []
        for name, p in _points(args, problem):
            orb = Orbit(f, p)
            pts = [orb.point(i) for i in range(n + 1)]
            rows.append({"name": name, "orbit": [q.to_strings() for q in pts]})
            lines.append(f"{name}:")
            lines += [f"  {i}: {q}" for i, q in enumerate(pts)]
        doc["iters"] = n
        doc["points"] = rows
    elif cmd == "gap-scan":
        spec = PointEnumSpec(f.k, _setting(args, problem, "max_deg"), _setting(args, problem, "coeff_bound"))
        budget = max(1, _setting(args, problem, "budget"))
        threads = max(1, _setting(args, problem, "threads"))
        report = scan(f, spec, budget, workers=threads)
        doc["spec"] = {"k": spec.k, "max_deg": spec.max_deg, "coeff_bound": spec.coeff_bound}
        doc.update(report.to_json(dec))
        low = report.min_positive_lower
        lines.append(f"points {report.total}: preperiodic {report.preperiodic}, "
                     f"positive {report.positive_certified}, undecided {report.undecided}")
        lines.append("min positive lower bound: " + ("none" if low is None else fmt_rational(low) + _approx(low, dec)))
        for p, v in report.undecided_points:
            lines.append(f"  undecided {p}  hhat in {v.interval}")
    elif cmd == "isotrivial":
        data = fixed_point_data(f)
        inv = multiplier_invariants(f)
        verdict = isotriviality_verdict(f, inv)
        doc["fixed_points"] = {
            "phi": data.phi_string(),
            "infinity_fixed": data.infinity_fixed,
            "multiplier": data.multiplier_string(),
        }
        doc["invariants"] = inv.to_json()
        doc.update(verdict.to_json())
        lines.append(f"Phi = {data.phi_string()}, infinity fixed: {'yes' if data.infinity_fixed else 'no'}")
        lines += [f"{key} = {val}" for key, val in inv.to_json().items()]
        lines.append(_iso_text(verdict))
    return doc, lines


def _verdict_text(v, dec) -> str:
    if isinstance(v, Preperiodic):
        return f"Preperiodic tail={v.tail} period={v.period}"
    if isinstance(v, PositiveCertified):
        return f"PositiveCertified hhat >= {fmt_rational(v.lower)}{_approx(v.lower, dec)} (n={v.witness_n})"
    extra = ", orbit proven infinite" if v.not_preperiodic else ""
    return f"Undecided after {v.n_max} steps, hhat in {v.interval}{extra}"


def _iso_text(v) -> str:
    if v.kind == "NonIsotrivial":
        return f"NonIsotrivial ({v.witness} = {v.value} is not constant)"
    if v.kind == "Inconclusive":
        return f"Inconclusive: {v.reason}"
    return "Isotrivial"


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.problem == "-":
            text = sys.stdin.read()
        else:
            try:
                with open(args.problem, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as err:
                raise InputError(f"cannot read {args.problem}: {err.strerror}") from None
        if args.decimal is not None and args.decimal < 0:
            raise InputError("--decimal must be nonnegative")
        problem = parse_problem(text)
        doc, lines = run(args, problem)
    except FFHeightError as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return 1
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except SystemExit as err:
        return 0 if err.code in (0, None) else 1
    except Exception as err:  # noqa: BLE001
        print(f"internal error: {type(err).__name__}: {err}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))
    return 0


if __name__ == "__main__":
    sys.exit(main())
