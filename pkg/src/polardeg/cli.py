"""Command-line front end.

Every command prints one JSON document on standard output.  Exit codes:
0 success, 2 bad input, 3 undecided (a resource cap was hit), 4 internal
cross-check failure.  Errors are printed as ``{"error": kind, "detail": text}``.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from math import comb
from pathlib import Path

from . import arrangements as arr
from .classifier import classify, load_corpus, nonexistence_check_conic_cuspidal_cubic, verify_corpus
from .errors import CrossCheckFailure, InputError, PolarError
from .oracle import bezout_ledger_check, oracle_polar_degree
from .poly import Polynomial, parse_polynomial
from .polar import (
    ComponentSpec,
    cone_union_components,
    cremona_projective_degrees,
    arrangement_dt,
    normal_crossings_dt,
    pairwise_correction_q,
    polar_degree,
    polar_degree_plane,
    projective_degrees,
)

SCHEMA_VERSION = "1.0"
DEFAULT_SEED = 0


@dataclass(frozen=True)
class InputSpec:
    variables: tuple[str, ...]
    components: tuple[ComponentSpec, ...]

    @property
    def equation(self) -> Polynomial:
        f = Polynomial.one(self.variables)
        for c in self.components:
            f = f * c.polynomial
        return f


def parse_input(text: str) -> InputSpec:
    """Read the line format ``vars: x y z`` / ``component: EXPR [irreducible]`` / ``curve: EXPR``."""
    variables = None
    raw: list[tuple[str, bool]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise InputError(f"line {lineno}: expected 'key: value'")
        key, value = key.strip(), value.strip()
        if key == "vars":
            if variables is not None:
                raise InputError(f"line {lineno}: vars given twice")
            variables = tuple(value.split())
            if not variables or len(set(variables)) != len(variables):
                raise InputError(f"line {lineno}: bad variable list")
        elif key in ("component", "curve"):
            flag = False
            words = value.rsplit(None, 1)
            if len(words) == 2 and words[1] == "irreducible":
                value, flag = words[0], True
            raw.append((value, flag))
        else:
            raise InputError(f"line {lineno}: unknown key {key!r}")
    if variables is None:
        raise InputError("missing 'vars:' line")
    if not raw:
        raise InputError("no component given")
    comps = tuple(ComponentSpec(parse_polynomial(v, variables), b) for v, b in raw)
    return InputSpec(variables, comps)


def read_input(path: str) -> InputSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_input(text)


def _with_version(doc: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, **doc}


# ---------------------------------------------------------------------------
# commands


def cmd_compute(args) -> dict:
    spec = read_input(args.file)
    f = spec.equation
    if len(spec.variables) == 3:
        report = polar_degree_plane(f, args.seed)
        if args.oracle:
            result = oracle_polar_degree(report.singular_table.curve, args.seed)
            expected = 0 if result.degenerate else result.fiber_count
            report.oracle_verdict = expected == report.polar_degree
            if not report.oracle_verdict:
                raise CrossCheckFailure(f"oracle counted {expected}, formula gave {report.polar_degree}")
        return report.to_json()
    if args.oracle:
        raise InputError("the oracle works on plane curves only")
    degrees = projective_degrees(list(spec.components), args.seed)
    _, k = f.is_homogeneous()
    return {"k": k, "polar_degree": degrees[0], "projective_degrees": degrees, "method": "dispatch"}


def cmd_classify(args) -> dict:
    spec = read_input(args.file)
    if len(spec.variables) != 3:
        raise InputError("classification is for plane curves")
    if not all(c.asserted_irreducible for c in spec.components):
        raise InputError("mark every component 'irreducible' to classify")
    label, descriptor = classify(spec.components, args.seed)
    return {"label": label.to_json() if label else None, "descriptor": descriptor.to_json()}


def cmd_oracle(args) -> dict:
    spec = read_input(args.file)
    report = polar_degree_plane(spec.equation, args.seed)
    result = oracle_polar_degree(report.singular_table.curve, args.seed)
    counted = 0 if result.degenerate else result.fiber_count
    out = {"oracle": result.to_json(), "polar_degree": report.polar_degree, "agrees": counted == report.polar_degree}
    if not result.degenerate:
        out["bezout_ledger"] = bezout_ledger_check(report.singular_table.curve, result, report.singular_table)
    if not out["agrees"] or out.get("bezout_ledger") is False:
        raise CrossCheckFailure(json.dumps(out, sort_keys=True))
    return out


def cmd_corpus(args) -> dict:
    entries = load_corpus(args.path)
    report = verify_corpus(entries, args.seed)
    if report["failed"]:
        args.exit_code = 4
    return report


def cmd_arrangement(args) -> dict:
    if args.random is not None:
        if args.n is None:
            raise InputError("--random needs -n")
        a = arr.random_arrangement(args.n, args.random, random.Random(args.seed))
    else:
        if args.file is None:
            raise InputError("give FILE or --random r")
        spec = read_input(args.file)
        a = arr.Arrangement.from_forms([c.polynomial for c in spec.components])
        if args.n is not None and args.n != a.n:
            raise InputError(f"-n {args.n} does not match {len(spec.variables)} variables")
    return {
        "n": a.n,
        "r": a.r,
        "forms": [str(f) for f in a.forms()],
        "general_position": arr.is_general_position(a),
        "cone": arr.is_cone(a),
        "polar_degree": arr.arrangement_polar_degree(a, args.seed),
    }


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"bad integer list {text!r}") from None


def cmd_ncross(args) -> dict:
    degrees = _int_list(args.k)
    out = {"n": args.n, "degrees": degrees, "polar_degree": normal_crossings_dt(degrees, args.n)}
    if len(degrees) == 2:
        out["q"] = pairwise_correction_q(degrees[0], degrees[1], args.n)
    return out


def cmd_cremona(args) -> dict:
    return {"n": args.n, "projective_degrees": cremona_projective_degrees(args.n)}


def cmd_cone(args) -> dict:
    spec = read_input(args.file)
    base = list(spec.components)
    once = cone_union_components(base, args.seed)
    twice = cone_union_components(once, args.seed + 1)
    return {
        "polar_degree": polar_degree(base, args.seed),
        "cone_once": {"components": [str(c) for c in once], "polar_degree": polar_degree(once, args.seed)},
        "cone_twice": {"components": [str(c) for c in twice], "polar_degree": polar_degree(twice, args.seed)},
    }


def cmd_validate(args) -> dict:
    report = run_full_validation(args.seed, args.corpus)
    if report["failed"]:
        args.exit_code = 4
    return report


# ---------------------------------------------------------------------------
# validation


def _check(name: str, items) -> dict:
    """``items`` yields ``(label, ok, detail)``; exceptions count as failures."""
    passed, failures = 0, []
    for label, thunk in items:
        try:
            ok, detail = thunk()
        except PolarError as exc:
            ok, detail = False, f"{exc.kind}: {exc}"
        if ok:
            passed += 1
        else:
            failures.append({"item": label, "detail": detail})
    return {"name": name, "passed": passed, "failed": len(failures), "failures": failures}


def run_full_validation(seed: int = DEFAULT_SEED, corpus_path: str | None = None) -> dict:
    entries = sorted(load_corpus(corpus_path), key=lambda e: e.name)
    checks = []

    corpus = verify_corpus(entries, seed)
    checks.append(
        {
            "name": "corpus",
            "passed": corpus["passed"],
            "failed": corpus["failed"],
            "failures": [r for r in corpus["entries"] if not r["ok"]],
        }
    )

    def oracle_item(e):
        def run():
            report = polar_degree_plane(e.equation, seed, certify=False)
            res = oracle_polar_degree(report.singular_table.curve, seed)
            if res.degenerate:
                return report.polar_degree == 0, f"degenerate, d_t = {report.polar_degree}"
            ledger = bezout_ledger_check(report.singular_table.curve, res, report.singular_table)
            return res.fiber_count == report.polar_degree and ledger, f"fiber {res.fiber_count}, d_t {report.polar_degree}"

        return run

    checks.append(_check("oracle and Bezout ledger", [(e.name, oracle_item(e)) for e in entries]))

    def cone_item(e):
        def run():
            base = polar_degree(list(e.components), seed)
            once = polar_degree(cone_union_components(list(e.components), seed), seed)
            return base == once, f"{base} vs {once}"

        return run

    checks.append(_check("cone invariance", [(e.name, cone_item(e)) for e in entries]))

    def bruno_item(n):
        def run():
            rep = arr.bruno_property_check(n, n + 4, seed, trials=15)
            return rep["ok"], rep["counterexamples"]

        return run

    checks.append(_check("homaloidal arrangements", [(f"n={n}", bruno_item(n)) for n in (2, 3)]))

    def formulas():
        for n in range(1, 6):
            for k in range(1, 6):
                yield f"smooth k={k} n={n}", lambda k=k, n=n: (normal_crossings_dt([k], n) == (k - 1) ** n, None)
                for k2 in range(1, 6):
                    yield f"q k={k},{k2} n={n}", lambda k=k, k2=k2, n=n: (
                        normal_crossings_dt([k, k2], n) == (k - 1) ** n + (k2 - 1) ** n + pairwise_correction_q(k, k2, n),
                        None,
                    )
            for r in range(1, 9):
                yield f"lines r={r} n={n}", lambda r=r, n=n: (arrangement_dt(r, n) == normal_crossings_dt([1] * r, n), None)
            yield f"cremona n={n}", lambda n=n: (
                cremona_projective_degrees(n) == [comb(n, n - i) for i in range(n)] and arrangement_dt(n + 1, n) == 1,
                None,
            )

    checks.append(_check("formula consistency", formulas()))

    def nonexistence():
        rep = nonexistence_check_conic_cuspidal_cubic(20, seed)
        return rep["ok"], None

    checks.append(_check("conic contact search", [("cuspidal cubic", nonexistence)]))

    return {
        "seed": seed,
        "checks": checks,
        "passed": sum(c["passed"] for c in checks),
        "failed": sum(c["failed"] for c in checks),
    }


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="polardeg", description="Polar degrees of projective hypersurfaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def seeded(q):
        q.add_argument("--seed", type=int, default=DEFAULT_SEED)
        return q

    q = seeded(sub.add_parser("compute", help="polar degree and projective degrees"))
    q.add_argument("file")
    q.add_argument("--oracle", action="store_true", help="cross-check by counting a fiber")
    q.set_defaults(func=cmd_compute)

    q = seeded(sub.add_parser("classify", help="label a plane curve with small polar degree"))
    q.add_argument("file")
    q.set_defaults(func=cmd_classify)

    q = seeded(sub.add_parser("oracle", help="fiber count of the polar map"))
    q.add_argument("file")
    q.set_defaults(func=cmd_oracle)

    q = seeded(sub.add_parser("corpus", help="recompute the curve corpus"))
    q.add_argument("path", nargs="?")
    q.set_defaults(func=cmd_corpus)

    q = seeded(sub.add_parser("arrangement", help="hyperplane arrangement"))
    q.add_argument("file", nargs="?")
    q.add_argument("-n", type=int)
    q.add_argument("--random", type=int, metavar="R")
    q.set_defaults(func=cmd_arrangement)

    q = sub.add_parser("ncross", help="normal crossings closed form")
    q.add_argument("-n", type=int, required=True)
    q.add_argument("-k", required=True, metavar="K1,K2,...")
    q.set_defaults(func=cmd_ncross)

    q = sub.add_parser("cremona", help="projective degrees of the standard Cremona map")
    q.add_argument("-n", type=int, required=True)
    q.set_defaults(func=cmd_cremona)

    q = seeded(sub.add_parser("cone", help="polar degree after the cone-union construction"))
    q.add_argument("file")
    q.set_defaults(func=cmd_cone)

    q = seeded(sub.add_parser("validate", help="run every cross-check"))
    q.add_argument("--corpus")
    q.set_defaults(func=cmd_validate)
    return p


def _emit(doc: dict, stream) -> None:
    stream.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        args.exit_code = 0
        doc = args.func(args)
        _emit(_with_version(doc), stdout)
        return args.exit_code
    except PolarError as exc:
        _emit(_with_version({"error": exc.kind, "detail": str(exc)}), stdout)
        return exc.exit_code
    except RecursionError as exc:
        _emit(_with_version({"error": "undecided", "detail": f"recursion limit: {exc}"}), stdout)
        return 3
    except Exception as exc:  # never a bare traceback
        _emit(_with_version({"error": "internal-error", "detail": f"{type(exc).__name__}: {exc}"}), stdout)
        return 4


if __name__ == "__main__":
    sys.exit(main())
