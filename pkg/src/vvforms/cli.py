"""Command-line interface.

Data goes to stdout as JSON (sorted keys); diagnostics go to stderr.

Exit codes:
  0  success
  1  a certificate failed re-verification, or a --compare-invariant check failed
  2  no invariants exist in this degree (n does not divide 2r or k does not divide r);
     argparse usage errors also exit 2
  3  malformed input (JSON, permutations, slot lists)
  4  dimension mismatch
  5  budget exceeded (a partial report is still printed)
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import permutations as _perms
from math import factorial

from .forms import BilinearForm, DimensionError
from .invariants import (
    GeneratorId,
    NoInvariantsError,
    canonicalize,
    enumerate_distinct,
    evaluate_at,
    evaluate_polynomial,
    existence_gate,
    generator_from_json,
    generator_tensor,
    weight_check,
)
from .permutations import Permutation, PermutationError
from .polynomials import discriminant, pencil_determinant
from .relations import (
    ShuffleSpec,
    VGen,
    WGen,
    combined_relation,
    iter_trivial_relations,
    kernel_span_check,
    symmetrized_relation,
    typeA_relation,
    typeB_relation,
)
from .tensor_space import interleave, symmetrize

EXIT_CHECK_FAILED = 1
EXIT_NO_INVARIANTS = 2
EXIT_BAD_JSON = 3
EXIT_DIMENSION = 4
EXIT_BUDGET = 5

JOBS_ENV = "VVFORMS_JOBS"


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _emit(data, out):
    out.write(json.dumps(data, sort_keys=True) + "\n")


def _rational_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _load_json(arg: str):
    try:
        if arg.lstrip().startswith(("{", "[")):
            return json.loads(arg)
        with open(arg) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(EXIT_BAD_JSON, f"cannot read JSON from {arg!r}: {exc}") from exc


def _load_form(arg):
    data = _load_json(arg)
    try:
        return BilinearForm.from_json(data)
    except DimensionError as exc:
        raise CliError(EXIT_DIMENSION, str(exc)) from exc
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise CliError(EXIT_BAD_JSON, f"malformed form: {exc}") from exc


def _load_generator(arg, n=None, k=None, r=None):
    data = _load_json(arg)
    if not isinstance(data, dict):
        raise CliError(EXIT_BAD_JSON, "generator JSON must be an object")
    try:
        return generator_from_json(data, n, k, r)
    except NoInvariantsError:
        raise
    except (DimensionError, PermutationError) as exc:
        raise CliError(EXIT_DIMENSION if isinstance(exc, DimensionError) else EXIT_BAD_JSON, str(exc)) from exc
    except (KeyError, ValueError, TypeError) as exc:
        raise CliError(EXIT_BAD_JSON, f"malformed generator: {exc}") from exc


def _load_matrix(arg):
    data = _load_json(arg)
    try:
        return [[Fraction(str(x)) for x in row] for row in data]
    except (TypeError, ValueError) as exc:
        raise CliError(EXIT_BAD_JSON, f"malformed matrix: {exc}") from exc


def _jobs(args) -> int:
    if getattr(args, "jobs", None):
        return max(1, args.jobs)
    env = os.environ.get(JOBS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _parallel_map(func, items, jobs):
    # ordered results; content never depends on ``jobs``
    if jobs <= 1 or len(items) < 64:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items, chunksize=32))


def _gate(n, k, r):
    if not existence_gate(n, k, r):
        raise NoInvariantsError(n, k, r)


def _poly_info(g):
    poly = evaluate_polynomial(g)
    return poly.to_json(), poly.is_zero(), poly.pretty()


# --- generators -------------------------------------------------------------------


def cmd_generators(args, out):
    _gate(args.n, args.k, args.r)
    if args.distinct:
        items = []
        for bf in enumerate_distinct(args.n, args.k, args.r):
            gid = bf.to_generator()
            items.append((bf, {**bf.to_json(), "sigma": str(gid.sigma), "eta": str(gid.eta)}))
    else:
        total = factorial(2 * args.r) * factorial(args.r)
        if total > args.limit:
            raise CliError(EXIT_BUDGET, f"{total} raw generators exceed --limit {args.limit}; use --distinct")
        items = []
        for s in _perms(range(1, 2 * args.r + 1)):
            for e in _perms(range(1, args.r + 1)):
                gid = GeneratorId(args.n, args.k, args.r, Permutation(s), Permutation(e))
                bf = canonicalize(gid)
                items.append((gid, {"sigma": str(gid.sigma), "eta": str(gid.eta), "canonical": bf.to_json()}))
    if args.polynomials or args.symmetrized:
        infos = _parallel_map(_poly_info, [g for g, _ in items], _jobs(args))
        for (_, record), (pjson, zero, pretty) in zip(items, infos):
            if args.polynomials:
                record["polynomial"] = pjson
                record["pretty"] = pretty
            if args.symmetrized:
                record["dropped"] = zero
                if zero:
                    record["reason"] = "symmetrizes to zero (zero polynomial)"
    records = [rec for _, rec in items]
    if args.pretty:
        for rec in records:
            label = f"sigma={rec['sigma']} eta={rec['eta']}"
            extra = f"  {rec['pretty']}" if "pretty" in rec else ""
            drop = "  [dropped: S(g)=0]" if rec.get("dropped") else ""
            out.write(label + extra + drop + "\n")
    else:
        _emit(records, out)
    return 0


# --- evaluate ---------------------------------------------------------------------


def cmd_evaluate(args, out):
    g = _load_generator(args.generator)
    if args.form:
        form = _load_form(args.form)
        try:
            value = evaluate_at(g, form)
        except DimensionError as exc:
            raise CliError(EXIT_DIMENSION, str(exc)) from exc
        if args.pretty:
            out.write(_rational_str(value) + "\n")
        else:
            _emit({"value": _rational_str(value), "num": str(value.numerator), "den": str(value.denominator)}, out)
    else:
        poly = evaluate_polynomial(g)
        if args.pretty:
            out.write(poly.pretty() + "\n")
        else:
            _emit(poly.to_json(), out)
    return 0


# --- relations --------------------------------------------------------------------


def _parse_slots(text, count, degree):
    if text is None:
        return tuple(range(1, count + 1))
    try:
        slots = tuple(int(s) for s in text.replace(",", " ").split())
    except ValueError as exc:
        raise CliError(EXIT_BAD_JSON, f"bad --slots {text!r}") from exc
    return slots


def _relation_stream(args):
    n, k, r = args.n, args.k, args.r
    kinds = ["typeA", "typeB"] if args.kind == "all" else [args.kind]
    for kind in kinds:
        if kind == "trivial":
            count = 0
            for cert in iter_trivial_relations(n, k, r, args.side):
                if count >= args.limit:
                    break
                count += 1
                yield cert
            continue
        m, degree = (n, 2 * r) if kind == "typeA" else (k, r)
        if args.kind == "all" and m + 1 > degree:
            continue  # too few slots for this side
        base = Permutation.parse(args.base, degree) if args.base else Permutation.identity(degree)
        spec = ShuffleSpec(base, _parse_slots(args.slots, m + 1, degree))
        cert = typeA_relation(n, r, spec) if kind == "typeA" else typeB_relation(k, r, spec)
        if kind == "typeA" and args.with_eta is not None:
            cert = combined_relation(cert, WGen(k, r, Permutation.parse(args.with_eta, r)))
        elif kind == "typeB" and args.with_sigma is not None:
            cert = combined_relation(VGen(n, r, Permutation.parse(args.with_sigma, 2 * r)), cert)
        if args.symmetrize:
            cert = symmetrized_relation(cert)
        yield cert


def _reverify(cert) -> bool:
    if cert.kind == "symmetrized":
        polys = [evaluate_polynomial(t) * c for c, t in cert.terms]
        total = sum(polys[1:], polys[0]) if polys else None
        dropped_ok = all(symmetrize(interleave(generator_tensor(t))).is_zero() for _, t in cert.dropped)
        return (total is None or total.is_zero()) and dropped_ok
    total = cert.expand()
    return total is None or total.is_zero()


def cmd_relations(args, out):
    _gate(args.n, args.k, args.r)
    if args.span_check:
        report = kernel_span_check(args.n, args.k, args.r, budget=args.budget)
        if args.pretty:
            out.write(report.summary() + "\n")
        else:
            _emit(report.to_json(), out)
        if report.truncated:
            raise CliError(EXIT_BUDGET, f"budget {args.budget} exceeded: {report.classes} classes")
        return 0 if report.spanned else EXIT_CHECK_FAILED
    status = 0
    for cert in _relation_stream(args):
        if args.verify and not _reverify(cert):
            status = EXIT_CHECK_FAILED
            print(f"re-verification failed: {cert.to_json()}", file=sys.stderr)
        if args.pretty:
            out.write(_pretty_cert(cert) + "\n")
        else:
            _emit(cert.to_json(), out)
    return status


def _pretty_cert(cert) -> str:
    def name(t):
        if isinstance(t, VGen):
            return f"v_{t.sigma}"
        if isinstance(t, WGen):
            return f"w^{t.eta}"
        return f"v_{t.sigma} (x) w^{t.eta}"

    parts = []
    for c, t in cert.terms:
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else f"{_rational_str(abs(c))} "
        parts.append(f"{sign} {mag}{name(t)}")
    body = " ".join(parts).lstrip("+ ") if parts else "0"
    text = f"[{cert.kind}/{cert.construction}] {body} = 0"
    if cert.dropped:
        text += "  (dropped, S = 0: " + ", ".join(name(t) for _, t in cert.dropped) + ")"
    return text + ("  verified" if cert.verified else "  UNVERIFIED")


# --- pencil -----------------------------------------------------------------------


def cmd_pencil(args, out):
    form = _load_form(args.form) if args.form else None
    if form is not None and (form.n, form.k) != (2, 2):
        raise CliError(EXIT_DIMENSION, "the pencil needs n = k = 2")
    q = pencil_determinant(form)
    status = 0
    if args.discriminant:
        disc = discriminant(q)
        payload = disc.to_json()
        text = disc.pretty()
        if args.compare_invariant:
            g = GeneratorId.parse(2, 2, 4, "(23)(67)", "(23)")
            inv = evaluate_polynomial(g) * Fraction(-1, 2)
            if form is not None:
                # numeric pencil: the discriminant is a constant polynomial
                ok = disc.evaluate(form.values()) == evaluate_at(g, form) * Fraction(-1, 2)
            else:
                ok = disc == inv
            text = ("pass" if ok else "fail") + ": discriminant = (-1/2)·f_{(23)(67)}^{(23)}"
            payload = {"discriminant": disc.to_json(), "compare_invariant": ok}
            status = 0 if ok else EXIT_CHECK_FAILED
    else:
        payload = q.to_json()
        text = q.pretty()
    if args.pretty:
        out.write(text + "\n")
    else:
        _emit(payload, out)
    return status


# --- weight-check -----------------------------------------------------------------


def _random_invertible(size, rng):
    from .forms import det

    while True:
        m = [[Fraction(rng.randint(-3, 3)) for _ in range(size)] for _ in range(size)]
        if det(m) != 0:
            return m


def cmd_weight_check(args, out):
    g = _load_generator(args.generator)
    n, k = g.n, g.k
    rng = random.Random(args.seed)
    results = []
    if args.random:
        for _ in range(args.random):
            form = BilinearForm(
                n, k, tuple(tuple(tuple(rng.randint(-4, 4) for _ in range(n)) for _ in range(n)) for _ in range(k))
            )
            results.append(weight_check(g, form, _random_invertible(n, rng), _random_invertible(k, rng)))
    else:
        if not (args.form and args.a and args.p):
            raise CliError(EXIT_BAD_JSON, "give --form, --a and --p, or --random N")
        form = _load_form(args.form)
        try:
            results.append(weight_check(g, form, _load_matrix(args.a), _load_matrix(args.p)))
        except DimensionError as exc:
            raise CliError(EXIT_DIMENSION, str(exc)) from exc
    ok = all(results)
    if args.pretty:
        out.write(f"{'pass' if ok else 'fail'}: {sum(results)}/{len(results)} samples\n")
    else:
        _emit({"passed": sum(results), "samples": len(results), "ok": ok}, out)
    return 0 if ok else EXIT_CHECK_FAILED


# --- entry point ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vvforms", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--jobs", type=int, default=None, help=f"worker processes (default: ${JOBS_ENV} or all cores)")
    # also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    def dims(p):
        p.add_argument("n", type=int, help="dim V")
        p.add_argument("k", type=int, help="dim W")
        p.add_argument("r", type=int, help="degree")

    p = sub.add_parser("generators", parents=[common], help="list generators of the degree-r invariants")
    dims(p)
    p.add_argument("--distinct", action="store_true", help="one representative per sign class")
    p.add_argument("--symmetrized", action="store_true", help="mark generators whose symmetrization vanishes")
    p.add_argument("--polynomials", action="store_true", help="attach each generator's polynomial")
    p.add_argument("--limit", type=int, default=100_000, help="refuse raw listings longer than this")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_generators)

    p = sub.add_parser("evaluate", parents=[common], help="evaluate a generator symbolically or on a form")
    p.add_argument("--generator", "-g", required=True, help="generator JSON (inline or file)")
    p.add_argument("--form", "-f", help="form JSON file; omit for the symbolic polynomial")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("relations", parents=[common], help="emit certified relations")
    dims(p)
    p.add_argument("--kind", choices=["typeA", "typeB", "trivial", "all"], default="all")
    p.add_argument("--base", help="base permutation in cycle notation (default identity)")
    p.add_argument("--slots", help="comma separated slots (default 1..m+1)")
    p.add_argument("--with-eta", help="tensor a typeA relation with w^eta")
    p.add_argument("--with-sigma", help="tensor a typeB relation with v_sigma")
    p.add_argument("--symmetrize", action="store_true", help="push the combined relation through S")
    p.add_argument("--side", choices=["v", "w", "both"], default="both", help="side for trivial relations")
    p.add_argument("--limit", type=int, default=1000, help="max trivial relations emitted")
    p.add_argument("--verify", action="store_true", help="independently re-expand every certificate")
    p.add_argument("--span-check", action="store_true", help="compare the relation span with the kernel")
    p.add_argument("--budget", type=int, default=5000, help="max generator classes for --span-check")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("pencil", parents=[common], help="det(x B1 + y B2) and its discriminant")
    p.add_argument("--form", "-f", help="form JSON file; omit for symbolic")
    p.add_argument("--discriminant", action="store_true")
    p.add_argument("--compare-invariant", action="store_true")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_pencil)

    p = sub.add_parser("weight-check", parents=[common], help="check the relative-invariance law")
    p.add_argument("--generator", "-g", required=True)
    p.add_argument("--form", "-f")
    p.add_argument("--a", help="n x n matrix JSON")
    p.add_argument("--p", help="k x k matrix JSON")
    p.add_argument("--random", type=int, default=0, help="check N random samples instead")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_weight_check)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except NoInvariantsError:
        print("no invariants: n∤2r or k∤r", file=sys.stderr)
        return EXIT_NO_INVARIANTS
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except DimensionError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_DIMENSION
    except (PermutationError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BAD_JSON


if __name__ == "__main__":
    sys.exit(main())
