"""Command-line interface: subcommand dispatch and canonical JSON output.

Every successful run prints one JSON object with a top-level
`"schema": "conify/1"` key, keys sorted, exact scalars rendered as strings.
Exit codes: 0 success, 1 usage error, 2 domain error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import catalogue
from .degeneration import (
    build_test_configuration,
    central_fiber,
    flatness_witness,
    general_fiber,
    hilbert_function,
    stable_initial_ideal,
)
from .diophantine import (
    ReebVector,
    affine_hull,
    approximant_cone,
    cone_contains,
    default_corner_resolution,
    default_N,
    dirichlet_approximant,
    kronecker_corner_search,
    nice_approximant,
    one_in_span,
    rational_rank,
)
from .errors import ConifyError, ParseError
from .exactnum import parse_scalar
from .inputdoc import InputDocument, parse_input
from .numerics import rotation_from_target
from .poisson import (
    bracket_weight,
    check_scaleup,
    decompose_semiinvariant,
    form_weight,
    invariant_generators,
    jacobi_holds,
    preserves_ideal,
)
from .polyring import WeightData

SCHEMA = "conify/1"

SUBCOMMANDS = (
    "initial-ideal", "testconfig", "fiber", "flatness", "hilbert", "rank",
    "approximate", "cone", "poisson-check", "decompose", "invariants",
    "rotate", "demo",
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="conify", description=__doc__)
    sub = parser.add_subparsers(dest="command")

    def add(name, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--json", action="store_true", default=True, help="compact JSON (default)")
        p.add_argument("--pretty", action="store_true", help="indented JSON")
        return p

    for name in ("initial-ideal", "testconfig", "fiber", "flatness"):
        p = add(name)
        p.add_argument("--input", required=True, help="input document file")
        p.add_argument("--N", type=int, default=16, help="approximation threshold for irrational weights")
        p.add_argument("--cap", type=int, default=10**6)
        if name == "fiber":
            p.add_argument("--at", choices=("0", "1"), default="0")

    p = add("hilbert")
    p.add_argument("--input", required=True)
    p.add_argument("--degree-cap", type=int, default=8)

    p = add("rank")
    p.add_argument("--weights", required=True, help="comma-separated scalar list")
    p.add_argument("--field", default="rational", help="rational | quad:D")

    p = add("approximate")
    p.add_argument("--weights", required=True)
    p.add_argument("--field", default="rational")
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--n", type=int, default=None, help="ambient complex dimension")
    p.add_argument("--cap", type=int, default=10**6)

    p = add("cone")
    p.add_argument("--weights", required=True)
    p.add_argument("--field", default="rational")
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--resolution", type=int, default=None, help="corner cube side is 1/resolution")
    p.add_argument("--cap", type=int, default=10**6)

    p = add("poisson-check")
    p.add_argument("--input", required=True)

    p = add("decompose")
    p.add_argument("--weights", required=True, help="comma-separated positive integers")
    p.add_argument("--tweight", type=int, required=True)
    p.add_argument("--exponents", required=True,
                   help="comma-separated exponents, t exponent last")

    p = add("invariants")
    p.add_argument("--weights", required=True, help="comma-separated positive integers")
    p.add_argument("--tweight", type=int, required=True)
    p.add_argument("--cap", type=int, default=6)

    p = add("rotate")
    p.add_argument("--target", required=True, help="comma-separated d,e,f")

    p = add("demo")
    p.add_argument("name", choices=catalogue.names())

    return parser


# -- shared helpers ----------------------------------------------------------------

def _parse_field(text: str) -> int:
    if text == "rational":
        return 0
    if text.startswith("quad:"):
        try:
            return int(text.split(":", 1)[1])
        except ValueError:
            pass
    raise ConifyError(f"bad field {text!r} (use rational or quad:D)")


def _parse_weights_csv(text: str, d: int):
    entries = [part.strip() for part in text.split(",")]
    if not all(entries):
        raise ConifyError("empty entry in weight list")
    return tuple(parse_scalar(entry, d) for entry in entries)


def _read_document(path: str) -> InputDocument:
    try:
        with open(path, encoding="utf-8") as handle:
            return parse_input(handle.read())
    except OSError as exc:
        raise ConifyError(f"cannot read {path}: {exc.strerror}")


def _integer_weight_vector(doc: InputDocument) -> tuple[int, ...]:
    wd = doc.weight_data()
    fracs = [w.as_fraction() for w in wd.weights]
    scale = 1
    for f in fracs:
        scale = scale * f.denominator // _gcd(scale, f.denominator)
    return tuple(int(f * scale) for f in fracs)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _family_payload(doc: InputDocument, N: int, cap: int):
    """Build the degeneration family, routing irrational weights through
    a pair of nearest-integer approximations."""
    ideal = doc.ideal()
    if all(w.is_rational() for w in doc.weights):
        return build_test_configuration(ideal, _integer_weight_vector(doc)), None
    vector = ReebVector(doc.weights)
    first = dirichlet_approximant(vector, N, cap)
    second = dirichlet_approximant(vector, 2 * N, cap)
    if second.approximation() == first.approximation():
        second = dirichlet_approximant(vector, 4 * N, cap)
    stable = stable_initial_ideal(ideal, doc.weights,
                                  (first.approximation(), second.approximation()))
    tc = build_test_configuration(ideal, first.w_tilde)
    return tc, stable


# -- dispatch ---------------------------------------------------------------------

def run(args) -> dict:
    command = args.command

    if command in ("initial-ideal", "testconfig", "fiber", "flatness"):
        doc = _read_document(args.input)
        tc, stable = _family_payload(doc, args.N, args.cap)
        if command == "initial-ideal":
            fiber = stable if stable is not None else central_fiber(tc)
            return {"central_fiber": [str(g) for g in fiber.generators]}
        if command == "testconfig":
            return {
                "family": [str(g) for g in tc.family_ideal.generators],
                "ring": list(tc.ring),
                "weights": [str(w) for w in tc.weights.weights],
                "saturated": tc.saturated,
            }
        if command == "fiber":
            ideal = central_fiber(tc) if args.at == "0" else general_fiber(tc)
            return {"at": args.at, "fiber": [str(g) for g in ideal.generators]}
        return {"flat": flatness_witness(tc)}

    if command == "hilbert":
        doc = _read_document(args.input)
        wd = doc.weight_data()
        values = hilbert_function(doc.ideal(), wd, args.degree_cap)
        return {"dimensions": {str(k): v for k, v in values.items()}}

    if command == "rank":
        weights = _parse_weights_csv(args.weights, _parse_field(args.field))
        vector = ReebVector(weights)
        return {
            "rank": rational_rank(vector),
            "one_in_span": one_in_span(vector),
        }

    if command == "approximate":
        weights = _parse_weights_csv(args.weights, _parse_field(args.field))
        vector = ReebVector(weights, n=args.n)
        N = args.N
        if N is None:
            if args.n is None:
                raise ConifyError("give --N or --n to fix the approximation threshold")
            N = default_N(vector)
        report = nice_approximant(vector, N=N, cap=args.cap)
        return {"approximant": report.to_json_dict()}

    if command == "cone":
        weights = _parse_weights_csv(args.weights, _parse_field(args.field))
        vector = ReebVector(weights, n=args.n)
        if vector.is_rational():
            cone = approximant_cone(vector)
        else:
            hull = affine_hull(vector)
            N = args.N
            if N is None:
                N = default_N(vector) if args.n is not None else 16
            resolution = args.resolution or default_corner_resolution(hull, N)
            corners = kronecker_corner_search(vector, resolution, args.cap, hull)
            cone = approximant_cone(vector, corners, N)
        inside, certificate = cone_contains(cone, vector)
        payload = cone.to_json_dict()
        payload["contains_input"] = inside
        payload["certificate"] = [[idx, text] for idx, text in certificate] if certificate else None
        return payload

    if command == "poisson-check":
        doc = _read_document(args.input)
        wd = doc.weight_data()
        table = doc.poisson_table()
        if table is None:
            raise ConifyError("input document has no bracket block")
        payload: dict = {
            "jacobi_holds": jacobi_holds(table),
            "preserves_ideal": preserves_ideal(table, doc.ideal()),
        }
        weight = bracket_weight(table, wd)
        payload["bracket_weight"] = None if weight is None else str(weight)
        form = doc.form_table()
        if form is not None:
            fw = form_weight(form, wd)
            payload["form_weight"] = None if fw is None else str(fw)
        if wd.t_weight is not None:
            tc = None
            if all(w.is_rational() for w in doc.weights):
                tc = build_test_configuration(doc.ideal(), _integer_weight_vector(doc))
            payload["scaleup"] = check_scaleup(tc, table, wd).to_json_dict()
        return payload

    if command == "decompose":
        wvec = tuple(int(x) for x in args.weights.split(","))
        exponents = tuple(int(x) for x in args.exponents.split(","))
        wd = WeightData(tuple(Fraction(w) for w in wvec), t_weight=Fraction(args.tweight))
        prefix, factors, bounds = decompose_semiinvariant(exponents, wd)
        return {
            "prefix": list(prefix),
            "factors": [list(f) for f in factors],
            "bounds": {"C": list(bounds.C), "D": bounds.D, "m": bounds.m, "w": bounds.w},
        }

    if command == "invariants":
        wvec = tuple(int(x) for x in args.weights.split(","))
        wd = WeightData(tuple(Fraction(w) for w in wvec), t_weight=Fraction(args.tweight))
        gens = invariant_generators(wd, args.cap)
        return {"generators": [list(g) for g in gens]}

    if command == "rotate":
        parts = [float(x) for x in args.target.split(",")]
        if len(parts) != 3:
            raise ConifyError("--target needs exactly three components")
        sol = rotation_from_target(*parts)
        return {
            "c": sol.c,
            "axis": list(sol.axis),
            "theta": sol.theta,
            "rotation": [list(row) for row in sol.rotation],
        }

    if command == "demo":
        facts = catalogue.verify_entry(catalogue.ENTRIES[args.name])
        facts["ok"] = True
        return facts

    raise ConifyError(f"unknown subcommand {command!r}")


def render(payload: dict, pretty: bool) -> str:
    import json

    payload = {"schema": SCHEMA, **payload}
    if pretty:
        return json.dumps(payload, sort_keys=True, indent=2)
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        print(f"subcommands: {', '.join(SUBCOMMANDS)}", file=sys.stderr)
        return 1
    if args.command is None:
        print(f"subcommands: {', '.join(SUBCOMMANDS)}", file=sys.stderr)
        return 1
    try:
        payload = run(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConifyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(render(payload, getattr(args, "pretty", False)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
