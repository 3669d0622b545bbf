"""Command-line front end.

    python -m app gin-ideal --vars Z0,Z1,Z2 --order grevlex "Z0^2; Z1*Z2"
    python -m app map-invariants --map faran-4 --json
    python -m app compare --map-a faran-2 --map-b faran-3

Exit codes: 0 success, 1 usage or parse error, 2 invalid map,
3 genericity failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from typing import Optional, Sequence

from app.services.catalog import catalog, catalog_entries, catalog_entry, custom_map, parse_params
from app.services.errors import GenericityFailure, GinToolkitError, InvalidMap
from app.services.expression_parser import parse_polynomial_list, parse_real_form, parse_roster
from app.services.gin import DEFAULT_SEED, GinConfig, gin_ideal, gin_subspace, stability_check
from app.services.groebner import Ideal, borel_fixed_check
from app.services.hermitian import (
    cayley_j_unitary,
    holomorphic_decomposition_span,
    quotient_form_gin,
    real_form_gin,
)
from app.services.maps import (
    RationalMap,
    compare,
    homogenize_map,
    invariants,
    transform_map,
    verify_map,
)
from app.services.poly import MonomialOrder

logger = logging.getLogger(__name__)


class UsageError(GinToolkitError):
    exit_code = 1


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _common_options() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed of the random coordinate changes")
    common.add_argument("--coeff-bound", type=int, default=997, help="random entries are drawn from [-B, B]")
    common.add_argument("--retries", type=int, default=3, help="attempts before giving up on genericity")
    common.add_argument("--samples", type=int, default=2, help="independent draws that must agree")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--verbose", "-v", action="store_true", help="log progress to stderr")
    common.add_argument(
        "--assume-truncation-faithful", action="store_true",
        help="accept inputs marked as truncated series (no correctness guarantee)",
    )
    return common


def _map_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--map", help="catalog map name")
    parser.add_argument("--param", action="append", default=[], help="catalog parameter k=v (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = _ArgumentParser(prog="gin-invariants", description="Generic initial ideal invariants of hyperquadric maps")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gin-ideal", parents=[common], help="gin of a homogeneous ideal")
    p.add_argument("--vars", required=True, help="comma-separated variables, e.g. Z0,Z1,Z2")
    p.add_argument("--order", default="grevlex", help="grevlex or grlex")
    p.add_argument("--stability", type=int, default=0, help="also compare the gin across N seeds")
    p.add_argument("polys", help='generators separated by ";"')

    p = sub.add_parser("subspace-gin", parents=[common], help="gin of a finite-dimensional space of polynomials")
    p.add_argument("--vars", required=True)
    p.add_argument("--order", default="green-grlex", help="green-grlex or green-grevlex")
    p.add_argument("--truncated", action="store_true", help="the inputs are truncated power series")
    p.add_argument("polys")

    p = sub.add_parser("map-invariants", parents=[common], help="all gin invariants of a map")
    _map_options(p)
    _custom_map_options(p)
    p.add_argument("--orders", default="grevlex", help="comma-separated classical orders")
    p.add_argument("--stability", type=int, default=0)

    p = sub.add_parser("quotient", parents=[common], help="quotient q, a basis of H(q) and its gin")
    _map_options(p)
    _custom_map_options(p)
    p.add_argument("--order", default="grevlex")
    p.add_argument("--strategy", default="leading", choices=["leading", "trailing", "echelon"])

    p = sub.add_parser("compare", parents=[common], help="compare the invariants of two maps")
    p.add_argument("--orders", default="grevlex")
    p.add_argument("--map-a", dest="a_map")
    p.add_argument("--map-b", dest="b_map")
    p.add_argument("--param-a", dest="a_param", action="append", default=[])
    p.add_argument("--param-b", dest="b_param", action="append", default=[])

    p = sub.add_parser("catalog", parents=[common], help="list or show built-in maps")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    p.add_argument("--param", action="append", default=[])

    p = sub.add_parser("realform-gin", parents=[common], help="gin of the affine span of H(r) for a real polynomial r")
    p.add_argument("--vars", required=True, help="holomorphic variables; w<k> denotes conj(z<k>)")
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--order", default="green-grlex")
    p.add_argument("form")

    p = sub.add_parser("transform", parents=[common], help="apply random automorphisms to a map")
    _map_options(p)
    _custom_map_options(p)
    return parser


def _custom_map_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--source", help="source signature a,b")
    parser.add_argument("--target", help="target signature A,B")
    parser.add_argument("--num", help='numerators separated by ";"')
    parser.add_argument("--den", default="1", help="denominator")
    parser.add_argument("--vars", dest="map_vars", default=None, help="variables of a custom map (default z1..zn)")
    parser.add_argument("--cancel-common-monomial", action="store_true")


def _config(args) -> GinConfig:
    return GinConfig(
        seed=args.seed,
        coeff_bound=args.coeff_bound,
        max_retries=args.retries,
        verify_samples=args.samples,
        assume_truncation_faithful=args.assume_truncation_faithful,
    )


def _orders(text: str) -> list[MonomialOrder]:
    return [MonomialOrder.parse(part) for part in text.split(",") if part.strip()]


def _load_map(args, name: Optional[str] = None, params: Sequence[str] = ()) -> RationalMap:
    name = name if name is not None else getattr(args, "map", None)
    if name:
        f = catalog(name, parse_params(params or getattr(args, "param", [])))
    else:
        if not (getattr(args, "source", None) and getattr(args, "target", None) and getattr(args, "num", None)):
            raise UsageError("give --map NAME or all of --source, --target and --num")
        f = custom_map(args.source, args.target, args.num, args.den, args.map_vars)
    if getattr(args, "cancel_common_monomial", False):
        f = f.cancel_monomial_content()
    return f


def _emit(args, document: dict, lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(document, indent=2))
    else:
        for line in lines:
            print(line)


def _stability_lines(args, compute) -> tuple[bool, list[str]]:
    if not args.stability:
        return True, []
    seeds = [args.seed + k for k in range(args.stability)]
    result = stability_check(compute, seeds, _config(args))
    verdict = "stable" if result.stable else "UNSTABLE"
    return result.stable, [f"stability over {len(seeds)} seeds: {verdict}"]


def cmd_gin_ideal(args) -> int:
    roster = parse_roster(args.vars)
    order = MonomialOrder.parse(args.order)
    ideal = Ideal([p for p in parse_polynomial_list(args.polys, roster) if not p.is_zero()])
    result = gin_ideal(ideal, order, _config(args))
    stable, extra = _stability_lines(args, lambda cfg: gin_ideal(ideal, order, cfg))
    _emit(
        args,
        {"order": order.value, "seed": args.seed, "gin": result.monomial_strings(order),
         "borel_fixed": borel_fixed_check(result), "stable": stable},
        [result.format(order)] + extra,
    )
    return 0 if stable else GenericityFailure.exit_code


def cmd_subspace_gin(args) -> int:
    roster = parse_roster(args.vars)
    order = MonomialOrder.parse(args.order)
    polys = parse_polynomial_list(args.polys, roster)
    result = gin_subspace(polys, order, _config(args), roster=roster, truncated=args.truncated)
    _emit(
        args,
        {"order": order.value, "seed": args.seed, "gin": result.monomial_strings(order)},
        [", ".join(result.monomial_strings(order))],
    )
    return 0


def cmd_map_invariants(args) -> int:
    f = _load_map(args)
    orders = _orders(args.orders)
    report = invariants(f, _config(args), orders)
    stable, extra = _stability_lines(args, lambda cfg: invariants(f, cfg, orders).to_json() | {"seed": None})
    primary = orders[0]
    lines = [
        f"map: {report.map_name}  degree {report.degree}  source {report.source}  target {report.target}  "
        f"side {report.side:+d}",
    ]
    for order in orders:
        lines.append(f"gin components ({order.value}): {report.gin_components[order].format(order)}")
    lines.append(f"gin quotient ({primary.value}): {report.gin_quotient.format(primary)}")
    lines.append(f"gin afspan (green-grlex): {', '.join(report.gin_afspan.monomial_strings())}")
    lines.append(f"afspan cross-check: {'ok' if report.afspan_crosscheck else 'MISMATCH'}")
    _emit(args, report.to_json(), lines + extra)
    return 0 if stable else GenericityFailure.exit_code


def cmd_quotient(args) -> int:
    f = _load_map(args)
    order = MonomialOrder.parse(args.order)
    homogenized = homogenize_map(f)
    check = verify_map(homogenized)
    if not check.valid:
        raise InvalidMap(f"{f.label} does not map {f.source} into {f.target}: {check.message}")
    q = check.quotient
    span = holomorphic_decomposition_span(q, args.strategy)
    result = quotient_form_gin(q, _config(args), order, args.strategy)
    _emit(
        args,
        {
            "map": f.label,
            "side": check.side,
            "quotient": q.format(),
            "rank": len(span),
            "decomposition_span": [str(p) for p in span],
            "gin_quotient": result.monomial_strings(order),
        },
        [
            f"q = {q.format()}",
            f"side: {check.side:+d}",
            f"H(q) basis ({len(span)}):",
            *[f"  {p}" for p in span],
            f"gin ({order.value}): {result.format(order)}",
        ],
    )
    return 0


def cmd_compare(args) -> int:
    if not args.a_map or not args.b_map:
        raise UsageError("compare needs --map-a and --map-b")
    cfg = _config(args)
    orders = _orders(args.orders)
    report_a = invariants(_load_map(args, args.a_map, args.a_param), cfg, orders)
    report_b = invariants(_load_map(args, args.b_map, args.b_param), cfg, orders)
    comparison = compare(report_a, report_b)
    lines = [f"{c.status:<9} {c.check_name}: {c.value_a} | {c.value_b}" for c in comparison.checks]
    lines.append(f"verdict: {comparison.verdict}")
    _emit(args, comparison.to_json(), lines)
    return 0


def cmd_catalog(args) -> int:
    if args.action == "list":
        entries = catalog_entries()
        lines = [
            f"{e.name:<8} {str(e.source)}->{str(e.target)}  {e.description}"
            + (f"  [params: {', '.join(e.params)}]" if e.params else "")
            for e in entries
        ]
        _emit(args, {"maps": [e.to_json() for e in entries]}, lines)
        return 0
    if not args.name:
        raise UsageError("catalog show needs a map name")
    entry = catalog_entry(args.name)
    f = catalog(args.name, parse_params(args.param))
    homogenized = homogenize_map(f)
    _emit(
        args,
        entry.to_json() | {"map": f.format(), "homogenized": [str(p) for p in homogenized.components]},
        [
            f"{entry.name}: {entry.description}",
            f"source {f.source}  target {f.target}",
            f"F = {f.format()}",
            f"homogenized = {homogenized.format()}",
        ],
    )
    return 0


def cmd_realform_gin(args) -> int:
    roster = parse_roster(args.vars)
    order = MonomialOrder.parse(args.order)
    form = parse_real_form(args.form, roster, args.degree)
    result = real_form_gin(form, _config(args), order)
    _emit(
        args,
        {"order": order.value, "seed": args.seed, "rank": form.rank(), "gin": result.monomial_strings(order)},
        [", ".join(result.monomial_strings(order))],
    )
    return 0


def cmd_transform(args) -> int:
    f = _load_map(args)
    homogenized = homogenize_map(f)
    rng = random.Random(args.seed)
    source_signs = [-1] * f.source.homogeneous_negatives + [1] * f.source.a
    target_signs = [-1] * f.target.homogeneous_negatives + [1] * f.target.a
    tau = cayley_j_unitary(source_signs, rng)
    chi = cayley_j_unitary(target_signs, rng)
    moved = transform_map(homogenized, tau, chi)
    check = verify_map(moved)
    _emit(
        args,
        {"map": f.label, "seed": args.seed, "components": [str(p) for p in moved.components], "valid": check.valid},
        [f"chi o F o tau = {moved.format()}", f"still a hyperquadric map: {'yes' if check.valid else 'no'}"],
    )
    return 0


COMMANDS = {
    "gin-ideal": cmd_gin_ideal,
    "subspace-gin": cmd_subspace_gin,
    "map-invariants": cmd_map_invariants,
    "quotient": cmd_quotient,
    "compare": cmd_compare,
    "catalog": cmd_catalog,
    "realform-gin": cmd_realform_gin,
    "transform": cmd_transform,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    logging.basicConfig(
        level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING,
        format="%(message)s",
        stream=sys.stderr,
        force=True,
    )
    try:
        return COMMANDS[args.command](args)
    except GinToolkitError as exc:
        logger.debug("[ERROR] %s", type(exc).__name__, exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
