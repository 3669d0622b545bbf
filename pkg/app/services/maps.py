"""Rational maps between hyperquadrics and their gin invariants."""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from app.services.errors import (
    AllComponentsZero,
    DimensionMismatch,
    InvalidMap,
    NotDivisible,
    RosterMismatch,
    SignatureMismatch,
    UnsupportedOrder,
    ZeroPolynomial,
)
from app.services.gin import GinConfig, MonomialSubspace, afspan_gin_via_homogenization, gin_ideal, gin_subspace
from app.services.groebner import Ideal, MonomialIdeal
from app.services.hermitian import HermitianForm, Signature, divide_by_norm, quotient_form_gin, squared_norm_form
from app.services.linalg import Matrix, row_reduce
from app.services.poly import (
    MonomialOrder,
    MultiIndex,
    Polynomial,
    dehomogenize,
    homogenize,
)

logger = logging.getLogger(__name__)


def homogeneous_roster(n: int) -> tuple[str, ...]:
    return tuple(f"Z{k}" for k in range(n + 1))


def affine_roster(n: int) -> tuple[str, ...]:
    return tuple(f"z{k}" for k in range(1, n + 1))


@dataclass
class RationalMap:
    """F = (P_1, ..., P_N) / Q from Q(a, b) into Q(A, B), negative slots first."""
    source: Signature
    target: Signature
    numerators: list[Polynomial]
    denominator: Polynomial
    name: str = ""
    params: dict = field(default_factory=dict)
    description: str = ""

    def __post_init__(self):
        if self.denominator.is_zero():
            raise InvalidMap("the denominator is identically zero")
        if len(self.numerators) != self.target.dimension:
            raise InvalidMap(
                f"{len(self.numerators)} components given but target {self.target} needs {self.target.dimension}"
            )
        roster = self.denominator.roster
        if len(roster) != self.source.dimension:
            raise RosterMismatch(f"roster {roster} does not fit source {self.source}")
        for p in self.numerators:
            if p.roster != roster:
                raise RosterMismatch(f"component roster {p.roster} differs from {roster}")

    @property
    def roster(self) -> tuple[str, ...]:
        return self.denominator.roster

    @property
    def nvars(self) -> int:
        return len(self.roster)

    @property
    def label(self) -> str:
        return self.name or "custom"

    def is_polynomial(self) -> bool:
        return self.denominator.is_constant()

    def cancel_monomial_content(self) -> "RationalMap":
        """Divide numerators and denominator by their largest common monomial."""
        pieces = [self.denominator] + [p for p in self.numerators if not p.is_zero()]
        common = tuple(
            min(alpha[k] for p in pieces for alpha in p.terms) for k in range(self.nvars)
        )
        if not any(common):
            return self

        def strip(p: Polynomial) -> Polynomial:
            return Polynomial(p.roster, {tuple(a - c for a, c in zip(alpha, common)): v for alpha, v in p.terms.items()})

        logger.info("[MAPS] cancelled common monomial %s", common)
        return RationalMap(
            source=self.source,
            target=self.target,
            numerators=[strip(p) for p in self.numerators],
            denominator=strip(self.denominator),
            name=self.name,
            params=dict(self.params),
            description=self.description,
        )

    def format(self) -> str:
        body = "(" + ", ".join(str(p) for p in self.numerators) + ")"
        if self.denominator == 1:
            return body
        return f"{body} / ({self.denominator})"

    def __str__(self) -> str:
        return self.format()


@dataclass
class HomogenizedMap:
    """Components in Z0..Zn of common degree; component 0 is the denominator."""
    source: Signature
    target: Signature
    degree: int
    components: list[Polynomial]
    name: str = ""

    def __post_init__(self):
        if len(self.components) != self.target.dimension + 1:
            raise DimensionMismatch(f"{len(self.components)} components for target {self.target}")
        for p in self.components:
            if not p.is_zero() and (not p.is_homogeneous() or p.total_degree() != self.degree):
                raise InvalidMap(f"component {p} is not homogeneous of degree {self.degree}")

    @property
    def roster(self) -> tuple[str, ...]:
        return self.components[0].roster

    def dehomogenize(self, roster: Optional[Sequence[str]] = None) -> RationalMap:
        roster = tuple(roster) if roster is not None else affine_roster(self.source.dimension)
        parts = [dehomogenize(p, self.roster[0], roster) for p in self.components]
        return RationalMap(self.source, self.target, parts[1:], parts[0], name=self.name)

    def format(self) -> str:
        return "(" + ", ".join(str(p) for p in self.components) + ")"

    def __str__(self) -> str:
        return self.format()


def homogenize_map(f: RationalMap) -> HomogenizedMap:
    """Homogenize numerators and denominator to their common top degree.

    Common factors are kept, so a zero component keeps its slot.
    """
    d = max(p.total_degree() for p in [f.denominator] + f.numerators)
    roster = homogeneous_roster(f.nvars)
    components = [homogenize(p, d, roster[0], roster[1:]) for p in [f.denominator] + f.numerators]
    return HomogenizedMap(f.source, f.target, d, components, name=f.name)


@dataclass
class VerificationResult:
    valid: bool
    side: int = 1
    message: str = ""
    quotient: Optional[HermitianForm] = None


def verify_map(f: HomogenizedMap) -> VerificationResult:
    """Check that F takes HQ(a, b+1) into HQ(A, B+1); never raises for bad maps."""
    try:
        r = squared_norm_form(f.components, f.target.homogeneous_negatives, f.degree)
        q, side = divide_by_norm(r, f.source)
    except NotDivisible as exc:
        logger.info("[MAPS] %s is not a map %s -> %s: %s", f.name or "map", f.source, f.target, exc)
        return VerificationResult(valid=False, message=str(exc))
    return VerificationResult(valid=True, side=side, message="divisible", quotient=q)


def component_ideal(f: HomogenizedMap) -> Ideal:
    generators = [p for p in f.components if not p.is_zero()]
    if not generators:
        raise AllComponentsZero("every component of the map is zero")
    return Ideal(generators)


@dataclass
class InvariantReport:
    map_name: str
    degree: int
    source: Signature
    target: Signature
    orders: list[MonomialOrder]
    seed: int
    side: int
    gin_components: dict[MonomialOrder, MonomialIdeal]
    gin_quotient: MonomialIdeal
    gin_afspan: MonomialSubspace
    afspan_via_homogenization: MonomialSubspace
    quotient_rank: int = 0
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def primary_order(self) -> MonomialOrder:
        return self.orders[0]

    @property
    def afspan_crosscheck(self) -> bool:
        return self.gin_afspan == self.afspan_via_homogenization

    def to_json(self) -> dict:
        """Stable JSON document; timings are left out."""
        primary = self.primary_order
        return {
            "map": self.map_name,
            "degree": self.degree,
            "source": self.source.as_list(),
            "target": self.target.as_list(),
            "orders": [o.value for o in self.orders],
            "seed": self.seed,
            "side": self.side,
            "gin_components": self.gin_components[primary].monomial_strings(primary),
            "gin_components_by_order": {
                o.value: self.gin_components[o].monomial_strings(o) for o in self.orders
            },
            "gin_quotient": self.gin_quotient.monomial_strings(primary),
            "gin_afspan": self.gin_afspan.monomial_strings(),
            "afspan_crosscheck": self.afspan_crosscheck,
        }


def invariants(
    f: RationalMap,
    cfg: GinConfig,
    orders: Sequence[MonomialOrder] = (MonomialOrder.GREVLEX,),
) -> InvariantReport:
    """Component gins, quotient gin and affine-span gin of a verified map."""
    orders = list(orders)
    if not orders:
        raise UnsupportedOrder("at least one order is required")
    timings: dict[str, float] = {}

    start = time.perf_counter()
    homogenized = homogenize_map(f)
    check = verify_map(homogenized)
    timings["verify"] = time.perf_counter() - start
    if not check.valid:
        raise InvalidMap(f"{f.label} does not map {f.source} into {f.target}: {check.message}")

    start = time.perf_counter()
    ideal = component_ideal(homogenized)
    components = {order: gin_ideal(ideal, order, cfg) for order in orders}
    timings["gin_components"] = time.perf_counter() - start

    start = time.perf_counter()
    quotient = quotient_form_gin(check.quotient, cfg, orders[0])
    timings["gin_quotient"] = time.perf_counter() - start

    start = time.perf_counter()
    direct = gin_subspace([f.denominator] + f.numerators, MonomialOrder.GREEN_GRLEX, cfg, roster=f.roster)
    via_ideal = afspan_gin_via_homogenization(f, cfg)
    timings["gin_afspan"] = time.perf_counter() - start
    if direct != via_ideal:
        logger.warning("[MAPS] afspan paths disagree for %s: %s vs %s", f.label, direct, via_ideal)

    for stage, seconds in timings.items():
        logger.info("[MAPS] %s %s: %.3fs", f.label, stage, seconds)

    return InvariantReport(
        map_name=f.label,
        degree=homogenized.degree,
        source=f.source,
        target=f.target,
        orders=orders,
        seed=cfg.seed,
        side=check.side,
        gin_components=components,
        gin_quotient=quotient,
        gin_afspan=direct,
        afspan_via_homogenization=via_ideal,
        quotient_rank=check.quotient.rank(),
        timings=timings,
    )


# Comparison

EQUAL = "EQUAL"
DIFFERENT = "DIFFERENT"
VERDICT_INEQUIVALENT = "provably inequivalent"
VERDICT_INDISTINGUISHABLE = "indistinguishable by these invariants"


@dataclass
class InvariantCheck:
    """Result of comparing one invariant of two maps."""
    check_name: str
    status: str  # 'EQUAL' or 'DIFFERENT'
    message: str
    value_a: str = ""
    value_b: str = ""
    details: str = ""


@dataclass
class ComparisonReport:
    map_a: str
    map_b: str
    checks: list[InvariantCheck]
    summary: dict

    @property
    def verdict(self) -> str:
        return self.summary["verdict"]

    def to_json(self) -> dict:
        return {
            "map_a": self.map_a,
            "map_b": self.map_b,
            "verdict": self.verdict,
            "checks": [
                {"check": c.check_name, "status": c.status, "a": c.value_a, "b": c.value_b}
                for c in self.checks
            ],
        }


class InvariantComparator:
    """Runs every invariant comparison between two reports.

    A difference in any invariant proves the maps inequivalent; agreement
    never proves equivalence.
    """

    def __init__(self, report_a: InvariantReport, report_b: InvariantReport):
        if report_a.source != report_b.source or report_a.target != report_b.target:
            raise SignatureMismatch(
                f"{report_a.map_name} is {report_a.source}->{report_a.target}, "
                f"{report_b.map_name} is {report_b.source}->{report_b.target}"
            )
        self.a = report_a
        self.b = report_b
        self.results: list[InvariantCheck] = []

    def run_all_checks(self) -> list[InvariantCheck]:
        self.results = []
        shared = [o for o in self.a.orders if o in self.b.orders]
        if not shared:
            raise UnsupportedOrder("the two reports share no monomial order")
        for order in shared:
            self.check_component_gin(order)
        self.check_quotient_gin()
        self.check_afspan_gin()
        return self.results

    def _record(self, name: str, value_a: str, value_b: str, details: str = "") -> InvariantCheck:
        equal = value_a == value_b
        result = InvariantCheck(
            check_name=name,
            status=EQUAL if equal else DIFFERENT,
            message=f"{name} {'agrees' if equal else 'differs'}",
            value_a=value_a,
            value_b=value_b,
            details=details,
        )
        self.results.append(result)
        return result

    def check_component_gin(self, order: MonomialOrder) -> InvariantCheck:
        a = self.a.gin_components[order]
        b = self.b.gin_components[order]
        extra = sorted(set(a.monomial_strings(order)) ^ set(b.monomial_strings(order)))
        return self._record(
            f"Component gin ({order.value})",
            a.format(order),
            b.format(order),
            details="generators in only one ideal: " + ", ".join(extra) if extra else "",
        )

    def check_quotient_gin(self) -> InvariantCheck:
        order = self.a.primary_order
        if self.b.primary_order != order:
            return self._record("Quotient gin", "n/a", "n/a", details="reports use different primary orders")
        return self._record("Quotient gin", self.a.gin_quotient.format(order), self.b.gin_quotient.format(order))

    def check_afspan_gin(self) -> InvariantCheck:
        return self._record("Affine-span gin", self.a.gin_afspan.format(), self.b.gin_afspan.format())

    def get_summary(self) -> dict:
        different = sum(1 for r in self.results if r.status == DIFFERENT)
        return {
            "total_checks": len(self.results),
            "equal": len(self.results) - different,
            "different": different,
            "verdict": VERDICT_INEQUIVALENT if different else VERDICT_INDISTINGUISHABLE,
        }


def compare(report_a: InvariantReport, report_b: InvariantReport) -> ComparisonReport:
    comparator = InvariantComparator(report_a, report_b)
    checks = comparator.run_all_checks()
    summary = comparator.get_summary()
    logger.info("[MAPS] %s vs %s: %s", report_a.map_name, report_b.map_name, summary["verdict"])
    return ComparisonReport(report_a.map_name, report_b.map_name, checks, summary)


# Automorphisms and affine spans

def transform_map(f: HomogenizedMap, tau: Matrix, chi: Matrix) -> HomogenizedMap:
    """chi o F o tau for square matrices acting on source and target coordinates."""
    if len(tau) != len(f.roster) or len(chi) != len(f.components):
        raise DimensionMismatch("automorphism sizes do not match the map")
    moved = [p.substitute_linear(tau) for p in f.components]
    combined = []
    for row in chi:
        total = Polynomial.zero(f.roster)
        for c, p in zip(row, moved):
            if c and not p.is_zero():
                total = total + p.scale(c)
        combined.append(total)
    return HomogenizedMap(f.source, f.target, f.degree, combined, name=f.name)


def affine_span_rows(polys: Sequence[Polynomial], with_constant: bool = True) -> tuple[list[MultiIndex], Matrix]:
    """Reduced echelon coefficient rows of span(polys), plus 1 if requested.

    Columns are all monomials that occur, sorted by GreenGrLex, so two
    spans are equal exactly when the returned pairs are equal after
    dropping all-zero columns.
    """
    if not polys:
        raise ZeroPolynomial("no polynomials")
    roster = polys[0].roster
    polys = list(polys)
    if with_constant:
        polys.append(Polynomial.constant(roster, 1))
    order = MonomialOrder.GREEN_GRLEX
    columns = sorted({alpha for p in polys for alpha in p.terms}, key=order.key, reverse=True)
    rows = [[p.coefficient(alpha) for alpha in columns] for p in polys]
    reduced, _ = row_reduce(rows, len(columns))
    return columns, reduced


def linear_fractional_image(
    f: RationalMap, numerators: Sequence[Polynomial], denominator: Polynomial
) -> tuple[Polynomial, list[Polynomial]]:
    """(Q o F, [P_k o F]) for a polynomial map F and affine P, Q."""
    if not f.is_polynomial():
        raise InvalidMap("linear-fractional images need a polynomial map")
    for p in list(numerators) + [denominator]:
        if p.total_degree() > 1:
            raise InvalidMap(f"{p} is not affine")
        if p.nvars != len(f.numerators):
            raise DimensionMismatch(f"{p} does not act on the {len(f.numerators)} target coordinates")
    scale = f.denominator.coefficient((0,) * f.nvars).inverse()
    components = [p.scale(scale) for p in f.numerators]
    return denominator.compose(components), [p.compose(components) for p in numerators]
