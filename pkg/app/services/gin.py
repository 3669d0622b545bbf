"""Generic initial ideals and generic initial monomial subspaces.

"Generic" means: several independent seeded random coordinate changes
give the same initial ideal (or subspace), and the result is Borel-fixed.
When draws disagree the coefficient range is widened and the run retried.
"""
from __future__ import annotations

import logging
import os
import random
import time
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Callable, Iterable, Iterator, Optional, Sequence

from app.services.arith import ZERO, TowerElement
from app.services.errors import GenericityFailure, TruncationRejected, UnsupportedOrder
from app.services.groebner import (
    Ideal,
    MonomialIdeal,
    affine_borel_fixed_check,
    borel_fixed_check,
    initial_ideal,
)
from app.services.linalg import Matrix, as_matrix, determinant, row_reduce
from app.services.poly import (
    MonomialOrder,
    MultiIndex,
    Polynomial,
    format_monomial,
    homogenize,
    substitute_affine,
    substitute_linear,
)

if TYPE_CHECKING:
    from app.services.maps import RationalMap

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20240901


@dataclass(frozen=True)
class GinConfig:
    """Knobs of the randomized genericity test."""
    seed: int = DEFAULT_SEED
    coeff_bound: int = 997
    max_retries: int = 3
    verify_samples: int = 2
    assume_truncation_faithful: bool = False

    def __post_init__(self):
        if self.coeff_bound < 2:
            raise ValueError(f"coeff_bound must be at least 2, got {self.coeff_bound}")
        if self.verify_samples < 2:
            raise ValueError(f"verify_samples must be at least 2, got {self.verify_samples}")
        if self.max_retries < 1:
            raise ValueError(f"max_retries must be at least 1, got {self.max_retries}")

    @classmethod
    def from_env(cls) -> "GinConfig":
        """Read GIN_SEED, GIN_COEFF_BOUND, GIN_RETRIES and GIN_SAMPLES."""
        return cls(
            seed=int(os.environ.get("GIN_SEED", DEFAULT_SEED)),
            coeff_bound=int(os.environ.get("GIN_COEFF_BOUND", 997)),
            max_retries=int(os.environ.get("GIN_RETRIES", 3)),
            verify_samples=int(os.environ.get("GIN_SAMPLES", 2)),
        )

    def with_seed(self, seed: int) -> "GinConfig":
        return replace(self, seed=seed)


class MonomialSubspace:
    """Finite-dimensional space spanned by monomials."""

    def __init__(self, roster: Sequence[str], monomials: Iterable[MultiIndex]):
        self.roster = tuple(roster)
        self.monomials: frozenset[MultiIndex] = frozenset(tuple(m) for m in monomials)

    @property
    def dimension(self) -> int:
        return len(self.monomials)

    def __len__(self) -> int:
        return len(self.monomials)

    def __iter__(self) -> Iterator[MultiIndex]:
        return iter(self.sorted(MonomialOrder.GREEN_GRLEX))

    def __contains__(self, alpha) -> bool:
        return tuple(alpha) in self.monomials

    def sorted(self, order: MonomialOrder = MonomialOrder.GREEN_GRLEX) -> list[MultiIndex]:
        """Ascending degree, descending in `order` within a degree."""
        return sorted(self.monomials, key=order.green.key, reverse=True)

    def monomial_strings(self, order: MonomialOrder = MonomialOrder.GREEN_GRLEX) -> list[str]:
        return [format_monomial(alpha, self.roster) for alpha in self.sorted(order)]

    def format(self, order: MonomialOrder = MonomialOrder.GREEN_GRLEX) -> str:
        return "{" + ", ".join(self.monomial_strings(order)) + "}"

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialSubspace):
            return NotImplemented
        return self.roster == other.roster and self.monomials == other.monomials

    def __hash__(self) -> int:
        return hash((self.roster, self.monomials))

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"MonomialSubspace{self}"


def _stream(seed: int, sample_index: int, rekey: int = 0) -> random.Random:
    suffix = f"/{rekey}" if rekey else ""
    return random.Random(f"gin/{seed}/{sample_index}{suffix}")


def _draw_matrix(rng: random.Random, n: int, bound: int) -> Matrix:
    while True:
        rows = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
        matrix = as_matrix(rows)
        if determinant(matrix):
            return matrix


def _draw_affine(rng: random.Random, n: int, bound: int) -> tuple[Matrix, list[TowerElement]]:
    matrix = _draw_matrix(rng, n, bound)
    while True:
        shift = [rng.randint(-bound, bound) for _ in range(n)]
        if any(shift):
            return matrix, as_matrix([shift])[0]


def _distinct_draw(draw: Callable[[random.Random], object], cfg: GinConfig, sample_index: int, avoid: Sequence):
    # A draw equal to an earlier sample of the same batch is re-keyed.
    rekey = 0
    while True:
        value = draw(_stream(cfg.seed, sample_index, rekey))
        if value not in avoid:
            return value
        rekey += 1
        logger.debug("[GIN] sample %d collides with an earlier draw, re-key %d", sample_index, rekey)


def random_linear_change(
    n: int,
    cfg: GinConfig,
    sample_index: int,
    bound: Optional[int] = None,
    avoid: Sequence[Matrix] = (),
) -> Matrix:
    """Invertible integer matrix drawn from the stream keyed by (seed, sample_index).

    A draw that equals one of `avoid` is replaced by a draw from a re-keyed stream.
    """
    if n < 1:
        raise ValueError("dimension must be positive")
    bound = bound or cfg.coeff_bound
    return _distinct_draw(lambda rng: _draw_matrix(rng, n, bound), cfg, sample_index, avoid)


def random_affine_change(
    n: int,
    cfg: GinConfig,
    sample_index: int,
    bound: Optional[int] = None,
    avoid: Sequence[tuple[Matrix, list[TowerElement]]] = (),
) -> tuple[Matrix, list[TowerElement]]:
    """Invertible matrix plus a nonzero translation, same stream convention."""
    bound = bound or cfg.coeff_bound
    return _distinct_draw(lambda rng: _draw_affine(rng, n, bound), cfg, sample_index, avoid)


def _require_classical(order: MonomialOrder) -> None:
    if order.is_green:
        raise UnsupportedOrder(f"ideal gins need a degree-increasing order, not {order.value}")


def _agree(results: list, retry: int, what: str) -> bool:
    first = results[0]
    if all(r == first for r in results[1:]):
        return True
    logger.warning("[GIN] %s: %d random draws disagree (attempt %d)", what, len(results), retry + 1)
    return False


def gin_ideal(ideal: Ideal, order: MonomialOrder, cfg: GinConfig) -> MonomialIdeal:
    """in(I o T) for generic linear T, verified across independent draws."""
    _require_classical(order)
    n = len(ideal.roster)
    start = time.perf_counter()
    for retry in range(cfg.max_retries):
        bound = cfg.coeff_bound * 10 ** retry
        results, drawn = [], []
        for k in range(cfg.verify_samples):
            index = retry * cfg.verify_samples + k
            change = random_linear_change(n, cfg, index, bound, avoid=drawn)
            drawn.append(change)
            moved = Ideal([substitute_linear(g, change) for g in ideal.generators])
            results.append(initial_ideal(moved, order))
            logger.debug("[GIN] sample %d: %s", index, results[-1])
        if _agree(results, retry, "gin_ideal") and borel_fixed_check(results[0]):
            logger.info("[GIN] %s gin %s in %.3fs", order.value, results[0], time.perf_counter() - start)
            return results[0]
    raise GenericityFailure(f"no stable gin after {cfg.max_retries} attempts (seed {cfg.seed})")


def initial_subspace(
    polys: Sequence[Polynomial], order: MonomialOrder, roster: Optional[Sequence[str]] = None
) -> MonomialSubspace:
    """Initial monomials of every element of span(polys), by row reduction."""
    if roster is None:
        if not polys:
            raise ValueError("a roster is needed for an empty list")
        roster = polys[0].roster
    columns = sorted({alpha for p in polys for alpha in p.terms}, key=order.key, reverse=True)
    if not columns:
        return MonomialSubspace(roster, [])
    position = {alpha: k for k, alpha in enumerate(columns)}
    rows = []
    for p in polys:
        row = [ZERO] * len(columns)
        for alpha, c in p.terms.items():
            row[position[alpha]] = c
        rows.append(row)
    _, pivots = row_reduce(rows, len(columns))
    return MonomialSubspace(roster, [columns[k] for k in pivots])


def gin_subspace(
    polys: Sequence[Polynomial],
    order: MonomialOrder,
    cfg: GinConfig,
    roster: Optional[Sequence[str]] = None,
    truncated: bool = False,
) -> MonomialSubspace:
    """in(X o tau) for generic affine tau under a Green order."""
    if not order.is_green:
        raise UnsupportedOrder(f"subspace gins need a Green order, not {order.value}")
    if truncated:
        if not cfg.assume_truncation_faithful:
            raise TruncationRejected(
                "truncated series change under affine substitution; "
                "set assume_truncation_faithful to proceed anyway"
            )
        logger.warning("[GIN] treating truncated input as exact; the result carries no guarantee")
    if roster is None:
        if not polys:
            raise ValueError("a roster is needed for an empty list")
        roster = polys[0].roster
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return MonomialSubspace(roster, [])
    n = len(roster)
    for retry in range(cfg.max_retries):
        bound = cfg.coeff_bound * 10 ** retry
        results, drawn = [], []
        for k in range(cfg.verify_samples):
            index = retry * cfg.verify_samples + k
            matrix, shift = random_affine_change(n, cfg, index, bound, avoid=drawn)
            drawn.append((matrix, shift))
            moved = [substitute_affine(p, matrix, shift) for p in polys]
            results.append(initial_subspace(moved, order, roster))
        if _agree(results, retry, "gin_subspace") and affine_borel_fixed_check(results[0].monomials):
            logger.info("[GIN] %s subspace gin %s", order.value, results[0])
            return results[0]
    raise GenericityFailure(f"no stable subspace gin after {cfg.max_retries} attempts (seed {cfg.seed})")


def afspan_gin_via_homogenization(f: "RationalMap", cfg: GinConfig) -> MonomialSubspace:
    """Affine-span gin read off the lowest-degree part of an ideal gin.

    span{Q, P_1, ..., P_N} is homogenized to its top degree d, its gin is
    taken under GrLex, and the degree-d generators are dehomogenized.
    """
    pieces = [f.denominator] + [p for p in f.numerators if not p.is_zero()]
    d = max(p.total_degree() for p in pieces)
    hom_roster = ("Z0",) + tuple(f"Z{k}" for k in range(1, f.nvars + 1))
    homogeneous = [homogenize(p, d, "Z0", hom_roster[1:]) for p in pieces]
    lowest = gin_ideal(Ideal(homogeneous), MonomialOrder.GRLEX, cfg)
    top = [alpha for alpha in lowest.generators if sum(alpha) == d]
    return MonomialSubspace(f.roster, [alpha[1:] for alpha in top])


@dataclass
class StabilityResult:
    stable: bool
    results: dict[int, object] = field(default_factory=dict)


def stability_check(compute: Callable[[GinConfig], object], seeds: Sequence[int], base: Optional[GinConfig] = None) -> StabilityResult:
    """Run `compute` under each seed and report whether all answers coincide."""
    base = base or GinConfig()
    results = {seed: compute(base.with_seed(seed)) for seed in seeds}
    values = list(results.values())
    stable = all(v == values[0] for v in values[1:])
    logger.info("[GIN] stability over %d seeds: %s", len(seeds), "stable" if stable else "UNSTABLE")
    return StabilityResult(stable=stable, results=results)
