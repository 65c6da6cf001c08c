"""
Pawlak approximation spaces: equivalence classes, lower and upper
approximations, and an exhaustive check of the operators' algebraic laws.

The equivalence relation is only ever held as its partition.
"""

import logging
from fractions import Fraction
from typing import Iterable, Optional

import settings
from exceptions import CapExceededError, OutOfUniverseError, UniverseMismatchError
from models import Partition, Subset, Universe, bits_of, submasks
from schemas import AxiomReport

logger = logging.getLogger(__name__)


# ============ CONSTRUCTION ============


def partition_from_blocks(universe: Universe, blocks: Iterable[Subset]) -> Partition:
    """Validate `blocks` as a partition of `universe`; blocks come back in canonical order."""
    return Partition(universe, tuple(blocks))


def identity_partition(universe: Universe) -> Partition:
    return Partition(universe, tuple(Subset.of(universe.size, [e]) for e in range(universe.size)))


def universal_partition(universe: Universe) -> Partition:
    return Partition(universe, (universe.full(),))


def _require_same_universe(p: Partition, x: Subset) -> None:
    if x.size != p.size:
        raise UniverseMismatchError(p.size, x.size)


# ============ OPERATORS ============


def lower_mask(block_masks: tuple, mask: int) -> int:
    out = 0
    for block in block_masks:
        if block & mask == block:
            out |= block
    return out


def upper_mask(block_masks: tuple, mask: int) -> int:
    out = 0
    for block in block_masks:
        if block & mask:
            out |= block
    return out


def equivalence_class(p: Partition, x: int) -> Subset:
    """The block containing element `x`."""
    if not 0 <= x < p.size:
        raise OutOfUniverseError(x, p.size)
    return p.blocks[p.class_index[x]]


def lower_approximation(p: Partition, x: Subset) -> Subset:
    """Union of the blocks entirely inside `x`."""
    _require_same_universe(p, x)
    return Subset(p.size, lower_mask(p.block_masks, x.bits))


def upper_approximation(p: Partition, x: Subset) -> Subset:
    """Union of the blocks meeting `x`."""
    _require_same_universe(p, x)
    return Subset(p.size, upper_mask(p.block_masks, x.bits))


def lower_approximation_by_elements(p: Partition, x: Subset) -> Subset:
    """Element-by-element reading of the lower approximation; oracle for the block scan."""
    _require_same_universe(p, x)
    members = [e for e in range(p.size) if equivalence_class(p, e).issubset(x)]
    return Subset.of(p.size, members)


def upper_approximation_by_elements(p: Partition, x: Subset) -> Subset:
    _require_same_universe(p, x)
    members = [e for e in range(p.size) if not equivalence_class(p, e).isdisjoint(x)]
    return Subset.of(p.size, members)


def boundary_region(p: Partition, x: Subset) -> Subset:
    return upper_approximation(p, x) - lower_approximation(p, x)


def negative_region(p: Partition, x: Subset) -> Subset:
    return upper_approximation(p, x).complement()


def is_definable(p: Partition, x: Subset) -> bool:
    return lower_approximation(p, x) == upper_approximation(p, x)


def accuracy(p: Partition, x: Subset) -> Fraction:
    """|lower| / |upper|; the empty set is exact, so its accuracy is 1."""
    upper = upper_approximation(p, x)
    if not upper.bits:
        return Fraction(1)
    return Fraction(len(lower_approximation(p, x)), len(upper))


# ============ PROPERTY CHECK ============

PAWLAK_PROPERTIES = (
    "lower-of-universe",
    "upper-of-universe",
    "lower-of-empty",
    "upper-of-empty",
    "lower-contractive",
    "upper-extensive",
    "lower-preserves-intersection",
    "upper-preserves-union",
    "lower-idempotent",
    "upper-idempotent",
    "lower-monotone",
    "upper-monotone",
    "lower-complement-fixed",
    "upper-complement-fixed",
    "lower-upper-duality",
    "lower-within-upper",
)

PAIR_PROPERTIES = frozenset(
    {
        "lower-preserves-intersection",
        "upper-preserves-union",
        "lower-monotone",
        "upper-monotone",
    }
)


def _single_law(name: str, lo: list, up: list, full: int):
    """Predicate over one subset mask for each single-subset law."""
    laws = {
        "lower-of-universe": lambda x: x != full or lo[full] == full,
        "upper-of-universe": lambda x: x != full or up[full] == full,
        "lower-of-empty": lambda x: x != 0 or lo[0] == 0,
        "upper-of-empty": lambda x: x != 0 or up[0] == 0,
        "lower-contractive": lambda x: lo[x] & ~x == 0,
        "upper-extensive": lambda x: x & ~up[x] == 0,
        "lower-idempotent": lambda x: lo[lo[x]] == lo[x],
        "upper-idempotent": lambda x: up[up[x]] == up[x],
        "lower-complement-fixed": lambda x: lo[full & ~lo[x]] == full & ~lo[x],
        "upper-complement-fixed": lambda x: up[full & ~up[x]] == full & ~up[x],
        "lower-upper-duality": lambda x: lo[full & ~x] == full & ~up[x],
        "lower-within-upper": lambda x: lo[x] & ~up[x] == 0,
    }
    return laws[name]


def _pair_violation(name: str, lo: list, up: list, full: int):
    """First (X, Y) breaking a two-subset law, or None."""
    if name == "lower-monotone" or name == "upper-monotone":
        table = lo if name == "lower-monotone" else up
        for y in range(full + 1):
            for x in submasks(y):
                if table[x] & ~table[y]:
                    return x, y
        return None
    for x in range(full + 1):
        for y in range(full + 1):
            if name == "lower-preserves-intersection":
                if lo[x & y] != lo[x] & lo[y]:
                    return x, y
            elif up[x | y] != up[x] | up[y]:
                return x, y
    return None


def verify_pawlak_properties(
    p: Partition, cap: Optional[int] = None, pair_cap: Optional[int] = None
) -> AxiomReport:
    """Check all sixteen operator laws over every subset (and every pair).

    Pair laws are skipped, not refused, when the universe is within `cap`
    but above `pair_cap`.
    """
    cap = settings.resolve_cap(cap, settings.PAWLAK_CAP)
    pair_cap = settings.resolve_cap(pair_cap, settings.PAWLAK_PAIR_CAP)
    n = p.size
    if n > cap:
        raise CapExceededError(n, cap, "approximation property check")

    full = (1 << n) - 1
    lo = [lower_mask(p.block_masks, x) for x in range(full + 1)]
    up = [upper_mask(p.block_masks, x) for x in range(full + 1)]

    skipped = []
    checked = 0
    for name in PAWLAK_PROPERTIES:
        if name in PAIR_PROPERTIES:
            if n > pair_cap:
                skipped.append(name)
                continue
            witness = _pair_violation(name, lo, up, full)
            checked += 1
            if witness is not None:
                logger.debug("[Pawlak] %s fails at %s", name, witness)
                return AxiomReport.fail(
                    "pawlak-properties",
                    name,
                    [list(bits_of(witness[0])), list(bits_of(witness[1]))],
                    checked=checked,
                )
            continue
        law = _single_law(name, lo, up, full)
        checked += 1
        for x in range(full + 1):
            if not law(x):
                return AxiomReport.fail(
                    "pawlak-properties", name, [list(bits_of(x)), []], checked=checked
                )

    if skipped:
        logger.warning(
            "[Pawlak] pair laws skipped for n=%d above pair cap %d", n, pair_cap
        )
    return AxiomReport.ok("pawlak-properties", skipped=skipped, checked=checked)
