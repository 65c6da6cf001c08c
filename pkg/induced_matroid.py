"""
The matroid induced by the lower approximation operator, its dual, their
closed forms, and checks of how the dual behaves under contraction by a
point versus contraction by that point's equivalence class.

Closed forms and engine results are always computed independently and
compared; a disagreement is an InternalMismatchError.
"""

import logging
from functools import lru_cache
from itertools import product
from math import prod
from typing import Optional

import settings
from approximation import equivalence_class, lower_mask
from exceptions import CapExceededError, InternalMismatchError, UniverseMismatchError
from matroid_engine import (
    bases,
    build_matroid,
    check_base_axiom,
    circuits,
    contraction,
    dual,
    lifted_family,
    restriction,
)
from models import (
    DualInducedMatroid,
    InducedMatroid,
    Partition,
    RankValue,
    SetFamily,
    Subset,
    bits_of,
    compress,
    popcount,
    submasks,
)
from schemas import AxiomReport

logger = logging.getLogger(__name__)


def _require_same_universe(p: Partition, x: Subset) -> None:
    if x.size != p.size:
        raise UniverseMismatchError(p.size, x.size)


def _require_cap(p: Partition, cap: Optional[int], default: int, what: str) -> None:
    cap = settings.resolve_cap(cap, default)
    if p.size > cap:
        raise CapExceededError(p.size, cap, what)


def _family_from_choices(size: int, choices: list) -> SetFamily:
    """One choice per block, unioned: the product family."""
    masks = []
    for picked in product(*choices):
        mask = 0
        for part in picked:
            mask |= part
        masks.append(mask)
    return SetFamily(size, tuple(masks))


# ============ CLOSED FORMS ============


def independent_closed_form(p: Partition, x: Subset) -> bool:
    """True iff no block lies entirely inside x."""
    _require_same_universe(p, x)
    return not any(block & ~x.bits == 0 for block in p.block_masks)


def independents_closed_form(p: Partition) -> SetFamily:
    """Every union of one proper subset per block."""
    choices = [[s for s in submasks(block) if s != block] for block in p.block_masks]
    return _family_from_choices(p.size, choices)


def bases_closed_form(p: Partition, cap: Optional[int] = None) -> SetFamily:
    """Sets missing exactly one element of every block."""
    _require_cap(p, cap, settings.MAX_GROUND_SIZE, "closed-form bases")
    choices = [[block ^ (1 << e) for e in bits_of(block)] for block in p.block_masks]
    return _family_from_choices(p.size, choices)


def transversals(p: Partition) -> SetFamily:
    """Sets meeting every block in exactly one element."""
    choices = [[1 << e for e in bits_of(block)] for block in p.block_masks]
    return _family_from_choices(p.size, choices)


def partial_transversals(p: Partition) -> SetFamily:
    """Sets meeting every block in at most one element."""
    choices = [[0] + [1 << e for e in bits_of(block)] for block in p.block_masks]
    return _family_from_choices(p.size, choices)


def dual_rank_closed_form(p: Partition, x: Subset) -> RankValue:
    """Number of blocks meeting x."""
    _require_same_universe(p, x)
    return RankValue(sum(1 for block in p.block_masks if block & x.bits))


def primal_rank_closed_form(p: Partition, x: Subset) -> RankValue:
    """Sum over blocks P of min(|x ∩ P|, |P| - 1)."""
    _require_same_universe(p, x)
    return RankValue(
        sum(min(popcount(block & x.bits), popcount(block) - 1) for block in p.block_masks)
    )


# ============ CONSTRUCTION ============


def induce_matroid(p: Partition, cap: Optional[int] = None) -> InducedMatroid:
    """Build M(R) from the closed form and cross-check it against the lower-approximation filter."""
    _require_cap(p, cap, settings.MAX_GROUND_SIZE, "induced matroid")
    family = independents_closed_form(p)
    filtered = SetFamily(
        p.size,
        tuple(x for x in range(1 << p.size) if lower_mask(p.block_masks, x) == 0),
    )
    if family != filtered:
        raise InternalMismatchError(
            "closed-form independents disagree with the lower-approximation filter"
        )
    logger.debug("[Induced] %d blocks, %d independent sets", len(p), len(family))
    return InducedMatroid(p, build_matroid(p.size, family, cap=cap))


def dual_matroid(im: InducedMatroid) -> DualInducedMatroid:
    """Dualize through the engine and compare with the transversal closed forms."""
    p = im.partition
    engine = dual(im.matroid)
    full = im.matroid.ground_mask
    complements = SetFamily(p.size, tuple(full & ~b for b in bases(im.matroid).masks))
    closed = transversals(p)
    if bases(engine) != closed or complements != closed:
        raise InternalMismatchError("dual bases disagree with the transversal family")
    if engine.independents != partial_transversals(p):
        raise InternalMismatchError(
            "dual independents disagree with the partial-transversal family"
        )
    return DualInducedMatroid(p, engine)


@lru_cache(maxsize=64)
def induced_primal(p: Partition) -> InducedMatroid:
    """M(R) alone, memoized across checks of the same instance."""
    return induce_matroid(p)


@lru_cache(maxsize=64)
def induced_dual(p: Partition) -> DualInducedMatroid:
    """M*(R), built from the memoized M(R)."""
    return dual_matroid(induced_primal(p))


def induced_pair(p: Partition) -> tuple:
    """(M(R), M*(R)) for a partition."""
    return induced_primal(p), induced_dual(p)


# ============ FAMILY CHECKS ============


def check_induced_independents(p: Partition) -> AxiomReport:
    """Closed form, empty lower approximation and engine membership agree on every subset."""
    check = "induced-independents"
    im = induced_primal(p)
    indep = im.matroid.independent_set
    for x in range(1 << p.size):
        closed = independent_closed_form(p, Subset(p.size, x))
        filtered = lower_mask(p.block_masks, x) == 0
        if not closed == filtered == (x in indep):
            return AxiomReport.fail(check, check, [list(bits_of(x))])
    return AxiomReport.ok(check, checked=1 << p.size)


def check_induced_bases(p: Partition) -> AxiomReport:
    check = "induced-bases"
    im = induced_primal(p)
    return _compare_families(check, bases_closed_form(p), bases(im.matroid))


def check_dual_bases(p: Partition) -> AxiomReport:
    """Transversals equal the complemented bases and satisfy the base axiom."""
    check = "dual-transversal-bases"
    im = induced_primal(p)
    full = im.matroid.ground_mask
    complements = SetFamily(p.size, tuple(full & ~b for b in bases(im.matroid).masks))
    report = _compare_families(check, transversals(p), complements)
    if not report.passed:
        return report
    axiom = check_base_axiom(p.size, complements)
    if not axiom.passed:
        return AxiomReport.fail(check, axiom.violated, axiom.witness, element=axiom.element)
    return report


def check_dual_independents(p: Partition) -> AxiomReport:
    check = "dual-partial-transversals"
    dm = induced_dual(p)
    return _compare_families(check, partial_transversals(p), dm.matroid.independents)


def check_dual_rank_formula(p: Partition) -> AxiomReport:
    check = "dual-rank-formula"
    dm = induced_dual(p)
    r = dm.matroid.rank_table
    for x in range(1 << p.size):
        if r[x] != dual_rank_closed_form(p, Subset(p.size, x)):
            return AxiomReport.fail(check, check, [list(bits_of(x))])
    return AxiomReport.ok(check, checked=1 << p.size)


def check_primal_rank_formula(p: Partition) -> AxiomReport:
    check = "primal-rank-formula"
    im = induced_primal(p)
    r = im.matroid.rank_table
    for x in range(1 << p.size):
        if r[x] != primal_rank_closed_form(p, Subset(p.size, x)):
            return AxiomReport.fail(check, check, [list(bits_of(x))])
    return AxiomReport.ok(check, checked=1 << p.size)


def counting_identities(p: Partition) -> AxiomReport:
    """Family sizes against their product formulas over block sizes."""
    check = "counting-identities"
    im, dm = induced_pair(p)
    sizes = p.block_sizes()
    expected = {
        "independents": prod(2**s - 1 for s in sizes),
        "bases": prod(sizes),
        "dual-independents": prod(1 + s for s in sizes),
        "dual-bases": prod(sizes),
    }
    actual = {
        "independents": len(im.matroid.independents),
        "bases": len(bases(im.matroid)),
        "dual-independents": len(dm.matroid.independents),
        "dual-bases": len(bases(dm.matroid)),
    }
    for name, value in expected.items():
        if actual[name] != value:
            logger.debug("[Induced] %s: expected %d, got %d", name, value, actual[name])
            return AxiomReport.fail(check, name, [])
    return AxiomReport.ok(check, checked=len(expected))


def _compare_families(check: str, left: SetFamily, right: SetFamily) -> AxiomReport:
    """Equal families pass; otherwise the smallest set in exactly one of them is the witness."""
    if left == right:
        return AxiomReport.ok(check, checked=len(left))
    differing = sorted(left.mask_set ^ right.mask_set)
    return AxiomReport.fail(check, check, [list(bits_of(differing[0]))])


# ============ CONTRACTION BY A POINT VS BY ITS CLASS ============


@lru_cache(maxsize=256)
def contraction_pair(p: Partition, x: int, cap: Optional[int] = None) -> tuple:
    """(M*(R)/{x}, M*(R)/RN(x)) as engine matroids, shared by the per-element checks."""
    _require_cap(p, cap, settings.VERIFY_CAP, "contraction sweep")
    dm = induced_dual(p)
    point = contraction(dm.matroid, Subset.of(p.size, [x]))
    whole = contraction(dm.matroid, equivalence_class(p, x))
    return point, whole


def verify_contraction_independents(
    p: Partition, x: int, cap: Optional[int] = None
) -> AxiomReport:
    point, whole = contraction_pair(p, x, cap)
    return _compare_families(
        "contraction-independents",
        lifted_family(point, point.independents),
        lifted_family(whole, whole.independents),
    )


def verify_contraction_bases(p: Partition, x: int, cap: Optional[int] = None) -> AxiomReport:
    point, whole = contraction_pair(p, x, cap)
    return _compare_families(
        "contraction-bases",
        lifted_family(point, bases(point)),
        lifted_family(whole, bases(whole)),
    )


def verify_contraction_rank(p: Partition, x: int, cap: Optional[int] = None) -> AxiomReport:
    """Both contractions give every X outside RN(x) the same rank."""
    check = "contraction-rank-agreement"
    point, whole = contraction_pair(p, x, cap)
    outside = ((1 << p.size) - 1) & ~equivalence_class(p, x).bits
    rp, rw = point.rank_table, whole.rank_table
    checked = 0
    for mask in submasks(outside):
        checked += 1
        if rp[compress(mask, point.origin)] != rw[compress(mask, whole.origin)]:
            return AxiomReport.fail(check, check, [list(bits_of(mask))])
    return AxiomReport.ok(check, checked=checked)


def verify_circuit_containment(
    p: Partition, x: int, cap: Optional[int] = None
) -> AxiomReport:
    """Class-contraction circuits are point-contraction circuits; the surplus is
    exactly the singletons of RN(x) - {x}, reported under notes["surplus"]."""
    check = "contraction-circuit-containment"
    point, whole = contraction_pair(p, x, cap)
    from_point = lifted_family(point, circuits(point)).mask_set
    from_whole = lifted_family(whole, circuits(whole)).mask_set
    surplus = sorted(from_point - from_whole)
    notes = {"surplus": [list(bits_of(s)) for s in surplus]}

    missing = sorted(from_whole - from_point)
    if missing:
        return AxiomReport.fail(check, "containment", [list(bits_of(missing[0]))], notes=notes)
    expected = sorted(1 << y for y in equivalence_class(p, x) if y != x)
    if surplus != expected:
        odd = sorted(set(surplus) ^ set(expected))
        return AxiomReport.fail(check, "surplus", [list(bits_of(odd[0]))], notes=notes)
    return AxiomReport.ok(check, notes=notes, checked=len(from_point))


def verify_circuit_equality_after_restriction(
    p: Partition, x: int, cap: Optional[int] = None
) -> AxiomReport:
    """Circuits of (M*(R)/{x}) restricted to U - RN(x) equal those of M*(R)/RN(x)."""
    point, whole = contraction_pair(p, x, cap)
    outside = ((1 << p.size) - 1) & ~equivalence_class(p, x).bits
    narrowed = restriction(point, Subset(point.size, compress(outside, point.origin)))
    return _compare_families(
        "restricted-circuit-equality",
        lifted_family(narrowed, circuits(narrowed)),
        lifted_family(whole, circuits(whole)),
    )


def verify_singleton_class_identity(
    p: Partition, x: int, cap: Optional[int] = None
) -> AxiomReport:
    """When RN(x) = {x} both contractions are one matroid: same independents,
    circuits, bases and rank function. Other classes are reported as skipped."""
    check = "singleton-class-identity"
    if len(equivalence_class(p, x)) != 1:
        return AxiomReport.ok(check, skipped=["class-not-singleton"])
    point, whole = contraction_pair(p, x, cap)
    views = {
        "matroid": (point, whole),
        "circuits": (circuits(point), circuits(whole)),
        "bases": (bases(point), bases(whole)),
        "rank": (point.rank_table, whole.rank_table),
    }
    for name, (left, right) in views.items():
        if left != right:
            return AxiomReport.fail(check, name, [[x]])
    return AxiomReport.ok(check, checked=len(views))
