"""
Finite matroids over explicit independent-set families.

Every Matroid leaving this module has passed the independence axioms, or is
the dual of one that has.
Subsets are handled as integer masks internally; public operations take and
return Subset / SetFamily values. Report witnesses are root-universe indices.
"""

import logging
from typing import Iterator, Optional

import settings
from exceptions import (
    AxiomViolationError,
    BaseAxiomError,
    CapExceededError,
    InternalMismatchError,
    InvalidParameterError,
    UniverseMismatchError,
)
from models import (
    Matroid,
    RankValue,
    SetFamily,
    Subset,
    bits_of,
    compress,
    expand,
    popcount,
    submasks,
)
from schemas import AxiomReport

logger = logging.getLogger(__name__)


def _require_size(size: int, other: int) -> None:
    if size != other:
        raise UniverseMismatchError(size, other)


def _root(m: Matroid, mask: int) -> list:
    return [m.origin[i] for i in bits_of(mask)]


def _require_cap(n: int, cap: Optional[int], default: int, what: str) -> None:
    cap = settings.resolve_cap(cap, default)
    if n > cap:
        raise CapExceededError(n, cap, what)


# ============ AXIOMS ============


def _max_independent_table(size: int, indep: frozenset) -> list:
    """For every mask X, a largest member of the family contained in X."""
    best = [0] * (1 << size)
    count = [0] * (1 << size)
    for x in range(1, 1 << size):
        if x in indep:
            best[x] = x
            count[x] = popcount(x)
            continue
        # x itself is excluded, so |x| - 1 is the most any submask can reach.
        ceiling = popcount(x) - 1
        top, top_count = 0, -1
        rest = x
        while rest:
            low = rest & -rest
            rest ^= low
            c = count[x ^ low]
            if c > top_count:
                top, top_count = best[x ^ low], c
                if c == ceiling:
                    break
        best[x] = top
        count[x] = top_count
    return best


def check_independence_axioms(size: int, family: SetFamily) -> AxiomReport:
    """Check I1-I3 and report the first violation with its witness.

    I3 is decided per independent set I: with D(I) the elements whose
    addition makes I dependent, augmentation fails for I exactly when
    I ∪ D(I) holds a member larger than I; that member is the witness.
    """
    _require_size(size, family.size)
    check = "independence-axioms"
    indep = family.mask_set

    if 0 not in indep:
        return AxiomReport.fail(check, "I1", [])

    for member in family.masks:
        for e in bits_of(member):
            if member ^ (1 << e) not in indep:
                missing = next(s for s in submasks(member) if s not in indep)
                return AxiomReport.fail(
                    check, "I2", [list(bits_of(member)), list(bits_of(missing))]
                )

    best = _max_independent_table(size, indep)
    for member in family.masks:
        reach = member
        for e in range(size):
            bit = 1 << e
            if not member & bit and (member | bit) not in indep:
                reach |= bit
        larger = best[reach]
        if popcount(larger) > popcount(member):
            return AxiomReport.fail(
                check, "I3", [list(bits_of(member)), list(bits_of(larger))]
            )

    return AxiomReport.ok(check, checked=len(family))


def build_matroid(
    size: int,
    family: SetFamily,
    origin: Optional[tuple] = None,
    root_size: Optional[int] = None,
    cap: Optional[int] = None,
) -> Matroid:
    """The one construction path: refuse oversize ground sets and non-matroids."""
    _require_cap(size, cap, settings.MAX_GROUND_SIZE, "matroid construction")
    report = check_independence_axioms(size, family)
    if not report.passed:
        raise AxiomViolationError(report)
    logger.debug("[Engine] matroid on %d elements, %d independents", size, len(family))
    return Matroid(size, family, origin, root_size)


def free_matroid(size: int) -> Matroid:
    return build_matroid(size, SetFamily(size, tuple(range(1 << size))))


def rank_zero_matroid(size: int) -> Matroid:
    return build_matroid(size, SetFamily(size, (0,)))


# ============ MAX / MIN ============


def max_sets(family: SetFamily) -> SetFamily:
    """Inclusion-maximal members."""
    kept = []
    for x in sorted(family.masks, key=popcount, reverse=True):
        if not any(x & ~y == 0 for y in kept):
            kept.append(x)
    return SetFamily(family.size, tuple(kept))


def min_sets(family: SetFamily) -> SetFamily:
    """Inclusion-minimal members."""
    kept = []
    for x in sorted(family.masks, key=popcount):
        if not any(y & ~x == 0 for y in kept):
            kept.append(x)
    return SetFamily(family.size, tuple(kept))


# ============ INDEPENDENTS, CIRCUITS, BASES ============


def is_independent(m: Matroid, x: Subset) -> bool:
    _require_size(m.size, x.size)
    return x.bits in m.independent_set


def iter_dependents(m: Matroid) -> Iterator[int]:
    """Dependent masks in ascending order, generated rather than stored."""
    indep = m.independent_set
    for x in range(1 << m.size):
        if x not in indep:
            yield x


def circuits(m: Matroid) -> SetFamily:
    """Minimal dependent sets: dependent, with every one-smaller subset independent."""
    indep = m.independent_set
    found = [
        x
        for x in iter_dependents(m)
        if all(x ^ (1 << i) in indep for i in bits_of(x))
    ]
    return SetFamily(m.size, tuple(found))


def bases(m: Matroid) -> SetFamily:
    """Maximal independent sets; all of one cardinality.

    The family is closed under subsets, so a member is maximal exactly when
    no single added element keeps it independent.
    """
    indep = m.independent_set
    full = m.ground_mask
    family = SetFamily(
        m.size,
        tuple(
            i
            for i in m.independents.masks
            if not any(i | 1 << e in indep for e in bits_of(full & ~i))
        ),
    )
    sizes = {popcount(b) for b in family.masks}
    if len(sizes) > 1:
        raise InternalMismatchError(f"bases of unequal sizes {sorted(sizes)}")
    return family


def check_base_axiom(size: int, candidate: SetFamily) -> AxiomReport:
    """B1 (nonempty) and B2 (exchange); the B2 witness is (B1, B2) plus x."""
    _require_size(size, candidate.size)
    check = "base-axiom"
    if not candidate.masks:
        return AxiomReport.fail(check, "B1", [])
    members = candidate.mask_set
    for b1 in candidate.masks:
        for b2 in candidate.masks:
            extra = b2 & ~b1
            for x in bits_of(b1 & ~b2):
                reduced = b1 ^ (1 << x)
                if not any(reduced | (1 << y) in members for y in bits_of(extra)):
                    return AxiomReport.fail(
                        check,
                        "B2",
                        [list(bits_of(b1)), list(bits_of(b2))],
                        element=x,
                    )
    return AxiomReport.ok(check, checked=len(candidate))


def _down_closure(masks) -> tuple:
    closed = set()
    for b in masks:
        if b in closed:
            continue
        closed.update(submasks(b))
    return tuple(closed)


def matroid_from_bases(
    size: int,
    candidate: SetFamily,
    origin: Optional[tuple] = None,
    root_size: Optional[int] = None,
) -> Matroid:
    report = check_base_axiom(size, candidate)
    if not report.passed:
        raise BaseAxiomError(report)
    return build_matroid(size, SetFamily(size, _down_closure(candidate.masks)), origin, root_size)


# ============ RANK ============


def rank(m: Matroid, x: Subset) -> RankValue:
    """Greedy rank: scan x in ascending order keeping every element that stays independent."""
    _require_size(m.size, x.size)
    indep = m.independent_set
    kept = 0
    for e in bits_of(x.bits):
        if kept | (1 << e) in indep:
            kept |= 1 << e
    return RankValue(popcount(kept))


def rank_by_scan(m: Matroid, x: Subset) -> RankValue:
    """The largest independent set inside x, by scanning the whole family."""
    _require_size(m.size, x.size)
    return RankValue(
        max(popcount(i) for i in m.independents.masks if i & ~x.bits == 0)
    )


def check_rank_axioms(m: Matroid, cap: Optional[int] = None) -> AxiomReport:
    """R1 over all X, R2 over all nested pairs, R3 over all pairs."""
    _require_cap(m.size, cap, settings.PAIR_CHECK_CAP, "rank axiom check")
    check = "rank-axioms"
    r = m.rank_table
    top = 1 << m.size

    for x in range(top):
        if not 0 <= r[x] <= popcount(x):
            return AxiomReport.fail(check, "R1", [_root(m, x)])

    for y in range(top):
        ry = r[y]
        for x in submasks(y):
            if r[x] > ry:
                return AxiomReport.fail(check, "R2", [_root(m, x), _root(m, y)])

    for x in range(top):
        rx = r[x]
        for y in range(x, top):
            if rx + r[y] < r[x | y] + r[x & y]:
                return AxiomReport.fail(check, "R3", [_root(m, x), _root(m, y)])

    return AxiomReport.ok(check, checked=top)


def check_rank_extension(m: Matroid, cap: Optional[int] = None) -> AxiomReport:
    """If no single y of Y-X raises r(X), then r(X ∪ Y) = r(X).

    For each X the admissible Y-X are exactly the subsets of the elements
    that individually leave r(X) unchanged, so those subsets are enumerated.
    """
    _require_cap(m.size, cap, settings.PAIR_CHECK_CAP, "rank extension check")
    check = "rank-extension"
    r = m.rank_table
    full = m.ground_mask
    checked = 0
    for x in range(full + 1):
        rx = r[x]
        flat = 0
        for y in bits_of(full & ~x):
            if r[x | 1 << y] == rx:
                flat |= 1 << y
        for z in submasks(flat):
            checked += 1
            if r[x | z] != rx:
                return AxiomReport.fail(check, "rank-extension", [_root(m, x), _root(m, z)])
    return AxiomReport.ok(check, checked=checked)


# ============ DUALITY AND MINORS ============


def dual(m: Matroid) -> Matroid:
    """The matroid whose bases are the complements of m's bases.

    m already satisfies I1-I3, so the complemented bases satisfy B1-B2 and
    their down-closure is built without re-running either axiom scan.
    """
    full = m.ground_mask
    complements = tuple(full & ~b for b in bases(m).masks)
    logger.debug("[Engine] dual on %d elements, %d bases", m.size, len(complements))
    return Matroid(m.size, SetFamily(m.size, _down_closure(complements)), m.origin, m.root_size)


def restriction(m: Matroid, x: Subset) -> Matroid:
    """m restricted to x, re-indexed onto 0..|x|-1."""
    _require_size(m.size, x.size)
    positions = tuple(bits_of(x.bits))
    inside = [compress(i, positions) for i in m.independents.masks if i & ~x.bits == 0]
    return build_matroid(
        len(positions),
        SetFamily(len(positions), tuple(inside)),
        tuple(m.origin[p] for p in positions),
        m.root_size,
    )


def contraction(m: Matroid, t: Subset, base: Optional[Subset] = None) -> Matroid:
    """m/T on U-T: the sets whose union with a fixed base of m|T stays independent.

    Without `base`, the base of m|T with the smallest bit-pattern is used.
    """
    _require_size(m.size, t.size)
    t_positions = tuple(bits_of(t.bits))
    local_bases = bases(restriction(m, t))
    if base is None:
        chosen = expand(local_bases.masks[0], t_positions)
    else:
        _require_size(m.size, base.size)
        if base.bits & ~t.bits or compress(base.bits, t_positions) not in local_bases:
            raise InvalidParameterError(f"{base!r} is not a base of the restriction to T")
        chosen = base.bits

    rest = tuple(bits_of(m.ground_mask & ~t.bits))
    indep = m.independent_set
    kept = [
        compress(i, rest)
        for i in m.independents.masks
        if not i & t.bits and (i | chosen) in indep
    ]
    return build_matroid(
        len(rest),
        SetFamily(len(rest), tuple(kept)),
        tuple(m.origin[p] for p in rest),
        m.root_size,
    )


def lift(m: Matroid, x: Subset) -> Subset:
    """Translate a subset of m's ground set into the root universe."""
    _require_size(m.size, x.size)
    return Subset(m.root_size, expand(x.bits, m.origin))


def lifted_family(m: Matroid, family: SetFamily) -> SetFamily:
    _require_size(m.size, family.size)
    return SetFamily(m.root_size, tuple(expand(f, m.origin) for f in family.masks))


def check_contraction_rank(
    m: Matroid, t: Subset, cap: Optional[int] = None
) -> AxiomReport:
    """r_{M/T}(X) = r_M(X ∪ T) - r_M(T) for every X inside U-T."""
    _require_cap(m.size, cap, settings.MAX_GROUND_SIZE, "contraction rank check")
    _require_size(m.size, t.size)
    check = "contraction-rank"
    minor = contraction(m, t)
    rest = tuple(bits_of(m.ground_mask & ~t.bits))
    r = m.rank_table
    rm = minor.rank_table
    r_t = r[t.bits]
    for local in range(1 << minor.size):
        parent = expand(local, rest)
        if rm[local] != r[parent | t.bits] - r_t:
            return AxiomReport.fail(check, "contraction-rank", [_root(m, parent)])
    return AxiomReport.ok(check, checked=1 << minor.size)


def check_circuit_consistency(m: Matroid) -> AxiomReport:
    """A set is independent exactly when it contains no circuit."""
    check = "circuit-consistency"
    found = circuits(m).masks
    indep = m.independent_set
    for x in range(1 << m.size):
        holds_circuit = any(c & ~x == 0 for c in found)
        if (x in indep) == holds_circuit:
            return AxiomReport.fail(check, "circuit-consistency", [_root(m, x)])
    return AxiomReport.ok(check, checked=1 << m.size)
