"""
Full verification suite for one approximation space.

Runs the approximation-operator laws, the engine axiom checks on the
induced matroid and its dual, every closed-form agreement, and the
point-versus-class contraction checks for each element, and collects them
into one SuiteReport ordered by (check, subject).
"""

import logging
import time
from typing import Callable, Optional

import settings
from approximation import equivalence_class, verify_pawlak_properties
from exceptions import CapExceededError
from induced_matroid import (
    check_dual_bases,
    check_dual_independents,
    check_dual_rank_formula,
    check_induced_bases,
    check_induced_independents,
    check_primal_rank_formula,
    counting_identities,
    induced_pair,
    verify_circuit_containment,
    verify_circuit_equality_after_restriction,
    verify_contraction_bases,
    verify_contraction_independents,
    verify_contraction_rank,
    verify_singleton_class_identity,
)
from instances import instance_digest, partition_to_document
from matroid_engine import (
    bases,
    check_base_axiom,
    check_circuit_consistency,
    check_contraction_rank,
    check_independence_axioms,
    check_rank_axioms,
    check_rank_extension,
    dual,
)
from models import Partition, Subset, mask_of
from schemas import AxiomReport, CheckResult, SuiteReport

logger = logging.getLogger(__name__)

CHECK_ORDER = (
    "pawlak-properties",
    "independence-axioms",
    "base-axiom",
    "rank-axioms",
    "rank-extension",
    "circuit-consistency",
    "dual-involution",
    "contraction-rank",
    "induced-independents",
    "induced-bases",
    "primal-rank-formula",
    "dual-transversal-bases",
    "dual-partial-transversals",
    "dual-rank-formula",
    "counting-identities",
    "contraction-independents",
    "contraction-circuit-containment",
    "contraction-bases",
    "contraction-rank-agreement",
    "restricted-circuit-equality",
    "singleton-class-identity",
)

PER_ELEMENT_CHECKS = (
    verify_contraction_independents,
    verify_circuit_containment,
    verify_contraction_bases,
    verify_contraction_rank,
    verify_circuit_equality_after_restriction,
    verify_singleton_class_identity,
)


def _to_result(report: AxiomReport, subject: str, p: Partition) -> CheckResult:
    labels = p.universe.labels
    witness = [labels(mask_of(w)) for w in report.witness]
    if report.element is not None:
        witness.append([p.universe.label(report.element)])
    if report.passed:
        status = "skipped" if report.skipped and not report.checked else "pass"
    else:
        status = "fail"
    return CheckResult(
        check=report.check,
        subject=subject,
        status=status,
        violated=report.violated,
        witness=witness,
        skipped=list(report.skipped),
        notes={k: [labels(mask_of(s)) for s in v] for k, v in report.notes.items()},
    )


def _skipped(check: str, subject: str, reason: str) -> CheckResult:
    return CheckResult(check=check, subject=subject, status="skipped", skipped=[reason])


def _timed(fn: Callable, *args) -> AxiomReport:
    started = time.perf_counter()
    report = fn(*args)
    logger.debug(
        "[Verify] %s%s in %.3fs",
        report.check,
        "" if report.passed else f" FAILED ({report.violated})",
        time.perf_counter() - started,
    )
    return report


def _engine_results(p: Partition, which: str, m) -> list:
    """Axiom checks shared by both matroids of an instance."""
    results = [
        _to_result(_timed(check_independence_axioms, m.size, m.independents), which, p),
        _to_result(_timed(check_base_axiom, m.size, bases(m)), which, p),
    ]
    if m.size > settings.PAIR_CHECK_CAP:
        logger.warning("[Verify] pair checks skipped: n=%d above %d", m.size, settings.PAIR_CHECK_CAP)
        results.append(_skipped("rank-axioms", which, "pair-check-cap"))
        results.append(_skipped("rank-extension", which, "pair-check-cap"))
    else:
        results.append(_to_result(_timed(check_rank_axioms, m), which, p))
        results.append(_to_result(_timed(check_rank_extension, m), which, p))
    results.append(_to_result(_timed(check_circuit_consistency, m), which, p))

    twice = dual(dual(m))
    involution = (
        AxiomReport.ok("dual-involution", checked=1)
        if twice == m
        else AxiomReport.fail("dual-involution", "dual-involution", [])
    )
    results.append(_to_result(involution, which, p))

    targets = {}
    for x in range(p.size):
        for t in (1 << x, equivalence_class(p, x).bits):
            targets.setdefault(t, None)
    for t in sorted(targets):
        subject = f"{which} T={{{' '.join(p.universe.labels(t))}}}"
        report = _timed(check_contraction_rank, m, Subset(p.size, t))
        results.append(_to_result(report, subject, p))
    return results


def verify_all(p: Partition, cap: Optional[int] = None) -> SuiteReport:
    """Every check for one instance; each element x is a subject of the contraction checks."""
    cap = settings.resolve_cap(cap, settings.VERIFY_CAP)
    if p.size > cap:
        raise CapExceededError(p.size, cap, "verification suite")

    started = time.perf_counter()
    doc = partition_to_document(p)
    logger.info("[Verify] starting suite: n=%d, %d blocks", p.size, len(p))

    results = []
    if p.size > settings.PAWLAK_CAP:
        results.append(_skipped("pawlak-properties", "-", "pawlak-cap"))
    else:
        results.append(_to_result(_timed(verify_pawlak_properties, p), "-", p))

    im, dm = induced_pair(p)
    results.extend(_engine_results(p, "primal", im.matroid))
    results.extend(_engine_results(p, "dual", dm.matroid))

    for instance_check in (
        check_induced_independents,
        check_induced_bases,
        check_primal_rank_formula,
        check_dual_bases,
        check_dual_independents,
        check_dual_rank_formula,
        counting_identities,
    ):
        results.append(_to_result(_timed(instance_check, p), "-", p))

    for x in range(p.size):
        subject = f"x={p.universe.label(x)}"
        for element_check in PER_ELEMENT_CHECKS:
            results.append(_to_result(_timed(element_check, p, x, cap), subject, p))

    rank = {name: i for i, name in enumerate(CHECK_ORDER)}
    results.sort(key=lambda r: rank[r.check])

    report = SuiteReport(
        instance_digest=instance_digest(doc),
        universe=list(doc.universe),
        results=results,
    )
    totals = report.counts()
    logger.info(
        "[Verify] finished in %.2fs: %d pass, %d fail, %d skipped",
        time.perf_counter() - started,
        totals["pass"],
        totals["fail"],
        totals["skipped"],
    )
    return report
