from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class InstanceDocument(BaseModel):
    """An approximation space as written in an instance file."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    universe: list[str]
    blocks: list[list[str]]


class AxiomReport(BaseModel):
    """Outcome of one exhaustive check.

    Witness sets are lists of root-universe element indices; `element` holds
    the single-element part of a witness (the x of a base-exchange failure).
    """

    model_config = ConfigDict(frozen=True)

    check: str
    passed: bool
    violated: Optional[str] = None
    witness: list[list[int]] = Field(default_factory=list)
    element: Optional[int] = None
    notes: dict[str, list[list[int]]] = Field(default_factory=dict)
    skipped: list[str] = Field(default_factory=list)
    checked: int = 0

    def __bool__(self) -> bool:
        return self.passed

    @classmethod
    def ok(cls, check: str, **kwargs) -> "AxiomReport":
        return cls(check=check, passed=True, **kwargs)

    @classmethod
    def fail(cls, check: str, violated: str, witness=(), **kwargs) -> "AxiomReport":
        return cls(
            check=check,
            passed=False,
            violated=violated,
            witness=[list(w) for w in witness],
            **kwargs,
        )


# ============ SUITE REPORT ============


class CheckResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    check: str
    subject: str
    status: Literal["pass", "fail", "skipped"]
    violated: Optional[str] = None
    witness: list[list[str]] = Field(default_factory=list)
    skipped: list[str] = Field(default_factory=list)
    notes: dict[str, list[list[str]]] = Field(default_factory=dict)


class SuiteReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    instance_digest: str
    universe: list[str]
    results: list[CheckResult]

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.status == "fail"]

    @property
    def passed(self) -> bool:
        return not self.failures

    def counts(self) -> dict:
        totals = {"pass": 0, "fail": 0, "skipped": 0}
        for r in self.results:
            totals[r.status] += 1
        return totals
