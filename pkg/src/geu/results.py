"""Check results and reports returned by the law checkers and model checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable


@dataclass
class CheckResult:
    """Outcome of one law, postulate or axiom check.

    ``witness`` holds the bindings of every quantified variable at the first
    failing instance (in canonical enumeration order).  It is ``None`` iff the
    check holds.  ``confirm()`` substitutes the witness back into the checked
    formula and returns True when it is a genuine violation.
    """

    name: str
    holds: bool
    witness: dict | None = None
    version: str | None = None
    vacuous: int = 0
    detail: dict = field(default_factory=dict)
    recheck: Callable[[dict], bool] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.holds and self.witness is not None:
            raise ValueError(f"{self.name}: a holding check cannot carry a witness")
        if not self.holds and self.witness is None:
            raise ValueError(f"{self.name}: a failed check must carry a witness")

    def __bool__(self) -> bool:
        return self.holds

    def confirm(self) -> bool:
        """Re-evaluate the witness; True iff it really violates the formula."""
        if self.holds:
            return False
        if self.recheck is None:
            raise RuntimeError(f"{self.name}: no re-evaluation available")
        return not self.recheck(self.witness)


def passed(name: str, *, version: str | None = None, vacuous: int = 0, **detail) -> CheckResult:
    return CheckResult(name, True, None, version, vacuous, detail)


def failed(name: str, witness: dict, recheck=None, *, version: str | None = None,
           vacuous: int = 0, **detail) -> CheckResult:
    return CheckResult(name, False, witness, version, vacuous, detail, recheck)


@dataclass
class ValidationReport:
    subject: str
    results: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.holds for r in self.results)

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.holds]

    def describe(self, render: Callable[[Any], Any] = repr) -> list[str]:
        return [f"{r.name}: witness {{{', '.join(f'{k}={render(v)}' for k, v in r.witness.items())}}}"
                for r in self.failures()]
