"""Counters and counterexamples collected by the randomized identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    trials: int
    checks: dict[str, int] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)

    def record(self, name: str, ok: bool, detail="") -> None:
        self.checks[name] = self.checks.get(name, 0) + 1
        if not ok:
            self.violations.append(f"{name}: {detail}")

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        counts = ", ".join(f"{k}={v}" for k, v in sorted(self.checks.items()))
        return (f"{self.trials} trials, {sum(self.checks.values())} checks ({counts}), "
                f"{len(self.violations)} violations")

    def to_dict(self) -> dict:
        return {"trials": self.trials, "checks": dict(sorted(self.checks.items())),
                "violations": list(self.violations)}
