from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class RunConfig:
    """Bounds and output options shared by the classifier, suite and CLI."""

    cap: int = 100_000            # endomorphism enumeration cap
    submodule_cap: int = 10_000
    box: int = 10                 # coefficient bound for free lattice directions
    box_budget: int = 2_000       # max endomorphisms scanned per property in box mode
    essential_box: int = 8
    power_ceiling: int = 16
    output_format: str = "json"
    jobs: int = 1
    fixture: str | None = None
    only: str | None = None
    inject_fault: str | None = None

    def __post_init__(self) -> None:
        for name in ("cap", "submodule_cap", "box", "box_budget", "essential_box", "power_ceiling", "jobs"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.output_format not in ("json", "markdown"):
            raise ValueError("output_format must be 'json' or 'markdown'")

    def bounds(self) -> dict:
        d = asdict(self)
        return {k: d[k] for k in ("cap", "submodule_cap", "box", "box_budget", "essential_box", "power_ceiling")}
