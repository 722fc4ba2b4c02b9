from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

from ..config import RunConfig
from ..structures import ModulePresentation
from . import properties as P
from .analysis import ModuleAnalysis
from .rings import FiniteRing, ring_battery, ring_summary
from .verdict import Verdict, _jsonable

MODULE_CHECKS: dict[str, Callable[[ModuleAnalysis], Verdict]] = {
    "pi_rickart": P.check_pi_rickart,
    "rickart": P.check_rickart,
    "baer": P.check_baer,
    "fitting": P.check_fitting,
    "strongly_hopfian": P.check_strongly_hopfian,
    "reduced": P.check_reduced,
    "abelian": P.check_abelian,
    "duo": P.check_duo,
    "c2": P.check_C2,
    "d2": P.check_D2,
    "generalized_k_nonsingular": P.check_gen_K_nonsingular,
    "dual_pi_rickart": P.check_dual_pi_rickart,
    "mono_or_nilpotent": P.check_mono_or_nilpotent,
    "indecomposable": P.check_indecomposable,
    "regular": P.check_regular_module,
    "one_epiretractable": P.check_one_epiretractable,
}

RING_CHECKS = (
    "von_neumann_regular",
    "pi_regular",
    "strongly_pi_regular",
    "reduced",
    "abelian",
    "generalized_right_pp",
    "local_nil_radical",
)


@dataclass
class ClassificationReport:
    module: str
    ring: str
    degenerate: bool
    mode: dict
    bounds: dict
    properties: dict[str, Verdict]
    endo_ring: dict
    endo_ring_properties: dict[str, Verdict]
    ring_properties: dict[str, Verdict]
    torsion_set: dict
    analysis: ModuleAnalysis | None = field(default=None, repr=False, compare=False)

    def __getitem__(self, name: str) -> Verdict:
        return self.properties[name]

    def to_dict(self) -> dict:
        return {
            "module": self.module,
            "ring": self.ring,
            "degenerate": self.degenerate,
            "mode": self.mode,
            "bounds": self.bounds,
            "properties": {k: v.to_json() for k, v in self.properties.items()},
            "endo_ring": _jsonable(self.endo_ring),
            "endo_ring_properties": {k: v.to_json() for k, v in self.endo_ring_properties.items()},
            "ring_properties": {k: v.to_json() for k, v in self.ring_properties.items()},
            "torsion_set": _jsonable(self.torsion_set),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_markdown(self) -> str:
        lines = [f"# {self.module} over {self.ring}", ""]
        if self.degenerate:
            lines += ["Degenerate input: the zero module satisfies every property vacuously.", ""]
        mode = self.mode["mode"]
        if mode == "bounded":
            lines += [f"Mode: bounded search, radius {self.mode['radius']} ({self.mode['downgrade']}).", ""]
        else:
            lines += [f"Mode: exact ({self.mode['scanned']} endomorphisms).", ""]
        for title, table in (
            ("Module properties", self.properties),
            ("Endomorphism ring", self.endo_ring_properties),
            ("Base ring", self.ring_properties),
        ):
            if not table:
                continue
            lines += [f"## {title}", "", "| property | verdict | witness / note |", "|---|---|---|"]
            for name, v in table.items():
                note = json.dumps(_jsonable(v.witness)) if v.witness is not None else v.reason
                lines.append(f"| {name} | {v.label()} | {note} |")
            lines.append("")
        lines += ["## End(M)", ""]
        for k, v in sorted(self.endo_ring.items()):
            lines.append(f"- {k}: {json.dumps(_jsonable(v))}")
        ts = self.torsion_set
        lines += ["", "## T(SM)", "", f"- zero: {ts.get('is_zero')}", f"- submodule: {ts.get('is_submodule')}", ""]
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_markdown()

    def exit_code(self) -> int:
        """0 all proven, 1 something refuted, 3 something undecided."""
        statuses = [v.status for v in self.properties.values()]
        if "Refuted" in statuses:
            return 1
        if any(s in ("NoCounterexampleUpTo", "Inapplicable") for s in statuses):
            return 3
        return 0


def _endo_summary(A: ModuleAnalysis, ring: FiniteRing | None) -> dict:
    lattice = A.S.lattice
    out = {"free_rank": lattice.free_rank, "torsion_orders": lattice.torsion_orders}
    if ring is not None:
        out.update(ring_summary(ring))
    else:
        out["generators"] = [[list(r) for r in G] for G, _ in lattice.generators]
    return out


def classify(
    M: ModulePresentation,
    config: RunConfig | None = None,
    witnesses: Sequence = (),
    name: str | None = None,
) -> ClassificationReport:
    config = config or RunConfig()
    A = ModuleAnalysis(M, config, witnesses)
    R = M.ring
    ring_verdicts = ring_battery(FiniteRing.from_presentation(R)) if R.is_finite else {}
    if A.degenerate:
        props = {k: Verdict.proven(degenerate=True) for k in MODULE_CHECKS}
        endo_props = {k: Verdict.proven(degenerate=True) for k in RING_CHECKS}
        return ClassificationReport(
            name or M.name, R.name, True, A.mode_info(), config.bounds(), props,
            {"order": 1}, endo_props, ring_verdicts,
            {"is_zero": True, "is_submodule": True, "mode": "exact", "elements": []}, A,
        )
    ring = FiniteRing.from_endo(A.S) if A.exact else None
    props = {k: check(A) for k, check in MODULE_CHECKS.items()}
    return ClassificationReport(
        name or M.name,
        R.name,
        False,
        A.mode_info(),
        config.bounds(),
        props,
        _endo_summary(A, ring),
        P.endo_ring_battery(A, ring),
        ring_verdicts,
        P.torsion_set(A),
        A,
    )
