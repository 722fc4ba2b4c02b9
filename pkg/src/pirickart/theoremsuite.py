"""Implications between module and ring properties, checked instance by instance.

Each :class:`TheoremCheck` turns one theorem into clauses of the form
"hypothesis verdicts hold => conclusion verdicts hold" evaluated on the
classifier's output for every catalog instance.  A clause whose hypothesis
is never met anywhere makes the run vacuous, which counts as a failure.

Verdicts marked Proven carry certificates (idempotents ``e`` with
``eM = Ker f^n`` and so on); those are re-checked directly before a verdict
is trusted, so a classifier that hands out bogus certificates shows up as
violations with replayable bundles.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from contextlib import ExitStack
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

from .classifier import (
    ClassificationReport,
    FiniteRing,
    ModuleAnalysis,
    Verdict,
    check_abelian,
    check_pi_rickart,
    classify,
)
from .classifier.properties import OK, pi_rickart_certificate
from .classifier.rings import is_gen_right_pp
from .config import RunConfig
from .homspace import Homomorphism, compose, hom_basis, image, kernel, left_annihilator, power
from .lattice_ops import clear_caches, essentiality, inject_fault, summand_oracle, trace
from .structures import (
    CatalogEntry,
    ModulePresentation,
    Submodule,
    dump_presentation,
    finite_catalog,
    fixture,
    parse_presentation,
    ring_as_module,
    submodule_as_module,
)
from .structures.presentations import as_matrix

CERTIFIED = ("pi_rickart", "rickart", "dual_pi_rickart")
WITNESS_FIXTURES = ("example-2.3", "example-2.9", "example-3.11")


# --------------------------------------------------------------------------
# certificates
# --------------------------------------------------------------------------

def certificate_problem(M: ModulePresentation, prop: str, cert: dict) -> str | None:
    """Why ``cert`` does not support ``prop`` for its map, or None if it does."""
    f = Homomorphism(M, M, as_matrix(cert["f"]))
    e = Homomorphism(M, M, as_matrix(cert["e"]))
    if compose(e, e) != e:
        return "e is not idempotent"
    fn = power(f, cert.get("n", 1))
    target = image(fn) if prop == "dual_pi_rickart" else kernel(fn)
    if image(e) != target:
        return "eM differs from " + ("Im f^n" if prop == "dual_pi_rickart" else "Ker f^n")
    return None


def _first_bad_certificate(M: ModulePresentation, prop: str, verdict: Verdict) -> dict | None:
    for cert in verdict.evidence.get("certificates", []):
        problem = certificate_problem(M, prop, cert)
        if problem:
            return {"property": prop, "certificate": cert, "problem": problem}
    return None


# --------------------------------------------------------------------------
# instances
# --------------------------------------------------------------------------

class Instance:
    """A catalog entry plus lazily computed classification data."""

    def __init__(self, entry: CatalogEntry, config: RunConfig):
        self.entry = entry
        self.config = config
        self.bad: dict[str, dict] = {}

    @property
    def name(self) -> str:
        return self.entry.name

    @property
    def M(self) -> ModulePresentation:
        return self.entry.module

    @property
    def finite(self) -> bool:
        return self.entry.finite

    @cached_property
    def report(self) -> ClassificationReport:
        return classify(self.M, self.config, self.entry.witnesses, self.name)

    @property
    def A(self) -> ModuleAnalysis:
        return self.report.analysis

    @cached_property
    def witness_analysis(self) -> ModuleAnalysis:
        return ModuleAnalysis(self.M, self.config, self.entry.witnesses)

    @cached_property
    def S(self) -> FiniteRing:
        return FiniteRing.from_endo(self.A.S)

    @cached_property
    def base_ring(self) -> FiniteRing:
        return FiniteRing.from_presentation(self.M.ring)

    def prop(self, name: str) -> bool | None:
        """True/False for Proven/Refuted module verdicts, None otherwise.

        A Proven verdict whose certificates do not check out counts as False.
        """
        return self._truth(self.report.properties[name], self.M, name)

    def _truth(self, v: Verdict, M: ModulePresentation, name: str) -> bool | None:
        if v.holds:
            if name in CERTIFIED:
                bad = _first_bad_certificate(M, name, v)
                if bad:
                    self.bad[name] = bad
                    return False
            return True
        return False if v.fails else None

    def ring_prop(self, name: str) -> bool | None:
        v = self.report.endo_ring_properties[name]
        return True if v.holds else False if v.fails else None

    def pi_rickart_of(self, P: ModulePresentation, label: str) -> bool | None:
        v = check_pi_rickart(ModuleAnalysis(P, self.config))
        if v.holds:
            bad = _first_bad_certificate(P, "pi_rickart", v)
            if bad:
                self.bad[label] = {**bad, "module": dump_presentation(P)}
                return False
            return True
        return False if v.fails else None


@dataclass
class Case:
    clause: str
    met: bool
    ok: bool = True
    key: str = ""
    bundle: dict | None = None

    def to_dict(self) -> dict:
        return {"clause": self.clause, "met": self.met, "ok": self.ok, "key": self.key, "bundle": self.bundle}


def _bundle(inst: Instance, tid: str, clause: str, key: str, claim: dict, bad: dict | None) -> dict:
    out = {
        "theorem": tid,
        "clause": clause,
        "instance": inst.name,
        "key": key,
        "kind": "certificate" if bad else "implication",
        "presentation": dump_presentation(inst.M),
        "parts": [dump_presentation(P) for P in inst.entry.parts],
        "witnesses": [[list(r) for r in W] for W in inst.entry.witnesses],
        "claim": claim,
    }
    if bad:
        out["certificate"] = bad
    return out


def _label(x: bool | None) -> str:
    return {True: "holds", False: "fails", None: "undecided"}[x]


def implication(
    inst: Instance,
    tid: str,
    clause: str,
    hyp: dict[str, bool | None],
    concl: dict[str, bool | None],
    key: str = "",
    detail: dict | None = None,
) -> Case:
    met = all(v is True for v in hyp.values())
    if not met:
        return Case(clause, False, key=key)
    ok = all(v is True for v in concl.values())
    if ok:
        return Case(clause, True, True, key)
    bad = next((inst.bad[k] for k in concl if k in inst.bad), None)
    claim = {
        "hypothesis": {k: _label(v) for k, v in hyp.items()},
        "conclusion": {k: _label(v) for k, v in concl.items()},
        **(detail or {}),
    }
    return Case(clause, True, False, key, _bundle(inst, tid, clause, key, claim, bad))


# --------------------------------------------------------------------------
# the theorems
# --------------------------------------------------------------------------

def _t1(inst: Instance) -> list[Case]:
    c1, c2 = "rickart => pi_rickart", "S reduced and pi_rickart => rickart"
    if not inst.finite:
        out = []
        A = inst.witness_analysis
        for i, W in enumerate(A.witnesses):
            rickart_at_f = bool(A.summand(A.kernel(W)))
            pi_at_f = pi_rickart_certificate(A, W)[0] == OK
            out.append(implication(
                inst, "T1", c1, {"Ker f summand": rickart_at_f}, {"some Ker f^n summand": pi_at_f},
                key=f"{inst.name}:w{i}", detail={"f": [list(r) for r in W]},
            ))
        return out
    return [
        implication(inst, "T1", c1, {"rickart": inst.prop("rickart")}, {"pi_rickart": inst.prop("pi_rickart")}),
        implication(
            inst, "T1", c2,
            {"S reduced": inst.ring_prop("reduced"), "pi_rickart": inst.prop("pi_rickart")},
            {"rickart": inst.prop("rickart")},
        ),
    ]


def _t2(inst: Instance) -> list[Case]:
    red = inst.prop("reduced")
    return [
        implication(inst, "T2", "reduced and pi_rickart => rickart",
                    {"reduced": red, "pi_rickart": inst.prop("pi_rickart")}, {"rickart": inst.prop("rickart")}),
        implication(inst, "T2", "reduced and rickart => pi_rickart",
                    {"reduced": red, "rickart": inst.prop("rickart")}, {"pi_rickart": inst.prop("pi_rickart")}),
    ]


def _t3(inst: Instance) -> list[Case]:
    clause = "pi_rickart and l_S(N) not nil => l_S(N) has a nonzero idempotent"
    pi = inst.prop("pi_rickart")
    if pi is not True:
        return [Case(clause, False)]
    A = inst.A
    S = A.S
    out = []
    for N in A.submodules:
        I = left_annihilator(S, N).elements(inst.config.cap)
        non_nil = any(not S.nilpotent(F) for F in I)
        has_idem = any(F != S.zero and S.mul(F, F) == F for F in I)
        out.append(implication(
            inst, "T3", clause, {"pi_rickart": pi, "l_S(N) not nil": non_nil},
            {"nonzero idempotent in l_S(N)": has_idem},
            key=f"{inst.name}:{N.basis}", detail={"N": [list(b) for b in N.basis]},
        ))
    return out


def _t4(inst: Instance) -> list[Case]:
    j_zero = len(inst.S.jacobson_radical) == 1
    hyp = {"finitely many orthogonal idempotents": True, "J(S) = 0": j_zero}
    pi, ri, ba = inst.prop("pi_rickart"), inst.prop("rickart"), inst.prop("baer")
    detail = {"max_orthogonal_idempotents": inst.S.max_orthogonal_idempotents()}
    return [
        implication(inst, "T4", "J(S) = 0 and pi_rickart => rickart", {**hyp, "pi_rickart": pi}, {"rickart": ri}, detail=detail),
        implication(inst, "T4", "J(S) = 0 and rickart => baer", {**hyp, "rickart": ri}, {"baer": ba}, detail=detail),
        implication(inst, "T4", "J(S) = 0 and baer => pi_rickart", {**hyp, "baer": ba}, {"pi_rickart": pi}, detail=detail),
    ]


def _t5(inst: Instance) -> list[Case]:
    clause = "pi_rickart and e idempotent => eM pi_rickart"
    pi = inst.prop("pi_rickart")
    if pi is not True:
        return [Case(clause, False)]
    out = []
    for D in sorted(inst.A.summands, key=lambda D: (D.order, D.basis)):
        if D.is_zero:
            continue
        P, _ = submodule_as_module(D, name=f"eM in {inst.name}")
        label = f"eM {D.basis}"
        out.append(implication(
            inst, "T5", clause, {"pi_rickart": pi}, {label: inst.pi_rickart_of(P, label)},
            key=f"{inst.name}:{D.basis}", detail={"eM": [list(b) for b in D.basis]},
        ))
    return out


def _central_idempotent_images(inst: Instance) -> dict[Submodule, list]:
    out: dict[Submodule, list] = {}
    for i in inst.S.idempotents:
        if inst.S.is_central(i):
            E = inst.S.element(i)
            out.setdefault(image(inst.A.hom(E)), E)
    return out


def _t6(inst: Instance) -> list[Case]:
    clause = "Ker f^n = eM, e central => Ker f^(n+1) = eM"
    out = []
    if inst.finite:
        A = inst.A
        images = _central_idempotent_images(inst)
        domain = A.domain
    else:
        # only the central idempotents 0 and 1 are available without enumerating S
        A = inst.witness_analysis
        images = {Submodule.zero(inst.M): A.S.zero, Submodule.whole(inst.M): A.S.one}
        domain = A.witnesses
    for F in domain:
        ch = A.kernels(F)
        if not ch.known:
            continue
        for n in range(1, ch.index + 1):
            K = ch.at(n)
            E = images.get(K)
            if E is None:
                continue
            out.append(implication(
                inst, "T6", clause, {"Ker f^n = eM, e central": True}, {"Ker f^(n+1) = eM": ch.at(n + 1) == K},
                key=f"{inst.name}:{F}:{n}", detail={"f": [list(r) for r in F], "n": n, "e": [list(r) for r in E]},
            ))
    return out or [Case(clause, False)]


def _t7(inst: Instance) -> list[Case]:
    clause = "M1, M2 abelian pi_rickart, Hom(Mi, Mj) = 0 => M1 + M2 pi_rickart"
    if len(inst.entry.parts) != 2:
        return [Case(clause, False)]
    M1, M2 = inst.entry.parts
    hyp = {}
    for i, P in enumerate((M1, M2), start=1):
        A = ModuleAnalysis(P, inst.config)
        v = check_abelian(A)
        hyp[f"M{i} abelian"] = True if v.holds else False if v.fails else None
        hyp[f"M{i} pi_rickart"] = inst.pi_rickart_of(P, f"M{i}")
    for a, b, label in ((M1, M2, "Hom(M1, M2) = 0"), (M2, M1, "Hom(M2, M1) = 0")):
        L = hom_basis(a, b)
        hyp[label] = L.is_finite and L.order == 1
    return [implication(inst, "T7", clause, hyp, {"pi_rickart": inst.prop("pi_rickart")})]


def _t8(inst: Instance) -> list[Case]:
    return [implication(inst, "T8", "S pi-regular => generalized K-nonsingular",
                        {"S pi_regular": inst.ring_prop("pi_regular")},
                        {"generalized_k_nonsingular": inst.prop("generalized_k_nonsingular")})]


def _t9(inst: Instance) -> list[Case]:
    clause = "pi_rickart => generalized K-nonsingular"
    if inst.finite:
        return [implication(inst, "T9", clause, {"pi_rickart": inst.prop("pi_rickart")},
                            {"generalized_k_nonsingular": inst.prop("generalized_k_nonsingular")})]
    A = inst.witness_analysis
    out = []
    for i, W in enumerate(A.witnesses):
        if pi_rickart_certificate(A, W)[0] != OK:
            continue
        K = A.kernel(W)
        status = "NotEssential" if K.is_zero else essentiality(K, inst.config.essential_box)[0]
        if status == "Inconclusive":
            continue
        nil = A.is_nilpotent(W)
        out.append(implication(
            inst, "T9", clause, {"some Ker f^n summand": True},
            {"Ker f essential => f nilpotent": status == "NotEssential" or nil is True},
            key=f"{inst.name}:w{i}", detail={"f": [list(r) for r in W], "kernel": status},
        ))
    return out


def _t10(inst: Instance) -> list[Case]:
    return [implication(inst, "T10", "abelian and pi_rickart => strongly Hopfian",
                        {"abelian": inst.prop("abelian"), "pi_rickart": inst.prop("pi_rickart")},
                        {"strongly_hopfian": inst.prop("strongly_hopfian")})]


def _t11(inst: Instance) -> list[Case]:
    return [implication(inst, "T11", "fitting => pi_rickart",
                        {"fitting": inst.prop("fitting")}, {"pi_rickart": inst.prop("pi_rickart")})]


def _t12(inst: Instance) -> list[Case]:
    return [implication(inst, "T12", "pi_rickart => S generalized right p.p.",
                        {"pi_rickart": inst.prop("pi_rickart")},
                        {"S generalized_right_pp": inst.ring_prop("generalized_right_pp")})]


def _t13(inst: Instance) -> list[Case]:
    epi = inst.prop("one_epiretractable")
    pi, gpp = inst.prop("pi_rickart"), inst.ring_prop("generalized_right_pp")
    return [
        implication(inst, "T13", "1-epiretractable and pi_rickart => S generalized right p.p.",
                    {"one_epiretractable": epi, "pi_rickart": pi}, {"S generalized_right_pp": gpp}),
        implication(inst, "T13", "1-epiretractable and S generalized right p.p. => pi_rickart",
                    {"one_epiretractable": epi, "S generalized_right_pp": gpp}, {"pi_rickart": pi}),
    ]


def _t14(inst: Instance) -> list[Case]:
    pi, reg, c2 = inst.prop("pi_rickart"), inst.ring_prop("pi_regular"), inst.prop("c2")
    return [
        implication(inst, "T14", "S pi-regular => pi_rickart", {"S pi_regular": reg}, {"pi_rickart": pi}),
        implication(inst, "T14", "C2 and pi_rickart => S pi-regular",
                    {"c2": c2, "pi_rickart": pi}, {"S pi_regular": reg}),
        implication(inst, "T14", "C2 and S pi-regular => pi_rickart",
                    {"c2": c2, "S pi_regular": reg}, {"pi_rickart": pi}),
    ]


def _t15(inst: Instance) -> list[Case]:
    S = inst.S
    Z = S.right_singular_ideal
    J = set(S.jacobson_radical)
    nil = all(S.is_nilpotent(x) for x in Z)
    inside = all(x in J for x in Z)
    return [implication(
        inst, "T15", "pi_rickart => Z_r(S) nil and Z_r(S) in J(S)",
        {"pi_rickart": inst.prop("pi_rickart")}, {"Z_r(S) nil": nil, "Z_r(S) in J(S)": inside},
        detail={"Z_r": [S.element(x) for x in Z]},
    )]


def _t16(inst: Instance) -> list[Case]:
    mn = inst.prop("mono_or_nilpotent")
    both = {"indecomposable": inst.prop("indecomposable"), "pi_rickart": inst.prop("pi_rickart")}
    return [
        implication(inst, "T16", "every f mono or nilpotent => indecomposable pi_rickart",
                    {"mono_or_nilpotent": mn}, both),
        implication(inst, "T16", "indecomposable pi_rickart => every f mono or nilpotent",
                    both, {"mono_or_nilpotent": mn}),
    ]


def _t17(inst: Instance) -> list[Case]:
    pi, dual = inst.prop("pi_rickart"), inst.prop("dual_pi_rickart")
    return [
        implication(inst, "T17", "C2 and pi_rickart => dual pi_rickart",
                    {"c2": inst.prop("c2"), "pi_rickart": pi}, {"dual_pi_rickart": dual}),
        implication(inst, "T17", "D2 and dual pi_rickart => pi_rickart",
                    {"d2": inst.prop("d2"), "dual_pi_rickart": dual}, {"pi_rickart": pi}),
    ]


def _t18(inst: Instance) -> list[Case]:
    return [implication(inst, "T18", "R right Artinian, M finitely generated => pi_rickart",
                        {"R finite": inst.M.ring.is_finite}, {"pi_rickart": inst.prop("pi_rickart")})]


def _t19(inst: Instance) -> list[Case]:
    c1, c2 = "R gen. right p.p., e idempotent => eR pi_rickart", "R gen. right p.p., e idempotent => eRe gen. right p.p."
    R = inst.M.ring
    v = inst.report.ring_properties.get("generalized_right_pp")
    gpp = True if v and v.holds else False if v and v.fails else None
    if gpp is not True:
        return [Case(c1, False), Case(c2, False)]
    ring = inst.base_ring
    RR = ring_as_module(R)
    out = []
    for i in ring.idempotents:
        e = ring.element(i)
        key = f"{R.name}:{e}"
        P, _ = submodule_as_module(Submodule.generated_by(RR, [e]), name=f"eR in {R.name}")
        label = f"eR e={list(e)}"
        out.append(implication(inst, "T19", c1, {"R gen. right p.p.": gpp}, {label: inst.pi_rickart_of(P, label)},
                               key=key, detail={"e": list(e)}))
        corner = is_gen_right_pp(ring.corner(i))
        out.append(implication(inst, "T19", c2, {"R gen. right p.p.": gpp}, {"eRe gen. right p.p.": corner.holds},
                               key=key, detail={"e": list(e)}))
    return out


def _t20(inst: Instance) -> list[Case]:
    clause = "r_S(f^n) = eS => Tr(M, Ker f^n) = eM"
    S, A = inst.S, inst.A
    ideals = {S.right_ideal(e): e for e in S.idempotents}
    traces: dict[Submodule, Submodule] = {}
    out = []
    for a in range(len(S)):
        F = S.element(a)
        for n, p in enumerate(S.orbit(a), start=1):
            e = ideals.get(S.right_annihilator(p))
            if e is None:
                continue
            K = A.kernels(F).at(n)
            if K not in traces:
                traces[K] = trace(inst.M, K)
            E = S.element(e)
            out.append(implication(
                inst, "T20", clause, {"r_S(f^n) = eS": True}, {"Tr(M, Ker f^n) = eM": traces[K] == image(A.hom(E))},
                key=f"{inst.name}:{F}:{n}", detail={"f": [list(r) for r in F], "n": n, "e": [list(r) for r in E]},
            ))
    return out or [Case(clause, False)]


@dataclass(frozen=True)
class TheoremCheck:
    id: str
    statement: str
    run: Callable[[Instance], list[Case]]
    clauses: tuple[str, ...]
    note: str = ""
    witness_level: bool = False


THEOREMS: dict[str, TheoremCheck] = {t.id: t for t in (
    TheoremCheck("T1", "Rickart implies pi-Rickart; the converse holds when S is reduced", _t1,
                 ("rickart => pi_rickart", "S reduced and pi_rickart => rickart"), witness_level=True),
    TheoremCheck("T2", "for reduced modules, Rickart and pi-Rickart coincide", _t2,
                 ("reduced and pi_rickart => rickart", "reduced and rickart => pi_rickart")),
    TheoremCheck("T3", "in a pi-Rickart module every non-nil left annihilator l_S(N) contains a nonzero idempotent",
                 _t3, ("pi_rickart and l_S(N) not nil => l_S(N) has a nonzero idempotent",),
                 note="left annihilators of subsets equal those of the submodules they generate"),
    TheoremCheck("T4", "no infinite orthogonal idempotents and J(S) = 0: pi-Rickart, Rickart and Baer coincide", _t4,
                 ("J(S) = 0 and pi_rickart => rickart", "J(S) = 0 and rickart => baer", "J(S) = 0 and baer => pi_rickart"),
                 note="the orthogonal-idempotent condition is automatic for finite S"),
    TheoremCheck("T5", "direct summands of pi-Rickart modules are pi-Rickart", _t5,
                 ("pi_rickart and e idempotent => eM pi_rickart",)),
    TheoremCheck("T6", "Ker f^n = eM with e central forces Ker f^(n+1) = eM", _t6,
                 ("Ker f^n = eM, e central => Ker f^(n+1) = eM",), witness_level=True),
    TheoremCheck("T7", "abelian pi-Rickart summands with no maps between them have a pi-Rickart sum", _t7,
                 ("M1, M2 abelian pi_rickart, Hom(Mi, Mj) = 0 => M1 + M2 pi_rickart",),
                 note="both summands are required to be abelian"),
    TheoremCheck("T8", "S pi-regular implies generalized K-nonsingular", _t8,
                 ("S pi-regular => generalized K-nonsingular",)),
    TheoremCheck("T9", "pi-Rickart implies generalized K-nonsingular", _t9,
                 ("pi_rickart => generalized K-nonsingular",), witness_level=True),
    TheoremCheck("T10", "abelian pi-Rickart implies strongly Hopfian", _t10,
                 ("abelian and pi_rickart => strongly Hopfian",)),
    TheoremCheck("T11", "Fitting implies pi-Rickart", _t11, ("fitting => pi_rickart",)),
    TheoremCheck("T12", "pi-Rickart implies S generalized right principally projective", _t12,
                 ("pi_rickart => S generalized right p.p.",)),
    TheoremCheck("T13", "for 1-epiretractable M, pi-Rickart iff S generalized right p.p.", _t13,
                 ("1-epiretractable and pi_rickart => S generalized right p.p.",
                  "1-epiretractable and S generalized right p.p. => pi_rickart")),
    TheoremCheck("T14", "S pi-regular implies pi-Rickart; under C2 the two are equivalent", _t14,
                 ("S pi-regular => pi_rickart", "C2 and pi_rickart => S pi-regular", "C2 and S pi-regular => pi_rickart")),
    TheoremCheck("T15", "pi-Rickart implies Z_r(S) is nil and contained in J(S)", _t15,
                 ("pi_rickart => Z_r(S) nil and Z_r(S) in J(S)",)),
    TheoremCheck("T16", "every endomorphism is mono or nilpotent iff M is indecomposable pi-Rickart", _t16,
                 ("every f mono or nilpotent => indecomposable pi_rickart",
                  "indecomposable pi_rickart => every f mono or nilpotent")),
    TheoremCheck("T17", "C2 pi-Rickart implies dual pi-Rickart; D2 dual pi-Rickart implies pi-Rickart", _t17,
                 ("C2 and pi_rickart => dual pi_rickart", "D2 and dual pi_rickart => pi_rickart")),
    TheoremCheck("T18", "finitely generated modules over right Artinian rings are pi-Rickart", _t18,
                 ("R right Artinian, M finitely generated => pi_rickart",),
                 note="finite rings are right Artinian; catalog modules are finitely generated"),
    TheoremCheck("T19", "over a generalized right p.p. ring R, eR is pi-Rickart and eRe is generalized right p.p.", _t19,
                 ("R gen. right p.p., e idempotent => eR pi_rickart",
                  "R gen. right p.p., e idempotent => eRe gen. right p.p.")),
    TheoremCheck("T20", "r_S(f^n) = eS implies Tr(M, Ker f^n) = eM", _t20,
                 ("r_S(f^n) = eS => Tr(M, Ker f^n) = eM",)),
)}


# --------------------------------------------------------------------------
# running and reporting
# --------------------------------------------------------------------------

@dataclass
class TheoremResult:
    id: str
    statement: str
    note: str
    clause_instances: dict[str, int]
    instances: int
    passing: int
    filtered: int
    violations: list[dict] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def vacuous(self) -> bool:
        return any(n == 0 for n in self.clause_instances.values())

    @property
    def ok(self) -> bool:
        return not self.violations and not self.vacuous

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "statement": self.statement,
            "note": self.note,
            "instances": self.instances,
            "passing": self.passing,
            "filtered_out": self.filtered,
            "clause_instances": self.clause_instances,
            "vacuous": self.vacuous,
            "violations": self.violations,
            "warnings": self.warnings,
        }


@dataclass
class SuiteReport:
    theorems: list[TheoremResult]
    catalog: list[str]
    fixtures: list[str]
    bounds: dict
    fault: str | None = None

    @property
    def violations(self) -> list[dict]:
        return [v for t in self.theorems for v in t.violations]

    @property
    def passed(self) -> bool:
        return all(t.ok for t in self.theorems)

    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def __getitem__(self, tid: str) -> TheoremResult:
        return next(t for t in self.theorems if t.id == tid)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "finite_instances": len(self.catalog),
            "catalog": self.catalog,
            "fixtures": self.fixtures,
            "bounds": self.bounds,
            "fault": self.fault,
            "violation_count": len(self.violations),
            "theorems": [t.to_dict() for t in self.theorems],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_markdown(self) -> str:
        lines = [
            "# Theorem suite",
            "",
            f"{len(self.catalog)} finite instances, {len(self.fixtures)} witness fixtures. "
            f"Result: {'PASS' if self.passed else 'FAIL'} ({len(self.violations)} violations).",
            "",
        ]
        if self.fault:
            lines += [f"Fault injected: `{self.fault}`.", ""]
        lines += ["| theorem | instances | passing | filtered out | status | note |", "|---|---|---|---|---|---|"]
        for t in self.theorems:
            status = "ok" if t.ok else "VACUOUS" if t.vacuous and not t.violations else "VIOLATED"
            note = "; ".join(filter(None, [t.note, *t.warnings]))
            lines.append(f"| {t.id} | {t.instances} | {t.passing} | {t.filtered} | {status} | {note} |")
        lines.append("")
        for t in self.theorems:
            if t.vacuous:
                empty = [c for c, n in t.clause_instances.items() if n == 0]
                lines.append(f"- {t.id}: no instance meets the hypothesis of {', '.join(empty)}")
        for v in self.violations[:20]:
            lines.append(f"- {v['theorem']} on {v['instance']} ({v['kind']}): {v['clause']}")
        if len(self.violations) > 20:
            lines.append(f"- ... {len(self.violations) - 20} more in the JSON report")
        lines.append("")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_markdown()


def _evaluate(entry: CatalogEntry, config: RunConfig, ids: Sequence[str], fault: str | None) -> dict[str, list[dict]]:
    with ExitStack() as stack:
        if fault:
            stack.enter_context(inject_fault(fault))
        inst = Instance(entry, config)
        out = {}
        for tid in ids:
            check = THEOREMS[tid]
            if not entry.finite and not check.witness_level:
                continue
            out[tid] = [c.to_dict() for c in check.run(inst)]
        return out


def _merge(check: TheoremCheck, per_instance: list[dict[str, list[dict]]]) -> TheoremResult:
    seen: set[str] = set()
    counts = {c: 0 for c in check.clauses}
    instances = passing = filtered = 0
    violations = []
    for results in per_instance:
        for c in results.get(check.id, []):
            if c["key"]:
                tag = f"{c['clause']}|{c['key']}"
                if tag in seen:
                    continue
                seen.add(tag)
            if not c["met"]:
                filtered += 1
                continue
            counts[c["clause"]] += 1
            instances += 1
            if c["ok"]:
                passing += 1
            else:
                violations.append(c["bundle"])
    warnings = []
    if check.id == "T13" and filtered == 0:
        warnings.append("no instance fails 1-epiretractability, hypothesis filtering is unexercised")
    return TheoremResult(check.id, check.statement, check.note, counts, instances, passing, filtered, violations, warnings)


def _select(only: str | Sequence[str] | None) -> list[str]:
    if only is None:
        return list(THEOREMS)
    ids = [only] if isinstance(only, str) else list(only)
    unknown = [t for t in ids if t not in THEOREMS]
    if unknown:
        raise ValueError(f"unknown theorem id(s): {', '.join(unknown)}; known: T1..T20")
    return ids


def run_suite(
    config: RunConfig | None = None,
    catalog: Sequence[CatalogEntry] | None = None,
    fixtures: Sequence[str] = WITNESS_FIXTURES,
) -> SuiteReport:
    """Evaluate the selected theorems over the catalog and witness fixtures.

    Work is split per instance; with ``config.jobs > 1`` instances run in a
    process pool and results are merged in catalog order.
    """
    config = config or RunConfig()
    ids = _select(config.only)
    entries = list(catalog if catalog is not None else finite_catalog())
    finite_names = [e.name for e in entries if e.finite]
    entries += [fixture(name) for name in fixtures]
    fault = config.inject_fault
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            per_instance = list(pool.map(_evaluate, entries, [config] * len(entries),
                                         [ids] * len(entries), [fault] * len(entries)))
    else:
        per_instance = [_evaluate(e, config, ids, fault) for e in entries]
    results = [_merge(THEOREMS[tid], per_instance) for tid in ids]
    return SuiteReport(results, finite_names, list(fixtures), config.bounds(), fault)


def replay(bundle: dict, config: RunConfig | None = None) -> bool:
    """Re-evaluate a violation from its bundle alone; True if it reproduces.

    Certificate violations are re-checked directly.  Implication violations
    are recomputed from the serialized presentation with caches cleared and
    summand queries answered by idempotent enumeration.
    """
    config = config or RunConfig()
    clear_caches()
    M = parse_presentation(bundle["presentation"])
    if bundle["kind"] == "certificate":
        bad = bundle["certificate"]
        target = parse_presentation(bad["module"]) if "module" in bad else M
        return certificate_problem(target, bad["property"], bad["certificate"]) is not None
    parts = tuple(parse_presentation(t) for t in bundle["parts"])
    witnesses = tuple(as_matrix(W) for W in bundle["witnesses"])
    entry = CatalogEntry(bundle["instance"], M, witnesses, parts=parts)
    with summand_oracle():
        cases = THEOREMS[bundle["theorem"]].run(Instance(entry, config))
    return any(c.met and not c.ok and c.clause == bundle["clause"] and c.key == bundle["key"] for c in cases)
