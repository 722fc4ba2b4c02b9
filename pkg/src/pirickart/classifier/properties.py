"""Module properties decided over the quantifier domain of a :class:`ModuleAnalysis`."""

from __future__ import annotations

from typing import Callable

from ..exactlin import solve_affine
from ..homspace import TooLarge, compose, hom_basis, image, power, right_annihilator
from ..lattice_ops import (
    are_isomorphic,
    cyclic_submodule,
    cyclic_submodules,
    essentiality,
    intersect,
    is_subset,
    socle,
)
from ..structures import Matrix, Submodule, quotient, ring_as_module
from ..structures.presentations import apply, compose_raw, reduce_matrix
from .analysis import ModuleAnalysis
from .rings import FiniteRing, ring_battery
from .verdict import Verdict

OK, FAIL, UNKNOWN = "ok", "fail", "unknown"

FINITE_ONLY = "needs a finite module (submodule enumeration)"


def _m(F) -> list[list[int]]:
    return [list(r) for r in F]


def _basis(N: Submodule) -> list[list[int]]:
    return [list(b) for b in N.basis]


def _scan(A: ModuleAnalysis, per_f: Callable, summary: Callable | None = None) -> Verdict:
    """Run ``per_f`` over the domain and aggregate.

    ``per_f(F)`` returns ``(outcome, reason, evidence)``; the first failure
    becomes the refutation witness.  Bounded scans never yield Proven.
    """
    passed, undecided = [], 0
    for F in A.domain:
        outcome, reason, evidence = per_f(F)
        if outcome == FAIL:
            return Verdict.refuted(_m(F), reason, **evidence)
        if outcome == UNKNOWN:
            undecided += 1
        else:
            passed.append((F, evidence))
    extra = summary(passed) if summary else {}
    if A.exact:
        return Verdict.proven(checked=len(passed), **extra)
    witnesses = [{"f": _m(F), **ev} for F, ev in passed if F in A.witnesses]
    if witnesses:
        extra["witnesses"] = witnesses
    return Verdict.no_counterexample(
        A.radius, reason=A.mode_info()["downgrade"], checked=len(passed), undecided=undecided, **extra
    )


def _cert_list(key: str):
    def summary(passed):
        return {
            f"max_{key}": max((ev.get(key, 0) for _, ev in passed), default=0),
            "certificates": [{"f": _m(F), **ev} for F, ev in passed],
        }
    return summary


# --------------------------------------------------------------------------
# kernel-chain properties
# --------------------------------------------------------------------------

def pi_rickart_certificate(A: ModuleAnalysis, F: Matrix):
    ch = A.kernels(F)
    if not ch.known:
        return UNKNOWN, f"kernel chain did not stabilize within {A.config.power_ceiling}", {}
    for n in range(1, ch.index + 1):
        cert = A.summand(ch.at(n))
        if cert:
            return OK, "", {"n": n, "n_star": ch.index, "e": _m(cert.idempotent.matrix)}
    return FAIL, "no Ker f^n with n <= n* is a direct summand", {
        "n_star": ch.index, "kernel": _basis(ch.at(ch.index))
    }


def check_pi_rickart(A: ModuleAnalysis) -> Verdict:
    return _scan(A, lambda F: pi_rickart_certificate(A, F), _cert_list("n_star"))


def check_rickart(A: ModuleAnalysis) -> Verdict:
    def per_f(F):
        K = A.kernel(F)
        cert = A.summand(K)
        if cert:
            return OK, "", {"e": _m(cert.idempotent.matrix)}
        return FAIL, "Ker f is not a direct summand", {"kernel": _basis(K)}
    return _scan(A, per_f, lambda passed: {"certificates": [{"f": _m(F), **ev} for F, ev in passed]})


def fitting_index(A: ModuleAnalysis, F: Matrix) -> int | None:
    """Least ``n`` with ``M = Ker f^n + Im f^n`` (direct), or None.

    Such a decomposition forces ``n >= n*`` and the intersection is zero
    from ``n*`` on; images only shrink, so ``n*`` is the only candidate.
    """
    split = A.fitting_split(F)
    if split is None:
        raise TooLarge("kernel chain did not stabilize")
    K, I = split
    return A.kernels(F).index if A.is_split(K, I) else None


def check_fitting(A: ModuleAnalysis) -> Verdict:
    def per_f(F):
        split = A.fitting_split(F)
        if split is None:
            return UNKNOWN, "kernel chain did not stabilize", {}
        K, I = split
        n = A.kernels(F).index
        if A.is_split(K, I):
            return OK, "", {"index": n, "kernel": _basis(K), "image": _basis(I)}
        return FAIL, "Ker f^n* + Im f^n* is not all of M", {"n_star": n, "kernel": _basis(K), "image": _basis(I)}
    return _scan(A, per_f, _cert_list("index"))


def check_strongly_hopfian(A: ModuleAnalysis) -> Verdict:
    """Always holds: the additive group is finitely generated, hence Noetherian."""
    indices = [A.kernels(F).index for F in A.domain if A.kernels(F).known]
    evidence = {"argument": "finitely generated additive group satisfies ACC on subgroups"}
    if indices:
        evidence["max_index" if A.exact else "max_index_in_scan"] = max(indices)
    if not A.exact:
        evidence["scan_radius"] = A.radius
    return Verdict.proven(**evidence)


def check_mono_or_nilpotent(A: ModuleAnalysis) -> Verdict:
    def per_f(F):
        if A.is_mono(F):
            return OK, "", {"kind": "mono"}
        nil = A.is_nilpotent(F)
        if nil is None:
            return UNKNOWN, "nilpotency undecided", {}
        if nil:
            return OK, "", {"kind": "nilpotent"}
        return FAIL, "neither a monomorphism nor nilpotent", {"kernel": _basis(A.kernel(F))}
    return _scan(A, per_f)


def check_gen_K_nonsingular(A: ModuleAnalysis) -> Verdict:
    soc = socle(A.M) if A.M.is_finite else None

    def per_f(F):
        K = A.kernel(F)
        if K.is_zero:
            return OK, "", {}
        nil = A.is_nilpotent(F)
        if nil:
            return OK, "", {}
        if soc is not None:
            essential = is_subset(soc, K)
        else:
            status, _ = essentiality(K, A.config.essential_box)
            if status == "Inconclusive":
                return UNKNOWN, "essentiality undecided", {}
            essential = status == "Essential"
        if not essential:
            return OK, "", {}
        if nil is None:
            return UNKNOWN, "nilpotency undecided", {}
        return FAIL, "essential kernel but f is not nilpotent", {"kernel": _basis(K)}
    return _scan(A, per_f)


def check_dual_pi_rickart(A: ModuleAnalysis) -> Verdict:
    def per_f(F):
        for n, I in enumerate(A.image_prefix(F), start=1):
            cert = A.summand(I)
            if cert:
                return OK, "", {"n": n, "e": _m(cert.idempotent.matrix)}
        if A.images(F).known:
            return FAIL, "no Im f^n is a direct summand", {"n_stable": A.images(F).index}
        return UNKNOWN, f"image chain did not stabilize within {A.config.power_ceiling}", {}
    return _scan(A, per_f, _cert_list("n"))


# --------------------------------------------------------------------------
# idempotent and nilpotent structure
# --------------------------------------------------------------------------

def _commutative_generators(A: ModuleAnalysis) -> bool:
    gens = [G for G, _ in A.S.lattice.generators]
    return all(A.S.mul(G, H) == A.S.mul(H, G) for G in gens for H in gens)


def _non_central_partner(A: ModuleAnalysis, E: Matrix) -> Matrix | None:
    for G, _ in A.S.lattice.generators:
        if A.S.mul(E, G) != A.S.mul(G, E):
            return G
    return None


def check_abelian(A: ModuleAnalysis) -> Verdict:
    if _commutative_generators(A):
        return Verdict.proven(argument="End(M) is commutative")
    idems = A.S.idempotents if A.exact else [F for F in A.domain if A.S.mul(F, F) == F]
    for E in idems:
        G = _non_central_partner(A, E)
        if G is not None:
            return Verdict.refuted([_m(E), _m(G)], "idempotent does not commute with an endomorphism")
    if A.exact:
        return Verdict.proven(idempotents=len(idems))
    return Verdict.no_counterexample(A.radius, reason=A.mode_info()["downgrade"], idempotents_found=len(idems))


def _orbit_subgroup(A: ModuleAnalysis, m) -> Submodule:
    """``Sm`` as a subgroup: images of ``m`` under the lattice generators."""
    return Submodule.subgroup(A.M, [apply(G, m) for G, _ in A.S.lattice.generators])


def check_reduced(A: ModuleAnalysis) -> Verdict:
    # a nonzero nilpotent f with f^k = 0 gives m = f^(k-1)(x) in fM and Sm, with fm = 0
    for F in A.domain:
        if A.S.is_zero(F) or not A.is_nilpotent(F):
            continue
        f = A.hom(F)
        g = f
        while not compose(f, g).is_zero():
            g = compose(f, g)
        m = next(list(g(b)) for b in A.S.one if any(g(b)))
        return Verdict.refuted({"f": _m(F), "m": m}, "nonzero nilpotent endomorphism")

    def per_f(F):
        K = A.kernel(F)
        I = image(A.hom(F))
        if I.is_zero or K.is_zero:
            return OK, "", {}
        elems = K.elements() if K.ambient.is_finite else [list(b) for b in K.basis]
        for m in elems:
            if any(m) and not intersect(I, _orbit_subgroup(A, m)).is_zero:
                return FAIL, "fm = 0 but fM meets Sm", {"m": list(m)}
        return OK, "", {}

    verdict = _scan(A, per_f)
    if verdict.fails:
        verdict.witness = {"f": verdict.witness, "m": verdict.evidence.pop("m")}
    return verdict


def check_indecomposable(A: ModuleAnalysis) -> Verdict:
    one, zero = A.S.one, A.S.zero
    idems = A.S.idempotents if A.exact else [F for F in A.domain if A.S.mul(F, F) == F]
    for E in idems:
        if E not in (one, zero):
            return Verdict.refuted(_m(E), "nontrivial idempotent")
    if A.exact:
        return Verdict.proven()
    return Verdict.no_counterexample(A.radius, reason=A.mode_info()["downgrade"])


# --------------------------------------------------------------------------
# submodule-quantified properties
# --------------------------------------------------------------------------

def check_duo(A: ModuleAnalysis) -> Verdict:
    gens = [G for G, _ in A.S.lattice.generators]
    if A.M.is_finite:
        elements, exact = None, True
        cyclics = cyclic_submodules(A.M)
    else:
        elements, radius = A.module_domain(A.config.essential_box)
        cyclics, exact = [cyclic_submodule(A.M, m) for m in elements if any(m)], False
    for C in cyclics:
        for G in gens:
            for b in C.basis:
                if not C.contains(apply(G, b)):
                    return Verdict.refuted({"f": _m(G), "m": list(b)}, "submodule not fully invariant")
    if exact:
        return Verdict.proven(cyclic_submodules=len(cyclics))
    return Verdict.no_counterexample(radius, reason="cyclic submodules scanned over a coordinate box")


def check_baer(A: ModuleAnalysis) -> Verdict:
    if not (A.M.is_finite and A.exact):
        return Verdict.inapplicable(FINITE_ONLY)
    S = A.S
    ideals = {frozenset(S.mul(G, E) for G in S.elements): E for E in S.idempotents}
    for N in A.submodules:
        ann = frozenset(F for F in S.elements if all(not any(apply(F, b)) for b in N.basis))
        if ann not in ideals:
            return Verdict.refuted(_basis(N), "l_S(N) is not generated by an idempotent")
    return Verdict.proven(submodules=len(A.submodules))


def check_C2(A: ModuleAnalysis) -> Verdict:
    if not (A.M.is_finite and A.exact):
        return Verdict.inapplicable(FINITE_ONLY)
    for N in A.submodules:
        if N in A.summands:
            continue
        for P in A.summands:
            if P.order == N.order and are_isomorphic(N, P, A.config.cap) is not None:
                return Verdict.refuted(_basis(N), "isomorphic to a summand but not a summand", summand=_basis(P))
    return Verdict.proven(submodules=len(A.submodules))


def check_D2(A: ModuleAnalysis) -> Verdict:
    if not (A.M.is_finite and A.exact):
        return Verdict.inapplicable(FINITE_ONLY)
    for N in A.submodules:
        if N in A.summands:
            continue
        Q, _ = quotient(A.M, N)
        for P in A.summands:
            if P.order * N.order == A.M.order and are_isomorphic(Q, P, A.config.cap) is not None:
                return Verdict.refuted(_basis(N), "quotient isomorphic to a summand but not a summand", summand=_basis(P))
    return Verdict.proven(submodules=len(A.submodules))


def check_one_epiretractable(A: ModuleAnalysis) -> Verdict:
    if not (A.M.is_finite and A.exact):
        return Verdict.inapplicable(FINITE_ONLY)
    images = {image(A.hom(F)) for F in A.S.elements}
    for C in cyclic_submodules(A.M):
        if C not in images:
            return Verdict.refuted(_basis(C), "cyclic submodule is not an endomorphic image")
    return Verdict.proven()


def check_regular_module(A: ModuleAnalysis) -> Verdict:
    R = A.M.ring
    if not (A.M.is_finite and R.is_finite):
        return Verdict.inapplicable("needs a finite module over a finite ring")
    RR = ring_as_module(R)
    try:
        phis = hom_basis(A.M, RR).elements(A.config.cap)
    except TooLarge as exc:
        return Verdict.inapplicable(str(exc))
    for m in A.M.elements():
        if not any(A.M.act(m, apply(P, m)) == tuple(m) for P in phis):
            return Verdict.refuted(list(m), "no phi in Hom(M, R) with m = m phi(m)")
    return Verdict.proven(functionals=len(phis))


# --------------------------------------------------------------------------
# T(_SM)
# --------------------------------------------------------------------------

def torsion_set(A: ModuleAnalysis) -> dict:
    """``T = union of Ker f over nonzero f``; whether it is a submodule."""
    kernels = {}
    for F in A.domain:
        if A.S.is_zero(F):
            continue
        K = A.kernel(F)
        if not K.is_zero:
            kernels.setdefault(K.basis, K)
    out = {"mode": "exact" if A.exact else "bounded"}
    if not A.exact:
        out["radius"] = A.radius
    if not kernels:
        out.update(is_zero=True, is_submodule=True, elements=[] if A.M.is_finite else None)
        return out
    ks = list(kernels.values())
    out["is_zero"] = False
    if A.M.is_finite:
        elems = sorted({tuple(m) for K in ks for m in K.elements()})
        out["elements"] = [list(m) for m in elems]
        total = ks[0]
        for K in ks[1:]:
            total = Submodule.subgroup(A.M, list(total.basis) + list(K.basis))
        out["is_submodule"] = total.order == len(elems)
    else:
        out["kernels"] = [_basis(K) for K in sorted(ks, key=lambda K: K.basis)]
        biggest = [K for K in ks if all(is_subset(L, K) for L in ks)]
        out["is_submodule"] = True if biggest else None
    return out


# --------------------------------------------------------------------------
# endomorphism ring battery on infinite S
# --------------------------------------------------------------------------

def _solvable(A: ModuleAnalysis, left: Matrix, right: Matrix, target: Matrix) -> bool:
    """Is there ``x`` in ``S`` with ``left x right = target``?"""
    M = A.M
    k = M.rank
    prods = []
    for b in A.S.lattice.basis:
        B = [b[t * k:(t + 1) * k] for t in range(k)]
        prods.append(compose_raw(left, compose_raw(B, right)))
    rows, rhs, moduli = [], [], []
    for t in range(k):
        for i in range(k):
            rows.append([P[t][i] for P in prods])
            rhs.append(target[t][i])
            moduli.append(M.moduli[t])
    return not solve_affine(rows, rhs, [0] * len(prods), moduli).is_empty()


class InfiniteEndoBattery:
    """Ring properties of an infinite ``S``, decided per element where exact."""

    def __init__(self, A: ModuleAnalysis):
        self.A = A

    def _scan(self, per_a) -> Verdict:
        return _scan(self.A, per_a)

    def von_neumann_regular(self) -> Verdict:
        def per_a(F):
            if _solvable(self.A, F, F, F):
                return OK, "", {}
            return FAIL, "no x with a x a = a", {}
        return self._scan(per_a)

    def pi_regular(self) -> Verdict:
        A = self.A

        def per_a(F):
            if A.is_nilpotent(F):
                return OK, "", {"n": A.kernels(F).index}
            if A.is_mono(F):
                # injective a: a^n x a^n = a^n cancels to x a^n = 1, i.e. a has a left inverse
                if _solvable(A, A.S.one, F, A.S.one):
                    return OK, "", {"n": 1}
                return FAIL, "injective and not left invertible", {}
            ch = A.kernels(F)
            for n in range(1, (ch.index or A.config.power_ceiling) + 1):
                P = power(A.hom(F), n).matrix
                if _solvable(A, P, P, P):
                    return OK, "", {"n": n}
            return UNKNOWN, "no exponent found", {}
        return self._scan(per_a)

    def strongly_pi_regular(self) -> Verdict:
        A = self.A

        def per_a(F):
            if A.is_nilpotent(F):
                return OK, "", {}
            if A.is_mono(F):
                # injective a: a^n = a^(n+1) x cancels to a x = 1
                if _solvable(A, F, A.S.one, A.S.one):
                    return OK, "", {}
                return FAIL, "injective and not right invertible", {}
            for n in range(1, A.config.power_ceiling + 1):
                P = power(A.hom(F), n).matrix
                if _solvable(A, A.S.mul(F, P), A.S.one, P):
                    return OK, "", {"n": n}
            return UNKNOWN, "no exponent found", {}
        return self._scan(per_a)

    def reduced(self) -> Verdict:
        def per_a(F):
            if not self.A.S.is_zero(F) and self.A.is_nilpotent(F):
                return FAIL, "nonzero nilpotent", {}
            return OK, "", {}
        return self._scan(per_a)

    def generalized_right_pp(self) -> Verdict:
        A = self.A

        def per_a(F):
            ch = A.kernels(F)
            if not ch.known:
                return UNKNOWN, "kernel chain did not stabilize", {}
            for n in range(1, ch.index + 1):
                cert = A.summand(ch.at(n))
                if not cert:
                    continue
                # r_S(a^n) = eS  iff  a^n e = 0 and e g = g on a basis of r_S(a^n)
                E = cert.idempotent.matrix
                P = power(A.hom(F), n)
                k = A.M.rank
                ann = [
                    reduce_matrix([b[t * k:(t + 1) * k] for t in range(k)], A.M.moduli)
                    for b in right_annihilator(A.S, P).basis
                ]
                if A.S.is_zero(A.S.mul(P.matrix, E)) and all(A.S.mul(E, G) == G for G in ann):
                    return OK, "", {"n": n, "e": _m(E)}
            return UNKNOWN, "no idempotent generator found", {}
        return self._scan(per_a)


def endo_ring_battery(A: ModuleAnalysis, ring: FiniteRing | None) -> dict[str, Verdict]:
    if ring is not None:
        return ring_battery(ring)
    B = InfiniteEndoBattery(A)
    return {
        "von_neumann_regular": B.von_neumann_regular(),
        "pi_regular": B.pi_regular(),
        "strongly_pi_regular": B.strongly_pi_regular(),
        "reduced": B.reduced(),
        "abelian": check_abelian(A),
        "generalized_right_pp": B.generalized_right_pp(),
        "local_nil_radical": Verdict.inapplicable("Jacobson radical is only computed for finite rings"),
    }
