"""Submodule calculus: sums, intersections, summands, socle, essentiality, trace."""

from __future__ import annotations

import itertools
from contextlib import contextmanager
from dataclasses import dataclass
from functools import lru_cache
from math import lcm
from typing import Iterator, Sequence

from .exactlin import lattice_intersection, solve_affine
from .homspace import (
    DEFAULT_CAP,
    EndoRing,
    Homomorphism,
    TooLarge,
    compose,
    hom_basis,
    image,
    kernel,
)
from .structures import ModulePresentation, Submodule, quotient_lifts, submodule_as_module
from .structures.presentations import apply, compose_raw, reduce_matrix

DEFAULT_SUBMODULE_CAP = 10_000
DEFAULT_ESSENTIAL_BOX = 8

_FAULTS: set[str] = set()


@contextmanager
def inject_fault(name: str):
    """Test hook: ``summand-true`` makes every summand query answer Yes."""
    _FAULTS.add(name)
    try:
        yield
    finally:
        _FAULTS.discard(name)


def active_faults() -> frozenset[str]:
    return frozenset(_FAULTS)


_ORACLE: list[bool] = [False]


@contextmanager
def summand_oracle():
    """Answer summand queries on finite modules by enumerating idempotents."""
    _ORACLE.append(True)
    try:
        yield
    finally:
        _ORACLE.pop()


def clear_caches() -> None:
    _summand_cached.cache_clear()
    _end_lattice.cache_clear()


class UnboundedCheck(Exception):
    """A check over an infinite module could not be decided."""


@dataclass(frozen=True)
class SummandCertificate:
    """Outcome of :func:`is_direct_summand`.

    On Yes, ``idempotent`` is an ``e`` with ``e^2 = e`` and ``eM = N``; it is
    also the retraction ``M -> N`` (composed with the inclusion).
    """

    is_summand: bool
    idempotent: Homomorphism | None = None

    def __bool__(self) -> bool:
        return self.is_summand


def _check_ambient(N: Submodule, P: Submodule) -> None:
    if not (N.ambient is P.ambient or N.ambient == P.ambient):
        raise ValueError("submodules live in different modules")


def submodule_sum(N: Submodule, P: Submodule) -> Submodule:
    _check_ambient(N, P)
    return Submodule.subgroup(N.ambient, list(N.basis) + list(P.basis))


def intersect(N: Submodule, P: Submodule) -> Submodule:
    _check_ambient(N, P)
    M = N.ambient
    rows = lattice_intersection(N.lift, P.lift, M.rank)
    return Submodule.subgroup(M, rows)


def contains(N: Submodule, m: Sequence[int]) -> bool:
    return N.contains(m)


def equals(N: Submodule, P: Submodule) -> bool:
    _check_ambient(N, P)
    return N.basis == P.basis


def is_subset(N: Submodule, P: Submodule) -> bool:
    return all(P.contains(g) for g in N.basis)


def cyclic_submodule(M: ModulePresentation, m: Sequence[int]) -> Submodule:
    return Submodule.generated_by(M, [m])


# --------------------------------------------------------------------------
# direct summands
# --------------------------------------------------------------------------

def is_direct_summand(N: Submodule) -> SummandCertificate:
    """Decide whether ``N`` is a direct summand by solving for a retraction.

    Unknowns are the coordinates of an endomorphism ``h`` in the lattice
    basis of ``End(M)`` together with the coefficients expressing each
    ``h(g_i)`` in the generators of ``N``; the constraints are ``h(M) <= N``
    and ``h|_N = id``.  One affine solve, exact also for infinite modules.
    """
    M = N.ambient
    if "summand-true" in _FAULTS:
        k = M.rank
        return SummandCertificate(True, Homomorphism(M, M, [[int(i == j) for j in range(k)] for i in range(k)]))
    if _ORACLE[-1] and M.is_finite:
        for E in EndoRing(M).idempotents:
            e = Homomorphism(M, M, E)
            if image(e) == N:
                return SummandCertificate(True, e)
        return SummandCertificate(False)
    return _summand_cached(N)


@lru_cache(maxsize=8192)
def _summand_cached(N: Submodule) -> SummandCertificate:
    M = N.ambient
    k = M.rank
    if N.is_zero:
        return SummandCertificate(True, Homomorphism(M, M, [[0] * k for _ in range(k)]))
    lattice = _end_lattice(M)
    basis = [_unflat(b, k) for b in lattice.basis]
    nb = len(basis)
    gens = [list(g) for g in N.basis]
    q = len(gens)
    nvars = nb + k * q
    A, rhs, moduli = [], [], []
    # h(e_i) = sum_c mu_{i,c} n_c
    for i in range(k):
        for t in range(k):
            row = [B[t][i] for B in basis] + [0] * (k * q)
            for c in range(q):
                row[nb + i * q + c] = -gens[c][t]
            A.append(row)
            rhs.append(0)
            moduli.append(M.moduli[t])
    # h(n_c) = n_c
    images = [[apply(B, g) for g in gens] for B in basis]
    for c in range(q):
        for t in range(k):
            A.append([images[b][c][t] for b in range(nb)] + [0] * (k * q))
            rhs.append(gens[c][t])
            moduli.append(M.moduli[t])
    sol = solve_affine(A, rhs, [0] * nvars, moduli)
    if sol.is_empty():
        return SummandCertificate(False)
    lam = sol.particular.coords[:nb]
    E = [[sum(lam[b] * basis[b][r][c] for b in range(nb)) for c in range(k)] for r in range(k)]
    e = Homomorphism(M, M, E)
    if compose(e, e) != e or image(e) != N:
        raise AssertionError("retraction solver produced an invalid idempotent")
    return SummandCertificate(True, e)


@lru_cache(maxsize=256)
def _end_lattice(M: ModulePresentation):
    return hom_basis(M, M)


def _unflat(v: Sequence[int], k: int):
    return [list(v[t * k:(t + 1) * k]) for t in range(k)]


def summand_by_enumeration(N: Submodule, S: EndoRing) -> bool:
    """Oracle: some enumerated idempotent has image ``N``."""
    M = N.ambient
    return any(image(Homomorphism(M, M, e)) == N for e in S.idempotents)


def idempotent_images(S: EndoRing) -> set[Submodule]:
    M = S.module
    return {image(Homomorphism(M, M, e)) for e in S.idempotents}


# --------------------------------------------------------------------------
# enumeration, socle, essentiality
# --------------------------------------------------------------------------

def cyclic_submodules(M: ModulePresentation) -> list[Submodule]:
    if not M.is_finite:
        raise TooLarge("module is infinite")
    seen: dict[tuple, Submodule] = {}
    for m in M.elements():
        C = cyclic_submodule(M, m)
        seen.setdefault(C.basis, C)
    return sorted(seen.values(), key=lambda C: (C.order, C.basis))


def enumerate_submodules(M: ModulePresentation, cap: int = DEFAULT_SUBMODULE_CAP) -> list[Submodule]:
    """All submodules of a finite module, by saturating sums of cyclic ones."""
    cyclics = cyclic_submodules(M)
    found: dict[tuple, Submodule] = {(): Submodule.zero(M)}
    frontier = [Submodule.zero(M)]
    while frontier:
        nxt = []
        for N in frontier:
            for C in cyclics:
                if is_subset(C, N):
                    continue
                T = submodule_sum(N, C)
                if T.basis not in found:
                    found[T.basis] = T
                    nxt.append(T)
                    if len(found) > cap:
                        raise TooLarge(f"more than {cap} submodules")
        frontier = nxt
    return sorted(found.values(), key=lambda N: (N.order, N.basis))


def is_minimal_cyclic(C: Submodule) -> bool:
    if C.is_zero:
        return False
    M = C.ambient
    return all(cyclic_submodule(M, m) == C for m in C.elements() if any(m))


def socle(M: ModulePresentation) -> Submodule:
    """Sum of the minimal submodules (finite modules only)."""
    gens = []
    for C in cyclic_submodules(M):
        if is_minimal_cyclic(C):
            gens.extend(C.basis)
    return Submodule.subgroup(M, gens)


def essentiality(N: Submodule, box: int = DEFAULT_ESSENTIAL_BOX) -> tuple[str, tuple | None]:
    """``("Essential" | "NotEssential" | "Inconclusive", witness)``.

    Finite modules: ``N`` is essential iff it contains the socle.  Infinite
    modules: a cyclic-intersection scan over a coefficient box finds
    non-essentiality witnesses (lifts of free generators of ``M/N`` are
    tried first); when ``M/N`` is finite of exponent ``t``
    every element outside the ``t``-torsion has the nonzero multiple ``t m``
    in ``N``, so only the finite ``t``-torsion needs checking.
    """
    M = N.ambient
    if M.is_finite:
        return ("Essential", None) if is_subset(socle(M), N) else ("NotEssential", None)
    lifts = quotient_lifts(M, N)
    if all(d for _, d in lifts):
        t = 1
        for _, d in lifts:
            t = lcm(t, d)
        scalar_t = Homomorphism(M, M, [[t * int(i == j) for j in range(M.rank)] for i in range(M.rank)])
        for m in kernel(scalar_t).elements():
            if any(m) and intersect(cyclic_submodule(M, m), N).is_zero:
                return "NotEssential", m
        return "Essential", None
    # lifts of free quotient generators are the natural complement candidates
    candidates = [M.reduce(v) for v, d in lifts if d == 0]
    for m in itertools.chain(candidates, _module_box(M, box)):
        if any(m) and intersect(cyclic_submodule(M, m), N).is_zero:
            return "NotEssential", m
    return "Inconclusive", None


def is_essential(N: Submodule, box: int = DEFAULT_ESSENTIAL_BOX) -> bool:
    status, _ = essentiality(N, box)
    if status == "Inconclusive":
        raise UnboundedCheck("essentiality undecided on an infinite module")
    return status == "Essential"


def _module_box(M: ModulePresentation, bound: int) -> Iterator[tuple[int, ...]]:
    free = [i for i, m in enumerate(M.moduli) if m == 0]
    ranges = [range(-bound, bound + 1) if m == 0 else range(m) for m in M.moduli]
    for radius in range(bound + 1):
        for v in itertools.product(*ranges):
            if free and max(abs(v[i]) for i in free) != radius:
                continue
            if not free and radius:
                return
            yield v


def module_box(M: ModulePresentation, bound: int) -> Iterator[tuple[int, ...]]:
    """Elements with free coordinates in ``[-bound, bound]`` by increasing norm."""
    return _module_box(M, bound)


# --------------------------------------------------------------------------
# isomorphism and trace
# --------------------------------------------------------------------------

def _as_module(X) -> ModulePresentation:
    if isinstance(X, Submodule):
        return submodule_as_module(X)[0]
    return X


def are_isomorphic(N, P, cap: int = DEFAULT_CAP) -> Homomorphism | None:
    """An isomorphism ``N -> P`` if one exists (finite modules)."""
    A, B = _as_module(N), _as_module(P)
    if not (A.is_finite and B.is_finite):
        raise TooLarge("isomorphism search needs finite modules")
    if A.order != B.order:
        return None
    if A.is_zero:
        return Homomorphism(A, B, [[0] * A.rank for _ in range(B.rank)])
    for F in hom_basis(A, B).elements(cap):
        f = Homomorphism(A, B, F)
        if kernel(f).is_zero:
            return f
    return None


def trace(U: ModulePresentation, L) -> Submodule:
    """``Tr(U, L)``: sum of images of all maps ``U -> L``.

    ``L`` is a submodule (or a module, meaning all of it); the images of the
    lattice generators of ``Hom(U, L)`` already span the trace.
    """
    if isinstance(L, ModulePresentation):
        L = Submodule.whole(L)
    M = L.ambient
    if L.is_zero:
        return Submodule.zero(M)
    P, inc = submodule_as_module(L)
    cols = []
    for F, _ in hom_basis(U, P).generators:
        G = reduce_matrix(compose_raw(inc, F), M.moduli)
        cols.extend([G[t][i] for t in range(M.rank)] for i in range(U.rank))
    return Submodule.subgroup(M, cols)
