"""Ring-level checks on finite rings given by an element list and operations."""

from __future__ import annotations

from functools import cached_property
from typing import Callable, Hashable, Sequence

from ..homspace import EndoRing
from ..structures import RingPresentation
from .verdict import Verdict


class FiniteRing:
    """A finite ring with elements replaced by indices into cached tables."""

    def __init__(
        self,
        elements: Sequence[Hashable],
        mul: Callable,
        add: Callable,
        zero: Hashable,
        one: Hashable,
        name: str = "",
    ):
        self.elements = list(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        self.name = name
        n = len(self.elements)
        self.mt = [[self.index[mul(a, b)] for b in self.elements] for a in self.elements]
        self.at = [[self.index[add(a, b)] for b in self.elements] for a in self.elements]
        self.zero = self.index[zero]
        self.one = self.index[one]
        self.neg = [self.at[i].index(self.zero) for i in range(n)]

    @classmethod
    def from_endo(cls, S: EndoRing) -> "FiniteRing":
        return cls(S.elements, S.mul, S.add, S.zero, S.one, name=f"End({S.module.name})")

    @classmethod
    def from_presentation(cls, R: RingPresentation) -> "FiniteRing":
        return cls(sorted(R.elements()), R.mul, R.add, R.zero(), R.reduce(R.one), name=R.name)

    def corner(self, e: int) -> "FiniteRing":
        """``eRe`` with identity ``e``."""
        elems = sorted({self.mt[self.mt[e][r]][e] for r in range(len(self))})
        return FiniteRing(
            elems,
            lambda a, b: self.mt[a][b],
            lambda a, b: self.at[a][b],
            self.zero,
            e,
            name=f"eRe({self.name})",
        )

    def __len__(self) -> int:
        return len(self.elements)

    def element(self, i: int):
        return self.elements[i]

    def sub(self, a: int, b: int) -> int:
        return self.at[a][self.neg[b]]

    # ---- element classes -------------------------------------------------

    @cached_property
    def idempotents(self) -> list[int]:
        return [i for i in range(len(self)) if self.mt[i][i] == i]

    @cached_property
    def units(self) -> list[int]:
        return [
            a for a in range(len(self))
            if any(self.mt[a][b] == self.one and self.mt[b][a] == self.one for b in range(len(self)))
        ]

    def orbit(self, a: int) -> list[int]:
        """Distinct powers ``a, a^2, ...`` up to the first repeat."""
        seen, out, p = set(), [], a
        while p not in seen:
            seen.add(p)
            out.append(p)
            p = self.mt[a][p]
        return out

    def is_nilpotent(self, a: int) -> bool:
        return self.zero in self.orbit(a)

    @cached_property
    def nilpotents(self) -> list[int]:
        return [a for a in range(len(self)) if self.is_nilpotent(a)]

    def right_annihilator(self, a: int) -> frozenset[int]:
        return frozenset(y for y in range(len(self)) if self.mt[a][y] == self.zero)

    def right_ideal(self, a: int) -> frozenset[int]:
        return frozenset(self.mt[a])

    @cached_property
    def jacobson_radical(self) -> list[int]:
        units = set(self.units)
        return [
            x for x in range(len(self))
            if all(self.sub(self.one, self.mt[s][x]) in units for s in range(len(self)))
        ]

    @cached_property
    def right_socle(self) -> frozenset[int]:
        """Additive closure of the minimal principal right ideals."""
        n = len(self)
        ideals = {a: self.right_ideal(a) for a in range(n) if a != self.zero}
        minimal = [
            a for a, I in ideals.items()
            if all(ideals[b] == I for b in I if b != self.zero)
        ]
        soc = {self.zero}
        frontier = list(soc)
        gens = sorted({b for a in minimal for b in ideals[a]})
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.at[x][g]
                    if y not in soc:
                        soc.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(soc)

    @cached_property
    def right_singular_ideal(self) -> list[int]:
        """``Z_r``: elements whose right annihilator is essential.

        In a finite ring a right ideal is essential iff it contains the right
        socle, so ``Z_r`` is the left annihilator of the socle.
        """
        soc = self.right_socle
        return [x for x in range(len(self)) if all(self.mt[x][s] == self.zero for s in soc)]

    def max_orthogonal_idempotents(self) -> int:
        nonzero = [e for e in self.idempotents if e != self.zero]
        orth = {
            e: {f for f in nonzero if f != e and self.mt[e][f] == self.zero and self.mt[f][e] == self.zero}
            for e in nonzero
        }
        best = 0

        def grow(chosen: int, candidates: list[int]) -> None:
            nonlocal best
            best = max(best, chosen)
            for i, e in enumerate(candidates):
                if chosen + len(candidates) - i <= best:
                    return
                grow(chosen + 1, [f for f in candidates[i + 1:] if f in orth[e]])

        grow(0, nonzero)
        return best

    def is_central(self, a: int) -> bool:
        return all(self.mt[a][x] == self.mt[x][a] for x in range(len(self)))


# --------------------------------------------------------------------------
# battery
# --------------------------------------------------------------------------

def is_von_neumann_regular(R: FiniteRing) -> Verdict:
    for a in range(len(R)):
        if not any(R.mt[R.mt[a][b]][a] == a for b in range(len(R))):
            return Verdict.refuted(R.element(a), "no b with aba = a")
    return Verdict.proven()


def pi_regular_exponent(R: FiniteRing, a: int) -> tuple[int, int] | None:
    for n, p in enumerate(R.orbit(a), start=1):
        for x in range(len(R)):
            if R.mt[R.mt[p][x]][p] == p:
                return n, x
    return None


def is_pi_regular(R: FiniteRing) -> Verdict:
    for a in range(len(R)):
        if pi_regular_exponent(R, a) is None:
            return Verdict.refuted(R.element(a), "no n, x with a^n x a^n = a^n")
    return Verdict.proven()


def is_strongly_pi_regular(R: FiniteRing) -> Verdict:
    for a in range(len(R)):
        ok = False
        for p in R.orbit(a):
            q = R.mt[a][p]
            if p in R.mt[q]:
                ok = True
                break
        if not ok:
            return Verdict.refuted(R.element(a), "no n, x with a^n = a^(n+1) x")
    return Verdict.proven()


def is_reduced_ring(R: FiniteRing) -> Verdict:
    for a in R.nilpotents:
        if a != R.zero:
            return Verdict.refuted(R.element(a), "nonzero nilpotent")
    return Verdict.proven()


def is_abelian_ring(R: FiniteRing) -> Verdict:
    for e in R.idempotents:
        for x in range(len(R)):
            if R.mt[e][x] != R.mt[x][e]:
                return Verdict.refuted([R.element(e), R.element(x)], "idempotent not central")
    return Verdict.proven()


def gen_right_pp_certificate(R: FiniteRing, a: int) -> tuple[int, int] | None:
    """``(n, e)`` with ``r(a^n) = eR``, or None."""
    ideals = {R.right_ideal(e): e for e in R.idempotents}
    for n, p in enumerate(R.orbit(a), start=1):
        e = ideals.get(R.right_annihilator(p))
        if e is not None:
            return n, e
    return None


def is_gen_right_pp(R: FiniteRing) -> Verdict:
    certs = {}
    for a in range(len(R)):
        c = gen_right_pp_certificate(R, a)
        if c is None:
            return Verdict.refuted(R.element(a), "no power has an idempotent-generated right annihilator")
        certs[a] = c
    return Verdict.proven(max_exponent=max(n for n, _ in certs.values()))


def is_local_with_nil_radical(R: FiniteRing) -> Verdict:
    units = set(R.units)
    nonunits = [x for x in range(len(R)) if x not in units]
    for x in nonunits:
        for y in nonunits:
            s = R.at[x][y]
            if s in units:
                return Verdict.refuted([R.element(x), R.element(y)], "non-units do not form an ideal")
    for x in R.jacobson_radical:
        if not R.is_nilpotent(x):
            return Verdict.refuted(R.element(x), "radical element is not nilpotent")
    return Verdict.proven()


def ring_battery(R: FiniteRing) -> dict[str, Verdict]:
    return {
        "von_neumann_regular": is_von_neumann_regular(R),
        "pi_regular": is_pi_regular(R),
        "strongly_pi_regular": is_strongly_pi_regular(R),
        "reduced": is_reduced_ring(R),
        "abelian": is_abelian_ring(R),
        "generalized_right_pp": is_gen_right_pp(R),
        "local_nil_radical": is_local_with_nil_radical(R),
    }


def ring_summary(R: FiniteRing) -> dict:
    return {
        "order": len(R),
        "jacobson_radical": [R.element(x) for x in R.jacobson_radical],
        "right_singular_ideal": [R.element(x) for x in R.right_singular_ideal],
        "idempotents": len(R.idempotents),
        "max_orthogonal_idempotents": R.max_orthogonal_idempotents(),
    }
