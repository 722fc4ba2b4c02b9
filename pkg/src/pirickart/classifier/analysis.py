"""Shared state for classifying one module: quantifier domain and per-map caches."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from ..config import RunConfig
from ..homspace import (
    CeilingReached,
    EndoRing,
    Homomorphism,
    TooLarge,
    compose,
    image,
    image_chain,
    kernel,
    kernel_chain,
    power,
)
from ..lattice_ops import (
    SummandCertificate,
    enumerate_submodules,
    intersect,
    is_direct_summand,
    module_box,
    submodule_sum,
)
from ..structures import Matrix, ModulePresentation, Submodule
from ..structures.presentations import reduce_matrix

EXACT = "exact"
BOUNDED = "bounded"


@dataclass
class Chain:
    terms: list[Submodule] | None  # terms[i] is op(f^(i+1)); None when the ceiling was hit
    index: int | None               # stabilization index

    @property
    def known(self) -> bool:
        return self.terms is not None

    def at(self, n: int) -> Submodule:
        return self.terms[min(n, self.index) - 1]


class ModuleAnalysis:
    """Everything the property checks share for a fixed module ``M``.

    The quantifier domain is all of ``S`` when it is finite and within the
    cap (exact mode); otherwise the supplied witnesses followed by whole
    shells of the coefficient box, stopping before the scan budget is
    exceeded (bounded mode, reported with the last complete radius).
    """

    def __init__(self, M: ModulePresentation, config: RunConfig | None = None, witnesses: Sequence = ()):
        self.M = M
        self.config = config or RunConfig()
        self.S = EndoRing(M, cap=self.config.cap)
        self.exact = self.S.is_finite and self.S.order <= self.config.cap
        self.witnesses = [reduce_matrix(W, M.moduli) for W in witnesses]
        self._kernels: dict[Matrix, Chain] = {}
        self._images: dict[Matrix, Chain] = {}

    # ---- domain ----------------------------------------------------------

    @cached_property
    def _bounded_domain(self) -> tuple[list[Matrix], int]:
        out = list(self.witnesses)
        radius = -1
        budget = self.config.box_budget
        for r, shell in itertools.groupby(self.S.lattice.box(self.config.box), key=lambda p: p[0]):
            mats = [F for _, F in shell]
            if len(out) + len(mats) > budget and radius >= 0:
                break
            out.extend(mats)
            radius = r
        return list(dict.fromkeys(out)), max(radius, 0)

    @property
    def domain(self) -> list[Matrix]:
        if self.exact:
            return self.S.elements
        return self._bounded_domain[0]

    @property
    def radius(self) -> int:
        return self._bounded_domain[1]

    def mode_info(self) -> dict:
        if self.exact:
            return {"mode": EXACT, "scanned": len(self.domain)}
        reason = "End(M) is infinite" if not self.S.is_finite else f"|End(M)| exceeds cap {self.config.cap}"
        return {"mode": BOUNDED, "radius": self.radius, "scanned": len(self.domain), "downgrade": reason}

    @property
    def degenerate(self) -> bool:
        return self.M.is_zero

    # ---- per-map data ----------------------------------------------------

    def hom(self, F) -> Homomorphism:
        return self.S.hom(F)

    def kernels(self, F: Matrix) -> Chain:
        if F not in self._kernels:
            self._kernels[F] = self._chain(F, kernel_chain)
        return self._kernels[F]

    def images(self, F: Matrix) -> Chain:
        if F not in self._images:
            self._images[F] = self._chain(F, image_chain)
        return self._images[F]

    def _chain(self, F: Matrix, op) -> Chain:
        try:
            terms, n = op(self.hom(F), self.config.power_ceiling)
        except CeilingReached:
            return Chain(None, None)
        return Chain(terms, n)

    def image_prefix(self, F: Matrix) -> list[Submodule]:
        """Images of ``f, f^2, ...`` up to stabilization or the ceiling."""
        ch = self.images(F)
        if ch.known:
            return ch.terms
        out, f = [], self.hom(F)
        g = f
        for _ in range(self.config.power_ceiling):
            out.append(image(g))
            g = compose(f, g)
        return out

    def summand(self, N: Submodule) -> SummandCertificate:
        return is_direct_summand(N)

    def kernel(self, F: Matrix) -> Submodule:
        ch = self.kernels(F)
        return ch.terms[0] if ch.known else kernel(self.hom(F))

    def is_mono(self, F: Matrix) -> bool:
        return self.kernel(F).is_zero

    def is_nilpotent(self, F: Matrix) -> bool | None:
        if self.exact:
            return self.S.nilpotent(F)
        ch = self.kernels(F)
        if not ch.known:
            return None
        return ch.terms[-1] == Submodule.whole(self.M)

    # ---- submodules ------------------------------------------------------

    @cached_property
    def submodules(self) -> list[Submodule]:
        if not self.M.is_finite:
            raise TooLarge("module is infinite")
        return enumerate_submodules(self.M, self.config.submodule_cap)

    @cached_property
    def summands(self) -> set[Submodule]:
        return {image(self.hom(E)) for E in self.S.idempotents}

    def fitting_split(self, F: Matrix) -> tuple[Submodule, Submodule] | None:
        ch = self.kernels(F)
        if not ch.known:
            return None
        n = ch.index
        K = ch.at(n)
        I = image(power(self.hom(F), n))
        return K, I

    def is_split(self, K: Submodule, I: Submodule) -> bool:
        return intersect(K, I).is_zero and submodule_sum(K, I) == Submodule.whole(self.M)

    def module_domain(self, bound: int) -> tuple[list[tuple[int, ...]], int]:
        """Module elements for infinite scans, whole shells within the budget."""
        out: list[tuple[int, ...]] = []
        radius = -1
        free = [i for i, m in enumerate(self.M.moduli) if m == 0]

        def norm(v):
            return max((abs(v[i]) for i in free), default=0)

        for r, shell in itertools.groupby(module_box(self.M, bound), key=norm):
            vs = list(shell)
            if len(out) + len(vs) > self.config.box_budget and radius >= 0:
                break
            out.extend(vs)
            radius = r
        return out, max(radius, 0)
