"""Homomorphism groups, endomorphism rings and the annihilator operators.

A homomorphism ``M -> N`` is an integer matrix whose column ``i`` is the
image of generator ``i``; row ``t`` is reduced modulo the ``t``-th modulus
of ``N``, which makes the matrix a canonical representative of the map.
``Hom(M, N)`` is computed as the lattice ``L`` of all integer matrices that
respect torsion and commute with the action, modulo the sublattice ``L0`` of
matrices that represent the zero map.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .exactlin import hermite_normal_form, hnf_reduce, quotient_structure, solve_affine
from .structures import Matrix, ModulePresentation, Submodule
from .structures.presentations import apply, as_matrix, compose_raw, reduce_matrix

DEFAULT_CAP = 100_000
DEFAULT_POWER_CEILING = 16


class TooLarge(Exception):
    """An enumeration would exceed its cap (or is infinite)."""


class CeilingReached(Exception):
    """A power chain did not stabilize below the configured ceiling."""

    def __init__(self, message: str, chain=None):
        super().__init__(message)
        self.chain = chain


def _same(a: ModulePresentation, b: ModulePresentation) -> bool:
    return a is b or a == b


@dataclass(frozen=True, eq=False)
class Homomorphism:
    source: ModulePresentation
    target: ModulePresentation
    matrix: Matrix

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", reduce_matrix(self.matrix, self.target.moduli))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Homomorphism):
            return NotImplemented
        return (
            self.matrix == other.matrix
            and _same(self.source, other.source)
            and _same(self.target, other.target)
        )

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.target.reduce(apply(self.matrix, v))

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.matrix)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.matrix]


def is_homomorphism(source: ModulePresentation, target: ModulePresentation, F: Sequence[Sequence[int]]) -> bool:
    if len(F) != target.rank or any(len(r) != source.rank for r in F):
        return False
    for i, d in enumerate(source.moduli):
        if d and any(target.reduce(d * F[t][i] for t in range(target.rank))):
            return False
    for A, B in zip(source.action, target.action):
        if reduce_matrix(compose_raw(F, A), target.moduli) != reduce_matrix(compose_raw(B, F), target.moduli):
            return False
    return True


def homomorphism(source: ModulePresentation, target: ModulePresentation, F) -> Homomorphism:
    """Validated constructor."""
    F = as_matrix(F)
    if not is_homomorphism(source, target, F):
        raise ValueError("matrix does not define an R-linear map")
    return Homomorphism(source, target, F)


def identity_map(M: ModulePresentation) -> Homomorphism:
    k = M.rank
    return Homomorphism(M, M, as_matrix([[int(i == j) for j in range(k)] for i in range(k)]))


def zero_map(M: ModulePresentation, N: ModulePresentation) -> Homomorphism:
    return Homomorphism(M, N, as_matrix([[0] * M.rank for _ in range(N.rank)]))


def compose(f: Homomorphism, g: Homomorphism) -> Homomorphism:
    """``f o g``: apply ``g`` first."""
    if not _same(g.target, f.source):
        raise ValueError("maps are not composable")
    return Homomorphism(g.source, f.target, compose_raw(f.matrix, g.matrix))


def add(f: Homomorphism, g: Homomorphism) -> Homomorphism:
    if not (_same(f.source, g.source) and _same(f.target, g.target)):
        raise ValueError("maps have different domains")
    return Homomorphism(
        f.source, f.target, [[a + b for a, b in zip(r, s)] for r, s in zip(f.matrix, g.matrix)]
    )


def negate(f: Homomorphism) -> Homomorphism:
    return Homomorphism(f.source, f.target, [[-a for a in r] for r in f.matrix])


def power(f: Homomorphism, n: int) -> Homomorphism:
    if not _same(f.source, f.target):
        raise ValueError("powers need an endomorphism")
    if n < 0:
        raise ValueError("negative power")
    result = identity_map(f.source)
    base = f
    while n:
        if n & 1:
            result = compose(result, base)
        n >>= 1
        if n:
            base = compose(base, base)
    return result


# --------------------------------------------------------------------------
# Hom lattices
# --------------------------------------------------------------------------

def _vec(F: Sequence[Sequence[int]]) -> list[int]:
    return [x for row in F for x in row]


def _unvec(v: Sequence[int], rows: int, cols: int) -> Matrix:
    return tuple(tuple(v[t * cols:(t + 1) * cols]) for t in range(rows))


class HomLattice:
    """``Hom(source, target)`` as the lattice ``L`` modulo zero maps ``L0``.

    ``basis`` is an HNF basis of ``L`` (flattened matrices); ``generators``
    is a cyclic decomposition of ``L / L0`` as ``[(matrix, order)]`` with
    order 0 for free factors.
    """

    def __init__(self, source: ModulePresentation, target: ModulePresentation, basis: Sequence[Sequence[int]]):
        self.source = source
        self.target = target
        self.basis = [list(b) for b in basis]
        n, k = target.rank, source.rank
        zero_rel = [
            [target.moduli[t] if idx == t * k + i else 0 for idx in range(n * k)]
            for t in range(n) for i in range(k) if target.moduli[t]
        ]
        self.generators = [
            (Homomorphism(source, target, _unvec(g, n, k)).matrix, d)
            for g, d in quotient_structure(self.basis, zero_rel)
        ]

    @property
    def free_rank(self) -> int:
        return sum(1 for _, d in self.generators if d == 0)

    @property
    def torsion_orders(self) -> list[int]:
        return [d for _, d in self.generators if d]

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int:
        """Number of homomorphisms; 0 when infinite."""
        if not self.is_finite:
            return 0
        out = 1
        for d in self.torsion_orders:
            out *= d
        return out

    def _combine(self, coeffs: Sequence[int]) -> Matrix:
        n, k = self.target.rank, self.source.rank
        acc = [[0] * k for _ in range(n)]
        for c, (g, _) in zip(coeffs, self.generators):
            if c:
                for t in range(n):
                    row, grow = acc[t], g[t]
                    for i in range(k):
                        row[i] += c * grow[i]
        return reduce_matrix(acc, self.target.moduli)

    def elements(self, cap: int = DEFAULT_CAP) -> list[Matrix]:
        if not self.is_finite:
            raise TooLarge("Hom group is infinite")
        if self.order > cap:
            raise TooLarge(f"Hom group has {self.order} elements > cap {cap}")
        ranges = [range(d) for d in self.torsion_orders]
        return [self._combine(c) for c in itertools.product(*ranges)]

    def box(self, bound: int) -> Iterator[tuple[int, Matrix]]:
        """Elements with free coefficients in ``[-bound, bound]``, by shells.

        Yields ``(radius, matrix)`` in order of increasing max-norm of the
        free coefficients; torsion coefficients run over their full range.
        """
        free = [i for i, (_, d) in enumerate(self.generators) if d == 0]
        tors = [i for i, (_, d) in enumerate(self.generators) if d]
        for radius in range(bound + 1):
            for free_c in itertools.product(range(-radius, radius + 1), repeat=len(free)):
                if free and max(map(abs, free_c)) != radius:
                    continue
                if not free and radius:
                    return
                for tors_c in itertools.product(*(range(self.generators[i][1]) for i in tors)):
                    coeffs = [0] * len(self.generators)
                    for i, c in zip(free, free_c):
                        coeffs[i] = c
                    for i, c in zip(tors, tors_c):
                        coeffs[i] = c
                    yield radius, self._combine(coeffs)

    def contains(self, F: Sequence[Sequence[int]]) -> bool:
        return not any(hnf_reduce(_vec(F), self.basis))


def hom_basis(M: ModulePresentation, N: ModulePresentation) -> HomLattice:
    """All ``R``-linear maps ``M -> N`` as a :class:`HomLattice`."""
    if M.ring != N.ring:
        raise ValueError("modules over different rings")
    k, n = M.rank, N.rank
    width = n * k
    rows: dict[tuple[tuple[int, ...], int], None] = {}

    def push(coeffs: list[int], mod: int) -> None:
        if mod:
            coeffs = [c % mod for c in coeffs]
        if any(coeffs):
            rows.setdefault((tuple(coeffs), mod), None)

    for i, d in enumerate(M.moduli):
        if not d:
            continue
        for t in range(n):
            v = [0] * width
            v[t * k + i] = d
            push(v, N.moduli[t])
    for A, B in zip(M.action, N.action):
        for t in range(n):
            for i in range(k):
                v = [0] * width
                for s in range(k):
                    if A[s][i]:
                        v[t * k + s] += A[s][i]
                for u in range(n):
                    if B[t][u]:
                        v[u * k + i] -= B[t][u]
                push(v, N.moduli[t])
    if rows:
        system = [list(r) for r, _ in rows]
        moduli = [m for _, m in rows]
        sol = solve_affine(system, [0] * len(system), [0] * width, moduli)
        basis = [list(v.coords) for v in sol.homogeneous_basis]
    else:
        basis = [[int(i == j) for i in range(width)] for j in range(width)]
    return HomLattice(M, N, hermite_normal_form(basis, width))


def hom_elements(M: ModulePresentation, N: ModulePresentation, cap: int = DEFAULT_CAP) -> list[Homomorphism]:
    return [Homomorphism(M, N, F) for F in hom_basis(M, N).elements(cap)]


# --------------------------------------------------------------------------
# kernels, images, chains
# --------------------------------------------------------------------------

def kernel(f: Homomorphism) -> Submodule:
    """``r_M(f)``: the submodule of elements killed by ``f``."""
    M, N = f.source, f.target
    sol = solve_affine([list(r) for r in f.matrix], [0] * N.rank, list(M.moduli), list(N.moduli))
    return Submodule.subgroup(M, [v.coords for v in sol.homogeneous_basis])


def image(f: Homomorphism) -> Submodule:
    N = f.target
    cols = [[f.matrix[t][i] for t in range(N.rank)] for i in range(f.source.rank)]
    return Submodule.subgroup(N, cols)


def kernel_chain(f: Homomorphism, ceiling: int = DEFAULT_POWER_CEILING) -> tuple[list[Submodule], int]:
    """``[Ker f, Ker f^2, ..., Ker f^n*]`` with ``n*`` the stabilization index.

    Finite modules always stabilize; otherwise :class:`CeilingReached` is
    raised once ``n`` passes ``ceiling`` without two equal terms.
    """
    return _chain(f, kernel, ceiling)


def image_chain(f: Homomorphism, ceiling: int = DEFAULT_POWER_CEILING) -> tuple[list[Submodule], int]:
    """``[Im f, Im f^2, ...]`` up to the first index where it stabilizes."""
    return _chain(f, image, ceiling)


def _chain(f: Homomorphism, op, ceiling: int) -> tuple[list[Submodule], int]:
    finite = f.source.is_finite
    chain = [op(f)]
    g = f
    while True:
        g = compose(f, g)
        nxt = op(g)
        if nxt == chain[-1]:
            return chain, len(chain)
        chain.append(nxt)
        if not finite and len(chain) > ceiling:
            raise CeilingReached(f"chain did not stabilize within {ceiling} powers", chain)


def is_nilpotent(f: Homomorphism, ceiling: int = DEFAULT_POWER_CEILING) -> bool:
    """Power-cycle detection; falls back to the kernel chain for infinite modules."""
    seen = set()
    g = f
    for _ in range(max(ceiling, 1) + 1):
        if g.is_zero():
            return True
        if g.matrix in seen:
            return False
        seen.add(g.matrix)
        g = compose(f, g)
    chain, n = kernel_chain(f, ceiling)
    return chain[-1] == Submodule.whole(f.source)


# --------------------------------------------------------------------------
# endomorphism rings
# --------------------------------------------------------------------------

class EndoRing:
    """``S = End_R(M)``; element lists are computed once and then read-only."""

    def __init__(self, M: ModulePresentation, cap: int = DEFAULT_CAP):
        self.module = M
        self.cap = cap
        self.lattice = hom_basis(M, M)
        k = M.rank
        self.one: Matrix = as_matrix([[int(i == j) for j in range(k)] for i in range(k)])
        self.zero: Matrix = reduce_matrix([[0] * k for _ in range(k)], M.moduli)
        self.one = reduce_matrix(self.one, M.moduli)

    @property
    def is_finite(self) -> bool:
        return self.lattice.is_finite

    @property
    def order(self) -> int:
        return self.lattice.order

    def hom(self, F) -> Homomorphism:
        return Homomorphism(self.module, self.module, F)

    def mul(self, F: Matrix, G: Matrix) -> Matrix:
        """``F o G``."""
        return reduce_matrix(compose_raw(F, G), self.module.moduli)

    def add(self, F: Matrix, G: Matrix) -> Matrix:
        return reduce_matrix([[a + b for a, b in zip(r, s)] for r, s in zip(F, G)], self.module.moduli)

    def sub(self, F: Matrix, G: Matrix) -> Matrix:
        return reduce_matrix([[a - b for a, b in zip(r, s)] for r, s in zip(F, G)], self.module.moduli)

    def is_zero(self, F: Matrix) -> bool:
        return F == self.zero

    @cached_property
    def elements(self) -> list[Matrix]:
        return sorted(self.lattice.elements(self.cap))

    @cached_property
    def idempotents(self) -> list[Matrix]:
        return [F for F in self.elements if self.mul(F, F) == F]

    @cached_property
    def nilpotents(self) -> list[Matrix]:
        return [F for F in self.elements if self.nilpotent(F)]

    @cached_property
    def units(self) -> list[Matrix]:
        elems = set(self.elements)
        out = []
        for F in self.elements:
            if any(self.mul(F, G) == self.one and self.mul(G, F) == self.one for G in elems):
                out.append(F)
        return out

    def nilpotent(self, F: Matrix) -> bool:
        seen = set()
        G = F
        while G not in seen:
            if G == self.zero:
                return True
            seen.add(G)
            G = self.mul(F, G)
        return False

    def power_orbit(self, F: Matrix) -> list[Matrix]:
        """``[F, F^2, ...]`` up to the first repetition."""
        seen, out = set(), []
        G = F
        while G not in seen:
            seen.add(G)
            out.append(G)
            G = self.mul(F, G)
        return out


def enumerate_endos(S: EndoRing, cap: int | None = None) -> list[Homomorphism]:
    if cap is not None and S.is_finite and S.order > cap:
        raise TooLarge(f"End has {S.order} elements > cap {cap}")
    return [S.hom(F) for F in S.elements]


def idempotents(S: EndoRing) -> list[Homomorphism]:
    return [S.hom(F) for F in S.idempotents]


def nilpotents(S: EndoRing) -> list[Homomorphism]:
    return [S.hom(F) for F in S.nilpotents]


# --------------------------------------------------------------------------
# annihilators
# --------------------------------------------------------------------------

def left_annihilator(S: EndoRing, N: Submodule) -> HomLattice:
    """``l_S(N) = {f in S : f(N) = 0}`` as a sub-lattice of ``S``."""
    if N.is_zero:
        return S.lattice
    return _cut(S.lattice, list(N.basis))


def _cut(lattice: HomLattice, gens: Sequence[Sequence[int]]) -> HomLattice:
    """Maps in ``lattice`` that vanish on every element of ``gens``."""
    n, k = lattice.target.rank, lattice.source.rank
    A, moduli = [], []
    nb = len(lattice.basis)
    images = [[apply(_unvec(b, n, k), g) for g in gens] for b in lattice.basis]
    for gi in range(len(gens)):
        for t in range(n):
            A.append([images[b][gi][t] for b in range(nb)])
            moduli.append(lattice.target.moduli[t])
    sol = solve_affine(A, [0] * len(A), [0] * nb, moduli)
    gens_out = [
        [sum(v.coords[b] * lattice.basis[b][x] for b in range(nb)) for x in range(n * k)]
        for v in sol.homogeneous_basis
    ]
    return HomLattice(lattice.source, lattice.target, hermite_normal_form(gens_out, n * k))


def right_annihilator(S: EndoRing, f: Homomorphism) -> HomLattice:
    """``r_S(f) = {g in S : f o g = 0}``."""
    M = S.module
    n = k = M.rank
    nb = len(S.lattice.basis)
    prods = [compose_raw(f.matrix, _unvec(b, n, k)) for b in S.lattice.basis]
    A, moduli = [], []
    for t in range(n):
        for i in range(k):
            A.append([prods[b][t][i] for b in range(nb)])
            moduli.append(M.moduli[t])
    sol = solve_affine(A, [0] * len(A), [0] * nb, moduli)
    gens = [
        [sum(v.coords[b] * S.lattice.basis[b][x] for b in range(nb)) for x in range(n * k)]
        for v in sol.homogeneous_basis
    ]
    return HomLattice(M, M, hermite_normal_form(gens, n * k))


def r_M_of_set(maps: Iterable[Homomorphism], M: ModulePresentation) -> Submodule:
    """``r_M(F)``: the common kernel of a set of endomorphisms."""
    rows, moduli = [], []
    for f in maps:
        rows.extend(list(r) for r in f.matrix)
        moduli.extend(f.target.moduli)
    if not rows:
        return Submodule.whole(M)
    sol = solve_affine(rows, [0] * len(rows), list(M.moduli), moduli)
    return Submodule.subgroup(M, [v.coords for v in sol.homogeneous_basis])
