"""Rings by structure constants and right modules by action matrices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from ..exactlin import (
    Vector,
    canonical_lattice,
    group_order,
    hnf_reduce,
    lift_lattice,
    quotient_structure,
    reduce_coords,
    relation_rows,
)

Matrix = tuple[tuple[int, ...], ...]


class ValidationError(ValueError):
    """A presentation violates a ring or module axiom.

    ``identity`` names the failed law and ``witness`` holds the basis
    indices (or generator/ring-basis pair) where it fails.
    """

    def __init__(self, message: str, identity: str = "", witness: tuple = ()):
        super().__init__(message)
        self.identity = identity
        self.witness = witness


def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def reduce_matrix(F: Sequence[Sequence[int]], row_moduli: Sequence[int]) -> Matrix:
    """Reduce row ``t`` of ``F`` modulo ``row_moduli[t]``."""
    return tuple(
        tuple(x % m for x in row) if m else tuple(row) for row, m in zip(F, row_moduli)
    )


def apply(F: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(a * x for a, x in zip(row, v)) for row in F]


def compose_raw(F: Sequence[Sequence[int]], G: Sequence[Sequence[int]]) -> list[list[int]]:
    """Matrix of ``F o G`` (apply ``G`` first)."""
    Gt = list(zip(*G)) if G else []
    if not Gt:
        return [[] for _ in F]
    return [[sum(a * b for a, b in zip(row, col)) for col in Gt] for row in F]


def _enumerate_group(moduli: Sequence[int]) -> Iterator[Vector]:
    if any(m == 0 for m in moduli):
        raise ValueError("group is infinite")
    return itertools.product(*(range(m) for m in moduli))


@dataclass(frozen=True, eq=True)
class RingPresentation:
    """Associative unital ring on a finitely generated additive group.

    ``table[i][j]`` holds the coordinates of ``b_i * b_j`` in the additive
    basis, ``one`` the coordinates of the identity.
    """

    moduli: Vector
    table: tuple[tuple[Vector, ...], ...]
    one: Vector
    name: str = ""

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        return group_order(self.moduli)

    @property
    def is_finite(self) -> bool:
        return self.order > 0

    def reduce(self, x: Iterable[int]) -> Vector:
        return reduce_coords(x, self.moduli)

    def zero(self) -> Vector:
        return (0,) * self.rank

    def add(self, x: Sequence[int], y: Sequence[int]) -> Vector:
        return self.reduce(a + b for a, b in zip(x, y))

    def neg(self, x: Sequence[int]) -> Vector:
        return self.reduce(-a for a in x)

    def mul(self, x: Sequence[int], y: Sequence[int]) -> Vector:
        out = [0] * self.rank
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.table[i]
            for j, yj in enumerate(y):
                if yj:
                    c = xi * yj
                    for t, v in enumerate(row[j]):
                        if v:
                            out[t] += c * v
        return self.reduce(out)

    def basis_element(self, i: int) -> Vector:
        return tuple(int(i == j) for j in range(self.rank))

    def elements(self) -> Iterator[Vector]:
        return _enumerate_group(self.moduli)


@dataclass(frozen=True, eq=True)
class ModulePresentation:
    """Unitary right module given by one action matrix per ring basis element.

    Elements are coordinate vectors over the additive profile ``moduli``;
    ``action[j]`` is the matrix of ``m -> m * b_j`` (columns are images of
    the generators).  ``blocks`` records summand sizes for direct sums.
    """

    ring: RingPresentation
    moduli: Vector
    action: tuple[Matrix, ...]
    name: str = ""
    blocks: tuple[int, ...] = field(default=(), compare=False)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        return group_order(self.moduli)

    @property
    def is_finite(self) -> bool:
        return self.order > 0

    @property
    def is_zero(self) -> bool:
        return all(m == 1 for m in self.moduli)

    def reduce(self, v: Iterable[int]) -> Vector:
        return reduce_coords(v, self.moduli)

    def zero(self) -> Vector:
        return (0,) * self.rank

    def add(self, v: Sequence[int], w: Sequence[int]) -> Vector:
        return self.reduce(a + b for a, b in zip(v, w))

    def act(self, v: Sequence[int], r: Sequence[int]) -> Vector:
        """``v * r`` for a ring element ``r`` in basis coordinates."""
        out = [0] * self.rank
        for j, rj in enumerate(r):
            if rj:
                for t, x in enumerate(apply(self.action[j], v)):
                    out[t] += rj * x
        return self.reduce(out)

    def elements(self) -> Iterator[Vector]:
        return _enumerate_group(self.moduli)

    @cached_property
    def relation_lattice(self) -> list[list[int]]:
        return relation_rows(self.moduli)

    def __hash__(self) -> int:
        return hash((self.moduli, self.action, self.ring.moduli))


@dataclass(frozen=True, eq=False)
class Submodule:
    """An R-submodule stored by its canonical generator matrix."""

    ambient: ModulePresentation
    basis: tuple[Vector, ...]

    @classmethod
    def generated_by(cls, ambient: ModulePresentation, generators: Iterable[Sequence[int]]) -> "Submodule":
        gens = [list(g) for g in generators]
        closed = [apply(A, g) for g in gens for A in ambient.action] + gens
        return cls(ambient, canonical_lattice(closed, ambient.moduli))

    @classmethod
    def subgroup(cls, ambient: ModulePresentation, generators: Iterable[Sequence[int]]) -> "Submodule":
        """Canonicalize without R-closure; caller guarantees closure."""
        return cls(ambient, canonical_lattice(generators, ambient.moduli))

    @classmethod
    def zero(cls, ambient: ModulePresentation) -> "Submodule":
        return cls(ambient, ())

    @classmethod
    def whole(cls, ambient: ModulePresentation) -> "Submodule":
        k = ambient.rank
        return cls.subgroup(ambient, [[int(i == j) for i in range(k)] for j in range(k)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Submodule):
            return NotImplemented
        return self.basis == other.basis and (
            self.ambient is other.ambient or self.ambient == other.ambient
        )

    def __hash__(self) -> int:
        return hash(self.basis)

    @cached_property
    def lift(self) -> list[list[int]]:
        return lift_lattice(self.basis, self.ambient.moduli)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(hnf_reduce(v, self.lift))

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @cached_property
    def structure(self) -> list[tuple[list[int], int]]:
        """Cyclic decomposition ``[(generator, order)]``; order 0 is infinite."""
        return quotient_structure(self.lift, self.ambient.relation_lattice)

    @property
    def order(self) -> int:
        out = 1
        for _, d in self.structure:
            if d == 0:
                return 0
            out *= d
        return out

    def elements(self) -> Iterator[Vector]:
        gens = self.structure
        if any(d == 0 for _, d in gens):
            raise ValueError("submodule is infinite")
        M = self.ambient
        for coeffs in itertools.product(*(range(d) for _, d in gens)):
            v = [0] * M.rank
            for c, (g, _) in zip(coeffs, gens):
                if c:
                    v = [a + c * b for a, b in zip(v, g)]
            yield M.reduce(v)

    def is_action_closed(self) -> bool:
        return all(self.contains(apply(A, g)) for g in self.basis for A in self.ambient.action)

    def __repr__(self) -> str:
        name = self.ambient.name or "M"
        return f"Submodule({name}, basis={list(map(list, self.basis))})"


# --------------------------------------------------------------------------
# validation
# --------------------------------------------------------------------------

def _map_equal(F, G, moduli) -> bool:
    return reduce_matrix(F, moduli) == reduce_matrix(G, moduli)


def validate_ring(p: RingPresentation) -> RingPresentation:
    """Check bilinearity over the relations, associativity and the unit laws.

    Returns ``p`` unchanged or raises :class:`ValidationError` naming the
    first violated identity with its basis witnesses.
    """
    k = p.rank
    if k == 0 or not any(p.reduce(p.one)):
        raise ValidationError("the zero ring has no admissible presentation", "nontrivial")
    if len(p.one) != k or len(p.table) != k or any(len(row) != k for row in p.table):
        raise ValidationError("table/one dimensions do not match the moduli", "shape")
    for i in range(k):
        for j in range(k):
            if len(p.table[i][j]) != k:
                raise ValidationError(f"table entry ({i},{j}) has wrong length", "shape", (i, j))
    for i, s in enumerate(p.moduli):
        if not s:
            continue
        for j in range(k):
            if any(p.reduce(s * c for c in p.table[i][j])) or any(p.reduce(s * c for c in p.table[j][i])):
                raise ValidationError(
                    f"product with b{i} does not respect its order {s}", "bilinearity", (i, j)
                )
    basis = [p.basis_element(i) for i in range(k)]
    for i, j, l in itertools.product(range(k), repeat=3):
        left = p.mul(p.table[i][j], basis[l])
        right = p.mul(basis[i], p.table[j][l])
        if left != right:
            raise ValidationError(
                f"(b{i} b{j}) b{l} != b{i} (b{j} b{l})", "associativity", (i, j, l)
            )
    for i in range(k):
        if p.mul(p.one, basis[i]) != basis[i] or p.mul(basis[i], p.one) != basis[i]:
            raise ValidationError(f"one does not act as identity on b{i}", "unit", (i,))
    return p


def validate_module(p: ModulePresentation) -> ModulePresentation:
    """Check torsion compatibility, the right-action law and unitarity."""
    R = p.ring
    k = p.rank
    if len(p.action) != R.rank:
        raise ValidationError("one action matrix per ring basis element is required", "shape")
    for j, A in enumerate(p.action):
        if len(A) != k or any(len(row) != k for row in A):
            raise ValidationError(f"action matrix {j} is not {k}x{k}", "shape", (j,))
        for i, s in enumerate(p.moduli):
            if s and any(p.reduce(s * A[t][i] for t in range(k))):
                raise ValidationError(
                    f"action of b{j} sends s*g{i} to a nonzero element", "torsion", (i, j)
                )
        s = R.moduli[j]
        if s:
            for i in range(k):
                if any(p.reduce(s * A[t][i] for t in range(k))):
                    raise ValidationError(
                        f"g{i} * (s b{j}) != 0 although s b{j} = 0 in the ring", "torsion", (i, j)
                    )

    def action_of(r: Sequence[int]) -> list[list[int]]:
        out = [[0] * k for _ in range(k)]
        for j, rj in enumerate(r):
            if rj:
                A = p.action[j]
                for a in range(k):
                    for b in range(k):
                        out[a][b] += rj * A[a][b]
        return out

    for i in range(R.rank):
        for j in range(R.rank):
            lhs = action_of(R.table[i][j])
            rhs = compose_raw(p.action[j], p.action[i])
            if not _map_equal(lhs, rhs, p.moduli):
                bad = next(
                    g for g in range(k)
                    if p.reduce(row[g] for row in lhs) != p.reduce(row[g] for row in rhs)
                )
                raise ValidationError(
                    f"g{bad} * (b{i} b{j}) != (g{bad} * b{i}) * b{j}", "action", (bad, i, j)
                )
    ident = [[int(a == b) for b in range(k)] for a in range(k)]
    if not _map_equal(action_of(R.one), ident, p.moduli):
        raise ValidationError("the identity of the ring does not act trivially", "unitarity")
    return p
