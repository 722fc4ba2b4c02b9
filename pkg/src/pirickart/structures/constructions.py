"""Ring and module constructions used by the catalog and the classifier."""

from __future__ import annotations

from typing import Sequence

from ..exactlin import _smith, diagonal, identity, solve_affine
from .presentations import (
    Matrix,
    ModulePresentation,
    RingPresentation,
    Submodule,
    ValidationError,
    apply,
    as_matrix,
    reduce_matrix,
    validate_module,
    validate_ring,
)


# --------------------------------------------------------------------------
# rings
# --------------------------------------------------------------------------

def cyclic_ring(n: int) -> RingPresentation:
    """``Z/nZ``, or ``Z`` for ``n == 0``."""
    if n == 1:
        raise ValidationError("the zero ring has no admissible presentation", "nontrivial")
    return RingPresentation((n,), (((1,),),), (1,), name=f"Z{n}" if n else "Z")


def integers() -> RingPresentation:
    return cyclic_ring(0)


def ring_product(R1: RingPresentation, R2: RingPresentation) -> RingPresentation:
    k1, k2 = R1.rank, R2.rank
    k = k1 + k2
    table = []
    for i in range(k):
        row = []
        for j in range(k):
            if i < k1 and j < k1:
                row.append(tuple(R1.table[i][j]) + (0,) * k2)
            elif i >= k1 and j >= k1:
                row.append((0,) * k1 + tuple(R2.table[i - k1][j - k1]))
            else:
                row.append((0,) * k)
        table.append(tuple(row))
    return RingPresentation(
        R1.moduli + R2.moduli, tuple(table), R1.one + R2.one, name=f"{R1.name}x{R2.name}"
    )


def _matrix_unit_ring(n: int, base: int, units: list[tuple[int, int]], name: str) -> RingPresentation:
    index = {u: t for t, u in enumerate(units)}
    k = len(units)
    table = []
    for (a, b) in units:
        row = []
        for (c, d) in units:
            v = [0] * k
            if b == c:
                v[index[(a, d)]] = 1
            row.append(tuple(v))
        table.append(tuple(row))
    one = tuple(int(a == b) for (a, b) in units)
    return RingPresentation((base,) * k, tuple(table), one, name=name)


def matrix_ring(n: int, base: int) -> RingPresentation:
    """Full ``n x n`` matrices over ``Z/base`` (``Z`` when ``base == 0``), basis ``E_ab``."""
    units = [(a, b) for a in range(n) for b in range(n)]
    return _matrix_unit_ring(n, base, units, f"M{n}({'Z' if base == 0 else f'Z{base}'})")


def triangular_ring(base: int) -> RingPresentation:
    """Upper triangular ``2 x 2`` matrices, basis ``E11, E12, E22``."""
    units = [(0, 0), (0, 1), (1, 1)]
    return _matrix_unit_ring(2, base, units, f"T2({'Z' if base == 0 else f'Z{base}'})")


def corner_elements(R: RingPresentation, e: Sequence[int]):
    """Elements of ``eRe`` for a finite ring (identity ``e``)."""
    return sorted({R.mul(R.mul(e, r), e) for r in R.elements()})


# --------------------------------------------------------------------------
# modules
# --------------------------------------------------------------------------

def ring_as_module(R: RingPresentation) -> ModulePresentation:
    """``R`` as a right module over itself (right multiplication)."""
    validate_ring(R)
    k = R.rank
    action = tuple(
        as_matrix([[R.table[i][j][t] for i in range(k)] for t in range(k)]) for j in range(k)
    )
    return ModulePresentation(R, R.moduli, action, name=f"{R.name}_{R.name}")


def scalar_module(R: RingPresentation, moduli: Sequence[int], name: str = "") -> ModulePresentation:
    """``Z/m_1 + ... + Z/m_k`` over a cyclic ring ``Z/n`` acting by scalars."""
    if R.rank != 1 or R.one != (1,):
        raise ValueError("scalar modules are only defined over cyclic rings")
    k = len(moduli)
    label = name or "+".join(f"Z{m}" if m else "Z" for m in moduli) + f"/{R.name}"
    return ModulePresentation(R, tuple(moduli), (as_matrix(identity(k)),), name=label)


def zero_module(R: RingPresentation) -> ModulePresentation:
    return ModulePresentation(
        R, (1,), tuple(((0,),) for _ in range(R.rank)), name=f"0/{R.name}"
    )


def direct_sum(M1: ModulePresentation, M2: ModulePresentation, name: str = "") -> ModulePresentation:
    """Block-diagonal sum; ``blocks`` records the summand sizes."""
    if M1.ring != M2.ring:
        raise ValueError("direct sum of modules over different rings")
    k1, k2 = M1.rank, M2.rank
    action = []
    for A1, A2 in zip(M1.action, M2.action):
        rows = [list(r) + [0] * k2 for r in A1] + [[0] * k1 + list(r) for r in A2]
        action.append(as_matrix(rows))
    blocks = (M1.blocks or (k1,)) + (M2.blocks or (k2,))
    return ModulePresentation(
        M1.ring, M1.moduli + M2.moduli, tuple(action),
        name=name or f"({M1.name})+({M2.name})", blocks=blocks,
    )


def block_embedding(M: ModulePresentation, index: int) -> Matrix:
    """Inclusion matrix of summand ``index`` of a direct sum."""
    blocks = M.blocks or (M.rank,)
    start = sum(blocks[:index])
    size = blocks[index]
    return as_matrix([[int(r == start + c) for c in range(size)] for r in range(M.rank)])


def submodule_as_module(N: Submodule, name: str = "") -> tuple[ModulePresentation, Matrix]:
    """Present ``N`` as a module in its own right.

    Returns the presentation and the inclusion matrix (columns are the new
    generators written in the ambient coordinates).
    """
    M = N.ambient
    gens = [(g, d) for g, d in N.structure]
    if not gens:
        P = zero_module(M.ring)
        return P, as_matrix([[0] for _ in range(M.rank)])
    moduli = tuple(d for _, d in gens)
    G = [M.reduce(g) for g, _ in gens]
    action = []
    for A in M.action:
        cols = [_coordinates(apply(A, g), G, M) for g in G]
        rows = [[cols[c][r] for c in range(len(G))] for r in range(len(G))]
        action.append(reduce_matrix(rows, moduli))
    P = ModulePresentation(M.ring, moduli, tuple(action), name=name or f"sub({M.name})")
    inclusion = as_matrix([[G[c][r] for c in range(len(G))] for r in range(M.rank)])
    return P, inclusion


def _coordinates(v: Sequence[int], G: Sequence[Sequence[int]], M: ModulePresentation) -> list[int]:
    """Integers ``c`` with ``sum c_i G_i == v`` in ``M`` (``v`` must lie in the span)."""
    A = [[g[t] for g in G] for t in range(M.rank)]
    sol = solve_affine(A, list(v), [0] * len(G), list(M.moduli))
    if sol.is_empty():
        raise ValueError("element is not in the span of the given generators")
    return list(sol.particular.coords)


def _quotient_basis(M: ModulePresentation, N: Submodule):
    """Smith data of ``M / N``: quotient coordinate ``i`` is ``(x V)_i`` mod ``diag[i]``."""
    if not (N.ambient is M or N.ambient == M):
        raise ValueError("submodule does not belong to this module")
    B = N.lift
    k = M.rank
    if B:
        _, D, V, Vi = _smith(B)
        diag = diagonal(D)
    else:
        V = Vi = identity(k)
        diag = []
    diag = diag + [0] * (k - len(diag))
    keep = [i for i in range(k) if diag[i] != 1]
    return diag, V, Vi, keep


def quotient_lifts(M: ModulePresentation, N: Submodule) -> list[tuple[list[int], int]]:
    """Preimages in ``M`` of the cyclic generators of ``M / N`` with their orders."""
    diag, _, Vi, keep = _quotient_basis(M, N)
    return [(list(Vi[i]), diag[i]) for i in keep]


def quotient(M: ModulePresentation, N: Submodule, name: str = "") -> tuple[ModulePresentation, Matrix]:
    """Present ``M / N`` by Smith reduction; returns ``(Q, projection matrix)``."""
    diag, V, Vi, keep = _quotient_basis(M, N)
    k = M.rank
    if not keep:
        return zero_module(M.ring), as_matrix([[0] * k])
    moduli = tuple(diag[i] for i in keep)
    proj = reduce_matrix([[V[r][i] for r in range(k)] for i in keep], moduli)
    action = []
    for A in M.action:
        # Vi[i] is a preimage of the i-th quotient generator
        cols = [apply(proj, apply(A, Vi[i])) for i in keep]
        action.append(
            reduce_matrix([[cols[c][r] for c in range(len(keep))] for r in range(len(keep))], moduli)
        )
    Q = ModulePresentation(M.ring, moduli, tuple(action), name=name or f"{M.name}/N")
    return Q, as_matrix(proj)


def check_module(M: ModulePresentation) -> ModulePresentation:
    validate_ring(M.ring)
    return validate_module(M)
