"""Exact integer linear algebra for finitely generated abelian groups.

Groups are written as ``Z/s_1 + ... + Z/s_k`` and described by a *moduli
profile* ``(s_1, ..., s_k)``: ``0`` stands for an infinite cyclic factor,
``1`` for the zero group and ``m >= 2`` for ``Z/mZ``.

Everything here works on plain Python integers (arbitrary precision), with
matrices as lists of rows.  Subgroups of a group with profile ``s`` are
handled through their *lift*: the sublattice of ``Z^k`` spanned by their
generators together with the relation vectors ``s_j e_j``.  Two generator
sets define the same subgroup exactly when their lifts agree, and the
Hermite normal form of the lift is unique, which is what makes
:func:`canonical_lattice` canonical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

Vector = tuple[int, ...]
IntMatrix = list[list[int]]


# --------------------------------------------------------------------------
# small helpers
# --------------------------------------------------------------------------

def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    if any(len(row) != inner for row in A):
        raise ValueError("matrix dimensions do not match")
    Bt = list(zip(*B)) if B else [()] * cols
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def transpose(A: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
    if not A:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*A)]


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def reduce_coords(coords: Iterable[int], moduli: Sequence[int]) -> Vector:
    """Reduce each coordinate into the canonical range of its modulus."""
    return tuple(c % m if m else c for c, m in zip(coords, moduli))


def relation_rows(moduli: Sequence[int]) -> list[list[int]]:
    """The vectors ``s_j e_j`` (for ``s_j > 0``) that are zero in the group."""
    k = len(moduli)
    return [[m if i == j else 0 for i in range(k)] for j, m in enumerate(moduli) if m]


def is_relation(v: Sequence[int], moduli: Sequence[int]) -> bool:
    return all((c % m == 0) if m else c == 0 for c, m in zip(v, moduli))


def group_order(moduli: Sequence[int]) -> int:
    """Order of ``Z/s_1 + ... + Z/s_k``; 0 when infinite."""
    order = 1
    for m in moduli:
        if m == 0:
            return 0
        order *= m
    return order


@dataclass(frozen=True)
class ModVector:
    """An element of a group with the given moduli profile, coordinates reduced."""

    coords: Vector
    moduli: Vector

    def __post_init__(self) -> None:
        if len(self.coords) != len(self.moduli):
            raise ValueError("coordinate and moduli lengths differ")
        if any(m < 0 for m in self.moduli):
            raise ValueError("moduli must be non-negative")
        object.__setattr__(self, "coords", reduce_coords(self.coords, self.moduli))
        object.__setattr__(self, "moduli", tuple(self.moduli))

    def is_zero(self) -> bool:
        return not any(self.coords)


@dataclass(frozen=True)
class SolutionSet:
    """Solutions of a congruence system: ``particular + span(homogeneous_basis)``."""

    particular: ModVector | None
    homogeneous_basis: tuple[ModVector, ...] = field(default_factory=tuple)

    @property
    def status(self) -> str:
        return "Empty" if self.particular is None else "Affine"

    def is_empty(self) -> bool:
        return self.particular is None


# --------------------------------------------------------------------------
# Smith normal form
# --------------------------------------------------------------------------

def _min_pivot(D: IntMatrix, t: int) -> tuple[int, int] | None:
    best = None
    best_abs = 0
    for i in range(t, len(D)):
        row = D[i]
        for j in range(t, len(row)):
            a = abs(row[j])
            if a and (best is None or a < best_abs):
                best, best_abs = (i, j), a
                if a == 1:
                    return best
    return best


def _smith(A: Sequence[Sequence[int]], ncols: int | None = None):
    """Return ``(U, D, V, V_inv)`` with ``U A V = D``."""
    m = len(A)
    n = len(A[0]) if A else (ncols or 0)
    D = [list(row) for row in A]
    U = identity(m)
    V = identity(n)
    Vi = identity(n)

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for row in D:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        rs, rd = D[src], D[dst]
        for c in range(n):
            if rs[c]:
                rd[c] += q * rs[c]
        us, ud = U[src], U[dst]
        for c in range(m):
            if us[c]:
                ud[c] += q * us[c]

    def add_col(dst: int, src: int, q: int) -> None:
        # col_dst += q * col_src; inverse gets row_src -= q * row_dst
        for row in D:
            if row[src]:
                row[dst] += q * row[src]
        for row in V:
            if row[src]:
                row[dst] += q * row[src]
        vd, vs = Vi[dst], Vi[src]
        for c in range(n):
            if vd[c]:
                vs[c] -= q * vd[c]

    t = 0
    while t < min(m, n):
        piv = _min_pivot(D, t)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            if D[t][t] < 0:
                D[t] = [-x for x in D[t]]
                U[t] = [-x for x in U[t]]
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // p
                    if q:
                        add_row(i, t, -q)
                    if D[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // p
                    if q:
                        add_col(j, t, -q)
                    if D[t][j]:
                        clean = False
            if not clean:
                piv = _min_pivot(D, t)
                swap_rows(t, piv[0])
                swap_cols(t, piv[1])
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        t += 1
    return U, D, V, Vi


def smith_normal_form(A: Sequence[Sequence[int]], ncols: int | None = None):
    """Smith normal form ``U A V = D`` of an integer matrix.

    ``U`` and ``V`` are unimodular and ``D`` is diagonal with non-negative
    entries ``d_1 | d_2 | ...``.  Pivots are chosen as the entry of smallest
    absolute value (ties: lowest row, then lowest column), so the output is
    reproducible.  ``ncols`` is only needed for matrices with no rows.
    """
    U, D, V, _ = _smith(A, ncols)
    return U, D, V


def diagonal(D: Sequence[Sequence[int]]) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def integer_kernel(A: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """A basis of ``{x in Z^n : A x = 0}``."""
    n = len(A[0]) if A else (ncols or 0)
    if not A:
        return identity(n)
    _, D, V, _ = _smith(A)
    rank = sum(1 for d in diagonal(D) if d)
    return [[V[i][j] for i in range(n)] for j in range(rank, n)]


# --------------------------------------------------------------------------
# Hermite normal form and lattices
# --------------------------------------------------------------------------

def hermite_normal_form(rows: Iterable[Sequence[int]], width: int | None = None) -> list[list[int]]:
    """Row Hermite normal form of the lattice spanned by ``rows``.

    The result is echelon with positive pivots, every entry above a pivot
    reduced into ``[0, pivot)`` and zero rows dropped; it is unique for the
    lattice.
    """
    H = [list(r) for r in rows if any(r)]
    if not H:
        return []
    n = width if width is not None else len(H[0])
    r = 0
    for c in range(n):
        if r >= len(H):
            break
        while True:
            best = None
            for i in range(r, len(H)):
                if H[i][c] and (best is None or abs(H[i][c]) < abs(H[best][c])):
                    best = i
            if best is None:
                break
            H[r], H[best] = H[best], H[r]
            if H[r][c] < 0:
                H[r] = [-x for x in H[r]]
            p = H[r][c]
            done = True
            for i in range(r + 1, len(H)):
                if H[i][c]:
                    q = H[i][c] // p
                    if q:
                        H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    if H[i][c]:
                        done = False
            if done:
                break
        if r < len(H) and H[r][c]:
            p = H[r][c]
            for i in range(r):
                q = H[i][c] // p
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
            r += 1
            H = H[:r] + [row for row in H[r:] if any(row)]
    return [row for row in H if any(row)]


def _pivot(row: Sequence[int]) -> int:
    for c, x in enumerate(row):
        if x:
            return c
    return -1


def hnf_reduce(v: Sequence[int], hnf: Sequence[Sequence[int]]) -> list[int]:
    """Canonical representative of ``v`` modulo the lattice with basis ``hnf``."""
    v = list(v)
    for row in hnf:
        c = _pivot(row)
        q = v[c] // row[c]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return v


def hnf_coordinates(v: Sequence[int], hnf: Sequence[Sequence[int]]) -> list[int] | None:
    """Integer coefficients of ``v`` in the basis ``hnf``; ``None`` if ``v`` is outside."""
    v = list(v)
    coeffs = []
    for row in hnf:
        c = _pivot(row)
        q, rem = divmod(v[c], row[c])
        if rem:
            return None
        coeffs.append(q)
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    if any(v):
        return None
    return coeffs


def lift_lattice(generators: Iterable[Sequence[int]], moduli: Sequence[int]) -> list[list[int]]:
    """HNF of ``span(generators) + span(s_j e_j)`` inside ``Z^k``."""
    gens = [list(g) for g in generators]
    for g in gens:
        if len(g) != len(moduli):
            raise ValueError("generator length does not match moduli profile")
    return hermite_normal_form(gens + relation_rows(moduli), len(moduli))


def canonical_lattice(generators: Iterable[Sequence[int]], moduli: Sequence[int]) -> tuple[Vector, ...]:
    """Canonical generator matrix of the subgroup spanned by ``generators``.

    Rows of the lifted HNF that are themselves relations are dropped, so the
    zero subgroup has the empty basis.  Equal subgroups give identical output.
    """
    return tuple(
        tuple(row) for row in lift_lattice(generators, moduli) if not is_relation(row, moduli)
    )


def lattice_intersection(B1: Sequence[Sequence[int]], B2: Sequence[Sequence[int]], width: int) -> list[list[int]]:
    """HNF basis of the intersection of two integer lattices given by bases."""
    if not B1 or not B2:
        return []
    stacked = [list(r) for r in B1] + [[-x for x in r] for r in B2]
    ker = integer_kernel(transpose(stacked), ncols=len(stacked))
    p1 = len(B1)
    gens = []
    for x in ker:
        a = x[:p1]
        gens.append([sum(a[i] * B1[i][c] for i in range(p1)) for c in range(width)])
    return hermite_normal_form(gens, width)


def quotient_structure(basis: Sequence[Sequence[int]], sub_generators: Iterable[Sequence[int]]):
    """Decompose ``L / L0`` into cyclic factors.

    ``basis`` is an HNF basis of ``L`` and ``sub_generators`` span ``L0``
    (which must lie in ``L``).  Returns ``[(generator, order), ...]`` with
    ``order == 0`` for infinite factors; trivial factors are dropped.
    """
    basis = [list(b) for b in basis]
    p = len(basis)
    if p == 0:
        return []
    coords = []
    for g in sub_generators:
        c = hnf_coordinates(g, basis)
        if c is None:
            raise ValueError("sub-lattice generator is not in the lattice")
        if any(c):
            coords.append(c)
    if coords:
        _, D, _, Vi = _smith(coords)
        diag = diagonal(D) + [0] * p
    else:
        Vi = identity(p)
        diag = [0] * p
    width = len(basis[0])
    out = []
    for i in range(p):
        d = diag[i]
        if d == 1:
            continue
        gen = [sum(Vi[i][j] * basis[j][c] for j in range(p)) for c in range(width)]
        out.append((gen, d))
    return out


# --------------------------------------------------------------------------
# congruence systems
# --------------------------------------------------------------------------

def solve_affine(
    A: Sequence[Sequence[int]],
    b: Sequence[int],
    source_moduli: Sequence[int],
    target_moduli: Sequence[int],
) -> SolutionSet:
    """Solve ``A x = b`` row-wise modulo ``target_moduli``.

    ``x`` lives in the group with profile ``source_moduli``; the system must
    be well defined there (``s_j A[:, j]`` vanishes modulo the targets).  The
    congruences are lifted to one integer system by adjoining a column
    ``t_i e_i`` per finite target modulus and solved by a single Smith
    reduction.
    """
    m = len(target_moduli)
    n = len(source_moduli)
    if len(A) != m or len(b) != m or any(len(row) != n for row in A):
        raise ValueError(
            f"dimension mismatch: A is {len(A)}x{len(A[0]) if A else 0}, "
            f"b has {len(b)}, moduli {n}->{m}"
        )
    for j, s in enumerate(source_moduli):
        if s and any((s * A[i][j]) % t if t else s * A[i][j] for i, t in enumerate(target_moduli)):
            raise ValueError(f"system is not well defined on residues of coordinate {j}")
    extra = [i for i, t in enumerate(target_moduli) if t]
    C = [list(A[i]) + [target_moduli[i] if i == e else 0 for e in extra] for i in range(m)]
    width = n + len(extra)
    if m == 0:
        return _solution([0] * n, identity(n), source_moduli)
    U, D, V, _ = _smith(C)
    c = matvec(U, b)
    diag = diagonal(D)
    rank = sum(1 for d in diag if d)
    w = [0] * width
    for i in range(m):
        if i < rank:
            if c[i] % diag[i]:
                return SolutionSet(None)
            w[i] = c[i] // diag[i]
        elif c[i]:
            return SolutionSet(None)
    z = matvec(V, w)
    homog = [[V[i][j] for i in range(n)] for j in range(rank, width)]
    return _solution(z[:n], homog, source_moduli)


def _solution(x0: Sequence[int], homog: Sequence[Sequence[int]], moduli: Sequence[int]) -> SolutionSet:
    lifted = lift_lattice(homog, moduli)
    particular = hnf_reduce(x0, lifted)
    basis = tuple(
        ModVector(tuple(row), tuple(moduli)) for row in lifted if not is_relation(row, moduli)
    )
    return SolutionSet(ModVector(tuple(particular), tuple(moduli)), basis)


def is_member(v: Sequence[int], generators: Iterable[Sequence[int]], moduli: Sequence[int]) -> bool:
    """Membership of ``v`` in a subgroup, decided with :func:`solve_affine`.

    Independent of the HNF reduction path; used to cross-check it.
    """
    gens = [list(g) for g in generators]
    k = len(moduli)
    if not gens:
        return is_relation(v, moduli)
    A = [[g[i] for g in gens] for i in range(k)]
    return not solve_affine(A, list(v), [0] * len(gens), list(moduli)).is_empty()
