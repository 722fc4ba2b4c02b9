"""Built-in fixtures addressed by stable names."""

from __future__ import annotations

from dataclasses import dataclass

from .constructions import (
    cyclic_ring,
    direct_sum,
    integers,
    matrix_ring,
    ring_as_module,
    ring_product,
    scalar_module,
    submodule_as_module,
    triangular_ring,
    zero_module,
)
from .presentations import Matrix, ModulePresentation, Submodule, as_matrix


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    module: ModulePresentation
    witnesses: tuple[Matrix, ...] = ()
    witness_labels: tuple[str, ...] = ()
    parts: tuple[ModulePresentation, ...] = ()
    note: str = ""

    @property
    def finite(self) -> bool:
        return self.module.is_finite and self.module.ring.is_finite


def _rename(M: ModulePresentation, name: str) -> ModulePresentation:
    return ModulePresentation(M.ring, M.moduli, M.action, name=name, blocks=M.blocks)


def _right_ideal(R, generator, name: str) -> ModulePresentation:
    RR = ring_as_module(R)
    P, _ = submodule_as_module(Submodule.generated_by(RR, [generator]), name=name)
    return P


# --------------------------------------------------------------------------
# infinite fixtures
# --------------------------------------------------------------------------

def example_2_3() -> CatalogEntry:
    """``Z + Z2`` over ``Z``; endomorphisms are ``[[a, 0], [b, c]]``."""
    M = scalar_module(integers(), (0, 2), name="Z+Z2")
    cases = (
        ((0, 0), (0, 1)),   # idempotent
        ((2, 0), (0, 1)),   # zero kernel
        ((2, 0), (0, 0)),   # kernel 0 + Z2
        ((0, 0), (1, 0)),   # square zero, kernel 2Z + Z2
    )
    return CatalogEntry(
        "example-2.3", M, tuple(as_matrix(c) for c in cases),
        ("case-1", "case-2", "case-3", "case-4"),
        note="pi-Rickart but not Rickart",
    )


def row_module() -> ModulePresentation:
    """Row vectors ``Z^2`` over upper triangular ``T2(Z)`` acting on the right."""
    T = triangular_ring(0)
    E11 = as_matrix([[1, 0], [0, 0]])
    E12 = as_matrix([[0, 0], [1, 0]])
    E22 = as_matrix([[0, 0], [0, 1]])
    return ModulePresentation(T, (0, 0), (E11, E12, E22), name="Z^2 rows")


EXAMPLE_2_9_MAP = as_matrix([[2, 0, 3, 0], [0, 2, 0, 3], [0, 0, 0, 0], [0, 0, 0, 0]])


def example_2_9() -> CatalogEntry:
    """``M2(Z)`` over ``T2(Z)`` with coordinates ``(x, y, r, s)`` of ``[[x, y], [r, s]]``."""
    N, K = example_2_9_N().module, example_2_9_K().module
    M = direct_sum(N, K, name="M2(Z)")
    return CatalogEntry(
        "example-2.9", M, (EXAMPLE_2_9_MAP,), ("f",), parts=(N, K),
        note="sum of two pi-Rickart modules that is not pi-Rickart",
    )


def example_2_9_N() -> CatalogEntry:
    return CatalogEntry("example-2.9-N", _rename(row_module(), "N"), note="first row of M2(Z)")


def example_2_9_K() -> CatalogEntry:
    return CatalogEntry("example-2.9-K", _rename(row_module(), "K"), note="second row of M2(Z)")


def example_3_11() -> CatalogEntry:
    return CatalogEntry(
        "example-3.11", ring_as_module(integers()), (as_matrix([[2]]),), ("a=2",),
        note="pi-Rickart with an endomorphism ring that is not pi-regular",
    )


def zero_fixture() -> CatalogEntry:
    return CatalogEntry("zero", zero_module(cyclic_ring(2)), note="degenerate")


FIXTURES = {
    "example-2.3": example_2_3,
    "example-2.9": example_2_9,
    "example-2.9-N": example_2_9_N,
    "example-2.9-K": example_2_9_K,
    "example-3.11": example_3_11,
    "zero": zero_fixture,
}


def fixture(name: str) -> CatalogEntry:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(sorted(FIXTURES))}") from None


# --------------------------------------------------------------------------
# finite catalog
# --------------------------------------------------------------------------

def _scalar(n: int, moduli: tuple[int, ...]) -> CatalogEntry:
    M = scalar_module(cyclic_ring(n), moduli)
    return CatalogEntry(M.name, M)


def _sum(n: int, a: int, b: int) -> CatalogEntry:
    R = cyclic_ring(n)
    M1, M2 = scalar_module(R, (a,)), scalar_module(R, (b,))
    M = direct_sum(M1, M2, name=f"Z{a}+Z{b}/Z{n}")
    return CatalogEntry(M.name, M, parts=(M1, M2))


def finite_catalog() -> list[CatalogEntry]:
    out = []
    for n in (2, 3, 4, 6, 8, 9, 12):
        out.append(CatalogEntry(f"Z{n}_Z{n}", ring_as_module(cyclic_ring(n))))
    for n, moduli in (
        (4, (2,)), (8, (2,)), (8, (4,)), (9, (3,)), (6, (2,)), (6, (3,)),
        (12, (4,)), (12, (6,)), (12, (2,)), (12, (3,)),
        (4, (4, 2)), (2, (2, 2)), (3, (3, 3)), (8, (8, 2)), (4, (4, 4)), (4, (2, 2)), (9, (9, 3)),
    ):
        out.append(_scalar(n, moduli))
    out.append(_sum(6, 2, 3))
    out.append(_sum(12, 4, 3))
    out.append(_sum(12, 4, 6))

    T = triangular_ring(2)
    out.append(CatalogEntry("T2(Z2)_T2(Z2)", ring_as_module(T)))
    out.append(CatalogEntry("e11 T2(Z2)", _right_ideal(T, (1, 0, 0), "e11 T2(Z2)"),
                            note="socle is not an endomorphic image"))
    out.append(CatalogEntry("e22 T2(Z2)", _right_ideal(T, (0, 0, 1), "e22 T2(Z2)")))
    M2 = matrix_ring(2, 2)
    out.append(CatalogEntry("M2(Z2)_M2(Z2)", ring_as_module(M2)))
    out.append(CatalogEntry("e11 M2(Z2)", _right_ideal(M2, (1, 0, 0, 0), "e11 M2(Z2)")))
    P = ring_product(cyclic_ring(2), cyclic_ring(2))
    out.append(CatalogEntry("Z2xZ2_Z2xZ2", ring_as_module(P)))
    out.append(CatalogEntry("Z2xZ4_Z2xZ4", ring_as_module(ring_product(cyclic_ring(2), cyclic_ring(4)))))
    out.append(zero_fixture())
    return out


def catalog_entry(name: str) -> CatalogEntry:
    if name in FIXTURES:
        return fixture(name)
    for entry in finite_catalog():
        if entry.name == name:
            return entry
    raise KeyError(f"unknown catalog entry {name!r}")
