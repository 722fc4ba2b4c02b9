import pytest

from pirickart.structures import (
    ModulePresentation,
    PresentationError,
    RingPresentation,
    Submodule,
    ValidationError,
    catalog_entry,
    cyclic_ring,
    direct_sum,
    dump_presentation,
    finite_catalog,
    fixture,
    integers,
    load_presentation,
    matrix_ring,
    parse_presentation,
    quotient,
    ring_as_module,
    scalar_module,
    submodule_as_module,
    triangular_ring,
    validate_module,
    validate_ring,
    zero_module,
)
from pirickart.structures.catalog import FIXTURES

import oracles


@pytest.mark.parametrize("entry", finite_catalog(), ids=lambda e: e.name)
def test_catalog_entries_validate(entry):
    validate_ring(entry.module.ring)
    validate_module(entry.module)
    assert entry.finite


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixtures_validate(name):
    validate_module(fixture(name).module)


def test_catalog_has_enough_instances_and_a_non_epiretractable_one():
    names = [e.name for e in finite_catalog()]
    assert len(names) >= 30
    assert len(set(names)) == len(names)
    assert "e11 T2(Z2)" in names


def test_ring_axioms_are_checked():
    R = RingPresentation((2, 2), (((1, 0), (0, 1)), ((0, 1), (1, 0))), (1, 0), name="Z2[C2]")
    validate_ring(R)
    # claimed identity b0 squares to b1
    bad = RingPresentation((2, 2), (((0, 1), (0, 0)), ((1, 0), (0, 0))), (1, 0), name="bad")
    with pytest.raises(ValidationError):
        validate_ring(bad)


def test_non_module_action_is_rejected():
    R = cyclic_ring(4)
    with pytest.raises(ValidationError):
        validate_module(ModulePresentation(R, (4,), (((2,),),), name="bad"))
    with pytest.raises(ValidationError):
        validate_module(ModulePresentation(R, (3,), (((1,),),), name="Z3 over Z4"))


def test_matrix_and_triangular_rings_have_expected_orders():
    assert matrix_ring(2, 2).order == 16
    assert triangular_ring(2).order == 8
    assert not triangular_ring(0).is_finite


def test_direct_sum_blocks_and_orders():
    R = cyclic_ring(12)
    M = direct_sum(scalar_module(R, (4,)), scalar_module(R, (6,)))
    assert M.order == 24
    assert M.moduli == (4, 6)


def test_module_arithmetic_matches_oracle():
    M = catalog_entry("T2(Z2)_T2(Z2)").module
    for m in oracles.elements(M.moduli):
        for r in oracles.ring_elements(M.ring):
            assert M.act(m, r) == oracles.act(M, m, r)


@pytest.mark.parametrize("name", ["Z4+Z2/Z4", "Z8+Z2/Z8", "T2(Z2)_T2(Z2)", "Z4+Z6/Z12"])
def test_submodule_canonical_forms_match_element_sets(name):
    M = catalog_entry(name).module
    for S in oracles.submodules(M):
        N = Submodule.subgroup(M, sorted(S))
        assert set(N.elements()) == set(S)
        assert N.order == len(S)
        assert Submodule.generated_by(M, sorted(S)[-1:]).order <= N.order


@pytest.mark.parametrize("name", ["Z4+Z2/Z4", "Z9+Z3/Z9", "T2(Z2)_T2(Z2)"])
def test_quotient_order(name):
    M = catalog_entry(name).module
    for S in oracles.submodules(M):
        N = Submodule.subgroup(M, sorted(S))
        Q, _ = quotient(M, N)
        validate_module(Q)
        assert Q.order * N.order == M.order


def test_submodule_as_module_is_a_module():
    M = ring_as_module(triangular_ring(2))
    N = Submodule.generated_by(M, [(1, 0, 0)])
    P, inc = submodule_as_module(N)
    validate_module(P)
    assert P.order == N.order == 4


def test_infinite_quotient_of_integers():
    M = ring_as_module(integers())
    Q, _ = quotient(M, Submodule.generated_by(M, [(6,)]))
    assert Q.moduli == (6,)


# ---- file format -------------------------------------------------------

@pytest.mark.parametrize("entry", finite_catalog() + [fixture(n) for n in sorted(FIXTURES)], ids=lambda e: e.name)
def test_presentation_round_trip(entry):
    text = dump_presentation(entry.module)
    M = parse_presentation(text)
    assert M.moduli == entry.module.moduli
    assert M.action == entry.module.action
    assert M.ring.table == entry.module.ring.table
    assert dump_presentation(M) == text


def test_load_presentation_from_file(tmp_path):
    p = tmp_path / "z.mod"
    p.write_text(dump_presentation(zero_module(cyclic_ring(2))))
    assert load_presentation(p).is_zero


def _error(text):
    with pytest.raises(PresentationError) as info:
        parse_presentation(text, "in.mod")
    return info.value


GOOD = dump_presentation(scalar_module(integers(), (0, 2)))


def test_syntax_error_is_line_anchored():
    err = _error(GOOD.replace('moduli = [0, 2]', 'moduli = [0, 2'))
    assert str(err).startswith("in.mod")
    assert "syntax error" in str(err)


def test_axiom_failure_points_at_action_line():
    bad = GOOD.replace("[[1, 0], [0, 1]]", "[[2, 0], [0, 1]]")
    err = _error(bad)
    assert err.line == bad.splitlines().index("action = [") + 1
    assert "invalid module" in str(err)


def test_shape_and_type_errors_are_line_anchored():
    err = _error(GOOD.replace("one = [1]", "one = [1, 0]"))
    assert err.line == GOOD.splitlines().index("one = [1]") + 1
    err = _error(GOOD.replace("moduli = [0, 2]", 'moduli = ["a", 2]'))
    assert err.line == GOOD.splitlines().index("moduli = [0, 2]") + 1
    err = _error(GOOD.replace("moduli = [0, 2]", "moduli = [0, -2]"))
    assert "non-negative" in str(err)


def test_missing_tables_and_keys():
    assert "missing [module]" in str(_error(GOOD.split("[module]")[0]))
    err = _error(GOOD.replace("one = [1]\n", ""))
    assert "missing 'one'" in str(err)
    assert err.line == 1


def test_unreadable_file(tmp_path):
    with pytest.raises(PresentationError):
        load_presentation(tmp_path / "absent.mod")
