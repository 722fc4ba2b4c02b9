from functools import lru_cache

import pytest

from pirickart.classifier import (
    FiniteRing,
    ModuleAnalysis,
    Verdict,
    check_fitting,
    check_pi_rickart,
    classify,
    fitting_index,
    ring_battery,
    witness_dossier,
)
from pirickart.config import RunConfig
from pirickart.homspace import homomorphism, is_homomorphism
from pirickart.structures import (
    catalog_entry,
    cyclic_ring,
    finite_catalog,
    fixture,
    integers,
    matrix_ring,
    ring_as_module,
)

import oracles

FINITE = [e.name for e in finite_catalog()]


@lru_cache(maxsize=None)
def report(name):
    entry = catalog_entry(name)
    return classify(entry.module, RunConfig(), entry.witnesses, entry.name)


def status(name, prop):
    return report(name)[prop].status


# ---- named examples ----------------------------------------------------

def test_example_2_3_module_verdicts():
    r = report("example-2.3")
    assert r["pi_rickart"].label() == "NoCounterexampleUpTo(10)"
    assert r["rickart"].fails
    assert r["rickart"].witness == [[0, 0], [1, 0]]
    assert r["fitting"].fails
    assert r["strongly_hopfian"].holds
    assert r["generalized_k_nonsingular"].status == "NoCounterexampleUpTo"
    assert r.mode["mode"] == "bounded" and r.mode["radius"] == 10
    certs = {str(c["f"]): c for c in r["pi_rickart"].evidence["witnesses"]}
    assert certs["[[0, 0], [1, 0]]"]["n"] == 2


@pytest.mark.parametrize("name,prop,expected", [
    ("Z4+Z2/Z4", "pi_rickart", "Proven"),
    ("Z2+Z3/Z6", "rickart", "Proven"),
    ("zero", "rickart", "Proven"),
    ("Z2+Z2/Z2", "baer", "Proven"),
    ("Z3+Z3/Z3", "baer", "Proven"),
    ("Z6_Z6", "baer", "Proven"),
    ("Z2+Z2/Z2", "reduced", "Refuted"),
    ("Z6_Z6", "reduced", "Proven"),
    ("Z6_Z6", "abelian", "Proven"),
    ("Z2+Z2/Z2", "abelian", "Refuted"),
    ("example-3.11", "abelian", "Proven"),
    ("Z4_Z4", "duo", "Proven"),
    ("Z2+Z2/Z2", "duo", "Refuted"),
    ("Z2+Z3/Z6", "c2", "Proven"),
    ("Z2+Z3/Z6", "d2", "Proven"),
    ("Z3+Z3/Z3", "c2", "Proven"),
    ("Z3+Z3/Z3", "d2", "Proven"),
    ("example-3.11", "strongly_hopfian", "Proven"),
    ("Z4_Z4", "mono_or_nilpotent", "Proven"),
    ("Z2+Z2/Z2", "mono_or_nilpotent", "Refuted"),
    ("Z6_Z6", "regular", "Proven"),
    ("Z4_Z4", "regular", "Refuted"),
    ("Z2+Z2/Z2", "one_epiretractable", "Proven"),
    ("Z4_Z4", "one_epiretractable", "Proven"),
    ("e11 T2(Z2)", "one_epiretractable", "Refuted"),
    ("zero", "baer", "Proven"),
    ("zero", "duo", "Proven"),
    ("zero", "regular", "Proven"),
])
def test_property_examples(name, prop, expected):
    assert status(name, prop) == expected


def test_witnesses_named_in_examples():
    assert report("Z4_Z4")["regular"].witness == [2]
    assert report("example-3.11")["fitting"].witness == [[2]]
    f = report("Z2+Z2/Z2")["reduced"].witness["f"]
    assert oracles.matmul(f, f, (2, 2)) == ((0, 0), (0, 0))


def test_z_over_z_bounded_verdicts():
    r = report("example-3.11")
    assert r["pi_rickart"].status == "NoCounterexampleUpTo"
    assert r["mono_or_nilpotent"].status == "NoCounterexampleUpTo"
    assert r.torsion_set["is_zero"]
    assert r.endo_ring_properties["pi_regular"].fails
    assert r.endo_ring_properties["pi_regular"].witness == [[2]]


def test_zero_module_is_degenerate_and_all_proven():
    r = report("zero")
    assert r.degenerate
    assert all(v.holds for v in r.properties.values())
    assert r.torsion_set["is_zero"]
    assert r.exit_code() == 0


def test_torsion_set_of_z2_squared_is_everything():
    ts = report("Z2+Z2/Z2").torsion_set
    assert ts["is_submodule"] and len(ts["elements"]) == 4


def test_fitting_index_of_idempotent_is_one():
    M = catalog_entry("Z4+Z2/Z4").module
    A = ModuleAnalysis(M)
    assert fitting_index(A, ((1, 0), (0, 0))) == 1
    assert fitting_index(A, ((2, 0), (0, 0))) == 2


def test_fitting_refuted_for_doubling_on_integers():
    A = ModuleAnalysis(ring_as_module(integers()), RunConfig(), [((2,),)])
    v = check_fitting(A)
    assert v.fails and v.witness == [[2]]


# ---- ring battery ------------------------------------------------------

def test_ring_battery_on_z4():
    R = FiniteRing.from_presentation(cyclic_ring(4))
    b = ring_battery(R)
    assert b["pi_regular"].holds
    assert b["generalized_right_pp"].holds
    assert b["local_nil_radical"].holds
    assert sorted(R.element(x) for x in R.jacobson_radical) == [(0,), (2,)]
    assert b["von_neumann_regular"].fails


def test_matrix_ring_is_von_neumann_regular():
    R = FiniteRing.from_presentation(matrix_ring(2, 2))
    assert ring_battery(R)["von_neumann_regular"].holds
    assert not ring_battery(R)["abelian"].holds


@pytest.mark.parametrize("name", FINITE)
def test_radical_and_singular_ideal_match_oracle(name):
    M = catalog_entry(name).module
    lib = FiniteRing.from_endo(report(name).analysis.S)
    ora = oracles.endo_table_ring(M)
    as_set = lambda idx: {tuple(map(tuple, lib.element(i))) for i in idx}
    assert as_set(lib.jacobson_radical) == ora.jacobson()
    assert as_set(lib.right_singular_ideal) == ora.right_singular()


@pytest.mark.parametrize("name", ["Z4_Z4", "Z8_Z8", "T2(Z2)_T2(Z2)", "M2(Z2)_M2(Z2)", "Z2xZ4_Z2xZ4"])
def test_base_ring_radicals_match_oracle(name):
    R = catalog_entry(name).module.ring
    lib = FiniteRing.from_presentation(R)
    ora = oracles.presentation_table_ring(R)
    assert {lib.element(i) for i in lib.jacobson_radical} == ora.jacobson()
    assert {lib.element(i) for i in lib.right_singular_ideal} == ora.right_singular()


def test_triangular_ring_radical():
    R = FiniteRing.from_presentation(catalog_entry("T2(Z2)_T2(Z2)").module.ring)
    assert len(R.jacobson_radical) == 2
    assert len(R.right_singular_ideal) == 1
    assert R.max_orthogonal_idempotents() == 2


# ---- refutations re-verify by direct evaluation -------------------------

def _refutation_holds(M, S, subs, summands, prop, w):
    mod = M.moduli
    zero = tuple(0 for _ in mod)
    if prop == "rickart":
        return oracles.kernel(M, w) not in summands
    if prop == "reduced":
        f, m = w["f"], tuple(w["m"])
        Sm = {oracles.matvec(G, m, mod) for G in S}
        return not any(oracles.matvec(f, m, mod)) and len(oracles.image(M, f) & Sm) > 1
    if prop == "abelian":
        E, G = w
        return oracles.matmul(E, E, mod) == tuple(map(tuple, E)) and oracles.matmul(E, G, mod) != oracles.matmul(G, E, mod)
    if prop == "duo":
        return oracles.matvec(w["f"], tuple(w["m"]), mod) not in oracles.cyclic(M, tuple(w["m"]))
    if prop == "mono_or_nilpotent":
        R = oracles.endo_table_ring(M)
        return len(oracles.kernel(M, w)) > 1 and not R.is_nilpotent(tuple(map(tuple, w)))
    if prop == "indecomposable":
        return oracles.matmul(w, w, mod) == tuple(map(tuple, w)) and oracles.image(M, w) not in (frozenset([zero]), frozenset(oracles.elements(mod)))
    if prop in ("c2", "d2", "baer", "one_epiretractable"):
        N = frozenset(oracles.red(v, mod) for v in _span(M, w))
        if prop == "one_epiretractable":
            return all(oracles.image(M, F) != N for F in S)
        if prop == "baer":
            ann = {F for F in S if all(not any(oracles.matvec(F, n, mod)) for n in N)}
            return all({oracles.matmul(G, E, mod) for G in S} != ann for E in oracles.idempotents(M, S))
        return N not in summands
    if prop == "regular":
        m = tuple(w)
        RR = ring_as_module(M.ring)
        return all(oracles.act(M, m, oracles.matvec(P, m, RR.moduli)) != m for P in oracles.homs(M, RR))
    if prop == "generalized_k_nonsingular":
        R = oracles.endo_table_ring(M)
        K = oracles.kernel(M, w)
        return oracles.is_essential(M, K) and not R.is_nilpotent(tuple(map(tuple, w)))
    raise AssertionError(f"no oracle for {prop}")


def _span(M, basis):
    span = {tuple(0 for _ in M.moduli)}
    frontier = list(span)
    while frontier:
        nxt = []
        for v in frontier:
            for b in basis:
                w = oracles.add(v, b, M.moduli)
                if w not in span:
                    span.add(w)
                    nxt.append(w)
        frontier = nxt
    return span


@pytest.mark.parametrize("name", [n for n in FINITE if catalog_entry(n).module.order <= 27])
def test_refutations_reverify(name):
    M, S, subs, summands = oracles.catalog_oracle_data(name)
    for prop, v in report(name).properties.items():
        if v.fails:
            assert _refutation_holds(M, S, subs, summands, prop, v.witness), prop


@pytest.mark.parametrize("name", [n for n in FINITE if catalog_entry(n).module.order <= 27])
def test_proven_pi_rickart_and_rickart_match_definition(name):
    M, S, subs, summands = oracles.catalog_oracle_data(name)

    def powers(F):
        out, P = [], F
        for _ in range(len(S) + 1):
            out.append(P)
            P = oracles.matmul(F, P, M.moduli)
        return out

    rickart = all(oracles.kernel(M, F) in summands for F in S)
    pi = all(any(oracles.kernel(M, P) in summands for P in powers(F)) for F in S)
    assert report(name)["rickart"].holds == rickart
    assert report(name)["pi_rickart"].holds == pi


# ---- invariants --------------------------------------------------------

@pytest.mark.parametrize("name", FINITE + ["example-2.3", "example-3.11"])
def test_internal_consistency(name):
    r = report(name)
    if r["rickart"].holds:
        assert not r["pi_rickart"].fails
    if r["fitting"].holds:
        assert r["pi_rickart"].holds
    if not r.analysis.exact:
        assert all(v.status != "Proven" or k in ("strongly_hopfian", "abelian") for k, v in r.properties.items())


def test_reports_are_deterministic():
    entry = catalog_entry("Z4+Z6/Z12")
    a = classify(entry.module, RunConfig(), name=entry.name).to_json()
    b = classify(entry.module, RunConfig(), name=entry.name).to_json()
    assert a == b


def test_markdown_rendering_mentions_mode_and_properties():
    text = report("example-2.3").to_markdown()
    assert "bounded search, radius 10" in text
    assert "| rickart | Refuted |" in text


def test_cap_breach_downgrades_mode():
    entry = catalog_entry("Z4+Z4/Z4")
    r = classify(entry.module, RunConfig(cap=100), name=entry.name)
    assert r.mode["mode"] == "bounded"
    assert "exceeds cap" in r.mode["downgrade"]
    assert r["pi_rickart"].status == "NoCounterexampleUpTo"
    assert r.exit_code() in (1, 3)


def test_verdict_json_shape():
    v = Verdict.no_counterexample(7, reason="box")
    assert v.to_json() == {"status": "NoCounterexampleUpTo", "bound": 7, "reason": "box"}
    assert Verdict.refuted([[1]]).to_json()["witness"] == [[1]]


# ---- example-2.9 ---------------------------------------------------------

def test_example_2_9_kernel_is_a_direct_summand():
    """The stated map has a split kernel; the complement is {[[x, y], [-x, -y]]}."""
    M = fixture("example-2.9").module
    E = [[3, 0, 3, 0], [0, 3, 0, 3], [-2, 0, -2, 0], [0, -2, 0, -2]]
    assert is_homomorphism(M, M, E)
    assert oracles.matmul(E, E, M.moduli) == tuple(map(tuple, E))
    f = [[2, 0, 3, 0], [0, 2, 0, 3], [0, 0, 0, 0], [0, 0, 0, 0]]
    # E has image span((3,0,-2,0), (0,3,0,-2)) = Ker f, and (1 - E) has image span((1,0,-1,0), (0,1,0,-1))
    for v in ([3, 0, -2, 0], [0, 3, 0, -2]):
        assert not any(oracles.matvec(f, v, M.moduli))
        assert oracles.matvec(E, v, M.moduli) == tuple(v)
    d = witness_dossier(M, f)
    assert d["n_star"] == 1
    assert d["pi_rickart_at_f"]["status"] == "ok"


def test_example_2_9_parts_have_only_monomorphisms_in_the_box():
    for name in ("example-2.9-N", "example-2.9-K"):
        A = ModuleAnalysis(fixture(name).module, RunConfig(box=10))
        for F in A.domain:
            assert A.S.is_zero(F) or A.is_mono(F)
        assert check_pi_rickart(A).status == "NoCounterexampleUpTo"


def test_dossier_for_case_four_map():
    d = witness_dossier(fixture("example-2.3").module, [[0, 0], [1, 0]])
    assert d["n_star"] == 2
    assert d["kernel_chain"][1]["is_whole_module"]
    assert not d["kernel_chain"][0]["direct_summand"]
    assert d["nilpotent"] is True


def test_dossier_rejects_non_endomorphisms():
    with pytest.raises(ValueError):
        witness_dossier(fixture("example-2.3").module, [[1, 1], [0, 1]])


def test_dossier_identity_is_trivial():
    M = catalog_entry("Z4+Z2/Z4").module
    d = witness_dossier(M, [[1, 0], [0, 1]])
    assert d["n_star"] == 1 and d["fitting_index"] == 1 and d["monomorphism"]
    assert homomorphism(M, M, [[1, 0], [0, 1]]).tolist() == [[1, 0], [0, 1]]
