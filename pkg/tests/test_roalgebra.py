import pytest
from hypothesis import assume, given, settings

from conftest import posets
from funayama import (
    CapacityExceeded,
    ForeignElement,
    RegularOpenAlgebra,
    SpaceMismatch,
    adjoin_bounds,
    atoms,
    build_pair_space,
    build_ro_algebra,
    embed,
    generated_subalgebra,
    is_dense_subalgebra,
    macneille_iso_check,
    oracle_ro_enumerate,
    ro_join,
    ro_meet,
    ro_not,
    verify_boolean_axioms,
)
from funayama.facts import M3_ATOMS, M3_E, M3_NOT_E, m3, n5, n5_fixpoints
from funayama.roalgebra import Subalgebra


def _names(sets):
    return sorted(sorted(U.names()) for U in sets)


def _dense_by_definition(B, S):
    nonzero = [m for m in S.masks if m]
    return all(any(s & ~u == 0 for s in nonzero) for u in B.carrier_masks if u)


def test_m3_algebra():
    B = build_ro_algebra(build_pair_space(m3()))
    assert B.size == 64 and len(B.carrier) == 64
    assert _names(atoms(B)) == sorted(sorted(a) for a in M3_ATOMS)


def test_m3_complements():
    E = embed(m3())
    B = E.target
    for x in "abc":
        assert ro_not(B, E(x)).names() == M3_NOT_E[x]
    assert ro_meet(B, [ro_not(B, E(x)) for x in "abc"]) == B.bottom
    assert ro_join(B, [E(x) for x in "abc"]) == B.top


def test_n5_carrier_is_s1_to_s8():
    X = build_pair_space(n5())
    B = build_ro_algebra(X)
    assert _names(B.carrier) == sorted(sorted(s) for s in n5_fixpoints(X))


def test_m3_generated_subalgebra():
    E = embed(m3())
    S = generated_subalgebra(E.target, [E(x) for x in "abc"])
    assert len(S) == 8
    assert {frozenset(U.names()) for U in S.atoms} == {frozenset(M3_E[x]) for x in "abc"}
    assert not is_dense_subalgebra(E.target, S)
    assert macneille_iso_check(E.target, S) is False
    assert E.target.element([("a", "b")]) not in S


def test_n5_generated_subalgebra():
    E = embed(n5())
    S = generated_subalgebra(E.target, [E(x) for x in E.source.names])
    assert S.equals_parent() and len(S) == 8
    assert macneille_iso_check(E.target, S) is True


def test_oracle_examples():
    assert len(oracle_ro_enumerate(build_pair_space(m3()))) == 64
    X = build_pair_space(n5())
    assert _names(oracle_ro_enumerate(X)) == sorted(sorted(s) for s in n5_fixpoints(X))


def test_oracle_bound():
    X = build_pair_space(m3())
    with pytest.raises(CapacityExceeded) as info:
        oracle_ro_enumerate(X, bound=12)
    assert info.value.stage == "oracle"


def test_budget_is_enforced():
    X = build_pair_space(m3())
    B = RegularOpenAlgebra(X, budget=100)
    assert B.size == 64  # lazy structure needs no carrier
    with pytest.raises(CapacityExceeded) as info:
        B.carrier_masks
    assert info.value.stage == "ro-algebra"
    assert not B.is_materialized


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("FUNAYAMA_BUDGET", "10")
    with pytest.raises(CapacityExceeded):
        build_ro_algebra(build_pair_space(m3()))
    monkeypatch.setenv("FUNAYAMA_BUDGET", "lots")
    with pytest.raises(ValueError):
        RegularOpenAlgebra(build_pair_space(m3()))


def test_foreign_elements_are_rejected():
    E = embed(m3())
    B = E.target
    X = B.space
    with pytest.raises(ForeignElement):
        B.element([("1", "0")])
    with pytest.raises(ForeignElement):
        ro_not(B, X.pairset([("a", "0")]))
    other = build_pair_space(m3())
    with pytest.raises(SpaceMismatch):
        ro_not(B, other.full)
    with pytest.raises(ForeignElement):
        ro_meet(B, ["not a set"])


def test_axioms_detect_a_broken_carrier():
    B = build_ro_algebra(build_pair_space(m3()))
    E = embed(m3())
    broken = Subalgebra(E.target, frozenset({0, E.target.space.full_mask, E("a").mask}))
    report = verify_boolean_axioms(broken)
    assert not report.ok and "complement" in report.first_violation
    assert verify_boolean_axioms(B).ok


def test_axioms_on_generated_subalgebra():
    E = embed(m3())
    S = generated_subalgebra(E.target, [E(x) for x in "abc"])
    report = verify_boolean_axioms(S)
    assert report.ok and report.exhaustive and report.size == 8


def _bounded_space(P):
    return build_pair_space(adjoin_bounds(P).extended)


@given(posets(max_size=5))
@settings(max_examples=80, deadline=None)
def test_closure_matches_oracle(P):
    X = _bounded_space(P)
    if len(X) > 14:
        return
    B = build_ro_algebra(X)
    assert set(B.carrier_masks) == {U.mask for U in oracle_ro_enumerate(X)}


@given(posets(max_size=5))
@settings(max_examples=80, deadline=None)
def test_atoms_are_minimal_nonzero_elements(P):
    X = _bounded_space(P)
    B = RegularOpenAlgebra(X)
    assume(B.size <= 4096)
    nonzero = [m for m in B.carrier_masks if m]
    minimal = {m for m in nonzero if not any(o != m and o & ~m == 0 for o in nonzero)}
    assert set(B.atom_masks) == minimal
    assert B.size == 2 ** len(minimal) == len(B.carrier_masks)


@given(posets(max_size=5))
@settings(max_examples=60, deadline=None)
def test_dual_algebra_has_same_size(P):
    Q = adjoin_bounds(P).extended
    assert RegularOpenAlgebra(build_pair_space(Q)).size == RegularOpenAlgebra(build_pair_space(Q.dual())).size


@given(posets(max_size=5))
@settings(max_examples=50, deadline=None)
def test_boolean_axioms_hold(P):
    B = RegularOpenAlgebra(_bounded_space(P))
    assume(B.size <= 1024)
    assert verify_boolean_axioms(B, samples=500).ok


@given(posets(min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_density_by_atoms_matches_definition(P):
    E = embed(P)
    B = E.target
    assume(B.size <= 4096)
    S = generated_subalgebra(B, [E(x) for x in E.domain])
    assert is_dense_subalgebra(B, S) == _dense_by_definition(B, S)
    assert macneille_iso_check(B, S) == S.equals_parent()


@given(posets(min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_generated_subalgebra_is_closed(P):
    E = embed(P)
    B = E.target
    S = generated_subalgebra(B, [E(x) for x in E.domain])
    assume(len(S) <= 256)
    for x in S.masks:
        assert B.not_mask(x) in S.masks
        for y in S.masks:
            assert x & y in S.masks and B.join_mask([x, y]) in S.masks
    assert len(S) & (len(S) - 1) == 0
