"""Acceptance criteria, one test each; every test records a PASS or FAIL line."""

import time

from funayama import (
    build_pair_space,
    build_ro_algebra,
    check_preservation,
    classify,
    dual_embed,
    dual_iso,
    embed,
    funayama_corollary_check,
    generated_subalgebra,
    macneille_iso_check,
    oracle_ro_enumerate,
    ro_not,
    satisfies_jid,
    satisfies_mid,
    verify_boolean_axioms,
)
from funayama.facts import M3_ATOMS, M3_E, M3_NOT_E, N5_E, m3, n5, n5_fixpoints
from funayama.zoo import all_lattices, catalog, footnote_check, survey_problem2

RESULTS = []


def record(number, title, ok, detail=""):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}"
    if detail:
        line += f"  [{detail}]"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _names(sets):
    return sorted(sorted(U.names()) for U in sets)


def test_criterion_1_m3_regression():
    t0 = time.perf_counter()
    P = m3()
    X = build_pair_space(P)
    B = build_ro_algebra(X)
    E = embed(P)
    S = generated_subalgebra(E.target, [E(x) for x in P.names])
    checks = [
        len(X) == 13,
        B.size == 64 and len(B.carrier_masks) == 64,
        _names(B.atoms) == sorted(sorted(a) for a in M3_ATOMS),
        all(E(x).names() == M3_E[x] for x in "abc"),
        all(ro_not(E.target, E(x)).names() == M3_NOT_E[x] for x in "abc"),
        len(S) == 8 and {frozenset(a.names()) for a in S.atoms} == {frozenset(M3_E[x]) for x in "abc"},
        macneille_iso_check(E.target, S) is False,
    ]
    dt = time.perf_counter() - t0
    record(1, "M3 regression", all(checks) and dt < 1.0, f"{sum(checks)}/{len(checks)} checks, {dt:.3f}s")


def test_criterion_2_n5_regression():
    t0 = time.perf_counter()
    P = n5()
    X = build_pair_space(P)
    B = build_ro_algebra(X)
    E = embed(P)
    fix = n5_fixpoints(E.target.space)
    S = generated_subalgebra(E.target, [E(x) for x in P.names])
    checks = [
        len(X) == 12,
        _names(B.carrier) == sorted(sorted(s) for s in n5_fixpoints(X)),
        all(E(x).names() == fix[k - 1] for x, k in N5_E.items()),
        S.equals_parent(),
        macneille_iso_check(E.target, S) is True,
    ]
    dt = time.perf_counter() - t0
    record(2, "N5 regression", all(checks) and dt < 1.0, f"{sum(checks)}/{len(checks)} checks, {dt:.3f}s")


def test_criterion_3_oracle_equivalence():
    t0 = time.perf_counter()
    compared, bad = 0, []
    for L in all_lattices(6, nmin=2):
        X = build_pair_space(L)
        if len(X) > 14:
            continue
        compared += 1
        B = build_ro_algebra(X)
        same = set(B.carrier_masks) == {U.mask for U in oracle_ro_enumerate(X)}
        axioms = verify_boolean_axioms(B)
        if not (same and axioms.ok and axioms.exhaustive):
            bad.append(L.covers())
    dt = time.perf_counter() - t0
    record(3, "closure equals brute-force oracle", not bad and compared > 0 and dt < 120, f"{compared} lattices, {len(bad)} mismatches, {dt:.2f}s")


def test_criterion_4_preservation_suite():
    failures = []
    count = 0
    for L in all_lattices(7, nmin=2):
        count += 1
        E = embed(L)
        rep = check_preservation(E, ("finite_meets", "exact_joins", "exact_meets"))
        dist = classify(L).is_distributive
        if not E.is_order_embedding():
            failures.append(("order", L.covers()))
        if not rep.finite_meets_ok or not rep.exact_joins_ok:
            failures.append(("meets/exact joins", L.covers()))
        if dist:
            S = generated_subalgebra(E.target, [E(x) for x in L.names])
            if not rep.exact_meets_ok or not S.equals_parent():
                failures.append(("distributive", L.covers()))
        drep = check_preservation(dual_embed(L), ("finite_joins", "exact_meets"))
        if not drep.ok:
            failures.append(("dual", L.covers()))
    record(4, "preservation suite on lattices up to 7 elements", not failures, f"{count} lattices, {len(failures)} counterexamples")


def test_criterion_5_corollary():
    exceptions = []
    count = 0
    for L in all_lattices(7, nmin=2):
        count += 1
        complete, jid_and_mid = funayama_corollary_check(L)
        flags = {complete, jid_and_mid, satisfies_jid(L), satisfies_mid(L), classify(L).is_distributive}
        if len(flags) != 1:
            exceptions.append(L.covers())
    record(5, "complete embedding iff JID iff MID iff distributive", not exceptions, f"{count} lattices, {len(exceptions)} exceptions")


def test_criterion_6_duality():
    bad = []
    count = 0
    for L in all_lattices(7, nmin=2):
        count += 1
        iso = dual_iso(L)
        same_size = embed(L).target.size == embed(L.dual()).target.size
        if not (iso.ok and same_size):
            bad.append(L.covers())
    record(6, "swap map is an order isomorphism onto the dual pair space", not bad, f"{count} lattices, {len(bad)} failures")


def test_criterion_7_dual_mismatch():
    assert len(catalog("b4_plus_top")) == 5
    record(7, "swapped image differs from the dual embedding on b4_plus_top", footnote_check() is True)


def test_criterion_8_survey(tmp_path):
    a, b = tmp_path / "run1.jsonl", tmp_path / "run2.jsonl"
    recs = survey_problem2(6, out=str(a))
    survey_problem2(6, out=str(b))
    by_label = {r.label: r for r in recs if r.label in ("m3", "n5")}
    checks = [
        all(r.macneille_iso for r in recs if r.distributive),
        by_label["m3"].size == 5 and by_label["m3"].macneille_iso is False,
        by_label["n5"].size == 5 and by_label["n5"].macneille_iso is True,
        a.read_bytes() == b.read_bytes(),
    ]
    record(8, "survey up to 6 elements", all(checks), f"{len(recs)} records, {sum(checks)}/{len(checks)} checks")
