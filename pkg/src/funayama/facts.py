"""Reference values for M3, N5 and friends, and the regression list behind ``verify-paper``."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from .embedding import check_preservation, dual_embed, embed, exactness
from .order import classify, down_set, from_covers, meet
from .pairspace import below, build_pair_space, dual_iso, is_downset, regularize
from .roalgebra import (
    RegularOpenAlgebra,
    generated_subalgebra,
    is_dense_subalgebra,
    macneille_iso_check,
    oracle_ro_enumerate,
    ro_meet,
    ro_not,
)

M3_COVERS = [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")]
N5_COVERS = [("0", "b"), ("b", "a"), ("a", "1"), ("0", "c"), ("c", "1")]

M3_PAIRS = [
    ("a", "0"), ("a", "b"), ("a", "c"), ("b", "0"), ("b", "a"), ("b", "c"),
    ("c", "0"), ("c", "a"), ("c", "b"), ("1", "0"), ("1", "a"), ("1", "b"), ("1", "c"),
]
M3_ATOMS = [{("a", "b")}, {("a", "c")}, {("b", "a")}, {("b", "c")}, {("c", "a")}, {("c", "b")}]
M3_E = {
    "a": {("a", "0"), ("a", "b"), ("a", "c")},
    "b": {("b", "0"), ("b", "a"), ("b", "c")},
    "c": {("c", "0"), ("c", "a"), ("c", "b")},
}
M3_NOT_E = {
    "a": {("b", "0"), ("b", "a"), ("b", "c"), ("c", "0"), ("c", "a"), ("c", "b"), ("1", "a")},
    "b": {("a", "0"), ("a", "b"), ("a", "c"), ("c", "0"), ("c", "a"), ("c", "b"), ("1", "b")},
    "c": {("a", "0"), ("a", "b"), ("a", "c"), ("b", "0"), ("b", "a"), ("b", "c"), ("1", "c")},
}

N5_S = {
    1: set(),
    2: {("a", "b")},
    3: {("a", "c"), ("b", "0"), ("b", "c"), ("1", "c")},
    4: {("c", "a"), ("c", "0"), ("c", "b"), ("1", "a")},
    5: {("a", "b"), ("c", "0"), ("c", "a"), ("c", "b"), ("1", "a"), ("1", "b")},
    6: {("a", "0"), ("a", "b"), ("a", "c"), ("b", "0"), ("b", "c"), ("1", "c")},
    7: {("a", "c"), ("b", "0"), ("b", "c"), ("c", "0"), ("c", "a"), ("c", "b"), ("1", "a"), ("1", "c")},
    8: None,  # the whole space
}
N5_E = {"a": 6, "b": 3, "c": 4}


def m3():
    return from_covers(["0", "a", "b", "c", "1"], M3_COVERS)


def n5():
    return from_covers(["0", "b", "a", "c", "1"], N5_COVERS)


def n5_fixpoints(X) -> list:
    """S1..S8 as name sets; S8 is filled in from the space."""
    return [set(X.names()) if s is None else s for _, s in sorted(N5_S.items())]


@dataclass(frozen=True)
class Fact:
    label: str
    check: Callable[[], bool]


def _m3_facts():
    P = m3()
    X = build_pair_space(P)
    B = RegularOpenAlgebra(X)
    E = embed(P)
    S = generated_subalgebra(E.target, [E(x) for x in P.names])
    notE = {x: ro_not(E.target, E(x)) for x in "abc"}
    return [
        Fact("M3 parses from five elements and six covers", lambda: len(P) == 5 and len(P.covers()) == 6),
        Fact("M3: a and b are incomparable", lambda: not P.leq("a", "b") and not P.leq("b", "a")),
        Fact("M3: a meet b is 0", lambda: meet(P, ["a", "b"]) == "0"),
        Fact("M3 is a bounded non-distributive lattice", lambda: (lambda i: i.is_lattice and i.is_bounded and not i.is_distributive)(classify(P))),
        Fact("M3 pair space has the 13 listed points", lambda: set(X.names()) == set(M3_PAIRS) and len(X) == 13),
        Fact("M3: below (a,0) is {(a,0),(a,b),(a,c)}", lambda: below(X, ("a", "0")).names() == M3_E["a"]),
        Fact("M3: (a,b) is a minimal point", lambda: below(X, ("a", "b")).names() == {("a", "b")}),
        Fact("M3: {(a,b)} is a downset and a regular open", lambda: is_downset(X, X.pairset([("a", "b")])) and regularize(X, X.pairset([("a", "b")])).names() == {("a", "b")}),
        Fact("M3: below (a,0) is regular open", lambda: regularize(X, below(X, ("a", "0"))) == below(X, ("a", "0"))),
        Fact("M3: regular-open algebra has 64 elements", lambda: B.size == 64 and len(B.carrier) == 64),
        Fact("M3: brute-force enumeration agrees on 64 regular opens", lambda: len(oracle_ro_enumerate(X)) == 64),
        Fact("M3: atoms are the six snowflake points", lambda: sorted(sorted(a.names()) for a in B.atoms) == sorted(sorted(a) for a in M3_ATOMS)),
        Fact("M3: images of the atoms match the listed sets", lambda: all(E(x).names() == M3_E[x] for x in "abc")),
        Fact("M3: complements of the images match the listed sets", lambda: all(notE[x].names() == M3_NOT_E[x] for x in "abc")),
        Fact("M3: the three complements intersect to the empty set", lambda: not ro_meet(E.target, notE.values())),
        Fact("M3: each image lies inside the other two complements", lambda: all(E(x) <= notE[y] for x in "abc" for y in "abc" if x != y)),
        Fact("M3: generated subalgebra has 8 elements with atoms e(a), e(b), e(c)", lambda: len(S) == 8 and set(S.atom_masks) == {E(x).mask for x in "abc"}),
        Fact("M3: generated subalgebra is the 6 listed sets plus empty and whole", lambda: {frozenset(u.names()) for u in S.carrier} == {frozenset(s) for s in [*M3_E.values(), *M3_NOT_E.values(), set(), set(M3_PAIRS)]}),
        Fact("M3: {(a,b)} is regular open but not in the generated subalgebra", lambda: E.target.element([("a", "b")]) not in S),
        Fact("M3: not the MacNeille completion of its generated subalgebra", lambda: macneille_iso_check(E.target, S) is False),
        Fact("M3: image of 1 is the whole space", lambda: E("1") == E.target.top),
        Fact("M3: exact joins are preserved", lambda: check_preservation(E, "exact_joins").exact_joins_ok),
        Fact("M3: the meet of a and b is not exact", lambda: not exactness(P, ["a", "b"]).meet_exact),
        Fact("M3: swap map is an isomorphism onto the dual pair space", lambda: dual_iso(P).ok),
    ]


def _n5_facts():
    P = n5()
    X = build_pair_space(P)
    B = RegularOpenAlgebra(X)
    E = embed(P)
    S = generated_subalgebra(E.target, [E(x) for x in P.names])
    fix = n5_fixpoints(X)
    return [
        Fact("N5 parses with b below a", lambda: P.leq("b", "a") and len(P) == 5),
        Fact("N5: down set of a is {0,b,a}", lambda: down_set(P, "a") == {"0", "b", "a"}),
        Fact("N5 is a bounded non-distributive lattice", lambda: (lambda i: i.is_lattice and not i.is_distributive)(classify(P))),
        Fact("N5 pair space has 12 points and no (b,a)", lambda: len(X) == 12 and ("b", "a") not in set(X.names())),
        Fact("N5: regular opens are exactly S1..S8", lambda: sorted(map(sorted, (u.names() for u in B.carrier))) == sorted(map(sorted, fix))),
        Fact("N5: brute-force enumeration finds exactly S1..S8", lambda: sorted(map(sorted, (u.names() for u in oracle_ro_enumerate(X)))) == sorted(map(sorted, fix))),
        Fact("N5: minimal points are (b,c), (a,b), (c,a)", lambda: {X.name(k) for k in range(len(X)) if X.minimal_mask() >> k & 1} == {("b", "c"), ("a", "b"), ("c", "a")}),
        Fact("N5: e(a)=S6, e(b)=S3, e(c)=S4", lambda: all(E(x).names() == fix[i - 1] for x, i in N5_E.items())),
        Fact("N5: image of 1 is the whole space", lambda: E("1") == E.target.top),
        Fact("N5: generated subalgebra is the whole algebra", lambda: S.equals_parent()),
        Fact("N5: generated subalgebra is dense", lambda: is_dense_subalgebra(E.target, S)),
        Fact("N5: is the MacNeille completion of its generated subalgebra", lambda: macneille_iso_check(E.target, S) is True),
        Fact("N5: exact joins are preserved", lambda: check_preservation(E, "exact_joins").exact_joins_ok),
    ]


def _general_facts():
    from .zoo import all_lattices, catalog, footnote_check, search_problem1, survey_problem2

    def distributive_exact_meets():
        for L in all_lattices(7, nmin=2):
            if classify(L).is_distributive:
                if not check_preservation(embed(L), "exact_meets").exact_meets_ok:
                    return False
        return True

    def survey_records():
        recs = {r.label: r for r in survey_problem2(5) if r.label in ("m3", "n5")}
        five = [r for r in survey_problem2(5) if r.size == 5 and r.distributive]
        return (
            recs["m3"].carrier_sizes == (64, 8) and not recs["m3"].macneille_iso
            and recs["n5"].carrier_sizes == (8, 8) and recs["n5"].macneille_iso
            and all(r.macneille_iso for r in five)
        )

    def five_element_stream():
        from .order import canonical_form
        from .zoo import enumerate_lattices

        keys = {canonical_form(L) for L in enumerate_lattices(5)}
        return canonical_form(m3()) in keys and canonical_form(n5()) in keys

    return [
        Fact("b4 with a new top: catalog entry has 5 elements", lambda: len(catalog("b4_plus_top")) == 5),
        Fact("image of 1 is the whole space for every lattice up to 6 elements", lambda: all((lambda E: E(L.top) == E.target.top)(embed(L)) for L in all_lattices(6, nmin=2))),
        Fact("distributive lattices up to 7 elements: exact meets preserved", distributive_exact_meets),
        Fact("dual embedding of N5 preserves finite joins", lambda: check_preservation(dual_embed(n5()), "finite_joins").finite_joins_ok),
        Fact("b4 with a new top: swapped image differs from the dual embedding at an atom", footnote_check),
        Fact("5-element lattices include M3 and N5", five_element_stream),
        Fact("survey records for M3, N5 and distributive 5-element lattices", survey_records),
        Fact("distributive lattices embed into a finite powerset (bounded search)", lambda: search_problem1(catalog("boolean2")).kind == "embedding_found" and search_problem1(catalog("b4_plus_top")).kind == "embedding_found"),
    ]


def paper_facts() -> list:
    return _m3_facts() + _n5_facts() + _general_facts()


def run_facts(facts=None, stream=None) -> list:
    """Evaluate each fact; returns (label, passed, seconds, error) tuples."""
    results = []
    for fact in facts if facts is not None else paper_facts():
        t0 = time.perf_counter()
        try:
            ok, err = bool(fact.check()), None
        except Exception as exc:  # a crash counts as a failure, reported as such
            ok, err = False, f"{type(exc).__name__}: {exc}"
        dt = time.perf_counter() - t0
        results.append((fact.label, ok, dt, err))
        if stream is not None:
            line = f"{'PASS' if ok else 'FAIL'}  {fact.label}"
            if err:
                line += f"  ({err})"
            print(line, file=stream)
    return results
