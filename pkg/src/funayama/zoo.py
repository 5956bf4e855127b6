"""Named lattices, enumeration up to isomorphism, and the open-problem harnesses.

Both harnesses gather bounded evidence only.  Neither settles the open
question it probes, and every record they emit says so.
"""

from __future__ import annotations

import json
import os
import re
import string
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional

from .config import ENUMERATION_MAX_SIZE, PROBLEM1_MAX_ATOMS, resolve_budget
from .embedding import dual_embed, embed, exact_join_info, exact_meet_info
from .errors import CapacityExceeded, NotALattice, UnknownName
from .facts import m3 as _m3, n5 as _n5
from .order import Poset, canonical_form, classify, from_covers, iter_bits, mask_of
from .pairspace import PairSet, swap_iso
from .roalgebra import generated_subalgebra, macneille_iso_check

BOUNDED_NOTE = "bounded evidence only; does not resolve the open problem"


# -- catalog -----------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    poset: Poset
    notes: str


def _square():
    return from_covers(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def chain(k: int) -> Poset:
    names = [str(i) for i in range(k)]
    return from_covers(names, list(zip(names, names[1:])))


def boolean(k: int) -> Poset:
    """Subsets of a k-letter alphabet; the empty set is named ``0``."""
    if k > 6:
        raise CapacityExceeded("boolean lattices above 6 atoms are out of range", stage="catalog")
    letters = string.ascii_lowercase[:k]
    names = ["".join(letters[i] for i in range(k) if m >> i & 1) or "0" for m in range(1 << k)]
    names_sorted = sorted(range(1 << k), key=lambda m: (m.bit_count(), m))
    order = [names[m] for m in names_sorted]
    return Poset.from_leq(order, lambda x, y: set(x.replace("0", "")) <= set(y.replace("0", "")))


def _b4_plus_top():
    return from_covers(
        ["0", "a", "b", "u", "1"],
        [("0", "a"), ("0", "b"), ("a", "u"), ("b", "u"), ("u", "1")],
    )


def _b4_plus_bottom():
    return from_covers(
        ["0", "z", "a", "b", "1"],
        [("0", "z"), ("z", "a"), ("z", "b"), ("a", "1"), ("b", "1")],
    )


_FIXED = {
    "m3": (_m3, "the five-element diamond M3: three pairwise incomparable atoms a, b, c"),
    "n5": (_n5, "the pentagon N5: 0 < b < a < 1 and 0 < c < 1"),
    "m3_dual": (lambda: _m3().dual(), "order dual of m3"),
    "n5_dual": (lambda: _n5().dual(), "order dual of n5"),
    "b4_plus_top": (_b4_plus_top, "four-element Boolean algebra {0,a,b,u} with a new top 1 above u"),
    "b4_plus_bottom": (_b4_plus_bottom, "four-element Boolean algebra {z,a,b,1} with a new bottom 0 below z"),
    "diamond": (_square, "the four-element Boolean algebra 0 < a, b < 1"),
}


def catalog_entry(name: str) -> CatalogEntry:
    if name in _FIXED:
        build, notes = _FIXED[name]
        return CatalogEntry(name, build(), notes)
    m = re.fullmatch(r"(chain|boolean)(\d+)", name)
    if m:
        kind, k = m.group(1), int(m.group(2))
        if kind == "chain" and k >= 1:
            return CatalogEntry(name, chain(k), f"chain 0 < 1 < ... < {k - 1}")
        if kind == "boolean":
            return CatalogEntry(name, boolean(k), f"Boolean lattice of subsets of a {k}-element set")
    raise UnknownName(f"no catalog entry named {name!r}")


def catalog(name: str) -> Poset:
    return catalog_entry(name).poset


CATALOG_NAMES = tuple(sorted(_FIXED)) + ("chain{k}", "boolean{k}")


# -- enumeration -------------------------------------------------------


def _downsets(P: Poset) -> list:
    n = len(P)
    found = []

    def extend(start, antichain, downset):
        found.append(downset)
        for k in range(start, n):
            if (P.down[k] | P.up[k]) & antichain:
                continue
            extend(k + 1, antichain | 1 << k, downset | P.down[k])

    extend(0, 0, 0)
    return found


def enumerate_posets(n: int) -> list:
    """One representative per isomorphism class of n-element posets.

    Every poset arises from a smaller one by adding a maximal element whose
    strict down-set is a downset; canonical forms reject repeats.
    """
    if n < 0:
        raise ValueError("negative size")
    if n > ENUMERATION_MAX_SIZE:
        raise CapacityExceeded(f"poset enumeration is capped at {ENUMERATION_MAX_SIZE}", stage="enumeration")
    level = {canonical_form(Poset((), ())): Poset((), ())}
    for size in range(1, n + 1):
        nxt = {}
        for P in level.values():
            for d in _downsets(P):
                Q = Poset(tuple(str(i) for i in range(size)), P.down + (d | 1 << (size - 1),))
                nxt.setdefault(canonical_form(Q), Q)
        level = nxt
    return [level[k] for k in sorted(level)]


def _lattice_names(n: int) -> list:
    middle = list(string.ascii_lowercase[: n - 2]) if n > 2 else []
    return ["0", *middle, "1"]


def enumerate_lattices(n: int, bound: int = ENUMERATION_MAX_SIZE) -> Iterator[Poset]:
    """Stream one lattice per isomorphism class with exactly ``n`` elements.

    Lattices are the bounded extensions of (n-2)-element posets that pass
    the lattice test; names are ``0``, ``a``, ``b``, ..., ``1``.
    """
    if n > bound:
        raise CapacityExceeded(f"lattice enumeration is capped at {bound} elements", stage="enumeration")
    if n <= 0:
        return
    if n == 1:
        yield Poset(("0",), (1,))
        return
    seen = set()
    names = _lattice_names(n)
    for Q in enumerate_posets(n - 2):
        down = [1]
        down += [(d << 1) | 1 for d in Q.down]
        down.append((1 << n) - 1)
        L = Poset(tuple(names), tuple(down))
        if not classify(L).is_lattice:
            continue
        key = canonical_form(L)
        if key in seen:
            continue
        seen.add(key)
        yield L


def all_lattices(nmax: int, nmin: int = 1) -> Iterator[Poset]:
    for n in range(nmin, nmax + 1):
        yield from enumerate_lattices(n)


_LABELLED = ("m3", "n5", "diamond", "b4_plus_top", "b4_plus_bottom")


@lru_cache(maxsize=None)
def _label_keys() -> dict:
    return {canonical_form(catalog(name)): name for name in _LABELLED}


def catalog_label(P: Poset) -> Optional[str]:
    """Catalog name of a lattice isomorphic to ``P``, if any."""
    hit = _label_keys().get(canonical_form(P))
    if hit is None and len(P) and all((P.down[i] | P.up[i]) == P.full_mask for i in range(len(P))):
        hit = f"chain{len(P)}"
    return hit


# -- problem 1: bounded search for embeddings into finite powersets ----


@dataclass(frozen=True)
class Problem1Status:
    kind: str
    bound: Optional[int] = None
    atoms: Optional[int] = None
    witness: Optional[dict] = None
    note: str = BOUNDED_NOTE

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "bound": self.bound, "atoms": self.atoms, "note": self.note}
        out["witness"] = (
            None
            if self.witness is None
            else {str(k): sorted(v) for k, v in self.witness.items()}
        )
        return out


SKIPPED = Problem1Status("skipped", note=BOUNDED_NOTE)


def _powerset_constraints(L: Poset) -> list:
    """(kind, subset mask, value) triples an admissible map must satisfy.

    ``kind`` is ``"meet"`` (images intersect to the value's image) or
    ``"join"`` (images unite to it).  Subsets that contain their own meet or
    join are implied by monotonicity and skipped.
    """
    n = len(L)
    out = set()
    for mask in range(1 << n):
        m = L.meet_mask(mask)
        if m is not None and not mask >> m & 1:
            out.add(("meet", mask, m))
        exists, value, exact, _ = exact_meet_info(L, mask)
        if exists and exact and not mask >> value & 1:
            out.add(("meet", mask, value))
        exists, value, exact, _ = exact_join_info(L, mask)
        if exists and exact and not mask >> value & 1:
            out.add(("join", mask, value))
    return sorted(out)


def powerset_map_violations(L: Poset, masks, k: int) -> list:
    """Constraints a map ``L -> subsets of k atoms`` breaks (empty means admissible).

    Admissible maps are order embeddings preserving all finite meets, all
    exact joins and all exact meets.
    """
    full = (1 << k) - 1
    bad = []
    n = len(L)
    for a in range(n):
        for b in range(n):
            if L.leq_i(a, b) != (masks[a] & ~masks[b] == 0):
                bad.append(("order", (L.names[a], L.names[b])))
    for kind, mask, value in _powerset_constraints(L):
        acc = full if kind == "meet" else 0
        for s in iter_bits(mask):
            acc = acc & masks[s] if kind == "meet" else acc | masks[s]
        if acc != masks[value]:
            bad.append((kind, tuple(L.names[i] for i in iter_bits(mask))))
    return bad


def _search_k(L: Poset, k: int, constraints: list, budget: int, spent: list):
    n = len(L)
    order = L.linear_extension()
    pos = {e: p for p, e in enumerate(order)}
    by_pos = [[] for _ in range(n)]
    for kind, mask, value in constraints:
        last = max(pos[i] for i in iter_bits(mask | 1 << value))
        by_pos[last].append((kind, mask, value))
    full = (1 << k) - 1
    assign = [None] * n

    def consistent(e, m):
        for f in order[: pos[e]]:
            mf = assign[f]
            if L.leq_i(f, e) != (mf & ~m == 0) or L.leq_i(e, f) != (m & ~mf == 0):
                return False
        assign[e] = m
        for kind, mask, value in by_pos[pos[e]]:
            acc = full if kind == "meet" else 0
            for s in iter_bits(mask):
                acc = acc & assign[s] if kind == "meet" else acc | assign[s]
            if acc != assign[value]:
                assign[e] = None
                return False
        return True

    def rec(p, used):
        if p == n:
            return True
        e = order[p]
        for t in range(k - used + 1):
            fresh = ((1 << t) - 1) << used
            for old in range(1 << used):
                spent[0] += 1
                if spent[0] > budget:
                    raise CapacityExceeded(f"search exceeded {budget} nodes", stage="problem1")
                m = old | fresh
                if consistent(e, m) and rec(p + 1, used + t):
                    return True
                assign[e] = None
        return False

    if rec(0, 0):
        return tuple(assign)
    return None


def search_problem1(L: Poset, max_atoms: int = PROBLEM1_MAX_ATOMS, budget: Optional[int] = None) -> Problem1Status:
    """Search maps into the powerset of k atoms, k = 0..max_atoms.

    A hit is an order embedding that preserves finite meets, exact joins
    and exact meets.  New atoms are introduced in index order, which removes
    the atom-permutation symmetry without losing any map up to relabeling.
    """
    if not classify(L).is_lattice:
        raise NotALattice("the embedding search needs a lattice")
    if max_atoms > 12:
        raise CapacityExceeded("at most 12 atoms are supported", stage="problem1")
    budget = resolve_budget(budget)
    constraints = _powerset_constraints(L)
    spent = [0]
    for k in range(max_atoms + 1):
        found = _search_k(L, k, constraints, budget, spent)
        if found is not None:
            witness = {L.names[i]: tuple(iter_bits(found[i])) for i in range(len(L))}
            return Problem1Status("embedding_found", bound=max_atoms, atoms=k, witness=witness)
    return Problem1Status("none_within_bound", bound=max_atoms)


def atom_indexed_map(atom_masks, images) -> tuple:
    """Re-express images as sets of atom indices (bit i for the i-th atom below)."""
    return tuple(mask_of(i for i, a in enumerate(atom_masks) if a & ~m == 0) for m in images)


# -- problem 2 survey --------------------------------------------------


@dataclass(frozen=True)
class SearchRecord:
    canonical_form: str
    size: int
    distributive: bool
    macneille_iso: bool
    carrier_sizes: tuple
    problem1_status: Problem1Status = field(default=SKIPPED)
    label: Optional[str] = None
    covers: tuple = ()
    elements: tuple = ()

    def to_dict(self) -> dict:
        return {
            "canonical_form": self.canonical_form,
            "size": self.size,
            "distributive": self.distributive,
            "macneille_iso": self.macneille_iso,
            "carrier_sizes": list(self.carrier_sizes),
            "problem1_status": self.problem1_status.to_dict(),
            "label": self.label,
            "elements": list(self.elements),
            "covers": [list(c) for c in self.covers],
            "note": BOUNDED_NOTE,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_dict(cls, d: dict) -> "SearchRecord":
        p1 = d.get("problem1_status") or {}
        witness = p1.get("witness")
        status = Problem1Status(
            kind=p1.get("kind", "skipped"),
            bound=p1.get("bound"),
            atoms=p1.get("atoms"),
            witness=None if witness is None else {k: tuple(v) for k, v in witness.items()},
        )
        return cls(
            canonical_form=d["canonical_form"],
            size=d["size"],
            distributive=d["distributive"],
            macneille_iso=d["macneille_iso"],
            carrier_sizes=tuple(d["carrier_sizes"]),
            problem1_status=status,
            label=d.get("label"),
            elements=tuple(d.get("elements", ())),
            covers=tuple(tuple(c) for c in d.get("covers", ())),
        )


def analyze_for_survey(L: Poset, problem1_atoms: Optional[int] = None, budget: Optional[int] = None) -> SearchRecord:
    info = classify(L)
    E = embed(L, budget)
    B = E.target
    S = generated_subalgebra(B, [E(x) for x in L.names])
    iso = macneille_iso_check(B, S)
    status = SKIPPED if problem1_atoms is None else search_problem1(L, problem1_atoms, budget)
    return SearchRecord(
        canonical_form=canonical_form(L).hex(),
        size=len(L),
        distributive=info.is_distributive,
        macneille_iso=iso,
        carrier_sizes=(B.size, len(S)),
        problem1_status=status,
        label=catalog_label(L),
        elements=L.names,
        covers=tuple(L.covers()),
    )


def survey_problem2(
    nmax: int,
    out: Optional[str] = None,
    problem1_atoms: Optional[int] = None,
    resume: bool = True,
    budget: Optional[int] = None,
) -> list:
    """Compare the regular-open algebra with the generated subalgebra for every lattice up to ``nmax``.

    With ``out`` set, records are appended to a JSON-lines file as they are
    produced, and records already present there are reused on restart.
    """
    done = {}
    if out is not None and resume and os.path.exists(out):
        with open(out, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    rec = SearchRecord.from_dict(json.loads(line))
                    done[rec.canonical_form] = rec
    sink = None
    if out is not None:
        sink = open(out, "a" if resume else "w", encoding="utf-8")
    records = []
    try:
        for L in all_lattices(nmax):
            key = canonical_form(L).hex()
            if key in done:
                records.append(done[key])
                continue
            rec = analyze_for_survey(L, problem1_atoms, budget)
            if rec.distributive and not rec.macneille_iso:
                raise AssertionError(f"distributive lattice {L.covers()} failed the density check")
            records.append(rec)
            if sink is not None:
                sink.write(rec.to_json() + "\n")
                sink.flush()
    finally:
        if sink is not None:
            sink.close()
    return records


# -- dual-embedding mismatch -------------------------------------------


@dataclass(frozen=True)
class DualMismatchRow:
    atom: object
    swapped_image: PairSet
    dual_image: PairSet
    literal_equal: bool
    complement_equal: bool


def dual_mismatch_report(P: Optional[Poset] = None) -> list:
    """Compare the swapped image of e(a) with the dual embedding at each atom a.

    ``literal_equal`` compares the two sets as they stand;
    ``complement_equal`` compares after moving the dual image through the
    complement, the Boolean isomorphism onto the dual algebra.
    """
    P = catalog("b4_plus_top") if P is None else P
    E = embed(P)
    D = dual_embed(P)
    f = swap_iso(E.target.space, D.target.space)
    if not f.ok:
        raise AssertionError("swap map is not an isomorphism")
    Q = E.source
    zero = Q.bottom_index
    atoms = [
        i for i in range(len(Q))
        if i != zero and Q.down[i] == (1 << i | 1 << zero)
    ]
    rows = []
    B = D.target
    for i in atoms:
        x = Q.names[i]
        fe = f.apply(E(x))
        de = D(x)
        neg = PairSet(B.space, B.not_mask(de.mask))
        rows.append(DualMismatchRow(x, fe, de, fe == de, fe == neg))
    return rows


def footnote_check(P: Optional[Poset] = None) -> bool:
    """True iff some atom a has f[e(a)] != e_dual(a) (defaults to b4_plus_top)."""
    return any(not row.literal_equal for row in dual_mismatch_report(P))
