"""The complete Boolean algebra of regular opens of a pair space.

Meets are intersections, joins regularize the union, and the complement of
``U`` is everything outside its closure.  On a finite space the atoms are
the regularizations of the singleton minimal points, so the algebra has
``2 ** len(atoms)`` elements and its size never needs the full carrier.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Union

from .config import ORACLE_MAX_PAIRS, resolve_budget
from .errors import CapacityExceeded, ForeignElement, SpaceMismatch
from .order import iter_bits
from .pairspace import PairSet, PairSpace


def _sort_key(mask: int) -> tuple:
    return (mask.bit_count(), tuple(iter_bits(mask)))


class RegularOpenAlgebra:
    """Regular opens of ``space``.

    The carrier is materialized on first access to :attr:`carrier`; atoms,
    size and the Boolean operations work without it.
    """

    def __init__(self, space: PairSpace, budget: Optional[int] = None):
        self.space = space
        self.budget = resolve_budget(budget)

    def __repr__(self):
        return f"RegularOpenAlgebra(pairs={len(self.space)}, size={self.size})"

    # -- membership and element construction --------------------------

    def contains_mask(self, mask: int) -> bool:
        X = self.space
        return X.is_downset_mask(mask) and X.regularize_mask(mask) == mask

    def __contains__(self, U) -> bool:
        return isinstance(U, PairSet) and U.space is self.space and self.contains_mask(U.mask)

    def element(self, pairs: Iterable) -> PairSet:
        U = self.space.pairset(pairs)
        self.require(U)
        return U

    def require(self, U: PairSet) -> int:
        if not isinstance(U, PairSet):
            raise ForeignElement(f"{U!r} is not a pair set")
        if U.space is not self.space:
            raise SpaceMismatch("pair set belongs to a different pair space")
        if not self.contains_mask(U.mask):
            raise ForeignElement(f"{U!r} is not a regular open of this space")
        return U.mask

    @property
    def bottom(self) -> PairSet:
        return self.space.empty

    @property
    def top(self) -> PairSet:
        return self.space.full

    # -- operations on masks ------------------------------------------

    def meet_mask(self, masks: Iterable[int]) -> int:
        out = self.space.full_mask
        for m in masks:
            out &= m
        return out

    def join_mask(self, masks: Iterable[int]) -> int:
        union = 0
        for m in masks:
            union |= m
        return self.space.regularize_mask(union)

    def not_mask(self, mask: int) -> int:
        X = self.space
        return X.full_mask & ~X.diamond_mask(mask)

    # -- structure ----------------------------------------------------

    @cached_property
    def atom_masks(self) -> tuple:
        X = self.space
        atoms = {X.regularize_mask(1 << k) for k in iter_bits(X.minimal_mask())}
        return tuple(sorted(atoms, key=_sort_key))

    @property
    def atoms(self) -> list:
        return [PairSet(self.space, m) for m in self.atom_masks]

    @property
    def size(self) -> int:
        return 2 ** len(self.atom_masks)

    def __len__(self) -> int:
        return self.size

    @cached_property
    def generator_masks(self) -> tuple:
        """Distinct principal regular opens, one per point before deduplication."""
        X = self.space
        gens = {X.regularize_mask(d) for d in X.below_masks}
        return tuple(sorted(gens, key=_sort_key))

    @property
    def is_materialized(self) -> bool:
        return "carrier_masks" in self.__dict__

    @cached_property
    def carrier_masks(self) -> tuple:
        gens = self.generator_masks
        cost = self.size * len(gens)
        if cost > self.budget:
            raise CapacityExceeded(
                f"join-closure needs {cost} join evaluations "
                f"({self.size} elements x {len(gens)} generators), budget is {self.budget}",
                stage="ro-algebra",
            )
        X = self.space
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for u in frontier:
                for g in gens:
                    v = X.regularize_mask(u | g)
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        if len(seen) != self.size:
            raise AssertionError(
                f"join-closure produced {len(seen)} regular opens, atom count predicts {self.size}"
            )
        return tuple(sorted(seen, key=_sort_key))

    @property
    def carrier(self) -> list:
        return [PairSet(self.space, m) for m in self.carrier_masks]


def build_ro_algebra(X: PairSpace, budget: Optional[int] = None) -> RegularOpenAlgebra:
    """Build the algebra and materialize its carrier by join-closure."""
    B = RegularOpenAlgebra(X, budget)
    B.carrier_masks
    return B


def ro_meet(B: RegularOpenAlgebra, sets: Iterable[PairSet]) -> PairSet:
    return PairSet(B.space, B.meet_mask([B.require(U) for U in sets]))


def ro_join(B: RegularOpenAlgebra, sets: Iterable[PairSet]) -> PairSet:
    return PairSet(B.space, B.join_mask([B.require(U) for U in sets]))


def ro_not(B: RegularOpenAlgebra, U: PairSet) -> PairSet:
    return PairSet(B.space, B.not_mask(B.require(U)))


def atoms(B: RegularOpenAlgebra) -> list:
    return B.atoms


# -- subalgebras -------------------------------------------------------


@dataclass(frozen=True)
class Subalgebra:
    parent: RegularOpenAlgebra
    masks: frozenset

    @property
    def carrier(self) -> list:
        return [PairSet(self.parent.space, m) for m in sorted(self.masks, key=_sort_key)]

    def __len__(self) -> int:
        return len(self.masks)

    def __contains__(self, U) -> bool:
        return isinstance(U, PairSet) and U.space is self.parent.space and U.mask in self.masks

    @property
    def atom_masks(self) -> tuple:
        nonzero = [m for m in self.masks if m]
        found = [m for m in nonzero if not any(o != m and o & ~m == 0 for o in nonzero)]
        return tuple(sorted(found, key=_sort_key))

    @property
    def atoms(self) -> list:
        return [PairSet(self.parent.space, m) for m in self.atom_masks]

    def equals_parent(self) -> bool:
        return len(self.masks) == self.parent.size


def generated_subalgebra(
    B: RegularOpenAlgebra, gens: Iterable[PairSet], budget: Optional[int] = None
) -> Subalgebra:
    """Least subset containing ``gens``, 0 and 1, closed under meet and complement."""
    budget = B.budget if budget is None else budget
    start = [B.require(U) for U in gens]
    full = B.space.full_mask
    elements = []
    seen = set()
    work = []

    def add(m):
        if m not in seen:
            seen.add(m)
            work.append(m)

    for m in [0, full, *start]:
        add(m)
    spent = 0
    while work:
        x = work.pop()
        add(B.not_mask(x))
        for y in elements:
            add(x & y)
        spent += len(elements) + 1
        if spent > budget:
            raise CapacityExceeded(
                f"subalgebra closure exceeded {budget} operations", stage="subalgebra"
            )
        elements.append(x)
    return Subalgebra(B, frozenset(seen))


def is_dense_subalgebra(B: RegularOpenAlgebra, S: Subalgebra) -> bool:
    """Every nonzero element of ``B`` has a nonzero element of ``S`` below it.

    Each nonzero element of a finite Boolean algebra lies above an atom, so
    testing the atoms of ``B`` decides the full condition.
    """
    if S.parent is not B:
        raise ForeignElement("subalgebra belongs to a different algebra")
    nonzero = [m for m in S.masks if m]
    return all(any(s & ~a == 0 for s in nonzero) for a in B.atom_masks)


def macneille_iso_check(B: RegularOpenAlgebra, S: Subalgebra) -> bool:
    """Whether ``B`` is (isomorphic to) the MacNeille completion of ``S``.

    For finite algebras this is density, which must coincide with equality.
    """
    dense = is_dense_subalgebra(B, S)
    if dense != S.equals_parent():
        raise AssertionError("density and carrier equality disagree on a finite algebra")
    return dense


# -- brute-force oracle ------------------------------------------------


def oracle_ro_enumerate(X: PairSpace, bound: int = ORACLE_MAX_PAIRS) -> list:
    """All downsets of ``X`` that are regularization fixpoints, by brute force.

    Downsets are generated once each from their antichains of maximal points.
    """
    n = len(X)
    if n > bound:
        raise CapacityExceeded(f"oracle bound is {bound} pairs, space has {n}", stage="oracle")
    below, above = X.below_masks, X.above_masks
    found = []

    def extend(start, antichain, downset):
        if X.box_mask(X.diamond_mask(downset)) == downset:
            found.append(downset)
        for k in range(start, n):
            if (below[k] | above[k]) & antichain:
                continue
            extend(k + 1, antichain | 1 << k, downset | below[k])

    extend(0, 0, 0)
    return [PairSet(X, m) for m in sorted(found, key=_sort_key)]


# -- axiom verification ------------------------------------------------


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    size: int
    checked: int
    exhaustive: bool
    first_violation: Optional[str] = None


TRIPLE_LIMIT = 300_000
PAIR_LIMIT = 1_000_000


def verify_boolean_axioms(
    A: Union[RegularOpenAlgebra, Subalgebra], samples: int = 20_000, seed: int = 0
) -> AxiomReport:
    """Check lattice, distributive and complement laws on a finite carrier.

    Pairs and triples run exhaustively below fixed limits and are sampled
    with a seeded generator above them.
    """
    B = A.parent if isinstance(A, Subalgebra) else A
    masks = sorted(A.masks, key=_sort_key) if isinstance(A, Subalgebra) else list(B.carrier_masks)
    X = B.space
    full = X.full_mask
    n = len(masks)
    index = {m: i for i, m in enumerate(masks)}
    rng = random.Random(seed)
    checked = 0
    exhaustive = True

    def join(x, y):
        return X.regularize_mask(x | y)

    def neg(x):
        return full & ~X.diamond_mask(x)

    def fail(msg):
        return AxiomReport(False, n, checked, exhaustive, msg)

    def show(*ms):
        return ", ".join(repr(PairSet(X, m)) for m in ms)

    if 0 not in index or full not in index:
        return fail("carrier lacks bottom or top")
    for x in masks:
        checked += 1
        nx = neg(x)
        if nx not in index:
            return fail(f"complement of {show(x)} leaves the carrier")
        if neg(nx) != x:
            return fail(f"double complement fails at {show(x)}")
        if x & nx != 0 or join(x, nx) != full:
            return fail(f"complement laws fail at {show(x)}")
        if join(x, x) != x or join(x, 0) != x or x & full != x or join(x, full) != full:
            return fail(f"idempotence or bound laws fail at {show(x)}")

    if n * n <= PAIR_LIMIT:
        pairs = ((x, y) for x in masks for y in masks)
    else:
        exhaustive = False
        pairs = ((rng.choice(masks), rng.choice(masks)) for _ in range(samples))
    for x, y in pairs:
        checked += 1
        m, j = x & y, join(x, y)
        if m not in index or j not in index:
            return fail(f"meet or join of {show(x, y)} leaves the carrier")
        if j != join(y, x):
            return fail(f"join not commutative at {show(x, y)}")
        if x & j != x or join(x, m) != x:
            return fail(f"absorption fails at {show(x, y)}")
        if (m == x) != (x & ~y == 0) or (j == y) != (x & ~y == 0):
            return fail(f"order and operations disagree at {show(x, y)}")
        if neg(m) != join(neg(x), neg(y)) or neg(j) != neg(x) & neg(y):
            return fail(f"De Morgan fails at {show(x, y)}")

    if n ** 3 <= TRIPLE_LIMIT:
        table = [[index[join(x, y)] for y in masks] for x in masks]
        meet_t = [[index[x & y] for y in masks] for x in masks]
        for a in range(n):
            ja, ma = table[a], meet_t[a]
            for b in range(n):
                jab, mab = ja[b], ma[b]
                for c in range(n):
                    checked += 1
                    if table[jab][c] != ja[table[b][c]] or meet_t[mab][c] != ma[meet_t[b][c]]:
                        return fail(f"associativity fails at {show(masks[a], masks[b], masks[c])}")
                    if ma[table[b][c]] != table[mab][ma[c]]:
                        return fail(f"meet does not distribute at {show(masks[a], masks[b], masks[c])}")
                    if ja[meet_t[b][c]] != meet_t[jab][ja[c]]:
                        return fail(f"join does not distribute at {show(masks[a], masks[b], masks[c])}")
    else:
        exhaustive = False
        for _ in range(samples):
            x, y, z = rng.choice(masks), rng.choice(masks), rng.choice(masks)
            checked += 1
            if join(join(x, y), z) != join(x, join(y, z)):
                return fail(f"associativity fails at {show(x, y, z)}")
            if x & join(y, z) != join(x & y, x & z):
                return fail(f"meet does not distribute at {show(x, y, z)}")
            if join(x, y & z) != join(x, y) & join(x, z):
                return fail(f"join does not distribute at {show(x, y, z)}")
    return AxiomReport(True, n, checked, exhaustive)
