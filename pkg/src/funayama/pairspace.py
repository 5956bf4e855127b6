"""The pair space of a bounded poset and its downset topology.

Points are the pairs ``(a, b)`` with ``a`` not below ``b``; ``(a, b)`` sits
under ``(c, d)`` when ``a <= c`` and ``b >= d``.  Opens are the downsets, so
``box`` is the interior and ``diamond`` the closure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import DegeneratePoset, NotBounded, SpaceMismatch, UnknownPair
from .order import Poset, iter_bits, mask_of


@dataclass(frozen=True, eq=False)
class PairSpace:
    base: Poset
    pairs: tuple
    below_masks: tuple = field(repr=False)
    above_masks: tuple = field(repr=False)
    _index: dict = field(init=False, repr=False)
    _reg_cache: dict = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {p: k for k, p in enumerate(self.pairs)})
        object.__setattr__(self, "_reg_cache", {})

    def __len__(self) -> int:
        return len(self.pairs)

    def __repr__(self):
        return f"PairSpace(base={self.base.names!r}, size={len(self.pairs)})"

    @property
    def full_mask(self) -> int:
        return (1 << len(self.pairs)) - 1

    @property
    def full(self) -> "PairSet":
        return PairSet(self, self.full_mask)

    @property
    def empty(self) -> "PairSet":
        return PairSet(self, 0)

    def index(self, pair) -> int:
        a, b = pair
        key = (self.base.index(a), self.base.index(b)) if a in self.base and b in self.base else None
        if key is None or key not in self._index:
            raise UnknownPair(f"{pair!r} is not a point of this pair space")
        return self._index[key]

    def name(self, k: int) -> tuple:
        a, b = self.pairs[k]
        return (self.base.names[a], self.base.names[b])

    def names(self) -> list:
        return [self.name(k) for k in range(len(self.pairs))]

    def sq_leq(self, p, q) -> bool:
        return bool(self.below_masks[self.index(q)] >> self.index(p) & 1)

    def pairset(self, pairs: Iterable) -> "PairSet":
        return PairSet(self, mask_of(self.index(p) for p in pairs))

    def minimal_mask(self) -> int:
        return mask_of(k for k, d in enumerate(self.below_masks) if d == 1 << k)

    # mask-level operators; the PairSet functions below wrap these

    def diamond_mask(self, mask: int) -> int:
        out = 0
        above = self.above_masks
        for k in iter_bits(mask):
            out |= above[k]
        return out

    def box_mask(self, mask: int) -> int:
        full = self.full_mask
        return full & ~self.diamond_mask(full & ~mask)

    def regularize_mask(self, mask: int) -> int:
        cache = self._reg_cache
        hit = cache.get(mask)
        if hit is None:
            hit = self.box_mask(self.diamond_mask(mask))
            cache[mask] = hit
        return hit

    def is_downset_mask(self, mask: int) -> bool:
        below = self.below_masks
        return all(below[k] & ~mask == 0 for k in iter_bits(mask))

    def hasse_edges(self) -> list:
        """Covering pairs ``(upper, lower)`` of the pair order, as indices."""
        edges = []
        for hi, d in enumerate(self.below_masks):
            strict = d & ~(1 << hi)
            for lo in iter_bits(strict):
                if not strict & self.above_masks[lo] & ~(1 << lo):
                    edges.append((hi, lo))
        edges.sort()
        return edges


@dataclass(frozen=True)
class PairSet:
    """An immutable subset of a pair space, stored as a bitmask."""

    space: PairSpace
    mask: int

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[tuple]:
        return (self.space.name(k) for k in iter_bits(self.mask))

    def __contains__(self, pair) -> bool:
        try:
            return bool(self.mask >> self.space.index(pair) & 1)
        except UnknownPair:
            return False

    def __bool__(self) -> bool:
        return self.mask != 0

    def __repr__(self):
        inner = ", ".join(f"({a},{b})" for a, b in self)
        return "{" + inner + "}"

    def names(self) -> frozenset:
        return frozenset(self)

    def sorted_pairs(self) -> list:
        return list(self)

    def _other(self, other) -> int:
        if not isinstance(other, PairSet):
            return NotImplemented
        if other.space is not self.space:
            raise SpaceMismatch("pair sets live in different pair spaces")
        return other.mask

    def __and__(self, other):
        m = self._other(other)
        return m if m is NotImplemented else PairSet(self.space, self.mask & m)

    def __or__(self, other):
        m = self._other(other)
        return m if m is NotImplemented else PairSet(self.space, self.mask | m)

    def __sub__(self, other):
        m = self._other(other)
        return m if m is NotImplemented else PairSet(self.space, self.mask & ~m)

    def __le__(self, other):
        m = self._other(other)
        return m if m is NotImplemented else self.mask & ~m == 0

    def __lt__(self, other):
        m = self._other(other)
        return m if m is NotImplemented else (self.mask & ~m == 0 and self.mask != m)

    def __ge__(self, other):
        m = self._other(other)
        return m if m is NotImplemented else m & ~self.mask == 0

    def __gt__(self, other):
        m = self._other(other)
        return m if m is NotImplemented else (m & ~self.mask == 0 and self.mask != m)

    def sort_key(self) -> tuple:
        return (len(self), tuple(iter_bits(self.mask)))


def build_pair_space(P: Poset) -> PairSpace:
    bottom, top = P.bottom_index, P.top_index
    if bottom is None or top is None:
        raise NotBounded("the pair space needs a bounded poset; adjoin bounds first")
    if bottom == top:
        raise DegeneratePoset("0 = 1, so the pair space is empty")
    n = len(P)
    pairs = tuple((a, b) for a in range(n) for b in range(n) if not P.leq_i(a, b))
    index = {p: k for k, p in enumerate(pairs)}
    below = []
    for a, b in pairs:
        # (c, d) under (a, b): c <= a and d >= b
        below.append(
            mask_of(
                index[(c, d)]
                for c in iter_bits(P.down[a])
                for d in iter_bits(P.up[b])
                if (c, d) in index
            )
        )
    above = [0] * len(pairs)
    for k, d in enumerate(below):
        for j in iter_bits(d):
            above[j] |= 1 << k
    return PairSpace(P, pairs, tuple(below), tuple(above))


def _check(X: PairSpace, U: PairSet) -> int:
    if U.space is not X:
        raise SpaceMismatch("pair set does not belong to this pair space")
    return U.mask


def below(X: PairSpace, p) -> PairSet:
    return PairSet(X, X.below_masks[X.index(p)])


def box(X: PairSpace, U: PairSet) -> PairSet:
    return PairSet(X, X.box_mask(_check(X, U)))


def diamond(X: PairSpace, U: PairSet) -> PairSet:
    return PairSet(X, X.diamond_mask(_check(X, U)))


def regularize(X: PairSpace, U: PairSet) -> PairSet:
    """Interior of the closure; accepts any subset, not only downsets."""
    return PairSet(X, X.regularize_mask(_check(X, U)))


def is_downset(X: PairSpace, U: PairSet) -> bool:
    return X.is_downset_mask(_check(X, U))


# -- the swap isomorphism onto the dual pair space ---------------------


@dataclass(frozen=True)
class DualIso:
    space: PairSpace
    dual_space: PairSpace
    mapping: dict
    bijective: bool
    order_isomorphism: bool

    @property
    def ok(self) -> bool:
        return self.bijective and self.order_isomorphism

    def apply(self, U: PairSet) -> PairSet:
        """Image of a pair set under the swap map."""
        _check(self.space, U)
        return self.dual_space.pairset(self.mapping[p] for p in U)


def swap_iso(X: PairSpace, Y: PairSpace) -> DualIso:
    """Swap map ``(a, b) -> (b, a)`` from ``X`` to ``Y``, checked exhaustively.

    ``Y`` must be the pair space of the order dual of ``X.base``.
    """
    if Y.base.names != X.base.names or Y.base.down != X.base.up:
        raise ValueError("second space is not built on the dual of the first base")
    mapping = {}
    image_index = []
    for k in range(len(X)):
        a, b = X.name(k)
        try:
            image_index.append(Y.index((b, a)))
        except UnknownPair:
            return DualIso(X, Y, mapping, False, False)
        mapping[(a, b)] = (b, a)
    bijective = len(set(image_index)) == len(X) == len(Y)
    order_iso = bijective and all(
        bool(X.below_masks[q] >> p & 1) == bool(Y.below_masks[image_index[q]] >> image_index[p] & 1)
        for p in range(len(X))
        for q in range(len(X))
    )
    return DualIso(X, Y, mapping, bijective, order_iso)


def dual_iso(P: Poset) -> DualIso:
    """Swap isomorphism from X_P onto the pair space of the dual poset."""
    return swap_iso(build_pair_space(P), build_pair_space(P.dual()))
