"""Finite posets and lattices.

Elements are addressed by name at the public surface and by dense integer
index internally.  Every relation is stored as a tuple of bitmasks:
``down[i]`` has bit ``j`` set iff ``j <= i``.  All subset loops downstream
run on these masks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Iterator, Optional, Sequence

from .errors import CycleDetected, DuplicateName, UnknownElement


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


@dataclass(frozen=True)
class Poset:
    """Immutable finite partial order.

    Construct with :func:`from_covers` or :meth:`Poset.from_leq`; the
    constructor itself takes the down-set masks and checks the order axioms.
    """

    names: tuple
    down: tuple
    up: tuple = field(init=False, repr=False, compare=False)
    _index: dict = field(init=False, repr=False, compare=False)
    _cache: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = tuple(self.names)
        down = tuple(int(m) for m in self.down)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "down", down)
        if len(down) != len(names):
            raise ValueError("one down-set mask per element required")
        index = {}
        for i, name in enumerate(names):
            if name in index:
                raise DuplicateName(f"duplicate element name {name!r}")
            index[name] = i
        n = len(names)
        full = (1 << n) - 1
        for i, d in enumerate(down):
            if d & ~full:
                raise ValueError(f"down-set of {names[i]!r} references unknown indices")
            if not d >> i & 1:
                raise ValueError(f"order is not reflexive at {names[i]!r}")
        for i, d in enumerate(down):
            for j in iter_bits(d):
                if j != i and down[j] >> i & 1:
                    raise CycleDetected(
                        f"{names[i]!r} and {names[j]!r} are below each other"
                    )
                if down[j] & ~d:
                    raise ValueError(f"order is not transitive through {names[j]!r}")
        up = [0] * n
        for i, d in enumerate(down):
            for j in iter_bits(d):
                up[j] |= 1 << i
        object.__setattr__(self, "up", tuple(up))
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_cache", {})

    @classmethod
    def from_leq(cls, names: Sequence[Hashable], leq: Callable[[Hashable, Hashable], bool]) -> "Poset":
        names = tuple(names)
        down = [
            mask_of(j for j, y in enumerate(names) if leq(y, x)) for x in names
        ]
        return cls(names, tuple(down))

    # -- basic queries -------------------------------------------------

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name) -> bool:
        return name in self._index

    @property
    def full_mask(self) -> int:
        return (1 << len(self.names)) - 1

    def index(self, name) -> int:
        try:
            return self._index[name]
        except (KeyError, TypeError):
            raise UnknownElement(f"unknown element {name!r}") from None

    def indices(self, names: Iterable) -> int:
        """Bitmask of the named elements."""
        return mask_of(self.index(x) for x in names)

    def names_of(self, mask: int) -> frozenset:
        return frozenset(self.names[i] for i in iter_bits(mask))

    def leq_i(self, i: int, j: int) -> bool:
        return bool(self.down[j] >> i & 1)

    def leq(self, x, y) -> bool:
        return self.leq_i(self.index(x), self.index(y))

    def down_set(self, x) -> frozenset:
        return self.names_of(self.down[self.index(x)])

    def up_set(self, x) -> frozenset:
        return self.names_of(self.up[self.index(x)])

    @property
    def bottom_index(self) -> Optional[int]:
        full = self.full_mask
        for i, u in enumerate(self.up):
            if u == full:
                return i
        return None

    @property
    def top_index(self) -> Optional[int]:
        full = self.full_mask
        for i, d in enumerate(self.down):
            if d == full:
                return i
        return None

    @property
    def bottom(self):
        i = self.bottom_index
        return None if i is None else self.names[i]

    @property
    def top(self):
        i = self.top_index
        return None if i is None else self.names[i]

    # -- meets and joins -----------------------------------------------

    def meet_mask(self, mask: int) -> Optional[int]:
        """Index of the greatest lower bound of the elements in ``mask``."""
        key = ("meet", mask)
        cache = self._cache
        if key in cache:
            return cache[key]
        lower = self.full_mask
        for i in iter_bits(mask):
            lower &= self.down[i]
        result = None
        for m in iter_bits(lower):
            if lower & ~self.down[m] == 0:
                result = m
                break
        cache[key] = result
        return result

    def join_mask(self, mask: int) -> Optional[int]:
        key = ("join", mask)
        cache = self._cache
        if key in cache:
            return cache[key]
        upper = self.full_mask
        for i in iter_bits(mask):
            upper &= self.up[i]
        result = None
        for m in iter_bits(upper):
            if upper & ~self.up[m] == 0:
                result = m
                break
        cache[key] = result
        return result

    def meet2(self, i: int, j: int) -> Optional[int]:
        return self.meet_mask(1 << i | 1 << j)

    def join2(self, i: int, j: int) -> Optional[int]:
        return self.join_mask(1 << i | 1 << j)

    def meet(self, elements: Iterable):
        m = self.meet_mask(self.indices(elements))
        return None if m is None else self.names[m]

    def join(self, elements: Iterable):
        m = self.join_mask(self.indices(elements))
        return None if m is None else self.names[m]

    # -- derived structure ---------------------------------------------

    def dual(self) -> "Poset":
        return Poset(self.names, self.up)

    def cover_indices(self) -> list:
        """Hasse diagram edges ``(lower, upper)`` in index order."""
        edges = []
        for hi, d in enumerate(self.down):
            strict = d & ~(1 << hi)
            for lo in iter_bits(strict):
                between = strict & self.up[lo] & ~(1 << lo)
                if not between:
                    edges.append((lo, hi))
        edges.sort()
        return edges

    def covers(self) -> list:
        return [(self.names[a], self.names[b]) for a, b in self.cover_indices()]

    def linear_extension(self) -> list:
        """Indices sorted so every element comes after everything below it."""
        return sorted(range(len(self)), key=lambda i: (self.down[i].bit_count(), i))

    def permuted(self, order: Sequence[int]) -> "Poset":
        """The same poset with its elements listed in ``order``."""
        pos = {old: new for new, old in enumerate(order)}
        down = [mask_of(pos[j] for j in iter_bits(self.down[old])) for old in order]
        return Poset(tuple(self.names[i] for i in order), tuple(down))

    def renamed(self, mapping) -> "Poset":
        return Poset(tuple(mapping[x] for x in self.names), self.down)


def from_covers(names: Sequence[Hashable], covers: Iterable[Sequence[Hashable]]) -> Poset:
    """Poset whose order is the reflexive-transitive closure of ``covers``.

    Each cover is a ``(lower, upper)`` pair.
    """
    names = tuple(names)
    index = {}
    for i, name in enumerate(names):
        if name in index:
            raise DuplicateName(f"duplicate element name {name!r}")
        index[name] = i
    n = len(names)
    below = [0] * n
    for pair in covers:
        lo, hi = pair
        for x in (lo, hi):
            if x not in index:
                raise UnknownElement(f"cover ({lo!r}, {hi!r}) references unknown element {x!r}")
        if lo == hi:
            raise CycleDetected(f"element {lo!r} covers itself")
        below[index[hi]] |= 1 << index[lo]

    # Kahn's algorithm: anything left unprocessed lies on a cycle.
    indegree = [below[i].bit_count() for i in range(n)]
    above = [0] * n
    for hi in range(n):
        for lo in iter_bits(below[hi]):
            above[lo] |= 1 << hi
    ready = [i for i in range(n) if indegree[i] == 0]
    down = [1 << i for i in range(n)]
    done = 0
    while ready:
        lo = ready.pop()
        done += 1
        for hi in iter_bits(above[lo]):
            down[hi] |= down[lo]
            indegree[hi] -= 1
            if indegree[hi] == 0:
                ready.append(hi)
    if done < n:
        stuck = sorted(names[i] for i in range(n) if indegree[i] > 0)
        raise CycleDetected(f"covers form a cycle among {stuck!r}")
    return Poset(names, tuple(down))


def leq(P: Poset, x, y) -> bool:
    return P.leq(x, y)


def meet(P: Poset, elements: Iterable):
    return P.meet(elements)


def join(P: Poset, elements: Iterable):
    return P.join(elements)


def down_set(P: Poset, x) -> frozenset:
    return P.down_set(x)


def dual(P: Poset) -> Poset:
    return P.dual()


# -- classification ----------------------------------------------------


@dataclass(frozen=True)
class LatticeInfo:
    is_bounded: bool
    bottom: Optional[Hashable]
    top: Optional[Hashable]
    is_meet_semilattice: bool
    is_join_semilattice: bool
    is_lattice: bool
    is_distributive: bool

    def to_dict(self) -> dict:
        return {
            "is_bounded": self.is_bounded,
            "bottom": self.bottom,
            "top": self.top,
            "is_meet_semilattice": self.is_meet_semilattice,
            "is_join_semilattice": self.is_join_semilattice,
            "is_lattice": self.is_lattice,
            "is_distributive": self.is_distributive,
        }


def _all_pairs_have(P: Poset, op) -> bool:
    n = len(P)
    if n == 0:
        return False
    return all(op(i, j) is not None for i in range(n) for j in range(i + 1, n))


def is_distributive_lattice(P: Poset) -> bool:
    n = len(P)
    for x in range(n):
        for y in range(n):
            for z in range(y + 1, n):
                lhs = P.meet2(x, P.join2(y, z))
                rhs = P.join2(P.meet2(x, y), P.meet2(x, z))
                if lhs != rhs:
                    return False
    return True


def classify(P: Poset) -> LatticeInfo:
    """Direct definition checks; total on every poset, including the empty one."""
    bottom, top = P.bottom, P.top
    bounded = P.bottom_index is not None and P.top_index is not None
    msl = _all_pairs_have(P, P.meet2)
    jsl = _all_pairs_have(P, P.join2)
    lattice = msl and jsl
    return LatticeInfo(
        is_bounded=bounded,
        bottom=bottom,
        top=top,
        is_meet_semilattice=msl,
        is_join_semilattice=jsl,
        is_lattice=lattice,
        is_distributive=lattice and is_distributive_lattice(P),
    )


# -- bound adjunction --------------------------------------------------


@dataclass(frozen=True)
class BoundAdjunction:
    extended: Poset
    inject: dict
    added_bottom: Optional[Hashable]
    added_top: Optional[Hashable]
    original: Poset

    @property
    def changed(self) -> bool:
        return self.added_bottom is not None or self.added_top is not None

    def inject_mask(self, mask: int) -> int:
        """Translate an element mask of the original poset into the extended one."""
        return mask << 1 if self.added_bottom is not None else mask


def _fresh(base: str, taken) -> str:
    name = base
    while name in taken:
        name += "'"
    return name


def adjoin_bounds(P: Poset) -> BoundAdjunction:
    """Add a fresh bottom and/or top where missing, so the result has 0 != 1."""
    names = list(P.names)
    n = len(names)
    need_bottom = P.bottom_index is None
    need_top = P.top_index is None
    if not need_bottom and not need_top and n < 2:
        need_top = True
    taken = set(names)
    new_bottom = _fresh("bot", taken) if need_bottom else None
    if new_bottom is not None:
        taken.add(new_bottom)
    new_top = _fresh("top", taken) if need_top else None

    shift = 1 if need_bottom else 0
    ext_names = ([new_bottom] if need_bottom else []) + names + ([new_top] if need_top else [])
    down = []
    if need_bottom:
        down.append(1)
    for d in P.down:
        down.append((d << shift) | (1 if need_bottom else 0))
    if need_top:
        down.append((1 << len(ext_names)) - 1)
    extended = Poset(tuple(ext_names), tuple(down))
    return BoundAdjunction(
        extended=extended,
        inject={x: x for x in names},
        added_bottom=new_bottom,
        added_top=new_top,
        original=P,
    )


# -- canonical forms ---------------------------------------------------


def _refined_cells(P: Poset) -> list:
    """Partition of the elements into isomorphism-invariant cells, in a canonical order."""
    n = len(P)
    height = [0] * n
    for i in P.linear_extension():
        strict = P.down[i] & ~(1 << i)
        height[i] = 1 + max((height[j] for j in iter_bits(strict)), default=-1)
    depth = [0] * n
    for i in reversed(P.linear_extension()):
        strict = P.up[i] & ~(1 << i)
        depth[i] = 1 + max((depth[j] for j in iter_bits(strict)), default=-1)
    covers_below = [0] * n
    covers_above = [0] * n
    for lo, hi in P.cover_indices():
        covers_below[hi] += 1
        covers_above[lo] += 1
    colour = [
        (P.down[i].bit_count(), P.up[i].bit_count(), height[i], depth[i], covers_below[i], covers_above[i])
        for i in range(n)
    ]
    colour = _compress(colour)
    while True:
        sig = [
            (
                colour[i],
                tuple(sorted(colour[j] for j in iter_bits(P.down[i]))),
                tuple(sorted(colour[j] for j in iter_bits(P.up[i]))),
            )
            for i in range(n)
        ]
        new = _compress(sig)
        if len(set(new)) == len(set(colour)):
            colour = new
            break
        colour = new
    cells = {}
    for i, c in enumerate(colour):
        cells.setdefault(c, []).append(i)
    return [cells[c] for c in sorted(cells)]


def _compress(values: list) -> list:
    ranks = {v: r for r, v in enumerate(sorted(set(values)))}
    return [ranks[v] for v in values]


def _encode(P: Poset, order: Sequence[int]) -> int:
    code = 0
    for i in order:
        d = P.down[i]
        for j in order:
            code = code << 1 | (d >> j & 1)
    return code


def canonical_form(P: Poset) -> bytes:
    """Byte string equal for two posets iff they are order-isomorphic.

    The leq matrix is encoded row by row and minimised over all orderings
    that respect the refined invariant cells.
    """
    n = len(P)
    cells = _refined_cells(P)
    best = None
    for parts in itertools.product(*(itertools.permutations(c) for c in cells)):
        order = [i for part in parts for i in part]
        code = _encode(P, order)
        if best is None or code < best:
            best = code
    nbytes = (n * n + 7) // 8
    return n.to_bytes(2, "big") + (best or 0).to_bytes(nbytes, "big")


def is_isomorphic(P: Poset, Q: Poset) -> bool:
    return len(P) == len(Q) and canonical_form(P) == canonical_form(Q)
