"""The embedding ``a -> box diamond down(a, 0)`` and its preservation checks."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .config import PRESERVATION_MAX_SIZE
from .errors import CapacityExceeded, NotALattice
from .order import BoundAdjunction, Poset, adjoin_bounds, classify, iter_bits
from .pairspace import PairSet, build_pair_space
from .roalgebra import RegularOpenAlgebra

MODES = ("finite_meets", "finite_joins", "exact_joins", "exact_meets", "all_meets", "all_joins")


@dataclass(frozen=True)
class Embedding:
    """Images of the (bounded) source poset in a regular-open algebra.

    With ``dual`` set, the images come from the order-dual source and are
    read in the dual algebra: meets there are regularized unions, joins are
    intersections, and the order is reverse inclusion.
    """

    source: Poset
    target: RegularOpenAlgebra
    masks: tuple
    dual: bool = False
    original_restriction: Optional[BoundAdjunction] = None

    def __call__(self, x) -> PairSet:
        return PairSet(self.target.space, self.masks[self.source.index(x)])

    image = __call__

    def images(self) -> dict:
        return {x: self(x) for x in self.domain}

    @property
    def domain(self) -> tuple:
        """Element names of the poset the caller passed in."""
        if self.original_restriction is not None:
            return self.original_restriction.original.names
        return self.source.names

    def alg_meet(self, masks: Iterable[int]) -> int:
        B = self.target
        return B.join_mask(masks) if self.dual else B.meet_mask(masks)

    def alg_join(self, masks: Iterable[int]) -> int:
        B = self.target
        return B.meet_mask(masks) if self.dual else B.join_mask(masks)

    def alg_leq(self, x: int, y: int) -> bool:
        return (y & ~x == 0) if self.dual else (x & ~y == 0)

    def is_order_embedding(self) -> bool:
        P, m = self.source, self.masks
        n = len(P)
        return all(P.leq_i(a, b) == self.alg_leq(m[a], m[b]) for a in range(n) for b in range(n))


def _principal_images(P: Poset, X) -> tuple:
    zero = P.bottom_index
    return tuple(
        0 if a == zero else X.regularize_mask(X.below_masks[X.index((P.names[a], P.names[zero]))])
        for a in range(len(P))
    )


def embed(P: Poset, budget: Optional[int] = None) -> Embedding:
    """Embed ``P`` into the regular opens of its pair space.

    Missing bounds are adjoined first; the caller's elements keep their
    names and :attr:`Embedding.original_restriction` records the adjunction.
    """
    adj = adjoin_bounds(P)
    Q = adj.extended
    X = build_pair_space(Q)
    E = Embedding(
        source=Q,
        target=RegularOpenAlgebra(X, budget),
        masks=_principal_images(Q, X),
        original_restriction=adj if adj.changed else None,
    )
    if not E.is_order_embedding():
        raise AssertionError("embedding is not an order embedding")
    return E


def dual_embed(P: Poset, budget: Optional[int] = None) -> Embedding:
    """The embedding of the order dual, read back as a map on ``P``."""
    adj = adjoin_bounds(P)
    Q = adj.extended
    inner = embed(Q.dual(), budget)
    E = Embedding(
        source=Q,
        target=inner.target,
        masks=inner.masks,
        dual=True,
        original_restriction=adj if adj.changed else None,
    )
    if not E.is_order_embedding():
        raise AssertionError("dual embedding is not an order embedding")
    return E


# -- exactness ---------------------------------------------------------


def _exact(P: Poset, mask: int, outer, inner):
    """(exists, value, exact, witness) for the outer operation over ``mask``.

    ``outer`` is the big join (or meet) and ``inner`` the binary operation
    distributed across it.  Missing intermediate values count as inexact.
    """
    value = outer(mask)
    if value is None:
        return False, None, False, None
    for a in range(len(P)):
        lhs = inner(a, value)
        parts = 0
        ok = lhs is not None
        if ok:
            for s in iter_bits(mask):
                t = inner(a, s)
                if t is None:
                    ok = False
                    break
                parts |= 1 << t
        if ok:
            rhs = outer(parts)
            ok = rhs is not None and rhs == lhs
        if not ok:
            return True, value, False, a
    return True, value, True, None


def exact_join_info(P: Poset, mask: int):
    return _exact(P, mask, P.join_mask, P.meet2)


def exact_meet_info(P: Poset, mask: int):
    return _exact(P, mask, P.meet_mask, P.join2)


@dataclass(frozen=True)
class ExactnessReport:
    subset: tuple
    join_exists: bool
    join: object
    join_exact: bool
    join_witness: object
    meet_exists: bool
    meet: object
    meet_exact: bool
    meet_witness: object

    def to_dict(self) -> dict:
        return {
            "subset": list(self.subset),
            "join_exists": self.join_exists,
            "join": self.join,
            "join_exact": self.join_exact,
            "join_witness": self.join_witness,
            "meet_exists": self.meet_exists,
            "meet": self.meet,
            "meet_exact": self.meet_exact,
            "meet_witness": self.meet_witness,
        }


def exactness_mask(P: Poset, mask: int) -> ExactnessReport:
    name = lambda i: None if i is None else P.names[i]  # noqa: E731
    je, jv, jx, jw = exact_join_info(P, mask)
    me, mv, mx, mw = exact_meet_info(P, mask)
    return ExactnessReport(
        subset=tuple(P.names[i] for i in iter_bits(mask)),
        join_exists=je, join=name(jv), join_exact=jx, join_witness=name(jw),
        meet_exists=me, meet=name(mv), meet_exact=mx, meet_witness=name(mw),
    )


def exactness(P: Poset, S: Iterable) -> ExactnessReport:
    return exactness_mask(P, P.indices(S))


def satisfies_jid(P: Poset) -> bool:
    """Every existing join is exact (decided over all subsets)."""
    for mask in range(1 << len(P)):
        exists, _, exact, _ = exact_join_info(P, mask)
        if exists and not exact:
            return False
    return True


def satisfies_mid(P: Poset) -> bool:
    for mask in range(1 << len(P)):
        exists, _, exact, _ = exact_meet_info(P, mask)
        if exists and not exact:
            return False
    return True


# -- preservation ------------------------------------------------------


def _flag(mode):
    return property(lambda self: self.flags.get(mode))


@dataclass
class PreservationReport:
    """Per-mode flags (``None`` when a mode was not checked) and counterexamples."""

    flags: dict
    counterexamples: list = field(default_factory=list)
    subsets_checked: int = 0
    exhaustive: bool = True

    finite_meets_ok = _flag("finite_meets")
    finite_joins_ok = _flag("finite_joins")
    exact_joins_ok = _flag("exact_joins")
    exact_meets_ok = _flag("exact_meets")
    all_meets_ok = _flag("all_meets")
    all_joins_ok = _flag("all_joins")

    @property
    def ok(self) -> bool:
        return all(v for v in self.flags.values() if v is not None)

    def to_dict(self) -> dict:
        return {
            "flags": {m: self.flags.get(m) for m in MODES},
            "subsets_checked": self.subsets_checked,
            "exhaustive": self.exhaustive,
            "counterexamples": [
                {
                    "mode": mode,
                    "subset": list(subset),
                    "expected": [list(p) for p in expected],
                    "actual": [list(p) for p in actual],
                }
                for mode, subset, expected, actual in self.counterexamples
            ],
        }


def _subset_masks(n, max_size, force, samples, seed):
    if n <= max_size or force:
        if n > 24:
            raise CapacityExceeded(f"{n} elements is too many for exhaustive subsets", stage="preservation")
        return range(1 << n), True
    if not samples:
        raise CapacityExceeded(
            f"{n} elements exceeds the exhaustive bound {max_size}", stage="preservation"
        )
    rng = random.Random(seed)
    masks = {0} | {1 << i for i in range(n)}
    while len(masks) < samples + n + 1:
        masks.add(rng.getrandbits(n))
    return sorted(masks), False


def check_preservation(
    E: Embedding,
    modes: Iterable[str] = MODES,
    max_size: int = PRESERVATION_MAX_SIZE,
    force: bool = False,
    samples: int = 4096,
    seed: int = 0,
    restrict: bool = True,
) -> PreservationReport:
    """Compare ``e(op S)`` with the algebra-side ``op`` of ``e[S]`` over subsets.

    With ``restrict`` (the default) and adjoined bounds, subsets and their
    meets and joins are taken in the caller's original poset.
    """
    if isinstance(modes, str):
        modes = (modes,)
    modes = tuple(modes)
    unknown = set(modes) - set(MODES)
    if unknown:
        raise ValueError(f"unknown preservation modes {sorted(unknown)}")

    adj = E.original_restriction if restrict else None
    if adj is not None:
        P = adj.original
        translate = adj.inject_mask
    else:
        P = E.source
        translate = lambda m: m  # noqa: E731
    src_masks = E.masks
    X = E.target.space
    lift = [src_masks[next(iter_bits(translate(1 << i)))] for i in range(len(P))]

    subsets, exhaustive = _subset_masks(len(P), max_size, force, samples, seed)
    flags = {m: True for m in modes}
    report = PreservationReport(flags=flags, exhaustive=exhaustive)

    def record(mode, mask, expected, actual):
        flags[mode] = False
        report.counterexamples.append(
            (mode, tuple(P.names[i] for i in iter_bits(mask)), PairSet(X, expected), PairSet(X, actual))
        )

    for mask in subsets:
        report.subsets_checked += 1
        images = [lift[i] for i in iter_bits(mask)]
        for kind, outer, alg, exact_info in (
            ("meets", P.meet_mask, E.alg_meet, exact_meet_info),
            ("joins", P.join_mask, E.alg_join, exact_join_info),
        ):
            if not any(m.endswith(kind) for m in modes):
                continue
            value = outer(mask)
            if value is None:
                continue
            expected, actual = lift[value], alg(images)
            if expected == actual:
                continue
            for mode in ("finite_" + kind, "all_" + kind):
                if mode in modes:
                    record(mode, mask, expected, actual)
            if "exact_" + kind in modes and exact_info(P, mask)[2]:
                record("exact_" + kind, mask, expected, actual)
    return report


def funayama_corollary_check(L: Poset, **kwargs) -> tuple:
    """(e preserves every existing meet and join, L satisfies JID and MID)."""
    if not classify(L).is_lattice:
        raise NotALattice("the complete-embedding check needs a lattice")
    E = embed(L)
    report = check_preservation(E, ("all_meets", "all_joins"), **kwargs)
    complete = bool(report.all_meets_ok and report.all_joins_ok)
    return complete, satisfies_jid(L) and satisfies_mid(L)
