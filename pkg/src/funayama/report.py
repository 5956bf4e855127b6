"""One-shot analysis of a poset, with a deterministic JSON rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .config import CLI_MAX_GENERATORS, CLI_MAX_PAIRS, PRESERVATION_MAX_SIZE
from .embedding import PreservationReport, check_preservation, embed, exactness_mask
from .errors import CapacityExceeded
from .order import LatticeInfo, Poset, adjoin_bounds, classify
from .pairspace import build_pair_space
from .roalgebra import generated_subalgebra, macneille_iso_check


@dataclass(frozen=True)
class AnalysisReport:
    """``exactness_table`` lists only subsets whose join or meet exists but is inexact."""

    classification: LatticeInfo
    bounds_adjoined: tuple
    pair_space_size: int
    algebra_size: int
    atom_count: int
    subalgebra_size: int
    macneille_iso: bool
    embedding_images: dict
    preservation: PreservationReport
    exactness_table: list

    def to_dict(self) -> dict:
        return {
            "classification": {k: _jsonable(v) for k, v in self.classification.to_dict().items()},
            "bounds_adjoined": list(self.bounds_adjoined),
            "pair_space_size": self.pair_space_size,
            "algebra_size": self.algebra_size,
            "atom_count": self.atom_count,
            "subalgebra_size": self.subalgebra_size,
            "macneille_iso": self.macneille_iso,
            "embedding_images": {
                str(x): [[str(a), str(b)] for a, b in pairs] for x, pairs in self.embedding_images.items()
            },
            "preservation": _jsonable(self.preservation.to_dict()),
            "exactness_table": [_jsonable(r.to_dict()) for r in self.exactness_table],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def summary(self) -> str:
        c = self.classification
        lines = [
            f"lattice: {c.is_lattice}  distributive: {c.is_distributive}",
            f"pair space: {self.pair_space_size} points",
            f"regular opens: {self.algebra_size} ({self.atom_count} atoms)",
            f"generated subalgebra: {self.subalgebra_size}",
            f"finite MacNeille isomorphism: {self.macneille_iso}",
        ]
        if self.bounds_adjoined:
            lines.append(f"adjoined bounds: {', '.join(self.bounds_adjoined)}")
        flags = self.preservation.flags
        lines.append("preservation: " + ", ".join(f"{m}={'ok' if flags[m] else 'FAIL'}" for m in flags))
        lines.append(f"subsets with an inexact join or meet: {len(self.exactness_table)}")
        return "\n".join(lines)


def _inexact(r) -> bool:
    return (r.join_exists and not r.join_exact) or (r.meet_exists and not r.meet_exact)


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    return str(v)


def analyze(
    P: Poset,
    max_pairs: int = CLI_MAX_PAIRS,
    max_generators: int = CLI_MAX_GENERATORS,
    budget: Optional[int] = None,
    max_preservation: int = PRESERVATION_MAX_SIZE,
) -> AnalysisReport:
    """Run the whole pipeline on ``P``; CapacityExceeded names the stage that overflowed."""
    info = classify(P)
    adj = adjoin_bounds(P)
    X = build_pair_space(adj.extended)
    if len(X) > max_pairs:
        raise CapacityExceeded(f"pair space has {len(X)} points, limit {max_pairs}", stage="pair-space")
    E = embed(P, budget)
    B = E.target
    if len(B.generator_masks) > max_generators:
        raise CapacityExceeded(
            f"{len(B.generator_masks)} generators, limit {max_generators}", stage="ro-algebra"
        )
    B.carrier_masks  # materialize within budget
    S = generated_subalgebra(B, [E(x) for x in E.domain], budget)
    iso = macneille_iso_check(B, S)
    if len(P) > max_preservation:
        raise CapacityExceeded(f"{len(P)} elements, exhaustive sweeps stop at {max_preservation}", stage="preservation")
    preservation = check_preservation(E, max_size=max_preservation)
    table = [r for r in (exactness_mask(P, m) for m in range(1 << len(P))) if _inexact(r)]
    return AnalysisReport(
        classification=info,
        bounds_adjoined=tuple(str(x) for x in (adj.added_bottom, adj.added_top) if x is not None),
        pair_space_size=len(X),
        algebra_size=B.size,
        atom_count=len(B.atom_masks),
        subalgebra_size=len(S),
        macneille_iso=iso,
        embedding_images={x: E(x).sorted_pairs() for x in E.domain},
        preservation=preservation,
        exactness_table=table,
    )
