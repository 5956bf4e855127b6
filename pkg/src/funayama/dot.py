"""Graphviz text for Hasse diagrams of posets and pair spaces."""

from __future__ import annotations

from typing import Mapping, Optional, Union

from .order import Poset
from .pairspace import PairSet, PairSpace


def _q(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _poset_dot(P: Poset) -> str:
    lines = ["graph poset {", "  rankdir=BT;", "  node [shape=plaintext];"]
    for i, x in enumerate(P.names):
        lines.append(f"  n{i} [label={_q(x)}];")
    for lo, hi in P.cover_indices():
        lines.append(f"  n{lo} -- n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _pairs_dot(X: PairSpace, annotations: Optional[Mapping]) -> str:
    # arrows run from a pair to the pairs it covers, top of the page first
    lines = ["digraph pairs {", "  rankdir=TB;", "  node [shape=ellipse];"]
    members = {k: [] for k in range(len(X))}
    if annotations:
        for name, U in annotations.items():
            if not isinstance(U, PairSet) or U.space is not X:
                raise ValueError(f"annotation for {name!r} is not a pair set of this space")
            for k in range(len(X)):
                if U.mask >> k & 1:
                    members[k].append(str(name))
    for k in range(len(X)):
        a, b = X.name(k)
        attrs = [f"label={_q(f'({a},{b})')}"]
        if members[k]:
            attrs.append("class=" + _q(" ".join(f"e_{m}" for m in members[k])))
            attrs.append("tooltip=" + _q(", ".join(f"e({m})" for m in members[k])))
        lines.append(f"  p{k} [{', '.join(attrs)}];")
    for hi, lo in X.hasse_edges():
        lines.append(f"  p{hi} -> p{lo};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_dot(obj: Union[Poset, PairSpace], annotations: Optional[Mapping] = None) -> str:
    """DOT text with one edge per covering pair.

    Posets are drawn undirected, bottom up.  Pair spaces get an arrow from
    each pair to every pair it covers; ``annotations`` (name -> PairSet)
    tags each pair with the images it belongs to.
    """
    if isinstance(obj, PairSpace):
        return _pairs_dot(obj, annotations)
    return _poset_dot(obj)
