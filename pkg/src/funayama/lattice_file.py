"""JSON lattice files: ``{"elements": [...], "covers": [[lower, upper], ...]}``.

An optional ``metadata`` object is carried through untouched.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import DuplicateName, LatticeSyntaxError, UnknownElement
from .order import Poset, from_covers


@dataclass(frozen=True)
class LatticeFile:
    elements: tuple
    covers: tuple
    metadata: dict = field(default_factory=dict, compare=True, hash=False)

    def to_poset(self) -> Poset:
        return from_covers(list(self.elements), list(self.covers))

    def normalized(self) -> "LatticeFile":
        """Same order, with covers reduced to the Hasse diagram and sorted."""
        return lattice_file_from_poset(self.to_poset(), self.metadata)


def lattice_file_from_poset(P: Poset, metadata: Optional[dict] = None) -> LatticeFile:
    return LatticeFile(tuple(str(x) for x in P.names), tuple((str(a), str(b)) for a, b in P.covers()), dict(metadata or {}))


def load_lattice_file(text: Union[bytes, str]) -> LatticeFile:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise LatticeSyntaxError("file is not UTF-8", context=f"byte {exc.start}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LatticeSyntaxError(exc.msg, context=f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise LatticeSyntaxError("top level must be an object", context="document")
    extra = set(doc) - {"elements", "covers", "metadata"}
    if extra:
        raise LatticeSyntaxError(f"unexpected keys {sorted(extra)}", context="document")

    elements = doc.get("elements")
    if not isinstance(elements, list):
        raise LatticeSyntaxError("must be a list of strings", context="elements")
    seen = set()
    for i, x in enumerate(elements):
        if not isinstance(x, str):
            raise LatticeSyntaxError("element names must be strings", context=f"elements[{i}]")
        if x in seen:
            raise DuplicateName(f"elements[{i}]: duplicate element {x!r}")
        seen.add(x)

    covers = doc.get("covers", [])
    if not isinstance(covers, list):
        raise LatticeSyntaxError("must be a list of [lower, upper] pairs", context="covers")
    pairs = []
    for i, c in enumerate(covers):
        if not (isinstance(c, list) and len(c) == 2 and all(isinstance(v, str) for v in c)):
            raise LatticeSyntaxError("expected [lower, upper] with string names", context=f"covers[{i}]")
        for v in c:
            if v not in seen:
                raise UnknownElement(f"covers[{i}]: unknown element {v!r}")
        pairs.append((c[0], c[1]))

    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict):
        raise LatticeSyntaxError("must be an object", context="metadata")
    return LatticeFile(tuple(elements), tuple(pairs), metadata)


def parse_lattice(text: Union[bytes, str]) -> Poset:
    """Parse a lattice file into a :class:`Poset`.

    Raises LatticeSyntaxError, DuplicateName, UnknownElement or CycleDetected.
    """
    return load_lattice_file(text).to_poset()


def serialize_lattice(obj: Union[LatticeFile, Poset]) -> str:
    """Deterministic JSON text, one cover per line."""
    lf = lattice_file_from_poset(obj) if isinstance(obj, Poset) else obj
    dump = lambda v: json.dumps(v, sort_keys=True, ensure_ascii=False)  # noqa: E731
    covers = ",\n".join("    " + dump(list(c)) for c in lf.covers)
    parts = [
        '  "covers": [\n' + covers + "\n  ]" if lf.covers else '  "covers": []',
        '  "elements": ' + dump(list(lf.elements)),
    ]
    if lf.metadata:
        parts.append('  "metadata": ' + dump(lf.metadata))
    return "{\n" + ",\n".join(parts) + "\n}\n"
