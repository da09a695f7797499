"""Checkable certificates returned by every search operation.

A witness is re-validated with nothing but Graph primitives, so a failed
search can never be confused with a successful one and serialized results
stay trustworthy on reload.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from .graphs import Graph, bits, mask_of


@dataclass(frozen=True)
class Witness:
    kind: str  # InducedCopy | Biclique | IndependentSet | RichSet | InducedCycle | NotFound
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.kind != "NotFound"

    # -- constructors -------------------------------------------------------

    @staticmethod
    def not_found(reason: str = "") -> "Witness":
        return Witness("NotFound", {"reason": reason} if reason else {})

    @staticmethod
    def induced_copy(mapping: dict[int, int]) -> "Witness":
        return Witness("InducedCopy", {"mapping": dict(mapping)})

    @staticmethod
    def biclique(left: list[int], right: list[int]) -> "Witness":
        return Witness("Biclique", {"left": sorted(left), "right": sorted(right)})

    @staticmethod
    def independent_set(vertices: list[int]) -> "Witness":
        return Witness("IndependentSet", {"vertices": sorted(vertices)})

    @staticmethod
    def rich_set(vertices: list[int], trace_counts: dict[tuple[int, ...], int]) -> "Witness":
        counts = {",".join(map(str, t)): c for t, c in trace_counts.items()}
        return Witness("RichSet", {"vertices": sorted(vertices), "trace_counts": counts})

    @staticmethod
    def induced_cycle(vertices: list[int]) -> "Witness":
        return Witness("InducedCycle", {"vertices": list(vertices)})

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {}
        for k, v in self.data.items():
            if k == "mapping":
                data[k] = {str(a): b for a, b in v.items()}
            else:
                data[k] = v
        return {"kind": self.kind, "data": data}

    @staticmethod
    def from_json(obj: dict[str, Any]) -> "Witness":
        kind = obj["kind"]
        data = dict(obj.get("data", {}))
        if "mapping" in data:
            data["mapping"] = {int(a): int(b) for a, b in data["mapping"].items()}
        return Witness(kind, data)


def validate_witness(witness: Witness, host: Graph,
                     pattern: Optional[Graph] = None) -> bool:
    """Independent checker using only adjacency-row primitives."""
    kind = witness.kind
    if kind == "NotFound":
        return True
    if kind == "InducedCopy":
        if pattern is None:
            return False
        phi = witness.data["mapping"]
        if sorted(phi.keys()) != list(range(pattern.n)):
            return False
        images = list(phi.values())
        if len(set(images)) != len(images):
            return False
        if any(not (0 <= v < host.n) for v in images):
            return False
        for u in range(pattern.n):
            for v in range(u + 1, pattern.n):
                if pattern.has_edge(u, v) != host.has_edge(phi[u], phi[v]):
                    return False
        return True
    if kind == "Biclique":
        left, right = witness.data["left"], witness.data["right"]
        if set(left) & set(right):
            return False
        if len(set(left)) != len(left) or len(set(right)) != len(right):
            return False
        if not left or not right:
            return False
        return all(host.has_edge(u, v) for u in left for v in right)
    if kind == "IndependentSet":
        verts = witness.data["vertices"]
        if len(set(verts)) != len(verts):
            return False
        m = mask_of(verts)
        return all(not (host.adj[v] & m) for v in verts)
    if kind == "RichSet":
        verts = witness.data["vertices"]
        m = mask_of(verts)
        counts = witness.data["trace_counts"]
        outside = [v for v in range(host.n) if not (m >> v) & 1]
        observed: dict[int, int] = {}
        for v in outside:
            tr = host.adj[v] & m
            observed[tr] = observed.get(tr, 0) + 1
        for key, claimed in counts.items():
            trace_vertices = [int(x) for x in key.split(",")] if key else []
            tr = mask_of(trace_vertices)
            if observed.get(tr, 0) != claimed:
                return False
        return True
    if kind == "InducedCycle":
        verts = witness.data["vertices"]
        m = len(verts)
        if m < 3 or len(set(verts)) != m:
            return False
        for i in range(m):
            for j in range(i + 1, m):
                adjacent = host.has_edge(verts[i], verts[j])
                consecutive = (j == i + 1) or (i == 0 and j == m - 1)
                if adjacent != consecutive:
                    return False
        return True
    return False
