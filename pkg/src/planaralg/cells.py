"""Through-string combinatorics: half-diagrams, cell-module dimensions and
the Bratteli (principal) graph of the tower."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

from .diagrams import diagram_class, point_color

__all__ = [
    "HalfDiagram", "half_diagrams", "PrincipalGraph", "bratteli", "path_counts",
    "export_dot", "GraphInconsistency", "label_text",
]


@dataclass(frozen=True)
class HalfDiagram:
    """Partial matching of one row; ``partner[i] == -1`` marks a through point."""

    family: str
    n: int
    partner: tuple

    def colors(self):
        if self.family == "FC":
            return [point_color(t) for t in range(len(self.partner))]
        return ["a"] * len(self.partner)

    @property
    def through(self):
        return [i for i, q in enumerate(self.partner) if q < 0]

    @property
    def label(self):
        if self.family == "TL":
            return len(self.through)
        cols = self.colors()
        return "".join(cols[i] for i in self.through)

    def restrict(self) -> "HalfDiagram":
        """Drop the last strand's points; their partners become through points."""
        w = diagram_class(self.family).width
        keep = len(self.partner) - w
        out = tuple(q if q < keep else -1 for q in self.partner[:keep])
        return HalfDiagram(self.family, self.n - 1, out)


def label_text(label) -> str:
    if label == "":
        return "∅"
    return str(label)


def _perfect(colors, lo, hi):
    if lo >= hi:
        yield ()
        return
    for q in range(lo + 1, hi, 2):
        if colors[lo] != colors[q]:
            continue
        for inner in _perfect(colors, lo + 1, q):
            for rest in _perfect(colors, q + 1, hi):
                yield ((lo, q),) + inner + rest


def _halves(colors, lo):
    """Matchings of ``colors[lo:]`` whose through points are never nested."""
    m = len(colors)
    if lo >= m:
        yield ()
        return
    for rest in _halves(colors, lo + 1):
        yield ((lo, -1),) + rest
    for q in range(lo + 1, m, 2):
        if colors[lo] != colors[q]:
            continue
        for inner in _perfect(colors, lo + 1, q):
            for rest in _halves(colors, q + 1):
                yield ((lo, q),) + inner + rest


@lru_cache(maxsize=None)
def _half_diagrams(family: str, n: int):
    w = diagram_class(family).width
    m = w * n
    colors = [point_color(t) for t in range(m)] if family == "FC" else [None] * m
    groups = defaultdict(list)
    for pairs in _halves(colors, 0):
        partner = [-1] * m
        for p, q in pairs:
            if q >= 0:
                partner[p], partner[q] = q, p
        h = HalfDiagram(family, n, tuple(partner))
        groups[h.label].append(h)
    return {lab: tuple(sorted(groups[lab], key=lambda h: h.partner)) for lab in sorted(groups, key=_label_key)}


def _label_key(label):
    if isinstance(label, int):
        return (label, "")
    return (len(label), label)


def half_diagrams(n: int, family: str = "TL") -> dict:
    """Half-diagrams at level ``n`` grouped by label (through count for TL,
    through colour word for FC).  The group sizes are the cell dimensions."""
    if n < 0:
        raise ValueError("level must be non-negative")
    return {lab: list(hs) for lab, hs in _half_diagrams(family.upper(), n).items()}


class GraphInconsistency(ValueError):
    def __init__(self, level, label, expected, got):
        super().__init__(
            f"vertex {label_text(label)} at level {level}: stored dim {expected}, path count {got}")
        self.level, self.label, self.expected, self.got = level, label, expected, got


@dataclass
class PrincipalGraph:
    family: str
    levels: list = field(default_factory=list)   # level -> {label: dim}
    edges: list = field(default_factory=list)    # level k -> {(u at k-1, v at k): mult}; edges[0] empty

    def dims(self, level: int) -> dict:
        return dict(self.levels[level])

    def to_json(self) -> dict:
        out = []
        for k, verts in enumerate(self.levels):
            out.append({
                "vertices": [{"label": lab, "dim": d} for lab, d in verts.items()],
                "edges": [[u, v, mult] for (u, v), mult in self.edges[k].items()],
            })
        return {"family": self.family, "levels": out}


def bratteli(levels: int, family: str = "TL") -> PrincipalGraph:
    """Levels ``0 .. levels-1`` of the Bratteli diagram.

    The multiplicity of the edge ``u -> v`` is the number of level-``k``
    half-diagrams of label ``v`` restricting to any one fixed level-``k-1``
    half-diagram of label ``u``; the fibre size is checked to depend only on
    ``u``.
    """
    family = family.upper()
    if levels < 1:
        raise ValueError("need at least one level")
    g = PrincipalGraph(family)
    prev = None
    for k in range(levels):
        groups = _half_diagrams(family, k)
        g.levels.append({lab: len(hs) for lab, hs in groups.items()})
        edges = {}
        if prev is not None:
            fibre = defaultdict(Counter)  # v -> Counter(restricted half-diagram)
            for v, hs in groups.items():
                for h in hs:
                    fibre[v][h.restrict().partner] += 1
            for u, lower in prev.items():
                for v in groups:
                    sizes = {fibre[v][h.partner] for h in lower}
                    if len(sizes) != 1:
                        raise ValueError(
                            f"restriction fibres over {label_text(u)} -> {label_text(v)} "
                            f"at level {k} are not uniform: {sorted(sizes)}")
                    mult = sizes.pop()
                    if mult:
                        edges[(u, v)] = mult
        g.edges.append(edges)
        prev = groups
    return g


def path_counts(g: PrincipalGraph, check: bool = True) -> list:
    """Weighted path counts from the level-0 vertex.  With ``check``, raise
    :class:`GraphInconsistency` at the first vertex whose count differs from
    its stored dimension."""
    counts = []
    for k, verts in enumerate(g.levels):
        if k == 0:
            cur = {lab: 1 for lab in verts}
        else:
            cur = {lab: 0 for lab in verts}
            for (u, v), mult in g.edges[k].items():
                cur[v] += mult * counts[k - 1][u]
        if check:
            for lab, d in verts.items():
                if cur[lab] != d:
                    raise GraphInconsistency(k, lab, d, cur[lab])
        counts.append(cur)
    return counts


def export_dot(g: PrincipalGraph) -> str:
    lines = [f"graph bratteli_{g.family.lower()} {{", "  rankdir=TB;"]
    ids = {}
    for k, verts in enumerate(g.levels):
        for idx, (lab, d) in enumerate(verts.items()):
            ids[(k, lab)] = f"v{k}_{idx}"
            lines.append(f'  {ids[(k, lab)]} [label="{k}/{label_text(lab)}/{d}"];')
    for k in range(1, len(g.levels)):
        for (u, v), mult in g.edges[k].items():
            for _ in range(mult):
                lines.append(f"  {ids[(k - 1, u)]} -- {ids[(k, v)]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
