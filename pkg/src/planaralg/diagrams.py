"""Temperley-Lieb and Fuss-Catalan basis diagrams.

Boundary points of a level-``n`` diagram are numbered by one cyclic
traversal: the top row left to right, then the bottom row right to left.
A TL diagram has ``n`` points per row; an FC diagram has ``2n`` (one
2-cable per strand).  FC points are coloured by the periodic word
``a b b a`` read along the cyclic numbering, which gives the same colour to
top point ``t`` and bottom point ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

__all__ = [
    "Diagram", "TLDiagram", "FCDiagram", "LoopCount", "diagram_class",
    "point_color", "is_noncrossing", "noncrossing_matchings",
    "enumerate_tl", "enumerate_fc", "enumerate_basis", "involute",
    "closure_loops", "identity_diagram", "trace_strands", "diagram_from_json",
]

FAMILIES = ("TL", "FC")


def point_color(p: int) -> str:
    """Colour of FC cyclic position ``p``."""
    return "a" if p % 4 in (0, 3) else "b"


class LoopCount(NamedTuple):
    la: int
    lb: int


def is_noncrossing(pairing) -> bool:
    """Circular chord condition on a fixed-point-free involution."""
    m = len(pairing)
    for p in range(m):
        q = pairing[p]
        if q <= p:
            continue
        for r in range(p + 1, q):
            s = pairing[r]
            if s < p or s > q:
                return False
    return True


def noncrossing_matchings(colors):
    """All non-crossing perfect matchings of ``len(colors)`` points in a
    line, pairing only equal colours.  ``colors=None`` entries match freely.

    Yields involution tuples.
    """
    colors = tuple(colors)
    for pairs in _matchings(colors, 0, len(colors)):
        out = [0] * len(colors)
        for p, q in pairs:
            out[p] = q
            out[q] = p
        yield tuple(out)


def _matchings(colors, lo, hi):
    if lo >= hi:
        yield ()
        return
    for q in range(lo + 1, hi, 2):
        if colors[lo] != colors[q]:
            continue
        for inner in _matchings(colors, lo + 1, q):
            for outer in _matchings(colors, q + 1, hi):
                yield ((lo, q),) + inner + outer


@dataclass(frozen=True, order=True)
class Diagram:
    n: int
    pairing: tuple

    family = None
    width = 1  # boundary points per strand per row

    def __post_init__(self):
        object.__setattr__(self, "pairing", tuple(int(p) for p in self.pairing))
        self.validate()

    @property
    def row(self) -> int:
        """Points per row."""
        return self.width * self.n

    def color(self, p: int) -> str:
        return "a"

    def validate(self):
        m = 2 * self.row
        pr = self.pairing
        if self.n < 0:
            raise ValueError("level must be non-negative")
        if len(pr) != m:
            raise ValueError(f"{self.family} level {self.n} needs {m} points, got {len(pr)}")
        for p, q in enumerate(pr):
            if not 0 <= q < m or q == p or pr[q] != p:
                raise ValueError(f"pairing is not a fixed-point-free involution at {p}")
            if self.color(p) != self.color(q):
                raise ValueError(f"points {p} and {q} have different colours")
        if not is_noncrossing(pr):
            raise ValueError("pairing has a crossing")

    # position helpers
    def top(self, t: int) -> int:
        return t

    def bottom(self, t: int) -> int:
        return 2 * self.row - 1 - t

    def to_json(self) -> dict:
        return {"family": self.family, "n": self.n, "pairing": list(self.pairing)}

    def __str__(self):
        return f"{self.family}{self.n}{list(self.pairing)}"


@dataclass(frozen=True, order=True)
class TLDiagram(Diagram):
    family = "TL"
    width = 1


@dataclass(frozen=True, order=True)
class FCDiagram(Diagram):
    family = "FC"
    width = 2

    def color(self, p: int) -> str:
        return point_color(p)


def diagram_class(family: str):
    fam = family.upper()
    if fam == "TL":
        return TLDiagram
    if fam == "FC":
        return FCDiagram
    raise ValueError(f"unknown family {family!r}")


def diagram_from_json(obj: dict) -> Diagram:
    return diagram_class(obj["family"])(int(obj["n"]), tuple(obj["pairing"]))


def identity_diagram(n: int, family: str = "TL") -> Diagram:
    cls = diagram_class(family)
    m = cls.width * n
    pr = [0] * (2 * m)
    for t in range(m):
        pr[t] = 2 * m - 1 - t
        pr[2 * m - 1 - t] = t
    return cls(n, tuple(pr))


@lru_cache(maxsize=None)
def _enumerate(family: str, n: int) -> tuple:
    cls = diagram_class(family)
    m = 2 * cls.width * n
    if family == "FC":
        colors = [point_color(p) for p in range(m)]
    else:
        colors = [None] * m
    return tuple(sorted(cls(n, pr) for pr in noncrossing_matchings(colors)))


def enumerate_tl(n: int) -> list:
    """All TL diagrams at level ``n`` in lexicographic order of the pairing."""
    if n < 0:
        raise ValueError("level must be non-negative")
    return list(_enumerate("TL", n))


def enumerate_fc(n: int) -> list:
    """All colour-preserving non-crossing FC diagrams at level ``n``."""
    if n < 0:
        raise ValueError("level must be non-negative")
    return list(_enumerate("FC", n))


def enumerate_basis(family: str, n: int) -> list:
    fam = family.upper()
    diagram_class(fam)
    if n < 0:
        raise ValueError("level must be non-negative")
    return list(_enumerate(fam, n))


def involute(d: Diagram) -> Diagram:
    """Reflect top and bottom rows."""
    m = 2 * d.row
    pr = d.pairing
    return type(d)(d.n, tuple(m - 1 - pr[m - 1 - p] for p in range(m)))


def trace_strands(layers):
    """Follow strands through a stack of matchings.

    ``layers`` is a list of dicts, each an involution on hashable nodes.
    Nodes in exactly one layer are terminals; nodes in two layers are
    interior.  Returns ``(ends, loops)`` where ``ends`` maps each terminal
    to the terminal at the other end of its strand and ``loops`` is a list
    of closed loops, each the list of interior nodes it visits.
    """
    where = {}
    for k, layer in enumerate(layers):
        for node in layer:
            where.setdefault(node, []).append(k)
    for node, ks in where.items():
        if len(ks) > 2:
            raise ValueError(f"node {node!r} lies in more than two layers")

    ends = {}
    seen = set()
    for start, ks in where.items():
        if len(ks) != 1 or start in ends:
            continue
        k = ks[0]
        cur = layers[k][start]
        seen.add(start)
        while len(where[cur]) == 2:
            seen.add(cur)
            k0, k1 = where[cur]
            k = k1 if k == k0 else k0
            cur = layers[k][cur]
        seen.add(cur)
        ends[start] = cur
        ends[cur] = start

    loops = []
    for start in where:
        if start in seen:
            continue
        loop = []
        k = where[start][0]
        cur = start
        while True:
            seen.add(cur)
            loop.append(cur)
            cur = layers[k][cur]
            if cur == start:
                break
            k0, k1 = where[cur]
            k = k1 if k == k0 else k0
        loops.append(loop)
    return ends, loops


def closure_loops(d: Diagram) -> LoopCount:
    """Loops of the closure joining top ``t`` to bottom ``t`` for every ``t``.

    For TL diagrams every loop counts once as an a-loop and once as a b-loop.
    """
    m = d.row
    pr = d.pairing
    seen = [False] * (2 * m)
    la = lb = 0
    for start in range(2 * m):
        if seen[start]:
            continue
        p = start
        while not seen[p]:
            seen[p] = True
            q = pr[p]
            seen[q] = True
            p = 2 * m - 1 - q  # closure arc
        if d.family == "TL":
            la += 1
            lb += 1
        elif d.color(start) == "a":
            la += 1
        else:
            lb += 1
    return LoopCount(la, lb)
