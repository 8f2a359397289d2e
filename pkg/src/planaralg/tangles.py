"""Shaded planar tangles as combinatorial maps, their composition and their
action on the TL and FC diagram algebras.

Conventions
-----------
Disk ``-1`` is the outer disk, ``0, 1, ...`` are the internal holes.  The
points of every disk (outer and internal) are numbered clockwise in the
plane, so pasting a tangle into a hole identifies points index by index
once the first points are aligned.  The region just before the first
point of a disk (counterclockwise from it) is white.

Relative to its first point ``f``, point ``f + i`` of a disk corresponds
to cyclic position ``i`` of the diagram living in that disk (TL), or to
positions ``2i, 2i+1`` (FC).  In FC every string is a 2-cable whose
a-strand runs on the white side.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .algebra import AlgebraElement, random_element
from .diagrams import diagram_class, point_color, trace_strands
from .scalars import DELTA, ZERO, monomial

__all__ = [
    "Hole", "PlanarTangle", "Diagnostic", "TangleError", "validate", "compose",
    "evaluate", "elementary", "TangleTree", "flatten", "flatten_eval",
    "recursive_eval", "random_tangle", "random_tree", "random_inputs", "ELEMENTARY_KINDS",
]

OUTER = -1


class TangleError(ValueError):
    pass


@dataclass(frozen=True)
class Hole:
    arity: int
    first_point: int = 0


@dataclass(frozen=True)
class Diagnostic:
    ok: bool
    condition: str = ""
    message: str = ""
    witness: object = None

    def __bool__(self):
        return self.ok


def _pt(ref):
    d, p = ref
    return (int(d), int(p))


@dataclass(frozen=True)
class PlanarTangle:
    k: int
    holes: tuple = ()
    strings: tuple = ()
    free_loops: int = 0
    outer_first_point: int = 0

    def __post_init__(self):
        holes = tuple(h if isinstance(h, Hole) else Hole(*h) for h in self.holes)
        strings = []
        for s in self.strings:
            p, q = sorted((_pt(s[0]), _pt(s[1])))
            strings.append((p, q))
        object.__setattr__(self, "holes", holes)
        object.__setattr__(self, "strings", tuple(sorted(strings)))
        self._check_structure()

    def _check_structure(self):
        if self.k < 0 or self.free_loops < 0:
            raise TangleError("arity and free_loops must be non-negative")
        expected = set()
        for d in range(-1, len(self.holes)):
            size = self.size(d)
            first = self.first_point(d)
            if size and not 0 <= first < size:
                raise TangleError(f"first point {first} out of range on disk {d}")
            expected.update((d, p) for p in range(size))
        seen = set()
        for p, q in self.strings:
            for x in (p, q):
                if x not in expected:
                    raise TangleError(f"string end {x} is not a marked point")
                if x in seen:
                    raise TangleError(f"marked point {x} used twice")
                seen.add(x)
        if seen != expected:
            missing = sorted(expected - seen)[0]
            raise TangleError(f"marked point {missing} has no string")

    # disk helpers
    def size(self, d: int) -> int:
        return 2 * (self.k if d == OUTER else self.holes[d].arity)

    def first_point(self, d: int) -> int:
        return self.outer_first_point if d == OUTER else self.holes[d].first_point

    def relative(self, d: int, p: int) -> int:
        return (p - self.first_point(d)) % self.size(d)

    def absolute(self, d: int, i: int) -> int:
        return (self.first_point(d) + i) % self.size(d)

    @cached_property
    def partner(self) -> dict:
        out = {}
        for p, q in self.strings:
            out[p], out[q] = q, p
        return out

    @property
    def arities(self) -> tuple:
        return tuple(h.arity for h in self.holes)

    def permute_holes(self, perm) -> "PlanarTangle":
        """New tangle whose hole ``i`` is this tangle's hole ``perm[i]``."""
        inv = {old: new for new, old in enumerate(perm)}
        ren = lambda x: x if x[0] == OUTER else (inv[x[0]], x[1])
        return PlanarTangle(self.k, tuple(self.holes[i] for i in perm),
                            tuple((ren(p), ren(q)) for p, q in self.strings),
                            self.free_loops, self.outer_first_point)

    def normalized(self) -> "PlanarTangle":
        """Same tangle with every disk relabelled so its first point is 0."""
        ren = lambda x: (x[0], self.relative(*x))
        return PlanarTangle(self.k, tuple(Hole(h.arity) for h in self.holes),
                            tuple((ren(p), ren(q)) for p, q in self.strings), self.free_loops)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "holes": [{"arity": h.arity, "first_point": h.first_point} for h in self.holes],
            "strings": [[list(p), list(q)] for p, q in self.strings],
            "free_loops": self.free_loops,
            "outer_first_point": self.outer_first_point,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PlanarTangle":
        return cls(
            int(obj["k"]),
            tuple(Hole(int(h["arity"]), int(h.get("first_point", 0))) for h in obj.get("holes", [])),
            tuple((tuple(p), tuple(q)) for p, q in obj.get("strings", [])),
            int(obj.get("free_loops", 0)),
            int(obj.get("outer_first_point", 0)),
        )

    @cached_property
    def diagnostic(self) -> Diagnostic:
        return validate(self)


# ---- validation ---------------------------------------------------------

def _rotate(t: PlanarTangle, dart):
    """Next dart counterclockwise around its disk, seen from the tangle."""
    d, p = dart
    size = t.size(d)
    return (d, (p + 1) % size) if d == OUTER else (d, (p - 1) % size)


def _corner_white(t: PlanarTangle, dart) -> bool:
    """Colour of the region between ``dart`` and ``_rotate(dart)``."""
    d, p = dart
    later = (p + 1) % t.size(d) if d == OUTER else p
    return t.relative(d, later) % 2 == 0


def faces(t: PlanarTangle) -> list:
    """Face orbits; each face is the list of darts whose following corner
    bounds it."""
    out = []
    seen = set()
    for start in sorted(t.partner):
        if start in seen:
            continue
        face = []
        x = start
        while x not in seen:
            seen.add(x)
            y = t.partner[x]
            face.append(y)
            x = _rotate(t, y)
        out.append(face)
    return out


def _components(t: PlanarTangle) -> int:
    parent = {d: d for d in range(-1, len(t.holes))}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p, q in t.strings:
        parent[find(p[0])] = find(q[0])
    return len({find(d) for d in parent})


def validate(t: PlanarTangle) -> Diagnostic:
    """Planarity by face tracing and Euler characteristic, then shading."""
    fs = faces(t)
    isolated = sum(1 for d in range(-1, len(t.holes)) if t.size(d) == 0)
    V = len(t.holes) + 1
    E = len(t.strings)
    F = len(fs) + isolated
    C = _components(t)
    if V - E + F != 2 * C:
        genus = (2 * C - (V - E + F)) // 2
        return Diagnostic(False, "planarity",
                          f"V - E + F = {V - E + F} but {2 * C} expected for {C} planar component(s); "
                          f"total genus {genus}", witness=max(fs, key=len))
    for face in fs:
        colours = {_corner_white(t, y) for y in face}
        if len(colours) > 1:
            return Diagnostic(False, "shading",
                              "face meets both a white and a black corner", witness=face)
    return Diagnostic(True)


# ---- composition --------------------------------------------------------

def compose(t: PlanarTangle, j: int, s: PlanarTangle) -> PlanarTangle:
    """Paste ``s`` into hole ``j`` of ``t`` (0-based), aligning first points.

    Holes of ``s`` are spliced into the hole list at position ``j``; loops
    closed across the erased boundary are added to ``free_loops``.
    """
    if not 0 <= j < len(t.holes):
        raise TangleError(f"tangle has no hole {j} (holes: {len(t.holes)})")
    if t.holes[j].arity != s.k:
        raise TangleError(f"arity mismatch: hole {j} has arity {t.holes[j].arity}, tangle has {s.k}")
    for name, x in (("outer tangle", t), ("inserted tangle", s)):
        diag = x.diagnostic
        if not diag:
            raise TangleError(f"{name} invalid ({diag.condition}): {diag.message}")

    ns = len(s.holes)

    def from_t(x):
        d, p = x
        if d == j:
            return ("B", t.relative(j, p))
        if d > j:
            d += ns - 1
        return ("P", d, p)

    def from_s(x):
        d, p = x
        if d == OUTER:
            return ("B", s.relative(OUTER, p))
        return ("P", j + d, p)

    upper = {}
    for p, q in t.strings:
        upper[from_t(p)], upper[from_t(q)] = from_t(q), from_t(p)
    lower = {}
    for p, q in s.strings:
        lower[from_s(p)], lower[from_s(q)] = from_s(q), from_s(p)
    ends, loops = trace_strands([upper, lower])
    strings = {tuple(sorted((p[1:], q[1:]))) for p, q in ends.items()}
    holes = t.holes[:j] + s.holes + t.holes[j + 1:]
    return PlanarTangle(t.k, holes, tuple(strings),
                        t.free_loops + s.free_loops + len(loops), t.outer_first_point)


# ---- evaluation ---------------------------------------------------------

def _fc_color(t: PlanarTangle, d: int, p: int, sub: int) -> str:
    return point_color(2 * t.relative(d, p) + sub)


@lru_cache(maxsize=200000)
def _eval_basis(t: PlanarTangle, family: str, diagrams: tuple):
    """Glue basis diagrams into the holes; returns (diagram, la, lb)."""
    fc = family == "FC"
    subs = (0, 1) if fc else (None,)

    def node(d, p, s):
        return (d, p, s) if fc else (d, p)

    strings = {}
    for p, q in t.strings:
        if fc:
            for s in subs:
                c = _fc_color(t, p[0], p[1], s)
                s2 = s if _fc_color(t, q[0], q[1], s) == c else 1 - s
                strings[node(*p, s)], strings[node(*q, s2)] = node(*q, s2), node(*p, s)
        else:
            strings[node(*p, None)], strings[node(*q, None)] = node(*q, None), node(*p, None)

    inside = {}
    for j, dg in enumerate(diagrams):
        for P, Q in enumerate(dg.pairing):
            if fc:
                x = node(j, t.absolute(j, P // 2), P % 2)
                y = node(j, t.absolute(j, Q // 2), Q % 2)
            else:
                x, y = node(j, t.absolute(j, P), None), node(j, t.absolute(j, Q), None)
            inside[x] = y

    ends, loops = trace_strands([strings, inside])

    w = 2 if fc else 1
    size = w * 2 * t.k
    def out_node(P):
        if fc:
            return node(OUTER, t.absolute(OUTER, P // 2), P % 2)
        return node(OUTER, t.absolute(OUTER, P), None)
    index = {out_node(P): P for P in range(size)}
    pairing = tuple(index[ends[out_node(P)]] for P in range(size))

    la = lb = t.free_loops
    if fc:
        for loop in loops:
            d, p, s = loop[0]
            if _fc_color(t, d, p, s) == "a":
                la += 1
            else:
                lb += 1
    else:
        la += len(loops)
        lb += len(loops)
    return diagram_class(family)(t.k, pairing), la, lb


def evaluate(t: PlanarTangle, inputs, family: str | None = None) -> AlgebraElement:
    """Multilinear action of ``t`` on one algebra element per hole."""
    inputs = list(inputs)
    if family is None:
        family = inputs[0].family if inputs else "TL"
    family = family.upper()
    diagram_class(family)
    if len(inputs) != len(t.holes):
        raise TangleError(f"tangle has {len(t.holes)} holes but {len(inputs)} inputs were given")
    for j, (x, h) in enumerate(zip(inputs, t.holes)):
        if x.family != family:
            raise TangleError(f"input {j} is {x.family}, expected {family}")
        if x.n != h.arity:
            raise TangleError(f"input {j} has level {x.n}, hole arity is {h.arity}")
    diag = t.diagnostic
    if not diag:
        raise TangleError(f"invalid tangle ({diag.condition}): {diag.message}")

    out = {}
    for combo in itertools.product(*(list(x.items()) for x in inputs)):
        coeff = monomial(0, 0)
        for _, c in combo:
            coeff = coeff * c
        d, la, lb = _eval_basis(t, family, tuple(dg for dg, _ in combo))
        loop = DELTA ** la if family == "TL" else monomial(la, lb)
        out[d] = out.get(d, ZERO) + coeff * loop
    return AlgebraElement(family, t.k, out)


# ---- standard tangles ---------------------------------------------------

ELEMENTARY_KINDS = ("multiplication", "inclusion", "conditional_expectation", "rotation",
                    "jones_projection", "unit", "identity")


def elementary(kind: str, n: int) -> PlanarTangle:
    """Standard tangles.  ``n`` is the arity of the holes (or of the output
    for hole-free tangles)."""
    O = OUTER
    if n < 1:
        raise TangleError("elementary tangles need n >= 1")
    bot = lambda size, t: 2 * size - 1 - t  # bottom row point t of a size-`size` box
    if kind == "multiplication":
        s = [((O, t), (0, t)) for t in range(n)]
        s += [((0, bot(n, t)), (1, t)) for t in range(n)]
        s += [((1, bot(n, t)), (O, bot(n, t))) for t in range(n)]
        return PlanarTangle(n, (Hole(n), Hole(n)), tuple(s))
    if kind == "inclusion":
        s = [((O, t), (0, t)) for t in range(n)]
        s += [((O, bot(n + 1, t)), (0, bot(n, t))) for t in range(n)]
        s.append(((O, n), (O, bot(n + 1, n))))
        return PlanarTangle(n + 1, (Hole(n),), tuple(s))
    if kind == "conditional_expectation":
        s = [((O, t), (0, t)) for t in range(n - 1)]
        s += [((O, bot(n - 1, t)), (0, bot(n, t))) for t in range(n - 1)]
        s.append(((0, n - 1), (0, bot(n, n - 1))))
        return PlanarTangle(n - 1, (Hole(n),), tuple(s))
    if kind == "rotation":
        s = [((O, p), (0, p)) for p in range(2 * n)]
        return PlanarTangle(n, (Hole(n, 2 % (2 * n)),), tuple(s))
    if kind == "identity":
        s = [((O, p), (0, p)) for p in range(2 * n)]
        return PlanarTangle(n, (Hole(n),), tuple(s))
    if kind == "unit":
        s = [((O, t), (O, bot(n, t))) for t in range(n)]
        return PlanarTangle(n, (), tuple(s))
    if kind == "jones_projection":
        if n < 2:
            raise TangleError("jones_projection needs n >= 2")
        s = [((O, t), (O, bot(n, t))) for t in range(n - 2)]
        s += [((O, n - 2), (O, n - 1)), ((O, bot(n, n - 2)), (O, bot(n, n - 1)))]
        return PlanarTangle(n, (), tuple(s))
    raise TangleError(f"unknown tangle kind {kind!r}")


# ---- composition trees --------------------------------------------------

@dataclass(frozen=True)
class TangleTree:
    """A tangle with, per hole, either a subtree or ``None`` (an input)."""

    tangle: PlanarTangle
    children: tuple = field(default=None)

    def __post_init__(self):
        kids = self.children
        if kids is None:
            kids = (None,) * len(self.tangle.holes)
        kids = tuple(kids)
        if len(kids) != len(self.tangle.holes):
            raise TangleError("one child (or None) per hole is required")
        for j, c in enumerate(kids):
            if c is not None and c.tangle.k != self.tangle.holes[j].arity:
                raise TangleError(f"child {j} has arity {c.tangle.k}, hole needs {self.tangle.holes[j].arity}")
        object.__setattr__(self, "children", kids)

    @property
    def leaves(self) -> list:
        """Arities of the input slots, left to right."""
        out = []
        for h, c in zip(self.tangle.holes, self.children):
            out.extend([h.arity] if c is None else c.leaves)
        return out

    @property
    def depth(self) -> int:
        return 1 + max((c.depth for c in self.children if c is not None), default=0)


def flatten(tree: TangleTree) -> PlanarTangle:
    t = tree.tangle
    for j in reversed(range(len(tree.children))):
        child = tree.children[j]
        if child is not None:
            t = compose(t, j, flatten(child))
    return t


def recursive_eval(tree: TangleTree, inputs, family: str) -> AlgebraElement:
    it = iter(inputs)

    def go(node):
        args = [next(it) if c is None else go(c) for c in node.children]
        return evaluate(node.tangle, args, family)

    out = go(tree)
    if next(it, None) is not None:
        raise TangleError("too many inputs for the composition tree")
    return out


def flatten_eval(tree: TangleTree, inputs, family: str) -> AlgebraElement:
    """Flatten the tree into one tangle, then evaluate once."""
    inputs = list(inputs)
    return evaluate(flatten(tree), inputs, family)


# ---- random tangles -----------------------------------------------------

def random_tangle(k: int, rng: random.Random, max_arity: int = 3) -> PlanarTangle:
    """A random standard tangle with output arity ``k`` and hole arities
    at most ``max_arity``."""
    options = [("multiplication", k), ("rotation", k), ("identity", k), ("unit", k)]
    if k >= 2:
        options += [("inclusion", k - 1), ("jones_projection", k)]
    if k + 1 <= max_arity:
        options.append(("conditional_expectation", k + 1))
    kind, n = rng.choice(options)
    return elementary(kind, n)


def random_tree(k: int, depth: int, rng: random.Random, max_arity: int = 3,
                max_leaves: int = 5) -> TangleTree:
    while True:
        tree = _random_tree(k, depth, rng, max_arity)
        if len(tree.leaves) <= max_leaves:
            return tree


def _random_tree(k, depth, rng, max_arity):
    t = random_tangle(k, rng, max_arity)
    kids = []
    for h in t.holes:
        if depth > 1 and rng.random() < 0.6:
            kids.append(_random_tree(h.arity, depth - 1, rng, max_arity))
        else:
            kids.append(None)
    return TangleTree(t, tuple(kids))


def random_inputs(tree_or_tangle, family: str, rng: random.Random, max_terms: int = 2) -> list:
    arities = (tree_or_tangle.leaves if isinstance(tree_or_tangle, TangleTree)
               else list(tree_or_tangle.arities))
    return [random_element(family, a, rng, max_terms) for a in arities]
