"""Acceptance checks, runnable from the CLI (``planaralg selftest``) and from
pytest.  Every check returns ``(passed, detail)``."""

from __future__ import annotations

import math
import random
import time

import numpy as np

from .algebra import check_relations, double, random_element
from .cells import bratteli, path_counts
from .diagrams import enumerate_basis, enumerate_fc, enumerate_tl
from .tangles import (
    elementary, evaluate, flatten_eval, random_inputs, random_tree, recursive_eval,
)
from .traces import (
    DEFAULT_TOL, gram_matrix, markov_property_check, markov_trace, quantization_detect,
)
from .algebra import AlgebraElement

FUSS_CATALAN = [1, 1, 3, 12, 55, 273, 1428]
CATALAN = [1, 1, 2, 5, 14, 42, 132, 429, 1430]


def brute_force_matchings(colors) -> int:
    """Count non-crossing perfect matchings by pairing the lowest free point
    with every other free point of the same colour and rejecting a chord as
    soon as it crosses one already placed."""
    m = len(colors)
    if m % 2:
        return 0

    def crosses(p, q, chords):
        for r, s in chords:
            if (p < r < q) != (p < s < q):
                return True
        return False

    def go(free, chords):
        if not free:
            return 1
        p = free[0]
        total = 0
        for idx in range(1, len(free)):
            q = free[idx]
            if colors[p] != colors[q] or crosses(p, q, chords):
                continue
            chords.append((p, q))
            total += go(free[1:idx] + free[idx + 1:], chords)
            chords.pop()
        return total

    return go(list(range(m)), [])


def check_fc_dimensions():
    t0 = time.perf_counter()
    sizes = [len(enumerate_fc(n)) for n in range(7)]
    formula = [math.comb(3 * n, n) // (2 * n + 1) for n in range(7)]
    dt = time.perf_counter() - t0
    ok = sizes == FUSS_CATALAN == formula and dt < 60
    return ok, f"sizes {sizes}, {dt:.2f}s"


def check_p2_p3():
    d2, d3 = len(enumerate_fc(2)), len(enumerate_fc(3))
    return (d2, d3) == (3, 12), f"dim P2 = {d2}, dim P3 = {d3}"


def check_tl_sizes():
    t0 = time.perf_counter()
    sizes = [len(enumerate_tl(n)) for n in range(9)]
    oracle = [brute_force_matchings([None] * (2 * n)) for n in range(9)]
    dt = time.perf_counter() - t0
    ok = sizes == CATALAN == oracle and dt < 30
    return ok, f"sizes {sizes}, oracle {oracle}, {dt:.2f}s"


def check_relation_suite():
    bad = []
    count = 0
    for family, top in (("TL", 6), ("FC", 5)):
        for n in range(2, top + 1):
            rep = check_relations(n, family)
            count += len(rep.checks)
            bad += [f"{family}{n}: {c.name}" for c in rep.failures()]
    return not bad, f"{count} relations checked" + (f"; failed: {bad[:3]}" if bad else "")


def check_trace_contracts(seed=0, pairs=200):
    rng = random.Random(seed)
    problems = []
    for family in ("TL", "FC"):
        for n in range(0, 5):
            if markov_trace(AlgebraElement.identity(family, n)) != 1:
                problems.append(f"tr(1) != 1 for {family}{n}")
        for _ in range(pairs):
            n = rng.randint(1, 4)
            x, y = random_element(family, n, rng), random_element(family, n, rng)
            if markov_trace(x * y) != markov_trace(y * x):
                problems.append(f"tr(xy) != tr(yx) in {family}{n}")
                break
        for n in range(1, 5):
            rep = markov_property_check(n, family, samples=10, seed=rng.randrange(2**32))
            if not rep.passed:
                problems.append(f"Markov property fails for {family}{n}")
    return not problems, "; ".join(problems) or f"tr(1), {pairs} trace pairs per family, Markov n<=4"


def check_quantization():
    t0 = time.perf_counter()
    problems = []
    for n in (2, 3, 4, 5):
        g = gram_matrix(n, "TL")
        roots = quantization_detect(n, 0.5, 2.0, 2000, gram=g)
        for m in range(3, n + 2):
            target = 2 * math.cos(math.pi / m)
            if not any(abs(r - target) <= 1e-6 for r in roots):
                problems.append(f"n={n}: 2cos(pi/{m}) missing")
        for delta in (2.0, 2.5, 3.0):
            eigs = np.linalg.eigvalsh(g.evaluate_delta(delta))
            if not eigs[0] > DEFAULT_TOL * eigs[-1]:
                problems.append(f"n={n}: not positive definite at delta={delta}")
    dt = time.perf_counter() - t0
    if dt >= 120:
        problems.append(f"runtime {dt:.1f}s")
    return not problems, "; ".join(problems) or f"all 2cos(pi/m) found, PD at 2, 2.5, 3 ({dt:.2f}s)"


def check_semisimplicity():
    problems = []
    for family, top in (("TL", 7), ("FC", 5)):
        g = bratteli(top + 1, family)
        for n, verts in enumerate(g.levels):
            if sum(d * d for d in verts.values()) != len(enumerate_basis(family, n)):
                problems.append(f"{family}{n}: sum d^2 != dim")
        try:
            path_counts(g)
        except ValueError as exc:
            problems.append(str(exc))
        if family == "TL":
            for k in range(1, len(g.levels)):
                want = {(u, v): 1 for u in g.levels[k - 1] for v in g.levels[k] if abs(u - v) == 1}
                if g.edges[k] != want:
                    problems.append(f"TL level {k} is not the A-type half-line")
    return not problems, "; ".join(problems) or "sum d^2 = dim, path counts = dims, TL A-type"


def check_operad(seed=0):
    rng = random.Random(seed)
    problems = []
    for family in ("TL", "FC"):
        for _ in range(50):
            n = rng.randint(1, 3)
            x, y = random_element(family, n, rng), random_element(family, n, rng)
            if evaluate(elementary("multiplication", n), [x, y]) != x * y:
                problems.append(f"{family}: multiplication tangle != multiply")
                break
    for i in range(100):
        family = ("TL", "FC")[i % 2]
        tree = random_tree(rng.randint(1, 3), 3, rng)
        xs = random_inputs(tree, family, rng)
        if flatten_eval(tree, xs, family) != recursive_eval(tree, xs, family):
            problems.append(f"naturality fails on tree {i}")
    for family in ("TL", "FC"):
        for n in range(1, 5):
            rot = elementary("rotation", n)
            for d in enumerate_basis(family, n):
                x = AlgebraElement.basis(d)
                y = x
                orbit = []
                for _ in range(n):
                    y = evaluate(rot, [y])
                    orbit.append(y)
                if orbit[-1] != x:
                    problems.append(f"{family}{n}: rotation^n != id")
                    break
            if n == 3:
                basis = [AlgebraElement.basis(d) for d in enumerate_basis(family, 3)]
                r1 = [evaluate(rot, [b]) for b in basis]
                r2 = [evaluate(rot, [b]) for b in r1]
                if r1 == basis or r2 == basis:
                    problems.append(f"{family}3: rotation period is not exactly 3")
    return not problems, "; ".join(problems) or "multiplication tangle, 100 trees, rotation periods"


def check_doubling(seed=0, pairs=100):
    rng = random.Random(seed)
    for _ in range(pairs):
        n = rng.randint(1, 4)
        x, y = random_element("TL", n, rng), random_element("TL", n, rng)
        if double(x * y) != double(x) * double(y):
            return False, f"double fails at n={n}"
    return True, f"{pairs} random pairs, n<=4"


CRITERIA = [
    ("1 Fuss-Catalan dimensions n=0..6", check_fc_dimensions),
    ("2 dim P2 = 3, dim P3 = 12", check_p2_p3),
    ("3 Temperley-Lieb sizes vs brute force", check_tl_sizes),
    ("4 relation suite TL<=6, FC<=5", check_relation_suite),
    ("5 trace contracts", check_trace_contracts),
    ("6 index quantization and positivity", check_quantization),
    ("7 generic semisimplicity", check_semisimplicity),
    ("8 planar-operad axioms", check_operad),
    ("9 doubling homomorphism", check_doubling),
]


def run_all(out=print) -> bool:
    ok_all = True
    for name, fn in CRITERIA:
        ok, detail = fn()
        ok_all &= ok
        out(f"{'PASS' if ok else 'FAIL'} [{name}] {detail}")
    return ok_all
