"""Markov trace, Gram form and the numeric rank analysis built on them."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgebraElement, include, intermediate_p, jones_e, random_element, stack
from .diagrams import closure_loops, enumerate_basis, involute
from .scalars import DELTA, ZERO, ParamScalar, monomial

__all__ = [
    "markov_trace", "diagram_trace", "markov_property_check", "GramMatrix",
    "gram_matrix", "positivity_scan", "quantization_detect", "ScanRecord",
    "MAX_GRAM_DIM", "DEFAULT_TOL",
]

MAX_GRAM_DIM = 2000
DEFAULT_TOL = 1e-9


def diagram_trace(d) -> ParamScalar:
    la, lb = closure_loops(d)
    return monomial(la - d.n, lb - d.n)


def markov_trace(x: AlgebraElement) -> ParamScalar:
    """Normalized closure trace; ``tr(1) = 1``."""
    total = ZERO
    for d, c in x.items():
        total = total + c * diagram_trace(d)
    return total


@dataclass
class MarkovReport:
    family: str
    n: int
    failures: list = field(default_factory=list)
    checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures


def markov_property_check(n: int, family: str = "TL", samples: int = 20, seed=0,
                          elements=None) -> MarkovReport:
    """Check ``tr(include(x) e_n) = (ab)^-2 tr(x)`` on random ``x`` at level
    ``n``; for FC also ``tr(include(x) p_n)`` against ``b^-2`` (odd ``n``) or
    ``a^-2`` (even ``n``)."""
    family = family.upper()
    if n < 1:
        raise ValueError("Markov property needs n >= 1")
    rng = random.Random(seed)
    xs = list(elements) if elements is not None else [
        random_element(family, n, rng) for _ in range(samples)]
    e = jones_e(n, n + 1, family)
    rep = MarkovReport(family, n)
    checks = [("e", e, DELTA ** -2)]
    if family == "FC":
        ratio = monomial(0, -2) if n % 2 else monomial(-2, 0)
        checks.append(("p", intermediate_p(n, n + 1), ratio))
    for x in xs:
        tx = markov_trace(x)
        for name, g, ratio in checks:
            lhs = markov_trace(include(x) * g)
            rep.checked += 1
            if lhs != ratio * tx:
                rep.failures.append((name, x, lhs, ratio * tx))
    return rep


class GramMatrix:
    """``entries[r][s] = tr(involute(basis[s]) * basis[r])``."""

    def __init__(self, family, n, basis, entries):
        self.family = family
        self.n = n
        self.basis = list(basis)
        self.entries = entries
        self._monomial = all(e.is_monomial() for row in entries for e in row)
        if self._monomial:
            items = [next(iter(e.items())) for row in entries for e in row]
            size = len(self.basis)
            self._i = np.array([k[0] for k, _ in items], dtype=float).reshape(size, size)
            self._j = np.array([k[1] for k, _ in items], dtype=float).reshape(size, size)
            self._c = np.array([float(c) for _, c in items]).reshape(size, size)

    @property
    def size(self) -> int:
        return len(self.basis)

    def evaluate(self, a_val: float, b_val: float) -> np.ndarray:
        if not (a_val > 0 and b_val > 0):
            raise ValueError(f"evaluation point must be positive, got a={a_val}, b={b_val}")
        if self._monomial:
            return self._c * np.power(float(a_val), self._i) * np.power(float(b_val), self._j)
        return np.array([[e.evaluate(a_val, b_val) for e in row] for row in self.entries])

    def evaluate_delta(self, delta: float) -> np.ndarray:
        if not delta > 0:
            raise ValueError(f"delta must be positive, got {delta}")
        r = math.sqrt(delta)
        return self.evaluate(r, r)

    def to_text(self):
        return [[str(e) for e in row] for row in self.entries]


def gram_matrix(n: int, family: str = "TL") -> GramMatrix:
    family = family.upper()
    basis = enumerate_basis(family, n)
    if len(basis) > MAX_GRAM_DIM:
        raise ValueError(f"dimension {len(basis)} exceeds the Gram guard {MAX_GRAM_DIM}")
    stars = [involute(d) for d in basis]
    tl = family == "TL"
    entries = []
    for d in basis:
        row = []
        for es in stars:
            prod, la, lb = stack(es, d)
            tr = diagram_trace(prod)
            row.append(tr * (DELTA ** la if tl else monomial(la, lb)))
        entries.append(row)
    return GramMatrix(family, n, basis, entries)


@dataclass
class ScanRecord:
    delta: float
    det: float
    min_eig: float
    rank: int

    def as_dict(self):
        return {"delta": self.delta, "det": self.det, "min_eig": self.min_eig, "rank": self.rank}


def _rank(eigs: np.ndarray, tol: float) -> int:
    lam_max = float(np.max(np.abs(eigs))) if eigs.size else 0.0
    return int(np.sum(np.abs(eigs) > tol * lam_max))


def positivity_scan(n: int, delta_values, family: str = "TL", tol: float = DEFAULT_TOL,
                    gram: GramMatrix | None = None) -> list:
    """Eigen-analysis of the TL Gram matrix at ``a = b = sqrt(delta)``."""
    if family.upper() != "TL":
        raise ValueError("positivity_scan is defined for the one-parameter TL family")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    g = gram or gram_matrix(n, "TL")
    out = []
    for delta in delta_values:
        if not delta > 0:
            raise ValueError(f"delta must be positive, got {delta}")
        m = g.evaluate_delta(delta)
        eigs = np.linalg.eigvalsh(m)
        out.append(ScanRecord(float(delta), float(np.linalg.det(m)), float(eigs[0]), _rank(eigs, tol)))
    return out


def _inertia(g: GramMatrix, delta: float) -> int:
    eigs = np.linalg.eigvalsh(g.evaluate_delta(delta))
    return int(np.sum(eigs < 0))


def quantization_detect(n: int, lo: float, hi: float, steps: int, xtol: float = 1e-8,
                        gram: GramMatrix | None = None) -> list:
    """Singular points of the TL Gram form on ``[lo, hi]``.

    A grid cell brackets a root when the number of negative eigenvalues
    differs at its ends (this includes every sign change of the
    determinant); brackets are bisected down to ``xtol``.  Grid minima of
    the relative smallest |eigenvalue| that do not change inertia are
    refined by bounded minimization.
    """
    if steps < 1 or not hi > lo:
        raise ValueError("empty grid")
    if not lo > 0:
        raise ValueError("grid must lie in delta > 0")
    g = gram or gram_matrix(n, "TL")
    grid = np.linspace(lo, hi, steps + 1)
    inertia = [_inertia(g, d) for d in grid]

    roots = []
    for k in range(steps):
        a, b = float(grid[k]), float(grid[k + 1])
        ia, ib = inertia[k], inertia[k + 1]
        if ia == ib:
            continue
        while b - a > xtol:
            mid = 0.5 * (a + b)
            if _inertia(g, mid) != ia:
                b = mid
            else:
                a = mid
        roots.append(0.5 * (a + b))

    roots.extend(_touching_roots(g, grid, inertia, xtol))
    roots.sort()
    merged = []
    for r in roots:
        if not merged or r - merged[-1] > 10 * xtol:
            merged.append(r)
    return merged


def _rel_min_abs_eig(g: GramMatrix, delta: float) -> float:
    eigs = np.abs(np.linalg.eigvalsh(g.evaluate_delta(delta)))
    return float(eigs.min() / eigs.max())


def _touching_roots(g, grid, inertia, xtol, threshold=1e-6):
    from scipy.optimize import minimize_scalar

    vals = [_rel_min_abs_eig(g, d) for d in grid]
    found = []
    for k in range(1, len(grid) - 1):
        if not (vals[k] <= vals[k - 1] and vals[k] <= vals[k + 1]):
            continue
        if inertia[k - 1] != inertia[k + 1]:
            continue  # already bracketed
        res = minimize_scalar(lambda d: _rel_min_abs_eig(g, d),
                              bounds=(float(grid[k - 1]), float(grid[k + 1])),
                              method="bounded", options={"xatol": xtol})
        if res.fun < threshold:
            found.append(float(res.x))
    return found
