"""Exponential sums: direct evaluation, stationary-phase transforms,
Kusmin-Landau checks, and mean-value integrals.

Conventions: e(x) = exp(2*pi*i*x); every phase is reduced mod 1 before
the trigonometric call so that large arguments (f can exceed 1e6
cycles) keep full precision.  Sums written over an interval (a, b) are
over integers strictly inside; Kusmin-Landau sums include endpoints.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .errors import ConvergenceError, RangeError, RootBracketError


def e_of(x: float) -> complex:
    """e(x) with argument reduction mod 1."""
    return cmath.exp(2j * math.pi * math.fmod(x, 1.0))


def _interior_integers(lo: float, hi: float) -> range:
    """Integers strictly between lo and hi (ties at either end excluded)."""
    start = math.floor(lo) + 1
    stop = math.ceil(hi) - 1
    return range(start, stop + 1)


@dataclass(frozen=True)
class PhaseSpec:
    """Monomial phase f(x) = (y/alpha) * (x/n_scale)**alpha on (n_scale, eta*n_scale).

    Derived quantities: m_scale = y/n_scale is f' at the left endpoint;
    beta is the dual exponent with 1/alpha + 1/beta = 1.
    """

    alpha: float
    y: float
    n_scale: float
    eta: float

    def validate(self) -> None:
        if self.alpha == 0:
            raise RangeError("alpha must be nonzero")
        if self.y < 0:
            raise RangeError(f"amplitude y must be >= 0, got {self.y}")
        if self.n_scale <= 0:
            raise RangeError(f"scale must be positive, got {self.n_scale}")
        if self.eta <= 1:
            raise RangeError(f"interval ratio eta must exceed 1, got {self.eta}")

    @property
    def m_scale(self) -> float:
        return self.y / self.n_scale

    @property
    def beta(self) -> float:
        if self.alpha == 1:
            raise RangeError("beta undefined at alpha = 1")
        return self.alpha / (self.alpha - 1)

    def f(self, x: float) -> float:
        return (self.y / self.alpha) * (x / self.n_scale) ** self.alpha

    def df(self, x: float) -> float:
        return (self.y / self.n_scale) * (x / self.n_scale) ** (self.alpha - 1)

    def d2f(self, x: float) -> float:
        return (self.y * (self.alpha - 1) / self.n_scale**2) * (x / self.n_scale) ** (self.alpha - 2)

    def d3f(self, x: float) -> float:
        c = self.y * (self.alpha - 1) * (self.alpha - 2) / self.n_scale**3
        return c * (x / self.n_scale) ** (self.alpha - 3)


def direct_monomial_sum(p: PhaseSpec) -> complex:
    """Sum of e(f(n)) over integers strictly inside (n_scale, eta*n_scale)."""
    p.validate()
    total = 0j
    for n in _interior_integers(p.n_scale, p.eta * p.n_scale):
        total += e_of(p.f(n))
    return total


def monomial_term_count(p: PhaseSpec) -> int:
    return len(_interior_integers(p.n_scale, p.eta * p.n_scale))


def vdc_transform_budget(p: PhaseSpec) -> float:
    """Error allowance for the monomial transform: n_scale/sqrt(y) + log y."""
    return p.n_scale / math.sqrt(p.y) + math.log(p.y)


def vdc_transform_sum(p: PhaseSpec) -> tuple[complex, float]:
    """Stationary-phase (B-process) transform of the monomial sum.

    Returns (value, budget) where the dual sum runs over integers m
    strictly between the endpoint derivatives c1*m_scale and c2*m_scale
    (c1 = min(1, eta**(alpha-1)), c2 = max), each contributing
    sqrt(|beta-1|*y) * (1/m) * (m/m_scale)**(beta/2)
    * e(sign(alpha-1)/8 - (y/beta)*(m/m_scale)**beta).
    An empty dual range returns value 0 with the full budget.
    """
    p.validate()
    if p.alpha >= 1 and p.alpha == int(p.alpha):
        raise RangeError(f"alpha must not be a positive integer, got {p.alpha}")
    if p.y <= 0:
        raise RangeError("transform needs y > 0")
    m_scale = p.m_scale
    beta = p.beta
    ratio = p.eta ** (p.alpha - 1)
    c1, c2 = min(1.0, ratio), max(1.0, ratio)
    budget = vdc_transform_budget(p)
    dual = _interior_integers(c1 * m_scale, c2 * m_scale)
    if len(dual) == 0:
        return 0j, budget
    amp = math.sqrt(abs(beta - 1) * p.y)
    offset = 0.125 if p.alpha > 1 else -0.125
    total = 0j
    for m in dual:
        u = m / m_scale
        phase = offset - (p.y / beta) * u**beta
        total += (u ** (beta / 2) / m) * e_of(phase)
    return amp * total, budget


@dataclass
class GenericPhase:
    """Phase on [a, b] given by callables for f and its derivatives.

    df_increasing records the declared monotonicity of f'; when None it
    is inferred from the endpoint values.  Third and fourth derivatives
    are optional metadata used only by validate().
    """

    f: Callable[[float], float]
    df: Callable[[float], float]
    d2f: Callable[[float], float]
    a: float
    b: float
    d3f: Optional[Callable[[float], float]] = None
    d4f: Optional[Callable[[float], float]] = None
    df_increasing: Optional[bool] = None

    def validate(self, rel_tol: float = 1e-6, points: int = 9) -> None:
        """Check supplied derivatives against central differences of f.

        Raises ValueError when a sampled derivative disagrees beyond
        rel_tol (with a small absolute floor).
        """
        if not self.b > self.a:
            raise RangeError(f"need b > a, got [{self.a}, {self.b}]")
        pairs = [(self.f, self.df), (self.df, self.d2f)]
        if self.d3f is not None:
            pairs.append((self.d2f, self.d3f))
        if self.d4f is not None and self.d3f is not None:
            pairs.append((self.d3f, self.d4f))
        for i in range(1, points + 1):
            x = self.a + (self.b - self.a) * i / (points + 1)
            h = 6e-6 * max(1.0, abs(x))
            for base, deriv in pairs:
                fd = (base(x + h) - base(x - h)) / (2 * h)
                claimed = deriv(x)
                scale = max(abs(claimed), abs(fd), 1e-9)
                if abs(fd - claimed) > rel_tol * scale:
                    raise ValueError(
                        f"derivative mismatch at x={x}: finite difference {fd}, claimed {claimed}"
                    )


def monomial_phase(p: PhaseSpec) -> GenericPhase:
    """The monomial phase as a GenericPhase on [n_scale, eta*n_scale]."""
    p.validate()
    return GenericPhase(
        f=p.f,
        df=p.df,
        d2f=p.d2f,
        d3f=p.d3f,
        a=p.n_scale,
        b=p.eta * p.n_scale,
        df_increasing=p.alpha > 1,
    )


def direct_phase_sum(g: GenericPhase) -> complex:
    """Sum of e(f(n)) over integers strictly inside (a, b)."""
    total = 0j
    for n in _interior_integers(g.a, g.b):
        total += e_of(g.f(n))
    return total


def _solve_df_equals(g: GenericPhase, m: int, tol: float = 1e-12) -> float:
    """Root of f'(x) = m on [a, b] by bisection plus Newton polish."""
    lo, hi = g.a, g.b
    s_lo = g.df(lo) - m
    s_hi = g.df(hi) - m
    if s_lo == 0.0:
        return lo
    if s_hi == 0.0:
        return hi
    if (s_lo > 0) == (s_hi > 0):
        raise RootBracketError(
            f"f' - {m} has equal signs at both endpoints; monotonicity metadata violated"
        )
    x = 0.5 * (lo + hi)
    for _ in range(200):
        v = g.df(x) - m
        if abs(v) <= tol:
            break
        if (v > 0) == (s_lo > 0):
            lo = x
        else:
            hi = x
        # Newton step when it stays inside the bracket, else bisect
        d2 = g.d2f(x)
        if d2 != 0.0:
            x_new = x - v / d2
            if lo < x_new < hi:
                x = x_new
                continue
        x = 0.5 * (lo + hi)
        if hi - lo <= 1e-17 * max(1.0, abs(x)):
            break
    return x


def stationary_phase_generic(g: GenericPhase, samples: int = 33) -> tuple[complex, float]:
    """Dual sum over integers m strictly between f'(a) and f'(b).

    Each stationary point x_m (root of f'(x) = m) contributes
    |f''(x_m)|**(-1/2) * e(f(x_m) - m*x_m + sigma/8) with sigma the sign
    of f''.  Returns (value, budget) with budget
    1/sqrt(min sampled |f''|) + log(|f'(b) - f'(a)| + 2).
    """
    fa = g.df(g.a)
    fb = g.df(g.b)
    lo_val, hi_val = min(fa, fb), max(fa, fb)
    xs = [g.a + (g.b - g.a) * i / (samples - 1) for i in range(samples)]
    increasing = g.df_increasing if g.df_increasing is not None else fb >= fa
    dvals = [g.df(x) for x in xs]
    slack = 1e-9 * max(1.0, abs(fb - fa))
    for left, right in zip(dvals, dvals[1:]):
        drift = left - right if increasing else right - left
        if drift > slack:
            raise RootBracketError(
                "sampled f' violates the declared monotonicity; "
                "bisection preconditions are defeated"
            )
    min_d2 = min(abs(g.d2f(x)) for x in xs)
    spread = abs(fb - fa)
    budget = (1.0 / math.sqrt(min_d2) if min_d2 > 0 else math.inf) + math.log(spread + 2.0)
    total = 0j
    for m in _interior_integers(lo_val, hi_val):
        x_m = _solve_df_equals(g, m)
        d2 = g.d2f(x_m)
        offset = 0.125 if d2 > 0 else -0.125
        phase = math.fmod(g.f(x_m), 1.0) - math.fmod(m * x_m, 1.0) + offset
        total += e_of(phase) / math.sqrt(abs(d2))
    return total, budget


@dataclass(frozen=True)
class KusminReport:
    magnitude: float
    bound: float
    passed: bool


def kusmin_landau_check(g: GenericPhase, lam: float, sample_cap: int = 2000) -> KusminReport:
    """|sum of e(f(n)) over a <= n <= b| against the bound cot(pi*lam/2).

    The hypothesis (f' monotone, circle distance of f' to the integers
    at least lam) is the caller's to assert; sampled values of f' are
    spot-checked and an AssertionError is raised on violation.
    """
    if not 0 < lam < 1:
        raise RangeError(f"lam must lie in (0, 1), got {lam}")
    ns = range(math.ceil(g.a), math.floor(g.b) + 1)
    step = max(1, len(ns) // sample_cap)
    for n in list(ns)[::step]:
        d = g.df(n)
        dist = abs(d - round(d))
        assert dist >= lam - 1e-12, f"sampled ||f'({n})|| = {dist} < lam = {lam}"
    total = 0j
    for n in ns:
        total += e_of(g.f(n))
    magnitude = abs(total)
    bound = 1.0 / math.tan(math.pi * lam / 2)
    return KusminReport(magnitude=magnitude, bound=bound, passed=magnitude <= bound + 1e-9)


@dataclass
class MeanValueSpec:
    """Square mean of a bilinear exponential sum over y in [-y_max, y_max].

    phi maps (n, u) to a real phase; i1 and i2 are inclusive integer
    intervals; theta (optional) supplies coefficients with |theta| <= 1.
    """

    phi: Callable[[int, int], float]
    i1: tuple[int, int]
    i2: tuple[int, int]
    y_max: float
    theta: Optional[Callable[[int, int], complex]] = None
    rel_tol: float = 1e-4
    max_refinements: int = 18

    def validate(self) -> None:
        if self.y_max <= 0:
            raise RangeError(f"y_max must be positive, got {self.y_max}")
        if self.i1[0] > self.i1[1] or self.i2[0] > self.i2[1]:
            raise RangeError("integer intervals must be non-empty")

    def tables(self) -> tuple[np.ndarray, np.ndarray]:
        phis = []
        thetas = []
        for n in range(self.i1[0], self.i1[1] + 1):
            for u in range(self.i2[0], self.i2[1] + 1):
                phis.append(self.phi(n, u))
                t = 1.0 if self.theta is None else complex(self.theta(n, u))
                if abs(t) > 1 + 1e-12:
                    raise RangeError(f"|theta({n},{u})| = {abs(t)} exceeds 1")
                thetas.append(t)
        return np.asarray(phis, dtype=float), np.asarray(thetas, dtype=complex)


def _simpson_mean(phis: np.ndarray, thetas: np.ndarray, y_max: float, intervals: int,
                  chunk: int = 65536) -> float:
    """Composite Simpson for (1/y_max) * integral of |S(y)|^2 over [-y_max, y_max]."""
    nodes = np.linspace(-y_max, y_max, intervals + 1)
    weights = np.ones(intervals + 1)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    acc = 0.0
    for start in range(0, len(nodes), chunk):
        block = nodes[start:start + chunk]
        s = np.exp(2j * np.pi * np.outer(block, phis)) @ thetas
        acc += float(weights[start:start + chunk] @ (np.abs(s) ** 2))
    h = 2 * y_max / intervals
    return (h / 3) * acc / y_max


def mean_value_integral(s: MeanValueSpec) -> float:
    """Adaptive Simpson evaluation, refined until successive halvings agree.

    The initial step obeys step * max|phi| <= 0.1; refinement halves the
    step until the relative change drops below rel_tol.
    """
    s.validate()
    phis, thetas = s.tables()
    max_phi = float(np.max(np.abs(phis))) if len(phis) else 0.0
    intervals = max(8, math.ceil(2 * s.y_max * max_phi / 0.1))
    if intervals % 2:
        intervals += 1
    prev = _simpson_mean(phis, thetas, s.y_max, intervals)
    for _ in range(s.max_refinements):
        intervals *= 2
        cur = _simpson_mean(phis, thetas, s.y_max, intervals)
        if abs(cur - prev) <= s.rel_tol * max(abs(cur), 1e-12):
            return cur
        prev = cur
    raise ConvergenceError(
        f"quadrature did not stabilize within {s.max_refinements} refinements"
    )


def phase_pair_count(s: MeanValueSpec) -> int:
    """Ordered quadruples with |phi(n1,u1) - phi(n2,u2)| <= 1/y_max (float compare)."""
    s.validate()
    phis = [
        s.phi(n, u)
        for n in range(s.i1[0], s.i1[1] + 1)
        for u in range(s.i2[0], s.i2[1] + 1)
    ]
    t = 1.0 / s.y_max
    count = 0
    for p1 in phis:
        for p2 in phis:
            if abs(p1 - p2) <= t:
                count += 1
    return count


def calibration_entry(lemma_id: str, grid: list[dict], measured_constant: float) -> dict:
    return {"lemma_id": lemma_id, "grid": grid, "measured_constant": measured_constant}


def write_calibration(path: str | Path, entries: list[dict]) -> None:
    Path(path).write_text(json.dumps(entries, indent=2, sort_keys=True) + "\n")


def read_calibration(path: str | Path) -> list[dict]:
    return json.loads(Path(path).read_text())


def power_phase(k: int) -> Callable[[int, int], float]:
    """The bilinear phase (n, u) -> u / n**k used by the mean-value checks."""

    def phi(n: int, u: int) -> float:
        return u / n**k

    return phi


def calibrate_pair_count_vs_mean_value(k_values=(1, 2), sizes=(2, 4, 8),
                                       y_values=(4.0, 16.0)) -> dict:
    """Measure max ratio (pair count) / (mean-value integral) on a fixed grid."""
    grid = []
    best = 0.0
    for k in k_values:
        for size in sizes:
            for y in y_values:
                spec = MeanValueSpec(power_phase(k), (1, size), (1, size), y)
                value = mean_value_integral(spec)
                j = phase_pair_count(spec)
                ratio = j / value
                best = max(best, ratio)
                grid.append({"k": k, "size": size, "y_max": y, "pair_count": j,
                             "mean_value": value, "ratio": ratio})
    return calibration_entry("pair_count_vs_mean_value", grid, best)


def calibrate_mean_value_shortening(k_values=(1, 2), sizes=(2, 4, 8),
                                    y_pairs=((16.0, 4.0), (16.0, 8.0), (8.0, 4.0))) -> dict:
    """Measure max ratio mean(y_long) / mean(y_short) for y_short <= y_long."""
    grid = []
    best = 0.0
    for k in k_values:
        for size in sizes:
            for y_long, y_short in y_pairs:
                long_spec = MeanValueSpec(power_phase(k), (1, size), (1, size), y_long)
                short_spec = MeanValueSpec(power_phase(k), (1, size), (1, size), y_short)
                v_long = mean_value_integral(long_spec)
                v_short = mean_value_integral(short_spec)
                ratio = v_long / v_short
                best = max(best, ratio)
                grid.append({"k": k, "size": size, "y_long": y_long, "y_short": y_short,
                             "ratio": ratio})
    return calibration_entry("mean_value_window_shortening", grid, best)
