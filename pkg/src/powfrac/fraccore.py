"""Exact representation and enumeration of fractions u / n^k.

Everything here is exact: values are stdlib `fractions.Fraction`
(arbitrary-precision rationals, always in lowest terms), comparisons are
integer cross-multiplications, and no floating point ever decides an
order or a count.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator

from .errors import CoprimalityError, RangeError

# Arbitrary-precision signed rational; stdlib Fraction already guarantees
# lowest terms, positive denominator and exact total order.
ExactRational = Fraction

_RATIONAL_RE = re.compile(r"^([+-]?\d+)/(\d+)$")


def parse_rational(text: str) -> Fraction:
    """Parse a rational given strictly as "p/q" (no floats, no bare ints)."""
    m = _RATIONAL_RE.match(text.strip())
    if not m:
        raise ValueError(f"rational must be given as 'p/q', got {text!r}")
    num, den = int(m.group(1)), int(m.group(2))
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    """Serialize a rational as "p/q", always with an explicit denominator."""
    return f"{q.numerator}/{q.denominator}"


def euler_phi(n: int) -> int:
    """Euler totient by trial-division factorization (desk-scale n)."""
    if n < 1:
        raise RangeError(f"totient needs n >= 1, got {n}")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if m > 1:
        result -= result // m
    return result


@dataclass(frozen=True)
class PowerFraction:
    """One tuple (u, n, k) standing for the fraction u / n^k in (0, 1]."""

    u: int
    n: int
    k: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.u, self.n**self.k)

    def __str__(self) -> str:
        return f"{self.u}/{self.n}^{self.k}"

    def to_json(self) -> dict:
        return {"u": self.u, "n": self.n, "k": self.k}


_POWER_FRACTION_RE = re.compile(r"^(\d+)/(\d+)\^(\d+)$")


def parse_power_fraction(text: str, coprime_mode: bool = False) -> PowerFraction:
    """Inverse of str(PowerFraction); validates like make_fraction."""
    m = _POWER_FRACTION_RE.match(text.strip())
    if not m:
        raise ValueError(f"power fraction must be given as 'u/n^k', got {text!r}")
    return make_fraction(int(m.group(1)), int(m.group(2)), int(m.group(3)), coprime_mode)


def make_fraction(u: int, n: int, k: int, coprime_mode: bool = False) -> PowerFraction:
    """Validated constructor: 1 <= u <= n^k, optionally gcd(u, n) = 1."""
    if u < 1 or n < 1 or k < 1:
        raise RangeError(f"all of u, n, k must be >= 1, got ({u}, {n}, {k})")
    if u > n**k:
        raise RangeError(f"numerator {u} exceeds denominator {n}^{k} = {n**k}")
    if coprime_mode and gcd(u, n) > 1:
        raise CoprimalityError(f"gcd({u}, {n}) = {gcd(u, n)} > 1")
    return PowerFraction(u, n, k)


def compare_fractions(a: PowerFraction, b: PowerFraction) -> int:
    """-1 / 0 / +1 as a < b / a == b / a > b, by integer cross-multiplication."""
    lhs = a.u * b.n**b.k
    rhs = b.u * a.n**a.k
    return (lhs > rhs) - (lhs < rhs)


@dataclass(frozen=True)
class EnumerationSpec:
    """What to enumerate: exponent k, bases up to n_max, gcd filter, order."""

    k: int
    n_max: int
    coprime: bool = False
    sorted: bool = False


def tuple_count(k: int, n_max: int, coprime: bool = False) -> int:
    """Number of tuples the enumeration yields, in closed form.

    Without the gcd filter this is sum(n^k); with it, sum(n^(k-1) * phi(n)),
    because the coprimality condition on u is n-periodic over [1, n^k].
    """
    if coprime:
        return sum(n ** (k - 1) * euler_phi(n) for n in range(1, n_max + 1))
    return sum(n**k for n in range(1, n_max + 1))


def _per_base_stream(n: int, k: int, coprime: bool) -> Iterator[PowerFraction]:
    nk = n**k
    for u in range(1, nk + 1):
        if coprime and gcd(u, n) > 1:
            continue
        yield PowerFraction(u, n, k)


def enumerate_tuples(spec: EnumerationSpec) -> Iterator[PowerFraction]:
    """Yield all tuples (u, n) with 1 <= n <= n_max, 1 <= u <= n^k.

    With sorted=True the stream is non-decreasing by exact value, ties
    ordered by (n, u); implemented as a heap merge of the per-base
    streams (each already sorted), so memory stays O(n_max).
    """
    if spec.n_max < 1:
        raise RangeError(f"n_max must be >= 1, got {spec.n_max}")
    if spec.k < 1:
        raise RangeError(f"k must be >= 1, got {spec.k}")
    streams = (_per_base_stream(n, spec.k, spec.coprime) for n in range(1, spec.n_max + 1))
    if spec.sorted:
        yield from heapq.merge(*streams, key=lambda f: (f.value, f.n, f.u))
    else:
        for stream in streams:
            yield from stream


def circle_distance(z: Fraction, x: Fraction) -> Fraction:
    """Distance from z - x to the nearest integer; exact, in [0, 1/2]."""
    d = (z - x) % 1
    return min(d, 1 - d)
