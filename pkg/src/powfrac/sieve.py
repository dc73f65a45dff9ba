"""Large-sieve constants for power moduli.

The row set of the sieve matrix is {(a, n) : 1 <= n <= n_max,
1 <= a <= n^k, gcd(a, n) = 1}; columns are m = m_offset+1 .. m_offset+m_len
with entries e(a*m / n^k).  The optimal sieve constant is the top
eigenvalue of the m_len x m_len Gram matrix (window side: identical
nonzero spectrum as the row side, and desk instances have m_len <= P).
Phases are reduced as (a*m) mod n^k in exact integers before any float
enters, so large window offsets lose no accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Mapping, Sequence

import numpy as np

from .errors import ConvergenceError, DimensionError, RangeError, ResourceError
from .fraccore import tuple_count

DEFAULT_MAX_ENTRIES = 5_000_000


@dataclass(frozen=True)
class SieveProblem:
    k: int
    n_max: int
    m_len: int
    m_offset: int = 0

    def validate(self) -> None:
        if min(self.k, self.n_max, self.m_len) < 1:
            raise RangeError("k, n_max and m_len must all be >= 1")
        if self.m_offset < 0:
            raise RangeError(f"m_offset must be >= 0, got {self.m_offset}")


def sieve_rows(p: SieveProblem) -> list[tuple[int, int]]:
    """Row index set [(a, n)] in (n, a)-lexicographic order."""
    out = []
    for n in range(1, p.n_max + 1):
        nk = n**p.k
        for a in range(1, nk + 1):
            if gcd(a, n) == 1:
                out.append((a, n))
    return out


def row_count(p: SieveProblem) -> int:
    return tuple_count(p.k, p.n_max, coprime=True)


def _check_cap(p: SieveProblem, max_entries: int | None) -> None:
    cap = DEFAULT_MAX_ENTRIES if max_entries is None else max_entries
    entries = row_count(p) * p.m_len
    if entries > cap:
        raise ResourceError(f"matrix of {entries} entries exceeds cap {cap}")


def sieve_matrix(p: SieveProblem, max_entries: int | None = None) -> np.ndarray:
    """Complex P x m_len matrix with entries e(a*m / n^k), exactly reduced."""
    p.validate()
    _check_cap(p, max_entries)
    ms = np.arange(p.m_offset + 1, p.m_offset + p.m_len + 1, dtype=object)
    out = np.empty((row_count(p), p.m_len), dtype=complex)
    for i, (a, n) in enumerate(sieve_rows(p)):
        nk = n**p.k
        residues = np.array([(a * int(m)) % nk for m in ms], dtype=float)
        out[i] = np.exp(2j * np.pi * residues / nk)
    return out


def gram_matrix(p: SieveProblem, max_entries: int | None = None) -> np.ndarray:
    b = sieve_matrix(p, max_entries)
    g = b.conj().T @ b
    return (g + g.conj().T) / 2


def _top_eigenvalue_block_power(g: np.ndarray, tol: float, seed: int = 42,
                                block: int = 8, max_sweeps: int = 5000) -> float:
    """Largest eigenvalue of a Hermitian PSD matrix by seeded block power iteration.

    A small orthonormal block with Rayleigh-Ritz extraction keeps the
    convergence rate controlled by the gap past the block, so clustered
    top eigenvalues do not stall the plain vector iteration.
    """
    m = g.shape[0]
    if m == 1:
        return float(g[0, 0].real)
    width = min(block, m)
    rng = np.random.default_rng(seed)
    q = rng.standard_normal((m, width)) + 1j * rng.standard_normal((m, width))
    q, _ = np.linalg.qr(q)
    prev = 0.0
    for _ in range(max_sweeps):
        z = g @ q
        q, _ = np.linalg.qr(z)
        # Rayleigh-Ritz on the current block
        h = q.conj().T @ (g @ q)
        h = (h + h.conj().T) / 2
        ritz_vals, ritz_vecs = np.linalg.eigh(h)
        theta = float(ritz_vals[-1])
        top = q @ ritz_vecs[:, -1]
        residual = float(np.linalg.norm(g @ top - theta * top))
        scale = max(abs(theta), 1e-300)
        if residual <= 0.1 * tol * scale and abs(theta - prev) <= 0.1 * tol * scale:
            return theta
        prev = theta
    raise ConvergenceError(f"block power iteration did not converge in {max_sweeps} sweeps")


def sieve_gram_eigenvalue(p: SieveProblem, tol: float = 1e-8, seed: int = 42,
                          max_entries: int | None = None) -> float:
    """The optimal sieve constant: top eigenvalue of the window-side Gram matrix."""
    if tol <= 0:
        raise RangeError(f"tol must be positive, got {tol}")
    g = gram_matrix(p, max_entries)
    return _top_eigenvalue_block_power(g, tol, seed=seed)


def dense_gram_eigenvalue(p: SieveProblem, max_entries: int | None = None) -> float:
    """Oracle: full Hermitian eigensolver on the same Gram matrix."""
    g = gram_matrix(p, max_entries)
    return float(np.linalg.eigvalsh(g)[-1])


def l1_sieve_sum(p: SieveProblem, alpha: Sequence[complex],
                 max_entries: int | None = None) -> float:
    """Sum over rows of |sum_m alpha_m e(a*m/n^k)| (the l1-of-rows functional)."""
    p.validate()
    alpha_arr = np.asarray(alpha, dtype=complex)
    if alpha_arr.shape != (p.m_len,):
        raise DimensionError(
            f"alpha must have length {p.m_len}, got shape {alpha_arr.shape}"
        )
    b = sieve_matrix(p, max_entries)
    return float(np.abs(b @ alpha_arr).sum())


def dual_quadratic_form(p: SieveProblem, coeffs: Mapping[tuple[int, int], complex] | Sequence[complex],
                        max_entries: int | None = None) -> float:
    """Sum over the window of |sum_(a,n) c(a,n) e(a*m/n^k)|^2.

    coeffs is either a mapping keyed by (a, n) (missing rows count as 0;
    unknown keys raise IndexError) or a dense sequence in row order.
    """
    p.validate()
    row_list = sieve_rows(p)
    if isinstance(coeffs, Mapping):
        index = {row: i for i, row in enumerate(row_list)}
        c = np.zeros(len(row_list), dtype=complex)
        for key, value in coeffs.items():
            if key not in index:
                raise IndexError(f"coefficient key {key} outside the row set")
            c[index[key]] = value
    else:
        c = np.asarray(coeffs, dtype=complex)
        if c.shape != (len(row_list),):
            raise DimensionError(
                f"dense coeffs must have length {len(row_list)}, got shape {c.shape}"
            )
    b = sieve_matrix(p, max_entries)
    return float((np.abs(c @ b) ** 2).sum())


@dataclass(frozen=True)
class BoundReport:
    """Baseline bounds; exact integers except cor2_rhs, which is exact
    only when m_len * n_max^(k+1) is a perfect square."""

    classical_1: int
    classical_2: int
    conjecture: int
    cor2_rhs: int | float

    def to_json(self) -> dict:
        return {
            "classical_1": self.classical_1,
            "classical_2": self.classical_2,
            "conjecture": self.conjecture,
            "cor2_rhs": self.cor2_rhs,
        }


def classical_bounds(k: int, n_max: int, m_len: int) -> BoundReport:
    """Exact evaluation of the four baseline sieve bounds."""
    if min(k, n_max, m_len) < 1:
        raise RangeError("k, n_max and m_len must all be >= 1")
    square = m_len * n_max ** (k + 1)
    root = isqrt(square)
    cor2: int | float
    if root * root == square:
        cor2 = n_max ** (k + 1) + root
    else:
        cor2 = n_max ** (k + 1) + math.sqrt(square)
    return BoundReport(
        classical_1=m_len + n_max ** (2 * k),
        classical_2=n_max * m_len + n_max ** (k + 1),
        conjecture=n_max ** (k + 1) + m_len,
        cor2_rhs=cor2,
    )
