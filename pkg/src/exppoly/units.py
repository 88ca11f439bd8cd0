"""Unit bases: the frequency polynomials defining zero-free generators e^{Q_j(z)}.

A basis fixes the ambient Laurent ring.  Frequencies are nonzero polynomials
with zero constant term, sorted by descending degree so the top-order block is
always a prefix.  Multiplicative independence of the generators modulo the
constants is decided exactly: it reduces to Q-linear independence of the
frequency polynomials, a finite kernel computation over the rationals.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .zpoly import ZPoly


def frequency_independence(frequencies: Sequence[ZPoly]) -> tuple[int, ...] | None:
    """Return None if the frequencies are Q-linearly independent, else a
    nonzero integer vector m with sum(m_j * Q_j) = 0.

    Works on the rational coordinates of each polynomial (real and imaginary
    parts of every coefficient are separate coordinates).
    """
    n = len(frequencies)
    if n == 0:
        return None
    rows = _coordinate_rows(frequencies)
    kernel = _kernel_vector(rows, n)
    if kernel is None:
        return None
    denom_lcm = 1
    for x in kernel:
        denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in kernel]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    ints = [v // g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-w for w in ints]
            break
    return tuple(ints)


def _coordinate_rows(frequencies: Sequence[ZPoly]) -> list[list[Fraction]]:
    max_len = max(len(q.coeffs) for q in frequencies)
    rows = []
    for k in range(max_len):
        rows.append([q.coefficient(k).re for q in frequencies])
        rows.append([q.coefficient(k).im for q in frequencies])
    return rows


def _kernel_vector(rows: list[list[Fraction]], n: int) -> list[Fraction] | None:
    """First kernel basis vector of the matrix (rows x n), or None."""
    matrix = [list(row) for row in rows]
    pivot_cols: list[int] = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(matrix)) if matrix[i][c]), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        inv = Fraction(1) / matrix[r][c]
        matrix[r] = [x * inv for x in matrix[r]]
        for i in range(len(matrix)):
            if i != r and matrix[i][c]:
                factor = matrix[i][c]
                matrix[i] = [x - factor * y for x, y in zip(matrix[i], matrix[r])]
        pivot_cols.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivot_cols]
    if not free:
        return None
    c0 = free[0]
    vec = [Fraction(0)] * n
    vec[c0] = Fraction(1)
    for i, pc in enumerate(pivot_cols):
        vec[pc] = -matrix[i][c0]
    return vec


class UnitBasis:
    """Ordered frequencies with a cached independence verdict."""

    __slots__ = ("frequencies", "dependence")

    def __init__(self, frequencies: Iterable[ZPoly]):
        freqs = tuple(frequencies)
        for q in freqs:
            if q.is_zero():
                raise ValueError("frequency polynomial must be nonzero")
            if not q.constant_term().is_zero():
                raise ValueError("frequency polynomial must have zero constant term")
        degrees = [q.degree for q in freqs]
        if degrees != sorted(degrees, reverse=True):
            raise ValueError("frequencies must be sorted by descending degree")
        object.__setattr__(self, "frequencies", freqs)
        object.__setattr__(self, "dependence", frequency_independence(freqs))

    def __setattr__(self, name, value):
        raise AttributeError("UnitBasis is immutable")

    @property
    def arity(self) -> int:
        return len(self.frequencies)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(q.degree for q in self.frequencies)

    @property
    def order(self) -> int:
        """Order of the ambient ring: the maximal frequency degree."""
        return max(self.orders, default=0)

    def is_independent(self) -> bool:
        return self.dependence is None

    def require_independent(self) -> None:
        if self.dependence is not None:
            raise ValueError(
                f"unit basis is multiplicatively dependent: vector {self.dependence}"
            )

    def refine(self, index: int, factor: int) -> "UnitBasis":
        """Replace Q_index by Q_index / factor (degree is unchanged)."""
        if factor < 1:
            raise ValueError("refinement factor must be a positive integer")
        if factor == 1:
            return self
        scaled = self.frequencies[index].scale(Fraction(1, factor))
        freqs = list(self.frequencies)
        freqs[index] = scaled
        return UnitBasis(freqs)

    def drop(self, index: int) -> "UnitBasis":
        freqs = list(self.frequencies)
        del freqs[index]
        return UnitBasis(freqs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UnitBasis):
            return NotImplemented
        return self.frequencies == other.frequencies

    def __hash__(self):
        return hash(self.frequencies)

    def __repr__(self) -> str:
        return f"UnitBasis({list(self.frequencies)!r})"


def sorted_frequencies(freqs: Iterable[ZPoly]) -> list[ZPoly]:
    """Canonical basis order: descending degree, then coefficient sort key."""
    return sorted(freqs, key=lambda q: (-q.degree, q.sort_key()))
