"""Linear algebra over Z/N via the Howell normal form.

The Howell form of a matrix over ``Z/N`` is a canonical basis of its row
span: rows are in echelon form, each leading entry divides ``N``, entries
above a leading entry are reduced modulo it, and (the Howell property) every
span vector that vanishes on the first ``c`` columns is a combination of the
rows whose leading column is at least ``c``. Two matrices have the same row
span iff their Howell forms are equal, and reduction against the form gives a
canonical representative of each coset of the span.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

import numpy as np


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b)``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def _unit_normalizer(p: int, n: int) -> int:
    """A unit ``u`` of ``Z/n`` with ``u * p == gcd(p, n) (mod n)``."""
    g = gcd(p, n)
    m = n // g
    if m == 1:
        return 1
    u = pow(p // g, -1, m)
    while gcd(u, n) != 1:
        u += m
    return u % n


def howell_form(matrix, n: int) -> np.ndarray:
    """Howell normal form of ``matrix`` over ``Z/n``, zero rows dropped.

    Column by column, the rows with a nonzero entry are merged into a single
    pivot by unimodular 2x2 gcd steps. The pivot is scaled by a unit so its
    leading entry divides ``n``, and its annihilator multiple
    ``(n / d) * pivot`` is fed back into the pending rows, which is what
    produces the Howell property.
    """
    a = np.asarray(matrix, dtype=np.int64) % n
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    ncols = a.shape[1]
    pending = [row for row in a if row.any()]
    pivots: list[tuple[int, np.ndarray]] = []
    for col in range(ncols):
        pivot = None
        rest = []
        for row in pending:
            if row[col] == 0:
                rest.append(row)
                continue
            if pivot is None:
                pivot = row
                continue
            x, y = int(pivot[col]), int(row[col])
            g, s, t = _egcd(x, y)
            merged = (s * pivot + t * row) % n
            other = ((-(y // g)) * pivot + (x // g) * row) % n
            pivot = merged
            if other.any():
                rest.append(other)
        if pivot is None:
            pending = rest
            continue
        pivot = (pivot * _unit_normalizer(int(pivot[col]), n)) % n
        d = int(pivot[col])
        extra = (pivot * (n // d)) % n
        if extra.any():
            rest.append(extra)
        pivots.append((col, pivot))
        pending = rest
    for i, (col, row) in enumerate(pivots):
        d = int(row[col])
        for j in range(i):
            above = pivots[j][1]
            q = int(above[col]) // d
            if q:
                pivots[j] = (pivots[j][0], (above - q * row) % n)
    if not pivots:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.array([row for _, row in pivots], dtype=np.int64)


def leading_columns(form: np.ndarray) -> list[int]:
    return [int(np.flatnonzero(row)[0]) for row in form]


def orders(form: np.ndarray, n: int) -> list[int]:
    """Additive order ``n / d`` contributed by each row with leading entry ``d``."""
    return [n // int(row[c]) for row, c in zip(form, leading_columns(form))]


def span_size(form: np.ndarray, n: int) -> int:
    size = 1
    for o in orders(form, n):
        size *= o
    return size


def reduce_vector(vector, form: np.ndarray, n: int) -> np.ndarray:
    """Canonical representative of ``vector`` modulo the row span of ``form``."""
    v = np.asarray(vector, dtype=np.int64) % n
    for row, c in zip(form, leading_columns(form)):
        q = int(v[c]) // int(row[c])
        if q:
            v = (v - q * row) % n
    return v


def in_span(vector, form: np.ndarray, n: int) -> bool:
    return not reduce_vector(vector, form, n).any()


def enumerate_span(form: np.ndarray, n: int, offset=None) -> np.ndarray:
    """Every vector ``offset + sum c_i row_i`` with ``0 <= c_i < order_i``."""
    ncols = form.shape[1]
    base = np.zeros(ncols, dtype=np.int64) if offset is None else np.asarray(offset, dtype=np.int64)
    if len(form) == 0:
        return base[None] % n
    coeffs = np.array(list(itertools.product(*[range(o) for o in orders(form, n)])), dtype=np.int64)
    return (base[None] + coeffs @ form) % n


@dataclass(frozen=True, eq=False)
class ModularSolution:
    """All solutions of ``A t = b`` over ``Z/N``.

    ``particular`` is the canonical coset representative (reduced against
    ``kernel``), or ``None`` when the system is inconsistent. ``kernel`` is
    the Howell form of the homogeneous solution module.
    """

    modulus: int
    particular: np.ndarray | None
    kernel: np.ndarray

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def cardinality(self) -> int:
        return span_size(self.kernel, self.modulus) if self.consistent else 0

    @property
    def orders(self) -> list[int]:
        return orders(self.kernel, self.modulus)

    def contains(self, t) -> bool:
        if not self.consistent:
            return False
        return in_span(np.asarray(t) - self.particular, self.kernel, self.modulus)

    def solutions(self) -> np.ndarray:
        if not self.consistent:
            return np.zeros((0, self.kernel.shape[1]), dtype=np.int64)
        return enumerate_span(self.kernel, self.modulus, self.particular)

    def same_as(self, other: "ModularSolution") -> bool:
        if self.modulus != other.modulus or self.consistent != other.consistent:
            return False
        if not self.consistent:
            return True
        return np.array_equal(self.kernel, other.kernel) and np.array_equal(self.particular, other.particular)


def kernel_mod_n(a, b, n: int) -> ModularSolution:
    """Solve ``A t = b`` over ``Z/n`` exactly.

    Uses the Howell form of the augmented matrix whose rows are
    ``[A[:, j] | 0 | e_j]`` and ``[-b | 1 | 0]``: span vectors with zero in the
    first ``m`` columns are exactly ``(0, s, t)`` with ``A t = s b``.
    """
    a = np.asarray(a, dtype=np.int64) % n
    if a.ndim != 2:
        raise ValueError("A must be 2-d")
    m, nvars = a.shape
    b = np.zeros(m, dtype=np.int64) if b is None else np.asarray(b, dtype=np.int64) % n
    if b.shape != (m,):
        raise ValueError(f"b must have length {m}")
    aug = np.zeros((nvars + 1, m + 1 + nvars), dtype=np.int64)
    aug[:nvars, :m] = a.T
    aug[:nvars, m + 1:] = np.eye(nvars, dtype=np.int64)
    aug[nvars, :m] = -b
    aug[nvars, m] = 1
    form = howell_form(aug, n)
    lead = leading_columns(form)
    particular = None
    kernel_rows = []
    for row, c in zip(form, lead):
        if c == m and row[m] == 1:
            particular = row[m + 1:].copy()
        elif c > m:
            kernel_rows.append(row[m + 1:])
    kernel = np.array(kernel_rows, dtype=np.int64).reshape(len(kernel_rows), nvars)
    return ModularSolution(n, particular, kernel)
