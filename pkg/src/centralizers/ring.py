"""Finite rings presented by additive generators and structure constants.

A ring with additive group ``(Z/N)^k`` is stored as the tensor ``table`` of
shape ``(k, k, k)``: ``table[i, j]`` holds the coordinates of ``g_i * g_j``.
Elements are coordinate vectors; the public API hands them out as tuples of
ints and accepts anything array-like.

Canonical element order is the order of the integer index
``sum(c_i * N**i)``, i.e. coordinate vectors compared from the last generator
backwards. Every set-valued result and every "first witness" follows it.
"""

from __future__ import annotations

import json
import re
from math import gcd
from typing import Any, NamedTuple, Sequence

import numpy as np

from . import budget

Element = tuple[int, ...]


class Verdict(NamedTuple):
    """Outcome of a predicate together with a counterexample when it fails."""

    holds: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return bool(self.holds)


class RingSpec:
    """A finite ring whose additive group is ``(Z/N)^k``.

    Args:
        name: display name.
        exponent: the common additive order ``N`` of the generators.
        mul_table: nested sequence or array of shape ``(k, k, k)``.
        unity: coordinates of ``1``, or ``None`` for a ring without unity.
        generator_names: optional labels used when formatting elements.
    """

    def __init__(
        self,
        name: str,
        exponent: int,
        mul_table,
        unity: Sequence[int] | None = None,
        generator_names: Sequence[str] | None = None,
    ):
        if int(exponent) < 2:
            raise ValueError("exponent must be at least 2 (the zero ring is not supported)")
        table = np.asarray(mul_table, dtype=np.int64)
        if table.ndim != 3 or table.shape[0] == 0 or len(set(table.shape)) != 1:
            raise ValueError(f"mul_table must have shape (k, k, k), got {table.shape}")
        self.name = name
        self.exponent = int(exponent)
        self.table = table % self.exponent
        self.table.setflags(write=False)
        k = table.shape[0]
        if generator_names is None:
            generator_names = [f"g{i + 1}" for i in range(k)]
        if len(generator_names) != k:
            raise ValueError("generator_names must have one entry per generator")
        self.generator_names = tuple(generator_names)
        self.unity: Element | None = None
        if unity is not None:
            one = self.element(unity)
            self.unity = one
            eye = np.eye(k, dtype=np.int64)
            left = self.mul_array(np.asarray(one), eye)
            right = self.mul_array(eye, np.asarray(one))
            if not (np.array_equal(left, eye) and np.array_equal(right, eye)):
                raise ValueError(f"{name}: unity {one} is not a two-sided identity")

    def __repr__(self) -> str:
        return f"RingSpec({self.name!r}, N={self.exponent}, k={self.rank})"

    @property
    def rank(self) -> int:
        return self.table.shape[0]

    @property
    def cardinality(self) -> int:
        return self.exponent**self.rank

    @property
    def is_unital(self) -> bool:
        return self.unity is not None

    @property
    def zero(self) -> Element:
        return (0,) * self.rank

    @property
    def one(self) -> Element:
        if self.unity is None:
            raise ValueError(f"{self.name} has no unity")
        return self.unity

    def element(self, coords) -> Element:
        arr = np.asarray(coords, dtype=np.int64)
        if arr.shape != (self.rank,):
            raise ValueError(f"expected {self.rank} coordinates, got shape {arr.shape}")
        return tuple(int(c) for c in arr % self.exponent)

    def generators(self) -> list[Element]:
        return [tuple(int(v) for v in row) for row in np.eye(self.rank, dtype=np.int64)]

    def generator(self, name: str) -> Element:
        return self.generators()[self.generator_names.index(name)]

    # arithmetic -----------------------------------------------------------

    def add(self, a, b) -> Element:
        return self.element(self._vec(a) + self._vec(b))

    def neg(self, a) -> Element:
        return self.element(-self._vec(a))

    def sub(self, a, b) -> Element:
        return self.element(self._vec(a) - self._vec(b))

    def scalar_mul(self, c: int, a) -> Element:
        return self.element((int(c) % self.exponent) * self._vec(a))

    def mul(self, a, b) -> Element:
        return self.element(self.mul_array(self._vec(a), self._vec(b)))

    def mul_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Bilinear product with numpy broadcasting over leading axes."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        outer = a[..., :, None] * b[..., None, :]
        return np.tensordot(outer, self.table, axes=([-2, -1], [0, 1])) % self.exponent

    def _vec(self, a) -> np.ndarray:
        arr = np.asarray(a, dtype=np.int64)
        if arr.shape != (self.rank,):
            raise ValueError(f"{self.name}: expected {self.rank} coordinates, got shape {arr.shape}")
        return arr

    # enumeration ----------------------------------------------------------

    def elements(self, limit: int | None = None) -> np.ndarray:
        """All elements in canonical order, as an ``(N**k, k)`` array."""
        limit = budget.element_budget() if limit is None else limit
        budget.require(self.cardinality, limit, f"enumerating {self.name}")
        idx = np.arange(self.cardinality, dtype=np.int64)
        powers = self.exponent ** np.arange(self.rank, dtype=np.int64)
        return (idx[:, None] // powers[None, :]) % self.exponent

    def index_of(self, a) -> int:
        return sum(int(c) * self.exponent**i for i, c in enumerate(self._vec(a) % self.exponent))

    def format(self, a) -> str:
        """Render an element as a sum of labelled generators, e.g. ``3*e11 + e22``."""
        parts = []
        for c, label in zip(self._vec(a) % self.exponent, self.generator_names):
            if c == 0:
                continue
            if label == "1":
                parts.append(str(int(c)))
            else:
                parts.append(label if c == 1 else f"{int(c)}*{label}")
        return " + ".join(parts) if parts else "0"

    def parse(self, text: str) -> Element:
        """Inverse of :meth:`format`; a bare integer ``c`` means ``c * 1``."""
        text = text.replace(" ", "")
        if not text:
            raise ValueError("empty element")
        acc = np.zeros(self.rank, dtype=np.int64)
        for sign, chunk in re.findall(r"([+-]?)([^+-]+)", text):
            if "*" in chunk:
                coeff, label = chunk.split("*", 1)
            elif chunk.isdigit():
                coeff, label = chunk, None
            else:
                coeff, label = "1", chunk
            if label is None and int(coeff) % self.exponent == 0:
                continue
            if label is None or (label == "1" and label not in self.generator_names):
                unit = np.asarray(self.one)
            elif label in self.generator_names:
                unit = np.eye(self.rank, dtype=np.int64)[self.generator_names.index(label)]
            else:
                raise ValueError(f"unknown generator {label!r} for {self.name}")
            acc = acc + (-1 if sign == "-" else 1) * int(coeff) * unit
        return self.element(acc)

    # serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "exponent": self.exponent,
            "rank": self.rank,
            "unity": list(self.unity) if self.unity is not None else None,
            "mul_table": self.table.tolist(),
            "generator_names": list(self.generator_names),
        }

    @classmethod
    def from_json(cls, data: dict) -> "RingSpec":
        ring = cls(
            data.get("name", "custom"),
            data["exponent"],
            data["mul_table"],
            unity=data.get("unity"),
            generator_names=data.get("generator_names"),
        )
        if "rank" in data and int(data["rank"]) != ring.rank:
            raise ValueError(f"rank {data['rank']} does not match mul_table size {ring.rank}")
        return ring

    @classmethod
    def load(cls, path: str) -> "RingSpec":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def check_associativity(ring: RingSpec) -> Verdict:
    """Check ``(g_i g_j) g_l == g_i (g_j g_l)`` on all generator triples.

    Bilinearity makes the generator triples sufficient. The witness is the
    first failing triple ``(g_i, g_j, g_l)`` with ``i`` varying slowest.
    """
    t = ring.table
    n = ring.exponent
    # (g_i g_j) g_l = sum_a t[i,j,a] t[a,l,:]
    left = np.einsum("ija,alc->ijlc", t, t) % n
    # g_i (g_j g_l) = sum_a t[j,l,a] t[i,a,:]
    right = np.einsum("jla,iac->ijlc", t, t) % n
    bad = np.argwhere((left != right).any(axis=-1))
    if len(bad) == 0:
        return Verdict(True)
    gens = ring.generators()
    i, j, l = (int(v) for v in bad[0])
    return Verdict(False, (gens[i], gens[j], gens[l]))


def center(ring: RingSpec, limit: int | None = None) -> list[Element]:
    """All central elements in canonical order (tested against the generators)."""
    elems = ring.elements(limit)
    gens = np.eye(ring.rank, dtype=np.int64)
    ax = ring.mul_array(elems[:, None, :], gens[None, :, :])
    xa = ring.mul_array(gens[None, :, :], elems[:, None, :])
    mask = (ax == xa).all(axis=(1, 2))
    return [tuple(int(c) for c in row) for row in elems[mask]]


def torsion_free_by_gcd(ring: RingSpec, m: int) -> bool:
    return gcd(int(m), ring.exponent) == 1


def is_k_torsion_free(ring: RingSpec, m: int, limit: int | None = None) -> Verdict:
    """Decide whether ``m * a == 0`` forces ``a == 0``.

    Checked over all elements when the ring is within budget, otherwise on
    single-coordinate multiples, which is exact for ``(Z/N)^k``.
    """
    if m < 2:
        raise ValueError("torsion order must be at least 2")
    n = ring.exponent
    limit = budget.element_budget() if limit is None else limit
    if ring.cardinality <= limit:
        elems = ring.elements(limit)
        hits = np.flatnonzero(((m * elems) % n == 0).all(axis=1))
        hits = hits[hits != 0]
        if len(hits) == 0:
            return Verdict(True)
        return Verdict(False, tuple(int(c) for c in elems[hits[0]]))
    g = gcd(m, n)
    if g == 1:
        return Verdict(True)
    witness = [0] * ring.rank
    witness[0] = n // g
    return Verdict(False, tuple(witness))


def is_semiprime(ring: RingSpec, limit: int | None = None) -> Verdict:
    """Decide semiprimeness; the witness is the first nonzero ``a`` with ``aRa = 0``."""
    elems = ring.elements(limit)
    gens = np.eye(ring.rank, dtype=np.int64)
    ag = ring.mul_array(elems[:, None, :], gens[None, :, :])
    aga = ring.mul_array(ag, elems[:, None, :])
    killed = ~aga.any(axis=(1, 2))
    killed[0] = False
    hits = np.flatnonzero(killed)
    if len(hits) == 0:
        return Verdict(True)
    return Verdict(False, tuple(int(c) for c in elems[hits[0]]))


def is_prime(ring: RingSpec, limit: int | None = None) -> Verdict:
    """Decide primeness; the witness is the first nonzero pair with ``aRb = 0``."""
    limit = budget.prime_budget() if limit is None else limit
    budget.require(ring.cardinality**3, limit, f"prime scan of {ring.name}")
    elems = ring.elements(budget.element_budget())
    gens = np.eye(ring.rank, dtype=np.int64)
    ag = ring.mul_array(elems[:, None, :], gens[None, :, :])
    for ia in range(1, len(elems)):
        agb = ring.mul_array(ag[ia][None, :, :], elems[:, None, :])
        killed = ~agb.any(axis=(1, 2))
        killed[0] = False
        hits = np.flatnonzero(killed)
        if len(hits):
            a = tuple(int(c) for c in elems[ia])
            b = tuple(int(c) for c in elems[hits[0]])
            return Verdict(False, (a, b))
    return Verdict(True)
