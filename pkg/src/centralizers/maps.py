"""Additive maps on finite rings and the centralizer predicates.

An additive map is stored as a ``k x k`` matrix over ``Z/N`` whose column
``j`` holds the coordinates of ``T(g_j)``. Because every generator has the
same additive order, any such matrix defines a well-defined additive map.

The predicates come in two flavours. The fast checks work on the generator
grid (biadditivity) or on generators plus pairwise sums (polarization of a
quadratic form). :func:`exhaustive_check` evaluates the defining law on every
element and serves as their oracle. Batched ``*_mask`` variants take a stack
of matrices of shape ``(S, k, k)``.
"""

from __future__ import annotations

from typing import Callable, Iterable

import numpy as np

from . import budget
from .ring import Element, RingSpec, Verdict

PROPERTIES = ("left", "right", "jordan-left", "jordan-right", "two-sided")


class AdditiveMap:
    """An additive map given by the images of the additive generators."""

    __slots__ = ("matrix",)

    def __init__(self, matrix, modulus: int):
        arr = np.asarray(matrix, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"map matrix must be square, got shape {arr.shape}")
        arr = arr % modulus
        arr.setflags(write=False)
        self.matrix = arr

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def rows(self) -> list[list[int]]:
        return self.matrix.tolist()

    def key(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.matrix.ravel())

    def __eq__(self, other) -> bool:
        if not isinstance(other, AdditiveMap):
            return NotImplemented
        return np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"AdditiveMap({self.rows()})"


def _check_shape(ring: RingSpec, T: AdditiveMap) -> None:
    if T.size != ring.rank:
        raise ValueError(f"map of size {T.size} does not fit {ring.name} of rank {ring.rank}")


def from_rows(ring: RingSpec, rows) -> AdditiveMap:
    T = AdditiveMap(rows, ring.exponent)
    _check_shape(ring, T)
    return T


def from_images(ring: RingSpec, images: Iterable) -> AdditiveMap:
    """Build a map from the list ``[T(g_1), ..., T(g_k)]``."""
    cols = np.asarray(list(images), dtype=np.int64)
    if cols.shape != (ring.rank, ring.rank):
        raise ValueError(f"need {ring.rank} images of length {ring.rank}")
    return AdditiveMap(cols.T, ring.exponent)


def from_function(ring: RingSpec, f: Callable[[Element], Element]) -> AdditiveMap:
    """Tabulate ``f`` on the generators. ``f`` is assumed additive."""
    return from_images(ring, [f(g) for g in ring.generators()])


def zero_map(ring: RingSpec) -> AdditiveMap:
    return AdditiveMap(np.zeros((ring.rank, ring.rank), dtype=np.int64), ring.exponent)


def identity_map(ring: RingSpec) -> AdditiveMap:
    return AdditiveMap(np.eye(ring.rank, dtype=np.int64), ring.exponent)


def scalar_map(ring: RingSpec, alpha) -> AdditiveMap:
    """The map ``x -> alpha * x``."""
    if not ring.is_unital:
        raise ValueError(f"{ring.name} has no unity; scalar maps are not classified there")
    a = np.asarray(ring.element(alpha))
    cols = ring.mul_array(a[None, :], np.eye(ring.rank, dtype=np.int64))
    return AdditiveMap(cols.T, ring.exponent)


def apply(ring: RingSpec, T: AdditiveMap, x) -> Element:
    _check_shape(ring, T)
    return ring.element(T.matrix @ ring._vec(x))


def apply_array(ring: RingSpec, maps: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Apply stacked maps ``(..., k, k)`` to stacked elements ``(..., k)``."""
    x = np.asarray(x, dtype=np.int64)
    return np.matmul(maps, x[..., None])[..., 0] % ring.exponent


def as_stack(maps) -> np.ndarray:
    if isinstance(maps, AdditiveMap):
        return maps.matrix[None]
    if isinstance(maps, np.ndarray):
        return maps if maps.ndim == 3 else maps[None]
    return np.stack([m.matrix for m in maps])


# generator-level defects ----------------------------------------------------


def _left_defects(ring: RingSpec, maps: np.ndarray) -> np.ndarray:
    """``D[s, i, j] = T_s(g_i g_j) - T_s(g_i) g_j`` as an ``(S, k, k, k)`` array."""
    t = ring.table
    t_of_prod = np.einsum("sab,ijb->sija", maps, t)
    # T(g_i) is column i of the map matrix
    img = np.transpose(maps, (0, 2, 1))
    prod = np.einsum("sia,ajc->sijc", img, t)
    return (t_of_prod - prod) % ring.exponent


def _right_defects(ring: RingSpec, maps: np.ndarray) -> np.ndarray:
    """``D[s, i, j] = T_s(g_i g_j) - g_i T_s(g_j)``."""
    t = ring.table
    t_of_prod = np.einsum("sab,ijb->sija", maps, t)
    img = np.transpose(maps, (0, 2, 1))
    prod = np.einsum("sjb,ibc->sijc", img, t)
    return (t_of_prod - prod) % ring.exponent


def _jordan_from_defects(defects: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Quadratic-form data from the polar defects: values on g_i and on pairs."""
    k = defects.shape[1]
    diag = defects[:, np.arange(k), np.arange(k)]
    polar = (defects + np.transpose(defects, (0, 2, 1, 3))) % n
    return diag, polar


def left_centralizer_mask(ring: RingSpec, maps) -> np.ndarray:
    return ~_left_defects(ring, as_stack(maps)).any(axis=(1, 2, 3))


def right_centralizer_mask(ring: RingSpec, maps) -> np.ndarray:
    return ~_right_defects(ring, as_stack(maps)).any(axis=(1, 2, 3))


def two_sided_mask(ring: RingSpec, maps) -> np.ndarray:
    return left_centralizer_mask(ring, maps) & right_centralizer_mask(ring, maps)


def _jordan_mask(defects: np.ndarray, n: int) -> np.ndarray:
    # polar[i, i] = 2 * diag[i] vanishes once diag does
    diag, polar = _jordan_from_defects(defects, n)
    return ~diag.any(axis=(1, 2)) & ~polar.any(axis=(1, 2, 3))


def jordan_left_mask(ring: RingSpec, maps) -> np.ndarray:
    return _jordan_mask(_left_defects(ring, as_stack(maps)), ring.exponent)


def jordan_right_mask(ring: RingSpec, maps) -> np.ndarray:
    return _jordan_mask(_right_defects(ring, as_stack(maps)), ring.exponent)


def scalar_form_mask(ring: RingSpec, maps) -> np.ndarray:
    """Maps equal to ``x -> T(1) x`` with ``T(1)`` central."""
    if not ring.is_unital:
        raise ValueError(f"{ring.name} has no unity; scalar form is undefined")
    stack = as_stack(maps)
    alpha = apply_array(ring, stack, np.asarray(ring.one))
    gens = np.eye(ring.rank, dtype=np.int64)
    left = ring.mul_array(alpha[:, None, :], gens[None, :, :])
    right = ring.mul_array(gens[None, :, :], alpha[:, None, :])
    central = (left == right).all(axis=(1, 2))
    matches = (np.transpose(left, (0, 2, 1)) == stack).all(axis=(1, 2))
    return central & matches


# single-map predicates ------------------------------------------------------


def _grid_witness(ring: RingSpec, defects: np.ndarray) -> Verdict:
    bad = np.argwhere(defects[0].any(axis=-1))
    if len(bad) == 0:
        return Verdict(True)
    gens = ring.generators()
    i, j = (int(v) for v in bad[0])
    return Verdict(False, (gens[i], gens[j]))


def is_left_centralizer(ring: RingSpec, T: AdditiveMap) -> Verdict:
    """``T(xy) = T(x)y`` on the generator grid; witness is a failing pair."""
    _check_shape(ring, T)
    return _grid_witness(ring, _left_defects(ring, T.matrix[None]))


def is_right_centralizer(ring: RingSpec, T: AdditiveMap) -> Verdict:
    _check_shape(ring, T)
    return _grid_witness(ring, _right_defects(ring, T.matrix[None]))


def is_two_sided_centralizer(ring: RingSpec, T: AdditiveMap) -> Verdict:
    left = is_left_centralizer(ring, T)
    if not left:
        return left
    return is_right_centralizer(ring, T)


def _jordan_witness(ring: RingSpec, defects: np.ndarray) -> Verdict:
    diag, polar = _jordan_from_defects(defects, ring.exponent)
    gens = ring.generators()
    bad = np.flatnonzero(diag[0].any(axis=-1))
    if len(bad):
        return Verdict(False, gens[int(bad[0])])
    for i, j in np.argwhere(polar[0].any(axis=-1)):
        if i < j:
            return Verdict(False, ring.add(gens[int(i)], gens[int(j)]))
    return Verdict(True)


def is_jordan_left(ring: RingSpec, T: AdditiveMap) -> Verdict:
    """``T(x^2) = T(x)x`` for all ``x``, decided on generators and their pairwise sums.

    ``Q(x) = T(x^2) - T(x)x`` is a quadratic form, so
    ``Q(sum c_i g_i) = sum c_i^2 Q(g_i) + sum_{i<j} c_i c_j B(g_i, g_j)`` with
    polar form ``B(x, y) = T(xy + yx) - T(x)y - T(y)x``.
    """
    _check_shape(ring, T)
    return _jordan_witness(ring, _left_defects(ring, T.matrix[None]))


def is_jordan_right(ring: RingSpec, T: AdditiveMap) -> Verdict:
    _check_shape(ring, T)
    return _jordan_witness(ring, _right_defects(ring, T.matrix[None]))


def is_scalar_form(ring: RingSpec, T: AdditiveMap) -> Element | None:
    """Return ``alpha = T(1)`` when ``T(x) = alpha x`` with ``alpha`` central."""
    _check_shape(ring, T)
    if bool(scalar_form_mask(ring, T)[0]):
        return apply(ring, T, ring.one)
    return None


def left_defect(ring: RingSpec, T: AdditiveMap, x, y) -> Element:
    """``T(xy) - T(x)y`` at a specific pair."""
    return ring.sub(apply(ring, T, ring.mul(x, y)), ring.mul(apply(ring, T, x), y))


def right_defect(ring: RingSpec, T: AdditiveMap, x, y) -> Element:
    """``T(xy) - xT(y)`` at a specific pair."""
    return ring.sub(apply(ring, T, ring.mul(x, y)), ring.mul(x, apply(ring, T, y)))


# exhaustive oracle ----------------------------------------------------------


def _exhaustive_chunk(ring: RingSpec, maps: np.ndarray, prop: str, elems: np.ndarray) -> np.ndarray:
    n = ring.exponent
    tx = apply_array(ring, maps[:, None], elems[None])  # (S, E, k)
    if prop in ("jordan-left", "jordan-right"):
        sq = ring.mul_array(elems, elems)
        t_sq = apply_array(ring, maps[:, None], sq[None])
        if prop == "jordan-left":
            other = ring.mul_array(tx, elems[None])
        else:
            other = ring.mul_array(elems[None], tx)
        return ~((t_sq - other) % n).any(axis=(1, 2))
    ok = np.ones(len(maps), dtype=bool)
    for iy, y in enumerate(elems):
        xy = ring.mul_array(elems, y)
        t_xy = apply_array(ring, maps[:, None], xy[None])
        if prop in ("left", "two-sided"):
            ok &= ~((t_xy - ring.mul_array(tx, y)) % n).any(axis=(1, 2))
        if prop in ("right", "two-sided"):
            ok &= ~((t_xy - ring.mul_array(elems[None], tx[:, iy][:, None])) % n).any(axis=(1, 2))
    return ok


def exhaustive_mask(ring: RingSpec, maps, prop: str, chunk: int = 4096, limit: int | None = None) -> np.ndarray:
    """Evaluate ``prop`` at every element (or element pair) for each map."""
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}; expected one of {PROPERTIES}")
    stack = as_stack(maps)
    elems = ring.elements(limit)
    out = np.empty(len(stack), dtype=bool)
    for start in range(0, len(stack), chunk):
        out[start:start + chunk] = _exhaustive_chunk(ring, stack[start:start + chunk], prop, elems)
    return out


def exhaustive_check(ring: RingSpec, T: AdditiveMap, prop: str, limit: int | None = None) -> Verdict:
    """Oracle for the fast predicates: the defining law at every element.

    The witness is the first failing element (unary laws) or pair (binary
    laws) in canonical order.
    """
    _check_shape(ring, T)
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}; expected one of {PROPERTIES}")
    elems = ring.elements(limit)
    tx = apply_array(ring, T.matrix, elems)
    if prop in ("jordan-left", "jordan-right"):
        t_sq = apply_array(ring, T.matrix, ring.mul_array(elems, elems))
        other = ring.mul_array(tx, elems) if prop == "jordan-left" else ring.mul_array(elems, tx)
        bad = np.flatnonzero(((t_sq - other) % ring.exponent).any(axis=1))
        if len(bad):
            return Verdict(False, tuple(int(c) for c in elems[bad[0]]))
        return Verdict(True)
    for ix, x in enumerate(elems):
        t_xy = apply_array(ring, T.matrix, ring.mul_array(x, elems))
        bad = np.zeros(len(elems), dtype=bool)
        if prop in ("left", "two-sided"):
            bad |= ((t_xy - ring.mul_array(tx[ix], elems)) % ring.exponent).any(axis=1)
        if prop in ("right", "two-sided"):
            bad |= ((t_xy - ring.mul_array(x, tx)) % ring.exponent).any(axis=1)
        hits = np.flatnonzero(bad)
        if len(hits):
            y = elems[hits[0]]
            return Verdict(False, (tuple(int(c) for c in x), tuple(int(c) for c in y)))
    return Verdict(True)


def all_maps(ring: RingSpec, start: int = 0, stop: int | None = None, limit: int | None = None) -> np.ndarray:
    """Additive maps with index in ``[start, stop)`` as a stack.

    Map index ``sum(m_p * N**p)`` runs over the row-major entries ``m_p``,
    which makes ranges a natural unit of work partitioning.
    """
    n, k = ring.exponent, ring.rank
    total = n ** (k * k)
    limit = budget.map_budget() if limit is None else limit
    budget.require(total, limit, f"enumerating additive maps of {ring.name}")
    stop = total if stop is None else min(stop, total)
    idx = np.arange(start, stop, dtype=np.int64)
    powers = n ** np.arange(k * k, dtype=np.int64)
    digits = (idx[:, None] // powers[None, :]) % n
    return digits.reshape(-1, k, k)


def map_index(ring: RingSpec, T) -> int:
    flat = T.matrix.ravel() if isinstance(T, AdditiveMap) else np.asarray(T).ravel()
    return sum(int(v) * ring.exponent**p for p, v in enumerate(flat))
