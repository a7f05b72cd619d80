"""Concrete rings: residue rings, matrix rings and the nilpotent example rings.

Also hosts the specific additive maps used as counterexamples, and the
parser for ring expressions such as ``M:2:Zn:9`` or ``TRI:Zn:2``.
"""

from __future__ import annotations

import numpy as np

from .maps import AdditiveMap, from_images
from .ring import Element, RingSpec


def cyclic_ring(n: int) -> RingSpec:
    """The residue ring ``Z_n`` with the single generator ``1``."""
    if n < 2:
        raise ValueError(f"Z_n needs n >= 2, got {n}")
    return RingSpec(f"Z{n}", n, [[[1]]], unity=[1], generator_names=["1"])


def _scaled_label(g: str, suffix: str) -> str:
    return suffix if g == "1" else f"{g}.{suffix}"


def matrix_ring(base: RingSpec, r: int) -> RingSpec:
    """``M_r(base)`` with generators ``g_m e_ij``.

    Generator ``g_m e_ij`` sits at index ``(i * r + j) * k_base + m`` (0-based),
    so for a rank-one base the order is ``e11, e12, ..., err`` row by row.
    """
    if r < 2:
        raise ValueError(f"matrix rings need r >= 2, got {r}")
    kb = base.rank
    k = r * r * kb

    def idx(i: int, j: int, m: int) -> int:
        return (i * r + j) * kb + m

    table = np.zeros((k, k, k), dtype=np.int64)
    for i in range(r):
        for j in range(r):
            for l in range(r):
                # (a e_ij)(b e_jl) = ab e_il
                for m in range(kb):
                    for n in range(kb):
                        table[idx(i, j, m), idx(j, l, n), idx(i, l, 0):idx(i, l, 0) + kb] = base.table[m, n]
    unity = None
    if base.is_unital:
        one = np.zeros(k, dtype=np.int64)
        for i in range(r):
            one[idx(i, i, 0):idx(i, i, 0) + kb] = base.unity
        unity = one
    sep = "," if r > 9 else ""
    names = [
        _scaled_label(g, f"e{i + 1}{sep}{j + 1}")
        for i in range(r)
        for j in range(r)
        for g in base.generator_names
    ]
    return RingSpec(f"M{r}({base.name})", base.exponent, table, unity=unity, generator_names=names)


def antisymmetric_triple_ring(base: RingSpec) -> RingSpec:
    """``F = base^3`` with ``(x1,y1,z1)(x2,y2,z2) = (0, 0, x1 y2 - x2 y1)``.

    Every square and every product of three factors is zero; the ring has no
    unity.
    """
    kb = base.rank
    k = 3 * kb
    table = np.zeros((k, k, k), dtype=np.int64)
    z = slice(2 * kb, 3 * kb)
    for m in range(kb):
        for n in range(kb):
            # x-part g_m times y-part g_n contributes g_m g_n
            table[m, kb + n, z] += base.table[m, n]
            # y-part g_m times x-part g_n contributes -(g_n g_m)
            table[kb + m, n, z] -= base.table[n, m]
    names = (
        [_scaled_label(g, "P") for g in base.generator_names]
        + [_scaled_label(g, "Q") for g in base.generator_names]
        + [_scaled_label(g, "PQ") for g in base.generator_names]
    )
    return RingSpec(f"F({base.name})", base.exponent, table, unity=None, generator_names=names)


def triangular_example_ring(base: RingSpec) -> RingSpec:
    """Matrices ``[[0, A, B], [0, 0, A], [0, 0, 0]]`` with ``A, B`` in ``F(base)``.

    Stored as pairs ``(A, B)``; the product of two such matrices is
    ``(0, A1 A2)``.
    """
    f = antisymmetric_triple_ring(base)
    kf = f.rank
    k = 2 * kf
    table = np.zeros((k, k, k), dtype=np.int64)
    table[:kf, :kf, kf:] = f.table
    names = [f"({g},0)" for g in f.generator_names] + [f"(0,{g})" for g in f.generator_names]
    return RingSpec(f"TRI({base.name})", base.exponent, table, unity=None, generator_names=names)


def corner_projection_map(base: RingSpec) -> AdditiveMap:
    """On the triangular ring over ``base``: ``(A, B) -> (0, B)``."""
    ring = triangular_example_ring(base)
    kf = ring.rank // 2
    matrix = np.zeros((ring.rank, ring.rank), dtype=np.int64)
    matrix[kf:, kf:] = np.eye(kf, dtype=np.int64)
    return AdditiveMap(matrix, ring.exponent)


def triangular_pair(base: RingSpec) -> tuple[Element, Element]:
    """The elements ``(P, 0)`` and ``(Q, 0)`` of the triangular ring."""
    ring = triangular_example_ring(base)
    p = ring.generators()[0]
    q = ring.generators()[base.rank]
    return p, q


# counterexample maps on 2x2 matrix rings over Z_n --------------------------


def _require_m2_cyclic(ring: RingSpec) -> None:
    if ring.rank != 4 or ring.generator_names != ("e11", "e12", "e21", "e22"):
        raise ValueError(f"expected M2(Z_n), got {ring.name}")


def entry_sum_map(ring: RingSpec) -> AdditiveMap:
    """On ``M_2(Z_n)``: ``[[x, y], [z, t]] -> (x + y + z + t) I``."""
    _require_m2_cyclic(ring)
    ident = [1, 0, 0, 1]
    return from_images(ring, [ident] * 4)


def row_to_column_map(ring: RingSpec) -> AdditiveMap:
    """On ``M_2(Z_n)``: ``[[x, y], [z, t]] -> [[y, 0], [x, 0]]``."""
    _require_m2_cyclic(ring)
    # images of e11, e12, e21, e22
    return from_images(ring, [[0, 0, 1, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])


def doubled_corner_map(ring: RingSpec) -> AdditiveMap:
    """On ``M_2(Z_4)``: ``e12 -> e11 + e21``, other matrix units to 0.

    This is the additive map sending ``2 e12`` to ``2 e11 + 2 e21`` and
    ``r e_ij`` to 0 for the other matrix units.
    """
    _require_m2_cyclic(ring)
    if ring.exponent != 4:
        raise ValueError("this map is defined on M2(Z4)")
    return from_images(ring, [[0, 0, 0, 0], [1, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0]])


# ring expressions ---------------------------------------------------------


class RingExprError(ValueError):
    """Malformed ring expression."""


def parse_ring_expr(expr: str) -> RingSpec:
    """Parse ``Zn:<n>``, ``M:<r>:<expr>``, ``F3:<expr>``, ``TRI:<expr>`` or ``@file.json``."""
    expr = expr.strip()
    if expr.startswith("@"):
        try:
            return RingSpec.load(expr[1:])
        except (OSError, KeyError, ValueError) as exc:
            raise RingExprError(f"cannot load ring file {expr[1:]!r}: {exc}") from exc
    ring, rest = _parse(expr.split(":"), expr)
    if rest:
        raise RingExprError(f"trailing tokens in {expr!r}: {':'.join(rest)}")
    return ring


def _int_token(tokens: list[str], expr: str) -> tuple[int, list[str]]:
    if not tokens:
        raise RingExprError(f"missing integer in {expr!r}")
    try:
        return int(tokens[0]), tokens[1:]
    except ValueError:
        raise RingExprError(f"expected an integer, got {tokens[0]!r} in {expr!r}") from None


def _parse(tokens: list[str], expr: str) -> tuple[RingSpec, list[str]]:
    if not tokens or not tokens[0]:
        raise RingExprError(f"empty ring expression in {expr!r}")
    head, rest = tokens[0].upper(), tokens[1:]
    try:
        if head == "ZN":
            n, rest = _int_token(rest, expr)
            return cyclic_ring(n), rest
        if head == "M":
            r, rest = _int_token(rest, expr)
            base, rest = _parse(rest, expr)
            return matrix_ring(base, r), rest
        if head == "F3":
            base, rest = _parse(rest, expr)
            return antisymmetric_triple_ring(base), rest
        if head == "TRI":
            base, rest = _parse(rest, expr)
            return triangular_example_ring(base), rest
    except RingExprError:
        raise
    except ValueError as exc:
        raise RingExprError(str(exc)) from exc
    raise RingExprError(f"unknown ring constructor {tokens[0]!r} in {expr!r}")
