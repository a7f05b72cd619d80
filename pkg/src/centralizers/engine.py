"""Compile T-linear identities on a finite ring into linear systems and solve them.

The unknown map is the vector ``t`` of its ``k*k`` matrix entries (row-major).
Each identity is instantiated on a finite set of substitutions that is
sufficient for it to hold everywhere:

* a variable of degree one in every term ranges over the generators
  (the residual is additive in it);
* a variable of degree two ranges over the generators and their pairwise
  sums (the residual is a quadratic form in it, fixed by its values on the
  generators and its polar form on generator pairs).

Every instantiation contributes ``k`` rows to ``A t = b``. The residual is
affine in ``t``, so it is evaluated once at the zero map and once at each
matrix unit to read off ``b`` and the columns of ``A``.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from . import budget
from .howell import ModularSolution, kernel_mod_n
from .identities import Identity, Law, MapApp, Var, format_law
from .maps import (
    AdditiveMap,
    all_maps,
    as_stack,
    apply_array,
    jordan_left_mask,
    left_centralizer_mask,
    map_index,
    right_centralizer_mask,
    scalar_form_mask,
)
from .ring import Element, RingSpec, Verdict

log = logging.getLogger(__name__)

BUCKETS = ("zero", "scalar-form", "two-sided", "left-only", "right-only", "jordan-left-only", "other")

Bindings = Mapping[str, AdditiveMap]


class DegreeError(ValueError):
    """A variable's degree is outside what the instantiation strategy supports."""


class UnboundSlotError(ValueError):
    """A known map slot has no binding."""


def _as_law(law) -> Law:
    return (law,) if isinstance(law, Identity) else tuple(law)


def instantiation_set(ring: RingSpec, identity: Identity, var: str) -> list[Element]:
    """Substitutions for ``var`` that suffice for the identity to hold for all values."""
    if var not in identity.variables:
        raise KeyError(f"{var!r} does not occur in {identity}")
    if not identity.is_homogeneous_in(var):
        raise DegreeError(f"{var!r} occurs with different degrees across the terms of {identity}")
    degree = identity.degree(var)
    gens = ring.generators()
    if degree == 1:
        return gens
    if degree == 2:
        return gens + [ring.add(gens[i], gens[j]) for i, j in itertools.combinations(range(len(gens)), 2)]
    raise DegreeError(f"{var!r} has degree {degree} in {identity}; at most 2 is supported")


def evaluate(ring: RingSpec, identity: Identity, values: Mapping[str, np.ndarray], maps: Mapping[str, np.ndarray]) -> np.ndarray:
    """``lhs - rhs`` with numpy broadcasting over leading axes of values and maps."""
    total = None
    for sign, side in ((1, identity.lhs), (-1, identity.rhs)):
        for term in side:
            acc = None
            for f in term.factors:
                if isinstance(f, Var):
                    val = values[f.name]
                else:
                    arg = values[f.args[0]]
                    for name in f.args[1:]:
                        arg = ring.mul_array(arg, values[name])
                    val = apply_array(ring, maps[f.slot], arg)
                acc = val if acc is None else ring.mul_array(acc, val)
            contrib = sign * term.coefficient * acc
            total = contrib if total is None else total + contrib
    return total % ring.exponent


def _check_bindings(law: Law, bindings: Bindings) -> None:
    for identity in law:
        for slot in identity.known_slots:
            if slot not in bindings:
                raise UnboundSlotError(f"map slot {slot!r} in {identity} is not bound")


def _known_stacks(ring: RingSpec, bindings: Bindings) -> dict[str, np.ndarray]:
    out = {}
    for slot, T in bindings.items():
        if T.size != ring.rank:
            raise ValueError(f"binding {slot} has size {T.size}, ring rank is {ring.rank}")
        out[slot] = T.matrix
    return out


def _instantiations(ring: RingSpec, identity: Identity) -> tuple[tuple[str, ...], np.ndarray]:
    names = identity.variables
    sets = [instantiation_set(ring, identity, v) for v in names]
    tuples = np.array(list(itertools.product(*sets)), dtype=np.int64).reshape(-1, len(names), ring.rank)
    return names, tuples


def compile_identity(ring: RingSpec, identity: Identity, bindings: Bindings | None = None) -> tuple[np.ndarray, np.ndarray]:
    """The system ``A t = b`` (over ``Z/N``) equivalent to ``identity`` holding for all values."""
    bindings = dict(bindings or {})
    _check_bindings((identity,), bindings)
    k = ring.rank
    names, tuples = _instantiations(ring, identity)
    probes = np.zeros((k * k + 1, k, k), dtype=np.int64)
    probes[1:].reshape(k * k, k * k)[:] = np.eye(k * k, dtype=np.int64)
    maps = _known_stacks(ring, bindings)
    maps[identity.unknown] = probes
    values = {name: tuples[:, pos, None, :] for pos, name in enumerate(names)}
    res = evaluate(ring, identity, values, maps)  # (P, k*k + 1, k)
    res = np.broadcast_to(res, (len(tuples), k * k + 1, k))
    const = res[:, 0, :]
    cols = (res[:, 1:, :] - const[:, None, :]) % ring.exponent
    a = np.transpose(cols, (0, 2, 1)).reshape(-1, k * k)
    b = (-const).reshape(-1) % ring.exponent
    return a, b


def compile_law(ring: RingSpec, law, bindings: Bindings | None = None) -> tuple[np.ndarray, np.ndarray]:
    parts = [compile_identity(ring, identity, bindings) for identity in _as_law(law)]
    return np.vstack([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def satisfies(ring: RingSpec, law, T: AdditiveMap, bindings: Bindings | None = None) -> bool:
    """Check ``T`` against the compiled (polarized) instantiations."""
    a, b = compile_law(ring, law, bindings)
    return not ((a @ T.matrix.reshape(-1) - b) % ring.exponent).any()


# classification ---------------------------------------------------------------


def classify(ring: RingSpec, maps) -> np.ndarray:
    """Bucket index into :data:`BUCKETS` for each map; first matching bucket wins."""
    stack = as_stack(maps)
    labels = np.full(len(stack), len(BUCKETS) - 1, dtype=np.int64)
    if len(stack) == 0:
        return labels
    left = left_centralizer_mask(ring, stack)
    right = right_centralizer_mask(ring, stack)
    masks = [
        ~stack.reshape(len(stack), -1).any(axis=1),
        scalar_form_mask(ring, stack) if ring.is_unital else np.zeros(len(stack), dtype=bool),
        left & right,
        left,
        right,
        jordan_left_mask(ring, stack),
    ]
    for bucket in reversed(range(len(masks))):
        labels[masks[bucket]] = bucket
    return labels


def canonical_sort(stack: np.ndarray) -> np.ndarray:
    """Sort maps by their map index (see :func:`centralizers.maps.all_maps`)."""
    if len(stack) == 0:
        return stack
    flat = stack.reshape(len(stack), -1)
    return stack[np.lexsort(flat.T)]


@dataclass(eq=False)
class SolutionSpace:
    """Every additive map satisfying a law, with a classification of its members."""

    ring: RingSpec
    law: Law
    solution: ModularSolution
    classification: dict[str, int] = field(default_factory=dict)
    witnesses: dict[str, AdditiveMap] = field(default_factory=dict)
    sampled: bool = False

    @property
    def cardinality(self) -> int:
        return self.solution.cardinality

    @property
    def consistent(self) -> bool:
        return self.solution.consistent

    def _as_map(self, vec) -> AdditiveMap:
        k = self.ring.rank
        return AdditiveMap(np.asarray(vec).reshape(k, k), self.ring.exponent)

    @property
    def particular(self) -> AdditiveMap | None:
        return None if self.solution.particular is None else self._as_map(self.solution.particular)

    @property
    def kernel_basis(self) -> list[tuple[AdditiveMap, int]]:
        """Howell-form generators of the homogeneous solutions with their additive orders."""
        return [(self._as_map(row), o) for row, o in zip(self.solution.kernel, self.solution.orders)]

    def contains(self, T: AdditiveMap) -> bool:
        return self.solution.contains(T.matrix.reshape(-1))

    def stack(self) -> np.ndarray:
        """All members as an ``(S, k, k)`` array in canonical order."""
        k = self.ring.rank
        return canonical_sort(self.solution.solutions().reshape(-1, k, k))

    def members(self) -> list[AdditiveMap]:
        return [AdditiveMap(m, self.ring.exponent) for m in self.stack()]

    def same_as(self, other: "SolutionSpace") -> bool:
        """Equality as sets, decided on the canonical forms."""
        return self.ring.rank == other.ring.rank and self.solution.same_as(other.solution)

    def to_dict(self) -> dict:
        p = self.particular
        return {
            "identity": format_law(self.law),
            "consistent": self.consistent,
            "cardinality": self.cardinality,
            "particular": p.rows() if p is not None else None,
            "kernel_basis": [{"map": m.rows(), "order": o} for m, o in self.kernel_basis],
            "classification": dict(self.classification),
            "witnesses": {b: m.rows() for b, m in sorted(self.witnesses.items())},
            "sampled": self.sampled,
        }


def _tally(ring: RingSpec, stack: np.ndarray) -> tuple[dict[str, int], dict[str, AdditiveMap]]:
    labels = classify(ring, stack)
    counts = {b: 0 for b in BUCKETS}
    witnesses = {}
    for pos, bucket in enumerate(BUCKETS):
        hits = np.flatnonzero(labels == pos)
        counts[bucket] = int(len(hits))
        if len(hits):
            witnesses[bucket] = AdditiveMap(stack[hits[0]], ring.exponent)
    return counts, witnesses


def solve_identity(ring: RingSpec, law, bindings: Bindings | None = None, enum_cap: int | None = None) -> SolutionSpace:
    """Solve a law for its unknown map and classify the solutions.

    Solutions are enumerated and classified when there are at most
    ``enum_cap`` of them; otherwise the particular solution and the kernel
    generators are classified and the space is flagged as sampled.
    """
    law = _as_law(law)
    unknowns = {identity.unknown for identity in law}
    if len(unknowns) != 1:
        raise ValueError(f"a law must share one unknown slot, got {sorted(unknowns)}")
    a, b = compile_law(ring, law, bindings)
    solution = kernel_mod_n(a, b, ring.exponent)
    space = SolutionSpace(ring, law, solution)
    cap = budget.enum_cap() if enum_cap is None else enum_cap
    if not solution.consistent:
        space.classification = {bucket: 0 for bucket in BUCKETS}
    elif solution.cardinality <= cap:
        space.classification, space.witnesses = _tally(ring, space.stack())
    else:
        k = ring.rank
        probes = [solution.particular] + [(solution.particular + row) % ring.exponent for row in solution.kernel]
        space.classification, space.witnesses = _tally(ring, np.array(probes).reshape(-1, k, k))
        space.sampled = True
    log.debug("solved %s on %s: %d solutions", format_law(law), ring.name, space.cardinality)
    return space


def solve_staged(ring: RingSpec, first, second, slot: str = "T0", enum_cap: int | None = None) -> list[tuple[AdditiveMap, SolutionSpace]]:
    """Solve ``first`` for a map, then ``second`` with ``slot`` bound to each solution."""
    stage1 = solve_identity(ring, first, enum_cap=enum_cap)
    return [(T0, solve_identity(ring, second, {slot: T0}, enum_cap=enum_cap)) for T0 in stage1.members()]


# exhaustive oracles -------------------------------------------------------------


def _full_instantiations(ring: RingSpec, identity: Identity, limit: int | None):
    names = identity.variables
    limit = budget.element_budget() if limit is None else limit
    budget.require(ring.cardinality ** len(names), limit, f"full instantiation of {identity} on {ring.name}")
    elems = ring.elements(limit)
    return names, elems


def find_violation(ring: RingSpec, law, T: AdditiveMap, bindings: Bindings | None = None, limit: int | None = None) -> Verdict:
    """Evaluate the law at every full-element substitution; witness is the first failure."""
    bindings = dict(bindings or {})
    law = _as_law(law)
    _check_bindings(law, bindings)
    for identity in law:
        names, elems = _full_instantiations(ring, identity, limit)
        maps = _known_stacks(ring, bindings)
        maps[identity.unknown] = T.matrix
        # vary the last variable in a vectorised axis
        for head in itertools.product(range(len(elems)), repeat=len(names) - 1):
            values = {name: elems[i] for name, i in zip(names, head)}
            values[names[-1]] = elems
            res = evaluate(ring, identity, values, maps)
            res = np.broadcast_to(res, (len(elems), ring.rank))
            bad = np.flatnonzero(res.any(axis=1))
            if len(bad):
                point = [tuple(int(c) for c in elems[i]) for i in head]
                point.append(tuple(int(c) for c in elems[bad[0]]))
                return Verdict(False, (str(identity), dict(zip(names, point))))
    return Verdict(True)


def spot_check(ring: RingSpec, law, T: AdditiveMap, bindings: Bindings | None = None, samples: int = 200, seed: int = 0) -> Verdict:
    """Evaluate the law at ``samples`` random full-element substitutions per identity."""
    bindings = dict(bindings or {})
    law = _as_law(law)
    _check_bindings(law, bindings)
    rng = np.random.default_rng(seed)
    for identity in law:
        maps = _known_stacks(ring, bindings)
        maps[identity.unknown] = T.matrix
        names = identity.variables
        draws = rng.integers(0, ring.exponent, size=(samples, len(names), ring.rank))
        values = {name: draws[:, pos, :] for pos, name in enumerate(names)}
        res = evaluate(ring, identity, values, maps)
        res = np.broadcast_to(res, (samples, ring.rank))
        bad = np.flatnonzero(res.any(axis=1))
        if len(bad):
            point = {name: tuple(int(c) for c in draws[bad[0], pos]) for pos, name in enumerate(names)}
            return Verdict(False, (str(identity), point))
    return Verdict(True)


def _search_range(ring: RingSpec, law: Law, bindings: Bindings, start: int, stop: int, limit: int | None) -> np.ndarray:
    stack = all_maps(ring, start, stop)
    alive = np.arange(start, start + len(stack), dtype=np.int64)
    for identity in law:
        names, elems = _full_instantiations(ring, identity, limit)
        known = _known_stacks(ring, bindings)
        for point in itertools.product(range(len(elems)), repeat=len(names)):
            if len(stack) == 0:
                return alive
            maps = dict(known)
            maps[identity.unknown] = stack
            values = {name: elems[i] for name, i in zip(names, point)}
            res = np.broadcast_to(evaluate(ring, identity, values, maps), (len(stack), ring.rank))
            keep = ~res.any(axis=1)
            stack, alive = stack[keep], alive[keep]
    return alive


def exhaustive_solutions(
    ring: RingSpec,
    law,
    bindings: Bindings | None = None,
    workers: int = 1,
    chunk: int = 1 << 14,
    limit: int | None = None,
) -> list[int]:
    """Indices of all additive maps satisfying the law at every full-element substitution.

    Brute force over the ``N**(k*k)`` maps, independent of compilation and of
    the kernel solver. The index range is split into chunks; with
    ``workers > 1`` they run in separate processes and are merged in order.
    """
    bindings = dict(bindings or {})
    law = _as_law(law)
    _check_bindings(law, bindings)
    total = ring.exponent ** (ring.rank**2)
    budget.require(total, budget.map_budget(), f"map search on {ring.name}")
    ranges = [(s, min(s + chunk, total)) for s in range(0, total, chunk)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_search_range, ring, law, bindings, s, e, limit) for s, e in ranges]
            parts = [f.result() for f in futures]
    else:
        parts = [_search_range(ring, law, bindings, s, e, limit) for s, e in ranges]
    return sorted(int(i) for part in parts for i in part)


@dataclass
class Sufficiency:
    """Outcome of :func:`verify_sufficiency`; ``None`` marks a skipped half."""

    sound: bool | None
    complete: bool | None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.sound is not False and self.complete is not False


def verify_sufficiency(
    ring: RingSpec,
    law,
    bindings: Bindings | None = None,
    space: SolutionSpace | None = None,
    workers: int = 1,
) -> Sufficiency:
    """Cross-check a solved space against full-element evaluation.

    Soundness: the particular solution and the particular solution shifted by
    each kernel generator satisfy the law at every substitution; since the
    residual is affine in the map, this covers every member. Completeness:
    when all maps can be enumerated, the brute-force solution set equals the
    space's membership set.
    """
    law = _as_law(law)
    bindings = dict(bindings or {})
    space = space or solve_identity(ring, law, bindings)
    details = []
    sound: bool | None = True
    try:
        if space.consistent:
            p = space.particular
            probes = [p] + [
                AdditiveMap(p.matrix + m.matrix, ring.exponent) for m, _ in space.kernel_basis
            ]
            for probe in probes:
                verdict = find_violation(ring, law, probe, bindings)
                if not verdict:
                    sound = False
                    details.append(f"member {probe.rows()} violates {verdict.witness}")
                    break
    except budget.BudgetExceeded as exc:
        sound = None
        details.append(f"soundness skipped: {exc}")
    complete: bool | None
    try:
        found = exhaustive_solutions(ring, law, bindings, workers=workers)
        expected = [map_index(ring, m) for m in space.stack()] if space.consistent else []
        complete = found == sorted(expected)
        if not complete:
            details.append(f"brute force found {len(found)} maps, solver {space.cardinality}")
    except budget.BudgetExceeded as exc:
        complete = None
        details.append(f"completeness skipped: {exc}")
    return Sufficiency(sound, complete, "; ".join(details))
