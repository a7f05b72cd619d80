"""Bundled verification campaigns and their canonical JSON reports.

Campaigns are data: ``data/campaigns.json`` lists each campaign's ring
expressions, identity keys and expected outcome. This module maps every
campaign ``kind`` to a runner that computes observed values and compares
them to the expected ones, one named check at a time.
"""

from __future__ import annotations

import fnmatch
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from math import gcd
from typing import Any, Callable

import numpy as np

from . import __version__
from .constructors import (
    corner_projection_map,
    doubled_corner_map,
    entry_sum_map,
    parse_ring_expr,
    row_to_column_map,
    triangular_example_ring,
    triangular_pair,
)
from .engine import (
    exhaustive_solutions,
    find_violation,
    satisfies,
    solve_identity,
    solve_staged,
    spot_check,
)
from .howell import kernel_mod_n
from .identities import get_law, mn_jordan
from .maps import (
    AdditiveMap,
    all_maps,
    apply,
    exhaustive_check,
    exhaustive_mask,
    is_jordan_left,
    is_left_centralizer,
    is_scalar_form,
    is_two_sided_centralizer,
    jordan_left_mask,
    left_defect,
    map_index,
    scalar_map,
)
from .ring import RingSpec, center, is_semiprime, torsion_free_by_gcd

SCHEMA = 1
TOOL = "centralizers"

BUILTIN_MAPS: dict[str, Callable[[RingSpec], AdditiveMap]] = {
    "entry-sum": entry_sum_map,
    "row-to-column": row_to_column_map,
    "doubled-corner": doubled_corner_map,
}


@dataclass(frozen=True)
class Campaign:
    id: str
    criterion: int
    summary: str
    kind: str
    params: dict
    expect: dict


@dataclass
class Check:
    name: str
    expected: Any
    observed: Any

    @property
    def passed(self) -> bool:
        return self.expected == self.observed

    def to_dict(self) -> dict:
        return {"name": self.name, "expected": self.expected, "observed": self.observed, "passed": self.passed}


@dataclass
class CampaignResult:
    campaign: Campaign
    checks: list[Check] = field(default_factory=list)
    info: dict = field(default_factory=dict)
    error: str | None = None
    duration_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.error is None and bool(self.checks) and all(c.passed for c in self.checks)

    def check(self, name: str, expected, observed) -> None:
        self.checks.append(Check(name, _plain(expected), _plain(observed)))

    def to_dict(self) -> dict:
        return {
            "id": self.campaign.id,
            "criterion": self.campaign.criterion,
            "summary": self.campaign.summary,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "info": _plain(self.info),
            "error": self.error,
        }


def _plain(value):
    """Convert numpy scalars, tuples and maps into JSON-ready values."""
    if isinstance(value, AdditiveMap):
        return value.rows()
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


# manifest -------------------------------------------------------------------


def load_manifest(path: str | None = None) -> list[Campaign]:
    if path is None:
        text = resources.files("centralizers").joinpath("data/campaigns.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    data = json.loads(text)
    if data.get("schema") != SCHEMA:
        raise ValueError(f"unsupported campaign schema {data.get('schema')!r}")
    campaigns = [Campaign(**entry) for entry in data["campaigns"]]
    ids = [c.id for c in campaigns]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate campaign ids in manifest")
    return sorted(campaigns, key=lambda c: c.id)


def select(campaigns: list[Campaign], pattern: str | None) -> list[Campaign]:
    """Campaigns whose id equals, glob-matches or starts with ``pattern + '-'``."""
    if not pattern:
        return list(campaigns)
    return [
        c
        for c in campaigns
        if c.id == pattern or fnmatch.fnmatchcase(c.id, pattern) or c.id.startswith(pattern + "-")
    ]


# runners --------------------------------------------------------------------


def _ring_info(ring: RingSpec) -> dict:
    return {"name": ring.name, "N": ring.exponent, "k": ring.rank, "cardinality": ring.cardinality}


def _central_scalars(ring: RingSpec) -> list[AdditiveMap]:
    return [scalar_map(ring, alpha) for alpha in center(ring)]


def _all_scalar(ring: RingSpec, members: list[AdditiveMap]) -> bool:
    central = set(center(ring))
    for T in members:
        alpha = is_scalar_form(ring, T)
        if alpha is None or alpha not in central:
            return False
    return True


def _run_triangular(c: Campaign, res: CampaignResult) -> None:
    base = parse_ring_expr(c.params["base"])
    ring = triangular_example_ring(base)
    T = corner_projection_map(base)
    a, b = triangular_pair(base)
    res.info["ring"] = _ring_info(ring)
    res.check("cardinality", c.expect["cardinality"], ring.cardinality)
    res.check("jordan-left (all elements)", c.expect["jordan_left"], exhaustive_check(ring, T, "jordan-left").holds)
    res.check("jordan-left (generators)", c.expect["jordan_left"], is_jordan_left(ring, T).holds)
    res.check("left centralizer (all pairs)", c.expect["left"], exhaustive_check(ring, T, "left").holds)
    res.check("witness", c.expect["witness"], [ring.format(a), ring.format(b)])
    res.check("T(AB)", c.expect["t_of_product"], ring.format(apply(ring, T, ring.mul(a, b))))
    res.check("T(A)B", c.expect["t_then_product"], ring.format(ring.mul(apply(ring, T, a), b)))


def _run_law_equality(c: Campaign, res: CampaignResult) -> None:
    for expr, size in zip(c.params["rings"], c.expect["cardinalities"]):
        ring = parse_ring_expr(expr)
        for jordan, plain in c.params["pairs"]:
            sj = solve_identity(ring, get_law(jordan))
            sp = solve_identity(ring, get_law(plain))
            res.check(f"{expr} {jordan} cardinality", size, sj.cardinality)
            res.check(f"{expr} {jordan} == {plain}", True, sj.same_as(sp))


def _run_scalar_solutions(c: Campaign, res: CampaignResult) -> None:
    law = get_law(c.params["law"])
    m = c.params.get("torsion_free")
    for expr, size in zip(c.params["rings"], c.expect["cardinalities"]):
        ring = parse_ring_expr(expr)
        if m is not None:
            res.check(f"{expr} {m}-torsion free (gcd)", True, torsion_free_by_gcd(ring, m))
        space = solve_identity(ring, law)
        res.check(f"{expr} cardinality", size, space.cardinality)
        members = space.members()
        if c.expect.get("equals_center_maps"):
            observed = sorted(T.key() for T in members)
            expected = sorted(T.key() for T in _central_scalars(ring))
            res.check(f"{expr} solutions == central scalar maps", True, observed == expected)
        if c.expect.get("all_scalar_form"):
            res.check(f"{expr} all scalar form", True, _all_scalar(ring, members))
        res.info[expr] = {"classification": space.classification}


def _run_map_counterexample(c: Campaign, res: CampaignResult) -> None:
    p = c.params
    ring = parse_ring_expr(p["ring"])
    T = BUILTIN_MAPS[p["map"]](ring)
    law = get_law(p["law"])
    x, y = ring.parse(p["x"]), ring.parse(p["y"])
    res.info["map"] = T
    res.check("satisfies (instantiation set)", c.expect["satisfies"], satisfies(ring, law, T))
    res.check(f"satisfies ({p['spot_checks']} random elements)", c.expect["satisfies"], spot_check(ring, law, T, samples=p["spot_checks"]).holds)
    res.check("satisfies (all elements)", c.expect["satisfies"], find_violation(ring, law, T).holds)
    res.check("left centralizer", c.expect["left"], is_left_centralizer(ring, T).holds)
    res.check("two-sided centralizer", c.expect["two_sided"], is_two_sided_centralizer(ring, T).holds)
    res.check(f"({p['x']}, {p['y']}) is a left witness", True, any(left_defect(ring, T, x, y)))
    res.info["T(xy)"] = ring.format(apply(ring, T, ring.mul(x, y)))
    res.info["T(x)y"] = ring.format(ring.mul(apply(ring, T, x), y))


def _binding_outcomes(ring: RingSpec, m: int, n: int) -> list[tuple[str, bool]]:
    law = mn_jordan(m, n)
    out = []
    for alpha in center(ring):
        T0 = scalar_map(ring, alpha)
        space = solve_identity(ring, law, {"T0": T0})
        out.append((ring.format(alpha), space.cardinality == 1 and space.contains(T0)))
    return out


def _run_mn_grid(c: Campaign, res: CampaignResult) -> None:
    for point in c.params["grid"]:
        m, n, expr = point["m"], point["n"], point["ring"]
        ring = parse_ring_expr(expr)
        p = ring.exponent
        res.check(f"({m},{n}) on {expr}: gcd(n(m+n)^3, N) = 1", True, gcd(n * (m + n) ** 3, p) == 1)
        outcomes = _binding_outcomes(ring, m, n)
        res.check(f"({m},{n}) on {expr}: bindings", len(center(ring)), len(outcomes))
        for alpha, ok in outcomes:
            res.check(f"({m},{n}) on {expr}, T0 = {alpha}*x: T = T0", c.expect["solution_is_t0"], ok)
    explore = {}
    for p in c.params["explore_moduli"]:
        ring = parse_ring_expr(f"M:2:Zn:{p}")
        for point in c.params["grid"]:
            m, n = point["m"], point["n"]
            outcomes = _binding_outcomes(ring, m, n)
            explore[f"({m},{n}) N={p}"] = {
                "n(m+n)^3 coprime": gcd(n * (m + n) ** 3, p) == 1,
                "m+n coprime": gcd(m + n, p) == 1,
                "n coprime": gcd(n, p) == 1,
                "T = T0 for every binding": all(ok for _, ok in outcomes),
            }
    res.info["exploration"] = explore


def _run_staged(c: Campaign, res: CampaignResult) -> None:
    p = c.params
    ring = parse_ring_expr(p["ring"])
    stages = solve_staged(ring, get_law(p["first"]), get_law(p["second"]), slot=p["slot"])
    stage1 = [T0 for T0, _ in stages]
    res.check("stage 1 cardinality", c.expect["stage1_cardinality"], len(stage1))
    res.check("stage 1 all scalar form", c.expect["stage1_all_scalar"], _all_scalar(ring, stage1))
    for T0, space in stages:
        alpha = ring.format(is_scalar_form(ring, T0) or ring.zero)
        res.check(f"stage 2, T0 = {alpha}*x: T = T0", c.expect["stage2_is_t0"], space.cardinality == 1 and space.contains(T0))


def _run_semiprime(c: Campaign, res: CampaignResult) -> None:
    for expr, flag, witness in zip(c.params["rings"], c.expect["semiprime"], c.expect["witness"]):
        ring = parse_ring_expr(expr)
        v = is_semiprime(ring)
        res.check(f"{expr} semiprime", flag, v.holds)
        res.check(f"{expr} witness", witness, None if v.witness is None else ring.format(v.witness))


def _run_zero_solutions(c: Campaign, res: CampaignResult) -> None:
    law = get_law(c.params["law"])
    for expr in c.params["rings"]:
        ring = parse_ring_expr(expr)
        space = solve_identity(ring, law)
        res.check(f"{expr} cardinality", c.expect["cardinality"], space.cardinality)
        res.check(f"{expr} only the zero map", True, [T.rows() for T in space.members()] == [[[0] * ring.rank] * ring.rank])


def _run_scalar_and_counterexample(c: Campaign, res: CampaignResult) -> None:
    p = c.params
    law = get_law(p["law"])
    ring = parse_ring_expr(p["scalar_ring"])
    space = solve_identity(ring, law)
    res.check(f"{p['scalar_ring']} cardinality", c.expect["scalar_cardinality"], space.cardinality)
    res.check(f"{p['scalar_ring']} all scalar form", True, _all_scalar(ring, space.members()))

    ring = parse_ring_expr(p["counter_ring"])
    T = BUILTIN_MAPS[p["map"]](ring)
    x, y = ring.parse(p["x"]), ring.parse(p["y"])
    space = solve_identity(ring, law)
    res.check(f"{p['map']} map satisfies the identity", c.expect["member"], space.contains(T))
    res.check(f"{p['map']} map is a left centralizer", c.expect["left"], is_left_centralizer(ring, T).holds)
    res.check(f"T({p['x']} * {p['y']})", c.expect["t_of_product"], ring.format(apply(ring, T, ring.mul(x, y))))
    res.check(f"T({p['x']}) * {p['y']}", c.expect["t_then_product"], ring.format(ring.mul(apply(ring, T, x), y)))
    violation = find_violation(ring, law, T)
    res.info["map"] = T
    res.info["violation"] = None if violation.holds else {
        "identity": violation.witness[0],
        "at": {v: ring.format(e) for v, e in violation.witness[1].items()},
    }
    left = [S for S in space.members() if not is_left_centralizer(ring, S)]
    res.info["solution space"] = {
        "ring": _ring_info(ring),
        "cardinality": space.cardinality,
        "classification": space.classification,
        "non-centralizer members": len(left),
        "first non-centralizer": left[0] if left else None,
    }


def _run_oracle(c: Campaign, res: CampaignResult) -> None:
    ring = parse_ring_expr(c.params["ring"])
    for key in c.params["laws"]:
        law = get_law(key)
        space = solve_identity(ring, law)
        solver = sorted(map_index(ring, m) for m in space.stack())
        brute = exhaustive_solutions(ring, law)
        res.check(f"{key} brute force == solver", c.expect["equal"], brute == solver)
        res.info[key] = {"solver": len(solver), "brute force": len(brute)}


def brute_force_solutions(a: np.ndarray, b: np.ndarray, n: int) -> list[int]:
    """Indices ``sum t_i n**i`` of all ``t`` with ``a t = b`` mod ``n``."""
    cols = a.shape[1]
    idx = np.arange(n**cols, dtype=np.int64)
    ts = (idx[:, None] // n ** np.arange(cols, dtype=np.int64)) % n
    ok = (((ts @ a.T) - b) % n == 0).all(axis=1)
    return [int(i) for i in idx[ok]]


def _vector_index(t, n: int) -> int:
    return sum(int(v) * n**i for i, v in enumerate(t))


def _run_kernel_random(c: Campaign, res: CampaignResult) -> None:
    p = c.params
    rng = np.random.default_rng(p["seed"])
    total = mismatches = consistent = 0
    for n in p["moduli"]:
        for trial in range(p["per_modulus"]):
            rows = int(rng.integers(1, p["max_dim"] + 1))
            cols = int(rng.integers(1, p["max_dim"] + 1))
            a = rng.integers(0, n, size=(rows, cols))
            if trial % 2 == 0:
                b = (a @ rng.integers(0, n, size=cols)) % n
            else:
                b = rng.integers(0, n, size=rows)
            sol = kernel_mod_n(a, b, n)
            solver = sorted(_vector_index(t, n) for t in sol.solutions()) if sol.consistent else []
            total += 1
            consistent += sol.consistent
            mismatches += solver != brute_force_solutions(a, b, n)
    res.check("systems", True, total >= c.expect["min_systems"])
    res.check("solution sets equal brute force", c.expect["equal"], mismatches == 0)
    res.info.update({"systems": total, "consistent": consistent, "mismatches": mismatches})


def _run_polarization(c: Campaign, res: CampaignResult) -> None:
    p = c.params
    ring = parse_ring_expr(p["full_ring"])
    stack = all_maps(ring)
    fast = jordan_left_mask(ring, stack)
    slow = exhaustive_mask(ring, stack, "jordan-left")
    res.check(f"all {len(stack)} maps on {p['full_ring']}", c.expect["agree"], bool(np.array_equal(fast, slow)))
    res.info[p["full_ring"]] = {"maps": len(stack), "jordan-left": int(fast.sum())}

    ring = parse_ring_expr(p["random_ring"])
    rng = np.random.default_rng(p["seed"])
    k = ring.rank
    stack = rng.integers(0, ring.exponent, size=(p["random_maps"], k, k))
    fast = jordan_left_mask(ring, stack)
    slow = exhaustive_mask(ring, stack, "jordan-left")
    res.check(f"{p['random_maps']} random maps on {p['random_ring']}", c.expect["agree"], bool(np.array_equal(fast, slow)))
    # random maps are almost never Jordan-left, so also feed in the true members
    members = solve_identity(ring, get_law("jordan-left")).stack()
    slow = exhaustive_mask(ring, members, "jordan-left")
    res.check(f"Jordan-left solutions on {p['random_ring']}", c.expect["agree"], bool(np.array_equal(jordan_left_mask(ring, members), slow)))
    res.info[p["random_ring"]] = {"random Jordan-left": int(fast.sum()), "members checked": len(members)}


RUNNERS: dict[str, Callable[[Campaign, CampaignResult], None]] = {
    "triangular-example": _run_triangular,
    "law-equality": _run_law_equality,
    "scalar-solutions": _run_scalar_solutions,
    "map-counterexample": _run_map_counterexample,
    "mn-grid": _run_mn_grid,
    "staged": _run_staged,
    "semiprime": _run_semiprime,
    "zero-solutions": _run_zero_solutions,
    "scalar-and-counterexample": _run_scalar_and_counterexample,
    "oracle": _run_oracle,
    "kernel-random": _run_kernel_random,
    "polarization": _run_polarization,
}


def run_campaign(campaign: Campaign) -> CampaignResult:
    """Run one campaign; runner exceptions become a failed result, budget errors propagate."""
    from .budget import BudgetExceeded

    res = CampaignResult(campaign)
    start = time.perf_counter()
    try:
        RUNNERS[campaign.kind](campaign, res)
    except BudgetExceeded:
        raise
    except Exception as exc:  # a crashing campaign is a failed campaign
        res.error = f"{type(exc).__name__}: {exc}"
    res.duration_ms = round((time.perf_counter() - start) * 1000, 1)
    return res


def run_campaigns(campaigns: list[Campaign], jobs: int = 1) -> list[CampaignResult]:
    if jobs > 1 and len(campaigns) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_campaign, campaigns))
    else:
        results = [run_campaign(c) for c in campaigns]
    return sorted(results, key=lambda r: r.campaign.id)


# reports ----------------------------------------------------------------------


def build_report(results: list[CampaignResult]) -> dict:
    """Aggregate report; durations sit in their own top-level field."""
    results = sorted(results, key=lambda r: r.campaign.id)
    passed = sum(r.passed for r in results)
    return {
        "schema": SCHEMA,
        "tool": {"name": TOOL, "version": __version__},
        "campaigns": [r.to_dict() for r in results],
        "summary": {"total": len(results), "passed": passed, "failed": len(results) - passed},
        "durations_ms": {r.campaign.id: r.duration_ms for r in results},
    }


def canonical_json(report: dict, durations: bool = True) -> str:
    if not durations:
        report = {k: v for k, v in report.items() if k != "durations_ms"}
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
