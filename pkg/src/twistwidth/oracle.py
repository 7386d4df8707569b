"""Brute-force baselines, seeded generators and the cross-check battery.

Everything here is deliberately naive: the baselines scan every subset of
the ground set, and :func:`certify_theorems` compares them against the
fast routes in :mod:`core`, :mod:`monotone` and :mod:`ribbon`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from . import core, monotone, ribbon
from .core import SetSystem
from .errors import GenerationExhausted, ImproperSystem, NotDeltaMatroid, TooLarge
from .formats import dumps, ribbon_graph_to_json, set_system_to_json
from .ribbon import RibbonGraph

BRUTE_FORCE_GROUND = 20
REJECTION_BUDGET = 10_000
MAX_RANDOM_EDGES = 8


def _all_twist_widths(D: SetSystem) -> np.ndarray:
    """Width of ``twist(D, A)`` for every mask A, indexed by A."""
    if not D.family:
        raise ImproperSystem("the family is empty")
    n = D.ground_size
    if n > BRUTE_FORCE_GROUND:
        raise TooLarge(f"ground size {n} exceeds the brute-force limit {BRUTE_FORCE_GROUND}")
    fam = np.array(D.family, dtype=np.uint64)
    total = 1 << n
    out = np.empty(total, dtype=np.int64)
    step = max(1, (1 << 22) // len(fam))
    for start in range(0, total, step):
        twists = np.arange(start, min(total, start + step), dtype=np.uint64)
        sizes = np.bitwise_count(twists[:, None] ^ fam[None, :])
        out[start:start + len(twists)] = sizes.max(axis=1).astype(np.int64) - sizes.min(axis=1)
    return out


def max_twist_width_bruteforce(D: SetSystem) -> int:
    """Largest width among all 2^n twists of D."""
    return int(_all_twist_widths(D).max())


def maximizing_twists(D: SetSystem) -> list[int]:
    """Every mask A for which ``twist(D, A)`` has the largest width."""
    widths = _all_twist_widths(D)
    return np.flatnonzero(widths == widths.max()).tolist()


# generators ---------------------------------------------------------------


def random_set_system(seed: int, n: int) -> SetSystem:
    """Each subset is kept independently with a seed-drawn probability."""
    if not 1 <= n <= 10:
        raise ValueError("n must be in 1..10")
    rng = random.Random(seed)
    while True:
        p = rng.uniform(0.05, 0.95)
        fam = [m for m in range(1 << n) if rng.random() < p]
        if fam:
            return SetSystem.from_masks(n, fam)


def random_ribbon_graph(seed: int, v: int, e: int, max_edges: int = MAX_RANDOM_EDGES) -> RibbonGraph:
    """Random signed rotation system on ``v`` vertices and ``e`` edges."""
    if v < 1:
        raise ValueError("need at least one vertex")
    if not 0 <= e <= max_edges:
        raise ValueError(f"e must be in 0..{max_edges}")
    rng = random.Random(seed)
    rots: list[list[int]] = [[] for _ in range(v)]
    for h in range(2 * e):
        rots[rng.randrange(v)].append(h)
    for r in rots:
        rng.shuffle(r)
    twisted = tuple(rng.random() < 0.5 for _ in range(e))
    return RibbonGraph(twisted, tuple(tuple(r) for r in rots))


def random_bouquet(seed: int, e: int, twisted: bool = True) -> RibbonGraph:
    """One-vertex graph with ``e`` loops in a random cyclic order."""
    G = random_ribbon_graph(seed, 1, e, max_edges=ribbon.MAX_ENUM_EDGES)
    return G if twisted else RibbonGraph((False,) * e, G.vertices)


STRATEGIES = ("rejection", "uniform_twist", "ribbon")


def random_delta_matroid(seed: int, n: int, strategy: Optional[str] = None) -> SetSystem:
    """A seeded delta-matroid on ``n`` elements.

    ``rejection`` draws random families inside a small window of elements
    around a random base set until the exchange axiom holds;
    ``uniform_twist`` twists all r-subsets by a random set; ``ribbon``
    takes the quasi-tree family of a random ribbon graph with ``n`` edges.
    """
    if not 1 <= n <= 8:
        raise ValueError("n must be in 1..8")
    rng = random.Random(seed)
    if strategy is None:
        strategy = STRATEGIES[rng.randrange(len(STRATEGIES))]
    full = (1 << n) - 1
    if strategy == "rejection":
        for _ in range(REJECTION_BUDGET):
            base = rng.randrange(full + 1)
            window = rng.sample(range(n), rng.randint(1, min(n, 4)))
            fam = []
            for bits in range(1 << len(window)):
                if rng.random() < 0.5:
                    sub = sum(1 << window[i] for i in range(len(window)) if bits >> i & 1)
                    fam.append(base ^ sub)
            if not fam:
                continue
            D = SetSystem.from_masks(n, fam)
            if core.check_symmetric_exchange(D).holds:
                return D
        raise GenerationExhausted(f"no delta-matroid after {REJECTION_BUDGET} draws")
    if strategy == "uniform_twist":
        r = rng.randint(0, n)
        bases = [m for m in range(full + 1) if m.bit_count() == r]
        return core.twist(SetSystem.from_masks(n, bases), rng.randrange(full + 1))
    if strategy == "ribbon":
        G = random_ribbon_graph(rng.randrange(2**64), rng.randint(1, 3), n)
        return ribbon.delta_matroid_of(G)
    raise ValueError(f"unknown strategy {strategy!r}")


# cross-check battery ------------------------------------------------------


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    failure: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.failure is None


@dataclass
class CertificationReport:
    seed: int
    trials: int
    results: dict[str, PropertyResult] = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    @property
    def failing(self) -> list[str]:
        return [name for name, r in self.results.items() if not r.passed]

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "all_passed": self.all_passed,
            "properties": {
                name: {"passed": r.passed, "checked": r.checked, "failure": r.failure}
                for name, r in self.results.items()
            },
        }


PROPERTIES = (
    "twist_involution",
    "twist_composition",
    "width_shift_bounds",
    "pairwise_matches_bruteforce",
    "max_attained_at_member",
    "axiom_twist_closure",
    "sandwich",
    "hat_family_nonempty",
    "monotone_trace_verified",
    "monotone_iterations",
    "profile_consistency",
    "monotone_refuses_non_delta_matroid",
    "genus_nonnegative",
    "width_equals_genus",
    "quasi_tree_axiom",
    "partial_dual_twist",
    "partial_dual_genus",
    "partial_dual_involution",
    "partial_dual_empty",
    "one_boundary_connected",
    "max_pd_genus_agreement",
    "deficiency_identity",
)


def certify_theorems(
    seed: int,
    trials: int,
    impls: Optional[dict[str, Callable]] = None,
) -> CertificationReport:
    """Run every cross-check on ``trials`` seeded instances.

    Each trial draws a proper set system, a delta-matroid and a ribbon
    graph. ``impls`` may replace ``max_twist_width``, ``width``,
    ``hat_family`` or ``partial_dual`` to check that the battery notices a
    broken implementation.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    impls = impls or {}
    mtw = impls.get("max_twist_width", core.max_twist_width)
    wid = impls.get("width", core.width)
    pdual = impls.get("partial_dual", ribbon.partial_dual)

    report = CertificationReport(seed, trials, {name: PropertyResult(name) for name in PROPERTIES})
    rng = random.Random(seed)

    def check(name: str, ok: bool, instance: dict, detail: str = "") -> None:
        res = report.results[name]
        res.checked += 1
        if not ok and res.failure is None:
            res.failure = {"instance": instance, "detail": detail}

    for _ in range(trials):
        n = rng.randint(1, 7)
        S = random_set_system(rng.randrange(2**64), n)
        s_json = set_system_to_json(S)
        a, b = rng.randrange(1 << n), rng.randrange(1 << n)
        check("twist_involution", core.twist(core.twist(S, a), a) == S, s_json, f"A={core.elements(a)}")
        check(
            "twist_composition",
            core.twist(core.twist(S, a), b) == core.twist(S, a ^ b),
            s_json,
            f"A={core.elements(a)} B={core.elements(b)}",
        )
        base = core.width_summary(S)
        for e in range(n):
            t = core.width_summary(core.twist(S, 1 << e))
            ok = abs(t.r_min - base.r_min) <= 1 and abs(t.r_max - base.r_max) <= 1
            check("width_shift_bounds", ok, s_json, f"e={e + 1}")
        brute = max_twist_width_bruteforce(S)
        fast = mtw(S)
        check("pairwise_matches_bruteforce", fast == brute, s_json, f"pairwise={fast} brute={brute}")
        members = S._members
        check("max_attained_at_member", any(m in members for m in maximizing_twists(S)), s_json)
        check("hat_family_nonempty", bool(core.hat_family(S)), s_json)
        if not core.check_symmetric_exchange(S).holds:
            try:
                monotone.monotone_sequence(S)
                refused = False
            except NotDeltaMatroid:
                refused = True
            check("monotone_refuses_non_delta_matroid", refused, s_json)

        dn = rng.randint(1, 6)
        D = random_delta_matroid(rng.randrange(2**64), dn)
        d_json = set_system_to_json(D)
        tw = rng.randrange(1 << dn)
        check("axiom_twist_closure", core.check_symmetric_exchange(core.twist(D, tw)).holds, d_json,
              f"A={core.elements(tw)}")
        for f0 in D.family:
            try:
                lo, hi = core.sandwich(D, f0)
                ok = lo & ~f0 == 0 and f0 & ~hi == 0
            except Exception:  # noqa: BLE001 - any error is a failed check
                ok = False
            check("sandwich", ok, d_json, f"F0={core.elements(f0)}")
        trace = monotone.monotone_sequence(D)
        verdict = monotone.verify_trace(D, trace)
        claimed_ok = trace.widths[-1] == mtw(D) and all(
            wid(core.twist(D, monotone._prefix(trace.sequence, i))) == w for i, w in enumerate(trace.widths)
        )
        check("monotone_trace_verified", verdict.ok and claimed_ok, d_json,
              "; ".join(v.message for v in verdict.violations))
        check("monotone_iterations", len(trace.sequence) == trace.final_set.bit_count()
              and trace.final_set == core.hat_family(D)[0], d_json)
        check("profile_consistency", tuple(monotone.width_profile(D, trace.sequence)) == trace.widths, d_json)

        e = rng.randint(0, 5)
        G = random_ribbon_graph(rng.randrange(2**64), rng.randint(1, 3), e)
        _check_ribbon(G, check, wid, mtw, pdual)

    return report


def _check_ribbon(G: RibbonGraph, check, wid, mtw, pdual) -> None:
    g_json = ribbon_graph_to_json(G)
    gamma = ribbon.euler_genus(G)
    DG = ribbon.delta_matroid_of(G)
    check("genus_nonnegative", gamma >= 0, g_json, f"genus={gamma}")
    check("width_equals_genus", wid(DG) == gamma, g_json, f"width={wid(DG)} genus={gamma}")
    check("quasi_tree_axiom", core.check_symmetric_exchange(DG).holds, g_json)
    check("partial_dual_empty", pdual(G, 0) == G, g_json)
    connected = G.component_count() == 1
    for A in range(1 << G.num_edges):
        H = pdual(G, A)
        label = f"A={core.elements(A)}"
        check("partial_dual_twist", ribbon.delta_matroid_of(H) == core.twist(DG, A), g_json, label)
        formula = ribbon.pd_genus_formula(G, A)
        check(
            "partial_dual_genus",
            ribbon.euler_genus(H) == formula == wid(core.twist(DG, A)),
            g_json,
            label,
        )
        check("partial_dual_involution", ribbon.isomorphic(pdual(H, A), G), g_json, label)
        if connected and G.face_count(A) == 1:
            check("one_boundary_connected", G.component_count(A) == 1, g_json, label)
    a = ribbon.max_pd_genus_by_quasi_trees(G)
    b = mtw(DG)
    c = ribbon.max_pd_genus_by_sweep(G)
    check("max_pd_genus_agreement", a == b == c, g_json, f"quasi-trees={a} twist-width={b} sweep={c}")
    if connected:
        table = G.face_table
        full = G.all_edges
        value = min(table[full & ~q] for q in ribbon.quasi_tree_masks(G))
        check("deficiency_identity", value == G.num_edges + 1 - b, g_json, f"deficiency={value}")


def write_failures(report: CertificationReport, directory: Path) -> list[Path]:
    """Write each failing instance as a standard JSON file for replay."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, res in report.results.items():
        if res.failure is None:
            continue
        path = directory / f"{name}.json"
        path.write_text(dumps(res.failure["instance"]), encoding="utf-8")
        paths.append(path)
    return paths
