"""Verification harness: named bound-checking suites, the capture-time
regime classifier for cubes, and the seeded Monte Carlo runner.

Every asymptotic claim is checked as exact values or explicit inequalities
on fixed finite families; suites emit one BoundReport per checked instance
and never assert limits. All randomness is seeded; suite output is a pure
function of its parameters.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import AmbiguousRegime, DomainError, StateBudgetExceeded, UnknownSuite
from .generators import (
    gen_connected_gnp,
    gen_cycle,
    gen_gnp,
    gen_grid,
    gen_grid_dims,
    gen_hypercube,
    gen_tree,
    from_spec,
)
from .graphs import MAXDIST, Graph, domination_number, k_center, metrics
from .planar import separator_sweep_policy, three_cop_planar_policy
from .play import play, worst_case_capture_round
from .solver import capture_time, cop_number, estimate_cost, extract_policies, solve
from .sphere_trap import SphereTrapPolicy, counting_cop_bound, net_radius
from .strategies import (
    GreedyFastRobber,
    GreedyRobber,
    PigeonholeGridRobber,
    RandomWalkRobber,
    StayFarRobber,
    StaticCopPolicy,
    grid_cover_policy,
    subcube_partition_policy,
    tree_policy,
)
from .serialize import csv_lines, stable_json
from . import sphere_trap as st

# ---------------------------------------------------------------------------
# regime machinery


def g_eval(x: float) -> float:
    """Binary-entropy style exponent balance function on (0, 1/2], with the
    0 * log2(0) = 0 convention at x = 1/2."""
    if not 0.0 < x <= 0.5:
        raise DomainError(f"g is defined on (0, 1/2], got {x}")

    def xlog2(t: float) -> float:
        return 0.0 if t == 0.0 else t * math.log2(t)

    return xlog2(2 * x) + xlog2(1 - 2 * x) - xlog2(x) - xlog2(1 - x)


@dataclass(frozen=True)
class RegimeConstants:
    c: float
    b: float


def regime_constants() -> RegimeConstants:
    c = 0.5 - math.sqrt(2) / 4
    return RegimeConstants(c=c, b=-g_eval(c))


@dataclass(frozen=True)
class RegimeResult:
    part: str
    order: str
    n: int
    log2_k: float
    x: float  # log2(k) / n
    f: float  # n - log2(k)


_REGIME_ORDERS = {
    "i": "Theta(n log n)",
    "ii": "Omega(n), O(n log n)",
    "iii": "Theta(n)",
    "iv": "Theta(n / (omega log omega))",
    "v": "O(1)",
}


def qn_regime(n: int, k: int, eps: float = 0.05, *, polylog_cap: float = 4.0) -> RegimeResult:
    """Classify the capture-time order of the n-cube with k cops.

    Decision order (boundaries within 1e-9 raise AmbiguousRegime):
    1. x = log2(k)/n in (1 - b + eps, 1 - eps]  -> part iii, Theta(n)
    2. f = n - log2(k) <= polylog_cap * log2(n) -> part v, O(1)
    3. x > 1 - eps                              -> part iv, with omega = n/f
    4. alpha = ln(log2 k)/ln(n) <= 1 - eps      -> part i, Theta(n log n)
    5. otherwise                                -> part ii (both bounds kept)
    """
    if n < 2:
        raise DomainError("need n >= 2")
    if k < (n + 2) // 2:
        raise ValueError(f"k = {k} is below the cube cop number {(n + 2) // 2}")
    if not 0 < eps < 0.5:
        raise ValueError("eps must lie in (0, 1/2)")
    consts = regime_constants()
    log2k = math.log2(k)
    x = log2k / n
    f = n - log2k

    def near(a, b_):
        return abs(a - b_) <= 1e-9 * max(1.0, abs(a), abs(b_))

    band_lo, band_hi = 1 - consts.b + eps, 1 - eps
    for boundary in (band_lo, band_hi):
        if near(x, boundary):
            raise AmbiguousRegime(f"x = {x} sits on a regime boundary {boundary}")
    if near(f, polylog_cap * math.log2(n)):
        raise AmbiguousRegime(f"f = {f} sits on the polylog boundary")

    def done(part):
        return RegimeResult(part, _REGIME_ORDERS[part], n, log2k, x, f)

    if band_lo < x <= band_hi:
        return done("iii")
    if f <= polylog_cap * math.log2(n):
        return done("v")
    if x > band_hi:
        return done("iv")
    alpha = math.log(log2k) / math.log(n) if log2k > 0 else 0.0
    if near(alpha, 1 - eps):
        raise AmbiguousRegime(f"alpha = {alpha} sits on the regime boundary")
    if alpha <= 1 - eps:
        return done("i")
    return done("ii")


# ---------------------------------------------------------------------------
# bound reports


@dataclass(frozen=True)
class BoundReport:
    suite: str
    instance: str
    quantity: str
    measured: float | int | None
    bound: float | int | None
    passed: bool
    seed: str = ""
    rounds: int | None = None
    runtime_ms: int = 0


CSV_HEADER = ["suite", "instance", "quantity", "measured", "bound", "pass", "seed", "rounds", "runtime_ms"]


def _num(value):
    if value is None:
        return ""
    if isinstance(value, int) and value >= MAXDIST:
        return "inf"
    return value


def reports_to_csv(reports) -> str:
    rows = [
        [r.suite, r.instance, r.quantity, _num(r.measured), _num(r.bound),
         r.passed, r.seed, _num(r.rounds), r.runtime_ms]
        for r in reports
    ]
    return csv_lines(CSV_HEADER, rows)


def reports_to_jsonable(reports) -> list:
    out = []
    for r in reports:
        out.append(
            {
                "suite": r.suite,
                "instance": r.instance,
                "quantity": r.quantity,
                "measured": None if r.measured is None else (
                    "inf" if isinstance(r.measured, int) and r.measured >= MAXDIST else r.measured
                ),
                "bound": None if r.bound is None else (
                    "inf" if isinstance(r.bound, int) and r.bound >= MAXDIST else r.bound
                ),
                "pass": r.passed,
                "seed": r.seed,
                "rounds": r.rounds,
                "runtime_ms": r.runtime_ms,
            }
        )
    return out


def all_passed(reports) -> bool:
    return all(r.passed for r in reports)


# ---------------------------------------------------------------------------
# shared instance builders


def tree_instances(count: int = 20, n_max: int = 12, base_seed: int = 0):
    out = []
    for i in range(count):
        n = 3 + (i % (n_max - 2))
        seed = f"tree-{base_seed}-{i}"
        out.append((f"tree{i:02d}-n{n}", gen_tree(n, seed), seed))
    return out


_STUDY_CACHE: dict = {}


def random_small_study(
    count_per_p: int = 25,
    n_lo: int = 5,
    n_hi: int = 10,
    ps=(0.3, 0.5),
    base_seed: int = 0,
    move_cap: int = 1_500_000,
    gamma_move_cap: int = 40_000_000,
):
    """Connected G(n, p) instances with exact capture times for every k the
    move budget admits (always including k = domination number), exact
    k-center radii, and metrics. Cached per parameter tuple so sibling
    suites share one computation."""
    key = (count_per_p, n_lo, n_hi, tuple(ps), base_seed, move_cap, gamma_move_cap)
    if key in _STUDY_CACHE:
        return _STUDY_CACHE[key]
    study = []
    for p in ps:
        for i in range(count_per_p):
            n = n_lo + (i % (n_hi - n_lo + 1))
            g, probe = gen_connected_gnp(n, p, f"study-{base_seed}-{p}-{i}")
            capts = {}
            for k in range(1, n):
                states, mv = estimate_cost(g, k)
                if mv > move_cap:
                    break
                capts[k] = solve(g, k).capture_time()
            gamma = domination_number(g)
            if gamma not in capts and gamma < n:
                capts[gamma] = capture_time(g, gamma, move_cap=gamma_move_cap)
            radk = {k: k_center(g, k).radius for k in capts}
            met = metrics(g)
            study.append(
                {
                    "id": f"gnp-p{p}-{i:02d}-n{n}",
                    "graph": g,
                    "seed": probe,
                    "capts": capts,
                    "radk": radk,
                    "gamma": gamma,
                    "diam": met.diameter,
                }
            )
    _STUDY_CACHE[key] = study
    return study


# ---------------------------------------------------------------------------
# suites


def _suite_trees(params):
    reports = []
    for name, g, seed in tree_instances(
        params.get("count", 20), params.get("n_max", 12), params.get("base_seed", 0)
    ):
        for k in range(1, params.get("k_max", 3) + 1):
            capt = capture_time(g, k)
            rad = k_center(g, k).radius if k < g.n else 0
            reports.append(
                BoundReport(
                    "trees", name, f"capt_{k}_equals_rad_{k}", capt, rad,
                    capt == rad, seed=seed,
                )
            )
    return reports


def _suite_grid_closed_form(params):
    reports = []
    lo, hi = params.get("m_min", 2), params.get("m_max", 5)
    for m in range(lo, hi + 1):
        for n in range(lo, hi + 1):
            g, _ = gen_grid_dims([m, n])
            capt = capture_time(g, 2)
            want = (m + n) // 2 - 1
            reports.append(
                BoundReport(
                    "grid_closed_form", f"grid{m}x{n}", "capt_2", capt, want,
                    capt == want,
                )
            )
    return reports


def _suite_lower_bounds(params):
    reports = []
    for inst in random_small_study(
        params.get("count_per_p", 25),
        params.get("n_lo", 5),
        params.get("n_hi", 10),
        tuple(params.get("ps", (0.3, 0.5))),
        params.get("base_seed", 0),
    ):
        diam = inst["diam"]
        for k, capt in sorted(inst["capts"].items()):
            rad = inst["radk"][k]
            reports.append(
                BoundReport(
                    "lower_bounds", inst["id"], f"capt_{k}_ge_rad_{k}",
                    capt, rad, capt >= rad, seed=inst["seed"],
                )
            )
            diam_bound = max(0, -(-(diam - k + 1) // (2 * k)))
            reports.append(
                BoundReport(
                    "lower_bounds", inst["id"], f"capt_{k}_ge_diam_bound",
                    capt, diam_bound, capt >= diam_bound, seed=inst["seed"],
                )
            )
    return reports


def _suite_monotonicity(params):
    reports = []
    for inst in random_small_study(
        params.get("count_per_p", 25),
        params.get("n_lo", 5),
        params.get("n_hi", 10),
        tuple(params.get("ps", (0.3, 0.5))),
        params.get("base_seed", 0),
    ):
        g = inst["graph"]
        capts = inst["capts"]
        ks = sorted(capts)
        for a, b in zip(ks, ks[1:]):
            if b == a + 1:
                reports.append(
                    BoundReport(
                        "monotonicity", inst["id"], f"capt_{b}_le_capt_{a}",
                        capts[b], capts[a], capts[b] <= capts[a], seed=inst["seed"],
                    )
                )
        gamma = inst["gamma"]
        if gamma in capts:
            reports.append(
                BoundReport(
                    "monotonicity", inst["id"], "capt_gamma_is_1",
                    capts[gamma], 1, capts[gamma] == 1, seed=inst["seed"],
                )
            )
        reports.append(
            BoundReport(
                "monotonicity", inst["id"], "capt_n_is_0",
                capture_time(g, g.n), 0, capture_time(g, g.n) == 0,
                seed=inst["seed"],
            )
        )
    return reports


def _suite_hypercube_small(params):
    reports = []
    for n, want in ((2, 2), (3, 2)):
        g, _ = gen_hypercube(n)
        c = cop_number(g)
        reports.append(
            BoundReport("hypercube_small", f"Q{n}", "cop_number", c, want, c == want)
        )
    q3, _ = gen_hypercube(3)
    capt = capture_time(q3, 2)
    reports.append(
        BoundReport("hypercube_small", "Q3", "capt_2", capt, 1, capt == 1)
    )
    # counting bound: with k cops below 2^n / |ball_d|, survival exceeds d
    bound = counting_cop_bound(4, 1)
    ok_formula = 3 < bound
    reports.append(
        BoundReport(
            "hypercube_small", "Q4", "counting_admits_k3",
            float(Fraction(3)), float(bound), ok_formula,
        )
    )
    q4, _ = gen_hypercube(4)
    capt3 = capture_time(q4, 3, move_cap=40_000_000)
    reports.append(
        BoundReport("hypercube_small", "Q4", "capt_3_ge_2", capt3, 2, capt3 >= 2)
    )
    return reports


def _suite_strategy_audits(params):
    reports = []
    # tree chase versus the solver-extracted optimal robber
    for name, g, seed in tree_instances(
        params.get("count", 20), params.get("n_max", 12), params.get("base_seed", 0)
    ):
        for k in range(1, params.get("k_max", 3) + 1):
            if k >= g.n:
                continue
            rad = k_center(g, k).radius
            table = solve(g, k)
            _, robber = extract_policies(table)
            pol = tree_policy(g, k)
            t = play(g, k, pol, robber, max_rounds=4 * g.n)
            reports.append(
                BoundReport(
                    "strategy_audits", name, f"tree_policy_k{k}_within_rad",
                    t.capture_round, rad,
                    t.capture_round is not None and t.capture_round <= rad,
                    seed=seed, rounds=t.capture_round,
                )
            )

    # grid cover: every robber behaviour, exhaustively, within the per-box bound
    g6, codec6 = gen_grid(2, 6)
    g3, _ = gen_grid(2, 3)
    box_bound = capture_time(g3, 2)
    pol = grid_cover_policy(g6, codec6, 8)
    worst = worst_case_capture_round(g6, pol, 8, horizon=box_bound)
    reports.append(
        BoundReport(
            "strategy_audits", "grid6x6-k8", "grid_cover_within_capt2_grid3",
            worst, box_bound, worst is not None and worst <= box_bound,
            rounds=worst,
        )
    )

    # subcube partition on the 4-cube
    q4, codec4 = gen_hypercube(4)
    q3, _ = gen_hypercube(3)
    sub_bound = capture_time(q3, 2)
    pol = subcube_partition_policy(q4, codec4, 4, 3)
    worst = worst_case_capture_round(q4, pol, 4, horizon=sub_bound)
    reports.append(
        BoundReport(
            "strategy_audits", "Q4-k4-ell3", "subcube_within_capt2_Q3",
            worst, sub_bound, worst is not None and worst <= sub_bound,
            rounds=worst,
        )
    )
    return reports


def _suite_sphere_trap(params):
    seeds = params.get("seeds", 200)
    d = params.get("d", 1)
    k = params.get("k", 4)
    g, _ = gen_hypercube(params.get("n", 3))
    bound = 2 * d + 1
    table = solve(g, k)
    _, robber = extract_policies(table)
    saturated = 0
    worst_saturated = 0
    miscertified = 0
    unflagged = 0
    for i in range(seeds):
        pol = SphereTrapPolicy(g, k, d, mode="hypercube", seed=f"trap-{i}")
        t = play(g, k, pol, robber, max_rounds=8 * g.n)
        meta = t.metadata.get("cop", {})
        if meta.get("matching_saturated"):
            saturated += 1
            if t.capture_round is None or t.capture_round > bound:
                miscertified += 1
            else:
                worst_saturated = max(worst_saturated, t.capture_round)
        else:
            if "hall_deficient" not in meta:
                unflagged += 1
    reports = [
        BoundReport(
            "sphere_trap", f"Q3-d{d}-k{k}", "saturated_capture_within_bound",
            miscertified, 0, miscertified == 0, seed=f"0..{seeds - 1}",
            rounds=worst_saturated,
        ),
        BoundReport(
            "sphere_trap", f"Q3-d{d}-k{k}", "hall_failures_flagged",
            unflagged, 0, unflagged == 0, seed=f"0..{seeds - 1}",
        ),
        BoundReport(
            "sphere_trap", f"Q3-d{d}-k{k}", "saturated_runs_present",
            saturated, 1, saturated >= 1, seed=f"0..{seeds - 1}",
        ),
    ]
    return reports


def _suite_random_graphs(params):
    n = params.get("n", 500)
    p = params.get("p", 0.5)
    trials = params.get("trials", 100)
    C = params.get("C", 10.0)
    k = params.get("k", math.ceil(10 * math.sqrt(n * math.log(n))))
    need_rate = params.get("rate", 0.95)
    degree = p * (n - 1)
    r = net_radius(n, degree, k, C)
    reports = [
        BoundReport("random_graphs", f"gnp-{n}-{p}", "net_radius", r, params.get("expect_r", 1),
                    r == params.get("expect_r", 1)),
    ]
    bound = 2 * r + 1
    certified = 0
    survived_all = True
    worst_round = 0
    for i in range(trials):
        g, probe = gen_connected_gnp(n, p, f"rg-{i}")
        pol = SphereTrapPolicy(g, k, r, mode="general", seed=f"rg-{i}")
        t = play(g, k, pol, StayFarRobber(), max_rounds=50)
        meta = t.metadata.get("cop", {})
        if meta.get("matching_saturated") and t.capture_round is not None and t.capture_round <= bound:
            certified += 1
            worst_round = max(worst_round, t.capture_round)
        if t.capture_round is not None and t.capture_round < r:
            survived_all = False
    rate = certified / trials
    reports.append(
        BoundReport(
            "random_graphs", f"gnp-{n}-{p}", "certified_capture_rate",
            rate, need_rate, rate >= need_rate, seed=f"0..{trials - 1}",
            rounds=worst_round,
        )
    )
    reports.append(
        BoundReport(
            "random_graphs", f"gnp-{n}-{p}", "stay_far_survives_r",
            1 if survived_all else 0, 1, survived_all, seed=f"0..{trials - 1}",
        )
    )
    return reports


def _suite_separator_sweep(params):
    q = params.get("q", 20)
    g, _ = gen_grid(2, q)
    n = g.n
    k = params.get("k", 240)
    met = metrics(g)
    bound = 6 * met.radius * math.log2(n)
    reports = []
    for fast in (False, True):
        pol = separator_sweep_policy(g, k, fast_robber=fast)
        robber = GreedyFastRobber() if fast else GreedyRobber()
        t = play(g, k, pol, robber, max_rounds=int(bound) + 50, fast_robber=fast)
        label = "fast" if fast else "normal"
        captured = t.capture_round is not None
        reports.append(
            BoundReport(
                "separator_sweep", f"grid{q}x{q}-k{k}-{label}", "capture_within_6radlog",
                t.capture_round, bound,
                captured and t.capture_round <= bound, rounds=t.capture_round,
            )
        )
        phases = t.metadata.get("cop", {}).get("phases", [])
        shrink_ok = all(
            3 * b_["territory"] <= 2 * a_["territory"]
            for a_, b_ in zip(phases, phases[1:])
        )
        reports.append(
            BoundReport(
                "separator_sweep", f"grid{q}x{q}-k{k}-{label}", "territory_shrinks_2_3",
                len(phases), None, shrink_ok,
            )
        )
    return reports


def _suite_planar_3cop(params):
    reports = []
    instances = [("grid4x4", gen_grid_dims([4, 4])[0]), ("C6", gen_cycle(6))]
    for name, g, seed in tree_instances(params.get("tree_count", 10), 12, params.get("base_seed", 7)):
        instances.append((name, g))
    for name, g in instances:
        met = metrics(g)
        bound = (met.diameter + 1) * g.n
        table = solve(g, 3) if g.n <= params.get("solver_n_cap", 20) else None
        robbers = [("greedy", GreedyRobber())]
        if table is not None:
            robbers.append(("optimal", extract_policies(table)[1]))
        for rname, robber in robbers:
            pol = three_cop_planar_policy(g)
            t = play(g, 3, pol, robber, max_rounds=bound + 50)
            captured = t.capture_round is not None
            reports.append(
                BoundReport(
                    "planar_3cop", name, f"capture_within_diam1_n_vs_{rname}",
                    t.capture_round, bound, captured and t.capture_round <= bound,
                    rounds=t.capture_round,
                )
            )
            phases = t.metadata.get("cop", {}).get("phases", [])
            total_shrink = sum(ph["shrink"] for ph in phases)
            reports.append(
                BoundReport(
                    "planar_3cop", name, f"phase_shrink_total_le_n_vs_{rname}",
                    total_shrink, g.n, total_shrink <= g.n,
                )
            )
            if rname == "optimal" and table is not None:
                capt3 = table.capture_time()
                reports.append(
                    BoundReport(
                        "planar_3cop", name, "rounds_ge_capt3",
                        t.capture_round, capt3,
                        captured and t.capture_round >= capt3,
                        rounds=t.capture_round,
                    )
                )
    return reports


def _suite_regime(params):
    eps_iii = params.get("eps", 0.02)
    reports = []
    consts = regime_constants()
    reports.append(
        BoundReport(
            "regime", "constants", "b_matches_reference",
            consts.b, 0.2716, abs(consts.b - 0.2716) <= 1e-3,
        )
    )
    cases = [
        ("k_eq_n_squared", 60, 3600, 0.05, "i"),
        ("k_eq_2_pow_0.9n", 40, 1 << 36, eps_iii, "iii"),
        ("k_eq_2n_over_n3", 20, (1 << 20) // 8000, 0.05, "v"),
    ]
    for name, n, k, eps, want in cases:
        try:
            res = qn_regime(n, k, eps)
            got = res.part
        except AmbiguousRegime:
            got = "ambiguous"
        reports.append(
            BoundReport("regime", name, "part", got, want, got == want)
        )
    return reports


def _suite_grid_scaling(params):
    d = params.get("d", 2)
    sizes = params.get("sizes", (4, 6, 8))
    ks = params.get("ks", (2, 4, 8))
    move_cap = params.get("move_cap", 20_000_000)
    state_cap = params.get("state_cap", 2_000_000)
    reports = []
    ratios = []
    for q in sizes:
        g, _ = gen_grid(d, q)
        for k in ks:
            states, mv = estimate_cost(g, k)
            if mv > move_cap or states > state_cap:
                continue
            capt = capture_time(g, k, move_cap=move_cap, state_cap=state_cap)
            ratio = capt * (k ** (1.0 / d)) / q
            ratios.append(ratio)
            reports.append(
                BoundReport(
                    "grid_scaling", f"grid-d{d}-q{q}-k{k}", "capt_k_scaled_ratio",
                    ratio, None, True,
                )
            )
    if ratios:
        reports.append(
            BoundReport(
                "grid_scaling", f"d{d}", "ratio_window",
                max(ratios), min(ratios), True,
            )
        )
    return reports


SUITES = {
    "trees": _suite_trees,
    "grid_closed_form": _suite_grid_closed_form,
    "lower_bounds": _suite_lower_bounds,
    "monotonicity": _suite_monotonicity,
    "hypercube_small": _suite_hypercube_small,
    "strategy_audits": _suite_strategy_audits,
    "sphere_trap": _suite_sphere_trap,
    "random_graphs": _suite_random_graphs,
    "separator_sweep": _suite_separator_sweep,
    "planar_3cop": _suite_planar_3cop,
    "regime": _suite_regime,
    "grid_scaling": _suite_grid_scaling,
}


def verify_suite(name: str, params: dict | None = None, *, timings: bool = False):
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {sorted(SUITES)}")
    t0 = time.perf_counter()
    reports = SUITES[name](params or {})
    if timings:
        ms = int((time.perf_counter() - t0) * 1000)
        reports = [replace(r, runtime_ms=ms) if i == 0 else r for i, r in enumerate(reports)]
    return reports


# ---------------------------------------------------------------------------
# Monte Carlo runner


@dataclass(frozen=True)
class MCConfig:
    graph: str
    k: int
    cop: str = "solver"
    cop_params: dict = field(default_factory=dict)
    robber: str = "stay_far"
    robber_params: dict = field(default_factory=dict)
    trials: int = 1
    base_seed: int = 0
    seeds: tuple | None = None
    max_rounds: int = 1000
    fast_robber: bool = False
    threads: int = 1


def make_cop_policy(name: str, params: dict, g: Graph, codec, k: int, seed):
    from .errors import UnknownPolicy

    if name == "solver":
        return extract_policies(solve(g, k))[0]
    if name == "tree":
        return tree_policy(g, k)
    if name == "grid_cover":
        return grid_cover_policy(g, codec, k)
    if name == "subcube_partition":
        ell = params.get("ell")
        if ell is None:
            from .strategies import choose_subcube_dim

            ell = choose_subcube_dim(codec.n_bits, k)
        return subcube_partition_policy(g, codec, k, int(ell))
    if name == "sphere_trap":
        return SphereTrapPolicy(
            g, k, int(params.get("d", 1)), mode=params.get("mode", "hypercube"),
            seed=seed,
        )
    if name == "separator_sweep":
        return separator_sweep_policy(g, k)
    if name == "three_cop_planar":
        return three_cop_planar_policy(g)
    if name == "static":
        return StaticCopPolicy([int(v) for v in params["positions"]])
    raise UnknownPolicy(f"unknown cop policy {name!r}")


def make_robber_policy(name: str, params: dict, g: Graph, codec, k: int, seed):
    from .errors import UnknownPolicy

    if name == "stay_far":
        return StayFarRobber()
    if name == "greedy":
        return GreedyRobber()
    if name == "greedy_fast":
        return GreedyFastRobber()
    if name == "random_walk":
        return RandomWalkRobber(seed)
    if name == "pigeonhole_grid":
        return PigeonholeGridRobber(g, codec, k)
    if name == "solver":
        return extract_policies(solve(g, k))[1]
    raise UnknownPolicy(f"unknown robber policy {name!r}")


@dataclass
class MCSummary:
    config: MCConfig
    rows: list
    captured: int
    success_rate: float
    quantiles: dict

    def to_jsonable(self) -> dict:
        return {
            "graph": self.config.graph,
            "k": self.config.k,
            "cop": self.config.cop,
            "robber": self.config.robber,
            "trials": self.config.trials,
            "captured": self.captured,
            "success_rate": self.success_rate,
            "quantiles": self.quantiles,
            "rows": self.rows,
        }

    def to_json(self, indent: int | None = None) -> str:
        return stable_json(self.to_jsonable(), indent=indent)

    def to_csv(self) -> str:
        header = ["trial", "seed", "captured", "capture_round",
                  "matching_saturated", "certified_bound", "error"]
        rows = [
            [r["trial"], r["seed"], r["captured"], r["capture_round"],
             r.get("matching_saturated"), r.get("certified_bound"), r.get("error")]
            for r in self.rows
        ]
        return csv_lines(header, rows)


def _mc_trial(config: MCConfig, trial: int, seed) -> dict:
    spec = config.graph.replace("{seed}", str(seed))
    row = {"trial": trial, "seed": str(seed), "captured": False, "capture_round": None}
    try:
        g, codec = from_spec(spec)
        cop = make_cop_policy(config.cop, config.cop_params, g, codec, config.k, f"{seed}:cop")
        rob = make_robber_policy(
            config.robber, config.robber_params, g, codec, config.k, f"{seed}:robber"
        )
        t = play(g, config.k, cop, rob, config.max_rounds, fast_robber=config.fast_robber)
        row["captured"] = t.capture_round is not None
        row["capture_round"] = t.capture_round
        meta = t.metadata.get("cop", {})
        for key in ("matching_saturated", "certified_bound"):
            if key in meta:
                row[key] = meta[key]
    except Exception as exc:  # per-trial isolation: the batch never aborts
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def mc_run(config: MCConfig) -> MCSummary:
    if config.trials < 1:
        raise ValueError("trials must be at least 1")
    if config.k < 1:
        raise ValueError("k must be at least 1 (no zero-cop games)")
    seeds = list(config.seeds) if config.seeds else [config.base_seed + i for i in range(config.trials)]
    if len(seeds) != config.trials:
        raise ValueError("seed list length must equal trials")

    if config.threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=config.threads) as ex:
            rows = list(ex.map(lambda a: _mc_trial(config, *a), enumerate(seeds)))
    else:
        rows = [_mc_trial(config, i, s) for i, s in enumerate(seeds)]

    captured_rounds = sorted(
        r["capture_round"] for r in rows if r["capture_round"] is not None
    )
    captured = len(captured_rounds)

    def q(p):
        if not captured_rounds:
            return None
        return captured_rounds[round(p * (len(captured_rounds) - 1))]

    return MCSummary(
        config=config,
        rows=rows,
        captured=captured,
        success_rate=captured / config.trials,
        quantiles={"min": q(0.0), "p50": q(0.5), "p90": q(0.9), "max": q(1.0)},
    )
