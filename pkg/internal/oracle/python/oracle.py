"""
Oracle - exhaustive minimization of perimeter over grid interval unions
Independent of every closed-form candidate: only J at grid points is used
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np

from internal.common.python.exceptions import DomainError, InfeasibleConstraintError
from internal.common.python.logging_setup import progress
from internal.extremals.python.extremals import find_p0, isoperimetric_profile, min_candidate, psi
from internal.measures.python.measures import Measure, in_family_f, lipschitz_constant
from internal.oracle.python.oracle_models import (
    CellCheck,
    ClassificationReport,
    CorollaryReport,
    OracleConfig,
    OracleResult,
    ShiftingReport,
)
from internal.sets.python.interval_sets import asymmetry, measure_of, perimeter
from internal.sets.python.set_models import QuantileSet

logger = logging.getLogger(__name__)

TIE_TOL = 1e-12
SHIFT_TOL = 1e-12


def _check_config(cfg: OracleConfig) -> None:
    if cfg.grid_n < 4:
        raise DomainError("grid_n", cfg.grid_n, "integers >= 4")
    if not 1 <= cfg.max_components <= 4:
        raise DomainError("max_components", cfg.max_components, "[1, 4]")
    floor = 2.0 / cfg.grid_n - 1e-15
    if cfg.effective_measure_tol() < floor or cfg.effective_asymmetry_tol() < floor:
        raise InfeasibleConstraintError(
            cfg.grid_n, cfg.effective_measure_tol(), cfg.effective_asymmetry_tol(),
            f"tolerances must be at least 2/grid_n = {2.0 / cfg.grid_n:g}",
        )


def _reference_overlap(n: int, c: int, interval_shape: bool) -> np.ndarray:
    """Overlap of each grid cell with the reference set of measure c/n, in half cells"""
    lower = np.arange(n) / n
    upper = (np.arange(n) + 1) / n
    if interval_shape:
        a, b = (n - c) / (2.0 * n), (n + c) / (2.0 * n)
        overlap = np.clip(np.minimum(upper, b) - np.maximum(lower, a), 0.0, None)
    else:
        r = c / (2.0 * n)
        overlap = np.clip(np.minimum(upper, r) - lower, 0.0, None) + np.clip(upper - np.maximum(lower, 1.0 - r), 0.0, None)
    return np.rint(overlap * 2 * n).astype(int)


class _GridSearch:
    """Dynamic program over cells for one exact measure count c.

    State after deciding cells 0..j-1: (last cell inside, components used,
    cells taken, overlap with the reference in half cells). Perimeter adds
    J(t_j) whenever membership switches at grid point t_j. Every grid set
    with at most K components is represented by exactly one path.
    """

    def __init__(self, j_grid: np.ndarray, c: int, K: int, overlap: Optional[np.ndarray], origin_free: bool):
        self.j_grid = j_grid
        self.n = len(j_grid) - 1
        self.c = c
        self.K = K
        self.overlap = overlap
        self.origin_free = origin_free
        self.O = 2 * c + 1 if overlap is not None else 1
        self.choices: List[Tuple[np.ndarray, np.ndarray]] = []
        self.evaluated = 0

    def _forbid_inside(self, j: int) -> Tuple[bool, bool]:
        """(block continuing a component into cell j, block entering cell j)"""
        if not self.origin_free:
            return False, False
        if self.n % 2 == 0:
            return j == self.n // 2, False
        return j == (self.n - 1) // 2, j == (self.n - 1) // 2

    def run(self):
        with np.errstate(invalid="ignore"):
            return self._run()

    def _run(self):
        n, c, K, O = self.n, self.c, self.K, self.O
        shape = (K + 1, c + 1, O)
        cost = np.full((2,) + shape, np.inf)
        count = np.zeros((2,) + shape)
        cost[0, 0, 0, 0] = 0.0
        count[0, 0, 0, 0] = 1.0

        for j in range(n):
            jt = self.j_grid[j]
            ov = int(self.overlap[j]) if self.overlap is not None else 0
            out_stay, out_leave = cost[0], cost[1] + jt
            new_out = np.minimum(out_stay, out_leave)
            from_inside_out = out_leave < out_stay
            cnt_out = np.where(np.abs(out_stay - new_out) <= TIE_TOL, count[0], 0.0) + \
                np.where(np.abs(out_leave - new_out) <= TIE_TOL, count[1], 0.0)

            # entering cell j shifts (cells, overlap) by (1, ov); entering from outside adds a component
            in_stay = np.full(shape, np.inf)
            in_enter = np.full(shape, np.inf)
            cnt_stay = np.zeros(shape)
            cnt_enter = np.zeros(shape)
            if ov < O:
                in_stay[:, 1:, ov:] = cost[1, :, :-1, :O - ov]
                cnt_stay[:, 1:, ov:] = count[1, :, :-1, :O - ov]
                in_enter[1:, 1:, ov:] = cost[0, :-1, :-1, :O - ov] + jt
                cnt_enter[1:, 1:, ov:] = count[0, :-1, :-1, :O - ov]
            block_stay, block_enter = self._forbid_inside(j)
            if block_stay:
                in_stay[:] = np.inf
            if block_enter:
                in_enter[:] = np.inf
            new_in = np.minimum(in_stay, in_enter)
            from_outside_in = in_enter < in_stay
            cnt_in = np.where(np.abs(in_stay - new_in) <= TIE_TOL, cnt_stay, 0.0) + \
                np.where(np.abs(in_enter - new_in) <= TIE_TOL, cnt_enter, 0.0)
            cnt_in = np.where(np.isfinite(new_in), cnt_in, 0.0)
            cnt_out = np.where(np.isfinite(new_out), cnt_out, 0.0)

            self.choices.append((np.packbits(from_inside_out), np.packbits(from_outside_in)))
            cost = np.stack((new_out, new_in))
            count = np.stack((cnt_out, cnt_in))
            self.evaluated += 2 * new_out.size

        # leaving at t_n = 1 costs J(1) = 0
        return cost, count

    def backtrack(self, inside: int, k: int, o: int) -> QuantileSet:
        shape = (self.K + 1, self.c + 1, self.O)
        size = int(np.prod(shape))
        membership = np.zeros(self.n, dtype=bool)
        m = self.c
        for j in range(self.n - 1, -1, -1):
            membership[j] = bool(inside)
            packed_out, packed_in = self.choices[j]
            if inside == 0:
                came_inside = np.unpackbits(packed_out, count=size).reshape(shape)[k, m, o]
                inside = 1 if came_inside else 0
            else:
                came_outside = np.unpackbits(packed_in, count=size).reshape(shape)[k, m, o]
                ov = int(self.overlap[j]) if self.overlap is not None else 0
                m -= 1
                o -= ov
                if came_outside:
                    k -= 1
                    inside = 0
                else:
                    inside = 1
        return _cells_to_set(membership, self.n)


def _cells_to_set(membership: np.ndarray, n: int) -> QuantileSet:
    endpoints = []
    previous = False
    for j, current in enumerate(membership):
        if current != previous:
            endpoints.append(j / n)
        previous = current
    if previous:
        endpoints.append(1.0)
    return QuantileSet(endpoints=endpoints)


def _measure_counts(n: int, p: float, tol: float) -> List[int]:
    lo = max(0, math.ceil(n * (p - tol) - 1e-9))
    hi = min(n, math.floor(n * (p + tol) + 1e-9))
    return list(range(lo, hi + 1))


def _search(m: Measure, p: float, lambda_target: Optional[float], cfg: OracleConfig, origin_free: bool,
            counts: Sequence[int]):
    n = cfg.grid_n
    j_grid = np.asarray(m.j(np.arange(n + 1) / n), dtype=float)
    j_grid[0] = j_grid[-1] = 0.0
    asym_tol = cfg.effective_asymmetry_tol()

    best = None
    optimal_total = 0.0
    evaluated = 0
    for c in counts:
        if c == 0:
            continue
        if lambda_target is None:
            shapes = [None]
        elif 2 * c < n:
            shapes = [False]
        elif 2 * c > n:
            shapes = [True]
        else:
            # measure exactly 1/2: either reference may realize the asymmetry
            shapes = [False, True]
        for interval_shape in shapes:
            overlap = None if interval_shape is None else _reference_overlap(n, c, interval_shape)
            search = _GridSearch(j_grid, c, cfg.max_components, overlap, origin_free)
            cost, count = search.run()
            evaluated += search.evaluated
            final = cost[:, :, c, :]
            final_count = count[:, :, c, :]
            if overlap is not None:
                o = np.arange(search.O)
                lam = (2 * c - o) / n
                admissible = np.abs(lam - lambda_target) <= asym_tol + 1e-12
                final = np.where(admissible[None, None, :], final, np.inf)
            value = float(np.min(final))
            if not math.isfinite(value):
                continue
            if best is not None and value > best[0] + TIE_TOL:
                continue
            if best is None or value < best[0] - TIE_TOL:
                optimal_total = 0.0
            optimal_total += float(np.sum(final_count[np.abs(final - value) <= TIE_TOL]))
            if best is None or value < best[0] - TIE_TOL:
                inside, k, o = np.unravel_index(int(np.argmin(final)), final.shape)
                best = (value, search, int(inside), int(k), int(o))
    return best, optimal_total, evaluated


def brute_min_perimeter(m: Measure, p: float, lambda_target: Optional[float] = None,
                        cfg: Optional[OracleConfig] = None, origin_free: bool = False) -> OracleResult:
    """Global minimum of perimeter over grid sets with at most cfg.max_components intervals.

    Sets are kept when |μ(S) - p| ≤ measure_tol and, with a target,
    |λ(S) - λ_target| ≤ asymmetry_tol.
    """
    cfg = cfg or OracleConfig()
    _check_config(cfg)
    if not 0.0 < p < 1.0:
        raise DomainError("p", p, "(0, 1)")
    if lambda_target is not None and not 0.0 <= lambda_target <= 2.0 * min(p, 1.0 - p) + 1e-12:
        raise DomainError("lambda", lambda_target, f"[0, {2.0 * min(p, 1.0 - p):g}]")

    counts = _measure_counts(cfg.grid_n, p, cfg.effective_measure_tol())
    logger.debug(f"Oracle {m.label}: p={p}, lambda={lambda_target}, counts={counts[0]}..{counts[-1]}")
    best, optimal_total, evaluated = _search(m, p, lambda_target, cfg, origin_free, counts)
    if best is None:
        raise InfeasibleConstraintError(cfg.grid_n, cfg.effective_measure_tol(),
                                        cfg.effective_asymmetry_tol() if lambda_target is not None else None,
                                        f"no grid set reaches p={p}, lambda={lambda_target}")

    value, search, inside, k, o = best
    witness = search.backtrack(inside, k, o)
    mirror_distinct = list(witness.endpoints) != [1.0 - t for t in reversed(witness.endpoints)]
    expected = 2.0 if mirror_distinct else 1.0

    closed_form, family = None, None
    if lambda_target is None:
        closed_form = isoperimetric_profile(m, p)
    elif p <= 0.5 and lambda_target <= 2.0 * p:
        fam, closed_form = min_candidate(m, p, lambda_target, origin_free)
        family = fam.value

    residual_asym = None if lambda_target is None else asymmetry(witness) - lambda_target
    return OracleResult(
        p=p,
        lambda_target=lambda_target,
        origin_free=origin_free,
        min_perimeter=perimeter(witness, m),
        witness=witness,
        constraint_residuals=(measure_of(witness) - p, residual_asym),
        enumerated_count=evaluated,
        optimal_count=optimal_total,
        tie=optimal_total > expected + 0.5,
        closed_form=closed_form,
        closed_form_family=family,
        discretization_bound=discretization_bound(m, cfg),
    )


def discretization_bound(m: Measure, cfg: OracleConfig) -> float:
    """Lip(J) · 2·max_components / grid_n"""
    return lipschitz_constant(m) * 2.0 * cfg.max_components / cfg.grid_n


def classification_cells(n_side: int = 16, p_range: Tuple[float, float] = (0.05, 0.45)) -> List[Tuple[float, float]]:
    """n_side x n_side sample of the triangle 0 ≤ λ ≤ 2p"""
    cells = []
    for p in np.linspace(p_range[0], p_range[1], n_side):
        for fraction in np.linspace(0.0, 0.95, n_side):
            cells.append((float(p), float(fraction * 2.0 * p)))
    return cells


def _check_cell(args) -> CellCheck:
    m, cfg, p, lam, origin_free = args
    result = brute_min_perimeter(m, p, lam, cfg, origin_free)
    family, closed_form = min_candidate(m, p, lam, origin_free)
    gap = abs(result.min_perimeter - closed_form)
    bound = discretization_bound(m, cfg)
    return CellCheck(
        p=p, lam=lam, origin_free=origin_free, brute=result.min_perimeter, closed_form=closed_form,
        family=family.value, gap=gap, bound=bound, ok=gap <= bound, witness=list(result.witness.endpoints),
    )


def verify_classification(m: Measure, cfg: Optional[OracleConfig] = None,
                          cells: Optional[Sequence[Tuple[float, float]]] = None,
                          modes: Sequence[bool] = (False, True), workers: int = 1) -> ClassificationReport:
    """Brute minimum against the closed-form candidate minimum on every cell and mode.

    Cells run in a process pool when workers > 1; the report keeps cell order.
    """
    cfg = cfg or OracleConfig()
    _check_config(cfg)
    cells = list(cells) if cells is not None else classification_cells()
    jobs = [(m, cfg, p, lam, mode) for mode in modes for p, lam in cells]
    logger.info(f"Verifying classification for {m.label}: {len(jobs)} cells at grid_n={cfg.grid_n}")

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            checks = list(progress(pool.map(_check_cell, jobs), desc="oracle cells", total=len(jobs)))
    else:
        checks = [_check_cell(job) for job in progress(jobs, desc="oracle cells", total=len(jobs))]

    report = ClassificationReport(measure=m.label, grid_n=cfg.grid_n, max_components=cfg.max_components, cells=checks)
    if report.mismatches:
        logger.warning(f"{len(report.mismatches)} cells exceed the discretization bound for {m.label}")
    return report


def verify_shifting(m: Measure, trials: int = 1000, seed: int = 0) -> ShiftingReport:
    """Random intervals (t, t+p) in quantiles, shifted per case.

    Increases are violations. For strictly log-convex measures the decrease
    must be strict, so flat shifts count as violations too.
    """
    rng = np.random.default_rng(seed)
    report = ShiftingReport(measure=m.label, trials=trials, strict=in_family_f(m))
    for _ in progress(range(trials), desc="shifting", total=trials):
        p = float(rng.uniform(0.01, 0.99))
        t = float(rng.uniform(0.0, 1.0 - p))
        if p < 0.5 and t >= 0.5:
            lo, hi, case = t, 1.0 - p, "right_of_origin"
        elif p < 0.5 and t + p <= 0.5:
            lo, hi, case = 0.0, t, "left_of_origin"
        elif 2.0 * t + p >= 1.0:
            lo, hi, case = (1.0 - p) / 2.0, t, "straddle_left_shift"
        else:
            lo, hi, case = t, (1.0 - p) / 2.0, "straddle_right_shift"
        if hi <= lo:
            continue
        shifted = float(rng.uniform(lo, hi))
        setattr(report, case, getattr(report, case) + 1)
        increase = psi(m, p, shifted) - psi(m, p, t)
        report.worst_increase = max(report.worst_increase, increase)
        if increase > SHIFT_TOL:
            report.violations += 1
            logger.debug(f"Shift violation for {m.label}: p={p}, t={t} -> {shifted}, increase={increase:.3e}")
        elif increase > -SHIFT_TOL:
            report.non_strict += 1
            if report.strict:
                report.violations += 1
                logger.debug(f"Flat shift for {m.label}: p={p}, t={t} -> {shifted}")
    return report


def verify_interval_corollary(m: Measure, grid_n: int = 200) -> CorollaryReport:
    """Single intervals of measure c/grid_n: where the minimizer turns from half-line to interior interval"""
    cfg = OracleConfig(grid_n=grid_n, max_components=1)
    report = CorollaryReport(measure=m.label, grid_n=grid_n)
    try:
        report.p0 = find_p0(m)
    except Exception as e:
        logger.info(f"No p0 for {m.label}: {e}")
    previous = None
    for c in range(1, grid_n // 2 + 1):
        best, _, _ = _search(m, c / grid_n, None, cfg, False, [c])
        value, search, inside, k, o = best
        witness = search.backtrack(inside, k, o)
        shape = "half-line" if witness.endpoints[0] == 0.0 or witness.endpoints[-1] == 1.0 else "interval"
        report.shapes.append((c / grid_n, shape))
        if previous == "half-line" and shape == "interval" and report.flip_p is None:
            report.flip_p = (c - 0.5) / grid_n
        previous = shape
    return report
