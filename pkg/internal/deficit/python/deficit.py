"""
Deficit - quantitative isoperimetric bounds
Constants c(p) and c′, the lower bounds on δ(E), and the near-1/2 anomaly
"""

import logging
from typing import List, Optional, Tuple

import numpy as np
from scipy import optimize

from internal.common.python.exceptions import DomainError, HypothesisFailure, NumericalFailure
from internal.deficit.python.deficit_models import DeficitConstants, DeficitRow
from internal.extremals.python.extremal_models import Family
from internal.extremals.python.extremals import candidate, family_valid, prop_quant_hypotheses, t_range
from internal.measures.python.measures import Measure
from internal.sets.python.interval_sets import asymmetry, contains_origin, deficit, measure_of
from internal.sets.python.set_models import QuantileSet

logger = logging.getLogger(__name__)

M_RESOLUTION = 1e-4
EPS_CAP = 0.99
EPS_SHRINK = 0.01


def nabla2_epsilon(m: Measure, n_points: int = 5000, lower: float = 1e-4) -> float:
    """Largest ε ≥ 0 with J(x) ≥ (2+ε)J(x/2) on a grid of (0, 1/2]"""
    grid = np.linspace(lower, 0.5, n_points)
    ratios = np.asarray(m.j(grid)) / np.asarray(m.j(grid / 2.0))
    return max(0.0, float(np.min(ratios)) - 2.0)


def infimum_j_second(m: Measure, p: float, resolution: float = M_RESOLUTION) -> float:
    """M(p) = inf J″ on [p/2, 1/2]: grid scan, then a bounded refinement at the grid argmin"""
    lo = p / 2.0
    n_steps = max(2, int(np.ceil((0.5 - lo) / resolution)))
    grid = np.linspace(lo, 0.5, n_steps + 1)
    values = np.asarray(m.j_second(grid))
    i = int(np.argmin(values))
    best = float(values[i])
    a, b = grid[max(i - 1, 0)], grid[min(i + 1, n_steps)]
    if b > a:
        refined = optimize.minimize_scalar(lambda t: float(m.j_second(t)), bounds=(a, b), method="bounded",
                                           options={"xatol": 1e-10})
        if refined.success:
            best = min(best, float(refined.fun))
    return best


def _c_terms(m: Measure, p: float) -> Tuple[dict, float]:
    M_p = infimum_j_second(m, p)
    if not M_p > 0.0:
        raise NumericalFailure("constant_c", f"M({p:g}) = {M_p:.3e} is not positive for {m.label}")
    gap = float(m.j(0.5)) - 2.0 * float(m.j(0.25))
    if not gap > 0.0:
        raise NumericalFailure("constant_c", f"J(1/2) - 2J(1/4) = {gap:.3e} is not positive for {m.label}")
    q = min(0.5, gap / m.j_prime_half())
    terms = {
        "8J'(p/2)": 8.0 * float(m.j_prime(p / 2.0)),
        "M(p)": M_p,
        "16J'(1/6)": 16.0 * float(m.j_prime(1.0 / 6.0)),
        "8[J(1/2)-2J(1/4)]": 8.0 * gap,
        "4M(gap/J'(1/2))": 4.0 * infimum_j_second(m, q),
    }
    return terms, M_p


def constant_c(m: Measure, p: float) -> float:
    """c(p) = min of the five terms / 32"""
    if not 0.0 < p <= 0.5:
        raise DomainError("p", p, "(0, 1/2]")
    terms, _ = _c_terms(m, p)
    return min(terms.values()) / 32.0


def constant_c_prime(m: Measure, eps_cap: Optional[float] = EPS_CAP, shrink: float = EPS_SHRINK) -> float:
    """c′ = ε J″(1/2⁻)/32 with ε shrunk by `shrink` and capped at `eps_cap`"""
    epsilon = nabla2_epsilon(m) * (1.0 - shrink)
    if eps_cap is not None:
        epsilon = min(epsilon, eps_cap)
    if not epsilon > 0.0:
        raise HypothesisFailure("constant_c_prime", "nabla2", f"epsilon = {epsilon:.3e}")
    return epsilon * m.j_second_half() / 32.0


def deficit_constants(m: Measure, p: float) -> DeficitConstants:
    terms, M_p = _c_terms(m, p)
    epsilon = nabla2_epsilon(m)
    try:
        c_prime = constant_c_prime(m)
    except HypothesisFailure:
        c_prime = None
    return DeficitConstants(p=p, c=min(terms.values()) / 32.0, c_prime=c_prime, M=M_p, epsilon=epsilon, terms=terms)


def origin_free_gate(m: Measure) -> None:
    """Raise unless J′ is concave with J′(0⁺) = 0 and the ∇₂ condition holds"""
    report = prop_quant_hypotheses(m)
    if not report.j_prime_concave:
        raise HypothesisFailure("deficit_lower_bound", "J' concave on (0, 1/2)")
    if not report.holds:
        raise HypothesisFailure("deficit_lower_bound", "J'(0+) = 0", f"J'(0+) ~ {report.j_prime_at_zero:.3e}")
    if nabla2_epsilon(m) <= 0.0:
        raise HypothesisFailure("deficit_lower_bound", "nabla2 condition")


def deficit_lower_bound(m: Measure, p: float, lam: float, origin_free: bool = False,
                        c_prime: Optional[float] = None) -> float:
    """c(p)[(1-λ)² + (1-2p)]λ², or c′λ² for sets avoiding the origin.

    For p > 1/2 the bound of the complement applies, with p replaced by 1-p.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError("p", p, "[0, 1]")
    q = min(p, 1.0 - p)
    if not 0.0 <= lam <= 2.0 * q + 1e-12:
        raise DomainError("lambda", lam, f"[0, {2.0 * q:g}]")
    if origin_free:
        if p > 0.5:
            raise DomainError("p", p, "[0, 1/2] for the origin-free bound")
        origin_free_gate(m)
        if c_prime is None:
            c_prime = constant_c_prime(m)
        return c_prime * lam * lam
    if lam == 0.0 or q == 0.0:
        return 0.0
    return constant_c(m, q) * ((1.0 - lam) ** 2 + (1.0 - 2.0 * q)) * lam * lam


def anomalous_set(eta: float, eps: float) -> QuantileSet:
    """E3-type interval with p = 1/2 - η and λ = 1 - ε"""
    if not (0.0 < eta < 0.5 and 0.0 < eps < 0.5):
        raise DomainError("(eta, eps)", (eta, eps), "(0, 1/2) x (0, 1/2)")
    p, lam = 0.5 - eta, 1.0 - eps
    return QuantileSet(endpoints=((lam - p) / 2.0, (lam + p) / 2.0))


def anomalous_example(m: Measure, eta: float, eps: float) -> Tuple[float, float]:
    """(δ(E), λ(E)) for the anomalous set: small deficit with asymmetry near 1"""
    S = anomalous_set(eta, eps)
    return deficit(S, m), asymmetry(S)


def anomalous_expansion(m: Measure, eta: float, eps: float) -> float:
    """Leading terms 2J′(1/4)η + J″(1/4)ε²/4 of the anomalous deficit"""
    return 2.0 * float(m.j_prime(0.25)) * eta + 0.25 * float(m.j_second(0.25)) * eps * eps


def check_j_chain(m: Measure) -> float:
    """Margin of 2J(3/8) ≥ (9/8)J(1/2)"""
    return 2.0 * float(m.j(0.375)) - 9.0 / 8.0 * float(m.j(0.5))


def deficit_table(m: Measure, p: float, lam: float) -> List[DeficitRow]:
    """Every valid base family at (p, λ) against the general and origin-free bounds"""
    if not (0.0 < p <= 0.5 and 0.0 <= lam <= 2.0 * p):
        raise DomainError("(p, lambda)", (p, lam), "0 < p <= 1/2, 0 <= lambda <= 2p")
    general = deficit_lower_bound(m, p, lam)
    try:
        origin_free_gate(m)
        c_prime = constant_c_prime(m)
    except HypothesisFailure as e:
        logger.info(f"Origin-free bound unavailable for {m.label}: {e}")
        c_prime = None

    rows = []
    for family in (Family.E1, Family.E2, Family.E3, Family.E4, Family.E5, Family.E6, Family.E7):
        t = None
        if family.has_parameter:
            bounds = t_range(family, p, lam)
            if bounds is None:
                continue
            t = 0.5 * (bounds[0] + bounds[1])
        if not family_valid(family, p, lam, t):
            continue
        cand = candidate(m, family, p, lam, t)
        value = deficit(cand.set, m)
        origin_free_bound = None
        if c_prime is not None and not contains_origin(cand.set):
            origin_free_bound = c_prime * lam * lam
        bound = max(general, origin_free_bound or 0.0)
        rows.append(DeficitRow(
            family=family.value,
            t=t,
            perimeter=cand.perimeter,
            measure=measure_of(cand.set),
            asymmetry=asymmetry(cand.set),
            deficit=value,
            bound=general,
            origin_free_bound=origin_free_bound,
            margin=value - bound,
        ))
    return rows
