"""
Measures - symmetric log-convex probability laws on the real line
Density, CDF, quantile and the transform J = f∘F⁻¹ with its derivatives
"""

import logging
import math
from typing import Callable, List, Optional, Sequence, Union

import numpy as np
from scipy import integrate, special

from internal.common.python.config import toolkit_config
from internal.common.python.exceptions import DomainError
from internal.measures.python.measure_models import MeasureKind, MeasureSpec

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

MAX_BRACKET_DOUBLINGS = 2048


def _as_array(x: ArrayLike) -> np.ndarray:
    return np.asarray(x, dtype=float)


def _restore(result: np.ndarray, like: ArrayLike) -> ArrayLike:
    """Return a float for scalar input, an array otherwise"""
    if np.ndim(like) == 0:
        return float(result)
    return result


class Measure:
    """Symmetric probability measure with log-convex density.

    Subclasses override the closed forms they have; everything else falls
    back to bisection for the quantile and finite differences for J′, J″.
    Instances are immutable after construction.
    """

    kind: MeasureKind = MeasureKind.custom

    def __init__(self, params: Sequence[float] = (), quantile_tol: Optional[float] = None,
                 fd_step: Optional[float] = None):
        self._params = tuple(float(value) for value in params)
        self._quantile_tol = quantile_tol if quantile_tol is not None else toolkit_config.quantile_tol
        self._fd_step = fd_step if fd_step is not None else toolkit_config.fd_step

    def __setattr__(self, name, value):
        if getattr(self, "_frozen", False):
            raise AttributeError(f"{type(self).__name__} is immutable")
        super().__setattr__(name, value)

    def _freeze(self) -> None:
        self._frozen = True

    # ------------------------------------------------------------------
    # identity

    @property
    def params(self) -> tuple:
        return self._params

    @property
    def spec(self) -> MeasureSpec:
        return MeasureSpec(kind=self.kind, params=list(self._params))

    @property
    def label(self) -> str:
        return self.spec.label()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.label})"

    # ------------------------------------------------------------------
    # real-line quantities

    def density(self, x: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    def cdf(self, x: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    def quantile(self, t: ArrayLike) -> ArrayLike:
        t_arr = _as_array(t)
        if np.any((t_arr < 0.0) | (t_arr > 1.0)):
            raise DomainError("t", t, "[0, 1]")
        flat = np.array([self._bisect_quantile(value) for value in t_arr.ravel()])
        return _restore(flat.reshape(t_arr.shape), t)

    def _bisect_quantile(self, t: float) -> float:
        """Invert the CDF on a bracket grown geometrically from the origin"""
        if t == 0.5:
            return 0.0
        if t <= 0.0:
            return -math.inf
        if t >= 1.0:
            return math.inf
        if t > 0.5:
            return -self._bisect_quantile(1.0 - t)

        lo, hi = -1.0, 0.0
        doublings = 0
        while self.cdf(lo) > t:
            hi = lo
            lo *= 2.0
            doublings += 1
            if doublings > MAX_BRACKET_DOUBLINGS or not math.isfinite(lo):
                logger.warning(f"{self.label}: quantile bracket escaped to -inf at t={t:.3e}")
                return -math.inf

        mid = 0.5 * (lo + hi)
        while True:
            mid = 0.5 * (lo + hi)
            value = self.cdf(mid)
            if abs(value - t) <= self._quantile_tol:
                return mid
            if mid in (lo, hi):
                # bracket collapsed to adjacent floats
                return mid
            if value > t:
                hi = mid
            else:
                lo = mid

    # ------------------------------------------------------------------
    # J and derivatives

    def j(self, t: ArrayLike) -> ArrayLike:
        t_arr = _as_array(t)
        if np.any((t_arr < 0.0) | (t_arr > 1.0)):
            raise DomainError("t", t, "[0, 1]")
        low = np.minimum(t_arr, 1.0 - t_arr)
        result = np.zeros_like(low)
        inside = low > 0.0
        if np.any(inside):
            # J(t) = J(1-t), so only the left half is inverted
            result[inside] = _as_array(self.density(_as_array(self.quantile(low[inside]))))
        return _restore(result, t)

    def j_prime(self, t: ArrayLike) -> ArrayLike:
        """J′ on (0,1); odd about 1/2, one-sided from the left at 1/2"""
        t_arr = _as_array(t)
        low = np.minimum(t_arr, 1.0 - t_arr)
        sign = np.where(t_arr > 0.5, -1.0, 1.0)
        values = np.array([self._fd_first(value) for value in low.ravel()]).reshape(low.shape)
        return _restore(sign * values, t)

    def j_second(self, t: ArrayLike) -> ArrayLike:
        t_arr = _as_array(t)
        low = np.minimum(t_arr, 1.0 - t_arr)
        values = np.array([self._fd_second(value) for value in low.ravel()]).reshape(low.shape)
        return _restore(values, t)

    def _fd_first(self, t: float) -> float:
        h = self._fd_step
        if t + h > 0.5:
            return (self.j(t) - self.j(t - h)) / h
        if t - h < 0.0:
            return (self.j(t + h) - self.j(t)) / h
        return (self.j(t + h) - self.j(t - h)) / (2.0 * h)

    def _fd_second(self, t: float) -> float:
        h = self._fd_step
        if t + h > 0.5:
            return (self.j(t) - 2.0 * self.j(t - h) + self.j(t - 2.0 * h)) / (h * h)
        if t - h < 0.0:
            return (self.j(t + 2.0 * h) - 2.0 * self.j(t + h) + self.j(t)) / (h * h)
        return (self.j(t + h) - 2.0 * self.j(t) + self.j(t - h)) / (h * h)

    def j_prime_half(self) -> float:
        """J′(1/2⁻)"""
        return float(self.j_prime(0.5))

    def j_second_half(self) -> float:
        """J″(1/2⁻)"""
        return float(self.j_second(0.5))


class GeneralizedCauchy(Measure):
    """dm_α(x) = α / (2(1+|x|)^{1+α}) dx"""

    kind = MeasureKind.cauchy

    def __init__(self, alpha: float, **kwargs):
        if not alpha > 0.0 or not math.isfinite(alpha):
            raise DomainError("alpha", alpha, "(0, inf) for the generalized Cauchy law")
        super().__init__((alpha,), **kwargs)
        self.alpha = float(alpha)
        self._scale = alpha * 2.0 ** (1.0 / alpha)
        self._freeze()

    def density(self, x: ArrayLike) -> ArrayLike:
        x_arr = _as_array(x)
        return _restore(self.alpha / (2.0 * (1.0 + np.abs(x_arr)) ** (1.0 + self.alpha)), x)

    def cdf(self, x: ArrayLike) -> ArrayLike:
        x_arr = _as_array(x)
        tail = 0.5 * (1.0 + np.abs(x_arr)) ** (-self.alpha)
        return _restore(np.where(x_arr < 0.0, tail, 1.0 - tail), x)

    def quantile(self, t: ArrayLike) -> ArrayLike:
        t_arr = _as_array(t)
        if np.any((t_arr < 0.0) | (t_arr > 1.0)):
            raise DomainError("t", t, "[0, 1]")
        low = np.minimum(t_arr, 1.0 - t_arr)
        with np.errstate(divide="ignore"):
            magnitude = (2.0 * low) ** (-1.0 / self.alpha) - 1.0
        return _restore(np.where(t_arr < 0.5, -magnitude, magnitude), t)

    def j(self, t: ArrayLike) -> ArrayLike:
        t_arr = _as_array(t)
        if np.any((t_arr < 0.0) | (t_arr > 1.0)):
            raise DomainError("t", t, "[0, 1]")
        low = np.minimum(t_arr, 1.0 - t_arr)
        return _restore(self._scale * low ** (1.0 + 1.0 / self.alpha), t)

    def j_prime(self, t: ArrayLike) -> ArrayLike:
        t_arr = _as_array(t)
        low = np.minimum(t_arr, 1.0 - t_arr)
        values = (self.alpha + 1.0) * 2.0 ** (1.0 / self.alpha) * low ** (1.0 / self.alpha)
        return _restore(np.where(t_arr > 0.5, -values, values), t)

    def j_second(self, t: ArrayLike) -> ArrayLike:
        t_arr = _as_array(t)
        low = np.minimum(t_arr, 1.0 - t_arr)
        with np.errstate(divide="ignore"):
            values = (self.alpha + 1.0) / self.alpha * 2.0 ** (1.0 / self.alpha) * low ** (1.0 / self.alpha - 1.0)
        return _restore(values, t)

    def j_prime_half(self) -> float:
        return self.alpha + 1.0

    def j_second_half(self) -> float:
        return 2.0 * (self.alpha + 1.0) / self.alpha


class TwoSidedExponential(Measure):
    """dμ₁(x) = e^{-|x|}/2 dx; J(t) = min(t, 1-t)"""

    kind = MeasureKind.exponential

    def __init__(self, **kwargs):
        super().__init__((), **kwargs)
        self._freeze()

    def density(self, x: ArrayLike) -> ArrayLike:
        return _restore(0.5 * np.exp(-np.abs(_as_array(x))), x)

    def cdf(self, x: ArrayLike) -> ArrayLike:
        x_arr = _as_array(x)
        tail = 0.5 * np.exp(-np.abs(x_arr))
        return _restore(np.where(x_arr < 0.0, tail, 1.0 - tail), x)

    def quantile(self, t: ArrayLike) -> ArrayLike:
        t_arr = _as_array(t)
        if np.any((t_arr < 0.0) | (t_arr > 1.0)):
            raise DomainError("t", t, "[0, 1]")
        low = np.minimum(t_arr, 1.0 - t_arr)
        with np.errstate(divide="ignore"):
            magnitude = -np.log(2.0 * low)
        return _restore(np.where(t_arr < 0.5, -magnitude, magnitude), t)

    def j(self, t: ArrayLike) -> ArrayLike:
        t_arr = _as_array(t)
        if np.any((t_arr < 0.0) | (t_arr > 1.0)):
            raise DomainError("t", t, "[0, 1]")
        return _restore(np.minimum(t_arr, 1.0 - t_arr), t)

    def j_prime(self, t: ArrayLike) -> ArrayLike:
        t_arr = _as_array(t)
        return _restore(np.where(t_arr > 0.5, -1.0, 1.0), t)

    def j_second(self, t: ArrayLike) -> ArrayLike:
        return _restore(np.zeros_like(_as_array(t)), t)

    def j_prime_half(self) -> float:
        return 1.0

    def j_second_half(self) -> float:
        return 0.0


class SubExponential(Measure):
    """dμ_Φ(x) = exp(-|x|^α)/Z dx with 0 < α < 1, Z = 2Γ(1+1/α)"""

    kind = MeasureKind.subexponential

    def __init__(self, alpha: float, **kwargs):
        if not 0.0 < alpha < 1.0:
            raise DomainError("alpha", alpha, "(0, 1) for the sub-exponential law")
        super().__init__((alpha,), **kwargs)
        self.alpha = float(alpha)
        self.normalization = 2.0 * math.gamma(1.0 + 1.0 / alpha)
        self._freeze()

    def density(self, x: ArrayLike) -> ArrayLike:
        x_arr = _as_array(x)
        return _restore(np.exp(-np.abs(x_arr) ** self.alpha) / self.normalization, x)

    def cdf(self, x: ArrayLike) -> ArrayLike:
        x_arr = _as_array(x)
        # upper tail from the regularized incomplete gamma function
        tail = 0.5 * special.gammaincc(1.0 / self.alpha, np.abs(x_arr) ** self.alpha)
        return _restore(np.where(x_arr < 0.0, tail, 1.0 - tail), x)

    def phi_prime(self, x: ArrayLike) -> ArrayLike:
        """Φ′(x) = α x^{α-1} for x > 0"""
        return _restore(self.alpha * _as_array(x) ** (self.alpha - 1.0), x)

    def phi_inverse(self, y: ArrayLike) -> ArrayLike:
        return _restore(_as_array(y) ** (1.0 / self.alpha), y)


class CustomMeasure(Measure):
    """User density with caller-asserted symmetry and log-convexity"""

    kind = MeasureKind.custom

    def __init__(self, density: Callable[[float], float], name: str = "custom", **kwargs):
        super().__init__((), **kwargs)
        self._density = density
        self.name = name
        half_mass, _ = integrate.quad(density, 0.0, math.inf, limit=200)
        if not half_mass > 0.0:
            raise DomainError("density", name, "densities with positive mass")
        self.normalization = 2.0 * half_mass
        self._freeze()

    @property
    def label(self) -> str:
        return f"custom:{self.name}"

    def density(self, x: ArrayLike) -> ArrayLike:
        values = np.vectorize(lambda value: self._density(abs(value)) / self.normalization)(_as_array(x))
        return _restore(values, x)

    def _left_tail(self, x: float) -> float:
        if x == -math.inf:
            return 0.0
        mass, _ = integrate.quad(self._density, -math.inf, -abs(x), limit=200, epsabs=1e-15)
        return mass / self.normalization

    def cdf(self, x: ArrayLike) -> ArrayLike:
        def single(value: float) -> float:
            tail = self._left_tail(value)
            return tail if value < 0.0 else 1.0 - tail
        return _restore(np.vectorize(single)(_as_array(x)), x)


def make_measure(kind: Union[MeasureKind, str], params: Sequence[float] = (), **kwargs) -> Measure:
    """Build a catalog measure from its kind and parameter list"""
    try:
        kind = MeasureKind(kind)
    except ValueError:
        raise DomainError("kind", kind, "{cauchy, exp, subexp, custom}")

    params = list(params)
    if kind is MeasureKind.cauchy:
        if len(params) != 1:
            raise DomainError("params", params, "[alpha] for the generalized Cauchy law")
        return GeneralizedCauchy(params[0], **kwargs)
    if kind is MeasureKind.exponential:
        if params:
            raise DomainError("params", params, "[] for the two-sided exponential law")
        return TwoSidedExponential(**kwargs)
    if kind is MeasureKind.subexponential:
        if len(params) != 1:
            raise DomainError("params", params, "[alpha] for the sub-exponential law")
        return SubExponential(params[0], **kwargs)
    raise DomainError("kind", kind.value, "catalog kinds; build custom measures with CustomMeasure(density)")


def measure_from_spec(text: str, **kwargs) -> Measure:
    """Parse `cauchy:<alpha>`, `exp` or `subexp:<alpha>`"""
    kind, _, raw = text.strip().partition(":")
    params: List[float] = []
    if raw:
        try:
            params = [float(value) for value in raw.split(",")]
        except ValueError:
            raise DomainError("measure", text, "cauchy:<alpha> | exp | subexp:<alpha>")
    logger.debug(f"Parsed measure spec {text!r} -> kind={kind}, params={params}")
    return make_measure(kind, params, **kwargs)


def j_eval(m: Measure, t: ArrayLike) -> ArrayLike:
    """J(t) with J(0) = J(1) = 0"""
    return m.j(t)


def lipschitz_constant(m: Measure) -> float:
    """sup |J′| on (0,1); J′(1/2⁻) since J is convex on (0,1/2)"""
    return abs(m.j_prime_half())


def in_family_f(m: Measure, step: float = 1e-3) -> bool:
    """True when t ↦ J(t)/t is strictly increasing on a grid of (0,1/2]"""
    grid = np.arange(step, 0.5 + step / 2.0, step)
    ratios = _as_array(m.j(grid)) / grid
    return bool(np.all(np.diff(ratios) > 0.0))


def exp_interval_perimeter(p: float, a: float) -> float:
    """Perimeter of the exponential-measure interval (a, b) with μ₁((a, b)) = p.

    Branches: 2F(a)+p for a ≤ F⁻¹(1/2-p), 1-p up to a = 0, then 2-2F(a)-p;
    always 1-p when p ≥ 1/2.
    """
    if not 0.0 < p < 1.0:
        raise DomainError("p", p, "(0, 1)")
    if math.isnan(a):
        raise DomainError("a", a, "[-inf, F^-1(1-p)]")
    f_a = 0.5 * math.exp(a) if a < 0.0 else 1.0 - 0.5 * math.exp(-a)
    if f_a > 1.0 - p + 1e-12:
        raise DomainError("a", a, f"[-inf, F^-1({1.0 - p:g})]")
    if p >= 0.5:
        return 1.0 - p
    if f_a <= 0.5 - p:
        return 2.0 * f_a + p
    if f_a <= 0.5:
        return 1.0 - p
    return 2.0 - 2.0 * f_a - p
