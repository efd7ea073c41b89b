"""Truncated normal sampling: inverse CDF in the body, exponential rejection in far tails"""
import math

import numpy as np
from scipy.special import ndtr, ndtri

from errors import NumericalError

# standardized lower bound beyond which the quantile function loses precision
TAIL_CUTOFF = 6.0


def _tail_draw(a: float, b: float, rng: np.random.Generator) -> float:
    """Standard normal restricted to (a, b) with a > TAIL_CUTOFF"""
    if np.isfinite(b) and (b - a) * (a + b) / 2.0 < 1.0:
        # narrow interval: uniform proposal, acceptance >= 1/e
        while True:
            x = rng.uniform(a, b)
            if rng.random() <= math.exp((a * a - x * x) / 2.0):
                return x
    rate = (a + math.sqrt(a * a + 4.0)) / 2.0
    while True:
        x = a + rng.exponential(1.0 / rate)
        if x < b and rng.random() <= math.exp(-((x - rate) ** 2) / 2.0):
            return x


def truncated_normal_draws(mean, sd, lower, upper, rng: np.random.Generator) -> np.ndarray:
    """Vectorized draws from N(mean, sd^2) restricted to the open intervals (lower, upper)"""
    mean, sd, lower, upper = np.broadcast_arrays(
        np.asarray(mean, dtype=float),
        np.asarray(sd, dtype=float),
        np.asarray(lower, dtype=float),
        np.asarray(upper, dtype=float),
    )
    shape = mean.shape
    mean, sd, lower, upper = (np.ravel(x) for x in (mean, sd, lower, upper))
    if np.any(sd <= 0):
        raise ValueError("standard deviations must be positive")
    if np.any(lower >= upper):
        raise NumericalError("truncation interval of zero width")

    a = (lower - mean) / sd
    b = (upper - mean) / sd
    # reflect intervals left of zero so every interval is straddling or right-sided
    flip = b <= 0
    a, b = np.where(flip, -b, a), np.where(flip, -a, b)

    u = rng.random(a.size)
    std = np.empty(a.size)
    in_tail = a > TAIL_CUTOFF
    right = (a >= 0) & ~in_tail
    straddle = a < 0
    if np.any(straddle):
        lo, hi = ndtr(a[straddle]), ndtr(b[straddle])
        std[straddle] = ndtri(lo + u[straddle] * (hi - lo))
    if np.any(right):
        # survival-side inverse keeps precision for intervals in the upper tail
        lo, hi = ndtr(-b[right]), ndtr(-a[right])
        std[right] = -ndtri(hi - u[right] * (hi - lo))
    for k in np.flatnonzero(in_tail):
        std[k] = _tail_draw(float(a[k]), float(b[k]), rng)

    std = np.where(flip, -std, std)
    draws = np.clip(mean + sd * std, np.nextafter(lower, np.inf), np.nextafter(upper, -np.inf))
    if not np.all(np.isfinite(draws)):
        raise NumericalError("non-finite truncated normal draw")
    return draws.reshape(shape)


def sample_truncated_normal(mean: float, var: float, lower: float, upper: float, rng: np.random.Generator) -> float:
    """One draw from N(mean, var) restricted to (lower, upper)"""
    if var <= 0:
        raise ValueError(f"variance must be positive, got {var}")
    return float(truncated_normal_draws(mean, math.sqrt(var), lower, upper, rng))
